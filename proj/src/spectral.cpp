#include "furst/spectral.hpp"

#include "furst/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace furst {

std::vector<std::complex<double>> TransferMatrix::apply(const std::vector<std::complex<double>>& f) const {
    std::vector<std::complex<double>> out(std::size_t(m), {0.0, 0.0});
    for (int j = 0; j < m; ++j) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& e : rows[std::size_t(j)]) acc += e.w * f[std::size_t(e.col)];
        out[std::size_t(j)] = acc;
    }
    return out;
}

std::vector<std::complex<double>> TransferMatrix::apply_transpose(const std::vector<std::complex<double>>& f) const {
    std::vector<std::complex<double>> out(std::size_t(m), {0.0, 0.0});
    for (int j = 0; j < m; ++j) {
        std::complex<double> fj = f[std::size_t(j)];
        for (const auto& e : rows[std::size_t(j)]) out[std::size_t(e.col)] += e.w * fj;
    }
    return out;
}

TransferMatrix assemble_transfer(const StepDistribution& mu, std::complex<double> z, const CircleGrid& grid) {
    TransferMatrix T;
    T.z = z;
    T.m = grid.m;
    T.rows.assign(std::size_t(grid.m), {});
    double h = kPi / grid.m;
    for (int j = 0; j < grid.m; ++j) {
        ProjectivePoint x = ProjectivePoint::from_angle(grid.node(j));
        for (const auto& atom : mu.atoms) {
            double sig = cocycle(atom.g, x);
            std::complex<double> coeff = atom.weight * std::exp(-z * sig);
            double y = act(atom.g, x).theta;
            double pos = y / h;
            int k = int(std::floor(pos));
            double frac = pos - double(k);
            int k0 = ((k % grid.m) + grid.m) % grid.m;
            int k1 = (k0 + 1) % grid.m; // wraps: functions on the circle are pi-periodic
            T.rows[std::size_t(j)].push_back({k0, coeff * (1.0 - frac)});
            T.rows[std::size_t(j)].push_back({k1, coeff * frac});
        }
    }
    return T;
}

namespace {

double inf_norm(const std::vector<std::complex<double>>& v) {
    double n = 0.0;
    for (const auto& x : v) n = std::max(n, std::abs(x));
    return n;
}

std::vector<std::complex<double>> start_vector(int m) {
    // deterministic, with a pseudorandom ripple so no eigendirection is missed
    std::vector<std::complex<double>> v(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        Rng r = rng_stream(0x5eedf00d, uint64_t(j));
        v[std::size_t(j)] = 1.0 + 0.01 * (r.next_double() - 0.5);
    }
    return v;
}

} // namespace

EigenEstimate leading_eigen(const TransferMatrix& T, double tol, long max_iter) {
    auto v = start_vector(T.m);
    std::complex<double> lambda{1.0, 0.0};
    for (long it = 1; it <= max_iter; ++it) {
        auto w = T.apply(v);
        // Rayleigh-style ratio against the previous iterate
        std::complex<double> num{0.0, 0.0};
        double den = 0.0;
        for (int j = 0; j < T.m; ++j) {
            num += w[std::size_t(j)] * std::conj(v[std::size_t(j)]);
            den += std::norm(v[std::size_t(j)]);
        }
        lambda = num / den;
        double resid = 0.0;
        double scale = inf_norm(v);
        for (int j = 0; j < T.m; ++j)
            resid = std::max(resid, std::abs(w[std::size_t(j)] - lambda * v[std::size_t(j)]));
        resid /= scale > 0.0 ? scale : 1.0;
        double wn = inf_norm(w);
        if (wn == 0.0) return {{0.0, 0.0}, 0.0, int(it), std::move(w)};
        for (auto& x : w) x /= wn;
        v = std::move(w);
        if (resid < tol) {
            EigenEstimate est;
            est.value = lambda;
            est.residual = resid;
            est.iterations = int(it);
            est.vector = std::move(v);
            return est;
        }
    }
    throw NoConvergence("leading_eigen: power iteration exceeded 1e5 iterations");
}

SigmaFromEigen sigma_from_eigen(const StepDistribution& mu, const CircleGrid& grid, double h) {
    if (!(h >= 1e-3 && h <= 0.1)) throw std::invalid_argument("sigma_from_eigen: h must lie in [1e-3, 0.1]");
    auto log_k = [&](double s) {
        auto est = leading_eigen(assemble_transfer(mu, {s, 0.0}, grid));
        return std::log(std::abs(est.value));
    };
    auto central = [&](double step) { return -(log_k(step) - log_k(-step)) / (2.0 * step); };
    SigmaFromEigen out;
    out.at_h = central(h);
    out.at_h_half = central(0.5 * h);
    out.value = (4.0 * out.at_h_half - out.at_h) / 3.0;
    return out;
}

std::vector<NonarithRow> nonarith_scan(const StepDistribution& mu, const CircleGrid& grid,
                                       const std::vector<double>& xi_list) {
    std::vector<NonarithRow> rows;
    for (double xi : xi_list) {
        if (xi == 0.0) throw std::invalid_argument("nonarith_scan: xi = 0 excluded");
        if (std::fabs(xi) > 50.0) throw std::invalid_argument("nonarith_scan: |xi| capped at 50");
        auto est = leading_eigen(assemble_transfer(mu, {0.0, xi}, grid));
        double mod = std::abs(est.value);
        rows.push_back({xi, mod, mod >= 1.0 - 1e-6});
    }
    return rows;
}

GridMeasure left_stationary_vector(const StepDistribution& mu, const CircleGrid& grid) {
    TransferMatrix T = assemble_transfer(mu, {0.0, 0.0}, grid);
    std::vector<std::complex<double>> v(std::size_t(grid.m), {1.0 / grid.m, 0.0});
    for (long it = 0; it < 100000; ++it) {
        auto w = T.apply_transpose(v);
        double sum = 0.0;
        for (auto& x : w) sum += std::abs(x);
        for (auto& x : w) x /= sum;
        double delta = 0.0;
        for (int j = 0; j < grid.m; ++j) delta += std::abs(w[std::size_t(j)] - v[std::size_t(j)]);
        v = std::move(w);
        if (delta < 1e-13) break;
    }
    std::vector<double> node_mass(std::size_t(grid.m));
    double total = 0.0;
    for (int j = 0; j < grid.m; ++j) {
        node_mass[std::size_t(j)] = std::max(0.0, v[std::size_t(j)].real());
        total += node_mass[std::size_t(j)];
    }
    GridMeasure gm;
    gm.m = grid.m;
    gm.w.resize(std::size_t(grid.m));
    // node j sits at the left edge of bin j: split its mass across the two bins it borders
    for (int j = 0; j < grid.m; ++j) {
        int jn = (j + 1) % grid.m;
        gm.w[std::size_t(j)] = 0.5 * (node_mass[std::size_t(j)] + node_mass[std::size_t(jn)]) / total;
    }
    return gm;
}

} // namespace furst
