#include "furst/stationary.hpp"

#include "furst/parallel.hpp"
#include "furst/rng.hpp"
#include "furst/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace furst {

double EmpiricalMeasure::cdf(double theta) const {
    auto lo = std::lower_bound(angles.begin(), angles.end(), theta);
    auto hi = std::upper_bound(angles.begin(), angles.end(), theta);
    double below = double(lo - angles.begin());
    double at = double(hi - lo);
    return (below + 0.5 * at) / double(angles.size());
}

double EmpiricalMeasure::circular_count(double lo, double len) const {
    double a = mod_pi(lo);
    double b = a + len;
    auto count_below = [&](double x) { return double(std::lower_bound(angles.begin(), angles.end(), x) - angles.begin()); };
    if (b <= kPi) return count_below(b) - count_below(a);
    return (double(angles.size()) - count_below(a)) + count_below(b - kPi);
}

long default_burn_in(double sigma_hat) {
    if (!(sigma_hat > 1e-6)) return 200;
    return long(std::ceil(30.0 / sigma_hat));
}

EmpiricalMeasure mc_stationary(const StepDistribution& mu, Direction dir, long burn_in, long n_samples,
                               uint64_t seed, ProjectivePoint base) {
    // reversed direction samples the inverted atoms with the same streams, so
    // mc_stationary(mu, reversed) == mc_stationary(mu.reversed(), forward)
    StepDistribution rev_storage;
    const StepDistribution* use = &mu;
    if (dir == Direction::reversed) {
        rev_storage = mu.reversed();
        use = &rev_storage;
    }
    std::vector<double> out(static_cast<std::size_t>(n_samples));
    parallel_for(std::size_t(n_samples), [&](std::size_t i) {
        Rng rng = rng_stream(seed, 0x21, uint64_t(i));
        ProjectivePoint pos = base;
        // path i runs burn_in + (i mod (burn_in+1)) steps: any time past the
        // burn-in has the stationary law, and degenerate rotation laws sweep
        // their orbit instead of pinning a single point
        long steps = burn_in + long(i % std::size_t(burn_in + 1));
        for (long n = 0; n < steps; ++n) pos = act(use->atoms[use->sample_index(rng)].g, pos);
        out[i] = pos.theta;
    });
    std::sort(out.begin(), out.end());
    EmpiricalMeasure em;
    em.angles = std::move(out);
    em.burn_in = burn_in;
    em.provenance = use->name;
    return em;
}

double GridMeasure::cdf(double theta) const {
    if (theta <= 0.0) return 0.0;
    if (theta >= kPi) return 1.0;
    double h = kPi / m;
    double pos = theta / h;
    int j = int(pos);
    if (j >= m) j = m - 1;
    double acc = 0.0;
    for (int k = 0; k < j; ++k) acc += w[std::size_t(k)];
    return acc + w[std::size_t(j)] * (pos - double(j));
}

namespace {

bool is_identity_kernel(const StepDistribution& mu) {
    for (const auto& a : mu.atoms) {
        if (std::fabs(a.g.log_scale) > 1e-9) return false;
        const auto& m = a.g.m;
        double dplus = std::max(std::max(std::fabs(m[0] - 1), std::fabs(m[3] - 1)),
                                std::max(std::fabs(m[1]), std::fabs(m[2])));
        double dminus = std::max(std::max(std::fabs(m[0] + 1), std::fabs(m[3] + 1)),
                                 std::max(std::fabs(m[1]), std::fabs(m[2])));
        if (std::min(dplus, dminus) > 1e-9) return false;
    }
    return true;
}

} // namespace

GridMeasure ulam_stationary(const StepDistribution& mu, Direction dir, int m) {
    if (m < 16) throw std::invalid_argument("ulam_stationary: m must be at least 16");
    StepDistribution law = dir == Direction::forward ? mu : mu.reversed();

    GridMeasure gm;
    gm.m = m;
    if (is_identity_kernel(law)) {
        gm.identity_kernel = true;
        gm.w.assign(std::size_t(m), 1.0 / double(m));
        return gm;
    }

    double h = kPi / m;
    struct Entry {
        int col;
        double val;
    };
    auto rows = std::vector<std::vector<Entry>>(std::size_t(m));

    parallel_for(std::size_t(m), [&](std::size_t j) {
        double A = double(j) * h, B = double(j + 1) * h;
        for (const auto& atom : law.atoms) {
            GroupElement ginv = atom.g.inverse();
            double ya = act(atom.g, ProjectivePoint::from_angle(A)).theta;
            double yb = act(atom.g, ProjectivePoint::from_angle(B)).theta;
            double len = mod_pi(yb - ya);
            if (len == 0.0) len = kPi * 1e-15;
            // walk bin edges along the image arc; preimages give exact fractions
            double cur = ya;
            double end_u = ya + len;
            double pre_cur = A;
            long k = long(std::floor(cur / h));
            while (cur < end_u - 1e-15) {
                double next_edge = double(k + 1) * h;
                double seg_end = std::min(next_edge, end_u);
                double pre_end;
                if (seg_end >= end_u - 1e-15) {
                    pre_end = B;
                } else {
                    pre_end = act(ginv, ProjectivePoint::from_angle(seg_end)).theta;
                    // the preimage lies in [A, B]; unwrap fp drift at the edges
                    if (pre_end < A) pre_end = A;
                    if (pre_end > B) pre_end = B;
                }
                double frac = (pre_end - pre_cur) / h;
                if (frac > 0.0) {
                    int col = int((long(std::floor((cur + 0.5 * (seg_end - cur)) / h))) % m);
                    rows[j].push_back({col, atom.weight * frac});
                }
                pre_cur = pre_end;
                cur = seg_end;
                ++k;
            }
        }
        // stochasticity to fp: renormalize the row
        double s = 0.0;
        for (const auto& e : rows[j]) s += e.val;
        if (s > 0.0)
            for (auto& e : rows[j]) e.val /= s;
    });

    std::vector<double> pi(std::size_t(m), 1.0 / double(m));
    std::vector<double> next(static_cast<std::size_t>(m));
    double residual = 1.0;
    const long max_iter = 100000;
    for (long it = 0; it < max_iter; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int j = 0; j < m; ++j) {
            double pj = pi[std::size_t(j)];
            if (pj == 0.0) continue;
            for (const auto& e : rows[std::size_t(j)]) next[std::size_t(e.col)] += pj * e.val;
        }
        residual = 0.0;
        for (int j = 0; j < m; ++j) residual += std::fabs(next[std::size_t(j)] - pi[std::size_t(j)]);
        std::swap(pi, next);
        if (residual <= 1e-12) break;
    }
    if (residual > 1e-10) throw NoConvergence("ulam_stationary: residual above 1e-10 after 1e5 iterations");
    double total = 0.0;
    for (double v : pi) total += v;
    for (double& v : pi) v /= total;
    gm.w = std::move(pi);
    return gm;
}

void write_grid_csv(const GridMeasure& gm, std::ostream& os) {
    os << "bin_index,theta_lo,theta_hi,weight\n";
    char buf[128];
    for (int j = 0; j < gm.m; ++j) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", j, gm.theta_lo(j), gm.theta_hi(j),
                      gm.w[std::size_t(j)]);
        os << buf;
    }
}

namespace {

// circular interval mass [lo, lo+len) mod pi
double interval_mass(const EmpiricalMeasure& em, double lo, double len) {
    return em.circular_count(lo, len) / double(em.angles.size());
}

double grid_lin_cdf(const GridMeasure& g, double x) { return g.cdf(x); }

double interval_mass(const GridMeasure& g, double lo, double len) {
    double a = mod_pi(lo);
    double b = a + len;
    if (b <= kPi) return grid_lin_cdf(g, b) - grid_lin_cdf(g, a);
    return 1.0 - grid_lin_cdf(g, a) + grid_lin_cdf(g, b - kPi);
}

// rotated CDF at an evaluation point that is an atom of an empirical measure:
// midpoint convention counts half the mass sitting exactly at the point
double rotated_cdf(const EmpiricalMeasure& em, double offset, double point) {
    double len = mod_pi(point - offset);
    double below = interval_mass(em, offset, len);
    auto lo = std::lower_bound(em.angles.begin(), em.angles.end(), mod_pi(point));
    auto hi = std::upper_bound(em.angles.begin(), em.angles.end(), mod_pi(point));
    return below + 0.5 * double(hi - lo) / double(em.angles.size());
}

double rotated_cdf(const GridMeasure& g, double offset, double point) {
    return interval_mass(g, offset, mod_pi(point - offset));
}

template <class MA, class MB>
double ks_at_offsets(const MA& a, const MB& b, const std::vector<double>& pts_a, const std::vector<double>& pts_b) {
    double best = 2.0;
    const int n_offsets = 64;
    for (int k = 0; k < n_offsets; ++k) {
        double o = double(k) * kPi / n_offsets;
        double sup = 0.0;
        for (double p : pts_a) sup = std::max(sup, std::fabs(rotated_cdf(a, o, p) - rotated_cdf(b, o, p)));
        for (double p : pts_b) sup = std::max(sup, std::fabs(rotated_cdf(a, o, p) - rotated_cdf(b, o, p)));
        best = std::min(best, sup);
    }
    return best;
}

std::vector<double> breakpoints(const EmpiricalMeasure& em) { return em.angles; }

std::vector<double> breakpoints(const GridMeasure& g) {
    std::vector<double> pts(static_cast<std::size_t>(g.m));
    for (int j = 0; j < g.m; ++j) pts[std::size_t(j)] = g.theta_lo(j);
    return pts;
}

} // namespace

double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    return ks_at_offsets(a, b, breakpoints(a), breakpoints(b));
}
// Comparisons involving a grid measure are evaluated at bin edges only: the
// binned CDF is exact there, while sample positions inside a bin would mostly
// measure the within-bin smearing (up to half the heaviest bin mass).
double kolmogorov_distance(const EmpiricalMeasure& a, const GridMeasure& b) {
    return ks_at_offsets(a, b, {}, breakpoints(b));
}
double kolmogorov_distance(const GridMeasure& a, const GridMeasure& b) {
    return ks_at_offsets(a, b, breakpoints(a), breakpoints(b));
}

namespace {

template <class Measure>
HolderFit holder_fit(const Measure& nu, const std::vector<double>& radii, int n_centers,
                     const std::vector<double>& centers) {
    HolderFit fit;
    std::vector<double> xs, ys;
    for (double r : radii) {
        double rr = std::min(r, 1.0);
        double hw = std::asin(rr);
        double max_mass = 0.0;
        for (double c : centers) max_mass = std::max(max_mass, interval_mass(nu, c - hw, 2.0 * hw));
        fit.table.push_back({r, max_mass});
        xs.push_back(std::log(r));
        ys.push_back(std::log(std::max(max_mass, 1e-12)));
    }
    (void)n_centers;
    auto lf = least_squares(xs, ys);
    fit.alpha_hat = lf.slope;
    fit.log_c_hat = lf.intercept;
    return fit;
}

} // namespace

HolderFit holder_probe(const EmpiricalMeasure& nu, const std::vector<double>& radii, int n_centers) {
    std::vector<double> centers;
    centers.reserve(std::size_t(n_centers));
    std::size_t n = nu.angles.size();
    for (int c = 0; c < n_centers; ++c) {
        std::size_t idx = std::size_t((double(c) + 0.5) / double(n_centers) * double(n));
        if (idx >= n) idx = n - 1;
        centers.push_back(nu.angles[idx]);
    }
    return holder_fit(nu, radii, n_centers, centers);
}

HolderFit holder_probe(const GridMeasure& nu, const std::vector<double>& radii, int n_centers) {
    // measure quantiles as probe centers
    std::vector<double> centers;
    centers.reserve(std::size_t(n_centers));
    double acc = 0.0;
    int j = 0;
    for (int c = 0; c < n_centers; ++c) {
        double target = (double(c) + 0.5) / double(n_centers);
        while (j < nu.m - 1 && acc + nu.w[std::size_t(j)] < target) {
            acc += nu.w[std::size_t(j)];
            ++j;
        }
        centers.push_back(0.5 * (nu.theta_lo(j) + nu.theta_hi(j)));
    }
    return holder_fit(nu, radii, n_centers, centers);
}

} // namespace furst
