#include "furst/fourier.hpp"

#include "furst/parallel.hpp"
#include "furst/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace furst {

FourierEstimate fourier_coefficient(const EmpiricalMeasure& nu, long long k) {
    if (nu.angles.empty()) throw std::invalid_argument("fourier_coefficient: empty sample set");
    std::complex<double> sum{0.0, 0.0};
    for (double t : nu.angles) {
        double ph = 2.0 * double(k) * t;
        sum += std::complex<double>(std::cos(ph), std::sin(ph));
    }
    FourierEstimate est;
    est.k = k;
    est.n_samples = (long long)nu.angles.size();
    est.value = sum / double(nu.angles.size());
    est.stderr_ = 1.0 / std::sqrt(double(nu.angles.size()));
    return est;
}

std::vector<DecayBlock> decay_profile(const EmpiricalMeasure& nu,
                                      const std::vector<std::pair<long long, long long>>& blocks) {
    std::size_t n = nu.angles.size();
    double noise = 1.0 / std::sqrt(double(n));
    std::vector<DecayBlock> out;
    for (auto [k_lo, k_hi] : blocks) {
        if (k_hi <= k_lo) throw std::invalid_argument("decay_profile: empty block");
        std::size_t width = std::size_t(k_hi - k_lo);
        std::vector<std::complex<double>> acc(width, {0.0, 0.0});
        // per-sample phase recurrence across the block: z^k -> z^{k+1}
        int workers = thread_budget();
        std::size_t chunk = (n + std::size_t(workers) - 1) / std::size_t(workers);
        std::vector<std::vector<std::complex<double>>> partial(static_cast<std::size_t>(workers));
        parallel_for(std::size_t(workers), [&](std::size_t wi) {
            std::size_t lo = wi * chunk, hi = std::min(n, lo + chunk);
            auto& mine = partial[wi];
            mine.assign(width, {0.0, 0.0});
            for (std::size_t i = lo; i < hi; ++i) {
                double t = nu.angles[i];
                std::complex<double> z(std::cos(2.0 * t), std::sin(2.0 * t));
                double ph0 = 2.0 * double(k_lo) * t;
                std::complex<double> w(std::cos(ph0), std::sin(ph0));
                for (std::size_t j = 0; j < width; ++j) {
                    mine[j] += w;
                    w *= z;
                }
            }
        });
        for (const auto& mine : partial)
            if (!mine.empty())
                for (std::size_t j = 0; j < width; ++j) acc[j] += mine[j];
        std::vector<double> mags(width);
        double max_mag = 0.0;
        for (std::size_t j = 0; j < width; ++j) {
            mags[j] = std::abs(acc[j]) / double(n);
            max_mag = std::max(max_mag, mags[j]);
        }
        DecayBlock blk;
        blk.k_lo = k_lo;
        blk.k_hi = k_hi;
        blk.max_mag = max_mag;
        blk.median_mag = median_of(mags);
        blk.noise_floor = noise;
        out.push_back(blk);
    }
    return out;
}

OscillatoryIntegrand::OscillatoryIntegrand(CircleMap p, BumpWindow w) : phi(p), window(w) {
    // dense-grid certification of |phi'| >= 1/C1 on supp r and the C1/C2 norms
    const int nodes = 10000;
    double min_signed_deriv = 1e300; // signed: a sign change means a zero between nodes
    double max_abs_phi = 0.0, max_d1 = 0.0, max_d2 = 0.0;
    for (int i = 0; i < nodes; ++i) {
        double t = double(i) * kPi / nodes;
        double d1 = phi.deriv(t);
        max_abs_phi = std::max(max_abs_phi, std::fabs(phi.lift(t)));
        max_d1 = std::max(max_d1, std::fabs(d1));
        max_d2 = std::max(max_d2, std::fabs(phi.deriv2(t)));
        if (window(t) > 0.0) min_signed_deriv = std::min(min_signed_deriv, d1);
    }
    double min_deriv_on_supp = min_signed_deriv;
    if (!(min_deriv_on_supp > 1e-8))
        throw std::invalid_argument("OscillatoryIntegrand: phase derivative vanishes on the window support");
    double phi_c2 = std::max(max_abs_phi, std::max(max_d1, max_d2));
    double r_c1 = std::max(window.sup_norm(), window.deriv_bound());
    c1_bound = std::max(std::max(phi_c2, r_c1), 1.0 / min_deriv_on_supp);
}

FourierEstimate oscillatory_integral(const EmpiricalMeasure& nu, const OscillatoryIntegrand& integrand, double xi) {
    if (nu.angles.empty()) throw std::invalid_argument("oscillatory_integral: empty sample set");
    std::complex<double> sum{0.0, 0.0};
    for (double t : nu.angles) {
        double r = integrand.window(t);
        if (r == 0.0) continue;
        double ph = xi * integrand.phi.lift(t);
        sum += r * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    FourierEstimate est;
    est.k = (long long)std::llround(xi);
    est.n_samples = (long long)nu.angles.size();
    est.value = sum / double(nu.angles.size());
    est.stderr_ = 1.0 / std::sqrt(double(nu.angles.size()));
    return est;
}

BernoulliParams BernoulliParams::for_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("BernoulliParams: lambda must be in (0,1)");
    BernoulliParams p;
    p.lambda = lambda;
    p.truncation = int(std::ceil(std::log(1e-14) / std::log(lambda)));
    return p;
}

double bernoulli_fourier(const BernoulliParams& p, double xi) {
    double prod = 1.0;
    double arg = xi;
    for (int j = 0; j < p.truncation; ++j) {
        prod *= std::cos(arg);
        arg *= p.lambda;
    }
    return prod;
}

namespace {

bool is_golden(double lambda) { return std::fabs(lambda - golden_lambda()) < 1e-12; }

// |cos(pi * phi^m)| with phi the golden ratio: phi^m + (-1/phi)^m is the
// integer Lucas number, so the value reduces to |cos(pi * lambda^m)| exactly.
double golden_cos_mag(int m, double lambda) { return std::fabs(std::cos(kPi * std::pow(lambda, m))); }

} // namespace

std::vector<PisotRow> pisot_scan(const BernoulliParams& p, int n_max) {
    if (n_max > 30) throw std::invalid_argument("pisot_scan: n_max capped at 30");
    std::vector<PisotRow> rows;
    double running = 1e300;
    for (int n = 0; n <= n_max; ++n) {
        double xi = kPi * std::pow(p.lambda, -n);
        double mag;
        if (is_golden(p.lambda)) {
            mag = 1.0;
            for (int j = 0; j < p.truncation; ++j) {
                int m = n - j; // cosine argument is pi * phi^m (m >= 0) or pi * lambda^{-m}
                mag *= m >= 0 ? golden_cos_mag(m, p.lambda) : golden_cos_mag(-m, p.lambda);
            }
        } else {
            long double prod = 1.0L;
            long double lam = (long double)p.lambda;
            long double arg = (long double)kPi * powl(1.0L / lam, n);
            for (int j = 0; j < p.truncation; ++j) {
                prod *= cosl(arg);
                arg *= lam;
            }
            mag = std::fabs(double(prod));
        }
        running = std::min(running, mag);
        rows.push_back({n, xi, mag, running});
    }
    return rows;
}

} // namespace furst
