#pragma once

#include "furst/stationary.hpp"

#include <complex>
#include <string>
#include <vector>

namespace furst {

struct FourierEstimate {
    long long k = 0;
    std::complex<double> value{0.0, 0.0};
    double stderr_ = 0.0; // 1/sqrt(n) bound
    long long n_samples = 0;
};

// hat{nu}(k) = mean of e^{2 i k theta} over the samples
FourierEstimate fourier_coefficient(const EmpiricalMeasure& nu, long long k);

struct DecayBlock {
    long long k_lo = 0, k_hi = 0; // [k_lo, k_hi)
    double max_mag = 0.0;
    double median_mag = 0.0;
    double noise_floor = 0.0;
};

std::vector<DecayBlock> decay_profile(const EmpiricalMeasure& nu,
                                      const std::vector<std::pair<long long, long long>>& blocks);

// Catalog circle maps (degree-one lifts): theta, theta + a*sin(2 theta), theta + b.
struct CircleMap {
    enum Kind { identity_map, shear, shift } kind = identity_map;
    double a = 0.0;

    static CircleMap identity() { return {identity_map, 0.0}; }
    static CircleMap sine_shear(double amp) { return {shear, amp}; }
    static CircleMap rotate(double b) { return {shift, b}; }

    double lift(double t) const {
        switch (kind) {
        case shear: return t + a * std::sin(2.0 * t);
        case shift: return t + a;
        default: return t;
        }
    }
    double deriv(double t) const { return kind == shear ? 1.0 + 2.0 * a * std::cos(2.0 * t) : 1.0; }
    double deriv2(double t) const { return kind == shear ? -4.0 * a * std::sin(2.0 * t) : 0.0; }
};

// Raised-cosine window on an arc of the circle; full() is the constant-one
// window (turns the oscillatory average into a plain coefficient).
struct BumpWindow {
    double center = kPi / 2.0;
    double halfwidth = 0.5;
    bool constant_one = false;

    static BumpWindow full() { return {0.0, kPi, true}; }

    double operator()(double t) const {
        if (constant_one) return 1.0;
        double d = angle_gap(t, center);
        if (d >= halfwidth) return 0.0;
        double c = std::cos(0.5 * kPi * d / halfwidth);
        return c * c;
    }
    double sup_norm() const { return 1.0; }
    double deriv_bound() const { return constant_one ? 0.0 : 0.5 * kPi / halfwidth; }
};

// Window/phase pair with a certified C1 constant; the bound is validated on a
// dense grid at construction.
struct OscillatoryIntegrand {
    CircleMap phi;
    BumpWindow window;
    double c1_bound = 0.0;

    OscillatoryIntegrand(CircleMap p, BumpWindow w);
};

FourierEstimate oscillatory_integral(const EmpiricalMeasure& nu, const OscillatoryIntegrand& integrand, double xi);

struct BernoulliParams {
    double lambda = 0.5;
    int truncation = 47;

    // smallest N with lambda^N < 1e-14
    static BernoulliParams for_lambda(double lambda);
};

inline double golden_lambda() { return 2.0 / (1.0 + std::sqrt(5.0)); }

// prod_{j<N} cos(xi * lambda^j): characteristic function of the truncated
// random signed geometric sum (independence factorizes the expectation)
double bernoulli_fourier(const BernoulliParams& p, double xi);

struct PisotRow {
    int n = 0;
    double xi = 0.0;
    double magnitude = 0.0;
    double running_min = 0.0;
};

// |char fn| along xi_n = pi * lambda^{-n}. For the golden preset the cosine
// arguments pi * phi^m reduce exactly through the Lucas recurrence
// (phi^m = L_m - (-lambda)^m), which keeps every n <= 30 meaningful; naive
// double reduction is used otherwise and n_max stays capped at 30.
std::vector<PisotRow> pisot_scan(const BernoulliParams& p, int n_max);

} // namespace furst
