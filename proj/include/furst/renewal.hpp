#pragma once

#include "furst/fourier.hpp"
#include "furst/measure.hpp"
#include "furst/stationary.hpp"
#include "furst/target.hpp"
#include "furst/walk.hpp"

#include <functional>
#include <vector>

namespace furst {

struct RenewalEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long n_paths = 0;
    long max_n_reached = 0;
    double cap_hit_fraction = 0.0;
    bool reliable = true; // cap-hit fraction below 1e-3
};

struct RenewalPlan {
    uint64_t seed = 1;
    long n_paths = 20000;
    double margin = 5.0;     // continue while the scalar is below t + u_hi + margin
    double cap_factor = 4.0; // hard cap at cap_factor * (t + u_hi) / sigma_hat steps
};

enum class ScalarKind { cocycle, cartan, cartan_inverse };

// Occupation sum of the recentered scalar ladder: per path, accumulate
// f(position, scalar - t) at every step from n = 0 (identity term included).
RenewalEstimate renewal_sum(const StepDistribution& mu, const TargetFunction& f, ProjectivePoint x, double t,
                            ScalarKind kind, const RenewalPlan& plan, double sigma_hat,
                            ProjectivePoint x_o = e1());

enum class ResidueVariant { E, E_C, E_C_minus, E_P, E_P_minus };

// One level crossing of the scalar ladder: the position after the straddling
// step, the inverse orbit of x_prime (when tracked), the straddling jump v
// and the residue u = scalar_before - t. Plus-variant records satisfy
// u in [-v, 0) by construction; minus variants u in [0, -v).
struct CrossingRecord {
    long n = 0;
    ProjectivePoint position;
    ProjectivePoint inverse_position;
    double jump = 0.0;
    double residue = 0.0;
};

// Crossing records of a single path (diagnostic companion to
// residue_crossing, same truncation rule and stream derivation).
std::vector<CrossingRecord> collect_crossings(const StepDistribution& mu, ProjectivePoint x,
                                              ProjectivePoint x_prime, double t, ResidueVariant variant,
                                              const RenewalPlan& plan, long path_index, double sigma_hat);

// Crossing sums: accumulate f at every index where the scalar ladder crosses
// level t upward (plus variants) or downward (minus variants); the scalar is
// the cocycle for E/E_C and the Cartan projection for E_P. Multiple crossings
// per path all count.
RenewalEstimate residue_crossing(const StepDistribution& mu, const TargetFunction& f, ProjectivePoint x,
                                 ProjectivePoint x_prime, double t, ResidueVariant variant,
                                 const RenewalPlan& plan, double sigma_hat);

// Monte Carlo evaluation of the limiting values: draws y from the nu pool,
// h from mu, y' from the reversed pool, and integrates the u slot over
// [-sig(h,y), 0] (plus) or [0, -sig(h,y)] (minus), scaled by 1/sigma_hat.
// For the un-cutoff variants (E and the scalar ladder) the u window is
// [max(-t, u_lo), u_hi].
RenewalEstimate limit_oracle(const StepDistribution& mu, const TargetFunction& f, ResidueVariant variant,
                             const EmpiricalMeasure& nu_pool, const EmpiricalMeasure& nu_check_pool,
                             double sigma_hat, long n_draws, uint64_t seed, double t = 1e18);

struct StoppingCheck {
    double lhs = 0.0, rhs = 0.0;
    double lhs_stderr = 0.0, rhs_stderr = 0.0;
    double z_score = 0.0;
    long long up_crossings = 0, down_crossings = 0;
    bool crossing_parity_ok = true; // per path: ups - downs == 1 once the walk ends above t
    double cap_hit_fraction = 0.0;
};

// Mass-transport identity for the level-t crossing set: the nu-average of a
// test function equals the expected signed sum of its values at the upward
// minus downward Cartan crossings, letters appended on the right.
StoppingCheck stopping_identity_check(const StepDistribution& mu, const std::function<double(double)>& test_fn,
                                      double t, const RenewalPlan& plan, const EmpiricalMeasure& nu_pool,
                                      double sigma_hat);

struct LambdaCheck {
    double max_diff = 0.0;
    double mean_diff = 0.0;
    long retained = 0;
    long scanned = 0;
    bool empty_filter = false;
    std::vector<double> diffs;
};

// Compares the oscillatory kernel evaluated two ways on the filtered crossing
// set: through the exact cocycle transport of the pair distance, and through
// the Cartan projection with the two inverse-orbit distances. The true gap is
// far below double rounding at the calibrated frequencies, so both values are
// evaluated in extended precision.
LambdaCheck lambda_approx_check(const StepDistribution& mu, ProjectivePoint x, ProjectivePoint y, int xi_sign,
                                double s, double t, double eps3, const RenewalPlan& plan, const CircleMap& phi,
                                const BumpWindow& window);

struct OscBoundCheck {
    double integral_modulus = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// |integral of e^{i lam e^{-u}} du| <= 2 (e^{b1} + e^{b2}) / |lam|
OscBoundCheck osc_bound_check(double b1, double b2, double lam);

} // namespace furst
