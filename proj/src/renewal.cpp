#include "furst/renewal.hpp"

#include "furst/lambda_hp.hpp"
#include "furst/parallel.hpp"
#include "furst/quadrature.hpp"
#include "furst/stats.hpp"

#include <algorithm>
#include <cmath>

namespace furst {

namespace {

struct TruncationRule {
    double stop_level;
    long floor_n;
    long cap_n;

    static TruncationRule make(double t, double u_hi, double sigma_hat, double margin, double cap_factor) {
        TruncationRule r;
        r.stop_level = t + u_hi + margin;
        double denom = std::max(sigma_hat, 1e-3);
        double reach = std::max(r.stop_level, 1.0);
        r.floor_n = long(std::ceil(2.0 * reach / denom)) + 8;
        r.cap_n = long(std::ceil(cap_factor * reach / denom)) + 32;
        return r;
    }
};

RenewalEstimate finish(const std::vector<double>& per_path, long cap_hits, long max_n) {
    Accumulator acc;
    for (double v : per_path) acc.add(v);
    RenewalEstimate est;
    est.value = acc.mean();
    est.stderr_ = acc.stderr_mean();
    est.n_paths = long(per_path.size());
    est.max_n_reached = max_n;
    est.cap_hit_fraction = double(cap_hits) / double(per_path.size());
    est.reliable = est.cap_hit_fraction < 1e-3;
    return est;
}

} // namespace

RenewalEstimate renewal_sum(const StepDistribution& mu, const TargetFunction& f, ProjectivePoint x, double t,
                            ScalarKind kind, const RenewalPlan& plan, double sigma_hat, ProjectivePoint x_o) {
    TruncationRule rule = TruncationRule::make(t, f.u_hi(), sigma_hat, plan.margin, plan.cap_factor);
    std::vector<double> per_path(std::size_t(plan.n_paths), 0.0);
    std::vector<uint8_t> capped(std::size_t(plan.n_paths), 0);
    std::vector<long> max_n(std::size_t(plan.n_paths), 0);

    parallel_for(std::size_t(plan.n_paths), [&](std::size_t i) {
        Rng rng = rng_stream(plan.seed, 0x31, uint64_t(i));
        GroupElement product = GroupElement::identity();
        GroupElement inv_product = GroupElement::identity();
        ProjectivePoint pos = x;
        double sigma = 0.0;
        double total = 0.0;
        long n = 0;
        for (;; ++n) {
            double scalar;
            ProjectivePoint arg_point;
            switch (kind) {
            case ScalarKind::cocycle:
                scalar = sigma;
                arg_point = pos;
                break;
            case ScalarKind::cartan:
                scalar = cartan(product).kappa;
                arg_point = pos;
                break;
            default:
                scalar = sigma;
                arg_point = act(inv_product, x_o);
                break;
            }
            total += f.eval(arg_point, scalar - t);
            if ((scalar > rule.stop_level && n >= rule.floor_n) || n >= rule.cap_n) {
                if (n >= rule.cap_n) capped[i] = 1;
                break;
            }
            const GroupElement& letter = mu.atoms[mu.sample_index(rng)].g;
            sigma += cocycle(letter, pos);
            pos = act(letter, pos);
            product = letter * product;
            if (kind == ScalarKind::cartan_inverse) inv_product = inv_product * letter.inverse();
        }
        per_path[i] = total;
        max_n[i] = n;
    });
    long cap_hits = 0;
    long mn = 0;
    for (std::size_t i = 0; i < per_path.size(); ++i) {
        cap_hits += capped[i];
        mn = std::max(mn, max_n[i]);
    }
    return finish(per_path, cap_hits, mn);
}

namespace {

// Walks one path and calls on_cross(record) at every straddling index; the
// inverse orbit is tracked only when requested. Returns (steps, capped).
template <class OnCross>
std::pair<long, bool> scan_crossings(const StepDistribution& mu, Rng rng, ProjectivePoint x,
                                     ProjectivePoint x_prime, double t, bool cartan_scalar, bool minus,
                                     bool track_inverse, const TruncationRule& rule, OnCross&& on_cross) {
    GroupElement product = GroupElement::identity();
    GroupElement inv_product = GroupElement::identity();
    ProjectivePoint pos = x;
    double sigma = 0.0;
    double scalar_prev = 0.0; // sigma or kappa of the empty product
    for (long n = 0;; ++n) {
        const GroupElement& letter = mu.atoms[mu.sample_index(rng)].g;
        double jump_sigma = cocycle(letter, pos);
        ProjectivePoint new_pos = act(letter, pos);
        product = letter * product;
        if (track_inverse) inv_product = inv_product * letter.inverse();
        sigma += jump_sigma;
        double scalar_cur = cartan_scalar ? cartan(product).kappa : sigma;
        bool crossed = minus ? (scalar_prev >= t && t > scalar_cur) : (scalar_prev < t && t <= scalar_cur);
        if (crossed) {
            CrossingRecord rec;
            rec.n = n;
            rec.position = new_pos;
            rec.inverse_position = track_inverse ? act(inv_product, x_prime) : x_prime;
            rec.jump = scalar_cur - scalar_prev;
            rec.residue = scalar_prev - t;
            on_cross(rec);
        }
        pos = new_pos;
        scalar_prev = scalar_cur;
        if ((scalar_cur > rule.stop_level && n >= rule.floor_n) || n >= rule.cap_n)
            return {n, n >= rule.cap_n};
    }
}

} // namespace

RenewalEstimate residue_crossing(const StepDistribution& mu, const TargetFunction& f, ProjectivePoint x,
                                 ProjectivePoint x_prime, double t, ResidueVariant variant,
                                 const RenewalPlan& plan, double sigma_hat) {
    bool cartan_scalar = variant == ResidueVariant::E_P || variant == ResidueVariant::E_P_minus;
    bool minus = variant == ResidueVariant::E_C_minus || variant == ResidueVariant::E_P_minus;
    bool full = f.arity == TargetFunction::Arity::full;
    TruncationRule rule = TruncationRule::make(t, mu.max_kappa(), sigma_hat, plan.margin, plan.cap_factor);

    std::vector<double> per_path(std::size_t(plan.n_paths), 0.0);
    std::vector<uint8_t> capped(std::size_t(plan.n_paths), 0);
    std::vector<long> max_n(std::size_t(plan.n_paths), 0);

    parallel_for(std::size_t(plan.n_paths), [&](std::size_t i) {
        double total = 0.0;
        auto [steps, hit_cap] = scan_crossings(
            mu, rng_stream(plan.seed, 0x32, uint64_t(i)), x, x_prime, t, cartan_scalar, minus, full, rule,
            [&](const CrossingRecord& rec) {
                total += full ? f.eval(rec.inverse_position, rec.position, rec.jump, rec.residue)
                              : f.eval(rec.position, rec.jump, rec.residue);
            });
        per_path[i] = total;
        max_n[i] = steps;
        capped[i] = hit_cap ? 1 : 0;
    });
    long cap_hits = 0;
    long mn = 0;
    for (std::size_t i = 0; i < per_path.size(); ++i) {
        cap_hits += capped[i];
        mn = std::max(mn, max_n[i]);
    }
    return finish(per_path, cap_hits, mn);
}

std::vector<CrossingRecord> collect_crossings(const StepDistribution& mu, ProjectivePoint x,
                                              ProjectivePoint x_prime, double t, ResidueVariant variant,
                                              const RenewalPlan& plan, long path_index, double sigma_hat) {
    bool cartan_scalar = variant == ResidueVariant::E_P || variant == ResidueVariant::E_P_minus;
    bool minus = variant == ResidueVariant::E_C_minus || variant == ResidueVariant::E_P_minus;
    TruncationRule rule = TruncationRule::make(t, mu.max_kappa(), sigma_hat, plan.margin, plan.cap_factor);
    std::vector<CrossingRecord> records;
    scan_crossings(mu, rng_stream(plan.seed, 0x32, uint64_t(path_index)), x, x_prime, t, cartan_scalar, minus,
                   true, rule, [&](const CrossingRecord& rec) { records.push_back(rec); });
    return records;
}

RenewalEstimate limit_oracle(const StepDistribution& mu, const TargetFunction& f, ResidueVariant variant,
                             const EmpiricalMeasure& nu_pool, const EmpiricalMeasure& nu_check_pool,
                             double sigma_hat, long n_draws, uint64_t seed, double t) {
    bool minus = variant == ResidueVariant::E_C_minus || variant == ResidueVariant::E_P_minus;
    bool full = f.arity == TargetFunction::Arity::full;
    bool cutoff = variant != ResidueVariant::E;

    std::vector<double> per_draw(std::size_t(n_draws), 0.0);
    parallel_for(std::size_t(n_draws), [&](std::size_t i) {
        Rng rng = rng_stream(seed, 0x33, uint64_t(i));
        ProjectivePoint y{nu_pool.angles[std::size_t(rng.next_u64() % nu_pool.angles.size())]};
        const GroupElement& h = mu.atoms[mu.sample_index(rng)].g;
        double v = cocycle(h, y);
        ProjectivePoint hy = act(h, y);
        double u_lo, u_hi;
        if (cutoff) {
            if (minus) {
                u_lo = 0.0;
                u_hi = std::max(0.0, -v);
            } else {
                u_lo = std::min(0.0, -v);
                u_hi = 0.0;
            }
        } else {
            u_lo = std::max(-t, f.u_lo());
            u_hi = f.u_hi();
        }
        double inner = 0.0;
        if (u_hi - u_lo > 1e-14) { // windows below fp noise are empty
            double lo = std::max(u_lo, f.u_lo());
            double hi = std::min(u_hi, f.u_hi());
            if (hi > lo) inner = adaptive_simpson([&](double u) { return f.fu(u); }, lo, hi, 1e-8);
        }
        double val = inner * f.fy(hy) * f.fv(v);
        if (full) {
            ProjectivePoint yp{nu_check_pool.angles[std::size_t(rng.next_u64() % nu_check_pool.angles.size())]};
            val *= f.fyp(yp);
        }
        // empty u-window contributes zero even when sigma_hat is zero
        per_draw[i] = val == 0.0 ? 0.0 : val / sigma_hat;
    });
    Accumulator acc;
    for (double v : per_draw) acc.add(v);
    RenewalEstimate est;
    est.value = acc.mean();
    est.stderr_ = acc.stderr_mean();
    est.n_paths = n_draws;
    est.reliable = true;
    return est;
}

StoppingCheck stopping_identity_check(const StepDistribution& mu, const std::function<double(double)>& test_fn,
                                      double t, const RenewalPlan& plan, const EmpiricalMeasure& nu_pool,
                                      double sigma_hat) {
    double max_jump = mu.max_kappa();
    TruncationRule rule = TruncationRule::make(t, max_jump, sigma_hat, plan.margin, plan.cap_factor);

    std::vector<double> per_path(std::size_t(plan.n_paths), 0.0);
    std::vector<long> ups(std::size_t(plan.n_paths), 0), downs(std::size_t(plan.n_paths), 0);
    std::vector<uint8_t> capped(std::size_t(plan.n_paths), 0), parity_bad(std::size_t(plan.n_paths), 0);

    parallel_for(std::size_t(plan.n_paths), [&](std::size_t i) {
        Rng rng = rng_stream(plan.seed, 0x34, uint64_t(i));
        ProjectivePoint x{nu_pool.angles[std::size_t(rng.next_u64() % nu_pool.angles.size())]};
        GroupElement product = GroupElement::identity(); // letters appended on the right
        double kappa_prev = 0.0;
        double total = 0.0;
        long up = 0, down = 0;
        for (long n = 1;; ++n) {
            product = product * mu.atoms[mu.sample_index(rng)].g;
            double kappa_cur = cartan(product).kappa;
            if (kappa_prev < t && t <= kappa_cur) {
                total += test_fn(act(product, x).theta);
                ++up;
            } else if (kappa_prev >= t && t > kappa_cur) {
                total -= test_fn(act(product, x).theta);
                ++down;
            }
            kappa_prev = kappa_cur;
            if ((kappa_cur > rule.stop_level && n >= rule.floor_n) || n >= rule.cap_n) {
                if (n >= rule.cap_n) capped[i] = 1;
                if (kappa_cur > t && up - down != 1) parity_bad[i] = 1;
                break;
            }
        }
        per_path[i] = total;
        ups[i] = up;
        downs[i] = down;
    });

    Accumulator rhs_acc, lhs_acc;
    StoppingCheck out;
    long cap_hits = 0;
    for (std::size_t i = 0; i < per_path.size(); ++i) {
        rhs_acc.add(per_path[i]);
        out.up_crossings += ups[i];
        out.down_crossings += downs[i];
        cap_hits += capped[i];
        if (parity_bad[i] && !capped[i]) out.crossing_parity_ok = false;
    }
    for (double a : nu_pool.angles) lhs_acc.add(test_fn(a));
    out.lhs = lhs_acc.mean();
    out.lhs_stderr = lhs_acc.stderr_mean();
    out.rhs = rhs_acc.mean();
    out.rhs_stderr = rhs_acc.stderr_mean();
    double denom = std::sqrt(out.lhs_stderr * out.lhs_stderr + out.rhs_stderr * out.rhs_stderr);
    out.z_score = denom > 0.0 ? std::fabs(out.lhs - out.rhs) / denom : 0.0;
    out.cap_hit_fraction = double(cap_hits) / double(plan.n_paths);
    return out;
}

LambdaCheck lambda_approx_check(const StepDistribution& mu, ProjectivePoint x, ProjectivePoint y, int xi_sign,
                                double s, double t, double eps3, const RenewalPlan& plan, const CircleMap& phi,
                                const BumpWindow& window) {
    double s1 = eps3 * s;
    if (!(t > 2.0 * s)) throw std::invalid_argument("lambda_approx_check: need t > 2s");
    if (!(distance(x, y) > 2.0 * std::exp(-s1)))
        throw std::invalid_argument("lambda_approx_check: base points too close for the filter scale");

    double max_jump = mu.max_kappa();
    TruncationRule rule = TruncationRule::make(t, max_jump, std::max(0.2, 0.5 * max_jump), plan.margin, plan.cap_factor);

    std::vector<std::vector<double>> diffs(static_cast<std::size_t>(plan.n_paths));
    std::vector<long> scanned(std::size_t(plan.n_paths), 0);

    LambdaEvalContext ctx;
    for (const auto& atom : mu.atoms) ctx.atom_mats.push_back(represented_matrix(atom.g));
    ctx.theta_x = x.theta;
    ctx.theta_y = y.theta;
    ctx.xi_sign = xi_sign;
    ctx.log_xi = 2.0 * t + s;
    ctx.phi_kind = int(phi.kind);
    ctx.phi_a = phi.a;
    ctx.win_center = window.center;
    ctx.win_halfwidth = window.halfwidth;

    parallel_for(std::size_t(plan.n_paths), [&](std::size_t i) {
        Rng rng = rng_stream(plan.seed, 0x35, uint64_t(i));
        GroupElement product = GroupElement::identity(); // right extension order
        std::vector<uint16_t> letters;
        double kappa_prev = 0.0;
        for (long n = 1;; ++n) {
            std::size_t letter = mu.sample_index(rng);
            letters.push_back(uint16_t(letter));
            product = product * mu.atoms[letter].g;
            CartanTriple ct = cartan(product);
            double kappa_cur = ct.kappa;
            if (kappa_prev < t && t <= kappa_cur) {
                ++scanned[i];
                // filter: jump size, density-axis alignment, inverse-orbit separation
                bool ok = std::fabs(kappa_cur - kappa_prev) < s1;
                if (ok) {
                    GroupElement ginv = product.inverse();
                    ProjectivePoint ginv_x = act(ginv, x);
                    ok = distance(ginv_x, x) > 2.0 * std::exp(-s1) && distance(ginv_x, y) > 2.0 * std::exp(-s1);
                    if (ok) {
                        // log d(density axis, g^{-1} x) = -kappa - sig(g^{-1}, x) + log d(attract-perp, x)
                        double log_d = -kappa_cur - cocycle(ginv, x) +
                                       std::log(std::max(distance(ct.x_attract.perp(), x), 1e-300));
                        ok = log_d < -t;
                    }
                    if (ok) {
                        int sgn = orientation_sign(x, y, ct.x_density);
                        if (sgn != 0) diffs[i].push_back(lambda_diff_hp(ctx, letters, sgn));
                    }
                }
            }
            kappa_prev = kappa_cur;
            if ((kappa_cur > rule.stop_level && n >= rule.floor_n) || n >= rule.cap_n) break;
        }
    });

    LambdaCheck out;
    double sum = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        out.scanned += scanned[i];
        for (double d : diffs[i]) {
            out.diffs.push_back(d);
            out.max_diff = std::max(out.max_diff, d);
            sum += d;
            ++out.retained;
        }
    }
    out.mean_diff = out.retained > 0 ? sum / double(out.retained) : 0.0;
    out.empty_filter = out.retained == 0;
    return out;
}

OscBoundCheck osc_bound_check(double b1, double b2, double lam) {
    if (b1 > b2) throw std::invalid_argument("osc_bound_check: need b1 <= b2");
    if (lam == 0.0) throw std::invalid_argument("osc_bound_check: lambda must be nonzero");
    OscBoundCheck out;
    out.bound = 2.0 * (std::exp(b1) + std::exp(b2)) / std::fabs(lam);
    out.integral_modulus = b1 == b2 ? 0.0 : std::abs(oscillatory_exp_integral(b1, b2, lam, 1e-10));
    out.pass = out.integral_modulus <= out.bound + 1e-9;
    return out;
}

} // namespace furst
