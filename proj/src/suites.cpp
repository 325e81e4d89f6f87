#include "furst/suites.hpp"

#include "furst/fourier.hpp"
#include "furst/renewal.hpp"
#include "furst/stats.hpp"
#include "furst/spectral.hpp"
#include "furst/walk.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace furst {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

CheckRow row(const std::string& id, const std::string& ref, double lhs, double rhs, double tol, bool pass,
             double ms) {
    return {id, ref, lhs, rhs, tol, pass, ms};
}

// the mixed-scale control measure used where sign-changing and spread-out
// jumps are needed (single-scale presets put almost all crossing jumps at the
// top of their range)
StepDistribution threshold_mix() {
    return StepDistribution({{0.3, GroupElement::rotation(0.8)},
                             {0.3, GroupElement::diagonal(1.0)},
                             {0.25, GroupElement::diagonal(2.2)},
                             {0.15, GroupElement::diagonal(5.0)}},
                            "threshold-mix");
}

} // namespace

Lab::Lab(const Config& c) : cfg(c), out_dir(c.get_str("run.out_dir")), mu(c.measure()) {}

uint64_t Lab::seed_for(uint64_t module_id, uint64_t experiment_id) const {
    Rng r = rng_stream(cfg.get_seed(), module_id, experiment_id);
    return r.next_u64();
}

double Lab::sigma_hat() {
    if (!sigma_) {
        auto est = lyapunov_estimate(mu, cfg.scaled("walk.lyap_steps", 500), cfg.scaled("walk.lyap_paths", 64),
                                     seed_for(2, 1));
        sigma_ = est.sigma_hat;
        sigma_se_ = est.stderr_;
    }
    return *sigma_;
}

double Lab::sigma_stderr() {
    sigma_hat();
    return *sigma_se_;
}

const EmpiricalMeasure& Lab::nu_pool() {
    if (!nu_)
        nu_ = mc_stationary(mu, Direction::forward, default_burn_in(sigma_hat()),
                            cfg.scaled("stationary.samples", 1000), seed_for(3, 1));
    return *nu_;
}

const EmpiricalMeasure& Lab::nu_check_pool() {
    if (!nu_check_)
        nu_check_ = mc_stationary(mu, Direction::reversed, default_burn_in(sigma_hat()),
                                  cfg.scaled("renewal.pool", 1000), seed_for(3, 2));
    return *nu_check_;
}

const EmpiricalMeasure& Lab::nu_big() {
    if (!nu_big_)
        nu_big_ = mc_stationary(mu, Direction::forward, default_burn_in(sigma_hat()),
                                cfg.scaled("fourier.samples", 4000), seed_for(4, 1));
    return *nu_big_;
}

// ---------------------------------------------------------------------------
// geometry

namespace {

struct GeometrySampler {
    Rng rng;
    const StepDistribution& mu;

    GroupElement random_element(double a_lo, double a_hi, long max_len = 40) {
        double pick = rng.next_double();
        if (pick < 0.7) {
            GroupElement r1 = GroupElement::rotation(rng.next_range(0.0, kPi));
            GroupElement a = GroupElement::diagonal(rng.next_range(a_lo, a_hi));
            GroupElement r2 = GroupElement::rotation(rng.next_range(0.0, kPi));
            return r1 * a * r2;
        }
        long len = 1 + long(rng.next_double() * double(max_len));
        GroupElement g = GroupElement::identity();
        for (long i = 0; i < len; ++i) g = g * mu.atoms[mu.sample_index(rng)].g;
        return g;
    }
    ProjectivePoint random_point() { return ProjectivePoint::from_angle(rng.next_range(0.0, kPi)); }
};

} // namespace

Report geometry_suite(Lab& lab) {
    Report rep;
    long trials = lab.cfg.scaled("geometry.trials", 1000);
    uint64_t seed = lab.seed_for(1, 1);

    {
        auto t0 = clock_type::now();
        GeometrySampler s{Rng(seed), lab.mu};
        double worst = 0.0;
        for (long i = 0; i < trials; ++i) {
            GroupElement g = s.random_element(0.0, 3.0), h = s.random_element(0.0, 3.0);
            ProjectivePoint x = s.random_point();
            double v = std::fabs(cocycle(g * h, x) - cocycle(g, act(h, x)) - cocycle(h, x));
            worst = std::max(worst, v);
        }
        rep.add(row("geom-cocycle-additivity", "log-norm cocycle additivity along products", worst, 0.0, 1e-9,
                    worst < 1e-9, ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        GeometrySampler s{Rng(seed + 1), lab.mu};
        double worst = 0.0;
        for (long i = 0; i < trials; ++i) {
            GroupElement g = s.random_element(0.0, 3.0);
            ProjectivePoint x = s.random_point(), y = s.random_point();
            double d = distance(x, y);
            if (d < 1e-6) continue;
            double v = std::fabs(distance(act(g, x), act(g, y)) - d * std::exp(-cocycle(g, x) - cocycle(g, y)));
            worst = std::max(worst, v / d);
        }
        rep.add(row("geom-contraction-identity", "pair distance transport by the cocycle", worst, 0.0, 1e-8,
                    worst < 1e-8, ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        GeometrySampler s{Rng(seed + 2), lab.mu};
        double worst = 0.0;
        for (long i = 0; i < trials; ++i) {
            GroupElement g = s.random_element(0.0, 6.0);
            ProjectivePoint x = s.random_point();
            CartanTriple ct = cartan(g);
            if (ct.degenerate) continue;
            double lhs = std::exp(cocycle(g, x) - ct.kappa);
            double d = distance(ct.x_density, x);
            worst = std::max(worst, d - lhs);
            worst = std::max(worst, lhs - d - std::exp(-2.0 * ct.kappa));
        }
        rep.add(row("geom-sandwich", "cocycle sandwiched by density-axis distance", worst, 0.0, 1e-10, worst < 1e-10,
                    ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        GeometrySampler s{Rng(seed + 3), lab.mu};
        double worst = 0.0;
        long tested = 0;
        for (long i = 0; i < trials * 4 && tested < trials; ++i) {
            GroupElement g = s.random_element(0.5, 6.0);
            ProjectivePoint x = s.random_point(), xp = s.random_point();
            CartanTriple ct = cartan(g);
            if (ct.degenerate) continue;
            ProjectivePoint ginv_xp = act(g.inverse(), xp);
            double corr = std::exp(-2.0 * ct.kappa) + distance(ct.x_density, ginv_xp);
            double den = distance(ginv_xp, x);
            if (!(corr <= 0.5 * den)) continue;
            ++tested;
            double v = std::fabs(cocycle(g, x) - ct.kappa - std::log(den)) - 2.0 * corr / den;
            worst = std::max(worst, v);
        }
        bool enough = tested >= trials;
        rep.add(row("geom-cocycle-cartan-approx", "cocycle vs cartan plus inverse-orbit distance", worst, 0.0, 1e-9,
                    enough && worst < 1e-9, ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        GeometrySampler s{Rng(seed + 4), lab.mu};
        double worst = 0.0;
        for (long i = 0; i < trials; ++i) {
            GroupElement g = s.random_element(0.2, 6.0);
            CartanTriple ct = cartan(g);
            if (ct.degenerate) continue;
            worst = std::max(worst, distance(ct.x_density, cartan(g.inverse()).x_attract));
        }
        rep.add(row("geom-axis-duality", "density axis equals attracting axis of the inverse", worst, 0.0, 1e-9,
                    worst < 1e-9, ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        GeometrySampler s{Rng(seed + 5), lab.mu};
        long mismatches = 0, tested = 0;
        for (long i = 0; i < trials * 6 && tested < trials; ++i) {
            // product lengths capped: past kappa ~ 15 the image pair coincides
            // at double resolution, which is the regime this sign transport
            // exists to bypass, not one where the direct sign can be read off
            GroupElement g = s.random_element(2.2, 8.0, 12);
            CartanTriple ct = cartan(g);
            if (ct.degenerate || ct.kappa <= 2.0) continue;
            ProjectivePoint x = s.random_point(), y = s.random_point();
            double gap = std::exp(-ct.kappa);
            if (coincident(x, y) || distance(ct.x_density, x) <= gap || distance(ct.x_density, y) <= gap) continue;
            int expect = orientation_sign(x, y, ct.x_density);
            if (expect == 0) continue;
            ProjectivePoint gx = act(g, x), gy = act(g, y);
            if (distance(gx, gy) <= 1e-11) continue;
            ++tested;
            int got;
            try {
                got = small_arc_sign(gx, gy);
            } catch (const AmbiguousArc&) {
                ++mismatches;
                continue;
            }
            if (got != expect) ++mismatches;
        }
        rep.add(row("geom-orientation-transport", "image-pair orientation from the density axis", double(mismatches),
                    0.0, 0.0, tested >= trials && mismatches == 0, ms_since(t0)));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// walk

Report walk_suite(Lab& lab) {
    Report rep;
    long steps = lab.cfg.scaled("walk.lyap_steps", 500);
    long paths = lab.cfg.scaled("walk.lyap_paths", 64);
    {
        auto t0 = clock_type::now();
        auto est = lyapunov_estimate(preset("zariski-free"), steps, paths, lab.seed_for(2, 2));
        rep.add(row("walk-lyapunov-positive", "top exponent positive for the free pair", est.sigma_hat,
                    5.0 * est.stderr_, 0.0, est.sigma_hat > 5.0 * est.stderr_, ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        auto est = lyapunov_estimate(preset("diag-symmetric"), steps, paths, lab.seed_for(2, 3));
        rep.add(row("walk-lyapunov-symmetric-null", "symmetric diagonal walk has null exponent",
                    std::fabs(est.sigma_hat), 3.0 * est.stderr_, 0.0, std::fabs(est.sigma_hat) <= 3.0 * est.stderr_,
                    ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        double sigma_mc = lab.sigma_hat();
        auto spec = sigma_from_eigen(lab.mu, CircleGrid{int(lab.cfg.get_long("spectral.m"))}, 0.02);
        double err = std::fabs(spec.value - sigma_mc);
        double tol = std::max(0.02 * sigma_mc, 3.0 * lab.sigma_stderr());
        rep.add(row("walk-sigma-spectral-match", "exponent from the eigenvalue curve matches sampling", err, tol,
                    0.0, err <= tol, ms_since(t0)));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// stationary

Report stationary_suite(Lab& lab) {
    Report rep;
    {
        auto t0 = clock_type::now();
        const EmpiricalMeasure& nu = lab.nu_pool();
        EmpiricalMeasure pushed;
        pushed.angles.resize(nu.angles.size());
        uint64_t seed = lab.seed_for(3, 3);
        for (std::size_t i = 0; i < nu.angles.size(); ++i) {
            Rng r = rng_stream(seed, 0x51, i);
            pushed.angles[i] = act(lab.mu.atoms[lab.mu.sample_index(r)].g, ProjectivePoint{nu.angles[i]}).theta;
        }
        std::sort(pushed.angles.begin(), pushed.angles.end());
        double ks = kolmogorov_distance(nu, pushed);
        double tol = 3.0 * 1.63 / std::sqrt(double(nu.angles.size()));
        rep.add(row("stat-stationarity-residual", "one convolution step fixes the sample law", ks, tol, 0.0,
                    ks < tol, ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        int m = int(lab.cfg.get_long("stationary.ulam_m"));
        auto grid = ulam_stationary(lab.mu, Direction::forward, m);
        std::ofstream os(lab.out_dir + "/stationary_grid.csv");
        if (os) write_grid_csv(grid, os);
        double ks = kolmogorov_distance(lab.nu_pool(), grid);
        rep.add(row("stat-ulam-vs-mc", "grid fixed point matches sampled measure", ks, 0.03, 0.0, ks < 0.03,
                    ms_since(t0)));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// fourier

Report fourier_suite(Lab& lab) {
    Report rep;
    {
        auto t0 = clock_type::now();
        auto blocks = decay_profile(lab.nu_big(), {{16, 32}, {512, 1024}});
        std::ofstream os(lab.out_dir + "/fourier_decay.csv");
        if (os) {
            os << "block_or_n,frequency,magnitude,noise_floor\n";
            for (const auto& b : blocks)
                os << b.k_lo << ',' << format_g17(0.5 * double(b.k_lo + b.k_hi)) << ',' << format_g17(b.median_mag)
                   << ',' << format_g17(b.noise_floor) << '\n';
        }
        double ms = ms_since(t0);
        rep.add(row("fourier-decay-blocks", "high-frequency block median sits below low block", blocks[1].median_mag,
                    blocks[0].median_mag, 0.0, blocks[1].median_mag < blocks[0].median_mag, ms));
        rep.add(row("fourier-decay-floor", "low block median clears the sampling noise floor", blocks[0].median_mag,
                    3.0 * blocks[0].noise_floor, 0.0, blocks[0].median_mag > 3.0 * blocks[0].noise_floor, 0.0));
    }
    {
        auto t0 = clock_type::now();
        OscillatoryIntegrand integ(CircleMap::sine_shear(0.3), BumpWindow{0.785, 0.5});
        double xi_lo = lab.cfg.get_double("fourier.osc_xi_lo");
        double xi_hi = lab.cfg.get_double("fourier.osc_xi_hi");
        auto lo = oscillatory_integral(lab.nu_big(), integ, xi_lo);
        auto hi = oscillatory_integral(lab.nu_big(), integ, xi_hi);
        double margin = 2.0 * (lo.stderr_ + hi.stderr_);
        rep.add(row("fourier-oscillatory-decay", "phase-twisted average shrinks with frequency", std::abs(hi.value),
                    std::abs(lo.value) - margin, 0.0, std::abs(hi.value) < std::abs(lo.value) - margin,
                    ms_since(t0)));
    }
    {
        auto t0 = clock_type::now();
        int n_max = int(lab.cfg.get_long("fourier.pisot_nmax"));
        auto golden = pisot_scan(BernoulliParams::for_lambda(golden_lambda()), std::min(n_max, 18));
        auto control = pisot_scan(BernoulliParams::for_lambda(0.7), std::min(n_max, 20));
        std::ofstream os(lab.out_dir + "/pisot_scan.csv");
        if (os) {
            os << "block_or_n,frequency,magnitude,noise_floor\n";
            for (const auto& r : golden)
                os << r.n << ',' << format_g17(r.xi) << ',' << format_g17(r.magnitude) << ",0\n";
        }
        double ms = ms_since(t0);
        // 0.006 frozen from the exact product evaluation (minimum 0.006613 at n <= 18)
        rep.add(row("fourier-pisot-floor", "golden-ratio geometric subsequence stays above its floor",
                    golden.back().running_min, 0.006, 0.0, golden.back().running_min >= 0.006, ms));
        rep.add(row("fourier-pisot-control", "non-Pisot control collapses along the same scan",
                    control.back().running_min, 1e-3, 0.0, control.back().running_min < 1e-3, 0.0));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// renewal

Report renewal_suite(Lab& lab) {
    Report rep;
    struct CsvRow {
        std::string check_id, ref;
        double lhs, rhs, stderr_val;
        bool pass;
    };
    std::vector<CsvRow> csv_rows;
    auto note = [&](const CheckRow& r, double stderr_val) {
        csv_rows.push_back({r.check_id, r.ref, r.lhs, r.rhs, stderr_val, r.pass});
        return r;
    };

    RenewalPlan plan{lab.seed_for(5, 1), lab.cfg.scaled("renewal.paths", 256), 5.0, 4.0};
    long oracle_draws = lab.cfg.scaled("renewal.oracle_draws", 1000);
    double sig = lab.sigma_hat();
    ProjectivePoint base{0.9}, base_prime{2.3};

    { // limit of the recentered occupation sum
        auto t0 = clock_type::now();
        auto f = TargetFunction::scalar_indicator(0.0, 2.0);
        double target = 2.0 / sig;
        double errs[3], ses[3];
        double ts[3] = {10.0, 20.0, 40.0};
        for (int i = 0; i < 3; ++i) {
            auto est = renewal_sum(lab.mu, f, base, ts[i], ScalarKind::cocycle, plan, sig);
            errs[i] = std::fabs(est.value - target);
            ses[i] = est.stderr_;
        }
        double worst_increase = std::max(errs[1] - errs[0] - 2.0 * (ses[0] + ses[1]),
                                         errs[2] - errs[1] - 2.0 * (ses[1] + ses[2]));
        double ms = ms_since(t0);
        rep.add(note(row("renewal-limit-trend", "occupation-sum error shrinks with the level", worst_increase, 0.0,
                         0.0, worst_increase <= 0.0, ms),
                     ses[1]));
        double tol = 3.0 * ses[2] + 0.05 * 2.0;
        rep.add(note(row("renewal-limit-t40", "occupation sum reaches window length over the exponent", errs[2], tol,
                         0.0, errs[2] <= tol, 0.0),
                     ses[2]));
    }
    { // fitted envelope constants across the (s, t) grid
        auto t0 = clock_type::now();
        double c_lin = 0.0, c_quad = 0.0;
        for (double s : {0.3, 1.0, 5.0, 20.0})
            for (double t : {-5.0, 0.0, 10.0, 40.0}) {
                auto f = TargetFunction::scalar_indicator(0.0, s);
                auto lin = renewal_sum(lab.mu, f, base, t, ScalarKind::cocycle, plan, sig);
                c_lin = std::max(c_lin, lin.value / std::max(1.0, s));
                auto quad = renewal_sum(lab.mu, f, base, t, ScalarKind::cartan, plan, sig);
                c_quad = std::max(c_quad, quad.value / std::max(1.0, s * s));
            }
        double ms = ms_since(t0);
        // caps frozen from the pilot fits (1.50 and 1.47 measured; 1/sigma = 1.09)
        rep.add(note(row("renewal-linear-bound", "occupation sum of a window grows at most linearly", c_lin, 2.5,
                         0.0, c_lin <= 2.5, ms),
                     0.0));
        rep.add(note(row("renewal-cartan-quadratic-bound", "singular-value ladder version stays quadratic", c_quad,
                         2.5, 0.0, c_quad <= 2.5, 0.0),
                     0.0));
    }

    StepDistribution mix = threshold_mix();
    auto lyap_mix = lyapunov_estimate(mix, lab.cfg.scaled("walk.lyap_steps", 500) / 2,
                                      lab.cfg.scaled("walk.lyap_paths", 64) / 2 + 8, lab.seed_for(5, 2));
    double sig_mix = lyap_mix.sigma_hat;
    auto nu_mix = mc_stationary(mix, Direction::forward, default_burn_in(sig_mix),
                                lab.cfg.scaled("renewal.pool", 1000), lab.seed_for(5, 3));
    auto nuc_mix = mc_stationary(mix, Direction::reversed, default_burn_in(sig_mix),
                                 lab.cfg.scaled("renewal.pool", 1000), lab.seed_for(5, 4));
    auto f_one = TargetFunction::jump_one(100.0, 50.0);

    { // uniform boundedness of the crossing count
        auto t0 = clock_type::now();
        auto spread_of = [&](const StepDistribution& m, double s) {
            double lo = 1e300, hi = -1e300;
            for (double t : {5.0, 10.0, 20.0, 40.0}) {
                auto est = residue_crossing(m, f_one, base, base_prime, t, ResidueVariant::E_C, plan, s);
                lo = std::min(lo, est.value);
                hi = std::max(hi, est.value);
            }
            return std::pair{hi - lo, 0.5 * (hi + lo)};
        };
        auto [spread_zf, mean_zf] = spread_of(lab.mu, sig);
        double ms = ms_since(t0);
        rep.add(note(row("residue-cutoff-bounded", "crossing count stays flat across levels", spread_zf,
                         0.2 * mean_zf, 0.0, spread_zf < 0.2 * mean_zf, ms),
                     0.0));
        auto t1 = clock_type::now();
        auto [spread_mix, mean_mix] = spread_of(mix, sig_mix);
        rep.add(note(row("residue-cutoff-bounded-mix", "crossing count flat for the mixed-scale walk", spread_mix,
                         0.2 * mean_mix, 0.0, spread_mix < 0.2 * mean_mix, ms_since(t1)),
                     0.0));
    }
    { // tail of the straddling jump
        auto t0 = clock_type::now();
        std::vector<double> xs, ys;
        for (double s : {1.0, 2.0, 4.0}) {
            auto f = TargetFunction::jump_threshold(s, 100.0, 50.0);
            auto est = residue_crossing(mix, f, base, base_prime, 30.0, ResidueVariant::E_C, plan, sig_mix);
            xs.push_back(s);
            ys.push_back(std::log(std::max(est.value, 1e-12)));
        }
        double slope = least_squares(xs, ys).slope;
        rep.add(note(row("residue-jump-tail-decay", "straddling-jump tail thins exponentially", slope, 0.0, 0.0,
                         slope < 0.0, ms_since(t0)),
                     0.0));
    }
    { // crossing statistics against the limiting formula
        auto t0 = clock_type::now();
        auto f = TargetFunction::jump_bump(0.8, 0.25, 0.5, 0.45, -0.25, 0.22);
        auto lhs = residue_crossing(lab.mu, f, base, base_prime, 30.0, ResidueVariant::E_C, plan, sig);
        auto rhs = limit_oracle(lab.mu, f, ResidueVariant::E_C, lab.nu_pool(), lab.nu_check_pool(), sig,
                                oracle_draws, lab.seed_for(5, 5));
        double err = std::fabs(lhs.value - rhs.value);
        double tol = 3.0 * (lhs.stderr_ + rhs.stderr_) + 0.1;
        rep.add(note(row("residue-cutoff-vs-limit", "cocycle crossing law matches its limit", err, tol, 0.0,
                         lhs.reliable && err <= tol, ms_since(t0)),
                     lhs.stderr_));
    }
    {
        auto t0 = clock_type::now();
        auto f = TargetFunction::full_bump(2.35, 0.25, 0.8, 0.25, 0.5, 0.45, -0.25, 0.22);
        auto lhs = residue_crossing(lab.mu, f, base, base_prime, 30.0, ResidueVariant::E_P, plan, sig);
        auto rhs = limit_oracle(lab.mu, f, ResidueVariant::E_P, lab.nu_pool(), lab.nu_check_pool(), sig,
                                oracle_draws, lab.seed_for(5, 6));
        double err = std::fabs(lhs.value - rhs.value);
        double tol = 3.0 * (lhs.stderr_ + rhs.stderr_) + 0.1;
        rep.add(note(row("residue-cartan-vs-limit", "singular-value crossing law with both orbits matches", err, tol,
                         0.0, lhs.reliable && err <= tol, ms_since(t0)),
                     lhs.stderr_));
    }
    {
        auto t0 = clock_type::now();
        auto lhs = residue_crossing(mix, f_one, base, base_prime, 30.0, ResidueVariant::E_C_minus, plan, sig_mix);
        auto rhs = limit_oracle(mix, f_one, ResidueVariant::E_C_minus, nu_mix, nuc_mix, sig_mix, oracle_draws,
                                lab.seed_for(5, 7));
        double err = std::fabs(lhs.value - rhs.value);
        double tol = 3.0 * (lhs.stderr_ + rhs.stderr_) + 0.1;
        rep.add(note(row("residue-minus-vs-limit", "downward crossings match the reversed window", err, tol, 0.0,
                         lhs.reliable && err <= tol, ms_since(t0)),
                     lhs.stderr_));
    }
    { // crossing-set mass transport
        auto t0 = clock_type::now();
        auto sc = stopping_identity_check(
            lab.mu, [](double th) { return std::cos(2.0 * th); }, 15.0, plan, lab.nu_pool(), sig);
        rep.add(note(row("stopping-identity-cos", "signed crossing sum reproduces the average", sc.lhs, sc.rhs,
                         3.0 * std::sqrt(sc.lhs_stderr * sc.lhs_stderr + sc.rhs_stderr * sc.rhs_stderr),
                         sc.z_score <= 3.0 && sc.crossing_parity_ok, ms_since(t0)),
                     sc.rhs_stderr));
        auto t1 = clock_type::now();
        auto sc1 = stopping_identity_check(
            lab.mu, [](double) { return 1.0; }, 15.0, plan, lab.nu_pool(), sig);
        rep.add(note(row("stopping-identity-const", "net crossing count is one per path", sc1.rhs, 1.0,
                         3.0 * sc1.rhs_stderr, std::fabs(sc1.rhs - 1.0) <= std::max(3.0 * sc1.rhs_stderr, 1e-12) &&
                                                    sc1.crossing_parity_ok,
                         ms_since(t1)),
                     sc1.rhs_stderr));
    }
    { // two-route kernel comparison on the filtered crossing set
        auto t0 = clock_type::now();
        RenewalPlan lam_plan = plan;
        lam_plan.n_paths = std::max(200L, plan.n_paths / 2);
        auto zf = preset("zariski-free");
        auto lam5 = lambda_approx_check(zf, ProjectivePoint{0.65}, ProjectivePoint{1.25}, 1, 5.0, 60.0, 0.3,
                                        lam_plan, CircleMap::identity(), BumpWindow{0.785, 0.5});
        double ms5 = ms_since(t0);
        auto t1 = clock_type::now();
        auto lam10 = lambda_approx_check(zf, ProjectivePoint{0.65}, ProjectivePoint{1.25}, 1, 10.0, 120.0, 0.3,
                                         lam_plan, CircleMap::identity(), BumpWindow{0.785, 0.5});
        double ms10 = ms_since(t1);
        // thresholds are the deterministic caps the filter enforces:
        // xi * |D0 - D1| <= exp(s + 3*eps3*s - t) up to bounded factors
        rep.add(note(row("lambda-approx-s5", "kernel routes agree on the filtered set (s=5)", lam5.max_diff, 1e-22,
                         0.0, !lam5.empty_filter && lam5.max_diff < 1e-22, ms5),
                     0.0));
        rep.add(note(row("lambda-approx-s10", "kernel routes agree on the filtered set (s=10)", lam10.max_diff,
                         1e-44, 0.0, !lam10.empty_filter && lam10.max_diff < 1e-44, ms10),
                     0.0));
        rep.add(note(row("lambda-approx-monotone", "agreement tightens as the scale doubles", lam10.max_diff,
                         lam5.max_diff, 0.0, lam10.max_diff < lam5.max_diff, 0.0),
                     0.0));
    }
    { // oscillatory kernel bound
        auto t0 = clock_type::now();
        Rng rng(lab.seed_for(5, 8));
        long violations = 0;
        double worst_margin = -1e300;
        for (int i = 0; i < 100; ++i) {
            double b1 = rng.next_range(-2.0, 2.5);
            double b2 = b1 + rng.next_range(0.01, 3.0 - std::max(0.0, b1));
            double lam = std::exp(rng.next_range(0.0, std::log(1e8)));
            if (rng.next_double() < 0.5) lam = -lam;
            auto ob = osc_bound_check(b1, b2, lam);
            if (!ob.pass) ++violations;
            worst_margin = std::max(worst_margin, ob.integral_modulus - ob.bound);
        }
        rep.add(note(row("osc-kernel-bound", "oscillatory kernel bound holds on random windows", double(violations),
                         0.0, 0.0, violations == 0, ms_since(t0)),
                     0.0));
    }

    std::ofstream os(lab.out_dir + "/renewal_checks.csv");
    if (os) {
        os << "check_id,paper_ref,lhs,rhs,stderr,pass\n";
        for (const auto& r : csv_rows)
            os << r.check_id << ',' << r.ref << ',' << format_g17(r.lhs) << ',' << format_g17(r.rhs) << ','
               << format_g17(r.stderr_val) << ',' << (r.pass ? 1 : 0) << '\n';
    }
    return rep;
}

// ---------------------------------------------------------------------------
// spectral

Report spectral_suite(Lab& lab) {
    Report rep;
    int m = int(lab.cfg.get_long("spectral.m"));
    std::vector<double> xis = {0.5, 1.0, 2.0, 5.0, 10.0};
    {
        auto t0 = clock_type::now();
        auto scan_lo = nonarith_scan(lab.mu, CircleGrid{m}, xis);
        auto scan_hi = nonarith_scan(lab.mu, CircleGrid{2 * m}, xis);
        std::ofstream os(lab.out_dir + "/nonarith_scan.csv");
        if (os) {
            os << "xi,modulus,flag\n";
            for (const auto& r : scan_lo)
                os << format_g17(r.xi) << ',' << format_g17(r.modulus) << ',' << (r.flagged ? 1 : 0) << '\n';
        }
        double max_mod = 0.0, max_diff = 0.0;
        for (std::size_t i = 0; i < xis.size(); ++i) {
            max_mod = std::max(max_mod, scan_lo[i].modulus);
            max_diff = std::max(max_diff, std::fabs(scan_lo[i].modulus - scan_hi[i].modulus));
        }
        double ms = ms_since(t0);
        rep.add(row("spectral-nonarith-moduli", "twisted operator contracts off the real axis", max_mod, 1.0 - 1e-4,
                    0.0, max_mod < 1.0 - 1e-4, ms));
        rep.add(row("spectral-nonarith-refinement", "twisted moduli stable under grid doubling", max_diff, 1e-4, 0.0,
                    max_diff < 1e-4, 0.0));
    }
    {
        auto t0 = clock_type::now();
        StepDistribution arith({{0.5, GroupElement::diagonal(1.0)}, {0.5, GroupElement::diagonal(2.0)}},
                               "arithmetic-control");
        auto scan = nonarith_scan(arith, CircleGrid{m}, {2.0 * kPi});
        rep.add(row("spectral-arithmetic-control", "lattice-valued ladder keeps a unit-modulus twist",
                    scan[0].modulus, 1.0 - 1e-6, 0.0, scan[0].modulus > 1.0 - 1e-6, ms_since(t0)));
    }
    return rep;
}

// ---------------------------------------------------------------------------

Report run_experiment(const Config& cfg, const std::string& suite) {
    cfg.validate();
    Lab lab(cfg);
    std::filesystem::create_directories(lab.out_dir);
    Report rep;
    bool all = suite == "all";
    if (all || suite == "geometry") rep.merge(geometry_suite(lab));
    if (all || suite == "walk") rep.merge(walk_suite(lab));
    if (all || suite == "stationary") rep.merge(stationary_suite(lab));
    if (all || suite == "fourier") rep.merge(fourier_suite(lab));
    if (all || suite == "renewal") rep.merge(renewal_suite(lab));
    if (all || suite == "spectral") rep.merge(spectral_suite(lab));
    if (rep.rows.empty() && !all) throw ConfigInvalid("unknown suite: " + suite);
    rep.sort_by_id();
    write_report_csv(rep, lab.out_dir + "/report.csv");
    write_report_json(rep, lab.out_dir + "/report.json");
    return rep;
}

} // namespace furst
