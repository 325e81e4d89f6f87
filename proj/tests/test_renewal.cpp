#include "furst/quadrature.hpp"
#include "furst/renewal.hpp"

#include <doctest.h>

#include <cmath>

using namespace furst;

namespace {

struct Pools {
    StepDistribution mu;
    double sigma;
    EmpiricalMeasure nu, nuc;
};

Pools make_pools(const std::string& name, uint64_t seed) {
    Pools p{preset(name), 0.0, {}, {}};
    auto lyap = lyapunov_estimate(p.mu, 2000, 300, seed);
    p.sigma = lyap.sigma_hat;
    p.nu = mc_stationary(p.mu, Direction::forward, default_burn_in(p.sigma), 20000, seed + 1);
    p.nuc = mc_stationary(p.mu, Direction::reversed, default_burn_in(p.sigma), 20000, seed + 2);
    return p;
}

} // namespace

TEST_CASE("occupation sum keeps the identity term") {
    auto zf = preset("zariski-free");
    auto f = TargetFunction::scalar_bump(1.0, 0.5);
    RenewalPlan plan{41, 500, 5.0, 4.0};
    // at t = -1 the n = 0 term contributes f(x, 1) = 1 on every path
    auto est = renewal_sum(zf, f, ProjectivePoint{0.9}, -1.0, ScalarKind::cocycle, plan, 0.9155);
    CHECK(est.value >= 1.0);
    CHECK(est.reliable);
}

TEST_CASE("occupation sum approaches window length over exponent") {
    auto p = make_pools("zariski-free", 42);
    auto f = TargetFunction::scalar_indicator(0.0, 2.0);
    RenewalPlan plan{43, 8000, 5.0, 4.0};
    auto est = renewal_sum(p.mu, f, ProjectivePoint{0.9}, 40.0, ScalarKind::cocycle, plan, p.sigma);
    CHECK(std::fabs(est.value - 2.0 / p.sigma) < 3.0 * est.stderr_ + 0.1);
    CHECK(est.cap_hit_fraction < 1e-3);
}

TEST_CASE("cartan ladder occupation stays within the quadratic envelope") {
    auto p = make_pools("zariski-free", 44);
    RenewalPlan plan{45, 4000, 5.0, 4.0};
    for (double s : {0.5, 2.0, 8.0}) {
        auto f = TargetFunction::scalar_indicator(0.0, s);
        auto est = renewal_sum(p.mu, f, ProjectivePoint{0.9}, 12.0, ScalarKind::cartan, plan, p.sigma);
        CHECK(est.value <= 2.5 * std::max(1.0, s * s));
    }
    // inverse-orbit variant runs and stays bounded too
    auto f = TargetFunction::scalar_indicator(0.0, 2.0);
    auto inv = renewal_sum(p.mu, f, ProjectivePoint{0.9}, 12.0, ScalarKind::cartan_inverse, plan, p.sigma);
    CHECK(inv.value <= 2.5 * std::max(1.0, 2.0));
}

TEST_CASE("crossing records satisfy the window constraint") {
    auto zf = preset("zariski-free");
    RenewalPlan plan{46, 1, 5.0, 4.0};
    long total = 0;
    for (long path = 0; path < 200; ++path) {
        auto records = collect_crossings(zf, ProjectivePoint{0.9}, ProjectivePoint{2.3}, 12.0,
                                         ResidueVariant::E_C, plan, path, 0.9155);
        for (const auto& rec : records) {
            CHECK(rec.residue >= -rec.jump);
            CHECK(rec.residue < 0.0);
            ++total;
        }
    }
    CHECK(total >= 200); // at least one straddling index per path

    // minus-variant records live in the reversed window
    StepDistribution mix({{0.3, GroupElement::rotation(0.8)},
                          {0.3, GroupElement::diagonal(1.0)},
                          {0.25, GroupElement::diagonal(2.2)},
                          {0.15, GroupElement::diagonal(5.0)}},
                         "threshold-mix");
    long downs = 0;
    for (long path = 0; path < 400; ++path) {
        auto records = collect_crossings(mix, ProjectivePoint{0.9}, ProjectivePoint{2.3}, 12.0,
                                         ResidueVariant::E_C_minus, plan, path, 1.41);
        for (const auto& rec : records) {
            CHECK(rec.residue >= 0.0);
            CHECK(rec.residue < -rec.jump);
            ++downs;
        }
    }
    CHECK(downs > 0);
}

TEST_CASE("crossing laws against their limits") {
    auto p = make_pools("zariski-free", 47);
    RenewalPlan plan{48, 8000, 5.0, 4.0};
    auto f_one = TargetFunction::jump_one(100.0, 50.0);

    SUBCASE("unit target counts net upward crossings") {
        for (double t : {5.0, 20.0}) {
            auto est = residue_crossing(p.mu, f_one, ProjectivePoint{0.9}, ProjectivePoint{2.3}, t,
                                        ResidueVariant::E_C, plan, p.sigma);
            CHECK(est.value == doctest::Approx(1.0).epsilon(1e-9)); // monotone ladder: exactly one
        }
        auto oracle = limit_oracle(p.mu, f_one, ResidueVariant::E_C, p.nu, p.nuc, p.sigma, 40000, 49);
        CHECK(std::fabs(oracle.value - 1.0) < 3.0 * oracle.stderr_ + 0.01);
    }
    SUBCASE("monotone ladders have no downward crossings") {
        auto minus = residue_crossing(p.mu, f_one, ProjectivePoint{0.9}, ProjectivePoint{2.3}, 10.0,
                                      ResidueVariant::E_C_minus, plan, p.sigma);
        CHECK(minus.value == 0.0);
    }
    SUBCASE("positive u-support never meets a plus window") {
        auto f_pos = TargetFunction::scalar_bump(1.0, 0.5);
        TargetFunction f_jump = TargetFunction::jump_one(100.0, 50.0);
        f_jump.fu = f_pos.fu;
        auto oracle = limit_oracle(p.mu, f_jump, ResidueVariant::E_C, p.nu, p.nuc, p.sigma, 2000, 50);
        CHECK(oracle.value == 0.0);
    }
    SUBCASE("identity law gives an empty window") {
        StepDistribution dirac_id({{1.0, GroupElement::identity()}}, "dirac-id");
        auto oracle = limit_oracle(dirac_id, f_one, ResidueVariant::E_C, p.nu, p.nuc, 0.0, 2000, 51);
        CHECK(oracle.value == 0.0);
    }
}

TEST_CASE("mixed-scale walk exercises both crossing directions") {
    StepDistribution mix({{0.3, GroupElement::rotation(0.8)},
                          {0.3, GroupElement::diagonal(1.0)},
                          {0.25, GroupElement::diagonal(2.2)},
                          {0.15, GroupElement::diagonal(5.0)}},
                         "threshold-mix");
    auto lyap = lyapunov_estimate(mix, 2000, 300, 52);
    auto nu = mc_stationary(mix, Direction::forward, default_burn_in(lyap.sigma_hat), 20000, 53);
    auto nuc = mc_stationary(mix, Direction::reversed, default_burn_in(lyap.sigma_hat), 20000, 54);
    RenewalPlan plan{55, 8000, 5.0, 4.0};
    auto f_one = TargetFunction::jump_one(100.0, 50.0);

    auto up = residue_crossing(mix, f_one, ProjectivePoint{0.9}, ProjectivePoint{2.3}, 25.0, ResidueVariant::E_C,
                               plan, lyap.sigma_hat);
    auto down = residue_crossing(mix, f_one, ProjectivePoint{0.9}, ProjectivePoint{2.3}, 25.0,
                                 ResidueVariant::E_C_minus, plan, lyap.sigma_hat);
    CHECK(down.value > 0.0);
    CHECK(up.value == doctest::Approx(1.0 + down.value).epsilon(0.02));

    auto oracle_down =
        limit_oracle(mix, f_one, ResidueVariant::E_C_minus, nu, nuc, lyap.sigma_hat, 40000, 56);
    CHECK(std::fabs(down.value - oracle_down.value) < 3.0 * (down.stderr_ + oracle_down.stderr_) + 0.01);
}

TEST_CASE("stopping identity for a deterministic hyperbolic walk") {
    StepDistribution mu({{1.0, GroupElement::diagonal(0.7)}}, "dirac-hyp");
    auto nu = mc_stationary(mu, Direction::forward, 100, 2000, 57);
    RenewalPlan plan{58, 500, 5.0, 4.0};
    auto sc = stopping_identity_check(mu, [](double th) { return std::cos(2.0 * th); }, 10.0, plan, nu, 0.7);
    CHECK(sc.down_crossings == 0);
    CHECK(sc.up_crossings == 500);
    CHECK(sc.crossing_parity_ok);
    CHECK(std::fabs(sc.lhs - sc.rhs) < 1e-6);
}

TEST_CASE("lambda comparison pipeline") {
    auto zf = preset("zariski-free");
    RenewalPlan plan{59, 400, 5.0, 4.0};
    auto check = lambda_approx_check(zf, ProjectivePoint{0.65}, ProjectivePoint{1.25}, 1, 5.0, 60.0, 0.3, plan,
                                     CircleMap::identity(), BumpWindow{0.785, 0.5});
    CHECK(!check.empty_filter);
    CHECK(check.retained > 100);
    CHECK(check.max_diff < 1e-22);
    for (double d : check.diffs) CHECK(d >= 0.0);

    CHECK_THROWS_AS(lambda_approx_check(zf, ProjectivePoint{0.65}, ProjectivePoint{0.66}, 1, 5.0, 60.0, 0.3, plan,
                                        CircleMap::identity(), BumpWindow{0.785, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("oscillatory kernel bound") {
    auto flat = osc_bound_check(0.4, 0.4, 3.0);
    CHECK(flat.integral_modulus == 0.0);
    CHECK(flat.bound > 0.0);
    CHECK(flat.pass);

    auto fast = osc_bound_check(0.0, 1.0, 1e8);
    CHECK(fast.integral_modulus < 2.0 * (1.0 + std::exp(1.0)) / 1e8 + 1e-9);

    // fine Riemann oracle at lambda = 1
    auto slow = osc_bound_check(-1.0, 1.0, 1.0);
    std::complex<double> brute{0.0, 0.0};
    const int n = 2000000;
    for (int i = 0; i < n; ++i) {
        double u = -1.0 + 2.0 * (double(i) + 0.5) / n;
        brute += std::complex<double>(std::cos(std::exp(-u)), std::sin(std::exp(-u))) * (2.0 / n);
    }
    CHECK(std::fabs(slow.integral_modulus - std::abs(brute)) < 1e-8);

    CHECK_THROWS_AS(osc_bound_check(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(osc_bound_check(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("adaptive quadrature") {
    double got = adaptive_simpson([](double x) { return std::exp(-x * x); }, 0.0, 2.0, 1e-12);
    CHECK(got == doctest::Approx(0.8820813907624215).epsilon(1e-10)); // erf oracle value
}
