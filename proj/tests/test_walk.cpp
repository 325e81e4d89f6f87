#include "furst/parallel.hpp"
#include "furst/stats.hpp"
#include "furst/walk.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

using namespace furst;

TEST_CASE("presets validate and report moments") {
    for (const char* name : {"zariski-free", "diag-symmetric", "bernoulli-solvable(0.5)",
                             "rotation-hyperbolic(0.7,0.8)"}) {
        auto mu = preset(name);
        CHECK(mu.exp_moment() > 0.0);
        double total = 0.0;
        for (const auto& a : mu.atoms) total += a.weight;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(preset("no-such-preset"), std::invalid_argument);
    CHECK_THROWS_AS(preset("bernoulli-solvable(1.5)"), std::invalid_argument);
    CHECK_THROWS_AS(StepDistribution({{0.5, GroupElement::identity()}}, "bad"), std::invalid_argument);
}

TEST_CASE("walk state extension") {
    WalkState st = WalkState::start(e1());
    st.extend(GroupElement::identity(), Side::left);
    CHECK(st.step_count == 1);
    CHECK(distance(st.position(), e1()) < 1e-15);
    CHECK(st.cum_cocycle() == doctest::Approx(0.0));

    WalkState d = WalkState::start(e1());
    GroupElement g2 = GroupElement::from_matrix(2.0, 0.0, 0.0, 0.5);
    d.extend(g2, Side::left);
    d.extend(g2, Side::left);
    CHECK(d.cum_cocycle() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("left extension telescopes to the direct cocycle") {
    auto mu = preset("zariski-free");
    for (long path = 0; path < 1000; ++path) {
        Rng rng = rng_stream(77, 1, uint64_t(path));
        WalkState st = WalkState::start(ProjectivePoint::from_angle(0.9));
        for (int n = 0; n < 100; ++n) st.extend(mu.atoms[mu.sample_index(rng)].g, Side::left);
        double direct = cocycle(st.product, st.base);
        CHECK(std::fabs(st.cum_cocycle() - direct) < 1e-8);
    }
    // long-run drift
    Rng rng = rng_stream(78, 1, 0);
    WalkState st = WalkState::start(ProjectivePoint::from_angle(0.4));
    for (int n = 0; n < 10000; ++n) st.extend(mu.atoms[mu.sample_index(rng)].g, Side::left);
    CHECK(std::fabs(st.cum_cocycle() - cocycle(st.product, st.base)) < 1e-6);
}

TEST_CASE("overflow freedom on very long paths") {
    auto mu = preset("zariski-free");
    Rng rng = rng_stream(79, 1, 0);
    WalkState st = WalkState::start(ProjectivePoint::from_angle(0.9));
    for (int n = 0; n < 100000; ++n) {
        st.extend(mu.atoms[mu.sample_index(rng)].g, Side::left);
        if (n % 9973 == 0) {
            for (double e : st.product.m) CHECK(std::isfinite(e));
            double op = st.product.op_norm_mat();
            CHECK(op >= 0.5);
            CHECK(op <= 2.0);
        }
    }
    CHECK(std::isfinite(st.cum_cocycle()));
}

TEST_CASE("seed determinism is bitwise") {
    auto mu = preset("zariski-free");
    auto run = [&](uint64_t seed) {
        std::vector<double> trace;
        PathPlan plan{seed, 1, 200, Side::left};
        Rng rng = path_rng(plan, 5);
        WalkState st = WalkState::start(e1());
        for (int n = 0; n < 200; ++n) {
            st.extend(mu.atoms[mu.sample_index(rng)].g, Side::left);
            trace.push_back(st.position().theta);
            trace.push_back(st.cum_cocycle());
        }
        return trace;
    };
    CHECK(run(42) == run(42));
    CHECK(run(42) != run(43));
    // distinct paths of one plan use distinct streams
    PathPlan plan{42, 2, 10, Side::left};
    CHECK(path_rng(plan, 0).next_u64() != path_rng(plan, 1).next_u64());
}

TEST_CASE("dirac measure gives the deterministic power path") {
    GroupElement g = GroupElement::from_matrix(2.0, 1.0, 1.0, 1.0);
    StepDistribution mu({{1.0, g}}, "dirac");
    Rng rng = rng_stream(80, 1, 0);
    WalkState st = WalkState::start(ProjectivePoint::from_angle(0.2));
    GroupElement direct = GroupElement::identity();
    for (int n = 0; n < 30; ++n) {
        st.extend(mu.atoms[mu.sample_index(rng)].g, Side::left);
        direct = g * direct;
    }
    for (int k = 0; k < 4; ++k) CHECK(st.product.m[k] == doctest::Approx(direct.m[k]).epsilon(1e-12));
}

TEST_CASE("letter frequencies match the weights") {
    StepDistribution mu({{0.2, GroupElement::diagonal(0.3)},
                         {0.5, GroupElement::diagonal(-0.1)},
                         {0.3, GroupElement::rotation(0.4)}},
                        "freq-test");
    Rng rng = rng_stream(81, 1, 0);
    long counts[3] = {0, 0, 0};
    const long n = 100000;
    for (long i = 0; i < n; ++i) ++counts[mu.sample_index(rng)];
    double w[3] = {0.2, 0.5, 0.3};
    for (int j = 0; j < 3; ++j) {
        double se = std::sqrt(w[j] * (1.0 - w[j]) / double(n));
        CHECK(std::fabs(double(counts[j]) / double(n) - w[j]) < 3.0 * se);
    }
}

TEST_CASE("lyapunov estimates") {
    StepDistribution dirac_id({{1.0, GroupElement::identity()}}, "dirac-id");
    auto zero = lyapunov_estimate(dirac_id, 100, 16, 5);
    CHECK(zero.sigma_hat == 0.0);

    auto ds = lyapunov_estimate(preset("diag-symmetric"), 10000, 500, 6);
    CHECK(std::fabs(ds.sigma_hat) <= 3.0 * ds.stderr_);

    auto zf = lyapunov_estimate(preset("zariski-free"), 4000, 300, 7);
    CHECK(zf.sigma_hat > 5.0 * zf.stderr_);
    CHECK(zf.sigma_hat == doctest::Approx(0.9155).epsilon(0.01));

    // base independence
    for (double base : {0.1, 1.2, 2.6}) {
        auto alt = lyapunov_estimate(preset("zariski-free"), 4000, 300, 8, ProjectivePoint::from_angle(base));
        CHECK(std::fabs(alt.sigma_hat - zf.sigma_hat) < 6.0 * (alt.stderr_ + zf.stderr_) + 1e-3);
    }
}

TEST_CASE("left and right extensions share the cartan marginal") {
    auto mu = preset("zariski-free");
    const long n_paths = 10000, n_steps = 30;
    std::vector<double> left(n_paths), right(n_paths);
    for (long i = 0; i < n_paths; ++i) {
        Rng r1 = rng_stream(90, 1, uint64_t(i));
        WalkState a = WalkState::start(e1());
        for (int n = 0; n < n_steps; ++n) a.extend(mu.atoms[mu.sample_index(r1)].g, Side::left);
        left[std::size_t(i)] = a.kappa();
        Rng r2 = rng_stream(90, 2, uint64_t(i));
        WalkState b = WalkState::start(e1());
        for (int n = 0; n < n_steps; ++n) b.extend(mu.atoms[mu.sample_index(r2)].g, Side::right);
        right[std::size_t(i)] = b.kappa();
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    // two-sample KS on the real line
    double ks = 0.0;
    std::size_t i = 0, j = 0;
    while (i < left.size() && j < right.size()) {
        if (left[i] <= right[j]) ++i; else ++j;
        ks = std::max(ks, std::fabs(double(i) / double(left.size()) - double(j) / double(right.size())));
    }
    CHECK(ks < 0.05);
}

TEST_CASE("zero-step plan leaves the start state") {
    auto mu = preset("zariski-free");
    long visits = 0;
    run_path(mu, rng_stream(82, 1, 0), e1(), 0, Side::left, [&](const WalkState&) {
        ++visits;
        return true;
    });
    CHECK(visits == 0);
    WalkState st = WalkState::start(e1());
    CHECK(st.step_count == 0);
    CHECK(st.cum_cocycle() == 0.0);
}

TEST_CASE("deterministic walk has indicator tails") {
    // a Dirac law makes every path identical: tail frequencies are exactly 0 or 1
    StepDistribution mu({{1.0, GroupElement::from_matrix(2.0, 1.0, 1.0, 1.0)}}, "dirac");
    auto prof = deviation_profile(mu, e1(), 0.05, {4, 8, 16}, 200, 0.9624, 12);
    for (const auto& r : prof.rows) CHECK((r.sigma_tail == 0.0 || r.sigma_tail == 1.0));
    for (const auto& r : prof.rows) CHECK((r.kappa_tail == 0.0 || r.kappa_tail == 1.0));
}

TEST_CASE("deviation profile decays") {
    auto mu = preset("zariski-free");
    auto lyap = lyapunov_estimate(mu, 4000, 300, 9);
    auto prof = deviation_profile(mu, e1(), 0.03, {3, 6, 12, 24}, 4000, lyap.sigma_hat, 10);
    CHECK(prof.fitted_rate_sigma < 0.0);
    CHECK(prof.fitted_rate_kappa < 0.0);
    for (std::size_t k = 1; k < prof.rows.size(); ++k)
        CHECK(prof.rows[k].sigma_tail <= prof.rows[k - 1].sigma_hi + 0.02);

    // the wide-epsilon grid is all zeros at these depths: trivially monotone
    auto wide = deviation_profile(mu, e1(), 0.2, {20, 40, 80, 160}, 2000, lyap.sigma_hat, 11);
    for (std::size_t k = 1; k < wide.rows.size(); ++k)
        CHECK(wide.rows[k].sigma_tail <= wide.rows[k - 1].sigma_tail + 2.0 * 0.02);
}

TEST_CASE("thread budget honors the environment cap") {
    setenv("FURSTENBERG_THREADS", "1", 1);
    CHECK(thread_budget() == 1);
    unsetenv("FURSTENBERG_THREADS");
}

TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);
}
