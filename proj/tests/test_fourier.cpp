#include "furst/fourier.hpp"
#include "furst/rng.hpp"
#include "furst/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace furst;

namespace {

EmpiricalMeasure uniform_grid_sample(int n) {
    EmpiricalMeasure em;
    em.angles.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) em.angles[std::size_t(i)] = double(i) * kPi / n;
    return em;
}

} // namespace

TEST_CASE("coefficients") {
    auto em = uniform_grid_sample(100000);
    CHECK(std::abs(fourier_coefficient(em, 0).value - std::complex<double>{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(fourier_coefficient(em, 7).value) < 1e-9);

    EmpiricalMeasure atom;
    atom.angles.assign(50, 0.0);
    for (long k : {1L, 5L, 800L}) CHECK(std::abs(fourier_coefficient(atom, k).value - 1.0) < 1e-15);

    // conjugate symmetry is exact on shared samples
    Rng rng(31);
    EmpiricalMeasure random_em;
    for (int i = 0; i < 1000; ++i) random_em.angles.push_back(rng.next_range(0.0, kPi));
    std::sort(random_em.angles.begin(), random_em.angles.end());
    for (long k : {1L, 3L, 17L}) {
        auto plus = fourier_coefficient(random_em, k).value;
        auto minus = fourier_coefficient(random_em, -k).value;
        CHECK(minus == std::conj(plus));
        CHECK(std::abs(plus) <= 1.0 + 1e-12);
    }
}

TEST_CASE("decay profile on the uniform grid is flat zero") {
    auto em = uniform_grid_sample(200000);
    auto blocks = decay_profile(em, {{16, 32}, {512, 1024}});
    for (const auto& b : blocks) CHECK(b.max_mag < 1e-9);
}

TEST_CASE("oscillatory integral reduces to the coefficient for the trivial phase") {
    Rng rng(32);
    EmpiricalMeasure em;
    for (int i = 0; i < 5000; ++i) em.angles.push_back(rng.next_range(0.0, kPi));
    std::sort(em.angles.begin(), em.angles.end());
    OscillatoryIntegrand integ(CircleMap::identity(), BumpWindow::full());
    for (long k : {2L, 9L}) {
        auto osc = oscillatory_integral(em, integ, 2.0 * double(k));
        auto coef = fourier_coefficient(em, k);
        CHECK(osc.value.real() == doctest::Approx(coef.value.real()).epsilon(1e-15));
        CHECK(osc.value.imag() == doctest::Approx(coef.value.imag()).epsilon(1e-15));
    }
    // xi = 0 returns the plain window average
    OscillatoryIntegrand bump(CircleMap::identity(), BumpWindow{0.8, 0.4});
    auto at0 = oscillatory_integral(em, bump, 0.0);
    double mean_r = 0.0;
    for (double t : em.angles) mean_r += bump.window(t);
    mean_r /= double(em.angles.size());
    CHECK(at0.value.real() == doctest::Approx(mean_r).epsilon(1e-14));
    CHECK(at0.value.imag() == doctest::Approx(0.0));
}

TEST_CASE("integrand catalog certifies its constants") {
    OscillatoryIntegrand integ(CircleMap::sine_shear(0.3), BumpWindow{0.785, 0.5});
    CHECK(integ.c1_bound >= 1.0 / 0.4);
    // a shear past 1/2 kills the derivative somewhere on a full window
    CHECK_THROWS_AS(OscillatoryIntegrand(CircleMap::sine_shear(0.6), BumpWindow::full()), std::invalid_argument);
}

TEST_CASE("signed geometric sum characteristic function") {
    auto p = BernoulliParams::for_lambda(0.5);
    CHECK(bernoulli_fourier(p, 0.0) == doctest::Approx(1.0));
    // telescoping double-angle oracle: prod cos(xi/2^j) = sin(2 xi)/(2 xi)
    CHECK(std::fabs(bernoulli_fourier(p, 1.0) - std::sin(2.0) / 2.0) < 1e-10);

    // truncation stability: the default N already puts the tail below 1e-12
    for (double lambda : {0.5, 0.75, 0.9}) {
        for (double xi : {3.0, 1e3, 1e6}) {
            auto base = BernoulliParams::for_lambda(lambda);
            BernoulliParams longer = base;
            longer.truncation += 20;
            CHECK(std::fabs(bernoulli_fourier(base, xi) - bernoulli_fourier(longer, xi)) < 1e-12);
        }
    }

    // Monte Carlo characteristic function oracle
    auto pl = BernoulliParams::for_lambda(0.5);
    for (double xi : {0.7, 2.3}) {
        Rng rng(33);
        Accumulator acc;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            double s = 0.0, scale = 1.0;
            for (int j = 0; j < pl.truncation; ++j) {
                s += (rng.next_u64() & 1 ? 1.0 : -1.0) * scale;
                scale *= pl.lambda;
            }
            acc.add(std::cos(xi * s));
        }
        CHECK(std::fabs(acc.mean() - bernoulli_fourier(pl, xi)) < 3.0 * acc.stderr_mean());
    }
}

TEST_CASE("geometric frequency scan") {
    auto golden = pisot_scan(BernoulliParams::for_lambda(golden_lambda()), 18);
    CHECK(golden.front().magnitude > 0.0);
    // frozen from the exact product evaluation: the running minimum is 0.006613
    CHECK(golden.back().running_min >= 0.006);
    CHECK(golden.back().running_min == doctest::Approx(0.0066135).epsilon(1e-3));
    // the floor stabilizes: late minima do not keep sliding
    double early_min = 1e300, late_min = 1e300;
    for (const auto& r : golden) {
        if (r.n <= 10) early_min = std::min(early_min, r.magnitude);
        if (r.n >= 11) late_min = std::min(late_min, r.magnitude);
    }
    CHECK(late_min > 0.9 * early_min);

    // the exact reduction agrees with the direct long-double product
    auto p = BernoulliParams::for_lambda(golden_lambda());
    for (int n = 0; n <= 14; ++n) {
        long double prod = 1.0L;
        long double arg = (long double)kPi * powl(1.0L / (long double)p.lambda, n);
        for (int j = 0; j < p.truncation; ++j) {
            prod *= cosl(arg);
            arg *= (long double)p.lambda;
        }
        CHECK(std::fabs(golden[std::size_t(n)].magnitude - std::fabs(double(prod))) < 1e-9);
    }

    auto control = pisot_scan(BernoulliParams::for_lambda(0.7), 20);
    CHECK(control.back().running_min < 1e-3);

    CHECK_THROWS_AS(pisot_scan(BernoulliParams::for_lambda(0.5), 31), std::invalid_argument);
}
