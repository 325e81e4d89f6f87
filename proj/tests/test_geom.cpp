#include "furst/geom.hpp"
#include "furst/measure.hpp"
#include "furst/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace furst;

namespace {

GroupElement random_rar(Rng& rng, double a_lo, double a_hi) {
    return GroupElement::rotation(rng.next_range(0.0, kPi)) * GroupElement::diagonal(rng.next_range(a_lo, a_hi)) *
           GroupElement::rotation(rng.next_range(0.0, kPi));
}

} // namespace

TEST_CASE("projective action matches the affine chart") {
    // r -> lambda*r - 1 at lambda = 1/2 sends r = 2 to 0
    double s = std::sqrt(0.5);
    GroupElement g1 = GroupElement::from_matrix(s, -1.0 / s, 0.0, 1.0 / s);
    ProjectivePoint out = act(g1, ProjectivePoint::from_affine(2.0));
    CHECK(std::fabs(out.affine() - 0.0) < 1e-12);

    ProjectivePoint x = ProjectivePoint::from_angle(1.234);
    CHECK(distance(act(GroupElement::identity(), x), x) < 1e-15);

    CHECK(distance(act(GroupElement::rotation(kPi / 2.0), e1()), e2()) < 1e-15);
}

TEST_CASE("cocycle values and additivity") {
    CHECK(cocycle(GroupElement::identity(), ProjectivePoint::from_angle(0.37)) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cocycle(GroupElement::diagonal(1.7), e1()) == doctest::Approx(1.7).epsilon(1e-12));

    Rng rng(11);
    auto mu = preset("zariski-free");
    for (int i = 0; i < 10000; ++i) {
        GroupElement g = random_rar(rng, 0.0, 3.0), h = random_rar(rng, 0.0, 3.0);
        ProjectivePoint x = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        CHECK(std::fabs(cocycle(g * h, x) - cocycle(g, act(h, x)) - cocycle(h, x)) < 1e-9);
    }
}

TEST_CASE("cocycle handles huge scales without overflow") {
    GroupElement g = GroupElement::identity();
    GroupElement step = GroupElement::diagonal(10.0);
    for (int i = 0; i < 100000; ++i) g = step * g; // kappa = 1e6
    CHECK(std::isfinite(cocycle(g, e1())));
    CHECK(cocycle(g, e1()) == doctest::Approx(1e6).epsilon(1e-9));
}

TEST_CASE("sine distance") {
    CHECK(distance(e1(), e2()) == doctest::Approx(1.0));
    CHECK(distance(ProjectivePoint::from_angle(0.3), ProjectivePoint::from_angle(1.0)) ==
          doctest::Approx(std::fabs(std::sin(0.7))).epsilon(1e-14));

    Rng rng(12);
    for (int i = 0; i < 10000; ++i) {
        GroupElement g = random_rar(rng, 0.0, 3.0);
        ProjectivePoint x = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        ProjectivePoint y = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        double d = distance(x, y);
        if (d < 1e-6) continue;
        double lhs = distance(act(g, x), act(g, y));
        double rhs = d * std::exp(-cocycle(g, x) - cocycle(g, y));
        CHECK(std::fabs(lhs - rhs) < 1e-8 * d);
    }
}

TEST_CASE("closed-form singular values") {
    SUBCASE("diagonal element") {
        auto ct = cartan(GroupElement::from_matrix(2.0, 0.0, 0.0, 0.5));
        CHECK(ct.kappa == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(distance(ct.x_attract, e1()) < 1e-12);
        CHECK(distance(ct.x_density, e2()) < 1e-12);
    }
    SUBCASE("integer element against the quadratic-formula oracle") {
        // top eigenvalue of [[5,3],[3,2]] is (7 + sqrt(45)) / 2
        double top = 0.5 * (7.0 + std::sqrt(45.0));
        auto ct = cartan(GroupElement::from_matrix(2.0, 1.0, 1.0, 1.0));
        CHECK(ct.kappa == doctest::Approx(0.5 * std::log(top)).epsilon(1e-12));
    }
    SUBCASE("axis duality") {
        Rng rng(13);
        for (int i = 0; i < 10000; ++i) {
            GroupElement g = random_rar(rng, 0.2, 6.0);
            auto ct = cartan(g);
            if (ct.degenerate) continue;
            CHECK(distance(ct.x_density, cartan(g.inverse()).x_attract) < 1e-9);
            CHECK(std::fabs(ct.kappa - cartan(g.inverse()).kappa) < 1e-10);
        }
    }
    SUBCASE("degenerate rotations are flagged with conventional axes") {
        auto ct = cartan(GroupElement::rotation(0.9));
        CHECK(ct.degenerate);
        CHECK(distance(ct.x_attract, e1()) < 1e-12);
        CHECK(distance(ct.x_density, e2()) < 1e-12);
    }
    SUBCASE("top singular value matches the represented operator norm") {
        Rng rng(14);
        for (int i = 0; i < 1000; ++i) {
            GroupElement g = random_rar(rng, 0.0, 4.0);
            auto ct = cartan(g);
            double direct = g.log_scale + std::log(g.op_norm_mat());
            CHECK(std::fabs(ct.kappa - std::max(direct, 0.0)) < 1e-9 * std::max(1.0, std::fabs(ct.kappa)));
        }
    }
}

TEST_CASE("cocycle sandwich and cartan approximation") {
    Rng rng(15);
    for (int i = 0; i < 10000; ++i) {
        GroupElement g = random_rar(rng, 0.0, 6.0);
        auto ct = cartan(g);
        if (ct.degenerate) continue;
        ProjectivePoint x = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        double mid = std::exp(cocycle(g, x) - ct.kappa);
        double d = distance(ct.x_density, x);
        CHECK(d - mid < 1e-10);
        CHECK(mid - d - std::exp(-2.0 * ct.kappa) < 1e-10);
        CHECK(cocycle(g, x) <= ct.kappa + 1e-10);
    }

    long tested = 0;
    for (int i = 0; i < 40000 && tested < 10000; ++i) {
        GroupElement g = random_rar(rng, 0.5, 6.0);
        auto ct = cartan(g);
        if (ct.degenerate) continue;
        ProjectivePoint x = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        ProjectivePoint xp = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        ProjectivePoint ginv_xp = act(g.inverse(), xp);
        double corr = std::exp(-2.0 * ct.kappa) + distance(ct.x_density, ginv_xp);
        double den = distance(ginv_xp, x);
        if (!(corr <= 0.5 * den)) continue;
        ++tested;
        CHECK(std::fabs(cocycle(g, x) - ct.kappa - std::log(den)) <= 2.0 * corr / den + 1e-9);
    }
    CHECK(tested == 10000);
}

TEST_CASE("orientation") {
    auto p = [](double t) { return ProjectivePoint::from_angle(t); };
    CHECK(orientation_sign(p(0.1), p(0.5), p(1.2)) == 1);
    CHECK(orientation_sign(p(0.5), p(1.2), p(0.1)) == 1); // cyclic
    CHECK(orientation_sign(p(0.5), p(0.1), p(1.2)) == -1);
    CHECK(orientation_sign(p(0.3), p(0.9), p(0.3)) == 0);

    CHECK(small_arc_sign(p(0.2), p(0.5)) == 1);
    CHECK(small_arc_sign(p(0.5), p(0.2)) == -1);
    CHECK(small_arc_sign(p(3.0), p(0.2)) == 1); // wraps through 0
    CHECK_THROWS_AS(small_arc_sign(p(0.2), p(0.2 + kPi / 2.0)), AmbiguousArc);
}

TEST_CASE("orientation transport through large elements") {
    Rng rng(16);
    long tested = 0;
    for (int i = 0; i < 60000 && tested < 10000; ++i) {
        GroupElement g = random_rar(rng, 2.2, 8.0);
        auto ct = cartan(g);
        if (ct.degenerate || ct.kappa <= 2.0) continue;
        ProjectivePoint x = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        ProjectivePoint y = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        double gap = std::exp(-ct.kappa);
        if (coincident(x, y) || distance(ct.x_density, x) <= gap || distance(ct.x_density, y) <= gap) continue;
        int expect = orientation_sign(x, y, ct.x_density);
        if (expect == 0) continue;
        ProjectivePoint gx = act(g, x), gy = act(g, y);
        if (distance(gx, gy) <= 1e-11) continue; // below double resolution
        ++tested;
        CHECK(small_arc_sign(gx, gy) == expect);
    }
    CHECK(tested == 10000);
}

TEST_CASE("arc integral") {
    auto p = [](double t) { return ProjectivePoint::from_angle(t); };
    CHECK(arc_integral([](double) { return 1.0; }, p(0.2), p(0.5)) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(arc_integral([](double) { return 1.0; }, p(0.4), p(0.4)) == doctest::Approx(0.0));
    // antiderivative oracle: phi = sin(2 theta)
    double got = arc_integral([](double t) { return 2.0 * std::cos(2.0 * t); }, p(0.1), p(0.4));
    CHECK(std::fabs(got - (std::sin(0.8) - std::sin(0.2))) < 1e-9);
    // wrap case: the small arc from 3.0 to 0.2 passes through 0
    double wrapped = arc_integral([](double t) { return 2.0 * std::cos(2.0 * t); }, p(3.0), p(0.2));
    CHECK(std::fabs(wrapped - (std::sin(0.4) - std::sin(6.0))) < 1e-9);
}

TEST_CASE("representation independence of the scale split") {
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        GroupElement g = random_rar(rng, 0.0, 4.0);
        GroupElement shifted = g;
        double c = rng.next_range(-3.0, 3.0);
        for (double& e : shifted.m) e *= std::exp(c);
        shifted.log_scale -= c;
        shifted.normalize();
        ProjectivePoint x = ProjectivePoint::from_angle(rng.next_range(0.0, kPi));
        CHECK(distance(act(g, x), act(shifted, x)) < 1e-12);
        CHECK(std::fabs(cocycle(g, x) - cocycle(shifted, x)) < 1e-10);
    }
}

TEST_CASE("group element validation") {
    CHECK_THROWS_AS(GroupElement::from_matrix(2.0, 0.0, 0.0, 1.0), std::invalid_argument);
    GroupElement g = GroupElement::from_matrix(2.0, 1.0, 1.0, 1.0);
    CHECK(std::fabs(g.det_represented() - 1.0) < 1e-12);
    double op = g.op_norm_mat();
    CHECK(op >= 0.5);
    CHECK(op <= 2.0);
}
