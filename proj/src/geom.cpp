#include "furst/geom.hpp"

#include "furst/quadrature.hpp"

#include <cmath>

namespace furst {

GroupElement GroupElement::from_matrix(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(std::fabs(det - 1.0) < 1e-9))
        throw std::invalid_argument("GroupElement: determinant must be 1 within 1e-9");
    GroupElement g;
    g.m = {a, b, c, d};
    g.log_scale = 0.0;
    g.normalize();
    return g;
}

void GroupElement::normalize() {
    // scale so the operator norm of m lands in [1, sqrt(2)]:
    // op <= frobenius <= sqrt(2) op, so dividing by frobenius/sqrt(2) works
    double s = std::sqrt(frob_sq() / 2.0);
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("GroupElement: non-finite matrix");
    double inv = 1.0 / s;
    for (double& e : m) e *= inv;
    log_scale += std::log(s);
}

double GroupElement::op_norm_mat() const {
    // exact 2x2 singular values via the half-sum/half-difference form
    double E = 0.5 * (m[0] + m[3]);
    double F = 0.5 * (m[0] - m[3]);
    double G = 0.5 * (m[2] + m[1]);
    double H = 0.5 * (m[2] - m[1]);
    return std::hypot(E, H) + std::hypot(F, G);
}

ProjectivePoint act(const GroupElement& g, ProjectivePoint x) {
    auto v = x.vec();
    double w1 = g.m[0] * v[0] + g.m[1] * v[1];
    double w2 = g.m[2] * v[0] + g.m[3] * v[1];
    return ProjectivePoint::from_vector(w1, w2);
}

double cocycle(const GroupElement& g, ProjectivePoint x) {
    auto v = x.vec();
    double w1 = g.m[0] * v[0] + g.m[1] * v[1];
    double w2 = g.m[2] * v[0] + g.m[3] * v[1];
    return g.log_scale + 0.5 * std::log(w1 * w1 + w2 * w2);
}

namespace {

// top eigenvector of the symmetric matrix [[s00, s01], [s01, s11]]
ProjectivePoint top_eigvec_sym(double s00, double s01, double s11) {
    double mid = 0.5 * (s00 + s11);
    double diff = 0.5 * (s00 - s11);
    double disc = std::hypot(diff, s01);
    double l1 = mid + disc;
    // rows of (S - l1 I) are both orthogonal to the eigenvector; take the larger
    double r1x = s00 - l1, r1y = s01;
    double r2x = s01, r2y = s11 - l1;
    double n1 = r1x * r1x + r1y * r1y;
    double n2 = r2x * r2x + r2y * r2y;
    if (n1 >= n2) return ProjectivePoint::from_vector(-r1y, r1x);
    return ProjectivePoint::from_vector(-r2y, r2x);
}

} // namespace

CartanTriple cartan(const GroupElement& g) {
    const auto& m = g.m;
    double E = 0.5 * (m[0] + m[3]);
    double F = 0.5 * (m[0] - m[3]);
    double G = 0.5 * (m[2] + m[1]);
    double H = 0.5 * (m[2] - m[1]);
    double s1 = std::hypot(E, H) + std::hypot(F, G);
    CartanTriple t;
    t.kappa = g.log_scale + std::log(s1);
    if (t.kappa < 0.0) t.kappa = 0.0;
    if (t.kappa < 1e-12) {
        t.degenerate = true;
        t.x_attract = e1();
        t.x_density = e2();
        return t;
    }
    // m^T m: top eigenvector is the most-expanded input direction; the density
    // axis is its orthogonal complement. m m^T gives the attracting axis.
    double a = m[0], b = m[1], c = m[2], d = m[3];
    ProjectivePoint right_top = top_eigvec_sym(a * a + c * c, a * b + c * d, b * b + d * d);
    t.x_density = right_top.perp();
    t.x_attract = top_eigvec_sym(a * a + b * b, a * c + b * d, c * c + d * d);
    return t;
}

int orientation_sign(ProjectivePoint x, ProjectivePoint y, ProjectivePoint z) {
    if (coincident(x, y) || coincident(y, z) || coincident(x, z)) return 0;
    double u = mod_pi(y.theta - x.theta);
    double w = mod_pi(z.theta - x.theta);
    return u < w ? 1 : -1;
}

int small_arc_sign(ProjectivePoint x, ProjectivePoint y) {
    double d = mod_pi(y.theta - x.theta);
    if (std::fabs(d - kPi / 2.0) < kPointTol) throw AmbiguousArc();
    return d < kPi / 2.0 ? 1 : -1;
}

double arc_integral(const std::function<double(double)>& phi_deriv, ProjectivePoint x, ProjectivePoint y,
                    double tol) {
    if (coincident(x, y)) return 0.0;
    int sgn = small_arc_sign(x, y);
    double start, len;
    if (sgn > 0) {
        start = x.theta;
        len = mod_pi(y.theta - x.theta);
    } else {
        start = y.theta;
        len = mod_pi(x.theta - y.theta);
    }
    auto f = [&](double u) { return phi_deriv(mod_pi(start + u)); };
    double integral = adaptive_simpson(f, 0.0, len, tol);
    return sgn > 0 ? integral : -integral;
}

} // namespace furst
