#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace furst {

inline constexpr double kPi = 3.14159265358979323846;

// Angular tolerance used for point coincidence everywhere.
inline constexpr double kPointTol = 1e-12;

struct AmbiguousArc : std::runtime_error {
    AmbiguousArc() : std::runtime_error("small arc undefined: points subtend a half circle") {}
};

// reduce to [0, pi)
inline double mod_pi(double x) {
    double r = std::fmod(x, kPi);
    if (r < 0.0) r += kPi;
    if (r >= kPi) r = 0.0;
    return r;
}

// distance between angles on R/piZ (arc length, in [0, pi/2])
inline double angle_gap(double a, double b) {
    double d = std::fabs(mod_pi(a) - mod_pi(b));
    return d <= kPi - d ? d : kPi - d;
}

// A direction in the plane, canonicalized to theta in [0, pi).
struct ProjectivePoint {
    double theta = 0.0;

    static ProjectivePoint from_angle(double t) { return {mod_pi(t)}; }
    static ProjectivePoint from_vector(double v1, double v2) {
        double t = std::atan2(v2, v1);
        return {mod_pi(t)};
    }
    // affine chart r = v1/v2 (r = infinity at e1)
    static ProjectivePoint from_affine(double r) { return from_vector(r, 1.0); }

    std::array<double, 2> vec() const { return {std::cos(theta), std::sin(theta)}; }
    double affine() const { return std::cos(theta) / std::sin(theta); }
    ProjectivePoint perp() const { return from_angle(theta + kPi / 2.0); }
};

inline ProjectivePoint e1() { return {0.0}; }
inline ProjectivePoint e2() { return {kPi / 2.0}; }

inline bool coincident(ProjectivePoint a, ProjectivePoint b) { return angle_gap(a.theta, b.theta) < kPointTol; }

// sine distance d(x,y) = |det(v,w)| for unit representatives = |sin(tx - ty)|
inline double distance(ProjectivePoint x, ProjectivePoint y) { return std::fabs(std::sin(x.theta - y.theta)); }

// Unit-determinant 2x2 element stored as e^{log_scale} * m with m kept at
// operator norm in [1, sqrt(2)], so arbitrarily long products never overflow.
struct GroupElement {
    std::array<double, 4> m{1.0, 0.0, 0.0, 1.0}; // row major: [a b; c d]
    double log_scale = 0.0;

    static GroupElement identity() { return {}; }

    // validates |det - 1| < 1e-9, then normalizes
    static GroupElement from_matrix(double a, double b, double c, double d);

    // direction at angle 0 goes to the direction at angle t
    static GroupElement rotation(double t) {
        GroupElement g;
        g.m = {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
        g.normalize();
        return g;
    }
    static GroupElement diagonal(double a) {
        GroupElement g;
        g.m = {1.0, 0.0, 0.0, 1.0};
        g.log_scale = 0.0;
        // build normalized directly: diag(e^a, e^-a) = e^a * diag(1, e^-2a)
        g.m[0] = 1.0;
        g.m[3] = std::exp(-2.0 * a);
        g.log_scale = a;
        g.normalize();
        return g;
    }

    void normalize();
    GroupElement inverse() const {
        // adjugate of the represented element; same scale since det = 1
        GroupElement g;
        g.m = {m[3], -m[1], -m[2], m[0]};
        g.log_scale = log_scale;
        return g;
    }
    double det_mat() const { return m[0] * m[3] - m[1] * m[2]; }
    // det of the represented element (should be 1)
    double det_represented() const { return det_mat() * std::exp(2.0 * log_scale); }
    double frob_sq() const { return m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]; }
    double op_norm_mat() const; // top singular value of m

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        GroupElement r;
        r.m = {g.m[0] * h.m[0] + g.m[1] * h.m[2], g.m[0] * h.m[1] + g.m[1] * h.m[3],
               g.m[2] * h.m[0] + g.m[3] * h.m[2], g.m[2] * h.m[1] + g.m[3] * h.m[3]};
        r.log_scale = g.log_scale + h.log_scale;
        r.normalize();
        return r;
    }
};

ProjectivePoint act(const GroupElement& g, ProjectivePoint x);

// e^{log_scale} * m as plain doubles; only sensible for moderate scales
inline std::array<double, 4> represented_matrix(const GroupElement& g) {
    double s = std::exp(g.log_scale);
    return {s * g.m[0], s * g.m[1], s * g.m[2], s * g.m[3]};
}

// sig(g, x) = log |g v| for a unit representative v of x, scale handled in logs
double cocycle(const GroupElement& g, ProjectivePoint x);

struct CartanTriple {
    double kappa = 0.0;             // log of the top singular value, >= 0
    ProjectivePoint x_attract;      // top left-singular direction
    ProjectivePoint x_density;      // bottom right-singular direction
    bool degenerate = false;        // kappa below 1e-12: axes are conventional e1, e2
};

CartanTriple cartan(const GroupElement& g);

// cyclic orientation of three points on R/piZ: 0 if any two coincide
int orientation_sign(ProjectivePoint x, ProjectivePoint y, ProjectivePoint z);

// +1 if x starts the small arc toward y, -1 otherwise; throws AmbiguousArc on a half circle
int small_arc_sign(ProjectivePoint x, ProjectivePoint y);

// sign(x,y) * integral of phi' over the small arc; equals phi(y) - phi(x) for the periodic lift
double arc_integral(const std::function<double(double)>& phi_deriv, ProjectivePoint x, ProjectivePoint y,
                    double tol = 1e-10);

} // namespace furst
