#pragma once

#include "furst/geom.hpp"

#include <cmath>
#include <string>

namespace furst {

// One-dimensional catalog profiles: value in [0,1], known support, certified
// Lipschitz constant.
struct Profile {
    enum Kind { constant, bump, smooth_indicator, upper_shoulder } kind = constant;
    double lo = 0.0, hi = 0.0; // support
    double p0 = 0.0, p1 = 0.0; // bump: center/halfwidth; indicators: edges; shoulder width in p1

    static Profile one(double lo, double hi) { return {constant, lo, hi, 0, 0}; }
    static Profile cosine_bump(double center, double halfwidth) {
        return {bump, center - halfwidth, center + halfwidth, center, halfwidth};
    }
    // ~1_{[a,b]} with raised-cosine shoulders of the given width centered at
    // the edges (integral equals b - a exactly)
    static Profile indicator(double a, double b, double shoulder = 0.1) {
        Profile p{smooth_indicator, a - 0.5 * shoulder, b + 0.5 * shoulder, a, b};
        p.shoulder_w = shoulder;
        return p;
    }
    // ~1_{[s, +inf)} truncated at hi, rising shoulder centered at s
    static Profile threshold(double s, double hi, double shoulder = 0.1) {
        Profile p{upper_shoulder, s - 0.5 * shoulder, hi, s, 0.0};
        p.shoulder_w = shoulder;
        return p;
    }

    double operator()(double x) const {
        switch (kind) {
        case constant: return x >= lo && x <= hi ? 1.0 : 0.0;
        case bump: {
            double d = std::fabs(x - p0);
            if (d >= p1) return 0.0;
            double c = std::cos(0.5 * kPi * d / p1);
            return c * c;
        }
        case smooth_indicator: return edge_up(x, p0) * edge_down(x, p1);
        case upper_shoulder: return x > hi ? 0.0 : edge_up(x, p0);
        }
        return 0.0;
    }

    double lipschitz() const {
        switch (kind) {
        case constant: return 0.0; // discontinuous at the truncation edges by design; huge supports in practice
        case bump: return 0.5 * kPi / p1;
        case smooth_indicator:
        case upper_shoulder: return 0.5 * kPi / shoulder_w;
        }
        return 0.0;
    }

    // exact integral over the real line (supports are compact)
    double integral() const {
        switch (kind) {
        case constant: return hi - lo;
        case bump: return p1; // mean of cos^2 over the bump is 1/2
        case smooth_indicator: return p1 - p0;
        case upper_shoulder: return hi - p0;
        }
        return 0.0;
    }

    double shoulder_w = 0.1;

  private:
    // cosine ramp 0 -> 1 across [edge - s/2, edge + s/2]
    double edge_up(double x, double edge) const {
        double t = (x - edge) / shoulder_w + 0.5;
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return 0.5 * (1.0 - std::cos(kPi * t));
    }
    double edge_down(double x, double edge) const { return edge_up(2.0 * edge - x, edge); }
};

// Circle profile: raised-cosine bump in the angular metric, or constant 1.
struct CircleProfile {
    bool is_constant = true;
    double center = 0.0, halfwidth = 0.0;

    static CircleProfile one() { return {}; }
    static CircleProfile cosine_bump(double center, double halfwidth) { return {false, center, halfwidth}; }

    double operator()(ProjectivePoint x) const {
        if (is_constant) return 1.0;
        double d = angle_gap(x.theta, center);
        if (d >= halfwidth) return 0.0;
        double c = std::cos(0.5 * kPi * d / halfwidth);
        return c * c;
    }
    double lipschitz() const { return is_constant ? 0.0 : 0.5 * kPi / halfwidth; }
};

// Separable target f(y', y, v, u) = fyp(y') fy(y) fv(v) fu(u). Scalar arity
// uses only (y, u); jump arity (y, v, u).
struct TargetFunction {
    enum class Arity { scalar, jump, full };
    Arity arity = Arity::scalar;
    CircleProfile fyp = CircleProfile::one();
    CircleProfile fy = CircleProfile::one();
    Profile fv = Profile::one(-1e9, 1e9);
    Profile fu = Profile::one(0.0, 1.0);
    std::string name;

    double u_lo() const { return fu.lo; }
    double u_hi() const { return fu.hi; }
    double v_bound() const { return std::max(std::fabs(fv.lo), std::fabs(fv.hi)); }
    double lipschitz() const { return fyp.lipschitz() + fy.lipschitz() + fv.lipschitz() + fu.lipschitz(); }

    double eval(ProjectivePoint y, double u) const { return fy(y) * fu(u); }
    double eval(ProjectivePoint y, double v, double u) const { return fy(y) * fv(v) * fu(u); }
    double eval(ProjectivePoint yp, ProjectivePoint y, double v, double u) const {
        return fyp(yp) * fy(y) * fv(v) * fu(u);
    }

    static TargetFunction scalar_indicator(double a, double b, double shoulder = 0.1) {
        TargetFunction f;
        f.arity = Arity::scalar;
        f.fu = Profile::indicator(a, b, shoulder);
        f.name = "scalar-indicator";
        return f;
    }
    static TargetFunction scalar_bump(double u0, double halfwidth) {
        TargetFunction f;
        f.arity = Arity::scalar;
        f.fu = Profile::cosine_bump(u0, halfwidth);
        f.name = "scalar-bump";
        return f;
    }
    static TargetFunction jump_one(double u_abs, double v_abs) {
        TargetFunction f;
        f.arity = Arity::jump;
        f.fu = Profile::one(-u_abs, u_abs);
        f.fv = Profile::one(-v_abs, v_abs);
        f.name = "jump-one";
        return f;
    }
    static TargetFunction jump_threshold(double s, double u_abs, double v_abs, double shoulder = 0.1) {
        TargetFunction f;
        f.arity = Arity::jump;
        f.fu = Profile::one(-u_abs, u_abs);
        f.fv = Profile::threshold(s, v_abs, shoulder);
        f.name = "jump-threshold";
        return f;
    }
    static TargetFunction jump_bump(double yc, double yw, double vc, double vw, double uc, double uw) {
        TargetFunction f;
        f.arity = Arity::jump;
        f.fy = CircleProfile::cosine_bump(yc, yw);
        f.fv = Profile::cosine_bump(vc, vw);
        f.fu = Profile::cosine_bump(uc, uw);
        f.name = "jump-bump";
        return f;
    }
    static TargetFunction full_bump(double ypc, double ypw, double yc, double yw, double vc, double vw, double uc,
                                    double uw) {
        TargetFunction f = jump_bump(yc, yw, vc, vw, uc, uw);
        f.arity = Arity::full;
        f.fyp = CircleProfile::cosine_bump(ypc, ypw);
        f.name = "full-bump";
        return f;
    }
};

} // namespace furst
