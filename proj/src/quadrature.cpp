#include "furst/quadrature.hpp"

#include <cmath>

namespace furst {

namespace {

struct SimpsonCtx {
    const std::function<double(double)>& f;
    long nodes = 0;
    long max_nodes;
};

double simpson_rec(SimpsonCtx& ctx, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = ctx.f(lm), frm = ctx.f(rm);
    ctx.nodes += 2;
    if (ctx.nodes > ctx.max_nodes) throw QuadratureFailure();
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth > 60) return left + right + delta / 15.0;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(ctx, a, m, fa, flm, fm, left, tol * 0.5, depth + 1) +
           simpson_rec(ctx, m, b, fm, frm, fb, right, tol * 0.5, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, long max_nodes) {
    if (a == b) return 0.0;
    SimpsonCtx ctx{f, 0, max_nodes};
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    ctx.nodes = 3;
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(ctx, a, b, fa, fm, fb, whole, tol, 0);
}

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// centered moments C_k = integral of (w-c)^k e^{i lam w} dw over [a, b],
// c the midpoint. Centered forms keep every term small with the panel, so the
// quadratic-fit cancellation never multiplies a large moment. Downward from
// a Taylor series when |lam| h is small, by parts otherwise.
void panel_moments_centered(double a, double b, double lam, cplx C[3]) {
    double h = b - a;
    double c = 0.5 * (a + b);
    double hw = 0.5 * h;
    if (std::fabs(lam) * h >= 0.5) {
        cplx ea = std::exp(kI * (lam * a));
        cplx eb = std::exp(kI * (lam * b));
        cplx il = kI * lam;
        C[0] = (eb - ea) / il;
        C[1] = hw * (eb + ea) / il - C[0] / il;
        C[2] = hw * hw * (eb - ea) / il - 2.0 * C[1] / il;
    } else {
        cplx ec = std::exp(kI * (lam * c));
        cplx term{1.0, 0.0};
        cplx S0 = 0, S1 = 0, S2 = 0;
        for (int j = 0; j < 24; ++j) {
            double p1 = (j % 2 == 0) ? 2.0 * std::pow(hw, j + 1) / (j + 1) : 0.0;
            double p2 = (j % 2 == 1) ? 2.0 * std::pow(hw, j + 2) / (j + 2) : 0.0;
            double p3 = (j % 2 == 0) ? 2.0 * std::pow(hw, j + 3) / (j + 3) : 0.0;
            S0 += term * p1;
            S1 += term * p2;
            S2 += term * p3;
            term *= kI * lam / double(j + 1);
            if (std::abs(term) * std::pow(hw, j + 2) < 1e-22) break;
        }
        C[0] = ec * S0;
        C[1] = ec * S1;
        C[2] = ec * S2;
    }
}

// integral of g(w) e^{i lam w} over [a, b] with g interpolated quadratically
cplx filon_panel(double a, double b, double lam, double ga, double gm, double gb) {
    double hw = 0.5 * (b - a);
    double alpha = gm;
    double beta = (gb - ga) / (2.0 * hw);
    double gamma = (gb + ga - 2.0 * gm) / (2.0 * hw * hw);
    cplx C[3];
    panel_moments_centered(a, b, lam, C);
    return alpha * C[0] + beta * C[1] + gamma * C[2];
}

struct FilonCtx {
    double lam;
    long nodes = 0;
    long max_nodes;
};

cplx filon_rec(FilonCtx& ctx, const std::function<double(double)>& g, double a, double b, double ga, double gm,
               double gb, cplx whole, double tol, int depth) {
    double c = 0.5 * (a + b);
    double glm = g(0.5 * (a + c)), grm = g(0.5 * (c + b));
    ctx.nodes += 2;
    if (ctx.nodes > ctx.max_nodes) throw QuadratureFailure();
    cplx left = filon_panel(a, c, ctx.lam, ga, glm, gm);
    cplx right = filon_panel(c, b, ctx.lam, gm, grm, gb);
    cplx delta = left + right - whole;
    // the second test is the rounding floor of the panel formulas: the Lagrange
    // coefficients cancel like 1/h^2, so refining past it only amplifies noise
    double noise_floor = 2e-14 * (1.0 + std::fabs(ga) + std::fabs(gb));
    if (std::abs(delta) <= tol || std::abs(delta) <= noise_floor || depth > 40) return left + right;
    return filon_rec(ctx, g, a, c, ga, glm, gm, left, tol * 0.5, depth + 1) +
           filon_rec(ctx, g, c, b, gm, grm, gb, right, tol * 0.5, depth + 1);
}

} // namespace

std::complex<double> oscillatory_exp_integral(double b1, double b2, double lam, double tol, long max_nodes) {
    if (b1 == b2) return {0.0, 0.0};
    if (lam == 0.0) return {b2 - b1, 0.0};
    // w = e^{-u}: integral of e^{i lam w} / w dw over [e^{-b2}, e^{-b1}]
    double a = std::exp(-b2), b = std::exp(-b1);
    auto g = [](double w) { return 1.0 / w; };
    FilonCtx ctx{lam, 3, max_nodes};
    double ga = g(a), gb = g(b), gm = g(0.5 * (a + b));
    cplx whole = filon_panel(a, b, lam, ga, gm, gb);
    return filon_rec(ctx, g, a, b, ga, gm, gb, whole, tol, 0);
}

} // namespace furst
