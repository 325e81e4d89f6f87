#include "furst/lambda_hp.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace furst {

namespace {

namespace mp = boost::multiprecision;
using big = mp::number<mp::cpp_bin_float<160>>;

big big_pi() { return boost::math::constants::pi<big>(); }

big mod_pi_big(big x) {
    big pi = big_pi();
    big r = fmod(x, pi);
    if (r < 0) r += pi;
    return r;
}

big angle_gap_big(big a, big b) {
    big pi = big_pi();
    big d = abs(mod_pi_big(a) - mod_pi_big(b));
    return d <= pi - d ? d : pi - d;
}

big window_big(big t, double center, double halfwidth) {
    big d = angle_gap_big(t, big(center));
    big w(halfwidth);
    if (d >= w) return big(0);
    big c = cos(big_pi() / 2 * d / w);
    return c * c;
}

big phi_lift_big(big t, int kind, double a) {
    if (kind == 1) return t + big(a) * sin(2 * t);
    if (kind == 2) return t + big(a);
    return t;
}

big phi_deriv_big(big t, int kind, double a) {
    if (kind == 1) return 1 + 2 * big(a) * cos(2 * t);
    return big(1);
}

} // namespace

double lambda_diff_hp(const LambdaEvalContext& ctx, const std::vector<uint16_t>& letters, int sign_transport) {
    // exact product, letters appended on the right
    big a(1), b(0), c(0), d(0);
    d = 1;
    for (uint16_t idx : letters) {
        const auto& m = ctx.atom_mats[idx];
        big ma(m[0]), mb(m[1]), mc(m[2]), md(m[3]);
        big na = a * ma + b * mc, nb = a * mb + b * md;
        big nc = c * ma + d * mc, nd = c * mb + d * md;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    // unit-determinant representative (exact for integer atoms)
    const big scale = sqrt(a * d - b * c);
    a /= scale;
    b /= scale;
    c /= scale;
    d /= scale;

    const big tx(ctx.theta_x), ty(ctx.theta_y);
    const big vx1 = cos(tx), vx2 = sin(tx);
    const big vy1 = cos(ty), vy2 = sin(ty);

    // cocycle route
    const big wx1 = a * vx1 + b * vx2, wx2 = c * vx1 + d * vx2;
    const big wy1 = a * vy1 + b * vy2, wy2 = c * vy1 + d * vy2;
    const big sig_x = log(sqrt(wx1 * wx1 + wx2 * wx2));
    const big sig_y = log(sqrt(wy1 * wy1 + wy2 * wy2));

    // Cartan route
    const big E = (a + d) / 2, F = (a - d) / 2, G = (c + b) / 2, H = (c - b) / 2;
    const big s1 = sqrt(E * E + H * H) + sqrt(F * F + G * G);
    const big kappa = log(s1);

    // inverse orbit of x: adj(g) v_x
    const big u1 = d * vx1 - b * vx2, u2 = -c * vx1 + a * vx2;
    const big unorm = sqrt(u1 * u1 + u2 * u2);
    const big d_invx_x = abs(u1 * vx2 - u2 * vx1) / unorm;
    const big d_invx_y = abs(u1 * vy2 - u2 * vy1) / unorm;

    const big d_xy = abs(sin(tx - ty));
    const big xi = big(ctx.xi_sign) * exp(big(ctx.log_xi));
    const big sgn(sign_transport);

    // pair distance transported by the exact contraction identity
    const big D0 = d_xy * exp(-sig_x - sig_y);
    const big arc0 = asin(D0);
    const big theta_gx = atan2(wx2, wx1);
    const big theta_gy_lift = theta_gx + sgn * arc0;

    const big phase0 = xi * (phi_lift_big(theta_gx, ctx.phi_kind, ctx.phi_a) -
                             phi_lift_big(theta_gy_lift, ctx.phi_kind, ctx.phi_a));
    const big amp0 = window_big(theta_gx, ctx.win_center, ctx.win_halfwidth) *
                     window_big(theta_gy_lift, ctx.win_center, ctx.win_halfwidth);

    // The transported pair sits at theta_gx + sgn*arc, so the first-order
    // phase of Lambda_0 is -sgn * phi'(gx) * distance; the linearized kernel
    // carries the same orientation.
    const big D1 = d_xy * exp(-2 * kappa) / (d_invx_x * d_invx_y);
    const big phase1 = -xi * sgn * phi_deriv_big(theta_gx, ctx.phi_kind, ctx.phi_a) * D1;
    const big w_gx = window_big(theta_gx, ctx.win_center, ctx.win_halfwidth);
    const big amp1 = w_gx * w_gx;

    const big re = cos(phase0) * amp0 - cos(phase1) * amp1;
    const big im = sin(phase0) * amp0 - sin(phase1) * amp1;
    return double(sqrt(re * re + im * im));
}

} // namespace furst
