#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace furst {

// Extended-precision evaluation context for the two-route oscillatory kernel
// comparison. The filtered element is rebuilt as the exact product of the
// atom matrices (for integer atoms the product is exact), because a
// double-precision product only determines the element to ~1e-16, while the
// calibrated frequency exp(2t+s) amplifies that far above the quantity being
// measured (~exp(-(2t-s))).
struct LambdaEvalContext {
    std::vector<std::array<double, 4>> atom_mats; // letters appended on the right
    double theta_x = 0.0;
    double theta_y = 0.0;
    int xi_sign = 1;
    double log_xi = 0.0; // log |xi| = 2t + s
    int phi_kind = 0;    // 0 identity, 1 sine shear, 2 shift
    double phi_a = 0.0;
    double win_center = 0.0;
    double win_halfwidth = 0.5;
};

// |Lambda_0 - Lambda_1| for the element prod_i atom[letters[i]]
double lambda_diff_hp(const LambdaEvalContext& ctx, const std::vector<uint16_t>& letters, int sign_transport);

} // namespace furst
