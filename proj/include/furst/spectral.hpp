#pragma once

#include "furst/measure.hpp"
#include "furst/stationary.hpp"

#include <complex>
#include <vector>

namespace furst {

struct CircleGrid {
    int m = 256;
    double node(int j) const { return double(j) * kPi / m; }
};

// Discretized weighted averaging operator: row j holds the atom-weighted
// interpolation stencil of f(g_i theta_j) scaled by e^{-z sig(g_i, theta_j)}.
struct TransferMatrix {
    std::complex<double> z{0.0, 0.0};
    int m = 0;
    int interpolation_order = 1;
    struct Entry {
        int col;
        std::complex<double> w;
    };
    std::vector<std::vector<Entry>> rows;

    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& f) const;
    std::vector<std::complex<double>> apply_transpose(const std::vector<std::complex<double>>& f) const;
};

TransferMatrix assemble_transfer(const StepDistribution& mu, std::complex<double> z, const CircleGrid& grid);

struct EigenEstimate {
    std::complex<double> value{0.0, 0.0};
    double residual = 0.0;
    int iterations = 0;
    std::vector<std::complex<double>> vector;
};

// dominant eigenvalue by modulus-normalized power iteration; throws
// NoConvergence after 1e5 iterations (near-degenerate dominant pair)
EigenEstimate leading_eigen(const TransferMatrix& T, double tol = 1e-10, long max_iter = 100000);

struct SigmaFromEigen {
    double value = 0.0;       // Richardson-extrapolated central difference
    double at_h = 0.0;
    double at_h_half = 0.0;
};

// Lyapunov exponent from the leading-eigenvalue curve: -d/ds log k(s) at 0
SigmaFromEigen sigma_from_eigen(const StepDistribution& mu, const CircleGrid& grid, double h);

struct NonarithRow {
    double xi = 0.0;
    double modulus = 0.0;
    bool flagged = false; // modulus >= 1 - 1e-6
};

// dominant modulus of the operator at z = i*xi per frequency
std::vector<NonarithRow> nonarith_scan(const StepDistribution& mu, const CircleGrid& grid,
                                       const std::vector<double>& xi_list);

// nonnegative normalized left dominant vector of the z = 0 operator, as a grid
// measure at the same resolution (duality probe against the Ulam fixed point)
GridMeasure left_stationary_vector(const StepDistribution& mu, const CircleGrid& grid);

} // namespace furst
