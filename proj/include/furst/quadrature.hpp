#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace furst {

struct QuadratureFailure : std::runtime_error {
    QuadratureFailure() : std::runtime_error("quadrature refinement exceeded the node budget") {}
};

// Adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        long max_nodes = 1000000);

// integral of e^{i*lam*exp(-u)} du over [b1, b2], stable for |lam| up to 1e8+.
// Uses the substitution w = e^{-u} and oscillation-exact panels, so the node
// count stays bounded independently of lam.
std::complex<double> oscillatory_exp_integral(double b1, double b2, double lam, double tol = 1e-10,
                                              long max_nodes = 1000000);

} // namespace furst
