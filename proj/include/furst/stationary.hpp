#pragma once

#include "furst/geom.hpp"
#include "furst/measure.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace furst {

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

enum class Direction { forward, reversed };

struct EmpiricalMeasure {
    std::vector<double> angles; // sorted, canonical [0, pi)
    long burn_in = 0;
    std::string provenance;

    double cdf(double theta) const;            // midpoint convention at atoms
    double circular_count(double lo, double len) const; // mass of [lo, lo+len) mod pi
};

// one sample per independent path: the position after burn_in left extensions
EmpiricalMeasure mc_stationary(const StepDistribution& mu, Direction dir, long burn_in, long n_samples,
                               uint64_t seed, ProjectivePoint base = ProjectivePoint::from_angle(0.9));

// default burn-in: ceil(30 / sigma_hat) so contraction reaches ~1e-26
long default_burn_in(double sigma_hat);

struct GridMeasure {
    int m = 0;
    std::vector<double> w; // bin j covers [j*pi/m, (j+1)*pi/m)
    bool identity_kernel = false; // degenerate case: every start vector is fixed; uniform returned

    double theta_lo(int j) const { return double(j) * kPi / m; }
    double theta_hi(int j) const { return double(j + 1) * kPi / m; }
    double cdf(double theta) const; // mass spread uniformly inside bins
};

// Exact-arc Ulam discretization of the convolution kernel; stationary row
// vector by power iteration to L1 residual 1e-12.
GridMeasure ulam_stationary(const StepDistribution& mu, Direction dir, int m);

// CSV rows: bin_index, theta_lo, theta_hi, weight
void write_grid_csv(const GridMeasure& gm, std::ostream& os);

struct HolderFit {
    double alpha_hat = 0.0;
    double log_c_hat = 0.0;
    std::vector<std::pair<double, double>> table; // (radius, max ball mass over centers)
};

HolderFit holder_probe(const EmpiricalMeasure& nu, const std::vector<double>& radii, int n_centers = 100);
HolderFit holder_probe(const GridMeasure& nu, const std::vector<double>& radii, int n_centers = 100);

// Circular Kolmogorov distance: sup of |CDF difference| over the union of
// breakpoints (midpoint convention at atoms), minimized over 64 cut offsets.
double kolmogorov_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);
double kolmogorov_distance(const EmpiricalMeasure& a, const GridMeasure& b);
double kolmogorov_distance(const GridMeasure& a, const GridMeasure& b);

} // namespace furst
