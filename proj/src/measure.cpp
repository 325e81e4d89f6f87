#include "furst/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace furst {

StepDistribution::StepDistribution(std::vector<Atom> a, std::string n) : atoms(std::move(a)), name(std::move(n)) {
    validate_and_finalize();
}

void StepDistribution::validate_and_finalize() {
    if (atoms.empty()) throw std::invalid_argument("StepDistribution: no atoms");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.weight > 0.0)) throw std::invalid_argument("StepDistribution: weights must be positive");
        if (std::fabs(a.g.det_represented() - 1.0) >= 1e-9)
            throw std::invalid_argument("StepDistribution: atom determinant must be 1 within 1e-9");
        total += a.weight;
    }
    if (std::fabs(total - 1.0) >= 1e-12) throw std::invalid_argument("StepDistribution: weights must sum to 1");
    cdf_.clear();
    cdf_.reserve(atoms.size());
    double acc = 0.0;
    for (const auto& a : atoms) {
        acc += a.weight;
        cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
}

std::size_t StepDistribution::sample_index(Rng& rng) const {
    double u = rng.next_double();
    std::size_t lo = 0, hi = cdf_.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (u < cdf_[mid]) hi = mid; else lo = mid + 1;
    }
    return lo;
}

StepDistribution StepDistribution::reversed() const {
    std::vector<Atom> inv;
    inv.reserve(atoms.size());
    for (const auto& a : atoms) inv.push_back({a.weight, a.g.inverse()});
    StepDistribution r(std::move(inv), name + "-reversed");
    r.eps1 = eps1;
    return r;
}

double StepDistribution::exp_moment() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight * std::exp(eps1 * (a.g.log_scale + std::log(a.g.op_norm_mat())));
    return s;
}

double StepDistribution::max_kappa() const {
    double k = 0.0;
    for (const auto& a : atoms) {
        double ka = a.g.log_scale + std::log(a.g.op_norm_mat());
        if (ka > k) k = ka;
    }
    return k;
}

namespace {

std::vector<double> parse_args(const std::string& spec, std::size_t open) {
    if (spec.back() != ')') throw std::invalid_argument("preset: missing ')': " + spec);
    std::vector<double> out;
    std::size_t pos = open + 1;
    std::size_t end = spec.size() - 1;
    while (pos < end) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos || comma > end) comma = end;
        out.push_back(std::stod(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

} // namespace

StepDistribution preset(const std::string& spec) {
    std::size_t open = spec.find('(');
    std::string base = open == std::string::npos ? spec : spec.substr(0, open);
    std::vector<double> args;
    if (open != std::string::npos) args = parse_args(spec, open);

    if (base == "zariski-free") {
        return StepDistribution({{0.5, GroupElement::from_matrix(2, 1, 1, 1)},
                                 {0.5, GroupElement::from_matrix(1, 1, 1, 2)}},
                                spec);
    }
    if (base == "diag-symmetric") {
        double a = std::log(2.0);
        return StepDistribution({{0.5, GroupElement::diagonal(a)}, {0.5, GroupElement::diagonal(-a)}}, spec);
    }
    if (base == "bernoulli-solvable") {
        if (args.size() != 1 || !(args[0] > 0.0 && args[0] < 1.0))
            throw std::invalid_argument("bernoulli-solvable(lambda) needs lambda in (0,1)");
        double s = std::sqrt(args[0]);
        // affine actions r -> lambda*r - 1 and r -> lambda*r + 1 in the r = v1/v2 chart
        return StepDistribution({{0.5, GroupElement::from_matrix(s, -1.0 / s, 0.0, 1.0 / s)},
                                 {0.5, GroupElement::from_matrix(s, 1.0 / s, 0.0, 1.0 / s)}},
                                spec);
    }
    if (base == "rotation-hyperbolic") {
        if (args.size() != 2) throw std::invalid_argument("rotation-hyperbolic(theta,a) needs two arguments");
        return StepDistribution({{0.5, GroupElement::rotation(args[0])}, {0.5, GroupElement::diagonal(args[1])}},
                                spec);
    }
    throw std::invalid_argument("unknown preset: " + spec);
}

} // namespace furst
