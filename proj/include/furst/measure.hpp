#pragma once

#include "furst/geom.hpp"
#include "furst/rng.hpp"

#include <string>
#include <vector>

namespace furst {

struct Atom {
    double weight;
    GroupElement g;
};

// Finitely supported step law on SL2(R).
struct StepDistribution {
    std::vector<Atom> atoms;
    double eps1 = 0.5;       // exponent used for the reported moment
    std::string name;

    StepDistribution() = default;
    StepDistribution(std::vector<Atom> a, std::string n);

    std::size_t sample_index(Rng& rng) const;
    const GroupElement& sample(Rng& rng) const { return atoms[sample_index(rng)].g; }

    // pushforward by g -> g^{-1}
    StepDistribution reversed() const;

    // sum of w_i * |g_i|^{eps1} (operator norm of the represented element)
    double exp_moment() const;

    // largest log of a represented operator norm; bounds every Cartan jump
    double max_kappa() const;

  private:
    std::vector<double> cdf_;
    void validate_and_finalize();
};

// Catalog:
//   "zariski-free"              -- [[2,1],[1,1]] and [[1,1],[1,2]], weights 1/2
//   "diag-symmetric"            -- diag(2,1/2) and diag(1/2,2), weights 1/2
//   "bernoulli-solvable(l)"     -- upper-triangular pair acting as r -> l*r -+ 1
//   "rotation-hyperbolic(t,a)"  -- rotation by t and diag(e^a, e^-a), weights 1/2
StepDistribution preset(const std::string& spec);

} // namespace furst
