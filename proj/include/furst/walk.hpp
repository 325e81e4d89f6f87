#pragma once

#include "furst/geom.hpp"
#include "furst/measure.hpp"

#include <cstdint>
#include <vector>

namespace furst {

enum class Side { left, right };

// Running random product. Left extension keeps cocycle and position caches
// incrementally; right extension invalidates them (no incremental update for
// the Cartan data exists) and they are recomputed from the product on demand.
struct WalkState {
    GroupElement product;
    ProjectivePoint base;
    long step_count = 0;

    static WalkState start(ProjectivePoint base_point) {
        WalkState s;
        s.base = base_point;
        s.position_ = base_point;
        s.cum_cocycle_ = 0.0;
        s.caches_valid_ = true;
        return s;
    }

    void extend(const GroupElement& letter, Side side) {
        if (side == Side::left) {
            if (!caches_valid_) refresh_caches();
            cum_cocycle_ += furst::cocycle(letter, position_);
            position_ = act(letter, position_);
            product = letter * product;
        } else {
            product = product * letter;
            caches_valid_ = false;
        }
        ++step_count;
    }

    ProjectivePoint position() const {
        if (!caches_valid_) refresh_caches();
        return position_;
    }
    double cum_cocycle() const {
        if (!caches_valid_) refresh_caches();
        return cum_cocycle_;
    }
    double kappa() const { return cartan(product).kappa; }

  private:
    mutable ProjectivePoint position_;
    mutable double cum_cocycle_ = 0.0;
    mutable bool caches_valid_ = true;

    void refresh_caches() const {
        position_ = act(product, base);
        cum_cocycle_ = furst::cocycle(product, base);
        caches_valid_ = true;
    }
};

struct PathPlan {
    uint64_t seed = 1;
    long n_paths = 1;
    long max_steps = 0;
    Side side = Side::left;
};

// Per-path stream: path i uses rng_stream(plan.seed, stream_salt, i), so
// identical plans replay bit-identically and paths are order-independent.
inline Rng path_rng(const PathPlan& plan, long path_index, uint64_t stream_salt = 0) {
    return rng_stream(plan.seed, stream_salt, uint64_t(path_index));
}

// visitor(state) is called after every extension; return false to stop early
template <class Visitor>
void run_path(const StepDistribution& mu, Rng rng, ProjectivePoint base, long max_steps, Side side,
              Visitor&& visitor) {
    WalkState state = WalkState::start(base);
    for (long n = 0; n < max_steps; ++n) {
        state.extend(mu.atoms[mu.sample_index(rng)].g, side);
        if (!visitor(state)) return;
    }
}

struct LyapunovEstimate {
    double sigma_hat = 0.0;
    double stderr_ = 0.0;
    long n_steps = 0;
    long n_paths = 0;
};

LyapunovEstimate lyapunov_estimate(const StepDistribution& mu, long n_steps, long n_paths, uint64_t seed,
                                   ProjectivePoint base = e1());

struct DeviationRow {
    long n = 0;
    double sigma_tail = 0.0, sigma_lo = 0.0, sigma_hi = 0.0;
    double kappa_tail = 0.0, kappa_lo = 0.0, kappa_hi = 0.0;
    long n_paths = 0;
};

struct DeviationProfile {
    std::vector<DeviationRow> rows;
    double fitted_rate_sigma = 0.0;   // slope of log tail frequency vs n (negative = decay)
    double fitted_rate_kappa = 0.0;
};

// Tail frequencies of |sigma/n - sigma_hat| >= eps and |kappa/n - sigma_hat| >= eps
// with Wilson 95% bounds and a log-linear decay fit (counts continuity-corrected).
DeviationProfile deviation_profile(const StepDistribution& mu, ProjectivePoint base, double eps,
                                   const std::vector<long>& n_list, long n_paths, double sigma_hat,
                                   uint64_t seed);

} // namespace furst
