#include "furst/walk.hpp"

#include "furst/parallel.hpp"
#include "furst/stats.hpp"

#include <algorithm>
#include <cmath>

namespace furst {

LyapunovEstimate lyapunov_estimate(const StepDistribution& mu, long n_steps, long n_paths, uint64_t seed,
                                   ProjectivePoint base) {
    std::vector<double> per_path(static_cast<std::size_t>(n_paths));
    parallel_for(std::size_t(n_paths), [&](std::size_t i) {
        Rng rng = rng_stream(seed, 0x11, uint64_t(i));
        ProjectivePoint pos = base;
        double sigma = 0.0;
        for (long n = 0; n < n_steps; ++n) {
            const GroupElement& g = mu.atoms[mu.sample_index(rng)].g;
            sigma += cocycle(g, pos);
            pos = act(g, pos);
        }
        per_path[i] = sigma / double(n_steps);
    });
    Accumulator acc;
    for (double v : per_path) acc.add(v);
    return {acc.mean(), acc.stderr_mean(), n_steps, n_paths};
}

DeviationProfile deviation_profile(const StepDistribution& mu, ProjectivePoint base, double eps,
                                   const std::vector<long>& n_list, long n_paths, double sigma_hat,
                                   uint64_t seed) {
    long n_max = *std::max_element(n_list.begin(), n_list.end());
    std::vector<long> sorted_n = n_list;
    std::sort(sorted_n.begin(), sorted_n.end());

    std::vector<std::vector<uint8_t>> sigma_hits(sorted_n.size()), kappa_hits(sorted_n.size());
    for (auto& v : sigma_hits) v.assign(std::size_t(n_paths), 0);
    for (auto& v : kappa_hits) v.assign(std::size_t(n_paths), 0);

    parallel_for(std::size_t(n_paths), [&](std::size_t i) {
        Rng rng = rng_stream(seed, 0x12, uint64_t(i));
        WalkState st = WalkState::start(base);
        std::size_t next = 0;
        for (long n = 1; n <= n_max && next < sorted_n.size(); ++n) {
            st.extend(mu.atoms[mu.sample_index(rng)].g, Side::left);
            if (n == sorted_n[next]) {
                double ds = std::fabs(st.cum_cocycle() / double(n) - sigma_hat);
                double dk = std::fabs(st.kappa() / double(n) - sigma_hat);
                sigma_hits[next][i] = ds >= eps ? 1 : 0;
                kappa_hits[next][i] = dk >= eps ? 1 : 0;
                ++next;
            }
        }
    });

    DeviationProfile prof;
    std::vector<double> xs, ys_sigma, ys_kappa;
    for (std::size_t j = 0; j < sorted_n.size(); ++j) {
        long ks = 0, kk = 0;
        for (long i = 0; i < n_paths; ++i) {
            ks += sigma_hits[j][std::size_t(i)];
            kk += kappa_hits[j][std::size_t(i)];
        }
        DeviationRow row;
        row.n = sorted_n[j];
        row.n_paths = n_paths;
        row.sigma_tail = double(ks) / double(n_paths);
        row.kappa_tail = double(kk) / double(n_paths);
        auto ws = wilson_interval(ks, n_paths);
        auto wk = wilson_interval(kk, n_paths);
        row.sigma_lo = ws.first;
        row.sigma_hi = ws.second;
        row.kappa_lo = wk.first;
        row.kappa_hi = wk.second;
        prof.rows.push_back(row);
        xs.push_back(double(row.n));
        // continuity correction keeps zero counts usable in the log fit
        ys_sigma.push_back(std::log((double(ks) + 0.5) / (double(n_paths) + 1.0)));
        ys_kappa.push_back(std::log((double(kk) + 0.5) / (double(n_paths) + 1.0)));
    }
    if (xs.size() >= 2) {
        prof.fitted_rate_sigma = least_squares(xs, ys_sigma).slope;
        prof.fitted_rate_kappa = least_squares(xs, ys_kappa).slope;
    }
    return prof;
}

} // namespace furst
