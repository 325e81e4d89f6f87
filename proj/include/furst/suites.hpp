#pragma once

#include "furst/config.hpp"
#include "furst/report.hpp"
#include "furst/stationary.hpp"

#include <optional>
#include <string>

namespace furst {

// Shared run state: the measure under test plus lazily built pools so several
// checks reuse one set of samples (disjoint seed streams per artifact).
struct Lab {
    Config cfg;
    std::string out_dir;
    StepDistribution mu;

    explicit Lab(const Config& c);

    double sigma_hat();
    double sigma_stderr();
    const EmpiricalMeasure& nu_pool();       // stationary.samples draws of nu
    const EmpiricalMeasure& nu_check_pool(); // renewal.pool draws of reversed nu
    const EmpiricalMeasure& nu_big();        // fourier.samples draws of nu

    uint64_t seed_for(uint64_t module_id, uint64_t experiment_id) const;

  private:
    std::optional<double> sigma_, sigma_se_;
    std::optional<EmpiricalMeasure> nu_, nu_check_, nu_big_;
};

Report geometry_suite(Lab& lab);
Report walk_suite(Lab& lab);
Report stationary_suite(Lab& lab);
Report fourier_suite(Lab& lab);
Report renewal_suite(Lab& lab);
Report spectral_suite(Lab& lab);

// suite is one of: geometry, walk, stationary, fourier, renewal, spectral, all.
// Writes per-module artifact CSVs plus report.csv / report.json into out_dir.
Report run_experiment(const Config& cfg, const std::string& suite);

} // namespace furst
