#include "furst/config.hpp"
#include "furst/report.hpp"
#include "furst/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Random-walk laboratory for stationary measures on the projective line"};
    app.require_subcommand(1);
    app.fallthrough(); // flags may follow the suite name

    std::string config_path, out_dir;
    std::string seed_str, paths_str;
    std::vector<std::string> suites = {"geometry", "walk", "stationary", "fourier", "renewal", "spectral", "all"};
    std::string chosen;
    for (const auto& name : suites) {
        auto* sub = app.add_subcommand(name, "run the " + name + " suite");
        sub->callback([&chosen, name] { chosen = name; });
    }
    app.add_option("--config", config_path, "config file (key = value lines with [section] headers)");
    app.add_option("--out", out_dir, "output directory (overrides run.out_dir)");
    app.add_option("--seed", seed_str, "seed override (overrides run.seed)");
    app.add_option("--paths", paths_str, "global sample-count multiplier (overrides run.paths_scale)");

    CLI11_PARSE(app, argc, argv);

    furst::Config cfg;
    try {
        cfg = config_path.empty() ? furst::Config::defaults() : furst::Config::from_file(config_path);
        if (!out_dir.empty()) cfg.values["run.out_dir"] = out_dir;
        if (!seed_str.empty()) cfg.values["run.seed"] = seed_str;
        if (!paths_str.empty()) cfg.values["run.paths_scale"] = paths_str;
        cfg.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    try {
        furst::Report rep = furst::run_experiment(cfg, chosen);
        long failed = 0;
        for (const auto& r : rep.rows) {
            std::printf("[%s] %-32s lhs=%.6g rhs=%.6g (%.0f ms)\n", r.pass ? "pass" : "FAIL", r.check_id.c_str(),
                        r.lhs, r.rhs, r.runtime_ms);
            if (!r.pass) ++failed;
        }
        std::printf("%zu checks, %ld failed; report in %s\n", rep.rows.size(), failed,
                    cfg.get_str("run.out_dir").c_str());
        return failed == 0 ? 0 : 1;
    } catch (const furst::ConfigInvalid& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
