#pragma once

#include "furst/measure.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace furst {

struct ConfigInvalid : std::runtime_error {
    explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

// Flat "key = value" lines with [section] headers and # comments. Keys are
// stored as "section.key"; unknown keys are rejected so typos surface.
struct Config {
    std::map<std::string, std::string> values;

    static Config defaults();
    static Config from_file(const std::string& path);
    void apply_line(const std::string& section, const std::string& line, const std::string& where);

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get_str(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_long(const std::string& key) const;
    uint64_t get_seed() const;

    // path/sample counts scaled by run.paths_scale with a floor
    long scaled(const std::string& key, long floor_value = 64) const;

    // [measure] preset or inline atoms
    StepDistribution measure() const;

    void validate() const;
};

} // namespace furst
