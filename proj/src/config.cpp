#include "furst/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace furst {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "run.seed", "run.out_dir", "run.paths_scale",
        "measure.preset", "measure.atom_count",
        "geometry.trials",
        "walk.lyap_steps", "walk.lyap_paths",
        "stationary.samples", "stationary.ulam_m",
        "fourier.samples", "fourier.osc_xi_lo", "fourier.osc_xi_hi", "fourier.pisot_nmax",
        "renewal.paths", "renewal.oracle_draws", "renewal.pool",
        "spectral.m",
    };
    return keys;
}

bool inline_atom_key(const std::string& key) {
    // measure.atom.<i>.weight / measure.atom.<i>.mat
    if (key.rfind("measure.atom.", 0) != 0) return false;
    return key.size() > 13 && (key.rfind(".weight") == key.size() - 7 || key.rfind(".mat") == key.size() - 4);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::defaults() {
    Config c;
    c.values = {
        {"run.seed", "20250607"},
        {"run.out_dir", "out"},
        {"run.paths_scale", "1"},
        {"measure.preset", "zariski-free"},
        {"geometry.trials", "10000"},
        {"walk.lyap_steps", "10000"},
        {"walk.lyap_paths", "1000"},
        {"stationary.samples", "100000"},
        {"stationary.ulam_m", "512"},
        {"fourier.samples", "1000000"},
        {"fourier.osc_xi_lo", "32"},
        {"fourier.osc_xi_hi", "2048"},
        {"fourier.pisot_nmax", "20"},
        {"renewal.paths", "20000"},
        {"renewal.oracle_draws", "100000"},
        {"renewal.pool", "100000"},
        {"spectral.m", "256"},
    };
    return c;
}

void Config::apply_line(const std::string& section, const std::string& line, const std::string& where) {
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigInvalid(where + ": expected key = value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) throw ConfigInvalid(where + ": empty key or value in '" + line + "'");
    std::string full = section.empty() ? key : section + "." + key;
    if (!known_keys().count(full) && !inline_atom_key(full))
        throw ConfigInvalid(where + ": unknown config key '" + full + "'");
    values[full] = val;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("config file not readable: " + path);
    Config c = defaults();
    std::string line, section;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigInvalid(path + ":" + std::to_string(line_no) + ": malformed section");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        c.apply_line(section, t, path + ":" + std::to_string(line_no));
    }
    c.validate();
    return c;
}

std::string Config::get_str(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigInvalid("missing config key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const {
    try {
        return std::stod(get_str(key));
    } catch (const std::exception&) {
        throw ConfigInvalid("config key '" + key + "' is not a number: '" + get_str(key) + "'");
    }
}

long Config::get_long(const std::string& key) const {
    double v = get_double(key);
    if (v != std::floor(v)) throw ConfigInvalid("config key '" + key + "' is not an integer");
    return long(v);
}

uint64_t Config::get_seed() const { return uint64_t(std::stoull(get_str("run.seed"))); }

long Config::scaled(const std::string& key, long floor_value) const {
    double scale = get_double("run.paths_scale");
    if (!(scale > 0.0)) throw ConfigInvalid("run.paths_scale must be positive");
    double v = double(get_long(key)) * scale;
    long out = long(std::llround(v));
    return out < floor_value ? floor_value : out;
}

StepDistribution Config::measure() const {
    if (has("measure.atom_count")) {
        long n = get_long("measure.atom_count");
        if (n < 1) throw ConfigInvalid("measure.atom_count must be at least 1");
        std::vector<Atom> atoms;
        for (long i = 0; i < n; ++i) {
            std::string base = "measure.atom." + std::to_string(i);
            double w = get_double(base + ".weight");
            std::istringstream mats(get_str(base + ".mat"));
            double a, b, c2, d;
            if (!(mats >> a >> b >> c2 >> d)) throw ConfigInvalid(base + ".mat must hold four numbers");
            try {
                atoms.push_back({w, GroupElement::from_matrix(a, b, c2, d)});
            } catch (const std::exception& e) {
                throw ConfigInvalid(base + ".mat: " + e.what());
            }
        }
        try {
            return StepDistribution(std::move(atoms), "inline");
        } catch (const std::exception& e) {
            throw ConfigInvalid(std::string("measure.atom list: ") + e.what());
        }
    }
    try {
        return preset(get_str("measure.preset"));
    } catch (const std::exception& e) {
        throw ConfigInvalid(std::string("measure.preset: ") + e.what());
    }
}

void Config::validate() const {
    if (!(get_double("run.paths_scale") > 0.0)) throw ConfigInvalid("run.paths_scale must be positive");
    (void)get_seed();
    (void)measure();
    for (const char* key : {"geometry.trials", "walk.lyap_steps", "walk.lyap_paths", "stationary.samples",
                            "fourier.samples", "renewal.paths", "renewal.oracle_draws", "renewal.pool"})
        if (get_long(key) < 1) throw ConfigInvalid(std::string(key) + " must be positive");
    if (get_long("stationary.ulam_m") < 16) throw ConfigInvalid("stationary.ulam_m must be at least 16");
    if (get_long("spectral.m") < 32) throw ConfigInvalid("spectral.m must be at least 32");
}

} // namespace furst
