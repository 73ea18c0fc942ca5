#pragma once

#include "primcob/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace primcob {

/// Flat key=value run configuration. Arrays are comma-separated, rationals
/// written as "p/q"; '#' starts a comment.
struct RunConfig {
    std::string model_name;
    std::vector<Rat> params;
    int r = 2;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int count = 100;
    int grid_resolution = 256;
    std::map<std::string, double> tol_overrides;
    std::string out_dir = ".";
    bool svg = false;

    // normal-form suite inputs
    int nf_r = 2, nf_k = 0, nf_z = 0, nf_j = 1;
    Rat nf_t = Rat(1);
    Rat nf_tu = Rat(-1), nf_tv = Rat(1);

    double tol(const std::string& key, double fallback) const {
        auto it = tol_overrides.find(key);
        return it != tol_overrides.end() ? it->second : fallback;
    }
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

} // namespace primcob
