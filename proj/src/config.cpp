#include "primcob/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace primcob {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

Rat need_rat(const std::string& key, const std::string& val) {
    auto r = parse_rat(val);
    if (!r) throw ConfigError("bad rational for key '" + key + "': " + val);
    return *r;
}

int need_int(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for key '" + key + "': " + val);
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "model") cfg.model_name = val;
        else if (key == "params") {
            cfg.params.clear();
            for (auto& item : split_commas(val)) cfg.params.push_back(need_rat(key, item));
        } else if (key == "r") cfg.r = need_int(key, val);
        else if (key == "seed") {
            try {
                cfg.seed = std::stoull(val);
                cfg.seed_set = true;
            } catch (const std::exception&) {
                throw ConfigError("bad seed: " + val);
            }
        } else if (key == "count") cfg.count = need_int(key, val);
        else if (key == "grid") cfg.grid_resolution = need_int(key, val);
        else if (key == "out") cfg.out_dir = val;
        else if (key == "svg") cfg.svg = (val == "1" || val == "true" || val == "yes");
        else if (key == "nf_r") cfg.nf_r = need_int(key, val);
        else if (key == "nf_k") cfg.nf_k = need_int(key, val);
        else if (key == "nf_z") cfg.nf_z = need_int(key, val);
        else if (key == "nf_j") cfg.nf_j = need_int(key, val);
        else if (key == "nf_t") cfg.nf_t = need_rat(key, val);
        else if (key == "nf_tu") cfg.nf_tu = need_rat(key, val);
        else if (key == "nf_tv") cfg.nf_tv = need_rat(key, val);
        else if (key.rfind("tol.", 0) == 0) {
            try {
                cfg.tol_overrides[key.substr(4)] = std::stod(val);
            } catch (const std::exception&) {
                throw ConfigError("bad tolerance for key '" + key + "': " + val);
            }
        } else throw ConfigError("unknown config key: " + key);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace primcob
