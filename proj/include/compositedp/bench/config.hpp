#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "compositedp/bench/query.hpp"
#include "compositedp/errors.hpp"

namespace compositedp::bench {

inline const std::vector<std::string> kAllMechanisms = {
    "a1b1", "a2b1", "a3b1", "a1b2", "a2b2", "a3b2",
    "laplace", "gaussian", "discrete_laplace", "discrete_gaussian", "truncated_discrete_laplace"};

inline bool is_composite_mechanism(const std::string &name) {
    return name.size() == 4 && name[0] == 'a' && name[2] == 'b';
}

struct BenchConfig {
    std::string dataset;
    std::string column;
    std::vector<QueryKind> queries{QueryKind::Count};
    std::vector<double> epsilons{0.2, 0.3, 0.4, 0.5, 1, 2, 3, 5};
    std::vector<std::string> mechanisms = kAllMechanisms;
    long repetitions = 1000;
    std::optional<double> sensitivity; // nullopt = auto
    std::optional<double> lower;       // nullopt = auto
    std::optional<double> upper;
    double delta = 1e-5;   // Gaussian-family baselines
    double half_width = 1; // canonical L
    std::uint64_t seed = 42;
    std::string format = "table"; // table | records | long
    int threads = 1;

    void validate() const {
        if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
        for (double e : epsilons) {
            if (!(e > 0.0)) throw ConfigError("epsilon values must be positive");
        }
        if (lower.has_value() != upper.has_value()) {
            throw ConfigError("bounds must be given as a lower/upper pair, or neither (auto)");
        }
        if (lower && !(*lower < *upper)) throw ConfigError("bounds require lower < upper");
        if (format != "table" && format != "records" && format != "long") {
            throw ConfigError("unknown output format '" + format + "'");
        }
        if (threads < 1) throw ConfigError("threads must be >= 1");
        for (const auto &m : mechanisms) {
            if (std::find(kAllMechanisms.begin(), kAllMechanisms.end(), m) == kAllMechanisms.end()) {
                throw ConfigError("unknown mechanism '" + m + "'");
            }
        }
    }
};

namespace detail {

inline std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

} // namespace detail

// Apply one key=value setting; shared between the config file parser and CLI
// flag overrides.
inline void apply_config_entry(BenchConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "dataset") {
        cfg.dataset = value;
    } else if (key == "column") {
        cfg.column = value;
    } else if (key == "queries") {
        cfg.queries.clear();
        for (const auto &q : detail::split_list(value)) cfg.queries.push_back(parse_query(q));
    } else if (key == "epsilons") {
        cfg.epsilons.clear();
        for (const auto &e : detail::split_list(value)) cfg.epsilons.push_back(std::stod(e));
    } else if (key == "mechanisms") {
        if (value == "all") {
            cfg.mechanisms = kAllMechanisms;
        } else {
            cfg.mechanisms = detail::split_list(value);
        }
    } else if (key == "repetitions") {
        cfg.repetitions = std::stol(value);
    } else if (key == "sensitivity") {
        cfg.sensitivity = value == "auto" ? std::optional<double>{} : std::optional<double>{std::stod(value)};
    } else if (key == "lower") {
        cfg.lower = value == "auto" ? std::optional<double>{} : std::optional<double>{std::stod(value)};
    } else if (key == "upper") {
        cfg.upper = value == "auto" ? std::optional<double>{} : std::optional<double>{std::stod(value)};
    } else if (key == "delta") {
        cfg.delta = std::stod(value);
    } else if (key == "half_width") {
        cfg.half_width = std::stod(value);
    } else if (key == "seed") {
        cfg.seed = std::stoull(value);
    } else if (key == "format") {
        cfg.format = value;
    } else if (key == "threads") {
        cfg.threads = std::stoi(value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

// Flat key=value file; '#' starts a comment.
inline BenchConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("cannot open config " + path);
    }
    BenchConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) apply_config_entry(cfg, key, value);
    }
    return cfg;
}

} // namespace compositedp::bench
