#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace polymer {

/// One component of a statistical or pointwise check.
struct ComponentResult {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Structured result of a check: statistics, thresholds, verdict, seed, n.
struct TestReport {
    std::string kind;
    std::string key;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::vector<ComponentResult> components;
    std::vector<std::string> notes;

    bool pass() const {
        for (const auto& c : components)
            if (!c.pass) return false;
        return true;
    }

    void add(std::string name, double statistic, double threshold) {
        components.push_back({std::move(name), statistic, threshold,
                              statistic <= threshold});
    }

    void add_bool(std::string name, bool ok) {
        components.push_back({std::move(name), ok ? 0.0 : 1.0, 0.5, ok});
    }

    nlohmann::json to_json() const {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& c : components) {
            comps.push_back({{"name", c.name},
                             {"statistic", c.statistic},
                             {"threshold", c.threshold},
                             {"pass", c.pass}});
        }
        return {{"schema_version", 1},
                {"kind", kind},
                {"key", key},
                {"seed", seed},
                {"n", n},
                {"pass", pass()},
                {"components", comps},
                {"notes", notes}};
    }
};

} // namespace polymer
