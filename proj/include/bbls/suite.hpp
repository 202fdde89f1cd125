#pragma once
// Suite enumeration: maps (dimension, function, instance) triples to flat
// indices and attaches target values to problems.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbls/functions.hpp"

namespace bbls {

inline const std::vector<int>& official_dimensions() {
    static const std::vector<int> dims{20, 40, 80, 160, 320, 640};
    return dims;
}

struct SuiteConfig {
    std::vector<int> dimensions;
    std::vector<int> function_ids;
    std::vector<std::int64_t> instances;
    bool test_mode = false;  // permits n outside the official list

    void validate() const {
        auto no_dupes = [](const auto& v) {
            std::set<typename std::decay_t<decltype(v)>::value_type> s(
                v.begin(), v.end());
            return s.size() == v.size();
        };
        if (!no_dupes(dimensions) || !no_dupes(function_ids) ||
            !no_dupes(instances))
            throw std::invalid_argument("suite config: duplicate entries");
        for (int d : dimensions) {
            const auto& off = official_dimensions();
            if (std::find(off.begin(), off.end(), d) == off.end()) {
                if (!test_mode)
                    throw std::invalid_argument(
                        "suite config: dimension " + std::to_string(d) +
                        " is not official (set test mode to allow)");
                if (d < 2)
                    throw std::invalid_argument("suite config: dimension < 2");
            }
        }
        for (int f : function_ids)
            if (f < 1 || f > kFunctionCount)
                throw std::invalid_argument("suite config: function id out of range");
        for (auto i : instances)
            if (i < 0)
                throw std::invalid_argument("suite config: negative instance");
    }

    std::size_t size() const {
        return dimensions.size() * function_ids.size() * instances.size();
    }
};

inline SuiteConfig default_suite_config() {
    SuiteConfig c;
    c.dimensions = official_dimensions();
    c.function_ids.resize(kFunctionCount);
    for (int f = 1; f <= kFunctionCount; ++f)
        c.function_ids[static_cast<std::size_t>(f - 1)] = f;
    for (std::int64_t i = 1; i <= 15; ++i) c.instances.push_back(i);
    return c;
}

// Lexicographic enumeration: dimension outer, function id middle, instance
// inner. Flat indices are positions in this order.
inline std::vector<ProblemDescriptor> suite_iter(const SuiteConfig& config) {
    config.validate();
    std::vector<ProblemDescriptor> out;
    out.reserve(config.size());
    for (int d : config.dimensions)
        for (int f : config.function_ids)
            for (auto inst : config.instances)
                out.push_back(ProblemDescriptor{f, d, inst, function_name(f),
                                                function_group(f)});
    return out;
}

inline ProblemDescriptor descriptor_at(const SuiteConfig& config,
                                       std::size_t index) {
    if (index >= config.size())
        throw std::out_of_range("suite index out of range");
    const std::size_t per_dim = config.function_ids.size() * config.instances.size();
    const std::size_t di = index / per_dim;
    const std::size_t fi = (index % per_dim) / config.instances.size();
    const std::size_t ii = index % config.instances.size();
    const int f = config.function_ids[fi];
    return ProblemDescriptor{f, config.dimensions[di], config.instances[ii],
                             function_name(f), function_group(f)};
}

inline std::size_t index_of(const SuiteConfig& config,
                            const ProblemDescriptor& d) {
    auto pos = [](const auto& v, auto value) {
        const auto it = std::find(v.begin(), v.end(), value);
        if (it == v.end())
            throw std::invalid_argument("descriptor not in suite config");
        return static_cast<std::size_t>(it - v.begin());
    };
    const std::size_t di = pos(config.dimensions, d.dimension);
    const std::size_t fi = pos(config.function_ids, d.function_id);
    const std::size_t ii = pos(config.instances, d.instance);
    return (di * config.function_ids.size() + fi) * config.instances.size() + ii;
}

// Target grid: 51 precisions log-spaced from 1e2 down to 1e-8.
struct TargetSet {
    double f_opt = 0.0;
    std::vector<double> precisions;  // strictly decreasing

    double target(std::size_t k) const { return f_opt + precisions[k]; }
    std::size_t count() const { return precisions.size(); }
};

inline TargetSet default_targets(double f_opt) {
    TargetSet t;
    t.f_opt = f_opt;
    t.precisions.reserve(51);
    for (int k = 0; k <= 50; ++k)
        t.precisions.push_back(
            std::pow(10.0, (10.0 - static_cast<double>(k)) / 5.0));
    return t;
}

// Line-oriented key=value config files: dimensions, functions, instances
// (comma-separated lists) and budget_multiplier. '#' starts a comment.
struct FileConfig {
    SuiteConfig suite;
    std::int64_t budget_multiplier = 100;
};

namespace detail {

template <typename T>
std::vector<T> parse_int_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw std::invalid_argument(std::string("empty entry in ") + what);
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size())
            throw std::invalid_argument(std::string("bad integer in ") + what +
                                        ": " + item);
        out.push_back(static_cast<T>(v));
    }
    if (out.empty())
        throw std::invalid_argument(std::string("empty list for ") + what);
    return out;
}

}  // namespace detail

inline FileConfig parse_config_text(std::istream& in) {
    FileConfig fc;
    fc.suite = default_suite_config();
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line missing '=': " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "dimensions")
            fc.suite.dimensions = detail::parse_int_list<int>(value, "dimensions");
        else if (key == "functions")
            fc.suite.function_ids = detail::parse_int_list<int>(value, "functions");
        else if (key == "instances")
            fc.suite.instances =
                detail::parse_int_list<std::int64_t>(value, "instances");
        else if (key == "budget_multiplier")
            fc.budget_multiplier = std::stoll(value);
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
    return fc;
}

inline FileConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config_text(in);
}

}  // namespace bbls
