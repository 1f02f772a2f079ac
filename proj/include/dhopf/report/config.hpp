#pragma once

#include "dhopf/cyclic.hpp"
#include "dhopf/cycle.hpp"
#include "dhopf/logistic.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dhopf::report {

/// Bad key, bad value or malformed config file. Maps to the usage exit code.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Value = std::variant<double, std::int64_t, std::string, std::vector<double>>;

/// Flat dotted-key configuration ("model.lambda"). Every key has a typed default; the
/// defaults are the canonical parameter set and table grids.
class RunConfig {
public:
    RunConfig();

    /// Key-value file with optional [section] headers, or JSON when the name ends in .json.
    static RunConfig load(const std::filesystem::path& path);
    static RunConfig parse_toml(const std::string& text, const std::string& origin = "<string>");
    static RunConfig parse_json(const std::string& text, const std::string& origin = "<string>");

    /// Parses `text` according to the key's type. Throws ConfigError for unknown keys.
    void set(const std::string& key, const std::string& text);
    void set(const std::string& key, const Value& v);
    void set(const std::string& key, const char* text) { set(key, std::string(text)); }

    [[nodiscard]] double num(const std::string& key) const;
    [[nodiscard]] std::int64_t integer(const std::string& key) const;
    [[nodiscard]] const std::string& str(const std::string& key) const;
    [[nodiscard]] const std::vector<double>& list(const std::string& key) const;

    [[nodiscard]] static bool known(const std::string& key);
    /// Sorted `key = value` lines of the fully resolved configuration.
    [[nodiscard]] std::vector<std::string> resolved_lines() const;

    [[nodiscard]] TwoGeneParams two_gene() const;
    [[nodiscard]] CyclicLoopParams ngene() const;
    [[nodiscard]] MeasureOptions sweep_options() const;
    [[nodiscard]] MeasureOptions onset_options() const;
    [[nodiscard]] std::vector<double> sweep_grid() const;  // linspace(tau_lo, tau_hi, tau_n)

private:
    std::map<std::string, Value> values_;
};

std::string format_value(const Value& v);

}  // namespace dhopf::report
