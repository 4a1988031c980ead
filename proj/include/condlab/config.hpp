// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace condlab {

struct ConfigValue;
using ConfigArray = std::vector<ConfigValue>;
using ConfigTable = std::map<std::string, ConfigValue>;

struct ConfigValue {
    std::variant<double, bool, std::string, ConfigArray, ConfigTable> data;
    int line = 0;

    nlohmann::json to_json() const;
};

// Sectioned key = value text in TOML syntax: [section] headers, numbers, strings,
// booleans, arrays (may span lines) and inline tables. Top-level keys live in "".
class Config {
public:
    static Config parse(std::string_view text, const std::string& source = "<config>");
    static Config load(const std::filesystem::path& path);

    const std::string& source() const { return source_; }
    bool has(const std::string& section, const std::string& key) const;
    const ConfigValue* find(const std::string& section, const std::string& key) const;
    const std::map<std::string, ConfigTable>& sections() const { return sections_; }
    nlohmann::json to_json() const;

private:
    std::string source_;
    std::map<std::string, ConfigTable> sections_;
};

// Typed access that records every key read, with defaults, into a resolved copy.
// finish() rejects keys that were never read.
class ConfigReader {
public:
    explicit ConfigReader(const Config& config) : config_(config) {}

    double number(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    std::optional<double> optional_number(const std::string& section, const std::string& key) const;
    int integer(const std::string& section, const std::string& key, int fallback) const;
    bool boolean(const std::string& section, const std::string& key, bool fallback) const;
    std::string text(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;

    // Explicit list, or {start, factor, count} geometric grid.
    std::vector<double> grid(const std::string& section, const std::string& key) const;
    std::vector<double> grid(const std::string& section, const std::string& key,
                             const std::vector<double>& fallback) const;
    std::optional<std::vector<double>> optional_grid(const std::string& section, const std::string& key) const;

    bool has(const std::string& section, const std::string& key) const { return config_.has(section, key); }

    void finish() const;
    const nlohmann::json& resolved() const { return resolved_; }

private:
    const ConfigValue& require(const std::string& section, const std::string& key) const;
    const ConfigValue* lookup(const std::string& section, const std::string& key) const;
    void record(const std::string& section, const std::string& key, const nlohmann::json& value) const;

    const Config& config_;
    mutable std::set<std::pair<std::string, std::string>> used_;
    mutable nlohmann::json resolved_ = nlohmann::json::object();
};

}  // namespace condlab
