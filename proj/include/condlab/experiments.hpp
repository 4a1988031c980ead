// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "condlab/config.hpp"

namespace condlab {

enum class CheckMode { relative, absolute, upper_bound, match };

std::string to_string(CheckMode m);

// One computed quantity against its predicted value.
struct Check {
    std::string quantity;
    nlohmann::json computed;
    nlohmann::json predicted;
    double tolerance = 0.0;
    CheckMode mode = CheckMode::relative;
    bool pass = false;

    nlohmann::json to_json() const;
};

// |computed - predicted| <= tolerance * |predicted|.
Check relative_check(std::string quantity, double computed, double predicted, double tolerance);
// |computed - predicted| <= tolerance.
Check absolute_check(std::string quantity, double computed, double predicted, double tolerance);
// |computed| <= tolerance; predicted is zero.
Check bound_check(std::string quantity, double computed, double tolerance);
Check match_check(std::string quantity, const std::string& computed, const std::string& predicted);
Check flag_check(std::string quantity, bool computed);

// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string csv() const;
};

struct RunResult {
    std::string kind;
    std::string name;
    nlohmann::json input;
    nlohmann::json config;
    nlohmann::json results = nlohmann::json::object();
    std::vector<Check> checks;
    std::vector<Table> tables;

    bool passed() const;
    nlohmann::json report() const;
};

std::vector<std::string> experiment_kinds();

// Reads [experiment] kind and name, validates every key before any computation,
// then runs the experiment.
RunResult run_experiment(const Config& config, const std::string& default_name);

// Writes one CSV per table and report.json into dir.
void write_run(const RunResult& run, const std::filesystem::path& dir);

// Fast checks with independently known answers across all modules.
RunResult selftest();

}  // namespace condlab
