// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace condlab {

struct ReportRow {
    std::string experiment;
    std::string kind;
    std::string quantity;
    std::string computed;
    std::string predicted;
    std::string tolerance;
    std::string mode;
    bool pass = false;
};

struct Report {
    std::vector<ReportRow> rows;

    std::size_t failures() const;
    std::string csv() const;
    std::string text() const;
};

// One row per check of every run directory; each must hold a report.json.
Report consolidate(const std::vector<std::filesystem::path>& run_dirs);

}  // namespace condlab
