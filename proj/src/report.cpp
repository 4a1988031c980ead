// SPDX-License-Identifier: MIT
#include "condlab/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "condlab/errors.hpp"
#include "condlab/experiments.hpp"

namespace condlab {

namespace {

std::string cell(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return format_number(v.get<double>());
    return v.dump();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::vector<std::string> fields(const ReportRow& r) {
    return {r.experiment, r.kind, r.quantity, r.computed, r.predicted, r.tolerance, r.mode, r.pass ? "PASS" : "FAIL"};
}

const std::vector<std::string> kHeader{"experiment", "kind", "quantity", "computed", "predicted", "tolerance", "mode", "result"};

}  // namespace

std::size_t Report::failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.pass; }));
}

std::string Report::csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& f) {
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << csv_field(f[i]);
        os << '\n';
    };
    line(kHeader);
    for (const ReportRow& r : rows) line(fields(r));
    return os.str();
}

std::string Report::text() const {
    std::vector<std::size_t> width(kHeader.size());
    for (std::size_t i = 0; i < kHeader.size(); ++i) width[i] = kHeader[i].size();
    for (const ReportRow& r : rows) {
        const auto f = fields(r);
        for (std::size_t i = 0; i < f.size(); ++i) width[i] = std::max(width[i], f[i].size());
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& f) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            os << f[i];
            if (i + 1 < f.size()) os << std::string(width[i] - f[i].size() + 2, ' ');
        }
        os << '\n';
    };
    line(kHeader);
    for (const ReportRow& r : rows) line(fields(r));
    os << rows.size() << " checks, " << failures() << " failed\n";
    return os.str();
}

Report consolidate(const std::vector<std::filesystem::path>& run_dirs) {
    if (run_dirs.empty()) throw ValidationError("report needs at least one run directory");
    Report rep;
    for (const auto& dir : run_dirs) {
        const auto path = dir / "report.json";
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot read " + path.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(path.string() + ": " + e.what());
        }
        if (!j.contains("checks") || !j["checks"].is_array()) throw ValidationError(path.string() + ": no checks array");
        const std::string name = j.value("name", dir.filename().string());
        const std::string kind = j.value("kind", "");
        for (const auto& c : j["checks"]) {
            ReportRow r;
            r.experiment = name;
            r.kind = kind;
            r.quantity = c.value("quantity", "");
            r.computed = cell(c.at("computed"));
            r.predicted = cell(c.at("predicted"));
            r.tolerance = cell(c.at("tolerance"));
            r.mode = c.value("mode", "");
            r.pass = c.value("pass", false);
            rep.rows.push_back(std::move(r));
        }
    }
    return rep;
}

}  // namespace condlab
