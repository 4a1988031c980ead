// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "condlab/config.hpp"
#include "condlab/errors.hpp"
#include "condlab/experiments.hpp"
#include "condlab/report.hpp"

using namespace condlab;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("condlab_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_SUITE("experiments") {
    TEST_CASE("number formatting round-trips") {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> u(-300.0, 300.0);
        for (int i = 0; i < 1000; ++i) {
            const double x = std::pow(10.0, u(rng)) * (i % 2 ? -1.0 : 1.0);
            const std::string s = format_number(x);
            double y = 0.0;
            std::from_chars(s.data(), s.data() + s.size(), y);
            CHECK(y == x);
        }
        CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
        CHECK(format_number(std::nan("")) == "nan");
        CHECK(format_number(0.5) == "0.5");
    }

    TEST_CASE("check modes") {
        CHECK(relative_check("x", 1.01, 1.0, 0.02).pass);
        CHECK_FALSE(relative_check("x", 1.03, 1.0, 0.02).pass);
        CHECK(absolute_check("x", 0.31, 0.3, 0.05).pass);
        CHECK(bound_check("x", -1e-4, 1e-3).pass);
        CHECK_FALSE(bound_check("x", 2e-3, 1e-3).pass);
        CHECK(match_check("type", "III", "III").pass);
        CHECK_FALSE(match_check("type", "II", "III").pass);
        CHECK_FALSE(relative_check("x", std::nan(""), 1.0, 0.5).pass);
    }

    TEST_CASE("table csv") {
        Table t{"t", {"a", "b"}, {}};
        t.add({"1", "2"});
        CHECK(t.csv() == "a,b\n1,2\n");
        CHECK_THROWS(t.add({"1"}));
    }

    TEST_CASE("fit self-test runs through a config") {
        const RunResult r = run_experiment(Config::parse("[experiment]\nkind = \"fit-selftest\"\n"), "fits");
        CHECK(r.kind == "fit-selftest");
        CHECK(r.name == "fits");
        CHECK_FALSE(r.checks.empty());
        CHECK(r.passed());
        const auto j = r.report();
        CHECK(j["pass"] == true);
        CHECK(j["checks"].size() == r.checks.size());
    }

    TEST_CASE("unknown kinds and keys are rejected before any computation") {
        CHECK_THROWS_AS(run_experiment(Config::parse("[experiment]\nkind = \"nope\"\n"), "x"), ValidationError);
        CHECK_THROWS_AS(run_experiment(Config::parse("[experiment]\nkind = \"bose-mu\"\n[bose]\nbeta = 1\nvolum = 3\n"
                                                     "[grid]\nvolumes = [1e30, 1e31, 1e32]\n"),
                                       "x"),
                        ValidationError);
        CHECK_THROWS_AS(run_experiment(Config::parse("[experiment]\nkind = \"fluct-gamma\"\n"), "x"), ValidationError);
    }

    TEST_CASE("every kind is listed") {
        const auto kinds = experiment_kinds();
        CHECK(std::find(kinds.begin(), kinds.end(), "bose-critical") != kinds.end());
        CHECK(std::find(kinds.begin(), kinds.end(), "fluct-algebra") != kinds.end());
    }

    TEST_CASE("outputs are deterministic and consolidate") {
        const Config c = Config::parse("[experiment]\nkind = \"bose-critical\"\n");
        const RunResult a = run_experiment(c, "crit");
        const RunResult b = run_experiment(c, "crit");
        REQUIRE(a.tables.size() == b.tables.size());
        for (std::size_t i = 0; i < a.tables.size(); ++i) CHECK(a.tables[i].csv() == b.tables[i].csv());

        const auto root = scratch("consolidate");
        write_run(a, root / "crit");
        write_run(run_experiment(Config::parse("[experiment]\nkind = \"fit-selftest\"\n"), "fits"), root / "fits");
        CHECK(std::filesystem::exists(root / "crit" / "report.json"));
        CHECK(slurp(root / "crit" / (a.tables.front().name + ".csv")) == a.tables.front().csv());

        const Report rep = consolidate({root / "crit", root / "fits"});
        CHECK(rep.rows.size() == a.checks.size() + run_experiment(Config::parse("[experiment]\nkind = \"fit-selftest\"\n"), "f").checks.size());
        std::size_t failed = 0;
        for (const Check& ch : a.checks) failed += ch.pass ? 0 : 1;
        CHECK(rep.failures() == failed);
        CHECK(rep.csv().rfind("experiment,kind,quantity", 0) == 0);
        CHECK_THROWS_AS(consolidate({root / "missing"}), ValidationError);
        std::filesystem::remove_all(root);
    }

    TEST_CASE("self-test") {
        const RunResult r = selftest();
        for (const Check& c : r.checks) {
            INFO(c.quantity);
            CHECK(c.pass);
        }
    }
}
