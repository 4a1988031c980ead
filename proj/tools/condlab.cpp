// SPDX-License-Identifier: MIT
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "condlab/config.hpp"
#include "condlab/errors.hpp"
#include "condlab/experiments.hpp"
#include "condlab/numerics.hpp"
#include "condlab/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailedChecks = 1;
constexpr int kValidation = 2;
constexpr int kNumerical = 3;
constexpr int kFitQuality = 4;

unsigned parse_threads(const std::string& text, const std::string& origin) {
    std::size_t used = 0;
    long n = -1;
    try {
        n = std::stol(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || n < 0) throw condlab::ValidationError(origin + " must be a non-negative integer");
    return static_cast<unsigned>(n);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw condlab::Error("cannot write " + path.string());
}

void print_checks(const condlab::RunResult& run) {
    for (const auto& c : run.checks)
        std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.quantity << ": computed " << c.computed.dump()
                  << ", predicted " << c.predicted.dump() << " (" << condlab::to_string(c.mode) << " "
                  << c.tolerance << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Condensation and quasi-average experiments"};
    app.set_version_flag("--version", std::string(CONDLAB_VERSION));
    app.require_subcommand(1);

    int threads = -1;
    std::string out_dir = "./out";
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", out_dir, "Output directory");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run one experiment from a config file");
    run_cmd->add_option("config", config_path, "Config file")->required();

    std::vector<std::string> run_dirs;
    auto* report_cmd = app.add_subcommand("report", "Consolidate finished runs into one table");
    report_cmd->add_option("dirs", run_dirs, "Run directories")->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "Check every module against known values");
    auto* list_cmd = app.add_subcommand("kinds", "List experiment kinds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (threads >= 0)
            condlab::set_thread_count(static_cast<unsigned>(threads));
        else if (const char* env = std::getenv("CONDLAB_THREADS"); env && *env)
            condlab::set_thread_count(parse_threads(env, "CONDLAB_THREADS"));

        if (*list_cmd) {
            for (const auto& k : condlab::experiment_kinds()) std::cout << k << '\n';
            return kOk;
        }
        if (*run_cmd) {
            const condlab::Config config = condlab::Config::load(config_path);
            const auto run = condlab::run_experiment(config, std::filesystem::path(config_path).stem().string());
            const auto dir = std::filesystem::path(out_dir) / run.name;
            condlab::write_run(run, dir);
            print_checks(run);
            std::cout << run.kind << ": " << (run.passed() ? "all checks passed" : "some checks failed") << ", output in "
                      << dir.string() << '\n';
            return run.passed() ? kOk : kFailedChecks;
        }
        if (*report_cmd) {
            std::vector<std::filesystem::path> dirs(run_dirs.begin(), run_dirs.end());
            const condlab::Report rep = condlab::consolidate(dirs);
            std::filesystem::create_directories(out_dir);
            write_text(std::filesystem::path(out_dir) / "report.csv", rep.csv());
            write_text(std::filesystem::path(out_dir) / "report.txt", rep.text());
            std::cout << rep.text();
            if (rep.failures() > 0) {
                std::cout << "failures:\n";
                for (const auto& r : rep.rows)
                    if (!r.pass) std::cout << "  " << r.experiment << ": " << r.quantity << '\n';
                return kFailedChecks;
            }
            return kOk;
        }
        if (*selftest_cmd) {
            const auto run = condlab::selftest();
            print_checks(run);
            condlab::write_run(run, std::filesystem::path(out_dir) / run.name);
            std::cout << run.checks.size() << " checks, " << (run.passed() ? "all passed" : "some failed") << '\n';
            return run.passed() ? kOk : kFailedChecks;
        }
    } catch (const condlab::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const condlab::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const condlab::FitQualityError& e) {
        std::cerr << "fit quality: " << e.what() << '\n';
        return kFitQuality;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
