// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "condlab/asymptotics.hpp"
#include "condlab/ideal_bose.hpp"

namespace condlab {

// Source coupled to a single mode. The target is either a fixed index vector or,
// when wave_vector is set, the mode nearest to that fixed wave vector in each box.
struct SourceSpec {
    double amplitude = 0.0;
    double phase = 0.0;
    ModeIndex mode;
    std::optional<std::vector<double>> wave_vector;
    std::optional<double> scaling;  // reserved

    SourceSpec normalized() const;
};

// Index of the source target in a given box.
ModeIndex source_mode(const BoxGeometry& box, const SourceSpec& source);

// Energy of the target as V -> infinity, from the index and exponents alone.
double limiting_energy(const std::vector<double>& exponents, const SourceSpec& source);

struct SourcedDensityEq {
    double rho = 0.0;
    double mu = 0.0;
    double seed_mode = 0.0;    // occupation of the target mode / V
    double other_modes = 0.0;  // remaining modes / V
    double source_term = 0.0;  // |amplitude|^2 / (eps_q - mu)^2
    double residual = 0.0;
};

SourcedDensityEq sourced_solve(const BoseGas& gas, double rho, const SourceSpec& source);

double sourced_solve_mu(const BoseGas& gas, double rho, const SourceSpec& source,
                        std::optional<double> mu_guess = std::nullopt);

// <b_q / sqrt(V)> in the sourced state: magnitude amplitude/(eps_q - mu), phase +phase.
std::complex<double> field_expectation(double energy, double mu, const SourceSpec& source);

// <b_q* b_q> / V: seed occupation plus the coherent part.
double sourced_mode_density(double energy, double mu, double beta, double volume, const SourceSpec& source);

struct QaProtocol {
    std::vector<double> volumes;
    std::vector<double> amplitudes;  // decreasing toward 0
    // Much smaller amplitudes used only for the reversed limit order.
    std::vector<double> reversed_amplitudes;
    ExtrapolationOptions inner;
    InterceptOptions outer{2, 0.5};
    InterceptOptions reversed_outer{1, 1.0};
    double shell_delta = 0.05;
};

struct QaPoint {
    double amplitude = 0.0;
    double volume = 0.0;
    double mu = 0.0;
    std::complex<double> field;
    double mode_density = 0.0;
    double shell_density = 0.0;
};

struct QaTable {
    std::vector<double> amplitudes;  // protocol amplitudes followed by reversed ones
    std::size_t bogoliubov_count = 0;
    std::vector<double> volumes;
    std::vector<std::vector<QaPoint>> points;  // [amplitude][volume]
    std::vector<double> zero_source_mu;        // per volume
    SourceSpec source;
    double rho = 0.0;
    double beta = 0.0;
};

QaTable qa_scan(const std::vector<double>& exponents, double beta, double rho, const SourceSpec& source,
                const QaProtocol& protocol);

struct QaLimit {
    std::complex<double> value;
    double magnitude = 0.0;
    double error = 0.0;
    DoubleLimit detail;
};

QaLimit qa_field(const QaTable& table, const QaProtocol& protocol);
QaLimit qa_mode_density(const QaTable& table, const QaProtocol& protocol);

// Source -> 0 at fixed V first, then V -> infinity.
QaLimit qa_field_reversed(const QaTable& table, const QaProtocol& protocol);

// Double limit of mu sqrt(rho - rho_c) / (-amplitude) for a zero-mode source.
DoubleLimit sourced_mu_ratio(const QaTable& table, const QaProtocol& protocol, double rho_c);

// Critical density of the sourced gas for a target of limiting energy eps_q > 0.
double shifted_critical_density(double beta, std::complex<double> h, double energy);

struct Verdict {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct QaReport {
    double rho = 0.0;
    double critical_density = 0.0;
    QaLimit field;
    QaLimit mode_density;
    QaLimit reversed_field;
    GbecReport gbec;
    LimitEstimate zero_source_zero_mode;  // lambda = 0 zero-mode density, V -> infinity
    std::vector<double> phases;
    std::vector<std::complex<double>> phase_values;
    std::complex<double> phase_average;
    std::vector<Verdict> verdicts;
    QaTable table;
};

struct EquivalenceOptions {
    double tolerance = 0.02;
    std::vector<double> deltas{0.5, 0.25, 0.1, 0.05};
    GbecOptions gbec;
};

QaReport equivalence_report(const std::vector<double>& exponents, double beta, double rho,
                            const std::vector<double>& phases, const QaProtocol& protocol,
                            const EquivalenceOptions& opts = {});

}  // namespace condlab
