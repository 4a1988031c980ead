// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "condlab/asymptotics.hpp"
#include "condlab/scp.hpp"

namespace condlab {

enum class Regime { disordered, ordered, critical_line, quantum_point };

std::string to_string(Regime r);
Regime parse_regime(const std::string& s);

// (lambda / 2 sqrt(gap)) coth(beta lambda sqrt(gap) / 2).
double raw_variance_q(double gap, double temperature, double lambda);

// (lambda sqrt(gap) / 2) coth(beta lambda sqrt(gap) / 2); equals T at zero gap for T > 0.
double raw_variance_p(double gap, double temperature, double lambda);

// Table values for one (d, sigma, alpha) instance.
struct Prediction {
    double gamma = 0.0;
    double delta_q = 0.0;
    double delta_p = 0.0;
    double critical_alpha = 0.0;
    bool boundary = false;  // d = 2 sigma on the critical line, d = 3 sigma / 2 at the quantum point
    std::string row;
};

Prediction predicted_exponents(Regime regime, int dimension, double sigma, double alpha);

struct Exponents {
    double delta_q = 0.0;
    double delta_p = 0.0;
};

// Fluctuation exponents implied by a gap exponent; alpha is used below the critical line.
Exponents fluctuation_exponents(Regime regime, double gamma, double alpha);

// (lambda, T) at which a regime is evaluated.
struct EvaluationPoint {
    double lambda = 0.0;
    double temperature = 0.0;
    double lambda_c = 0.0;
    double critical_temperature = 0.0;
};

EvaluationPoint evaluation_point(Regime regime, const ScpParams& p);

struct FluctuationPoint {
    double volume = 0.0;
    double source = 0.0;
    double gap = 0.0;
    double c = 0.0;
    double displacement = 0.0;
    double var_q = 0.0;
    double var_p = 0.0;
};

struct ScanOptions {
    std::vector<double> volumes;  // defaults to 2^10 ... 2^22 (d = 1)
    int window = 7;               // largest volumes entering the fits
    double max_residual = 0.1;    // max |log deviation| accepted by the fits
};

std::vector<double> default_volumes(int dimension);

struct ScanResult {
    Regime regime = Regime::critical_line;
    EvaluationPoint point;
    ScpParams params;
    std::vector<FluctuationPoint> points;
};

// Finite-volume solves with h = h_hat / V^alpha at the regime's evaluation point.
ScanResult fluctuation_scan(Regime regime, const ScpParams& p, const ScanOptions& opts = {});

struct ExponentFit {
    std::string quantity;
    double value = 0.0;
    double standard_error = 0.0;
    FitResult fit;
    double predicted = 0.0;
    Prediction table;
    int dimension = 1;
    double sigma = 0.0;
    double alpha = 0.0;
};

// Gap ~ V^-gamma; boundary rows carry a log factor.
ExponentFit gap_exponent(const ScanResult& scan, const ScanOptions& opts = {});
ExponentFit gap_exponent_scan(Regime regime, const ScpParams& p, const ScanOptions& opts = {});

struct DeltaFits {
    ExponentFit q;
    ExponentFit p;
};

// Variance ~ V^(2 delta); plain power laws for both operators.
DeltaFits delta_from_variance(const ScanResult& scan, const ScanOptions& opts = {});
DeltaFits verify_delta_by_variance(Regime regime, const ScpParams& p, const ScanOptions& opts = {});

enum class Algebra { abelian, non_abelian, ambiguous };

std::string to_string(Algebra a);

struct AlgebraVerdict {
    double delta_q = 0.0;
    double delta_p = 0.0;
    double commutator_exponent = 0.0;  // -(delta_q + delta_p)
    double combined_error = 0.0;
    Algebra verdict = Algebra::ambiguous;
};

AlgebraVerdict algebra_classify(double delta_q, double delta_p, double error_q, double error_p);

}  // namespace condlab
