// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condlab/asymptotics.hpp"

namespace condlab {

enum class Potential { exponential, quartic };

std::string to_string(Potential p);

struct ScpParams {
    int dimension = 1;
    double sigma = 0.5;    // interaction decay exponent
    double coupling = 1.0; // dispersion amplitude J
    double stiffness = 1.0;
    double anharmonicity = 4.0;
    double decay = 1.0;    // eta, exponential potential only
    Potential potential = Potential::exponential;
    double quantum = 1.0;  // lambda
    double temperature = 0.0;
    double source = 0.0;   // h-hat
    double scaling = 1.0;  // source exponent alpha

    // Throws ValidationError when the parameter set has no ordered phase.
    void validate() const;
    ScpParams with_quantum(double lambda) const;
};

// J (sum_j 4 sin^2(q_j/2))^(sigma/2).
double dispersion(const std::vector<double>& q, const ScpParams& p);
double dispersion_1d(double q, const ScpParams& p);

// a + 2 W'(c).
double gap(double c, const ScpParams& p);

// Gap as a function of u = c - c_star, accurate for small u.
double gap_above_threshold(double u, const ScpParams& p);

double c_star(const ScpParams& p);

// Per-mode zero-point term (lambda / 2 Omega) coth(beta lambda Omega / 2), Omega^2 = gap + omega^2.
double mode_fluctuation(double omega2, double gap, double temperature, double lambda);

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
};

// (2 pi)^-d integral over [-pi, pi]^d of mode_fluctuation at the given gap.
IntegralResult brillouin_integral_at_gap(double gap, double temperature, const ScpParams& p,
                                         double rel_tol = 1e-10);
IntegralResult brillouin_integral(double c, double temperature, const ScpParams& p, double rel_tol = 1e-10);

// (2 pi)^-d integral of 1 / (2 omega_q).
IntegralResult zero_point_integral(const ScpParams& p, double rel_tol = 1e-12);

// Same integral on the raw variable by double-exponential quadrature (d = 1).
IntegralResult zero_point_integral_tanh_sinh(const ScpParams& p);

enum class ScpPhase { disordered, ordered, sourced };

std::string to_string(ScpPhase p);

struct ScpSolution {
    double c = 0.0;
    double gap = 0.0;
    double order_parameter = 0.0;  // h^2/gap^2, or c_star - I_d in the unsourced ordered phase
    double displacement = 0.0;     // h / gap
    double source = 0.0;           // h actually applied
    std::optional<double> volume;  // empty for the infinite-volume equation
    ScpPhase phase = ScpPhase::sourced;
    double residual = 0.0;
};

// Unique c >= c_star of c = h^2/gap(c)^2 + S(c). S is the lattice mean over the
// L^d grid of mode_fluctuation when volume is set, the Brillouin integral otherwise.
ScpSolution solve_c(std::optional<double> volume, double temperature, double h, const ScpParams& p,
                    std::optional<double> c_guess = std::nullopt);

// Source h-hat / V^alpha.
double scaled_source(double volume, const ScpParams& p);

struct QuantumCritical {
    double lambda_c = 0.0;
    double error = 0.0;
    double zero_point = 0.0;  // K
};

QuantumCritical lambda_c(const ScpParams& p);

// Temperature with c_star = I_d(c_star, T, lambda); zero at lambda_c.
double critical_temperature(double lambda, const ScpParams& p);

struct CriticalPoint {
    double lambda = 0.0;
    double temperature = 0.0;
};

struct CriticalLine {
    double lambda_c = 0.0;
    std::vector<CriticalPoint> points;
    bool strictly_decreasing = false;
};

CriticalLine critical_line(const std::vector<double>& lambdas, const ScpParams& p);

struct DisplacementLimit {
    double value = 0.0;
    double error = 0.0;
    double order_parameter = 0.0;  // c_star - I_d(c_star, T, lambda)
    double squared_limit = 0.0;    // h -> 0 intercept of h^2/gap^2
    double squared_error = 0.0;
    ScpPhase phase = ScpPhase::disordered;
    std::vector<ScpSolution> grid;
};

// h -> sign * 0 of h / gap(c_h) on the infinite-volume equation.
DisplacementLimit displacement_qa(double temperature, double lambda, int sign, const ScpParams& p,
                                  const std::vector<double>& h_grid = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5});

struct MixingWeight {
    double xi = 0.0;      // closed form
    double root = 0.0;    // numeric root of rho = h^2/w^2 + 1/(beta w)
    double weight = 0.5;
    double relative_gap = 0.0;
};

MixingWeight mixing_weight(double h_hat, double alpha, double beta, double rho);

}  // namespace condlab
