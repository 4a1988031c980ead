// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "condlab/asymptotics.hpp"
#include "condlab/lattice.hpp"

namespace condlab {

// (2 pi)^-3 integral of the Bose occupation over R^3 at chemical potential mu <= 0.
double free_density(double beta, double mu);

// Saturation density of the perfect gas in three dimensions.
double critical_density(double beta);

struct CasimirRoot {
    double amplitude = 0.0;          // dimensionless A with mu_V = -A/(beta V)
    double zero_mode_density = 0.0;  // 1/(beta A)
    double shell_density = 0.0;      // (1/beta) sum_n 1/((2 pi n)^2 + A) = rho - rho_c
};

// Zero-mode structure on the box with alpha_1 = 1/2.
CasimirRoot casimir_root(double beta, double rho);

// Perfect gas on one finite box; the spectrum is built once for all mu < 0.
class BoseGas {
public:
    BoseGas(const BoxGeometry& box, double beta, const SumSpec& spec = {});

    const BoxGeometry& box() const { return spectrum_->box(); }
    double beta() const { return beta_; }
    const Spectrum& spectrum() const { return *spectrum_; }

    SpectralSum density(double mu) const;

    // Density of all modes except the zero mode, at mu <= 0.
    double excited_density(double mu) const;

    // Unique mu < 0 with density(mu) + extra(mu) = rho. The extra term must be
    // non-decreasing in mu; it carries source contributions. A guess for mu
    // shortens the iteration.
    double solve_mu(double rho, const std::function<double(double)>& extra = {},
                    std::optional<double> mu_guess = std::nullopt) const;

    // Density and its mu-derivative at mu < 0.
    ValueSlope density_slope(double mu) const;

    double mode_density(double mu, const ModeIndex& n) const;

    // (1/V) sum of occupations over modes with |k| <= delta, zero mode included.
    double shell_density(double mu, double delta) const;

private:
    double beta_;
    std::shared_ptr<const Spectrum> spectrum_;
};

enum class GbecType { none, I, II, III, ambiguous };

std::string to_string(GbecType t);

struct GbecRow {
    double volume = 0.0;
    double delta = 0.0;
    double mu = 0.0;
    double zero_mode = 0.0;
    double shell = 0.0;
    double tail_bound = 0.0;
};

struct ModeLimit {
    ModeIndex index;
    LimitEstimate limit;
};

struct GbecReport {
    double critical_density = 0.0;
    double rho = 0.0;
    std::vector<double> volumes;
    std::vector<double> deltas;
    std::vector<GbecRow> rows;
    LimitEstimate mu_limit;
    std::vector<ModeLimit> modes;           // zero mode first
    std::vector<LimitEstimate> shell_limits;  // one per delta
    std::vector<double> thermal_parts;        // subtracted control variate per delta
    InterceptFit delta_fit;
    double shell_density = 0.0;
    double shell_error = 0.0;
    GbecType type = GbecType::ambiguous;
    std::vector<std::string> flags;
};

struct GbecOptions {
    ExtrapolationOptions inner;
    InterceptOptions outer{0, 1.0};
    // Subtract the infinite-volume thermal shell integral before the delta -> 0 fit.
    bool subtract_thermal = true;
    // Extra modes whose limiting densities enter the classification.
    std::vector<ModeIndex> probe_modes;
    SumSpec sum;
};

GbecReport gbec_shell_density(const std::vector<double>& exponents, const std::vector<double>& volumes,
                              double beta, double rho, const std::vector<double>& deltas,
                              const GbecOptions& opts = {});

// Same pipeline for the diagonal interacting model; the chemical potential may be
// positive and the thermal part is taken at mu = 0.
GbecReport diagonal_gbec(const std::vector<double>& exponents, const std::vector<double>& volumes, double beta,
                         double rho, double coupling, const std::vector<double>& deltas,
                         const GbecOptions& opts = {});

struct ClassificationInput {
    double rho = 0.0;
    LimitEstimate zero_mode;
    std::vector<LimitEstimate> other_modes;
    double shell = 0.0;
    double shell_error = 0.0;
};

GbecType classify_gbec(const ClassificationInput& in);

// Per-mode Gibbs sums of exp(-beta((eps - mu) n + (a/2V) n(n-1))).
class DiagonalModel {
public:
    DiagonalModel(const BoxGeometry& box, double beta, double coupling, double mu_ceiling,
                  const SumSpec& spec = {});

    double mean_occupation(double energy, double mu) const;
    SpectralSum density(double mu) const;
    double solve_mu(double rho) const;
    double shell_density(double mu, double delta) const;
    double zero_mode_density(double mu) const { return mean_occupation(0.0, mu) / spectrum_.box().volume(); }
    const Spectrum& spectrum() const { return spectrum_; }

private:
    double beta_;
    double coupling_;
    Spectrum spectrum_;
};

}  // namespace condlab
