// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "condlab/numerics.hpp"

namespace condlab {

// Periodic box with sides L_j = V^{alpha_j}; exponents sorted decreasing, summing to one.
class BoxGeometry {
public:
    BoxGeometry(double volume, std::vector<double> exponents);
    static BoxGeometry cubic(double volume, int dimension = 3);

    int dimension() const { return static_cast<int>(exponents_.size()); }
    double volume() const { return volume_; }
    double exponent(int j) const { return exponents_[static_cast<std::size_t>(j)]; }
    double side(int j) const { return sides_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& exponents() const { return exponents_; }
    const std::vector<double>& sides() const { return sides_; }

    // Same box with every side multiplied by s.
    BoxGeometry scaled(double s) const;

private:
    BoxGeometry() = default;
    double volume_ = 0.0;
    std::vector<double> exponents_;
    std::vector<double> sides_;
};

using ModeIndex = std::vector<std::int64_t>;

struct Mode {
    ModeIndex index;
    std::vector<double> wave_vector;
    double energy = 0.0;
};

Mode make_mode(const BoxGeometry& box, const ModeIndex& n);
double mode_energy(const BoxGeometry& box, const ModeIndex& n);

struct SumSpec {
    double tail_tolerance = 1e-12;
    std::int64_t max_index_radius = std::int64_t{1} << 22;
};

// 1/(exp(beta(eps - mu)) - 1); requires mu < eps.
double bose_occupation(double energy, double beta, double mu);

// Certified bound on (1/V) sum of occupations over modes with energy above cutoff,
// valid for every chemical potential <= mu.
double occupation_tail_bound(const BoxGeometry& box, double beta, double mu, double cutoff);

// Smallest cutoff whose tail bound meets the tolerance and which keeps every mode
// with occupation above the tolerance.
double cutoff_energy(const BoxGeometry& box, double beta, double mu, const SumSpec& spec);

struct ModeList {
    std::vector<Mode> modes;
    double cutoff = 0.0;
    double tail_bound = 0.0;
};

// Explicit mode list ordered by shells of max|n_j|, lexicographic inside a shell.
ModeList enumerate_modes(const BoxGeometry& box, double beta, double mu, const SumSpec& spec);

struct SpectralSum {
    double value = 0.0;
    double tail_bound = 0.0;
};

SpectralSum spectral_sum(const ModeList& modes, const std::function<double(const Mode&)>& weight);

// Energy levels of the box grouped by degeneracy. Axes with equal exponents share a
// side, so levels are labelled by the squared index norm of each such group; the
// level order is lexicographic in those labels and fixed by the geometry alone.
class Spectrum {
public:
    static constexpr std::size_t kChunk = std::size_t{1} << 14;

    Spectrum(const BoxGeometry& box, double beta, double mu_ceiling, const SumSpec& spec = {});

    const BoxGeometry& box() const { return box_; }
    double beta() const { return beta_; }
    double mu_ceiling() const { return mu_ceiling_; }
    double cutoff() const { return cutoff_; }
    std::size_t levels() const { return energy_.size(); }
    std::span<const double> energies() const { return energy_; }
    std::span<const double> multiplicities() const { return multiplicity_; }
    double mode_count() const;

    // Tail of (1/V) sum of occupations beyond the cutoff; mu must not exceed the ceiling.
    double tail_bound(double mu) const;

    // Compensated sum of multiplicity * weight(energy). Chunks of fixed size are
    // reduced in level order, so the result is independent of the thread count.
    template <class F>
    double sum(F&& weight) const {
        const std::size_t n = energy_.size();
        const std::size_t chunks = (n + kChunk - 1) / kChunk;
        std::vector<double> partial(chunks, 0.0);
        parallel_for(chunks, [&](std::size_t c) {
            CompensatedSum s;
            const std::size_t end = std::min(n, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) s += multiplicity_[i] * weight(energy_[i]);
            partial[c] = s.value();
        });
        CompensatedSum total;
        for (double p : partial) total += p;
        return total.value();
    }

    // Two weighted sums in one pass; weight returns a ValueSlope pair.
    template <class F>
    ValueSlope sum_pair(F&& weight) const {
        const std::size_t n = energy_.size();
        const std::size_t chunks = (n + kChunk - 1) / kChunk;
        std::vector<ValueSlope> partial(chunks);
        parallel_for(chunks, [&](std::size_t c) {
            CompensatedSum a, b;
            const std::size_t end = std::min(n, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) {
                const ValueSlope w = weight(energy_[i]);
                a += multiplicity_[i] * w.value;
                b += multiplicity_[i] * w.slope;
            }
            partial[c] = {a.value(), b.value()};
        });
        CompensatedSum a, b;
        for (const ValueSlope& p : partial) {
            a += p.value;
            b += p.slope;
        }
        return {a.value(), b.value()};
    }

    // (1/V) sum of occupations at chemical potential mu < 0.
    SpectralSum occupation_density(double mu) const;

private:
    BoxGeometry box_;
    double beta_;
    double mu_ceiling_;
    double cutoff_;
    std::vector<double> energy_;
    std::vector<double> multiplicity_;
};

}  // namespace condlab
