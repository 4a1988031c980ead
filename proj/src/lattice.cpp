// SPDX-License-Identifier: MIT
#include "condlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "condlab/errors.hpp"

namespace condlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t axis_radius(double side, double cutoff) {
    return static_cast<std::int64_t>(std::floor(side * std::sqrt(std::max(cutoff, 0.0)) / kTwoPi));
}

void check_radius(const BoxGeometry& box, double cutoff, const SumSpec& spec) {
    for (int j = 0; j < box.dimension(); ++j) {
        if (axis_radius(box.side(j), cutoff) > spec.max_index_radius) {
            std::ostringstream os;
            os << "tail tolerance " << spec.tail_tolerance << " needs index radius "
               << axis_radius(box.side(j), cutoff) << " on axis " << j << ", above the limit "
               << spec.max_index_radius;
            throw TruncationError(os.str());
        }
    }
}

}  // namespace

BoxGeometry::BoxGeometry(double volume, std::vector<double> exponents)
    : volume_(volume), exponents_(std::move(exponents)) {
    if (!(volume > 0.0) || !std::isfinite(volume)) throw ValidationError("box volume must be positive");
    if (exponents_.empty()) throw ValidationError("box needs at least one dimension");
    double total = 0.0;
    for (std::size_t j = 0; j < exponents_.size(); ++j) {
        total += exponents_[j];
        if (j > 0 && exponents_[j] > exponents_[j - 1])
            throw ValidationError("box exponents must be non-increasing");
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("box exponents must sum to one");
    for (double a : exponents_) sides_.push_back(std::pow(volume, a));
}

BoxGeometry BoxGeometry::cubic(double volume, int dimension) {
    if (dimension < 1) throw ValidationError("dimension must be positive");
    return BoxGeometry(volume, std::vector<double>(static_cast<std::size_t>(dimension), 1.0 / dimension));
}

BoxGeometry BoxGeometry::scaled(double s) const {
    if (!(s > 0.0)) throw ValidationError("scale factor must be positive");
    BoxGeometry b;
    b.volume_ = volume_ * std::pow(s, dimension());
    b.exponents_ = exponents_;
    for (double l : sides_) b.sides_.push_back(l * s);
    return b;
}

Mode make_mode(const BoxGeometry& box, const ModeIndex& n) {
    if (static_cast<int>(n.size()) != box.dimension())
        throw ValidationError("mode index dimension does not match the box");
    Mode m;
    m.index = n;
    CompensatedSum e;
    for (int j = 0; j < box.dimension(); ++j) {
        const double k = kTwoPi * static_cast<double>(n[static_cast<std::size_t>(j)]) / box.side(j);
        m.wave_vector.push_back(k);
        e += k * k;
    }
    m.energy = e.value();
    return m;
}

double mode_energy(const BoxGeometry& box, const ModeIndex& n) { return make_mode(box, n).energy; }

double bose_occupation(double energy, double beta, double mu) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (!(mu < energy)) throw DomainError("chemical potential must lie below the mode energy");
    return 1.0 / std::expm1(beta * (energy - mu));
}

double occupation_tail_bound(const BoxGeometry& box, double beta, double mu, double cutoff) {
    if (!(cutoff > mu)) return std::numeric_limits<double>::infinity();
    // sum_{eps >= E} e^{-beta eps} <= e^{-beta(1-t)E} prod_j sum_n e^{-beta t k_n^2},
    // and sum_n e^{-a n^2} <= 1 + sqrt(pi/a).
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 100; ++i) {
        const double t = i / 100.0;
        double log_bound = -beta * (1.0 - t) * cutoff + beta * mu;
        for (double l : box.sides()) log_bound += std::log1p(l / (2.0 * std::sqrt(std::numbers::pi * beta * t)));
        best = std::min(best, log_bound);
    }
    const double denom = -std::expm1(-beta * (cutoff - mu));
    return std::exp(best) / denom / box.volume();
}

double cutoff_energy(const BoxGeometry& box, double beta, double mu, const SumSpec& spec) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (!(spec.tail_tolerance > 0.0)) throw ValidationError("tail tolerance must be positive");
    const double occupation_floor = mu + std::log1p(1.0 / spec.tail_tolerance) / beta;
    double hi = std::max(occupation_floor, mu + 1.0 / beta);
    int guard = 0;
    while (occupation_tail_bound(box, beta, mu, hi) > spec.tail_tolerance) {
        hi = mu + 2.0 * (hi - mu);
        if (++guard > 200) throw TruncationError("tail bound cannot reach the requested tolerance");
    }
    double lo = std::max(mu, occupation_floor - 1.0);
    if (occupation_tail_bound(box, beta, mu, lo) <= spec.tail_tolerance) return std::max(lo, occupation_floor);
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (occupation_tail_bound(box, beta, mu, mid) > spec.tail_tolerance)
            lo = mid;
        else
            hi = mid;
    }
    return std::max(hi, occupation_floor);
}

ModeList enumerate_modes(const BoxGeometry& box, double beta, double mu, const SumSpec& spec) {
    ModeList out;
    out.cutoff = cutoff_energy(box, beta, mu, spec);
    check_radius(box, out.cutoff, spec);
    out.tail_bound = occupation_tail_bound(box, beta, mu, out.cutoff);
    const int d = box.dimension();
    std::vector<std::int64_t> radius(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) radius[static_cast<std::size_t>(j)] = axis_radius(box.side(j), out.cutoff);

    ModeIndex n(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) n[static_cast<std::size_t>(j)] = -radius[static_cast<std::size_t>(j)];
    for (;;) {
        Mode m = make_mode(box, n);
        if (m.energy <= out.cutoff) out.modes.push_back(std::move(m));
        int j = d - 1;
        while (j >= 0 && n[static_cast<std::size_t>(j)] == radius[static_cast<std::size_t>(j)]) {
            n[static_cast<std::size_t>(j)] = -radius[static_cast<std::size_t>(j)];
            --j;
        }
        if (j < 0) break;
        ++n[static_cast<std::size_t>(j)];
    }
    auto shell = [](const ModeIndex& v) {
        std::int64_t s = 0;
        for (auto x : v) s = std::max<std::int64_t>(s, x < 0 ? -x : x);
        return s;
    };
    std::stable_sort(out.modes.begin(), out.modes.end(), [&](const Mode& a, const Mode& b) {
        const auto sa = shell(a.index);
        const auto sb = shell(b.index);
        if (sa != sb) return sa < sb;
        return a.index < b.index;
    });
    return out;
}

SpectralSum spectral_sum(const ModeList& modes, const std::function<double(const Mode&)>& weight) {
    CompensatedSum s;
    for (const Mode& m : modes.modes) s += weight(m);
    return {s.value(), modes.tail_bound};
}

Spectrum::Spectrum(const BoxGeometry& box, double beta, double mu_ceiling, const SumSpec& spec)
    : box_(box), beta_(beta), mu_ceiling_(mu_ceiling) {
    cutoff_ = cutoff_energy(box, beta, mu_ceiling, spec);
    check_radius(box, cutoff_, spec);

    // Axes with equal exponents form one group with a common side.
    struct Group {
        double side;
        int size;
        std::vector<std::int64_t> labels;  // squared norms with nonzero count
        std::vector<double> counts;
    };
    std::vector<Group> groups;
    for (int j = 0; j < box.dimension(); ++j) {
        if (!groups.empty() && std::abs(box.exponent(j) - box.exponent(j - 1)) < 1e-15)
            ++groups.back().size;
        else
            groups.push_back({box.side(j), 1, {}, {}});
    }
    for (Group& g : groups) {
        const double scale = kTwoPi / g.side;
        const auto top = static_cast<std::int64_t>(std::floor(cutoff_ / (scale * scale)));
        const auto r = axis_radius(g.side, cutoff_);
        if (g.size == 1) {
            for (std::int64_t n = 0; n <= r && n * n <= top; ++n) {
                g.labels.push_back(n * n);
                g.counts.push_back(n == 0 ? 1.0 : 2.0);
            }
            continue;
        }
        std::vector<double> one(static_cast<std::size_t>(top) + 1, 0.0);
        for (std::int64_t n = 0; n <= r && n * n <= top; ++n) one[static_cast<std::size_t>(n * n)] += n == 0 ? 1.0 : 2.0;
        std::vector<double> acc = one;
        for (int s = 1; s < g.size; ++s) {
            std::vector<double> next(acc.size(), 0.0);
            for (std::int64_t n = 0; n <= r && n * n <= top; ++n) {
                const double w = n == 0 ? 1.0 : 2.0;
                const auto shift = static_cast<std::size_t>(n * n);
                for (std::size_t m = 0; m + shift < acc.size(); ++m) next[m + shift] += w * acc[m];
            }
            acc.swap(next);
        }
        for (std::size_t m = 0; m < acc.size(); ++m)
            if (acc[m] > 0.0) {
                g.labels.push_back(static_cast<std::int64_t>(m));
                g.counts.push_back(acc[m]);
            }
    }

    // Depth-first over groups gives lexicographic label order.
    std::vector<double> unit(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double scale = kTwoPi / groups[g].side;
        unit[g] = scale * scale;
    }
    const std::function<void(std::size_t, double, double)> walk = [&](std::size_t g, double e, double mult) {
        if (g == groups.size()) {
            energy_.push_back(e);
            multiplicity_.push_back(mult);
            return;
        }
        const Group& grp = groups[g];
        for (std::size_t i = 0; i < grp.labels.size(); ++i) {
            const double ei = e + unit[g] * static_cast<double>(grp.labels[i]);
            if (ei > cutoff_) break;
            walk(g + 1, ei, mult * grp.counts[i]);
        }
    };
    walk(0, 0.0, 1.0);
}

double Spectrum::mode_count() const {
    CompensatedSum s;
    for (double m : multiplicity_) s += m;
    return s.value();
}

double Spectrum::tail_bound(double mu) const {
    if (mu > mu_ceiling_) throw DomainError("chemical potential above the spectrum ceiling");
    return occupation_tail_bound(box_, beta_, mu, cutoff_);
}

SpectralSum Spectrum::occupation_density(double mu) const {
    if (!(mu < 0.0)) throw DomainError("perfect-gas chemical potential must be negative");
    const double b = beta_;
    const double s = sum([b, mu](double e) { return 1.0 / std::expm1(b * (e - mu)); });
    return {s / box_.volume(), tail_bound(mu)};
}

}  // namespace condlab
