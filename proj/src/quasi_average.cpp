// SPDX-License-Identifier: MIT
#include "condlab/quasi_average.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "condlab/errors.hpp"
#include "condlab/numerics.hpp"

namespace condlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

std::vector<std::vector<double>> column(const QaTable& t, std::size_t first, std::size_t count,
                                        const std::function<double(const QaPoint&)>& pick) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = first; i < first + count; ++i) {
        std::vector<double> row;
        for (const QaPoint& p : t.points[i]) row.push_back(pick(p));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<double> slice(const std::vector<double>& v, std::size_t first, std::size_t count) {
    return {v.begin() + static_cast<std::ptrdiff_t>(first), v.begin() + static_cast<std::ptrdiff_t>(first + count)};
}

bool agree(double a, double b, double tol, double floor) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace

SourceSpec SourceSpec::normalized() const {
    if (amplitude < 0.0) throw ValidationError("source amplitude must be non-negative");
    SourceSpec s = *this;
    s.phase = wrap_phase(phase);
    return s;
}

ModeIndex source_mode(const BoxGeometry& box, const SourceSpec& source) {
    const auto d = static_cast<std::size_t>(box.dimension());
    if (source.wave_vector) {
        if (source.wave_vector->size() != d) throw ValidationError("source wave vector dimension mismatch");
        ModeIndex n(d);
        for (std::size_t j = 0; j < d; ++j)
            n[j] = static_cast<std::int64_t>(std::llround((*source.wave_vector)[j] * box.side(static_cast<int>(j)) / kTwoPi));
        return n;
    }
    if (source.mode.empty()) return ModeIndex(d, 0);
    if (source.mode.size() != d) throw ValidationError("source mode dimension mismatch");
    return source.mode;
}

double limiting_energy(const std::vector<double>& exponents, const SourceSpec& source) {
    if (source.wave_vector) {
        double e = 0.0;
        for (double k : *source.wave_vector) e += k * k;
        return e;
    }
    // A fixed index keeps a nonzero wave number only along axes that do not grow.
    double e = 0.0;
    for (std::size_t j = 0; j < source.mode.size() && j < exponents.size(); ++j)
        if (exponents[j] == 0.0) {
            const double k = kTwoPi * static_cast<double>(source.mode[j]);
            e += k * k;
        }
    return e;
}

SourcedDensityEq sourced_solve(const BoseGas& gas, double rho, const SourceSpec& source) {
    const SourceSpec s = source.normalized();
    const ModeIndex q = source_mode(gas.box(), s);
    const double eq = mode_energy(gas.box(), q);
    const double a2 = s.amplitude * s.amplitude;
    std::function<double(double)> extra;
    if (a2 > 0.0) extra = [a2, eq](double mu) { return a2 / ((eq - mu) * (eq - mu)); };
    SourcedDensityEq r;
    r.rho = rho;
    r.mu = sourced_solve_mu(gas, rho, s);
    r.seed_mode = gas.mode_density(r.mu, q);
    r.other_modes = gas.density(r.mu).value - r.seed_mode;
    r.source_term = a2 > 0.0 ? extra(r.mu) : 0.0;
    r.residual = std::abs(r.seed_mode + r.other_modes + r.source_term - rho);
    return r;
}

double sourced_solve_mu(const BoseGas& gas, double rho, const SourceSpec& source, std::optional<double> mu_guess) {
    const SourceSpec s = source.normalized();
    const double eq = mode_energy(gas.box(), source_mode(gas.box(), s));
    const double a2 = s.amplitude * s.amplitude;
    if (a2 == 0.0) return gas.solve_mu(rho, {}, mu_guess);
    return gas.solve_mu(rho, [a2, eq](double mu) { return a2 / ((eq - mu) * (eq - mu)); }, mu_guess);
}

std::complex<double> field_expectation(double energy, double mu, const SourceSpec& source) {
    if (!(mu < energy)) throw DomainError("chemical potential must lie below the source mode energy");
    return std::polar(source.amplitude / (energy - mu), source.phase);
}

double sourced_mode_density(double energy, double mu, double beta, double volume, const SourceSpec& source) {
    return bose_occupation(energy, beta, mu) / volume + std::norm(field_expectation(energy, mu, source));
}

QaTable qa_scan(const std::vector<double>& exponents, double beta, double rho, const SourceSpec& source,
                const QaProtocol& protocol) {
    if (protocol.volumes.size() < 3) throw ValidationError("quasi-average protocol needs at least three volumes");
    for (std::size_t i = 1; i < protocol.volumes.size(); ++i)
        if (!(protocol.volumes[i] > protocol.volumes[i - 1]))
            throw ValidationError("volume grid must be strictly increasing");
    for (std::size_t i = 1; i < protocol.amplitudes.size(); ++i)
        if (!(protocol.amplitudes[i] < protocol.amplitudes[i - 1]))
            throw ValidationError("amplitude grid must be strictly decreasing");

    QaTable t;
    t.source = source.normalized();
    t.rho = rho;
    t.beta = beta;
    t.volumes = protocol.volumes;
    t.amplitudes = protocol.amplitudes;
    t.bogoliubov_count = protocol.amplitudes.size();
    for (double a : protocol.reversed_amplitudes) t.amplitudes.push_back(a);
    t.points.assign(t.amplitudes.size(), std::vector<QaPoint>(t.volumes.size()));
    t.zero_source_mu.assign(t.volumes.size(), 0.0);

    parallel_for(t.volumes.size(), [&](std::size_t iv) {
        const BoseGas gas(BoxGeometry(t.volumes[iv], exponents), beta);
        t.zero_source_mu[iv] = gas.solve_mu(rho);
        double guess = t.zero_source_mu[iv];
        const ModeIndex q = source_mode(gas.box(), t.source);
        const double eq = mode_energy(gas.box(), q);
        for (std::size_t ia = 0; ia < t.amplitudes.size(); ++ia) {
            SourceSpec s = t.source;
            s.amplitude = t.amplitudes[ia];
            const double mu = sourced_solve_mu(gas, rho, s, ia == t.bogoliubov_count ? t.zero_source_mu[iv] : guess);
            guess = mu;
            QaPoint& p = t.points[ia][iv];
            p.amplitude = s.amplitude;
            p.volume = t.volumes[iv];
            p.mu = mu;
            p.field = field_expectation(eq, mu, s);
            p.mode_density = sourced_mode_density(eq, mu, beta, t.volumes[iv], s);
            p.shell_density = gas.shell_density(mu, protocol.shell_delta);
        }
    });
    return t;
}

QaLimit qa_field(const QaTable& table, const QaProtocol& protocol) {
    DoubleLimitOptions o;
    o.inner = protocol.inner;
    o.outer = protocol.outer;
    const auto data = column(table, 0, table.bogoliubov_count, [](const QaPoint& p) { return std::abs(p.field); });
    QaLimit r;
    r.detail = double_limit(slice(table.amplitudes, 0, table.bogoliubov_count), table.volumes, data, o);
    r.magnitude = r.detail.value;
    r.error = r.detail.error;
    r.value = std::polar(r.magnitude, table.source.phase);
    return r;
}

QaLimit qa_mode_density(const QaTable& table, const QaProtocol& protocol) {
    DoubleLimitOptions o;
    o.inner = protocol.inner;
    o.outer = protocol.outer;
    const auto data = column(table, 0, table.bogoliubov_count, [](const QaPoint& p) { return p.mode_density; });
    QaLimit r;
    r.detail = double_limit(slice(table.amplitudes, 0, table.bogoliubov_count), table.volumes, data, o);
    r.magnitude = r.detail.value;
    r.error = r.detail.error;
    r.value = r.magnitude;
    return r;
}

QaLimit qa_field_reversed(const QaTable& table, const QaProtocol& protocol) {
    const std::size_t n = table.amplitudes.size() - table.bogoliubov_count;
    if (n < static_cast<std::size_t>(protocol.reversed_outer.degree + 1))
        throw ValidationError("reversed limit order needs reversed_amplitudes");
    DoubleLimitOptions o;
    o.order = LimitOrder::outer_first;
    o.inner = protocol.inner;
    o.outer = protocol.reversed_outer;
    const auto data = column(table, table.bogoliubov_count, n, [](const QaPoint& p) { return std::abs(p.field); });
    QaLimit r;
    r.detail = double_limit(slice(table.amplitudes, table.bogoliubov_count, n), table.volumes, data, o);
    r.magnitude = r.detail.value;
    r.error = r.detail.error;
    r.value = std::polar(r.magnitude, table.source.phase);
    return r;
}

DoubleLimit sourced_mu_ratio(const QaTable& table, const QaProtocol& protocol, double rho_c) {
    const double root = std::sqrt(table.rho - rho_c);
    if (!(table.rho > rho_c)) throw DomainError("the sourced chemical-potential ratio needs rho > rho_c");
    DoubleLimitOptions o;
    o.inner = protocol.inner;
    o.outer = protocol.outer;
    const auto data = column(table, 0, table.bogoliubov_count,
                             [root](const QaPoint& p) { return -p.mu * root / p.amplitude; });
    return double_limit(slice(table.amplitudes, 0, table.bogoliubov_count), table.volumes, data, o);
}

double shifted_critical_density(double beta, std::complex<double> h, double energy) {
    if (!(energy > 0.0)) throw DomainError("shifted critical density needs a positive target energy");
    return critical_density(beta) + std::norm(h) / (energy * energy);
}

QaReport equivalence_report(const std::vector<double>& exponents, double beta, double rho,
                            const std::vector<double>& phases, const QaProtocol& protocol,
                            const EquivalenceOptions& opts) {
    if (phases.empty()) throw ValidationError("equivalence report needs at least one phase");
    QaReport rep;
    rep.rho = rho;
    rep.critical_density = critical_density(beta);

    SourceSpec source;
    source.mode = ModeIndex(exponents.size(), 0);
    source.phase = 0.0;
    const QaTable table = qa_scan(exponents, beta, rho, source, protocol);
    rep.field = qa_field(table, protocol);
    rep.mode_density = qa_mode_density(table, protocol);
    if (!protocol.reversed_amplitudes.empty()) rep.reversed_field = qa_field_reversed(table, protocol);
    rep.gbec = gbec_shell_density(exponents, protocol.volumes, beta, rho, opts.deltas, opts.gbec);
    rep.zero_source_zero_mode = rep.gbec.modes.front().limit;

    // The finite-volume field carries the phase as a prefactor; run the same limits
    // on the real and imaginary parts for each phase.
    DoubleLimitOptions o;
    o.inner = protocol.inner;
    o.outer = protocol.outer;
    const auto amps = slice(table.amplitudes, 0, table.bogoliubov_count);
    for (double phi : phases) {
        const double ph = wrap_phase(phi);
        auto part = [&](bool imag) {
            const auto data = column(table, 0, table.bogoliubov_count, [&](const QaPoint& p) {
                const std::complex<double> z = std::polar(std::abs(p.field), ph);
                return imag ? z.imag() : z.real();
            });
            return double_limit(amps, table.volumes, data, o).value;
        };
        rep.phases.push_back(ph);
        rep.phase_values.emplace_back(part(false), part(true));
    }
    std::complex<double> mean = 0.0;
    for (const auto& z : rep.phase_values) mean += z;
    rep.phase_average = mean / static_cast<double>(rep.phase_values.size());

    const double field2 = rep.field.magnitude * rep.field.magnitude;
    const double floor = 1e-3 * rho;
    const double tol = opts.tolerance;
    auto rel = [&](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor}); };

    rep.verdicts.push_back({"decorrelation |field|^2 = qa mode density", agree(field2, rep.mode_density.magnitude, tol, floor),
                            rel(field2, rep.mode_density.magnitude), tol});
    rep.verdicts.push_back({"|field|^2 = gBEC", agree(field2, rep.gbec.shell_density, tol, floor),
                            rel(field2, rep.gbec.shell_density), tol});
    rep.verdicts.push_back({"qa mode density = gBEC", agree(rep.mode_density.magnitude, rep.gbec.shell_density, tol, floor),
                            rel(rep.mode_density.magnitude, rep.gbec.shell_density), tol});

    double phase_dev = 0.0;
    const std::complex<double> base = rep.phase_values.front() * std::polar(1.0, -rep.phases.front());
    for (std::size_t i = 0; i < rep.phases.size(); ++i) {
        const std::complex<double> expected = base * std::polar(1.0, rep.phases[i]);
        phase_dev = std::max(phase_dev, std::abs(rep.phase_values[i] - expected) / std::max(std::abs(base), 1e-300));
    }
    const bool nontrivial = rep.field.magnitude > std::max(floor, 3.0 * rep.field.error);
    rep.verdicts.push_back({"phase equivariance", !nontrivial || phase_dev <= 1e-12, phase_dev, 1e-12});
    const double avg = std::abs(rep.phase_average);
    rep.verdicts.push_back({"phase average vanishes", avg < std::max(rep.field.error, 1e-300) || avg == 0.0, avg,
                            rep.field.error});
    rep.table = table;
    return rep;
}

}  // namespace condlab
