// SPDX-License-Identifier: MIT
#include "condlab/ideal_bose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "condlab/errors.hpp"
#include "condlab/numerics.hpp"

namespace condlab {

namespace {

constexpr double kPi = std::numbers::pi;

double shell_integral(double beta, double mu, double delta) {
    if (delta <= 0.0) return 0.0;
    auto f = [beta, mu](double k) {
        const double x = beta * (k * k - mu);
        if (x == 0.0) return 1.0 / beta;  // k^2 / (beta k^2) at mu = 0, k -> 0
        return k * k / std::expm1(x);
    };
    QuadratureOptions q;
    q.rel_tol = 1e-11;
    return integrate(f, 0.0, delta, q).value / (2.0 * kPi * kPi);
}

}  // namespace

double free_density(double beta, double mu) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (mu > 0.0) throw DomainError("free density needs mu <= 0");
    // k = x / sqrt(beta); the integrand is below 1e-300 beyond x^2 = 700.
    auto f = [mu, beta](double x) {
        const double y = x * x - beta * mu;
        if (y == 0.0) return 1.0;
        return x * x / std::expm1(y);
    };
    QuadratureOptions q;
    q.rel_tol = 1e-12;
    CompensatedSum s;
    const double edges[] = {0.0, 1.0, 3.0, 6.0, 12.0, 27.0};
    for (int i = 0; i + 1 < 6; ++i) s += integrate(f, edges[i], edges[i + 1], q).value;
    return s.value() / (2.0 * kPi * kPi) * std::pow(beta, -1.5);
}

double critical_density(double beta) { return free_density(beta, 0.0); }

CasimirRoot casimir_root(double beta, double rho) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    const double excess = rho - critical_density(beta);
    if (!(excess > 0.0)) throw DomainError("Casimir root needs rho above the critical density");
    // (1/beta) sum_n 1/((2 pi n)^2 + A) = coth(sqrt(A)/2) / (2 beta sqrt(A)), decreasing in A.
    auto sum = [beta](double a) {
        const double s = std::sqrt(a);
        return 1.0 / (std::tanh(0.5 * s) * 2.0 * beta * s);
    };
    auto g = [&](double t) { return excess - sum(std::exp(t)); };
    double lo = -1.0, hi = 1.0;
    while (g(lo) > 0.0) lo -= 2.0;
    while (g(hi) < 0.0) hi += 2.0;
    const double t = find_root_increasing(g, lo, hi, 52);
    CasimirRoot r;
    r.amplitude = std::exp(t);
    r.zero_mode_density = 1.0 / (beta * r.amplitude);
    r.shell_density = sum(r.amplitude);
    return r;
}

BoseGas::BoseGas(const BoxGeometry& box, double beta, const SumSpec& spec)
    : beta_(beta), spectrum_(std::make_shared<Spectrum>(box, beta, 0.0, spec)) {}

SpectralSum BoseGas::density(double mu) const { return spectrum_->occupation_density(mu); }

double BoseGas::excited_density(double mu) const {
    if (mu > 0.0) throw DomainError("excited density needs mu <= 0");
    const double b = beta_;
    const double s = spectrum_->sum([b, mu](double e) { return e > 0.0 ? 1.0 / std::expm1(b * (e - mu)) : 0.0; });
    return s / spectrum_->box().volume();
}

ValueSlope BoseGas::density_slope(double mu) const {
    if (!(mu < 0.0)) throw DomainError("perfect-gas chemical potential must be negative");
    const double b = beta_;
    const ValueSlope s = spectrum_->sum_pair([b, mu](double e) {
        const double n = 1.0 / std::expm1(b * (e - mu));
        return ValueSlope{n, b * n * (1.0 + n)};
    });
    const double v = spectrum_->box().volume();
    return {s.value / v, s.slope / v};
}

double BoseGas::solve_mu(double rho, const std::function<double(double)>& extra,
                         std::optional<double> mu_guess) const {
    if (!(rho > 0.0)) throw DomainError("density must be positive");
    if (mu_guess && !(*mu_guess < 0.0)) throw DomainError("chemical potential guess must be negative");
    const double v = spectrum_->box().volume();
    // Unknown t with mu = -exp(t); the residual is increasing in t.
    double last = 0.0;
    auto residual = [&](double t) {
        const double mu = -std::exp(t);
        ValueSlope d = density_slope(mu);
        if (extra) {
            const double h = 1e-6 * -mu;
            d.value += extra(mu);
            d.slope += (extra(mu + h) - extra(mu - h)) / (2.0 * h);
        }
        last = rho - d.value;
        return ValueSlope{last, d.slope * -mu};
    };
    const double guess = mu_guess ? std::log(-*mu_guess) : std::log(1.0 / (beta_ * v * rho));
    const double t = find_root_newton(residual, guess);
    const double mu = -std::exp(t);
    const double err = std::abs(last);
    if (err > 1e-10 * rho) {
        std::ostringstream os;
        os << "chemical potential residual " << err << " exceeds 1e-10 rho";
        throw SolverError(os.str());
    }
    return mu;
}

double BoseGas::mode_density(double mu, const ModeIndex& n) const {
    return bose_occupation(mode_energy(spectrum_->box(), n), beta_, mu) / spectrum_->box().volume();
}

double BoseGas::shell_density(double mu, double delta) const {
    const double b = beta_;
    const double top = delta * delta;
    const double s = spectrum_->sum([b, mu, top](double e) { return e <= top ? 1.0 / std::expm1(b * (e - mu)) : 0.0; });
    return s / spectrum_->box().volume();
}

std::string to_string(GbecType t) {
    switch (t) {
        case GbecType::none: return "none";
        case GbecType::I: return "I";
        case GbecType::II: return "II";
        case GbecType::III: return "III";
        default: return "ambiguous";
    }
}

GbecType classify_gbec(const ClassificationInput& in) {
    const double floor = 1e-3 * in.rho;
    auto vanishes = [&](double value, double err) { return std::abs(value) < std::max(floor, 3.0 * err); };
    auto positive = [&](double value, double err) { return value > std::max(floor, 3.0 * err); };

    if (vanishes(in.shell, in.shell_error)) return GbecType::none;
    if (!positive(in.shell, in.shell_error)) return GbecType::ambiguous;

    const LimitEstimate& z = in.zero_mode;
    if (positive(z.value, z.error)) {
        const double gap = in.shell - z.value;
        const double err = std::hypot(in.shell_error, z.error);
        if (std::abs(gap) <= 3.0 * err) return GbecType::I;
        if (gap > 3.0 * err) return GbecType::II;
        return GbecType::ambiguous;
    }
    if (!vanishes(z.value, z.error)) return GbecType::ambiguous;
    for (const auto& m : in.other_modes)
        if (!vanishes(m.value, m.error)) return GbecType::ambiguous;
    return GbecType::III;
}

namespace {

struct VolumeSample {
    double mu = 0.0;
    double tail = 0.0;
    std::vector<double> modes;
    std::vector<double> shells;
};

using VolumeSampler = std::function<VolumeSample(double volume, const std::vector<ModeIndex>& modes)>;

GbecReport gbec_pipeline(const std::vector<double>& exponents, const std::vector<double>& volumes, double beta,
                         double rho, const std::vector<double>& deltas, const GbecOptions& opts,
                         const VolumeSampler& sample) {
    if (volumes.size() < 3) throw ValidationError("gBEC needs at least three volumes");
    if (deltas.size() < static_cast<std::size_t>(opts.outer.degree + 1))
        throw ValidationError("gBEC delta grid too short for the outer model");
    for (std::size_t i = 1; i < volumes.size(); ++i)
        if (!(volumes[i] > volumes[i - 1])) throw ValidationError("volume grid must be strictly increasing");
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] < deltas[i - 1])) throw ValidationError("delta grid must be strictly decreasing");

    GbecReport rep;
    rep.critical_density = critical_density(beta);
    rep.rho = rho;
    rep.volumes = volumes;
    rep.deltas = deltas;

    std::vector<ModeIndex> modes;
    modes.push_back(ModeIndex(exponents.size(), 0));
    for (const auto& m : opts.probe_modes) modes.push_back(m);

    const std::size_t nv = volumes.size();
    std::vector<double> mus(nv);
    std::vector<std::vector<double>> mode_values(modes.size(), std::vector<double>(nv));
    std::vector<std::vector<double>> shells(deltas.size(), std::vector<double>(nv));
    std::vector<double> tails(nv);
    // Each volume is a separate work item; large boxes dominate the cost.
    parallel_for(nv, [&](std::size_t iv) {
        const VolumeSample v = sample(volumes[iv], modes);
        mus[iv] = v.mu;
        tails[iv] = v.tail;
        for (std::size_t m = 0; m < modes.size(); ++m) mode_values[m][iv] = v.modes[m];
        for (std::size_t d = 0; d < deltas.size(); ++d) shells[d][iv] = v.shells[d];
    });
    for (std::size_t iv = 0; iv < nv; ++iv)
        for (std::size_t d = 0; d < deltas.size(); ++d)
            rep.rows.push_back({volumes[iv], deltas[d], mus[iv], mode_values[0][iv], shells[d][iv], tails[iv]});

    rep.mu_limit = extrapolate(volumes, mus, opts.inner);
    for (std::size_t m = 0; m < modes.size(); ++m)
        rep.modes.push_back({modes[m], extrapolate(volumes, mode_values[m], opts.inner)});

    const double mu_inf = std::min(rep.mu_limit.value, 0.0);
    std::vector<double> reduced;
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        LimitEstimate e = extrapolate(volumes, shells[d], opts.inner);
        if (e.model == LimitModel::last_value) {
            std::ostringstream os;
            os << "inner limit at delta=" << deltas[d] << " fell back to the last value";
            rep.flags.push_back(os.str());
        }
        const double thermal = opts.subtract_thermal ? shell_integral(beta, mu_inf, deltas[d]) : 0.0;
        rep.thermal_parts.push_back(thermal);
        rep.shell_limits.push_back(e);
        reduced.push_back(e.value - thermal);
    }
    rep.delta_fit = fit_intercept(deltas, reduced, opts.outer);
    double var = rep.delta_fit.error * rep.delta_fit.error;
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        const double e = rep.delta_fit.sensitivity[d] * rep.shell_limits[d].error;
        var += e * e;
    }
    rep.shell_density = rep.delta_fit.value;
    rep.shell_error = std::sqrt(var);

    ClassificationInput in;
    in.rho = rho;
    in.zero_mode = rep.modes.front().limit;
    for (std::size_t m = 1; m < rep.modes.size(); ++m) in.other_modes.push_back(rep.modes[m].limit);
    in.shell = rep.shell_density;
    in.shell_error = rep.shell_error;
    rep.type = classify_gbec(in);
    return rep;
}

}  // namespace

GbecReport gbec_shell_density(const std::vector<double>& exponents, const std::vector<double>& volumes,
                              double beta, double rho, const std::vector<double>& deltas,
                              const GbecOptions& opts) {
    return gbec_pipeline(exponents, volumes, beta, rho, deltas, opts,
                         [&](double volume, const std::vector<ModeIndex>& modes) {
                             const BoseGas gas(BoxGeometry(volume, exponents), beta, opts.sum);
                             VolumeSample v;
                             v.mu = gas.solve_mu(rho);
                             v.tail = gas.spectrum().tail_bound(v.mu);
                             for (const ModeIndex& m : modes) v.modes.push_back(gas.mode_density(v.mu, m));
                             for (double d : deltas) v.shells.push_back(gas.shell_density(v.mu, d));
                             return v;
                         });
}

GbecReport diagonal_gbec(const std::vector<double>& exponents, const std::vector<double>& volumes, double beta,
                         double rho, double coupling, const std::vector<double>& deltas, const GbecOptions& opts) {
    return gbec_pipeline(exponents, volumes, beta, rho, deltas, opts,
                         [&](double volume, const std::vector<ModeIndex>& modes) {
                             const BoxGeometry box(volume, exponents);
                             const DiagonalModel model(box, beta, coupling, coupling * rho, opts.sum);
                             VolumeSample v;
                             v.mu = model.solve_mu(rho);
                             v.tail = model.spectrum().tail_bound(v.mu);
                             for (const ModeIndex& m : modes)
                                 v.modes.push_back(model.mean_occupation(mode_energy(box, m), v.mu) / volume);
                             for (double d : deltas) v.shells.push_back(model.shell_density(v.mu, d));
                             return v;
                         });
}

DiagonalModel::DiagonalModel(const BoxGeometry& box, double beta, double coupling, double mu_ceiling,
                             const SumSpec& spec)
    : beta_(beta), coupling_(coupling), spectrum_(box, beta, mu_ceiling, spec) {
    if (!(coupling > 0.0)) throw DomainError("diagonal coupling must be positive");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
}

double DiagonalModel::mean_occupation(double energy, double mu) const {
    // log w_n = -x n - (g/2) n (n-1); log-concave in n.
    const double x = beta_ * (energy - mu);
    const double g = beta_ * coupling_ / spectrum_.box().volume();
    const double peak = std::max(0.0, std::round(0.5 - x / g));
    auto log_w = [&](double n) { return -x * n - 0.5 * g * n * (n - 1.0); };
    const double ref = log_w(peak);
    CompensatedSum s0, s1;
    s0 += 1.0;
    s1 += peak;
    // Stop once the remaining terms are below 1e-16 of the sum; by log-concavity the
    // remainder is majorized by a geometric series with the current term ratio.
    const double tiny = 1e-16;
    for (double n = peak + 1.0;; n += 1.0) {
        const double w = std::exp(log_w(n) - ref);
        s0 += w;
        s1 += n * w;
        const double r = std::exp(-x - g * n);
        if (r < 1.0 && w * r / (1.0 - r) < tiny * s0.value()) break;
        if (n > 1e13) throw TruncationError("diagonal-model occupation sum did not terminate");
    }
    for (double n = peak - 1.0; n >= 0.0; n -= 1.0) {
        const double w = std::exp(log_w(n) - ref);
        s0 += w;
        s1 += n * w;
        const double r = std::exp(x + g * (n - 1.0));
        if (r < 1.0 && w * r / (1.0 - r) < tiny * s0.value()) break;
    }
    return s1.value() / s0.value();
}

SpectralSum DiagonalModel::density(double mu) const {
    if (mu > spectrum_.mu_ceiling()) throw DomainError("chemical potential above the spectrum ceiling");
    const double s = spectrum_.sum([this, mu](double e) { return mean_occupation(e, mu); });
    // Repulsion only lowers occupations, so the free-gas tail bound still applies.
    return {s / spectrum_.box().volume(), spectrum_.tail_bound(mu)};
}

double DiagonalModel::solve_mu(double rho) const {
    if (!(rho > 0.0)) throw DomainError("density must be positive");
    auto residual = [&](double mu) { return density(mu).value - rho; };
    const double hi = spectrum_.mu_ceiling();
    if (residual(hi) < 0.0) throw SolverError("spectrum ceiling too low for the requested density");
    double lo = std::min(hi, 0.0) - 1.0;
    int guard = 0;
    while (residual(lo) > 0.0) {
        lo = hi - 2.0 * (hi - lo);
        if (++guard > 100) throw SolverError("could not bracket the diagonal-model chemical potential");
    }
    const double mu = find_root_increasing(residual, lo, hi, 53);
    if (std::abs(residual(mu)) > 1e-10 * rho) throw SolverError("diagonal-model density residual too large");
    return mu;
}

double DiagonalModel::shell_density(double mu, double delta) const {
    const double top = delta * delta;
    const double s = spectrum_.sum([this, mu, top](double e) { return e <= top ? mean_occupation(e, mu) : 0.0; });
    return s / spectrum_.box().volume();
}

}  // namespace condlab
