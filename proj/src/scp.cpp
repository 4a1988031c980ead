// SPDX-License-Identifier: MIT
#include "condlab/scp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "condlab/errors.hpp"
#include "condlab/numerics.hpp"

namespace condlab {

namespace {

constexpr double kPi = std::numbers::pi;

double csch2(double x) {
    if (x > 20.0) {
        const double e = std::exp(-2.0 * x);
        return 4.0 * e / ((1.0 - e) * (1.0 - e));
    }
    const double s = std::sinh(x);
    return 1.0 / (s * s);
}

// Value and gap derivative of mode_fluctuation.
ValueSlope fluctuation_pair(double omega2, double gap, double temperature, double lambda) {
    const double om = std::sqrt(gap + omega2);
    if (temperature == 0.0) {
        const double f = lambda / (2.0 * om);
        return {f, -f / (2.0 * om * om)};
    }
    const double x = lambda * om / (2.0 * temperature);
    const double ct = 1.0 / std::tanh(x);
    const double f = lambda * ct / (2.0 * om);
    const double dom = -f / om - lambda / (2.0 * om) * (lambda / (2.0 * temperature)) * csch2(x);
    return {f, dom / (2.0 * om)};
}

double gap_slope(double u, const ScpParams& p) {
    if (p.potential == Potential::quartic) return 2.0 * p.anharmonicity;
    return p.stiffness * p.decay * std::exp(-p.decay * u);
}

// Strength of the q -> 0 singularity of the integrand at zero gap.
double singular_power(double temperature, const ScpParams& p) { return temperature > 0.0 ? p.sigma : 0.5 * p.sigma; }

void check_integrable(double gap_value, double temperature, const ScpParams& p) {
    if (gap_value > 0.0) return;
    if (singular_power(temperature, p) >= p.dimension) {
        std::ostringstream os;
        os << "Brillouin integral diverges at zero gap for sigma=" << p.sigma << ", d=" << p.dimension
           << (temperature > 0.0 ? ", T>0" : ", T=0");
        throw DivergenceError(os.str());
    }
}

// Lattice of wave vectors 2 pi n / L folded by n -> L - n on every axis.
struct LatticeGrid {
    double volume = 0.0;
    std::vector<double> omega2;
    std::vector<double> weight;
};

LatticeGrid build_grid(double volume, const ScpParams& p) {
    if (!(volume >= 1.0) || !std::isfinite(volume)) throw ValidationError("volume must be at least one site");
    const auto side = static_cast<std::int64_t>(std::llround(std::pow(volume, 1.0 / p.dimension)));
    if (std::abs(std::pow(static_cast<double>(side), p.dimension) - volume) > 1e-9 * volume)
        throw ValidationError("volume must be a perfect d-th power");
    std::vector<double> axis_s, axis_w;
    for (std::int64_t n = 0; 2 * n <= side; ++n) {
        const double s = std::sin(kPi * static_cast<double>(n) / static_cast<double>(side));
        axis_s.push_back(4.0 * s * s);
        axis_w.push_back(n == 0 || 2 * n == side ? 1.0 : 2.0);
    }
    std::vector<double> s_tot{0.0}, w_tot{1.0};
    for (int j = 0; j < p.dimension; ++j) {
        std::vector<double> s_next, w_next;
        s_next.reserve(s_tot.size() * axis_s.size());
        w_next.reserve(s_tot.size() * axis_s.size());
        for (std::size_t a = 0; a < s_tot.size(); ++a)
            for (std::size_t b = 0; b < axis_s.size(); ++b) {
                s_next.push_back(s_tot[a] + axis_s[b]);
                w_next.push_back(w_tot[a] * axis_w[b]);
            }
        s_tot.swap(s_next);
        w_tot.swap(w_next);
    }
    LatticeGrid g;
    g.volume = volume;
    g.weight = std::move(w_tot);
    g.omega2.resize(s_tot.size());
    for (std::size_t i = 0; i < s_tot.size(); ++i) g.omega2[i] = p.coupling * std::pow(s_tot[i], 0.5 * p.sigma);
    return g;
}

ValueSlope grid_mean(const LatticeGrid& g, double gap_value, double temperature, double lambda) {
    constexpr std::size_t chunk = std::size_t{1} << 14;
    const std::size_t n = g.omega2.size();
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<ValueSlope> partial(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        CompensatedSum a, b;
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
            const ValueSlope f = fluctuation_pair(g.omega2[i], gap_value, temperature, lambda);
            a += g.weight[i] * f.value;
            b += g.weight[i] * f.slope;
        }
        partial[c] = {a.value(), b.value()};
    });
    CompensatedSum a, b;
    for (const ValueSlope& v : partial) {
        a += v.value;
        b += v.slope;
    }
    return {a.value() / g.volume, b.value() / g.volume};
}

void check_temperature(double temperature) {
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw ValidationError("temperature must be non-negative");
}

}  // namespace

std::string to_string(Potential p) { return p == Potential::quartic ? "quartic" : "exponential"; }

std::string to_string(ScpPhase p) {
    switch (p) {
        case ScpPhase::disordered: return "A";
        case ScpPhase::ordered: return "B";
        case ScpPhase::sourced: return "sourced";
    }
    return "sourced";
}

void ScpParams::validate() const {
    if (dimension < 1 || dimension > 3) throw ValidationError("scp dimension must be 1, 2 or 3");
    if (!(sigma > 0.0) || !(sigma < 2.0 * dimension)) throw ValidationError("sigma must lie in (0, 2d)");
    if (!(coupling > 0.0)) throw ValidationError("dispersion amplitude must be positive");
    if (!(anharmonicity > 0.0)) throw ValidationError("anharmonicity amplitude must be positive");
    if (!(quantum > 0.0)) throw ValidationError("quantum parameter must be positive");
    if (!(scaling > 0.0)) throw ValidationError("source scaling exponent must be positive");
    check_temperature(temperature);
    if (potential == Potential::exponential) {
        if (!(stiffness > 0.0)) throw ValidationError("stiffness must be positive for the exponential potential");
        if (!(decay > 0.0)) throw ValidationError("potential decay must be positive");
        if (anharmonicity * decay < stiffness)
            throw ValidationError("anharmonicity * decay must not be below the stiffness: no ordered phase");
    } else if (stiffness > 0.0) {
        throw ValidationError("the quartic potential needs a non-positive stiffness: no ordered phase");
    }
}

ScpParams ScpParams::with_quantum(double lambda) const {
    ScpParams q = *this;
    q.quantum = lambda;
    return q;
}

double dispersion_1d(double q, const ScpParams& p) {
    const double s = std::sin(0.5 * q);
    return p.coupling * std::pow(4.0 * s * s, 0.5 * p.sigma);
}

double dispersion(const std::vector<double>& q, const ScpParams& p) {
    if (static_cast<int>(q.size()) != p.dimension) throw ValidationError("wave vector dimension mismatch");
    double s = 0.0;
    for (double x : q) {
        const double t = std::sin(0.5 * x);
        s += 4.0 * t * t;
    }
    return p.coupling * std::pow(s, 0.5 * p.sigma);
}

double gap(double c, const ScpParams& p) {
    if (p.potential == Potential::quartic) return p.stiffness + 2.0 * p.anharmonicity * c;
    return p.stiffness - p.anharmonicity * p.decay * std::exp(-p.decay * c);
}

double gap_above_threshold(double u, const ScpParams& p) {
    if (p.potential == Potential::quartic) return 2.0 * p.anharmonicity * u;
    return -p.stiffness * std::expm1(-p.decay * u);
}

double c_star(const ScpParams& p) {
    if (p.potential == Potential::quartic) {
        if (p.stiffness > 0.0) throw DomainError("no ordered phase: quartic potential with positive stiffness");
        return -p.stiffness / (2.0 * p.anharmonicity);
    }
    if (p.anharmonicity * p.decay < p.stiffness) throw DomainError("no ordered phase: anharmonicity * decay < stiffness");
    return std::log(p.anharmonicity * p.decay / p.stiffness) / p.decay;
}

double mode_fluctuation(double omega2, double gap_value, double temperature, double lambda) {
    if (!(gap_value + omega2 > 0.0)) throw DivergenceError("mode fluctuation diverges at zero frequency");
    return fluctuation_pair(omega2, gap_value, temperature, lambda).value;
}

IntegralResult brillouin_integral_at_gap(double gap_value, double temperature, const ScpParams& p, double rel_tol) {
    check_temperature(temperature);
    if (gap_value < 0.0) throw DomainError("Brillouin integral needs a non-negative gap");
    check_integrable(gap_value, temperature, p);
    // q_j = pi t_j^m on [0, pi]^d removes the power singularity at q = 0.
    const double power = std::min(singular_power(temperature, p) / p.dimension, 0.9);
    const double m = std::max(2.0, 2.0 / (1.0 - power));
    const double lambda = p.quantum;
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    const std::function<IntegralResult(int, double, double)> level = [&](int axis, double s_acc,
                                                                          double jac) -> IntegralResult {
        auto f = [&](double t) {
            const double q = kPi * std::pow(t, m);
            const double sn = std::sin(0.5 * q);
            const double s = s_acc + 4.0 * sn * sn;
            const double w = jac * m * std::pow(t, m - 1.0);
            if (axis + 1 < p.dimension) return level(axis + 1, s, w).value;
            const double om2 = p.coupling * std::pow(s, 0.5 * p.sigma);
            if (!(om2 + gap_value > 0.0)) return 0.0;
            return w * fluctuation_pair(om2, gap_value, temperature, lambda).value;
        };
        const QuadratureResult r = integrate(f, 0.0, 1.0, opts);
        return {r.value, r.error};
    };
    return level(0, 0.0, 1.0);
}

IntegralResult brillouin_integral(double c, double temperature, const ScpParams& p, double rel_tol) {
    const double u = c - c_star(p);
    if (u < 0.0) throw DomainError("c below the stability threshold c_star");
    return brillouin_integral_at_gap(gap_above_threshold(u, p), temperature, p, rel_tol);
}

IntegralResult zero_point_integral(const ScpParams& p, double rel_tol) {
    return brillouin_integral_at_gap(0.0, 0.0, p.with_quantum(1.0), rel_tol);
}

IntegralResult zero_point_integral_tanh_sinh(const ScpParams& p) {
    if (p.dimension != 1) throw DomainError("the tanh-sinh route covers d = 1 only");
    if (!(p.sigma < 2.0)) throw DivergenceError("zero-point integral diverges for sigma >= 2d");
    boost::math::quadrature::tanh_sinh<double> rule;
    // q = t^2 removes the endpoint singularity.
    auto f = [&](double t) {
        const double w = dispersion_1d(t * t, p);
        return w > 0.0 ? t / std::sqrt(w) : 0.0;
    };
    double err = 0.0;
    const double v = rule.integrate(f, 0.0, std::sqrt(kPi), 1e-14, &err);
    return {v / kPi, err / kPi};
}

double scaled_source(double volume, const ScpParams& p) { return p.source / std::pow(volume, p.scaling); }

ScpSolution solve_c(std::optional<double> volume, double temperature, double h, const ScpParams& p,
                    std::optional<double> c_guess) {
    p.validate();
    check_temperature(temperature);
    const double cs = c_star(p);
    const double h2 = h * h;
    ScpSolution sol;
    sol.volume = volume;
    sol.source = h;
    sol.phase = ScpPhase::sourced;

    auto finish = [&](double u, double s_value) {
        sol.c = cs + u;
        sol.gap = gap_above_threshold(u, p);
        sol.displacement = h == 0.0 ? 0.0 : h / sol.gap;
        sol.order_parameter = h == 0.0 ? 0.0 : h2 / (sol.gap * sol.gap);
        sol.residual = std::abs(u + cs - sol.order_parameter - s_value);
        if (sol.residual > 1e-10 * sol.c) {
            std::ostringstream os;
            os << "self-consistency residual " << sol.residual << " exceeds 1e-10 c";
            throw SolverError(os.str());
        }
    };

    if (volume) {
        const LatticeGrid grid = build_grid(*volume, p);
        if (h == 0.0 && temperature == 0.0 && grid.omega2.size() == 1)
            throw ValidationError("a single-site lattice needs a source or temperature");
        double last_s = 0.0;
        auto g = [&](double s) {
            const double u = std::exp(s);
            const double dg = gap_above_threshold(u, p);
            const ValueSlope mean = grid_mean(grid, dg, temperature, p.quantum);
            last_s = mean.value;
            const double value = u + cs - h2 / (dg * dg) - mean.value;
            const double slope = u * (1.0 + (2.0 * h2 / (dg * dg * dg) - mean.slope) * gap_slope(u, p));
            return ValueSlope{value, slope};
        };
        const double guess = c_guess && *c_guess > cs ? std::log(*c_guess - cs) : 0.0;
        const double s = find_root_newton(g, guess, 1e-14);
        const double u = std::exp(s);
        g(s);
        finish(u, last_s);
        return sol;
    }

    auto integral = [&](double u) { return brillouin_integral_at_gap(gap_above_threshold(u, p), temperature, p).value; };
    if (h == 0.0) {
        bool zero_gap_finite = singular_power(temperature, p) < p.dimension;
        if (zero_gap_finite) {
            const double excess = cs - brillouin_integral_at_gap(0.0, temperature, p).value;
            if (excess >= 0.0) {
                sol.c = cs;
                sol.gap = 0.0;
                sol.order_parameter = excess;
                sol.displacement = 0.0;
                sol.phase = ScpPhase::ordered;
                sol.residual = 0.0;
                return sol;
            }
        }
        sol.phase = ScpPhase::disordered;
    }
    auto g = [&](double s) {
        const double u = std::exp(s);
        const double dg = gap_above_threshold(u, p);
        return u + cs - h2 / (dg * dg) - integral(u);
    };
    double lo = c_guess && *c_guess > cs ? std::log(*c_guess - cs) : 0.0;
    double hi = lo;
    int guard = 0;
    while (g(lo) > 0.0) {
        lo -= 4.0;
        if (++guard > 200) throw SolverError("could not bracket the self-consistency root from below");
    }
    guard = 0;
    while (g(hi) < 0.0) {
        hi += 2.0;
        if (++guard > 200) throw SolverError("could not bracket the self-consistency root from above");
    }
    const double s = find_root_increasing(g, lo, hi, 52);
    const double u = std::exp(s);
    finish(u, integral(u));
    return sol;
}

QuantumCritical lambda_c(const ScpParams& p) {
    p.validate();
    const IntegralResult k = zero_point_integral(p);
    QuantumCritical q;
    q.zero_point = k.value;
    q.lambda_c = c_star(p) / k.value;
    q.error = c_star(p) * k.error / (k.value * k.value);
    return q;
}

double critical_temperature(double lambda, const ScpParams& p) {
    p.validate();
    if (!(p.sigma < p.dimension)) throw DomainError("no finite-temperature transition for sigma >= d");
    const ScpParams q = p.with_quantum(lambda);
    const double cs = c_star(q);
    auto g = [&](double t) { return brillouin_integral_at_gap(0.0, t, q).value - cs; };
    const double g0 = g(0.0);
    if (g0 > 1e-12 * cs) throw DomainError("lambda above lambda_c: no ordered phase at any temperature");
    if (g0 >= -1e-12 * cs) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > 200) throw SolverError("could not bracket the critical temperature");
    }
    return find_root_increasing(g, 0.0, hi, 50);
}

CriticalLine critical_line(const std::vector<double>& lambdas, const ScpParams& p) {
    CriticalLine line;
    const QuantumCritical qc = lambda_c(p);
    line.lambda_c = qc.lambda_c;
    line.points.resize(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t i) {
        if (!(lambdas[i] > 0.0)) throw ValidationError("critical-line lambda must be positive");
        if (lambdas[i] > qc.lambda_c * (1.0 + 1e-10)) {
            std::ostringstream os;
            os << "lambda " << lambdas[i] << " exceeds lambda_c " << qc.lambda_c;
            throw DomainError(os.str());
        }
        line.points[i] = {lambdas[i], critical_temperature(std::min(lambdas[i], qc.lambda_c), p)};
    });
    line.strictly_decreasing = true;
    for (std::size_t i = 1; i < line.points.size(); ++i) {
        const bool up = line.points[i].lambda > line.points[i - 1].lambda;
        const bool down = line.points[i].temperature < line.points[i - 1].temperature;
        if (up != down) line.strictly_decreasing = false;
    }
    return line;
}

DisplacementLimit displacement_qa(double temperature, double lambda, int sign, const ScpParams& p,
                                  const std::vector<double>& h_grid) {
    if (sign != 1 && sign != -1) throw ValidationError("displacement sign must be +1 or -1");
    if (h_grid.size() < 3) throw ValidationError("displacement limit needs at least three source values");
    const ScpParams q = p.with_quantum(lambda);
    const ScpSolution base = solve_c(std::nullopt, temperature, 0.0, q);
    DisplacementLimit out;
    out.phase = base.phase;
    if (base.phase == ScpPhase::disordered) return out;
    out.order_parameter = base.order_parameter;
    out.grid.resize(h_grid.size());
    parallel_for(h_grid.size(), [&](std::size_t i) {
        if (!(h_grid[i] > 0.0)) throw ValidationError("source grid values must be positive");
        out.grid[i] = solve_c(std::nullopt, temperature, sign * h_grid[i], q);
    });
    std::vector<double> disp, sq;
    for (const ScpSolution& s : out.grid) {
        disp.push_back(s.displacement);
        sq.push_back(s.order_parameter);
    }
    const InterceptFit fd = fit_intercept(h_grid, disp, {1, 1.0});
    const InterceptFit fs = fit_intercept(h_grid, sq, {1, 1.0});
    out.value = fd.value;
    out.error = fd.error;
    out.squared_limit = fs.value;
    out.squared_error = fs.error;
    return out;
}

MixingWeight mixing_weight(double h_hat, double alpha, double beta, double rho) {
    if (!(rho > 0.0)) throw DomainError("mixing weight needs rho > 0");
    if (!(beta > 0.0)) throw DomainError("mixing weight needs beta > 0");
    if (!(alpha >= 1.0)) throw DomainError("mixing weight needs alpha >= 1");
    MixingWeight m;
    const double t = 1.0 / (2.0 * beta * rho);
    m.xi = t + std::sqrt(t * t + h_hat * h_hat / rho);
    const double h2 = h_hat * h_hat;
    auto f = [&](double s) {
        const double w = std::exp(s);
        return rho - h2 / (w * w) - 1.0 / (beta * w);
    };
    m.root = std::exp(find_root_increasing(f, std::log(0.5 / (beta * rho)), std::log(2.0 * m.xi), 53));
    m.relative_gap = std::abs(m.root - m.xi) / m.xi;
    m.weight = alpha == 1.0 ? 0.5 * (1.0 + h_hat / (m.xi * std::sqrt(rho))) : 0.5;
    return m;
}

}  // namespace condlab
