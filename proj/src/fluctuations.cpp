// SPDX-License-Identifier: MIT
#include "condlab/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "condlab/errors.hpp"
#include "condlab/numerics.hpp"

namespace condlab {

namespace {

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

double coth(double x) { return 1.0 / std::tanh(x); }

std::vector<double> tail(const std::vector<double>& v, std::size_t n) {
    n = std::min(n, v.size());
    return {v.end() - static_cast<std::ptrdiff_t>(n), v.end()};
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::disordered: return "disordered";
        case Regime::ordered: return "ordered";
        case Regime::critical_line: return "critical-line";
        case Regime::quantum_point: return "quantum-point";
    }
    return "disordered";
}

Regime parse_regime(const std::string& s) {
    if (s == "disordered") return Regime::disordered;
    if (s == "ordered") return Regime::ordered;
    if (s == "critical-line") return Regime::critical_line;
    if (s == "quantum-point") return Regime::quantum_point;
    throw ValidationError("unknown regime '" + s + "'");
}

double raw_variance_q(double gap_value, double temperature, double lambda) {
    if (!(gap_value > 0.0)) throw DivergenceError("position variance diverges at zero gap");
    const double r = std::sqrt(gap_value);
    if (temperature == 0.0) return lambda / (2.0 * r);
    return lambda / (2.0 * r) * coth(lambda * r / (2.0 * temperature));
}

double raw_variance_p(double gap_value, double temperature, double lambda) {
    if (gap_value < 0.0) throw DomainError("momentum variance needs a non-negative gap");
    const double r = std::sqrt(gap_value);
    if (temperature == 0.0) return lambda * r / 2.0;
    if (r == 0.0) return temperature;
    return lambda * r / 2.0 * coth(lambda * r / (2.0 * temperature));
}

Prediction predicted_exponents(Regime regime, int dimension, double sigma, double alpha) {
    const double d = dimension;
    if (!(sigma > 0.0) || !(alpha > 0.0)) throw ValidationError("sigma and alpha must be positive");
    Prediction r;
    switch (regime) {
        case Regime::critical_line: {
            if (!(sigma < d)) throw DomainError("the critical line needs sigma < d");
            if (same(d, 2.0 * sigma) || d > 2.0 * sigma) {
                r.boundary = same(d, 2.0 * sigma);
                r.row = r.boundary ? "d=2sigma" : "d>2sigma";
                r.critical_alpha = 0.75;
                const bool low = alpha < r.critical_alpha;
                r.gamma = low ? 2.0 * alpha / 3.0 : 0.5;
                r.delta_q = low ? alpha / 3.0 : 0.25;
            } else {
                r.row = "sigma<d<2sigma";
                r.critical_alpha = 0.5 + sigma / (2.0 * d);
                const bool low = alpha < r.critical_alpha;
                r.gamma = low ? 2.0 * alpha * sigma / (d + sigma) : sigma / d;
                r.delta_q = low ? alpha * sigma / (d + sigma) : sigma / (2.0 * d);
            }
            r.delta_p = 0.0;
            return r;
        }
        case Regime::quantum_point: {
            if (!(sigma < 2.0 * d) || !(d > 0.5 * sigma)) throw DomainError("the quantum point needs sigma/2 < d");
            if (same(d, 1.5 * sigma)) {
                r.boundary = true;
                r.row = "d=3sigma/2";
                r.critical_alpha = 1.0;
                const bool low = alpha < 1.0;
                r.gamma = low ? 2.0 * alpha / 3.0 : 0.5;
                r.delta_q = low ? alpha / 6.0 : 0.125;
            } else if (d > 1.5 * sigma) {
                r.row = "d>3sigma/2";
                r.critical_alpha = 1.0;
                const bool low = alpha < 1.0;
                r.gamma = low ? 2.0 * alpha / 3.0 : 2.0 / 3.0;
                r.delta_q = low ? alpha / 6.0 : 1.0 / 6.0;
            } else {
                r.row = "sigma/2<d<3sigma/2";
                r.critical_alpha = 0.5 + 3.0 * sigma / (4.0 * d);
                const bool low = alpha < r.critical_alpha;
                r.gamma = low ? 4.0 * alpha * sigma / (2.0 * d + 3.0 * sigma) : sigma / d;
                r.delta_q = low ? alpha * sigma / (2.0 * d + 3.0 * sigma) : sigma / (4.0 * d);
            }
            r.delta_p = -r.delta_q;
            return r;
        }
        case Regime::ordered:
            r.row = alpha < 1.0 ? "ordered alpha<1" : "ordered alpha>=1";
            r.critical_alpha = 1.0;
            r.gamma = std::min(alpha, 1.0);
            r.delta_q = 0.5 * std::min(alpha, 1.0);
            r.delta_p = 0.0;
            return r;
        case Regime::disordered:
            r.row = "disordered";
            return r;
    }
    return r;
}

Exponents fluctuation_exponents(Regime regime, double gamma, double alpha) {
    switch (regime) {
        case Regime::critical_line: return {0.5 * gamma, 0.0};
        case Regime::quantum_point: return {0.25 * gamma, -0.25 * gamma};
        case Regime::ordered: return {0.5 * std::min(alpha, 1.0), 0.0};
        case Regime::disordered: return {0.0, 0.0};
    }
    throw ValidationError("unknown regime");
}

EvaluationPoint evaluation_point(Regime regime, const ScpParams& p) {
    p.validate();
    EvaluationPoint e;
    e.lambda_c = lambda_c(p).lambda_c;
    const bool thermal = p.sigma < p.dimension;
    switch (regime) {
        case Regime::quantum_point:
            e.lambda = e.lambda_c;
            e.temperature = 0.0;
            return e;
        case Regime::critical_line:
            e.lambda = 0.5 * e.lambda_c;
            e.critical_temperature = critical_temperature(e.lambda, p);
            e.temperature = e.critical_temperature;
            return e;
        case Regime::ordered:
            e.lambda = 0.5 * e.lambda_c;
            if (thermal) {
                e.critical_temperature = critical_temperature(e.lambda, p);
                e.temperature = 0.5 * e.critical_temperature;
            }
            return e;
        case Regime::disordered:
            if (thermal) {
                e.lambda = 0.5 * e.lambda_c;
                e.critical_temperature = critical_temperature(e.lambda, p);
                e.temperature = 2.0 * e.critical_temperature;
            } else {
                e.lambda = 2.0 * e.lambda_c;
            }
            return e;
    }
    return e;
}

std::vector<double> default_volumes(int dimension) {
    std::vector<double> v;
    for (int k = 10; k <= 22; ++k)
        if (k % dimension == 0 || dimension == 1) v.push_back(std::ldexp(1.0, k));
    return v;
}

ScanResult fluctuation_scan(Regime regime, const ScpParams& p, const ScanOptions& opts) {
    ScanResult r;
    r.regime = regime;
    r.point = evaluation_point(regime, p);
    r.params = p.with_quantum(r.point.lambda);
    r.params.temperature = r.point.temperature;
    const std::vector<double> volumes = opts.volumes.empty() ? default_volumes(p.dimension) : opts.volumes;
    for (std::size_t i = 1; i < volumes.size(); ++i)
        if (!(volumes[i] > volumes[i - 1])) throw ValidationError("volume grid must be strictly increasing");
    std::optional<double> guess;
    for (double v : volumes) {
        const double h = scaled_source(v, r.params);
        const ScpSolution s = solve_c(v, r.point.temperature, h, r.params, guess);
        guess = s.c;
        FluctuationPoint fp;
        fp.volume = v;
        fp.source = h;
        fp.gap = s.gap;
        fp.c = s.c;
        fp.displacement = s.displacement;
        fp.var_q = raw_variance_q(s.gap, r.point.temperature, r.point.lambda);
        fp.var_p = raw_variance_p(s.gap, r.point.temperature, r.point.lambda);
        r.points.push_back(fp);
    }
    return r;
}

namespace {

ExponentFit fit_scan(const ScanResult& scan, const ScanOptions& opts, const std::string& quantity,
                     double FluctuationPoint::*field, bool with_log) {
    std::vector<double> v, y;
    for (const FluctuationPoint& fp : scan.points) {
        v.push_back(fp.volume);
        y.push_back(fp.*field);
    }
    const auto n = static_cast<std::size_t>(std::max(opts.window, 4));
    v = tail(v, n);
    y = tail(y, n);
    ExponentFit e;
    e.quantity = quantity;
    e.fit = fit_power_law(v, y, with_log);
    e.dimension = scan.params.dimension;
    e.sigma = scan.params.sigma;
    e.alpha = scan.params.scaling;
    e.table = predicted_exponents(scan.regime, e.dimension, e.sigma, e.alpha);
    if (e.fit.residual > opts.max_residual) {
        std::ostringstream os;
        os << quantity << " fit residual " << e.fit.residual << " exceeds " << opts.max_residual;
        throw FitQualityError(os.str());
    }
    return e;
}

}  // namespace

ExponentFit gap_exponent(const ScanResult& scan, const ScanOptions& opts) {
    const Prediction table = predicted_exponents(scan.regime, scan.params.dimension, scan.params.sigma, scan.params.scaling);
    ExponentFit e = fit_scan(scan, opts, "gamma", &FluctuationPoint::gap, table.boundary);
    e.value = e.fit.exponent;
    e.standard_error = e.fit.standard_error;
    e.predicted = e.table.gamma;
    return e;
}

ExponentFit gap_exponent_scan(Regime regime, const ScpParams& p, const ScanOptions& opts) {
    return gap_exponent(fluctuation_scan(regime, p, opts), opts);
}

DeltaFits delta_from_variance(const ScanResult& scan, const ScanOptions& opts) {
    DeltaFits d;
    d.q = fit_scan(scan, opts, "delta_Q", &FluctuationPoint::var_q, false);
    d.q.value = -0.5 * d.q.fit.exponent;
    d.q.standard_error = 0.5 * d.q.fit.standard_error;
    d.q.predicted = d.q.table.delta_q;
    d.p = fit_scan(scan, opts, "delta_P", &FluctuationPoint::var_p, false);
    d.p.value = -0.5 * d.p.fit.exponent;
    d.p.standard_error = 0.5 * d.p.fit.standard_error;
    d.p.predicted = d.p.table.delta_p;
    return d;
}

DeltaFits verify_delta_by_variance(Regime regime, const ScpParams& p, const ScanOptions& opts) {
    return delta_from_variance(fluctuation_scan(regime, p, opts), opts);
}

std::string to_string(Algebra a) {
    switch (a) {
        case Algebra::abelian: return "abelian";
        case Algebra::non_abelian: return "non-abelian";
        case Algebra::ambiguous: return "ambiguous";
    }
    return "ambiguous";
}

AlgebraVerdict algebra_classify(double delta_q, double delta_p, double error_q, double error_p) {
    AlgebraVerdict v;
    v.delta_q = delta_q;
    v.delta_p = delta_p;
    v.commutator_exponent = -(delta_q + delta_p);
    v.combined_error = std::hypot(error_q, error_p);
    const double sum = delta_q + delta_p;
    const double band = 2.0 * std::max(v.combined_error, 1e-12);
    if (std::abs(sum) <= band)
        v.verdict = Algebra::non_abelian;
    else if (sum > band)
        v.verdict = Algebra::abelian;
    else
        v.verdict = Algebra::ambiguous;
    return v;
}

}  // namespace condlab
