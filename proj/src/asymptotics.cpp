// SPDX-License-Identifier: MIT
#include "condlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "condlab/errors.hpp"
#include "condlab/numerics.hpp"

namespace condlab {

namespace {

struct LinearFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd fitted;
    Eigen::MatrixXd pinv;  // (A^T A)^-1 A^T
};

LinearFit least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < a.cols()) throw FitQualityError("degenerate design matrix in least-squares fit");
    LinearFit r;
    r.coef = qr.solve(y);
    r.fitted = a * r.coef;
    const Eigen::MatrixXd ata = a.transpose() * a;
    r.pinv = ata.ldlt().solve(a.transpose());
    return r;
}

struct PowerCoefficients {
    double log_amp, exponent, kappa;
    bool with_log;
};

PowerCoefficients power_coefficients(const std::vector<double>& lx, const std::vector<double>& ly,
                                     bool with_log, Eigen::VectorXd* fitted,
                                     Eigen::MatrixXd* pinv) {
    const auto n = static_cast<Eigen::Index>(lx.size());
    auto solve = [&](int cols) {
        Eigen::MatrixXd a(n, cols);
        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            a(i, 0) = 1.0;
            a(i, 1) = -lx[i];
            if (cols == 3) a(i, 2) = -std::log(lx[i]);
            y(i) = ly[i];
        }
        return least_squares(a, y);
    };
    LinearFit fit = solve(with_log ? 3 : 2);
    double kappa = with_log ? fit.coef(2) : 0.0;
    if (with_log && kappa < 0.0) {
        fit = solve(2);
        kappa = 0.0;
    }
    if (fitted) *fitted = fit.fitted;
    if (pinv) *pinv = fit.pinv;
    return {fit.coef(0), fit.coef(1), kappa, with_log};
}

}  // namespace

FitResult fit_power_law(std::span<const double> x, std::span<const double> y, bool with_log) {
    if (x.size() != y.size()) throw ValidationError("fit_power_law: x and y differ in length");
    if (x.size() < 4) throw ValidationError("fit_power_law: at least 4 points required");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) throw ValidationError("fit_power_law: y must be positive");
        if (!(x[i] > 0.0)) throw ValidationError("fit_power_law: x must be positive");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw ValidationError("fit_power_law: x must be strictly increasing");
        if (with_log && !(x[i] > 1.0))
            throw ValidationError("fit_power_law: log-corrected model needs x > 1");
    }
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    Eigen::VectorXd fitted;
    Eigen::MatrixXd pinv;
    const auto c = power_coefficients(lx, ly, with_log, &fitted, &pinv);

    FitResult r;
    r.exponent = c.exponent;
    r.amplitude = std::exp(c.log_amp);
    r.log_coefficient = c.kappa;
    r.log_model = with_log;
    for (std::size_t i = 0; i < x.size(); ++i)
        r.residual = std::max(r.residual, std::abs(ly[i] - fitted(static_cast<Eigen::Index>(i))));
    // Hat-matrix diagonal of the final design.
    const Eigen::Index cols = pinv.rows();
    r.leverage.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double h = 0.0;
        for (Eigen::Index k = 0; k < cols; ++k) {
            const double aik = k == 0 ? 1.0 : (k == 1 ? -lx[i] : -std::log(lx[i]));
            h += aik * pinv(k, static_cast<Eigen::Index>(i));
        }
        r.leverage[i] = h;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t drop = 0; drop < x.size(); ++drop) {
        std::vector<double> sx, sy;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (i != drop) {
                sx.push_back(lx[i]);
                sy.push_back(ly[i]);
            }
        const auto cl = power_coefficients(sx, sy, with_log, nullptr, nullptr);
        lo = std::min(lo, cl.exponent);
        hi = std::max(hi, cl.exponent);
    }
    r.standard_error = 0.5 * (hi - lo);
    return r;
}

std::string to_string(LimitModel m) {
    return m == LimitModel::power_decay ? "power-decay" : "last-value";
}

LimitEstimate extrapolate(std::span<const double> v, std::span<const double> f,
                          const ExtrapolationOptions& opts) {
    if (v.size() != f.size()) throw ValidationError("extrapolate: grids differ in length");
    if (v.size() < 3) throw ValidationError("extrapolate: at least 3 points required");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) throw ValidationError("extrapolate: V must be increasing");

    const std::size_t n = v.size();
    const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(opts.window), 3, n);
    const std::size_t start = n - w;
    const double last = f[n - 1];
    const double spread = std::abs(f[n - 1] - f[n - 2]);

    LimitEstimate fallback;
    fallback.value = last;
    fallback.error = spread;
    fallback.model = LimitModel::last_value;

    // A decaying correction is monotone on the window; anything else is rejected.
    int sign = 0;
    for (std::size_t i = start + 1; i < n; ++i) {
        const double d = f[i] - f[i - 1];
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign)) return fallback;
        sign = s;
    }
    for (std::size_t i = start + 2; i < n; ++i)
        if (std::abs(f[i] - f[i - 1]) >= std::abs(f[i - 1] - f[i - 2])) return fallback;

    const double vref = v[n - 1];
    auto solve_at = [&](double p, double* finf, double* amp) {
        // Linear least squares for (f_inf, c) at fixed p, scaled by V_max.
        double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
        for (std::size_t i = start; i < n; ++i) {
            const double x = std::pow(v[i] / vref, -p);
            s1 += 1;
            sx += x;
            sxx += x * x;
            sy += f[i];
            sxy += x * f[i];
        }
        const double det = s1 * sxx - sx * sx;
        const double c = (s1 * sxy - sx * sy) / det;
        const double a = (sy - c * sx) / s1;
        double ssr = 0;
        for (std::size_t i = start; i < n; ++i) {
            const double r = f[i] - a - c * std::pow(v[i] / vref, -p);
            ssr += r * r;
        }
        if (finf) *finf = a;
        if (amp) *amp = c;
        return ssr;
    };

    const int scan = 400;
    double best_p = opts.min_decay;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= scan; ++k) {
        const double p = opts.min_decay + (opts.max_decay - opts.min_decay) * k / scan;
        const double s = solve_at(p, nullptr, nullptr);
        if (s < best) {
            best = s;
            best_p = p;
        }
    }
    const double step = (opts.max_decay - opts.min_decay) / scan;
    double lo = std::max(opts.min_decay, best_p - step);
    double hi = std::min(opts.max_decay, best_p + step);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 100; ++it) {
        const double a = hi - g * (hi - lo);
        const double b = lo + g * (hi - lo);
        if (solve_at(a, nullptr, nullptr) < solve_at(b, nullptr, nullptr))
            hi = b;
        else
            lo = a;
    }
    best_p = 0.5 * (lo + hi);
    const double edge = 1e-3 * (opts.max_decay - opts.min_decay);
    if (best_p - opts.min_decay < edge || opts.max_decay - best_p < edge) return fallback;

    double finf = 0, amp = 0;
    const double ssr = solve_at(best_p, &finf, &amp);
    if (!std::isfinite(finf)) return fallback;

    LimitEstimate r;
    r.value = finf;
    r.model = LimitModel::power_decay;
    r.decay_exponent = best_p;
    r.error = std::max(spread, std::sqrt(ssr / static_cast<double>(w)));
    return r;
}

InterceptFit fit_intercept(std::span<const double> x, std::span<const double> y,
                           const InterceptOptions& opts) {
    if (x.size() != y.size()) throw ValidationError("fit_intercept: grids differ in length");
    const auto n = static_cast<Eigen::Index>(x.size());
    const int cols = opts.degree + 1;
    if (n < cols) throw ValidationError("fit_intercept: not enough points for the model degree");
    auto design = [&](const std::vector<std::size_t>& rows) {
        Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), cols);
        Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const double s = std::pow(x[rows[r]], opts.power);
            double t = 1.0;
            for (int k = 0; k < cols; ++k) {
                a(static_cast<Eigen::Index>(r), k) = t;
                t *= s;
            }
            b(static_cast<Eigen::Index>(r)) = y[rows[r]];
        }
        return least_squares(a, b);
    };
    std::vector<std::size_t> all(x.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const LinearFit fit = design(all);

    InterceptFit r;
    r.value = fit.coef(0);
    r.coefficients.assign(fit.coef.data(), fit.coef.data() + cols);
    r.sensitivity.resize(x.size());
    for (Eigen::Index i = 0; i < n; ++i) r.sensitivity[static_cast<std::size_t>(i)] = fit.pinv(0, i);

    if (n >= cols + 2) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t drop = 0; drop < x.size(); ++drop) {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (i != drop) rows.push_back(i);
            const double c0 = design(rows).coef(0);
            lo = std::min(lo, c0);
            hi = std::max(hi, c0);
        }
        r.error = 0.5 * (hi - lo);
    } else {
        double m = 0;
        for (Eigen::Index i = 0; i < n; ++i) m = std::max(m, std::abs(y[i] - fit.fitted(i)));
        r.error = m;
    }
    return r;
}

DoubleLimit double_limit(std::span<const double> outer, std::span<const double> inner,
                         const std::vector<std::vector<double>>& table,
                         const DoubleLimitOptions& opts) {
    if (table.size() != outer.size()) throw ValidationError("double_limit: table rows != outer grid");
    for (const auto& row : table)
        if (row.size() != inner.size())
            throw ValidationError("double_limit: table columns != inner grid");

    DoubleLimit r;
    if (opts.order == LimitOrder::inner_first) {
        std::vector<double> vals;
        for (const auto& row : table) {
            r.partial.push_back(extrapolate(inner, row, opts.inner));
            vals.push_back(r.partial.back().value);
        }
        r.outer_fit = fit_intercept(outer, vals, opts.outer);
        double var = r.outer_fit.error * r.outer_fit.error;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double e = r.outer_fit.sensitivity[i] * r.partial[i].error;
            var += e * e;
        }
        r.value = r.outer_fit.value;
        r.error = std::sqrt(var);
    } else {
        std::vector<double> vals;
        double worst = 0.0;
        for (std::size_t j = 0; j < inner.size(); ++j) {
            std::vector<double> column;
            for (const auto& row : table) column.push_back(row[j]);
            const InterceptFit fit = fit_intercept(outer, column, opts.outer);
            LimitEstimate e;
            e.value = fit.value;
            e.error = fit.error;
            r.partial.push_back(e);
            vals.push_back(fit.value);
            worst = std::max(worst, fit.error);
        }
        r.inner_fit = extrapolate(inner, vals, opts.inner);
        r.value = r.inner_fit.value;
        r.error = std::hypot(r.inner_fit.error, worst);
    }
    return r;
}

DoubleLimit double_limit(std::span<const double> outer, std::span<const double> inner,
                         const std::function<double(double, double)>& evaluator,
                         const DoubleLimitOptions& opts) {
    std::vector<std::vector<double>> table(outer.size(), std::vector<double>(inner.size()));
    parallel_for(outer.size() * inner.size(), [&](std::size_t k) {
        const std::size_t i = k / inner.size();
        const std::size_t j = k % inner.size();
        table[i][j] = evaluator(outer[i], inner[j]);
    });
    return double_limit(outer, inner, table, opts);
}

}  // namespace condlab
