// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace condlab {

// y ~ amplitude * x^(-exponent) * (log x)^(-log_coefficient)
struct FitResult {
    double exponent = 0.0;
    double amplitude = 0.0;
    double log_coefficient = 0.0;
    bool log_model = false;
    double residual = 0.0;        // max |log y - model|
    double standard_error = 0.0;  // half-range of leave-one-out exponents
    std::vector<double> leverage;
};

FitResult fit_power_law(std::span<const double> x, std::span<const double> y, bool with_log);

enum class LimitModel { power_decay, last_value };

std::string to_string(LimitModel m);

struct LimitEstimate {
    double value = 0.0;
    double error = 0.0;
    LimitModel model = LimitModel::last_value;
    double decay_exponent = 0.0;  // fitted p when model == power_decay
};

struct ExtrapolationOptions {
    double min_decay = 0.1;
    double max_decay = 2.0;
    int window = 3;  // largest-V points used by the fit
};

// f(V) = f_inf + c V^(-p) with p free inside [min_decay, max_decay].
LimitEstimate extrapolate(std::span<const double> v, std::span<const double> f,
                          const ExtrapolationOptions& opts = {});

// y = c0 + c1 s + ... + ck s^k with s = x^power; the intercept is the x -> 0 limit.
struct InterceptOptions {
    int degree = 1;
    double power = 1.0;
};

struct InterceptFit {
    double value = 0.0;
    double error = 0.0;
    std::vector<double> coefficients;
    std::vector<double> sensitivity;  // d value / d y_i
};

InterceptFit fit_intercept(std::span<const double> x, std::span<const double> y,
                           const InterceptOptions& opts = {});

enum class LimitOrder {
    inner_first,  // x_inner -> infinity at fixed outer, then outer -> 0
    outer_first,  // outer -> 0 at fixed x_inner, then x_inner -> infinity
};

struct DoubleLimitOptions {
    LimitOrder order = LimitOrder::inner_first;
    ExtrapolationOptions inner;
    InterceptOptions outer;
};

struct DoubleLimit {
    double value = 0.0;
    double error = 0.0;
    std::vector<LimitEstimate> partial;  // one entry per point of the grid eliminated first
    InterceptFit outer_fit;
    LimitEstimate inner_fit;
};

// table[i][j] = evaluator(outer[i], inner[j]); outer grid decreasing toward 0,
// inner grid increasing toward infinity.
DoubleLimit double_limit(std::span<const double> outer, std::span<const double> inner,
                         const std::vector<std::vector<double>>& table,
                         const DoubleLimitOptions& opts = {});

DoubleLimit double_limit(std::span<const double> outer, std::span<const double> inner,
                         const std::function<double(double, double)>& evaluator,
                         const DoubleLimitOptions& opts = {});

}  // namespace condlab
