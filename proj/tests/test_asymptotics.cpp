// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <vector>

#include "condlab/asymptotics.hpp"
#include "condlab/errors.hpp"

using namespace condlab;

namespace {

std::vector<double> geometric(double start, double factor, int count) {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(start * std::pow(factor, i));
    return v;
}

}  // namespace

TEST_SUITE("asymptotics") {
    TEST_CASE("exact power law is fitted with zero residual") {
        const auto x = geometric(10.0, 2.0, 9);
        std::vector<double> y;
        for (double v : x) y.push_back(3.0 * std::pow(v, -0.5));
        const FitResult f = fit_power_law(x, y, false);
        CHECK(f.exponent == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(f.amplitude == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(f.residual < 1e-12);
        CHECK(f.standard_error < 1e-12);
    }

    TEST_CASE("subleading correction leaves the exponent within 0.01") {
        const auto x = geometric(1e3, std::sqrt(10.0), 7);
        std::vector<double> y;
        for (double v : x) y.push_back(2.0 / v * (1.0 + 5.0 / v));
        CHECK(std::abs(fit_power_law(x, y, false).exponent - 1.0) < 0.01);
    }

    TEST_CASE("log-corrected power law") {
        const auto x = geometric(1e3, 2.0, 10);
        std::vector<double> y;
        for (double v : x) y.push_back(std::pow(v, -0.5) / std::log(v));
        const FitResult f = fit_power_law(x, y, true);
        CHECK(f.log_model);
        CHECK(f.exponent == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(f.log_coefficient == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(f.log_coefficient >= 0.0);
    }

    TEST_CASE("extrapolation of constant and power-decay sequences") {
        const auto v = geometric(1e4, std::sqrt(10.0), 9);
        std::vector<double> c(v.size(), 2.5);
        const LimitEstimate lc = extrapolate(v, c);
        CHECK(lc.value == 2.5);
        CHECK(lc.error == 0.0);
        std::vector<double> f;
        for (double x : v) f.push_back(1.0 + 4.0 / x);
        CHECK(extrapolate(v, f).value == doctest::Approx(1.0).epsilon(1e-6));
    }

    TEST_CASE("oscillating input falls back to the last value") {
        const auto v = geometric(1e4, 2.0, 8);
        std::vector<double> f;
        for (std::size_t i = 0; i < v.size(); ++i) f.push_back(i % 2 ? 1.0 : -1.0);
        const LimitEstimate e = extrapolate(v, f);
        CHECK(e.model == LimitModel::last_value);
        CHECK(e.error >= 2.0);
    }

    TEST_CASE("error bar never below the last-two spread") {
        for (double p : {0.2, 0.5, 1.0, 1.7}) {
            const auto v = geometric(1e3, 3.0, 8);
            std::vector<double> f;
            for (double x : v) f.push_back(0.3 + 2.0 * std::pow(x, -p) + 0.5 * std::pow(x, -2.0 * p));
            const LimitEstimate e = extrapolate(v, f);
            CHECK(e.error >= std::abs(f[f.size() - 1] - f[f.size() - 2]));
        }
    }

    TEST_CASE("intercept is exact on polynomial data") {
        const std::vector<double> x{0.4, 0.3, 0.2, 0.1};
        std::vector<double> y;
        for (double t : x) y.push_back(1.5 - 2.0 * t);
        CHECK(fit_intercept(x, y).value == doctest::Approx(1.5).epsilon(1e-14));
        InterceptOptions o{2, 0.5};
        y.clear();
        for (double t : x) y.push_back(1.0 + 3.0 * std::sqrt(t) - t);
        CHECK(fit_intercept(x, y, o).value == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("double limit recovers the source slope in the stated order") {
        // f / lambda = -1/s + lambda + 1/(lambda V); the inner limit removes the last term.
        const double s = 2.0;
        auto g = [s](double lam, double v) { return (-lam / s + lam * lam + 1.0 / v) / lam; };
        const std::vector<double> outer{1e-1, 5e-2, 2e-2, 1e-2};
        const auto inner = geometric(1e4, std::sqrt(10.0), 9);
        const DoubleLimit a = double_limit(outer, inner, g);
        CHECK(a.value == doctest::Approx(-1.0 / s).epsilon(1e-3));
    }

    TEST_CASE("order-sensitive synthetic separates the two orders") {
        auto g = [](double lam, double v) { return lam * v / (1.0 + lam * v); };
        const auto inner = geometric(1e4, std::sqrt(10.0), 9);
        const std::vector<double> bog{1e-2, 5e-3, 2e-3, 1e-3};
        const std::vector<double> rev{1e-10, 1e-11, 1e-12};
        DoubleLimitOptions o;
        o.order = LimitOrder::outer_first;
        CHECK(double_limit(bog, inner, g).value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(double_limit(rev, inner, g, o).value) < 1e-3);
    }

    TEST_CASE("malformed fit input is rejected") {
        const std::vector<double> x{1.0, 2.0};
        const std::vector<double> y{1.0, -1.0};
        CHECK_THROWS_AS(fit_power_law(x, y, false), ValidationError);
    }
}
