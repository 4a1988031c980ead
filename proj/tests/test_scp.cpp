// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "condlab/errors.hpp"
#include "condlab/scp.hpp"

using namespace condlab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroPoint04 = 0.509747394112655497;
constexpr double kZeroPoint05 = 0.516033473965082959;
constexpr double kThermalIntegral = 0.577265776793003478;
constexpr double kLambdaC05 = 2.6864427039353134049;
constexpr double kHalfLambdaCriticalT = 1.0573596504905720644;

// Periodic trapezoid over [-pi, pi] of f(Omega), Omega^2 = gap + omega^2.
template <class F>
double trapezoid_mean(const ScpParams& p, double gap_value, F f, int n = 1000000) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        const double q = -kPi + 2.0 * kPi * (k + 0.5) / n;
        s += f(std::sqrt(gap_value + dispersion_1d(q, p)));
    }
    return s / n;
}

}  // namespace

TEST_SUITE("scp") {
    TEST_CASE("dispersion") {
        ScpParams p;
        p.sigma = 2.0;
        CHECK(dispersion_1d(kPi, p) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(dispersion_1d(0.0, p) == 0.0);
        p.sigma = 0.5;
        CHECK(dispersion_1d(kPi, p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(dispersion_1d(-1.1, p) == dispersion_1d(1.1, p));
        ScpParams p3 = p;
        p3.dimension = 3;
        CHECK(dispersion({kPi, kPi, kPi}, p3) == doctest::Approx(std::pow(12.0, 0.25)).epsilon(1e-14));
        CHECK_THROWS_AS(dispersion({kPi}, p3), ValidationError);
    }

    TEST_CASE("stability threshold and gap") {
        ScpParams p;
        CHECK(c_star(p) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
        CHECK(std::abs(gap(std::log(4.0), p)) < 1e-15);
        CHECK(gap(2.0, p) > 0.0);
        CHECK(gap_above_threshold(1e-9, p) == doctest::Approx(1e-9).epsilon(1e-8));
        CHECK(gap_above_threshold(0.5, p) == doctest::Approx(gap(c_star(p) + 0.5, p)).epsilon(1e-14));
        ScpParams edge = p;
        edge.anharmonicity = 1.0;
        CHECK(c_star(edge) == 0.0);
        ScpParams none = p;
        none.anharmonicity = 0.5;
        CHECK_THROWS_AS(c_star(none), DomainError);
        CHECK_THROWS_AS(none.validate(), ValidationError);
    }

    TEST_CASE("quartic potential") {
        ScpParams p;
        p.potential = Potential::quartic;
        p.stiffness = -1.0;
        p.anharmonicity = 1.0;
        CHECK(c_star(p) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(gap(0.75, p) == doctest::Approx(0.5).epsilon(1e-15));
        p.stiffness = 1.0;
        CHECK_THROWS_AS(c_star(p), DomainError);
    }

    TEST_CASE("zero-point integral oracles and two routes") {
        ScpParams p;
        CHECK(zero_point_integral(p).value == doctest::Approx(kZeroPoint05).epsilon(1e-10));
        CHECK(zero_point_integral_tanh_sinh(p).value == doctest::Approx(kZeroPoint05).epsilon(1e-10));
        for (double sigma : {0.2, 0.4, 0.8, 1.0, 1.5}) {
            INFO("sigma = " << sigma);
            p.sigma = sigma;
            CHECK(zero_point_integral(p).value ==
                  doctest::Approx(zero_point_integral_tanh_sinh(p).value).epsilon(1e-9));
        }
        p.sigma = 0.4;
        CHECK(zero_point_integral(p).value == doctest::Approx(kZeroPoint04).epsilon(1e-10));
    }

    TEST_CASE("thermal Brillouin integral against a fine trapezoid") {
        ScpParams p;
        const double v = brillouin_integral_at_gap(1.0, 1.0, p).value;
        CHECK(v == doctest::Approx(kThermalIntegral).epsilon(1e-9));
        const double t = trapezoid_mean(p, 1.0, [](double om) { return 0.5 / (om * std::tanh(0.5 * om)); });
        CHECK(v == doctest::Approx(t).epsilon(1e-7));
    }

    TEST_CASE("high temperature is classical") {
        ScpParams p;
        const double temperature = 100.0;
        const double classical = trapezoid_mean(p, 1.0, [](double om) { return 1.0 / (om * om); }, 200000);
        const double v = brillouin_integral_at_gap(1.0, temperature, p).value;
        CHECK(v / (temperature * classical) == doctest::Approx(1.0).epsilon(0.01));
    }

    TEST_CASE("zero temperature integral is linear in the quantum parameter") {
        ScpParams p;
        for (double g : {0.0, 0.3, 2.0}) {
            const double one = brillouin_integral_at_gap(g, 0.0, p.with_quantum(1.0)).value;
            const double three = brillouin_integral_at_gap(g, 0.0, p.with_quantum(3.0)).value;
            CHECK(three == doctest::Approx(3.0 * one).epsilon(1e-12));
        }
    }

    TEST_CASE("divergent integrals are reported") {
        CHECK_THROWS_AS(mode_fluctuation(0.0, 0.0, 1.0, 1.0), DivergenceError);
        ScpParams p;
        p.sigma = 1.0;
        CHECK_THROWS_AS(brillouin_integral_at_gap(0.0, 1.0, p), DivergenceError);
        CHECK_THROWS_AS(brillouin_integral_at_gap(-0.1, 1.0, p), DomainError);
    }

    TEST_CASE("quantum critical point") {
        ScpParams p;
        const QuantumCritical q = lambda_c(p);
        CHECK(q.lambda_c == doctest::Approx(kLambdaC05).epsilon(1e-10));
        CHECK(q.lambda_c == doctest::Approx(std::log(4.0) / kZeroPoint05).epsilon(1e-10));
        ScpParams doubled = p;
        doubled.anharmonicity = 16.0;
        CHECK(c_star(doubled) == doctest::Approx(2.0 * c_star(p)).epsilon(1e-14));
        CHECK(lambda_c(doubled).lambda_c == doctest::Approx(2.0 * q.lambda_c).epsilon(1e-12));
    }

    TEST_CASE("critical line") {
        ScpParams p;
        CHECK(critical_temperature(0.5 * kLambdaC05, p) == doctest::Approx(kHalfLambdaCriticalT).epsilon(1e-8));
        CHECK(critical_temperature(kLambdaC05 * (1.0 - 1e-13), p) < 1e-6);
        CHECK_THROWS_AS(critical_temperature(1.1 * kLambdaC05, p), DomainError);
        const CriticalLine line = critical_line({0.5, 1.0, 1.5, 2.0, 2.5}, p);
        CHECK(line.strictly_decreasing);
        for (const CriticalPoint& pt : line.points) {
            // At T_c the unsourced solution sits exactly at the threshold.
            CHECK(brillouin_integral_at_gap(0.0, pt.temperature, p.with_quantum(pt.lambda)).value ==
                  doctest::Approx(c_star(p)).epsilon(1e-9));
        }
        ScpParams high = p;
        high.sigma = 1.5;
        CHECK_THROWS_AS(critical_temperature(1.0, high), DomainError);
    }

    TEST_CASE("infinite-volume phases") {
        ScpParams p;
        const ScpSolution ordered = solve_c(std::nullopt, 0.0, 0.0, p.with_quantum(0.5 * kLambdaC05));
        CHECK(ordered.phase == ScpPhase::ordered);
        CHECK(ordered.gap == 0.0);
        CHECK(ordered.order_parameter > 0.0);
        const ScpSolution disordered = solve_c(std::nullopt, 0.0, 0.0, p.with_quantum(2.0 * kLambdaC05));
        CHECK(disordered.phase == ScpPhase::disordered);
        CHECK(disordered.gap > 0.0);
        CHECK(disordered.c > c_star(p));
        const ScpSolution hot = solve_c(std::nullopt, 2.0 * kHalfLambdaCriticalT, 0.0, p.with_quantum(0.5 * kLambdaC05));
        CHECK(hot.phase == ScpPhase::disordered);
    }

    TEST_CASE("solutions are stable and self-consistent") {
        ScpParams p;
        for (double lambda : {0.5, 2.0, 6.0})
            for (double t : {0.0, 0.5, 2.0})
                for (double h : {0.0, 1e-3, 0.1}) {
                    const ScpSolution s = solve_c(std::nullopt, t, h, p.with_quantum(lambda));
                    CHECK(s.c >= c_star(p));
                    CHECK(s.gap >= 0.0);
                    CHECK(s.residual <= 1e-10 * s.c);
                }
    }

    TEST_CASE("finite volume approaches the infinite-volume equation") {
        ScpParams p;
        const ScpParams q = p.with_quantum(2.0 * kLambdaC05);
        const double inf = solve_c(std::nullopt, 0.0, 0.01, q).c;
        double last = 1.0;
        for (double v : {1024.0, 16384.0, 262144.0}) {
            const double err = std::abs(solve_c(v, 0.0, 0.01, q).c - inf) / inf;
            CHECK(err < last);
            last = err;
        }
        CHECK(last < 1e-5);
        CHECK_THROWS_AS(solve_c(1.0, 0.0, 0.0, q), ValidationError);
    }

    TEST_CASE("ordered displacement obeys the identity and flips with the sign") {
        ScpParams p;
        const double lambda = 0.5 * kLambdaC05;
        const double t = 0.5 * kHalfLambdaCriticalT;
        const DisplacementLimit up = displacement_qa(t, lambda, 1, p);
        const DisplacementLimit down = displacement_qa(t, lambda, -1, p);
        CHECK(up.phase == ScpPhase::ordered);
        CHECK(up.value > 0.0);
        CHECK(up.value * up.value == doctest::Approx(up.order_parameter).epsilon(0.01));
        CHECK(up.squared_limit == doctest::Approx(up.order_parameter).epsilon(0.01));
        CHECK(down.value == -up.value);
        const DisplacementLimit off = displacement_qa(2.0 * kHalfLambdaCriticalT, lambda, 1, p);
        CHECK(off.phase == ScpPhase::disordered);
        CHECK(off.value == 0.0);
        CHECK_THROWS_AS(displacement_qa(t, lambda, 0, p), ValidationError);
    }

    TEST_CASE("mixing weight") {
        const MixingWeight m = mixing_weight(0.05, 1.0, 1.0, 0.1);
        CHECK(m.xi == doctest::Approx(10.0024993753123048).epsilon(1e-14));
        CHECK(mixing_weight(0.0, 1.0, 1.0, 0.1).weight == 0.5);
        CHECK(mixing_weight(1e8, 1.0, 1.0, 0.1).weight == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(mixing_weight(0.05, 2.0, 1.0, 0.1).weight == 0.5);
        CHECK_THROWS_AS(mixing_weight(0.05, 0.5, 1.0, 0.1), DomainError);
        for (double h : {1e-4, 0.01, 1.0, 100.0})
            for (double beta : {0.1, 1.0, 10.0})
                for (double rho : {0.01, 0.5, 4.0}) {
                    const MixingWeight w = mixing_weight(h, 1.0, beta, rho);
                    CHECK(w.relative_gap <= 1e-10);
                    CHECK(w.weight > 0.5);
                    CHECK(w.weight <= 1.0);
                }
    }
}
