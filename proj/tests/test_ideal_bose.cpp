// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <vector>

#include "condlab/errors.hpp"
#include "condlab/ideal_bose.hpp"

using namespace condlab;

namespace {

// Bulk density at beta = 1, 30 digits.
constexpr double kCriticalDensity = 0.0586436213476444219;
// Root of coth(sqrt A / 2) / (2 sqrt A) = 0.05, 30 digits.
constexpr double kCasimirAmplitude = 100.018145150397933;
// Single mode, beta = 1, eps = 0, mu = 0.5, a = 1, V = 1: direct sum of 200 terms.
constexpr double kSingleModeOccupation = 1.12939754806015310;

const std::vector<double> kCube{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

}  // namespace

TEST_SUITE("ideal-bose") {
    TEST_CASE("critical density oracle and beta scaling") {
        CHECK(critical_density(1.0) == doctest::Approx(kCriticalDensity).epsilon(1e-10));
        CHECK(critical_density(4.0) == doctest::Approx(kCriticalDensity / 8.0).epsilon(1e-10));
        CHECK(critical_density(1e6) < 1e-9);
    }

    TEST_CASE("free density is increasing in mu") {
        double prev = 0.0;
        for (double mu : {-10.0, -3.0, -1.0, -0.3, -0.1, -0.01, 0.0}) {
            const double d = free_density(1.0, mu);
            CHECK(d > prev);
            prev = d;
        }
        CHECK_THROWS_AS(free_density(1.0, 0.1), DomainError);
    }

    TEST_CASE("Casimir root") {
        const CasimirRoot r = casimir_root(1.0, kCriticalDensity + 0.05);
        CHECK(r.amplitude == doctest::Approx(kCasimirAmplitude).epsilon(1e-9));
        CHECK(r.shell_density == doctest::Approx(0.05).epsilon(1e-12));
        CHECK(r.zero_mode_density == doctest::Approx(1.0 / kCasimirAmplitude).epsilon(1e-9));
        // Large excess: 1/A + 1/12 = excess.
        CHECK(casimir_root(1.0, kCriticalDensity + 1e3).amplitude == doctest::Approx(1.0 / (1e3 - 1.0 / 12.0)).epsilon(1e-9));
        CHECK_THROWS_AS(casimir_root(1.0, 0.5 * kCriticalDensity), DomainError);
    }

    TEST_CASE("mu solve returns the density it was given") {
        const BoseGas gas(BoxGeometry::cubic(1e5), 1.0);
        for (double rho : {1e-6, 0.03, 2.0 * kCriticalDensity}) {
            const double mu = gas.solve_mu(rho);
            CHECK(mu < 0.0);
            CHECK(gas.density(mu).value == doctest::Approx(rho).epsilon(1e-12));
        }
        CHECK(gas.solve_mu(1e-12) < -20.0);
    }

    TEST_CASE("density slope matches a finite difference") {
        const BoseGas gas(BoxGeometry(1e5, {0.5, 0.25, 0.25}), 1.0);
        const double mu = -1e-3, h = 1e-8;
        const ValueSlope d = gas.density_slope(mu);
        const double fd = (gas.density(mu + h).value - gas.density(mu - h).value) / (2.0 * h);
        CHECK(d.slope == doctest::Approx(fd).epsilon(1e-5));
        CHECK(d.value == doctest::Approx(gas.density(mu).value).epsilon(1e-14));
    }

    TEST_CASE("condensate fixes mu on the cubic box") {
        const double rho = 2.0 * kCriticalDensity;
        double last = 0.0;
        for (double v : {1e4, 1e5, 1e6}) {
            const BoseGas gas(BoxGeometry::cubic(v), 1.0);
            last = v * (rho - kCriticalDensity) * -gas.solve_mu(rho);
        }
        CHECK(last == doctest::Approx(1.0).epsilon(0.02));
    }

    TEST_CASE("excess density below saturation vanishes") {
        const GbecReport r = gbec_shell_density(kCube, {1e4, 3.16e4, 1e5, 3.16e5, 1e6, 3.16e6, 1e7}, 1.0, 0.5 * kCriticalDensity, {0.5, 0.25, 0.1});
        CHECK(std::abs(r.shell_density) < 1e-3 * kCriticalDensity);
        CHECK(r.type == GbecType::none);
    }

    TEST_CASE("type I on the cubic box") {
        std::vector<double> vols;
        for (int k = 8; k <= 14; ++k) vols.push_back(std::pow(10.0, 0.5 * k));
        GbecOptions o;
        o.probe_modes = {{1, 0, 0}};
        const GbecReport r = gbec_shell_density(kCube, vols, 1.0, 2.0 * kCriticalDensity, {0.5, 0.25, 0.1, 0.05}, o);
        CHECK(r.type == GbecType::I);
        CHECK(r.modes.front().limit.value == doctest::Approx(kCriticalDensity).epsilon(0.02));
        CHECK(std::abs(r.modes.at(1).limit.value) < 1e-3 * kCriticalDensity);
        CHECK(r.shell_density == doctest::Approx(kCriticalDensity).epsilon(0.02));
    }

    TEST_CASE("classifier flags inconsistent limits as ambiguous") {
        ClassificationInput in;
        in.rho = 2.0 * kCriticalDensity;
        in.zero_mode = {0.08, 1e-4, LimitModel::last_value, 0.0};
        in.shell = kCriticalDensity;
        in.shell_error = 1e-4;
        CHECK(classify_gbec(in) == GbecType::ambiguous);
    }

    TEST_CASE("diagonal model reduces to the perfect gas at weak coupling") {
        const BoxGeometry box = BoxGeometry::cubic(1000.0);
        const DiagonalModel weak(box, 1.0, 1e-12, -0.2);
        for (double eps : {0.0, 0.3, 2.0})
            CHECK(weak.mean_occupation(eps, -0.2) == doctest::Approx(bose_occupation(eps, 1.0, -0.2)).epsilon(1e-6));
    }

    TEST_CASE("diagonal model single-mode oracle") {
        const DiagonalModel one(BoxGeometry(1.0, kCube), 1.0, 1.0, 0.5);
        CHECK(one.mean_occupation(0.0, 0.5) == doctest::Approx(kSingleModeOccupation).epsilon(1e-12));
    }

    TEST_CASE("diagonal repulsion spreads the condensate") {
        const double rho = 2.0 * kCriticalDensity;
        double prev = 1.0;
        for (double v : {1e4, 1e5, 1e6}) {
            const DiagonalModel m(BoxGeometry::cubic(v), 1.0, 1.0, rho);
            const double mu = m.solve_mu(rho);
            CHECK(m.density(mu).value == doctest::Approx(rho).epsilon(1e-10));
            const double zero = m.zero_mode_density(mu) / kCriticalDensity;
            CHECK(zero < prev);
            prev = zero;
        }
        CHECK(prev < 0.3);
    }
}
