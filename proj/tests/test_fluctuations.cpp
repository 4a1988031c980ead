// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <vector>

#include "condlab/errors.hpp"
#include "condlab/fluctuations.hpp"

using namespace condlab;

namespace {

void check_row(Regime r, double sigma, double alpha, double gamma, double delta_q, double delta_p) {
    INFO(to_string(r) << " sigma=" << sigma << " alpha=" << alpha);
    const Prediction p = predicted_exponents(r, 1, sigma, alpha);
    CHECK(p.gamma == doctest::Approx(gamma).epsilon(1e-14));
    CHECK(p.delta_q == doctest::Approx(delta_q).epsilon(1e-14));
    CHECK(p.delta_p == doctest::Approx(delta_p).epsilon(1e-14));
}

}  // namespace

TEST_SUITE("fluctuations") {
    TEST_CASE("critical-line table") {
        check_row(Regime::critical_line, 0.4, 0.5, 1.0 / 3.0, 1.0 / 6.0, 0.0);
        check_row(Regime::critical_line, 0.4, 2.0, 0.5, 0.25, 0.0);
        check_row(Regime::critical_line, 0.5, 0.5, 1.0 / 3.0, 1.0 / 6.0, 0.0);
        check_row(Regime::critical_line, 0.5, 2.0, 0.5, 0.25, 0.0);
        check_row(Regime::critical_line, 0.8, 0.5, 4.0 / 9.0, 2.0 / 9.0, 0.0);
        check_row(Regime::critical_line, 0.8, 2.0, 0.8, 0.4, 0.0);
        CHECK(predicted_exponents(Regime::critical_line, 1, 0.5, 0.5).boundary);
        CHECK_FALSE(predicted_exponents(Regime::critical_line, 1, 0.4, 0.5).boundary);
        CHECK_THROWS_AS(predicted_exponents(Regime::critical_line, 1, 1.2, 0.5), DomainError);
    }

    TEST_CASE("quantum-point table") {
        check_row(Regime::quantum_point, 0.5, 0.5, 1.0 / 3.0, 1.0 / 12.0, -1.0 / 12.0);
        check_row(Regime::quantum_point, 0.5, 2.0, 2.0 / 3.0, 1.0 / 6.0, -1.0 / 6.0);
        check_row(Regime::quantum_point, 2.0 / 3.0, 0.5, 1.0 / 3.0, 1.0 / 12.0, -1.0 / 12.0);
        check_row(Regime::quantum_point, 2.0 / 3.0, 2.0, 0.5, 0.125, -0.125);
        check_row(Regime::quantum_point, 1.0, 0.5, 0.4, 0.1, -0.1);
        check_row(Regime::quantum_point, 1.0, 2.0, 1.0, 0.25, -0.25);
        CHECK(predicted_exponents(Regime::quantum_point, 1, 2.0 / 3.0, 0.5).boundary);
        CHECK_THROWS_AS(predicted_exponents(Regime::quantum_point, 1, 2.5, 0.5), DomainError);
    }

    TEST_CASE("ordered table") {
        check_row(Regime::ordered, 0.5, 0.5, 0.5, 0.25, 0.0);
        check_row(Regime::ordered, 0.5, 1.0, 1.0, 0.5, 0.0);
        check_row(Regime::ordered, 0.5, 2.0, 1.0, 0.5, 0.0);
    }

    TEST_CASE("exponents are continuous at the critical alpha off the boundary rows") {
        for (Regime r : {Regime::critical_line, Regime::quantum_point})
            for (double sigma = 0.05; sigma < 1.0; sigma += 0.05) {
                const Prediction at = predicted_exponents(r, 1, sigma, 1.0);
                if (at.boundary) continue;
                INFO(to_string(r) << " sigma=" << sigma);
                const Prediction below = predicted_exponents(r, 1, sigma, at.critical_alpha * (1.0 - 1e-12));
                const Prediction above = predicted_exponents(r, 1, sigma, at.critical_alpha);
                CHECK(below.gamma == doctest::Approx(above.gamma).epsilon(1e-10));
                CHECK(below.delta_q == doctest::Approx(above.delta_q).epsilon(1e-10));
            }
    }

    TEST_CASE("fluctuation exponents follow from the gap exponent on every row") {
        for (Regime r : {Regime::critical_line, Regime::quantum_point, Regime::ordered})
            for (double sigma : {0.2, 0.4, 0.5, 2.0 / 3.0, 0.8, 0.95})
                for (double alpha : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
                    const Prediction p = predicted_exponents(r, 1, sigma, alpha);
                    const Exponents e = fluctuation_exponents(r, p.gamma, alpha);
                    CHECK(e.delta_q == doctest::Approx(p.delta_q).epsilon(1e-14));
                    CHECK(e.delta_p == doctest::Approx(p.delta_p).epsilon(1e-14));
                }
    }

    TEST_CASE("raw variances") {
        CHECK(raw_variance_q(0.25, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(raw_variance_p(0.25, 0.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(raw_variance_q(0.25, 1e-4, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
        // Classical limit on the critical line: T / gap and T.
        CHECK(raw_variance_q(1e-10, 1.0, 1.0) * 1e-10 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(raw_variance_p(0.0, 0.7, 1.0) == 0.7);
        CHECK(raw_variance_p(1e-12, 0.7, 1.0) == doctest::Approx(0.7).epsilon(1e-9));
        // Minimal uncertainty at zero temperature.
        for (double g : {1e-8, 0.1, 3.0})
            CHECK(raw_variance_q(g, 0.0, 1.5) * raw_variance_p(g, 0.0, 1.5) == doctest::Approx(0.5625).epsilon(1e-14));
        CHECK_THROWS_AS(raw_variance_q(0.0, 1.0, 1.0), DivergenceError);
    }

    TEST_CASE("regime names") {
        for (Regime r : {Regime::disordered, Regime::ordered, Regime::critical_line, Regime::quantum_point})
            CHECK(parse_regime(to_string(r)) == r);
        CHECK_THROWS_AS(parse_regime("critical"), ValidationError);
    }

    TEST_CASE("algebra verdicts") {
        CHECK(algebra_classify(1.0 / 6.0, 0.0, 0.0, 0.0).verdict == Algebra::abelian);
        CHECK(algebra_classify(1.0 / 6.0, -1.0 / 6.0, 0.0, 0.0).verdict == Algebra::non_abelian);
        CHECK(algebra_classify(0.0, 0.0, 0.0, 0.0).verdict == Algebra::non_abelian);
        CHECK(algebra_classify(0.1, -0.05, 0.01, 0.01).verdict == Algebra::abelian);
        CHECK(algebra_classify(0.1, -0.2, 0.01, 0.01).verdict == Algebra::ambiguous);
        CHECK(algebra_classify(0.2, -0.1, 0.0, 0.0).commutator_exponent == doctest::Approx(-0.1));
    }

    TEST_CASE("evaluation points") {
        ScpParams p;
        const EvaluationPoint q = evaluation_point(Regime::quantum_point, p);
        CHECK(q.temperature == 0.0);
        CHECK(q.lambda == q.lambda_c);
        const EvaluationPoint c = evaluation_point(Regime::critical_line, p);
        CHECK(c.lambda == doctest::Approx(0.5 * c.lambda_c));
        CHECK(c.temperature == c.critical_temperature);
        const EvaluationPoint o = evaluation_point(Regime::ordered, p);
        CHECK(o.temperature == doctest::Approx(0.5 * o.critical_temperature));
    }

    TEST_CASE("gap exponent scan on the critical line") {
        ScpParams p;
        p.sigma = 0.4;
        p.scaling = 0.5;
        p.source = 0.1;
        const ExponentFit g = gap_exponent_scan(Regime::critical_line, p);
        CHECK(g.predicted == doctest::Approx(1.0 / 3.0));
        CHECK(std::abs(g.value - g.predicted) <= 0.05);
        const DeltaFits d = verify_delta_by_variance(Regime::critical_line, p);
        CHECK(std::abs(d.q.value - d.q.predicted) <= 0.03);
        CHECK(std::abs(d.p.value) <= 0.03);
    }

    TEST_CASE("scan validation") {
        ScpParams p;
        ScanOptions o;
        o.volumes = {4096.0, 1024.0};
        CHECK_THROWS_AS(fluctuation_scan(Regime::critical_line, p, o), ValidationError);
    }
}
