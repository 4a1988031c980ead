// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace condlab {

// Neumaier variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 4000;
    // Throw on an unmet tolerance instead of returning the best estimate.
    bool strict = true;
};

// Globally adaptive 7/15-point Gauss-Kronrod on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Root of an increasing function on [lo, hi]; requires f(lo) <= 0 <= f(hi).
double find_root_increasing(const std::function<double(double)>& f, double lo, double hi,
                            int digits = 50, int max_iter = 400);

struct ValueSlope {
    double value = 0.0;
    double slope = 0.0;
};

// Root of an increasing function by Newton steps kept inside the bracket found so
// far; unbracketed steps are capped at max_step. Stops when the step falls below
// step_tol * max(1, |x|).
double find_root_newton(const std::function<ValueSlope(double)>& f, double guess, double step_tol = 1e-14,
                        double max_step = 5.0, int max_iter = 200);

// Worker threads used by parallel loops; 0 selects hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(i) for i in [0, n). Work items must be independent; results
// depend only on i, so the outcome does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace condlab
