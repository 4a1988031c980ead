// SPDX-License-Identifier: MIT
#include "condlab/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "condlab/errors.hpp"

namespace condlab {

namespace {

constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// Error estimate follows the QUADPACK qk15 heuristic.
Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        fv[j] = f(c - dx);
        fv[14 - j] = f(c + dx);
    }
    double kronrod = fv[7] * kKronrodWeights[7];
    double gauss = fv[7] * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double s = fv[j] + fv[14 - j];
        kronrod += kKronrodWeights[j] * s;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * s;
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        asc += kKronrodWeights[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    kronrod *= h;
    gauss *= h;
    asc *= std::abs(h);
    double err = std::abs(kronrod - gauss);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    return {a, b, kronrod, err};
}

unsigned g_threads = 1;
thread_local bool t_in_parallel = false;

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
    if (!(a < b)) {
        if (a == b) return {};
        auto r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    std::vector<Panel> heap;
    heap.push_back(gauss_kronrod(f, a, b));
    double total = heap.front().value;
    double err = heap.front().error;
    int evals = 15;
    int panels = 1;
    while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (panels >= opts.max_intervals) {
            if (!opts.strict) break;
            std::ostringstream os;
            os << "quadrature on [" << a << ", " << b << "] did not reach tolerance: estimate "
               << total << ", error " << err;
            throw NumericalError(os.str());
        }
        std::pop_heap(heap.begin(), heap.end());
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            if (!opts.strict) {
                heap.push_back(worst);
                std::push_heap(heap.begin(), heap.end());
                break;
            }
            throw NumericalError("quadrature interval collapsed below machine resolution");
        }
        heap.push_back(gauss_kronrod(f, worst.a, mid));
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(gauss_kronrod(f, mid, worst.b));
        std::push_heap(heap.begin(), heap.end());
        evals += 30;
        ++panels;
        // Full re-summation keeps rounding drift out of the running totals.
        CompensatedSum v, e;
        for (const Panel& p : heap) {
            v += p.value;
            e += p.error;
        }
        total = v.value();
        err = e.value();
        if (!std::isfinite(total)) throw NumericalError("quadrature produced a non-finite value");
    }
    return {total, err, evals};
}

double find_root_increasing(const std::function<double(double)>& f, double lo, double hi,
                            int digits, int max_iter) {
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(flo < 0.0 && fhi > 0.0)) {
        std::ostringstream os;
        os << "root not bracketed on [" << lo << ", " << hi << "]: f(lo)=" << flo
           << ", f(hi)=" << fhi;
        throw SolverError(os.str());
    }
    std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
    const auto [x0, x1] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(digits), iters);
    if (iters >= static_cast<std::uintmax_t>(max_iter))
        throw SolverError("root finder exhausted its iteration budget");
    return 0.5 * (x0 + x1);
}

double find_root_newton(const std::function<ValueSlope(double)>& f, double guess, double step_tol,
                        double max_step, int max_iter) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double lo = -inf, hi = inf, x = guess;
    for (int it = 0; it < max_iter; ++it) {
        const ValueSlope v = f(x);
        if (!std::isfinite(v.value)) throw SolverError("non-finite value in Newton iteration");
        if (v.value == 0.0) return x;
        if (v.value < 0.0)
            lo = x;
        else
            hi = x;
        double next = v.slope > 0.0 ? x - v.value / v.slope : inf;
        const double tol = step_tol * std::max(1.0, std::abs(x));
        if (std::abs(next - x) <= tol) return next;
        if (std::isfinite(lo) && std::isfinite(hi)) {
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        } else {
            const double dir = v.value < 0.0 ? 1.0 : -1.0;
            if (!std::isfinite(next) || (next - x) * dir <= 0.0 || std::abs(next - x) > max_step)
                next = x + dir * max_step;
        }
        if (std::abs(next - x) <= tol) return next;
        x = next;
    }
    throw SolverError("Newton iteration exhausted its budget");
}

void set_thread_count(unsigned n) {
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    g_threads = n;
}

unsigned thread_count() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(g_threads, n));
    // Nested loops run inline on the calling worker.
    if (workers <= 1 || t_in_parallel) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        t_in_parallel = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure) failure = std::current_exception();
                next.store(n);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace condlab
