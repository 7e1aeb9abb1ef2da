#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hetsec/errors.hpp"

namespace hetsec {

/// Tolerances and budget for adaptive quadrature.  The target accuracy of an
/// integral I is max(abs_tol, rel_tol * |I|).
struct QuadratureSettings {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair.  Nodes are the non-negative
// abscissae on [-1, 1]; even indices are Kronrod-only points, odd indices
// carry both rules.  Node 7 is the centre.
constexpr double kGkNode[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeight[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeight[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const auto eval = [&](double x) {
        const double y = f(x);
        if (!std::isfinite(y))
            throw NumericalError("integrate: non-finite integrand value at x = " +
                                 std::to_string(x));
        return y;
    };

    const double fc = eval(mid);
    double kronrod = kKronrodWeight[7] * fc;
    double gauss = kGaussWeight[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGkNode[i];
        const double pair = eval(mid - dx) + eval(mid + dx);
        kronrod += kKronrodWeight[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeight[i / 2] * pair;
    }
    const double value = kronrod * half;
    const double error = std::abs((kronrod - gauss) * half);
    return {a, b, value, error};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [lo, hi].
/// Subdivides the interval with the largest error estimate until the summed
/// error meets the tolerance; throws QuadratureFailure (with the best
/// estimate) if the subdivision budget is exhausted first.
template <class F>
double integrate_finite(F&& f, double lo, double hi, const QuadratureSettings& q = {}) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw NumericalError("integrate_finite: bounds must be finite");
    if (lo == hi) return 0.0;
    if (lo > hi) return -integrate_finite(f, hi, lo, q);

    std::priority_queue<detail::Panel> panels;
    panels.push(detail::gk15(f, lo, hi));
    double value = panels.top().value;
    double error = panels.top().error;

    for (int splits = 0; splits < q.max_subdivisions; ++splits) {
        if (error <= std::max(q.abs_tol, q.rel_tol * std::abs(value))) return value;
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadratureFailure("integrate_finite: interval too small to refine near x = " +
                                        std::to_string(mid),
                                    value, error);
        const detail::Panel left = detail::gk15(f, worst.a, mid);
        const detail::Panel right = detail::gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    if (error <= std::max(q.abs_tol, q.rel_tol * std::abs(value))) return value;
    throw QuadratureFailure("integrate_finite: subdivision budget exhausted", value, error);
}

/// Integrate f over [lo, hi].  hi may be +infinity, in which case the upper
/// truncation point grows by doubling stretches (starting at scale_hint above
/// lo) until two consecutive stretches contribute below tolerance, and a
/// power-law fit of the integrand tail confirms the remainder is negligible.
template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureSettings& q = {},
                 double scale_hint = 1.0) {
    if (!std::isfinite(lo)) throw NumericalError("integrate: lower bound must be finite");
    if (std::isfinite(hi)) return integrate_finite(f, lo, hi, q);
    if (std::isnan(hi) || hi < lo) throw NumericalError("integrate: bad upper bound");
    if (!(scale_hint > 0.0) || !std::isfinite(scale_hint))
        throw NumericalError("integrate: scale_hint must be positive and finite");

    constexpr int kMaxStretches = 64;
    double total = 0.0;
    double a = lo;
    double width = scale_hint;
    int quiet = 0;

    for (int k = 0; k < kMaxStretches; ++k) {
        const double b = a + width;
        const double part = integrate_finite(f, a, b, q);
        total += part;
        const double needed = std::max(q.abs_tol, q.rel_tol * std::abs(total));
        quiet = (std::abs(part) < needed) ? quiet + 1 : 0;
        if (quiet >= 2) {
            // Power-law tail estimate: if f ~ C x^-p beyond b, the remainder
            // is f(2b) * 2b / (p - 1).  Exponential tails give p >> 1 here.
            const double f1 = std::abs(f(b));
            const double f2 = std::abs(f(2.0 * b));
            double tail = 0.0;
            if (f2 > 0.0 && f1 > f2) {
                const double p = std::log(f1 / f2) / std::log(2.0);
                if (p > 1.0) tail = f2 * 2.0 * b / (p - 1.0);
            } else if (f2 > 0.0) {
                tail = std::numeric_limits<double>::infinity();  // not decaying yet
            }
            if (tail <= needed) return total;
            quiet = 0;  // tail still matters; keep extending
        }
        a = b;
        width *= 2.0;
    }
    throw QuadratureFailure("integrate: semi-infinite range did not converge", total,
                            std::numeric_limits<double>::infinity());
}

}  // namespace hetsec
