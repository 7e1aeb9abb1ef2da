#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "hetsec/errors.hpp"

namespace hetsec {

/// Normalized sinc, sin(pi x)/(pi x), for x in (0, 1).  That open interval
/// covers every use in the model (argument 2/alpha with alpha > 2).
inline double sinc_norm(double x) {
    if (!(x > 0.0) || !(x < 1.0))
        throw NumericalError("sinc_norm: argument must lie in (0, 1)");
    const double pix = M_PI * x;
    return std::sin(pix) / pix;
}

/// Error function.  Thin wrapper over the C library implementation, which is
/// accurate to a few ulp; kept as a named operation so callers and tests bind
/// to one symbol.
inline double erf(double x) {
    if (std::isnan(x)) throw NumericalError("erf: argument must not be NaN");
    return std::erf(x);
}

namespace detail {

// Power series sum_{n>=0} (a)_n (b)_n / ((c)_n n!) x^n for |x| < 1.  Terms
// are built by the ratio recurrence; stops once |term| <= cutoff * |sum|.
inline double hyp_series(double a, double b, double c, double x, double cutoff) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 2000000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if (term == 0.0 || std::abs(term) <= cutoff * std::abs(sum)) return sum;
    }
    throw NumericalError("gauss_2f1: series did not converge (x = " + std::to_string(x) + ")");
}

inline bool near_integer(double v, double tol = 1e-9) {
    return std::abs(v - std::round(v)) < tol;
}

// Gamma-function prefactor Gamma(c)Gamma(b-a) / (Gamma(b)Gamma(c-a)),
// computed as zero when the denominator sits on a pole.
inline double gamma_ratio(double c, double bma, double b, double cma) {
    if ((b <= 0.0 && near_integer(b)) || (cma <= 0.0 && near_integer(cma))) return 0.0;
    return std::tgamma(c) * std::tgamma(bma) / (std::tgamma(b) * std::tgamma(cma));
}

}  // namespace detail

/// Gauss hypergeometric function 2F1(a, b; c; z) restricted to z <= 0, the
/// only region the interference model evaluates.
///
/// Moderate arguments are mapped into [0, 1) with the Pfaff transformation
///     2F1(a, b; c; z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
/// and summed as a power series.  For very negative z the transformed series
/// would need millions of terms, so the z -> 1/z connection formula
/// (DLMF 15.8.2) is used instead; it requires a - b to be non-integral, which
/// holds for every parameter family of the model when alpha > 2.
/// Relative accuracy target: 1e-10.
inline double gauss_2f1(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z))
        throw NumericalError("gauss_2f1: arguments must be finite");
    if (z > 0.0)
        throw NumericalError("gauss_2f1: argument z must be <= 0");
    if (c <= 0.0 && detail::near_integer(c))
        throw NumericalError("gauss_2f1: c must not be a non-positive integer");
    if (z == 0.0) return 1.0;

    constexpr double kCutoff = 1e-12;  // rel_tol 1e-10 with two guard digits
    const double w = z / (z - 1.0);    // in (0, 1)

    if (w <= 0.98) {
        return std::pow(1.0 - z, -a) * detail::hyp_series(a, c - b, c, w, kCutoff);
    }

    if (detail::near_integer(a - b))
        throw NumericalError("gauss_2f1: a - b integral is unsupported for large |z|");

    // DLMF 15.8.2 about z = infinity; 1/z is tiny here so both series are short.
    const double iz = 1.0 / z;
    const double t1 = detail::gamma_ratio(c, b - a, b, c - a) * std::pow(-z, -a) *
                      detail::hyp_series(a, a - c + 1.0, a - b + 1.0, iz, kCutoff);
    const double t2 = detail::gamma_ratio(c, a - b, a, c - b) * std::pow(-z, -b) *
                      detail::hyp_series(b, b - c + 1.0, b - a + 1.0, iz, kCutoff);
    return t1 + t2;
}

}  // namespace hetsec
