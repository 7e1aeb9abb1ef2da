#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "hetsec/quadrature.hpp"
#include "hetsec/specfun.hpp"

using namespace hetsec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("normalized sinc") {
    // sin(pi x)/(pi x) at x = 2/3.5 = 4/7; reference from 30-digit arithmetic.
    REQUIRE_THAT(sinc_norm(2.0 / 3.5), WithinRel(0.5430760873369946, 1e-12));
    REQUIRE_THAT(sinc_norm(0.5), WithinRel(2.0 / M_PI, 1e-12));
    // Approaching the right edge stays finite and positive.
    const double near_one = sinc_norm(1.0 - 1e-8);
    REQUIRE(near_one > 0.0);
    REQUIRE(near_one < 1e-7);

    REQUIRE_THROWS_AS(sinc_norm(0.0), NumericalError);
    REQUIRE_THROWS_AS(sinc_norm(1.0), NumericalError);
    REQUIRE_THROWS_AS(sinc_norm(-0.3), NumericalError);
    REQUIRE_THROWS_AS(sinc_norm(1.7), NumericalError);
}

TEST_CASE("error function against its defining integral") {
    REQUIRE_THAT(hetsec::erf(1.0), WithinAbs(0.8427007929497149, 1e-12));
    REQUIRE(hetsec::erf(0.0) == 0.0);

    // Independent oracle: (2/sqrt(pi)) * integral of exp(-t^2) over [0, x].
    for (double x : {0.3, 1.0, 2.5}) {
        const double oracle =
            2.0 / std::sqrt(M_PI) *
            integrate([](double t) { return std::exp(-t * t); }, 0.0, x,
                      {1e-10, 1e-14, 4000});
        REQUIRE_THAT(hetsec::erf(x), WithinAbs(oracle, 1e-10));
        REQUIRE_THAT(hetsec::erf(-x), WithinAbs(-oracle, 1e-10));
    }
    REQUIRE_THROWS_AS(hetsec::erf(std::numeric_limits<double>::quiet_NaN()),
                      NumericalError);
}

TEST_CASE("gauss_2f1 closed-form identities") {
    // 2F1(1,1;2;z) = -ln(1-z)/z  ->  ln 2 at z = -1.
    REQUIRE_THAT(gauss_2f1(1.0, 1.0, 2.0, -1.0), WithinRel(std::log(2.0), 1e-10));
    // 2F1(1, 1/2; 3/2; -z^2) = atan(z)/z  ->  pi/4 at z = 1.
    REQUIRE_THAT(gauss_2f1(1.0, 0.5, 1.5, -1.0), WithinRel(M_PI / 4.0, 1e-10));
    REQUIRE(gauss_2f1(0.7, 1.3, 2.1, 0.0) == 1.0);
}

TEST_CASE("gauss_2f1 against high-precision references") {
    const double a = 3.5;
    // Family used by the BS-interference kernel: 2F1(1, 1-2/a; 2-2/a; z).
    const double bA = 1.0 - 2.0 / a, cA = 2.0 - 2.0 / a;
    REQUIRE_THAT(gauss_2f1(1.0, bA, cA, -0.1), WithinRel(0.9716486551922456, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bA, cA, -1.0), WithinRel(0.8051933560780411, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bA, cA, -3.1622776601683795),
                 WithinRel(0.6289651652255189, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bA, cA, -100.0), WithinRel(0.18441948570051462, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bA, cA, -1e4), WithinRel(0.026588362253077922, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bA, cA, -1e8), WithinRel(5.147813768119415e-4, 1e-10));

    // Family used by the guard-disc kernel: 2F1(1, 2/a; 1+2/a; z).
    const double bB = 2.0 / a, cB = 1.0 + 2.0 / a;
    REQUIRE_THAT(gauss_2f1(1.0, bB, cB, -0.1), WithinRel(0.9657101402388305, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bB, cB, -1.0), WithinRel(0.7677714656027386, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bB, cB, -31.62), WithinRel(0.21409472852267948, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bB, cB, -1e4), WithinRel(0.009403961664878896, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bB, cB, -1e8), WithinRel(4.938482390162529e-5, 1e-10));
    REQUIRE_THAT(gauss_2f1(1.0, bB, cB, -1e12), WithinRel(2.558551712656097e-7, 1e-10));

    // Generic parameter spots.
    REQUIRE_THAT(gauss_2f1(0.3, 1.7, 2.2, -5.0), WithinRel(0.6324446542193294, 1e-10));
    REQUIRE_THAT(gauss_2f1(2.5, 0.5, 3.0, -0.75), WithinRel(0.7869323408743677, 1e-10));
}

namespace {
// Direct defining series, valid for |z| < 1; deliberately separate from the
// Pfaff-transformed production path.
double direct_series(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 200000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= 1e-14 * std::abs(sum)) break;
    }
    return sum;
}
}  // namespace

TEST_CASE("Pfaff transform agrees with the defining series inside |z| < 1") {
    const double a = 3.5;
    for (double z = -0.9; z < -1e-3; z += 0.1) {
        for (auto [pa, pb, pc] : {std::tuple{1.0, 1.0 - 2.0 / a, 2.0 - 2.0 / a},
                                  std::tuple{1.0, 2.0 / a, 1.0 + 2.0 / a},
                                  std::tuple{0.4, 0.9, 1.7}}) {
            REQUIRE_THAT(gauss_2f1(pa, pb, pc, z),
                         WithinRel(direct_series(pa, pb, pc, z), 1e-9));
        }
    }
}

TEST_CASE("gauss_2f1 against its Euler integral for both model families") {
    // For a = 1, c = b + 1:  2F1(1, b; b+1; z) = b * I, with
    // I = integral over t in [0,1] of t^{b-1}/(1 - z t) dt; substituting
    // t = x^{1/b} removes the endpoint singularity:
    // 2F1 = integral over x in [0,1] of 1/(1 - z x^{1/b}) dx.
    for (double alpha : {3.0, 3.5, 4.0, 5.5}) {
        for (double b : {1.0 - 2.0 / alpha, 2.0 / alpha}) {
            for (double z : {-0.5, -5.0, -50.0, -1e4}) {
                const double oracle = integrate(
                    [&](double x) { return 1.0 / (1.0 - z * std::pow(x, 1.0 / b)); }, 0.0,
                    1.0, {1e-9, 1e-14, 4000});
                REQUIRE_THAT(gauss_2f1(1.0, b, b + 1.0, z), WithinRel(oracle, 1e-7));
            }
        }
    }
}

TEST_CASE("gauss_2f1 domain errors") {
    REQUIRE_THROWS_AS(gauss_2f1(1.0, 0.5, 1.5, 0.5), NumericalError);   // z > 0
    REQUIRE_THROWS_AS(gauss_2f1(1.0, 0.5, 0.0, -1.0), NumericalError);  // c pole
    REQUIRE_THROWS_AS(gauss_2f1(1.0, 0.5, -2.0, -1.0), NumericalError); // c pole
    REQUIRE_THROWS_AS(gauss_2f1(1.0, 0.5, 1.5,
                                std::numeric_limits<double>::quiet_NaN()),
                      NumericalError);
}
