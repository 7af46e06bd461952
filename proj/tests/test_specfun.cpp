#include <doctest.h>

#include <cmath>
#include <complex>

#include "cuspdet/error.hpp"
#include "cuspdet/quadrature.hpp"
#include "cuspdet/specfun.hpp"
#include "oracles.hpp"

using namespace cuspdet;
using C = std::complex<double>;

namespace {
double rel(C a, C b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("log gamma and digamma against reference values")
{
    CHECK(rel(specfun::log_gamma(C(1, 2)), C(-1.8760787864309293412, 0.12964631630978831138)) < 1e-14);
    CHECK(rel(specfun::digamma(C(1, 1)), C(0.094650320622476977272, 1.0766740474685811741)) < 1e-14);
    // log Gamma(1) = log Gamma(2) = 0, psi(1) = -gamma
    CHECK(std::abs(specfun::log_gamma(C(1, 0))) < 1e-15);
    CHECK(std::abs(specfun::log_gamma(C(2, 0))) < 1e-15);
    CHECK(std::abs(specfun::digamma(C(1, 0)) + 0.57721566490153286061) < 1e-15);
}

TEST_CASE("gamma function identities")
{
    for (C z : {C(0.3, 0.2), C(2.5, -4.0), C(10.0, 30.0), C(-2.5, 0.7)}) {
        // recurrences
        CHECK(std::abs(specfun::digamma(z + 1.0) - specfun::digamma(z) - 1.0 / z) < 1e-13 * (1 + std::abs(specfun::digamma(z))));
        const C lg = specfun::log_gamma(z + 1.0) - specfun::log_gamma(z) - std::log(z);
        CHECK(std::abs(std::exp(lg) - 1.0) < 1e-13);
        // conjugate symmetry
        CHECK(rel(specfun::log_gamma(std::conj(z)), std::conj(specfun::log_gamma(z))) < 1e-15);
    }
    // real axis against the C library
    for (double x : {0.1, 0.7, 1.5, 3.3, 17.0, 150.0})
        CHECK(std::fabs(specfun::log_gamma(C(x, 0)).real() - std::lgamma(x)) < 1e-14 * (1 + std::fabs(std::lgamma(x))));
}

TEST_CASE("erfc and erfcx")
{
    CHECK(rel(specfun::erfc(C(1, 0)), C(0.15729920705028513066, 0)) < 2e-15);
    for (double x : {-3.0, -0.5, 0.0, 0.3, 1.7, 4.0, 9.0})
        CHECK(std::fabs(specfun::erfc(C(x, 0)).real() - std::erfc(x)) <= 1e-14 * std::erfc(x) + 1e-300);
    for (C z : {C(0.4, 1.3), C(3.0, -2.0), C(-1.2, 0.8), C(6.0, 9.0)}) {
        // erfc(z) + erfc(-z) = 2
        CHECK(std::abs(specfun::erfc(z) + specfun::erfc(-z) - 2.0) < 1e-14 * (2.0 + std::abs(specfun::erfc(z))));
        CHECK(rel(specfun::erfc(std::conj(z)), std::conj(specfun::erfc(z))) < 1e-14);
        CHECK(rel(specfun::erfcx(z), std::exp(z * z) * specfun::erfc(z)) < 1e-12);
    }
    // far right half plane: erfcx ~ 1/(z sqrt pi)
    const C z(400.0, 30.0);
    CHECK(rel(specfun::erfcx(z), 1.0 / (z * std::sqrt(M_PI)) * (1.0 - 0.5 / (z * z))) < 1e-9);
}

TEST_CASE("Bessel K of real order")
{
    CHECK(std::fabs(specfun::bessel_k(0.0, 10.0) / 1.7780062316167651811e-5 - 1) < 1e-14);
    CHECK(std::fabs(specfun::bessel_k(0.3, 0.01) / 6.8901026382927695432 - 1) < 1e-14);
    CHECK(std::fabs(specfun::bessel_k(50.0, 0.5) / 3.8505298918268987101e92 - 1) < 1e-13);
    CHECK(std::fabs(specfun::bessel_k(2.7, 650.0) / 2.5266209050206937458e-284 - 1) < 1e-13);
    CHECK(std::fabs(specfun::bessel_k(10.2, 3.3) / 1289.9486451246169117 - 1) < 1e-14);
    double worst = 0;
    for (double nu : {0.0, 0.25, 0.5, 1.0, 2.9, 7.5, 20.0})
        for (double x : {1e-3, 0.1, 1.0, 1.99, 2.01, 5.0, 40.0, 300.0}) {
            const double o = oracle::bessel_k_std(nu, x);
            if (o == 0.0 || !std::isfinite(o)) continue;
            worst = std::max(worst, std::fabs(specfun::bessel_k(nu, x) / o - 1));
        }
    CHECK(worst < 1e-13);
    // K_{1/2}(x) = sqrt(pi/2x) e^{-x}
    CHECK(std::fabs(specfun::bessel_k_scaled(0.5, 3.0) - std::sqrt(M_PI / 6.0)) < 1e-15);
    CHECK_THROWS_AS(specfun::bessel_k(51.0, 1.0), Error);
    CHECK_THROWS_AS(specfun::bessel_k(1.0, 0.0), Error);
}

TEST_CASE("Bessel K of complex order reduces to the real order")
{
    for (double nu : {0.3, 1.5, 4.0})
        for (double x : {1.0, 3.0, 20.0}) {
            const C k = specfun::bessel_k_scaled(C(nu, 0.0), x);
            CHECK(std::fabs(k.real() / specfun::bessel_k_scaled(nu, x) - 1) < 1e-12);
            CHECK(std::fabs(k.imag()) < 1e-12 * std::fabs(k.real()));
        }
    // K_{i a}(x) is real
    CHECK(std::fabs(specfun::bessel_k_scaled(C(0.0, 2.0), 5.0).imag()) < 1e-13);
}

TEST_CASE("adaptive quadrature")
{
    specfun::QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    const auto g = specfun::integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY, spec);
    CHECK(std::fabs(g.value - std::sqrt(M_PI)) < 1e-13);
    CHECK(std::fabs(specfun::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec).value - 2.0) < 1e-11);
    // reversed limits
    CHECK(std::fabs(specfun::integrate([](double x) { return x; }, 1.0, 0.0, spec).value + 0.5) < 1e-15);
    // non-finite integrand
    CHECK_THROWS_AS(specfun::integrate([](double) { return double(NAN); }, 0.0, 1.0, spec), Error);
    // unreachable tolerance reports what it had
    spec.max_subdivisions = 5;
    try {
        specfun::integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, spec);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.code() == Errc::non_convergence);
        CHECK(std::isfinite(e.best_estimate));
    }
}

TEST_CASE("the damped integrand matches the real-order Bessel K")
{
    // K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt, independently by tanh-sinh
    for (double nu : {0.0, 1.3}) {
        const double x = 2.0;
        const double o = oracle::tanh_sinh(
            [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(nu * t); }, 0.0, 8.0, 1e-14);
        CHECK(std::fabs(specfun::bessel_k(nu, x) / o - 1) < 1e-12);
    }
}
