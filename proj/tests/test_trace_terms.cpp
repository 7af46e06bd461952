#include <doctest.h>

#include <cmath>

#include "cuspdet/error.hpp"
#include "cuspdet/trace_terms.hpp"
#include "oracles.hpp"

using namespace cuspdet;
using namespace cuspdet::trace;

TEST_CASE("identity term against direct quadrature")
{
    const double area = 2 * M_PI;
    for (double t : {0.05, 0.5, 3.0}) {
        auto f = [t](double l) { return std::exp(-t * (0.25 + l * l)) * l * std::tanh(M_PI * l); };
        const double q = 2.0 * oracle::tanh_sinh(f, 0.0, 60.0 / std::sqrt(t), 1e-13);
        CHECK(identity_term(area, t) == doctest::Approx(area / (4 * M_PI) * q).epsilon(1e-11));
        const double split = area / (4 * M_PI * t) - area / (12 * M_PI);
        CHECK(identity_term_remainder(area, t) == doctest::Approx(identity_term(area, t) - split).epsilon(1e-9));
    }
    // remainder is O(t) at small t
    CHECK(std::fabs(identity_term_remainder(4 * M_PI, 1e-6)) < 1e-5);
}

TEST_CASE("hyperbolic class trace against the long double k-sum")
{
    for (double ell : {5e-5, 2e-3, 0.7, 4.0})
        for (double t : {0.2, 1.0, 5.0}) {
            const long double o = std::exp(-0.25L * t) / std::sqrt(16.0L * M_PI * t) * oracle::hyperbolic_ksum_direct(ell, t);
            CHECK(std::fabs(hyperbolic_class_trace(ell, t) / double(o) - 1.0) < 1e-11);
        }
}

TEST_CASE("hyperbolic trace is additive over pinched and unpinched classes")
{
    fuchsian::LengthSpectrum s;
    s.surface = {1, 1, 1};
    s.cutoff = 5;
    s.entries = {{0.02, 1, true}, {1.3, 2, false}, {2.5, 4, false}, {0.02, 1, true}};
    fuchsian::LengthSpectrum rest = s;
    rest.entries = {{1.3, 2, false}, {2.5, 4, false}};
    for (double t : {0.3, 2.0}) {
        const double all = hyperbolic_trace(s, t, false), pinched = hyperbolic_trace(s, t, true);
        CHECK(all - pinched == doctest::Approx(hyperbolic_trace(rest, t, false)).epsilon(1e-12));
        CHECK(pinched == doctest::Approx(2.0 * hyperbolic_class_trace(0.02, t)).epsilon(1e-14));
    }
    CHECK(hyperbolic_trace(rest, 1.0, true) == 0.0);
}

TEST_CASE("P(t) reference values and small-t series")
{
    CHECK(parabolic_p(1e-3) == doctest::Approx(140.0886848208941).epsilon(1e-12));
    CHECK(parabolic_p(1.0) == doctest::Approx(-0.3488780809901351).epsilon(1e-12));
    for (double t : {1e-5, 1e-3, 0.05})
        CHECK(parabolic_p_asymptotic(t, parabolic_p_max_terms) == doctest::Approx(parabolic_p(t)).epsilon(1e-12));
    // each extra term helps at small t
    const double t = 0.01, p = parabolic_p(t);
    double prev = INFINITY;
    for (int k : {0, 1, 2, 4}) {
        const double e = std::fabs(parabolic_p_asymptotic(t, k) - p);
        CHECK(e < prev);
        prev = e;
    }
    CHECK_THROWS_AS(parabolic_p_asymptotic(2.0, 3), Error);
}

TEST_CASE("P(t) decays like e^{-t/4}")
{
    const double r = parabolic_p(40.0) / parabolic_p(36.0);
    CHECK(std::log(std::fabs(r)) / 4.0 == doctest::Approx(-0.25).epsilon(0.05));
}

TEST_CASE("parabolic block remainder has no cancellation")
{
    for (double t : {1e-6, 1e-3, 0.05, 0.5, 3.0}) {
        const double sing = std::log(t) / (2 * std::sqrt(M_PI * t)) +
                            (0.57721566490153286061 + std::log(2.0)) / (2 * std::sqrt(M_PI * t));
        CHECK(parabolic_block_remainder(t) == doctest::Approx(parabolic_block(t) - sing).epsilon(1e-9).scale(1e-9));
    }
}

TEST_CASE("scattering identity")
{
    ScatteringModel m;
    m.q = 2.0;
    m.resonances = {{{0.3, 0.0}, 1}};
    CHECK(scattering_integral(m, 1.0) == doctest::Approx(0.2388918094454139).epsilon(1e-12));
    CHECK(scattering_erfc_sum(m, 1.0) == doctest::Approx(0.2388918094454139).epsilon(1e-12));
    m.resonances = {{{-0.2, 1.5}, 2}, {{-0.2, -1.5}, 2}, {{0.1, 0.0}, -1}, {{-0.8, 3.0}, 1}, {{-0.8, -3.0}, 1}};
    m.q = 0.6;
    for (double t : {0.3, 1.0, 5.0})
        CHECK(scattering_integral(m, t) == doctest::Approx(scattering_erfc_sum(m, t)).epsilon(1e-10));
}

TEST_CASE("scattering model validation")
{
    ScatteringModel m;
    m.resonances = {{{0.2, 1.0}, 1}};
    CHECK_THROWS_AS(m.validate(), Error);  // not conjugate closed
    m.resonances = {{{0.6, 0.0}, 1}};
    CHECK_THROWS_AS(m.validate(), Error);
    m.resonances = {};
    m.phi_half = 0.5;
    CHECK_THROWS_AS(m.validate(), Error);
    m.phi_half = -1;
    m.trace_c_half = 1;
    CHECK_THROWS_AS(m.validate(2), Error);
    m.trace_c_half = 0;
    CHECK_NOTHROW(m.validate(2));
    CHECK_THROWS_AS(phi_log_deriv({{{{0.3, 0.0}, 1}}, 1.0, 1.0, 0.0}, Complex(0.3, 0.0)), Error);
}

TEST_CASE("relative trace: truncation stability for the thrice-punctured sphere")
{
    const auto g = fuchsian::builtin_group("thrice-punctured-sphere");
    const auto s8 = fuchsian::enumerate_length_spectrum(g, 8.0, 5000);
    const auto s10 = fuchsian::enumerate_length_spectrum(g, 10.0, 5000);
    const auto st = cusp_model::CuspFamily::reference(3);
    CHECK(std::fabs(relative_heat_trace(g.surface, s8, st, 1.0) - relative_heat_trace(g.surface, s10, st, 1.0)) < 1e-6);
    const auto b = relative_heat_trace_terms(g.surface, s10, st, 1.0);
    CHECK(b.total == doctest::Approx(b.identity + b.hyperbolic + b.cusp_block + b.starts).epsilon(1e-14));
}
