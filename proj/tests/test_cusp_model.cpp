#include <doctest.h>

#include <cmath>

#include "cuspdet/cusp_model.hpp"
#include "cuspdet/error.hpp"
#include "oracles.hpp"

using namespace cuspdet;

TEST_CASE("cusp heat kernel")
{
    // symmetric, Dirichlet at y = a, zero below
    CHECK(cusp_model::cusp_heat_kernel(2.0, 3.0, 5.0, 0.7) == doctest::Approx(cusp_model::cusp_heat_kernel(2.0, 5.0, 3.0, 0.7)).epsilon(1e-15));
    CHECK(cusp_model::cusp_heat_kernel(2.0, 1.5, 3.0, 1.0) == 0.0);
    CHECK(cusp_model::cusp_heat_kernel(2.0, 2.0 * (1 + 1e-9), 3.0, 1.0) < 1e-8);
    CHECK(cusp_model::cusp_heat_kernel(1.0, 4.0, 4.0, 0.5) > 0.0);
    CHECK_THROWS_AS(cusp_model::cusp_heat_kernel(0.5, 2.0, 2.0, 1.0), Error);
    CHECK_THROWS_AS(cusp_model::cusp_heat_kernel(1.0, 2.0, 2.0, 0.0), Error);
}

TEST_CASE("heat equation: semigroup property in the log variable")
{
    // int p(y,z,t) p(z,y',s) z^-2 dz = p(y,y',t+s)
    const double a = 1.5, y = 3.0, yp = 4.0, t = 0.4, s = 0.9;
    auto f = [&](double r) {
        const double z = std::exp(r);
        return cusp_model::cusp_heat_kernel(a, y, z, t) * cusp_model::cusp_heat_kernel(a, z, yp, s) / z;
    };
    const double la = std::log(a);
    const double lhs = oracle::tanh_sinh(f, la, la + 40.0, 1e-13);
    CHECK(lhs == doctest::Approx(cusp_model::cusp_heat_kernel(a, y, yp, t + s)).epsilon(1e-11));
}

TEST_CASE("relative cusp trace")
{
    CHECK(cusp_model::relative_cusp_trace(1.0, 2.0) == 0.0);
    const double t = 0.8;
    const double expect = -std::exp(-t / 4) / std::sqrt(4 * M_PI * t) * std::log(3.0);
    CHECK(cusp_model::relative_cusp_trace(3.0, t) == doctest::Approx(expect).epsilon(1e-15));
    // additive over cusps
    cusp_model::CuspFamily fam{{2.0, 3.0, 1.0}};
    CHECK(cusp_model::relative_cusp_trace(fam, t) ==
          doctest::Approx(cusp_model::relative_cusp_trace(2.0, t) + cusp_model::relative_cusp_trace(3.0, t)).epsilon(1e-15));
    CHECK(cusp_model::CuspFamily::reference(4).log_sum() == 0.0);
    CHECK_THROWS_AS(cusp_model::CuspFamily{{}}.validate(), Error);
    CHECK_THROWS_AS((cusp_model::CuspFamily{{1.0, 0.9}}.validate()), Error);
}

TEST_CASE("relative cusp trace by quadrature of the kernel difference")
{
    for (double a : {2.0, 10.0})
        for (double t : {0.1, 10.0}) {
            const double la = std::log(a);
            auto f = [&](double r) {
                const double y = std::exp(r);
                return (cusp_model::cusp_heat_kernel(a, y, y, t) - cusp_model::cusp_heat_kernel(1.0, y, y, t)) / y;
            };
            const double end = la + 40.0 * (std::sqrt(t) + 1.0);
            const double q = oracle::tanh_sinh(f, 0.0, la, 1e-12) + oracle::tanh_sinh(f, la, end, 1e-12);
            CHECK(std::fabs(q - cusp_model::relative_cusp_trace(a, t)) < 1e-10);
        }
}
