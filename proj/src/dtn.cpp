#include "cuspdet/dtn.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cuspdet/error.hpp"
#include "cuspdet/specfun.hpp"

namespace cuspdet::dtn {

namespace {

void require_beta(double beta)
{
    // beta = 1 is accepted: the cut at the cusp start itself
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
        std::ostringstream os;
        os << "beta=" << beta << " must be >= 1";
        throw Error(Errc::domain, os.str());
    }
}

}  // namespace

double n2_zero_symbol(int n, double beta)
{
    require_beta(beta);
    return 2.0 * M_PI * std::abs(n) * beta * beta;
}

Complex n2_symbol(Complex s, int n, double beta)
{
    require_beta(beta);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw Error(Errc::domain, "n2_symbol: non-finite s");
    if (n == 0) {
        if (s.real() == 0.5)
            throw Error(Errc::domain, "n2_symbol: zero mode is not defined on Re s = 1/2");
        return s.real() > 0.5 ? s - 1.0 : -s;
    }
    const double x = 2.0 * M_PI * std::abs(n) * beta * beta;
    if (x >= 700.0) throw Error(Errc::domain, "n2_symbol: 2 pi |n| beta^2 too large");
    if (s.imag() == 0.0) {
        const double nu_hi = std::fabs(s.real() + 0.5);
        const double nu_lo = std::fabs(s.real() - 0.5);
        // scaled values: the exp(x) factors cancel in the ratio
        const double r = specfun::bessel_k_scaled(nu_hi, x) / specfun::bessel_k_scaled(nu_lo, x);
        return -s + x * r;
    }
    if (std::fabs(s.imag()) > 10.0) throw Error(Errc::domain, "n2_symbol: |Im s| > 10 not supported");
    const Complex hi = specfun::bessel_k_scaled(s + 0.5, x);
    const Complex lo = specfun::bessel_k_scaled(s - 0.5, x);
    return -s + x * hi / lo;
}

void SplitInputs::validate() const
{
    const double v[] = {det_compact, det_cusp_modes, detstar_R, area, boundary_length};
    for (double d : v)
        if (!(d > 0.0) || !std::isfinite(d)) throw Error(Errc::domain, "SplitInputs: all inputs must be positive");
}

double splitting_det(const SplitInputs& in)
{
    in.validate();
    return in.area / in.boundary_length * in.detstar_R * in.det_compact * in.det_cusp_modes;
}

}  // namespace cuspdet::dtn
