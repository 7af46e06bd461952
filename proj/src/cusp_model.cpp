#include "cuspdet/cusp_model.hpp"

#include <cmath>
#include <sstream>

#include "cuspdet/error.hpp"

namespace cuspdet::cusp_model {

namespace {

void require_start(double a)
{
    if (!(a >= 1.0) || !std::isfinite(a)) {
        std::ostringstream os;
        os << "cusp start a=" << a << " must be >= 1";
        throw Error(Errc::domain, os.str());
    }
}

void require_time(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(Errc::domain, "t must be positive");
}

}  // namespace

void CuspFamily::validate() const
{
    if (starts.empty()) throw Error(Errc::domain, "CuspFamily needs at least one cusp");
    for (double a : starts) require_start(a);
}

double CuspFamily::log_sum() const
{
    double s = 0.0;
    for (double a : starts) s += std::log(a);
    return s;
}

double cusp_heat_kernel(double a, double y, double yp, double t)
{
    require_start(a);
    require_time(t);
    if (!(y > 0.0) || !(yp > 0.0)) throw Error(Errc::domain, "cusp_heat_kernel: y, y' must be positive");
    if (y <= a || yp <= a) return 0.0;
    const double d = std::log(y / yp);
    const double s = std::log(y) + std::log(yp) - 2.0 * std::log(a);
    // difference of Gaussians; expm1 keeps it accurate when s and d are close
    const double g1 = -d * d / (4.0 * t);
    const double g2 = -s * s / (4.0 * t);
    const double braces = std::exp(g1) * -std::expm1(g2 - g1);
    return std::exp(-0.25 * t) / std::sqrt(4.0 * M_PI * t) * std::sqrt(y * yp) * braces;
}

double relative_cusp_trace(double a, double t)
{
    require_start(a);
    require_time(t);
    return -std::exp(-0.25 * t) / std::sqrt(4.0 * M_PI * t) * std::log(a);
}

double relative_cusp_trace(const CuspFamily& family, double t)
{
    family.validate();
    require_time(t);
    return -std::exp(-0.25 * t) / std::sqrt(4.0 * M_PI * t) * family.log_sum();
}

}  // namespace cuspdet::cusp_model
