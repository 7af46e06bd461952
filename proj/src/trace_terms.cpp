#include "cuspdet/trace_terms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <tuple>

#include "cuspdet/error.hpp"
#include "cuspdet/specfun.hpp"

namespace cuspdet::trace {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;
constexpr double sqrt_pi = 1.77245385090551602730;
constexpr double log2 = 0.69314718055994530942;

void require_time(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(Errc::domain, "t must be positive and finite");
}

// int_0^inf exp(-t l^2) l / (e^{2 pi l} + 1) dl, equals 1/48 at t = 0
double fermi_moment(double t)
{
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-18;
    spec.rel_tol = 1e-13;
    auto f = [t](double l) {
        const double e = std::exp(-2.0 * M_PI * l);
        return std::exp(-t * l * l) * l * e / (1.0 + e);
    };
    return specfun::integrate(f, 0.0, INFINITY, spec).value;
}

}  // namespace

void ScatteringModel::validate(int cusps) const
{
    if (!(q > 0.0) || !std::isfinite(q)) throw Error(Errc::domain, "ScatteringModel: q must be positive");
    if (phi_half != 1.0 && phi_half != -1.0) throw Error(Errc::domain, "ScatteringModel: phi_half must be +1 or -1");
    for (const auto& r : resonances) {
        if (!(r.rho.real() < 0.5) || !std::isfinite(r.rho.imag()))
            throw Error(Errc::domain, "ScatteringModel: resonances need Re rho < 1/2");
        if (r.order == 0) throw Error(Errc::domain, "ScatteringModel: resonance order must be nonzero");
    }
    // conjugate closure, matching orders
    auto key = [](const Resonance& r) { return std::make_tuple(r.rho.real(), r.rho.imag(), r.order); };
    std::vector<std::tuple<double, double, int>> a, b;
    for (const auto& r : resonances) {
        a.push_back(key(r));
        b.push_back({r.rho.real(), -r.rho.imag(), r.order});
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error(Errc::domain, "ScatteringModel: resonances not closed under conjugation");
    if (cusps > 0) {
        const double l2 = trace_c_half + cusps;
        if (l2 != std::floor(l2) || int(l2) % 2 != 0 || l2 < 0 || l2 > 2.0 * cusps)
            throw Error(Errc::domain, "ScatteringModel: Tr C(1/2) must be 2l - m with 0 <= l <= m");
    }
}

void EigenvalueList::validate(int components) const
{
    int zeros = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0)) throw Error(Errc::domain, "EigenvalueList: negative eigenvalue");
        if (i > 0 && values[i] < values[i - 1]) throw Error(Errc::domain, "EigenvalueList: not sorted");
        if (values[i] == 0.0) ++zeros;
    }
    if (zeros != components) throw Error(Errc::domain, "EigenvalueList: number of zero eigenvalues must equal components");
}

double identity_term(double area, double t)
{
    require_time(t);
    if (!(area > 0.0)) throw Error(Errc::domain, "identity_term: area must be positive");
    // l tanh(pi l) = l - 2 l/(e^{2 pi l}+1); the first part integrates to 1/t
    return area / (4.0 * M_PI) * std::exp(-0.25 * t) * (1.0 / t - 4.0 * fermi_moment(t));
}

double identity_term_remainder(double area, double t)
{
    require_time(t);
    if (!(area > 0.0)) throw Error(Errc::domain, "identity_term: area must be positive");
    // e^{-t/4}/t - 1/t = expm1(-t/4)/t, and 1/3 - 4 e^{-t/4} J(t) -> 1/4
    const double a = std::expm1(-0.25 * t) / t;
    const double b = 1.0 / 3.0 - 4.0 * std::exp(-0.25 * t) * fermi_moment(t);
    return area / (4.0 * M_PI) * (a + b);
}

namespace {

// Summation of f(k) = l/sinh(k l/2) exp(-(k l)^2/4t) for k >= 1.
double class_ksum(double ell, double t)
{
    auto f = [&](double k) {
        const double u = k * ell;
        return ell / std::sinh(0.5 * u) * std::exp(-u * u / (4.0 * t));
    };
    // terms below 1e-18 of the sum once u^2/4t > 41.5
    const double u_end = std::sqrt(4.0 * t * 41.5) + 1.0;
    const double k_needed = u_end / ell;
    constexpr double direct_limit = 2e5;
    if (k_needed <= direct_limit) {
        double sum = 0.0;
        for (long k = 1;; ++k) {
            const double term = f(double(k));
            sum += term;
            if (term <= 1e-18 * sum || term == 0.0) break;
        }
        return sum;
    }
    // Tiny ell: direct sum to K0, Euler-Maclaurin for the rest. f varies on the
    // scale K0 there, so the derivative corrections are O(K0^-4) relative.
    constexpr long K0 = 2000;
    double sum = 0.0;
    for (long k = 1; k < K0; ++k) sum += f(double(k));
    const double u0 = K0 * ell;
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-13;
    // int_{K0}^inf f(k) dk = int_{u0}^inf exp(-u^2/4t)/sinh(u/2) du, with u = e^v
    auto g = [t](double v) {
        const double u = std::exp(v);
        return std::exp(-u * u / (4.0 * t)) * u / std::sinh(0.5 * u);
    };
    const double integral = specfun::integrate(g, std::log(u0), std::log(u_end + 10.0), spec).value;
    const double k0 = double(K0);
    const double d1 = (f(k0 + 1) - f(k0 - 1)) / 2.0;
    const double d3 = (f(k0 + 2) - 2.0 * f(k0 + 1) + 2.0 * f(k0 - 1) - f(k0 - 2)) / 2.0;
    return sum + integral + 0.5 * f(k0) - d1 / 12.0 + d3 / 720.0;
}

}  // namespace

double hyperbolic_class_trace(double ell, double t)
{
    require_time(t);
    if (!(ell > 0.0)) throw Error(Errc::domain, "hyperbolic trace: length must be positive");
    return std::exp(-0.25 * t) / std::sqrt(16.0 * M_PI * t) * class_ksum(ell, t);
}

double hyperbolic_trace(const LengthSpectrum& spectrum, double t, bool pinched_only)
{
    require_time(t);
    double sum = 0.0;
    for (const auto& e : spectrum.entries) {
        if (pinched_only && !e.pinched) continue;
        sum += e.mult * class_ksum(e.length, t);
    }
    return std::exp(-0.25 * t) / std::sqrt(16.0 * M_PI * t) * sum;
}

double parabolic_p(double t)
{
    require_time(t);
    specfun::QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    // P changes sign near t = 0.33, so the absolute floor follows the size of
    // int |integrand| ~ e^{-t/4} (1 + |log t|)/sqrt t instead
    spec.abs_tol = 1e-13 * std::exp(-0.25 * t) * (1.0 + (1.0 + std::fabs(std::log(t))) / std::sqrt(t));
    spec.scale = std::max(1.0, 1.0 / std::sqrt(t));
    spec.max_subdivisions = 4000;
    // even in r after taking the real part
    auto f = [t](double r) {
        return std::exp(-t * (0.25 + r * r)) * specfun::digamma(specfun::Complex(1.0, r)).real();
    };
    return 2.0 * specfun::integrate(f, 0.0, INFINITY, spec).value;
}

namespace {

// D_k = -(-1)^k B_{2k} Gamma(1/2-k)/(4k), k = 1..parabolic_p_max_terms
const std::array<double, parabolic_p_max_terms + 1>& p_series_coeffs()
{
    static const auto table = [] {
        std::array<double, parabolic_p_max_terms + 1> d{};
        for (int k = 1; k <= parabolic_p_max_terms; ++k) {
            // B_{2k} = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
            const double b2k = (k % 2 ? 2.0 : -2.0) * std::tgamma(2.0 * k + 1) * std::riemann_zeta(2.0 * k) /
                               std::pow(2.0 * M_PI, 2.0 * k);
            const double sign = k % 2 ? 1.0 : -1.0;  // -(-1)^k
            d[k] = sign * b2k * std::tgamma(0.5 - k) / (4.0 * k);
        }
        return d;
    }();
    return table;
}

// sum_{k=1}^{n} D_k t^{k-1/2}
double p_series_tail(double t, int n)
{
    const auto& d = p_series_coeffs();
    double s = 0.0;
    double p = std::sqrt(t);
    for (int k = 1; k <= n; ++k) {
        s += d[k] * p;
        p *= t;
    }
    return s;
}

// Below this t the asymptotic series (22 terms) is accurate to ~1e-16 and
// replaces quadrature in parabolic_block_remainder.
constexpr double p_series_switch = 0.1;

}  // namespace

double parabolic_p_asymptotic(double t, int terms)
{
    require_time(t);
    if (t > 1.0) throw Error(Errc::domain, "parabolic_p_asymptotic: t must be <= 1");
    if (terms < 0 || terms > parabolic_p_max_terms + 2)
        throw Error(Errc::domain, "parabolic_p_asymptotic: terms out of range");
    const double rt = std::sqrt(t);
    double s = -(sqrt_pi / 4.0) * std::log(t) / rt;
    if (terms >= 1) s += -(sqrt_pi / 4.0) * (euler_gamma + 2.0 * log2) / rt;
    if (terms >= 2) s += M_PI / 4.0;
    if (terms >= 3) s += p_series_tail(t, terms - 2);
    return 2.0 * std::exp(-0.25 * t) * s;
}

double parabolic_block(double t)
{
    require_time(t);
    const double e = std::exp(-0.25 * t);
    return -parabolic_p(t) / M_PI + e * (0.5 - log2 / std::sqrt(4.0 * M_PI * t));
}

double parabolic_block_remainder(double t)
{
    require_time(t);
    const double rt = std::sqrt(t);
    const double lead = (std::log(t) + euler_gamma + log2) / (2.0 * sqrt_pi * rt);
    if (t >= p_series_switch) return parabolic_block(t) - lead;
    // block = e^{-t/4}[lead - (2/pi) sum D_k t^{k-1/2}]
    return std::expm1(-0.25 * t) * lead - std::exp(-0.25 * t) * (2.0 / M_PI) * p_series_tail(t, parabolic_p_max_terms);
}

Complex phi_log_deriv(const ScatteringModel& model, Complex s)
{
    if (!(model.q > 0.0)) throw Error(Errc::domain, "phi_log_deriv: q must be positive");
    Complex sum = std::log(model.q);
    for (const auto& r : model.resonances) {
        const Complex zero = 1.0 - std::conj(r.rho);
        const double scale = 1e-14 * (1.0 + std::abs(r.rho));
        if (std::abs(s - r.rho) <= scale || std::abs(s - zero) <= scale)
            throw Error(Errc::pole, "phi_log_deriv: s is a resonance or its reflected zero");
        sum += double(r.order) * (1.0 / (s - zero) - 1.0 / (s - r.rho));
    }
    return sum;
}

double scattering_integral(const ScatteringModel& model, double t)
{
    require_time(t);
    model.validate();
    // the real part of the integrand is even in l for a conjugate-closed
    // model; split at the resonance heights so no peak is stepped over
    std::vector<double> cuts{0.0};
    for (const auto& r : model.resonances) cuts.push_back(std::fabs(r.rho.imag()));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(cuts.back() + 1.0);

    auto f = [&](double l) {
        return std::exp(-(0.25 + l * l) * t) * phi_log_deriv(model, Complex(0.5, l)).real();
    };
    // bound on int_R |integrand|: each resonance contributes at most 2 pi |n|
    double mass = std::fabs(std::log(model.q)) * std::sqrt(M_PI / t);
    for (const auto& r : model.resonances) mass += 2.0 * M_PI * std::abs(r.order);
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-15 * std::exp(-0.25 * t) * std::max(mass, 1e-300);
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 4000;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += specfun::integrate(f, cuts[i], cuts[i + 1], spec).value;
    spec.scale = std::max(1.0, 1.0 / std::sqrt(t));
    sum += specfun::integrate(f, cuts.back(), INFINITY, spec).value;
    return -2.0 * sum / (4.0 * M_PI);
}

double scattering_erfc_sum(const ScatteringModel& model, double t)
{
    require_time(t);
    model.validate();
    const double rt = std::sqrt(t);
    const double e = std::exp(-0.25 * t);
    double sum = -std::log(model.q) * e / (4.0 * sqrt_pi * rt);
    // e^{-t rho(1-rho)} Erfc(w) = e^{-t/4} erfcx(w), w = sqrt t (1/2 - rho)
    for (const auto& r : model.resonances) {
        const Complex w1 = rt * (0.5 - r.rho);
        const Complex w2 = rt * (0.5 - std::conj(r.rho));
        const Complex v = specfun::erfcx(w1) + specfun::erfcx(w2);
        sum += 0.25 * r.order * e * v.real();
    }
    return sum;
}

TraceBreakdown relative_heat_trace_terms(const SurfaceData& surface, const LengthSpectrum& spectrum,
                                         const cusp_model::CuspFamily& starts, double t)
{
    require_time(t);
    surface.validate();
    starts.validate();
    if (int(starts.starts.size()) != surface.cusps)
        throw Error(Errc::domain, "relative_heat_trace: one cusp start per cusp required");
    TraceBreakdown b;
    const double e = std::exp(-0.25 * t);
    const double g = e / std::sqrt(4.0 * M_PI * t);
    b.identity = identity_term(surface.area(), t);
    b.hyperbolic = hyperbolic_trace(spectrum, t, false);
    b.parabolic = parabolic_p(t);
    b.cusp_block = surface.cusps * (-b.parabolic / M_PI - log2 * g + 0.5 * e);
    b.starts = g * starts.log_sum();
    b.total = b.hyperbolic + b.identity + b.cusp_block + b.starts;
    return b;
}

double relative_heat_trace(const SurfaceData& surface, const LengthSpectrum& spectrum,
                           const cusp_model::CuspFamily& starts, double t)
{
    return relative_heat_trace_terms(surface, spectrum, starts, t).total;
}

double spectral_side_trace(const ScatteringModel& model, const EigenvalueList& eigs, int cusps, double t)
{
    require_time(t);
    model.validate(cusps);
    double s = 0.0;
    for (double l : eigs.values) s += std::exp(-l * t);
    return s + scattering_integral(model, t) + 0.25 * std::exp(-0.25 * t) * (model.trace_c_half + cusps);
}

}  // namespace cuspdet::trace
