#include "cuspdet/zeta.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cuspdet/error.hpp"
#include "cuspdet/quadrature.hpp"

namespace cuspdet::zeta {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;
constexpr double sqrt_pi = 1.77245385090551602730;
constexpr double log2 = 0.69314718055994530942;
constexpr double eps = std::numeric_limits<double>::epsilon();

// e^x E_1(x), x > 0
double exp_e1(double x)
{
    if (x <= 50.0) return std::exp(x) * -std::expint(-x);
    double s = 0.0, term = 1.0 / x;
    for (int n = 1; n < 40; ++n) {
        s += term;
        const double next = -term * n / x;
        if (std::fabs(next) >= std::fabs(term) || std::fabs(next) < eps * std::fabs(s)) break;
        term = next;
    }
    return s;
}

struct Fit {
    double mu, logc;
};

Fit fit_exponential(const std::vector<double>& t, const std::vector<double>& y)
{
    const double n = double(t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double ly = std::log(std::fabs(y[i]));
        st += t[i];
        sy += ly;
        stt += t[i] * t[i];
        sty += t[i] * ly;
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    return {-slope, (sy - slope * st) / n};
}

}  // namespace

void ExpansionDescriptor::validate() const
{
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& e = terms[i];
        if (!std::isfinite(e.alpha) || !std::isfinite(e.coeff) || e.k < 0)
            throw Error(Errc::domain, "ExpansionDescriptor: bad term");
        if (e.alpha == 0.0 && e.k != 0) throw Error(Errc::domain, "ExpansionDescriptor: log powers not allowed at alpha = 0");
        if (i > 0) {
            const auto& p = terms[i - 1];
            // ordered by alpha; equal alphas by decreasing log power
            const bool ok = p.alpha < e.alpha || (p.alpha == e.alpha && p.k > e.k);
            if (!ok) throw Error(Errc::domain, "ExpansionDescriptor: terms must be ordered by (alpha, -k) without repeats");
        }
    }
    if (!std::isfinite(h)) throw Error(Errc::domain, "ExpansionDescriptor: h must be finite");
}

double ExpansionDescriptor::evaluate(double t) const
{
    const double lt = std::log(t);
    double s = 0.0;
    for (const auto& e : terms) s += e.coeff * std::pow(t, e.alpha) * std::pow(lt, e.k);
    return s;
}

void ZetaResult::validate() const
{
    if (!std::isfinite(zeta_prime_zero)) throw Error(Errc::domain, "ZetaResult: non-finite zeta'(0)");
    if (!(determinant > 0.0) || !std::isfinite(determinant)) throw Error(Errc::overflow, "ZetaResult: determinant not representable");
    if (!(small_t_error >= 0.0) || !(large_t_error >= 0.0)) throw Error(Errc::domain, "ZetaResult: negative error estimate");
}

ZetaResult mellin_zeta_prime0(const TraceFunction& theta, const ExpansionDescriptor& expansion, double t_max,
                              const EngineOptions& opt)
{
    expansion.validate();
    if (!theta.value) throw Error(Errc::domain, "mellin_zeta_prime0: empty trace function");
    if (!(t_max >= 1.0) || !std::isfinite(t_max)) throw Error(Errc::domain, "mellin_zeta_prime0: t_max must be >= 1");
    const double h = expansion.h;

    // analytic images of the subtracted terms on (0,1]
    double analytic = 0.0;
    double c0 = 0.0;
    for (const auto& e : expansion.terms) {
        if (e.alpha == 0.0) {
            c0 = e.coeff;
            continue;
        }
        double kf = 1.0;
        for (int j = 2; j <= e.k; ++j) kf *= j;
        analytic += e.coeff * (e.k % 2 ? -1.0 : 1.0) * kf / std::pow(e.alpha, e.k + 1);
    }
    analytic += euler_gamma * (c0 - h);

    auto remainder = [&](double t) {
        if (theta.small_t_remainder) return theta.small_t_remainder(t);
        return theta.value(t) - expansion.evaluate(t);
    };

    // the remainder has to vanish as t -> 0
    {
        auto mag = [&](double t) {
            double s = 0.0;
            const double lt = std::log(t);
            for (const auto& e : expansion.terms) s += std::fabs(e.coeff * std::pow(t, e.alpha) * std::pow(lt, e.k));
            return s;
        };
        const double big = std::max(std::fabs(remainder(1e-3)), std::fabs(remainder(1e-4)));
        const double small = std::max(std::fabs(remainder(1e-7)), std::fabs(remainder(1e-8)));
        const double noise = (theta.small_t_remainder ? 0.0 : 64.0 * eps * mag(1e-8)) + 1e-13;
        if (small > 0.5 * big + noise) {
            std::ostringstream os;
            os << "declared small-t expansion does not match: remainder " << small << " near t=1e-8 vs " << big
               << " near t=1e-4";
            throw Error(Errc::expansion_mismatch, os.str());
        }
    }

    specfun::QuadratureSpec spec;
    spec.abs_tol = opt.abs_tol;
    spec.rel_tol = opt.rel_tol;
    spec.max_subdivisions = 4000;
    // int_0^1 R(t)/t dt with t = u^2
    auto small = specfun::integrate([&](double u) { return 2.0 * remainder(u * u) / u; }, 0.0, 1.0, spec);
    specfun::QuadratureResult<double> mid{};
    if (t_max > 1.0) mid = specfun::integrate([&](double t) { return (theta.value(t) - h) / t; }, 1.0, t_max, spec);

    double tail = 0.0, tail_err = 0.0;
    const double v = theta.value(t_max) - h;
    if (std::fabs(v) > opt.tail_negligible * (1.0 + std::fabs(h))) {
        const double a = std::max(1.0, 0.5 * t_max);
        if (!(t_max > a)) throw Error(Errc::tail_unbounded, "tail fit needs t_max > 1");
        const int n = std::max(opt.tail_fit_points, 4);
        std::vector<double> ts(n), ys(n);
        for (int i = 0; i < n; ++i) {
            ts[i] = a + (t_max - a) * i / (n - 1);
            ys[i] = theta.value(ts[i]) - h;
            if (ys[i] == 0.0 || std::signbit(ys[i]) != std::signbit(v))
                throw Error(Errc::tail_unbounded, "theta - h changes sign in the tail window");
        }
        const Fit f = fit_exponential(ts, ys);
        if (!(f.mu > opt.min_decay_rate)) {
            std::ostringstream os;
            os << "fitted tail decay rate " << f.mu << " is below " << opt.min_decay_rate;
            throw Error(Errc::tail_unbounded, os.str());
        }
        auto tail_for = [&](double mu) { return v * exp_e1(mu * t_max); };
        tail = tail_for(f.mu);
        // spread between the fits on the two halves of the window
        const int half = n / 2;
        const Fit f1 = fit_exponential({ts.begin(), ts.begin() + half + 1}, {ys.begin(), ys.begin() + half + 1});
        const Fit f2 = fit_exponential({ts.begin() + half, ts.end()}, {ys.begin() + half, ys.end()});
        for (const Fit& g : {f1, f2})
            if (g.mu > 0.0) tail_err = std::max(tail_err, std::fabs(tail_for(g.mu) - tail));
            else tail_err = std::max(tail_err, std::fabs(tail));
    } else {
        tail_err = std::fabs(v);
    }

    ZetaResult r;
    r.zeta_prime_zero = analytic + small.value + mid.value + tail;
    r.determinant = std::exp(-r.zeta_prime_zero);
    r.small_t_error = small.error;
    r.large_t_error = mid.error + tail_err;
    r.validate();
    return r;
}

double compute_xi_constant()
{
    TraceFunction g;
    g.value = [](double t) { return trace::parabolic_block(t); };
    g.small_t_remainder = [](double t) { return trace::parabolic_block_remainder(t); };
    ExpansionDescriptor e;
    e.terms = {{-0.5, 1, 1.0 / (2.0 * sqrt_pi)}, {-0.5, 0, (euler_gamma + log2) / (2.0 * sqrt_pi)}};
    e.h = 0.0;
    // the block decays like e^{-t/4}/2; at t = 160 that is 2e-18
    return mellin_zeta_prime0(g, e, 160.0).zeta_prime_zero;
}

double xi_constant()
{
    static const double c = compute_xi_constant();
    return c;
}

double xi_prime0(int num_cusps)
{
    if (num_cusps < 0) throw Error(Errc::domain, "xi_prime0: negative cusp count");
    if (num_cusps == 0) return 0.0;
    return num_cusps * xi_constant();
}

ExpansionDescriptor relative_trace_expansion(const fuchsian::SurfaceData& surface, const cusp_model::CuspFamily& starts)
{
    surface.validate();
    starts.validate();
    const double area = surface.area();
    const double m = surface.cusps;
    ExpansionDescriptor e;
    e.terms = {
        {-1.0, 0, area / (4.0 * M_PI)},
        {-0.5, 1, m / (2.0 * sqrt_pi)},
        {-0.5, 0, (m * (euler_gamma + log2) + starts.log_sum()) / (2.0 * sqrt_pi)},
        {0.0, 0, -area / (12.0 * M_PI)},
    };
    e.h = surface.components;
    return e;
}

TraceFunction relative_trace_function(const fuchsian::SurfaceData& surface, const fuchsian::LengthSpectrum& spectrum,
                                      const cusp_model::CuspFamily& starts)
{
    surface.validate();
    starts.validate();
    if (int(starts.starts.size()) != surface.cusps)
        throw Error(Errc::domain, "relative trace: one cusp start per cusp required");
    const double area = surface.area();
    const int m = surface.cusps;
    const double s = starts.log_sum();
    TraceFunction f;
    f.value = [=](double t) { return trace::relative_heat_trace(surface, spectrum, starts, t); };
    f.small_t_remainder = [=](double t) {
        return trace::hyperbolic_trace(spectrum, t, false) + trace::identity_term_remainder(area, t) +
               m * trace::parabolic_block_remainder(t) + s * std::expm1(-0.25 * t) / std::sqrt(4.0 * M_PI * t);
    };
    return f;
}

double required_cutoff(double t_max, double trunc_eps)
{
    if (!(trunc_eps > 0.0 && trunc_eps < 1.0)) throw Error(Errc::domain, "trunc_eps must be in (0,1)");
    if (!(t_max > 0.0)) throw Error(Errc::domain, "t_max must be positive");
    // Classes of length near l carry total weight ~ e^{l/2} per unit length,
    // so the neglected part of the trace at time t is ~ e^{L/2 - L^2/4t}.
    // Smallest L with L^2/4t - L/2 >= log(1/eps):
    const double t = t_max;
    return t + std::sqrt(t * t + 4.0 * t * std::log(1.0 / trunc_eps));
}

double max_t_for_cutoff(double cutoff, double trunc_eps)
{
    if (!(trunc_eps > 0.0 && trunc_eps < 1.0)) throw Error(Errc::domain, "trunc_eps must be in (0,1)");
    if (!(cutoff > 0.0)) throw Error(Errc::domain, "cutoff must be positive");
    return cutoff * cutoff / (4.0 * (std::log(1.0 / trunc_eps) + 0.5 * cutoff));
}

RelativeDeterminant relative_determinant(const fuchsian::SurfaceData& surface, const fuchsian::LengthSpectrum& spectrum,
                                         const cusp_model::CuspFamily& starts, double t_max,
                                         const DeterminantOptions& opt)
{
    RelativeDeterminant out;
    out.required_cutoff = required_cutoff(t_max, opt.trunc_eps);
    // slack for t_max taken from max_t_for_cutoff
    if (spectrum.cutoff < out.required_cutoff * (1.0 - 1e-12)) {
        std::ostringstream os;
        os.precision(6);
        os << "length spectrum cutoff " << spectrum.cutoff << " too small for t_max=" << t_max
           << "; need cutoff >= " << out.required_cutoff;
        throw Error(Errc::truncation_insufficient, os.str());
    }
    out.relative = mellin_zeta_prime0(relative_trace_function(surface, spectrum, starts),
                                      relative_trace_expansion(surface, starts), t_max, opt.engine);
    out.xi_prime0 = xi_prime0(surface.cusps);
    out.a_tilde = std::exp(-out.xi_prime0);
    out.det_hyp = out.relative.determinant / out.a_tilde;
    out.log_det_hyp = -out.relative.zeta_prime_zero + out.xi_prime0;
    return out;
}

double truncated_hyp_zeta_correction(const trace::EigenvalueList& small_eigs, double alpha)
{
    if (!(alpha > 0.0 && alpha < 0.25)) throw Error(Errc::domain, "alpha must lie in (0, 1/4)");
    double s = 0.0;
    for (double l : small_eigs.values) {
        if (!(l > 0.0)) throw Error(Errc::nonpositive_eigenvalue, "small eigenvalues must be positive");
        if (std::fabs(l - alpha) <= 1e-12 * alpha) throw Error(Errc::alpha_collision, "alpha coincides with an eigenvalue");
        if (l <= alpha) s -= std::log(l);
    }
    return s;
}

double selberg_z_product(const fuchsian::LengthSpectrum& spectrum, double s)
{
    if (!(s > 1.0)) throw Error(Errc::domain, "selberg_z_product: s must exceed 1");
    double logz = 0.0;
    for (const auto& e : spectrum.entries) {
        const double l = e.length;
        const double q = -std::expm1(-l);
        double part = 0.0;
        for (long k = 0;; ++k) {
            const double x = std::exp(-(s + k) * l);
            part += std::log1p(-x);
            // remaining factors: sum_{j>k} -log(1-x_j) <= x e^{-l} / ((1-x)(1-e^{-l}))
            const double bound = x * std::exp(-l) / ((1.0 - x) * q);
            if (bound < 1e-17 * (1.0 + std::fabs(part))) break;
        }
        logz += e.mult * part;
    }
    return std::exp(logz);
}

}  // namespace cuspdet::zeta
