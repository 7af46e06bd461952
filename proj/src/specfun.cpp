#include "cuspdet/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "cuspdet/error.hpp"

namespace cuspdet::specfun {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double two_over_sqrt_pi = 1.12837916709551257390;
constexpr double one_over_sqrt_pi = 0.56418958354775628695;

void check_pole(Complex z, const char* who)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error(Errc::domain, std::string(who) + ": non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        std::ostringstream os;
        os << who << ": pole of Gamma at z=" << z.real();
        throw Error(Errc::pole, os.str());
    }
}

// log(1+e) without cancellation for small e
Complex log1p_c(Complex e)
{
    const double re = 0.5 * std::log1p(2.0 * e.real() + std::norm(e));
    return {re, std::atan2(e.imag(), 1.0 + e.real())};
}

// log Gamma(1+e) for |e| <= 0.25, power series with zeta values
Complex log_gamma_1p(Complex e)
{
    static const std::array<double, 40> zeta = [] {
        std::array<double, 40> z{};
        for (int k = 2; k < 40; ++k) z[k] = std::riemann_zeta(double(k));
        return z;
    }();
    Complex sum = -euler_gamma * e;
    Complex p = -e;
    for (int k = 2; k < 40; ++k) {
        p *= -e;  // (-e)^k
        Complex term = zeta[k] / k * p;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Stirling series for |w| >= 15, Re w > 0
Complex log_gamma_stirling(Complex w)
{
    // B_{2k}/(2k(2k-1))
    static constexpr double c[] = {
        1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
        -691.0 / 360360, 1.0 / 156, -3617.0 / 122400,
    };
    const Complex w1 = 1.0 / w;
    const Complex w2 = w1 * w1;
    Complex s = 0.0;
    Complex p = w1;
    for (double ck : c) {
        s += ck * p;
        p *= w2;
    }
    return (w - 0.5) * std::log(w) - w + 0.91893853320467274178 + s;
}

}  // namespace

Complex log_gamma(Complex z)
{
    check_pole(z, "log_gamma");
    if (z == Complex(1.0) || z == Complex(2.0)) return 0.0;
    if (std::abs(z - 1.0) <= 0.25) return log_gamma_1p(z - 1.0);
    if (std::abs(z - 2.0) <= 0.25) return log_gamma_1p(z - 2.0) + log1p_c(z - 2.0);
    if (z.real() > 0.0 && std::abs(z) >= 15.0) return log_gamma_stirling(z);
    // shift up: log G(z) = log G(z+n) - sum log(z+k), each log principal
    const int n = int(std::ceil(15.0 - z.real()));
    Complex corr = 0.0;
    for (int k = 0; k < n; ++k) corr += std::log(z + double(k));
    return log_gamma_stirling(z + double(n)) - corr;
}

Complex digamma(Complex z)
{
    check_pole(z, "digamma");
    Complex acc = 0.0;
    Complex w = z;
    while (w.real() < 15.0 || std::abs(w) < 15.0) {
        acc -= 1.0 / w;
        w += 1.0;
    }
    // B_{2k}/(2k)
    static constexpr double c[] = {
        1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132,
        -691.0 / 32760, 1.0 / 12, -3617.0 / 8160,
    };
    const Complex w2 = 1.0 / (w * w);
    Complex s = 0.0;
    Complex p = w2;
    for (double ck : c) {
        s += ck * p;
        p *= w2;
    }
    return acc + std::log(w) - 0.5 / w - s;
}

namespace {

// Region where the erf power series is used for erfcx: the series loses about
// exp(2 Re(z)^2) |z| ulps, so keep Re z small; the term count grows like |z|^2.
constexpr double erf_series_max_re = 1.0;
constexpr double erf_series_max_abs = 26.0;

Complex erfcx_series(Complex z)
{
    // erf z = 2/sqrt(pi) sum (-1)^n z^(2n+1) / (n! (2n+1))
    const Complex z2 = z * z;
    Complex term = z;  // (-1)^n z^(2n+1)/n!
    Complex sum = z;
    for (int n = 1; n < 5000; ++n) {
        term *= -z2 / double(n);
        const Complex add = term / double(2 * n + 1);
        sum += add;
        if (std::abs(add) <= eps * 0.25 * std::abs(sum) && double(n) > std::norm(z)) {
            return std::exp(z2) * (1.0 - two_over_sqrt_pi * sum);
        }
    }
    throw Error(Errc::non_convergence, "erfc power series did not converge");
}

// Laplace continued fraction, Re z > 0:
// erfcx(z) = (1/sqrt pi) 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
Complex erfcx_cf(Complex z)
{
    const double tiny = 1e-300;
    Complex f = z;
    Complex C = f;
    Complex D = 0.0;
    for (int k = 1; k < 20000; ++k) {
        const double a = 0.5 * k;
        D = z + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = z + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const Complex delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < eps) return one_over_sqrt_pi / f;
    }
    throw Error(Errc::non_convergence, "erfc continued fraction did not converge");
}

Complex erfcx_right(Complex z)
{
    if (z.real() < erf_series_max_re && std::abs(z) < erf_series_max_abs) return erfcx_series(z);
    return erfcx_cf(z);
}

void check_erfc_arg(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error(Errc::domain, "erfc: non-finite argument");
    if (std::abs(z) > 1e4) throw Error(Errc::domain, "erfc: |z| > 1e4");
}

}  // namespace

Complex erfcx(Complex z)
{
    check_erfc_arg(z);
    if (z.real() >= 0.0) return erfcx_right(z);
    // erfc(z) = 2 - erfc(-z)
    const Complex z2 = z * z;
    if (z2.real() > 709.0) throw Error(Errc::overflow, "erfcx: exp(z^2) overflows");
    return 2.0 * std::exp(z2) - erfcx_right(-z);
}

Complex erfc(Complex z)
{
    check_erfc_arg(z);
    const bool left = z.real() < 0.0;
    const Complex w = left ? -z : z;
    const Complex mw2 = -(w * w);
    if (mw2.real() > 709.0) throw Error(Errc::overflow, "erfc: result exceeds double range");
    Complex v;
    if (mw2.real() < -745.0) {
        v = 0.0;  // underflow of exp(-w^2)
    } else {
        v = std::exp(mw2) * erfcx_right(w);
    }
    return left ? 2.0 - v : v;
}

namespace {

// Taylor coefficients of 1/Gamma(1+z)
constexpr double rgam[22] = {
    1.0,
    0.577215664901532860607,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.166538611382291489502,
    -0.0421977345555443367482,
    -0.00962197152787697356211,
    0.0072189432466630995424,
    -0.00116516759185906511211,
    -0.000215241674114950972816,
    0.000128050282388116186153,
    -0.0000201348547807882386557,
    -0.00000125049348214267065735,
    0.00000113302723198169588237,
    -2.05633841697760710345e-7,
    6.11609510448141581786e-9,
    5.00200764446922293006e-9,
    -1.18127457048702014459e-9,
    1.04342671169110051049e-10,
    7.78226343990507125405e-12,
    -3.69680561864220570819e-12,
    5.10037028745447597902e-13,
};

struct KPair {
    double k0, k1;  // K_mu, K_{mu+1}, both times exp(x)
};

// Temme's series, |mu| <= 1/2, x <= crossover
KPair temme(double mu, double x)
{
    double gam1 = 0.0, gam2 = 0.0, gampl = 0.0, gammi = 0.0;
    double p = 1.0;
    for (int k = 0; k < 22; ++k) {
        if (k % 2 == 0) gam2 += rgam[k] * p;
        gampl += rgam[k] * p;
        gammi += rgam[k] * (k % 2 ? -p : p);
        p *= mu;
    }
    p = 1.0;
    for (int k = 1; k < 22; k += 2) {
        gam1 -= rgam[k] * p;
        p *= mu * mu;
    }
    const double x2 = 0.5 * x;
    const double pimu = M_PI * mu;
    const double fact = std::fabs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::fabs(e) < eps ? 1.0 : std::sinh(e) / e;
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double pp = 0.5 * e / gampl;
    double qq = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = pp;
    for (int i = 1; i < 500; ++i) {
        ff = (i * ff + pp + qq) / (double(i) * i - mu * mu);
        c *= d / i;
        pp /= (i - mu);
        qq /= (i + mu);
        const double del = c * ff;
        sum += del;
        const double del1 = c * (pp - i * ff);
        sum1 += del1;
        if (std::fabs(del) < std::fabs(sum) * eps) {
            const double ex = std::exp(x);
            return {sum * ex, sum1 * 2.0 / x * ex};
        }
    }
    throw Error(Errc::non_convergence, "bessel_k: Temme series did not converge");
}

// Steed's CF2, |mu| <= 1/2, x > crossover
KPair steed(double mu, double x)
{
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 100000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < eps) {
            const double k0 = std::sqrt(M_PI / (2.0 * x)) / s;
            return {k0, k0 * (mu + x + 0.5 - a1 * h) / x};
        }
    }
    throw Error(Errc::non_convergence, "bessel_k: continued fraction did not converge");
}

void check_k_domain(double nu, double x)
{
    if (!(x > 0.0) || !(x < 700.0)) {
        std::ostringstream os;
        os << "bessel_k: x=" << x << " outside (0,700)";
        throw Error(Errc::domain, os.str());
    }
    if (!(nu >= 0.0) || !(nu <= 50.0)) {
        std::ostringstream os;
        os << "bessel_k: nu=" << nu << " outside [0,50]";
        throw Error(Errc::domain, os.str());
    }
}

}  // namespace

double bessel_k_scaled(double nu, double x)
{
    check_k_domain(nu, x);
    const int nl = int(nu + 0.5);
    const double mu = nu - nl;
    KPair kp = x <= bessel_k_crossover ? temme(mu, x) : steed(mu, x);
    double km = kp.k0, k = kp.k1;
    if (nl == 0) return km;
    for (int i = 1; i < nl; ++i) {
        const double kn = (mu + i) * 2.0 / x * k + km;
        km = k;
        k = kn;
        if (!std::isfinite(k)) throw Error(Errc::overflow, "bessel_k: result overflows");
    }
    if (!std::isfinite(k)) throw Error(Errc::overflow, "bessel_k: result overflows");
    return k;
}

double bessel_k(double nu, double x)
{
    const double ks = bessel_k_scaled(nu, x);
    // exp(-x) ks, split so that neither factor overflows
    const double r = std::log(ks) - x;
    if (r > 709.0) throw Error(Errc::overflow, "bessel_k: result overflows");
    return ks * std::exp(-x);
}

Complex bessel_k_scaled(Complex nu, double x)
{
    if (!(x >= 1.0) || !std::isfinite(x)) throw Error(Errc::domain, "bessel_k: complex order needs x >= 1");
    if (std::fabs(nu.imag()) > 10.0) throw Error(Errc::domain, "bessel_k: |Im nu| > 10 not supported");
    if (std::fabs(nu.real()) > 50.0) throw Error(Errc::domain, "bessel_k: |Re nu| > 50");
    const double a = std::fabs(nu.real());
    // exp(-x(cosh t - 1) + a t) < 1e-20 beyond T
    double T = 1.0;
    while (x * (std::cosh(T) - 1.0) - a * T < 46.0 + std::log1p(a)) T += 0.25;
    QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-13;
    spec.max_subdivisions = 4000;
    // cosh t - 1 = 2 sinh^2(t/2)
    auto damp = [x](double t) {
        const double sh = std::sinh(0.5 * t);
        return std::exp(-2.0 * x * sh * sh);
    };
    auto f = [&](double t) -> Complex { return damp(t) * std::cosh(nu * t); };
    auto r = integrate(f, 0.0, T, spec);
    auto g = [&](double t) { return damp(t) * std::cosh(a * t); };
    const double mag = integrate(g, 0.0, T, spec).value;
    if (std::abs(r.value) < 1e-10 * mag) throw Error(Errc::singularity, "bessel_k: order is near a zero of K");
    return r.value;
}

}  // namespace cuspdet::specfun
