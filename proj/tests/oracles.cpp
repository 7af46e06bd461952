#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cuspdet::oracle {

namespace {

constexpr double half_pi = 1.57079632679489661923;

// sum over the nodes of one refinement level; only odd nodes past level 0
double ts_level(const std::function<double(double)>& f, double a, double b, double h, bool odd_only)
{
    const double r = 0.5 * (b - a);
    double s = 0.0;
    const int step = odd_only ? 2 : 1;
    for (int k = odd_only ? 1 : 0;; k += step) {
        const double tau = k * h;
        const double sh = std::sinh(tau), ch = std::cosh(tau);
        const double u = half_pi * sh;
        const double w = half_pi * ch / (std::cosh(u) * std::cosh(u));
        // 1 - tanh(u), computed without cancellation
        const double om = 2.0 / (std::exp(2.0 * u) + 1.0);
        if (w * r < 1e-300 || om == 0.0) break;
        const double xp = b - r * om, xm = a + r * om;
        double term = 0.0;
        if (xp < b && xp > a) term += f(xp);
        if (k != 0 && xm > a && xm < b) term += f(xm);
        s += w * term;
        if (tau > 6.5) break;
    }
    return r * s;
}

}  // namespace

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol)
{
    if (!(b > a)) return a == b ? 0.0 : -tanh_sinh(f, b, a, tol);
    double h = 0.5;
    double sum = ts_level(f, a, b, h, false);
    double prev = sum * h;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        sum += ts_level(f, a, b, h, true);
        const double cur = sum * h;
        if (std::fabs(cur - prev) <= tol * std::max(std::fabs(cur), 1e-3)) return cur;
        prev = cur;
    }
    throw std::runtime_error("tanh_sinh oracle did not converge");
}

std::vector<WordClass> exhaustive_classes(const std::vector<fuchsian::Mobius>& generators, int radius,
                                          double max_length)
{
    const int k = 2 * int(generators.size());
    std::vector<fuchsian::Mobius> letter(k);
    for (int i = 0; i < int(generators.size()); ++i) {
        letter[2 * i] = generators[i];
        letter[2 * i + 1] = generators[i].inverse();
    }
    auto inv = [](int x) { return x ^ 1; };
    const double max_trace = 2.0 * std::cosh(0.5 * max_length);

    // all reduced words, breadth first
    std::vector<std::vector<int>> words;
    std::vector<std::vector<int>> frontier;
    for (int c = 0; c < k; ++c) frontier.push_back({c});
    for (int len = 1; len <= radius; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier) {
            words.push_back(w);
            if (len == radius) continue;
            for (int c = 0; c < k; ++c)
                if (c != inv(w.back())) {
                    auto v = w;
                    v.push_back(c);
                    next.push_back(std::move(v));
                }
        }
        frontier = std::move(next);
    }

    auto is_rotation = [](const std::vector<int>& x, const std::vector<int>& y) {
        if (x.size() != y.size()) return false;
        const std::size_t n = x.size();
        for (std::size_t r = 0; r < n; ++r) {
            bool same = true;
            for (std::size_t i = 0; i < n && same; ++i) same = x[(i + r) % n] == y[i];
            if (same) return true;
        }
        return false;
    };
    auto is_power = [](const std::vector<int>& w) {
        const std::size_t n = w.size();
        for (std::size_t p = 1; p < n; ++p) {
            if (n % p) continue;
            bool rep = true;
            for (std::size_t i = p; i < n && rep; ++i) rep = w[i] == w[i - p];
            if (rep) return true;
        }
        return false;
    };

    std::vector<WordClass> classes;
    for (const auto& w : words) {
        if (w.size() > 1 && w.front() == inv(w.back())) continue;  // not cyclically reduced
        fuchsian::Mobius m;
        for (int c : w) m = m * letter[c];
        const double tr = std::fabs(m.trace());
        if (tr <= 2.0 + 1e-9 || tr > max_trace * (1.0 + 1e-12)) continue;
        if (is_power(w)) continue;
        bool known = false;
        for (const auto& c : classes)
            if (is_rotation(c.word, w)) {
                known = true;
                break;
            }
        if (!known) classes.push_back({2.0 * std::acosh(0.5 * tr), w});
    }
    std::sort(classes.begin(), classes.end(), [](const WordClass& x, const WordClass& y) { return x.length < y.length; });
    return classes;
}

long double wolpert_direct(long double ell, long double s)
{
    long double sum = 0.0L;
    for (long n = 1; n < 2'000'000'000L; ++n) {
        const long double term = std::exp(-n * s * ell) / (n * -std::expm1(-n * ell));
        sum += term;
        if (term < 1e-22L * sum) break;
    }
    return sum;
}

long double hyperbolic_ksum_direct(long double ell, long double t)
{
    long double sum = 0.0L;
    for (long k = 1;; ++k) {
        const long double u = k * ell;
        const long double term = ell / std::sinh(0.5L * u) * std::exp(-u * u / (4.0L * t));
        sum += term;
        if (term < 1e-22L * sum || term == 0.0L) break;
    }
    return sum;
}

double bessel_k_std(double nu, double x) { return std::cyl_bessel_k(nu, x); }

}  // namespace cuspdet::oracle
