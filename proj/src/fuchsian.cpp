#include "cuspdet/fuchsian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "cuspdet/error.hpp"

namespace cuspdet::fuchsian {

Mobius operator*(const Mobius& x, const Mobius& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

double Mobius::frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }

void Mobius::validate() const
{
    if (!(std::fabs(det() - 1.0) <= 1e-12)) {
        std::ostringstream os;
        os << "Mobius determinant " << det() << " is not 1";
        throw Error(Errc::domain, os.str());
    }
}

double SurfaceData::area() const { return -2.0 * M_PI * euler_characteristic() * components; }

void SurfaceData::validate() const
{
    if (genus < 0 || cusps < 1 || components < 1) throw Error(Errc::domain, "SurfaceData: need genus >= 0, cusps >= 1, components >= 1");
    if (euler_characteristic() >= 0) throw Error(Errc::domain, "SurfaceData: Euler characteristic must be negative");
}

void GroupPresentation::validate() const
{
    if (generators.empty()) throw Error(Errc::domain, "GroupPresentation: no generators");
    for (const auto& g : generators) g.validate();
}

void LengthSpectrum::validate() const
{
    surface.validate();
    double prev = 0.0;
    bool have_prev = false;
    for (const auto& e : entries) {
        if (!(e.length > 0.0) || !std::isfinite(e.length)) throw Error(Errc::domain, "LengthSpectrum: length must be positive");
        if (e.mult < 1) throw Error(Errc::domain, "LengthSpectrum: multiplicity must be >= 1");
        if (e.length > cutoff) throw Error(Errc::domain, "LengthSpectrum: length above cutoff");
        if (e.pinched) continue;
        if (have_prev && !(e.length > prev)) throw Error(Errc::domain, "LengthSpectrum: lengths not strictly increasing");
        prev = e.length;
        have_prev = true;
    }
}

long LengthSpectrum::total_multiplicity() const
{
    long n = 0;
    for (const auto& e : entries) n += e.mult;
    return n;
}

double geodesic_length(double trace)
{
    const double t = std::fabs(trace);
    if (!(t > 2.0)) {
        std::ostringstream os;
        os << "trace " << trace << " is not hyperbolic";
        throw Error(Errc::not_hyperbolic, os.str());
    }
    // arccosh(t/2) = log(t/2 + sqrt(t^2/4 - 1)); acosh loses nothing here
    return 2.0 * std::acosh(0.5 * t);
}

GroupPresentation builtin_group(const std::string& name)
{
    if (name == "thrice-punctured-sphere") {
        GroupPresentation g;
        g.name = name;
        g.generators = {{1, 2, 0, 1}, {1, 0, 2, 1}};
        g.surface = {0, 3, 1};
        return g;
    }
    const std::string torus = "once-punctured-torus(";
    if (name.rfind(torus, 0) == 0 && name.size() > torus.size() + 1 && name.back() == ')') {
        const std::string num = name.substr(torus.size(), name.size() - torus.size() - 1);
        char* end = nullptr;
        const double x = std::strtod(num.c_str(), &end);
        if (end == num.c_str() || *end != '\0') throw Error(Errc::unknown_name, "cannot parse trace in '" + name + "'");
        const double disc = x * x * x * x - 8.0 * x * x;
        if (!(x >= 2.0 * std::sqrt(2.0)) || !(disc >= 0.0))
            throw Error(Errc::domain, "once-punctured torus needs trace >= 2 sqrt 2");
        // tr A = tr B = x, tr AB = z with x^2 + x^2 + z^2 = x x z (commutator trace -2)
        const double z = 0.5 * (x * x + std::sqrt(disc));
        // p + 1/p = x
        const double p = 0.5 * (x + std::sqrt(x * x - 4.0));
        const double q = z - x * p;
        GroupPresentation g;
        g.name = name;
        g.generators = {{x, -1, 1, 0}, {p, q, 0, 1.0 / p}};
        g.surface = {1, 1, 1};
        return g;
    }
    throw Error(Errc::unknown_name, "unknown group '" + name + "'");
}

namespace {

struct Walker {
    const std::vector<Mobius>& letters;  // 2i = g_i, 2i+1 = g_i^-1
    int max_len;
    double max_trace;  // |tr| bound for length <= L
    double norm_bound;
    long max_nodes;
    std::atomic<long>& nodes;
    std::vector<double> found;
    bool radius_hit = false;

    std::vector<int> w;
    std::vector<Mobius> prefix;

    // word w[0..n) with FKM period p
    void visit(int n, int p)
    {
        if (nodes.fetch_add(1, std::memory_order_relaxed) >= max_nodes)
            throw Error(Errc::budget_exceeded, "word enumeration exceeded the node budget");
        const Mobius& m = prefix[n];
        const double nf = m.frobenius();
        // Lyndon and cyclically reduced: canonical primitive class
        if (p == n && (n == 1 || w[0] != (w[n - 1] ^ 1))) {
            const double tr = std::fabs(m.trace());
            const double tol = 1e-12 * (1.0 + nf * nf);
            if (tr > 2.0 + tol && tr <= max_trace) found.push_back(geodesic_length(tr));
        }
        if (nf > norm_bound) return;
        if (n == max_len) {
            radius_hit = true;
            return;
        }
        const int k = int(letters.size());
        for (int c = 0; c < k; ++c) {
            if (c == (w[n - 1] ^ 1)) continue;
            const int ref = w[n - p];
            if (c < ref) continue;
            w[n] = c;
            prefix[n + 1] = m * letters[c];
            visit(n + 1, c == ref ? p : n + 1);
        }
    }
};

}  // namespace

LengthSpectrum enumerate_length_spectrum(const GroupPresentation& group, double max_length,
                                         int max_word_length, const EnumerationOptions& opt)
{
    group.validate();
    group.surface.validate();
    if (!(max_length > 0.0) || !std::isfinite(max_length)) throw Error(Errc::domain, "max_length must be positive");
    if (max_word_length < 1) throw Error(Errc::domain, "max_word_length must be >= 1");
    if (!(opt.prune_factor > 0.0) || opt.threads < 1) throw Error(Errc::domain, "invalid EnumerationOptions");

    std::vector<Mobius> letters;
    for (const auto& g : group.generators) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }
    const double max_trace = 2.0 * std::cosh(0.5 * max_length) * (1.0 + 1e-14);
    const double norm_bound = opt.prune_factor * (max_trace + 2.0);
    std::atomic<long> nodes{0};

    const int k = int(letters.size());
    std::vector<Walker> walkers;
    walkers.reserve(k);
    for (int c = 0; c < k; ++c)
        walkers.push_back(Walker{letters, max_word_length, max_trace, norm_bound, opt.max_nodes, nodes, {}, false, {}, {}});

    auto run = [&](int c) {
        Walker& wk = walkers[c];
        wk.w.assign(max_word_length + 1, 0);
        wk.prefix.assign(max_word_length + 2, Mobius{});
        wk.w[0] = c;
        wk.prefix[1] = letters[c];
        wk.visit(1, 1);
    };
    const int nthreads = std::min(opt.threads, k);
    if (nthreads <= 1) {
        for (int c = 0; c < k; ++c) run(c);
    } else {
        std::vector<std::exception_ptr> errs(k);
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i)
            pool.emplace_back([&] {
                for (int c; (c = next.fetch_add(1)) < k;) {
                    try {
                        run(c);
                    } catch (...) {
                        errs[c] = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }

    std::vector<double> all;
    LengthSpectrum out;
    for (auto& wk : walkers) {
        all.insert(all.end(), wk.found.begin(), wk.found.end());
        out.radius_limited = out.radius_limited || wk.radius_hit;
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i + 1;
        while (j < all.size() && all[j] - all[j - 1] <= opt.merge_tol) ++j;
        // cluster representative: the mean is order independent after sorting
        double s = 0.0;
        for (std::size_t q = i; q < j; ++q) s += all[q];
        const double len = s / double(j - i);
        if (len <= max_length) out.entries.push_back({len, int(j - i), false});
        i = j;
    }
    out.cutoff = max_length;
    out.surface = group.surface;
    out.word_radius = max_word_length;
    return out;
}

LengthSpectrum pinch_family(const LengthSpectrum& base, const std::vector<int>& pinch_indices, double ell)
{
    if (!(ell > 0.0) || !std::isfinite(ell)) throw Error(Errc::domain, "pinch length must be positive");
    LengthSpectrum out = base;
    for (int i : pinch_indices) {
        if (i < 0 || i >= int(base.entries.size())) {
            std::ostringstream os;
            os << "pinch index " << i << " out of range [0," << base.entries.size() << ")";
            throw Error(Errc::index, os.str());
        }
        out.entries[i].length = ell;
        out.entries[i].pinched = true;
    }
    out.cutoff = std::max(out.cutoff, ell);
    return out;
}

}  // namespace cuspdet::fuchsian
