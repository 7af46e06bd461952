#include "cuspdet/degeneration.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "cuspdet/error.hpp"
#include "cuspdet/quadrature.hpp"

namespace cuspdet::degeneration {

namespace {

struct Neumaier {
    double sum = 0, comp = 0;
    void add(double x)
    {
        const double t = sum + x;
        comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

double wolpert_sum(double ell, double s, double tol)
{
    if (!(ell > 0.0) || !std::isfinite(ell)) throw Error(Errc::domain, "wolpert_sum: ell must be positive");
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(Errc::domain, "wolpert_sum: s must be positive");
    if (!(tol > 0.0)) throw Error(Errc::domain, "wolpert_sum: tol must be positive");

    auto f = [ell, s](double n) { return std::exp(-n * s * ell) / (n * -std::expm1(-n * ell)); };
    // f(n+1) <= e^{-s ell} f(n), so the tail after n is at most f(n+1)/(1 - e^{-s ell})
    const double ratio_gap = -std::expm1(-s * ell);

    // rough count of terms before the bound drops below tol
    const double n_est = (std::log(1.0 / (std::min(tol, 1e-17) * ratio_gap * std::min(1.0, ell))) + 1.0) / (s * ell);
    constexpr double direct_limit = 5e6;
    if (n_est <= direct_limit) {
        Neumaier acc;
        for (long n = 1;; ++n) {
            acc.add(f(double(n)));
            // also stop once the tail is below rounding of the partial sum
            const double bound = f(double(n + 1)) / ratio_gap;
            if (bound <= tol && bound <= 1e-17 * acc.value()) break;
        }
        return acc.value();
    }

    // s ell tiny: direct to K0, then Euler-Maclaurin on the smooth remainder
    constexpr long K0 = 4000;
    Neumaier acc;
    for (long n = 1; n < K0; ++n) acc.add(f(double(n)));
    specfun::QuadratureSpec spec;
    spec.abs_tol = 0.1 * tol;
    spec.rel_tol = 1e-13;
    spec.scale = 1.0 / (s * ell);
    const double k0 = double(K0);
    const double integral = specfun::integrate(f, k0, INFINITY, spec).value;
    const double d1 = (f(k0 + 1) - f(k0 - 1)) / 2.0;
    const double d3 = (f(k0 + 2) - 2.0 * f(k0 + 1) + 2.0 * f(k0 - 1) - f(k0 - 2)) / 2.0;
    acc.add(integral);
    acc.add(0.5 * f(k0) - d1 / 12.0 + d3 / 720.0);
    return acc.value();
}

double wolpert_asymptotic(double ell, double s)
{
    if (!(ell > 0.0) || ell > 0.5) throw Error(Errc::domain, "wolpert_asymptotic: ell must lie in (0, 0.5]");
    if (!(s > 0.0)) throw Error(Errc::domain, "wolpert_asymptotic: s must be positive");
    return M_PI * M_PI / (6.0 * ell) + (s - 0.5) * std::log(-std::expm1(-s * ell));
}

void PinchSweepRow::validate() const
{
    for (double v : {ell, wolpert_sum, wolpert_asymptotic, small_eig_logsum, log_det_estimate, baseline})
        if (!std::isfinite(v)) throw Error(Errc::domain, "PinchSweepRow: non-finite field");
    if (!(ell > 0.0)) throw Error(Errc::domain, "PinchSweepRow: ell must be positive");
}

std::map<double, trace::EigenvalueList> default_small_eigs(const std::vector<double>& ell_grid, int pinched,
                                                           double scale)
{
    if (pinched < 0 || !(scale > 0.0)) throw Error(Errc::domain, "default_small_eigs: invalid parameters");
    std::map<double, trace::EigenvalueList> out;
    for (double ell : ell_grid) out[ell].values.assign(pinched, scale * ell * ell);
    return out;
}

std::vector<PinchSweepRow> pinch_sweep(const fuchsian::LengthSpectrum& base, const std::vector<int>& pinch_indices,
                                       const std::vector<double>& ell_grid,
                                       const std::map<double, trace::EigenvalueList>& small_eigs_per_ell,
                                       double baseline_logdet_hyp_alpha, const fuchsian::SurfaceData& surface,
                                       const SweepOptions& opt)
{
    surface.validate();
    if (!std::isfinite(baseline_logdet_hyp_alpha)) throw Error(Errc::domain, "pinch_sweep: baseline must be finite");
    if (opt.threads < 1) throw Error(Errc::domain, "pinch_sweep: threads must be >= 1");
    for (std::size_t i = 0; i < ell_grid.size(); ++i) {
        if (!(ell_grid[i] > 0.0) || !std::isfinite(ell_grid[i]))
            throw Error(Errc::domain, "pinch_sweep: ell grid must be positive");
        if (i > 0 && !(ell_grid[i] < ell_grid[i - 1]))
            throw Error(Errc::domain, "pinch_sweep: ell grid must be strictly decreasing");
    }
    std::set<int> seen;
    for (int i : pinch_indices) {
        if (i < 0 || i >= int(base.entries.size())) throw Error(Errc::index, "pinch_sweep: pinch index out of range");
        if (!seen.insert(i).second) throw Error(Errc::domain, "pinch_sweep: repeated pinch index");
    }
    for (double ell : ell_grid) {
        auto it = small_eigs_per_ell.find(ell);
        if (it == small_eigs_per_ell.end()) throw Error(Errc::index, "pinch_sweep: no small eigenvalues for a grid point");
        for (double lam : it->second.values)
            if (!(lam > 0.0) || !std::isfinite(lam)) throw Error(Errc::domain, "pinch_sweep: small eigenvalues must be positive");
    }

    const double mc = surface.cusps * zeta::xi_constant();

    auto compute = [&](std::size_t i) {
        const double ell = ell_grid[i];
        PinchSweepRow row;
        row.ell = ell;
        row.baseline = baseline_logdet_hyp_alpha;
        for (int idx : pinch_indices) {
            const int mult = base.entries[idx].mult;
            row.wolpert_sum += mult * wolpert_sum(ell, 1.0, opt.wolpert_tol);
            // the asymptotic form is only defined for ell <= 0.5; the exact sum stands in above that
            row.wolpert_asymptotic += mult * (ell <= 0.5 ? wolpert_asymptotic(ell, 1.0) : wolpert_sum(ell, 1.0));
        }
        for (double lam : small_eigs_per_ell.at(ell).values) row.small_eig_logsum += std::log(lam);
        row.log_det_estimate = row.baseline - mc - row.wolpert_sum + row.small_eig_logsum;
        if (opt.cross_check_t_max > 0.0) {
            const auto pinched = fuchsian::pinch_family(base, pinch_indices, ell);
            try {
                const auto rd = zeta::relative_determinant(surface, pinched, cusp_model::CuspFamily::reference(surface.cusps),
                                                           opt.cross_check_t_max, opt.det);
                row.rel_log_det_check = std::log(rd.relative.determinant);
            } catch (const Error&) {
                // outside the engine's window for this ell; the column stays empty
            }
        }
        row.validate();
        return row;
    };

    std::vector<PinchSweepRow> rows(ell_grid.size());
    const std::size_t n = rows.size();
    const int nthreads = int(std::min<std::size_t>(opt.threads, n));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = compute(i);
        return rows;
    }
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    rows[i] = compute(i);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace cuspdet::degeneration
