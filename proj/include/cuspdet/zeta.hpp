#pragma once

#include <functional>
#include <vector>

#include "cuspdet/cusp_model.hpp"
#include "cuspdet/fuchsian.hpp"
#include "cuspdet/trace_terms.hpp"

namespace cuspdet::zeta {

// Relative heat trace theta(t). small_t_remainder, when set, must return
// theta(t) minus the declared expansion, computed without cancellation; the
// engine otherwise subtracts the expansion from value(t) itself.
struct TraceFunction {
    std::function<double(double)> value;
    std::function<double(double)> small_t_remainder;
};

struct ExpansionTerm {
    double alpha;  // exponent of t
    int k;         // power of log t
    double coeff;
};

// theta(t) ~ sum coeff t^alpha (log t)^k as t -> 0, and theta(t) -> h as t -> inf.
struct ExpansionDescriptor {
    std::vector<ExpansionTerm> terms;
    double h = 0.0;

    void validate() const;
    double evaluate(double t) const;
};

struct ZetaResult {
    double zeta_prime_zero = 0;
    double determinant = 1;
    double small_t_error = 0;
    double large_t_error = 0;

    void validate() const;
};

struct EngineOptions {
    // tail beyond t_max: fit C e^{-mu t} on [max(1, t_max/2), t_max]
    double min_decay_rate = 0.2;
    int tail_fit_points = 9;
    // skip the fit when |theta(t_max) - h| is below this
    double tail_negligible = 1e-15;
    double rel_tol = 1e-12;
    double abs_tol = 1e-13;
};

// zeta'(0) of (1/Gamma(s)) int_0^inf (theta(t) - h) t^{s-1} dt, split at t = 1.
ZetaResult mellin_zeta_prime0(const TraceFunction& theta, const ExpansionDescriptor& expansion, double t_max,
                              const EngineOptions& opt = {});

// Per-cusp constant c = xi'(0)/m, computed once.
double xi_constant();
// Computes c afresh (no cache).
double compute_xi_constant();
// xi'(0) = m c
double xi_prime0(int num_cusps);

// Small-t expansion of the geometric relative trace of a surface with the
// given cusp starts.
ExpansionDescriptor relative_trace_expansion(const fuchsian::SurfaceData& surface,
                                             const cusp_model::CuspFamily& starts);
TraceFunction relative_trace_function(const fuchsian::SurfaceData& surface, const fuchsian::LengthSpectrum& spectrum,
                                      const cusp_model::CuspFamily& starts);

struct DeterminantOptions {
    // the truncated length spectrum is trusted up to
    // t_max <= cutoff^2 / (4 (log(1/trunc_eps) + cutoff/2))
    double trunc_eps = 1e-3;
    EngineOptions engine;
};

struct RelativeDeterminant {
    ZetaResult relative;  // det(D, D_model)
    double xi_prime0 = 0;
    double a_tilde = 1;  // exp(-xi'(0))
    double det_hyp = 1;  // relative.determinant / a_tilde
    double log_det_hyp = 0;
    double required_cutoff = 0;  // smallest cutoff allowed for this t_max
};

double required_cutoff(double t_max, double trunc_eps);
// inverse of required_cutoff
double max_t_for_cutoff(double cutoff, double trunc_eps);

RelativeDeterminant relative_determinant(const fuchsian::SurfaceData& surface, const fuchsian::LengthSpectrum& spectrum,
                                         const cusp_model::CuspFamily& starts, double t_max,
                                         const DeterminantOptions& opt = {});

// -sum_{0 < l <= alpha} log l
double truncated_hyp_zeta_correction(const trace::EigenvalueList& small_eigs, double alpha);

// prod_gamma prod_{k>=0} (1 - e^{-(s+k) l})^mult, s > 1. Diagnostic only.
double selberg_z_product(const fuchsian::LengthSpectrum& spectrum, double s);

}  // namespace cuspdet::zeta
