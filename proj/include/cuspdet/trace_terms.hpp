#pragma once

#include <complex>
#include <vector>

#include "cuspdet/cusp_model.hpp"
#include "cuspdet/fuchsian.hpp"

namespace cuspdet::trace {

using Complex = std::complex<double>;
using fuchsian::LengthSpectrum;
using fuchsian::SurfaceData;

struct Resonance {
    Complex rho;
    int order = 1;  // pole order, or minus the order of a zero
};

// Synthetic scattering determinant
//   phi(s) = phi(1/2) q^{s-1/2} prod (s - 1 + conj rho)/(s - rho)
struct ScatteringModel {
    std::vector<Resonance> resonances;
    double q = 1.0;
    double phi_half = 1.0;
    double trace_c_half = 0.0;

    // Checks Re rho < 1/2, conjugate closure with equal orders, q > 0,
    // phi_half = +-1. With cusps > 0 also checks trace_c_half = 2l - m.
    void validate(int cusps = 0) const;
};

struct EigenvalueList {
    std::vector<double> values;
    void validate(int components) const;
};

// (area/4pi) int_R exp(-t(1/4+l^2)) l tanh(pi l) dl
double identity_term(double area, double t);

// identity_term minus its small-t part area/(4 pi t) - area/(12 pi), without cancellation
double identity_term_remainder(double area, double t);

// e^{-t/4}/sqrt(16 pi t) sum_gamma mult sum_k l/sinh(k l/2) e^{-(k l)^2/4t}
double hyperbolic_trace(const LengthSpectrum& spectrum, double t, bool pinched_only = false);
// one class of length ell, multiplicity 1
double hyperbolic_class_trace(double ell, double t);

// P(t) = int_R exp(-t(1/4+r^2)) psi(1+ir) dr, by quadrature
double parabolic_p(double t);

// Small-t expansion of P(t), for 0 < t <= 1:
//   2 e^{-t/4} [ -(sqrt pi/4) t^{-1/2} log t - (sqrt pi/4)(gamma + 2 log 2) t^{-1/2}
//                + pi/4 + sum_{k>=1} D_k t^{k-1/2} ]
//   D_k = -(-1)^k B_{2k} Gamma(1/2-k) / (4k)
// terms counts the pieces after the leading log term (terms = 0 keeps it alone).
double parabolic_p_asymptotic(double t, int terms);
inline constexpr int parabolic_p_max_terms = 22;

Complex phi_log_deriv(const ScatteringModel& model, Complex s);
// -(1/4pi) int_R exp(-(1/4+l^2)t) phi'/phi(1/2+il) dl
double scattering_integral(const ScatteringModel& model, double t);
// -log q e^{-t/4}/(4 sqrt(pi t)) + 1/4 sum n(rho)[e^{-t rho(1-rho)} Erfc(sqrt t (1/2-rho)) + (rho -> conj rho)]
double scattering_erfc_sum(const ScatteringModel& model, double t);

// -P(t)/pi + e^{-t/4}(1/2 - log 2/sqrt(4 pi t)): the per-cusp difference
// between the relative trace and the regularized geometric trace.
double parabolic_block(double t);
// parabolic_block minus its singular small-t part
//   t^{-1/2} log t/(2 sqrt pi) + (gamma + log 2)/(2 sqrt pi) t^{-1/2}
// computed without cancellation.
double parabolic_block_remainder(double t);

// Terms of the geometric side, kept separately for tables.
struct TraceBreakdown {
    double identity = 0;
    double hyperbolic = 0;
    double parabolic = 0;   // P(t)
    double cusp_block = 0;  // m * parabolic_block
    double starts = 0;      // e^{-t/4}/sqrt(4 pi t) sum log a_j
    double total = 0;
};

TraceBreakdown relative_heat_trace_terms(const SurfaceData& surface, const LengthSpectrum& spectrum,
                                         const cusp_model::CuspFamily& starts, double t);

// Tr(exp(-t D) - exp(-t D_model)) from the geometric side.
double relative_heat_trace(const SurfaceData& surface, const LengthSpectrum& spectrum,
                           const cusp_model::CuspFamily& starts, double t);

// Same trace from the spectral side, for diagnostics only: eigenvalues,
// scattering integral and (Tr C(1/2) + m) e^{-t/4}/4, reference cusps at a = 1.
double spectral_side_trace(const ScatteringModel& model, const EigenvalueList& eigs, int cusps, double t);

}  // namespace cuspdet::trace
