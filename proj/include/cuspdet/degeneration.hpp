#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cuspdet/fuchsian.hpp"
#include "cuspdet/trace_terms.hpp"
#include "cuspdet/zeta.hpp"

namespace cuspdet::degeneration {

// sum_{n>=1} e^{-n s ell} / (n (1 - e^{-n ell})), to absolute accuracy tol.
double wolpert_sum(double ell, double s, double tol = 1e-13);

// pi^2/(6 ell) + (s - 1/2) log(1 - e^{-s ell}), for 0 < ell <= 0.5
double wolpert_asymptotic(double ell, double s);

// One row of a pinching sweep. Sums over pinched classes are weighted by
// multiplicity.
//   log_det_estimate = baseline - m c - wolpert_sum + small_eig_logsum
// The o(1) offset of the limit relation is unknown and left out.
struct PinchSweepRow {
    double ell = 0;
    double wolpert_sum = 0;         // sum_DH mult * wolpert_sum(ell, 1)
    double wolpert_asymptotic = 0;  // sum_DH mult * wolpert_asymptotic(ell, 1)
    double small_eig_logsum = 0;    // sum log lambda
    double log_det_estimate = 0;
    double baseline = 0;            // log det_hyp^alpha of the limit surface
    // log of relative_determinant of the pinched spectrum, when the engine's
    // truncation window allows it
    std::optional<double> rel_log_det_check;

    void validate() const;
};

struct SweepOptions {
    int threads = 1;
    // 0 disables the relative_determinant cross-check
    double cross_check_t_max = 0;
    zeta::DeterminantOptions det;
    double wolpert_tol = 1e-13;
};

// Not from the limit theory: a stand-in with one eigenvalue scale * ell^2 per
// pinched class, since true small eigenvalues need a PDE solver.
std::map<double, trace::EigenvalueList> default_small_eigs(const std::vector<double>& ell_grid, int pinched,
                                                           double scale = 1.0);

std::vector<PinchSweepRow> pinch_sweep(const fuchsian::LengthSpectrum& base, const std::vector<int>& pinch_indices,
                                       const std::vector<double>& ell_grid,
                                       const std::map<double, trace::EigenvalueList>& small_eigs_per_ell,
                                       double baseline_logdet_hyp_alpha, const fuchsian::SurfaceData& surface,
                                       const SweepOptions& opt = {});

}  // namespace cuspdet::degeneration
