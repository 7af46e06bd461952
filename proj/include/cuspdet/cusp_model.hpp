#pragma once

#include <vector>

namespace cuspdet::cusp_model {

// Heights a_j >= 1 at which the model cusps start, one per cusp.
struct CuspFamily {
    std::vector<double> starts;

    static CuspFamily reference(int cusps) { return {std::vector<double>(cusps, 1.0)}; }
    void validate() const;
    double log_sum() const;  // sum of log a_j
};

// Dirichlet heat kernel of the zero-mode cusp operator on [a, inf) with
// measure y^-2 dy. Zero when y <= a or y' <= a.
double cusp_heat_kernel(double a, double y, double yp, double t);

// Tr(exp(-t D_a) - exp(-t D_1)) = -(4 pi t)^{-1/2} exp(-t/4) log a
double relative_cusp_trace(double a, double t);
double relative_cusp_trace(const CuspFamily& family, double t);

}  // namespace cuspdet::cusp_model
