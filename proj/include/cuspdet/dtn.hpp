#pragma once

#include <complex>

namespace cuspdet::dtn {

using Complex = std::complex<double>;

// Multiplier of the n-th Fourier mode of the cusp part N_2 of the
// Dirichlet-to-Neumann operator at z = s(1-s), cut at height beta >= 1.
//   n != 0:  -s + x K_{s+1/2}(x) / K_{s-1/2}(x),  x = 2 pi |n| beta^2
//   n == 0:  s - 1 for Re s > 1/2, -s for Re s < 1/2
// Complex s is supported for |Im s| <= 10.
Complex n2_symbol(Complex s, int n, double beta);

// Mode-n eigenvalue of beta * sqrt(Laplacian on the circle): 2 pi |n| beta^2.
double n2_zero_symbol(int n, double beta);

struct SplitInputs {
    double det_compact;     // Dirichlet determinant of the compact piece
    double det_cusp_modes;  // determinant of the nonzero cusp modes
    double detstar_R;       // reduced determinant of the DtN-type operator R
    double area;
    double boundary_length;

    void validate() const;
};

// det(Delta, Delta_{beta,0}) = (area / boundary_length) det*R det_compact det_cusp_modes
double splitting_det(const SplitInputs& in);

}  // namespace cuspdet::dtn
