#pragma once

#include <string>
#include <vector>

#include "qcirc/fock.hpp"

namespace qcirc {

// Project a multi-mode operator onto the lowest `keep[k]` harmonic levels of
// each mode. The operator must act on the space described by `dims`.
CMatrix truncate_fock(const CMatrix& op, const std::vector<int>& dims,
                      const std::vector<int>& keep);

// Project an operator onto the span of the lowest `keep` eigenvectors of a
// reference Hamiltonian (columns of the phase-fixed eigensystem).
CMatrix truncate_eigen(const CMatrix& op, const Eigensystem& es, int keep);

// Coefficients of a 2^n-dimensional Hermitian operator over the tensor-product
// Pauli basis. Entry `label` uses characters I, X, Y, Z per qubit.
struct PauliTerm {
  std::string label;
  double coefficient = 0.0;
};
std::vector<PauliTerm> pauli_decompose(const CMatrix& op, double drop_below = 1e-12);

// Closed form for the four lowest levels of exp(i sqrt(zeta/2)(b^dag + b)),
// written directly in terms of zeta (no matrix exponential).
CMatrix four_level_exponential(double zeta);

// Normal-ordered ladder monomial prod_k (b_k^dag)^p_k (b_k)^q_k with a scalar
// coefficient; the building block for symbolic rotating-wave reasoning.
struct LadderTerm {
  Complex coefficient{0.0, 0.0};
  std::vector<int> raise;  // p_k per mode
  std::vector<int> lower;  // q_k per mode

  // Net mode-frequency of the term, sum_k omega_k (p_k - q_k).
  double detuning(const std::vector<double>& omegas) const;
};

// Drop terms rotating faster than min(|omega_k|) / threshold_ratio in the
// frame rotating at each mode's own frequency (i.e. keep near-resonant terms).
std::vector<LadderTerm> rwa_filter(const std::vector<LadderTerm>& terms,
                                   const std::vector<double>& omegas,
                                   double threshold_ratio = 10.0);

// Realize a ladder-term sum as a matrix on the given cutoffs.
CMatrix ladder_matrix(const std::vector<LadderTerm>& terms, const std::vector<int>& dims);

// H in the frame rotating with H0 at time t: U^dag H U - H0, U = exp(-i H0 t).
CMatrix rotating_frame(const CMatrix& h, const CMatrix& h0, double t);

// Quartic ladder expansion of a single mode's cosine about its minimum, after
// the rotating-wave filter: alpha/2 b^dag b^dag b b plus the dressed shift
// alpha b^dag b.
struct AnharmonicityReport {
  double omega_bare = 0.0;
  double alpha = 0.0;
  double omega_dressed = 0.0;  // omega_bare + alpha
};
AnharmonicityReport anharmonicity_report(const ModeQuantization& mode);

}  // namespace qcirc
