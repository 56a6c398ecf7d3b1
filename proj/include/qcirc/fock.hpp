#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qcirc/builder.hpp"

namespace qcirc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Single-mode ladder operators on a dim-level space.
CMatrix destroy_op(int dim);
CMatrix create_op(int dim);
CMatrix number_op(int dim);

// Dimensionless quadratures: b + b^dag and i (b^dag - b).
CMatrix position_quad(int dim);
CMatrix momentum_quad(int dim);

// Mode operators for impedance zeta:
//   flux   sqrt(zeta/2) (b + b^dag)
//   charge i / sqrt(2 zeta) (b^dag - b)
CMatrix flux_op(double zeta, int dim);
CMatrix charge_op(double zeta, int dim);

// Matrix elements <m| exp(i k (b^dag + b)) |n> in closed form:
// (ik)^|m-n| sqrt(min!/max!) exp(-k^2/2) L_min^(|m-n|)(k^2).
CMatrix displacement_exp(double k, int dim);

// Kronecker product, row-major mode order (first factor is the slowest index).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Embed a single-mode operator at position `mode` of a multi-mode space.
CMatrix embed(const CMatrix& op, int mode, const std::vector<int>& dims);

// Exact multi-mode cosine -A cos(sum_i w_i phi_i + theta) as
// -(A/2) [ e^{i theta} prod_i D(i w_i sqrt(zeta_i/2)) + h.c. ].
CMatrix exact_cosine(double amplitude, const Eigen::VectorXd& w, double theta,
                     const std::vector<double>& zetas, const std::vector<int>& dims);

enum class Expansion { Taylor4, Taylor6, Exact };

struct FockOptions {
  std::vector<int> dims;       // per-mode cutoffs; empty = default 10 each
  Expansion expansion = Expansion::Taylor4;
  std::vector<double> ng;      // per-mode offset charges; empty = zeros
  bool shift = true;           // re-expand about the potential minimum first
};

struct FockModel {
  CMatrix H;
  std::vector<ModeQuantization> modes;
  std::vector<int> dims;
  std::vector<CMatrix> phi_ops;  // full-space flux operator per mode
  std::vector<CMatrix> n_ops;    // full-space charge operator per mode
  Eigen::VectorXd phi0;          // expansion point (potential minimum)

  int total_dim() const {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
  }
};

// Quantize a charge-form classical system in the harmonic basis of each
// coordinate. Junction cosines enter through `expansion` only; their quadratic
// content is never double counted against the 1/L matrix.
FockModel build_fock_hamiltonian(const ClassicalSystem& sys, const FockOptions& opt = {});

// Single-island junction Hamiltonian in the charge eigenbasis, a
// (2 nmax + 1)-dimensional tridiagonal matrix:
//   4 Ec (n - ng)^2 on the diagonal, -Ej/2 on the off-diagonals.
Eigen::MatrixXd charge_basis_hamiltonian(double ec, double ej, double ng, int nmax);

// Ascending eigenvalues of a Hermitian operator; throws above 4096 dims.
Eigen::VectorXd spectrum(const CMatrix& h, int levels = -1);

struct Eigensystem {
  Eigen::VectorXd values;   // ascending
  CMatrix vectors;          // columns, phase-fixed (largest |entry| real positive)
};
Eigensystem eigensystem(const CMatrix& h);

// Re-run `levels` eigenvalues with doubling cutoff until successive results
// agree within tol (absolute, internal units). Returns the converged values.
Eigen::VectorXd converged_spectrum(const std::function<Eigen::VectorXd(int)>& solve,
                                   int levels, double tol, int start_dim = 10,
                                   int max_dim = 160);

}  // namespace qcirc
