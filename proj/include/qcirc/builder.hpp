#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcirc/graph.hpp"
#include "qcirc/netlist.hpp"

namespace qcirc {

// One -A*cos(w . phi + theta) contribution to the potential.
struct CosineTerm {
  double amplitude = 0.0;     // junction energy, internal units
  Eigen::VectorXd w;          // coefficients over the coordinate list
  double offset = 0.0;        // external flux offset, radians
};

// Classical circuit energy in flux coordinates (and, after the Legendre
// transform, in charge form). Quadratic potential is (1/2) phi^T ind phi,
// plus lin . phi from flux-biased inductors, plus the cosine list.
struct ClassicalSystem {
  Eigen::MatrixXd cap;        // kinetic matrix
  Eigen::MatrixXd ind;        // 1/L quadratic potential matrix
  Eigen::VectorXd lin;        // linear inductive drive coefficients
  std::vector<CosineTerm> cosines;
  std::vector<std::string> labels;   // coordinate names
  Eigen::MatrixXd cap_inv;    // set by legendre_transform
  bool charge_form = false;
  std::vector<int> coord_nodes;      // node ids, when in node coordinates

  int dim() const { return static_cast<int>(cap.rows()); }
  // Potential value/gradient/Hessian at a point (cosines included).
  double potential(const Eigen::VectorXd& phi) const;
  Eigen::VectorXd potential_grad(const Eigen::VectorXd& phi) const;
  Eigen::MatrixXd potential_hess(const Eigen::VectorXd& phi) const;
};

Eigen::MatrixXd capacitance_matrix(const CircuitGraph& graph);
Eigen::MatrixXd inductance_matrix(const CircuitGraph& graph);  // returns 1/L matrix

// Assemble the full classical system in node coordinates. External fluxes live
// on closure (link) branches: junction links get a cosine offset, inductor
// links get the linear cross term, capacitor links drop static flux.
ClassicalSystem build_classical_system(const CircuitGraph& graph, const SpanningTree& tree,
                                       const IntMatrix& floop);

// Flux-tunable symmetric junction pair: effective energy 2 E_J |cos(flux/2)|.
double squid_effective_ej(double ej, double flux);

struct ModeBasis {
  Eigen::MatrixXd V;     // orthonormal columns, diagonalizes the kinetic matrix
  Eigen::VectorXd chi;   // squared mode frequencies of the quadratic problem
  Eigen::VectorXd kinetic_eigs;  // eigenvalues of the kinetic matrix, per column
  Eigen::MatrixXd K;     // V^T cap V
};

// Eigenmode basis of the quadratic problem. V diagonalizes the symmetric
// kinetic matrix; chi are the squared frequencies (eigenvalues of C^-1 L^-1),
// ascending. Deterministic: degenerate subspaces are resolved by a secondary
// lexicographic sort and the largest-magnitude entry of each column is
// positive.
ModeBasis normal_modes(const Eigen::MatrixXd& cap, const Eigen::MatrixXd& ind);

ClassicalSystem change_basis(const ClassicalSystem& sys, const Eigen::MatrixXd& V);

// Swap to charge form: kinetic (1/2) q^T C^-1 q. Requires invertible C.
ClassicalSystem legendre_transform(const ClassicalSystem& sys);

// Eliminate coordinates with an all-zero kinetic row via their static
// constraint. Only quadratic participation is supported; a passive coordinate
// inside a cosine argument is an error.
ClassicalSystem eliminate_passive(const ClassicalSystem& sys);

struct NodeEnergies {
  double ec = 0.0;  // from C^-1 diagonal
  double el = 0.0;  // half the 1/L diagonal
  double ej = 0.0;  // junction energy meeting the node
};

std::vector<NodeEnergies> effective_energies(const ClassicalSystem& sys);

// Location of the global potential minimum (multi-start Newton over the
// cosine-coupled coordinates) and the system re-expanded about it.
Eigen::VectorXd potential_minimum(const ClassicalSystem& sys);
ClassicalSystem shift_to_minimum(const ClassicalSystem& sys, Eigen::VectorXd* where = nullptr);

// Per-mode quantization constants derived from the charge-form system at its
// potential minimum.
struct ModeQuantization {
  double ec = 0.0;
  double el = 0.0;
  double ej = 0.0;     // effective junction curvature energy at the minimum
  double zeta = 0.0;   // sqrt(4 Ec / (El + Ej/2))
  double omega = 0.0;  // 4 sqrt(Ec (El + Ej/2))
  double alpha = 0.0;  // -(zeta^2/8) * quartic junction energy
  int dim = 10;        // Fock cutoff
};

std::vector<ModeQuantization> mode_quantizations(const ClassicalSystem& sys);

// Twig-coordinate equations of motion built directly from the cut matrix:
// mass M = FC D_C FC^T, spring K = FC L+ FC^T, with the pseudo-inverse L+
// obtained by inverting the inductor submatrix and zero-padding.
struct TwigSystem {
  Eigen::MatrixXd M;
  Eigen::MatrixXd K;
  Eigen::MatrixXd Lplus;      // B x B padded pseudo-inverse
  Eigen::VectorXd Q0;         // flux-induced offset charges (zero for static flux)
  Eigen::VectorXd I0;         // flux- and bias-induced currents
  Eigen::VectorXd Jc;         // per-branch critical currents
  std::vector<std::string> labels;  // twig branch names
};

TwigSystem twig_system(const CircuitGraph& graph, const SpanningTree& tree,
                       const IntMatrix& fcut);

}  // namespace qcirc
