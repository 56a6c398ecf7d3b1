#include "qcirc/fock.hpp"

#include <cmath>

#include "qcirc/errors.hpp"
#include "qcirc/units.hpp"

namespace qcirc {

CMatrix destroy_op(int dim) {
  CMatrix b = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

CMatrix create_op(int dim) { return destroy_op(dim).adjoint(); }

CMatrix number_op(int dim) {
  CMatrix n = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = k;
  return n;
}

CMatrix position_quad(int dim) {
  CMatrix b = destroy_op(dim);
  return b + b.adjoint();
}

CMatrix momentum_quad(int dim) {
  CMatrix b = destroy_op(dim);
  return Complex(0, 1) * (b.adjoint() - b);
}

CMatrix flux_op(double zeta, int dim) { return std::sqrt(zeta / 2.0) * position_quad(dim); }

CMatrix charge_op(double zeta, int dim) {
  return (1.0 / std::sqrt(2.0 * zeta)) * momentum_quad(dim);
}

CMatrix displacement_exp(double k, int dim) {
  CMatrix d(dim, dim);
  const double x = k * k;
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n <= m; ++n) {
      const int a = m - n;  // order of the associated polynomial
      // Associated Laguerre L_n^(a)(x) by upward recurrence.
      double l0 = 1.0, l1 = 1.0 + a - x, lag = (n == 0) ? l0 : l1;
      for (int j = 2; j <= n; ++j) {
        double l2 = ((2.0 * j - 1.0 + a - x) * l1 - (j - 1.0 + a) * l0) / j;
        l0 = l1;
        l1 = l2;
        lag = l2;
      }
      // sqrt(n!/m!) * |k|^a in log space to stay finite at large m.
      double mag = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)) +
                            (a > 0 ? a * std::log(std::abs(k)) : 0.0) - x / 2.0);
      if (a > 0 && k == 0.0) mag = 0.0;
      Complex ik_pow(1, 0);
      const Complex ik = (k >= 0) ? Complex(0, 1) : Complex(0, -1);
      for (int j = 0; j < a; ++j) ik_pow *= ik;
      Complex val = ik_pow * mag * lag;
      d(m, n) = val;
      // <n|D|m> = conj(<m|D^dag|n>) with D(ik)^dag = D(-ik): same magnitude,
      // conjugate-free phase (ik)^a again since the operator is symmetric.
      d(n, m) = val;
    }
  }
  return d;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix embed(const CMatrix& op, int mode, const std::vector<int>& dims) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (size_t k = 0; k < dims.size(); ++k) {
    if (static_cast<int>(k) == mode) {
      if (op.rows() != dims[k])
        throw InputError("DimensionMismatch", "operator does not match mode cutoff");
      out = kron(out, op);
    } else {
      out = kron(out, CMatrix::Identity(dims[k], dims[k]));
    }
  }
  return out;
}

CMatrix exact_cosine(double amplitude, const Eigen::VectorXd& w, double theta,
                     const std::vector<double>& zetas, const std::vector<int>& dims) {
  CMatrix prod = CMatrix::Identity(1, 1);
  for (size_t k = 0; k < dims.size(); ++k) {
    double arg = w(static_cast<int>(k)) * std::sqrt(zetas[k] / 2.0);
    prod = kron(prod, displacement_exp(arg, dims[k]));
  }
  Complex phase = std::exp(Complex(0, theta));
  return -(amplitude / 2.0) * (phase * prod + std::conj(phase) * prod.adjoint());
}

FockModel build_fock_hamiltonian(const ClassicalSystem& sys_in, const FockOptions& opt) {
  if (!sys_in.charge_form)
    throw InputError("NotChargeForm", "run the Legendre transform first");

  FockModel model;
  ClassicalSystem sys =
      opt.shift ? shift_to_minimum(sys_in, &model.phi0) : sys_in;
  if (!opt.shift) model.phi0 = Eigen::VectorXd::Zero(sys.dim());
  const int n_modes = sys.dim();

  model.modes = mode_quantizations(sys);
  model.dims = opt.dims;
  if (model.dims.empty()) model.dims.assign(n_modes, 10);
  if (static_cast<int>(model.dims.size()) != n_modes)
    throw InputError("DimensionMismatch", "one cutoff per mode is required");
  std::vector<double> ng = opt.ng;
  if (ng.empty()) ng.assign(n_modes, 0.0);

  long total = 1;
  for (int d : model.dims) total *= d;
  if (total > 4096)
    throw InputError("HilbertSpaceTooLarge",
                     "dense representation capped at 4096 states");

  std::vector<double> zetas;
  for (const auto& m : model.modes) zetas.push_back(m.zeta);
  for (int k = 0; k < n_modes; ++k) {
    model.phi_ops.push_back(embed(flux_op(zetas[k], model.dims[k]), k, model.dims));
    model.n_ops.push_back(embed(charge_op(zetas[k], model.dims[k]), k, model.dims));
  }

  CMatrix H = CMatrix::Zero(total, total);
  // Kinetic: (1/2) sum_ij Cinv_ij (n_i - ng_i)(n_j - ng_j).
  CMatrix ident = CMatrix::Identity(total, total);
  std::vector<CMatrix> nshift;
  for (int k = 0; k < n_modes; ++k) nshift.push_back(model.n_ops[k] - ng[k] * ident);
  for (int i = 0; i < n_modes; ++i)
    for (int j = 0; j < n_modes; ++j)
      if (sys.cap_inv(i, j) != 0.0)
        H += 0.5 * sys.cap_inv(i, j) * (nshift[i] * nshift[j]);

  // Quadratic and linear inductive potential.
  for (int i = 0; i < n_modes; ++i) {
    if (sys.lin(i) != 0.0) H += sys.lin(i) * model.phi_ops[i];
    for (int j = 0; j < n_modes; ++j)
      if (sys.ind(i, j) != 0.0) H += 0.5 * sys.ind(i, j) * (model.phi_ops[i] * model.phi_ops[j]);
  }

  // Junction cosines.
  for (const auto& t : sys.cosines) {
    if (opt.expansion == Expansion::Exact) {
      H += exact_cosine(t.amplitude, t.w, t.offset, zetas, model.dims);
      continue;
    }
    CMatrix X = CMatrix::Zero(total, total);
    for (int i = 0; i < n_modes; ++i)
      if (t.w(i) != 0.0) X += t.w(i) * model.phi_ops[i];
    CMatrix X2 = X * X;
    CMatrix X3 = X2 * X;
    CMatrix X4 = X2 * X2;
    double c = std::cos(t.offset), s = std::sin(t.offset);
    // -A cos(X + theta) with the constant term dropped, expanded to 4th or
    // 6th order in X.
    CMatrix term = t.amplitude * (c * (X2 / 2.0 - X4 / 24.0) + s * (X - X3 / 6.0));
    if (opt.expansion == Expansion::Taylor6) {
      CMatrix X5 = X4 * X;
      CMatrix X6 = X4 * X2;
      term += t.amplitude * (s * (X5 / 120.0) - c * (X6 / 720.0));
    }
    H += term;
  }

  model.H = H;
  return model;
}

Eigen::MatrixXd charge_basis_hamiltonian(double ec, double ej, double ng, int nmax) {
  const int dim = 2 * nmax + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    double n = k - nmax;
    h(k, k) = 4.0 * ec * (n - ng) * (n - ng);
    if (k + 1 < dim) {
      h(k, k + 1) = -ej / 2.0;
      h(k + 1, k) = -ej / 2.0;
    }
  }
  return h;
}

Eigen::VectorXd spectrum(const CMatrix& h, int levels) {
  if (h.rows() > 4096)
    throw InputError("HilbertSpaceTooLarge", "dense eigensolver capped at 4096 states");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("EigenSolverFailed", "Hermitian eigensolver failed");
  Eigen::VectorXd ev = es.eigenvalues();
  if (levels < 0 || levels >= ev.size()) return ev;
  return ev.head(levels);
}

Eigensystem eigensystem(const CMatrix& h) {
  if (h.rows() > 4096)
    throw InputError("HilbertSpaceTooLarge", "dense eigensolver capped at 4096 states");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw NumericError("EigenSolverFailed", "Hermitian eigensolver failed");
  Eigensystem out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  // Deterministic phase: rotate each column so its largest-magnitude entry is
  // real and positive.
  for (int c = 0; c < out.vectors.cols(); ++c) {
    int imax = 0;
    out.vectors.col(c).cwiseAbs().maxCoeff(&imax);
    Complex z = out.vectors(imax, c);
    if (std::abs(z) > 0) out.vectors.col(c) *= std::conj(z) / std::abs(z);
  }
  return out;
}

Eigen::VectorXd converged_spectrum(const std::function<Eigen::VectorXd(int)>& solve,
                                   int levels, double tol, int start_dim, int max_dim) {
  Eigen::VectorXd prev = solve(start_dim);
  for (int dim = start_dim * 2; dim <= max_dim; dim *= 2) {
    Eigen::VectorXd cur = solve(dim);
    int n = std::min<int>(levels, std::min(prev.size(), cur.size()));
    if ((cur.head(n) - prev.head(n)).cwiseAbs().maxCoeff() < tol) return cur.head(n);
    prev = cur;
  }
  return prev.head(std::min<int>(levels, prev.size()));
}

}  // namespace qcirc
