#include "qcirc/truncate.hpp"

#include <cmath>

#include "qcirc/errors.hpp"

namespace qcirc {

CMatrix truncate_fock(const CMatrix& op, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  if (dims.size() != keep.size())
    throw InputError("DimensionMismatch", "one kept-level count per mode is required");
  long total = 1, small = 1;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (keep[k] < 1 || keep[k] > dims[k])
      throw InputError("DimensionMismatch", "kept levels must lie within each cutoff");
    total *= dims[k];
    small *= keep[k];
  }
  if (op.rows() != total)
    throw InputError("DimensionMismatch", "operator does not match the mode cutoffs");

  // Column c of the selector is the basis state whose per-mode indices are the
  // mixed-radix digits of c over `keep`, mapped into the full space.
  CMatrix sel = CMatrix::Zero(total, small);
  for (long c = 0; c < small; ++c) {
    long rem = c, row = 0;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
      long digit = rem % keep[k];
      rem /= keep[k];
      long stride = 1;
      for (size_t j = k + 1; j < dims.size(); ++j) stride *= dims[j];
      row += digit * stride;
    }
    sel(row, c) = 1.0;
  }
  return sel.adjoint() * op * sel;
}

CMatrix truncate_eigen(const CMatrix& op, const Eigensystem& es, int keep) {
  if (keep < 1 || keep > es.vectors.cols())
    throw InputError("DimensionMismatch", "kept levels exceed the eigenbasis");
  CMatrix v = es.vectors.leftCols(keep);
  return v.adjoint() * op * v;
}

std::vector<PauliTerm> pauli_decompose(const CMatrix& op, double drop_below) {
  const long dim = op.rows();
  int n = 0;
  while ((1L << n) < dim) ++n;
  if ((1L << n) != dim)
    throw InputError("DimensionMismatch", "Pauli decomposition needs a 2^n space");

  const CMatrix I = CMatrix::Identity(2, 2);
  CMatrix X(2, 2), Y(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  Z << 1, 0, 0, -1;
  const CMatrix* basis[4] = {&I, &X, &Y, &Z};
  const char letters[4] = {'I', 'X', 'Y', 'Z'};

  std::vector<PauliTerm> out;
  for (long code = 0; code < (1L << (2 * n)); ++code) {
    CMatrix p = CMatrix::Identity(1, 1);
    std::string label;
    long rem = code;
    for (int q = n - 1; q >= 0; --q) {
      int digit = static_cast<int>((rem >> (2 * q)) & 3);
      p = kron(p, *basis[digit]);
      label.push_back(letters[digit]);
    }
    Complex c = (p.adjoint() * op).trace() / static_cast<double>(dim);
    if (std::abs(c.imag()) > 1e-9 * std::max(1.0, std::abs(c.real())))
      throw NumericError("NonHermitianOperator",
                         "Pauli decomposition requires a Hermitian operator");
    if (std::abs(c.real()) >= drop_below) out.push_back({label, c.real()});
  }
  return out;
}

CMatrix four_level_exponential(double zeta) {
  const double z = zeta;
  const double rt = std::sqrt(z);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0 - z / 2.0;
  m(2, 2) = 1.0 - z + z * z / 8.0;
  m(3, 3) = 1.0 - 1.5 * z + 3.0 * z * z / 8.0 - z * z * z / 48.0;
  m(0, 1) = Complex(0, 1) * std::sqrt(z / 2.0);
  m(0, 2) = -z / std::sqrt(8.0);
  m(0, 3) = Complex(0, -1) * (z * rt) / std::sqrt(48.0);
  m(1, 2) = Complex(0, 1) * rt * (1.0 - z / 4.0);
  m(1, 3) = -(std::sqrt(6.0) / 4.0) * (z - z * z / 6.0);
  m(2, 3) = Complex(0, 1) * std::sqrt(1.5 * z) * (1.0 - z / 2.0 + z * z / 24.0);
  // The operator is complex symmetric in this basis.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  return std::exp(-z / 4.0) * m;
}

double LadderTerm::detuning(const std::vector<double>& omegas) const {
  double d = 0.0;
  for (size_t k = 0; k < omegas.size(); ++k)
    d += omegas[k] * (raise[k] - lower[k]);
  return d;
}

std::vector<LadderTerm> rwa_filter(const std::vector<LadderTerm>& terms,
                                   const std::vector<double>& omegas,
                                   double threshold_ratio) {
  double wmin = 0.0;
  for (double w : omegas) {
    double a = std::abs(w);
    if (a > 0 && (wmin == 0.0 || a < wmin)) wmin = a;
  }
  const double cutoff = wmin / threshold_ratio;
  std::vector<LadderTerm> out;
  for (const auto& t : terms)
    if (std::abs(t.detuning(omegas)) < cutoff) out.push_back(t);
  return out;
}

CMatrix ladder_matrix(const std::vector<LadderTerm>& terms, const std::vector<int>& dims) {
  long total = 1;
  for (int d : dims) total *= d;
  CMatrix out = CMatrix::Zero(total, total);
  for (const auto& t : terms) {
    if (t.raise.size() != dims.size() || t.lower.size() != dims.size())
      throw InputError("DimensionMismatch", "ladder term does not match the mode count");
    CMatrix acc = CMatrix::Identity(total, total);
    for (size_t k = 0; k < dims.size(); ++k) {
      CMatrix bd = create_op(dims[k]);
      CMatrix b = destroy_op(dims[k]);
      CMatrix local = CMatrix::Identity(dims[k], dims[k]);
      for (int p = 0; p < t.raise[k]; ++p) local = bd * local;
      for (int q = 0; q < t.lower[k]; ++q) local = local * b;
      acc = acc * embed(local, static_cast<int>(k), dims);
    }
    out += t.coefficient * acc;
  }
  return out;
}

CMatrix rotating_frame(const CMatrix& h, const CMatrix& h0, double t) {
  Eigensystem es = eigensystem(h0);
  CVector phases(es.values.size());
  for (int k = 0; k < es.values.size(); ++k)
    phases(k) = std::exp(Complex(0, -es.values(k) * t));
  CMatrix u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  return u.adjoint() * h * u - h0;
}

AnharmonicityReport anharmonicity_report(const ModeQuantization& mode) {
  AnharmonicityReport r;
  r.omega_bare = mode.omega;
  r.alpha = mode.alpha;
  r.omega_dressed = mode.omega + mode.alpha;
  return r;
}

}  // namespace qcirc
