#include "qcirc/builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "qcirc/units.hpp"

namespace qcirc {

double ClassicalSystem::potential(const Eigen::VectorXd& phi) const {
  double u = 0.5 * phi.dot(ind * phi) + lin.dot(phi);
  for (const auto& t : cosines) u -= t.amplitude * std::cos(t.w.dot(phi) + t.offset);
  return u;
}

Eigen::VectorXd ClassicalSystem::potential_grad(const Eigen::VectorXd& phi) const {
  Eigen::VectorXd g = ind * phi + lin;
  for (const auto& t : cosines) g += t.amplitude * std::sin(t.w.dot(phi) + t.offset) * t.w;
  return g;
}

Eigen::MatrixXd ClassicalSystem::potential_hess(const Eigen::VectorXd& phi) const {
  Eigen::MatrixXd h = ind;
  for (const auto& t : cosines)
    h += t.amplitude * std::cos(t.w.dot(phi) + t.offset) * (t.w * t.w.transpose());
  return h;
}

namespace {

// Shared two-terminal accumulation rule: off-diagonals get -v, diagonals the
// sum of connected values; ground-connected values appear on diagonals only.
void accumulate(Eigen::MatrixXd& m, const CircuitGraph& g, int from, int to, double v) {
  auto idx = [&](int node) -> int {
    auto it = g.coord_index.find(node);
    return it == g.coord_index.end() ? -1 : it->second;
  };
  int i = idx(from), j = idx(to);
  if (i >= 0) m(i, i) += v;
  if (j >= 0) m(j, j) += v;
  if (i >= 0 && j >= 0) {
    m(i, j) -= v;
    m(j, i) -= v;
  }
}

}  // namespace

Eigen::MatrixXd capacitance_matrix(const CircuitGraph& graph) {
  const int n = static_cast<int>(graph.coord_nodes.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (const auto& b : graph.spec.branches)
    if (b.kind == BranchKind::Capacitor) accumulate(c, graph, b.from, b.to, b.internal());
  return c;
}

Eigen::MatrixXd inductance_matrix(const CircuitGraph& graph) {
  const int n = static_cast<int>(graph.coord_nodes.size());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& b : graph.spec.branches)
    if (b.kind == BranchKind::Inductor) accumulate(l, graph, b.from, b.to, 1.0 / b.internal());
  return l;
}

ClassicalSystem build_classical_system(const CircuitGraph& graph, const SpanningTree& tree,
                                       const IntMatrix& floop) {
  (void)floop;  // loop structure is implied by link order
  ClassicalSystem sys;
  const int n = static_cast<int>(graph.coord_nodes.size());
  sys.cap = capacitance_matrix(graph);
  sys.ind = inductance_matrix(graph);
  sys.lin = Eigen::VectorXd::Zero(n);
  sys.coord_nodes = graph.coord_nodes;
  for (int node : graph.coord_nodes) sys.labels.push_back("phi" + std::to_string(node));

  std::map<int, int> loop_of_link;  // branch id -> fundamental loop index
  for (size_t i = 0; i < tree.link_ids.size(); ++i)
    loop_of_link[tree.link_ids[i]] = static_cast<int>(i);

  // Validate declared fluxes against the loop set.
  for (const auto& f : graph.spec.external_flux) {
    if (f.loop < 0 || f.loop >= static_cast<int>(tree.link_ids.size()))
      throw InputError("FluxOnUndeclaredLoop",
                       "external flux declared for loop " + std::to_string(f.loop) +
                           " but the tree has only " + std::to_string(tree.link_ids.size()) +
                           " fundamental loops");
  }

  auto coeff_vector = [&](const Branch& b) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    auto it = graph.coord_index.find(b.from);
    if (it != graph.coord_index.end()) w(it->second) += 1.0;
    it = graph.coord_index.find(b.to);
    if (it != graph.coord_index.end()) w(it->second) -= 1.0;
    return w;
  };

  for (const auto& b : graph.spec.branches) {
    double flux = 0.0;
    auto lit = loop_of_link.find(b.id);
    if (lit != loop_of_link.end()) flux = graph.flux_for_loop(lit->second);

    if (b.kind == BranchKind::Junction) {
      CosineTerm t;
      t.amplitude = b.internal();
      t.w = coeff_vector(b);
      t.offset = flux;
      sys.cosines.push_back(std::move(t));
    } else if (b.kind == BranchKind::Inductor && flux != 0.0) {
      // (1/2L)(dphi + flux)^2: quadratic part is already in `ind`; keep the
      // cross term and drop the constant.
      sys.lin += (flux / b.internal()) * coeff_vector(b);
    }
    // Capacitor links drop static flux (time-independent assumption); sources
    // do not enter the node-coordinate energy.
  }
  return sys;
}

double squid_effective_ej(double ej, double flux) {
  return 2.0 * ej * std::abs(std::cos(flux / 2.0));
}

ModeBasis normal_modes(const Eigen::MatrixXd& cap, const Eigen::MatrixXd& ind) {
  const int n = static_cast<int>(cap.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cap);
  if (es.info() != Eigen::Success)
    throw NumericError("EigenSolverFailed", "kinetic matrix eigendecomposition failed");

  // Deterministic column fixing: ascending eigenvalue; within numerically
  // degenerate clusters sort lexicographically by rounded entries; then make
  // the largest-magnitude entry positive.
  Eigen::MatrixXd V = es.eigenvectors();
  Eigen::VectorXd ev = es.eigenvalues();
  double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto lex_less = [&](int a, int b) {
    for (int r = 0; r < n; ++r) {
      double xa = std::round(V(r, a) * 1e9), xb = std::round(V(r, b) * 1e9);
      if (xa != xb) return xa < xb;
    }
    return false;
  };
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (std::abs(ev(a) - ev(b)) > 1e-9 * scale) return ev(a) < ev(b);
    return lex_less(a, b);
  });

  ModeBasis mb;
  mb.V.resize(n, n);
  mb.kinetic_eigs.resize(n);
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXd col = V.col(perm[c]);
    int imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    if (col(imax) < 0) col = -col;
    mb.V.col(c) = col;
    mb.kinetic_eigs(c) = ev(perm[c]);
  }
  mb.K = mb.V.transpose() * cap * mb.V;

  // Squared mode frequencies from the symmetric reduction of C^-1 L^-1,
  // restricted to the non-null subspace of C.
  mb.chi = Eigen::VectorXd::Zero(n);
  std::vector<int> live;
  for (int c = 0; c < n; ++c)
    if (mb.kinetic_eigs(c) > 1e-12 * scale) live.push_back(c);
  if (!live.empty()) {
    Eigen::MatrixXd Vl(n, live.size());
    Eigen::VectorXd dl(live.size());
    for (size_t k = 0; k < live.size(); ++k) {
      Vl.col(k) = mb.V.col(live[k]);
      dl(k) = 1.0 / std::sqrt(mb.kinetic_eigs(live[k]));
    }
    Eigen::MatrixXd red =
        dl.asDiagonal() * (Vl.transpose() * ind * Vl) * dl.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(red);
    Eigen::VectorXd freqs2 = es2.eigenvalues();
    // Report ascending over the live modes; null-kinetic coordinates keep 0.
    for (size_t k = 0; k < live.size(); ++k) mb.chi(live[k]) = freqs2(k);
  }
  return mb;
}

ClassicalSystem change_basis(const ClassicalSystem& sys, const Eigen::MatrixXd& V) {
  if (V.rows() != sys.dim() || V.cols() != sys.dim())
    throw InputError("NonOrthonormalBasis", "basis dimensions do not match system");
  if (!(V.transpose() * V).isIdentity(1e-10))
    throw InputError("NonOrthonormalBasis", "basis is not orthonormal");

  ClassicalSystem out;
  out.cap = V.transpose() * sys.cap * V;
  out.ind = V.transpose() * sys.ind * V;
  out.lin = V.transpose() * sys.lin;
  out.cosines = sys.cosines;
  for (auto& t : out.cosines) t.w = V.transpose() * t.w;
  for (int i = 0; i < sys.dim(); ++i) out.labels.push_back("psi" + std::to_string(i + 1));
  out.charge_form = false;
  return out;
}

ClassicalSystem legendre_transform(const ClassicalSystem& sys) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.cap);
  if (!lu.isInvertible())
    throw NumericError("SingularCapacitanceMatrix",
                       "kinetic matrix is singular; ground the circuit or drop the CM mode");
  ClassicalSystem out = sys;
  out.cap_inv = lu.inverse();
  out.charge_form = true;
  return out;
}

ClassicalSystem eliminate_passive(const ClassicalSystem& sys) {
  std::vector<int> dead, live;
  for (int i = 0; i < sys.dim(); ++i) {
    if (sys.cap.row(i).cwiseAbs().maxCoeff() == 0.0)
      dead.push_back(i);
    else
      live.push_back(i);
  }
  if (dead.empty()) return sys;
  for (int d : dead)
    for (const auto& t : sys.cosines)
      if (std::abs(t.w(d)) > 0)
        throw InputError("NonlinearPassiveCoordinate",
                         "massless coordinate " + sys.labels[d] +
                             " appears in a cosine; no closed-form elimination");

  // Static constraint: ind_dd phi_d + ind_dl phi_l + lin_d = 0. Substitute the
  // solution (Schur complement on the quadratic form).
  auto pick = [](const Eigen::MatrixXd& m, const std::vector<int>& r,
                 const std::vector<int>& c) {
    Eigen::MatrixXd out(r.size(), c.size());
    for (size_t i = 0; i < r.size(); ++i)
      for (size_t j = 0; j < c.size(); ++j) out(i, j) = m(r[i], c[j]);
    return out;
  };
  Eigen::MatrixXd Add = pick(sys.ind, dead, dead);
  Eigen::MatrixXd Adl = pick(sys.ind, dead, live);
  Eigen::MatrixXd All = pick(sys.ind, live, live);
  Eigen::VectorXd bd(dead.size()), bl(live.size());
  for (size_t i = 0; i < dead.size(); ++i) bd(i) = sys.lin(dead[i]);
  for (size_t i = 0; i < live.size(); ++i) bl(i) = sys.lin(live[i]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Add);
  if (!lu.isInvertible())
    throw NumericError("SingularConstraint", "passive-coordinate constraint is singular");

  ClassicalSystem out;
  out.cap = pick(sys.cap, live, live);
  out.ind = All - Adl.transpose() * lu.solve(Adl);
  out.lin = bl - Adl.transpose() * lu.solve(bd);
  for (const auto& t : sys.cosines) {
    CosineTerm nt;
    nt.amplitude = t.amplitude;
    nt.offset = t.offset;
    nt.w.resize(live.size());
    for (size_t i = 0; i < live.size(); ++i) nt.w(i) = t.w(live[i]);
    out.cosines.push_back(std::move(nt));
  }
  for (int i : live) out.labels.push_back(sys.labels[i]);
  return out;
}

std::vector<NodeEnergies> effective_energies(const ClassicalSystem& sys) {
  if (!sys.charge_form)
    throw InputError("NotChargeForm", "run the Legendre transform first");
  std::vector<NodeEnergies> out(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) {
    out[i].ec = sys.cap_inv(i, i) / 8.0;
    out[i].el = sys.ind(i, i) / 2.0;
    for (const auto& t : sys.cosines)
      if (std::abs(t.w(i)) > 1e-12) out[i].ej += t.amplitude;
  }
  return out;
}

Eigen::VectorXd potential_minimum(const ClassicalSystem& sys) {
  const int n = sys.dim();
  // Coordinates that appear in some cosine get grid starts over [-pi, pi);
  // purely quadratic coordinates start at the quadratic stationary point.
  std::vector<int> wiggly;
  for (int i = 0; i < n; ++i)
    for (const auto& t : sys.cosines)
      if (std::abs(t.w(i)) > 1e-12) {
        wiggly.push_back(i);
        break;
      }
  if (sys.cosines.empty()) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.ind);
    if (lu.isInvertible()) return -lu.solve(sys.lin);
    return Eigen::VectorXd::Zero(n);
  }

  const int grid = 5;
  long starts = 1;
  for (size_t k = 0; k < wiggly.size() && starts < 15625; ++k) starts *= grid;
  starts = std::min<long>(starts, 15625);  // cap at 5^6

  auto newton = [&](Eigen::VectorXd phi) {
    for (int it = 0; it < 80; ++it) {
      Eigen::VectorXd g = sys.potential_grad(phi);
      if (g.norm() < 1e-13) break;
      Eigen::MatrixXd h = sys.potential_hess(phi);
      // Regularize toward gradient descent when the Hessian is indefinite.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      double lmin = es.eigenvalues().minCoeff();
      if (lmin < 1e-10) h += (1e-6 + std::abs(lmin)) * Eigen::MatrixXd::Identity(n, n);
      Eigen::VectorXd step = h.ldlt().solve(g);
      double t = 1.0, u0 = sys.potential(phi);
      for (int ls = 0; ls < 30 && sys.potential(phi - t * step) > u0; ++ls) t *= 0.5;
      phi -= t * step;
    }
    return phi;
  };

  Eigen::VectorXd best = newton(Eigen::VectorXd::Zero(n));
  double ubest = sys.potential(best);
  std::vector<int> counter(wiggly.size(), 0);
  for (long s = 0; s < starts; ++s) {
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
    long rem = s;
    for (size_t k = 0; k < wiggly.size(); ++k) {
      int g = static_cast<int>(rem % grid);
      rem /= grid;
      phi(wiggly[k]) = -units::pi + (2.0 * units::pi) * g / grid;
    }
    Eigen::VectorXd cand = newton(phi);
    double u = sys.potential(cand);
    if (u < ubest - 1e-12) {
      ubest = u;
      best = cand;
    }
  }
  return best;
}

ClassicalSystem shift_to_minimum(const ClassicalSystem& sys, Eigen::VectorXd* where) {
  Eigen::VectorXd phi0 = potential_minimum(sys);
  if (where) *where = phi0;
  ClassicalSystem out = sys;
  // phi -> phi0 + phi: quadratic and cosine offsets absorb the shift; the new
  // linear coefficient is the (vanishing) gradient minus cosine gradients,
  // which are kept inside the shifted offsets.
  out.lin = sys.ind * phi0 + sys.lin;
  for (auto& t : out.cosines) t.offset += t.w.dot(phi0);
  return out;
}

std::vector<ModeQuantization> mode_quantizations(const ClassicalSystem& sys) {
  if (!sys.charge_form)
    throw InputError("NotChargeForm", "run the Legendre transform first");
  std::vector<ModeQuantization> out(sys.dim());
  for (int i = 0; i < sys.dim(); ++i) {
    ModeQuantization& m = out[i];
    m.ec = sys.cap_inv(i, i) / 8.0;
    m.el = sys.ind(i, i) / 2.0;
    double quart = 0.0;
    for (const auto& t : sys.cosines) {
      double c = std::cos(t.offset);
      m.ej += t.amplitude * c * t.w(i) * t.w(i);
      quart += t.amplitude * c * std::pow(t.w(i), 4);
    }
    double denom = m.el + m.ej / 2.0;
    if (denom <= 0)
      throw NumericError("UnstableMode",
                         "mode " + sys.labels[i] + " has non-positive curvature");
    m.zeta = std::sqrt(4.0 * m.ec / denom);
    m.omega = 4.0 * std::sqrt(m.ec * denom);
    m.alpha = -(m.zeta * m.zeta / 8.0) * quart;
  }
  return out;
}

TwigSystem twig_system(const CircuitGraph& graph, const SpanningTree& tree,
                       const IntMatrix& fcut) {
  const int n_b = graph.num_branches();
  std::vector<int> order = tree.branch_order();

  Eigen::VectorXd dcap = Eigen::VectorXd::Zero(n_b);
  Eigen::VectorXd jc = Eigen::VectorXd::Zero(n_b);
  std::vector<int> inductor_pos;
  for (int j = 0; j < n_b; ++j) {
    const Branch& b = graph.branch_by_id(order[j]);
    if (b.kind == BranchKind::Capacitor) dcap(j) = b.internal();
    if (b.kind == BranchKind::Junction) jc(j) = b.internal();  // I_c = E_J here
    if (b.kind == BranchKind::Inductor) inductor_pos.push_back(j);
  }

  // Inductor submatrix with mutual couplings, then invert and zero-pad.
  const int n_l = static_cast<int>(inductor_pos.size());
  Eigen::MatrixXd Lsub = Eigen::MatrixXd::Zero(n_l, n_l);
  std::map<int, int> lidx;
  for (int k = 0; k < n_l; ++k) {
    lidx[order[inductor_pos[k]]] = k;
    Lsub(k, k) = graph.branch_by_id(order[inductor_pos[k]]).internal();
  }
  for (const auto& m : graph.spec.mutual) {
    auto ia = lidx.find(m.a), ib = lidx.find(m.b);
    if (ia == lidx.end() || ib == lidx.end())
      throw InputError("MutualOnNonInductor", "mutual inductance must couple two inductors");
    Lsub(ia->second, ib->second) = m.internal();
    Lsub(ib->second, ia->second) = m.internal();
  }
  Eigen::MatrixXd Lplus = Eigen::MatrixXd::Zero(n_b, n_b);
  if (n_l > 0) {
    Eigen::MatrixXd Linv;
    if (n_l == 1) {
      // Direct reciprocal keeps single-inductor circuits bit-exact.
      if (!(Lsub(0, 0) > 0))
        throw NumericError("NonPositiveDefiniteInductorBlock",
                           "inductor submatrix is not positive definite");
      Linv = Eigen::MatrixXd::Constant(1, 1, 1.0 / Lsub(0, 0));
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(Lsub);
      if (llt.info() != Eigen::Success)
        throw NumericError("NonPositiveDefiniteInductorBlock",
                           "inductor submatrix is not positive definite");
      Linv = llt.solve(Eigen::MatrixXd::Identity(n_l, n_l));
    }
    for (int a = 0; a < n_l; ++a)
      for (int b = 0; b < n_l; ++b) Lplus(inductor_pos[a], inductor_pos[b]) = Linv(a, b);
  }

  Eigen::MatrixXd FC = fcut.cast<double>();
  TwigSystem ts;
  // Explicit ascending-index accumulation keeps these reproducible down to the
  // last bit against hand-written per-entry formulas.
  const int n_rows = static_cast<int>(FC.rows());
  ts.M = Eigen::MatrixXd::Zero(n_rows, n_rows);
  ts.K = Eigen::MatrixXd::Zero(n_rows, n_rows);
  for (int r = 0; r < n_rows; ++r)
    for (int c = 0; c < n_rows; ++c) {
      double m = 0.0, k = 0.0;
      for (int j = 0; j < n_b; ++j) m += FC(r, j) * dcap(j) * FC(c, j);
      for (int a = 0; a < n_b; ++a)
        for (int b = 0; b < n_b; ++b) k += FC(r, a) * Lplus(a, b) * FC(c, b);
      ts.M(r, c) = m;
      ts.K(r, c) = k;
    }
  ts.Lplus = Lplus;
  ts.Jc = jc;

  // Static external fluxes: Q0 (needs flux time-derivatives) is zero; I0 picks
  // up flux over inductive links plus any bias currents.
  const int n_t = static_cast<int>(tree.twig_ids.size());
  Eigen::VectorXd fluxvec = Eigen::VectorXd::Zero(n_b);
  for (size_t i = 0; i < tree.link_ids.size(); ++i)
    fluxvec(n_t + static_cast<int>(i)) = graph.flux_for_loop(static_cast<int>(i));
  ts.Q0 = Eigen::VectorXd::Zero(n_t);
  ts.I0 = FC * (Lplus * fluxvec);
  Eigen::VectorXd bias = Eigen::VectorXd::Zero(n_b);
  for (int j = 0; j < n_b; ++j) {
    const Branch& b = graph.branch_by_id(order[j]);
    if (b.kind == BranchKind::CurrentSource) bias(j) = b.internal();
  }
  ts.I0 += FC * bias;

  for (int id : tree.twig_ids) ts.labels.push_back("Phi_b" + std::to_string(id));
  return ts;
}

}  // namespace qcirc
