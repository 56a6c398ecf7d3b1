#include <doctest.h>

#include <map>

#include "qcirc/truncate.hpp"

using namespace qcirc;

namespace {

CMatrix pauli(const std::string& which) {
  CMatrix m(2, 2);
  if (which == "X") m << 0, 1, 1, 0;
  if (which == "Y") m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  if (which == "Z") m << 1, 0, 0, -1;
  if (which == "I") m << 1, 0, 0, 1;
  return m;
}

// Traceless part of the top-left 2x2 block of a single-mode operator.
CMatrix two_level(const CMatrix& op, const std::vector<int>& dims) {
  std::vector<int> keep(dims.size(), 2);
  CMatrix t = truncate_fock(op, dims, keep);
  int d = static_cast<int>(t.rows());
  return t - (t.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
}

}  // namespace

TEST_CASE("two-level truncation table for ladder monomials") {
  const int dim = 12;
  CMatrix bd = create_op(dim), b = destroy_op(dim);
  CMatrix plus = bd + b, minus = bd - b;

  struct Row {
    CMatrix op;
    CMatrix expected;  // traceless part
    const char* label;
  };
  std::vector<Row> rows = {
      {minus, Complex(0, -1) * pauli("Y"), "b+ - b"},
      {plus, pauli("X"), "b+ + b"},
      // Both squares have traceless part +Z: diag(-1,-3) and diag(1,3).
      {minus * minus, pauli("Z"), "(b+ - b)^2"},
      {plus * plus, -pauli("Z"), "(b+ + b)^2"},
      {plus * plus * plus, 3.0 * pauli("X"), "(b+ + b)^3"},
      {plus * plus * plus * plus, -6.0 * pauli("Z"), "(b+ + b)^4"},
  };
  for (const auto& r : rows) {
    CAPTURE(r.label);
    CMatrix got = two_level(r.op, {dim});
    CHECK((got - r.expected).cwiseAbs().maxCoeff() < 1e-12);
  }

  // Two-mode products.
  std::vector<int> dims2 = {dim, dim};
  CMatrix m1 = embed(minus, 0, dims2), m2 = embed(minus, 1, dims2);
  CMatrix p1 = embed(plus, 0, dims2), p2 = embed(plus, 1, dims2);

  CMatrix yy = kron(pauli("Y"), pauli("Y"));
  CHECK((two_level(m1 * m2, dims2) + yy).cwiseAbs().maxCoeff() < 1e-12);
  CMatrix xx = kron(pauli("X"), pauli("X"));
  CHECK((two_level(p1 * p2, dims2) - xx).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((two_level(p1 * p1 * p1 * p2, dims2) - 3.0 * xx).cwiseAbs().maxCoeff() < 1e-12);
  CMatrix quad = kron(pauli("Z"), pauli("Z")) - 2.0 * kron(pauli("Z"), pauli("I")) -
                 2.0 * kron(pauli("I"), pauli("Z"));
  CHECK((two_level(p1 * p1 * p2 * p2, dims2) - quad).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("three-level matrices have the exact integer/sqrt2 entries") {
  const int dim = 12;
  CMatrix plus = create_op(dim) + destroy_op(dim);
  auto m3 = [&](const CMatrix& op) { return truncate_fock(op, {dim}, {3}); };

  CMatrix sq(3, 3), cube(3, 3), quart(3, 3);
  double r2 = std::sqrt(2.0);
  sq << 1, 0, r2, 0, 3, 0, r2, 0, 5;
  cube << 0, 3, 0, 3, 0, 6 * r2, 0, 6 * r2, 0;
  quart << 3, 0, 6 * r2, 0, 15, 0, 6 * r2, 0, 39;
  CHECK((m3(plus * plus) - sq).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m3(plus * plus * plus) - cube).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m3(plus * plus * plus * plus) - quart).cwiseAbs().maxCoeff() < 1e-12);

  // The quartic diagonal spreads the level spacings: 12 and then 24.
  CHECK(quart(1, 1) - quart(0, 0) == 12.0);
  CHECK(quart(2, 2) - quart(1, 1) == 24.0);
}

TEST_CASE("four-level exponential closed form vs large-basis projection") {
  for (double zeta : {0.1, 0.2, 0.4}) {
    CAPTURE(zeta);
    const int big = 40;
    CMatrix d = displacement_exp(std::sqrt(zeta / 2.0), big);
    CMatrix projected = truncate_fock(d, {big}, {4});
    CMatrix closed = four_level_exponential(zeta);
    CHECK((projected - closed).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("eigenbasis truncation diagonalizes the reference Hamiltonian") {
  const int dim = 25;
  CMatrix n = number_op(dim);
  CMatrix plus = create_op(dim) + destroy_op(dim);
  CMatrix h = 5.0 * n - 0.05 * plus * plus * plus * plus;
  Eigensystem es = eigensystem(h);
  CMatrix h3 = truncate_eigen(h, es, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j)
        CHECK(h3(i, j).real() == doctest::Approx(es.values(i)).epsilon(1e-12));
      else
        CHECK(std::abs(h3(i, j)) < 1e-10);
    }
  }
}

TEST_CASE("pauli decomposition round-trips a random Hermitian operator") {
  std::srand(7);
  CMatrix a = CMatrix::Random(4, 4);
  CMatrix h = a + a.adjoint();
  auto terms = pauli_decompose(h, 0.0);
  CMatrix rebuilt = CMatrix::Zero(4, 4);
  for (const auto& t : terms) {
    CMatrix p = CMatrix::Identity(1, 1);
    for (char c : t.label) p = kron(p, pauli(std::string(1, c)));
    rebuilt += t.coefficient * p;
  }
  CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(pauli_decompose(CMatrix::Identity(3, 3)), InputError);
}

TEST_CASE("rotating-wave filter keeps only near-resonant ladder terms") {
  std::vector<double> omegas = {30.0, 31.0};  // nearly resonant pair
  std::vector<LadderTerm> terms = {
      {{1.0, 0.0}, {1, 0}, {1, 0}},  // b1+ b1: static
      {{0.5, 0.0}, {1, 0}, {0, 1}},  // b1+ b2: slow (detuning 1)
      {{0.5, 0.0}, {1, 1}, {0, 0}},  // b1+ b2+: fast (detuning 61)
      {{0.2, 0.0}, {2, 0}, {0, 0}},  // b1+^2: fast
      {{0.1, 0.0}, {2, 0}, {2, 0}},  // b1+^2 b1^2: static
  };
  auto kept = rwa_filter(terms, omegas, 10.0);
  REQUIRE(kept.size() == 3);
  CHECK(kept[0].detuning(omegas) == 0.0);
  CHECK(kept[1].detuning(omegas) == doctest::Approx(-1.0));
  CHECK(kept[2].detuning(omegas) == 0.0);

  // Matrix realization matches a hand-built operator.
  CMatrix m = ladder_matrix({terms[0]}, {3, 3});
  CMatrix expected = embed(number_op(3).cast<Complex>(), 0, {3, 3});
  CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rotating frame removes the free evolution") {
  CMatrix sz = pauli("Z"), sx = pauli("X");
  double w = 12.0;
  CMatrix h0 = -0.5 * w * sz;
  // Full Hamiltonian = free part + transverse drive coupling.
  CMatrix h = h0 + 0.3 * sx;
  for (double t : {0.0, 0.17, 1.3}) {
    CAPTURE(t);
    CMatrix hr = rotating_frame(h, h0, t);
    // The free part cancels; the drive rotates in the xy plane at rate w.
    CMatrix expected = 0.3 * (std::cos(w * t) * sx + std::sin(w * t) * pauli("Y"));
    CHECK((hr - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("quartic correction report matches the mode parameters") {
  ModeQuantization m;
  m.omega = 40.0;
  m.alpha = -1.5;
  AnharmonicityReport r = anharmonicity_report(m);
  CHECK(r.omega_dressed == doctest::Approx(38.5));
}
