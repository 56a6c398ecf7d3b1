#include <doctest.h>

#include "qcirc/builder.hpp"
#include "qcirc/fixtures.hpp"
#include "qcirc/units.hpp"

using namespace qcirc;
namespace u = qcirc::units;

namespace {

struct TwoModeParts {
  CircuitGraph graph;
  SpanningTree tree;
  double lr, cs, cr, cc, ej;
};

TwoModeParts two_mode() {
  TwoModeParts p;
  CircuitSpec spec = parse_netlist(fixture_netlist("two_mode_example"));
  p.graph = validate(spec);
  p.tree = select_spanning_tree(p.graph, TreePolicy::UserSpecified, {1, 2});
  p.lr = p.graph.branch_by_id(1).internal();
  p.cs = p.graph.branch_by_id(2).internal();
  p.cr = p.graph.branch_by_id(3).internal();
  p.cc = p.graph.branch_by_id(4).internal();
  p.ej = p.graph.branch_by_id(5).internal();
  return p;
}

}  // namespace

TEST_CASE("node-coordinate capacitance/inductance matrices") {
  TwoModeParts p = two_mode();
  Eigen::MatrixXd cap = capacitance_matrix(p.graph);
  REQUIRE(cap.rows() == 2);  // coordinates are nodes 1, 2
  CHECK(cap(0, 0) == p.cr + p.cc);
  CHECK(cap(1, 1) == p.cs + p.cc);
  CHECK(cap(0, 1) == -p.cc);
  CHECK(cap(1, 0) == -p.cc);

  Eigen::MatrixXd ind = inductance_matrix(p.graph);
  CHECK(ind(0, 0) == 1.0 / p.lr);
  CHECK(ind(1, 1) == 0.0);
  CHECK(ind(0, 1) == 0.0);
}

TEST_CASE("branch-coordinate pipeline matches the node pipeline bit for bit") {
  TwoModeParts p = two_mode();
  IntMatrix fc = f_cut_matrix(p.graph, p.tree);
  TwigSystem ts = twig_system(p.graph, p.tree, fc);

  // Twig coordinates are (resonator inductor flux, shunt capacitor flux);
  // node coordinates are (phi1, phi2). These are related by phi1 = Phi_b1,
  // phi2 = Phi_b2 here, so mass and spring matrices must agree exactly.
  CHECK(ts.M(0, 0) == p.cr + p.cc);
  CHECK(ts.M(1, 1) == p.cs + p.cc);
  CHECK(ts.M(0, 1) == -p.cc);
  CHECK(ts.M(1, 0) == -p.cc);
  CHECK(ts.K(0, 0) == 1.0 / p.lr);
  CHECK(ts.K(0, 1) == 0.0);
  CHECK(ts.K(1, 0) == 0.0);
  CHECK(ts.K(1, 1) == 0.0);

  Eigen::MatrixXd cap = capacitance_matrix(p.graph);
  Eigen::MatrixXd ind = inductance_matrix(p.graph);
  CHECK(ts.M == cap);
  CHECK(ts.K == ind);

  // No static flux and no bias sources: the offset terms vanish.
  CHECK(ts.Q0.isZero(0));
  CHECK(ts.I0.isZero(0));
  // Only the junction branch carries a critical current.
  for (int j = 0; j < ts.Jc.size(); ++j)
    CHECK(ts.Jc(j) == ((p.tree.branch_order()[j] == 5) ? p.ej : 0.0));
}

TEST_CASE("mutual inductance enters through the inverted inductor block") {
  CircuitSpec spec = parse_netlist(R"({"nodes":[0,1,2],"ground":0,"branches":[
      {"id":1,"from":1,"to":0,"kind":"L","value":2.0,"unit":"internal"},
      {"id":2,"from":2,"to":0,"kind":"L","value":3.0,"unit":"internal"},
      {"id":3,"from":1,"to":0,"kind":"C","value":1.0,"unit":"internal"},
      {"id":4,"from":2,"to":0,"kind":"C","value":1.0,"unit":"internal"}],
      "mutual":[{"a":1,"b":2,"M":1.0,"unit":"internal"}]})");
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  TwigSystem ts = twig_system(g, tree, f_cut_matrix(g, tree));
  // Inverse of [[2,1],[1,3]] is [[3,-1],[-1,2]]/5.
  CHECK(ts.K(0, 0) == doctest::Approx(3.0 / 5.0).epsilon(1e-14));
  CHECK(ts.K(1, 1) == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
  CHECK(ts.K(0, 1) == doctest::Approx(-1.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("LC circuit quantizes to the textbook frequency") {
  CircuitSpec spec = parse_netlist(fixture_netlist("lc"));
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  ClassicalSystem sys =
      build_classical_system(g, tree, f_loop_matrix(g, tree));
  sys = legendre_transform(sys);
  auto modes = mode_quantizations(sys);
  REQUIRE(modes.size() == 1);
  double l = g.branch_by_id(2).internal();
  double c = g.branch_by_id(1).internal();
  CHECK(modes[0].omega == doctest::Approx(1.0 / std::sqrt(l * c)).epsilon(1e-12));
  CHECK(modes[0].alpha == 0.0);
}

TEST_CASE("transmon effective energies and anharmonicity estimate") {
  CircuitSpec spec = parse_netlist(fixture_netlist("transmon"));
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  ClassicalSystem sys = build_classical_system(g, tree, f_loop_matrix(g, tree));
  sys = legendre_transform(sys);
  auto energies = effective_energies(sys);
  CHECK(u::energy_to_GHz(energies[0].ec) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(u::energy_to_GHz(energies[0].ej) == doctest::Approx(12.5).epsilon(1e-12));

  auto modes = mode_quantizations(sys);
  double ec = energies[0].ec, ej = energies[0].ej;
  CHECK(modes[0].omega == doctest::Approx(std::sqrt(8.0 * ec * ej)).epsilon(1e-12));
  CHECK(modes[0].alpha == doctest::Approx(-ec).epsilon(1e-12));
  CHECK(modes[0].zeta == doctest::Approx(std::sqrt(8.0 * ec / ej)).epsilon(1e-12));
}

TEST_CASE("external flux lands on the declared loop") {
  // Fluxonium with flux: the junction cosine picks up the loop phase.
  CircuitSpec spec = parse_netlist(fixture_netlist("fluxonium"));
  spec.external_flux[0].phi = 1.25;
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  // Tree prefers the junction: the inductor is a link and carries the flux.
  CHECK(tree.twig_ids == std::vector<int>{3});
  ClassicalSystem sys = build_classical_system(g, tree, f_loop_matrix(g, tree));
  // Junction is a twig: no offset on the cosine; inductive link holds the
  // linear flux cross-term instead.
  REQUIRE(sys.cosines.size() == 1);
  CHECK(sys.cosines[0].offset == 0.0);
  double l = g.branch_by_id(2).internal();
  CHECK(sys.lin(0) == doctest::Approx(1.25 / l).epsilon(1e-14));

  // Declaring flux on a nonexistent loop is an input error.
  spec.external_flux[0].loop = 7;
  CircuitGraph g2 = validate(spec);
  CHECK_THROWS_AS(
      build_classical_system(g2, select_spanning_tree(g2), f_loop_matrix(g2, tree)),
      InputError);
}

TEST_CASE("squid flux tuning and the symmetric-pair shortcut") {
  CHECK(squid_effective_ej(5.0, 0.0) == doctest::Approx(10.0));
  CHECK(squid_effective_ej(5.0, u::pi) == doctest::Approx(0.0).epsilon(1e-12));

  // Full pipeline: two junctions in a loop behave as one junction of energy
  // 2 EJ cos(flux/2) up to a phase shift; compare potential curvature minima.
  CircuitSpec spec = parse_netlist(fixture_netlist("squid"));
  double flux = 1.1;
  spec.external_flux[0].phi = flux;
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  ClassicalSystem sys = build_classical_system(g, tree, f_loop_matrix(g, tree));
  sys = legendre_transform(sys);
  Eigen::VectorXd where;
  ClassicalSystem shifted = shift_to_minimum(sys, &where);
  auto modes = mode_quantizations(shifted);
  double ej = g.branch_by_id(2).internal();
  double expected = squid_effective_ej(ej, flux);
  CHECK(modes[0].ej == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("normal modes of a floating pair decouple the center of mass") {
  CircuitSpec spec = parse_netlist(fixture_netlist("floating_pair"));
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  ClassicalSystem sys = build_classical_system(g, tree, f_loop_matrix(g, tree));

  ModeBasis mb = normal_modes(sys.cap, sys.ind);
  CHECK((mb.V.transpose() * mb.V).isIdentity(1e-12));
  CHECK(std::abs(mb.kinetic_eigs(0)) < 1e-12);  // center of mass is massless

  ClassicalSystem rotated = change_basis(sys, mb.V);
  REQUIRE(rotated.cosines.size() == 1);
  // The junction phase depends only on the difference coordinate.
  CHECK(std::abs(rotated.cosines[0].w(0)) < 1e-12);
  CHECK(std::abs(rotated.cosines[0].w(1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // The singular center of mass blocks the Legendre transform.
  CHECK_THROWS_AS(legendre_transform(rotated), NumericError);
}

TEST_CASE("massless coordinates are eliminated through their constraint") {
  // Two inductors in series through a massless intermediate node.
  CircuitSpec spec = parse_netlist(R"({"nodes":[0,1,2],"ground":0,"branches":[
      {"id":1,"from":1,"to":0,"kind":"C","value":50,"unit":"fF"},
      {"id":2,"from":1,"to":0,"kind":"JJ","value":10,"unit":"GHz"},
      {"id":3,"from":1,"to":2,"kind":"L","value":2,"unit":"nH"},
      {"id":4,"from":2,"to":0,"kind":"L","value":3,"unit":"nH"}]})");
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  ClassicalSystem sys = build_classical_system(g, tree, f_loop_matrix(g, tree));
  REQUIRE(sys.dim() == 2);
  ClassicalSystem reduced = eliminate_passive(sys);
  REQUIRE(reduced.dim() == 1);
  double l_series = g.branch_by_id(3).internal() + g.branch_by_id(4).internal();
  CHECK(reduced.ind(0, 0) == doctest::Approx(1.0 / l_series).epsilon(1e-12));
  CHECK(reduced.cosines.size() == 1);
}

TEST_CASE("potential minimum search handles a shifted double well") {
  CircuitSpec spec = parse_netlist(fixture_netlist("fluxonium"));
  spec.external_flux[0].phi = u::pi;
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  ClassicalSystem sys = build_classical_system(g, tree, f_loop_matrix(g, tree));
  sys = legendre_transform(sys);

  Eigen::VectorXd phi0 = potential_minimum(sys);
  CHECK(sys.potential_grad(phi0).norm() < 1e-9);
  // At half a flux quantum the well bottom sits away from zero phase.
  CHECK(std::abs(phi0(0)) > 0.1);
  CHECK(sys.potential(phi0) < sys.potential(Eigen::VectorXd::Zero(1)));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.potential_hess(phi0));
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}
