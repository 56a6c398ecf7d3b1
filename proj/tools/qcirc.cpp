// qcirc: superconducting-circuit netlist analysis from the command line.
//
// Subcommands: analyze, graph, spectrum, truncate, simulate, fixtures.
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcirc/builder.hpp"
#include "qcirc/dynamics.hpp"
#include "qcirc/errors.hpp"
#include "qcirc/fixtures.hpp"
#include "qcirc/fock.hpp"
#include "qcirc/graph.hpp"
#include "qcirc/netlist.hpp"
#include "qcirc/truncate.hpp"
#include "qcirc/units.hpp"

using json = nlohmann::json;
namespace u = qcirc::units;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qcirc::InputError("FileNotFound", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> inputs;   // path -> fnv1a hash
  std::map<std::string, std::string> outputs;  // path -> fnv1a hash
  uint64_t seed = 0;

  void note_input(const std::string& path, const std::string& data) {
    inputs[path] = hex64(fnv1a(data));
  }
  void note_output(const std::string& path, const std::string& data) {
    outputs[path] = hex64(fnv1a(data));
  }
  void write(const std::string& out_path) const {
    json doc;
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["outputs"] = outputs;
    doc["seed"] = seed;
    std::ofstream out(out_path + ".manifest.json");
    out << doc.dump(2) << "\n";
  }
};

struct GlobalOpts {
  int cutoff = 10;
  std::string expansion = "taylor4";
  std::string basis = "node";
  int jobs = 1;
  uint64_t seed = 0;
  std::string format = "text";
  bool auto_ground = false;
};

qcirc::Expansion expansion_from(const std::string& s) {
  if (s == "taylor4") return qcirc::Expansion::Taylor4;
  if (s == "taylor6") return qcirc::Expansion::Taylor6;
  if (s == "exact") return qcirc::Expansion::Exact;
  throw qcirc::InputError("UnknownExpansion", "expansion must be taylor4, taylor6 or exact");
}

// Apply a sweep parameter: fluxN sets loop N's phase, ngN sets node N's
// offset charge.
void set_param(qcirc::CircuitSpec& spec, const std::string& name, double value) {
  if (name.rfind("flux", 0) == 0) {
    int loop = std::stoi(name.substr(4));
    for (auto& f : spec.external_flux)
      if (f.loop == loop) {
        f.phi = value;
        return;
      }
    spec.external_flux.push_back({loop, value});
    return;
  }
  if (name.rfind("ng", 0) == 0) {
    int node = std::stoi(name.substr(2));
    for (auto& o : spec.offset_charge)
      if (o.node == node) {
        o.ng = value;
        return;
      }
    spec.offset_charge.push_back({node, value});
    return;
  }
  throw qcirc::InputError("UnknownSweepParameter",
                          "sweep parameter must be fluxN or ngN, got " + name);
}

struct Sweep {
  std::string param;
  double lo = 0, hi = 0;
  int count = 1;
};

Sweep parse_sweep(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos)
    throw qcirc::InputError("BadSweep", "sweep must look like fluxN=lo:hi:count");
  Sweep s;
  s.param = text.substr(0, eq);
  std::string range = text.substr(eq + 1);
  auto c1 = range.find(':'), c2 = range.rfind(':');
  if (c1 == std::string::npos || c2 == c1)
    throw qcirc::InputError("BadSweep", "sweep must look like fluxN=lo:hi:count");
  s.lo = std::stod(range.substr(0, c1));
  s.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
  s.count = std::stoi(range.substr(c2 + 1));
  if (s.count < 1) throw qcirc::InputError("BadSweep", "sweep needs at least one point");
  return s;
}

// Build the quantized model for a circuit spec under the chosen basis.
qcirc::FockModel model_for(const qcirc::CircuitSpec& spec, const GlobalOpts& g) {
  qcirc::CircuitGraph graph = qcirc::validate(spec, g.auto_ground);
  qcirc::SpanningTree tree = qcirc::select_spanning_tree(graph);
  qcirc::IntMatrix floop = qcirc::f_loop_matrix(graph, tree);
  qcirc::ClassicalSystem sys = qcirc::build_classical_system(graph, tree, floop);
  sys = qcirc::eliminate_passive(sys);
  if (g.basis == "normal") {
    qcirc::ModeBasis mb = qcirc::normal_modes(sys.cap, sys.ind);
    sys = qcirc::change_basis(sys, mb.V);
  } else if (g.basis != "node" && g.basis != "twig" && g.basis != "burkard") {
    throw qcirc::InputError("UnknownBasis", "basis must be node, normal or twig");
  }
  sys = qcirc::legendre_transform(sys);
  qcirc::FockOptions opt;
  opt.expansion = expansion_from(g.expansion);
  opt.dims.assign(sys.dim(), g.cutoff);
  opt.ng.assign(sys.dim(), 0.0);
  for (size_t i = 0; i < sys.coord_nodes.size(); ++i)
    opt.ng[i] = graph.offset_charge_at(sys.coord_nodes[i]);
  return qcirc::build_fock_hamiltonian(sys, opt);
}

int cmd_analyze(const std::string& path, const GlobalOpts& g) {
  std::string text = read_file(path);
  qcirc::CircuitSpec spec = qcirc::parse_netlist(text);
  qcirc::CircuitGraph graph = qcirc::validate(spec, g.auto_ground);
  qcirc::SpanningTree tree = qcirc::select_spanning_tree(graph);
  qcirc::IntMatrix floop = qcirc::f_loop_matrix(graph, tree);
  qcirc::ClassicalSystem sys = qcirc::build_classical_system(graph, tree, floop);
  sys = qcirc::eliminate_passive(sys);
  sys = qcirc::legendre_transform(sys);
  auto modes = qcirc::mode_quantizations(qcirc::shift_to_minimum(sys));

  json doc;
  doc["nodes"] = spec.nodes.size();
  doc["branches"] = spec.branches.size();
  doc["ground"] = graph.ground;
  doc["modes"] = json::array();
  for (size_t i = 0; i < modes.size(); ++i) {
    const auto& m = modes[i];
    doc["modes"].push_back({{"label", sys.labels[i]},
                            {"EC_GHz", u::energy_to_GHz(m.ec)},
                            // report E_L in the (E_L/2) phi^2 convention
                            {"EL_GHz", u::energy_to_GHz(2.0 * m.el)},
                            {"EJ_GHz", u::energy_to_GHz(m.ej)},
                            {"zeta", m.zeta},
                            {"omega_GHz", u::energy_to_GHz(m.omega)},
                            {"alpha_GHz", u::energy_to_GHz(m.alpha)}});
  }
  if (g.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "circuit: " << spec.nodes.size() << " nodes, " << spec.branches.size()
              << " branches, ground " << graph.ground << "\n";
    for (const auto& m : doc["modes"])
      std::cout << "  " << m["label"].get<std::string>()
                << ": EC=" << m["EC_GHz"].get<double>() << " GHz"
                << " EL=" << m["EL_GHz"].get<double>() << " GHz"
                << " EJ=" << m["EJ_GHz"].get<double>() << " GHz"
                << " zeta=" << m["zeta"].get<double>()
                << " f01~" << (m["omega_GHz"].get<double>() + m["alpha_GHz"].get<double>())
                << " GHz alpha=" << m["alpha_GHz"].get<double>() << " GHz\n";
  }
  return 0;
}

int cmd_graph(const std::string& path, const GlobalOpts& g) {
  std::string text = read_file(path);
  qcirc::CircuitSpec spec = qcirc::parse_netlist(text);
  qcirc::CircuitGraph graph = qcirc::validate(spec, g.auto_ground);
  qcirc::SpanningTree tree = qcirc::select_spanning_tree(graph);
  qcirc::IntMatrix fc = qcirc::f_cut_matrix(graph, tree);
  qcirc::IntMatrix fl = qcirc::f_loop_matrix(graph, tree);
  bool ortho = qcirc::check_orthogonality(fl, fc);

  if (g.format == "json") {
    json doc;
    doc["twigs"] = tree.twig_ids;
    doc["links"] = tree.link_ids;
    doc["orthogonal"] = ortho;
    auto dump = [](const qcirc::IntMatrix& m) {
      json rows = json::array();
      for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(static_cast<int>(m(i, j)));
        rows.push_back(row);
      }
      return rows;
    };
    doc["cut_matrix"] = dump(fc);
    doc["loop_matrix"] = dump(fl);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << tree.serialize() << "\n";
    std::cout << "cut matrix (" << fc.rows() << "x" << fc.cols() << "):\n"
              << fc.cast<int>() << "\n";
    std::cout << "loop matrix (" << fl.rows() << "x" << fl.cols() << "):\n"
              << fl.cast<int>() << "\n";
    std::cout << "orthogonality: " << (ortho ? "ok" : "VIOLATED") << "\n";
  }
  return ortho ? 0 : 2;
}

int cmd_spectrum(const std::string& path, const GlobalOpts& g, int levels,
                 const std::string& sweep_text, const std::string& out_path) {
  std::string text = read_file(path);
  qcirc::CircuitSpec base = qcirc::parse_netlist(text);

  std::vector<double> points;
  Sweep sweep;
  if (!sweep_text.empty()) {
    sweep = parse_sweep(sweep_text);
    for (int i = 0; i < sweep.count; ++i)
      points.push_back(sweep.count == 1
                           ? sweep.lo
                           : sweep.lo + (sweep.hi - sweep.lo) * i / (sweep.count - 1));
  } else {
    points.push_back(0.0);
  }

  std::vector<Eigen::VectorXd> results(points.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < points.size(); i = next++) {
      qcirc::CircuitSpec spec = base;
      if (!sweep_text.empty()) set_param(spec, sweep.param, points[i]);
      qcirc::FockModel model = model_for(spec, g);
      results[i] = qcirc::spectrum(model.H, levels);
    }
  };
  int jobs = std::max(1, g.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << (sweep_text.empty() ? std::string("index") : sweep.param);
  for (int l = 0; l < levels; ++l) csv << ",E" << l << "_GHz";
  csv << "\n";
  for (size_t i = 0; i < points.size(); ++i) {
    csv << points[i];
    for (int l = 0; l < results[i].size(); ++l)
      csv << "," << u::energy_to_GHz(results[i](l));
    csv << "\n";
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    out << csv.str();
    RunManifest manifest;
    manifest.command = "spectrum";
    manifest.seed = g.seed;
    manifest.note_input(path, text);
    manifest.note_output(out_path, csv.str());
    manifest.write(out_path);
  }
  return 0;
}

int cmd_truncate(const std::string& path, const GlobalOpts& g, int keep) {
  std::string text = read_file(path);
  qcirc::CircuitSpec spec = qcirc::parse_netlist(text);
  qcirc::FockModel model = model_for(spec, g);
  qcirc::Eigensystem es = qcirc::eigensystem(model.H);
  qcirc::CMatrix h_small = qcirc::truncate_eigen(model.H, es, keep);

  json doc;
  doc["kept_levels"] = keep;
  doc["energies_GHz"] = json::array();
  for (int i = 0; i < keep; ++i)
    doc["energies_GHz"].push_back(u::energy_to_GHz(es.values(i) - es.values(0)));
  if ((keep & (keep - 1)) == 0) {
    // Power-of-two dimension: report the Pauli expansion (traceless part).
    qcirc::CMatrix h0 = h_small - (h_small.trace() / static_cast<double>(keep)) *
                                      qcirc::CMatrix::Identity(keep, keep);
    doc["pauli_GHz"] = json::object();
    for (const auto& term : qcirc::pauli_decompose(h0, 1e-9))
      doc["pauli_GHz"][term.label] = u::energy_to_GHz(term.coefficient);
  }
  if (g.format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "kept " << keep << " levels; transition energies (GHz):";
    for (const auto& e : doc["energies_GHz"]) std::cout << " " << e.get<double>();
    std::cout << "\n";
    if (doc.contains("pauli_GHz"))
      for (auto& [label, coeff] : doc["pauli_GHz"].items())
        std::cout << "  " << label << ": " << coeff.get<double>() << " GHz\n";
  }
  return 0;
}

int cmd_simulate(const std::string& path, const GlobalOpts& g, const std::string& pulse_path,
                 const std::string& noise_path, int steps, const std::string& out_path) {
  std::string text = read_file(path);
  std::string pulse_text = read_file(pulse_path);
  qcirc::CircuitSpec spec = qcirc::parse_netlist(text);
  qcirc::FockModel model = model_for(spec, g);
  qcirc::Eigensystem es = qcirc::eigensystem(model.H);

  // Drive the first mode's charge operator; work in the two lowest eigenlevels.
  const int keep = 2;
  qcirc::CMatrix h0 = qcirc::truncate_eigen(model.H, es, keep);
  h0 -= es.values(0) * qcirc::CMatrix::Identity(keep, keep);
  qcirc::CMatrix drive_op = qcirc::truncate_eigen(model.n_ops[0], es, keep);

  qcirc::PulseSequence pulse = qcirc::parse_pulse(pulse_text);
  // Pulse JSON uses ordinary frequencies (GHz) and ns.
  for (auto& s : pulse.segments) {
    s.amplitude = u::energy_from_GHz(s.amplitude);
    s.omega = u::energy_from_GHz(s.omega);
  }
  auto h = [&](double t) -> qcirc::CMatrix { return h0 + pulse.value(t) * drive_op; };

  double t_final = pulse.total_time();
  if (steps <= 0) {
    double omega_max = std::abs(h0(1, 1).real());
    for (const auto& s : pulse.segments) omega_max = std::max(omega_max, std::abs(s.omega));
    steps = static_cast<int>(std::ceil(t_final * std::max(omega_max * 50.0 / (2.0 * u::pi),
                                                          1000.0 / t_final)));
  }

  std::ostringstream csv;
  csv << "t_ns,P0,P1\n";
  if (noise_path.empty()) {
    qcirc::CVector psi = qcirc::CVector::Zero(keep);
    psi(0) = 1.0;
    double dt = t_final / steps;
    for (int s = 0; s <= steps; ++s) {
      csv << s * dt << "," << std::norm(psi(0)) << "," << std::norm(psi(1)) << "\n";
      if (s == steps) break;
      double t0 = s * dt;
      qcirc::CMatrix u_step =
          qcirc::evolve_unitary([&](double tau) { return h(t0 + tau); }, dt, 1);
      psi = u_step * psi;
    }
  } else {
    qcirc::QubitNoise noise = qcirc::parse_noise(read_file(noise_path));
    auto collapse = qcirc::qubit_collapse_ops(noise);
    qcirc::CMatrix rho0 = qcirc::CMatrix::Zero(keep, keep);
    rho0(0, 0) = 1.0;
    qcirc::lindblad_evolve(h, rho0, collapse, t_final, steps,
                           [&](double t, const qcirc::CMatrix& rho) {
                             csv << t << "," << rho(0, 0).real() << ","
                                 << rho(1, 1).real() << "\n";
                           });
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    out << csv.str();
    RunManifest manifest;
    manifest.command = "simulate";
    manifest.seed = g.seed;
    manifest.note_input(path, text);
    manifest.note_input(pulse_path, pulse_text);
    manifest.note_output(out_path, csv.str());
    manifest.write(out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superconducting circuit quantization toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--cutoff", g.cutoff, "per-mode Fock cutoff")->capture_default_str();
  app.add_option("--expansion", g.expansion, "junction expansion: taylor4, taylor6, exact")
      ->capture_default_str();
  app.add_option("--basis", g.basis, "coordinate basis: node, normal, twig")
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")->capture_default_str();
  app.add_option("--seed", g.seed, "seed recorded in run manifests");
  app.add_option("--format", g.format, "output format: text, json")->capture_default_str();
  app.add_flag("--auto-ground", g.auto_ground, "ground the lowest-numbered node if none set");

  std::string circuit, out_path, sweep_text, pulse_path, noise_path, fixture_name, fixture_dir;
  int levels = 6, keep = 2, steps = 0;
  bool list_fixtures = false;

  auto* analyze = app.add_subcommand("analyze", "validate and summarize a netlist");
  analyze->fallthrough();
  analyze->add_option("circuit", circuit, "netlist JSON file")->required();

  auto* graphcmd = app.add_subcommand("graph", "spanning tree and cut/loop matrices");
  graphcmd->fallthrough();
  graphcmd->add_option("circuit", circuit, "netlist JSON file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, optionally swept");
  spectrum->fallthrough();
  spectrum->add_option("circuit", circuit, "netlist JSON file")->required();
  spectrum->add_option("--levels", levels, "number of eigenvalues")->capture_default_str();
  spectrum->add_option("--sweep", sweep_text, "parameter sweep, e.g. flux0=0:6.2832:101");
  spectrum->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* truncate = app.add_subcommand("truncate", "few-level effective Hamiltonian");
  truncate->fallthrough();
  truncate->add_option("circuit", circuit, "netlist JSON file")->required();
  truncate->add_option("--keep", keep, "eigenlevels to keep")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "driven two-level time evolution");
  simulate->fallthrough();
  simulate->add_option("circuit", circuit, "netlist JSON file")->required();
  simulate->add_option("--pulse", pulse_path, "pulse JSON file")->required();
  simulate->add_option("--noise", noise_path, "noise rates JSON file");
  simulate->add_option("--steps", steps, "integrator steps (0 = automatic)");
  simulate->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* fixtures = app.add_subcommand("fixtures", "built-in example netlists");
  fixtures->fallthrough();
  fixtures->add_flag("--list", list_fixtures, "list fixture names");
  fixtures->add_option("--name", fixture_name, "print one fixture to stdout");
  fixtures->add_option("--out", fixture_dir, "write all fixtures into a directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(circuit, g);
    if (*graphcmd) return cmd_graph(circuit, g);
    if (*spectrum) return cmd_spectrum(circuit, g, levels, sweep_text, out_path);
    if (*truncate) return cmd_truncate(circuit, g, keep);
    if (*simulate) return cmd_simulate(circuit, g, pulse_path, noise_path, steps, out_path);
    if (*fixtures) {
      if (list_fixtures)
        for (const auto& n : qcirc::fixture_names()) std::cout << n << "\n";
      if (!fixture_name.empty()) std::cout << qcirc::fixture_netlist(fixture_name);
      if (!fixture_dir.empty()) qcirc::write_fixture_files(fixture_dir);
      if (!list_fixtures && fixture_name.empty() && fixture_dir.empty())
        for (const auto& n : qcirc::fixture_names()) std::cout << n << "\n";
      return 0;
    }
  } catch (const qcirc::NumericError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const qcirc::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
