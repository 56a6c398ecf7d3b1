#include "qcirc/dynamics.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "qcirc/errors.hpp"
#include "qcirc/units.hpp"

namespace qcirc {

using nlohmann::json;

double PulseSequence::total_time() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.tau;
  return t;
}

double PulseSequence::value(double t) const {
  double t0 = 0.0;
  for (const auto& s : segments) {
    if (t >= t0 && t < t0 + s.tau) {
      double local = t - t0;
      double env = 0.0;
      switch (s.shape) {
        case PulseShape::Square:
          env = s.amplitude;
          break;
        case PulseShape::Gaussian: {
          double sigma = s.tau / 6.0;
          double x = (local - s.tau / 2.0) / sigma;
          env = s.amplitude * std::exp(-0.5 * x * x);
          break;
        }
        case PulseShape::Cosine:
          env = s.amplitude * 0.5 * (1.0 - std::cos(2.0 * units::pi * local / s.tau));
          break;
      }
      return env * std::cos(s.omega * t + s.phi);
    }
    t0 += s.tau;
  }
  return 0.0;
}

PulseSequence parse_pulse(const std::string& text) {
  PulseSequence seq;
  try {
    json doc = json::parse(text);
    for (const auto& js : doc.at("segments")) {
      PulseSegment s;
      std::string shape = js.value("shape", "square");
      if (shape == "square") s.shape = PulseShape::Square;
      else if (shape == "gaussian") s.shape = PulseShape::Gaussian;
      else if (shape == "cosine") s.shape = PulseShape::Cosine;
      else throw InputError("UnknownPulseShape", "unknown pulse shape: " + shape);
      s.amplitude = js.contains("V0") ? js["V0"].get<double>() : js.value("amplitude", 0.0);
      s.omega = js.value("omega", 0.0);
      s.phi = js.value("phi", 0.0);
      s.tau = js.at("tau").get<double>();
      seq.segments.push_back(s);
    }
  } catch (const json::exception& e) {
    throw InputError("SchemaError", std::string("pulse schema error: ") + e.what());
  }
  return seq;
}

double drive_strength(double v0, double c, double c_ext, double zeta) {
  return v0 * c_ext / ((c + c_ext) * std::sqrt(2.0 * zeta));
}

namespace {

CMatrix expm_hermitian_times(const CMatrix& h, Complex factor) {
  Eigensystem es = eigensystem(h);
  CVector phases(es.values.size());
  for (int k = 0; k < es.values.size(); ++k) phases(k) = std::exp(factor * es.values(k));
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

}  // namespace

CMatrix evolve_unitary(const std::function<CMatrix(double)>& h, double t_final, int steps) {
  if (steps < 1) throw InputError("BadStepCount", "need at least one time step");
  const double dt = t_final / steps;
  const double node = std::sqrt(3.0) / 6.0;
  const double a1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
  const double a2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;
  CMatrix u;
  for (int s = 0; s < steps; ++s) {
    double t = s * dt;
    CMatrix h1 = h(t + (0.5 - node) * dt);
    CMatrix h2 = h(t + (0.5 + node) * dt);
    // Later factor weights the later sample; the right factor acts first.
    CMatrix left = expm_hermitian_times(a1 * h1 + a2 * h2, Complex(0, -dt));
    CMatrix right = expm_hermitian_times(a2 * h1 + a1 * h2, Complex(0, -dt));
    CMatrix step = left * right;
    u = (s == 0) ? step : CMatrix(step * u);
  }
  return u;
}

double gate_fidelity(const CMatrix& u, const CMatrix& u_target) {
  return std::abs((u_target.adjoint() * u).trace()) / static_cast<double>(u.rows());
}

CMatrix lindblad_evolve(const std::function<CMatrix(double)>& h, const CMatrix& rho0,
                        const std::vector<Collapse>& collapse, double t_final, int steps,
                        const std::function<void(double, const CMatrix&)>& observe) {
  if (steps < 1) throw InputError("BadStepCount", "need at least one time step");
  std::vector<CMatrix> ldl;  // precomputed L^dag L
  for (const auto& c : collapse) ldl.push_back(c.op.adjoint() * c.op);

  auto rhs = [&](double t, const CMatrix& rho) {
    CMatrix ht = h(t);
    CMatrix d = Complex(0, -1) * (ht * rho - rho * ht);
    for (size_t k = 0; k < collapse.size(); ++k) {
      const auto& c = collapse[k];
      d += c.rate * (c.op * rho * c.op.adjoint() -
                     0.5 * (ldl[k] * rho + rho * ldl[k]));
    }
    return d;
  };

  const double dt = t_final / steps;
  CMatrix rho = rho0;
  if (observe) observe(0.0, rho);
  for (int s = 0; s < steps; ++s) {
    double t = s * dt;
    CMatrix k1 = rhs(t, rho);
    CMatrix k2 = rhs(t + dt / 2, rho + (dt / 2) * k1);
    CMatrix k3 = rhs(t + dt / 2, rho + (dt / 2) * k2);
    CMatrix k4 = rhs(t + dt, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observe) observe(t + dt, rho);
  }
  return rho;
}

QubitNoise parse_noise(const std::string& text) {
  QubitNoise n;
  try {
    json doc = json::parse(text);
    n.gamma_minus = doc.value("Gamma_minus", 0.0);
    n.gamma_plus = doc.value("Gamma_plus", 0.0);
    n.gamma_phi = doc.value("Gamma_phi", 0.0);
  } catch (const json::exception& e) {
    throw InputError("SchemaError", std::string("noise schema error: ") + e.what());
  }
  return n;
}

std::vector<Collapse> qubit_collapse_ops(const QubitNoise& noise) {
  CMatrix sm = CMatrix::Zero(2, 2), sp = CMatrix::Zero(2, 2), sz = CMatrix::Zero(2, 2);
  sm(0, 1) = 1.0;  // |0><1|, basis ordered ground first
  sp(1, 0) = 1.0;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  std::vector<Collapse> out;
  if (noise.gamma_minus > 0) out.push_back({sm, noise.gamma_minus});
  if (noise.gamma_plus > 0) out.push_back({sp, noise.gamma_plus});
  // sigma_z at gamma_phi/2 makes the coherence decay rate come out at exactly
  // gamma_1/2 + gamma_phi.
  if (noise.gamma_phi > 0) out.push_back({sz, noise.gamma_phi / 2.0});
  return out;
}

CMatrix free_decay_rho(Complex a, Complex b, double delta, double gamma1, double gamma2,
                       double t) {
  CMatrix rho(2, 2);
  double p1 = std::norm(b) * std::exp(-gamma1 * t);
  Complex coh = a * std::conj(b) * std::exp(Complex(0, -delta * t)) * std::exp(-gamma2 * t);
  rho(0, 0) = 1.0 - p1;
  rho(1, 1) = p1;
  rho(0, 1) = coh;
  rho(1, 0) = std::conj(coh);
  return rho;
}

QubitNoise rates_from_psd(const std::function<double(double)>& psd, double omega) {
  QubitNoise n;
  n.gamma_minus = psd(omega);
  n.gamma_plus = psd(-omega);
  n.gamma_phi = 0.5 * psd(0.0);
  return n;
}

DispersiveParams dispersive_params(double g, double delta, double alpha) {
  DispersiveParams p;
  p.chi0 = g * g / delta;
  p.chi = (alpha != 0.0) ? -(g * g / delta) / (1.0 + delta / alpha) : p.chi0;
  p.n_crit = (delta * delta) / (4.0 * g * g);
  p.lamb_shift = g * g / delta;
  return p;
}

double tunable_coupler_g(double g12, double g1, double g2, double omega1, double omega2,
                         double omega_c) {
  double d1 = omega1 - omega_c, d2 = omega2 - omega_c;
  return g12 + 0.5 * g1 * g2 * (1.0 / d1 + 1.0 / d2);
}

double gmon_coupling(const GmonParams& p) {
  // Phase across the coupler junction from flux quantization around the loop.
  const double r = (p.l1 + p.l2) / p.lg;
  double delta = p.flux / (1.0 + r);  // small-angle start
  for (int it = 0; it < 50; ++it) {
    double f = delta + r * std::sin(delta) - p.flux;
    double fp = 1.0 + r * std::cos(delta);
    if (std::abs(fp) < 1e-9) break;
    double step = f / fp;
    delta -= std::clamp(step, -0.5, 0.5);
    if (std::abs(f) < 1e-14) break;
  }
  double cosd = std::cos(delta);
  if (std::abs(cosd) < 1e-12) return 0.0;
  double l_eff = p.lg / cosd;
  double m = p.l1 * p.l2 / (p.l1 + p.l2 + l_eff);
  double lq1 = p.lj1 + p.l1 - m;
  double lq2 = p.lj2 + p.l2 - m;
  return 0.5 * std::sqrt(p.omega1 * p.omega2) * m / std::sqrt(lq1 * lq2);
}

double ramsey_signal(double delta, double gamma2, double t) {
  return 0.5 + 0.5 * std::exp(-gamma2 * t) * std::cos(delta * t);
}

DecayFit fit_exponential_decay(const std::vector<double>& ts, const std::vector<double>& ys) {
  // Linear least squares on log y = log A - rate * t.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ys[i] <= 0) continue;
    double x = ts[i], y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw InputError("TooFewSamples", "decay fit needs at least 2 positive samples");
  double denom = n * sxx - sx * sx;
  if (denom == 0) throw NumericError("DegenerateFit", "decay fit is degenerate");
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  return {std::exp(intercept), -slope};
}

RamseyFit fit_ramsey(const std::vector<double>& ts, const std::vector<double>& ys) {
  if (ts.size() != ys.size() || ts.size() < 8)
    throw InputError("TooFewSamples", "oscillation fit needs at least 8 samples");
  const int n = static_cast<int>(ts.size());
  const double tmax = ts.back();

  auto sse = [&](double gamma, double delta) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
      double r = ramsey_signal(delta, gamma, ts[i]) - ys[i];
      s += r * r;
    }
    return s;
  };

  // Coarse seed: scan frequency; for each candidate take the decay rate from a
  // log-linear fit of |2y-1| restricted to near-antinode samples.
  double best_sse = 1e300, best_delta = 0, best_gamma = 0;
  double dmin = units::pi / tmax;  // half an oscillation over the record
  double dstep = dmin / 4.0;
  double dmax = units::pi / ((ts[1] - ts[0]) * 2.0);  // Nyquist
  for (double d = dmin; d <= dmax; d += dstep) {
    std::vector<double> et, ey;
    for (int i = 0; i < n; ++i) {
      if (std::abs(std::cos(d * ts[i])) < 0.9) continue;
      double v = std::abs(2.0 * ys[i] - 1.0);
      if (v > 1e-6) {
        et.push_back(ts[i]);
        ey.push_back(v);
      }
    }
    if (et.size() < 2) continue;
    DecayFit env = fit_exponential_decay(et, ey);
    double g = std::max(env.rate, 0.0);
    double s = sse(g, d);
    if (s < best_sse) {
      best_sse = s;
      best_delta = d;
      best_gamma = g;
    }
  }

  // Damped Gauss-Newton refinement of (gamma, delta).
  double gamma = best_gamma, delta = best_delta;
  for (int it = 0; it < 100; ++it) {
    double jtj00 = 0, jtj01 = 0, jtj11 = 0, jtr0 = 0, jtr1 = 0;
    for (int i = 0; i < n; ++i) {
      double t = ts[i];
      double e = 0.5 * std::exp(-gamma * t);
      double r = 0.5 + e * std::cos(delta * t) - ys[i];
      double jg = -t * e * std::cos(delta * t);
      double jd = -t * e * std::sin(delta * t);
      jtj00 += jg * jg;
      jtj01 += jg * jd;
      jtj11 += jd * jd;
      jtr0 += jg * r;
      jtr1 += jd * r;
    }
    double lm = 1e-12;
    double cur = sse(gamma, delta);
    for (int tries = 0; tries < 20; ++tries) {
      double det = (jtj00 + lm) * (jtj11 + lm) - jtj01 * jtj01;
      if (det == 0) break;
      double dg = -((jtj11 + lm) * jtr0 - jtj01 * jtr1) / det;
      double dd = -((jtj00 + lm) * jtr1 - jtj01 * jtr0) / det;
      if (sse(gamma + dg, delta + dd) < cur) {
        gamma += dg;
        delta += dd;
        break;
      }
      lm = (lm == 1e-12) ? 1e-6 : lm * 10.0;
    }
  }
  return {delta, gamma, sse(gamma, delta)};
}

}  // namespace qcirc
