#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qcirc/fock.hpp"

namespace qcirc {

enum class PulseShape { Square, Gaussian, Cosine };

struct PulseSegment {
  PulseShape shape = PulseShape::Square;
  double amplitude = 0.0;  // peak drive strength, internal energy units
  double omega = 0.0;      // carrier angular frequency
  double phi = 0.0;        // carrier phase
  double tau = 0.0;        // segment length
};

struct PulseSequence {
  std::vector<PulseSegment> segments;

  double total_time() const;
  // Instantaneous drive coefficient envelope(t) * cos(omega t + phi). The
  // Gaussian envelope uses sigma = tau/6 centered on the segment.
  double value(double t) const;
};

PulseSequence parse_pulse(const std::string& json_text);

// Charge-drive strength of a voltage V0 applied through coupling capacitor
// c_ext onto an island with total self-capacitance c: the prefactor of
// (i)(b^dag - b) in the drive term.
double drive_strength(double v0, double c, double c_ext, double zeta);

// Propagator over [0, t_final] for H(t), a commutator-free fourth-order
// scheme: each step multiplies two exponentials built from H sampled at the
// two Gauss-Legendre nodes of the step.
CMatrix evolve_unitary(const std::function<CMatrix(double)>& h, double t_final, int steps);

// Gate fidelity |tr(U_target^dag U)| / dim.
double gate_fidelity(const CMatrix& u, const CMatrix& u_target);

struct Collapse {
  CMatrix op;
  double rate = 0.0;  // prefactor of the trace-preserving dissipator
};

// Density-matrix evolution with classic RK4:
//   drho/dt = -i[H, rho] + sum_k rate_k (L rho L^dag - 1/2 {L^dag L, rho}).
// `observe` (if set) is called after every step with (t, rho).
CMatrix lindblad_evolve(const std::function<CMatrix(double)>& h, const CMatrix& rho0,
                        const std::vector<Collapse>& collapse, double t_final, int steps,
                        const std::function<void(double, const CMatrix&)>& observe = {});

struct QubitNoise {
  double gamma_minus = 0.0;  // relaxation
  double gamma_plus = 0.0;   // excitation
  double gamma_phi = 0.0;    // pure dephasing (coherence rate contribution)
};

QubitNoise parse_noise(const std::string& json_text);

// Collapse set for a two-level system: sigma_minus at gamma_minus, sigma_plus
// at gamma_plus, and sigma_z at gamma_phi/2 so off-diagonals decay at exactly
// gamma_minus/2 + gamma_plus/2 + gamma_phi.
std::vector<Collapse> qubit_collapse_ops(const QubitNoise& noise);

// Closed-form free decay of a qubit state a|0> + b|1| under detuning delta,
// relaxation rate gamma1 and total coherence rate gamma2.
CMatrix free_decay_rho(Complex a, Complex b, double delta, double gamma1, double gamma2,
                       double t);

// Thermodynamic rates from a noise power spectral density: emission at +omega,
// absorption at -omega, dephasing from the zero-frequency weight.
QubitNoise rates_from_psd(const std::function<double(double)>& psd, double omega);

struct DispersiveParams {
  double chi0 = 0.0;        // two-level pull g^2/delta
  double chi = 0.0;         // anharmonicity-corrected pull
  double n_crit = 0.0;      // photon number where the expansion degrades
  double lamb_shift = 0.0;  // static qubit shift g^2/delta
};

// delta = omega_qubit - omega_resonator; alpha the qubit anharmonicity.
DispersiveParams dispersive_params(double g, double delta, double alpha);

// Net exchange coupling of two qubits attached to a shared bus mode at
// omega_c, with direct coupling g12 and bus couplings g1, g2:
//   g12 + (g1 g2 / 2)(1/(omega1-omega_c) + 1/(omega2-omega_c)).
double tunable_coupler_g(double g12, double g1, double g2, double omega1, double omega2,
                         double omega_c);

struct GmonParams {
  double l1 = 0.0, l2 = 0.0;    // qubit linear inductances
  double lj1 = 0.0, lj2 = 0.0;  // qubit junction inductances
  double lg = 0.0;              // coupler junction inductance at zero phase
  double flux = 0.0;            // control phase across the coupler loop
  double omega1 = 0.0, omega2 = 0.0;
};

// Inductively tunable coupling: the coupler junction phase delta solves
// delta + (l1 + l2)/lg sin(delta) = flux, the effective coupler inductance is
// lg / cos(delta), and the exchange rate follows from the mutual inductance.
double gmon_coupling(const GmonParams& p);

double ramsey_signal(double delta, double gamma2, double t);

struct DecayFit {
  double amplitude = 0.0;
  double rate = 0.0;
};
// Log-linear least squares of y = A exp(-rate t) over the positive samples.
DecayFit fit_exponential_decay(const std::vector<double>& ts, const std::vector<double>& ys);

struct RamseyFit {
  double delta = 0.0;
  double gamma2 = 0.0;
  double residual = 0.0;
};
// Gauss-Newton fit of y = 1/2 + 1/2 exp(-gamma2 t) cos(delta t), seeded by a
// coarse frequency scan.
RamseyFit fit_ramsey(const std::vector<double>& ts, const std::vector<double>& ys);

}  // namespace qcirc
