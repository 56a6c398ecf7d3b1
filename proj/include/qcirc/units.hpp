#pragma once

// Internal unit system: hbar = 2e = 1, reduced flux quantum = 1, time unit 1 ns.
// Energies are therefore stored as angular frequencies in rad/ns; a component
// value given as "E/h in GHz" maps to 2*pi times that number internally.

namespace qcirc::units {

inline constexpr double e_charge = 1.602176634e-19; // C
inline constexpr double h_planck = 6.62607015e-34;  // J s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar = h_planck / (2.0 * pi);  // J s

inline constexpr double time_unit = 1e-9;                       // s (1 ns)
inline constexpr double cooper_charge = 2.0 * e_charge;         // C
inline constexpr double flux_unit = hbar / cooper_charge;       // Wb, reduced flux quantum
inline constexpr double energy_unit = hbar / time_unit;         // J per (rad/ns)

// One internal capacitance unit in farads, and inductance unit in henries.
inline constexpr double cap_unit = cooper_charge * cooper_charge * time_unit / hbar;
inline constexpr double ind_unit = hbar * time_unit / (cooper_charge * cooper_charge);
inline constexpr double volt_unit = flux_unit / time_unit;      // V
inline constexpr double curr_unit = cooper_charge / time_unit;  // A

// Resistance quantum h/(2e)^2; exposed for callers who want physical
// impedances, never applied implicitly anywhere in the library.
inline constexpr double resistance_quantum = h_planck / (cooper_charge * cooper_charge);

// Conversions between netlist units and internal dimensionless values.
inline double cap_from_fF(double v) { return v * 1e-15 / cap_unit; }
inline double cap_to_fF(double v) { return v * cap_unit / 1e-15; }
inline double ind_from_nH(double v) { return v * 1e-9 / ind_unit; }
inline double ind_to_nH(double v) { return v * ind_unit / 1e-9; }
inline double energy_from_GHz(double v) { return 2.0 * pi * v; }  // v = E/h in GHz
inline double energy_to_GHz(double v) { return v / (2.0 * pi); }
inline double volt_from_V(double v) { return v / volt_unit; }
inline double volt_to_V(double v) { return v * volt_unit; }
inline double curr_from_A(double v) { return v / curr_unit; }
inline double curr_to_A(double v) { return v * curr_unit; }

}  // namespace qcirc::units
