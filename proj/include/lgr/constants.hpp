#pragma once

// CODATA 2018 values. Everything inside the library is in Hartree atomic units;
// conversions happen only at the configuration boundary.

namespace lgr::units {

inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double field_au_V_per_m = 5.14220674763e11;
inline constexpr double hartree_Hz = 6.579683920502e15;  // E_h / h
inline constexpr double speed_of_light_au = 137.035999084;
inline constexpr double fine_structure = 1.0 / speed_of_light_au;
inline constexpr double amu_in_me = 1822.888486209;

inline constexpr double micrometre_to_au(double um) { return um * 1e-6 / bohr_m; }
inline constexpr double au_to_micrometre(double au) { return au * bohr_m * 1e6; }
inline constexpr double volt_per_metre_to_au(double v) { return v / field_au_V_per_m; }
inline constexpr double au_to_volt_per_metre(double f) { return f * field_au_V_per_m; }
inline constexpr double amu_to_au(double m) { return m * amu_in_me; }

// |matrix element| / (2 pi hbar) in kHz, for a matrix element in Hartree.
inline constexpr double hartree_to_kHz(double e) { return e * hartree_Hz * 1e-3; }

}  // namespace lgr::units
