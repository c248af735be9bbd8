#pragma once

// CODATA 2018 values, SI units.

namespace ewjn::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double speed_of_light = 299792458.0;       // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double electron_mass = 9.1093837015e-31;   // kg
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double boltzmann = 1.380649e-23;           // J/K
inline constexpr double bohr_radius = 5.29177210903e-11;    // m
inline constexpr double bohr_magneton = 9.2740100783e-24;   // J/T
inline constexpr double electron_volt = elementary_charge;  // J

}  // namespace ewjn::constants
