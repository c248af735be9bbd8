#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "ewjn/constants.hpp"
#include "ewjn/errors.hpp"
#include "ewjn/spectral.hpp"

namespace ewjn {

enum class QubitKind { charge, spin };
enum class Orientation { x, y, z };

inline std::string_view to_string(QubitKind k) { return k == QubitKind::charge ? "charge" : "spin"; }

inline std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::x: return "x";
    case Orientation::y: return "y";
    case Orientation::z: return "z";
  }
  return "?";
}

inline QubitKind parse_qubit_kind(std::string_view s) {
  if (s == "charge") return QubitKind::charge;
  if (s == "spin") return QubitKind::spin;
  throw ValidationError("unknown qubit kind '" + std::string(s) + "' (expected charge|spin)");
}

inline Orientation parse_orientation(std::string_view s) {
  if (s == "x") return Orientation::x;
  if (s == "y") return Orientation::y;
  if (s == "z") return Orientation::z;
  throw ValidationError("unknown orientation '" + std::string(s) + "' (expected x|y|z)");
}

/// Point-dipole qubit. The moment is an electric dipole in C m for a charge
/// qubit and a magnetic moment in J/T for a spin qubit.
struct QubitSpec {
  QubitKind kind = QubitKind::charge;
  double moment = 0.0;
  Orientation orientation = Orientation::x;
  double level_splitting = 0.0;  // omega_Z, rad/s

  void validate() const {
    if (!(moment > 0.0) || !std::isfinite(moment)) throw DomainError("qubit moment must be > 0");
    if (!(level_splitting > 0.0) || !std::isfinite(level_splitting))
      throw DomainError("qubit level splitting must be > 0");
  }

  FieldKind field() const {
    return kind == QubitKind::charge ? FieldKind::electric : FieldKind::magnetic;
  }

  /// Charge qubit with d = |e| a_B.
  static QubitSpec atomic_charge(double omega, Orientation o = Orientation::x) {
    return {QubitKind::charge, constants::elementary_charge * constants::bohr_radius, o, omega};
  }

  /// Spin qubit with mu = mu_B.
  static QubitSpec electron_spin(double omega, Orientation o = Orientation::x) {
    return {QubitKind::spin, constants::bohr_magneton, o, omega};
  }
};

struct RelaxationResult {
  double rate = 0.0;  // 1/s
  double t1 = 0.0;    // s
  double chi = 0.0;   // component used, units of spectral(field)
  double chi_error = 0.0;
  double thermal_factor = 1.0;
  ModelSelector model = ModelSelector::local_quasistatic;
  SpectralDensityTensor spectral;
};

/// coth(hbar w / 2 k_B T); exactly 1 at T = 0.
inline double thermal_factor(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("thermal_factor: omega must be > 0");
  if (!(temperature >= 0.0)) throw DomainError("thermal_factor: temperature must be >= 0");
  if (temperature == 0.0) return 1.0;
  const double y = constants::hbar * omega / (2.0 * constants::boltzmann * temperature);
  if (y > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * y);
  return 1.0 / std::tanh(y);
}

/// Golden-rule relaxation: 1/T1 = (moment^2 / hbar^2) chi_ii(omega_Z) coth(hbar omega_Z / 2 k_B T).
/// x and y orientations use chi_xx, z uses chi_zz.
inline RelaxationResult t1(const Material& m, const QubitSpec& qubit, double z, double temperature,
                           ModelSelector model, const QuadratureConfig& cfg = {}) {
  qubit.validate();
  const double coth = thermal_factor(qubit.level_splitting, temperature);
  RelaxationResult r;
  r.spectral = spectral_density(qubit.field(), m, z, qubit.level_splitting, model, cfg);
  const bool normal = qubit.orientation == Orientation::z;
  r.chi = normal ? r.spectral.chi_zz : r.spectral.chi_xx;
  r.chi_error = normal ? r.spectral.error_zz : r.spectral.error_xx;
  r.thermal_factor = coth;
  r.model = r.spectral.model;
  const double coupling = qubit.moment / constants::hbar;
  r.rate = coupling * coupling * r.chi * coth;
  r.t1 = 1.0 / r.rate;
  return r;
}

}  // namespace ewjn
