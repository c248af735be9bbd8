#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "ewjn/constants.hpp"
#include "ewjn/errors.hpp"

namespace ewjn {

using Complex = std::complex<double>;

/// Relative permittivity of the metal, dimensionless.
using Permittivity = std::complex<double>;

/// Metal parameters. The three physical inputs are independent; the Fermi-surface
/// quantities follow from the Fermi energy and the free-electron mass.
class Material {
 public:
  /// @param plasma_frequency  omega_p in rad/s (>= 0; zero gives the transparent limit)
  /// @param collision_rate    nu in rad/s (> 0)
  /// @param fermi_energy      E_F in joule (> 0)
  Material(std::string name, double plasma_frequency, double collision_rate, double fermi_energy)
      : name_(std::move(name)),
        plasma_frequency_(plasma_frequency),
        collision_rate_(collision_rate),
        fermi_energy_(fermi_energy) {
    if (!(plasma_frequency >= 0.0) || !std::isfinite(plasma_frequency))
      throw DomainError("material '" + name_ + "': plasma frequency must be >= 0");
    if (!(collision_rate > 0.0) || !std::isfinite(collision_rate))
      throw DomainError("material '" + name_ + "': collision rate must be > 0");
    if (!(fermi_energy > 0.0) || !std::isfinite(fermi_energy))
      throw DomainError("material '" + name_ + "': Fermi energy must be > 0");
    fermi_velocity_ = std::sqrt(2.0 * fermi_energy_ / constants::electron_mass);
    fermi_wavevector_ = constants::electron_mass * fermi_velocity_ / constants::hbar;
    fermi_wavelength_ = 2.0 * constants::pi / fermi_wavevector_;
  }

  static Material from_ev(std::string name, double plasma_frequency, double collision_rate,
                          double fermi_energy_ev) {
    return Material(std::move(name), plasma_frequency, collision_rate,
                    fermi_energy_ev * constants::electron_volt);
  }

  const std::string& name() const noexcept { return name_; }
  double plasma_frequency() const noexcept { return plasma_frequency_; }
  double collision_rate() const noexcept { return collision_rate_; }
  double fermi_energy() const noexcept { return fermi_energy_; }
  double fermi_energy_ev() const noexcept { return fermi_energy_ / constants::electron_volt; }
  double fermi_velocity() const noexcept { return fermi_velocity_; }
  double fermi_wavevector() const noexcept { return fermi_wavevector_; }
  double fermi_wavelength() const noexcept { return fermi_wavelength_; }

  /// Same metal with a different plasma frequency (used for limit studies).
  Material with_plasma_frequency(double plasma_frequency) const {
    return Material(name_, plasma_frequency, collision_rate_, fermi_energy_);
  }

 private:
  std::string name_;
  double plasma_frequency_;
  double collision_rate_;
  double fermi_energy_;
  double fermi_velocity_{};
  double fermi_wavevector_{};
  double fermi_wavelength_{};
};

/// Copper near absolute zero: E_F = 7 eV, nu = 6 pi 1e12 s^-1, omega_p = 1.6e16 s^-1.
inline Material copper() {
  return Material::from_ev("copper", 1.6e16, 6.0 * constants::pi * 1e12, 7.0);
}

/// Local Drude permittivity 1 - omega_p^2 / (omega (omega + i nu)).
inline Permittivity drude_epsilon(const Material& m, double omega) {
  if (!(omega > 0.0)) throw DomainError("drude_epsilon: omega must be > 0");
  const double wp = m.plasma_frequency();
  return 1.0 - wp * wp / (omega * Complex(omega, m.collision_rate()));
}

namespace detail {

// Beyond this |x| the Laurent series in 1/x^2 is used; closer in, the closed
// form loses nothing to cancellation.
inline constexpr double kLindhardSeriesRadius = 8.0;

inline void check_lindhard_argument(Complex x, const char* who) {
  if (!(x.imag() >= 0.0) || (x.imag() == 0.0 && std::abs(x.real()) <= 1.0))
    throw DomainError(std::string(who) + ": argument on or below the branch cut");
}

// ln(x+1) - ln(x-1) with principal logs. For Im x >= 0 this equals 2 atanh(1/x).
inline Complex lindhard_log(Complex x) { return 2.0 * std::atanh(1.0 / x); }

// f_l together with 1 - f_l, each to full relative precision.
struct LongitudinalParts {
  Complex f;
  Complex one_minus_f;
};

inline LongitudinalParts longitudinal_parts(Complex x) {
  if (std::abs(x) > kLindhardSeriesRadius) {
    // f_l = -sum_{n>=1} x^{-2n} / (2n+1)
    const Complex inv2 = 1.0 / (x * x);
    Complex power = inv2;
    Complex sum = 0.0;
    for (int n = 1; n < 60; ++n) {
      const Complex term = power / double(2 * n + 1);
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      power *= inv2;
    }
    return {-sum, 1.0 + sum};
  }
  const Complex g = 0.5 * x * lindhard_log(x);
  return {1.0 - g, g};
}

inline Complex transverse_f(Complex x) {
  if (std::abs(x) > kLindhardSeriesRadius) {
    // f_t = 3 sum_{m>=0} x^{-2m} / ((2m+1)(2m+3))
    const Complex inv2 = 1.0 / (x * x);
    Complex power = inv2;
    Complex sum = 1.0 / 3.0;
    for (int m = 1; m < 60; ++m) {
      const Complex term = power / double((2 * m + 1) * (2 * m + 3));
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      power *= inv2;
    }
    return 3.0 * sum;
  }
  return 1.5 * x * x - 0.75 * x * (x * x - 1.0) * lindhard_log(x);
}

}  // namespace detail

/// f_l(x) = 1 - (x/2)[ln(x+1) - ln(x-1)].
inline Complex lindhard_f_l(Complex x) {
  detail::check_lindhard_argument(x, "lindhard_f_l");
  return detail::longitudinal_parts(x).f;
}

/// f_t(x) = (3/2)x^2 - (3/4)x(x^2-1)[ln(x+1) - ln(x-1)].
inline Complex lindhard_f_t(Complex x) {
  detail::check_lindhard_argument(x, "lindhard_f_t");
  return detail::transverse_f(x);
}

/// Reduced Lindhard argument x = (omega + i nu) / (k v_F).
inline Complex lindhard_argument(const Material& m, double k, double omega) {
  return Complex(omega, m.collision_rate()) / (k * m.fermi_velocity());
}

/// Longitudinal permittivity with collisions,
/// 1 + (3 omega_p^2 / k^2 v_F^2) (omega + i nu) f_l / (omega + i nu f_l).
inline Permittivity epsilon_l(const Material& m, double k, double omega) {
  if (!(k > 0.0)) throw DomainError("epsilon_l: k must be > 0");
  if (!(omega > 0.0)) throw DomainError("epsilon_l: omega must be > 0");
  const double nu = m.collision_rate();
  const double kv = k * m.fermi_velocity();
  const double wp = m.plasma_frequency();
  const double screening = 3.0 * wp * wp / (kv * kv);
  const Complex x = Complex(omega, nu) / kv;
  const auto parts = detail::longitudinal_parts(x);
  const Complex i_nu(0.0, nu);
  Complex ratio;
  if (std::abs(x) > detail::kLindhardSeriesRadius) {
    ratio = Complex(omega, nu) * parts.f / (omega + i_nu * parts.f);
  } else {
    // Same ratio written as 1 - omega (1 - f) / (omega + i nu f); the imaginary
    // part no longer sits on top of an O(1) real part.
    ratio = 1.0 - omega * parts.one_minus_f / (omega + i_nu * parts.f);
  }
  return 1.0 + screening * ratio;
}

/// Transverse permittivity 1 - omega_p^2 / (omega (omega + i nu)) f_t.
inline Permittivity epsilon_t(const Material& m, double k, double omega) {
  if (!(k > 0.0)) throw DomainError("epsilon_t: k must be > 0");
  if (!(omega > 0.0)) throw DomainError("epsilon_t: omega must be > 0");
  const double wp = m.plasma_frequency();
  const Complex x = lindhard_argument(m, k, omega);
  return 1.0 - wp * wp / (omega * Complex(omega, m.collision_rate())) * detail::transverse_f(x);
}

/// Skin depth c / (omega Im sqrt(eps_Drude)); +infinity for a transparent medium.
inline double skin_depth(const Material& m, double omega) {
  if (!(omega > 0.0)) throw DomainError("skin_depth: omega must be > 0");
  const double im = std::sqrt(drude_epsilon(m, omega)).imag();
  if (!(im > 0.0)) return std::numeric_limits<double>::infinity();
  return constants::speed_of_light / (omega * im);
}

}  // namespace ewjn
