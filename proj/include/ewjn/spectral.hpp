#pragma once

// Electric and magnetic field spectral densities at height z above a metallic
// half-space, chi_xx = chi_yy and chi_zz, one-sided in omega > 0.

#include <cmath>
#include <concepts>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "ewjn/constants.hpp"
#include "ewjn/errors.hpp"
#include "ewjn/fresnel.hpp"
#include "ewjn/materials.hpp"
#include "ewjn/quadrature.hpp"

namespace ewjn {

enum class FieldKind { electric, magnetic };

enum class ModelSelector { local_quasistatic, nonlocal_quasistatic, local_retarded, automatic };

inline std::string_view to_string(FieldKind k) {
  return k == FieldKind::electric ? "E" : "B";
}

inline std::string_view units(FieldKind k) {
  return k == FieldKind::electric ? "(V/m)^2 s" : "T^2 s";
}

inline std::string_view to_string(ModelSelector m) {
  switch (m) {
    case ModelSelector::local_quasistatic: return "local-quasistatic";
    case ModelSelector::nonlocal_quasistatic: return "nonlocal-quasistatic";
    case ModelSelector::local_retarded: return "local-retarded";
    case ModelSelector::automatic: return "auto";
  }
  return "unknown";
}

inline ModelSelector parse_model(std::string_view s) {
  if (s == "local-quasistatic") return ModelSelector::local_quasistatic;
  if (s == "nonlocal-quasistatic") return ModelSelector::nonlocal_quasistatic;
  if (s == "local-retarded") return ModelSelector::local_retarded;
  if (s == "auto") return ModelSelector::automatic;
  throw ValidationError("unknown model '" + std::string(s) + "'");
}

/// Split of the in-plane component into its r_s and r_p contributions (signed).
struct InPlaneParts {
  double rs_part = 0.0;
  double rp_part = 0.0;
  double rs_error = 0.0;
  double rp_error = 0.0;
};

struct SpectralDensityTensor {
  FieldKind field = FieldKind::electric;
  double chi_xx = 0.0;
  double chi_zz = 0.0;
  double z = 0.0;
  double omega = 0.0;
  ModelSelector model = ModelSelector::local_quasistatic;
  double error_xx = 0.0;
  double error_zz = 0.0;
  std::optional<InPlaneParts> xx_parts;
};

namespace detail {

inline void check_height_frequency(double z, double omega, const char* who) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError(std::string(who) + ": z must be > 0");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError(std::string(who) + ": omega must be > 0");
}

// Im[(eps-1)/(eps+1)] evaluated as Im[-2/(eps+1)].
inline double image_loss(Permittivity eps) { return (-2.0 / (eps + 1.0)).imag(); }

// Henkel-type reflected-field integrals for a local half-space.
//
// With (a, b) = (r_s, r_p) for E and (r_p, r_s) for B,
//   xx = (1/2) Re int (p/q) e^{2iqz} (k0^2 a - q^2 b) dp,   zz = Re int (p^3/q) e^{2iqz} b dp.
// Split at p = k0. Propagating: p = k0 sin(theta). Evanescent: u = |q|, p dp = u du.
// The two in-plane contributions are carried as the real and imaginary parts of
// one complex integrand; the engine converges them independently.
inline SpectralDensityTensor local_retarded(FieldKind field, Permittivity eps, double z,
                                            double omega, const QuadratureConfig& cfg) {
  const double c = constants::speed_of_light;
  const double k0 = omega / c;
  const double k02 = k0 * k0;
  const bool electric = field == FieldKind::electric;

  auto coefficients = [&](Complex q1, double p2) {
    const ReflectionPair r = fresnel_from_normal(q1, p2, k02, eps);
    return electric ? std::pair{r.r_s, r.r_p} : std::pair{r.r_p, r.r_s};
  };

  // Propagating segment, theta in [0, pi/2].
  auto prop_xx = [&](double theta) -> Complex {
    const double p = k0 * std::sin(theta);
    const double q = k0 * std::cos(theta);
    const auto [a, b] = coefficients(Complex(q, 0.0), p * p);
    const Complex phase = std::polar(1.0, 2.0 * q * z);
    const double jac = 0.5 * k0 * std::sin(theta);
    return {jac * (phase * k02 * a).real(), jac * (-phase * q * q * b).real()};
  };
  auto prop_zz = [&](double theta) -> double {
    const double p = k0 * std::sin(theta);
    const double q = k0 * std::cos(theta);
    const auto [a, b] = coefficients(Complex(q, 0.0), p * p);
    (void)a;
    return k0 * std::sin(theta) * p * p * (std::polar(1.0, 2.0 * q * z) * b).real();
  };

  // Evanescent segment, u in [0, inf), integrand ~ exp(-2uz).
  auto evan_xx = [&](double u) -> Complex {
    const auto [a, b] = coefficients(Complex(0.0, u), u * u + k02);
    const double decay = std::exp(-2.0 * u * z);
    return {0.5 * decay * (k02 * a).imag(), 0.5 * decay * (u * u * b).imag()};
  };
  auto evan_zz = [&](double u) -> double {
    const auto [a, b] = coefficients(Complex(0.0, u), u * u + k02);
    (void)a;
    return std::exp(-2.0 * u * z) * (u * u + k02) * b.imag();
  };

  const double half_pi = 0.5 * constants::pi;
  auto xx = integrate_finite(prop_xx, 0.0, half_pi, cfg);
  auto zz = integrate_finite(prop_zz, 0.0, half_pi, cfg);

  // The metal's own scale |sqrt(eps)| k0 is resolved on a finite panel when it sits
  // well inside the exponential envelope.
  const double decay_scale = 1.0 / (2.0 * z);
  const double breakpoint = 10.0 * std::abs(std::sqrt(eps)) * k0;
  double tail_start = 0.0;
  if (breakpoint < decay_scale) {
    detail::accumulate(xx, integrate_finite(evan_xx, 0.0, breakpoint, cfg));
    detail::accumulate(zz, integrate_finite(evan_zz, 0.0, breakpoint, cfg));
    tail_start = breakpoint;
  }
  detail::accumulate(xx, integrate_semi_infinite_decaying(evan_xx, tail_start, decay_scale, cfg));
  detail::accumulate(zz, integrate_semi_infinite_decaying(evan_zz, tail_start, decay_scale, cfg));

  const double prefactor =
      constants::hbar / constants::vacuum_permittivity / (electric ? 1.0 : c * c);
  SpectralDensityTensor t;
  t.field = field;
  t.z = z;
  t.omega = omega;
  t.model = ModelSelector::local_retarded;
  t.chi_xx = prefactor * (xx.value.real() + xx.value.imag());
  t.chi_zz = prefactor * zz.value;
  t.error_xx = prefactor * (xx.error.real() + xx.error.imag());
  t.error_zz = prefactor * zz.error;
  // Carrier order is (a-term, b-term); for E a = r_s, for B a = r_p.
  InPlaneParts parts;
  parts.rs_part = prefactor * (electric ? xx.value.real() : xx.value.imag());
  parts.rp_part = prefactor * (electric ? xx.value.imag() : xx.value.real());
  parts.rs_error = prefactor * (electric ? xx.error.real() : xx.error.imag());
  parts.rp_error = prefactor * (electric ? xx.error.imag() : xx.error.real());
  t.xx_parts = parts;
  return t;
}

}  // namespace detail

/// Retarded electric spectral density with the local Drude permittivity.
inline SpectralDensityTensor chi_E_local_retarded(const Material& m, double z, double omega,
                                                  const QuadratureConfig& cfg = {}) {
  detail::check_height_frequency(z, omega, "chi_E_local_retarded");
  return detail::local_retarded(FieldKind::electric, drude_epsilon(m, omega), z, omega, cfg);
}

/// Retarded magnetic spectral density: the electric integrals with r_s <-> r_p, times 1/c^2.
inline SpectralDensityTensor chi_B_local_retarded(const Material& m, double z, double omega,
                                                  const QuadratureConfig& cfg = {}) {
  detail::check_height_frequency(z, omega, "chi_B_local_retarded");
  return detail::local_retarded(FieldKind::magnetic, drude_epsilon(m, omega), z, omega, cfg);
}

/// Quasistatic electric closed form for a local permittivity:
/// chi_xx = hbar / (8 eps0 z^3) Im[(eps-1)/(eps+1)], chi_zz = 2 chi_xx.
inline SpectralDensityTensor chi_E_quasistatic_local(Permittivity eps, double z, double omega) {
  detail::check_height_frequency(z, omega, "chi_E_quasistatic_local");
  SpectralDensityTensor t;
  t.field = FieldKind::electric;
  t.z = z;
  t.omega = omega;
  t.model = ModelSelector::local_quasistatic;
  t.chi_xx = constants::hbar / (8.0 * constants::vacuum_permittivity * z * z * z) *
             detail::image_loss(eps);
  t.chi_zz = 2.0 * t.chi_xx;
  return t;
}

inline SpectralDensityTensor chi_E_quasistatic_local(const Material& m, double z, double omega) {
  detail::check_height_frequency(z, omega, "chi_E_quasistatic_local");
  return chi_E_quasistatic_local(drude_epsilon(m, omega), z, omega);
}

/// Quasistatic magnetic closed form: chi_zz = hbar w^2 / (8 eps0 c^4 z) Im(eps - 1), chi_xx = chi_zz / 2.
inline SpectralDensityTensor chi_B_quasistatic_local(Permittivity eps, double z, double omega) {
  detail::check_height_frequency(z, omega, "chi_B_quasistatic_local");
  const double c2 = constants::speed_of_light * constants::speed_of_light;
  SpectralDensityTensor t;
  t.field = FieldKind::magnetic;
  t.z = z;
  t.omega = omega;
  t.model = ModelSelector::local_quasistatic;
  t.chi_zz = constants::hbar * omega * omega / (8.0 * constants::vacuum_permittivity * c2 * c2 * z) *
             eps.imag();
  t.chi_xx = 0.5 * t.chi_zz;
  return t;
}

inline SpectralDensityTensor chi_B_quasistatic_local(const Material& m, double z, double omega) {
  detail::check_height_frequency(z, omega, "chi_B_quasistatic_local");
  return chi_B_quasistatic_local(drude_epsilon(m, omega), z, omega);
}

/// Nonlocal quasistatic electric density for an arbitrary longitudinal permittivity:
/// chi_zz = (hbar/eps0) int_0^inf p^2 e^{-2pz} Im r_p(p) dp, chi_xx = chi_zz / 2.
/// Inner kappa-integrals run at a tenth of the outer tolerance.
template <class LongitudinalEps>
  requires std::invocable<LongitudinalEps&, double>
SpectralDensityTensor chi_E_quasistatic_nonlocal(LongitudinalEps&& eps_l, double z, double omega,
                                                 const QuadratureConfig& cfg) {
  detail::check_height_frequency(z, omega, "chi_E_quasistatic_nonlocal");
  const QuadratureConfig inner = cfg.nested();
  auto integrand = [&](double p) -> double {
    if (p <= 0.0) return 0.0;
    return p * p * std::exp(-2.0 * p * z) * nonlocal_rp_quasistatic(eps_l, p, inner).imag();
  };
  const auto r = integrate_semi_infinite_decaying(integrand, 0.0, 1.0 / (2.0 * z), cfg);
  const double prefactor = constants::hbar / constants::vacuum_permittivity;
  SpectralDensityTensor t;
  t.field = FieldKind::electric;
  t.z = z;
  t.omega = omega;
  t.model = ModelSelector::nonlocal_quasistatic;
  t.chi_zz = prefactor * r.value;
  t.chi_xx = 0.5 * t.chi_zz;
  t.error_zz = prefactor * r.error;
  t.error_xx = 0.5 * t.error_zz;
  return t;
}

inline SpectralDensityTensor chi_E_quasistatic_nonlocal(const Material& m, double z, double omega,
                                                        const QuadratureConfig& cfg = {}) {
  detail::check_height_frequency(z, omega, "chi_E_quasistatic_nonlocal");
  return chi_E_quasistatic_nonlocal([&](double k) { return epsilon_l(m, k, omega); }, z, omega, cfg);
}

/// Nonlocal quasistatic magnetic density:
///   chi_zz = (hbar/(eps0 c^2)) int p^2 e^{-2pz} Im r_s dp,
///   chi_xx = (hbar/(2 eps0 c^2)) int e^{-2pz} Im[(w^2/c^2) r_p + p^2 r_s] dp,
/// with the r_s and r_p parts of chi_xx reported separately.
template <class LongitudinalEps, class TransverseEps>
  requires std::invocable<LongitudinalEps&, double> && std::invocable<TransverseEps&, double>
SpectralDensityTensor chi_B_quasistatic_nonlocal(LongitudinalEps&& eps_l, TransverseEps&& eps_t,
                                                 double z, double omega,
                                                 const QuadratureConfig& cfg) {
  detail::check_height_frequency(z, omega, "chi_B_quasistatic_nonlocal");
  const QuadratureConfig inner = cfg.nested();
  const double c2 = constants::speed_of_light * constants::speed_of_light;
  const double k02 = omega * omega / c2;
  // Real part carries the r_s integrand, imaginary part the r_p integrand.
  auto integrand = [&](double p) -> Complex {
    if (p <= 0.0) return 0.0;
    const double decay = std::exp(-2.0 * p * z);
    const double rs = nonlocal_rs_quasistatic(eps_t, p, omega, inner).imag();
    const double rp = nonlocal_rp_quasistatic(eps_l, p, inner).imag();
    return {decay * p * p * rs, decay * k02 * rp};
  };
  const auto r = integrate_semi_infinite_decaying(integrand, 0.0, 1.0 / (2.0 * z), cfg);
  const double prefactor = constants::hbar / (constants::vacuum_permittivity * c2);
  SpectralDensityTensor t;
  t.field = FieldKind::magnetic;
  t.z = z;
  t.omega = omega;
  t.model = ModelSelector::nonlocal_quasistatic;
  t.chi_zz = prefactor * r.value.real();
  t.error_zz = prefactor * r.error.real();
  InPlaneParts parts;
  parts.rs_part = 0.5 * prefactor * r.value.real();
  parts.rp_part = 0.5 * prefactor * r.value.imag();
  parts.rs_error = 0.5 * prefactor * r.error.real();
  parts.rp_error = 0.5 * prefactor * r.error.imag();
  t.chi_xx = parts.rs_part + parts.rp_part;
  t.error_xx = parts.rs_error + parts.rp_error;
  t.xx_parts = parts;
  return t;
}

inline SpectralDensityTensor chi_B_quasistatic_nonlocal(const Material& m, double z, double omega,
                                                        const QuadratureConfig& cfg = {}) {
  detail::check_height_frequency(z, omega, "chi_B_quasistatic_nonlocal");
  return chi_B_quasistatic_nonlocal([&](double k) { return epsilon_l(m, k, omega); },
                                    [&](double k) { return epsilon_t(m, k, omega); }, z, omega,
                                    cfg);
}

/// Model choice by distance: nonlocal quasistatic below delta/10 (with the
/// 30 lambda_F <= z band flagged as the nonlocal enhancement regime), local
/// retarded beyond.
struct RegimeChoice {
  ModelSelector model = ModelSelector::nonlocal_quasistatic;
  bool enhancement_regime = false;
};

inline RegimeChoice regime_select(const Material& m, double z, double omega) {
  detail::check_height_frequency(z, omega, "regime_select");
  const double near_edge = 30.0 * m.fermi_wavelength();
  const double far_edge = skin_depth(m, omega) / 10.0;
  if (z >= far_edge) return {ModelSelector::local_retarded, false};
  return {ModelSelector::nonlocal_quasistatic, z >= near_edge};
}

/// Spectral density of the requested field under the requested model; auto is
/// resolved through regime_select and the returned tensor names the model used.
inline SpectralDensityTensor spectral_density(FieldKind field, const Material& m, double z,
                                              double omega, ModelSelector model,
                                              const QuadratureConfig& cfg = {}) {
  if (model == ModelSelector::automatic) model = regime_select(m, z, omega).model;
  const bool electric = field == FieldKind::electric;
  switch (model) {
    case ModelSelector::local_quasistatic:
      return electric ? chi_E_quasistatic_local(m, z, omega) : chi_B_quasistatic_local(m, z, omega);
    case ModelSelector::nonlocal_quasistatic:
      return electric ? chi_E_quasistatic_nonlocal(m, z, omega, cfg)
                      : chi_B_quasistatic_nonlocal(m, z, omega, cfg);
    case ModelSelector::local_retarded:
      return electric ? chi_E_local_retarded(m, z, omega, cfg)
                      : chi_B_local_retarded(m, z, omega, cfg);
    case ModelSelector::automatic: break;
  }
  throw DomainError("spectral_density: unresolved model");
}

}  // namespace ewjn
