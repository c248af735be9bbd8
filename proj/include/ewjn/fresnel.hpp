#pragma once

#include <cmath>
#include <concepts>
#include <complex>

#include "ewjn/constants.hpp"
#include "ewjn/errors.hpp"
#include "ewjn/materials.hpp"
#include "ewjn/quadrature.hpp"

namespace ewjn {

/// Reflection amplitudes of the vacuum/metal interface at transverse wavevector p.
struct ReflectionPair {
  Complex r_s;
  Complex r_p;
  double p = 0.0;
  double omega = 0.0;
};

/// Normal wavevector in vacuum: sqrt(w^2/c^2 - p^2) (real, >= 0) for propagating
/// waves and i sqrt(p^2 - w^2/c^2) for evanescent ones.
inline Complex vacuum_normal_wavevector(double p, double omega) {
  if (!(p >= 0.0)) throw DomainError("vacuum_normal_wavevector: p must be >= 0");
  if (!(omega > 0.0)) throw DomainError("vacuum_normal_wavevector: omega must be > 0");
  const double k0 = omega / constants::speed_of_light;
  if (p <= k0) return {std::sqrt((k0 - p) * (k0 + p)), 0.0};
  return {0.0, std::sqrt((p - k0) * (p + k0))};
}

/// Normal wavevector in the metal, sqrt(eps k0^2 - p^2) on the branch that decays
/// into the half-space (Im >= 0).
inline Complex metal_normal_wavevector(double p_squared, double k0_squared, Permittivity eps) {
  Complex q = std::sqrt(eps * k0_squared - p_squared);
  if (q.imag() < 0.0) q = -q;
  return q;
}

namespace detail {

// Fresnel amplitudes from the vacuum normal wavevector. Written as
//   r_s = (1 - eps) k0^2 / (q1 + qm)^2,   r_p = 1 - 2 qm / (eps q1 + qm),
// which equal (q1 - qm)/(q1 + qm) and (eps q1 - qm)/(eps q1 + qm) but keep the
// small imaginary parts free of cancellation.
inline ReflectionPair fresnel_from_normal(Complex q1, double p_squared, double k0_squared,
                                          Permittivity eps) {
  if (eps == Complex(1.0, 0.0)) return {Complex(0.0), Complex(0.0), 0.0, 0.0};
  const Complex qm = metal_normal_wavevector(p_squared, k0_squared, eps);
  const Complex sum_s = q1 + qm;
  const Complex r_s = (1.0 - eps) * k0_squared / (sum_s * sum_s);
  const Complex r_p = 1.0 - 2.0 * qm / (eps * q1 + qm);
  return {r_s, r_p, 0.0, 0.0};
}

}  // namespace detail

/// Local Fresnel coefficients r_s, r_p for permittivity eps.
inline ReflectionPair local_reflection(double p, double omega, Permittivity eps) {
  const Complex q1 = vacuum_normal_wavevector(p, omega);
  const double k0 = omega / constants::speed_of_light;
  ReflectionPair r = detail::fresnel_from_normal(q1, p * p, k0 * k0, eps);
  r.p = p;
  r.omega = omega;
  return r;
}

/// Quasistatic p-polarized reflection for a longitudinal permittivity eps_l(k):
///   r_p = (1 - I) / (1 + I),  I = (2p/pi) int_0^inf dkappa / (k^2 eps_l(k)),  k^2 = p^2 + kappa^2.
/// Specular surface scattering; vacuum permittivity in Gaussian units (= 1).
template <class LongitudinalEps>
  requires std::invocable<LongitudinalEps&, double>
Complex nonlocal_rp_quasistatic(LongitudinalEps&& eps_l, double p, const QuadratureConfig& cfg) {
  if (!(p > 0.0)) throw DomainError("nonlocal_rp_quasistatic: p must be > 0");
  const double p2 = p * p;
  auto integrand = [&](double kappa) -> Complex {
    const double k2 = p2 + kappa * kappa;
    return 1.0 / (k2 * Complex(eps_l(std::sqrt(k2))));
  };
  const auto r = integrate_semi_infinite_decaying(integrand, 0.0, p, cfg, TailDecay::power_law);
  const Complex screening = (2.0 * p / constants::pi) * r.value;
  return (1.0 - screening) / (1.0 + screening);
}

inline Complex nonlocal_rp_quasistatic(const Material& m, double p, double omega,
                                       const QuadratureConfig& cfg) {
  if (!(omega > 0.0)) throw DomainError("nonlocal_rp_quasistatic: omega must be > 0");
  return nonlocal_rp_quasistatic([&](double k) { return epsilon_l(m, k, omega); }, p, cfg);
}

/// Quasistatic s-polarized reflection to leading order in w/c for a transverse
/// permittivity eps_t(k):
///   r_s = (w^2 / 4p^2c^2) ((4p^3/pi) int_0^inf dkappa eps_t(k) / k^4 - 1).
/// The speed of light is a parameter so the w^2/c^2 structure can be probed.
template <class TransverseEps>
  requires std::invocable<TransverseEps&, double>
Complex nonlocal_rs_quasistatic(TransverseEps&& eps_t, double p, double omega,
                                const QuadratureConfig& cfg,
                                double light_speed = constants::speed_of_light) {
  if (!(p > 0.0)) throw DomainError("nonlocal_rs_quasistatic: p must be > 0");
  if (!(omega > 0.0)) throw DomainError("nonlocal_rs_quasistatic: omega must be > 0");
  const double p2 = p * p;
  auto integrand = [&](double kappa) -> Complex {
    const double k2 = p2 + kappa * kappa;
    return Complex(eps_t(std::sqrt(k2))) / (k2 * k2);
  };
  const auto r = integrate_semi_infinite_decaying(integrand, 0.0, p, cfg, TailDecay::power_law);
  const Complex moment = (4.0 * p * p2 / constants::pi) * r.value;
  const double k0 = omega / light_speed;
  return k0 * k0 / (4.0 * p2) * (moment - 1.0);
}

inline Complex nonlocal_rs_quasistatic(const Material& m, double p, double omega,
                                       const QuadratureConfig& cfg) {
  return nonlocal_rs_quasistatic([&](double k) { return epsilon_t(m, k, omega); }, p, omega, cfg);
}

}  // namespace ewjn
