#pragma once

// Photon Green's function inside a uniform nonlocal metal, and the z -> 0
// surface value it is compared against.
//
// Sign convention: the k-space kernel 4 pi hbar / (w^2 eps_t / c^2 - k^2) (...)
// has a negative imaginary part for an absorbing medium. Results here are
// reported as the positive spectral weight -Im D, in J s/m.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ewjn/constants.hpp"
#include "ewjn/errors.hpp"
#include "ewjn/materials.hpp"
#include "ewjn/quadrature.hpp"
#include "ewjn/spectral.hpp"

namespace ewjn {

using Tensor3 = std::array<std::array<Complex, 3>, 3>;
using Wavevector = std::array<double, 3>;

/// D_ij(k, w) = 4 pi hbar / (w^2 eps_t/c^2 - k^2)
///              * (delta_ij - c^2 k_i k_j / (w^2 eps_l) + k_i k_j (eps_t - eps_l) / (k^2 eps_l))
/// for given eps_l, eps_t at |k|. Units J s m^2.
inline Tensor3 bulk_green_k(Permittivity eps_l, Permittivity eps_t, const Wavevector& k,
                            double omega) {
  if (!(omega > 0.0)) throw DomainError("bulk_green_k: omega must be > 0");
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  if (!(k2 > 0.0)) throw DomainError("bulk_green_k: |k| must be > 0");
  const double c2 = constants::speed_of_light * constants::speed_of_light;
  const double w2 = omega * omega;
  const Complex scale = 4.0 * constants::pi * constants::hbar / (w2 * eps_t / c2 - k2);
  const Complex longitudinal = c2 / (w2 * eps_l);
  const Complex mixing = (eps_t - eps_l) / (k2 * eps_l);
  Tensor3 d{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double kk = k[i] * k[j];
      d[i][j] = scale * ((i == j ? 1.0 : 0.0) - longitudinal * kk + kk * mixing);
    }
  return d;
}

inline Tensor3 bulk_green_k(const Material& m, const Wavevector& k, double omega) {
  const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  if (!(kn > 0.0)) throw DomainError("bulk_green_k: |k| must be > 0");
  return bulk_green_k(epsilon_l(m, kn, omega), epsilon_t(m, kn, omega), k, omega);
}

/// Radial integrands of -Im D_ii(r, r) after the analytic angular average
/// <k_i k_j> = delta_ij k^2 / 3, including the 1/(2 pi^2) measure. Two
/// independent reductions: `xx` substitutes the average into the printed
/// tensor; `zz` goes through the transverse/longitudinal eigenvalues,
/// (2 D_T + D_L) / 3 with D_T = 4 pi hbar / (A - k^2), D_L = 4 pi hbar c^2 / (w^2 eps_l).
struct BulkRadialIntegrand {
  double xx = 0.0;
  double zz = 0.0;
};

inline BulkRadialIntegrand bulk_radial_integrand(Permittivity eps_l, Permittivity eps_t, double k,
                                                 double omega) {
  const double c2 = constants::speed_of_light * constants::speed_of_light;
  const double w2 = omega * omega;
  const double k2 = k * k;
  const double four_pi_hbar = 4.0 * constants::pi * constants::hbar;
  const double measure = k2 / (2.0 * constants::pi * constants::pi);
  const Complex a = w2 * eps_t / c2;

  const Complex printed = four_pi_hbar / (a - k2) *
                          (1.0 - c2 * k2 / (3.0 * w2 * eps_l) + (eps_t - eps_l) / (3.0 * eps_l));
  const Complex transverse = four_pi_hbar / (a - k2);
  const Complex longitudinal = four_pi_hbar * c2 / (w2 * eps_l);
  const Complex eigen = (2.0 * transverse + longitudinal) / 3.0;
  return {-measure * printed.imag(), -measure * eigen.imag()};
}

inline BulkRadialIntegrand bulk_radial_integrand(const Material& m, double k, double omega) {
  return bulk_radial_integrand(epsilon_l(m, k, omega), epsilon_t(m, k, omega), k, omega);
}

struct CutoffPoint {
  double k_max = 0.0;  // 1/m
  double im_D = 0.0;   // J s/m
};

struct BulkGreenResult {
  double im_D_xx = 0.0;  // J s/m
  double im_D_zz = 0.0;
  double omega = 0.0;
  double k_max_used = 0.0;
  double error = 0.0;
  bool converged = false;
  std::vector<CutoffPoint> convergence_series;
};

/// The cutoff ladder ended without two successive values within the stopping
/// ratio. The partial result (all ladder entries) is attached.
class CutoffConvergenceError : public QuadratureError {
 public:
  CutoffConvergenceError(const std::string& what, BulkGreenResult partial)
      : QuadratureError(what, partial.im_D_xx, partial.error), partial_(std::move(partial)) {}
  const BulkGreenResult& partial() const noexcept { return partial_; }

 private:
  BulkGreenResult partial_;
};

struct BulkLadder {
  std::vector<double> cutoffs_in_kf{3.0, 10.0, 30.0, 100.0};
  double stop_ratio = 0.01;
};

/// -Im D_xx = -Im D_zz at coincident points inside the metal. The radial
/// integral is accumulated over increasing cutoffs until successive values agree
/// within the stopping ratio; failing that, CutoffConvergenceError.
inline BulkGreenResult bulk_imD_coincident(const Material& m, double omega,
                                           const QuadratureConfig& cfg = {},
                                           const BulkLadder& ladder = {}) {
  if (!(omega > 0.0)) throw DomainError("bulk_imD_coincident: omega must be > 0");
  if (ladder.cutoffs_in_kf.empty()) throw DomainError("bulk_imD_coincident: empty cutoff ladder");
  const double kf = m.fermi_wavevector();

  // Below k_low the integrand is ~k^2 times a constant; above it, work in ln k so
  // the many decades between the skin-depth scale and k_F cost nothing.
  const double k0 = omega / constants::speed_of_light;
  const double skin_scale = std::abs(std::sqrt(drude_epsilon(m, omega))) * k0;
  const double diffusive_scale = std::sqrt(omega * m.collision_rate()) / m.fermi_velocity();
  double k_low = 1e-3 * std::min(skin_scale > 0.0 ? skin_scale : k0, diffusive_scale);
  k_low = std::min(k_low, 1e-3 * kf * ladder.cutoffs_in_kf.front());

  auto linear = [&](double k) -> Complex {
    const auto v = bulk_radial_integrand(m, k, omega);
    return {v.xx, v.zz};
  };
  auto logarithmic = [&](double t) -> Complex {
    const double k = std::exp(t);
    const auto v = bulk_radial_integrand(m, k, omega);
    return {k * v.xx, k * v.zz};
  };

  BulkGreenResult out;
  out.omega = omega;
  auto acc = integrate_finite(linear, 0.0, k_low, cfg);
  double lower = std::log(k_low);
  double previous = 0.0;
  for (std::size_t i = 0; i < ladder.cutoffs_in_kf.size(); ++i) {
    const double k_max = ladder.cutoffs_in_kf[i] * kf;
    const double upper = std::log(k_max);
    if (!(upper > lower)) throw DomainError("bulk_imD_coincident: cutoff ladder must increase");
    detail::accumulate(acc, integrate_finite(logarithmic, lower, upper, cfg));
    lower = upper;
    out.im_D_xx = acc.value.real();
    out.im_D_zz = acc.value.imag();
    out.error = acc.error.real();
    out.k_max_used = k_max;
    out.convergence_series.push_back({k_max, out.im_D_xx});
    if (i > 0 && std::abs(out.im_D_xx - previous) <= ladder.stop_ratio * std::abs(out.im_D_xx)) {
      out.converged = true;
      return out;
    }
    previous = out.im_D_xx;
  }
  throw CutoffConvergenceError("bulk_imD_coincident: cutoff ladder did not converge", out);
}

struct SurfaceLimitResult {
  double im_D_xx = 0.0;  // J s/m
  double im_D_zz = 0.0;
  double z = 0.0;
  double error_xx = 0.0;
  double error_zz = 0.0;
};

/// Nonlocal quasistatic electric density just outside the surface (z = fraction * lambda_F,
/// default 1e-3) converted to Im D_ij = (eps0 c^2 / w^2) chi^E_ij.
inline SurfaceLimitResult surface_limit_imD(const Material& m, double omega,
                                            const QuadratureConfig& cfg = {},
                                            double z_over_fermi_wavelength = 1e-3) {
  if (!(omega > 0.0)) throw DomainError("surface_limit_imD: omega must be > 0");
  const double z = z_over_fermi_wavelength * m.fermi_wavelength();
  const auto chi = chi_E_quasistatic_nonlocal(m, z, omega, cfg);
  const double c = constants::speed_of_light;
  const double to_green = constants::vacuum_permittivity * c * c / (omega * omega);
  return {to_green * chi.chi_xx, to_green * chi.chi_zz, z, to_green * chi.error_xx,
          to_green * chi.error_zz};
}

}  // namespace ewjn
