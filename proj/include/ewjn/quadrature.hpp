#pragma once

// One-dimensional adaptive integration shared by every physics integral.
//
// The engine is a globally adaptive 21-point Gauss-Kronrod rule (QUADPACK QAG
// style). Integrands may be real or complex; for complex integrands the real
// and imaginary parts are converged independently, each against its own
// relative tolerance. That matters here: reflection coefficients routinely
// have Im r ~ 1e-9 Re r and it is the imaginary part the noise formulas use.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ewjn/errors.hpp"

namespace ewjn {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-30;  // in integrand units
  int max_subdivisions = 2000;
  double tail_cut = 1e-12;  // exponential-tail truncation threshold

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("quadrature: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw DomainError("quadrature: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be >= 1");
    if (!(tail_cut > 0.0 && tail_cut < 1.0))
      throw DomainError("quadrature: tail_cut must lie in (0, 1)");
  }

  /// Budget for an integral nested inside one evaluated with this config.
  QuadratureConfig nested() const {
    QuadratureConfig inner = *this;
    inner.rel_tol = rel_tol / 10.0;
    return inner;
  }
};

/// Integral estimate. For complex T the error is componentwise:
/// error.real() bounds the real part, error.imag() the imaginary part.
template <class T>
struct QuadratureResult {
  T value{};
  T error{};
  int intervals = 0;
  int evaluations = 0;
  bool converged = false;
};

enum class TailDecay { exponential, power_law };

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208972119801, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Component {
  double value = 0.0;
  double error = 0.0;
};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::array<Component, 2> part{};  // real, imaginary
};

// QUADPACK qk21 error model applied to one real component.
inline Component finish_component(double kronrod, double gauss, double abs_sum, double center_value,
                                  const std::array<double, 21>& values, double half) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double mean = 0.5 * kronrod / half;
  double asc = kKronrodWeights[10] * std::abs(center_value - mean);
  for (int j = 0; j < 10; ++j)
    asc += kKronrodWeights[j] * (std::abs(values[2 * j] - mean) + std::abs(values[2 * j + 1] - mean));
  asc *= half;
  const double resabs = abs_sum * half;
  double err = std::abs((kronrod - gauss));
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (resabs > tiny / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
  return {kronrod, err};
}

template <class F>
Panel evaluate_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<std::array<double, 21>, 2> values{};
  std::array<double, 2> fc{};
  {
    const std::complex<double> v(f(center));
    fc = {v.real(), v.imag()};
  }
  std::array<double, 2> kronrod{kKronrodWeights[10] * fc[0], kKronrodWeights[10] * fc[1]};
  std::array<double, 2> gauss{0.0, 0.0};
  std::array<double, 2> abs_sum{kKronrodWeights[10] * std::abs(fc[0]),
                                kKronrodWeights[10] * std::abs(fc[1])};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const std::complex<double> lo(f(center - dx));
    const std::complex<double> hi(f(center + dx));
    const std::array<double, 2> l{lo.real(), lo.imag()};
    const std::array<double, 2> h{hi.real(), hi.imag()};
    for (int c = 0; c < 2; ++c) {
      values[c][2 * j] = l[c];
      values[c][2 * j + 1] = h[c];
      kronrod[c] += kKronrodWeights[j] * (l[c] + h[c]);
      abs_sum[c] += kKronrodWeights[j] * (std::abs(l[c]) + std::abs(h[c]));
      if (j % 2 == 1) gauss[c] += kGaussWeights[j / 2] * (l[c] + h[c]);
    }
  }
  Panel p{a, b, {}};
  for (int c = 0; c < 2; ++c)
    p.part[c] = finish_component(kronrod[c] * half, gauss[c] * half, abs_sum[c], fc[c], values[c],
                                 half);
  return p;
}

template <class T>
T assemble(double re, double im) {
  if constexpr (std::is_same_v<T, double>) {
    (void)im;
    return re;
  } else {
    return T(re, im);
  }
}

template <class F, class T = std::decay_t<std::invoke_result_t<F&, double>>>
QuadratureResult<T> adaptive(F&& f, double a, double b, const QuadratureConfig& cfg) {
  static_assert(std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>,
                "integrand must return double or std::complex<double>");
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  panels.push_back(evaluate_panel(f, a, b));
  int evaluations = 21;

  std::array<double, 2> total{};
  std::array<double, 2> error{};
  auto tally = [&] {
    total = {0.0, 0.0};
    error = {0.0, 0.0};
    for (const auto& p : panels)
      for (int c = 0; c < 2; ++c) {
        total[c] += p.part[c].value;
        error[c] += p.part[c].error;
      }
  };
  auto tolerance = [&](int c) { return std::max(cfg.rel_tol * std::abs(total[c]), cfg.abs_tol); };
  auto done = [&] { return error[0] <= tolerance(0) && error[1] <= tolerance(1); };

  tally();
  bool ok = done();
  while (!ok && static_cast<int>(panels.size()) < cfg.max_subdivisions) {
    const std::array<double, 2> tol{tolerance(0), tolerance(1)};
    auto priority = [&](const Panel& p) {
      double worst = 0.0;
      for (int c = 0; c < 2; ++c) {
        const double scale = tol[c] > 0.0 ? tol[c] : std::numeric_limits<double>::min();
        worst = std::max(worst, p.part[c].error / scale);
      }
      return worst;
    };
    auto it = std::max_element(panels.begin(), panels.end(),
                               [&](const Panel& x, const Panel& y) { return priority(x) < priority(y); });
    const double mid = 0.5 * (it->a + it->b);
    if (!(mid > it->a && mid < it->b)) break;  // cannot bisect further
    const Panel left = evaluate_panel(f, it->a, mid);
    const Panel right = evaluate_panel(f, mid, it->b);
    evaluations += 42;
    *it = left;
    panels.push_back(right);
    tally();
    ok = done();
  }

  QuadratureResult<T> r;
  r.value = assemble<T>(total[0], total[1]);
  r.error = assemble<T>(error[0], error[1]);
  r.intervals = static_cast<int>(panels.size());
  r.evaluations = evaluations;
  r.converged = ok && std::isfinite(total[0]) && std::isfinite(total[1]);
  return r;
}

template <class T>
[[noreturn]] void raise_nonconvergence(const std::string& where, const QuadratureResult<T>& r) {
  throw QuadratureError(where + ": adaptive quadrature did not converge after " +
                            std::to_string(r.intervals) + " subdivisions",
                        std::complex<double>(r.value), std::complex<double>(r.error));
}

template <class T>
void accumulate(QuadratureResult<T>& into, const QuadratureResult<T>& part) {
  into.value += part.value;
  into.error += part.error;
  into.intervals += part.intervals;
  into.evaluations += part.evaluations;
  into.converged = into.converged && part.converged;
}

}  // namespace detail

/// Adaptive integral of f over [a, b]. Returns the estimate with converged = false
/// instead of throwing when the subdivision budget runs out.
template <class F>
auto try_integrate_finite(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (!(a < b)) throw DomainError("integrate_finite: requires a < b");
  return detail::adaptive(f, a, b, cfg);
}

/// Adaptive integral of f over [a, b]; reported error <= max(rel_tol |I|, abs_tol)
/// per component, otherwise QuadratureError with the best estimate attached.
template <class F>
auto integrate_finite(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  auto r = try_integrate_finite(f, a, b, cfg);
  if (!r.converged) detail::raise_nonconvergence("integrate_finite", r);
  return r;
}

/// Integral over [a, b] of an integrand with an inverse-square-root singularity
/// at a. Substitutes x = a + t^2 so the engine sees a smooth function.
template <class F>
auto integrate_finite_sqrt_endpoint(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  if (!(a < b)) throw DomainError("integrate_finite_sqrt_endpoint: requires a < b");
  return integrate_finite([&](double t) { return 2.0 * t * f(a + t * t); }, 0.0, std::sqrt(b - a),
                          cfg);
}

/// Integral of f over [a, infinity).
///
/// exponential: |f| eventually falls like exp(-(t-a)/decay_scale). The range is
/// [a, a + N decay_scale] with N grown until the estimated discarded tail,
/// |f(end)| * decay_scale, is below tail_cut |result|; the tail estimate is added
/// to the reported error.
///
/// power_law: |f| falls at least like t^-2; the range is mapped onto [0, 1) by
/// t = a + decay_scale u / (1 - u).
template <class F>
auto integrate_semi_infinite_decaying(F&& f, double a, double decay_scale,
                                      const QuadratureConfig& cfg = {},
                                      TailDecay decay = TailDecay::exponential) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  cfg.validate();
  if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
    throw DomainError("integrate_semi_infinite_decaying: decay_scale must be > 0");

  if (decay == TailDecay::power_law) {
    auto mapped = [&](double u) -> T {
      const double w = 1.0 - u;
      return f(a + decay_scale * u / w) * (decay_scale / (w * w));
    };
    auto r = detail::adaptive(mapped, 0.0, 1.0, cfg);
    if (!r.converged) detail::raise_nonconvergence("integrate_semi_infinite_decaying", r);
    return r;
  }

  double span = std::ceil(std::log(1.0 / cfg.tail_cut)) + 10.0;
  QuadratureResult<T> total = detail::adaptive(f, a, a + span * decay_scale, cfg);
  double end = a + span * decay_scale;
  for (int round = 0;; ++round) {
    if (!total.converged) detail::raise_nonconvergence("integrate_semi_infinite_decaying", total);
    double tail_re = 0.0;
    double tail_im = 0.0;
    for (double back : {0.0, 0.5, 1.0}) {
      const std::complex<double> v(f(end - back * decay_scale));
      tail_re = std::max(tail_re, std::abs(v.real()) * 2.0 * decay_scale);
      tail_im = std::max(tail_im, std::abs(v.imag()) * 2.0 * decay_scale);
    }
    const std::complex<double> value(total.value);
    const bool small_re = tail_re <= std::max(cfg.tail_cut * std::abs(value.real()), cfg.abs_tol);
    const bool small_im = tail_im <= std::max(cfg.tail_cut * std::abs(value.imag()), cfg.abs_tol);
    if (small_re && small_im) {
      total.error += detail::assemble<T>(tail_re, tail_im);
      return total;
    }
    if (round >= 8) {
      total.converged = false;
      throw QuadratureError("integrate_semi_infinite_decaying: tail bound not reached",
                            std::complex<double>(total.value), std::complex<double>(total.error));
    }
    const double next = end + span * decay_scale;
    detail::accumulate(total, detail::adaptive(f, end, next, cfg));
    end = next;
    span *= 2.0;
  }
}

}  // namespace ewjn
