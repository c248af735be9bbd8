#include <gtest/gtest.h>

#include <cmath>

#include "ewjn/constants.hpp"
#include "ewjn/materials.hpp"
#include "ewjn/relaxation.hpp"
#include "golden_values.hpp"

using namespace ewjn;

namespace {

const double kOmega = 6.0 * constants::pi * 1e8;

double lf() { return copper().fermi_wavelength(); }

double tanh_factor(double omega, double temperature) {
  return std::tanh(constants::hbar * omega / (2.0 * constants::boltzmann * temperature));
}

}  // namespace

TEST(ThermalFactor, Limits) {
  EXPECT_EQ(thermal_factor(kOmega, 0.0), 1.0);
  EXPECT_EQ(thermal_factor(1e3, 0.0), 1.0);
  EXPECT_NEAR(thermal_factor(kOmega, 2.0), 278.0, 0.5);
  const double t = constants::hbar * kOmega / (2.0 * constants::boltzmann);
  EXPECT_NEAR(thermal_factor(kOmega, t), 1.3130352854993313, 1e-14);
}

TEST(ThermalFactor, StableAtExtremes) {
  // hbar w >> k_B T: exactly 1 to double precision, no overflow.
  EXPECT_EQ(thermal_factor(1e15, 1e-6), 1.0);
  // hbar w << k_B T: 2 k_B T / hbar w.
  const double omega = 1.0, temperature = 300.0;
  const double y = constants::hbar * omega / (2.0 * constants::boltzmann * temperature);
  EXPECT_NEAR(thermal_factor(omega, temperature) * y, 1.0, 1e-12);
  for (double w = 1e3; w < 1e16; w *= 10.0)
    for (double T : {1e-3, 0.1, 2.0, 300.0}) {
      const double f = thermal_factor(w, T);
      EXPECT_TRUE(std::isfinite(f));
      EXPECT_GE(f, 1.0);
    }
}

TEST(ThermalFactor, RejectsBadArguments) {
  EXPECT_THROW(thermal_factor(0.0, 1.0), DomainError);
  EXPECT_THROW(thermal_factor(kOmega, -1.0), DomainError);
}

TEST(T1, ChargeQubitAtThirtyFermiWavelengths) {
  const auto q = QubitSpec::atomic_charge(kOmega, Orientation::x);
  const auto r = t1(copper(), q, 30.0 * lf(), 0.0, ModelSelector::local_quasistatic);
  EXPECT_NEAR(r.t1 / golden::kChargeT1Local30x, 1.0, 1e-10);
  EXPECT_GE(r.t1, 0.1);
  EXPECT_LE(r.t1, 10.0);
  EXPECT_DOUBLE_EQ(r.rate * r.t1, 1.0);
  EXPECT_EQ(r.thermal_factor, 1.0);
  const auto near = t1(copper(), q, 10.0 * lf(), 0.0, ModelSelector::local_quasistatic);
  EXPECT_NEAR(near.t1 * 27.0 / r.t1, 1.0, 1e-12);
}

TEST(T1, SpinQubitAtTenFermiWavelengths) {
  const auto q = QubitSpec::electron_spin(kOmega, Orientation::z);
  const auto r = t1(copper(), q, 10.0 * lf(), 0.0, ModelSelector::local_quasistatic);
  EXPECT_NEAR(r.t1 / golden::kSpinT1Local10z, 1.0, 1e-10);
  EXPECT_GE(r.t1, 0.1);
  EXPECT_LE(r.t1, 0.3);
}

TEST(T1, RateScalesAsMomentSquared) {
  for (auto model : {ModelSelector::local_quasistatic, ModelSelector::nonlocal_quasistatic}) {
    auto q = QubitSpec::atomic_charge(kOmega);
    const double r1 = t1(copper(), q, 5e-9, 0.0, model).rate;
    q.moment *= 3.0;
    const double r3 = t1(copper(), q, 5e-9, 0.0, model).rate;
    EXPECT_NEAR(r3 / r1, 9.0, 9.0 * 1e-14);
  }
}

TEST(T1, TemperatureRatioIsTanh) {
  const Material cu = copper();
  for (auto model : {ModelSelector::local_quasistatic, ModelSelector::nonlocal_quasistatic,
                     ModelSelector::local_retarded})
    for (auto kind : {QubitKind::charge, QubitKind::spin})
      for (double T : {0.05, 2.0, 300.0}) {
        const auto q = kind == QubitKind::charge ? QubitSpec::atomic_charge(kOmega)
                                                 : QubitSpec::electron_spin(kOmega);
        const double cold = t1(cu, q, 20.0 * lf(), 0.0, model).t1;
        const double warm = t1(cu, q, 20.0 * lf(), T, model).t1;
        EXPECT_NEAR(warm / cold / tanh_factor(kOmega, T), 1.0, 1e-12);
      }
}

TEST(T1, OrientationRatioInQuasistaticModels) {
  const Material cu = copper();
  for (auto model : {ModelSelector::local_quasistatic, ModelSelector::nonlocal_quasistatic})
    for (auto kind : {QubitKind::charge, QubitKind::spin}) {
      auto make = [&](Orientation o) {
        return kind == QubitKind::charge ? QubitSpec::atomic_charge(kOmega, o)
                                         : QubitSpec::electron_spin(kOmega, o);
      };
      const double rx = t1(cu, make(Orientation::x), 10.0 * lf(), 0.0, model).rate;
      const double ry = t1(cu, make(Orientation::y), 10.0 * lf(), 0.0, model).rate;
      const double rz = t1(cu, make(Orientation::z), 10.0 * lf(), 0.0, model).rate;
      EXPECT_EQ(rx, ry);
      EXPECT_NEAR(rz / rx, 2.0, 1e-6);
    }
}

TEST(T1, MagneticRateFlattensAtLowFrequency) {
  const Material cu = copper();
  auto rate = [&](double w) {
    return t1(cu, QubitSpec::electron_spin(w), 1e-8, 2.0, ModelSelector::local_quasistatic).rate;
  };
  EXPECT_NEAR(rate(1e5) / rate(1e6), 1.0, 1e-6);
  EXPECT_NEAR(rate(1e6) / rate(1e7), 1.0, 1e-6);
}

TEST(T1, ReportsResolvedModelAndComponent) {
  const auto q = QubitSpec::atomic_charge(kOmega, Orientation::z);
  const auto r = t1(copper(), q, 1e-6, 0.0, ModelSelector::automatic);
  EXPECT_EQ(r.model, ModelSelector::local_retarded);
  EXPECT_EQ(r.chi, r.spectral.chi_zz);
}

TEST(QubitSpec, Validation) {
  QubitSpec q = QubitSpec::atomic_charge(kOmega);
  q.moment = 0.0;
  EXPECT_THROW(t1(copper(), q, 1e-8, 0.0, ModelSelector::local_quasistatic), DomainError);
  q = QubitSpec::electron_spin(0.0);
  EXPECT_THROW(q.validate(), DomainError);
  EXPECT_EQ(parse_qubit_kind("spin"), QubitKind::spin);
  EXPECT_EQ(parse_orientation("y"), Orientation::y);
  EXPECT_THROW(parse_qubit_kind("flux"), ValidationError);
  EXPECT_THROW(parse_orientation("w"), ValidationError);
}
