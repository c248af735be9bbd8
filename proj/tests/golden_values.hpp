#pragma once

// Frozen reference values from tests/oracles/golden.py (mpmath, 40 digits;
// nonlocal reflection by a 10^6-node trapezoid rule on kappa in [0, 1000 k_F]).
// Copper preset, omega = 6 pi 1e8 rad/s unless noted.

#include <complex>

namespace golden {

inline constexpr double kFermiWavevector = 13554626396.563261;
inline constexpr double kFermiWavelength = 4.6354544369977407e-10;
inline const std::complex<double> kDrudeCopper{-720505.18758489561, 7205061875.8489561};
inline const std::complex<double> kFl2{-0.098612288668109691, 0.0};
inline const std::complex<double> kFt2{1.0562447009935064, 0.0};
inline const std::complex<double> kEpsLongitudinalAtKf{2.6976051451123961, 2.3651297391376017e-7};
inline const std::complex<double> kEpsTransverseAtKf{-0.6952433059241469, 15027880.481054967};
inline const std::complex<double> kBulkGreen00{1.3807157973369874e-36, -1.2105448417814069e-43};
inline const std::complex<double> kBulkGreen01{2.7614315946739748e-36, -2.4210896835628138e-43};
inline const std::complex<double> kBulkGreen22{5.5228631893479497e-36, -4.8421793671256275e-43};
inline constexpr double kChiExxLocal10 = 4.1490891885452004e-9;
inline constexpr double kChiBzzLocal10 = 1.0178933487241574e-21;
inline constexpr double kChargeT1Local30x = 1.0067931728311848;
inline constexpr double kSpinT1Local10z = 0.12703252133795946;
inline const std::complex<double> kNonlocalRpAtLf{0.88508063692923181, 2.2095472011773403e-8};
inline const std::complex<double> kNonlocalRsAtLf{-1.681028546173423e-15, 1.3462629495044082e-9};

}  // namespace golden
