"""Independent high-precision oracle for the frozen values in tests/golden_values.hpp.

Evaluates the permittivities, reflection coefficients and closed forms straight
from their defining formulas with mpmath (40 digits), with none of the
rearrangements the C++ library uses. The nonlocal reflection golden values use
a brute-force trapezoid rule on kappa in [0, 1000 k_F] with 10^6 nodes plus the
analytic eps = 1 tail beyond the cutoff.

Run: python3 tests/oracles/golden.py
"""
import sys
import mpmath as mp

mp.mp.dps = 40

HBAR = mp.mpf("1.054571817e-34")
C = mp.mpf(299792458)
EPS0 = mp.mpf("8.8541878128e-12")
ME = mp.mpf("9.1093837015e-31")
QE = mp.mpf("1.602176634e-19")
KB = mp.mpf("1.380649e-23")
A_B = mp.mpf("5.29177210903e-11")
MU_B = mp.mpf("9.2740100783e-24")

WP = mp.mpf("1.6e16")
NU = 6 * mp.pi * mp.mpf(10) ** 12
EF = 7 * QE
OMEGA = 6 * mp.pi * mp.mpf(10) ** 8
VF = mp.sqrt(2 * EF / ME)
KF = ME * VF / HBAR
LF = 2 * mp.pi / KF


def drude(w):
    return 1 - WP**2 / (w * (w + 1j * NU))


def L(x):
    return mp.log(x + 1) - mp.log(x - 1)


def f_l(x):
    return 1 - x / 2 * L(x)


def f_t(x):
    return mp.mpf(3) / 2 * x**2 - mp.mpf(3) / 4 * x * (x**2 - 1) * L(x)


def eps_l(k, w):
    x = (w + 1j * NU) / (k * VF)
    f = f_l(x)
    return 1 + 3 * WP**2 / (k**2 * VF**2) * (w + 1j * NU) * f / (w + 1j * NU * f)


def eps_t(k, w):
    x = (w + 1j * NU) / (k * VF)
    return 1 - WP**2 / (w * (w + 1j * NU)) * f_t(x)


def trapezoid(fn, upper, nodes):
    h = upper / (nodes - 1)
    total = (fn(mp.mpf(0)) + fn(upper)) / 2
    for j in range(1, nodes - 1):
        total += fn(j * h)
    return total * h


def emit(name, z):
    z = mp.mpc(z)
    print(f"inline const std::complex<double> {name}{{{mp.nstr(z.real, 17)}, {mp.nstr(z.imag, 17)}}};")


def emit_real(name, v):
    print(f"inline constexpr double {name} = {mp.nstr(mp.mpf(v), 17)};")


def main(nodes):
    emit_real("kFermiWavevector", KF)
    emit_real("kFermiWavelength", LF)
    emit("kDrudeCopper", drude(OMEGA))
    emit("kFl2", f_l(mp.mpf(2)))
    emit("kFt2", f_t(mp.mpf(2)))
    emit("kEpsLongitudinalAtKf", eps_l(KF, OMEGA))
    emit("kEpsTransverseAtKf", eps_t(KF, OMEGA))

    # Bulk Green tensor at k = k_F (1, 2, 2)/3.
    kvec = [KF / 3, 2 * KF / 3, 2 * KF / 3]
    el, et = eps_l(KF, OMEGA), eps_t(KF, OMEGA)
    scale = 4 * mp.pi * HBAR / (OMEGA**2 * et / C**2 - KF**2)
    for i, j in [(0, 0), (0, 1), (2, 2)]:
        kk = kvec[i] * kvec[j]
        d = scale * ((1 if i == j else 0) - C**2 * kk / (OMEGA**2 * el) + kk * (et - el) / (KF**2 * el))
        emit(f"kBulkGreen{i}{j}", d)

    # Closed-form quasistatic values at z = 10 lambda_F.
    z = 10 * LF
    e = drude(OMEGA)
    chi_e_xx = HBAR / (8 * EPS0 * z**3) * ((e - 1) / (e + 1)).imag
    chi_b_zz = HBAR * OMEGA**2 / (8 * EPS0 * C**4 * z) * (e - 1).imag
    emit_real("kChiExxLocal10", chi_e_xx)
    emit_real("kChiBzzLocal10", chi_b_zz)
    d = QE * A_B
    emit_real("kChargeT1Local30x", 1 / (d**2 / HBAR**2 * HBAR / (8 * EPS0 * (30 * LF) ** 3) * ((e - 1) / (e + 1)).imag))
    emit_real("kSpinT1Local10z", 1 / (MU_B**2 / HBAR**2 * chi_b_zz))

    # Nonlocal quasistatic reflection at p = 1/(2 lambda_F): brute-force trapezoid.
    p = 1 / (2 * LF)
    upper = 1000 * KF
    ip = trapezoid(lambda kap: 1 / ((p**2 + kap**2) * eps_l(mp.sqrt(p**2 + kap**2), OMEGA)), upper, nodes)
    ip += (mp.pi / 2 - mp.atan(upper / p)) / p  # eps_l -> 1 beyond the cutoff
    ip *= 2 * p / mp.pi
    emit("kNonlocalRpAtLf", (1 - ip) / (1 + ip))
    js = trapezoid(lambda kap: eps_t(mp.sqrt(p**2 + kap**2), OMEGA) / (p**2 + kap**2) ** 2, upper, nodes)
    # eps_t -> 1 tail: int_K^inf dk/(p^2+k^2)^2
    tail = (mp.pi / 2 - mp.atan(upper / p)) / (2 * p**3) - upper / (2 * p**2 * (p**2 + upper**2))
    js = 4 * p**3 / mp.pi * (js + tail)
    emit("kNonlocalRsAtLf", OMEGA**2 / (4 * p**2 * C**2) * (js - 1))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1000000)
