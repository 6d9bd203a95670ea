"""Occupation statistics and exchange functions for ideal thermal quantum gases.

Everything here works in reduced units: photon separations enter as
u = r*k_B*T/(hbar*c), massive-boson separations as s = r/lambda with lambda
the thermal de Broglie wavelength, and the chemical potential through the
fugacity z = exp(beta*mu).  Physical-unit conversions live in
:mod:`thermospin.cli`.

The central quantity is the exchange function f, the normalized off-diagonal
one-particle density matrix element: f = 1 at zero separation and decays
monotonically, on the scale 1/T for photons and lambda for massive bosons.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

__all__ = [
    "ZETA_3_2",
    "ZETA_3",
    "CondensationError",
    "QuadratureError",
    "GasKind",
    "ThermalGasSpec",
    "bose_occupation",
    "polylog_3_2",
    "fugacity_from_degeneracy",
    "photon_exchange",
    "photon_exchange_quadrature",
    "massive_exchange",
    "fermi_exchange_T0",
]

ZETA_3_2 = float(special.zeta(1.5))  # Li_{3/2}(1), the condensation boundary
ZETA_3 = float(special.zeta(3.0))  # normalizes the photon exchange series

# The direct power series is abandoned for the Euler-Maclaurin tail once the
# certified term count exceeds this cap (happens only for z within ~6e-4 of 1,
# where geometric decay is too slow to truncate on).
_DIRECT_TERM_CAP = 200_000
_EM_HEAD_TERMS = 5_000


class CondensationError(ValueError):
    """Phase-space density exceeds Li_{3/2}(1) = zeta(3/2).

    Above this boundary a macroscopic condensate forms and the non-condensed
    ideal-gas formulas used here are invalid, so the caller gets a hard error
    instead of a silently clamped fugacity.
    """


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested accuracy."""


class GasKind(enum.Enum):
    MASSLESS_PHOTON = "photon"
    MASSIVE_BOSE = "massive"


@dataclass(frozen=True)
class ThermalGasSpec:
    """Physical regime of an ideal spin-1 Bose gas, in reduced units.

    Massless photons have two transverse polarizations (alpha = 2) and a
    chemical potential pinned at zero, so ``fugacity`` is ignored for them.
    Massive bosons carry three spin states (alpha = 3) and require a
    fugacity in (0, 1].
    """

    kind: GasKind
    fugacity: float | None = None

    def __post_init__(self):
        if self.kind is GasKind.MASSLESS_PHOTON:
            object.__setattr__(self, "fugacity", None)
        else:
            z = self.fugacity
            if z is None or not 0.0 < z <= 1.0:
                raise ValueError(
                    f"massive Bose gas needs a fugacity in (0, 1], got {z}"
                )

    @property
    def alpha(self) -> int:
        return 2 if self.kind is GasKind.MASSLESS_PHOTON else 3

    def exchange(self, separation: float) -> float:
        """Exchange function at a reduced separation (u or s per kind)."""
        if self.kind is GasKind.MASSLESS_PHOTON:
            return photon_exchange(separation)
        return massive_exchange(separation, self.fugacity)


def bose_occupation(x: float) -> float:
    """Mean occupancy 1/(exp(x) - 1) at reduced mode energy x = beta*(eps - mu).

    x <= 0 raises ValueError: it would put the chemical potential at or above
    the mode energy, which an ideal Bose gas cannot sustain.
    """
    if not x > 0.0:
        raise ValueError(f"reduced energy beta*(eps - mu) must be > 0, got {x}")
    if x > 700.0:
        # expm1 overflows here; the Boltzmann tail is exact to double precision
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def _direct_term_count(z: float, eps: float) -> int | None:
    """Terms needed so the geometric tail bound z^(N+1)/((1-z)(N+1)^1.5) < eps.

    Returns None when that count exceeds the cap (z at or too close to 1),
    signalling the Euler-Maclaurin path.  The (N+1)^1.5 factor is dropped,
    which only makes the bound more conservative.
    """
    w = 1.0 - z
    if w <= 0.0:
        return None
    t = -math.log1p(-w)  # -ln z, accurate for z near 1
    arg = eps * w
    if arg <= 0.0 or t == 0.0:
        return None
    n = max(1, math.ceil(math.log(arg) / -t))
    return None if n > _DIRECT_TERM_CAP else n


def _em_tail_integral(x0: float, t: float, a: float) -> float:
    """Closed form of integral_{x0}^inf x^(-3/2) exp(-t*x - a/x) dx, t,a >= 0."""
    if a == 0.0:
        if t == 0.0:
            return 2.0 / math.sqrt(x0)
        return 2.0 * math.exp(-t * x0) / math.sqrt(x0) - 2.0 * math.sqrt(
            math.pi * t
        ) * special.erfc(math.sqrt(t * x0))
    sa = math.sqrt(a / x0)
    st = math.sqrt(t * x0)
    # erfcx keeps the exp(2*sqrt(a*t)) * erfc(...) product from overflowing
    bracket = math.exp(-2.0 * math.sqrt(a * t)) * (2.0 - special.erfc(sa - st))
    bracket -= special.erfcx(sa + st) * math.exp(-(a / x0 + t * x0))
    return math.sqrt(math.pi) / (2.0 * math.sqrt(a)) * bracket


def _bose_series(z: float, a: float, eps: float) -> float:
    """Sum_{l>=1} z^l * l^(-3/2) * exp(-a/l) with absolute error <= eps.

    Moderate z: direct summation, truncated by the geometric tail bound.
    z at or near 1: head sum plus an Euler-Maclaurin tail (exact integral,
    half-term and first derivative correction; the remainder is O(x0^-4.5)
    and far below eps for the head length used).
    """
    if z == 0.0:
        return 0.0
    n = _direct_term_count(z, eps)
    if n is not None:
        l = np.arange(1.0, n + 1.0)
        terms = z**l * l**-1.5
        if a > 0.0:
            terms = terms * np.exp(-a / l)
        return float(terms.sum())
    t = -math.log1p(-(1.0 - z))
    l = np.arange(1.0, _EM_HEAD_TERMS + 1.0)
    expo = -t * l
    if a > 0.0:
        expo -= a / l
    head = float((np.exp(expo) * l**-1.5).sum())
    x0 = float(_EM_HEAD_TERMS + 1)
    h0 = math.exp(-t * x0 - a / x0) * x0**-1.5
    dh0 = h0 * (-t - 1.5 / x0 + a / (x0 * x0))
    return head + _em_tail_integral(x0, t, a) + 0.5 * h0 - dh0 / 12.0


def polylog_3_2(z: float) -> float:
    """Polylogarithm Li_{3/2}(z) = sum_{l>=1} z^l / l^(3/2) for z in [0, 1].

    Absolute error <= 1e-12.  This is the phase-space density of an ideal
    Bose gas at fugacity z, in units of alpha/lambda^3.
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"fugacity must lie in [0, 1], got {z}")
    return _bose_series(z, 0.0, 0.5e-12)


def fugacity_from_degeneracy(d: float) -> float:
    """Invert Li_{3/2}(z) = d for the fugacity z in (0, 1].

    d is the phase-space density n*lambda^3/alpha.  Bisection on (0, 1]
    (Li_{3/2} is strictly increasing, so this is unconditionally robust);
    the returned z satisfies |Li_{3/2}(z) - d| <= 1e-10.  d above the
    condensation boundary zeta(3/2) raises CondensationError.

    Caveat: within ~1e-5 of the boundary the infinite slope of Li_{3/2}
    meets the float spacing of z below 1, so no double can realize the
    1e-10 residual there; the closest achievable z is returned instead
    (d equal to the boundary still maps exactly to z = 1).
    """
    if not d > 0.0:
        raise ValueError(f"phase-space density must be > 0, got {d}")
    if d > ZETA_3_2:
        raise CondensationError(
            f"phase-space density {d} exceeds the condensation boundary "
            f"zeta(3/2) = {ZETA_3_2:.12f}; the non-condensed ideal-gas "
            "formulas do not apply"
        )
    if d == ZETA_3_2:
        return 1.0
    lo, hi = 0.0, 1.0
    best_z, best_res = 1.0, ZETA_3_2 - d
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        res = polylog_3_2(mid) - d
        if abs(res) < best_res:
            best_z, best_res = mid, abs(res)
        if best_res <= 1e-11 or hi - lo <= 1e-16:
            break
        if res < 0.0:
            lo = mid
        else:
            hi = mid
    return best_z


def photon_exchange(u: float, tol: float = 1e-10) -> float:
    """Photon exchange function f(u) = (1/zeta(3)) * sum_n n/(n^2 + u^2)^2.

    u = r*k_B*T/(hbar*c) is the reduced separation.  The series is truncated
    once the integral tail bound 1/(2*(N^2 + u^2)) drops below tol/zeta(3),
    giving absolute error <= tol.
    """
    if not u >= 0.0:
        raise ValueError(f"reduced separation must be >= 0, got {u}")
    if u == 0.0:
        return 1.0
    n_terms = math.ceil(math.sqrt(max(ZETA_3 / (2.0 * tol) - u * u, 0.0))) + 1
    n = np.arange(1.0, n_terms + 1.0)
    return float((n / (n * n + u * u) ** 2).sum()) / ZETA_3


def _planck_fourier_integrand(k: float) -> float:
    # k/(e^k - 1); guard the l'Hopital limit at 0 and expm1 overflow
    if k < 1e-12:
        return 1.0
    if k > 700.0:
        return k * math.exp(-k)
    return k / math.expm1(k)


def photon_exchange_quadrature(u: float, abserr_cap: float = 1e-9) -> float:
    """Photon exchange function by direct quadrature of the k-integral.

    Evaluates f(u) = (1/(2*zeta(3))) * integral_0^inf k^2 sinc(k u)/(e^k - 1) dk,
    the continuum-limit Fourier transform of the Planck occupation.  Serves as
    an independent cross-check of :func:`photon_exchange`; the two agree to
    1e-8 or better.  Raises QuadratureError if the integrator's own error
    estimate (scaled to f) exceeds ``abserr_cap``.
    """
    if not u >= 0.0:
        raise ValueError(f"reduced separation must be >= 0, got {u}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if u < 0.1:
            # barely oscillatory: plain adaptive quadrature of the sinc form
            def integrand(k: float) -> float:
                x = k * u
                sinc = math.sin(x) / x if x > 1e-12 else 1.0
                return k * sinc * _planck_fourier_integrand(k)

            val, err = integrate.quad(
                integrand, 0.0, np.inf, epsabs=1e-12, epsrel=1e-12, limit=200
            )
            scale = 2.0 * ZETA_3
        else:
            # Fourier-weighted rule handles the oscillation cycle by cycle
            val, err = integrate.quad(
                _planck_fourier_integrand,
                0.0,
                np.inf,
                weight="sin",
                wvar=u,
                epsabs=1e-12,
                limit=200,
                limlst=300,
            )
            scale = 2.0 * u * ZETA_3
    f = val / scale
    err_f = err / scale
    if not math.isfinite(f) or err_f > abserr_cap:
        raise QuadratureError(
            f"photon exchange quadrature did not converge at u={u}: "
            f"value={f}, estimated error={err_f:.3e} (cap {abserr_cap:.1e})"
        )
    return f


def massive_exchange(s: float, z: float, tol: float = 1e-10) -> float:
    """Exchange function of a massive ideal Bose gas at fugacity z.

    f(s) = [sum_{l>=1} z^l l^(-3/2) exp(-pi s^2/l)] / Li_{3/2}(z) with
    s = r/lambda the separation in thermal de Broglie wavelengths.  Absolute
    error <= tol.  f(0) = 1 and f decreases monotonically; as z -> 0 it
    approaches the classical Gaussian exp(-pi s^2), while at z = 1 the tail
    fattens to the critical 1/(zeta(3/2) s) decay.
    """
    if not s >= 0.0:
        raise ValueError(f"reduced separation must be >= 0, got {s}")
    if not 0.0 < z <= 1.0:
        raise ValueError(f"fugacity must lie in (0, 1], got {z}")
    if s == 0.0:
        return 1.0
    eps = 0.25 * tol * z  # relative-style budget keeps f accurate for tiny z
    numerator = _bose_series(z, math.pi * s * s, eps)
    denominator = _bose_series(z, 0.0, eps)
    return numerator / denominator


def fermi_exchange_T0(x: float) -> float:
    """Exchange function of a degenerate (T = 0) Fermi gas, 3*j1(x)/x form.

    x = k_F * r.  Returns 3*(sin x - x cos x)/x^3, with the removable
    singularity at x = 0 handled by its Taylor series below a switchover
    threshold (direct evaluation there loses digits to cancellation).
    """
    if not x >= 0.0:
        raise ValueError(f"reduced separation must be >= 0, got {x}")
    if x < 1e-2:
        x2 = x * x
        return 1.0 - x2 / 10.0 + x2 * x2 / 280.0
    return 3.0 * (math.sin(x) - x * math.cos(x)) / (x * x * x)
