"""Partial transposition, PPT/negativity reports, and the qutrit decomposition.

The positive-partial-transpose (PPT) test is evaluated with a small dense
Jacobi eigensolver.  For the two-qutrit bosonic state the module also builds
the explicit convex decomposition into manifestly separable pieces (a
diagonal-label mixture, an unequal-label mixture, and a phase-averaged
product state), which certifies separability where PPT alone cannot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spinstate import Statistics, TwoSpinDensityMatrix, two_spin_density

__all__ = [
    "PPT_TOLERANCE",
    "JacobiConvergenceError",
    "PPTReport",
    "SeparableDecomposition",
    "partial_transpose_B",
    "symmetric_eigenvalues",
    "ppt_report",
    "qubit_pt_min_eig_analytic",
    "qutrit_pt_min_eig_analytic",
    "sigma0",
    "sigma1",
    "rho0_closed_form",
    "rho0_from_roots_of_unity",
    "qutrit_decomposition",
    "verify_decomposition",
]

# An eigenvalue above -PPT_TOLERANCE counts as non-negative; the analytic
# minima handled here are either >= 1/12 or cross zero transversally, so the
# tolerance only absorbs float noise.
PPT_TOLERANCE = 1e-10


class JacobiConvergenceError(RuntimeError):
    """Jacobi sweeps hit the cap before the off-diagonal norm target."""


def partial_transpose_B(rho: np.ndarray, local_dim: int) -> np.ndarray:
    """Transpose the second tensor factor of a d^2 x d^2 matrix.

    out[(i,m),(j,n)] = rho[(i,n),(j,m)].  An involution that preserves trace
    and (real) symmetry.
    """
    rho = np.asarray(rho, dtype=float)
    d = local_dim
    if d < 1:
        raise ValueError(f"local dimension must be >= 1, got {d}")
    if rho.shape != (d * d, d * d):
        raise ValueError(
            f"expected a {d * d} x {d * d} matrix for local dimension {d}, "
            f"got shape {rho.shape}"
        )
    return np.ascontiguousarray(
        rho.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)
    )


def symmetric_eigenvalues(
    matrix: np.ndarray,
    symmetry_tol: float = 1e-12,
    off_norm_tol: float = 1e-14,
    max_sweeps: int = 100,
) -> np.ndarray:
    """Eigenvalues of a small real symmetric matrix, sorted ascending.

    Cyclic Jacobi: each sweep rotates every strict upper-triangular pair once,
    which drives the off-diagonal Frobenius norm to zero quadratically.  Stops
    when that norm drops below ``off_norm_tol``; raises JacobiConvergenceError
    if ``max_sweeps`` sweeps do not get there.  Sized for the n <= 16 matrices
    that arise here.
    """
    a = np.array(np.asarray(matrix, dtype=float))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n > 16:
        raise ValueError(f"matrix dimension {n} exceeds the supported 16")
    if np.max(np.abs(a - a.T)) > symmetry_tol:
        raise ValueError("matrix is not symmetric within tolerance")
    if n == 1:
        return a[0, :1].copy()
    a = 0.5 * (a + a.T)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        # summed over off-diagonal entries only: subtracting the diagonal
        # from the full Frobenius norm would cancel catastrophically here
        off_sq = float((a[off_mask] ** 2).sum())
        if off_sq <= off_norm_tol * off_norm_tol:
            return np.sort(np.diagonal(a).copy())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise JacobiConvergenceError(
        f"off-diagonal norm still above {off_norm_tol} after {max_sweeps} sweeps"
    )


@dataclass(frozen=True, eq=False)
class PPTReport:
    """Spectrum of a partially transposed state and the PPT verdict."""

    min_eigenvalue: float
    spectrum: np.ndarray  # ascending, sums to the input trace (= 1)
    negativity: float  # sum of |negative eigenvalues|
    is_ppt: bool


def ppt_report(rho: TwoSpinDensityMatrix) -> PPTReport:
    """Partial-transpose spectrum, negativity, and PPT verdict of a spin state."""
    pt = partial_transpose_B(rho.entries, rho.alpha)
    spectrum = symmetric_eigenvalues(pt)
    min_eig = float(spectrum[0])
    negative_part = spectrum[spectrum < 0.0]
    negativity = float(-negative_part.sum()) if negative_part.size else 0.0
    return PPTReport(
        min_eigenvalue=min_eig,
        spectrum=spectrum,
        negativity=negativity,
        is_ppt=min_eig >= -PPT_TOLERANCE,
    )


def qubit_pt_min_eig_analytic(f: float, statistics: Statistics) -> float:
    """Closed-form minimum partial-transpose eigenvalue of the two-qubit state.

    Bosons: 1/(4 + 2 f^2), positive for every f.  Fermions:
    (1 - 2 f^2)/(4 - 2 f^2), which changes sign at f = 1/sqrt(2).
    """
    if not abs(f) <= 1.0:
        raise ValueError(f"exchange value must satisfy |f| <= 1, got {f}")
    f2 = f * f
    if statistics is Statistics.BOSON:
        return 1.0 / (4.0 + 2.0 * f2)
    return (1.0 - 2.0 * f2) / (4.0 - 2.0 * f2)


def qutrit_pt_min_eig_analytic(f: float) -> float:
    """Closed-form minimum partial-transpose eigenvalue 1/(9 + 3 f^2)."""
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"exchange value must lie in [0, 1], got {f}")
    return 1.0 / (9.0 + 3.0 * f * f)


def sigma0() -> np.ndarray:
    """Equal mixture of the three equal-label qutrit product states."""
    m = np.zeros((9, 9))
    for s in range(3):
        i = 3 * s + s
        m[i, i] = 1.0 / 3.0
    return m


def sigma1() -> np.ndarray:
    """Equal mixture of the six unequal-label qutrit product states."""
    m = np.zeros((9, 9))
    for s1 in range(3):
        for s2 in range(3):
            if s1 != s2:
                i = 3 * s1 + s2
                m[i, i] = 1.0 / 6.0
    return m


# Phase multipliers of the three levels in the averaged product state
# |psi(theta)> = (|0> + e^{-i theta}|1> + e^{2 i theta}|2>)/sqrt(3).
_PHASE_EXPONENTS = (0, -1, 2)


def rho0_closed_form() -> np.ndarray:
    """Exact phase average of |psi(theta) psi(theta)> over theta.

    Grouping the nine product-basis kets by total phase exponent
    c_a + c_b with (c_0, c_1, c_2) = (0, -1, 2) leaves three singleton
    groups {|00>}, {|11>}, {|22>} and three pairs {|01>,|10>}, {|02>,|20>},
    {|12>,|21>}; the average is 1/9 on every within-group entry and zero
    elsewhere.  Real symmetric, trace 1, positive semidefinite.
    """
    m = np.zeros((9, 9))
    for s in range(3):
        i = 3 * s + s
        m[i, i] = 1.0 / 9.0
    for s1 in range(3):
        for s2 in range(s1 + 1, 3):
            i = 3 * s1 + s2
            j = 3 * s2 + s1
            m[i, i] += 1.0 / 9.0
            m[j, j] += 1.0 / 9.0
            m[i, j] += 1.0 / 9.0
            m[j, i] += 1.0 / 9.0
    return m


def rho0_from_roots_of_unity(n: int, with_residue: bool = False):
    """Discretize the phase average over the n-th roots of unity.

    Returns (1/n) * sum_j |psi(theta_j) psi(theta_j)><...| at theta_j = 2 pi j/n.
    The entrywise phase-difference exponents lie in {-6,...,6}\\{0}, so the sum
    reproduces :func:`rho0_closed_form` exactly whenever none of them vanishes
    mod n, i.e. for every n >= 7; smaller n alias some exponent to 0 and
    deviate at the 1/9 level.  The average is real by theta -> -theta
    symmetry; the real part is returned, with the max imaginary residue
    available via ``with_residue``.
    """
    if n < 1:
        raise ValueError(f"need at least one sample phase, got n={n}")
    acc = np.zeros((9, 9), dtype=complex)
    c = np.asarray(_PHASE_EXPONENTS, dtype=float)
    for j in range(n):
        theta = 2.0 * np.pi * j / n
        psi = np.exp(1j * c * theta) / np.sqrt(3.0)
        pair = np.kron(psi, psi)
        acc += np.outer(pair, pair.conj())
    acc /= n
    residue = float(np.abs(acc.imag).max())
    matrix = np.ascontiguousarray(acc.real)
    if with_residue:
        return matrix, residue
    return matrix


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """Convex decomposition of the two-qutrit state into separable pieces.

    weight_rho0 * rho0 + weight_sigma0 * sigma0 + weight_sigma1 * sigma1
    reconstructs the state entrywise; all weights are non-negative for
    f in [0, 1], which is the separability certificate.
    """

    weight_rho0: float
    weight_sigma0: float
    weight_sigma1: float
    rho0: np.ndarray
    sigma0: np.ndarray
    sigma1: np.ndarray

    @property
    def weights(self) -> tuple[float, float, float]:
        return (self.weight_rho0, self.weight_sigma0, self.weight_sigma1)

    def reconstruct(self) -> np.ndarray:
        return (
            self.weight_rho0 * self.rho0
            + self.weight_sigma0 * self.sigma0
            + self.weight_sigma1 * self.sigma1
        )


def qutrit_decomposition(f: float) -> SeparableDecomposition:
    """Separable decomposition of the bosonic two-qutrit state at exchange f.

    Weights (9 f^2, 3, 6 (1 - f^2)) / (9 + 3 f^2).  Outside f in [0, 1] the
    sigma1 weight would go negative and the certificate fails, so that is a
    domain error.
    """
    if not 0.0 <= f <= 1.0:
        raise ValueError(
            f"decomposition certificate only covers f in [0, 1], got {f}"
        )
    f2 = f * f
    norm = 9.0 + 3.0 * f2
    return SeparableDecomposition(
        weight_rho0=9.0 * f2 / norm,
        weight_sigma0=3.0 / norm,
        weight_sigma1=6.0 * (1.0 - f2) / norm,
        rho0=rho0_closed_form(),
        sigma0=sigma0(),
        sigma1=sigma1(),
    )


def verify_decomposition(f: float) -> float:
    """Max entrywise error of the decomposition against the two-qutrit state.

    The identity is exact algebraically; the return value is pure float
    residue and stays below 1e-13 across f in [0, 1].
    """
    reconstruction = qutrit_decomposition(f).reconstruct()
    target = two_spin_density(f, 3, Statistics.BOSON).entries
    return float(np.abs(reconstruction - target).max())
