"""Two-spin density matrices of exchange-correlated particle pairs.

A single scalar f (the exchange function at the pair separation) fixes the
whole spin state: identity plus f^2 times the swap operator, normalized to
unit trace, with the swap term added for bosons and subtracted for fermions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = ["Statistics", "TwoSpinDensityMatrix", "basis_index", "two_spin_density"]


class Statistics(enum.Enum):
    """Exchange sign: bosons add the swap term, fermions subtract it."""

    BOSON = 1
    FERMION = -1

    @property
    def sign(self) -> int:
        return self.value


def basis_index(sigma1: int, sigma2: int, alpha: int) -> int:
    """Flat row-major index of |sigma1 sigma2> in the alpha^2 product basis."""
    if not 0 <= sigma1 < alpha:
        raise ValueError(f"spin label sigma1={sigma1} outside [0, {alpha})")
    if not 0 <= sigma2 < alpha:
        raise ValueError(f"spin label sigma2={sigma2} outside [0, {alpha})")
    return sigma1 * alpha + sigma2


def _swap_operator(alpha: int) -> np.ndarray:
    """Permutation matrix S with S|ab> = |ba>."""
    dim = alpha * alpha
    swap = np.zeros((dim, dim))
    for s1 in range(alpha):
        for s2 in range(alpha):
            swap[basis_index(s1, s2, alpha), basis_index(s2, s1, alpha)] = 1.0
    return swap


@dataclass(frozen=True, eq=False)
class TwoSpinDensityMatrix:
    """Unit-trace real symmetric spin state of a particle pair.

    ``entries`` is the alpha^2 x alpha^2 matrix in the row-major product
    basis |sigma1 sigma2>; ``f`` records the exchange value it was built from.
    """

    alpha: int
    statistics: Statistics
    f: float
    entries: np.ndarray


def two_spin_density(
    f: float, alpha: int, statistics: Statistics
) -> TwoSpinDensityMatrix:
    """Build the normalized two-spin density matrix for exchange value f.

    Entry ((s1,s2),(s1',s2')) is
    [delta(s1,s1') delta(s2,s2') +/- f^2 delta(s1,s2') delta(s1',s2)]
    normalized by (alpha^2 +/- alpha f^2), sign by statistics.  Supported
    combinations: alpha = 2 or 3 for bosons, alpha = 2 for fermions (spin-1
    fermions would violate spin-statistics and are rejected).
    """
    if alpha not in (2, 3):
        raise ValueError(f"alpha must be 2 or 3, got {alpha}")
    if not abs(f) <= 1.0:
        raise ValueError(f"exchange value must satisfy |f| <= 1, got {f}")
    if alpha == 3 and statistics is Statistics.FERMION:
        raise ValueError("alpha = 3 with fermion statistics is not supported")
    sign = statistics.sign
    f2 = f * f
    numerator = np.eye(alpha * alpha) + sign * f2 * _swap_operator(alpha)
    norm = alpha * alpha + sign * alpha * f2
    return TwoSpinDensityMatrix(
        alpha=alpha, statistics=statistics, f=f, entries=numerator / norm
    )
