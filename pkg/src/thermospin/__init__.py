"""Exchange statistics and two-spin separability for ideal thermal Bose gases.

The library is organized in three layers plus a command-line front end:

- :mod:`thermospin.statmech`: Bose occupation numbers, the Li_{3/2}
  polylogarithm and fugacity inversion, and the exchange functions f of
  photon and massive ideal Bose gases (plus a degenerate-Fermi baseline).
- :mod:`thermospin.spinstate`: the normalized two-spin density matrices
  built from a single exchange value f (two-qubit for photons, two-qutrit
  for massive bosons, sign-flipped fermion variant).
- :mod:`thermospin.separability`: partial transposition, a dense Jacobi
  eigensolver, PPT/negativity reports, and the explicit separable
  decomposition of the two-qutrit state with its roots-of-unity check.
- :mod:`thermospin.cli`: physical-unit conversion, sweeps, CSV/JSON output,
  and the one-shot ``verify-paper`` check suite.
"""

from .separability import (
    PPT_TOLERANCE,
    JacobiConvergenceError,
    PPTReport,
    SeparableDecomposition,
    partial_transpose_B,
    ppt_report,
    qubit_pt_min_eig_analytic,
    qutrit_decomposition,
    qutrit_pt_min_eig_analytic,
    rho0_closed_form,
    rho0_from_roots_of_unity,
    sigma0,
    sigma1,
    symmetric_eigenvalues,
    verify_decomposition,
)
from .spinstate import (
    Statistics,
    TwoSpinDensityMatrix,
    basis_index,
    two_spin_density,
)
from .statmech import (
    ZETA_3,
    ZETA_3_2,
    CondensationError,
    GasKind,
    QuadratureError,
    ThermalGasSpec,
    bose_occupation,
    fermi_exchange_T0,
    fugacity_from_degeneracy,
    massive_exchange,
    photon_exchange,
    photon_exchange_quadrature,
    polylog_3_2,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # statmech
    "ZETA_3",
    "ZETA_3_2",
    "CondensationError",
    "GasKind",
    "QuadratureError",
    "ThermalGasSpec",
    "bose_occupation",
    "fermi_exchange_T0",
    "fugacity_from_degeneracy",
    "massive_exchange",
    "photon_exchange",
    "photon_exchange_quadrature",
    "polylog_3_2",
    # spinstate
    "Statistics",
    "TwoSpinDensityMatrix",
    "basis_index",
    "two_spin_density",
    # separability
    "PPT_TOLERANCE",
    "JacobiConvergenceError",
    "PPTReport",
    "SeparableDecomposition",
    "partial_transpose_B",
    "ppt_report",
    "qubit_pt_min_eig_analytic",
    "qutrit_decomposition",
    "qutrit_pt_min_eig_analytic",
    "rho0_closed_form",
    "rho0_from_roots_of_unity",
    "sigma0",
    "sigma1",
    "symmetric_eigenvalues",
    "verify_decomposition",
]
