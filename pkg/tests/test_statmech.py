"""Occupation statistics, polylog/fugacity machinery, and exchange functions.

Frozen reference values were computed with independent oracles (mpmath at 30
digits: direct nsum/polylog/findroot/quad), evaluated at the exact binary64
arguments the tests pass.
"""

import math

import numpy as np
import pytest

from thermospin import statmech as sm

# mpmath references
ZETA_3_2_REF = 2.6123753486854883
ZETA_3_REF = 1.2020569031595943
BOSE_AT_1 = 0.58197670686932642  # 1/(e - 1)
LI_HALF = 0.62483702081991385  # brute-force series and mp.polylog agree
LI_0999 = 2.5017084653413556  # direct-summation branch
LI_09999 = 2.5770714271060568  # Euler-Maclaurin branch
LI_NEAR_ONE = 2.6123718038184568  # z = 1 - 1e-12 (exact double)
LI_1EM6 = 1.000000353553583e-6
FUGACITY_AT_D001 = 0.0099647021532515127  # mp.findroot on Li_{3/2}(z) = 0.01
PHOTON_F1 = 0.33036436988618597  # series nsum; Planck quadrature agrees
PHOTON_F10 = 0.004152590335886768
PHOTON_F05 = 0.68635849955619942
MASSIVE_S1_Z1EM6 = 0.043213976481912616  # near-classical, ~exp(-pi)
MASSIVE_S05_Z1 = 0.70248405903561453  # critical fugacity; nsum euler-maclaurin
MASSIVE_S1_Z1 = 0.38413311439169453
MASSIVE_S2_Z05 = 0.0021884504439476694
TAN_X_EQ_X_ROOT = 4.4934094579090642  # first positive root of tan x = x


class TestBoseOccupation:
    def test_ln2_gives_unit_occupancy(self):
        assert sm.bose_occupation(math.log(2.0)) == pytest.approx(1.0, abs=1e-15)

    def test_boltzmann_tail(self):
        assert sm.bose_occupation(50.0) < 1e-21
        assert sm.bose_occupation(800.0) >= 0.0  # beyond expm1 overflow

    def test_reference_value(self):
        assert sm.bose_occupation(1.0) == pytest.approx(BOSE_AT_1, abs=1e-15)

    def test_matches_geometric_series(self):
        # n(x) = sum_k exp(-k x), the independent route
        for x in (0.5, 1.0, 3.0):
            series = sum(math.exp(-k * x) for k in range(1, 200))
            assert sm.bose_occupation(x) == pytest.approx(series, abs=1e-14)

    def test_strictly_decreasing(self):
        xs = np.linspace(0.1, 20.0, 40)
        vals = [sm.bose_occupation(x) for x in xs]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("x", [0.0, -1.0, -1e-12])
    def test_rejects_nonpositive_energy(self, x):
        with pytest.raises(ValueError):
            sm.bose_occupation(x)


class TestPolylog:
    def test_zero(self):
        assert sm.polylog_3_2(0.0) == 0.0

    def test_condensation_boundary_value(self):
        assert sm.polylog_3_2(1.0) == pytest.approx(ZETA_3_2_REF, abs=1e-12)
        assert sm.ZETA_3_2 == pytest.approx(ZETA_3_2_REF, abs=1e-14)

    def test_half(self):
        assert sm.polylog_3_2(0.5) == pytest.approx(LI_HALF, abs=1e-12)

    def test_small_fugacity(self):
        assert sm.polylog_3_2(1e-6) == pytest.approx(LI_1EM6, abs=1e-18)

    def test_against_brute_force(self):
        # dumb long partial sums; geometric tails are negligible at 10^5 terms
        l = np.arange(1.0, 100001.0)
        for z in (0.1, 0.25, 0.5, 0.9):
            brute = float((z**l * l**-1.5).sum())
            assert sm.polylog_3_2(z) == pytest.approx(brute, abs=1e-12)

    def test_near_one_branches(self):
        assert sm.polylog_3_2(0.999) == pytest.approx(LI_0999, abs=1e-12)
        assert sm.polylog_3_2(0.9999) == pytest.approx(LI_09999, abs=1e-12)
        assert sm.polylog_3_2(1.0 - 1e-12) == pytest.approx(LI_NEAR_ONE, abs=1e-12)

    def test_monotone_increasing(self):
        zs = np.linspace(0.0, 1.0, 101)
        vals = [sm.polylog_3_2(z) for z in zs]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("z", [-0.1, 1.0000001, 2.0])
    def test_domain(self, z):
        with pytest.raises(ValueError):
            sm.polylog_3_2(z)


class TestFugacityInversion:
    def test_boundary_maps_to_unit_fugacity(self):
        assert sm.fugacity_from_degeneracy(sm.ZETA_3_2) == 1.0

    def test_dilute_reference(self):
        z = sm.fugacity_from_degeneracy(0.01)
        assert z == pytest.approx(FUGACITY_AT_D001, abs=1e-9)
        assert abs(sm.polylog_3_2(z) - 0.01) <= 1e-10
        # leading virial correction z ~ d - d^2/2^{3/2}
        assert z == pytest.approx(0.01 - 0.01**2 / 2**1.5, abs=1e-7)

    def test_round_trip(self):
        for d in np.linspace(0.05, sm.ZETA_3_2 - 0.05, 25):
            z = sm.fugacity_from_degeneracy(d)
            assert 0.0 < z <= 1.0
            assert abs(sm.polylog_3_2(z) - d) <= 1e-10

    def test_monotone_in_degeneracy(self):
        ds = np.linspace(0.01, sm.ZETA_3_2, 50)
        zs = [sm.fugacity_from_degeneracy(d) for d in ds]
        assert all(a < b for a, b in zip(zs, zs[1:]))

    def test_condensed_regime_refused(self):
        with pytest.raises(sm.CondensationError):
            sm.fugacity_from_degeneracy(3.0)
        with pytest.raises(sm.CondensationError):
            sm.fugacity_from_degeneracy(sm.ZETA_3_2 + 1e-9)

    @pytest.mark.parametrize("d", [0.0, -0.5])
    def test_rejects_nonpositive_density(self, d):
        with pytest.raises(ValueError):
            sm.fugacity_from_degeneracy(d)

    def test_condensation_error_is_value_error(self):
        # callers that only catch ValueError still see the refusal
        assert issubclass(sm.CondensationError, ValueError)


class TestPhotonExchange:
    def test_zero_separation_normalization(self):
        assert sm.photon_exchange(0.0) == 1.0

    def test_reference_values(self):
        assert sm.photon_exchange(1.0) == pytest.approx(PHOTON_F1, abs=1e-10)
        assert sm.photon_exchange(0.5) == pytest.approx(PHOTON_F05, abs=1e-10)
        assert sm.photon_exchange(10.0) == pytest.approx(PHOTON_F10, abs=1e-10)

    def test_large_separation_tail(self):
        # f ~ 1/(2 zeta(3) u^2) from comparing the sum with its integral
        u = 10.0
        tail = 1.0 / (2.0 * sm.ZETA_3 * u * u)
        assert sm.photon_exchange(u) == pytest.approx(tail, rel=5e-3)

    def test_strictly_decreasing(self):
        us = np.linspace(0.0, 20.0, 81)
        vals = [sm.photon_exchange(u) for u in us]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(0.0 < v <= 1.0 for v in vals)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            sm.photon_exchange(-0.5)


class TestPhotonQuadrature:
    def test_zero_separation(self):
        assert sm.photon_exchange_quadrature(0.0) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("u", [1e-3, 0.05, 0.5, 1.0, 5.0, 20.0, 50.0])
    def test_agrees_with_series(self, u):
        assert sm.photon_exchange_quadrature(u) == pytest.approx(
            sm.photon_exchange(u), abs=1e-8
        )

    def test_reference_value(self):
        assert sm.photon_exchange_quadrature(1.0) == pytest.approx(
            PHOTON_F1, abs=1e-10
        )

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            sm.photon_exchange_quadrature(-1.0)


class TestMassiveExchange:
    def test_zero_separation_normalization(self):
        for z in (1e-8, 0.3, 1.0):
            assert sm.massive_exchange(0.0, z) == 1.0

    def test_classical_regime_reference(self):
        f = sm.massive_exchange(1.0, 1e-6)
        assert f == pytest.approx(MASSIVE_S1_Z1EM6, abs=1e-10)
        # two-term oracle: keep only l = 1, 2 of numerator and denominator
        z = 1e-6
        num = z * math.exp(-math.pi) + z**2 * 2**-1.5 * math.exp(-math.pi / 2)
        den = z + z**2 * 2**-1.5
        assert f == pytest.approx(num / den, abs=1e-9)

    def test_critical_fugacity_reference(self):
        f = sm.massive_exchange(0.5, 1.0)
        assert f == pytest.approx(MASSIVE_S05_Z1, abs=1e-10)
        assert sm.massive_exchange(1.0, 1.0) == pytest.approx(
            MASSIVE_S1_Z1, abs=1e-10
        )

    def test_critical_fugacity_brute_force_bracket(self):
        # partial sum plus integral tail bounds bracket the true numerator
        a = math.pi * 0.25
        n = 100000
        l = np.arange(1.0, n + 1.0)
        partial = float((l**-1.5 * np.exp(-a / l)).sum())
        from scipy.special import erf

        upper_tail = math.sqrt(math.pi / a) * erf(math.sqrt(a / n))
        lower_tail = math.sqrt(math.pi / a) * erf(math.sqrt(a / (n + 1)))
        denominator = sm.polylog_3_2(1.0)
        f = sm.massive_exchange(0.5, 1.0)
        assert (partial + lower_tail) / denominator - 1e-10 <= f
        assert f <= (partial + upper_tail) / denominator + 1e-10

    def test_moderate_fugacity_reference(self):
        assert sm.massive_exchange(2.0, 0.5) == pytest.approx(
            MASSIVE_S2_Z05, abs=1e-10
        )

    def test_classical_limit_pointwise(self):
        for s in np.linspace(0.0, 3.0, 16):
            gaussian = math.exp(-math.pi * s * s)
            assert abs(sm.massive_exchange(s, 1e-8) - gaussian) <= 1e-7

    @pytest.mark.parametrize("z", [0.3, 1.0])
    def test_strictly_decreasing_and_bounded(self, z):
        ss = np.linspace(0.0, 4.0, 41)
        vals = [sm.massive_exchange(s, z) for s in ss]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(0.0 < v <= 1.0 for v in vals)

    @pytest.mark.parametrize("z", [0.0, -0.2, 1.0000001])
    def test_rejects_bad_fugacity(self, z):
        with pytest.raises(ValueError):
            sm.massive_exchange(1.0, z)

    def test_rejects_negative_separation(self):
        with pytest.raises(ValueError):
            sm.massive_exchange(-1.0, 0.5)


class TestFermiExchange:
    def test_zero_limit(self):
        assert sm.fermi_exchange_T0(0.0) == 1.0

    def test_reference_at_pi(self):
        assert sm.fermi_exchange_T0(math.pi) == pytest.approx(
            3.0 / math.pi**2, abs=1e-15
        )

    def test_first_zero(self):
        assert abs(sm.fermi_exchange_T0(TAN_X_EQ_X_ROOT)) <= 1e-9

    def test_taylor_switchover_is_seamless(self):
        x = 1e-2  # direct branch, right at the threshold
        direct = 3.0 * (math.sin(x) - x * math.cos(x)) / x**3
        taylor = 1.0 - x * x / 10.0 + x**4 / 280.0
        assert direct == pytest.approx(taylor, abs=1e-12)
        assert sm.fermi_exchange_T0(0.0099999) == pytest.approx(
            sm.fermi_exchange_T0(0.0100001), abs=1e-8
        )

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            sm.fermi_exchange_T0(-0.1)


class TestThermalGasSpec:
    def test_photon_spec(self):
        gas = sm.ThermalGasSpec(sm.GasKind.MASSLESS_PHOTON)
        assert gas.alpha == 2
        assert gas.fugacity is None
        assert gas.exchange(1.0) == sm.photon_exchange(1.0)

    def test_photon_ignores_fugacity(self):
        gas = sm.ThermalGasSpec(sm.GasKind.MASSLESS_PHOTON, fugacity=0.5)
        assert gas.fugacity is None

    def test_massive_spec(self):
        gas = sm.ThermalGasSpec(sm.GasKind.MASSIVE_BOSE, fugacity=0.5)
        assert gas.alpha == 3
        assert gas.exchange(1.0) == sm.massive_exchange(1.0, 0.5)

    @pytest.mark.parametrize("z", [None, 0.0, -1.0, 1.5])
    def test_massive_requires_valid_fugacity(self, z):
        with pytest.raises(ValueError):
            sm.ThermalGasSpec(sm.GasKind.MASSIVE_BOSE, fugacity=z)


def test_outputs_finite_over_domain_fuzz():
    rng = np.random.default_rng(20240817)
    for _ in range(200):
        assert math.isfinite(sm.bose_occupation(rng.uniform(1e-6, 750.0)))
        assert math.isfinite(sm.polylog_3_2(rng.uniform(0.0, 1.0)))
        assert math.isfinite(
            sm.massive_exchange(rng.uniform(0.0, 10.0), rng.uniform(1e-12, 1.0))
        )
        assert math.isfinite(sm.photon_exchange(rng.uniform(0.0, 100.0)))
        assert math.isfinite(sm.fermi_exchange_T0(rng.uniform(0.0, 100.0)))
