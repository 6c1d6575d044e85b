import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgedeploy import (
    InfeasibleDensity,
    InvalidParameters,
    InvalidPosition,
    InvalidPower,
    SystemParams,
    aundt,
    aundt_lower_bound,
    coop_link_count,
    cooperation_loss,
    link_rates,
    user_ndt,
)
from edgedeploy.model import DeploymentPlan, cooperation_loss_exact

FIG2 = SystemParams(mu=0.7, gamma=1.5, lam=60, beta=1, coop_reach=5)


def links_by_enumeration(k, M, L):
    """Users of the same cluster within reach of BS k on the line."""
    half = (L - 1) // 2
    return sum(1 for u in range(1, M + 1) if abs(u - k) <= half)


def brute_aundt(params, M):
    return sum(user_ndt(params, M, j).total for j in range(1, M + 1)) / M


@st.composite
def params_and_size(draw, mu=st.floats(0, 1)):
    L = draw(st.sampled_from([1, 3, 5, 7, 9]))
    M = draw(st.integers(L, 50))
    p = SystemParams(
        mu=draw(mu),
        gamma=draw(st.floats(0.1, 10)),
        lam=draw(st.floats(1, 500)),
        beta=draw(st.floats(0.1, 10)),
        coop_reach=L,
    )
    return p, M


class TestSystemParams:
    @pytest.mark.parametrize("kwargs", [
        dict(mu=-0.1), dict(mu=1.01), dict(gamma=0), dict(lam=-1), dict(beta=0),
        dict(coop_reach=4), dict(coop_reach=0), dict(mu=float("nan")),
    ])
    def test_rejects(self, kwargs):
        base = dict(mu=0.5, gamma=1, lam=10, beta=1, coop_reach=5)
        base.update(kwargs)
        with pytest.raises(InvalidParameters):
            SystemParams(**base)

    def test_plan_feasibility(self):
        assert DeploymentPlan.for_params(FIG2, 5).feasible
        assert not DeploymentPlan.for_params(FIG2, 4).feasible
        with pytest.raises(InvalidParameters):
            DeploymentPlan.for_params(FIG2, 0)


class TestCoopLinkCount:
    @pytest.mark.parametrize("j,M,L,expected", [(3, 6, 5, 5), (1, 6, 5, 3), (1, 1, 1, 1)])
    def test_examples(self, j, M, L, expected):
        assert coop_link_count(j, M, L) == expected

    @pytest.mark.parametrize("L", [1, 3, 5, 7, 9])
    def test_matches_topology_enumeration(self, L):
        for M in range(L, L + 12):
            for j in range(1, M + 1):
                assert coop_link_count(j, M, L) == links_by_enumeration(j, M, L)

    def test_errors(self):
        with pytest.raises(InvalidPosition):
            coop_link_count(0, 6, 5)
        with pytest.raises(InvalidPosition):
            coop_link_count(7, 6, 5)
        with pytest.raises(InvalidParameters):
            coop_link_count(1, 6, 4)
        with pytest.raises(InvalidParameters):
            coop_link_count(1, 4, 5)

    @given(st.sampled_from([1, 3, 5, 7, 9]), st.integers(0, 40))
    def test_symmetry_and_bounds(self, L, extra):
        M = L + extra
        for j in range(1, M + 1):
            psi = coop_link_count(j, M, L)
            assert psi == coop_link_count(M + 1 - j, M, L)
            assert (L + 1) // 2 <= psi <= L
            if (L - 1) // 2 < j <= M - (L - 1) // 2:
                assert psi == L


class TestCooperationLoss:
    def test_examples(self):
        assert cooperation_loss(1) == 0
        assert cooperation_loss(3) == 1
        assert cooperation_loss_exact(5) == Fraction(11, 6)
        assert cooperation_loss(5) == pytest.approx(1.8333333333333333, abs=1e-15)

    @pytest.mark.parametrize("L", [0, 2, 4, -1])
    def test_rejects(self, L):
        with pytest.raises(InvalidParameters):
            cooperation_loss(L)

    def test_psi_sum_identity_exact(self):
        for L in (1, 3, 5, 7, 9):
            for M in range(L, 51):
                total = sum(Fraction(L, coop_link_count(j, M, L)) for j in range(1, M + 1))
                assert total == M + cooperation_loss_exact(L)

    def test_nondecreasing(self):
        values = [cooperation_loss_exact(L) for L in range(1, 100, 2)]
        assert all(a <= b for a, b in zip(values, values[1:]))


class TestLinkRates:
    def test_unit_log(self):
        p = SystemParams(0.5, 1.5, 60, 1, 5)
        r = link_rates(p, 6, math.e)
        assert r.bs_user == pytest.approx(1)
        assert r.eh_bs == pytest.approx(10)
        assert r.cloud_bs == pytest.approx(1.5)
        assert r.interference == pytest.approx(0.25)
        assert r.cooperative[0] == pytest.approx(0.3)
        assert len(r.cooperative) == 6

    def test_interference_quarter(self):
        r = link_rates(SystemParams(0.5, 1.5, 60, 2, 5), 7, math.e)
        assert r.interference == pytest.approx(0.5)

    @given(params_and_size(), st.floats(1.01, 1e4))
    def test_invariants(self, pm, power):
        p, M = pm
        r = link_rates(p, M, power)
        assert min(r.bs_user, r.eh_bs, r.cloud_bs, r.interference, *r.cooperative) > 0
        assert r.interference == pytest.approx(r.bs_user / 4)
        assert all(c <= r.bs_user / 2 * (1 + 1e-12) for c in r.cooperative)

    @pytest.mark.parametrize("power", [1, 0.5, 0])
    def test_power_must_exceed_one(self, power):
        with pytest.raises(InvalidPower):
            link_rates(FIG2, 7, power)


class TestUserNdt:
    def test_no_caching(self):
        p = SystemParams(0, 1.5, 60, 1, 5)
        for M, j in [(5, 1), (9, 5)]:
            assert user_ndt(p, M, j).total == pytest.approx(1 / 1.5 + 4)

    def test_full_caching_middle_user(self):
        p = SystemParams(1, 1.5, 60, 1, 5)
        assert user_ndt(p, 5, 3).total == pytest.approx(25 / 60 + 2, abs=1e-12)

    def test_edge_user(self):
        nd = user_ndt(FIG2, 7, 1)
        assert nd.backhaul_uncached == pytest.approx(0.3 / 1.5)
        assert nd.wireless_interference == pytest.approx(1.2)
        assert nd.backhaul_cached == pytest.approx(0.7 * 35 / 60)
        assert nd.wireless_coop == pytest.approx(2 * 0.7 * 5 / 3)
        assert nd.total == pytest.approx(4.141666666666667, abs=1e-12)

    def test_errors(self):
        with pytest.raises(InvalidPosition):
            user_ndt(FIG2, 7, 8)
        with pytest.raises(InvalidParameters):
            user_ndt(FIG2, 4, 1)

    @given(params_and_size())
    def test_breakdown_sums(self, pm):
        p, M = pm
        for j in (1, (M + 1) // 2, M):
            nd = user_ndt(p, M, j)
            parts = [nd.backhaul_cached, nd.backhaul_uncached, nd.wireless_coop, nd.wireless_interference]
            assert min(parts) >= 0
            assert nd.total == pytest.approx(math.fsum(parts), abs=1e-12)


class TestAundt:
    def test_fig2_point(self):
        assert aundt(FIG2, 7) == pytest.approx(3.575, abs=1e-12)
        assert brute_aundt(FIG2, 7) == pytest.approx(3.575, abs=1e-12)

    def test_brute_force_m5(self):
        assert aundt(FIG2, 5) == pytest.approx(3.605, abs=1e-12)
        assert brute_aundt(FIG2, 5) == pytest.approx(3.605, abs=1e-12)

    @pytest.mark.parametrize("M", [5, 9, 40])
    def test_no_caching_constant(self, M):
        for lam in (1, 60, 1000):
            assert aundt(SystemParams(0, 1.5, lam, 1, 5), M) == pytest.approx(1 / 1.5 + 4)

    def test_infeasible(self):
        with pytest.raises(InfeasibleDensity):
            aundt(FIG2, 4)
        with pytest.raises(InfeasibleDensity):
            aundt_lower_bound(FIG2, 3)

    def test_lower_bound_examples(self):
        assert aundt_lower_bound(FIG2, 7) == pytest.approx(3.2083333333333335, abs=1e-12)
        full = SystemParams(1, 1.5, 60, 1, 5)
        assert aundt_lower_bound(full, 5) == pytest.approx(25 / 60 + 2, abs=1e-12)
        zero = SystemParams(0, 1.5, 60, 1, 5)
        assert aundt_lower_bound(zero, 7) == aundt(zero, 7)

    @given(params_and_size())
    def test_equals_mean_of_users(self, pm):
        p, M = pm
        assert aundt(p, M) == pytest.approx(brute_aundt(p, M), rel=1e-9)

    @given(params_and_size())
    def test_affine_in_mu(self, pm):
        p, M = pm
        a0, a1 = aundt(p.with_(mu=0.0), M), aundt(p.with_(mu=1.0), M)
        assert a0 == 1 / p.gamma + 4 / p.beta
        assert aundt(p, M) == pytest.approx(a0 + p.mu * (a1 - a0), rel=1e-9, abs=1e-12)

    @given(params_and_size())
    def test_lower_bound_dominates(self, pm):
        p, M = pm
        lb, val = aundt_lower_bound(p, M), aundt(p, M)
        assert lb <= val + 1e-12
        if p.mu > 1e-6 and p.coop_reach > 1:
            assert lb < val
        elif p.mu == 0 or p.coop_reach == 1:
            assert lb == val
