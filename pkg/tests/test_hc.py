from fractions import Fraction as F

import pytest

from minrep import hc
from minrep.catalog import NON_T_IDS, T_IDS, resolve
from minrep.jordan import build_vq


@pytest.mark.parametrize("alpha", [0, -1, F(1, 2), 3])
@pytest.mark.parametrize("lam", [0, 1, F(5, 3), -2])
def test_rank_one_symbol_matches_power_rule(alpha, lam):
    vq = resolve("case1:n=1").vq()
    # kappa * gamma_alpha at the shifted parameter equals the eigenvalue of
    # z^(4+4a) (d/dz)^4 z^(-4a) on z^lam
    g = hc.gamma_alpha(vq, alpha)
    shift = F(0)
    assert vq.kappa * g(F(lam) - shift) == hc.maass_rank1_oracle(alpha, lam)


@pytest.mark.parametrize("cid", T_IDS)
def test_delta_closed_form(cid):
    vq = resolve(cid).vq()
    sol = hc.solve_delta(vq, 6)
    assert sol.feasible and sol.closed_form_ok
    eta = vq.eta
    A = sol.A_const
    assert A == hc.expected_A(vq)
    for m in range(7):
        assert sol.delta(m) == A / ((m + eta) * (m + eta + 1))
    assert all(hc.check_p_m(vq, sol))


def test_rank_one_anchor():
    sol = hc.solve_delta(resolve("case1:n=1").vq(), 6)
    assert sol.delta(0) == F(1, 80)
    assert sol.A_const == F(1, 256)


@pytest.mark.parametrize("cid", NON_T_IDS)
def test_non_t_infeasible_with_witness(cid):
    sol = hc.solve_delta(resolve(cid).vq(), 6)
    assert not sol.feasible
    assert sol.witness is not None and sol.witness["m"] == 1


def test_expected_A_values():
    assert hc.expected_A(resolve("case1:n=3").vq()) == F(1, 256)
    assert hc.expected_A(resolve("case2:p=2").vq()) == F(1, 16)
    assert hc.expected_A(resolve("case3:full4").vq()) == 1


def test_mmax_validation():
    with pytest.raises(ValueError):
        hc.solve_delta(resolve("case1:n=1").vq(), 0)


@pytest.mark.parametrize("b", [1, 2, F(1, 2), F(7, 3)])
def test_four_variable_identity(b):
    assert hc.verify_four_variable_identity(b)["ok"]


def test_four_variable_identity_needs_equal_shifts():
    assert not hc.verify_four_variable_identity_unequal(1, 1, 1, 2)["feasible"]
    assert hc.verify_four_variable_identity_unequal(2, 2, 2, 2)["feasible"]


def test_collapsed_identity_rank_one():
    # V = C: one variable carrying multiplicity 4, shifts -1/4, -1/2, -3/4
    r = hc.verify_collapsed_identity([4], [[F(-1, 4), F(-1, 2), F(-3, 4)]], F(1, 4))
    assert r["feasible"] and r["closed_form"]
    assert F(r["c"]) == F(-3, 2) - F(1, 2)
    assert r["equal_weight_reading_holds"] is False


def test_collapsed_identity_all_ones_partition():
    r = hc.verify_collapsed_identity([1, 1, 1, 1], [[], [], [], []], 2)
    assert r["feasible"] and r["equal_weight_reading_holds"]


def test_collapsed_identity_two_two():
    r = hc.verify_collapsed_identity([2, 2], [[F(-1, 2)], [F(-1, 2)]], 1)
    assert r["feasible"] and r["closed_form"]


def test_mixed_witness_is_exact():
    sol = hc.solve_delta(build_vq([("Spin(2)", 1), ("Spin(3)", 1)]), 3)
    w = sol.witness
    assert w["unknowns"] == ["delta_0", "delta_1"]
    assert len(w["row"]) == 2
