from fractions import Fraction as F

import pytest

from minrep import sl2rep as S
from minrep.catalog import resolve
from minrep.hc import solve_delta
from minrep.polycore import MPoly


def _model(cid, mmax=4):
    vq = resolve(cid).vq()
    return vq, solve_delta(vq, mmax).deltas


def z(k):
    return MPoly.monomial((k,))


def test_graded_fn_degree_bound():
    with pytest.raises(ValueError):
        S.GradedFn(1, z(5))
    with pytest.raises(ValueError):
        S.GradedFn(-1, z(0))


def test_sigma_on_rank_one_monomials():
    vq, d = _model("case1:n=1")
    M = S.SL2Model(vq, d)
    got = [M.op_sigma(S.GradedFn(1, z(j))).psi for j in range(5)]
    assert got == [z(4), -z(3), z(2), -z(1), z(0)]


def test_sigma_is_an_involution():
    vq, d = _model("case1:n=2")
    M = S.SL2Model(vq, d)
    for psi in S.grade_basis(vq, 1):
        f = S.GradedFn(1, psi)
        assert M.op_sigma(M.op_sigma(f)).psi == psi


def test_rho_E_examples():
    vq, d = _model("case1:n=1")
    M = S.SL2Model(vq, d)
    e1 = M.rho_E(S.GradedFn(1, z(0)))
    assert e1.component(2) == z(4)
    assert e1.component(0) == MPoly.const(1, F(-3, 10))
    e0 = M.rho_E(S.GradedFn(0, z(0)))
    assert e0.component(1) == z(4)


def test_multiplication_by_Q_matches_literal_sigma_form():
    vq, d = _model("case1:n=2")
    M = S.SL2Model(vq, d)
    for psi in S.grade_basis(vq, 1):
        f = S.GradedFn(1, psi)
        assert M.op_M_sigma(f) == M.op_M_sigma_literal(f)


@pytest.mark.parametrize("cid,mmax,dims", [
    ("case1:n=1", 3, [1, 5, 9, 13]),
    ("case2:p=2", 2, [1, 16, 81]),
    ("case1:n=3", 2, [1, 14, 55]),
])
def test_sl2_relations(cid, mmax, dims):
    vq, d = _model(cid)
    r = S.verify_sl2(vq, d, mmax)
    assert r["ok"], r["failures"]
    assert [g["dim"] for g in r["grades"]] == dims


def test_HE_HF_hold_for_any_delta():
    vq, _ = _model("case1:n=1")
    junk = [F(1), F(2), F(3), F(4)]
    r = S.verify_sl2(vq, junk, 2)
    for g in r["grades"]:
        assert g["passed"]["HE"] == g["dim"] and g["passed"]["HF"] == g["dim"]


def test_perturbed_delta_breaks_EF():
    vq, d = _model("case1:n=1")
    bad = list(d)
    bad[1] += F(1, 7)
    r = S.verify_sl2(vq, bad, 2)
    assert not r["ok"]
    assert {f["identity"] for f in r["failures"]} == {"EF"}


def test_ladder_and_connectivity():
    vq, d = _model("case1:n=1")
    assert S.verify_ladder(vq, d, 3)["ok"]
    c = S.verify_ladder_connectivity(vq, d, 3)
    assert c["ok"]
    assert c["reached"] == c["grade_dims"]
    # sl2 alone only moves between weights congruent mod 4
    assert c["reached_sl2_only"][1] < c["grade_dims"][1]


def test_adjointness_rank_one():
    r = S.verify_adjointness_rank1(3)
    assert r["ok"] and r["pairs"] == 28 ** 2


def test_grade_dimension_matches_inverse_a():
    from minrep.analytic import seq_a_gamma

    for cid in ("case1:n=1", "case1:n=2", "case2:p=2"):
        vq = resolve(cid).vq()
        a = seq_a_gamma(vq, 2)
        for m in range(3):
            assert len(S.grade_basis(vq, m)) == 1 / a[m]
