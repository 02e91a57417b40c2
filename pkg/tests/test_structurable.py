import random
from fractions import Fraction as F

import pytest

from minrep import structurable as st
from minrep.catalog import CATALOG_IDS, resolve

SMALL = [c for c in CATALOG_IDS if resolve(c).computable and resolve(c).vq().nvars <= 16]


@pytest.mark.parametrize("cid", SMALL)
def test_structurable_identity(cid):
    r = st.verify_structurable_identity(resolve(cid).vq(), samples=6)
    assert r["ok"], r


@pytest.mark.parametrize("cid", SMALL)
def test_involution_and_skew_space(cid):
    vq = resolve(cid).vq()
    assert st.verify_antiautomorphism(vq, 10)["ok"]
    W = st.DoubledAlgebra(vq)
    S = st.skew_space(vq)
    assert len(S) == 1
    assert W.bar(W.s0) == W.s0.scale(-1)
    e = W.e_vec
    assert W.star(e) == e
    x = W.random(random.Random(3)).x
    assert W.star(W.star(x)) == x


def test_unit_is_idempotent():
    W = st.DoubledAlgebra(resolve("case3:sym4").vq())
    u = W.unit_image
    assert W.mul(u, u) == u


def test_bracket_rank_one():
    vq = resolve("case1:n=1").vq()
    a, b = st.WElem((F(0),), (F(1),)), st.WElem((F(1),), (F(0),))
    assert st.heisenberg_bracket(vq, a, b) == 2
    assert st.heisenberg_bracket(vq, b, a) == -2


def test_bracket_is_skew():
    vq = resolve("case1:n=2").vq()
    W = st.DoubledAlgebra(vq)
    rng = random.Random(5)
    for _ in range(5):
        a, b = W.random(rng), W.random(rng)
        assert st.heisenberg_bracket(vq, a, b) == -st.heisenberg_bracket(vq, b, a)


@pytest.mark.parametrize("cid", [c for c in SMALL if resolve(c).vq().nvars <= 9])
def test_grading_dims(cid):
    e = resolve(cid)
    g = st.grading_dims(e.vq(), e.dim_k, e.dim_g)
    assert g["graded"] and g["consistent"]
    assert g["p"][-2] == 1 and g["p"][2] == 1
    assert g["p"][-1] == g["p"][1] == e.vq().nvars


def test_grading_full4():
    e = resolve("case3:full4")
    g = st.grading_dims(e.vq(), e.dim_k, e.dim_g)
    assert g["p"] == {-2: 1, -1: 16, 0: 36, 1: 16, 2: 1}
