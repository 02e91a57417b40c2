from fractions import Fraction as F

import pytest

from minrep.catalog import CATALOG_IDS, NON_T_IDS, T_IDS, UnknownCase, catalog, reference_roots, resolve


def test_catalog_size_and_g2_row():
    rows = [e.row() for e in catalog()]
    assert len(rows) >= 10
    g2 = next(r for r in rows if r["case"] == "g2")
    assert g2["V"] == "C+C" and g2["Q"] == "z^3.z'"


def test_only_t_is_exactly_the_three_families():
    fams = {e.family for e in catalog(only_t=True)}
    assert fams == {"case1", "case2", "case3"}
    assert [e.case_id for e in catalog(only_t=True)] == T_IDS


@pytest.mark.parametrize("cid", NON_T_IDS)
def test_non_t_cases(cid):
    assert not resolve(cid).property_t


def test_aliases_and_unknown():
    assert resolve("case3:d=2").case_id == "case3:full4"
    assert resolve("CASE1:n=3").case_id == "case1:n=3"
    with pytest.raises(UnknownCase):
        resolve("case9")
    with pytest.raises(UnknownCase):
        resolve("herm3o+c").vq()


@pytest.mark.parametrize("cid", T_IDS)
def test_eta_matches_reference(cid):
    e = resolve(cid)
    assert e.vq().eta == reference_roots(e)["eta"]


def test_dimension_bookkeeping():
    for cid in CATALOG_IDS:
        e = resolve(cid)
        if e.computable:
            vq = e.vq()
            # dim g = dim k + dim W with W = p spanning degrees 0..4
            assert e.dim_g - e.dim_k >= 2 * vq.nvars + 2


def test_specific_eta_values():
    assert resolve("case1:n=1").vq().eta == F(1, 4)
    assert resolve("case2:p=3").vq().eta == F(3, 2)
    assert resolve("case3:full4").vq().eta == 4
