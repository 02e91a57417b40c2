import random
from fractions import Fraction as F

import mpmath
import pytest

from minrep import analytic as an
from minrep.catalog import T_IDS, resolve

SMALL = ["case1:n=1", "case1:n=2", "case1:n=3", "case2:p=2", "sym3+c", "full3+c", "case3:sym4", "case3:full4"]


def _nonsingular(vq, rng):
    while True:
        w = vq.random_element(rng)
        if vq.Qval(w) != 0:
            return w


@pytest.mark.parametrize("cid", SMALL)
def test_kernel_polynomial(cid):
    vq = resolve(cid).vq()
    rng = random.Random(1)
    H = an.hermitian_kernel(vq)
    assert an.kernel_diagonal_check(vq, H, vq.random_element(rng))
    assert an.kernel_pointwise_check(vq, H, vq.random_element(rng), _nonsingular(vq, rng))
    assert H(vq.random_element(rng), [0] * vq.nvars) == 1
    if vq.nvars <= 9:
        assert an.hermitian_kernel(vq, generic=True).poly == H.poly


def test_kernel_rank_one_closed_form():
    H = an.hermitian_kernel(resolve("case1:n=1").vq())
    assert H([F(2)], [F(3)]) == 7 ** 4


@pytest.mark.parametrize("cid", T_IDS)
def test_sequences(cid):
    vq = resolve(cid).vq()
    sa = an.seq_a(vq, 10)
    assert sa["agree"]
    c = an.seq_c(vq, 10)
    assert an.seq_c_recurrence_ok(vq, c)
    assert all(an.product_identity(vq, 10))


def test_rank_one_sequences():
    vq = resolve("case1:n=1").vq()
    assert an.seq_a_gamma(vq, 5) == [F(1, 4 * m + 1) for m in range(6)]
    assert an.seq_c(vq, 1)[1] == F(10, 3)


@pytest.mark.parametrize("cid,dims", [("case3:sym4", [1, 42]), ("case3:full4", [1, 70]), ("case3:skew8", [1, 128])])
def test_inverse_a_is_grade_dimension(cid, dims):
    a = an.seq_a_gamma(resolve(cid).vq(), 1)
    assert [1 / v for v in a] == dims


@pytest.mark.parametrize("cid", ["case1:n=1", "case2:p=2", "case3:full4"])
@pytest.mark.parametrize("x", [0.0, 0.5, 3.0, 40.0])
def test_1f2_against_mpmath(cid, x):
    vq = resolve(cid).vq()
    eta = an._eta(vq)
    a2, a3 = an.remaining_roots(vq)
    ref = float(mpmath.hyp1f2(float(eta + 1), float(eta + a2), float(eta + a3), x))
    got = an.kernel_1f2(vq, x)
    assert got == pytest.approx(ref, rel=1e-13)
    assert got >= 1


def test_1f2_exact_partial_sum_bounds_float_sum():
    vq = resolve("case1:n=1").vq()
    assert float(an.kernel_1f2_exact_partial(vq, 1, 40)) == pytest.approx(an.kernel_1f2(vq, 1.0), rel=1e-15)


def test_meijer_params_rank_one():
    P = an.meijer_params(resolve("case1:n=1").vq())
    assert P.alpha_q == F(-3, 4)
    assert P.beta_q == (F(-1, 2), F(0), F(-1, 4))
    assert P.theta_q == F(-1, 4)
    assert P.series_ok


@pytest.mark.parametrize("cid", T_IDS)
@pytest.mark.parametrize("u", [0.1, 1.0, 10.0, 100.0])
def test_meijer_two_methods_agree(cid, u):
    P = an.meijer_params(resolve(cid).vq())
    r = an.meijer_g(P, u)
    assert r["relerr"] <= 1e-6
    assert r["reference"] == ("residue series" if P.series_ok else "mpmath.meijerg")


@pytest.mark.parametrize("u", [0.3, 5.0])
def test_meijer_against_mpmath(u):
    P = an.meijer_params(resolve("case1:n=2").vq())
    ref = float(mpmath.meijerg([[], [P.alpha]], [list(P.beta), []], u))
    assert an.meijer_g_quad(P, u) == pytest.approx(ref, rel=1e-8)


def test_series_unavailable_with_integer_gaps():
    P = an.meijer_params(resolve("case2:p=2").vq())
    assert not P.series_ok
    with pytest.raises(an.SeriesUnavailable):
        an.meijer_g_series(P, 1.0)
    r = an.meijer_g(P, 1.0)
    assert r["flag"] and r["series"] is None and r["relerr"] <= 1e-6


@pytest.mark.parametrize("cid", T_IDS)
def test_moments(cid):
    for row in an.moment_report(resolve(cid).vq(), 6):
        assert row["relerr"] <= 1e-6, row
        assert row["gamma_relerr"] <= 1e-10, row


def test_first_moment_ratio_rank_one():
    # 1/(a_1 c_1) = 5 * 3/10
    row = an.moment_report(resolve("case1:n=1").vq(), 1)[1]
    assert F(row["rhs"]) == F(3, 2)


def test_sign_change_rank_one():
    sc = an.find_sign_change(an.meijer_params(resolve("case1:n=1").vq()))
    assert sc["u_neg"] is not None and sc["G_neg"] < 0
    assert 0.01 < sc["u0"] < 0.03
    assert sc["positive_after_u0"]


def test_asymptotic_ratio_tends_to_one():
    P = an.meijer_params(resolve("case3:skew8").vq())
    r = [an.asymptotic_ratio(P, u) for u in (1e4, 1e6, 1e8)]
    assert r[0] < r[1] < r[2] < 1
    assert abs(1 - r[2]) < 0.01


def test_weight_checks_report_shape():
    rep = an.weight_checks(resolve("case1:n=1").vq(), 3)
    assert rep["mellin_zero"]["valid"]
    assert rep["integrability"]["sigma_lt_1"]
    assert 0.9 <= rep["asymptotic"]["ratio"] <= 1.1
    assert not 0.5 <= rep["asymptotic"]["ratio_unhalved_theta"] <= 2


@pytest.mark.parametrize("m", [1, 2])
def test_rank_one_reproducing(m):
    for row in an.rank1_reproducing(m, complex(0.3, -0.7)):
        assert row["relerr"] < 1e-10, row
