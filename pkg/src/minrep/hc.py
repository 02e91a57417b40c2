"""Harish-Chandra symbols of the Maass operators, the symbol p_m of the
commutator [rho(E), rho(F)] on grade m, and the exact solver for the
sequence delta_m that makes the sl2 relations hold."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .jordan import VQPair
from .polycore import MPoly


@dataclass(frozen=True)
class HCSymbol:
    poly: MPoly
    profile: tuple  # ((n_i, r_i, k_i), ...)

    def __call__(self, *lam):
        return self.poly.evaluate(list(lam[0]) if len(lam) == 1 and isinstance(lam[0], (list, tuple)) else list(lam))


def _lam(r: int, j: int) -> MPoly:
    return MPoly.var(r, j)


def gamma_alpha(vq: VQPair, alpha) -> HCSymbol:
    """prod_i prod_j [lam_j^(i) - k_i alpha + (n_i/r_i - 1)/2]_{k_i} (falling factorial)."""
    alpha = Fraction(alpha)
    r = vq.hc_rank
    p = MPoly.const(r, 1)
    j0 = 0
    for A, k in vq.factors:
        shift = -k * alpha + Fraction(1, 2) * (Fraction(A.dim, A.rank) - 1)
        for j in range(A.rank):
            for t in range(k):
                p = p * (_lam(r, j0 + j) + (shift - t))
        j0 += A.rank
    return HCSymbol(p, tuple((A.dim, A.rank, k) for A, k in vq.factors))


def negate_vars(p: MPoly) -> MPoly:
    return MPoly(p.nvars, {e: (-c if sum(e) % 2 else c) for e, c in p.terms.items()})


def maass_rank1_oracle(alpha, lam) -> Fraction:
    """Eigenvalue of z^{4+4a} (d/dz)^4 z^{-4a} on z^lam, by differentiating the power."""
    alpha, lam = Fraction(alpha), Fraction(lam)
    coef, expo = Fraction(1), lam - 4 * alpha
    for _ in range(4):
        coef *= expo
        expo -= 1
    expo += 4 + 4 * alpha
    assert expo == lam
    return coef


def _kgamma(vq: VQPair, alpha, neg: bool = False) -> MPoly:
    p = gamma_alpha(vq, alpha).poly.scale(vq.kappa)
    return negate_vars(p) if neg else p


def p_m_symbol(vq: VQPair, m: int, delta_m, delta_m_minus_1) -> HCSymbol:
    """Symbol of [rho(E), rho(F)] restricted to grade m.

    delta_m ( g_{-1}(l) - g_{-m-1}(-l) ) + delta_{m-1} ( g_{-m}(-l) - g_0(l) ),
    with g the symbols of the operators as normalized by Q(d).
    """
    a = _kgamma(vq, -1) - _kgamma(vq, -m - 1, neg=True)
    b = _kgamma(vq, -m, neg=True) - _kgamma(vq, 0)
    p = a.scale(Fraction(delta_m)) + b.scale(Fraction(delta_m_minus_1))
    return HCSymbol(p, gamma_alpha(vq, 0).profile)


def euler_symbol(vq: VQPair) -> MPoly:
    r = vq.hc_rank
    return MPoly.linear([1] * r)


@dataclass
class DeltaSolution:
    feasible: bool
    mmax: int
    deltas: list = field(default_factory=list)  # delta_0 .. delta_mmax
    delta_minus1: Optional[Fraction] = None  # closed-form extension, informational
    eta: Optional[Fraction] = None
    A_const: Optional[Fraction] = None
    A_expected: Optional[Fraction] = None
    closed_form_ok: Optional[bool] = None
    witness: Optional[dict] = None
    property_t: bool = False

    def delta(self, m: int) -> Fraction:
        if m == -1:
            return self.delta_minus1
        return self.deltas[m]

    def closed_form(self, m: int) -> Fraction:
        return self.A_const / ((m + self.eta) * (m + self.eta + 1))

    def to_dict(self) -> dict:
        s = lambda x: None if x is None else str(x)
        return {
            "feasible": self.feasible,
            "property_t": self.property_t,
            "mmax": self.mmax,
            "eta": s(self.eta),
            "A": s(self.A_const),
            "A_expected": s(self.A_expected),
            "closed_form_ok": self.closed_form_ok,
            "delta_minus1": s(self.delta_minus1),
            "deltas": [str(d) for d in self.deltas],
            "witness": self.witness,
        }


def _system(cols: Sequence[MPoly], rhs: MPoly):
    keys = set(rhs.terms)
    for c in cols:
        keys |= set(c.terms)
    keys = sorted(keys, key=lambda e: (-sum(e), tuple(-x for x in e)))
    A = [[c.coeff(k) for c in cols] for k in keys]
    b = [rhs.coeff(k) for k in keys]
    return keys, A, b


def expected_A(vq: VQPair) -> Fraction:
    out = Fraction(vq.kappa)
    for A, k in vq.factors:
        out *= Fraction(k) ** (k * A.rank)
    return 1 / out


def constant_parameter(vq: VQPair) -> list[Fraction]:
    """Harish-Chandra parameter of the constant function (Q^0)."""
    lam = []
    for A, _ in vq.factors:
        for j in range(A.rank):
            lam.append(Fraction(j * A.d, 2) - Fraction((A.rank - 1) * A.d, 4))
    return lam


def solve_delta(vq: VQPair, mmax: int = 6) -> DeltaSolution:
    """Solve p_m(l) = sum(l) - 2m for the delta_m, sequentially in m.

    Grade 0 holds only the constants, where the delta_{-1} term is absent
    by construction; there the condition is a scalar identity at the
    constant-function parameter and leaves delta_0 free.  delta_0 and
    delta_1 are then solved jointly from the grade-1 polynomial identity,
    and each later grade adds one unknown.
    """
    if mmax < 1:
        raise ValueError("mmax must be at least 1")
    sol = DeltaSolution(False, mmax, property_t=vq.has_property_t, eta=vq.eta)
    E = euler_symbol(vq)
    g1 = _kgamma(vq, -1)
    g0 = _kgamma(vq, 0)
    lam0 = constant_parameter(vq)
    col0 = g1 - _kgamma(vq, -1, neg=True)
    if col0.evaluate(lam0) != 0 or E.evaluate(lam0) != 0:
        sol.witness = {"m": 0, "monomial": None, "row": [str(col0.evaluate(lam0))],
                       "rhs": str(E.evaluate(lam0)), "unknowns": ["delta_0"]}
        return sol
    prev: Optional[Fraction] = None
    for m in range(1, mmax + 1):
        col_m = g1 - _kgamma(vq, -m - 1, neg=True)
        col_prev = _kgamma(vq, -m, neg=True) - g0
        target = E - 2 * m
        if m == 1:
            keys, A, b = _system([col_prev, col_m], target)
        else:
            keys, A, b = _system([col_m], target - col_prev.scale(prev))
        x, bad = linalg.solve(A, b)
        if x is None:
            sol.witness = {
                "m": m,
                "monomial": list(keys[bad]),
                "row": [str(v) for v in A[bad]],
                "rhs": str(b[bad]),
                "unknowns": ["delta_0", "delta_1"] if m == 1 else [f"delta_{m}"],
            }
            return sol
        if m == 1:
            sol.deltas.extend(x)
        else:
            sol.deltas.append(x[0])
        prev = sol.deltas[-1]
    sol.feasible = True
    if vq.eta is not None:
        eta = vq.eta
        consts = {(m + eta) * (m + eta + 1) * sol.delta(m) for m in range(mmax + 1)}
        sol.closed_form_ok = len(consts) == 1
        sol.A_const = (eta * (eta + 1)) * sol.deltas[0]
        sol.A_expected = expected_A(vq)
        if eta != 1:
            sol.delta_minus1 = sol.A_const / ((eta - 1) * eta)
    return sol


def check_p_m(vq: VQPair, sol: DeltaSolution) -> list[bool]:
    E = euler_symbol(vq)
    return [
        (p_m_symbol(vq, m, sol.delta(m), sol.delta(m - 1)).poly - (E - 2 * m)).is_zero()
        for m in range(1, sol.mmax + 1)
    ]


# -- the two polynomial identities behind the closed form ----------------

def _identity_lhs(F, nv: int, bs: Sequence, a, b):
    T = [MPoly.var(nv, i) for i in range(nv)]
    up = F([t + 1 for t in T])
    dn = F([t - (bi + 1) for t, bi in zip(T, bs)])
    sh = F([t - bi for t, bi in zip(T, bs)])
    base = F(T)
    return (up - dn), (sh - base)


def _identity_verdict(F, nv: int, bs: Sequence, weights: Sequence, c_expected=None) -> dict:
    bs = [Fraction(x) for x in bs]
    X, Y = _identity_lhs(F, nv, bs, None, None)
    target = MPoly.linear(weights)
    one = MPoly.const(nv, 1)
    # unknowns alpha, beta, c
    keys, A, rhs = _system([X, Y, -one], target)
    x, bad = linalg.solve(A, rhs)
    if x is None:
        return {"feasible": False, "witness": {"monomial": list(keys[bad])}}
    alpha, beta, c = x
    out = {"feasible": True, "alpha": str(alpha), "beta": str(beta), "c": str(c)}
    if len(set(bs)) == 1:
        bb = bs[0]
        out["closed_form"] = (
            (bb + 1) * (bb + 2) * alpha == 1 and (bb == 0 or bb * (bb + 1) * beta == 1)
            and (c_expected is None or c == c_expected)
        )
    return out


def verify_four_variable_identity(b) -> dict:
    """The four-variable identity with b_1 = ... = b_4 = b."""
    b = Fraction(b)
    F = lambda T: T[0] * T[1] * T[2] * T[3]
    alpha, beta, c = 1 / ((b + 1) * (b + 2)), 1 / (b * (b + 1)), -2 * b
    X, Y = _identity_lhs(F, 4, [b] * 4, None, None)
    lhs = X.scale(alpha) + Y.scale(beta)
    ok = (lhs - (MPoly.linear([1, 1, 1, 1]) + c)).is_zero()
    return {"ok": ok, "alpha": str(alpha), "beta": str(beta), "c": str(c)}


def verify_four_variable_identity_unequal(b1, b2, b3, b4) -> dict:
    """Is there any (alpha, beta, c) making the identity hold for these b_j?"""
    F = lambda T: T[0] * T[1] * T[2] * T[3]
    return _identity_verdict(F, 4, [b1, b2, b3, b4], [1, 1, 1, 1])


def _partition_F(partition: Sequence[int], gammas: Sequence[Sequence]):
    def F(T):
        out = None
        for i, k in enumerate(partition):
            f = T[i]
            for j in range(k - 1):
                f = f * (T[i] + Fraction(gammas[i][j]))
            out = f if out is None else out * f
        return out
    return F


def verify_collapsed_identity(partition: Sequence[int], gammas: Sequence[Sequence], b) -> dict:
    """Collapsed-variable identity for a partition of 4.

    The right side carries the multiplicities: sum_i k_i T_i + c with
    c = sum gamma_ij - 2b.  The equal-weight reading sum_i T_i + c is also
    evaluated and reported.
    """
    if sum(partition) != 4:
        raise ValueError("partition must sum to 4")
    if isinstance(b, (list, tuple)):
        bs = [Fraction(x) for x in b]
    else:
        bs = [Fraction(b)] * len(partition)
    gammas = [list(g) for g in gammas] if gammas else [[] for _ in partition]
    for k, g in zip(partition, gammas):
        if len(g) != k - 1:
            raise ValueError("gammas[i] must have k_i - 1 entries")
    nv = len(partition)
    F = _partition_F(partition, gammas)
    c = sum((Fraction(x) for g in gammas for x in g), Fraction(0)) - 2 * bs[0]
    out = _identity_verdict(F, nv, bs, list(partition), c if len(set(bs)) == 1 else None)
    out["c_expected"] = str(c)
    if len(set(bs)) == 1 and bs[0] not in (0, -1, -2):
        b0 = bs[0]
        X, Y = _identity_lhs(F, nv, bs, None, None)
        lhs = X.scale(1 / ((b0 + 1) * (b0 + 2))) + Y.scale(1 / (b0 * (b0 + 1)))
        out["equal_weight_reading_holds"] = (lhs - (MPoly.linear([1] * nv) + c)).is_zero()
    return out
