"""The degree-four Bernstein polynomial B with Q(d) Q^a = B(a) Q^(a-1).

Two independent routes: exact evaluation of Q(d)Q^m at integers followed by
interpolation, and the product formula over the simple factors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .jordan import VQPair
from .polycore import MPoly, RatFn, DiffOp, apply_diffop, apply_diffop_ratfn

# exact interpolation is run at full depth up to this many variables
INTERP_DIM_LIMIT = 16


class ImplementationFault(RuntimeError):
    pass


def upoly_mul(a: Sequence, b: Sequence) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def upoly_eval(c: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(coeffs: Sequence) -> list[Fraction]:
    """Rational roots with multiplicity of a univariate polynomial (ascending coeffs)."""
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    roots: list[Fraction] = []
    while len(c) > 1 and c[0] == 0:
        roots.append(Fraction(0))
        c = c[1:]
    while len(c) > 1:
        lcm = math.lcm(*[x.denominator for x in c])
        ic = [int(x * lcm) for x in c]
        g = math.gcd(*ic)
        ic = [x // g for x in ic]
        found = None
        for p in _divisors(ic[0]):
            for q in _divisors(ic[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if upoly_eval(c, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        # synthetic division by (x - found)
        n = len(c) - 1
        q = [Fraction(0)] * n
        acc = Fraction(0)
        for i in range(n, 0, -1):
            acc = acc * found + c[i]
            q[i - 1] = acc
        c = q
    return sorted(roots, reverse=True)


@dataclass
class BernsteinPoly:
    coeffs: tuple  # ascending, length 5
    method: str = ""
    oracle_points: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(self.coeffs) != 5 or self.coeffs[4] == 0:
            raise ImplementationFault("Bernstein polynomial must have degree exactly 4")

    @property
    def leading(self) -> Fraction:
        return self.coeffs[4]

    @property
    def roots(self) -> Optional[tuple]:
        r = rational_roots(self.coeffs)
        return tuple(r) if len(r) == 4 else None

    def __call__(self, a) -> Fraction:
        return upoly_eval(self.coeffs, Fraction(a))

    def to_dict(self) -> dict:
        r = self.roots
        return {
            "coeffs": [str(c) for c in self.coeffs],
            "roots": None if r is None else [str(x) for x in r],
            "leading": str(self.leading),
            "method": self.method,
            "oracle_points": {str(k): str(v) for k, v in sorted(self.oracle_points.items())},
            "notes": list(self.notes),
        }


def bernstein_value(vq: VQPair, m: int, Qpow_prev: MPoly | None = None) -> Fraction:
    """B(m) from the exact identity Q(d) Q^m = B(m) Q^(m-1), m >= 1."""
    Q = vq.Q
    prev = Qpow_prev if Qpow_prev is not None else Q ** (m - 1)
    lhs = apply_diffop(vq.Q_op, prev * Q)
    if prev.is_zero():
        raise ImplementationFault("zero power")
    e, c = prev.leading_term()
    val = Fraction(lhs.coeff(e)) / Fraction(c)
    if lhs != prev.scale(val):
        raise ImplementationFault(f"Q(d)Q^{m} is not proportional to Q^{m - 1}")
    return val


def bernstein_by_interpolation(vq: VQPair, mmax: int | None = None, extra_roots: Sequence = ()) -> BernsteinPoly:
    """Interpolate B from B(0) = 0 and exact values B(1..mmax).

    When fewer than four values are computed, ``extra_roots`` supply the
    missing linear conditions B(root) = 0.
    """
    notes = []
    if mmax is None:
        mmax = 4 if vq.nvars <= INTERP_DIM_LIMIT else 2
    if mmax + len(extra_roots) < 4:
        if vq.nvars > INTERP_DIM_LIMIT:
            raise ValueError(f"dim {vq.nvars} too large for mmax={mmax}; pass extra roots")
        raise ValueError("not enough interpolation conditions")
    pts: dict[int, Fraction] = {}
    power = MPoly.const(vq.nvars, 1)
    for m in range(1, mmax + 1):
        pts[m] = bernstein_value(vq, m, power)
        power = power * vq.Q
    rows, rhs = [], []
    for m, v in pts.items():
        rows.append([Fraction(m) ** j for j in range(1, 5)])
        rhs.append(v)
    for r in extra_roots:
        rows.append([Fraction(r) ** j for j in range(1, 5)])
        rhs.append(Fraction(0))
        notes.append(f"root constraint B({r})=0 from product formula")
    sol, bad = linalg.solve(rows, rhs)
    if sol is None or linalg.rank(rows) < 4:
        raise ImplementationFault("interpolation system singular or inconsistent")
    method = f"interpolation m<={mmax}" + (f" + {len(extra_roots)} roots" if extra_roots else "")
    return BernsteinPoly((Fraction(0), *sol), method, pts, notes)


def product_formula_coeffs(vq: VQPair) -> list[Fraction]:
    poly = [Fraction(1)]
    for A, k in vq.factors:
        for j in range(k):
            # b(k a - j) = scale * prod_l (k a - j + l d / 2)
            for l in range(A.rank):
                poly = upoly_mul(poly, [Fraction(-j) + Fraction(l * A.d, 2), Fraction(k)])
            poly = [c * A.symbol_scale for c in poly]
    return poly


def bernstein_by_product_formula(vq: VQPair) -> BernsteinPoly:
    return BernsteinPoly(tuple(product_formula_coeffs(vq)), "product formula")


def bernstein(vq: VQPair, mmax: int | None = None) -> tuple[BernsteinPoly, BernsteinPoly, dict]:
    """Both routes and their comparison.

    Large algebras interpolate from B(1), B(2) plus the two most negative
    product-formula roots, so the remaining root and the leading constant are
    still checked independently.
    """
    pf = bernstein_by_product_formula(vq)
    if vq.nvars > INTERP_DIM_LIMIT and (mmax is None or mmax < 4):
        m = 2 if mmax is None else mmax
        need = 4 - m
        extra = sorted(pf.roots)[:need]
        ip = bernstein_by_interpolation(vq, m, extra)
    else:
        ip = bernstein_by_interpolation(vq, mmax if mmax is not None else 4)
    agree = {
        "roots": ip.roots == pf.roots,
        "leading": ip.leading == pf.leading,
        "coeffs": ip.coeffs == pf.coeffs,
    }
    return ip, pf, agree


def verify_bernstein_on_H(vq: VQPair, k: int) -> dict:
    """Check Q(d_z) H^{-k} = B(-k) Q(w) H^{-k-1} for the kernel H(z, w)."""
    from .analytic import hermitian_kernel

    H = hermitian_kernel(vq).poly
    n = vq.nvars
    N = 2 * n
    B = bernstein_by_product_formula(vq)
    op = DiffOp(vq.Q_dual.embed(N, 0))
    lhs = apply_diffop_ratfn(op, RatFn(MPoly.const(N, 1), H ** k))
    Bk = B(-k)
    Qw = vq.Q.embed(N, n)
    rhs = RatFn(Qw.scale(Bk), H ** (k + 1))
    diff = lhs - rhs
    ok = diff.num.is_zero()
    return {
        "k": k,
        "B(-k)": str(Bk),
        "ok": ok,
        "lhs_zero": lhs.num.is_zero(),
        "difference": None if ok else diff.num.to_dict(),
    }
