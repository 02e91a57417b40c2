"""Graded model of the minimal representation on functions w^m psi(z).

Grade m carries polynomials psi of degree <= 4m.  The operators are
multiplication M by w, D = Q(d/dz) lowering the grade, the involution
sigma: psi -> Q(-z)^m psi(-z^{-1}), and the sl2 triple built from them.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Mapping, Optional, Sequence

from .jordan import VQPair
from .linalg import IncrementalBasis, poly_basis
from .polycore import MPoly, apply_diffop, divmod_exact, euler_apply


class ImplementationFault(RuntimeError):
    pass


@dataclass(frozen=True)
class GradedFn:
    """w^m psi(z) with deg psi <= 4m."""

    m: int
    psi: MPoly

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("grades are nonnegative")
        if self.psi.degree() > 4 * self.m:
            raise ValueError(f"degree {self.psi.degree()} exceeds bound {4 * self.m}")


class GradedSum:
    """Finite sum of graded components, stored as grade -> polynomial."""

    __slots__ = ("nvars", "parts")

    def __init__(self, nvars: int, parts: Mapping[int, MPoly] | None = None):
        self.nvars = nvars
        self.parts = {m: p for m, p in (parts or {}).items() if not p.is_zero()}

    @classmethod
    def of(cls, f: GradedFn) -> "GradedSum":
        return cls(f.psi.nvars, {f.m: f.psi})

    def __add__(self, other: "GradedSum") -> "GradedSum":
        out = dict(self.parts)
        for m, p in other.parts.items():
            out[m] = out[m] + p if m in out else p
        return GradedSum(self.nvars, out)

    def __neg__(self) -> "GradedSum":
        return GradedSum(self.nvars, {m: -p for m, p in self.parts.items()})

    def __sub__(self, other: "GradedSum") -> "GradedSum":
        return self + (-other)

    def scale(self, c) -> "GradedSum":
        return GradedSum(self.nvars, {m: p.scale(c) for m, p in self.parts.items()})

    def is_zero(self) -> bool:
        return not self.parts

    def component(self, m: int) -> MPoly:
        return self.parts.get(m, MPoly.zero(self.nvars))

    def items(self):
        return sorted(self.parts.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSum) and (self - other).is_zero()

    def to_dict(self) -> dict:
        return {str(m): p.to_dict() for m, p in self.items()}

    def __repr__(self) -> str:
        return " + ".join(f"w^{m}*({p!r})" for m, p in self.items()) or "0"


class SL2Model:
    """Operators of the representation for one pair (V, Q) and a delta sequence."""

    def __init__(self, vq: VQPair, delta: Sequence | Callable[[int], Fraction] | None = None):
        self.vq = vq
        self.n = vq.nvars
        self.Q = vq.Q
        self.D = vq.Q_op
        self._delta = delta
        self._sigma_cache: dict[tuple, MPoly] = {}
        self._Qpow: dict[int, MPoly] = {0: MPoly.const(self.n, 1)}
        self._neg_adj = []
        for A, k, o in vq.blocks():
            self._neg_adj.append([(-p).embed(self.n, o) for p in A.adjoint_polys])
        self._dets = [A.det_poly.embed(self.n, o) for A, _, o in vq.blocks()]

    # -- helpers --------------------------------------------------------
    def delta(self, m: int) -> Fraction:
        if m < 0:
            return Fraction(0)
        d = self._delta
        if d is None:
            raise ValueError("no delta sequence supplied")
        return Fraction(d(m) if callable(d) else d[m])

    def with_delta(self, delta) -> "SL2Model":
        other = SL2Model.__new__(SL2Model)
        other.__dict__.update(self.__dict__)
        other._delta = delta
        return other

    def Qpow(self, m: int) -> MPoly:
        if m not in self._Qpow:
            self._Qpow[m] = self.Qpow(m - 1) * self.Q
        return self._Qpow[m]

    def _block_image(self, bi: int, beta: tuple) -> MPoly:
        key = (bi, beta)
        if key not in self._sigma_cache:
            if not any(beta):
                img = MPoly.const(self.n, 1)
            else:
                j = max(i for i, x in enumerate(beta) if x)
                prev = list(beta)
                prev[j] -= 1
                img = self._block_image(bi, tuple(prev)) * self._neg_adj[bi][j]
            self._sigma_cache[key] = img
        return self._sigma_cache[key]

    # -- the basic operators --------------------------------------------
    def op_M(self, f: GradedFn) -> GradedFn:
        return GradedFn(f.m + 1, f.psi)

    def op_D(self, f: GradedFn) -> GradedFn:
        if f.m == 0:
            return GradedFn(0, MPoly.zero(self.n))
        return GradedFn(f.m - 1, apply_diffop(self.D, f.psi))

    def op_sigma(self, f: GradedFn) -> GradedFn:
        """psi -> Q(-z)^m psi(-z^{-1}), exactly, via the adjugate of each block."""
        vq, m = self.vq, f.m
        blocks = vq.blocks()
        groups: dict[tuple, list] = {}
        for e, c in f.psi.terms.items():
            parts = tuple(e[o:o + A.dim] for A, _, o in blocks)
            groups.setdefault(tuple(sum(p) for p in parts), []).append((parts, c))
        out = MPoly.zero(self.n)
        for degs, terms in groups.items():
            acc: dict = {}
            for parts, c in terms:
                t = MPoly.const(self.n, c)
                for bi, beta in enumerate(parts):
                    if any(beta):
                        t = t * self._block_image(bi, beta)
                for ee, cc in t.terms.items():
                    acc[ee] = acc.get(ee, 0) + cc
            N = MPoly(self.n, {e: c for e, c in acc.items() if c})
            mult = MPoly.const(self.n, 1)
            div = MPoly.const(self.n, 1)
            for (A, k, _), Dl, dg in zip(blocks, self._dets, degs):
                ex = k * m - dg
                if ex > 0:
                    mult = mult * Dl ** ex
                elif ex < 0:
                    div = div * Dl ** (-ex)
            if not div.is_constant():
                q, r = divmod_exact(N, div)
                if not r.is_zero():
                    raise ImplementationFault(f"sigma image not polynomial at grade {m}")
                N = q
            out = out + N * mult
        # Q(-z)^m = Q(z)^m since deg Q = 4; the sign of each adjugate is in _neg_adj
        return GradedFn(m, out)

    def op_M_sigma(self, f: GradedFn) -> GradedFn:
        """sigma M sigma, which equals multiplication by Q(z) w."""
        return GradedFn(f.m + 1, f.psi * self.Q)

    def op_M_sigma_literal(self, f: GradedFn) -> GradedFn:
        return self.op_sigma(self.op_M(self.op_sigma(f)))

    def op_D_sigma(self, f: GradedFn) -> GradedFn:
        if f.m == 0:
            return GradedFn(0, MPoly.zero(self.n))
        return self.op_sigma(self.op_D(self.op_sigma(f)))

    # -- the sl2 triple ---------------------------------------------------
    def rho_H(self, f: GradedFn | GradedSum) -> GradedSum:
        parts = _parts(f)
        return GradedSum(self.n, {m: euler_apply(p) - p.scale(2 * m) for m, p in parts})

    def rho_F(self, f: GradedFn | GradedSum) -> GradedSum:
        out = GradedSum(self.n)
        for m, p in _parts(f):
            g = GradedFn(m, p)
            out = out + GradedSum.of(self.op_M(g))
            if m >= 1:
                out = out - GradedSum.of(self.op_D(g)).scale(self.delta(m - 1))
        return out

    def rho_E(self, f: GradedFn | GradedSum) -> GradedSum:
        out = GradedSum(self.n)
        for m, p in _parts(f):
            g = GradedFn(m, p)
            out = out + GradedSum.of(self.op_M_sigma(g))
            if m >= 1:
                out = out - GradedSum.of(self.op_D_sigma(g)).scale(self.delta(m - 1))
        return out

    def translate(self, a: int, f: GradedFn | GradedSum) -> GradedSum:
        """Infinitesimal translation along coordinate a: psi -> -d psi / dz_a."""
        return GradedSum(self.n, {m: -p.diff(a) for m, p in _parts(f)})

    def translate_sigma(self, a: int, f: GradedFn | GradedSum) -> GradedSum:
        out = GradedSum(self.n)
        for m, p in _parts(f):
            s = self.op_sigma(GradedFn(m, p))
            t = self.op_sigma(GradedFn(m, -s.psi.diff(a)))
            out = out + GradedSum.of(t)
        return out


def _parts(f) -> list[tuple[int, MPoly]]:
    if isinstance(f, GradedFn):
        return [(f.m, f.psi)]
    return f.items()


# -- bases of the graded pieces -------------------------------------------

def derivative_span(Q: MPoly) -> list[MPoly]:
    """Basis of the span of all partial derivatives of Q (equivalently of its translates)."""
    seen = {Q}
    frontier = [Q]
    allp = [Q]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(p.nvars):
                d = p.diff(i)
                if not d.is_zero():
                    # normalize by leading coefficient to detect repeats cheaply
                    lc = Fraction(d.leading_term()[1])
                    d = d.scale(1 / lc)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
                        allp.append(d)
        frontier = nxt
    return poly_basis(sorted(allp, key=lambda p: -p.degree()))


def grade_basis(vq: VQPair, m: int, o1: Optional[list[MPoly]] = None) -> list[MPoly]:
    """Basis of grade m: span of m-fold products of the grade-1 space."""
    n = vq.nvars
    if m == 0:
        return [MPoly.const(n, 1)]
    o1 = o1 if o1 is not None else derivative_span(vq.Q)
    if m == 1:
        return list(o1)
    prods = (_prod(c, n) for c in combinations_with_replacement(o1, m))
    return poly_basis(prods)


def _prod(ps, n):
    out = MPoly.const(n, 1)
    for p in ps:
        out = out * p
    return out


def monomial_basis(nvars: int, maxdeg: int) -> list[MPoly]:
    out = []

    def rec(prefix, left, i):
        if i == nvars:
            out.append(MPoly.monomial(prefix))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k, i + 1)

    rec([], maxdeg, 0)
    return out


# -- verifications ----------------------------------------------------------

def _diff_report(identity: str, m: int, psi: MPoly, diff: GradedSum) -> dict:
    return {"identity": identity, "grade": m, "basis_element": psi.to_dict(), "difference": diff.to_dict()}


def verify_sl2(vq: VQPair, delta, mmax: int, *, check_EF: bool = True,
               bases: Optional[dict] = None) -> dict:
    """Check [H,E] = 2E, [H,F] = -2F and, if requested, [E,F] = H on each grade."""
    model = SL2Model(vq, delta)
    o1 = derivative_span(vq.Q)
    report = {"mmax": mmax, "grades": [], "ok": True, "failures": []}
    for m in range(mmax + 1):
        t0 = time.time()
        basis = bases[m] if bases and m in bases else grade_basis(vq, m, o1)
        counts = {"HE": 0, "HF": 0, "EF": 0}
        for psi in basis:
            f = GradedFn(m, psi)
            E, F = model.rho_E(f), model.rho_F(f)
            H = model.rho_H(f)
            he = model.rho_H(E) - model.rho_E(H) - E.scale(2)
            hf = model.rho_H(F) - model.rho_F(H) + F.scale(2)
            checks = [("HE", he), ("HF", hf)]
            if check_EF:
                ef = model.rho_E(F) - model.rho_F(E) - H
                checks.append(("EF", ef))
            for name, d in checks:
                if d.is_zero():
                    counts[name] += 1
                else:
                    report["ok"] = False
                    if len(report["failures"]) < 3:
                        report["failures"].append(_diff_report(name, m, psi, d))
        report["grades"].append({"m": m, "dim": len(basis), "passed": counts,
                                 "seconds": round(time.time() - t0, 3)})
    return report


def verify_ladder(vq: VQPair, delta, mmax: int) -> dict:
    from .bernstein import bernstein_by_product_formula

    model = SL2Model(vq, delta)
    B = bernstein_by_product_formula(vq)
    n = vq.nvars
    out = {"up": [], "down": [], "ok": True}
    for m in range(mmax + 1):
        r = model.rho_F(GradedFn(m, MPoly.const(n, 1)))
        ok = r == GradedSum(n, {m + 1: MPoly.const(n, 1)})
        out["up"].append({"m": m, "ok": ok})
        out["ok"] &= ok
    for m in range(1, mmax + 1):
        r = model.rho_F(GradedFn(m, model.Qpow(m)))
        expected = model.Qpow(m - 1).scale(-model.delta(m - 1) * B(m))
        ok = r.component(m - 1) == expected and B(m) != 0
        out["down"].append({"m": m, "B(m)": str(B(m)), "ok": ok})
        out["ok"] &= ok
    return out


def _vec(f: GradedSum) -> dict:
    return {(m, e): c for m, p in f.parts.items() for e, c in p.terms.items()}


def closure_dims(vq: VQPair, delta, mmax: int, start: GradedFn, *, with_k: bool = True) -> dict[int, int]:
    """Dimensions per grade of the span reached from ``start``.

    Generators are rho(E), rho(F) and, when ``with_k``, the infinitesimal
    translations and their sigma-conjugates; results are truncated to
    grades <= mmax + 1.
    """
    model = SL2Model(vq, delta)
    n = vq.nvars
    top = mmax + 1
    basis = IncrementalBasis()
    queue = [GradedSum.of(start)]
    basis.add(_vec(queue[0]), queue[0])
    gens: list[Callable] = [model.rho_E, model.rho_F]
    if with_k:
        for a in range(n):
            gens.append(lambda f, a=a: model.translate(a, f))
            gens.append(lambda f, a=a: model.translate_sigma(a, f))
    while queue:
        v = queue.pop()
        for g in gens:
            w = g(v)
            w = GradedSum(n, {m: p for m, p in w.parts.items() if m <= top})
            if not w.is_zero() and basis.add(_vec(w), w):
                queue.append(w)
    return {m: _pure_grade_dim(basis, m) for m in range(mmax + 1)}


def _pure_grade_dim(basis: IncrementalBasis, m: int) -> int:
    """dim(span intersected with grade m) = dim span - rank of the projection to other grades."""
    rows = list(basis.echelon.values())
    proj = IncrementalBasis()
    for r in rows:
        proj.add({k: c for k, c in r.items() if k[0] != m})
    return len(rows) - len(proj)


def verify_ladder_connectivity(vq: VQPair, delta, mmax: int, start: Optional[GradedFn] = None) -> dict:
    """Reached dimensions per grade versus the grade dimensions, with and without the translations."""
    start = start or GradedFn(0, MPoly.const(vq.nvars, 1))
    o1 = derivative_span(vq.Q)
    dims = {m: len(grade_basis(vq, m, o1)) for m in range(mmax + 1)}
    full = closure_dims(vq, delta, mmax, start, with_k=True)
    sl2 = closure_dims(vq, delta, mmax, start, with_k=False)
    return {"ok": full == dims, "grade_dims": dims, "reached": full, "reached_sl2_only": sl2}


def verify_adjointness_rank1(mmax: int) -> dict:
    """<rho(E) f, g> = -<f, rho(F) g> for V = C with |z^j|_m^2 = 1/C(4m, j) and weights 1/c_m."""
    from .analytic import seq_c
    from .catalog import resolve
    from .hc import solve_delta

    vq = resolve("case1:n=1").vq()
    sol = solve_delta(vq, max(mmax + 1, 3))
    c = seq_c(vq, mmax + 2)
    model = SL2Model(vq, sol.deltas)

    def ip(f: GradedSum, g: GradedSum) -> Fraction:
        tot = Fraction(0)
        for m, p in f.parts.items():
            q = g.component(m)
            for e, a in p.terms.items():
                b = q.terms.get(e)
                if b:
                    tot += Fraction(a) * Fraction(b) / (comb(4 * m, e[0]) * c[m])
        return tot

    basis = [(m, j) for m in range(mmax + 1) for j in range(4 * m + 1)]
    bad = []
    pairs = 0
    for (m1, j1) in basis:
        f = GradedSum(1, {m1: MPoly.monomial((j1,))})
        Ef = model.rho_E(f)
        for (m2, j2) in basis:
            g = GradedSum(1, {m2: MPoly.monomial((j2,))})
            lhs = ip(Ef, g)
            rhs = -ip(f, model.rho_F(g))
            pairs += 1
            if lhs != rhs:
                bad.append({"f": [m1, j1], "g": [m2, j2], "lhs": str(lhs), "rhs": str(rhs)})
    return {"ok": not bad, "pairs": pairs, "mismatches": bad[:5], "c": [str(x) for x in c[:mmax + 2]]}
