"""The doubled algebra W = V + V with its involution, the triple operators
V_{a,b}, and the dimension bookkeeping of the five-step grading."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import linalg
from .jordan import VQPair
from .polycore import MPoly, compose


class ImplementationFault(RuntimeError):
    pass


Vec = tuple


@dataclass(frozen=True)
class WElem:
    x: Vec
    y: Vec

    def __add__(self, o: "WElem") -> "WElem":
        return WElem(_add(self.x, o.x), _add(self.y, o.y))

    def __sub__(self, o: "WElem") -> "WElem":
        return WElem(_sub(self.x, o.x), _sub(self.y, o.y))

    def scale(self, c) -> "WElem":
        return WElem(_scale(self.x, c), _scale(self.y, c))

    def flat(self) -> tuple:
        return tuple(self.x) + tuple(self.y)

    def is_zero(self) -> bool:
        return not any(self.x) and not any(self.y)


def _add(a, b):
    return tuple(Fraction(p) + q for p, q in zip(a, b))


def _sub(a, b):
    return tuple(Fraction(p) - q for p, q in zip(a, b))


def _scale(a, c):
    return tuple(Fraction(c) * p for p in a)


class DoubledAlgebra:
    """W = V + V with (x1,y1)(x2,y2) = (x1x2 - (y1 y2*)*, x1* y2 + (y1* x2*)*)."""

    def __init__(self, vq: VQPair):
        self.vq = vq
        self.n = vq.nvars

    @cached_property
    def e_vec(self) -> Vec:
        return tuple(Fraction(c) for c in self.vq.e)

    @cached_property
    def trace_coeffs(self) -> tuple:
        # <x, e> = D_x log Q(e)
        e = self.e_vec
        q = self.vq.Q(e)
        return tuple(Fraction(g(e)) / q for g in self.vq.Q.gradient())

    def pair_e(self, x: Sequence) -> Fraction:
        return sum((c * a for c, a in zip(self.trace_coeffs, x)), Fraction(0))

    def star(self, x: Sequence) -> Vec:
        """Reflection about the line through e: x* = 1/2 <x,e> e - x."""
        t = self.pair_e(x) / 2
        return tuple(t * a - b for a, b in zip(self.e_vec, x))

    def vmul(self, a: Sequence, b: Sequence) -> Vec:
        return tuple(Fraction(c) for c in self.vq.product(a, b))

    def mul(self, z1: WElem, z2: WElem) -> WElem:
        x1, y1, x2, y2 = z1.x, z1.y, z2.x, z2.y
        st, m = self.star, self.vmul
        x = _sub(m(x1, x2), st(m(y1, st(y2))))
        y = _add(m(st(x1), y2), st(m(st(y1), st(x2))))
        return WElem(x, y)

    def bar(self, z: WElem) -> WElem:
        return WElem(tuple(z.x), tuple(-c for c in self.star(z.y)))

    @property
    def unit_image(self) -> WElem:
        """e embedded as (e, 0)."""
        return WElem(self.e_vec, (Fraction(0),) * self.n)

    @property
    def s0(self) -> WElem:
        return WElem((Fraction(0),) * self.n, self.e_vec)

    def v_ab(self, a: WElem, b: WElem, z: WElem) -> WElem:
        """{a, b, z} = (a b-bar) z + (z b-bar) a - (z a-bar) b."""
        m, bar = self.mul, self.bar
        return m(m(a, bar(b)), z) + m(m(z, bar(b)), a) - m(m(z, bar(a)), b)

    def t_a(self, a: WElem, z: WElem) -> WElem:
        return self.v_ab(a, self.unit_image, z)

    def random(self, rng: random.Random, lo: int = -5, hi: int = 5, den: int = 3) -> WElem:
        def r():
            return Fraction(rng.randint(lo, hi), rng.randint(1, den))
        return WElem(tuple(r() for _ in range(self.n)), tuple(r() for _ in range(self.n)))

    def basis(self) -> list[WElem]:
        out = []
        for i in range(2 * self.n):
            v = [Fraction(0)] * (2 * self.n)
            v[i] = Fraction(1)
            out.append(WElem(tuple(v[: self.n]), tuple(v[self.n:])))
        return out

    @property
    def dim(self) -> int:
        return 2 * self.n


def structurable_defect(W: DoubledAlgebra, a, b, c, d, z) -> WElem:
    """[V_ab, V_cd] z - (V_{V_ab c, d} - V_{c, V_ba d}) z."""
    V = W.v_ab
    lhs = V(a, b, V(c, d, z)) - V(c, d, V(a, b, z))
    rhs = V(V(a, b, c), d, z) - V(c, V(b, a, d), z)
    return lhs - rhs


def verify_structurable_identity(vq: VQPair, samples: int = 20, seed: int = 0) -> dict:
    W = DoubledAlgebra(vq)
    rng = random.Random(seed)
    for i in range(samples):
        a, b, c, d, z = (W.random(rng) for _ in range(5))
        defect = structurable_defect(W, a, b, c, d, z)
        if not defect.is_zero():
            return {"ok": False, "samples": i + 1, "counterexample": {
                k: [str(t) for t in v.flat()] for k, v in zip("abcdz", (a, b, c, d, z))},
                "defect": [str(t) for t in defect.flat()]}
    return {"ok": True, "samples": samples, "dim_W": W.dim}


def verify_antiautomorphism(vq: VQPair, samples: int = 30, seed: int = 0) -> dict:
    W = DoubledAlgebra(vq)
    rng = random.Random(seed)
    for i in range(samples):
        z1, z2 = W.random(rng), W.random(rng)
        if W.bar(W.mul(z1, z2)) != W.mul(W.bar(z2), W.bar(z1)):
            return {"ok": False, "samples": i + 1}
        if W.bar(W.bar(z1)) != z1:
            return {"ok": False, "samples": i + 1, "reason": "bar is not an involution"}
    return {"ok": True, "samples": samples}


def skew_space(vq: VQPair) -> list[WElem]:
    """Basis of S = {z : z-bar = -z}, by exact kernel computation."""
    W = DoubledAlgebra(vq)
    cols = [(W.bar(b) + b).flat() for b in W.basis()]
    rows = [list(r) for r in zip(*cols)]
    R, piv = linalg.rref(rows)
    free = [j for j in range(W.dim) if j not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * W.dim
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        out.append(WElem(tuple(v[: W.n]), tuple(v[W.n:])))
    return out


def heisenberg_bracket(vq: VQPair, w1: WElem, w2: WElem) -> Fraction:
    """psi with w1 w2-bar - w2 w1-bar = psi(w1, w2) s0."""
    W = DoubledAlgebra(vq)
    z = W.mul(w1, W.bar(w2)) - W.mul(w2, W.bar(w1))
    s0 = W.s0
    if any(z.x):
        raise ImplementationFault("bracket has a nonzero first component")
    i = next(k for k, c in enumerate(s0.y) if c != 0)
    psi = z.y[i] / s0.y[i]
    if z != s0.scale(psi):
        raise ImplementationFault("bracket is not proportional to s0")
    return psi


# -- grading ---------------------------------------------------------------------

def translate_span(vq: VQPair, seed: int = 0, patience: int = 4) -> list[MPoly]:
    """Basis of span{Q(z - a)} from random shifts, stopping after `patience` idle draws."""
    rng = random.Random(seed)
    n = vq.nvars
    basis = linalg.IncrementalBasis()
    idle = 0
    while idle < patience:
        a = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        p = compose(vq.Q, [MPoly.var(n, i) - MPoly.const(n, c) for i, c in enumerate(a)])
        if basis.add(p.terms, payload=p):
            idle = 0
        else:
            idle += 1
    return list(basis.members)


def grading_dims(vq: VQPair, dim_k: Optional[int] = None, dim_g: Optional[int] = None, seed: int = 0) -> dict:
    """Dimensions of the homogeneous pieces of the translate span, degree j + 2 for p_j."""
    from .sl2rep import derivative_span

    span = translate_span(vq, seed)
    dims = {}
    for deg in range(5):
        parts = [p.homogeneous_part(deg) for p in span]
        dims[deg - 2] = linalg.span_dim(q for q in parts if not q.is_zero())
    dim_w = len(span)
    out = {
        "dim_V": vq.nvars,
        "dim_W_translates": dim_w,
        "dim_W_derivatives": len(derivative_span(vq.Q)),
        "p": dims,
        "graded": sum(dims.values()) == dim_w,
        "p0_by_difference": dim_w - 2 - 2 * vq.nvars,
    }
    if dim_k is not None and dim_g is not None:
        out["dim_k"] = dim_k
        out["dim_g"] = dim_g
        out["dim_g_minus_dim_k"] = dim_g - dim_k
        out["consistent"] = dim_g - dim_k == dim_w
        # g_{+-1} = W (dim 2n), g_{+-2} one-dimensional
        out["g"] = {-2: 1, -1: 2 * vq.nvars, 0: dim_g - 2 - 4 * vq.nvars, 1: 2 * vq.nvars, 2: 1}
        out["k"] = {-1: vq.nvars, 0: dim_k - 2 * vq.nvars, 1: vq.nvars}
    return out
