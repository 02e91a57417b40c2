"""Simple complex Jordan algebras in rational coordinates and the composite
pairs (V, Q) with Q a product of determinant powers of total degree four."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .polycore import MPoly, RatFn, DiffOp, exact_div, linear_change

Vec = tuple  # tuple of Fractions


class SingularError(ZeroDivisionError):
    pass


def _mat_det_poly(M: list[list[MPoly]]) -> MPoly:
    """Fraction-free (Bareiss) determinant of a matrix of polynomials."""
    n = len(M)
    a = [row[:] for row in M]
    sign = 1
    prev = MPoly.const(a[0][0].nvars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return MPoly.zero(prev.nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def pfaffian(M: list[list]) -> object:
    """Pfaffian by expansion along the first row; entries may be numbers or MPoly."""
    n = len(M)
    if n == 0:
        return 1
    if n % 2:
        return 0
    total = 0
    for j in range(1, n):
        if M[0][j] == 0 or (isinstance(M[0][j], MPoly) and M[0][j].is_zero()):
            continue
        rest = [i for i in range(n) if i not in (0, j)]
        sub = [[M[a][b] for b in rest] for a in rest]
        term = M[0][j] * pfaffian(sub)
        total = total + term if (j % 2 == 1) else total - term
    return total


@dataclass(frozen=True, eq=False)
class JordanAlgebra:
    """A simple Jordan algebra in flattened rational coordinates.

    kind is one of ``scalar``, ``spin``, ``sym``, ``full``, ``skew``; ``size``
    is the vector dimension for spin, the matrix size for the matrix kinds and
    1 for scalar.
    """

    kind: str
    size: int
    dim: int
    rank: int
    d: int
    name: str

    # -- coordinates ----------------------------------------------------
    @cached_property
    def labels(self) -> list[tuple]:
        N = self.size
        if self.kind in ("scalar", "spin"):
            return [(i,) for i in range(self.dim)]
        if self.kind == "sym":
            return [(i, j) for i in range(N) for j in range(i, N)]
        if self.kind == "full":
            return [(i, j) for i in range(N) for j in range(N)]
        return [(i, j) for i in range(N) for j in range(i + 1, N)]

    def to_matrix(self, x: Sequence) -> list[list]:
        N = self.size
        zero = 0 * x[0] if len(x) else 0
        M = [[zero] * N for _ in range(N)]
        for (i, j), v in zip(self.labels, x):
            M[i][j] = v
            if self.kind == "sym":
                M[j][i] = v
            elif self.kind == "skew":
                M[j][i] = -v
        return M

    def from_matrix(self, M) -> Vec:
        return tuple(M[i][j] for i, j in self.labels)

    @cached_property
    def J(self) -> list[list[int]]:
        h = self.size // 2
        return [[(1 if j == i + h else -1 if i == j + h else 0) for j in range(self.size)] for i in range(self.size)]

    @cached_property
    def e(self) -> Vec:
        one, z = Fraction(1), Fraction(0)
        if self.kind in ("scalar", "spin"):
            return (one,) + (z,) * (self.dim - 1)
        N = self.size
        if self.kind == "skew":
            M = [[-Fraction(v) for v in row] for row in self.J]
        else:
            M = [[one if i == j else z for j in range(N)] for i in range(N)]
        return self.from_matrix(M)

    # -- product --------------------------------------------------------
    def product(self, x: Sequence, y: Sequence) -> Vec:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match algebra dimension")
        if self.kind == "scalar":
            return (x[0] * y[0],)
        if self.kind == "spin":
            head = x[0] * y[0] + sum(a * b for a, b in zip(x[1:], y[1:]))
            return (head,) + tuple(x[0] * b + y[0] * a for a, b in zip(x[1:], y[1:]))
        X, Y = self.to_matrix(x), self.to_matrix(y)
        if self.kind == "skew":
            XJ, YJ = _mm(X, self.J), _mm(Y, self.J)
            A, B = _mm(XJ, Y), _mm(YJ, X)
        else:
            A, B = _mm(X, Y), _mm(Y, X)
        half = Fraction(1, 2)
        return self.from_matrix([[(a + b) * half for a, b in zip(ra, rb)] for ra, rb in zip(A, B)])

    def square(self, x: Sequence) -> Vec:
        return self.product(x, x)

    def mult_matrix(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of L(x): y -> x o y, columns indexed by basis vectors."""
        cols = [self.product(x, _unit(self.dim, b)) for b in range(self.dim)]
        return [[cols[b][a] for b in range(self.dim)] for a in range(self.dim)]

    def quadratic_rep(self, x: Sequence) -> list[list[Fraction]]:
        L = self.mult_matrix(x)
        L2 = self.mult_matrix(self.square(x))
        LL = linalg.matmul(L, L)
        return [[2 * a - b for a, b in zip(r1, r2)] for r1, r2 in zip(LL, L2)]

    # -- determinant and derived structure -------------------------------
    @cached_property
    def det_poly(self) -> MPoly:
        n = self.dim
        v = [MPoly.var(n, i) for i in range(n)]
        if self.kind == "scalar":
            return v[0]
        if self.kind == "spin":
            p = v[0] * v[0]
            for t in v[1:]:
                p = p - t * t
            return p
        M = self.to_matrix(v)
        if self.kind == "skew":
            pf = pfaffian(M)
            pe = pfaffian(self.to_matrix(list(self.e)))
            return pf.scale(Fraction(1) / pe)
        return _mat_det_poly(M)

    def det(self, x: Sequence) -> Fraction:
        return Fraction(self.det_poly.evaluate(list(x)))

    @cached_property
    def trace_gram(self) -> list[list[Fraction]]:
        """Gram matrix of the trace form, -D_a D_b log(det) at e."""
        D = self.det_poly
        e = list(self.e)
        grad = [D.diff(a) for a in range(self.dim)]
        g = [Fraction(p.evaluate(e)) for p in grad]
        return [
            [g[a] * g[b] - Fraction(grad[a].diff(b).evaluate(e)) for b in range(self.dim)]
            for a in range(self.dim)
        ]

    @cached_property
    def trace_gram_inv(self) -> list[list[Fraction]]:
        return linalg.inverse(self.trace_gram)

    def trace(self, x: Sequence) -> Fraction:
        e = list(self.e)
        return sum((Fraction(self.det_poly.diff(a).evaluate(e)) * x[a] for a in range(self.dim)), Fraction(0))

    def trace_form(self, x: Sequence, y: Sequence) -> Fraction:
        G = self.trace_gram
        return sum((x[a] * G[a][b] * y[b] for a in range(self.dim) for b in range(self.dim) if G[a][b]), Fraction(0))

    @cached_property
    def adjoint_polys(self) -> list[MPoly]:
        """Polynomial adjoint: x^{-1} = adj(x)/det(x)."""
        grad = self.det_poly.gradient()
        Gi = self.trace_gram_inv
        out = []
        for a in range(self.dim):
            p = MPoly.zero(self.dim)
            for b in range(self.dim):
                if Gi[a][b]:
                    p = p + grad[b].scale(Gi[a][b])
            out.append(p)
        return out

    def inverse(self, x: Sequence) -> Vec:
        dx = self.det(x)
        if dx == 0:
            raise SingularError(f"element is singular in {self.name}")
        return tuple(Fraction(p.evaluate(list(x))) / dx for p in self.adjoint_polys)

    def inverse_map(self) -> list[RatFn]:
        return [RatFn(p, self.det_poly) for p in self.adjoint_polys]

    @property
    def symbol_scale(self) -> int:
        # Spin factors use the Euclidean symbol t1^2 - sum t_j^2, four times
        # the trace-normalized one.
        return 4 if self.kind == "spin" else 1

    @cached_property
    def dual_symbol(self) -> MPoly:
        """Symbol of det(d/dz) in the trace-form duality, times symbol_scale."""
        p = linear_change(self.det_poly, self.trace_gram_inv)
        return p.scale(self.symbol_scale)

    def b_monic(self, s) -> Fraction:
        """Monic Bernstein polynomial of det: prod_l (s + (l-1) d / 2)."""
        out = Fraction(1)
        for l in range(self.rank):
            out *= Fraction(s) + Fraction(l * self.d, 2)
        return out

    def b_poly_value(self, s) -> Fraction:
        return self.symbol_scale * self.b_monic(s)

    def random_element(self, rng: random.Random, lo: int = -9, hi: int = 9, den: int = 5) -> Vec:
        return tuple(Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(self.dim))

    def __repr__(self) -> str:
        return f"JordanAlgebra({self.name})"


def _unit(n: int, i: int) -> Vec:
    return tuple(Fraction(int(j == i)) for j in range(n))


def _mm(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(p):
            s = 0
            for k in range(m):
                a = Ai[k]
                if a:
                    b = B[k][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


_ALG_CACHE: dict[tuple[str, int], JordanAlgebra] = {}


def make_algebra(kind: str, size: int = 1) -> JordanAlgebra:
    """Construct (and memoize) a simple Jordan algebra.

    ``scalar``: C.  ``spin``: C^size with the Lorentzian quadratic form, rank 2.
    ``sym``/``full``: size x size symmetric / all matrices.  ``skew``:
    size x size skew matrices (size even), rank size/2.
    """
    key = (kind, size)
    if key in _ALG_CACHE:
        return _ALG_CACHE[key]
    if kind == "scalar":
        A = JordanAlgebra("scalar", 1, 1, 1, 0, "C")
    elif kind == "spin":
        if size < 2:
            raise ValueError("spin factor needs dimension >= 2")
        A = JordanAlgebra("spin", size, size, 2, size - 2, f"Spin({size})")
    elif kind == "sym":
        A = JordanAlgebra("sym", size, size * (size + 1) // 2, size, 1, f"Sym({size})")
    elif kind == "full":
        A = JordanAlgebra("full", size, size * size, size, 2, f"M({size})")
    elif kind == "skew":
        if size % 2:
            raise ValueError("skew algebra needs even matrix size")
        A = JordanAlgebra("skew", size, size * (size - 1) // 2, size // 2, 4, f"Skew({size})")
    else:
        raise ValueError(f"unknown Jordan algebra kind {kind!r}")
    _ALG_CACHE[key] = A
    return A


def parse_kind(token: str) -> JordanAlgebra:
    """Parse names such as ``Scalar``, ``Spin(3)``, ``Sym4``, ``Full4``, ``Skew8``."""
    t = token.strip().lower().replace(" ", "")
    if t in ("scalar", "c"):
        return make_algebra("scalar")
    for prefix, kind in (("spin", "spin"), ("sym", "sym"), ("full", "full"), ("m", "full"), ("skew", "skew")):
        if t.startswith(prefix):
            rest = t[len(prefix):].strip("()")
            if rest.isdigit():
                return make_algebra(kind, int(rest))
    raise ValueError(f"cannot parse Jordan algebra {token!r}")


@dataclass(frozen=True, eq=False)
class VQPair:
    """Composite pair V = sum V_i with Q = prod det_i^{k_i} of degree four."""

    factors: tuple[tuple[JordanAlgebra, int], ...]
    label: str = ""

    @property
    def nvars(self) -> int:
        return sum(A.dim for A, _ in self.factors)

    @cached_property
    def offsets(self) -> list[int]:
        out, o = [], 0
        for A, _ in self.factors:
            out.append(o)
            o += A.dim
        return out

    def blocks(self) -> list[tuple[JordanAlgebra, int, int]]:
        return [(A, k, o) for (A, k), o in zip(self.factors, self.offsets)]

    def split(self, x: Sequence) -> list[tuple]:
        return [tuple(x[o:o + A.dim]) for A, _, o in self.blocks()]

    @cached_property
    def Q(self) -> MPoly:
        p = MPoly.const(self.nvars, 1)
        for A, k, o in self.blocks():
            p = p * (A.det_poly ** k).embed(self.nvars, o)
        return p

    @cached_property
    def Q_dual(self) -> MPoly:
        p = MPoly.const(self.nvars, 1)
        for A, k, o in self.blocks():
            p = p * (A.dual_symbol ** k).embed(self.nvars, o)
        return p

    @cached_property
    def Q_op(self) -> DiffOp:
        return DiffOp(self.Q_dual)

    @property
    def kappa(self) -> int:
        """Product of the symbol scales; relates Q(d) to the trace-normalized operator."""
        out = 1
        for A, k in self.factors:
            out *= A.symbol_scale ** k
        return out

    @property
    def degree(self) -> int:
        return sum(A.rank * k for A, k in self.factors)

    @cached_property
    def eta(self) -> Fraction | None:
        vals = {Fraction(A.dim, A.rank * k) for A, k in self.factors}
        return vals.pop() if len(vals) == 1 else None

    @property
    def has_property_t(self) -> bool:
        return self.eta is not None

    @cached_property
    def e(self) -> Vec:
        out: tuple = ()
        for A, _ in self.factors:
            out += A.e
        return out

    def product(self, x: Sequence, y: Sequence) -> Vec:
        out: tuple = ()
        for (A, _, o) in self.blocks():
            out += A.product(x[o:o + A.dim], y[o:o + A.dim])
        return out

    def inverse(self, x: Sequence) -> Vec:
        out: tuple = ()
        for (A, _, o) in self.blocks():
            out += A.inverse(x[o:o + A.dim])
        return out

    def Qval(self, x: Sequence) -> Fraction:
        out = Fraction(1)
        for (A, k, o) in self.blocks():
            out *= A.det(x[o:o + A.dim]) ** k
        return out

    def random_element(self, rng: random.Random, **kw) -> Vec:
        out: tuple = ()
        for A, _ in self.factors:
            out += A.random_element(rng, **kw)
        return out

    @property
    def hc_rank(self) -> int:
        return sum(A.rank for A, _ in self.factors)

    def profile(self) -> list[tuple[int, int, int, int]]:
        """(n_i, r_i, k_i, d_i) per factor."""
        return [(A.dim, A.rank, k, A.d) for A, k in self.factors]

    def describe(self) -> str:
        parts = []
        for A, k in self.factors:
            parts.append(A.name if k == 1 else f"{A.name}^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"VQPair({self.label or self.describe()})"


class DegreeError(ValueError):
    pass


def build_vq(spec: Sequence[tuple], label: str = "") -> VQPair:
    """Build a composite pair from ``[(algebra_or_name, k), ...]``."""
    factors = []
    for A, k in spec:
        if isinstance(A, str):
            A = parse_kind(A)
        if int(k) < 1:
            raise ValueError("multiplicities must be positive")
        factors.append((A, int(k)))
    vq = VQPair(tuple(factors), label)
    if vq.degree != 4:
        raise DegreeError(f"deg Q = {vq.degree}, expected 4")
    return vq


def verify_axioms(vq: VQPair, samples: int = 10, seed: int = 0) -> dict:
    """Commutativity, the Jordan identity, the unit, and Q(x^{-1}) = 1/Q(x) on random points."""
    rng = random.Random(seed)
    e = vq.e
    fails: list[str] = []
    for _ in range(samples):
        x, y = vq.random_element(rng), vq.random_element(rng)
        if vq.product(x, y) != vq.product(y, x):
            fails.append("commutativity")
        x2 = vq.product(x, x)
        if vq.product(x2, vq.product(x, y)) != vq.product(x, vq.product(x2, y)):
            fails.append("jordan identity")
        if tuple(vq.product(e, x)) != tuple(Fraction(c) for c in x):
            fails.append("unit")
        q = vq.Qval(x)
        if q != vq.Q(x):
            fails.append("Q polynomial vs blockwise value")
        if q != 0:
            xi = vq.inverse(x)
            if vq.product(x, xi) != tuple(Fraction(c) for c in e) or vq.Qval(xi) != 1 / q:
                fails.append("inverse")
    if vq.Qval(e) != 1:
        fails.append("Q(e) = 1")
    return {"ok": not fails, "samples": samples, "failures": sorted(set(fails))}
