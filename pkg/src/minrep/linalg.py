"""Small exact linear algebra over the rationals (Gaussian elimination)."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .polycore import MPoly


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(A: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction] | None, int | None]:
    """Solve A x = b exactly.

    Returns ``(x, None)`` on success (free variables set to zero) or
    ``(None, i)`` where ``i`` is the first equation violated by the
    least-index consistent particular solution.
    """
    nvar = len(A[0]) if A else 0
    aug = [list(r) + [bb] for r, bb in zip(A, b)]
    R, piv = rref(aug)
    if nvar in piv:
        # inconsistent: find a solution of a maximal consistent prefix to name a witness row
        for k in range(1, len(A) + 1):
            Rk, pk = rref([list(r) + [bb] for r, bb in zip(A[:k], b[:k])])
            if nvar in pk:
                return None, k - 1
    x = [Fraction(0)] * nvar
    for row, c in zip(R, piv):
        x[c] = row[-1]
    return x, None


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    m = [[Fraction(x) for x in r] for r in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(M)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


def matvec(A, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in A]


class IncrementalBasis:
    """Grow a linearly independent set of sparse vectors (dicts) exactly.

    Keeps an echelon copy keyed by pivot so membership tests are cheap.
    """

    def __init__(self):
        self.echelon: dict[Hashable, dict] = {}
        self.order: list[Hashable] = []
        self.members: list = []

    def reduce(self, v: dict) -> dict:
        v = {k: Fraction(c) for k, c in v.items() if c}
        for p in self.order:
            c = v.get(p)
            if c:
                row = self.echelon[p]
                for k, x in row.items():
                    nv = v.get(k, 0) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, v: dict, payload=None) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r, key=_sort_key)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        # keep earlier rows reduced against the new pivot
        for q in self.order:
            row = self.echelon[q]
            c = row.get(p)
            if c:
                for k, x in r.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.echelon[p] = r
        self.order.append(p)
        self.members.append(payload if payload is not None else v)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def __len__(self) -> int:
        return len(self.order)


def _sort_key(k):
    if isinstance(k, tuple) and all(isinstance(x, int) for x in k):
        return (-sum(k), tuple(-x for x in k))
    return (0, k)


def poly_basis(polys: Iterable[MPoly]) -> list[MPoly]:
    """Select a linearly independent subset spanning the same space."""
    b = IncrementalBasis()
    for p in polys:
        b.add(p.terms, p)
    return b.members


def span_dim(polys: Iterable[MPoly]) -> int:
    return len(poly_basis(polys))
