"""Exact sparse multivariate polynomials, rational functions and
constant-coefficient differential operators over the rationals.

Coefficients are stored as ``int`` or :class:`fractions.Fraction`; both are
exact, and integer-only polynomials stay on the fast ``int`` path.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rat = Union[int, Fraction]
Exp = tuple[int, ...]


class DimensionError(ValueError):
    pass


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def as_rat(c) -> Rat:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return as_rat(Fraction(c))
    if isinstance(c, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    return as_rat(Fraction(c))


def rat_str(c: Rat) -> str:
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def grlex_key(e: Exp) -> tuple:
    return (sum(e), e)


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class MPoly:
    """Sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero exact coefficients.  Instances
    are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exp, Rat] | None = None, *, _trusted=False):
        self.nvars = nvars
        if _trusted:
            self.terms = terms
            return
        clean: dict[Exp, Rat] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = as_rat(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        c = as_rat(c)
        return cls(nvars, {(0,) * nvars: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "MPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1}, _trusted=True)

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "MPoly":
        return cls(len(e), {tuple(e): c})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "MPoly":
        n = len(coeffs)
        p = {}
        for i, c in enumerate(coeffs):
            c = as_rat(c)
            if c:
                e = [0] * n
                e[i] = 1
                p[tuple(e)] = c
        const = as_rat(const)
        if const:
            p[(0,) * n] = const
        return cls(n, p, _trusted=True)

    # -- basic queries --------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coeff(self, e: Sequence[int]) -> Fraction:
        return Fraction(self.terms.get(tuple(e), 0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.nvars)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[Exp, Rat]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exp, Rat]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}, _trusted=True)

    def homogeneous_parts(self) -> dict[int, "MPoly"]:
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: MPoly(self.nvars, t, _trusted=True) for d, t in out.items()}

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "MPoly"):
        if other.nvars != self.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = dict(other.terms), self.terms
        else:
            a, b = dict(self.terms), other.terms
        for e, c in b.items():
            v = a.get(e, 0) + c
            if v:
                a[e] = v
            else:
                a.pop(e, None)
        return MPoly(self.nvars, a, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MPoly":
        c = as_rat(c)
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly(self.nvars, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exp, Rat] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MPoly(self.nvars, {e: c for e, c in out.items() if c}, _trusted=True)

    def __rmul__(self, other) -> "MPoly":
        return self.scale(other)

    def __truediv__(self, c) -> "MPoly":
        if isinstance(c, MPoly):
            return exact_div(self, c)
        return self.scale(Fraction(1) / Fraction(c))

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and evaluation ----------------------------------------
    def diff(self, i: int, k: int = 1) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                f = 1
                for j in range(k):
                    f *= e[i] - j
                ne = list(e)
                ne[i] -= k
                out[tuple(ne)] = c * f
        return MPoly(self.nvars, out, _trusted=True)

    def gradient(self) -> list["MPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pows: list[dict[int, object]] = [dict() for _ in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    cache = pows[i]
                    v = cache.get(k)
                    if v is None:
                        v = point[i] ** k
                        cache[k] = v
                    t = t * v
            total = total + t
        return total

    def partial_eval(self, assignment: Mapping[int, Rat]) -> "MPoly":
        """Substitute constants for some variables, keeping nvars."""
        out: dict[Exp, Rat] = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, v in assignment.items():
                if e[i]:
                    c = c * as_rat(v) ** e[i]
                    ne[i] = 0
            if c:
                t = tuple(ne)
                out[t] = out.get(t, 0) + c
        return MPoly(self.nvars, {e: c for e, c in out.items() if c}, _trusted=True)

    def embed(self, nvars: int, offset: int) -> "MPoly":
        """Place this polynomial's variables at positions offset..offset+self.nvars."""
        if offset + self.nvars > nvars:
            raise DimensionError("embedding does not fit")
        pre, post = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return MPoly(nvars, {pre + e + post: c for e, c in self.terms.items()}, _trusted=True)

    def restrict(self, start: int, stop: int) -> "MPoly":
        """Inverse of :meth:`embed`; the polynomial must only involve vars in [start, stop)."""
        out = {}
        for e, c in self.terms.items():
            if any(e[:start]) or any(e[stop:]):
                raise DimensionError("polynomial involves variables outside the range")
            out[e[start:stop]] = c
        return MPoly(stop - start, out, _trusted=True)

    def map_vars(self, perm: Sequence[int], nvars: int | None = None) -> "MPoly":
        """Send variable i to variable perm[i]."""
        nv = self.nvars if nvars is None else nvars
        out: dict[Exp, Rat] = {}
        for e, c in self.terms.items():
            ne = [0] * nv
            for i, k in enumerate(e):
                ne[perm[i]] += k
            t = tuple(ne)
            out[t] = out.get(t, 0) + c
        return MPoly(nv, {e: c for e, c in out.items() if c}, _trusted=True)

    def content_exponent(self) -> Exp:
        """Componentwise minimum exponent (the largest monomial factor)."""
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    def shift_exponent(self, d: Exp, sign: int = -1) -> "MPoly":
        return MPoly(
            self.nvars,
            {tuple(x + sign * y for x, y in zip(e, d)): c for e, c in self.terms.items()},
            _trusted=True,
        )

    # -- serialization and display --------------------------------------
    def to_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"e": list(e), "c": rat_str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "MPoly":
        return cls(int(d["nvars"]), {tuple(t["e"]): Fraction(t["c"]) for t in d["terms"]})

    @classmethod
    def from_json(cls, s: str) -> "MPoly":
        return cls.from_dict(json.loads(s))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"z{i}" if k == 1 else f"z{i}^{k}" for i, k in enumerate(e) if k
            )
            cs = str(Fraction(c))
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_sum(polys: Iterable[MPoly], nvars: int) -> MPoly:
    acc: dict[Exp, Rat] = {}
    for p in polys:
        if p.nvars != nvars:
            raise DimensionError("nvars mismatch in sum")
        for e, c in p.terms.items():
            acc[e] = acc.get(e, 0) + c
    return MPoly(nvars, {e: c for e, c in acc.items() if c}, _trusted=True)


def poly_prod(polys: Iterable[MPoly], nvars: int) -> MPoly:
    out = MPoly.const(nvars, 1)
    for p in polys:
        out = out * p
    return out


def _neg_key(e: Exp) -> tuple:
    return (-sum(e), tuple(-x for x in e))


def divmod_exact(p: MPoly, d: MPoly) -> tuple[MPoly, MPoly]:
    """Multivariate division by leading terms in grlex order.

    Returns ``(q, r)`` with ``p = q*d + r`` where no term of ``r`` is
    divisible by the leading monomial of ``d``.
    """
    p._check(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    le, lc = d.leading_term()
    lc = Fraction(lc)
    rem = dict(p.terms)
    heap = [_neg_key(e) for e in rem]
    heapq.heapify(heap)
    q: dict[Exp, Rat] = {}
    r: dict[Exp, Rat] = {}
    dterms = list(d.terms.items())
    while heap:
        k = heapq.heappop(heap)
        e = tuple(-x for x in k[1])
        c = rem.pop(e, 0)
        if not c:
            continue
        while heap and heap[0] == k:
            heapq.heappop(heap)
        if all(a >= b for a, b in zip(e, le)):
            qe = tuple(a - b for a, b in zip(e, le))
            qc = as_rat(c / lc)
            q[qe] = q.get(qe, 0) + qc
            for de, dc in dterms:
                if de == le:
                    continue
                ne = tuple(a + b for a, b in zip(qe, de))
                v = rem.get(ne, 0) - qc * dc
                if ne not in rem:
                    heapq.heappush(heap, _neg_key(ne))
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        else:
            r[e] = c
    return (
        MPoly(p.nvars, {e: c for e, c in q.items() if c}, _trusted=True),
        MPoly(p.nvars, r, _trusted=True),
    )


def exact_div(p: MPoly, d: MPoly) -> MPoly:
    q, r = divmod_exact(p, d)
    if not r.is_zero():
        raise NotDivisibleError(f"nonzero remainder with {len(r)} terms")
    return q


def divides(d: MPoly, p: MPoly) -> bool:
    return divmod_exact(p, d)[1].is_zero()


class RatFn:
    """Quotient ``num/den`` of polynomials, reduced by common monomial content
    and with the leading coefficient of ``den`` scaled to one."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, *, normalize_full: bool = False):
        if den is None:
            den = MPoly.const(num.nvars, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, MPoly.const(num.nvars, 1)
            return
        m = tuple(min(a, b) for a, b in zip(num.content_exponent(), den.content_exponent()))
        if any(m):
            num, den = num.shift_exponent(m), den.shift_exponent(m)
        if normalize_full and not den.is_constant():
            num, den = _gcd_reduce(num, den)
        lc = Fraction(den.leading_term()[1])
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num, self.den = num, den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_poly(cls, p: MPoly) -> "RatFn":
        return cls(p)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def to_poly(self) -> MPoly:
        if self.den.is_constant():
            return self.num.scale(1 / self.den.constant_term())
        q, r = divmod_exact(self.num, self.den)
        if not r.is_zero():
            raise NotDivisibleError("rational function is not a polynomial")
        return q

    def _co(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            return other
        if isinstance(other, MPoly):
            return RatFn(other)
        return RatFn(MPoly.const(self.nvars, other))

    def __add__(self, other) -> "RatFn":
        o = self._co(other)
        if self.den == o.den:
            return RatFn(self.num + o.num, self.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den)

    def __sub__(self, other) -> "RatFn":
        return self + (-self._co(other))

    def __mul__(self, other) -> "RatFn":
        o = self._co(other)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFn":
        o = self._co(other)
        return RatFn(self.num * o.den, self.den * o.num)

    def __pow__(self, k: int) -> "RatFn":
        if k < 0:
            return RatFn(self.den ** (-k), self.num ** (-k))
        return RatFn(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        o = self._co(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RatFn is unhashable (equality is by cross-multiplication)")

    def evaluate(self, point: Sequence):
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at point")
        n = self.num.evaluate(point)
        if isinstance(n, int) and isinstance(d, (int, Fraction)):
            return Fraction(n) / d
        return n / d

    def diff(self, i: int) -> "RatFn":
        n, d = self.num, self.den
        return RatFn(n.diff(i) * d - n * d.diff(i), d * d)

    def normalized(self) -> "RatFn":
        return RatFn(self.num, self.den, normalize_full=True)

    def __repr__(self) -> str:
        if self.den.is_constant():
            return repr(self.to_poly())
        return f"({self.num!r}) / ({self.den!r})"


def _gcd_reduce(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    # full gcd is only requested on demand, so the sympy import stays lazy
    import sympy

    gens = sympy.symbols(f"x0:{num.nvars}")

    def to_sp(p: MPoly):
        return sympy.Poly.from_dict({e: sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                                     for e, c in p.terms.items()}, *gens, domain="QQ")

    def from_sp(sp) -> MPoly:
        return MPoly(num.nvars, {e: Fraction(int(c.p), int(c.q)) for e, c in sp.as_dict().items()})

    a, b = to_sp(num), to_sp(den)
    g = sympy.gcd(a, b)
    if g.total_degree() == 0:
        return num, den
    return from_sp(sympy.div(a, g)[0]), from_sp(sympy.div(b, g)[0])


@dataclass(frozen=True)
class DiffOp:
    """Constant-coefficient operator whose symbol's variable i stands for d/dz_i."""

    symbol: MPoly

    @property
    def nvars(self) -> int:
        return self.symbol.nvars

    def __call__(self, p):
        if isinstance(p, RatFn):
            return apply_diffop_ratfn(self, p)
        return apply_diffop(self, p)

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        return DiffOp(self.symbol * other.symbol)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        return DiffOp(self.symbol + other.symbol)


def _falling(k: int, j: int) -> int:
    f = 1
    for t in range(j):
        f *= k - t
    return f


def apply_diffop(D: DiffOp, p: MPoly) -> MPoly:
    """Apply D = sum d_g d^g to p exactly."""
    if D.symbol.nvars != p.nvars:
        raise DimensionError("operator and polynomial have different nvars")
    out: dict[Exp, Rat] = {}
    get = out.get
    ops = list(D.symbol.terms.items())
    supp = [tuple(i for i, k in enumerate(g) if k) for g, _ in ops]
    for e, c in p.terms.items():
        for (g, dc), idx in zip(ops, supp):
            f = dc * c
            ok = True
            for i in idx:
                gi, ei = g[i], e[i]
                if ei < gi:
                    ok = False
                    break
                for t in range(gi):
                    f *= ei - t
            if not ok:
                continue
            ne = tuple(a - b for a, b in zip(e, g))
            out[ne] = get(ne, 0) + f
    return MPoly(p.nvars, {e: c for e, c in out.items() if c}, _trusted=True)


def apply_diffop_ratfn(D: DiffOp, f: RatFn) -> RatFn:
    """Apply D to a rational function with quotient-rule bookkeeping.

    Derivatives of ``N/den^j`` are kept in the form ``N'/den^(j+1)`` so the
    denominator stays a power of the original one.
    """
    if D.symbol.nvars != f.nvars:
        raise DimensionError("operator and function have different nvars")
    den = f.den
    dden = den.gradient()
    cache: dict[Exp, tuple[MPoly, int]] = {(0,) * f.nvars: (f.num, 0)}

    def deriv(g: Exp) -> tuple[MPoly, int]:
        if g in cache:
            return cache[g]
        i = max(j for j, k in enumerate(g) if k)
        prev = list(g)
        prev[i] -= 1
        N, j = deriv(tuple(prev))
        res = (N.diff(i) * den - N * dden[i] * (j + 1), j + 1)
        cache[g] = res
        return res

    terms = [(deriv(g), c) for g, c in D.symbol.terms.items()]
    if not terms:
        return RatFn(MPoly.zero(f.nvars))
    top = max(j for (_, j), _ in terms)
    num = poly_sum(((N * den ** (top - j)).scale(c) for (N, j), c in terms), f.nvars)
    return RatFn(num, den ** (top + 1))


def euler_apply(p: MPoly) -> MPoly:
    """Euler operator sum z_i d/dz_i: scales each term by its degree."""
    return MPoly(p.nvars, {e: c * sum(e) for e, c in p.terms.items() if sum(e)}, _trusted=True)


def substitute(p: MPoly, images: Sequence[RatFn | MPoly]) -> RatFn:
    """Compose p with rational images, p(images[0], ..., images[n-1]).

    Images sharing a denominator are grouped so the common denominator is
    raised only to the largest group degree that occurs.
    """
    if len(images) != p.nvars:
        raise DimensionError(f"need {p.nvars} images, got {len(images)}")
    ims = [im if isinstance(im, RatFn) else RatFn(im) for im in images]
    nv = ims[0].nvars if ims else 0
    if p.is_zero():
        return RatFn(MPoly.zero(nv))
    groups: list[tuple[MPoly, list[int]]] = []
    for i, im in enumerate(ims):
        if im.den.is_constant():
            continue
        for d, idx in groups:
            if d == im.den:
                idx.append(i)
                break
        else:
            groups.append((im.den, [i]))
    gdeg = [max(sum(e[i] for i in idx) for e in p.terms) for _, idx in groups]
    # numerators with constant denominators folded in
    nums = []
    for im in ims:
        if im.den.is_constant():
            nums.append(im.num.scale(1 / im.den.constant_term()))
        else:
            nums.append(im.num)
    powcache: dict[tuple[int, int], MPoly] = {}

    def npow(i: int, k: int) -> MPoly:
        key = (i, k)
        if key not in powcache:
            powcache[key] = nums[i] ** k if k <= 1 else npow(i, k - 1) * nums[i]
        return powcache[key]

    dpow: dict[tuple[int, int], MPoly] = {}

    def gpow(g: int, k: int) -> MPoly:
        if (g, k) not in dpow:
            dpow[(g, k)] = groups[g][0] ** k
        return dpow[(g, k)]

    acc = []
    for e, c in p.terms.items():
        t = MPoly.const(nv, c)
        for i, k in enumerate(e):
            if k:
                t = t * npow(i, k)
        for g, (_, idx) in enumerate(groups):
            extra = gdeg[g] - sum(e[i] for i in idx)
            if extra:
                t = t * gpow(g, extra)
        acc.append(t)
    num = poly_sum(acc, nv)
    den = MPoly.const(nv, 1)
    for g in range(len(groups)):
        if gdeg[g]:
            den = den * gpow(g, gdeg[g])
    return RatFn(num, den)


def compose(p: MPoly, images: Sequence[MPoly]) -> MPoly:
    """Polynomial composition p(images)."""
    return substitute(p, [RatFn(q) for q in images]).to_poly()


def linear_change(p: MPoly, matrix: Sequence[Sequence]) -> MPoly:
    """p(M z) for a rational matrix M (rows give the image of each variable)."""
    n = len(matrix[0]) if matrix else p.nvars
    return compose(p, [MPoly.linear(row) for row in matrix]) if n else p
