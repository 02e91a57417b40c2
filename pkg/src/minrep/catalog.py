"""Registry of the pairs (V, Q) studied here, addressed by case ids such as
``case1:n=3``, ``case2:p=2``, ``case3:sym4`` or ``mixed:2x3``."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .jordan import VQPair, build_vq, make_algebra


class UnknownCase(KeyError):
    pass


@dataclass(frozen=True)
class CaseEntry:
    case_id: str
    family: str  # "case1", "case2", "case3" or "other"
    V: str
    Q: str
    lie_k: str
    lie_g: str
    lie_gR: str
    dim_k: int
    dim_g: int
    factors: Optional[tuple] = None  # ((kind, size, k), ...); None for metadata-only rows
    note: str = ""
    param: dict = field(default_factory=dict)

    @property
    def computable(self) -> bool:
        return self.factors is not None

    def vq(self) -> VQPair:
        if self.factors is None:
            raise UnknownCase(f"{self.case_id} is metadata only")
        return build_vq([(make_algebra(kind, size), k) for kind, size, k in self.factors], self.case_id)

    @property
    def property_t(self) -> bool:
        return self.computable and self.vq().has_property_t

    def row(self) -> dict:
        out = {
            "case": self.case_id,
            "family": self.family,
            "V": self.V,
            "Q": self.Q,
            "k": self.lie_k,
            "g": self.lie_g,
            "g_R": self.lie_gR,
            "dim_k": self.dim_k,
            "dim_g": self.dim_g,
            "note": self.note,
        }
        if self.computable:
            vq = self.vq()
            out.update(
                n=vq.nvars,
                ranks=[A.rank for A, _ in vq.factors],
                mult=[k for _, k in vq.factors],
                eta=None if vq.eta is None else str(vq.eta),
                property_t=vq.has_property_t,
            )
        else:
            out.update(n=None, ranks=None, mult=None, eta=None, property_t=False)
        return out


def _so(n: int) -> int:
    return n * (n - 1) // 2


def _case1(n: int) -> CaseEntry:
    factors = (("scalar", 1, 4),) if n == 1 else (("spin", n, 2),)
    return CaseEntry(
        f"case1:n={n}", "case1", f"C^{n}", f"phi_{n}(z)^2",
        f"so({n + 2},C)", f"sl({n + 2},C)", f"sl({n + 2},R)",
        _so(n + 2), (n + 2) ** 2 - 1, factors, param={"n": n},
    )


def _case2(p: int, q: int) -> CaseEntry:
    fam = "case2" if p == q else "other"
    cid = f"case2:p={p}" if p == q else f"mixed:{p}x{q}"
    note = "" if p == q else "unequal ranks ratio; not property (T)"
    return CaseEntry(
        cid, fam, f"C^{p}+C^{q}", f"phi_{p}(z)phi_{q}(z')",
        f"so({p + 2},C)+so({q + 2},C)", f"so({p + q + 4},C)", f"so({p + 2},{q + 2})",
        _so(p + 2) + _so(q + 2), _so(p + q + 4),
        (("spin", p, 1), ("spin", q, 1)), note, param={"p": p, "q": q},
    )


_CASE3 = {
    "sym4": CaseEntry("case3:sym4", "case3", "Sym(4,C)", "det z", "sp(8,C)", "e6", "e6(6)", 36, 78,
                      (("sym", 4, 1),), param={"d": 1}),
    "full4": CaseEntry("case3:full4", "case3", "M(4,C)", "det z", "sl(8,C)", "e7", "e7(7)", 63, 133,
                       (("full", 4, 1),), param={"d": 2}),
    "skew8": CaseEntry("case3:skew8", "case3", "Skew(8,C)", "Pfaff(z)", "so(16,C)", "e8", "e8(8)", 120, 248,
                       (("skew", 8, 1),), param={"d": 4}),
}

_OTHER = {
    "sym3+c": CaseEntry("sym3+c", "other", "Sym(3,C)+C", "det z.z'", "sp(6,C)+sl(2,C)", "f4", "f4(4)", 24, 52,
                        (("sym", 3, 1), ("scalar", 1, 1))),
    "full3+c": CaseEntry("full3+c", "other", "M(3,C)+C", "det z.z'", "sl(6,C)+sl(2,C)", "e6", "e6(2)", 38, 78,
                         (("full", 3, 1), ("scalar", 1, 1))),
    "skew6+c": CaseEntry("skew6+c", "other", "Skew(6,C)+C", "Pfaff(z).z'", "so(12,C)+sl(2,C)", "e7", "e7(-5)",
                         69, 133, (("skew", 6, 1), ("scalar", 1, 1))),
    "herm3o+c": CaseEntry("herm3o+c", "other", "Herm(3,O)_C+C", "det z.z'", "e7+sl(2,C)", "e8", "e8(-24)",
                          136, 248, None, "metadata only; not property (T) case"),
    "g2": CaseEntry("g2", "other", "C+C", "z^3.z'", "sl(2,C)+sl(2,C)", "g2", "g2(2)", 6, 14,
                    (("scalar", 1, 3), ("scalar", 1, 1))),
}

_ALIASES = {"case3:d=1": "case3:sym4", "case3:d=2": "case3:full4", "case3:d=4": "case3:skew8"}


def resolve(case_id: str) -> CaseEntry:
    cid = _ALIASES.get(case_id.strip().lower(), case_id.strip().lower())
    m = re.fullmatch(r"case1:n=(\d+)", cid)
    if m and int(m.group(1)) >= 1:
        return _case1(int(m.group(1)))
    m = re.fullmatch(r"case2:p=(\d+)", cid)
    if m and int(m.group(1)) >= 2:
        p = int(m.group(1))
        return _case2(p, p)
    m = re.fullmatch(r"mixed:(\d+)x(\d+)", cid)
    if m and int(m.group(1)) >= 2 and int(m.group(2)) >= 2:
        return _case2(int(m.group(1)), int(m.group(2)))
    if cid.startswith("case3:") and cid[6:] in _CASE3:
        return _CASE3[cid[6:]]
    if cid in _OTHER:
        return _OTHER[cid]
    raise UnknownCase(case_id)


CATALOG_IDS = (
    [f"case1:n={n}" for n in (1, 2, 3, 4, 5, 6)]
    + ["case2:p=2", "case2:p=3"]
    + ["case3:sym4", "case3:full4", "case3:skew8"]
    + ["mixed:2x3", "sym3+c", "full3+c", "skew6+c", "herm3o+c", "g2"]
)

# the property-(T) families whose tables are reproduced
T_IDS = [c for c in CATALOG_IDS if c.startswith("case")]
NON_T_IDS = ["mixed:2x3", "sym3+c", "full3+c", "skew6+c", "g2"]


def catalog(only_t: bool = False) -> list[CaseEntry]:
    entries = [resolve(c) for c in CATALOG_IDS]
    if only_t:
        entries = [e for e in entries if e.property_t]
    return entries


def reference_roots(entry: CaseEntry) -> Optional[dict]:
    """Reference (eta, alpha_1, alpha_2, alpha_3) and leading constant for a family row."""
    F = Fraction
    p = entry.param
    if entry.family == "case1":
        n = p["n"]
        return {"eta": F(n, 4), "alpha": (F(4 - n, 4), F(1, 2), F(2 - n, 4)), "A": F(256) if n == 1 else F(16)}
    if entry.family == "case2":
        q = p["p"]
        return {"eta": F(q, 2), "alpha": (F(2 - q, 2), F(0), F(2 - q, 2)), "A": F(1)}
    if entry.family == "case3":
        d = p["d"]
        return {"eta": 1 + F(3 * d, 2), "alpha": (F(-3 * d, 2), F(-d, 2), F(-d)), "A": F(1)}
    return None


def reference_meijer(entry: CaseEntry) -> Optional[tuple]:
    """Reference (alpha, beta_1, beta_2, beta_3) row."""
    F = Fraction
    p = entry.param
    if entry.family == "case1":
        n = p["n"]
        return (F(n, 4) - 1, F(n - 2, 2), F(n - 1, 2), F(n - 2, 4))
    if entry.family == "case2":
        q = p["p"]
        return (F(q, 2) - 1, F(q - 1), F(q - 1), F(q, 2))
    if entry.family == "case3":
        d = p["d"]
        return (F(3 * d, 2), F(3 * d + 1), F(5 * d, 2) + 1, F(2 * d + 1))
    return None
