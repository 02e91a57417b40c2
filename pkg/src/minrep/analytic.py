"""Kernel polynomial H, the exact sequences a_m and c_m, the 1F2 reproducing
kernel, and the Meijer G_{1,3}^{3,0} weight with its numerical checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath
import numpy as np
from scipy import optimize, special

from .bernstein import bernstein_by_product_formula
from .jordan import JordanAlgebra, VQPair, _mm
from .polycore import MPoly, RatFn, exact_div, substitute


class ImplementationFault(RuntimeError):
    pass


class NonUnitaryError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, msg: str, partial: float):
        super().__init__(msg)
        self.partial = partial


class SeriesUnavailable(ValueError):
    pass


# -- the kernel polynomial --------------------------------------------------

@dataclass(frozen=True)
class HermKernel:
    """H(z, w) = Q(w) Q(w^{-1} + z) in 2 dim V variables, z block first."""

    poly: MPoly
    dim: int

    def __call__(self, z: Sequence, w: Sequence):
        return self.poly.evaluate(list(z) + list(w))


def _block_kernel_closed(A: JordanAlgebra) -> MPoly:
    n = A.dim
    N = 2 * n
    z = [MPoly.var(N, i) for i in range(n)]
    w = [MPoly.var(N, n + i) for i in range(n)]
    if A.kind == "scalar":
        return MPoly.const(N, 1) + z[0] * w[0]
    if A.kind == "spin":
        # w^{-1} = (w_1, -w')/det(w); expanding det(w) det(w^{-1} + z)
        dot = z[0] * w[0]
        for a, b in zip(z[1:], w[1:]):
            dot = dot + a * b
        return MPoly.const(N, 1) + dot.scale(2) + A.det_poly.embed(N, 0) * A.det_poly.embed(N, n)
    if A.kind in ("sym", "full"):
        # det(w) det(w^{-1} + z) = det(1 + w z)
        Z, W = A.to_matrix(z), A.to_matrix(w)
        P = _mm(W, Z)
        size = A.size
        M = [[P[i][j] + (1 if i == j else 0) for j in range(size)] for i in range(size)]
        M = [[x if isinstance(x, MPoly) else MPoly.const(N, x) for x in row] for row in M]
        from .jordan import _mat_det_poly

        return _mat_det_poly(M)
    return _block_kernel_generic(A)


def _block_kernel_generic(A: JordanAlgebra) -> MPoly:
    """Q(w) Q(w^{-1}+z) by rational substitution and exact division."""
    n = A.dim
    N = 2 * n
    det_w = A.det_poly.embed(N, n)
    images = []
    for a, p in enumerate(A.adjoint_polys):
        images.append(RatFn(p.embed(N, n) + MPoly.var(N, a) * det_w, det_w))
    r = substitute(A.det_poly, images)
    num = r.num * det_w
    q = exact_div(num, r.den) if not r.den.is_constant() else num.scale(1 / r.den.constant_term())
    return q


def hermitian_kernel(vq: VQPair, generic: bool = False) -> HermKernel:
    n = vq.nvars
    N = 2 * n
    H = MPoly.const(N, 1)
    for A, k, o in vq.blocks():
        h = _block_kernel_generic(A) if generic else _block_kernel_closed(A)
        # block variables: z part at o, w part at n + o
        perm = [o + i for i in range(A.dim)] + [n + o + i for i in range(A.dim)]
        H = H * (h ** k).map_vars(perm, N)
    return HermKernel(H, n)


def kernel_diagonal_check(vq: VQPair, H: HermKernel, x: Sequence) -> bool:
    """H(x, x) = Q(e + x^2) at a rational point."""
    ex = tuple(a + b for a, b in zip(vq.e, vq.product(x, x)))
    return Fraction(H(x, x)) == vq.Qval(ex)


def kernel_pointwise_check(vq: VQPair, H: HermKernel, z: Sequence, w: Sequence) -> bool:
    """H(z, w) = Q(w) Q(w^{-1} + z) at rational points with w invertible."""
    wi = vq.inverse(w)
    return Fraction(H(z, w)) == vq.Qval(w) * vq.Qval(tuple(a + b for a, b in zip(wi, z)))


# -- exact sequences --------------------------------------------------------

def rising(x, k: int) -> Fraction:
    out = Fraction(1)
    x = Fraction(x)
    for j in range(k):
        out *= x + j
    return out


def seq_a_recurrence(vq: VQPair, mmax: int) -> list[Fraction]:
    """a_0 = 1, a_{m+1}/a_m = B(-m-eta)/B(-m-2 eta)."""
    eta = _eta(vq)
    B = bernstein_by_product_formula(vq)
    a = [Fraction(1)]
    for m in range(mmax):
        den = B(-m - 2 * eta)
        if den == 0:
            raise ZeroDivisionError(f"B vanishes at {-m - 2 * eta}")
        a.append(a[-1] * B(-m - eta) / den)
    return a


def seq_a_gamma(vq: VQPair, mmax: int) -> list[Fraction]:
    """Gamma-function ratio of the symmetric cones; integer gaps make it exact."""
    out = []
    for m in range(mmax + 1):
        v = Fraction(1)
        for A, k in vq.factors:
            nr = Fraction(A.dim, A.rank)
            for j in range(A.rank):
                sh = Fraction(j * A.d, 2)
                v *= rising(nr - sh, m * k) / rising(2 * nr - sh, m * k)
        out.append(v)
    return out


def seq_a(vq: VQPair, mmax: int) -> dict:
    a1, a2 = seq_a_recurrence(vq, mmax), seq_a_gamma(vq, mmax)
    return {"recurrence": a1, "gamma": a2, "agree": a1 == a2}


def _eta(vq: VQPair) -> Fraction:
    if vq.eta is None:
        raise ValueError(f"{vq} does not have property (T)")
    return vq.eta


def remaining_roots(vq: VQPair) -> tuple[Fraction, Fraction]:
    """The two Bernstein roots left after removing 0 and 1 - eta, largest first."""
    eta = _eta(vq)
    roots = list(bernstein_by_product_formula(vq).roots)
    for r in (Fraction(0), 1 - eta):
        if r not in roots:
            raise ImplementationFault(f"{r} is not a Bernstein root")
        roots.remove(r)
    a2, a3 = sorted(roots, reverse=True)
    return a2, a3


def seq_c(vq: VQPair, mmax: int) -> list[Fraction]:
    """c_m = (eta+1)_m / ((eta+a2)_m (eta+a3)_m m!) with rising factorials."""
    eta = _eta(vq)
    a2, a3 = remaining_roots(vq)
    if eta + a2 <= 0 or eta + a3 <= 0:
        raise NonUnitaryError(f"nonpositive Pochhammer base: {eta + a2}, {eta + a3}")
    out = []
    for m in range(mmax + 1):
        out.append(rising(eta + 1, m) / (rising(eta + a2, m) * rising(eta + a3, m) * math.factorial(m)))
    return out


def seq_c_recurrence_ok(vq: VQPair, c: Sequence[Fraction]) -> bool:
    eta = _eta(vq)
    a2, a3 = remaining_roots(vq)
    return all(
        c[m + 1] / c[m] == (m + eta + 1) / ((m + eta + a2) * (m + eta + a3) * (m + 1))
        for m in range(len(c) - 1)
    )


def product_identity(vq: VQPair, mmax: int) -> list[bool]:
    """1/(a_m c_m) = (2 eta)_m (2 eta + a2)_m (2 eta + a3)_m / (eta)_m."""
    eta = _eta(vq)
    a2, a3 = remaining_roots(vq)
    a = seq_a_gamma(vq, mmax)
    c = seq_c(vq, mmax)
    return [
        1 / (a[m] * c[m]) == rising(2 * eta, m) * rising(2 * eta + a2, m) * rising(2 * eta + a3, m) / rising(eta, m)
        for m in range(mmax + 1)
    ]


@dataclass
class SeqTriple:
    a: list
    c: list
    delta: list
    eta: Fraction
    alpha2: Fraction
    alpha3: Fraction


def seq_triple(vq: VQPair, mmax: int) -> SeqTriple:
    from .hc import solve_delta

    sol = solve_delta(vq, max(mmax, 1))
    a2, a3 = remaining_roots(vq)
    return SeqTriple(seq_a_gamma(vq, mmax), seq_c(vq, mmax), sol.deltas, _eta(vq), a2, a3)


# -- the 1F2 kernel ---------------------------------------------------------

def kernel_1f2(vq: VQPair, x: float, *, max_terms: int = 100000, rtol: float = 1e-17) -> float:
    """sum_m c_m x^m, summed in floating point until the tail is negligible."""
    eta = _eta(vq)
    a2, a3 = remaining_roots(vq)
    p, q1, q2 = float(eta + 1), float(eta + a2), float(eta + a3)
    x = float(x)
    term = 1.0
    terms = [term]
    for m in range(max_terms):
        term *= (p + m) / ((q1 + m) * (q2 + m) * (m + 1)) * x
        terms.append(term)
        if m > abs(x) ** 0.5 + 3 and abs(term) <= rtol * abs(math.fsum(terms)):
            return math.fsum(terms)
    raise ConvergenceError("1F2 series did not converge within the term budget", math.fsum(terms))


def kernel_1f2_exact_partial(vq: VQPair, x, nterms: int) -> Fraction:
    c = seq_c(vq, nterms - 1)
    x = Fraction(x)
    return sum((cm * x ** m for m, cm in enumerate(c)), Fraction(0))


def kernel_eval(vq: VQPair, z: Sequence, w: complex, zp: Sequence, wp: complex, H: Optional[HermKernel] = None) -> float:
    """K(xi, xi') = 1F2(...; H(z, conj z') w conj w') for real coordinate points z, z'."""
    H = H or hermitian_kernel(vq)
    phi = float(H([float(t) for t in z], [float(t) for t in zp])) * (w * np.conj(wp)).real
    return kernel_1f2(vq, phi)


# -- Meijer G ------------------------------------------------------------------

@dataclass(frozen=True)
class MeijerParams:
    alpha_q: Fraction
    beta_q: tuple  # three Fractions

    @property
    def alpha(self) -> float:
        return float(self.alpha_q)

    @property
    def beta(self) -> tuple:
        return tuple(float(b) for b in self.beta_q)

    @property
    def sigma(self) -> float:
        return -float(min(self.beta_q))

    @property
    def theta_q(self) -> Fraction:
        """Exponent in G(u) ~ sqrt(pi) u^theta exp(-2 sqrt(u)) for a G^{3,0}_{1,3}."""
        return (sum(self.beta_q) - self.alpha_q - Fraction(1, 2)) / 2

    @property
    def theta(self) -> float:
        return float(self.theta_q)

    @property
    def theta_unhalved(self) -> float:
        return float(sum(self.beta_q) - self.alpha_q - Fraction(1, 2))

    @property
    def distinct(self) -> bool:
        return len(set(self.beta_q)) == 3

    @property
    def series_ok(self) -> bool:
        """Residue series needs simple poles: pairwise non-integer differences."""
        b = self.beta_q
        return all((b[i] - b[j]).denominator != 1 for i in range(3) for j in range(i + 1, 3))

    def mellin(self, s: float) -> float:
        return float(np.exp(sum(special.gammaln(b + s) for b in self.beta) - special.gammaln(self.alpha + s))) * \
            float(np.prod([np.sign(special.gamma(b + s)) for b in self.beta]) * np.sign(special.gamma(self.alpha + s)))

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha_q),
            "beta": [str(b) for b in self.beta_q],
            "sigma": str(-min(self.beta_q)),
            "theta": str(self.theta_q),
        }


def meijer_params(vq: VQPair) -> MeijerParams:
    eta = _eta(vq)
    a2, a3 = remaining_roots(vq)
    return MeijerParams(eta - 1, (2 * eta - 1, 2 * eta + a2 - 1, 2 * eta + a3 - 1))


def meijer_g_series(params: MeijerParams, u: float, dps: Optional[int] = None) -> float:
    """Sum over the three pole families: each is u^{b_i} times a 1F2 series."""
    if not params.series_ok:
        raise SeriesUnavailable("beta differences are integers; the residue series has logarithmic terms")
    if u <= 0:
        raise ValueError("u must be positive")
    if dps is None:
        dps = 30 + int(4 * math.sqrt(u) / math.log(10))
    with mpmath.workdps(dps):
        a = mpmath.mpf(params.alpha_q.numerator) / params.alpha_q.denominator
        b = [mpmath.mpf(x.numerator) / x.denominator for x in params.beta_q]
        uu = mpmath.mpf(u)
        total = mpmath.mpf(0)
        for i in range(3):
            j, k = [t for t in range(3) if t != i]
            coef = mpmath.gamma(b[j] - b[i]) * mpmath.gamma(b[k] - b[i]) * mpmath.rgamma(a - b[i])
            total += coef * uu ** b[i] * mpmath.hyp1f2(1 - a + b[i], 1 - b[j] + b[i], 1 - b[k] + b[i], uu)
        return float(total)


def _contour(params: MeijerParams, u: float) -> float:
    """Abscissa of the integration line.

    For large u this is the real saddle of the integrand, which keeps its
    size comparable to G(u). When the saddle would sit left of the start
    (small u) the line is put at sigma + 1/2; further right the factor
    u^(-c) costs about u^(sigma - c) in cancellation.
    """
    lo = max(params.sigma, -params.alpha) + 1
    f = lambda s: sum(special.digamma(b + s) for b in params.beta) - special.digamma(params.alpha + s) - math.log(u)
    if f(lo) >= 0:
        return params.sigma + 0.5
    hi = max(2 * lo, 2 * math.sqrt(u))
    while f(hi) < 0:
        hi *= 2
    return optimize.brentq(f, lo, hi)


def meijer_g_quad_log(params: MeijerParams, u: float, c: Optional[float] = None, tol: float = 1e-18,
                      panels: int = 48, order: int = 24) -> tuple[float, float]:
    """Mellin-Barnes integral along Re s = c, returned as (mantissa, log scale)."""
    if u <= 0:
        raise ValueError("u must be positive")
    if c is None:
        c = _contour(params, u)
    if c <= params.sigma:
        raise ValueError(f"contour {c} must lie right of sigma = {params.sigma}")
    b = params.beta
    a = params.alpha
    lu = math.log(u)

    def logf(t):
        s = c + 1j * np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return sum(special.loggamma(bb + s) for bb in b) - special.loggamma(a + s) - s * lu

    # 1/Gamma(alpha + c) may vanish at t = 0, so take the peak over a coarse grid
    peak = float(np.nanmax(logf(np.linspace(0.0, 4.0, 33)).real))
    # the modulus decays like exp(-pi |t|); stop where it is below tol of the peak
    T = 4.0
    while float(logf(T).real) - peak > math.log(tol) and T < 1e4:
        T *= 1.5
    t, w = _gl_panels(0.0, T, panels, order)
    lf = logf(t)
    vals = np.where(np.isfinite(lf.real), np.exp(lf.real - peak) * np.cos(lf.imag), 0.0)
    return math.fsum(w * vals) / math.pi, peak


def meijer_g_quad(params: MeijerParams, u: float, c: Optional[float] = None, **kw) -> float:
    m, scale = meijer_g_quad_log(params, u, c, **kw)
    return m * math.exp(scale)


@lru_cache(maxsize=None)
def _gl_unit(order: int):
    return special.roots_legendre(order)


def _gl_panels(lo: float, hi: float, panels: int, order: int):
    x, w = _gl_unit(order)
    edges = np.linspace(lo, hi, panels + 1)
    h = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    return (mid[:, None] + h[:, None] * x[None, :]).ravel(), (h[:, None] * w[None, :]).ravel()


def meijer_g_mpmath(params: MeijerParams, u: float) -> float:
    """mpmath's G^{3,0}_{1,3}; it perturbs the parameters when poles coalesce."""
    return float(mpmath.meijerg([[], [params.alpha]], [list(params.beta), []], u))


def meijer_g(params: MeijerParams, u: float) -> dict:
    """Quadrature value checked against the residue series, or against mpmath
    when integer beta gaps leave the series with logarithmic terms."""
    q = meijer_g_quad(params, u)
    out = {"u": u, "quad": q, "series": None, "reference": None, "relerr": None, "flag": None}
    if params.series_ok:
        ref = out["series"] = meijer_g_series(params, u)
        out["reference"] = "residue series"
    else:
        ref = meijer_g_mpmath(params, u)
        out["reference"] = "mpmath.meijerg"
        out["flag"] = "integer beta gaps: no residue series"
    out["relerr"] = abs(ref - q) / abs(ref)
    return out


def meijer_g_value(params: MeijerParams, u: float, method: str = "auto") -> float:
    if method == "series" or (method == "auto" and params.series_ok):
        return meijer_g_series(params, u)
    return meijer_g_quad(params, u)


def asymptotic_ratio(params: MeijerParams, u: float, theta: Optional[float] = None) -> float:
    """G(u) / (sqrt(pi) u^theta exp(-2 sqrt(u))), computed in log space."""
    th = params.theta if theta is None else theta
    m, scale = meijer_g_quad_log(params, u)
    return m * math.exp(scale - 0.5 * math.log(math.pi) - th * math.log(u) + 2 * math.sqrt(u))


# -- weight checks ----------------------------------------------------------

def _moment_nodes(params: MeijerParams, umax: float = 4096.0, panels: int = 48, order: int = 24):
    """Gauss-Legendre nodes for integrals over u = t^4, t in [0, umax^(1/4)]."""
    t, wt = _gl_panels(0.0, umax ** 0.25, panels, order)
    u = t ** 4
    G = np.array([meijer_g_quad(params, float(v)) for v in u])
    return u, wt * 4 * t ** 3, G


def moment_report(vq: VQPair, mmax: int = 6) -> list[dict]:
    """Quadrature moments of G against exact 1/(a_m c_m), normalized at m = 0."""
    params = meijer_params(vq)
    u, w, G = _moment_nodes(params)
    a = seq_a_gamma(vq, mmax)
    c = seq_c(vq, mmax)
    M0 = float(np.sum(w * G))
    rows = []
    for m in range(mmax + 1):
        Mm = float(np.sum(w * G * u ** m))
        exact = 1 / (a[m] * c[m])
        lhs = Mm / M0
        mel = params.mellin(m + 1) / params.mellin(1)
        rows.append({
            "m": m,
            "lhs": lhs,
            "rhs": str(exact),
            "relerr": abs(lhs - float(exact)) / float(exact),
            "gamma_ratio": mel,
            "gamma_relerr": abs(mel - float(exact)) / float(exact),
        })
    return rows


def find_sign_change(params: MeijerParams, lo: float = 1e-6, hi: float = 1e3, n: int = 400) -> dict:
    """Sample G on a log grid; return a point with G < 0 and the last root u0."""
    us = np.geomspace(lo, hi, n)
    vals = [meijer_g_quad(params, float(v)) for v in us]
    neg = [i for i, v in enumerate(vals) if v < 0]
    if not neg:
        return {"u_neg": None, "G_neg": None, "u0": None}
    i = neg[-1]
    u0 = optimize.brentq(lambda x: meijer_g_value(params, x), float(us[i]), float(us[i + 1]), xtol=1e-14, rtol=1e-12)
    j = neg[0]
    return {"u_neg": float(us[j]), "G_neg": vals[j], "u0": u0,
            "positive_after_u0": all(v > 0 for v in vals[i + 1:])}


def weight_checks(vq: VQPair, mmax: int = 6) -> dict:
    params = meijer_params(vq)
    report: dict = {"params": params.to_dict()}
    report["moments"] = moment_report(vq, mmax)
    report["sign_change"] = find_sign_change(params)
    # the Mellin transform vanishes at s = -alpha (a pole of Gamma(alpha + s))
    s0 = -params.alpha
    report["mellin_zero"] = {"s": s0, "valid": s0 > params.sigma}
    # integrability near 0: sigma < 1, and the truncated integral of |G| is finite
    x, w = special.roots_legendre(40)
    t = (x + 1) / 2
    wt = w / 2
    absint = float(np.sum([wi * 4 * ti ** 3 * abs(meijer_g_value(params, float(ti) ** 4)) for ti, wi in zip(t, wt)]))
    report["integrability"] = {"sigma": params.sigma, "sigma_lt_1": params.sigma < 1, "int_0_1_absG": absint}
    u = 1e4
    report["asymptotic"] = {
        "u": u,
        "ratio": asymptotic_ratio(params, u),
        "ratio_unhalved_theta": asymptotic_ratio(params, u, params.theta_unhalved),
    }
    return report


# -- rank-one reproducing property -----------------------------------------

def rank1_reproducing(m: int, zp: complex, nrad: int = 64, nang: int | None = None) -> list[dict]:
    """(psi | H(., z')^m)_m = psi(z') for psi = z^j on V = C.

    With |z|^2 = t/(1-t) the radial integrand is a polynomial in t, so
    Gauss-Legendre is exact; the angular integral is a trigonometric
    polynomial, integrated exactly by the trapezoid rule.
    """
    a_m = 1.0 / (4 * m + 1)
    nang = nang or 8 * m + 4
    x, w = special.roots_legendre(nrad)
    t = (x + 1) / 2
    wt = w / 2
    th = 2 * np.pi * np.arange(nang) / nang
    out = []
    for j in range(4 * m + 1):
        total = 0j
        for tk, wk in zip(t, wt):
            s = tk / (1 - tk)
            r = math.sqrt(s)
            z = r * np.exp(1j * th)
            K = (1 + z * np.conj(zp)) ** (4 * m)
            vals = z ** j * np.conj(K) * (1 + s) ** (-4 * m - 2)
            # dm(z)/pi = (1/2) ds dtheta / pi, ds = dt/(1-t)^2
            total += wk * np.sum(vals) * (2 * np.pi / nang) / (2 * np.pi) / (1 - tk) ** 2
        val = total / a_m
        exact = zp ** j
        out.append({"j": j, "value": complex(val), "exact": complex(exact),
                    "relerr": abs(val - exact) / max(abs(exact), 1e-300)})
    return out
