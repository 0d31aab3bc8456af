"""Exact interpolation of eventually polynomial integer-valued functions.

Everything is done with :class:`fractions.Fraction`; a fit is trusted only
after the interpolant reproduces held-out samples exactly.  When it does not,
the sample window is pushed further out (doubling) up to a cap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

Rat = Fraction

DEFAULT_VALIDATION = 3
DEFAULT_MAX_ADVANCE = 6


class FitError(RuntimeError):
    """A fit did not stabilize within its window budget."""


def binomial(n, k: int, convention: str = "combinatorial"):
    """Binomial coefficient.

    ``combinatorial``: integers only, 0 when ``k < 0`` or ``n < k``.
    ``polynomial``: the falling factorial ``n(n-1)...(n-k+1)/k!`` for any ``n``
    (int or Fraction), 0 when ``k < 0``.
    """
    if k < 0:
        return 0
    if convention == "combinatorial":
        if n < k:
            return 0
        return math.comb(n, k)
    if convention != "polynomial":
        raise ValueError(f"unknown convention {convention!r}")
    num = 1
    for t in range(k):
        num *= n - t
    val = Fraction(num, math.factorial(k))
    return int(val) if val.denominator == 1 else val


class RatPoly:
    """Polynomial with Fraction coefficients in ``nvars`` variables.

    Coefficients are keyed by exponent tuples; zeros are never stored.  The
    same class serves the one-, two- and r-variable cases.
    """

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        self.coeffs: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (coeffs or {}).items():
            exps = (exps,) if isinstance(exps, int) else tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not match {nvars} variables")
            c = Fraction(c)
            if c:
                self.coeffs[exps] = self.coeffs.get(exps, 0) + c
        self.coeffs = {e: c for e, c in self.coeffs.items() if c}

    def __call__(self, *point):
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments")
        total = Fraction(0)
        for exps, c in self.coeffs.items():
            term = c
            for x, a in zip(point, exps):
                if a:
                    term *= x**a
            total += term
        return total

    def coefficient(self, *exps) -> Fraction:
        if len(exps) == 1 and isinstance(exps[0], tuple):
            exps = exps[0]
        return self.coeffs.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return max((sum(e) for e in self.coeffs), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.coeffs), default=-1)

    def homogeneous_part(self, degree: int) -> "RatPoly":
        return RatPoly(self.nvars, {e: c for e, c in self.coeffs.items() if sum(e) == degree})

    def coefficient_slice(self, var: int, power: int) -> "RatPoly":
        """Coefficient of ``x_var^power``, a polynomial in the remaining variables."""
        out = {}
        for e, c in self.coeffs.items():
            if e[var] == power:
                out[e[:var] + e[var + 1:]] = c
        return RatPoly(self.nvars - 1, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) - c
        return RatPoly(self.nvars, out)

    def __add__(self, other: "RatPoly") -> "RatPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return RatPoly(self.nvars, out)

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, e)): str(c) for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, nvars: int, data: dict[str, str]) -> "RatPoly":
        return cls(nvars, {tuple(int(t) for t in k.split(",")): Fraction(v) for k, v in data.items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        names = "pqrstuvw" if self.nvars <= 8 else None
        terms = []
        for e, c in sorted(self.coeffs.items(), key=lambda t: (-sum(t[0]), t[0])):
            mono = "*".join(
                (names[i] if names else f"t{i}") + (f"^{a}" if a > 1 else "")
                for i, a in enumerate(e) if a
            )
            terms.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)


@dataclass
class FitReport:
    polynomial: RatPoly
    window: list = field(default_factory=list)
    validation: list = field(default_factory=list)
    stabilized: bool = False
    advances: int = 0
    parts: list = field(default_factory=list)

    def require(self) -> RatPoly:
        if not self.stabilized:
            raise FitError(f"fit did not stabilize (window {self.window[:1]}..., {self.advances} advances)")
        return self.polynomial

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "nvars": self.polynomial.nvars,
            "window": [list(w) if isinstance(w, tuple) else w for w in self.window],
            "validation": [list(v) if isinstance(v, tuple) else v for v in self.validation],
            "stabilized": self.stabilized,
            "advances": self.advances,
        }


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square nonsingular system exactly by Gauss-Jordan elimination."""
    n = len(matrix)
    A = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular interpolation system")
        A[col], A[piv] = A[piv], A[col]
        pr = A[col]
        inv = 1 / pr[col]
        for j in range(col, n + 1):
            pr[j] *= inv
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                row = A[i]
                for j in range(col, n + 1):
                    row[j] -= f * pr[j]
    return [A[i][n] for i in range(n)]


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree at most ``degree``, graded order."""
    out = []
    for d in range(degree + 1):
        out.extend(compositions(d, nvars))
    return out


def compositions(total: int, parts: int):
    """Ordered ``parts``-tuples of non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def interpolate(points: Sequence[tuple[int, ...]], values: Sequence, monomials: Sequence[tuple[int, ...]]) -> RatPoly:
    matrix = [[math.prod(x**a for x, a in zip(pt, m)) for m in monomials] for pt in points]
    sol = solve_exact(matrix, values)
    return RatPoly(len(monomials[0]), dict(zip(monomials, sol)))


def fit_univariate(
    f: Callable[[int], object],
    degree_bound: int,
    start_hint: int = 0,
    validation: int = DEFAULT_VALIDATION,
    max_advance: int = DEFAULT_MAX_ADVANCE,
    limit: int | None = None,
) -> FitReport:
    """Fit ``f(p)`` for large ``p`` by a polynomial of degree at most ``degree_bound``.

    Samples ``degree_bound + 1`` consecutive points from ``start_hint`` and
    checks the next ``validation`` points.  On a mismatch the start doubles,
    at most ``max_advance`` times.  ``limit`` caps the largest sampled point.
    """
    p0 = start_hint
    mons = [(k,) for k in range(degree_bound + 1)]
    poly = RatPoly(1)
    nodes: list[int] = []
    checks: list[int] = []
    for attempt in range(max_advance + 1):
        nxt = list(range(p0, p0 + degree_bound + 1))
        nxt_checks = list(range(nxt[-1] + 1, nxt[-1] + 1 + validation))
        if limit is not None and (nxt_checks or nxt)[-1] > limit:
            # report the last window actually evaluated
            return FitReport(poly, nodes, checks, False, attempt)
        nodes, checks = nxt, nxt_checks
        poly = interpolate([(x,) for x in nodes], [f(x) for x in nodes], mons)
        if all(poly(x) == f(x) for x in checks):
            return FitReport(poly, nodes, checks, True, attempt)
        p0 = max(2 * p0, p0 + 1)
    return FitReport(poly, nodes, checks, False, max_advance)


def fit_multivariate(
    f: Callable[..., object],
    nvars: int,
    total_degree_bound: int,
    start_hint: int = 0,
    validation: int = DEFAULT_VALIDATION,
    max_advance: int = DEFAULT_MAX_ADVANCE,
    limit: int | None = None,
) -> FitReport:
    """Fit ``f(p_1, ..., p_n)`` for all ``p_i`` large.

    Samples the simplex grid ``s + a`` with ``|a| <= D`` (unisolvent for
    total degree ``D``) and validates on points of the next layer.
    """
    D = total_degree_bound
    mons = monomials_upto(nvars, D)
    layer = list(compositions(D + 1, nvars))
    step = max(1, len(layer) // max(validation, 1))
    picks = layer[::step][:validation]
    s = start_hint
    poly = RatPoly(nvars)
    pts: list[tuple[int, ...]] = []
    checks: list[tuple[int, ...]] = []
    for attempt in range(max_advance + 1):
        if limit is not None and s + D + 1 > limit:
            return FitReport(poly, pts, checks, False, attempt)
        pts = [tuple(s + a for a in m) for m in mons]
        checks = [tuple(s + a for a in m) for m in picks]
        poly = interpolate(pts, [f(*x) for x in pts], mons)
        if all(poly(*x) == f(*x) for x in checks):
            return FitReport(poly, pts, checks, True, attempt)
        s = max(2 * s, s + 1)
    return FitReport(poly, pts, checks, False, max_advance)


def cone_region(r: int) -> Callable[[int, int], bool]:
    """The standing region ``q >= (p + 1) r``."""
    def admissible(p: int, q: int) -> bool:
        return q >= (p + 1) * r
    admissible.q_min = lambda p: (p + 1) * r
    return admissible


def _q_min(region, p: int) -> int:
    if hasattr(region, "q_min"):
        return region.q_min(p)
    q = 0
    while not region(p, q):
        q += 1
        if q > 1 << 20:
            raise ValueError(f"region admits no q for p={p}")
    return q


def fit_bivariate_nested(
    F: Callable[[int, int], object],
    deg_q_bound: int,
    deg_p_bounds: Sequence[int],
    region: Callable[[int, int], bool] | None = None,
    start_hint: int = 1,
    validation: int = DEFAULT_VALIDATION,
    max_advance: int = DEFAULT_MAX_ADVANCE,
    limit: int | None = None,
) -> FitReport:
    """Fit ``F(p, q)`` on an upward-closed region (in q) for p large.

    For each sampled p, ``q -> F(p, q)`` is fitted on admissible q; each
    q-coefficient is then fitted as a function of p with degree
    ``deg_p_bounds[i]``.  The assembled polynomial is checked on held-out
    admissible points further out.  ``region`` defaults to
    ``q >= (p + 1)(deg_q_bound + 1)``, which is the standing region when
    ``deg_q_bound = r - 1``.
    """
    if len(deg_p_bounds) != deg_q_bound + 1:
        raise ValueError("one p-degree bound per power of q is required")
    region = region or cone_region(deg_q_bound + 1)
    qfits: dict[int, FitReport] = {}

    def qfit(p: int) -> FitReport:
        if p not in qfits:
            qfits[p] = fit_univariate(
                lambda q: F(p, q), deg_q_bound, _q_min(region, p), validation, max_advance
            )
        return qfits[p]

    class _Unstable(Exception):
        pass

    def coeff(i):
        def c(p):
            rep = qfit(p)
            if not rep.stabilized:
                raise _Unstable(p)
            return rep.polynomial.coefficient(i)
        return c

    start = start_hint
    poly = RatPoly(2)
    window: list = []
    held: list = []
    parts: list = []
    for attempt in range(max_advance + 1):
        try:
            parts = [
                fit_univariate(coeff(i), deg_p_bounds[i], start, validation, max_advance, limit)
                for i in range(deg_q_bound + 1)
            ]
        except _Unstable:
            return FitReport(poly, window, held, False, attempt, parts)
        coeffs = {}
        for i, rep in enumerate(parts):
            for (a,), c in rep.polynomial.coeffs.items():
                coeffs[(a, i)] = c
        poly = RatPoly(2, coeffs)
        if not all(rep.stabilized for rep in parts):
            return FitReport(poly, window, held, False, attempt, parts)
        window = sorted({x for rep in parts for x in rep.window})
        p_last = max(x for rep in parts for x in rep.validation + rep.window)
        held = []
        for t in range(1, validation + 1):
            p = p_last + t
            held.append((p, _q_min(region, p) + deg_q_bound + validation + t))
        if all(poly(p, q) == F(p, q) for p, q in held):
            return FitReport(poly, window, held, True, attempt, parts)
        start = p_last + 1
    return FitReport(poly, window, held, False, max_advance, parts)


def fit_bivariate_dense(
    F: Callable[[int, int], object],
    total_degree: int,
    region: Callable[[int, int], bool],
    start_hint: int = 1,
    validation: int = DEFAULT_VALIDATION,
    max_advance: int = DEFAULT_MAX_ADVANCE,
) -> FitReport:
    """Fit ``F(p, q)`` with all monomials of total degree at most ``total_degree``.

    Samples ``(p0 + a, q0 + b)``, ``a + b <= D``, with ``q0`` chosen so that
    every sample is admissible.
    """
    D = total_degree
    mons = monomials_upto(2, D)
    picks = list(compositions(D + 1, 2))
    step = max(1, len(picks) // max(validation, 1))
    picks = picks[::step][:validation]
    p0 = start_hint
    poly = RatPoly(2)
    pts: list = []
    checks: list = []
    for attempt in range(max_advance + 1):
        q0 = max(_q_min(region, p0 + a) for a in range(D + 2))
        pts = [(p0 + a, q0 + b) for a, b in mons]
        checks = [(p0 + a, q0 + b) for a, b in picks]
        poly = interpolate(pts, [F(p, q) for p, q in pts], mons)
        if all(poly(p, q) == F(p, q) for p, q in checks):
            return FitReport(poly, pts, checks, True, attempt)
        p0 = max(2 * p0, p0 + 1)
    return FitReport(poly, pts, checks, False, max_advance)


def q_degree(poly: RatPoly) -> int:
    """Degree in the second variable of a bivariate polynomial (-1 if zero)."""
    return poly.degree_in(1)
