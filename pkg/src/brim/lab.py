"""Multiplicities extracted from exact fits, and checks of the identities they satisfy.

Every multiplicity is a normalized leading coefficient of a stabilized fit.
Proven identities are checked by exact integer equality; the two open
questions are probed and reported as experimental.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .engine import (
    PreconditionError,
    RegionSpec,
    all_D_regions,
    br_function,
    br_function2,
    br_function2_region,
    delta_sum_closed,
    delta_sum_split,
    l_correction_sum,
    l_module,
    lower_minus_closed,
    next_stratum_closed,
    residual,
    top_stratum_closed,
)
from .ideals import ModuleSpec, MonomialIdeal, colength, is_contained, power_product, sum_of
from .polyfit import (
    DEFAULT_MAX_ADVANCE,
    DEFAULT_VALIDATION,
    FitError,
    FitReport,
    binomial,
    compositions,
    cone_region,
    fit_bivariate_nested,
    fit_multivariate,
    fit_univariate,
)


class IntegralityError(ArithmeticError):
    """A normalized coefficient failed to be an integer, or broke a known invariant."""


@dataclass(frozen=True)
class FitConfig:
    start: int = 1
    validation: int = DEFAULT_VALIDATION
    max_advance: int = DEFAULT_MAX_ADVANCE
    limit: int | None = None

    def enlarged(self, seen: int) -> "FitConfig":
        return FitConfig(max(2 * self.start, seen + 1), self.validation, self.max_advance, self.limit)


DEFAULT_CONFIG = FitConfig()


def _as_int(value, what: str) -> int:
    if value.denominator != 1:
        raise IntegralityError(f"{what} = {value} is not an integer")
    return int(value)


def _fit_summary(rep: FitReport) -> dict:
    pts = rep.window
    return {
        "stabilized": rep.stabilized,
        "advances": rep.advances,
        "window": [list(pts[0]) if isinstance(pts[0], tuple) else pts[0],
                   list(pts[-1]) if isinstance(pts[-1], tuple) else pts[-1]] if pts else [],
    }


# -- single multiplicities ---------------------------------------------------


@functools.lru_cache(maxsize=None)
def _hs(I: MonomialIdeal, config: FitConfig) -> tuple[int, FitReport]:
    if I.is_unit:
        raise ValueError("the unit ideal has no multiplicity")
    d = I.dim
    rep = fit_univariate(lambda p: colength(I**p), d, config.start, config.validation, config.max_advance, config.limit)
    rep.require()
    e = _as_int(rep.polynomial.coefficient(d) * math.factorial(d), f"e({I})")
    if e <= 0:
        raise IntegralityError(f"e({I}) = {e} is not positive")
    return e, rep


def hs_multiplicity(I: MonomialIdeal, config: FitConfig = DEFAULT_CONFIG) -> int:
    """Hilbert-Samuel multiplicity: d! times the leading coefficient of colength(I^p)."""
    return _hs(I, config)[0]


@dataclass(frozen=True)
class MixedMultiplicityTable:
    table: dict

    def total(self) -> int:
        return sum(self.table.values())

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, k)): str(v) for k, v in sorted(self.table.items())}


@functools.lru_cache(maxsize=None)
def _mixed(ideals: tuple[MonomialIdeal, ...], config: FitConfig) -> tuple[MixedMultiplicityTable, FitReport]:
    d = ideals[0].dim
    r = len(ideals)
    rep = fit_multivariate(
        lambda *ps: colength(power_product(ideals, ps)), r, d,
        config.start, config.validation, config.max_advance, config.limit,
    )
    rep.require()
    top = rep.polynomial.homogeneous_part(d)
    table = {}
    for alpha in sorted(itertools.product(range(d + 1), repeat=r)):
        if sum(alpha) != d:
            continue
        scale = math.prod(math.factorial(a) for a in alpha)
        e = _as_int(top.coefficient(alpha) * scale, f"mixed multiplicity of type {alpha}")
        if e <= 0:
            raise IntegralityError(f"mixed multiplicity of type {alpha} is {e}")
        table[alpha] = e
    return MixedMultiplicityTable(table), rep


def mixed_multiplicities(ideals: Sequence[MonomialIdeal], config: FitConfig = DEFAULT_CONFIG) -> MixedMultiplicityTable:
    """Mixed multiplicities from the degree-d part of colength(I_1^{p_1} ... I_r^{p_r})."""
    return _mixed(tuple(ideals), config)[0]


@functools.lru_cache(maxsize=None)
def _br(C: ModuleSpec, config: FitConfig) -> tuple[int, FitReport]:
    N = C.dim + C.r - 1
    rep = fit_univariate(lambda p: br_function(C, p), N, config.start, config.validation, config.max_advance, config.limit)
    rep.require()
    e = _as_int(rep.polynomial.coefficient(N) * math.factorial(N), f"e({C})")
    if e <= 0:
        raise IntegralityError(f"e({C}) = {e} is not positive")
    return e, rep


def br_multiplicity(C: ModuleSpec, config: FitConfig = DEFAULT_CONFIG) -> int:
    """Ordinary Buchsbaum-Rim multiplicity: (d+r-1)! times the leading coefficient of lambda(p)."""
    return _br(C, config)[0]


@dataclass(frozen=True)
class MultiplicityVector:
    values: tuple[int, ...]
    d: int
    r: int

    def violations(self) -> list[str]:
        v = self.values
        out = []
        if len(v) != self.d + self.r:
            out.append(f"expected {self.d + self.r} entries, got {len(v)}")
        if any(a < b for a, b in zip(v, v[1:])):
            out.append("not descending")
        if self.r - 1 < len(v) and v[self.r - 1] <= 0:
            out.append(f"e^{self.r - 1} is not positive")
        if any(v[self.r:]):
            out.append(f"nonzero entries from index {self.r}")
        return out

    def __getitem__(self, j: int) -> int:
        return self.values[j]

    def to_json(self) -> list[str]:
        return [str(x) for x in self.values]


@functools.lru_cache(maxsize=None)
def _assoc(C: ModuleSpec, config: FitConfig) -> tuple[MultiplicityVector, FitReport]:
    d, r = C.dim, C.r
    N = d + r - 1
    cfg = config
    problem = ""
    for attempt in range(2):
        rep = fit_bivariate_nested(
            lambda p, q: br_function2(C, p, q), r - 1, [N - i for i in range(r)],
            cone_region(r), cfg.start, cfg.validation, cfg.max_advance, cfg.limit,
        )
        seen = max(rep.window, default=cfg.start)
        if not rep.stabilized:
            problem = "two-variable fit did not stabilize"
        else:
            poly = rep.polynomial
            raw = [poly.coefficient(N - j, j) * math.factorial(N - j) * math.factorial(j) for j in range(N + 1)]
            if all(x.denominator == 1 for x in raw):
                vec = MultiplicityVector(tuple(int(x) for x in raw), d, r)
                bad = vec.violations()
                if not bad:
                    return vec, rep
                problem = "; ".join(bad)
            else:
                problem = f"non-integer normalized coefficients {[str(x) for x in raw]}"
        cfg = cfg.enlarged(seen)
    if "stabilize" in problem:
        raise FitError(f"associated multiplicities of {C}: {problem}")
    raise IntegralityError(f"associated multiplicities of {C}: {problem}")


def associated_multiplicities(C: ModuleSpec, config: FitConfig = DEFAULT_CONFIG) -> MultiplicityVector:
    """e^0(C), ..., e^{d+r-1}(C) from the fit of Lambda on q >= (p+1)r."""
    return _assoc(C, config)[0]


def l_multiplicity_sum(C: ModuleSpec, i: int, config: FitConfig = DEFAULT_CONFIG) -> int:
    """Sum of e(L_A) over subsets A of size i - 1 (1 <= i <= r)."""
    if not 1 <= i <= C.r:
        raise PreconditionError(f"i={i} outside 1..{C.r}")
    return sum(br_multiplicity(l_module(C, A), config) for A in itertools.combinations(range(C.r), i - 1))


# -- verification reports ----------------------------------------------------


@dataclass
class VerificationReport:
    identity: str
    inputs: dict
    lhs: object
    rhs: object
    passed: bool
    experimental: bool = False
    fit: dict = field(default_factory=dict)
    note: str = ""

    @property
    def hard_failure(self) -> bool:
        return not self.passed and not self.experimental

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, bool) or x is None:
                return x
            if isinstance(x, int):
                return str(x)
            if isinstance(x, (list, tuple)):
                return [enc(y) for y in x]
            if isinstance(x, dict):
                return {k: enc(v) for k, v in x.items()}
            return str(x)

        out = {
            "identity": self.identity,
            "inputs": self.inputs,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "pass": self.passed,
            "experimental": self.experimental,
            "fit": self.fit,
        }
        if self.note:
            out["note"] = self.note
        return out


def _inputs(C: ModuleSpec, **extra) -> dict:
    out = {"dim": C.dim, "ideals": [[list(g) for g in I.gens] for I in C.ideals]}
    out.update(extra)
    return out


def _precondition_failed(identity: str, C: ModuleSpec, why: str, **extra) -> VerificationReport:
    return VerificationReport(identity, _inputs(C, **extra), None, None, False, note=f"precondition failed: {why}")


def verify_main_theorem(C: ModuleSpec, config: FitConfig = DEFAULT_CONFIG) -> VerificationReport:
    """e^{r-2}(C) against E_{r-1} - (d+1)(r-1) e(I_1 + ... + I_r)."""
    if C.r < 2:
        return _precondition_failed("main", C, "needs r >= 2")
    d, r = C.dim, C.r
    vec, rep = _assoc(C, config)
    E = l_multiplicity_sum(C, 2, config)
    e_tot = hs_multiplicity(C.total(), config)
    rhs = E - (d + 1) * (r - 1) * e_tot
    return VerificationReport(
        "main", _inputs(C), vec[r - 2], rhs, vec[r - 2] == rhs,
        fit={"Lambda": _fit_summary(rep)},
        note=f"E = {E}, e(sum) = {e_tot}",
    )


def verify_last_multiplicity(C: ModuleSpec, config: FitConfig = DEFAULT_CONFIG) -> VerificationReport:
    """e^{r-1}(C) against e(I_1 + ... + I_r)."""
    vec, rep = _assoc(C, config)
    rhs = hs_multiplicity(C.total(), config)
    lhs = vec[C.r - 1]
    return VerificationReport("last", _inputs(C), lhs, rhs, lhs == rhs, fit={"Lambda": _fit_summary(rep)})


def verify_kirby_rees_sum(C: ModuleSpec, config: FitConfig = DEFAULT_CONFIG) -> VerificationReport:
    """e(C) against the sum of the mixed multiplicities of I_1, ..., I_r."""
    lhs, rep = _br(C, config)
    table, mrep = _mixed(C.ideals, config)
    rhs = table.total()
    return VerificationReport(
        "kirby-sum", _inputs(C), lhs, rhs, lhs == rhs,
        fit={"lambda": _fit_summary(rep), "mixed": _fit_summary(mrep)},
        note="mixed = " + ", ".join(f"{k}:{v}" for k, v in sorted(table.table.items())),
    )


def is_chain(C: ModuleSpec) -> bool:
    return all(is_contained(a, b) for a, b in zip(C.ideals, C.ideals[1:]))


def verify_nested_chain(C: ModuleSpec, j: int, config: FitConfig = DEFAULT_CONFIG) -> VerificationReport:
    """For I_1 in I_2 in ... in I_r: e^j(C) against e(R/I_{j+1} + ... + R/I_r)."""
    if not 0 <= j <= C.r - 1:
        return _precondition_failed("nested", C, f"j={j} outside 0..{C.r - 1}", j=j)
    if not is_chain(C):
        return _precondition_failed("nested", C, "ideals are not an ascending chain", j=j)
    vec, rep = _assoc(C, config)
    rhs = br_multiplicity(ModuleSpec(C.dim, C.ideals[j:]), config)
    return VerificationReport("nested", _inputs(C, j=j), vec[j], rhs, vec[j] == rhs, fit={"Lambda": _fit_summary(rep)})


def verify_corollary_largest(C: ModuleSpec, config: FitConfig = DEFAULT_CONFIG) -> VerificationReport:
    """When I_r contains every other I_i: e^{r-2}(C) against e(R/(I_1+...+I_{r-1}) + R/I_r)."""
    r = C.r
    if r < 2:
        return _precondition_failed("corollary", C, "needs r >= 2")
    if not all(is_contained(I, C.ideals[-1]) for I in C.ideals[:-1]):
        return _precondition_failed("corollary", C, "the last ideal does not contain the others")
    vec, rep = _assoc(C, config)
    head = sum_of(C.ideals[:-1], C.dim)
    rhs = br_multiplicity(ModuleSpec(C.dim, (head, C.ideals[-1])), config)
    return VerificationReport("corollary", _inputs(C), vec[r - 2], rhs, vec[r - 2] == rhs, fit={"Lambda": _fit_summary(rep)})


def probe_residual_degree(C: ModuleSpec, k: int, config: FitConfig = DEFAULT_CONFIG) -> VerificationReport:
    """q-degree of the residual F_k against the bound r - k - 1.

    Proven for k <= 2 (a failure there is a hard failure); experimental for k >= 3.
    """
    r = C.r
    if not 1 <= k <= r - 1:
        return _precondition_failed("residual-degree", C, f"k={k} outside 1..{r - 1}", k=k)
    N = C.dim + r - 1
    rep = fit_bivariate_nested(
        lambda p, q: residual(C, k, p, q), r - 1, [N - i for i in range(r)],
        cone_region(r), config.start, config.validation, config.max_advance, config.limit,
    )
    rep.require()
    deg = rep.polynomial.degree_in(1)
    bound = r - k - 1
    return VerificationReport(
        "residual-degree", _inputs(C, k=k), deg, bound, deg <= bound, experimental=k >= 3,
        fit={"residual": _fit_summary(rep)},
        note="degree -1 denotes the zero polynomial",
    )


def conjectural_formula_rhs(C: ModuleSpec, j: int, config: FitConfig = DEFAULT_CONFIG) -> int:
    d, r = C.dim, C.r
    return sum(
        binomial(d + j - 1, j - i) * (-(r - i)) ** (j - i) * l_multiplicity_sum(C, i, config)
        for i in range(1, j + 1)
    )


def probe_conjectural_formula(C: ModuleSpec, j: int, config: FitConfig = DEFAULT_CONFIG) -> VerificationReport:
    """e^{r-j}(C) against the alternating sum of L-module multiplicity sums.

    Proven for j <= 2; experimental for j >= 3.
    """
    r = C.r
    if not 1 <= j <= r - 1:
        return _precondition_failed("conjectural-formula", C, f"j={j} outside 1..{r - 1}", j=j)
    vec, rep = _assoc(C, config)
    rhs = conjectural_formula_rhs(C, j, config)
    lhs = vec[r - j]
    return VerificationReport(
        "conjectural-formula", _inputs(C, j=j), lhs, rhs, lhs == rhs, experimental=j >= 3,
        fit={"Lambda": _fit_summary(rep)},
    )


# -- pointwise identities over the admissible grid ----------------------------


def admissible_points(r: int, max_p: int, q_span: int, min_p: int = 1):
    for p in range(min_p, max_p + 1):
        q0 = (p + 1) * r
        for q in range(q0, q0 + q_span + 1):
            yield p, q


def _grid_report(identity: str, C: ModuleSpec, checks, **extra) -> VerificationReport:
    # checks: iterable of (label, lhs, rhs)
    total = 0
    good = 0
    first_bad = ""
    for label, lhs, rhs in checks:
        total += 1
        if lhs == rhs:
            good += 1
        elif not first_bad:
            first_bad = f"first mismatch at {label}: {lhs} != {rhs}"
    return VerificationReport(identity, _inputs(C, **extra), good, total, good == total, note=first_bad)


def region_identity_reports(C: ModuleSpec, max_p: int = 5, q_span: int = 8) -> list[VerificationReport]:
    """Partition of H_{p,q} into D/E cells, checked by direct region sums."""
    r = C.r
    pts = list(admissible_points(r, max_p, q_span))
    extra = {"max_p": max_p, "q_span": q_span}

    def partition():
        for p, q in pts:
            total = sum(br_function2_region(C, reg) for reg in all_D_regions(r, p, q))
            yield (p, q), total, br_function2(C, p, q)

    def cover():
        for p, q in pts:
            cells = all_D_regions(r, p, q)
            for n in compositions(p + q, r):
                yield (p, q, n), sum(reg.contains(n) for reg in cells), 1

    def split():
        for p, q in pts:
            for reg in all_D_regions(r, p, q):
                if reg.k > r - 2:
                    continue
                minus = RegionSpec("E-", p, q, reg.k, reg.A)
                plus = RegionSpec("E+", p, q, reg.k, reg.A)
                yield (p, q, reg.k, sorted(reg.A)), br_function2_region(C, reg), (
                    br_function2_region(C, minus) + br_function2_region(C, plus))

    def top():
        for p, q in pts:
            yield (p, q), br_function2_region(C, RegionSpec("Delta", p, q, r)), br_function2_region(C, RegionSpec("H_k", p, q, r))

    return [
        _grid_report("regions:partition", C, partition(), **extra),
        _grid_report("regions:exact-cover", C, cover(), **extra),
        _grid_report("regions:E-split", C, split(), **extra),
        _grid_report("regions:Delta-top", C, top(), **extra),
    ]


def closed_form_reports(C: ModuleSpec, max_p: int = 5, q_span: int = 8) -> list[VerificationReport]:
    """Closed forms of the partial sums of Lambda against direct region sums."""
    r = C.r
    pts = list(admissible_points(r, max_p, q_span))
    extra = {"max_p": max_p, "q_span": q_span}

    def delta_direct():
        for p, q in pts:
            for k in range(1, r + 1):
                yield (p, q, k), delta_sum_closed(C, p, q, k), br_function2_region(C, RegionSpec("Delta", p, q, k))

    def delta_split():
        for p, q in pts:
            for k in range(1, r + 1):
                yield (p, q, k), delta_sum_split(C, p, q, k), delta_sum_closed(C, p, q, k)

    def top():
        for p, q in pts:
            yield (p, q), top_stratum_closed(C, p, q), br_function2_region(C, RegionSpec("H_k", p, q, r))

    def nxt():
        for p, q in pts:
            yield (p, q), next_stratum_closed(C, p, q), br_function2_region(C, RegionSpec("H_k", p, q, r - 1))

    def lower():
        for p, q in pts:
            for k in range(1, r - 1):
                yield (p, q, k), lower_minus_closed(C, p, q, k), br_function2_region(C, RegionSpec("H-", p, q, k))

    def residual_split():
        for p, q in pts:
            lhs = residual(C, 2, p, q) + l_correction_sum(C, r - 1, p, q)
            rhs = (br_function2(C, p, q) - br_function2_region(C, RegionSpec("H_k", p, q, r))
                   - br_function2_region(C, RegionSpec("H_k", p, q, r - 1)))
            yield (p, q), lhs, rhs

    out = [
        _grid_report("props:delta-closed", C, delta_direct(), **extra),
        _grid_report("props:delta-split", C, delta_split(), **extra),
        _grid_report("props:top-stratum", C, top(), **extra),
    ]
    if r >= 2:
        out.append(_grid_report("props:next-stratum", C, nxt(), **extra))
        out.append(_grid_report("props:residual-split", C, residual_split(), **extra))
    if r >= 3:
        out.append(_grid_report("props:lower-minus", C, lower(), **extra))
    return out
