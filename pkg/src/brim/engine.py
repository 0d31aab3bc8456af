"""Buchsbaum-Rim functions of C = R/I_1 + ... + R/I_r (direct sum).

Both functions are computed through the lattice description

    Lambda(p, q) = sum over n in H_{p,q} of colength(J_p(n)),
    J_p(n)       = sum over |i| = p, 0 <= i <= n of I_1^{i_1} ... I_r^{i_r},

where H_{p,q} is the set of compositions of p + q into r parts, and the
ordinary function is lambda(p) = Lambda(p, 0).  Coordinates of ``n`` and
subsets ``A`` of the summands are 0-based throughout.

The region helpers split H_{p,q} by how many coordinates exceed p and by
the size of the remaining coordinates; the ``*_closed`` functions evaluate
known closed forms for the resulting partial sums.
"""
from __future__ import annotations

import functools
import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ideals import CACHE_SIZE, ModuleSpec, MonomialIdeal, colength, power_product, sum_of
from .polyfit import binomial, compositions


class PreconditionError(ValueError):
    pass


def _admissible(C: ModuleSpec, p: int, q: int):
    if p < 0 or q < (p + 1) * C.r:
        raise PreconditionError(f"need p >= 0 and q >= (p+1)r = {(p + 1) * C.r}, got p={p}, q={q}")


def _check_k(C: ModuleSpec, k: int, lo: int = 1, hi: int | None = None):
    hi = C.r if hi is None else hi
    if not lo <= k <= hi:
        raise PreconditionError(f"k={k} outside {lo}..{hi}")


def bounded_compositions(total: int, parts: int, cap: int):
    """Compositions of ``total`` into ``parts`` entries, each at most ``cap``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), max(-1, total - cap * (parts - 1) - 1), -1):
        for rest in bounded_compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def mixed_power_sum(C: ModuleSpec, p: int, n: Sequence[int]) -> MonomialIdeal:
    """The ideal J_p(n) by direct summation over admissible ``i``."""
    n = tuple(n)
    if len(n) != C.r or min(n) < 0:
        raise ValueError(f"n must be a non-negative {C.r}-vector")
    if sum(n) < p:
        raise ValueError(f"|n| = {sum(n)} < p = {p}: empty index set")
    terms = [
        power_product(C.ideals, i)
        for i in compositions(p, C.r)
        if all(a <= b for a, b in zip(i, n))
    ]
    return sum_of(terms, C.dim)


@functools.lru_cache(maxsize=256)
def _truncated_colengths(C: ModuleSpec, p: int) -> dict[tuple[int, ...], int]:
    """colength(J_p(m)) for every m in [0, p]^r with |m| >= p.

    J_p(n) only depends on min(n, p).  Layers are built upward: on |m| = p
    the ideal is I^m, and above that J_p(m) is the sum of J_p(m - e_j).
    """
    r = C.r
    prev = {m: power_product(C.ideals, m) for m in compositions(p, r)}
    table = {m: colength(J) for m, J in prev.items()}
    for s in range(p + 1, r * p + 1):
        cur = {}
        for m in bounded_compositions(s, r, p):
            parts = []
            for j in range(r):
                if m[j]:
                    parts.append(prev[m[:j] + (m[j] - 1,) + m[j + 1:]])
            cur[m] = sum_of(parts, C.dim)
        table.update((m, colength(J)) for m, J in cur.items())
        prev = cur
    return table


@functools.lru_cache(maxsize=256)
def _weights(C: ModuleSpec, p: int) -> dict[tuple[int, int], int]:
    # group by (number of coordinates equal to p, sum of the others)
    w: dict[tuple[int, int], int] = defaultdict(int)
    for m, c in _truncated_colengths(C, p).items():
        if c:
            t = sum(1 for a in m if a == p)
            w[(t, sum(m) - t * p)] += c
    return dict(w)


def _fiber_count(t: int, rest: int, p: int, q: int) -> int:
    # number of n with |n| = p + q whose truncation has t coordinates at p
    # and the other coordinates fixed with sum ``rest``
    if t == 0:
        return int(rest == p + q)
    free = p + q - rest - t * p
    return binomial(free + t - 1, t - 1) if free >= 0 else 0


def br_function2(C: ModuleSpec, p: int, q: int, method: str = "grouped") -> int:
    """Lambda(p, q), the two-variable Buchsbaum-Rim function.

    ``grouped`` sums each truncation class of H_{p,q} at once;
    ``enumerate`` walks every composition and builds J_p(n) directly.
    """
    if p < 0 or q < 0:
        raise ValueError("p and q must be non-negative")
    if method == "grouped":
        return sum(c * _fiber_count(t, rest, p, q) for (t, rest), c in _weights(C, p).items())
    if method == "enumerate":
        return sum(_direct_colength(C, p, tuple(min(a, p) for a in n)) for n in compositions(p + q, C.r))
    raise ValueError(f"unknown method {method!r}")


@functools.lru_cache(maxsize=CACHE_SIZE)
def _direct_colength(C: ModuleSpec, p: int, m: tuple[int, ...]) -> int:
    return colength(mixed_power_sum(C, p, m))


@functools.lru_cache(maxsize=CACHE_SIZE)
def br_function(C: ModuleSpec, p: int) -> int:
    """lambda(p) = sum over |i| = p of colength(I_1^{i_1} ... I_r^{i_r})."""
    return sum(colength(power_product(C.ideals, i)) for i in compositions(p, C.r))


REGION_KINDS = ("H", "H_k", "D", "E-", "E+", "Delta", "H-", "H+")


@dataclass(frozen=True)
class RegionSpec:
    """A subset of H_{p,q}.

    ``H``      every composition
    ``H_k``    exactly k coordinates exceed p
    ``D``      the coordinates exceeding p are exactly those outside A (#A = r - k)
    ``E-/E+``  D split by whether the coordinates in A sum to at most p
    ``Delta``  first k coordinates exceed p, the rest sum to at most p
    ``H-/H+``  union over A of E-/E+
    """

    kind: str
    p: int
    q: int
    k: int | None = None
    A: frozenset | None = None

    def __post_init__(self):
        if self.A is not None:
            object.__setattr__(self, "A", frozenset(self.A))

    def validate(self, r: int):
        if self.kind not in REGION_KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be non-negative")
        if self.kind == "H":
            return
        if self.k is None or not 0 <= self.k <= r:
            raise ValueError(f"region {self.kind} needs 0 <= k <= {r}")
        if self.kind in ("D", "E-", "E+"):
            if self.A is None or len(self.A) != r - self.k or not self.A <= set(range(r)):
                raise ValueError(f"region {self.kind} needs A with #A = r - k = {r - self.k}")

    def contains(self, n: Sequence[int]) -> bool:
        p, kind = self.p, self.kind
        if kind == "H":
            return True
        if kind == "Delta":
            k = self.k
            return all(a > p for a in n[:k]) and sum(n[k:]) <= p
        small = [i for i, a in enumerate(n) if a <= p]
        if len(n) - len(small) != self.k:
            return False
        if kind == "H_k":
            return True
        low = sum(n[i] for i in small)
        if kind == "H-":
            return low <= p
        if kind == "H+":
            return low > p
        if frozenset(small) != self.A:
            return False
        if kind == "D":
            return True
        return low <= p if kind == "E-" else low > p


def region_members(r: int, region: RegionSpec) -> Iterable[tuple[int, ...]]:
    region.validate(r)
    return (n for n in compositions(region.p + region.q, r) if region.contains(n))


def br_function2_region(C: ModuleSpec, region: RegionSpec) -> int:
    """Lambda restricted to a region, by enumerating its members."""
    p = region.p
    table = _truncated_colengths(C, p)
    return sum(table[tuple(min(a, p) for a in n)] for n in region_members(C.r, region))


def classify(n: Sequence[int], p: int) -> tuple[int, frozenset, str]:
    """(k, A, sign) of the unique D/E cell holding ``n`` when k >= 1."""
    small = frozenset(i for i, a in enumerate(n) if a <= p)
    k = len(n) - len(small)
    sign = "-" if sum(n[i] for i in small) <= p else "+"
    return k, small, sign


def all_D_regions(r: int, p: int, q: int) -> list[RegionSpec]:
    out = []
    for k in range(1, r + 1):
        for A in itertools.combinations(range(r), r - k):
            out.append(RegionSpec("D", p, q, k, frozenset(A)))
    return out


# -- closed forms -----------------------------------------------------------


def l_module(C: ModuleSpec, A: Iterable[int]) -> ModuleSpec:
    """R/K + sum over j in A of R/(K + I_j), with K the sum of I_s over s not in A."""
    A = sorted(set(A))
    if len(A) >= C.r or any(not 0 <= j < C.r for j in A):
        raise PreconditionError(f"A must be a proper subset of 0..{C.r - 1}, got {A}")
    K = sum_of((C.ideals[s] for s in range(C.r) if s not in A), C.dim)
    return ModuleSpec(C.dim, (K,) + tuple(K + C.ideals[j] for j in A))


def _cell_terms(C: ModuleSpec, p: int, A: Sequence[int]):
    """(sum of n_A, colength of the cell ideal) for each n_A with sum at most p.

    The cell ideal is K^{p - |n_A|} times the product of (K + I_j)^{n_j}.
    """
    L = l_module(C, A)
    for s in range(p + 1):
        for nA in compositions(s, len(A)):
            yield s, colength(power_product(L.ideals, (p - s,) + nA))


def _cell_sum_closed(C: ModuleSpec, p: int, q: int, A: Sequence[int]) -> int:
    k = C.r - len(A)
    return sum(binomial(q - (k - 1) * p - 1 - s, k - 1) * c for s, c in _cell_terms(C, p, A))


def _correction(C: ModuleSpec, p: int, q: int, A: Sequence[int]) -> int:
    k = C.r - len(A)
    total = 0
    for s, c in _cell_terms(C, p, A):
        if c:
            total += c * sum(binomial(q - (k - 1) * p - 2 - i, k - 2) for i in range(s))
    return total


def delta_sum_closed(C: ModuleSpec, p: int, q: int, k: int) -> int:
    """Closed form of Lambda over Delta^(k) as a single sum over the short coordinates."""
    _admissible(C, p, q)
    _check_k(C, k)
    return _cell_sum_closed(C, p, q, range(k, C.r))


def delta_sum_split(C: ModuleSpec, p: int, q: int, k: int) -> int:
    """Lambda over Delta^(k) written as binom * lambda_{L_k}(p) minus a correction."""
    _admissible(C, p, q)
    _check_k(C, k)
    A = range(k, C.r)
    lead = binomial(q - (k - 1) * p - 1, k - 1) * br_function(l_module(C, A), p)
    return lead - _correction(C, p, q, A)


def top_stratum_closed(C: ModuleSpec, p: int, q: int) -> int:
    """Lambda over H^(r): binom(q-(r-1)p-1, r-1) times the Hilbert-Samuel function of I_1+...+I_r."""
    _admissible(C, p, q)
    r = C.r
    return binomial(q - (r - 1) * p - 1, r - 1) * colength(C.total() ** p)


def next_stratum_closed(C: ModuleSpec, p: int, q: int) -> int:
    """Lambda over H^(r-1) through the two-summand modules L_j (needs r >= 2)."""
    _admissible(C, p, q)
    r = C.r
    if r < 2:
        raise PreconditionError("H^(r-1) needs r >= 2")
    total = C.total()
    lead = 0
    corr = 0
    for j in range(r):
        hat = sum_of((C.ideals[s] for s in range(r) if s != j), C.dim)
        lead += br_function(ModuleSpec(C.dim, (hat, total)), p)
        for n in range(p + 1):
            c = colength(hat ** (p - n) * total**n)
            corr += c * sum(binomial(q - (r - 2) * p - 2 - i, r - 3) for i in range(n))
    return binomial(q - (r - 2) * p - 1, r - 2) * lead - corr


def lower_minus_closed(C: ModuleSpec, p: int, q: int, k: int) -> int:
    """Lambda over H_-^(k) for 1 <= k <= r - 2."""
    _admissible(C, p, q)
    _check_k(C, k, 1, C.r - 2)
    return binomial(q - (k - 1) * p - 1, k - 1) * l_lambda_sum(C, k, p) - l_correction_sum(C, k, p, q)


def l_lambda_sum(C: ModuleSpec, k: int, p: int) -> int:
    """Sum of lambda_{L_A}(p) over #A = r - k (for k = r: lambda of R/(I_1+...+I_r))."""
    _check_k(C, k)
    return sum(br_function(l_module(C, A), p) for A in itertools.combinations(range(C.r), C.r - k))


def l_correction_sum(C: ModuleSpec, k: int, p: int, q: int) -> int:
    """The non-negative correction paired with :func:`l_lambda_sum`; zero for k = 1 and k = r."""
    _check_k(C, k)
    _admissible(C, p, q)
    if k == C.r:
        return 0
    return sum(_correction(C, p, q, A) for A in itertools.combinations(range(C.r), C.r - k))


def residual(C: ModuleSpec, k: int, p: int, q: int) -> int:
    """Lambda(p, q) minus the first k binomial-weighted L-module sums."""
    _check_k(C, k)
    _admissible(C, p, q)
    r = C.r
    out = br_function2(C, p, q)
    for i in range(1, k + 1):
        out -= binomial(q - (r - i) * p - 1, r - i) * l_lambda_sum(C, r - i + 1, p)
    return out
