"""Monomial ideals of k[[x_1, ..., x_d]] and direct sums of their cyclic quotients.

An ideal is stored by its minimal generators, each an exponent vector, sorted
lexicographically.  Lengths of quotients are counts of standard monomials,
so nothing here depends on the coefficient field.
"""
from __future__ import annotations

import functools
import itertools
import os
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Exponent = tuple[int, ...]


def _cache_size() -> int | None:
    raw = os.environ.get("BRIM_CACHE_SIZE", "")
    if not raw:
        return 1 << 17
    size = int(raw)
    return None if size <= 0 else size


CACHE_SIZE = _cache_size()


class DimensionMismatch(ValueError):
    pass


class NotPrimaryError(ValueError):
    """Raised when a finite colength is required but the ideal is not m-primary."""


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal in ``dim`` variables.

    The constructor minimalizes ``gens``; two ideals compare equal exactly
    when they are the same ideal.
    """

    dim: int
    gens: tuple[Exponent, ...]

    def __post_init__(self):
        canon = _minimal_gens(self.gens, self.dim)
        object.__setattr__(self, "gens", canon)

    @classmethod
    def _trusted(cls, dim: int, gens: tuple[Exponent, ...]) -> "MonomialIdeal":
        # gens already minimal and sorted
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "gens", gens)
        return obj

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls._trusted(dim, ((0,) * dim,))

    @classmethod
    def zero(cls, dim: int) -> "MonomialIdeal":
        return cls._trusted(dim, ())

    @classmethod
    def maximal(cls, dim: int) -> "MonomialIdeal":
        return cls._trusted(dim, tuple(sorted(_axis(dim, i, 1) for i in range(dim))))

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def pure_powers(self) -> tuple[int, ...] | None:
        """Smallest ``a_i`` with ``x_i^a_i`` in the ideal, or None if some axis has none."""
        best = [None] * self.dim
        for g in self.gens:
            support = [i for i, c in enumerate(g) if c]
            if len(support) > 1:
                continue
            if not support:
                return (0,) * self.dim
            i = support[0]
            if best[i] is None or g[i] < best[i]:
                best[i] = g[i]
        if any(b is None for b in best):
            return None
        return tuple(best)

    def __contains__(self, e) -> bool:
        return contains(self, e)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "MonomialIdeal":
        return ideal_power(self, n)

    def __le__(self, other: "MonomialIdeal") -> bool:
        return is_contained(self, other)

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.dim}, {list(self.gens)})"

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(monomial_str(g) for g in reversed(self.gens)) + ")"


def _axis(dim: int, i: int, a: int) -> Exponent:
    e = [0] * dim
    e[i] = a
    return tuple(e)


def monomial_str(e: Exponent) -> str:
    names = "xyz" if len(e) <= 3 else None
    parts = []
    for i, c in enumerate(e):
        if not c:
            continue
        v = names[i] if names else f"x{i + 1}"
        parts.append(v if c == 1 else f"{v}^{c}")
    return "*".join(parts) or "1"


def _minimal_gens(raw: Iterable[Sequence[int]], dim: int) -> tuple[Exponent, ...]:
    pts = set()
    for g in raw:
        e = tuple(int(c) for c in g)
        if len(e) != dim:
            raise DimensionMismatch(f"exponent {e} has length {len(e)}, expected {dim}")
        if any(c < 0 for c in e):
            raise ValueError(f"negative exponent in {e}")
        pts.add(e)
    return _minimal_sorted(sorted(pts), dim)


def _minimal_sorted(pts: list[Exponent], dim: int) -> tuple[Exponent, ...]:
    # pts sorted lexicographically, duplicates allowed.  A dominating generator
    # always sorts before what it dominates, so one forward pass suffices.
    if not pts:
        return ()
    if dim == 1:
        return (pts[0],)
    if dim == 2:
        kept = []
        min_y = None
        for e in pts:
            if min_y is None or e[1] < min_y:
                kept.append(e)
                min_y = e[1]
        return tuple(kept)
    kept = []
    for e in pts:
        for g in kept:
            if all(a <= b for a, b in zip(g, e)):
                break
        else:
            kept.append(e)
    return tuple(kept)


def minimalize(raw_gens: Iterable[Sequence[int]], dim: int) -> MonomialIdeal:
    """Drop redundant generators and sort; the generated ideal is unchanged."""
    return MonomialIdeal._trusted(dim, _minimal_gens(raw_gens, dim))


def _check_dims(*ideals: MonomialIdeal):
    dims = {I.dim for I in ideals}
    if len(dims) > 1:
        raise DimensionMismatch(f"ideals live in different dimensions {sorted(dims)}")


def contains(I: MonomialIdeal, e: Sequence[int]) -> bool:
    if len(e) != I.dim:
        raise DimensionMismatch(f"exponent {tuple(e)} does not have length {I.dim}")
    return any(all(a <= b for a, b in zip(g, e)) for g in I.gens)


def is_contained(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True when I is a subset of J (every generator of I lies in J)."""
    _check_dims(I, J)
    return all(contains(J, g) for g in I.gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_dims(I, J)
    return MonomialIdeal._trusted(I.dim, _minimal_sorted(sorted(I.gens + J.gens), I.dim))


def sum_of(ideals: Iterable[MonomialIdeal], dim: int) -> MonomialIdeal:
    """Sum of any number of ideals; the empty sum is the zero ideal."""
    gens: list[Exponent] = []
    for I in ideals:
        if I.dim != dim:
            raise DimensionMismatch(f"ideal of dimension {I.dim} in a sum over dimension {dim}")
        gens.extend(I.gens)
    gens.sort()
    return MonomialIdeal._trusted(dim, _minimal_sorted(gens, dim))


@functools.lru_cache(maxsize=CACHE_SIZE)
def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_dims(I, J)
    if I.is_unit:
        return J
    if J.is_unit:
        return I
    pts = sorted({tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens})
    return MonomialIdeal._trusted(I.dim, _minimal_sorted(pts, I.dim))


@functools.lru_cache(maxsize=CACHE_SIZE)
def ideal_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return MonomialIdeal.unit(I.dim)
    if n == 1:
        return I
    half = ideal_power(I, n // 2)
    sq = ideal_product(half, half)
    return ideal_product(sq, I) if n % 2 else sq


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_dims(I, J)
    return minimalize((tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens), I.dim)


def power_product(ideals: Sequence[MonomialIdeal], exps: Sequence[int]) -> MonomialIdeal:
    """The product ``I_1^{i_1} ... I_r^{i_r}``."""
    return _power_product(tuple(ideals), tuple(exps))


@functools.lru_cache(maxsize=CACHE_SIZE)
def _power_product(ideals: tuple[MonomialIdeal, ...], exps: tuple[int, ...]) -> MonomialIdeal:
    if len(ideals) != len(exps):
        raise ValueError("one exponent per ideal is required")
    acc = MonomialIdeal.unit(ideals[0].dim)
    for I, n in zip(ideals, exps):
        if n:
            acc = ideal_product(acc, ideal_power(I, n))
    return acc


def is_m_primary(I: MonomialIdeal) -> bool:
    """Every variable has a pure power in I.  The unit ideal counts (colength 0)."""
    return I.pure_powers() is not None


@functools.lru_cache(maxsize=CACHE_SIZE)
def colength(I: MonomialIdeal) -> int:
    """Number of standard monomials, i.e. the length of R/I."""
    box = I.pure_powers()
    if box is None:
        raise NotPrimaryError(f"{I} is not m-primary; its colength is infinite")
    if I.is_unit:
        return 0
    if I.dim == 1:
        return box[0]
    if I.dim == 2:
        # staircase: gens run x ascending, y strictly descending
        g = I.gens
        return sum((g[k + 1][0] - g[k][0]) * g[k][1] for k in range(len(g) - 1))
    inside = np.zeros(box, dtype=bool)
    for g in I.gens:
        inside[tuple(slice(c, None) for c in g)] = True
    return int(inside.size - np.count_nonzero(inside))


def standard_monomials(I: MonomialIdeal) -> list[Exponent]:
    box = I.pure_powers()
    if box is None:
        raise NotPrimaryError(f"{I} is not m-primary")
    return [e for e in itertools.product(*(range(a) for a in box)) if not contains(I, e)]


def random_m_primary_ideal(dim: int, max_pure_power: int, extra_gens: int, rng_seed) -> MonomialIdeal:
    """Seeded random m-primary, non-unit monomial ideal.

    Pure powers are drawn from ``1..max_pure_power``; up to ``extra_gens``
    mixed generators (every variable present) of total degree at most
    ``max_pure_power`` are drawn from below the pure-power box.
    """
    if max_pure_power < 1:
        raise ValueError("max_pure_power must be at least 1")
    rng = random.Random(rng_seed)
    box = [rng.randint(1, max_pure_power) for _ in range(dim)]
    gens = [_axis(dim, i, a) for i, a in enumerate(box)]
    if min(box) < 2 or dim < 2:
        return minimalize(gens, dim)
    for _ in range(extra_gens):
        # every variable appears, so the pure powers stay as drawn
        for _attempt in range(20):
            e = tuple(rng.randrange(1, a) for a in box)
            if sum(e) <= max_pure_power:
                gens.append(e)
                break
    return minimalize(gens, dim)


@dataclass(frozen=True)
class ModuleSpec:
    """The module R/I_1 + ... + R/I_r (direct sum) given by m-primary monomial ideals."""

    dim: int
    ideals: tuple[MonomialIdeal, ...]

    def __post_init__(self):
        object.__setattr__(self, "ideals", tuple(self.ideals))
        if not self.ideals:
            raise ValueError("a module needs at least one summand")
        for I in self.ideals:
            if I.dim != self.dim:
                raise DimensionMismatch(f"{I} is not an ideal in {self.dim} variables")
            if not is_m_primary(I):
                raise NotPrimaryError(f"{I} is not m-primary")
            if I.is_unit:
                raise ValueError("the unit ideal gives a zero summand and is not allowed")

    @classmethod
    def of(cls, *ideals: MonomialIdeal) -> "ModuleSpec":
        return cls(ideals[0].dim, tuple(ideals))

    @property
    def r(self) -> int:
        return len(self.ideals)

    def total(self) -> MonomialIdeal:
        """I_1 + ... + I_r."""
        return sum_of(self.ideals, self.dim)

    def permuted(self, order: Sequence[int]) -> "ModuleSpec":
        return ModuleSpec(self.dim, tuple(self.ideals[i] for i in order))

    def __str__(self) -> str:
        return " + ".join(f"R/{I}" for I in self.ideals)


def random_module(dim: int, r: int, max_pure_power: int, extra_gens: int, rng_seed) -> ModuleSpec:
    rng = random.Random(rng_seed)
    ideals = tuple(
        random_m_primary_ideal(dim, max_pure_power, extra_gens, rng.getrandbits(64)) for _ in range(r)
    )
    return ModuleSpec(dim, ideals)
