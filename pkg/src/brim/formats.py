"""Text and JSON forms of ideals, modules and computed values.

Monomial strings look like ``"x^2, x*y, y^3"``: variables ``x, y, z`` when
``dim <= 3`` or ``x1 .. xd`` in any dimension, ``^`` for powers, ``*`` and
whitespace optional between factors.  JSON never carries a computed integer
as a number; they are decimal strings so that consumers cannot overflow.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable

from .ideals import ModuleSpec, MonomialIdeal, minimalize


class ParseError(ValueError):
    pass


_VAR = re.compile(r"([A-Za-z])(\d*)")
_EXP = re.compile(r"\^(\d+)")


def _variable_index(letter: str, digits: str, dim: int) -> int:
    if digits:
        if letter != "x":
            raise ParseError(f"unknown variable {letter}{digits}")
        i = int(digits) - 1
        if not 0 <= i < dim:
            raise ParseError(f"unknown variable x{digits} in dimension {dim}")
        return i
    names = "xyz"[:dim] if dim <= 3 else ""
    if letter not in names:
        raise ParseError(f"unknown variable {letter!r} in dimension {dim}")
    return names.index(letter)


def parse_monomial(text: str, dim: int) -> tuple[int, ...]:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty generator")
    e = [0] * dim
    if s == "1":
        return tuple(e)
    pos = 0
    while pos < len(s):
        if s[pos] == "*":
            pos += 1
            continue
        m = _VAR.match(s, pos)
        if not m:
            raise ParseError(f"unexpected {s[pos:]!r} in {text!r}")
        i = _variable_index(m.group(1), m.group(2), dim)
        pos = m.end()
        power = 1
        if pos < len(s) and s[pos] == "^":
            em = _EXP.match(s, pos)
            if not em:
                raise ParseError(f"malformed exponent in {text!r}")
            power = int(em.group(1))
            pos = em.end()
        e[i] += power
    return tuple(e)


def parse_ideal_string(text: str, dim: int) -> MonomialIdeal:
    """Parse comma-separated monomials into a minimalized ideal."""
    pieces = [t for t in text.split(",") if t.strip()]
    if not pieces:
        raise ParseError("an ideal needs at least one generator")
    return minimalize([parse_monomial(t, dim) for t in pieces], dim)


def ideal_to_json(I: MonomialIdeal) -> dict:
    return {"dim": I.dim, "gens": [list(g) for g in I.gens]}


def ideal_from_json(data: dict) -> MonomialIdeal:
    return minimalize([tuple(g) for g in data["gens"]], int(data["dim"]))


def module_to_json(C: ModuleSpec) -> dict:
    return {"dim": C.dim, "ideals": [[list(g) for g in I.gens] for I in C.ideals]}


def module_from_json(data: dict) -> ModuleSpec:
    dim = int(data["dim"])
    ideals = data["ideals"]
    if not ideals:
        raise ParseError("no ideals given")
    return ModuleSpec(dim, tuple(minimalize([tuple(g) for g in gens], dim) for gens in ideals))


def load_module(path: str | Path) -> ModuleSpec:
    return module_from_json(json.loads(Path(path).read_text()))


def grid_rows(values: Iterable[tuple[int, int, int]]) -> list[dict]:
    """Rows ``{"p", "q", "lambda"}`` of a Lambda grid dump."""
    return [{"p": p, "q": q, "lambda": str(v)} for p, q, v in values]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
