import json

import pytest

from brim.formats import (
    ParseError,
    dumps,
    grid_rows,
    ideal_from_json,
    ideal_to_json,
    load_module,
    module_from_json,
    module_to_json,
    parse_ideal_string,
    parse_monomial,
)
from brim.ideals import ModuleSpec, MonomialIdeal


def test_parse_examples():
    assert parse_ideal_string("x^2, x*y, y^3", 2).gens == ((0, 3), (1, 1), (2, 0))
    assert parse_ideal_string("x, y", 2) == MonomialIdeal.maximal(2)
    assert parse_ideal_string("x^2, y, x^3", 2).gens == ((0, 1), (2, 0))


def test_parse_variants():
    assert parse_monomial("x y^2", 2) == (1, 2)
    assert parse_monomial("x*x", 2) == (2, 0)
    assert parse_monomial("1", 3) == (0, 0, 0)
    assert parse_monomial("x1^2*x4", 4) == (2, 0, 0, 1)
    assert parse_monomial("x2 x3^3", 3) == (0, 1, 3)
    assert parse_monomial("z^2", 3) == (0, 0, 2)


@pytest.mark.parametrize("text,dim", [
    ("", 2), (" , ", 2), ("w", 2), ("z", 2), ("x^", 2), ("x^a", 2), ("x5", 3), ("y1", 2), ("x+y", 2), ("x, , y^-1", 2),
])
def test_parse_errors(text, dim):
    with pytest.raises(ParseError):
        parse_ideal_string(text, dim)


def test_json_round_trips(tmp_path):
    I = parse_ideal_string("x^2, x*y, y^3", 2)
    assert ideal_to_json(I) == {"dim": 2, "gens": [[0, 3], [1, 1], [2, 0]]}
    assert ideal_from_json(ideal_to_json(I)) == I
    C = ModuleSpec.of(I, MonomialIdeal.maximal(2))
    assert module_from_json(module_to_json(C)) == C
    path = tmp_path / "c.json"
    path.write_text(json.dumps(module_to_json(C)))
    assert load_module(path) == C
    with pytest.raises(ParseError):
        module_from_json({"dim": 2, "ideals": []})


def test_grid_rows_and_dumps():
    rows = grid_rows([(1, 4, 10**25)])
    assert rows == [{"p": 1, "q": 4, "lambda": str(10**25)}]
    assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'
