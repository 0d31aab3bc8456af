import math

import pytest
from hypothesis import given, strategies as st

from brim.engine import (
    PreconditionError,
    RegionSpec,
    all_D_regions,
    br_function,
    br_function2,
    br_function2_region,
    classify,
    delta_sum_closed,
    delta_sum_split,
    l_correction_sum,
    l_lambda_sum,
    l_module,
    lower_minus_closed,
    mixed_power_sum,
    next_stratum_closed,
    region_members,
    residual,
    top_stratum_closed,
)
from brim.ideals import ModuleSpec, MonomialIdeal, colength, minimalize, random_module
from brim.polyfit import compositions

from oracles import brute_Lambda, brute_lambda

m = MonomialIdeal.maximal(2)
m2 = m**2
x2y = minimalize([(2, 0), (0, 1)], 2)
xy2 = minimalize([(1, 0), (0, 2)], 2)

SMALL = {
    "m2_m": ModuleSpec.of(m2, m),
    "x2y_xy2": ModuleSpec.of(x2y, xy2),
    "m_m_x2y": ModuleSpec.of(m, m, x2y),
}


def gen_lists(C):
    return [list(I.gens) for I in C.ideals]


@st.composite
def modules(draw, r_values=(2, 3)):
    r = draw(st.sampled_from(r_values))
    seed = draw(st.integers(0, 10_000))
    return random_module(2, r, 3, 1, seed)


# J and Lambda --------------------------------------------------------------

def test_mixed_power_sum_examples():
    C = SMALL["m2_m"]
    assert mixed_power_sum(C, 2, (1, 3)) == m2
    assert mixed_power_sum(C, 0, (4, 4)).is_unit
    single = ModuleSpec.of(x2y)
    assert mixed_power_sum(single, 3, (7,)) == x2y**3
    with pytest.raises(ValueError):
        mixed_power_sum(C, 3, (1, 1))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_Lambda_matches_definition(name):
    C = SMALL[name]
    r = C.r
    for p in range(0, 4 if r == 2 else 3):
        for q in range(0, (p + 1) * r + 3):
            expect = brute_Lambda(gen_lists(C), 2, p, q)
            assert br_function2(C, p, q) == expect, (p, q)
            assert br_function2(C, p, q, method="enumerate") == expect


@pytest.mark.parametrize("name", sorted(SMALL))
def test_lambda_matches_definition(name):
    C = SMALL[name]
    for p in range(5):
        assert br_function(C, p) == brute_lambda(gen_lists(C), 2, p)


@given(modules(), st.integers(0, 4), st.integers(0, 12))
def test_grouped_equals_enumeration(C, p, q):
    assert br_function2(C, p, q) == br_function2(C, p, q, method="enumerate")


def test_Lambda_boundaries():
    for C in SMALL.values():
        for p in range(5):
            assert br_function2(C, p, 0) == br_function(C, p)
        for q in range(8):
            assert br_function2(C, 0, q) == 0
    assert br_function(SMALL["m2_m"], 0) == 0


def test_single_summand_collapse():
    C = ModuleSpec.of(x2y)
    for p in range(5):
        for q in range(4):
            assert br_function2(C, p, q) == colength(x2y**p)


def test_equal_ideals_lambda():
    for I in (m, m2, x2y):
        for r in (2, 3):
            C = ModuleSpec(2, (I,) * r)
            for p in range(6):
                assert br_function(C, p) == math.comb(p + r - 1, r - 1) * colength(I**p)
    C = ModuleSpec.of(m, m)
    for p in range(8):
        assert br_function(C, p) == (p + 1) * p * (p + 1) // 2


@given(modules(), st.integers(0, 4), st.integers(0, 14), st.randoms())
def test_Lambda_permutation_invariant(C, p, q, rnd):
    order = list(range(C.r))
    rnd.shuffle(order)
    assert br_function2(C.permuted(order), p, q) == br_function2(C, p, q)


@given(modules(), st.integers(0, 4), st.integers(0, 14))
def test_Lambda_monotone_in_q(C, p, q):
    assert br_function2(C, p, q + 1) >= br_function2(C, p, q)


def test_bad_method():
    with pytest.raises(ValueError):
        br_function2(SMALL["m2_m"], 1, 1, method="magic")


# regions -------------------------------------------------------------------

def test_region_validation():
    with pytest.raises(ValueError):
        RegionSpec("D", 1, 5, 1, frozenset()).validate(2)
    with pytest.raises(ValueError):
        RegionSpec("nope", 1, 5).validate(2)
    with pytest.raises(ValueError):
        RegionSpec("H_k", 1, 5).validate(2)
    RegionSpec("D", 1, 5, 1, frozenset({1})).validate(2)


def test_full_region_equals_Lambda():
    for C in SMALL.values():
        for p in range(4):
            for q in range(10):
                assert br_function2_region(C, RegionSpec("H", p, q)) == br_function2(C, p, q)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_admissible_compositions_fall_in_one_cell(r):
    for p in range(4):
        q = (p + 1) * r
        cells = all_D_regions(r, p, q)
        for n in compositions(p + q, r):
            hits = [reg for reg in cells if reg.contains(n)]
            assert len(hits) == 1
            k, A, _ = classify(n, p)
            assert hits[0].k == k and hits[0].A == A and k >= 1


def test_unadmissible_has_H0():
    # below the cone some compositions have no large coordinate
    members = list(region_members(2, RegionSpec("H_k", 2, 2, 0)))
    assert (2, 2) in members


@given(modules(), st.integers(1, 4), st.integers(0, 6))
def test_partition_and_splits(C, p, extra):
    r = C.r
    q = (p + 1) * r + extra
    cells = all_D_regions(r, p, q)
    assert sum(br_function2_region(C, reg) for reg in cells) == br_function2(C, p, q)
    for reg in cells:
        if reg.k <= r - 2:
            minus = br_function2_region(C, RegionSpec("E-", p, q, reg.k, reg.A))
            plus = br_function2_region(C, RegionSpec("E+", p, q, reg.k, reg.A))
            assert br_function2_region(C, reg) == minus + plus
    assert br_function2_region(C, RegionSpec("Delta", p, q, r)) == br_function2_region(C, RegionSpec("H_k", p, q, r))


# closed forms --------------------------------------------------------------

@given(modules(), st.integers(1, 4), st.integers(0, 6))
def test_delta_closed_forms(C, p, extra):
    q = (p + 1) * C.r + extra
    for k in range(1, C.r + 1):
        direct = br_function2_region(C, RegionSpec("Delta", p, q, k))
        assert delta_sum_closed(C, p, q, k) == direct
        assert delta_sum_split(C, p, q, k) == direct


@given(modules(), st.integers(1, 4), st.integers(0, 6))
def test_stratum_closed_forms(C, p, extra):
    r = C.r
    q = (p + 1) * r + extra
    assert top_stratum_closed(C, p, q) == br_function2_region(C, RegionSpec("H_k", p, q, r))
    assert top_stratum_closed(C, p, q) == math.comb(q - (r - 1) * p - 1, r - 1) * colength(C.total() ** p)
    assert next_stratum_closed(C, p, q) == br_function2_region(C, RegionSpec("H_k", p, q, r - 1))
    for k in range(1, r - 1):
        assert lower_minus_closed(C, p, q, k) == br_function2_region(C, RegionSpec("H-", p, q, k))


def test_delta_first_is_l_module_lambda():
    for C in SMALL.values():
        for p in range(1, 4):
            q = (p + 1) * C.r + 2
            L = l_module(C, range(1, C.r))
            assert delta_sum_closed(C, p, q, 1) == br_function(L, p)


def test_closed_forms_require_admissible():
    C = SMALL["m2_m"]
    with pytest.raises(PreconditionError):
        delta_sum_closed(C, 2, 3, 1)
    with pytest.raises(PreconditionError):
        delta_sum_closed(C, 1, 4, 3)
    with pytest.raises(PreconditionError):
        next_stratum_closed(ModuleSpec.of(m), 1, 2)


# L modules and residuals ---------------------------------------------------

def test_l_module_examples():
    C = ModuleSpec.of(m2, x2y, xy2)
    assert l_module(C, []).ideals == (m2 + x2y + xy2,)
    L = l_module(C, [2])
    assert L.ideals == (m2 + x2y, m2 + x2y + xy2)
    same = ModuleSpec(2, (x2y,) * 3)
    assert l_module(same, [0, 2]).ideals == (x2y,) * 3
    with pytest.raises(PreconditionError):
        l_module(C, [0, 1, 2])


def test_boundary_sums():
    C = ModuleSpec.of(m2, x2y, xy2)
    for p in range(1, 4):
        q = (p + 1) * 3
        assert l_lambda_sum(C, 3, p) == colength(C.total() ** p)
        assert l_correction_sum(C, 3, p, q) == 0
        assert l_correction_sum(C, 1, p, q) == 0


def test_residual_single_summand_vanishes():
    C = ModuleSpec.of(x2y)
    for p in range(1, 5):
        for q in range(p + 1, p + 6):
            assert residual(C, 1, p, q) == 0


@given(modules(r_values=(2, 3)), st.integers(1, 4), st.integers(0, 6))
def test_second_residual_identity(C, p, extra):
    r = C.r
    q = (p + 1) * r + extra
    lhs = residual(C, 2, p, q) + l_correction_sum(C, r - 1, p, q)
    rhs = (br_function2(C, p, q) - br_function2_region(C, RegionSpec("H_k", p, q, r))
           - br_function2_region(C, RegionSpec("H_k", p, q, r - 1)))
    assert lhs == rhs


def test_residual_telescopes_over_strata():
    # F_k + corrections = Lambda minus the lower parts of the top k strata;
    # H_- and H agree on the top two strata, where H_+ is empty
    C = random_module(2, 4, 2, 1, 11)
    r = C.r
    for p in range(1, 3):
        q = (p + 1) * r + 1
        for k in (r, r - 1):
            assert br_function2_region(C, RegionSpec("H-", p, q, k)) == br_function2_region(C, RegionSpec("H_k", p, q, k))
        for k in range(1, r + 1):
            lhs = residual(C, k, p, q) + sum(l_correction_sum(C, r - i + 1, p, q) for i in range(1, k + 1))
            rhs = br_function2(C, p, q) - sum(
                br_function2_region(C, RegionSpec("H-", p, q, r - i + 1)) for i in range(1, k + 1))
            assert lhs == rhs, (p, k)
        plus = sum(br_function2_region(C, RegionSpec("H+", p, q, k)) for k in range(1, r - 1))
        assert residual(C, r, p, q) + sum(l_correction_sum(C, j, p, q) for j in range(1, r + 1)) == plus


def test_residual_precondition():
    with pytest.raises(PreconditionError):
        residual(SMALL["m2_m"], 3, 1, 5)
    with pytest.raises(PreconditionError):
        residual(SMALL["m2_m"], 1, 2, 3)
