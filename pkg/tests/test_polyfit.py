from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brim.ideals import MonomialIdeal, colength, minimalize
from brim.polyfit import (
    FitError,
    RatPoly,
    binomial,
    cone_region,
    fit_bivariate_dense,
    fit_bivariate_nested,
    fit_multivariate,
    fit_univariate,
    solve_exact,
)

from oracles import lattice_colength, product_gens

m = MonomialIdeal.maximal(2)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(5, -1) == 0
    assert binomial(5, -1, "polynomial") == 0
    assert binomial(-2, 1, "polynomial") == -2
    assert binomial(3, 5) == 0
    assert binomial(-1, 0) == 0
    assert binomial(-1, 0, "polynomial") == 1
    assert binomial(Fraction(1, 2), 2, "polynomial") == Fraction(-1, 8)
    with pytest.raises(ValueError):
        binomial(3, 1, "bogus")


@given(st.integers(0, 40), st.integers(0, 40))
def test_binomial_conventions_agree(n, k):
    if n >= k:
        assert binomial(n, k) == binomial(n, k, "polynomial")


def test_ratpoly_basics():
    P = RatPoly(2, {(1, 0): Fraction(1, 2), (0, 1): 0, (2, 1): 3})
    assert (0, 1) not in P.coeffs
    assert P.total_degree() == 3
    assert P.degree_in(0) == 2 and P.degree_in(1) == 1
    assert P(2, 3) == 1 + 36
    assert P.homogeneous_part(3) == RatPoly(2, {(2, 1): 3})
    assert P.coefficient_slice(1, 1) == RatPoly(1, {(2,): 3})
    assert RatPoly.from_json(2, P.to_json()) == P
    assert (P - P).is_zero()
    assert RatPoly(1).total_degree() == -1


def test_solve_exact_rational():
    sol = solve_exact([[2, 1], [1, 3]], [3, 5])
    assert sol == [Fraction(4, 5), Fraction(7, 5)]


def test_fit_triangular_numbers():
    rep = fit_univariate(lambda p: p * (p + 1) // 2, 2)
    assert rep.stabilized and rep.advances == 0
    assert rep.polynomial == RatPoly(1, {(2,): Fraction(1, 2), (1,): Fraction(1, 2)})
    rep2 = fit_univariate(lambda p: colength(m**p), 2)
    assert rep2.polynomial == rep.polynomial


def test_fit_hilbert_samuel_of_x2_y():
    # oracle values come from brute-force counting, not the package
    gens = [(2, 0), (0, 1)]
    table = {p: lattice_colength(product_gens([gens], (p,), 2), 2) for p in range(1, 9)}
    I = minimalize(gens, 2)
    assert all(colength(I**p) == v for p, v in table.items())
    rep = fit_univariate(lambda p: table[p], 2, start_hint=1, limit=8)
    assert rep.stabilized
    assert rep.polynomial.coefficient(2) == 1


def test_fit_detects_eventual_polynomial():
    f = lambda p: 7 if p < 5 else p * p
    rep = fit_univariate(f, 2, start_hint=1)
    assert rep.stabilized and rep.advances > 0
    assert rep.polynomial == RatPoly(1, {(2,): 1})
    assert all(rep.polynomial(x) == f(x) for x in rep.validation)


def test_fit_reports_non_stabilization():
    rep = fit_univariate(lambda p: 2**p, 3, start_hint=1, max_advance=3)
    assert not rep.stabilized
    with pytest.raises(FitError):
        rep.require()


def test_fit_respects_limit():
    rep = fit_univariate(lambda p: 2**p, 2, start_hint=1, limit=6)
    assert not rep.stabilized
    assert max(rep.window + rep.validation) <= 6


@given(st.dictionaries(st.integers(0, 4), st.fractions(max_denominator=12), max_size=5), st.integers(0, 5))
def test_exact_polynomial_recovered_first_window(coeffs, start):
    P = RatPoly(1, {(k,): c for k, c in coeffs.items()})
    rep = fit_univariate(P, 4, start_hint=start)
    assert rep.stabilized and rep.advances == 0
    assert rep.polynomial == P


def test_multivariate_examples():
    rep = fit_multivariate(lambda a, b: colength(m**a * m**b), 2, 2)
    assert rep.stabilized
    s = lambda a, b: (a + b) * (a + b + 1) // 2
    assert all(rep.polynomial(a, b) == s(a, b) for a in range(6) for b in range(6))
    const = fit_multivariate(lambda a, b: 5, 2, 2)
    assert const.polynomial == RatPoly(2, {(0, 0): 5}) and const.polynomial.total_degree() == 0


def test_multivariate_mixed_m2_m():
    m2 = [(2, 0), (1, 1), (0, 2)]
    mm = [(1, 0), (0, 1)]
    table = {(a, b): lattice_colength(product_gens([m2, mm], (a, b), 2), 2)
             for a in range(7) for b in range(7) if a + b > 0}
    rep = fit_multivariate(lambda a, b: table[(a, b)], 2, 2, start_hint=1, limit=6)
    assert rep.stabilized
    top = rep.polynomial.homogeneous_part(2)
    assert top.coefficient(2, 0) == 2
    assert top.coefficient(1, 1) == 2
    assert top.coefficient(0, 2) == Fraction(1, 2)


def test_nested_product():
    rep = fit_bivariate_nested(lambda p, q: p * q, 1, [1, 1], region=lambda p, q: True)
    assert rep.stabilized
    assert rep.polynomial == RatPoly(2, {(1, 1): 1})


def test_nested_rejects_bad_bounds():
    with pytest.raises(ValueError):
        fit_bivariate_nested(lambda p, q: p, 1, [1])


def test_cone_region():
    R = cone_region(3)
    assert R(1, 6) and not R(1, 5)
    assert R.q_min(2) == 9


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)).filter(lambda t: sum(t) <= 3),
                       st.integers(-20, 20), max_size=6))
def test_nested_and_dense_agree(coeffs):
    P = RatPoly(2, coeffs)
    region = cone_region(3)
    nested = fit_bivariate_nested(P, 2, [3, 2, 1], region)
    dense = fit_bivariate_dense(P, 3, region)
    assert nested.stabilized and dense.stabilized
    assert nested.polynomial == dense.polynomial == P


def test_nested_eventual_region_behaviour():
    # polynomial only on q >= (p+1)2; garbage below the cone is never sampled
    F = lambda p, q: p * p * q + q if q >= 2 * (p + 1) else -1
    rep = fit_bivariate_nested(F, 1, [1, 2], cone_region(2))
    assert rep.stabilized
    assert rep.polynomial == RatPoly(2, {(2, 1): 1, (0, 1): 1})
    for p, q in rep.validation:
        assert q >= 2 * (p + 1)


def test_fit_report_json_round_trip():
    rep = fit_univariate(lambda p: 3 * p + 1, 1)
    data = rep.to_json()
    assert data["stabilized"] is True
    assert RatPoly.from_json(1, data["polynomial"]) == rep.polynomial
