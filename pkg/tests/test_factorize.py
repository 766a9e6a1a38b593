import math
import random
from fractions import Fraction

import pytest

from starsalem import (
    CYCLOTOMIC_ONLY,
    OUTSIDE_HYPOTHESES,
    QUADRATIC_PISOT,
    SALEM,
    ClassificationError,
    IntPoly,
    OrderError,
    StarTree,
    coxeter_polynomial,
    extract_cyclotomic,
    factor_coxeter,
    first_cyclotomic_divisor,
    multiplicity_bound,
    order_bound,
    phi_sum,
    salem_degree_lower_bound,
    verify_mann,
    verify_order_bound,
)
from starsalem.cyclotomic import default_table
from starsalem.factorize import classify_remainder

from oracles import divides_poly


def poly(*cs):
    return IntPoly.from_coeffs(cs)


LEHMER = poly(1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)


# ----------------------------------------------------------------------
# order bound
# ----------------------------------------------------------------------

def test_order_bound_values():
    assert order_bound(2, 3, 7) == 2100
    assert order_bound(3, 5, 8) == 2100
    assert order_bound(2, 5, 6) == 840


def test_order_bound_rejects_bad_ordering():
    with pytest.raises(OrderError):
        order_bound(3, 3, 5)
    with pytest.raises(OrderError):
        order_bound(1, 2, 3)


# ----------------------------------------------------------------------
# cyclotomic sieve
# ----------------------------------------------------------------------

def test_extract_simple():
    mults, rem = extract_cyclotomic(poly(-1, 0, 1), 2)
    assert mults == {1: 1, 2: 1}
    assert rem == IntPoly.one()


def test_extract_lehmer_has_no_cyclotomic_part():
    mults, rem = extract_cyclotomic(LEHMER, 2100)
    assert mults == {}
    assert rem == LEHMER


def test_extract_excluded_triples():
    # frozen from an independent sieve run
    table = default_table()
    mults, rem = extract_cyclotomic(coxeter_polynomial(StarTree((2, 3, 4))), 840, table)
    assert mults == {2: 1, 18: 1} and rem == IntPoly.one()
    mults, rem = extract_cyclotomic(coxeter_polynomial(StarTree((2, 3, 5))), 840, table)
    assert mults == {30: 1} and rem == IntPoly.one()
    mults, rem = extract_cyclotomic(coxeter_polynomial(StarTree((2, 3, 6))), 840, table)
    assert mults == {1: 2, 2: 1, 3: 1, 5: 1} and rem == IntPoly.one()


def test_extract_respects_multiplicity():
    table = default_table()
    f = table.cyclotomic(4) ** 3 * table.cyclotomic(5) * poly(-2, 0, 1)
    mults, rem = extract_cyclotomic(f, 10, table)
    assert mults == {4: 3, 5: 1}
    assert rem == poly(-2, 0, 1)


def test_extract_reassembles_exactly():
    table = default_table()
    rng = random.Random(31)
    for _ in range(15):
        arms = sorted(rng.sample(range(2, 20), 3))
        f = coxeter_polynomial(StarTree(tuple(arms)))
        mults, rem = extract_cyclotomic(f, 500, table)
        prod = rem
        for k, m in mults.items():
            prod = prod * table.cyclotomic(k) ** m
        assert prod == f, arms


def test_remainder_purity():
    table = default_table()
    for arms in [(2, 3, 7), (2, 4, 9), (3, 7, 11)]:
        fz = factor_coxeter(StarTree(arms), table=table)
        assert first_cyclotomic_divisor(fz.salem_factor, fz.order_bound_used, table) is None
        # independent naive re-check on small orders
        for k in range(1, 40):
            assert not divides_poly(
                list(table.cyclotomic(k).coeffs), list(fz.salem_factor.coeffs)
            ), (arms, k)


# ----------------------------------------------------------------------
# classification
# ----------------------------------------------------------------------

def test_factor_lehmer_tree():
    fz = factor_coxeter(StarTree((2, 3, 7)))
    assert fz.classification == SALEM
    assert fz.salem_factor == LEHMER
    assert fz.cyclotomic_factors == {}
    assert fz.order_bound_used == 2100
    assert fz.unramified  # |S(1)| = |S(-1)| = 1
    assert fz.max_observed_order == 0 and fz.max_observed_multiplicity == 0


def test_factor_excluded_triples_are_cyclotomic_only():
    for t in (4, 5, 6):
        fz = factor_coxeter(StarTree((2, 3, t)))
        assert fz.classification == CYCLOTOMIC_ONLY
        assert fz.salem_factor == IntPoly.one()


def test_factor_repeated_arms_outside_hypotheses():
    fz = factor_coxeter(StarTree((3, 3, 5)))
    assert fz.classification == OUTSIDE_HYPOTHESES


def test_factor_general_r_needs_cap():
    with pytest.raises(ValueError):
        factor_coxeter(StarTree((2, 4, 10, 11)))
    fz = factor_coxeter(StarTree((2, 4, 10, 11)), max_order=500)
    assert fz.classification == SALEM


def test_salem_shape_invariants():
    for arms in [(2, 3, 7), (2, 4, 7), (3, 5, 8), (4, 6, 9)]:
        fz = factor_coxeter(StarTree(arms))
        s = fz.salem_factor
        assert fz.classification == SALEM
        assert s.is_reciprocal()
        assert s.constant() == 1
        assert abs(s.eval_int(1)) * abs(s.eval_int(-1)) >= 1


def test_classify_remainder_shapes():
    assert classify_remainder(IntPoly.one()) == CYCLOTOMIC_ONLY
    assert classify_remainder(poly(1, -3, 1)) == QUADRATIC_PISOT
    assert classify_remainder(LEHMER) == SALEM
    assert classify_remainder(poly(1, -3, 1), strictly_ordered=False) == OUTSIDE_HYPOTHESES
    with pytest.raises(ClassificationError):
        classify_remainder(poly(1, 3, 1))  # roots negative, none above 1
    with pytest.raises(ClassificationError):
        classify_remainder(poly(2,))
    with pytest.raises(ClassificationError):
        classify_remainder(poly(1, 1, 1, 1))  # odd degree, not a Salem shape


def test_verify_order_bound():
    assert verify_order_bound(StarTree((2, 3, 7)))
    assert verify_order_bound(StarTree((2, 4, 5)))
    # the one order observed for (2,4,5) sits far below the 840 cap
    fz = factor_coxeter(StarTree((2, 4, 5)))
    assert fz.cyclotomic_factors == {2: 1}
    assert fz.max_observed_order == 2 <= order_bound(2, 4, 5)
    with pytest.raises(OrderError):
        verify_order_bound(StarTree((2, 3, 5)))


# ----------------------------------------------------------------------
# degree lower bound
# ----------------------------------------------------------------------

def test_degree_lower_bound_formula():
    tree = StarTree((2, 3, 7))
    assert salem_degree_lower_bound(tree, 1) == 10 - phi_sum(2100)
    assert phi_sum(2100) == 1340822  # frozen from a direct sieve run
    assert salem_degree_lower_bound(tree, 1) < 0  # vacuous at this scale
    assert salem_degree_lower_bound(tree, 3) == 10 - 3 * 1340822


def test_degree_lower_bound_validation():
    with pytest.raises(ValueError):
        salem_degree_lower_bound(StarTree((2, 3, 7)), 0)


# ----------------------------------------------------------------------
# multiplicity bound
# ----------------------------------------------------------------------

def test_multiplicity_trace_2_1():
    tr = multiplicity_bound(2, 1)
    # Qtilde = z^2 - z - 1 has |.| >= 1 on the circle, so the certified
    # bound sits just below 1; the rest is forced arithmetic
    assert Fraction(99, 100) < tr.eta_lower <= 1
    assert tr.f0_upper == 2   # Rtilde = z + 1
    assert tr.n0 == 3
    assert tr.en_upper == 3 and tr.fn_upper == 1 and tr.gn_upper == 0
    assert tr.c == 34
    assert tr.m == 37


def test_multiplicity_trace_invariants():
    for a0 in (2, 3, 4):
        for delta in (1, 2, 3):
            tr = multiplicity_bound(a0, delta)
            assert tr.eta_lower > 0
            assert tr.eta_lower - Fraction(2) ** (1 - tr.n0) * tr.f0_upper > 0
            assert tr.m == max(tr.n0, tr.c + tr.a0) + 1
            assert tr.m >= 1


def test_multiplicity_bound_validation():
    with pytest.raises(ValueError):
        multiplicity_bound(1, 1)
    with pytest.raises(ValueError):
        multiplicity_bound(2, 0)


# ----------------------------------------------------------------------
# vanishing sums of three roots of unity
# ----------------------------------------------------------------------

def test_mann_forces_one():
    hits = verify_mann(1, 1, -2, 1, 1, 50)
    assert [n for n, _ in hits] == [1]
    assert abs(hits[0][1] - 1.0) < 1e-12


def test_mann_cube_roots():
    hits = verify_mann(1, 1, 1, 1, 2, 50)
    assert sorted(n for n, _ in hits) == [3, 3]
    for n, z in hits:
        assert abs(z**3 - 1) < 1e-9 and abs(z - 1) > 0.5


def test_mann_no_solutions():
    assert verify_mann(1, 1, 5, 1, 2, 40) == []


def test_mann_rejects_degenerate_input():
    with pytest.raises(ValueError):
        verify_mann(0, 1, 1, 1, 2, 10)
    with pytest.raises(ValueError):
        verify_mann(1, 1, 1, 0, 0, 10)


def test_mann_orders_divide_property():
    rng = random.Random(1234)
    checked = 0
    for _ in range(100):
        a = rng.choice([-2, -1, 1, 2])
        b = rng.choice([-2, -1, 1, 2])
        c = rng.choice([-2, -1, 1, 2])
        p = rng.randint(-10, 10)
        q = rng.randint(-10, 10)
        if (p, q) == (0, 0):
            continue
        bound = 6 * math.gcd(p, q)
        for n, _ in verify_mann(a, b, c, p, q, 80):
            assert bound % n == 0, (a, b, c, p, q, n)
            checked += 1
    assert checked > 0
