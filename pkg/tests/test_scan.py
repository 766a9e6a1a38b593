import pytest

from starsalem import StarTree, coxeter_polynomial, grid_verify, periodicity_scan
from starsalem.cyclotomic import default_table

from oracles import divides_poly


def test_scan_period_one_order():
    records = periodicity_scan(2, 1, 1, (4, 20))
    k1 = [r.divides for r in records if r.k == 1]
    assert len(set(k1)) == 1  # constant across a1: period 1


def test_scan_residue_law_small():
    # no PeriodicityViolation raised over a full residue sweep
    records = periodicity_scan(2, 1, 12, (4, 40))
    assert len(records) == 37 * 12
    # frozen dividing pattern for this family, k <= 12: exactly these
    # (k, a1 mod k) classes divide
    dividing = sorted({(r.k, r.a1_mod_k) for r in records if r.divides})
    assert dividing == [(2, 0), (2, 1), (4, 1), (8, 2)]


def test_scan_agrees_with_naive_divisibility():
    table = default_table()
    records = periodicity_scan(2, 2, 8, (4, 10))
    for rec in records:
        rt = coxeter_polynomial(StarTree(rec.arms))
        expect = divides_poly(
            list(table.cyclotomic(rec.k).coeffs), list(rt.coeffs)
        )
        assert rec.divides == expect, rec


def test_scan_determinism():
    a = periodicity_scan(3, 1, 10, (5, 25))
    b = periodicity_scan(3, 1, 10, (5, 25))
    assert a == b


def test_scan_ordering():
    records = periodicity_scan(2, 1, 5, (4, 8))
    keys = [(r.arms[1], r.k) for r in records]
    assert keys == sorted(keys)


def test_scan_validation():
    with pytest.raises(ValueError):
        periodicity_scan(2, 1, 5, (2, 10))  # a1 range must start above a0
    with pytest.raises(ValueError):
        periodicity_scan(2, 0, 5, (4, 10))


def test_grid_verify_small():
    summary = grid_verify((2, 8), (2, 8), (2, 8))
    assert summary["triples"] == 32
    assert summary["skipped_excluded"] == 3
    assert summary["order_bound_fail"] == 0
    assert summary["multiplicity_fail"] == 0
    assert summary["degree_bound_fail"] == 0
    assert summary["bridge_fail"] == 0
    assert summary["failures"] == []
    assert summary["max_observed_order"] >= 1
    # every triple got a bridge verdict
    assert summary["bridge_pass"] == 32


def test_grid_verify_default_cli_grid():
    summary = grid_verify((2, 15), (2, 15), (2, 15))
    assert summary["failures"] == []
    assert summary["triples"] == 361
    assert summary["skipped_excluded"] == 3


def test_grid_verify_json_ready():
    import json

    summary = grid_verify((2, 6), (2, 6), (2, 6))
    blob = json.dumps(summary, sort_keys=True)
    assert json.loads(blob) == summary
