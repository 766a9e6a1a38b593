"""Batch experiments over families of star-like trees.

``periodicity_scan`` tests, for fixed a0 and fixed gap eta = a2 - a1,
which cyclotomic orders k divide the Coxeter polynomial as a1 varies.
Whether Phi_k divides depends only on a1 mod k within such a family;
the scan verifies that residue-class law on every record and aborts
loudly if it ever failed, since that would falsify the underlying
block-shift identity.

``grid_verify`` sweeps a triple grid and re-checks every certified
bound: the cyclotomic order cap, the multiplicity bound, the Salem
degree lower bound (when it is informative), and the bridge
sqrt(tau) + 1/sqrt(tau) = lambda between the dominant root and the
tree's spectral radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .coxeter import StarTree, coxeter_polynomial, spectral_radius
from .cyclotomic import CyclotomicTable, default_table
from .factorize import (
    CertificationError,
    CoxeterFactorization,
    MultiplicityBoundTrace,
    factor_coxeter,
    multiplicity_bound,
    order_bound,
    salem_degree_lower_bound,
)
from .roots import dominant_root


class PeriodicityViolation(AssertionError):
    """Two trees in the same residue class disagreed on divisibility."""


@dataclass(frozen=True)
class ScanRecord:
    arms: tuple[int, ...]
    k: int
    divides: bool
    a1_mod_k: int


def periodicity_scan(
    a0: int,
    eta: int,
    k_max: int,
    a1_range: tuple[int, int],
    table: CyclotomicTable | None = None,
) -> list[ScanRecord]:
    """Divisibility records for T(a0, a1, a1 + eta), a1 in the given range.

    Records are ordered by (a1, k). Raises PeriodicityViolation with both
    witnesses if two records sharing (k, a1 mod k) ever disagree.
    """
    if a0 < 2 or eta < 1 or k_max < 1:
        raise ValueError("need a0 >= 2, eta >= 1, k_max >= 1")
    lo, hi = a1_range
    if lo <= a0:
        raise ValueError(f"a1 range must start above a0={a0}, got {a1_range}")
    table = table or default_table()
    records: list[ScanRecord] = []
    seen: dict[tuple[int, int], tuple[bool, int]] = {}
    for a1 in range(lo, hi + 1):
        rt = coxeter_polynomial(StarTree((a0, a1, a1 + eta)))
        for k in range(1, k_max + 1):
            div = table.divides_coxeter(k, rt)
            rec = ScanRecord(arms=(a0, a1, a1 + eta), k=k, divides=div, a1_mod_k=a1 % k)
            key = (k, a1 % k)
            if key in seen:
                prev_div, prev_a1 = seen[key]
                if prev_div != div:
                    raise PeriodicityViolation(
                        f"residue-class law failed for k={k}, a1 mod k={a1 % k}: "
                        f"a1={prev_a1} gives divides={prev_div} but a1={a1} gives {div}"
                    )
            else:
                seen[key] = (div, a1)
            records.append(rec)
    return records


def grid_verify(
    a0_range: tuple[int, int],
    a1_range: tuple[int, int],
    a2_range: tuple[int, int],
    digits: int = 15,
    bridge_tol: float = 1e-6,
    table: CyclotomicTable | None = None,
) -> dict:
    """Re-check every certified bound on a grid of strictly ordered triples.

    Returns a JSON-ready summary; failures are collected, not raised.
    """
    table = table or default_table()
    traces: dict[tuple[int, int], Optional[MultiplicityBoundTrace]] = {}
    summary = {
        "triples": 0,
        "skipped_excluded": 0,
        "order_bound_pass": 0,
        "order_bound_fail": 0,
        "multiplicity_pass": 0,
        "multiplicity_fail": 0,
        "multiplicity_uncertified": 0,
        "degree_bound_pass": 0,
        "degree_bound_fail": 0,
        "degree_bound_vacuous": 0,
        "bridge_pass": 0,
        "bridge_fail": 0,
        "max_observed_order": 0,
        "max_observed_multiplicity": 0,
        "failures": [],
    }

    def trace_for(a0: int, delta: int) -> Optional[MultiplicityBoundTrace]:
        key = (a0, delta)
        if key not in traces:
            try:
                traces[key] = multiplicity_bound(a0, delta)
            except CertificationError:
                traces[key] = None
        return traces[key]

    for a0 in range(a0_range[0], a0_range[1] + 1):
        for a1 in range(max(a0 + 1, a1_range[0]), a1_range[1] + 1):
            for a2 in range(max(a1 + 1, a2_range[0]), a2_range[1] + 1):
                tree = StarTree((a0, a1, a2))
                if tree.excluded:
                    summary["skipped_excluded"] += 1
                    continue
                summary["triples"] += 1
                fz = factor_coxeter(tree, table=table)
                summary["max_observed_order"] = max(
                    summary["max_observed_order"], fz.max_observed_order
                )
                summary["max_observed_multiplicity"] = max(
                    summary["max_observed_multiplicity"], fz.max_observed_multiplicity
                )
                _check_order(tree, fz, summary)
                _check_multiplicity(tree, fz, trace_for(a0, a2 - a1), summary)
                _check_degree_bound(tree, fz, trace_for(a0, a2 - a1), summary, table)
                _check_bridge(tree, fz, digits, bridge_tol, summary)
    return summary


def _fail(summary: dict, tree: StarTree, what: str) -> None:
    summary["failures"].append({"arms": list(tree.arms), "check": what})


def _check_order(tree: StarTree, fz: CoxeterFactorization, summary: dict) -> None:
    if fz.max_observed_order <= order_bound(*tree.arms):
        summary["order_bound_pass"] += 1
    else:
        summary["order_bound_fail"] += 1
        _fail(summary, tree, "order_bound")


def _check_multiplicity(
    tree: StarTree,
    fz: CoxeterFactorization,
    trace: Optional[MultiplicityBoundTrace],
    summary: dict,
) -> None:
    if trace is None:
        summary["multiplicity_uncertified"] += 1
        return
    # the bound concerns roots of P = (z-1)^(r+1) R_T, so the factor at
    # order 1 carries an extra r+1
    ok = all(
        mult + (tree.r + 1 if k == 1 else 0) <= trace.m
        for k, mult in fz.cyclotomic_factors.items()
    )
    if ok:
        summary["multiplicity_pass"] += 1
    else:
        summary["multiplicity_fail"] += 1
        _fail(summary, tree, "multiplicity_bound")


def _check_degree_bound(
    tree: StarTree,
    fz: CoxeterFactorization,
    trace: Optional[MultiplicityBoundTrace],
    summary: dict,
    table: CyclotomicTable,
) -> None:
    if trace is None:
        summary["degree_bound_vacuous"] += 1
        return
    bound = salem_degree_lower_bound(tree, trace.m, table)
    if bound <= 0:
        summary["degree_bound_vacuous"] += 1
        return
    if fz.salem_factor.degree() >= bound:
        summary["degree_bound_pass"] += 1
    else:
        summary["degree_bound_fail"] += 1
        _fail(summary, tree, "degree_lower_bound")


def _check_bridge(
    tree: StarTree,
    fz: CoxeterFactorization,
    digits: int,
    tol: float,
    summary: dict,
) -> None:
    if fz.salem_factor.degree() < 1:
        summary["bridge_fail"] += 1
        _fail(summary, tree, "bridge: no dominant root for non-excluded triple")
        return
    tau, _ = dominant_root(fz.salem_factor, digits)
    lam = spectral_radius(tree)
    t = float(tau)
    if abs(math.sqrt(t) + 1.0 / math.sqrt(t) - lam) <= tol:
        summary["bridge_pass"] += 1
    else:
        summary["bridge_fail"] += 1
        _fail(summary, tree, "lambda_tau_bridge")
