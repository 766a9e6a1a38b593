"""Exact factorization of Coxeter polynomials and certified bounds.

``factor_coxeter`` splits R_T into a product of cyclotomic polynomials
times a remainder and classifies the remainder (Salem, quadratic Pisot,
cyclotomic-only, or outside the strictly-ordered hypotheses). The sieve
tries every order k up to the bound 420*(a2 - a1 + a0 - 1), which is
where any root of unity killing P must live for strictly ordered
three-arm trees.

The sieve is exact: a fast floating-point screen discards orders whose
evaluation at a primitive root is provably nonzero (the screen carries a
rigorous rounding-error bound), and every surviving candidate is settled
by exact integer division. Outcomes never depend on the float path.

``multiplicity_bound`` certifies the effectively computable bound m on
root multiplicities of P on the unit circle: a positive rational lower
bound for min_{|z|=1} |Qtilde(z)| is certified by an equispaced circle
scan plus a Lipschitz argument, all remaining suprema are bounded by
coefficient-sum norms, and the selection inequalities are evaluated in
exact rational arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .cyclotomic import CyclotomicTable, default_table
from .coxeter import ArityError, OrderError, StarTree, coxeter_polynomial
from .intpoly import IntPoly, NotDivisible

ORDER_BOUND_FACTOR = 420

SALEM = "Salem"
QUADRATIC_PISOT = "QuadraticPisot"
CYCLOTOMIC_ONLY = "CyclotomicOnly"
OUTSIDE_HYPOTHESES = "OutsideHypotheses"

# strict upper bound for pi, used whenever a rational bound must stay rigorous
_PI_UPPER = Fraction(355, 113)


class ClassificationError(RuntimeError):
    """The non-cyclotomic remainder matches none of the expected shapes."""


class CertificationError(RuntimeError):
    """A certified lower bound could not be established at the grid cap."""


@dataclass(frozen=True)
class CoxeterFactorization:
    arms: tuple[int, ...]
    cyclotomic_factors: dict[int, int]  # order -> multiplicity
    salem_factor: IntPoly
    classification: str
    order_bound_used: int
    max_observed_order: int
    max_observed_multiplicity: int
    unramified: bool

    def to_json_dict(self, degree_lower_bound: Optional[int] = None) -> dict:
        return {
            "arms": list(self.arms),
            "classification": self.classification,
            "cyclotomic": [
                {"order": k, "multiplicity": m}
                for k, m in sorted(self.cyclotomic_factors.items())
            ],
            "salem_coeffs": self.salem_factor.json_coeffs(),
            "salem_degree": int(self.salem_factor.degree())
            if not self.salem_factor.is_zero()
            else 0,
            "order_bound": self.order_bound_used,
            "degree_lower_bound": degree_lower_bound,
            "unramified": self.unramified,
        }


@dataclass(frozen=True)
class MultiplicityBoundTrace:
    a0: int
    delta: int
    eta_lower: Fraction
    f0_upper: int
    en_upper: int
    fn_upper: int
    gn_upper: int
    n0: int
    c: int
    m: int
    grid_points: int

    def to_json_dict(self) -> dict:
        return {
            "a0": self.a0,
            "delta": self.delta,
            "eta_lower": _fraction_str(self.eta_lower),
            "eta_lower_exact": f"{self.eta_lower.numerator}/{self.eta_lower.denominator}",
            "f0_upper": self.f0_upper,
            "en_upper": self.en_upper,
            "fn_upper": self.fn_upper,
            "gn_upper": self.gn_upper,
            "n0": self.n0,
            "c": self.c,
            "m": self.m,
            "grid_points": self.grid_points,
        }


def _fraction_str(x: Fraction, places: int = 12) -> str:
    scale = 10**places
    q, r = divmod(abs(x.numerator) * scale, x.denominator)
    sign = "-" if x < 0 else ""
    return f"{sign}{q // scale}.{str(q % scale).zfill(places)}"


# ----------------------------------------------------------------------
# order bound and sieve
# ----------------------------------------------------------------------

def order_bound(a0: int, a1: int, a2: int) -> int:
    """420 * (a2 - a1 + a0 - 1): cap on orders of unit roots of P."""
    if not (a2 > a1 > a0 > 1):
        raise OrderError(f"need a2 > a1 > a0 > 1, got {(a0, a1, a2)}")
    return ORDER_BOUND_FACTOR * (a2 - a1 + a0 - 1)


def _certified_nonzero_at_root(f: IntPoly, k: int) -> bool:
    """True when f(zeta_k) != 0 is provable in float arithmetic.

    Two error sources, both rigorously dominated by the bound below:
    Horner rounding at |z| = 1 (~2*deg*ulp*l1(f)) and the few-ulp
    perturbation of the evaluation point off the true root of unity
    (amplified by at most sum k|c_k| <= deg*l1). A value exceeding a
    wide multiple of the bound cannot be a true zero. False means
    "inconclusive", never "zero".
    """
    if f.height() > 1 << 40:  # float conversion would lose exactness headroom
        return False
    val = abs(f.eval_complex(cmath.exp(2j * cmath.pi / k)))
    err = (4 * len(f.coeffs) + 8) * 2.0**-52 * f.l1()
    return val > max(64.0 * err, 1e-9)


def extract_cyclotomic(
    f: IntPoly, max_order: int, table: CyclotomicTable | None = None
) -> tuple[dict[int, int], IntPoly]:
    """Divide out every cyclotomic factor of order <= max_order.

    Returns (multiplicities, remainder) with
    prod_k Phi_k^[m_k] * remainder == f exactly. Orders with
    phi(k) > deg(remainder) cannot divide and are skipped outright.
    """
    if f.is_zero():
        raise ValueError("cannot sieve the zero polynomial")
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    table = table or default_table()
    phis = table.phi_values(max_order)
    mults: dict[int, int] = {}
    rem = f
    for k in range(1, max_order + 1):
        deg = rem.degree()
        if deg < 1:
            break
        if phis[k] > deg:
            continue
        if _certified_nonzero_at_root(rem, k):
            continue
        phi_k = table.cyclotomic(k)
        while True:
            try:
                rem = rem.exact_div(phi_k)
            except NotDivisible:
                break
            mults[k] = mults.get(k, 0) + 1
            if rem.degree() < phis[k]:
                break
    return mults, rem


def first_cyclotomic_divisor(
    f: IntPoly, max_order: int, table: CyclotomicTable | None = None
) -> Optional[int]:
    """Smallest order k <= max_order with Phi_k | f, or None."""
    table = table or default_table()
    phis = table.phi_values(max_order)
    deg = f.degree()
    for k in range(1, max_order + 1):
        if phis[k] > deg:
            continue
        if _certified_nonzero_at_root(f, k):
            continue
        if table.cyclotomic(k).divides(f):
            return k
    return None


def _quadratic_has_root_above_one(f: IntPoly) -> bool:
    """Exact test for a real root > 1 of a monic integer quadratic."""
    c0, c1, _ = f.coeffs
    disc = c1 * c1 - 4 * c0
    if disc <= 0:
        return False
    # larger root (-c1 + sqrt(disc))/2 > 1  <=>  sqrt(disc) > 2 + c1
    return (2 + c1) < 0 or disc > (2 + c1) ** 2


_JUST_ABOVE_ONE = Fraction((1 << 20) + 1, 1 << 20)


def classify_remainder(rem: IntPoly, strictly_ordered: bool = True) -> str:
    """Shape classification of the sieve remainder."""
    if not strictly_ordered:
        return OUTSIDE_HYPOTHESES
    deg = rem.degree()
    if deg == 0:
        if rem.coeffs != (1,):
            raise ClassificationError(f"constant remainder is not 1: {rem}")
        return CYCLOTOMIC_ONLY
    if deg == 2:
        if rem.is_monic() and _quadratic_has_root_above_one(rem):
            return QUADRATIC_PISOT
        raise ClassificationError(f"degree-2 remainder without root > 1: {rem}")
    if (
        isinstance(deg, int)
        and deg >= 4
        and deg % 2 == 0
        and rem.is_reciprocal()
        and rem.is_monic()
        and rem.sign_at(_JUST_ABOVE_ONE) < 0
    ):
        return SALEM
    raise ClassificationError(f"remainder has unexpected shape: {rem}")


def factor_coxeter(
    tree: StarTree,
    max_order: Optional[int] = None,
    table: CyclotomicTable | None = None,
) -> CoxeterFactorization:
    """Sieve R_T and classify what is left.

    For strictly ordered three-arm trees the sieve cap is the proven
    order bound. For every other tree a cap must be supplied by the
    caller (three-arm trees with repeated lengths fall back to the same
    formula on sorted arms, as a heuristic only).
    """
    table = table or default_table()
    if max_order is None:
        if tree.r != 2:
            raise ValueError(
                "no proven order bound for r != 2; pass max_order explicitly"
            )
        s0, s1, s2 = sorted(tree.arms)
        max_order = ORDER_BOUND_FACTOR * max(s2 - s1 + s0 - 1, 1)
    rt = coxeter_polynomial(tree)
    mults, rem = extract_cyclotomic(rt, max_order, table)
    classification = classify_remainder(rem, tree.strictly_ordered)
    unramified = abs(rem.eval_int(1)) == 1 and abs(rem.eval_int(-1)) == 1
    return CoxeterFactorization(
        arms=tree.arms,
        cyclotomic_factors=dict(sorted(mults.items())),
        salem_factor=rem,
        classification=classification,
        order_bound_used=max_order,
        max_observed_order=max(mults, default=0),
        max_observed_multiplicity=max(mults.values(), default=0),
        unramified=unramified,
    )


def salem_degree_lower_bound(
    tree: StarTree, m: int, table: CyclotomicTable | None = None
) -> int:
    """deg R_T - m * sum_{k <= order bound} phi(k); may be negative."""
    if tree.r != 2:
        raise ArityError("degree lower bound is only stated for three-arm trees")
    if m < 1:
        raise ValueError("multiplicity bound m must be >= 1")
    table = table or default_table()
    bound = order_bound(*tree.arms)
    deg_rt = tree.vertex_count  # equals deg R_T
    return deg_rt - m * table.phi_sum(bound)


# ----------------------------------------------------------------------
# multiplicity bound certification
# ----------------------------------------------------------------------

def _certified_circle_min(
    f: IntPoly, start_grid: int, max_grid: int
) -> tuple[Fraction, int]:
    """Certified positive rational lower bound for min_{|z|=1} |f(z)|.

    Samples N equispaced points; any circle point is within arc distance
    pi/N of a sample, and |f| is Lipschitz along the circle with constant
    sum_k k*|c_k|. The returned bound subtracts both the Lipschitz slack
    and a rigorous float evaluation error, so it is a true lower bound.
    """
    lipschitz = sum(k * abs(c) for k, c in enumerate(f.coeffs))
    eval_err = Fraction((4 * len(f.coeffs) + 8), 2**52) * f.l1()
    coeffs_high_first = np.array([float(c) for c in reversed(f.coeffs)])
    n = start_grid
    while n <= max_grid:
        sample_min = math.inf
        chunk = min(n, 1 << 20)
        for lo in range(0, n, chunk):
            idx = np.arange(lo, min(lo + chunk, n))
            z = np.exp(2j * np.pi * idx / n)
            vals = np.abs(np.polyval(coeffs_high_first, z))
            sample_min = min(sample_min, float(vals.min()))
        bound = Fraction(sample_min) - eval_err - Fraction(lipschitz) * _PI_UPPER / n
        if bound > 0:
            return bound, n
        n *= 2
    raise CertificationError(
        f"no positive lower bound for |{f}| on the circle at {max_grid} samples"
    )


def _z_minus_one() -> IntPoly:
    return IntPoly.from_coeffs([-1, 1])


def multiplicity_bound(
    a0: int,
    delta: int,
    start_grid: int = 4096,
    max_grid: int = 1 << 26,
) -> MultiplicityBoundTrace:
    """Effectively computable bound m(a0, delta) on unit-circle root
    multiplicities of P for three-arm trees with a2 - a1 = delta.

    Recipe: divide the blocks by their common root at 1, certify
    eta <= min |Qtilde| on the circle, bound the block derivatives by
    coefficient sums, pick the smallest n0 with
    eta - 2^(1-n0) * F0 > 0, then the smallest c making

        eta - 2^(1-n0) F0 - 2^(n0-1)(E+F)/(s-n0+1) - G/(s)_(n0) > 0

    for all s = a1 + a2 > c. Trees with a1 + a2 <= c have
    deg Ptilde <= c + a0, so m = max(n0, c + a0) + 1 works in all cases.
    """
    if a0 < 2:
        raise ValueError("a0 must be >= 2")
    if delta < 1:
        raise ValueError("delta must be >= 1")
    one = _z_minus_one()
    q_block = IntPoly.monomial(a0 + 1) + IntPoly.monomial(a0, -2) + IntPoly.one()
    # exponents delta and a0-1 may coincide; build by addition so they cancel
    r_block = (
        IntPoly.monomial(delta + a0 - 1)
        + IntPoly.monomial(delta, -1)
        + IntPoly.monomial(a0 - 1)
        - IntPoly.one()
    )
    s_block = IntPoly.monomial(a0 + 1, -1) + IntPoly.monomial(1, 2) - IntPoly.one()
    q_tilde = q_block.exact_div(one)
    r_tilde = r_block.exact_div(one)
    s_tilde = s_block.exact_div(one)

    eta_lower, grid_points = _certified_circle_min(q_tilde, start_grid, max_grid)
    f0_upper = r_tilde.l1()

    n0 = 1
    while eta_lower - Fraction(2) ** (1 - n0) * f0_upper <= 0:
        n0 += 1
        if n0 > 10_000:
            raise CertificationError("n0 selection did not terminate")

    en_upper = max(q_tilde.derivative(k).l1() for k in range(1, n0 + 1))
    fn_upper = max(r_tilde.derivative(k).l1() for k in range(1, n0 + 1))
    gn_upper = s_tilde.derivative(n0).l1()

    head = eta_lower - Fraction(2) ** (1 - n0) * f0_upper

    def falling(s: int, n: int) -> int:
        out = 1
        for j in range(n):
            out *= s - j
        return out

    def bracket_positive(s: int) -> bool:
        if s < n0:
            return False
        mid = Fraction(2 ** (n0 - 1) * (en_upper + fn_upper), s - n0 + 1)
        tail = Fraction(gn_upper, falling(s, n0))
        return head - mid - tail > 0

    s_hi = n0
    while not bracket_positive(s_hi):
        s_hi *= 2
        if s_hi > 1 << 200:
            raise CertificationError("bracket never became positive")
    s_lo = n0 - 1  # bracket_positive is monotone for s >= n0
    while s_lo + 1 < s_hi:
        mid = (s_lo + s_hi) // 2
        if bracket_positive(mid):
            s_hi = mid
        else:
            s_lo = mid
    c = s_hi - 1

    return MultiplicityBoundTrace(
        a0=a0,
        delta=delta,
        eta_lower=eta_lower,
        f0_upper=f0_upper,
        en_upper=en_upper,
        fn_upper=fn_upper,
        gn_upper=gn_upper,
        n0=n0,
        c=c,
        m=max(n0, c + a0) + 1,
        grid_points=grid_points,
    )


# ----------------------------------------------------------------------
# vanishing sums of three roots of unity
# ----------------------------------------------------------------------

def verify_mann(
    a: int,
    b: int,
    c: int,
    p: int,
    q: int,
    search_order: int,
    table: CyclotomicTable | None = None,
    tol: float = 1e-9,
) -> list[tuple[int, complex]]:
    """Brute-force roots of unity with a*z^p + b*z^q + c == 0.

    Scans every primitive root of each order n <= search_order in floats,
    then confirms each candidate order exactly: z^p collapses to
    z^(p mod n), so the sum vanishes at a primitive n-th root iff Phi_n
    divides a*x^(p mod n) + b*x^(q mod n) + c over Z. Returns one
    (order, root) pair per confirmed primitive root. Every returned
    order divides 6*gcd(p, q).
    """
    if a == 0 or b == 0 or c == 0:
        raise ValueError("a, b, c must be nonzero")
    if p == 0 and q == 0:
        raise ValueError("(p, q) = (0, 0) is excluded")
    if search_order < 1:
        raise ValueError("search_order must be >= 1")
    table = table or default_table()
    witnesses: list[tuple[int, complex]] = []
    for n in range(1, search_order + 1):
        confirmed: Optional[bool] = None
        for j in range(n):
            if math.gcd(j, n) != 1 and n > 1:
                continue
            zeta = cmath.exp(2j * cmath.pi * j / n)
            if abs(a * zeta**p + b * zeta**q + c) >= tol:
                continue
            if confirmed is None:
                g = IntPoly.from_terms({p % n: a}) + IntPoly.from_terms(
                    {q % n: b}
                ) + IntPoly.from_coeffs([c])
                confirmed = g.is_zero() or table.cyclotomic(n).divides(g)
            if confirmed:
                witnesses.append((n, zeta))
    return witnesses


def verify_order_bound(
    tree: StarTree, table: CyclotomicTable | None = None
) -> bool:
    """True when every cyclotomic order found in R_T obeys the cap."""
    if tree.r != 2 or not tree.strictly_ordered:
        raise OrderError("order bound is proven only for a2 > a1 > a0 > 1")
    if tree.excluded:
        raise OrderError(f"{tree.arms} is outside the classified family")
    fz = factor_coxeter(tree, table=table)
    return fz.max_observed_order <= order_bound(*tree.arms)
