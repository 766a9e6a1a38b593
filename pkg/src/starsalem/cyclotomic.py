"""Cyclotomic polynomials and Euler-phi arithmetic, exactly over Z.

Phi_n is produced by the classical identities

    Phi_p(x)  = 1 + x + ... + x^(p-1)                      (p prime)
    Phi_n(x)  = Phi_rad(n)(x^(n/rad(n)))                   (rad = squarefree kernel)
    Phi_mp(x) = Phi_m(x^p) / Phi_m(x)                      (p prime, p not | m)

so every step stays in exact integer arithmetic and each polynomial is
derived from a strictly smaller one. The defining property
prod_{d | n} Phi_d = x^n - 1 is exercised by the test suite.

Concurrency contract: the table's only mutable state is its cache dict.
Lookups and single-key inserts are atomic under CPython, which makes a
shared table safe for read-mostly use; workers that want full isolation
should instantiate their own table.
"""

from __future__ import annotations

from .intpoly import IntPoly


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _compose_x_pow(f: IntPoly, k: int) -> IntPoly:
    """f(x^k): spreads coefficients, no arithmetic."""
    if k == 1:
        return f
    cs = [0] * ((len(f.coeffs) - 1) * k + 1) if f.coeffs else []
    for i, c in enumerate(f.coeffs):
        cs[i * k] = c
    return IntPoly.from_coeffs(cs)


class CyclotomicTable:
    """Memoized generator for cyclotomic polynomials and phi values."""

    def __init__(self) -> None:
        self._cache: dict[int, IntPoly] = {1: IntPoly.from_coeffs([-1, 1])}
        self._phi_sums: list[int] = [0, 1]  # prefix sums, index B -> sum_{k<=B} phi(k)
        self._phi_sieve: list[int] = [0, 1]

    # ------------------------------------------------------------------
    def cyclotomic(self, n: int) -> IntPoly:
        if n < 1:
            raise ValueError("order must be >= 1")
        hit = self._cache.get(n)
        if hit is not None:
            return hit
        fac = _factorize(n)
        rad = 1
        for p in fac:
            rad *= p
        if n != rad:
            poly = _compose_x_pow(self.cyclotomic(rad), n // rad)
        elif len(fac) == 1:
            poly = IntPoly.from_coeffs([1] * n)  # n prime
        else:
            p = max(fac)
            base = self.cyclotomic(n // p)
            poly = _compose_x_pow(base, p).exact_div(base)
        self._cache[n] = poly
        return poly

    def euler_phi(self, n: int) -> int:
        if n < 1:
            raise ValueError("n must be >= 1")
        phi = 1
        for p, e in _factorize(n).items():
            phi *= (p - 1) * p ** (e - 1)
        return phi

    def _grow_phi(self, b: int) -> None:
        if b < len(self._phi_sums):
            return
        size = max(b, 2 * (len(self._phi_sieve) - 1)) + 1
        phi = list(range(size))
        for p in range(2, size):
            if phi[p] == p:  # p prime
                for k in range(p, size, p):
                    phi[k] -= phi[k] // p
        self._phi_sieve = phi
        sums = [0] * size
        for k in range(1, size):
            sums[k] = sums[k - 1] + phi[k]
        self._phi_sums = sums

    def phi_values(self, b: int) -> list[int]:
        """phi(k) for k = 0..b as a list (phi(0) slot is 0)."""
        self._grow_phi(b)
        return self._phi_sieve[: b + 1]

    def phi_sum(self, b: int) -> int:
        """sum_{k <= b} phi(k)"""
        if b < 1:
            raise ValueError("bound must be >= 1")
        self._grow_phi(b)
        return self._phi_sums[b]

    def divides_coxeter(self, k: int, f: IntPoly) -> bool:
        """True when Phi_k divides f.

        Folds f modulo x^k - 1 first (Phi_k divides x^k - 1, so exponents
        can be reduced mod k), which keeps the exact division small when
        deg f is much larger than k.
        """
        if f.is_zero():
            return True
        folded = [0] * k
        for i, c in enumerate(f.coeffs):
            folded[i % k] += c
        return self.cyclotomic(k).divides(IntPoly.from_coeffs(folded))


_DEFAULT = CyclotomicTable()


def default_table() -> CyclotomicTable:
    return _DEFAULT


def cyclotomic_poly(n: int) -> IntPoly:
    return _DEFAULT.cyclotomic(n)


def euler_phi(n: int) -> int:
    return _DEFAULT.euler_phi(n)


def phi_sum(b: int) -> int:
    return _DEFAULT.phi_sum(b)
