"""Exact arithmetic over residue rings: polynomials mod m, intervals, primes, divisors.

Everything here runs on plain Python integers, so values like power sums up
to H^d never lose precision.  The polynomial coefficient convention is
ascending: coeffs[j] multiplies X**j, and the string form "0,0,1" is X**2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence


class DomainError(ValueError):
    """An argument violates an operation's domain contract."""


class BudgetExceeded(RuntimeError):
    """An exact computation would exceed its configured cost budget."""


@dataclass(frozen=True)
class PolyMod:
    """A polynomial over Z/m of degree >= 1.

    Coefficients are reduced into [0, m) on construction and the leading
    coefficient must not vanish mod m.  Whether gcd(a_d, m) == 1 is a
    separate predicate (`leading_is_unit`), not an invariant: several
    operations are meaningful without it.
    """

    coeffs: tuple[int, ...]
    modulus: int

    def __post_init__(self) -> None:
        m = self.modulus
        if not isinstance(m, int) or m < 2:
            raise DomainError(f"modulus must be an integer >= 2, got {m!r}")
        cs = tuple(int(c) % m for c in self.coeffs)
        if len(cs) < 2:
            raise DomainError("degree must be >= 1 (need at least two coefficients)")
        if cs[-1] == 0:
            raise DomainError("leading coefficient vanishes mod m")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading_is_unit(self) -> bool:
        return math.gcd(self.coeffs[-1], self.modulus) == 1

    def __call__(self, x: int) -> int:
        return eval_poly(self, x)


@dataclass(frozen=True)
class Interval:
    """The integer range {1, ..., H}."""

    H: int

    def __post_init__(self) -> None:
        if not isinstance(self.H, int) or self.H < 1:
            raise DomainError(f"interval length must be an integer >= 1, got {self.H!r}")

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self.H + 1))

    def __len__(self) -> int:
        return self.H


@dataclass(frozen=True)
class Factorization:
    """value = sign * prod(p**e), primes strictly increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value == 0:
            raise DomainError("zero has no factorization")
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != abs(self.value):
            raise DomainError("factor list does not multiply back to |value|")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise DomainError("primes must be strictly increasing")

    def divisor_count(self) -> int:
        tau = 1
        for _, e in self.factors:
            tau *= e + 1
        return tau


def eval_poly(f: PolyMod, x: int) -> int:
    """Horner evaluation of f at x, reduced into [0, m)."""
    m = f.modulus
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % m
    return acc


def image_set(f: PolyMod, interval: Interval) -> set[int]:
    """{f(x) mod m : x in {1..H}}; requires H <= m so the domain injects into Z/m."""
    if interval.H > f.modulus:
        raise DomainError(f"interval length {interval.H} exceeds modulus {f.modulus}")
    return {eval_poly(f, x) for x in interval}


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(2, n + 1) if sieve[i]]


def factorize(w: int) -> Factorization:
    """Trial-division factorization of w != 0 (2, 3, then a 6k+-1 wheel)."""
    if w == 0:
        raise DomainError("cannot factor 0")
    n = abs(w)
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            factors.append((p, e))
    p = 5
    while p * p <= n:
        for q in (p, p + 2):
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            if e:
                factors.append((q, e))
        p += 6
    if n > 1:
        factors.append((n, 1))
    factors.sort()
    return Factorization(w, tuple(factors))


def divisors_of(n: int) -> list[int]:
    """Sorted positive divisors of n != 0."""
    fac = factorize(n)
    divs = [1]
    for p, e in fac.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_pairs(w: int) -> list[tuple[int, int]]:
    """All ordered integer pairs (d1, d2) with d1*d2 = w, both signs.

    Exactly 2*tau(|w|) pairs; w = 0 is rejected because its factorizations
    are not finite.
    """
    if w == 0:
        raise DomainError("w must be nonzero")
    pairs: list[tuple[int, int]] = []
    for e in divisors_of(w):
        pairs.append((e, w // e))
        pairs.append((-e, -(w // e)))
    pairs.sort()
    return pairs


def centered(x: int, m: int) -> int:
    """The representative of x mod m in (-m/2, m/2]."""
    r = x % m
    if 2 * r > m:
        r -= m
    return r


def inv_mod(a: int, m: int) -> int:
    """Inverse of a mod m; DomainError when gcd(a, m) != 1."""
    try:
        return pow(a, -1, m)
    except ValueError as exc:
        raise DomainError(f"{a} is not invertible mod {m}") from exc


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (fixed base set)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def poly_from_string(text: str, modulus: int) -> PolyMod:
    """Parse an ascending comma-separated coefficient list, e.g. "0,0,1" for X^2."""
    try:
        coeffs = tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad coefficient list {text!r}") from exc
    return PolyMod(coeffs, modulus)


def ints_from_string(text: str) -> tuple[int, ...]:
    """Parse a comma-separated integer list."""
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad integer list {text!r}") from exc


def check_interval_fits(f: PolyMod, interval: Interval) -> None:
    if interval.H > f.modulus:
        raise DomainError(
            f"interval length {interval.H} exceeds modulus {f.modulus}; "
            "the domain must inject into Z/m"
        )


def poly_values(f: PolyMod, interval: Interval) -> list[int]:
    """[f(1), ..., f(H)] reduced mod m, with the H <= m domain check."""
    check_interval_fits(f, interval)
    return [eval_poly(f, x) for x in interval]


def int_poly_eval(coeffs: Sequence[int], x: int) -> int:
    """Horner evaluation of an integer polynomial (ascending coefficients)."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
