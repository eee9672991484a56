"""Additive and multiplicative energies of polynomial images over Z/m.

The histogram route is the production path: a representation function is a
Counter over residues, an energy is the sum of its squared fibers, and every
identity used downstream (mass H^2, the Cauchy-Schwarz chain H^4 <= sumset*T)
is checked in exact integer arithmetic.  Quadruple-loop versions exist only
in the test suite as oracles.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ring import DomainError, Interval, PolyMod, image_set, poly_values

PAIR_SUM = "pair-sum"
PAIR_DIFFERENCE = "pair-difference"


@dataclass
class RepFunction:
    """Counts of pair sums (or differences) of f over {1..H}, by residue."""

    modulus: int
    mode: str
    counts: dict[int, int]

    def mass(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, residue: int) -> int:
        return self.counts.get(residue % self.modulus, 0)


@dataclass(frozen=True)
class EnergyReport:
    """All interval-energy statistics of one (f, I) instance."""

    modulus: int
    H: int
    T: int
    energy_plus: int
    energy_times: int
    sumset_size: int
    K: Fraction  # H^3 / T, the exact sumset-growth exponent certificate

    def __post_init__(self) -> None:
        if self.K <= 0:
            raise DomainError("K must be positive")
        if self.energy_plus > self.T:
            # the image-set energy only drops quadruples relative to T
            raise DomainError("energy_plus exceeds T")


def rep_function(f: PolyMod, interval: Interval, mode: str = PAIR_SUM) -> RepFunction:
    """R(lambda) = #{(x, y) in I^2 : f(x) +- f(y) = lambda mod m}.

    Total mass is H^2 by construction.
    """
    vals = poly_values(f, interval)
    m = f.modulus
    counts: Counter[int] = Counter()
    if mode == PAIR_SUM:
        for a in vals:
            counts.update((a + b) % m for b in vals)
    elif mode == PAIR_DIFFERENCE:
        for a in vals:
            counts.update((a - b) % m for b in vals)
    else:
        raise DomainError(f"mode must be {PAIR_SUM!r} or {PAIR_DIFFERENCE!r}, got {mode!r}")
    return RepFunction(m, mode, dict(counts))


def energy_T(f: PolyMod, interval: Interval) -> int:
    """T = #{(x,y,z,w) in I^4 : f(x)+f(y) = f(z)+f(w) mod m} = sum_lambda R(lambda)^2."""
    vals = poly_values(f, interval)
    m = f.modulus
    counts: Counter[int] = Counter()
    for a in vals:
        counts.update((a + b) % m for b in vals)
    return sum(c * c for c in counts.values())


def set_energy_plus(points: Iterable[int], modulus: int) -> int:
    """Additive energy of a set of residues: quadruples with a + b = c + d mod m."""
    pts = sorted({p % modulus for p in points})
    counts: Counter[int] = Counter()
    for a in pts:
        counts.update((a + b) % modulus for b in pts)
    return sum(c * c for c in counts.values())


def set_energy_times(points: Iterable[int], modulus: int) -> int:
    """Multiplicative energy of a set of residues: quadruples with ab = cd mod m."""
    pts = sorted({p % modulus for p in points})
    counts: Counter[int] = Counter()
    for a in pts:
        counts.update((a * b) % modulus for b in pts)
    return sum(c * c for c in counts.values())


def energy_plus(f: PolyMod, interval: Interval) -> int:
    """Additive energy of the image SET f({1..H}) (deduplicated)."""
    return set_energy_plus(image_set(f, interval), f.modulus)


def energy_times(f: PolyMod, interval: Interval) -> int:
    """Multiplicative energy of the image SET f({1..H}) (deduplicated)."""
    return set_energy_times(image_set(f, interval), f.modulus)


def energy_cross(a_points: Iterable[int], b_points: Iterable[int], modulus: int) -> int:
    """E(A, B) = #{(a, a', b, b') in A^2 x B^2 : a + b = a' + b' mod m}."""
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    aa = sorted({p % modulus for p in a_points})
    bb = sorted({p % modulus for p in b_points})
    counts: Counter[int] = Counter()
    for a in aa:
        counts.update((a + b) % modulus for b in bb)
    return sum(c * c for c in counts.values())


def sumset_size(f: PolyMod, interval: Interval) -> int:
    """#(f(I) + f(I)) inside Z/m."""
    pts = sorted(image_set(f, interval))
    m = f.modulus
    seen: set[int] = set()
    for a in pts:
        seen.update((a + b) % m for b in pts)
    return len(seen)


def energy_report(f: PolyMod, interval: Interval) -> EnergyReport:
    """Compute every statistic once; K = H^3/T is exact."""
    t = energy_T(f, interval)
    h = interval.H
    return EnergyReport(
        modulus=f.modulus,
        H=h,
        T=t,
        energy_plus=energy_plus(f, interval),
        energy_times=energy_times(f, interval),
        sumset_size=sumset_size(f, interval),
        K=Fraction(h**3, t),
    )
