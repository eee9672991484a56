"""Closed-form reference bounds for interval energies of polynomial images.

Exponents are exact rationals; the bound values themselves are floats since
the exponents are generically irrational powers of the inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import DomainError


@dataclass(frozen=True)
class BoundParams:
    """The two saving exponents alpha = 2/(d^2+d-2), beta = 2/(d+2)."""

    d: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        if not (0 < self.alpha < 1 and 0 < self.beta < 1):
            raise DomainError("exponents must lie strictly between 0 and 1")
        if self.alpha > self.beta:
            raise DomainError("alpha must not exceed beta")


def alpha_beta(d: int) -> BoundParams:
    if d < 2:
        raise DomainError(f"degree must be >= 2, got {d}")
    return BoundParams(d, Fraction(2, d * d + d - 2), Fraction(2, d + 2))


@dataclass(frozen=True)
class EnergyBound:
    value: float
    exponent_regime: str  # which branch of the min was active


def interval_energy_bound(d: int, m: int, H: int) -> EnergyBound:
    """H^3 * min((m/H)^-alpha, H^-beta): the two-regime energy saving."""
    if m < 2 or H < 1 or H > m:
        raise DomainError("need 1 <= H <= m and m >= 2")
    params = alpha_beta(d)
    a = (m / H) ** (-float(params.alpha))
    b = H ** (-float(params.beta))
    if a <= b:
        return EnergyBound(H**3 * a, "modulus-limited")
    return EnergyBound(H**3 * b, "interval-limited")


def fourth_moment_bound(d: int, m: int, H: int) -> float:
    """H^4 / m^(4/(d(d+1))) + H^2: the mean-value bound for the full energy T."""
    if m < 2 or H < 1 or H > m:
        raise DomainError("need 1 <= H <= m and m >= 2")
    return H**4 / m ** (4 / (d * (d + 1))) + H**2


def fourth_moment_crossover(d: int, m: int) -> float:
    """H where the two terms of the fourth-moment bound balance: m^(2/(d(d+1)))."""
    if m < 2:
        raise DomainError("modulus must be >= 2")
    if d < 2:
        raise DomainError(f"degree must be >= 2, got {d}")
    return m ** (2 / (d * (d + 1)))


def hybrid_count_bound(d: int, m: int, H: int, Z: int) -> float:
    """H^2 Z^2 / m^(2/(d(d+1))) + Z (H + Z): solutions weighted by a set of size Z."""
    if m < 2 or H < 1 or Z < 1:
        raise DomainError("need positive H, Z and m >= 2")
    return H**2 * Z**2 / m ** (2 / (d * (d + 1))) + Z * (H + Z)
