"""Exact solution counts for systems of power-sum equations.

count_J(d, s, X) counts 2s-tuples (x_1..x_s, y_1..y_s) from X with
sum x_i^j = sum y_i^j for every j = 1..d.  The production route hashes the
s-tuple power-sum vectors (O(|X|^s) insertions) and sums squared fiber
sizes; the genuinely naive 2s-fold loop lives in the test suite.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ring import BudgetExceeded, DomainError, Interval, PolyMod, poly_values

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class PowerSumVector:
    """(sum x_i, sum x_i^2, ..., sum x_i^d) for one tuple, as exact integers."""

    d: int
    components: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.d < 1 or len(self.components) != self.d:
            raise DomainError("need one component per power 1..d")

    @classmethod
    def of(cls, d: int, xs: Sequence[int]) -> "PowerSumVector":
        return cls(d, tuple(sum(x**j for x in xs) for j in range(1, d + 1)))

    def in_range(self, s: int, H: int) -> bool:
        """Attainability check: |component_j| <= s * H^j for s summands from [1,H]."""
        return all(abs(c) <= s * H**j for j, c in enumerate(self.components, start=1))


@dataclass(frozen=True)
class SystemCount:
    """One counted instance of a power-sum system, for reports and the CLI."""

    kind: str  # "J" | "I" | "Ts"
    d: int
    s: int
    count: int
    H: Optional[int] = None
    set_size: Optional[int] = None

    def __post_init__(self) -> None:
        if self.count < 0:
            raise DomainError("count must be nonnegative")
        if self.kind == "J" and self.set_size is not None and self.count < self.set_size**self.s:
            # diagonal tuples alone contribute (#X)^s
            raise DomainError("count below the diagonal floor")


def _check_ds(d: int, s: int) -> None:
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise DomainError(f"d must be an integer >= 1, got {d!r}")
    if not isinstance(s, int) or isinstance(s, bool) or s < 1:
        raise DomainError(f"s must be an integer >= 1, got {s!r}")


def _guard(size: int, s: int, budget: int) -> None:
    if size**s > budget:
        raise BudgetExceeded(
            f"{size}^{s} = {size**s} hash insertions exceed the budget {budget}"
        )


def _power_sum_histogram(d: int, s: int, elements: Sequence[int]) -> Counter:
    """Histogram of (sum x_i, sum x_i^2, ..., sum x_i^d) over ordered s-tuples."""
    powers = [tuple(x**j for j in range(1, d + 1)) for x in elements]
    # fold one tuple coordinate at a time; ordered tuples, so no symmetry factor
    layer: Counter[tuple[int, ...]] = Counter({(0,) * d: 1})
    for _ in range(s):
        nxt: Counter[tuple[int, ...]] = Counter()
        for vec, cnt in layer.items():
            for pw in powers:
                key = tuple(v + p for v, p in zip(vec, pw))
                nxt[key] += cnt
        layer = nxt
    return layer


def count_J(d: int, s: int, elements: Sequence[int], budget: int = DEFAULT_BUDGET) -> int:
    """J_{d,s}(X): diagonal count of the d-equation, 2s-variable power-sum system."""
    _check_ds(d, s)
    xs = sorted(set(int(x) for x in elements))
    if not xs:
        raise DomainError("X must be nonempty")
    _guard(len(xs), s, budget)
    hist = _power_sum_histogram(d, s, xs)
    return sum(c * c for c in hist.values())


def count_I(
    d: int,
    s: int,
    H: int,
    shifts: Sequence[int],
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Inhomogeneous count: sum x_i^j - sum y_i^j = shifts[j-1] over {1..H}^{2s}.

    shifts = (0,...,0) reproduces count_J on {1..H} exactly.
    """
    _check_ds(d, s)
    if H < 1:
        raise DomainError(f"H must be >= 1, got {H}")
    lam = tuple(int(v) for v in shifts)
    if len(lam) != d:
        raise DomainError(f"need {d} shift components, got {len(lam)}")
    for j, v in enumerate(lam, start=1):
        if abs(v) > s * H**j:
            raise DomainError(
                f"|shift_{j}| = {abs(v)} exceeds the attainable range s*H^{j} = {s * H**j}"
            )
    _guard(H, s, budget)
    hist = _power_sum_histogram(d, s, range(1, H + 1))
    total = 0
    for vec, cnt in hist.items():
        other = tuple(v - w for v, w in zip(vec, lam))
        c2 = hist.get(other)
        if c2:
            total += cnt * c2
    return total


def count_Ts(f: PolyMod, interval: Interval, s: int, budget: int = DEFAULT_BUDGET) -> int:
    """T_s = #{2s-tuples in I^{2s} : sum f(x_i) = sum f(y_i) mod m}; s=2 is energy_T."""
    _check_ds(1, s)
    vals = poly_values(f, interval)
    _guard(len(vals), s, budget)
    m = f.modulus
    layer: Counter[int] = Counter({0: 1})
    for _ in range(s):
        nxt: Counter[int] = Counter()
        for total, cnt in layer.items():
            for v in vals:
                nxt[(total + v) % m] += cnt
        layer = nxt
    return sum(c * c for c in layer.values())


@dataclass(frozen=True)
class JBoundEntry:
    H: Optional[int]
    set_size: int
    J: int
    ratio: Fraction  # J / (#X)^s


@dataclass(frozen=True)
class JBoundRecord:
    d: int
    s: int
    entries: tuple[JBoundEntry, ...]
    slope: Optional[float]  # fitted log-log slope of the ratio across the H sweep


def check_J_bound(
    d: int,
    elements: Optional[Sequence[int]] = None,
    H_values: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> JBoundRecord:
    """Ratio record J/(#X)^s at the critical s = d(d+1)/2, optionally over an H sweep."""
    _check_ds(d, 1)
    s = d * (d + 1) // 2
    entries: list[JBoundEntry] = []
    if elements is not None:
        xs = sorted(set(int(x) for x in elements))
        j = count_J(d, s, xs, budget)
        entries.append(JBoundEntry(None, len(xs), j, Fraction(j, len(xs) ** s)))
    sweep: list[JBoundEntry] = []
    if H_values:
        for h in H_values:
            if h < 1:
                raise DomainError(f"H must be >= 1, got {h}")
            j = count_J(d, s, range(1, h + 1), budget)
            sweep.append(JBoundEntry(h, h, j, Fraction(j, h**s)))
        entries.extend(sweep)
    if not entries:
        raise DomainError("need a set X or an H sweep")
    slope = None
    pts = [(math.log(e.H), math.log(e.ratio)) for e in sweep if e.H and e.H > 1]
    if len(pts) >= 2 and len({x for x, _ in pts}) >= 2:
        import statistics

        slope = statistics.linear_regression([x for x, _ in pts], [y for _, y in pts]).slope
    return JBoundRecord(d, s, tuple(entries), slope)
