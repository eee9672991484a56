"""Counting solutions of polynomial equations and congruences in boxes.

The central routine turns a congruence f(n) = f(m) + shift (mod m) over a
short interval into a genuine integer equation: a short vector in the lattice
of coefficient relations pins the power differences down to a single integer
value, and the integer equation is then solved exactly by factoring.  The
count is always recomputed by brute force as well; the two totals must agree
or the call fails loudly.
"""
from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .lattice import (
    NullspaceRecord,
    WeightedBox,
    _Echelon,
    bv_small_solutions,
    congruence_lattice,
    shortest_vector_in,
)
from .ring import (
    BudgetExceeded,
    DomainError,
    PolyMod,
    centered,
    divisors_of,
    int_poly_eval,
    inv_mod,
)

BRUTE_BUDGET = 10**8  # pair enumerations


def poly_shift_coeffs(coeffs: Sequence[int], t: int) -> list[int]:
    """Coefficients of f(x + t) for integer f, exactly."""
    d = len(coeffs) - 1
    out = [0] * (d + 1)
    for k, a in enumerate(coeffs):
        if a == 0:
            continue
        for i in range(k + 1):
            out[i] += a * math.comb(k, i) * t ** (k - i)
    return out


def integer_roots(coeffs: Sequence[int]) -> set[int]:
    """All integer roots of a nonzero integer polynomial."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise DomainError("zero polynomial has every root")
    roots: set[int] = set()
    z = 0
    while cs[z] == 0:
        z += 1
    if z:
        roots.add(0)
        cs = cs[z:]
    if len(cs) == 1:
        return roots
    for r in divisors_of(abs(cs[0])):
        for s in (r, -r):
            if int_poly_eval(cs, s) == 0:
                roots.add(s)
    return roots


def _clean_coeffs(coeffs: Sequence[int]) -> tuple[int, ...]:
    cs = [int(c) for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    if len(cs) < 2:
        raise DomainError("need a nonconstant polynomial")
    return tuple(cs)


def count_eq(
    coeffs: Sequence[int],
    target: int,
    H: int,
    collect: bool = False,
):
    """#{(n, m) in [1,H]^2 : f(n) - f(m) = target} over the integers.

    Divisor method: n - m must divide a nonzero target, and for each divisor
    t the quotient (f(m+t) - f(m))/t is a polynomial with integer
    coefficients, so its roots hide among divisors of its constant term.
    With collect=True also returns the sorted tuple of solution pairs.
    """
    cs = _clean_coeffs(coeffs)
    if H < 1:
        raise DomainError(f"H must be >= 1, got {H}")
    sols: set[tuple[int, int]] = set()
    extra = 0  # uncollected bulk solutions (only when the quotient is constant)
    if target == 0:
        shifts = [t for t in range(-(H - 1), H) if t]
        for n in range(1, H + 1):
            sols.add((n, n))
    else:
        shifts = [t for t in divisors_of(abs(target)) if t <= H - 1]
        shifts = [s for t in shifts for s in (t, -t)]
    for t in shifts:
        shifted = poly_shift_coeffs(cs, t)
        diff = [a - b for a, b in zip(shifted, cs)]
        q = []
        for x in diff:
            if x % t:
                raise DomainError("difference quotient not integral")  # unreachable
            q.append(x // t)
        rhs = 0 if target == 0 else target // t
        lo, hi = max(1, 1 - t), min(H, H - t)
        eqn = [q[0] - rhs] + q[1:]
        if all(c == 0 for c in eqn[1:]):
            if eqn[0] == 0 and hi >= lo:
                if collect:
                    for m in range(lo, hi + 1):
                        sols.add((m + t, m))
                else:
                    extra += hi - lo + 1
            continue
        for m in integer_roots(eqn):
            if lo <= m <= hi:
                sols.add((m + t, m))
    count = len(sols) + extra
    if collect:
        return count, tuple(sorted(sols))
    return count


@dataclass(frozen=True)
class SymmetricCount:
    """Quadruples in [1,H]^4 with f(a) + f(b) = f(c) + f(d) over the integers."""

    total: int
    collision_pairs: int  # r(0): pairs with f(x) = f(y)
    off_diagonal: int  # sum over w != 0 of r(w)^2

    def __post_init__(self) -> None:
        if self.total != self.collision_pairs**2 + self.off_diagonal:
            raise DomainError("decomposition does not add up")


def count_symmetric_eq(coeffs: Sequence[int], H: int) -> SymmetricCount:
    """Exact additive energy of (f(1)..f(H)) as an integer multiset."""
    cs = _clean_coeffs(coeffs)
    if H < 1:
        raise DomainError(f"H must be >= 1, got {H}")
    vals = [int_poly_eval(cs, x) for x in range(1, H + 1)]
    pair_sums: Counter = Counter()
    for a in vals:
        pair_sums.update(a + b for b in vals)
    total = sum(c * c for c in pair_sums.values())
    r0 = sum(c * c for c in Counter(vals).values())
    return SymmetricCount(total, r0, total - r0 * r0)


@functools.lru_cache(maxsize=None)
def regime_constant(d: int, max_den: int = 10**6) -> Fraction:
    """Largest rational p/q (q <= max_den) whose box is Minkowski-guaranteed.

    The congruence pipeline uses the box with half-widths m/(100 d H^j); a
    nonzero lattice point is guaranteed whenever H <= c * m^(2/d(d+1)) with
    c at most the cutoff (100 d)^(-2/(d+1)).  Stern-Brocot walk with run
    acceleration; comparisons against the irrational cutoff are the exact
    integer test p^(d+1) (100 d)^2 <= q^(d+1).
    """
    if d < 2:
        raise DomainError(f"degree must be >= 2, got {d}")
    if max_den < 1:
        raise DomainError("denominator cap must be positive")

    def below(p: int, q: int) -> bool:
        return p ** (d + 1) * (100 * d) ** 2 <= q ** (d + 1)

    a, b = 0, 1  # lo <= cutoff
    x, y = 1, 1  # hi > cutoff
    while b + y <= max_den:
        if below(a + x, b + y):
            # mediants march up toward the cutoff; take the longest run
            jcap = (max_den - b) // y
            j = 1
            while j * 2 <= jcap and below(a + 2 * j * x, b + 2 * j * y):
                j *= 2
            lo_j, hi_j = j, min(2 * j, jcap)
            while lo_j < hi_j:
                mid = (lo_j + hi_j + 1) // 2
                if below(a + mid * x, b + mid * y):
                    lo_j = mid
                else:
                    hi_j = mid - 1
            a, b = a + lo_j * x, b + lo_j * y
        else:
            jcap = (max_den - y) // b
            if jcap < 1:
                break
            j = 1
            while j * 2 <= jcap and not below(2 * j * a + x, 2 * j * b + y):
                j *= 2
            lo_j, hi_j = j, min(2 * j, jcap)
            while lo_j < hi_j:
                mid = (lo_j + hi_j + 1) // 2
                if not below(mid * a + x, mid * b + y):
                    lo_j = mid
                else:
                    hi_j = mid - 1
            x, y = lo_j * a + x, lo_j * b + y
    if a == 0:
        raise DomainError("denominator cap too small to approximate the cutoff")
    return Fraction(a, b)


def in_regime(d: int, modulus: int, H: int) -> bool:
    """Exact test of H <= c * modulus^(2/d(d+1)) for the chosen rational c."""
    c = regime_constant(d)
    s = d * (d + 1) // 2
    return H**s * c.denominator**s <= c.numerator**s * modulus


@dataclass(frozen=True)
class BVCertificate:
    """Independent recount of the solution family from its own geometry."""

    anchor: tuple[int, int]
    rank: int  # of the relative power-difference vectors
    vector: tuple[int, ...]  # small nullspace vector used for the recount
    pairing: int  # its value against the anchor's power differences
    family_size: int
    recount: int
    consistent: bool
    nullspace: Optional[NullspaceRecord]


@dataclass(frozen=True)
class PipelineCertificate:
    """Everything the constructive count produced on its way to the total."""

    monic: tuple[int, ...]  # unit-normalized coefficients
    shift_monic: int
    short_vector: tuple[int, ...]
    ell: int
    offset: int  # the single integer value the power differences must take
    reach: int  # largest achievable |sum b_j (n^j - m^j)|
    branch: str  # "empty" | "collision" | "divisor"
    solutions: tuple[tuple[int, int], ...]
    filtered: int  # integer-equation solutions rejected by the congruence
    bv: Optional[BVCertificate]


@dataclass(frozen=True)
class EqCountResult:
    """A counted congruence instance; methods must agree when both run."""

    count: int
    method: str  # "divisor" | "brute" | "pipeline"
    modulus: int
    H: int
    shift: int
    degree: int
    certificate: Optional[PipelineCertificate] = None
    declined: Optional[str] = None  # why the pipeline did not run

    def __post_init__(self) -> None:
        if self.method not in ("divisor", "brute", "pipeline"):
            raise DomainError(f"unknown method {self.method!r}")


def _pow_diff(pair: tuple[int, int], d: int) -> tuple[int, ...]:
    n, m = pair
    return tuple(n**j - m**j for j in range(1, d + 1))


def _certify(
    family: Sequence[tuple[int, int]],
    d: int,
    H: int,
    f_coeffs: Sequence[int],
    modulus: int,
    shift: int,
) -> BVCertificate:
    """Recount the family through a small vector in its own relation nullspace."""
    anchor = min(family)
    base = _pow_diff(anchor, d)
    relatives = [
        [a - b for a, b in zip(_pow_diff(p, d), base)] for p in family if p != anchor
    ]
    ech = _Echelon()
    rows = [r for r in relatives if ech.try_add(r)]
    d0 = len(rows)
    if d0 == 0:
        # every solution sits on one power-difference point; read the fiber
        return BVCertificate(anchor, 0, (), 0, len(family), len(family), True, None)
    record = bv_small_solutions(rows)
    vector = None
    pairing = 0
    for w in record.solutions:
        val = sum(c * b for c, b in zip(w, base))
        if val != 0:
            vector, pairing = w, val
            break
    if vector is None:
        raise DomainError("no nullspace vector pairs with the anchor")  # unreachable
    _, pairs = count_eq((0,) + tuple(vector), pairing, H, collect=True)
    kept = [
        p
        for p in pairs
        if (int_poly_eval(f_coeffs, p[0]) - int_poly_eval(f_coeffs, p[1]) - shift) % modulus == 0
    ]
    consistent = sorted(kept) == sorted(family)
    return BVCertificate(anchor, d0, vector, pairing, len(family), len(kept), consistent, record)


def brute_congruence(f: PolyMod, shift: int, H: int, budget: int = BRUTE_BUDGET):
    """O(H^2) reference count with solutions, via the value histogram."""
    if H * H > budget:
        raise BudgetExceeded(f"H^2 = {H * H} pair checks exceed the budget {budget}")
    m = f.modulus
    vals = [f(x) for x in range(1, H + 1)]
    where: dict[int, list[int]] = {}
    for x, v in enumerate(vals, start=1):
        where.setdefault(v, []).append(x)
    sols = []
    for y, v in enumerate(vals, start=1):
        for x in where.get((v + shift) % m, ()):
            sols.append((x, y))
    sols.sort()
    return len(sols), tuple(sols)


def _pipeline(f: PolyMod, shift: int, H: int, certify: bool) -> PipelineCertificate:
    m = f.modulus
    d = f.degree
    u = inv_mod(f.coeffs[-1], m)
    monic = tuple(u * c % m for c in f.coeffs)
    lam = u * (shift % m) % m

    lat = congruence_lattice(monic[1:], m)
    box = WeightedBox(tuple(Fraction(m, 100 * d * H**j) for j in range(1, d + 1)))
    b = shortest_vector_in(lat, box)
    if b is None:
        raise DomainError("no short relation found inside a certified box")  # unreachable
    if b[-1] == 0:
        # b_d = ell mod m with |b_d| < m, so b_d = 0 would force b = 0
        raise DomainError("degenerate relation with zero leading entry")  # unreachable
    ell = b[-1] % m
    w0 = centered(ell * lam % m, m)
    reach = sum(abs(bj) * (H**j - 1) for j, bj in enumerate(b, start=1))
    if 2 * reach >= m:
        raise DomainError("relation too long to separate residues")  # unreachable in regime

    f_int = tuple(int(c) for c in f.coeffs)

    def cong_ok(pair: tuple[int, int]) -> bool:
        n, mm = pair
        return (int_poly_eval(f_int, n) - int_poly_eval(f_int, mm) - shift) % m == 0

    if w0 == 0:
        # ell * lam = 0 mod m: the relation carries no value information
        # (composite m only); fall back to the exact histogram count
        _, sols = brute_congruence(f, shift, H)
        return PipelineCertificate(monic, lam, b, ell, 0, reach, "collision", sols, 0, None)

    if abs(w0) > reach:
        return PipelineCertificate(monic, lam, b, ell, w0, reach, "empty", (), 0, None)

    _, pairs = count_eq((0,) + tuple(b), w0, H, collect=True)
    family = [p for p in pairs if cong_ok(p)]
    filtered = len(pairs) - len(family)
    bv = _certify(family, d, H, f_int, m, shift) if certify and family else None
    return PipelineCertificate(monic, lam, b, ell, w0, reach, "divisor", tuple(family), filtered, bv)


def count_congruence(f: PolyMod, shift: int, H: int, certify: bool = True) -> EqCountResult:
    """Exact #{(n, m) in [1,H]^2 : f(n) = f(m) + shift (mod modulus)}.

    Brute force always runs.  Inside the regime H <= c * m^(2/d(d+1)) the
    constructive lattice-and-divisor pipeline runs as well and the two counts
    must agree exactly; outside it the pipeline is declined, not faked.
    """
    m = f.modulus
    d = f.degree
    if d < 2:
        raise DomainError("degree must be >= 2 for the lattice step")
    if H < 1:
        raise DomainError(f"H must be >= 1, got {H}")
    if H > m:
        raise DomainError("interval longer than the modulus")
    if shift % m == 0:
        raise DomainError("shift must be nonzero mod m")
    if math.gcd(f.coeffs[-1], m) != 1:
        raise DomainError("leading coefficient must be a unit")

    brute_count, brute_sols = brute_congruence(f, shift, H)
    if not in_regime(d, m, H):
        c = regime_constant(d)
        return EqCountResult(
            brute_count, "brute", m, H, shift, d,
            declined=f"H = {H} exceeds {c} * m^(2/{d * (d + 1)}); lattice step not certified",
        )
    cert = _pipeline(f, shift, H, certify)
    pipeline_count = len(cert.solutions)
    if pipeline_count != brute_count or tuple(cert.solutions) != brute_sols:
        raise DomainError(
            f"pipeline count {pipeline_count} disagrees with brute force {brute_count}"
        )
    return EqCountResult(pipeline_count, "pipeline", m, H, shift, d, certificate=cert)
