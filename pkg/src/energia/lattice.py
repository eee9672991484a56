"""Exact geometry of numbers for integer lattices in dimension <= 8.

Everything is certified in rational arithmetic: successive minima come with
witness vectors, Minkowski's second theorem is checked as an exact sandwich,
duality is an involution on canonical (Hermite normal form) bases, and the
small-nullspace constructor proves its product bound with integer
comparisons.  Floating point appears only to bracket enumeration intervals;
every boundary candidate is re-validated exactly before use.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .ring import BudgetExceeded, DomainError

MAX_ENUM_DIM = 8
DEFAULT_NODE_BUDGET = 5_000_000

RatLike = Union[int, str, Fraction]


class UnsupportedSize(DomainError):
    """Instance too large for exact enumeration."""


def to_fraction(x: RatLike) -> Fraction:
    """Exact coercion; floats are rejected to protect rational certificates."""
    if isinstance(x, float):
        raise DomainError(f"refusing inexact float {x!r}; pass a Fraction or 'p/q' string")
    return Fraction(x)


# ---------------------------------------------------------------------------
# integer linear algebra


def hnf_rows(mat: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Row-style Hermite normal form.

    Returns (rows, rank): a staircase with positive pivots, entries above
    each pivot reduced into [0, pivot), zero rows at the bottom.
    """
    rows = [list(map(int, r)) for r in mat]
    if not rows:
        return [], 0
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        while True:
            nz = [i for i in range(r + 1, nrows) if rows[i][c] != 0]
            if rows[r][c] == 0:
                if not nz:
                    break
                i0 = min(nz, key=lambda i: abs(rows[i][c]))
                rows[r], rows[i0] = rows[i0], rows[r]
                continue
            if not nz:
                break
            for i in nz:
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            nz2 = [i for i in range(r + 1, nrows) if rows[i][c] != 0]
            if not nz2:
                break
            i0 = min(nz2, key=lambda i: abs(rows[i][c]))
            rows[r], rows[i0] = rows[i0], rows[r]
        if rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
            piv = rows[r][c]
            for i in range(r):
                q = rows[i][c] // piv
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            r += 1
    return rows, r


def hnf_with_transform(mat: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], int]:
    """(H, U, rank) with U unimodular and U * mat = H in Hermite normal form."""
    rows = [list(map(int, r)) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        while True:
            nz = [i for i in range(r + 1, nrows) if rows[i][c] != 0]
            if rows[r][c] == 0:
                if not nz:
                    break
                i0 = min(nz, key=lambda i: abs(rows[i][c]))
                rows[r], rows[i0] = rows[i0], rows[r]
                u[r], u[i0] = u[i0], u[r]
                continue
            if not nz:
                break
            for i in nz:
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
            nz2 = [i for i in range(r + 1, nrows) if rows[i][c] != 0]
            if not nz2:
                break
            i0 = min(nz2, key=lambda i: abs(rows[i][c]))
            rows[r], rows[i0] = rows[i0], rows[r]
            u[r], u[i0] = u[i0], u[r]
        if rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
                u[r] = [-a for a in u[r]]
            piv = rows[r][c]
            for i in range(r):
                q = rows[i][c] // piv
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
            r += 1
    return rows, u, r


def det_int(mat: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    a = [list(map(int, r)) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def integer_kernel(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis rows of the saturated integer kernel {w : mat . w = 0}.

    Computed from the unimodular transform of HNF(mat^T): the transform rows
    that map onto zero rows are a basis, and saturation is automatic.
    """
    rows = [list(map(int, r)) for r in mat]
    if not rows:
        raise DomainError("empty matrix")
    ncols = len(rows[0])
    transpose = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    _, u, rank = hnf_with_transform(transpose)
    return [u[i] for i in range(rank, ncols)]


def rational_rank(mat: Sequence[Sequence[Union[int, Fraction]]]) -> int:
    rows = [[Fraction(x) for x in r] for r in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
        rank += 1
    return rank


def inv_frac(mat: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Exact inverse of a square integer matrix."""
    n = len(mat)
    a = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise DomainError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


class _Echelon:
    """Incremental rational row echelon, for greedy independence filtering."""

    def __init__(self) -> None:
        self.rows: list[list[Fraction]] = []

    def try_add(self, vec: Sequence[Union[int, Fraction]]) -> bool:
        v = [Fraction(x) for x in vec]
        for row in self.rows:
            piv = next(i for i, x in enumerate(row) if x != 0)
            if v[piv] != 0:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            self.rows.append(v)
            return True
        return False


# ---------------------------------------------------------------------------
# norm bodies


@dataclass(frozen=True)
class WeightedBox:
    """{x : |x_i| <= c_i}, rational half-widths c_i > 0."""

    half_widths: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        hw = tuple(to_fraction(c) for c in self.half_widths)
        if not hw or any(c <= 0 for c in hw):
            raise DomainError("half-widths must be positive rationals")
        object.__setattr__(self, "half_widths", hw)

    @property
    def dim(self) -> int:
        return len(self.half_widths)

    def norm(self, vec: Sequence[Union[int, Fraction]]) -> Fraction:
        return max(abs(Fraction(x)) / c for x, c in zip(vec, self.half_widths))

    def volume(self) -> Fraction:
        v = Fraction(1)
        for c in self.half_widths:
            v *= 2 * c
        return v

    def quad_weights(self) -> tuple[Fraction, ...]:
        return tuple(1 / (c * c) for c in self.half_widths)

    def ellipsoid_bound(self, radius: Fraction) -> Fraction:
        # x in R*box implies sum (x_i/c_i)^2 <= dim * R^2
        return self.dim * radius * radius

    def polar(self) -> "DualBody":
        return DualBody(self.half_widths)


@dataclass(frozen=True)
class DualBody:
    """The weighted cross-polytope {y : sum c_i |y_i| <= 1}; polar of the box."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cs = tuple(to_fraction(c) for c in self.coefficients)
        if not cs or any(c <= 0 for c in cs):
            raise DomainError("coefficients must be positive rationals")
        object.__setattr__(self, "coefficients", cs)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def norm(self, vec: Sequence[Union[int, Fraction]]) -> Fraction:
        return sum(c * abs(Fraction(x)) for x, c in zip(vec, self.coefficients))

    def volume(self) -> Fraction:
        v = Fraction(2**self.dim, math.factorial(self.dim))
        for c in self.coefficients:
            v /= c
        return v

    def quad_weights(self) -> tuple[Fraction, ...]:
        return tuple(c * c for c in self.coefficients)

    def ellipsoid_bound(self, radius: Fraction) -> Fraction:
        # sum c_i |x_i| <= R implies sum (c_i x_i)^2 <= R^2
        return radius * radius

    def polar(self) -> WeightedBox:
        return WeightedBox(self.coefficients)


Body = Union[WeightedBox, DualBody]


# ---------------------------------------------------------------------------
# the lattice type


@dataclass(frozen=True)
class IntLattice:
    """Lattice {t . basis / den : t integer row}, basis rows independent."""

    basis: tuple[tuple[int, ...], ...]
    den: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.den, int) or self.den < 1:
            raise DomainError(f"denominator must be a positive integer, got {self.den!r}")
        rows = tuple(tuple(int(x) for x in r) for r in self.basis)
        if not rows:
            raise DomainError("empty basis")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DomainError("ragged basis")
        if len(rows) > n:
            raise DomainError("more rows than ambient dimension")
        if rational_rank(rows) != len(rows):
            raise DomainError("basis rows are linearly dependent")
        object.__setattr__(self, "basis", rows)

    @property
    def dim(self) -> int:
        return len(self.basis[0])

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    @property
    def covolume(self) -> Fraction:
        if not self.is_full_rank:
            raise DomainError("covolume needs a full-rank lattice")
        return Fraction(abs(det_int(self.basis)), self.den**self.dim)

    def canonical(self) -> "IntLattice":
        rows, rank = hnf_rows(self.basis)
        rows = rows[:rank]
        g = self.den
        for r in rows:
            for x in r:
                g = math.gcd(g, abs(x))
        g = max(g, 1)
        return IntLattice(tuple(tuple(x // g for x in r) for r in rows), self.den // g)

    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(x, self.den) for x in r) for r in self.basis)

    def coefficients_of(self, vec: Sequence[Union[int, Fraction]]) -> Optional[tuple[int, ...]]:
        """Integer t with t . basis / den = vec, or None when vec is not in L."""
        target = [Fraction(x) * self.den for x in vec]
        # solve t . basis = target by echelon on the transpose system
        rows = [[Fraction(x) for x in r] for r in self.basis]
        cols = self.dim
        aug = [[rows[i][j] for i in range(self.rank)] + [target[j]] for j in range(cols)]
        r = 0
        piv_cols = []
        for col in range(self.rank):
            piv = next((i for i in range(r, cols) if aug[i][col] != 0), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            inv = 1 / aug[r][col]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(cols):
                if i != r and aug[i][col] != 0:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            piv_cols.append(col)
            r += 1
        for i in range(r, cols):
            if aug[i][-1] != 0:
                return None
        t = [Fraction(0)] * self.rank
        for row_idx, col in enumerate(piv_cols):
            t[col] = aug[row_idx][-1]
        if any(x.denominator != 1 for x in t):
            return None
        return tuple(int(x) for x in t)


def lattice_from_string(text: str, den: int = 1) -> IntLattice:
    """Parse semicolon-separated rows of comma-separated integers."""
    rows = []
    for part in text.split(";"):
        rows.append(tuple(int(x.strip()) for x in part.split(",")))
    return IntLattice(tuple(rows), den)


def congruence_lattice(coeffs: Sequence[int], modulus: int) -> IntLattice:
    """{(n_1..n_d) : exists l with n_j = coeffs[j-1] * l mod m for all j}.

    Generated by (a_1..a_d) and m e_j; returned in canonical HNF form.
    """
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    a = [int(x) % modulus for x in coeffs]
    d = len(a)
    if d < 1:
        raise DomainError("need at least one coefficient")
    gens = [a] + [[modulus * int(i == j) for j in range(d)] for i in range(d)]
    rows, rank = hnf_rows(gens)
    if rank != d:
        raise DomainError("congruence generators failed to span")  # unreachable: m e_j span
    return IntLattice(tuple(tuple(r) for r in rows[:rank]), 1)


# ---------------------------------------------------------------------------
# exact reduction and enumeration


def _ip(u: Sequence[Union[int, Fraction]], v: Sequence[Union[int, Fraction]], qw: Sequence[Fraction]) -> Fraction:
    return sum((w * Fraction(a)) * Fraction(b) for w, a, b in zip(qw, u, v))


def _gram_schmidt(rows: Sequence[Sequence[int]], qw: Sequence[Fraction]):
    """mu (lower triangular) and squared lengths of the GS vectors under qw."""
    k = len(rows)
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    bn: list[Fraction] = []
    for i in range(k):
        vec = [Fraction(x) for x in rows[i]]
        for j in range(i):
            mij = _ip(rows[i], bstar[j], qw) / bn[j]
            mu[i][j] = mij
            vec = [a - mij * b for a, b in zip(vec, bstar[j])]
        norm = _ip(vec, vec, qw)
        if norm == 0:
            raise DomainError("rows are linearly dependent")
        bstar.append(vec)
        bn.append(norm)
    return mu, bn, bstar


def lll_reduce(rows: Sequence[Sequence[int]], qw: Sequence[Fraction], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Exact LLL under the diagonal quadratic form qw; same lattice, nicer basis."""
    b = [list(map(int, r)) for r in rows]
    k = len(b)
    if k <= 1:
        return b
    mu, bn, _ = _gram_schmidt(b, qw)
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [a - q * c for a, c in zip(b[i], b[j])]
                mu, bn, _ = _gram_schmidt(b, qw)
        if bn[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * bn[i - 1]:
            b[i - 1], b[i] = b[i], b[i - 1]
            mu, bn, _ = _gram_schmidt(b, qw)
            i = max(i - 1, 1)
        else:
            i += 1
    return b


def _sqrt_floor(fr: Fraction) -> int:
    if fr < 0:
        return 0
    return math.isqrt(fr.numerator // fr.denominator)


def _fp_points(
    rows: Sequence[Sequence[int]],
    qw: Sequence[Fraction],
    bound: Fraction,
    budget: int = DEFAULT_NODE_BUDGET,
    shift: Optional[Sequence[int]] = None,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All vectors shift + t . rows with quadratic norm <= bound, exactly.

    Fincke-Pohst over the Gram-Schmidt decomposition; interval ends are
    bracketed with integer square roots and every candidate is re-checked in
    rational arithmetic before the recursion descends.  Returns (vector,
    coefficients) pairs; the zero vector is included when it qualifies.
    """
    k = len(rows)
    n = len(rows[0])
    mu, bn, bstar = _gram_schmidt(rows, qw)
    if shift is None:
        sigma = [Fraction(0)] * k
        rem0 = Fraction(bound)
        base = [0] * n
    else:
        base = [int(x) for x in shift]
        sigma = [_ip(base, bstar[j], qw) / bn[j] for j in range(k)]
        ortho = Fraction(_ip(base, base, qw)) - sum(s * s * b for s, b in zip(sigma, bn))
        rem0 = Fraction(bound) - ortho
    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    if rem0 < 0:
        return out
    tvec = [0] * k
    nodes = 0

    def rec(i: int, rem: Fraction) -> None:
        nonlocal nodes
        if i < 0:
            v = tuple(
                base[c] + sum(tvec[j] * rows[j][c] for j in range(k)) for c in range(n)
            )
            out.append((v, tuple(tvec)))
            return
        center = sigma[i] + sum(mu[j][i] * tvec[j] for j in range(i + 1, k))
        radius = _sqrt_floor(rem / bn[i]) + 1
        start = math.floor(-center)
        for t in range(start - radius, start + radius + 2):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"enumeration exceeded {budget} nodes")
            diff = t + center
            contrib = diff * diff * bn[i]
            if contrib <= rem:
                tvec[i] = t
                rec(i - 1, rem - contrib)
        tvec[i] = 0

    rec(k - 1, rem0)
    return out


def _canonical_sign(vec: tuple[int, ...]) -> tuple[int, ...]:
    for x in vec:
        if x > 0:
            return vec
        if x < 0:
            return tuple(-y for y in vec)
    return vec


def lattice_points_within(
    lat: IntLattice,
    body: Body,
    radius: Fraction = Fraction(1),
    budget: int = DEFAULT_NODE_BUDGET,
    reduce_first: bool = True,
) -> list[tuple[int, ...]]:
    """Numerators of all nonzero v in L with body-norm(v) <= radius."""
    if body.dim != lat.dim:
        raise DomainError("body dimension does not match the lattice")
    qw = body.quad_weights()
    rows = lll_reduce(lat.basis, qw) if reduce_first else [list(r) for r in lat.basis]
    bound = body.ellipsoid_bound(Fraction(radius)) * lat.den * lat.den
    pts = _fp_points(rows, qw, bound, budget)
    out = []
    scale = Fraction(1, lat.den)
    for v, _ in pts:
        if any(v) and body.norm([x * scale for x in v]) <= radius:
            out.append(v)
    return out


@dataclass(frozen=True)
class MinimaProfile:
    """Successive minima with witness vectors (exact rationals)."""

    minima: tuple[Fraction, ...]
    witnesses: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        lam = self.minima
        if any(x <= 0 for x in lam):
            raise DomainError("minima must be positive")
        if any(a > b for a, b in zip(lam, lam[1:])):
            raise DomainError("minima must be nondecreasing")
        if len(lam) != len(self.witnesses):
            raise DomainError("need one witness per minimum")


def _minima_engine(
    rows: Sequence[Sequence[int]],
    den: int,
    body: Body,
    budget: int = DEFAULT_NODE_BUDGET,
) -> tuple[list[Fraction], list[tuple[int, ...]]]:
    """Exact successive minima of {t.rows/den} under the body norm.

    Enumerates out to the largest norm of an LLL-reduced basis vector, which
    always contains rank-many independent vectors, then picks greedily by
    (norm, lexicographic sign-normalized vector).
    """
    k = len(rows)
    qw = body.quad_weights()
    red = lll_reduce(rows, qw)
    scale = Fraction(1, den)
    radius = max(body.norm([x * scale for x in r]) for r in red)
    bound = body.ellipsoid_bound(radius) * den * den
    pts = _fp_points(red, qw, bound, budget)
    seen: dict[tuple[int, ...], Fraction] = {}
    for v, _ in pts:
        if not any(v):
            continue
        cv = _canonical_sign(v)
        if cv in seen:
            continue
        nrm = body.norm([x * scale for x in cv])
        if nrm <= radius:
            seen[cv] = nrm
    ordered = sorted(seen.items(), key=lambda item: (item[1], item[0]))
    ech = _Echelon()
    minima: list[Fraction] = []
    wits: list[tuple[int, ...]] = []
    for vec, nrm in ordered:
        if ech.try_add(vec):
            minima.append(nrm)
            wits.append(vec)
            if len(minima) == k:
                break
    if len(minima) != k:
        raise DomainError("enumeration failed to reach full rank")  # unreachable
    return minima, wits


def successive_minima(lat: IntLattice, body: Body, budget: int = DEFAULT_NODE_BUDGET) -> MinimaProfile:
    """Exact successive minima of L with respect to the given symmetric body."""
    if lat.dim > MAX_ENUM_DIM:
        raise UnsupportedSize(f"dimension {lat.dim} exceeds the enumeration bound {MAX_ENUM_DIM}")
    if body.dim != lat.dim:
        raise DomainError("body dimension does not match the lattice")
    minima, wits = _minima_engine(lat.basis, lat.den, body, budget)
    scale = Fraction(1, lat.den)
    return MinimaProfile(
        tuple(minima),
        tuple(tuple(x * scale for x in w) for w in wits),
    )


def shortest_vector_in(lat: IntLattice, body: Body, budget: int = DEFAULT_NODE_BUDGET) -> Optional[tuple[int, ...]]:
    """Numerator of a nonzero lattice vector of body-norm <= 1, of least norm
    (ties broken lexicographically after sign normalization), or None."""
    pts = lattice_points_within(lat, body, Fraction(1), budget)
    if not pts:
        return None
    scale = Fraction(1, lat.den)
    best = min(
        (_canonical_sign(v) for v in pts),
        key=lambda v: (body.norm([x * scale for x in v]), v),
    )
    return best


# ---------------------------------------------------------------------------
# the certified checks


@dataclass(frozen=True)
class MinkowskiRecord:
    minima: tuple[Fraction, ...]
    ratio: Fraction  # prod(lambda) * vol(body) / covol
    lower: Fraction  # 2^n / n!
    upper: int  # 2^n
    ok: bool


def minkowski_check(lat: IntLattice, body: Body, budget: int = DEFAULT_NODE_BUDGET) -> MinkowskiRecord:
    """Exact second-theorem sandwich: 2^n/n! <= prod(lambda) vol / covol <= 2^n."""
    prof = successive_minima(lat, body, budget)
    prod = Fraction(1)
    for lam in prof.minima:
        prod *= lam
    n = lat.dim
    ratio = prod * body.volume() / lat.covolume
    lower = Fraction(2**n, math.factorial(n))
    upper = 2**n
    return MinkowskiRecord(prof.minima, ratio, lower, upper, lower <= ratio <= upper)


def dual_lattice(lat: IntLattice) -> IntLattice:
    """{y : <y, x> in Z for all x in L}, in canonical form."""
    if not lat.is_full_rank:
        raise DomainError("dual needs a full-rank lattice")
    inv = inv_frac(lat.basis)
    n = lat.dim
    # dual basis rows are den * (B^{-1})^T
    entries = [[inv[j][i] * lat.den for j in range(n)] for i in range(n)]
    common = 1
    for row in entries:
        for x in row:
            common = common * x.denominator // math.gcd(common, x.denominator)
    numer = tuple(tuple(int(x * common) for x in row) for row in entries)
    return IntLattice(numer, common).canonical()


@dataclass(frozen=True)
class TransferenceRecord:
    primal: MinimaProfile
    dual: MinimaProfile
    products: tuple[Fraction, ...]  # lambda_j * lambda*_{n-j+1}
    max_product: Fraction
    ok: bool  # every product >= 1, asserted exactly


def transference_check(lat: IntLattice, body: Body, budget: int = DEFAULT_NODE_BUDGET) -> TransferenceRecord:
    """lambda_j(L, D) * lambda_{n-j+1}(L*, D*) >= 1 for all j, exactly.

    Only the lower bound is asserted; the empirical max is reported so the
    upper constant can be observed rather than trusted.
    """
    primal = successive_minima(lat, body, budget)
    dual = successive_minima(dual_lattice(lat), body.polar(), budget)
    n = lat.dim
    products = tuple(primal.minima[j] * dual.minima[n - 1 - j] for j in range(n))
    return TransferenceRecord(primal, dual, products, max(products), all(p >= 1 for p in products))


def count_lattice_points(lat: IntLattice, body: Body, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """#(L intersect body), origin included; exact."""
    if lat.dim > MAX_ENUM_DIM:
        raise UnsupportedSize(f"dimension {lat.dim} exceeds the enumeration bound {MAX_ENUM_DIM}")
    if not lat.is_full_rank:
        raise DomainError("point counting needs a full-rank lattice")
    return len(lattice_points_within(lat, body, Fraction(1), budget)) + 1


@dataclass(frozen=True)
class PointCountRecord:
    count: int
    minima: tuple[Fraction, ...]
    reference: Fraction  # prod over j of max(1, 1/lambda_j)
    cn: Fraction  # count / reference, the observed dimensional constant


def point_count_record(lat: IntLattice, body: Body, budget: int = DEFAULT_NODE_BUDGET) -> PointCountRecord:
    count = count_lattice_points(lat, body, budget)
    prof = successive_minima(lat, body, budget)
    ref = Fraction(1)
    for lam in prof.minima:
        ref *= max(Fraction(1), 1 / lam)
    return PointCountRecord(count, prof.minima, ref, Fraction(count) / ref)


# ---------------------------------------------------------------------------
# basis from minima witnesses with certified expansion constants


@dataclass(frozen=True)
class MahlerBasisRecord:
    minima: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    norms: tuple[Fraction, ...]
    factor: Fraction  # certified multiple of lambda_j: max(1, n/2)
    within_factor: bool
    expansions: tuple[tuple[tuple[int, ...], Fraction], ...]  # (coeffs, max |c_j| lambda_j)
    expansion_constant: Optional[Fraction]


def _complete_unimodular(u_rows: list[list[int]], size: int) -> list[int]:
    """A row completing u_rows ((size-1) x size, extendable) to det +-1."""
    if size == 1:
        return [1]
    cof: list[int] = []
    for i in range(size):
        minor = [[row[j] for j in range(size) if j != i] for row in u_rows]
        cof.append((-1) ** (size - 1 + i) * det_int(minor))
    # solve sum u_i cof_i = 1 by iterated extended gcd
    g = 0
    coeffs = [0] * size
    for i, c in enumerate(cof):
        if c == 0:
            continue
        if g == 0:
            g = abs(c)
            coeffs = [0] * size
            coeffs[i] = 1 if c > 0 else -1
            continue
        gg, x, y = _egcd(g, c)
        coeffs = [x * v for v in coeffs]
        coeffs[i] += y
        g = gg
    if abs(g) != 1:
        raise DomainError("sublattice is not a direct summand")  # unreachable by construction
    if g == -1:
        coeffs = [-v for v in coeffs]
    return coeffs


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _saturation(rows: list[list[int]], dim: int) -> list[list[int]]:
    """Basis of span_Q(rows) intersect Z^dim (the saturated subgroup)."""
    perp = integer_kernel(rows)
    if not perp:
        return [[int(i == j) for j in range(dim)] for i in range(dim)]
    return integer_kernel(perp)


def mahler_basis(
    lat: IntLattice,
    body: Body,
    queries: Sequence[Sequence[Union[int, Fraction]]] = (),
    budget: int = DEFAULT_NODE_BUDGET,
) -> MahlerBasisRecord:
    """A basis w_1..w_n of L with ||w_j|| <= max(1, n/2) * lambda_j.

    Built greedily: w_j is the shortest completion of (w_1..w_{j-1}) to a
    basis of L intersect span(v_1..v_j), found by exact coset enumeration.
    The expansion certificate reports, for each queried vector b in L,
    integer coefficients b = sum c_j w_j and the value max_j |c_j| lambda_j.
    """
    if lat.dim > MAX_ENUM_DIM:
        raise UnsupportedSize(f"dimension {lat.dim} exceeds the enumeration bound {MAX_ENUM_DIM}")
    if not lat.is_full_rank:
        raise DomainError("basis construction needs a full-rank lattice")
    prof = successive_minima(lat, body, budget)
    n = lat.dim
    den = lat.den
    scale = Fraction(1, den)
    qw = body.quad_weights()

    def coeff_norm(t: Sequence[int]) -> Fraction:
        vec = [sum(t[i] * lat.basis[i][c] for i in range(n)) * scale for c in range(n)]
        return body.norm(vec)

    wit_coeff: list[tuple[int, ...]] = []
    for w in prof.witnesses:
        t = lat.coefficients_of(w)
        if t is None:
            raise DomainError("witness left the lattice")  # unreachable
        wit_coeff.append(t)

    chosen: list[list[int]] = []
    norms: list[Fraction] = []
    for j in range(n):
        sat = _saturation([list(t) for t in wit_coeff[: j + 1]], n)
        if len(sat) != j + 1:
            raise DomainError("witnesses are not independent")  # unreachable
        # coordinates of the already-chosen rows inside the saturation
        u_rows = []
        sat_lat = IntLattice(tuple(tuple(r) for r in sat))
        for t in chosen:
            coords = sat_lat.coefficients_of(t)
            if coords is None:
                raise DomainError("chosen vector escaped the filtration")  # unreachable
            u_rows.append(list(coords))
        comp = _complete_unimodular(u_rows, j + 1)
        u_vec = [sum(comp[i] * sat[i][c] for i in range(j + 1)) for c in range(n)]
        if not chosen:
            best = list(_canonical_sign(tuple(u_vec)))
        else:
            # minimize over the completion coset u + Z(chosen)
            target = coeff_norm(u_vec)
            basis_vecs = [
                [sum(row[i] * lat.basis[i][c] for i in range(n)) for c in range(n)]
                for row in chosen
            ]
            shift_vec = [sum(u_vec[i] * lat.basis[i][c] for i in range(n)) for c in range(n)]
            bound = body.ellipsoid_bound(target) * den * den
            cands = _fp_points(basis_vecs, qw, bound, budget, shift=shift_vec)
            best = None
            best_key = None
            for vec, z in cands:
                nrm = body.norm([x * scale for x in vec])
                if nrm > target:
                    continue
                t_full = [u + sum(z[i] * chosen[i][c] for i in range(len(chosen))) for c, u in enumerate(u_vec)]
                cvec = _canonical_sign(tuple(vec))
                key = (nrm, cvec)
                if best_key is None or key < best_key:
                    best_key = key
                    best = t_full if cvec == tuple(vec) else [-x for x in t_full]
            if best is None:
                best = list(_canonical_sign(tuple(u_vec)))  # the shift itself qualifies
        chosen.append(list(best))
        norms.append(coeff_norm(best))

    factor = max(Fraction(1), Fraction(n, 2))
    within = all(nrm <= factor * lam for nrm, lam in zip(norms, prof.minima))
    basis_vectors = tuple(
        tuple(sum(chosen[j][i] * lat.basis[i][c] for i in range(n)) * scale for c in range(n))
        for j in range(n)
    )
    basis_lat = IntLattice(
        tuple(tuple(sum(chosen[j][i] * lat.basis[i][c] for i in range(n)) for c in range(n)) for j in range(n)),
        den,
    )
    if basis_lat.canonical() != lat.canonical():
        raise DomainError("construction did not return a basis")  # unreachable

    expansions = []
    cmax: Optional[Fraction] = None
    for q in queries:
        coords = basis_lat.coefficients_of(q)
        if coords is None:
            raise DomainError(f"query {q!r} is not a lattice vector")
        val = max(abs(c) * lam for c, lam in zip(coords, prof.minima))
        expansions.append((coords, val))
        cmax = val if cmax is None else max(cmax, val)
    return MahlerBasisRecord(
        prof.minima,
        basis_vectors,
        tuple(norms),
        factor,
        within,
        tuple(expansions),
        cmax,
    )


# ---------------------------------------------------------------------------
# small integer nullspace with exact size certificate


@dataclass(frozen=True)
class NullspaceRecord:
    solutions: tuple[tuple[int, ...], ...]  # independent, sup-norm-minimal
    is_basis: bool
    kernel_basis: tuple[tuple[int, ...], ...]  # HNF basis of the saturated kernel
    max_norms: tuple[int, ...]
    product: int  # prod of max-norms
    minor_gcd: int  # D
    gram_det: int  # det(M M^T)
    product_bound_ok: bool  # product^2 * D^2 <= det(M M^T)
    min_vector_bound_ok: bool  # (min max-norm)^(2k) * D^2 <= det(M M^T)


def bv_small_solutions(mat: Sequence[Sequence[int]], budget: int = DEFAULT_NODE_BUDGET) -> NullspaceRecord:
    """d-d0 independent integer solutions of M w = 0 with certified small size.

    The solutions are the successive-minima witnesses of the saturated kernel
    lattice under the sup norm.  Certificates (exact integer comparisons):
    the product of the max-norms is at most sqrt(det(M M^T))/D, and the
    smallest solution is at most (sqrt(det(M M^T))/D)^(1/(d-d0)), where D is
    the gcd of the maximal minors.
    """
    rows = [list(map(int, r)) for r in mat]
    d0 = len(rows)
    if d0 == 0:
        raise DomainError("empty matrix")
    d = len(rows[0])
    if any(len(r) != d for r in rows):
        raise DomainError("ragged matrix")
    if d0 >= d:
        raise DomainError(f"need more columns than rows, got {d0} x {d}")
    if rational_rank(rows) != d0:
        raise DomainError("matrix must have full row rank")
    if d > MAX_ENUM_DIM:
        raise UnsupportedSize(f"ambient dimension {d} exceeds the enumeration bound {MAX_ENUM_DIM}")

    kernel = integer_kernel(rows)
    k = len(kernel)
    cube = WeightedBox(tuple(Fraction(1) for _ in range(d)))
    minima, wits = _minima_engine(kernel, 1, cube, budget)

    for w in wits:
        if any(sum(rows[i][c] * w[c] for c in range(d)) != 0 for i in range(d0)):
            raise DomainError("witness does not solve the system")  # unreachable

    gram = [[sum(a * b for a, b in zip(ri, rj)) for rj in rows] for ri in rows]
    gram_det = det_int(gram)
    minor_gcd = 0
    for cols in itertools.combinations(range(d), d0):
        sub = [[rows[i][c] for c in cols] for i in range(d0)]
        minor_gcd = math.gcd(minor_gcd, abs(det_int(sub)))
    if minor_gcd == 0:
        raise DomainError("matrix must have full row rank")  # unreachable after rank check

    kernel_gram = [[sum(a * b for a, b in zip(ri, rj)) for rj in kernel] for ri in kernel]
    if det_int(kernel_gram) * minor_gcd**2 != gram_det:
        raise DomainError("kernel covolume identity failed")  # unreachable

    max_norms = tuple(max(abs(x) for x in w) for w in wits)
    product = 1
    for v in max_norms:
        product *= v
    product_ok = product**2 * minor_gcd**2 <= gram_det
    min_ok = min(max_norms) ** (2 * k) * minor_gcd**2 <= gram_det

    coords = [IntLattice(tuple(tuple(r) for r in kernel)).coefficients_of(w) for w in wits]
    if any(c is None for c in coords):
        raise DomainError("witness left the kernel lattice")  # unreachable
    is_basis = abs(det_int([list(c) for c in coords])) == 1

    hnf_kernel, rank = hnf_rows(kernel)
    return NullspaceRecord(
        tuple(wits),
        is_basis,
        tuple(tuple(r) for r in hnf_kernel[:rank]),
        max_norms,
        product,
        minor_gcd,
        gram_det,
        product_ok,
        min_ok,
    )


# ---------------------------------------------------------------------------
# Monte Carlo measure of small fractional parts


@dataclass(frozen=True)
class MeasureRecord:
    estimate: float
    hits: int
    samples: int
    seed: int
    target: Fraction  # prod of the epsilons
    sigma: float  # binomial stddev at the target probability
    band3: float  # 3 sigma


def fractional_measure(
    mat: Sequence[Sequence[int]],
    eps: Sequence[RatLike],
    samples: int = 100_000,
    seed: int = 0,
) -> MeasureRecord:
    """Monte Carlo estimate of mu{t in [0,1)^d : {sum_i m_ij t_i} <= eps_j for all j}.

    The form for column j is sum_i mat[i][j] t_i.  Deterministic given the
    seed; the record carries the binomial band so callers can make the
    3-sigma comparison against prod(eps) without re-deriving it.
    """
    d = len(mat)
    if d == 0 or any(len(r) != d for r in mat):
        raise DomainError("matrix must be square")
    if det_int(mat) == 0:
        raise DomainError("matrix must be nonsingular")
    epsf = [to_fraction(e) for e in eps]
    if len(epsf) != d:
        raise DomainError(f"need {d} epsilons, got {len(epsf)}")
    if any(not (0 < e <= Fraction(1, 2)) for e in epsf):
        raise DomainError("each epsilon must lie in (0, 1/2]")
    if samples < 1:
        raise DomainError("need at least one sample")
    cols = [[float(mat[i][j]) for i in range(d)] for j in range(d)]
    eps_float = [float(e) for e in epsf]
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        t = [rng.random() for _ in range(d)]
        ok = True
        for j in range(d):
            col = cols[j]
            v = 0.0
            for i in range(d):
                v += col[i] * t[i]
            if v - math.floor(v) > eps_float[j]:
                ok = False
                break
        if ok:
            hits += 1
    target = Fraction(1)
    for e in epsf:
        target *= e
    p = float(target)
    sigma = math.sqrt(p * (1.0 - p) / samples)
    return MeasureRecord(hits / samples, hits, samples, seed, target, sigma, 3.0 * sigma)
