"""Top-level acceptance checks for the whole toolkit.

Each test covers one numbered criterion and prints exactly one PASS/FAIL
line (straight to the terminal, bypassing capture) with the headline
numbers, then asserts.  Everything random is seeded; every expected value
was recomputed by the brute-force oracles in oracles.py.
"""
from __future__ import annotations

import functools
import math
import random
import time
from fractions import Fraction

import oracles
from energia.charsum import CharTable, complete_sum_poly, xi_threshold
from energia.energy import energy_cross, energy_plus, energy_T, energy_times, sumset_size
from energia.eqcount import count_congruence, count_eq, in_regime, regime_constant
from energia.lattice import (
    IntLattice,
    WeightedBox,
    bv_small_solutions,
    dual_lattice,
    fractional_measure,
    minkowski_check,
    transference_check,
)
from energia.ring import DomainError, Interval, PolyMod, image_set, is_probable_prime, primes_up_to
from energia.sweep import SweepConfig, run_sweep
from energia.vinogradov import count_I, count_J


def _report(capfd, num: int, label: str, ok: bool, detail: str = "") -> None:
    tail = f" [{detail}]" if detail else ""
    with capfd.disabled():
        print(f"{'PASS' if ok else 'FAIL'} criterion {num:02d} {label}{tail}", flush=True)


def _random_poly_coeffs(rng: random.Random, d: int, m: int) -> tuple[int, ...]:
    coeffs = [rng.randrange(m) for _ in range(d)]
    lead = rng.randrange(1, m)
    while lead % m == 0:  # pragma: no cover - randrange(1, m) already avoids 0
        lead = rng.randrange(1, m)
    return tuple(coeffs + [lead])


def _prime_at_least(n: int) -> int:
    q = max(n, 2)
    if q % 2 == 0:
        q += 1
    while not is_probable_prime(q):
        q += 2
    return q


# --- 01: exact multiset/set energies against quadruple-loop oracles ---------


def test_criterion_01_energy_oracle_equivalence(capfd):
    t0 = time.perf_counter()
    rng = random.Random("acceptance-01")
    mismatches = []
    n_instances = 200
    for i in range(n_instances):
        m = rng.randint(2, 50)
        d = rng.randint(1, 3)
        H = rng.randint(1, min(12, m))
        coeffs = _random_poly_coeffs(rng, d, m)
        f = PolyMod(coeffs, m)
        iv = Interval(H)
        img = sorted(image_set(f, iv))
        g = PolyMod(_random_poly_coeffs(rng, rng.randint(1, 2), m), m)
        img_b = sorted(image_set(g, Interval(rng.randint(1, min(12, m)))))

        checks = [
            ("T", energy_T(f, iv), oracles.energy_T_quadruple(coeffs, m, H)),
            ("plus", energy_plus(f, iv), oracles.set_energy_plus_quadruple(img, m)),
            ("times", energy_times(f, iv), oracles.set_energy_times_quadruple(img, m)),
            ("cross", energy_cross(img, img_b, m), oracles.energy_cross_quadruple(img, img_b, m)),
        ]
        for name, got, want in checks:
            if got != want:
                mismatches.append((i, name, got, want, coeffs, m, H))
    dt = time.perf_counter() - t0
    ok = not mismatches and dt < 10.0
    _report(capfd, 1, "energy oracle equivalence", ok,
            f"{n_instances} instances, {len(mismatches)} mismatches, {dt:.1f}s")
    assert not mismatches, mismatches[:3]
    assert dt < 10.0, f"took {dt:.1f}s"


# --- 02: the worked quadratic instance --------------------------------------


def test_criterion_02_worked_instance(capfd):
    f = PolyMod((0, 0, 1), 7)
    iv = Interval(3)
    t_val = energy_T(f, iv)
    ss = sumset_size(f, iv)
    img = image_set(f, iv)
    ok = t_val == 15 and ss == 6 and img == {1, 2, 4}
    _report(capfd, 2, "worked instance x^2 mod 7, H=3", ok,
            f"T={t_val}, sumset={ss}, image={sorted(img)}")
    assert t_val == 15
    assert ss == 6
    assert img == {1, 2, 4}


# --- 03: prime-modulus sandwich E+ <= T <= d^4 E+ ----------------------------


def test_criterion_03_prime_sandwich(capfd):
    rng = random.Random("acceptance-03")
    primes = [p for p in primes_up_to(200) if p >= 3]
    failures = []
    n_instances = 100
    for i in range(n_instances):
        p = rng.choice(primes)
        d = rng.choice((2, 3))
        H = rng.randint(1, p)
        f = PolyMod(_random_poly_coeffs(rng, d, p), p)
        iv = Interval(H)
        t_val = energy_T(f, iv)
        ep = energy_plus(f, iv)
        if not (ep <= t_val <= d**4 * ep):
            failures.append((i, p, d, H, ep, t_val))
    ok = not failures
    _report(capfd, 3, "prime-modulus energy sandwich", ok,
            f"{n_instances} instances, {len(failures)} violations")
    assert not failures, failures[:3]


# --- 04: power-sum system counts --------------------------------------------


def test_criterion_04_vinogradov_counts(capfd):
    mismatches = []
    for d in (1, 2, 3):
        for s in (1, 2, 3):
            for H in range(1, 9):
                elements = tuple(range(1, H + 1))
                got = count_J(d, s, elements)
                want = oracles.count_J_recursive(d, s, elements)
                if got != want:
                    mismatches.append(("J", d, s, H, got, want))
                hom = count_I(d, s, H, (0,) * d)
                if hom != got:
                    mismatches.append(("I0", d, s, H, hom, got))
    frozen_ok = count_J(2, 2, (1, 2)) == 6 and count_J(2, 2, (1, 2, 3, 4)) == 28
    ok = not mismatches and frozen_ok
    _report(capfd, 4, "power-sum counts vs 2s-fold oracle", ok,
            f"grid d<=3, s<=3, H<=8; {len(mismatches)} mismatches")
    assert not mismatches, mismatches[:3]
    assert frozen_ok


# --- 05/06: geometry of numbers on one shared pool of lattices --------------


@functools.lru_cache(maxsize=1)
def _shared_lattices() -> tuple[tuple[IntLattice, WeightedBox], ...]:
    rng = random.Random("acceptance-lattices")
    halfwidths = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3),
                  Fraction(1), Fraction(3, 2), Fraction(2))
    pool = []
    for n in (2, 3, 4):
        for _ in range(50):
            mat = [[int(i == j) for j in range(n)] for i in range(n)]
            for i in range(n):
                mat[i][i] = rng.randrange(1, 4)
            for _ in range(4):
                i, j = rng.sample(range(n), 2)
                c = rng.choice((-2, -1, 1, 2))
                mat[i] = [a + c * b for a, b in zip(mat[i], mat[j])]
            lat = IntLattice(tuple(tuple(r) for r in mat))
            body = WeightedBox(tuple(rng.choice(halfwidths) for _ in range(n)))
            pool.append((lat, body))
    return tuple(pool)


def test_criterion_05_minkowski_sandwich(capfd):
    t0 = time.perf_counter()
    failures = []
    for lat, body in _shared_lattices():
        rec = minkowski_check(lat, body)
        # recheck the sandwich ourselves, exactly
        if not (rec.lower <= rec.ratio <= rec.upper) or not rec.ok:
            failures.append((lat.basis, body.half_widths, rec.ratio))
    dt = time.perf_counter() - t0
    ok = not failures and dt < 30.0
    _report(capfd, 5, "second-theorem sandwich on 150 lattices", ok,
            f"{len(failures)} violations, {dt:.1f}s")
    assert not failures, failures[:2]
    assert dt < 30.0, f"took {dt:.1f}s"


def test_criterion_06_duality_and_transference(capfd):
    failures = []
    worst = Fraction(0)
    for lat, body in _shared_lattices():
        canon = lat.canonical()
        if dual_lattice(dual_lattice(canon)) != canon:
            failures.append(("involution", lat.basis))
            continue
        rec = transference_check(lat, body)
        if not rec.ok or any(p < 1 for p in rec.products):
            failures.append(("transference", lat.basis, rec.products))
        worst = max(worst, rec.max_product)
    ok = not failures
    _report(capfd, 6, "dual involution and transference on the same lattices", ok,
            f"{len(failures)} violations, max lambda_j*lambda*_(n-j+1) = {float(worst):.3f}")
    assert not failures, failures[:2]


# --- 07: certified small nullspace vectors ----------------------------------


def test_criterion_07_small_nullspace_certificates(capfd):
    rng = random.Random("acceptance-07")
    failures = []
    n_instances = 100
    produced = 0
    while produced < n_instances:
        d0 = rng.randint(1, 3)
        d = rng.randint(d0 + 1, 6)
        mat = [[rng.randint(-50, 50) for _ in range(d)] for _ in range(d0)]
        try:
            rec = bv_small_solutions(mat)
        except DomainError:
            continue  # rank-deficient draw; try again
        produced += 1
        for w in rec.solutions:
            if any(sum(mi * wi for mi, wi in zip(row, w)) != 0 for row in mat):
                failures.append(("kernel", mat, w))
        if rec.product**2 * rec.minor_gcd**2 > rec.gram_det:
            failures.append(("product", mat))
        if not (rec.product_bound_ok and rec.min_vector_bound_ok):
            failures.append(("flags", mat))
        if len(rec.solutions) != d - d0:
            failures.append(("count", mat, len(rec.solutions)))
    ok = not failures
    _report(capfd, 7, "nullspace vectors with exact size certificates", ok,
            f"{n_instances} matrices, {len(failures)} violations")
    assert not failures, failures[:2]


# --- 08: equation and congruence counts across methods ----------------------


def test_criterion_08_cross_method_equality(capfd):
    rng = random.Random("acceptance-08")
    failures = []

    n_eq = 500
    for i in range(n_eq):
        d = rng.randint(2, 4)
        coeffs = [rng.randint(-50, 50) for _ in range(d)] + [rng.choice((-3, -2, -1, 1, 2, 3))]
        H = rng.randint(1, 200)
        if rng.random() < 0.6:
            n0, m0 = rng.randint(1, H), rng.randint(1, H)
            target = oracles.poly_int(coeffs, n0) - oracles.poly_int(coeffs, m0)
        else:
            target = rng.randint(-200, 200)
        got, got_sols = count_eq(coeffs, target, H, collect=True)
        want, want_sols = oracles.count_eq_pairs(coeffs, target, H)
        if got != want or set(got_sols) != set(want_sols):
            failures.append(("eq", i, coeffs, target, H, got, want))

    c2 = regime_constant(2)
    n_cong = 0
    for i in range(88):
        H = (2, 3, 4)[i % 3]
        base = math.ceil((H / float(c2)) ** 3) + 1
        m = _prime_at_least(base + rng.randrange(50_000))
        assert in_regime(2, m, H)
        f = PolyMod((rng.randrange(m), rng.randrange(m), 1), m)
        if rng.random() < 0.7:
            shift = 0
            while shift % m == 0:
                shift = (f(rng.randint(1, H)) - f(rng.randint(1, H)) + rng.choice((0, 1))) % m
        else:
            shift = rng.randint(1, m - 1)
        res = count_congruence(f, shift, H, certify=True)
        want, _ = oracles.count_congruence_pairs(f.coeffs, m, shift, H)
        n_cong += 1
        if res.count != want or res.method != "pipeline":
            failures.append(("cong2", i, m, H, shift, res.count, want, res.method))

    c3 = regime_constant(3)
    for i in range(12):
        H = 2
        base = math.ceil((H / float(c3)) ** 6) + 1
        m = _prime_at_least(base + rng.randrange(1_000_000))
        assert in_regime(3, m, H)
        f = PolyMod((rng.randrange(m), rng.randrange(m), rng.randrange(m), 1), m)
        shift = (f(2) - f(1)) % m if i % 2 == 0 else rng.randint(1, m - 1)
        if shift % m == 0:
            shift = 1
        res = count_congruence(f, shift, H, certify=True)
        want, _ = oracles.count_congruence_pairs(f.coeffs, m, shift, H)
        n_cong += 1
        if res.count != want or res.method != "pipeline":
            failures.append(("cong3", i, m, H, shift, res.count, want, res.method))

    ok = not failures
    _report(capfd, 8, "divisor and congruence counts vs pair oracle", ok,
            f"{n_eq} equation + {n_cong} congruence instances, {len(failures)} mismatches")
    assert not failures, failures[:3]


# --- 09: Monte Carlo fractional measure -------------------------------------


def test_criterion_09_fractional_measure(capfd):
    eps = (Fraction(1, 4), Fraction(1, 5), Fraction(1, 2))
    ident = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    uni = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]  # det 1, measure preserving
    rec_i = fractional_measure(ident, eps, samples=100_000, seed=20260814)
    rec_u = fractional_measure(uni, eps, samples=100_000, seed=20260814)
    target = float(rec_i.target)
    dev_i = abs(rec_i.estimate - target)
    dev_u = abs(rec_u.estimate - target)
    ok = (rec_i.target == Fraction(1, 40)
          and dev_i <= rec_i.band3 and dev_u <= rec_u.band3)
    _report(capfd, 9, "fractional measure within 3 sigma at 1e5 samples", ok,
            f"target={target:.5f}, identity={rec_i.estimate:.5f}, "
            f"unimodular={rec_u.estimate:.5f}, band={rec_i.band3:.5f}")
    assert rec_i.target == Fraction(1, 40)
    assert dev_i <= rec_i.band3, (rec_i.estimate, target, rec_i.band3)
    assert dev_u <= rec_u.band3, (rec_u.estimate, target, rec_u.band3)


# --- 10: multiplicative character machinery ---------------------------------


def test_criterion_10_character_machinery(capfd):
    failures = []

    primes = [p for p in primes_up_to(101) if p >= 3]
    for p in primes:
        ks = sorted({1, (p - 1) // 2, p - 2} & set(range(1, p - 1))) or [1]
        for k in ks:
            t = CharTable.build(p, k)
            for a in range(1, p):
                ea = t.exponent(a)
                for b in range(a, p):
                    if (ea + t.exponent(b)) % (p - 1) != t.exponent(a * b % p):
                        failures.append(("mult", p, k, a, b))
            total = sum(t.value(x) for x in range(1, p))
            if abs(total) > 1e-9:
                failures.append(("orth", p, k, abs(total)))

    rng = random.Random("acceptance-10")
    big_primes = [p for p in primes_up_to(2003) if p >= 11]
    checked = 0
    tries = 0
    while checked < 100 and tries < 10_000:
        tries += 1
        p = rng.choice(big_primes)
        d = rng.choice((2, 3))
        f = PolyMod(_random_poly_coeffs(rng, d, p), p)
        rec = complete_sum_poly(CharTable.build(p), f)
        if rec.admissible is not True:
            continue
        checked += 1
        if rec.magnitude > (d - 1) * math.sqrt(p) + 1e-6 or rec.within_bound is not True:
            failures.append(("weil", p, f.coeffs, rec.magnitude, rec.bound))

    ok = not failures and checked == 100
    _report(capfd, 10, "character multiplicativity, orthogonality, square-root bound", ok,
            f"{len(primes)} primes exhaustively, {checked} sum instances, "
            f"{len(failures)} violations")
    assert checked == 100
    assert not failures, failures[:3]


# --- 11: exact exponent-region thresholds ------------------------------------


def test_criterion_11_region_thresholds(capfd):
    got2 = xi_threshold(2, Fraction(1, 4))
    got3 = xi_threshold(3, Fraction(1, 4))
    ok = got2 == Fraction(3, 10) and got3 == Fraction(1, 3)
    _report(capfd, 11, "exponent-region thresholds, exact rationals", ok,
            f"d=2: {got2}, d=3: {got3}")
    assert got2 == Fraction(3, 10)
    assert got3 == Fraction(1, 3)


# --- 12: bound shape over the default sweep grid -----------------------------


def test_criterion_12_bound_shape_sweep(capfd):
    t0 = time.perf_counter()
    report = run_sweep(SweepConfig(), workers=2)
    dt = time.perf_counter() - t0

    failures = []
    for c in report.cells:
        if c.error is not None:
            failures.append(("error", c.d, c.m, c.H, c.seed, c.error))
            continue
        if not (math.isfinite(c.ratio_fourth) and c.ratio_fourth > 0):
            failures.append(("ratio_fourth", c.d, c.m, c.H))
        if not (math.isfinite(c.ratio_energy) and c.ratio_energy > 0):
            failures.append(("ratio_energy", c.d, c.m, c.H))
    slopes_all = [s.slope_all for s in report.slopes if s.slope_all is not None]
    slopes_small = [s.slope_small for s in report.slopes if s.slope_small is not None]
    for s in report.slopes:
        if s.slope_all is not None and s.slope_all > 4.05:
            failures.append(("slope_all", s.d, s.m, s.slope_all))
        if s.slope_small is not None and s.slope_small > 2.2:
            failures.append(("slope_small", s.d, s.m, s.slope_small))
    if report.max_c_fourth > 16:
        failures.append(("constant", report.max_c_fourth))

    ok = not failures and report.ok and dt < 300.0
    _report(capfd, 12, "growth exponents and bound ratios on the default grid", ok,
            f"{len(report.cells)} cells, slope<= {max(slopes_all):.2f}, "
            f"small-regime slope<= {max(slopes_small):.2f}, "
            f"C={report.max_c_fourth:.2f}, {dt:.0f}s")
    assert report.ok
    assert not failures, failures[:4]
    assert dt < 300.0, f"took {dt:.1f}s"
