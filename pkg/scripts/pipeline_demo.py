#!/usr/bin/env python3
"""Walk one certified congruence count end to end.

Picks the smallest prime modulus that puts the requested interval length
inside the lattice-pipeline regime for degree d, draws a seeded monic
polynomial, uses a realized shift so the solution set is nonempty, and
prints what the pipeline certified at each stage.
"""
import argparse
import math
import random
import sys

from energia.eqcount import count_congruence, in_regime, regime_constant
from energia.ring import PolyMod, is_probable_prime


def prime_at_least(n):
    q = max(n, 2) | 1
    while not is_probable_prime(q):
        q += 2
    return q


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--H", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    d, H = args.d, args.H
    c = regime_constant(d)
    s = d * (d + 1) // 2
    # smallest m with H <= c * m^(1/s), then the next prime
    m = prime_at_least(math.ceil((H / float(c)) ** s) + 1)
    while not in_regime(d, m, H):
        m = prime_at_least(m + 1)
    print(f"regime constant c_{d} = {c} ~ {float(c):.5f}")
    print(f"modulus m = {m} (prime), interval length H = {H}")

    rng = random.Random(args.seed)
    f = PolyMod(tuple(rng.randrange(m) for _ in range(d)) + (1,), m)
    shift = 0
    while shift == 0:
        shift = (f(rng.randint(1, H)) - f(rng.randint(1, H))) % m
    print(f"f coefficients (low to high): {f.coeffs}")
    print(f"shift: {shift}")

    res = count_congruence(f, shift, H, certify=True)
    print(f"\ncount = {res.count}  via {res.method}")
    cert = res.certificate
    if cert is not None:
        print(f"short congruence vector: {cert.short_vector}")
        print(f"branch: {cert.branch}, reach {cert.reach} (< m/2 = {m // 2})")
        print(f"solutions: {cert.solutions}")
        if cert.bv is not None:
            print(f"nullspace recount consistent: {cert.bv.consistent}")

    # sanity: the dumb pair count must match
    brute = sum(
        1
        for n in range(1, H + 1)
        for mm in range(1, H + 1)
        if (f(n) - f(mm) - shift) % m == 0
    )
    print(f"\npair-loop check: {brute} ({'agree' if brute == res.count else 'MISMATCH'})")
    return 0 if brute == res.count else 1


if __name__ == "__main__":
    sys.exit(main())
