"""Command line front end.

Subcommands mirror the library: energy, vinogradov, lattice, eqcount,
charsum, verify.  Output is JSON on stdout (CSV for the sweep on request);
exact rationals are rendered as "p/q" strings and complex numbers as
{"re": .., "im": ..} objects.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds, charsum, eqcount, energy, lattice, ring, sweep, vinogradov


def json_ready(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: json_ready(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(v) for v in obj]
    return obj


def _emit(payload) -> None:
    json.dump(json_ready(payload), sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fractions(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(part.strip()) for part in text.split(","))


def _body_from_args(args) -> lattice.Body:
    if getattr(args, "box", None):
        return lattice.WeightedBox(_fractions(args.box))
    if getattr(args, "cross", None):
        return lattice.DualBody(_fractions(args.cross))
    raise ring.DomainError("pass --box or --cross to choose the norm body")


def _lattice_from_args(args) -> lattice.IntLattice:
    return lattice.lattice_from_string(args.basis, args.den)


def _matrix(text: str) -> list[list[int]]:
    return [[int(x.strip()) for x in row.split(",")] for row in text.split(";")]


# ---------------------------------------------------------------------------
# handlers


def _cmd_energy(args) -> int:
    f = ring.poly_from_string(args.poly, args.modulus)
    iv = ring.Interval(args.H)
    if args.what == "report":
        _emit(energy.energy_report(f, iv))
    elif args.what == "T":
        _emit({"T": energy.energy_T(f, iv)})
    elif args.what == "plus":
        _emit({"energy_plus": energy.energy_plus(f, iv)})
    elif args.what == "times":
        _emit({"energy_times": energy.energy_times(f, iv)})
    else:
        _emit({"sumset": energy.sumset_size(f, iv)})
    return 0


def _cmd_vinogradov(args) -> int:
    if args.slope:
        hs = ring.ints_from_string(args.slope)
        rec = vinogradov.check_J_bound(args.d, H_values=hs, budget=args.budget)
        _emit(rec)
        return 0
    if args.s is None:
        raise ring.DomainError("--s is required unless --slope is used")
    if args.shifts:
        if args.H is None:
            raise ring.DomainError("--shifts needs --H")
        shifts = ring.ints_from_string(args.shifts)
        n = vinogradov.count_I(args.d, args.s, args.H, shifts, budget=args.budget)
        _emit(vinogradov.SystemCount("I", args.d, args.s, n, H=args.H))
        return 0
    if args.poly:
        if args.modulus is None or args.H is None:
            raise ring.DomainError("--poly needs --modulus and --H")
        f = ring.poly_from_string(args.poly, args.modulus)
        n = vinogradov.count_Ts(f, ring.Interval(args.H), args.s, budget=args.budget)
        _emit(vinogradov.SystemCount("Ts", args.d, args.s, n, H=args.H))
        return 0
    if args.set:
        elements = ring.ints_from_string(args.set)
    elif args.H is not None:
        elements = tuple(range(1, args.H + 1))
    else:
        raise ring.DomainError("pass --H or --set")
    n = vinogradov.count_J(args.d, args.s, elements, budget=args.budget)
    _emit(vinogradov.SystemCount("J", args.d, args.s, n, set_size=len(set(elements))))
    return 0


def _cmd_lattice(args) -> int:
    if args.action == "bv":
        _emit(lattice.bv_small_solutions(_matrix(args.matrix)))
        return 0
    if args.action == "measure":
        _emit(lattice.fractional_measure(
            _matrix(args.matrix), _fractions(args.eps), samples=args.samples, seed=args.seed,
        ))
        return 0
    lat = _lattice_from_args(args)
    if args.action == "dual":
        dual = lattice.dual_lattice(lat)
        _emit({"basis": [list(r) for r in dual.basis], "den": dual.den})
        return 0
    body = _body_from_args(args)
    if args.action == "minima":
        _emit(lattice.successive_minima(lat, body))
    elif args.action == "minkowski":
        _emit(lattice.minkowski_check(lat, body))
    elif args.action == "count":
        _emit(lattice.point_count_record(lat, body))
    elif args.action == "transfer":
        _emit(lattice.transference_check(lat, body))
    elif args.action == "mahler":
        queries = [_fractions(q) for q in args.query or []]
        _emit(lattice.mahler_basis(lat, body, queries))
    else:
        raise ring.DomainError(f"unknown lattice action {args.action!r}")
    return 0


def _cmd_eqcount(args) -> int:
    if args.action == "eq":
        count, sols = eqcount.count_eq(ring.ints_from_string(args.coeffs), args.target, args.H, collect=True)
        _emit({"count": count, "solutions": [list(s) for s in sols]})
    elif args.action == "sym":
        _emit(eqcount.count_symmetric_eq(ring.ints_from_string(args.coeffs), args.H))
    elif args.action == "constant":
        _emit({"d": args.d, "constant": eqcount.regime_constant(args.d, args.max_den)})
    elif args.action == "cong":
        f = ring.poly_from_string(args.poly, args.modulus)
        _emit(eqcount.count_congruence(f, args.shift, args.H, certify=not args.no_certify))
    else:
        raise ring.DomainError(f"unknown eqcount action {args.action!r}")
    return 0


def _cmd_charsum(args) -> int:
    if args.action == "region":
        params = charsum.RegimeParams(Fraction(args.zeta), Fraction(args.xi), args.d, args.r or 1)
        _emit(charsum.admissible_exponents(params))
        return 0
    if args.action == "bound":
        _emit(charsum.bilinear_energy_bound(args.S, args.H, args.p, args.E, args.r))
        return 0
    table = charsum.CharTable.build(args.p, args.k)
    if args.action == "weil":
        _emit(charsum.complete_sum_poly(table, ring.poly_from_string(args.coeffs, args.p)))
    elif args.action == "bilinear":
        if args.set:
            residues = ring.ints_from_string(args.set)
        elif args.S:
            residues = tuple(range(1, args.S + 1))
        else:
            raise ring.DomainError("pass --set or --S for the residue side")
        inst = charsum.BilinearInstance.uniform(residues, args.H)
        _emit(charsum.bilinear_W(table, inst))
    elif args.action == "primes":
        f = ring.poly_from_string(args.poly, args.p)
        _emit(charsum.prime_bilinear_sum(table, f, args.Q, args.R))
    else:
        raise ring.DomainError(f"unknown charsum action {args.action!r}")
    return 0


def _cmd_verify(args) -> int:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = sweep.parse_config(fh.read())
    else:
        cfg = sweep.SweepConfig()
    if args.seed is not None:
        # one knob feeds every cell RNG
        cfg = dataclasses.replace(cfg, master=str(args.seed))
    report = sweep.run_sweep(cfg, workers=args.workers)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        if args.emit == "csv":
            sweep.write_csv(report, out)
        else:
            json.dump(json_ready(report), out, indent=2)
            out.write("\n")
    finally:
        if args.out:
            out.close()
    summary = {
        "cells": len(report.cells),
        "hard_failures": report.hard_failures,
        "max_c_fourth": report.max_c_fourth,
        "ok": report.ok,
    }
    print(json.dumps(summary), file=sys.stderr)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# the parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="energia",
        description="Exact additive-energy computations for polynomial images over residue rings.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("energy", help="interval energies, rep functions, sumsets")
    pe.add_argument("--modulus", type=int, required=True)
    pe.add_argument("--poly", required=True, help="coefficients a_0,a_1,..., e.g. '0,0,1' for X^2")
    pe.add_argument("--H", type=int, required=True)
    pe.add_argument("--what", choices=["report", "T", "plus", "times", "sumset"], default="report")
    pe.set_defaults(func=_cmd_energy)

    pv = sub.add_parser("vinogradov", help="power-sum system counts")
    pv.add_argument("--d", type=int, required=True)
    pv.add_argument("--s", type=int)
    pv.add_argument("--H", type=int)
    pv.add_argument("--set", help="explicit elements, comma separated")
    pv.add_argument("--shifts", help="inhomogeneous shift vector, comma separated")
    pv.add_argument("--poly", help="with --modulus: s-fold energy of the reduced image")
    pv.add_argument("--modulus", type=int)
    pv.add_argument("--slope", help="H list for the critical-exponent ratio record")
    pv.add_argument("--budget", type=int, default=vinogradov.DEFAULT_BUDGET)
    pv.set_defaults(func=_cmd_vinogradov)

    pl = sub.add_parser("lattice", help="exact geometry of numbers")
    pl.add_argument("action", choices=["minima", "minkowski", "dual", "mahler", "count", "transfer", "bv", "measure"])
    pl.add_argument("--basis", help="rows '1,1;0,5'")
    pl.add_argument("--den", type=int, default=1)
    pl.add_argument("--box", help="half-widths, e.g. '1,1/2'")
    pl.add_argument("--cross", help="cross-polytope coefficients")
    pl.add_argument("--matrix", help="for bv/measure: rows '1,2;3,4'")
    pl.add_argument("--eps", help="for measure: bounds '1/4,1/4'")
    pl.add_argument("--samples", type=int, default=100_000)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--query", action="append", help="mahler: expand this lattice vector")
    pl.set_defaults(func=_cmd_lattice)

    pq = sub.add_parser("eqcount", help="divisor-method equation and congruence counts")
    pq.add_argument("action", choices=["eq", "sym", "cong", "constant"])
    pq.add_argument("--coeffs", help="integer coefficients a_0,a_1,...")
    pq.add_argument("--target", type=int, default=0)
    pq.add_argument("--H", type=int)
    pq.add_argument("--d", type=int)
    pq.add_argument("--max-den", type=int, default=10**6)
    pq.add_argument("--modulus", type=int)
    pq.add_argument("--poly")
    pq.add_argument("--shift", type=int, default=0)
    pq.add_argument("--no-certify", action="store_true")
    pq.set_defaults(func=_cmd_eqcount)

    pc = sub.add_parser("charsum", help="multiplicative character sums mod p")
    pc.add_argument("action", choices=["weil", "bilinear", "primes", "bound", "region"])
    pc.add_argument("--p", type=int)
    pc.add_argument("--k", type=int, help="character exponent index; default quadratic")
    pc.add_argument("--coeffs")
    pc.add_argument("--poly", help="for primes: the polynomial applied to the q side")
    pc.add_argument("--set", help="bilinear: explicit residue set, comma separated")
    pc.add_argument("--S", type=int)
    pc.add_argument("--H", type=int)
    pc.add_argument("--Q", type=int)
    pc.add_argument("--R", type=int)
    pc.add_argument("--E", type=int)
    pc.add_argument("--r", type=int)
    pc.add_argument("--d", type=int)
    pc.add_argument("--zeta")
    pc.add_argument("--xi")
    pc.set_defaults(func=_cmd_charsum)

    pw = sub.add_parser("verify", help="run the deterministic identity sweep")
    pw.add_argument("--config", help="key = values file; defaults to the built-in grid")
    pw.add_argument("--emit", choices=["json", "csv"], default="json")
    pw.add_argument("--out", help="write the report here instead of stdout")
    pw.add_argument("--seed", type=int, help="replace the master seed string with this value")
    pw.add_argument("--workers", type=int, default=1, help="cells run concurrently when > 1")
    pw.set_defaults(func=_cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ring.DomainError, ring.BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
