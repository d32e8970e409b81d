"""Command-line front-end.

Subcommands mirror the library surface: jones, degree, tail, stable-coeffs,
kostant, plethysm, summation-set, missing-points, minimizer, selftest.
Machine-readable output embeds the run configuration, the library version and
the global exponent denominator, and is byte-stable for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from . import __version__
from .jones import (TorusKnot, colored_jones, minimizer_bruteforce,
                    minimizer_closed_form, quadratic_forms)
from .kostant import kostant, kostant_dp
from .lie import LieError, get_root_system
from .mult import (lattice_hull, missing_points, plethysm_mult,
                   summation_set)
from .selfcheck import run_selftest
from .stability import (detect_jones_tail, stable_coefficients,
                        tail_closed_T2b, tail_closed_T4b,
                        tail_eval_stable_limit)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2
EXIT_INCONSISTENT = 3


@dataclass
class RunConfig:
    command: str
    algebra: Optional[str] = None
    knot: Optional[tuple[int, int]] = None
    ray: Optional[tuple[int, ...]] = None
    n: Optional[int] = None
    n_max: Optional[int] = None
    x_order: Optional[int] = None
    q_order: Optional[int] = None
    k_max: Optional[int] = None
    method: Optional[str] = None
    output: str = "json"
    seed: int = 0
    threads: int = 1


def _parse_pair(text: str) -> tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated integers, got {text!r}")
    return int(parts[0]), int(parts[1])


def _parse_weight(text: str, rank: int) -> tuple[int, ...]:
    parts = [int(p.strip()) for p in text.split(",")]
    if len(parts) != rank:
        raise ValueError(f"expected {rank} coordinates, got {text!r}")
    return tuple(parts)


def _emit(doc: dict, cfg: RunConfig, denom: int = 1) -> None:
    doc = {"config": {k: v for k, v in asdict(cfg).items() if v is not None},
           "version": __version__, "denom": denom, **doc}
    json.dump(doc, sys.stdout, sort_keys=True, default=str)
    sys.stdout.write("\n")


def _emit_csv(rows, header: Sequence[str]) -> None:
    sys.stdout.write(",".join(header) + "\n")
    for row in rows:
        sys.stdout.write(",".join(str(x) for x in row) + "\n")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TORUS_TAILS_THREADS", "1")))
    except ValueError:
        return 1


def cmd_jones(args) -> int:
    rs = get_root_system(args.algebra)
    knot = TorusKnot(*_parse_pair(args.knot))
    ray = _parse_weight(args.ray, rs.rank)
    cfg = RunConfig("jones", rs.name, (knot.a, knot.b), ray, n=args.n,
                    output=args.format, seed=args.seed, threads=_threads())
    lam = tuple(args.n * c for c in ray)
    res = colored_jones(rs, knot, lam)
    if args.format == "csv":
        _emit_csv(((e, res.polynomial.denom, c)
                   for e, c in res.polynomial.terms),
                  ("exponent_numerator", "denom", "coefficient"))
    else:
        _emit({"result": res.to_json_obj()}, cfg, res.polynomial.denom)
    return EXIT_OK


def cmd_degree(args) -> int:
    rs = get_root_system(args.algebra)
    knot = TorusKnot(*_parse_pair(args.knot))
    ray = _parse_weight(args.ray, rs.rank)
    cfg = RunConfig("degree", rs.name, (knot.a, knot.b), ray,
                    n_max=args.n_max, output=args.format, seed=args.seed)
    rows = []
    for n in range(0, args.n_max + 1):
        lam = tuple(n * c for c in ray)
        f_star, f_max = quadratic_forms(rs, knot, lam)
        mu = minimizer_closed_form(rs, lam, knot.a) if rs.rank == 2 \
            else minimizer_bruteforce(rs, lam, knot.a, knot.b)
        rows.append({"n": n, "minimizer": list(mu),
                     "delta_star": str(f_star(mu)),
                     "delta": str(f_max(tuple(knot.a * c for c in lam)))})
    _emit({"degrees": rows}, cfg)
    return EXIT_OK


def cmd_tail(args) -> int:
    rs = get_root_system(args.algebra)
    knot = TorusKnot(*_parse_pair(args.knot))
    ray = (1, 1) if args.ray == "rho" else _parse_weight(args.ray, rs.rank)
    cfg = RunConfig("tail", rs.name, (knot.a, knot.b), ray, n_max=args.n_max,
                    x_order=args.x_order, q_order=args.q_order,
                    method=args.method, output=args.format, seed=args.seed)
    if args.method == "closed":
        if knot.a == 2:
            tail = tail_closed_T2b(knot.b, args.x_order, args.q_order)
        elif knot.a == 4:
            tail = tail_closed_T4b(knot.b, args.x_order, args.q_order)
        else:
            print(f"no closed tail for a={knot.a}", file=sys.stderr)
            return EXIT_BAD_INPUT
    elif args.method == "stable-limit":
        tail = tail_eval_stable_limit(rs, knot, ray, args.n0, args.x_order,
                                      args.q_order, args.n_max)
    else:
        tail = detect_jones_tail(rs, knot, ray, args.n0, args.n_max,
                                 args.x_order, args.q_order)
    _emit({"tail": tail.to_json_obj()}, cfg)
    return EXIT_OK


def cmd_stable_coeffs(args) -> int:
    rs = get_root_system(args.algebra)
    knot = TorusKnot(*_parse_pair(args.knot))
    ray = (1, 1) if args.ray == "rho" else _parse_weight(args.ray, rs.rank)
    cfg = RunConfig("stable-coeffs", rs.name, (knot.a, knot.b), ray,
                    n_max=args.n_max, k_max=args.k_max, output=args.format,
                    seed=args.seed)
    fam = {n: r for n, r in
           ((n, colored_jones(rs, knot, tuple(n * c for c in ray)).shifted)
            for n in range(1, args.n_max + 1))}
    table = stable_coefficients(fam, args.k_max)
    if args.format == "csv":
        _emit_csv(((k, n, v) for (k, n), v in sorted(table.items())),
                  ("k", "n", "a_k"))
    else:
        _emit({"coefficients": [[k, n, v]
                                for (k, n), v in sorted(table.items())]}, cfg)
    return EXIT_OK


def cmd_kostant(args) -> int:
    rs = get_root_system(args.algebra)
    alpha = _parse_pair(args.alpha) if rs.rank == 2 else (int(args.alpha),)
    cfg = RunConfig("kostant", rs.name, output=args.format, seed=args.seed)
    _emit({"alpha": list(alpha), "closed": kostant(rs, alpha),
           "dp": kostant_dp(rs, alpha)}, cfg)
    return EXIT_OK


def cmd_plethysm(args) -> int:
    rs = get_root_system(args.algebra)
    lam = _parse_weight(args.lam, rs.rank)
    mu = _parse_weight(args.mu, rs.rank)
    cfg = RunConfig("plethysm", rs.name, ray=lam, output=args.format,
                    seed=args.seed)
    _emit({"lambda": list(lam), "a": args.a, "mu": list(mu),
           "multiplicity": plethysm_mult(rs, lam, args.a, mu)}, cfg)
    return EXIT_OK


def cmd_summation_set(args) -> int:
    rs = get_root_system(args.algebra)
    lam = _parse_weight(args.lam, rs.rank)
    cfg = RunConfig("summation-set", rs.name, ray=lam, output=args.format,
                    seed=args.seed)
    s = summation_set(rs, lam, args.a, keep_zero=not args.drop_zero)
    _emit({"lambda": list(lam), "a": args.a,
           "set": [[list(mu), m] for mu, m in sorted(s.items())]}, cfg)
    return EXIT_OK


def cmd_missing_points(args) -> int:
    rs = get_root_system(args.algebra)
    lam = _parse_weight(args.lam, rs.rank)
    cfg = RunConfig("missing-points", rs.name, ray=lam, output=args.format,
                    seed=args.seed)
    miss = missing_points(rs, lam, args.a)
    hull = lattice_hull(rs, lam, args.a)
    _emit({"lambda": list(lam), "a": args.a,
           "hull_size": len(hull.points()),
           "missing": [list(mu) for mu in miss]}, cfg)
    return EXIT_OK


def cmd_minimizer(args) -> int:
    rs = get_root_system(args.algebra)
    lam = _parse_weight(args.lam, rs.rank)
    cfg = RunConfig("minimizer", rs.name, ray=lam, output=args.format,
                    seed=args.seed)
    table = minimizer_closed_form(rs, lam, args.a)
    brute = minimizer_bruteforce(rs, lam, args.a)
    if table != brute:
        print(f"minimizer cross-check failed: table {table} vs brute {brute}",
              file=sys.stderr)
        return EXIT_INCONSISTENT
    _emit({"lambda": list(lam), "a": args.a, "minimizer": list(table)}, cfg)
    return EXIT_OK


def cmd_selftest(args) -> int:
    cfg = RunConfig("selftest", method=args.filter, output=args.format,
                    seed=args.seed)
    reports = run_selftest(args.filter)
    if args.format == "json":
        stripped = [{k: v for k, v in r.items() if k != "seconds"}
                    for r in reports]
        _emit({"reports": stripped,
               "ok": all(r["ok"] for r in reports)}, cfg)
    else:
        width = max(len(r["name"]) for r in reports) if reports else 10
        for r in reports:
            status = "PASS" if r["ok"] else "FAIL"
            print(f"{r['name']:<{width}}  {status}  {r['seconds']:>8.2f}s")
            if not r["ok"]:
                print(f"    {r['detail']}")
    if not reports:
        print("no checks matched the filter", file=sys.stderr)
        return EXIT_BAD_INPUT
    return EXIT_OK if all(r["ok"] for r in reports) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="torus-tails",
        description="Exact colored Jones polynomials of torus knots for "
                    "rank <= 2 simple Lie algebras, and their stable tails.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, knot=True, ray=True):
        sp.add_argument("--algebra", required=True,
                        help="A1, A2, B2 or G2 (case-insensitive)")
        if knot:
            sp.add_argument("--knot", required=True, help="a,b (0<a<b coprime)")
        if ray:
            sp.add_argument("--lambda", dest="ray", required=True,
                            help="ray coefficients c1,c2 (color is n*(c1,c2))")
        sp.add_argument("--format", choices=("json", "csv", "text"),
                        default="json")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("jones", help="one colored Jones polynomial")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(fn=cmd_jones)

    sp = sub.add_parser("degree", help="q-degrees along a ray")
    common(sp)
    sp.add_argument("--n-max", type=int, default=10)
    sp.set_defaults(fn=cmd_degree)

    sp = sub.add_parser("tail", help="tail of a colored Jones family")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--knot", required=True)
    sp.add_argument("--ray", default="rho",
                    help="'rho' or ray coefficients c1,c2")
    sp.add_argument("--method", choices=("detect", "stable-limit", "closed"),
                    default="closed")
    sp.add_argument("--x-order", type=int, default=2)
    sp.add_argument("--q-order", type=int, default=60)
    sp.add_argument("--n-max", type=int, default=30)
    sp.add_argument("--n0", type=int, default=1,
                    help="residue class representative")
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_tail)

    sp = sub.add_parser("stable-coeffs", help="a_k(n) table for a family")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--knot", required=True)
    sp.add_argument("--ray", default="rho")
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--k-max", type=int, default=10)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_stable_coeffs)

    sp = sub.add_parser("kostant", help="Kostant partition function value")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--alpha", required=True, help="root coordinates u,v")
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_kostant)

    sp = sub.add_parser("plethysm", help="one plethysm multiplicity")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--mu", required=True)
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_plethysm)

    sp = sub.add_parser("summation-set", help="S_{lambda,a} with multiplicities")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--drop-zero", action="store_true")
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_summation_set)

    sp = sub.add_parser("missing-points", help="hull points outside S")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_missing_points)

    sp = sub.add_parser("minimizer", help="closed-form vs brute-force minimizer")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_minimizer)

    sp = sub.add_parser("selftest", help="run the acceptance suite")
    sp.add_argument("--filter", default=None,
                    help="substring of a check key (e.g. 'kostant')")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, LieError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except AssertionError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
