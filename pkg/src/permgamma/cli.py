"""Command line front-end.

Every subcommand writes JSON Lines (one object per line, sorted keys) or
CSV. Exit codes: 0 ok, 1 a ``--check`` disagreement, 2 usage error,
3 enumeration budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from . import __version__
from .combinatorics import is_prime
from .errors import InstanceTooLarge, InvalidParameters, PermGammaError, UnknownIdentity
from .gamma import gamma_oracle, gamma_symmetric_group
from .groups import OrbitType, build_group, check_prime_degree, cycle_type, enumerate_orbit_types
from .identities import IDENTITIES, sweep_identities
from .tabloids import DEFAULT_BUDGET, PartitionPair, decompose_enumerated, decompose_formula
from .tensor import DEFAULT_M_MAX, growth

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MIN_BUDGET = 10**4

# option defaults, applied after the config file so that flags always win
DEFAULTS = {
    "m_max": DEFAULT_M_MAX,
    "budget": DEFAULT_BUDGET,
    "format": "json",
    "method": "both",
    "primes": "2,3",
    "n_min": None,
    "n_max": 10,
    "max_d": 6,
    "max_k": 8,
    "jobs": 1,
    "growth_method": "symmetric",
}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _instance_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=False, help="characteristic (prime)")
    sp.add_argument("--n", type=int, help="degree n")
    sp.add_argument("--r", type=int, help="second part of lambda = (n-r, r)")
    sp.add_argument("--lambda", dest="lam", help="partition as 'l1,l2' instead of --n/--r")


def _common_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--budget", type=int, help=f"enumeration budget (default {DEFAULT_BUDGET})")
    sp.add_argument("--format", choices=["json", "csv"], help="output format (default json)")
    sp.add_argument("--check", action="store_true", default=None, help="exit 1 on disagreement")
    sp.add_argument("--out", help="write output to FILE instead of stdout")
    sp.add_argument("--config", help="JSON file with option values; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permgamma",
        description="Gamma invariant of two-part permutation modules of symmetric groups.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gamma", help="gamma report for one instance")
    _instance_args(sp)
    sp.add_argument("--no-oracle", action="store_true", default=None, help="skip enumeration")
    _common_args(sp)

    sp = sub.add_parser("decompose", help="summand multiplicities of M restricted to E")
    _instance_args(sp)
    sp.add_argument("--orbit-type", help="E as j:i_j pairs, e.g. '1:2' (default: p-cycle group)")
    sp.add_argument("--method", choices=["formula", "enumerated", "both"])
    _common_args(sp)

    sp = sub.add_parser("tensor-sim", help="core dimensions of tensor powers")
    _instance_args(sp)
    sp.add_argument("--m-max", type=int, help=f"number of tensor powers (default {DEFAULT_M_MAX})")
    sp.add_argument("--growth-method", choices=["symmetric", "pairwise"])
    _common_args(sp)

    sp = sub.add_parser("verify-identities", help="evaluate binomial identities over a grid")
    sp.add_argument("--p", help="prime or comma-separated primes (default 2,3,5,7)")
    sp.add_argument("--max-d", type=int, help="largest number of parts (default 6)")
    sp.add_argument("--max-k", type=int, help="largest k (default 8)")
    sp.add_argument("--identity", action="append", help=f"restrict to: {', '.join(IDENTITIES)}")
    _common_args(sp)

    sp = sub.add_parser("oracle", help="fixed-point gamma for each orbit type")
    _instance_args(sp)
    sp.add_argument("--orbit-type", help="only this orbit type")
    _common_args(sp)

    sp = sub.add_parser("sweep", help="gamma reports over a grid of (p, n, r)")
    sp.add_argument("--primes", help="comma-separated primes (default 2,3)")
    sp.add_argument("--n-min", type=int, help="smallest n (default: p)")
    sp.add_argument("--n-max", type=int, help="largest n (default 10)")
    sp.add_argument("--jobs", type=int, help="worker processes (output order is unaffected)")
    sp.add_argument("--no-oracle", action="store_true", default=None)
    _common_args(sp)
    return parser


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"--config: {exc}") from None
        for key, value in config.items():
            key = key.replace("-", "_").lstrip("_")
            key = "lam" if key == "lambda" else key
            if not hasattr(args, key):
                raise UsageError(f"--config: unknown option {key!r}")
            if getattr(args, key) is None:
                setattr(args, key, value)
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    if hasattr(args, "budget") and args.budget < MIN_BUDGET:
        raise UsageError(f"--budget must be at least {MIN_BUDGET}")
    return args


def _partition(args: argparse.Namespace) -> PartitionPair:
    if args.lam is not None:
        if args.n is not None or args.r is not None:
            raise UsageError("--lambda cannot be combined with --n/--r")
        parts = _int_list(args.lam)
        if len(parts) != 2:
            raise UsageError(f"--lambda needs two parts, got {args.lam!r}")
        return PartitionPair.from_parts(*parts)
    if args.n is None or args.r is None:
        raise UsageError("give --n and --r, or --lambda")
    return PartitionPair(args.n, args.r)


def _prime(args: argparse.Namespace) -> int:
    if args.p is None:
        raise UsageError("--p is required")
    return int(args.p)


# -- subcommands: each yields output rows and returns a check verdict -----------

def cmd_gamma(args, rows: list) -> bool:
    pp, p = _partition(args), _prime(args)
    report = gamma_symmetric_group(pp, p, args.budget, oracle=not args.no_oracle)
    rows.append(report.to_json())
    return report.ok


def cmd_decompose(args, rows: list) -> bool:
    pp, p = _partition(args), _prime(args)
    check_prime_degree(pp.n, p)
    t = OrbitType.parse(pp.n, p, args.orbit_type) if args.orbit_type else cycle_type(pp.n, p)
    methods = ["formula", "enumerated"] if args.method == "both" else [args.method]
    if not t.is_cycle_type and "formula" in methods:
        if args.method == "formula":
            raise UsageError("the formula route only covers the p-cycle orbit type")
        methods = ["enumerated"]
    decs = {}
    for method in methods:
        if method == "formula":
            dec = decompose_formula(pp, p)
            if len(dec.multiplicities) > args.budget:
                raise InstanceTooLarge("signature listing", len(dec.multiplicities), args.budget)
        else:
            dec = decompose_enumerated(pp, build_group(t), args.budget)
        decs[method] = dec
        for row in dec.rows():
            rows.append(
                {
                    "method": method,
                    "n": pp.n,
                    "lambda": [pp.lam1, pp.lam2],
                    "p": p,
                    "orbit_type": t.label(),
                    **row,
                }
            )
    ok = all(d.total_dimension() == pp.num_tabloids() for d in decs.values())
    if len(decs) == 2:
        ok = ok and decs["formula"].as_dict() == decs["enumerated"].as_dict()
    return ok


def cmd_tensor_sim(args, rows: list) -> bool:
    from .gamma import gamma_closed

    pp, p = _partition(args), _prime(args)
    target = gamma_closed(pp, p)
    est = growth(pp, p, args.m_max, target=target, method=args.growth_method)
    rows.extend(est.rows())
    if not args.check:
        return True
    other = "pairwise" if args.growth_method == "symmetric" else "symmetric"
    return growth(pp, p, args.m_max, method=other).c_values == est.c_values


def cmd_verify_identities(args, rows: list) -> bool:
    primes = _int_list(args.p) if args.p is not None else [2, 3, 5, 7]
    names = args.identity
    if names:
        for name in names:
            if name not in IDENTITIES:
                raise UnknownIdentity(name)
    ok = True
    for result in sweep_identities(primes, args.max_d, args.max_k, names):
        rows.append(result.to_json())
        ok = ok and result.equal
    return ok


def cmd_oracle(args, rows: list) -> bool:
    from .gamma import gamma_closed

    pp, p = _partition(args), _prime(args)
    check_prime_degree(pp.n, p)
    if args.orbit_type:
        types = [OrbitType.parse(pp.n, p, args.orbit_type)]
    else:
        types = enumerate_orbit_types(pp.n, p)
    values = {}
    for t in types:
        value, line = gamma_oracle(pp, t, args.budget)
        values[t] = value
        rows.append(
            {
                "n": pp.n,
                "lambda": [pp.lam1, pp.lam2],
                "p": p,
                "orbit_type": t.to_json(),
                "label": t.label(),
                "rank": t.rank,
                "gamma_E": str(value),
                "witness_line": list(line),
            }
        )
    top = cycle_type(pp.n, p)
    if top not in values:
        return True
    return values[top] == gamma_closed(pp, p) and all(v <= values[top] for v in values.values())


def _sweep_one(task: tuple[int, int, int, int, bool]) -> tuple[dict, bool]:
    p, n, r, budget, oracle = task
    pp = PartitionPair(n, r)
    report = gamma_symmetric_group(pp, p, budget, oracle=oracle)
    ok = report.ok
    row = report.to_json()
    if pp.num_tabloids() <= budget:
        agree = (
            decompose_formula(pp, p).as_dict()
            == decompose_enumerated(pp, build_group(cycle_type(n, p)), budget).as_dict()
        )
        row["decomposition_agree"] = agree
        ok = ok and agree
    return row, ok


def cmd_sweep(args, rows: list) -> bool:
    primes = _int_list(args.primes)
    tasks = []
    for p in primes:
        lo = p if args.n_min is None else max(p, args.n_min)
        for n in range(lo, args.n_max + 1):
            for r in range(n // 2 + 1):
                tasks.append((p, n, r, args.budget, not args.no_oracle))
    for p in primes:
        if not is_prime(p):
            raise UsageError(f"--primes: {p} is not prime")
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, tasks))
    else:
        results = [_sweep_one(t) for t in tasks]
    ok = True
    for row, good in results:
        rows.append(row)
        ok = ok and good
    return ok


COMMANDS = {
    "gamma": cmd_gamma,
    "decompose": cmd_decompose,
    "tensor-sim": cmd_tensor_sim,
    "verify-identities": cmd_verify_identities,
    "oracle": cmd_oracle,
    "sweep": cmd_sweep,
}


# -- output --------------------------------------------------------------------

def _flatten(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render(rows: Iterable[dict], fmt: str) -> Iterator[str]:
    rows = list(rows)
    if fmt == "json":
        for row in rows:
            yield json.dumps(row, sort_keys=True) + "\n"
        return
    fields: list[str] = []
    for row in rows:
        for key in sorted(row):
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _flatten(row.get(k)) for k in fields})
    yield buf.getvalue()


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rows: list[dict] = []
    try:
        args = _resolve(args)
        ok = COMMANDS[args.command](args, rows)
    except (UsageError, InvalidParameters, UnknownIdentity) as exc:
        print(f"permgamma {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except InstanceTooLarge as exc:
        print(f"permgamma {args.command}: error: {exc}", file=stderr)
        return EXIT_BUDGET
    except PermGammaError as exc:
        print(f"permgamma {args.command}: internal error: {exc}", file=stderr)
        return EXIT_CHECK
    text = "".join(render(rows, args.format))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.check and not ok:
        print(f"permgamma {args.command}: check failed", file=stderr)
        return EXIT_CHECK
    if args.command == "verify-identities" and not ok:
        return EXIT_CHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run())
