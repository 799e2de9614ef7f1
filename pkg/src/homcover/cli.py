"""Command-line front end.

Machine-readable output: one record per line as ``key=value`` pairs in a
stable field order, or the same records as JSON objects with
``--format json``.  Single-value commands (rank, gamma-count, hn) print
the bare value in the default format.

Exit codes: 0 success / all checks passed, 1 a verification check failed,
2 usage or spec error, 3 a configured cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import caps
from .cover import build_cover
from .errors import (
    ClosureCapExceeded,
    EnumerationCapExceeded,
    HomcoverError,
    InvalidSpec,
    LatticeCapExceeded,
    NotAGroup,
    OrderCapExceeded,
    PreconditionViolated,
)
from .genseq import count_generating_sequences, rank
from .groups import structure_predicates
from .orbits import decompose_orbits, orbit_count
from .specs import PQSpec, build_group, format_spec, parse_spec
from . import verify as verify_mod

_CAP_ERRORS = (OrderCapExceeded, ClosureCapExceeded, EnumerationCapExceeded,
               LatticeCapExceeded)
_USAGE_ERRORS = (InvalidSpec, NotAGroup, PreconditionViolated)

SUITES = ("free-action", "abelian", "nilpotent-sylow", "hall-independence",
          "simple-cover", "pq", "lifting", "tower", "cover-invariants",
          "all")


@dataclass(frozen=True)
class Command:
    subcommand: str
    group: str | None = None
    n: int | None = None
    m: int | None = None
    k: int = 2
    suite: str | None = None
    export: str | None = None
    include_elements: bool = False
    fmt: str = "kv"
    seed: int = 0
    samples: int = 200
    threads: int = 1
    max_order: int | None = None
    max_closure: int | None = None
    max_candidates: int | None = None


def _add_common(sub, group=True, n=False, m=False):
    if group:
        sub.add_argument("--group", required=True, help="group spec string")
    if n:
        sub.add_argument("--n", type=int, required=True,
                         help="generating sequence length")
    if m:
        sub.add_argument("--m", type=int, required=True,
                         help="target sequence length")
    sub.add_argument("--format", dest="fmt", choices=("kv", "json"),
                     default="kv")
    sub.add_argument("--threads", type=int, default=1,
                     help="bound on internal parallelism")
    sub.add_argument("--max-order", type=int, default=None)
    sub.add_argument("--max-closure", type=int, default=None)
    sub.add_argument("--max-candidates", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homcover",
        description="generating sequences, orbits, and homogeneous covers "
                    "of small finite groups")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    _add_common(subs.add_parser("info", help="order, exponent, flags"))
    _add_common(subs.add_parser("rank", help="minimal generating length"))
    _add_common(subs.add_parser(
        "gamma-count", help="number of generating n-tuples"), n=True)
    _add_common(subs.add_parser(
        "hn", help="number of automorphism orbits on generating n-tuples"),
        n=True)
    _add_common(subs.add_parser(
        "orbits", help="orbit decomposition with representatives"), n=True)
    cover = subs.add_parser("cover", help="build the homogeneous cover")
    _add_common(cover, n=True)
    cover.add_argument("--export", default=None, help="write the cover here")
    cover.add_argument("--include-elements", action="store_true",
                       help="also export the full element list")
    tower = subs.add_parser("tower", help="surjection between covers")
    _add_common(tower, n=True, m=True)
    ver = subs.add_parser("verify", help="run a theorem check suite")
    _add_common(ver, n=True)
    ver.add_argument("--suite", required=True, choices=SUITES)
    ver.add_argument("--m", type=int, default=None,
                     help="target length for the tower suite")
    ver.add_argument("--k", type=int, default=2,
                     help="copies for hall-independence")
    ver.add_argument("--samples", type=int, default=200)
    ver.add_argument("--seed", type=int, default=0)
    return parser


def parse_command(argv) -> Command:
    args = build_parser().parse_args(argv)
    fields = {f: getattr(args, f) for f in Command.__dataclass_fields__
              if hasattr(args, f)}
    return Command(**fields)


def format_command(cmd: Command) -> list[str]:
    """Reconstruct an argv that parses back to the same Command."""
    argv = [cmd.subcommand]
    if cmd.group is not None:
        argv += ["--group", cmd.group]
    if cmd.n is not None:
        argv += ["--n", str(cmd.n)]
    if cmd.subcommand in ("tower", "verify") and cmd.m is not None:
        argv += ["--m", str(cmd.m)]
    if cmd.subcommand == "verify":
        argv += ["--suite", cmd.suite, "--k", str(cmd.k),
                 "--samples", str(cmd.samples), "--seed", str(cmd.seed)]
    if cmd.export is not None:
        argv += ["--export", cmd.export]
    if cmd.include_elements:
        argv.append("--include-elements")
    argv += ["--format", cmd.fmt, "--threads", str(cmd.threads)]
    for flag, value in (("--max-order", cmd.max_order),
                        ("--max-closure", cmd.max_closure),
                        ("--max-candidates", cmd.max_candidates)):
        if value is not None:
            argv += [flag, str(value)]
    return argv


# ---------------------------------------------------------------------------
# output

def _fmt_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def emit_record(record: dict, fmt: str, out):
    if fmt == "json":
        out(json.dumps(record))
    else:
        out(" ".join(f"{k}={_fmt_value(v)}" for k, v in record.items()))


def emit_scalar(value, record: dict, fmt: str, out):
    if fmt == "json":
        out(json.dumps(record))
    else:
        out(str(value))


# ---------------------------------------------------------------------------
# runner

def run_command(cmd: Command, out=None) -> int:
    out = out or (lambda line: print(line))
    if cmd.threads < 1:
        print("--threads must be >= 1", file=sys.stderr)
        return 2
    if cmd.max_closure is not None:
        os.environ["HOMCOVER_MAX_CLOSURE"] = str(cmd.max_closure)
    if cmd.max_candidates is not None:
        caps.CANDIDATE_CAP = cmd.max_candidates
    try:
        return _dispatch(cmd, out)
    except _CAP_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except _USAGE_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except HomcoverError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _group(cmd):
    spec = parse_spec(cmd.group)
    return format_spec(spec), build_group(spec, max_order=cmd.max_order)


def _dispatch(cmd: Command, out) -> int:
    if cmd.subcommand == "info":
        name, group = _group(cmd)
        flags = structure_predicates(group)
        emit_record({
            "group": name,
            "order": group.order,
            "exponent": group.exponent(),
            "abelian": flags.is_abelian,
            "nilpotent": flags.is_nilpotent,
            "solvable": flags.is_solvable,
        }, cmd.fmt, out)
        return 0

    if cmd.subcommand == "rank":
        name, group = _group(cmd)
        value = rank(group)
        emit_scalar(value, {"group": name, "rank": value}, cmd.fmt, out)
        return 0

    if cmd.subcommand == "gamma-count":
        name, group = _group(cmd)
        value = count_generating_sequences(group, cmd.n,
                                           max_candidates=cmd.max_candidates)
        emit_scalar(value, {"group": name, "n": cmd.n, "gamma": value},
                    cmd.fmt, out)
        return 0

    if cmd.subcommand == "hn":
        name, group = _group(cmd)
        value = orbit_count(group, cmd.n)
        emit_scalar(value, {"group": name, "n": cmd.n, "h": value},
                    cmd.fmt, out)
        return 0

    if cmd.subcommand == "orbits":
        name, group = _group(cmd)
        dec = decompose_orbits(group, cmd.n)
        emit_record({
            "group": name,
            "n": cmd.n,
            "h": dec.orbit_count,
            "orbit_size": dec.orbit_size,
            "gamma": dec.sequence_count,
        }, cmd.fmt, out)
        for rep in dec.representatives:
            emit_record({"rep": list(rep)}, cmd.fmt, out)
        return 0

    if cmd.subcommand == "cover":
        name, group = _group(cmd)
        result = build_cover(group, cmd.n, max_order=cmd.max_closure)
        emit_record({
            "base": name,
            "n": cmd.n,
            "h": result.orbit_count,
            "order": result.group.order,
        }, cmd.fmt, out)
        if cmd.export:
            _export_cover(result, name, cmd.export, cmd.include_elements)
        return 0

    if cmd.subcommand == "tower":
        name, group = _group(cmd)
        report = verify_mod.check_tower(group, cmd.n, cmd.m, spec=name,
                                        max_cover_order=cmd.max_closure)
        emit_record(report.as_record(), cmd.fmt, out)
        return 0 if report.passed else 1

    if cmd.subcommand == "verify":
        return _run_verify(cmd, out)

    raise AssertionError(f"unhandled subcommand {cmd.subcommand}")


def _export_cover(result, name, path, include_elements):
    lines = [f"cover base={name} n={result.n} h={result.orbit_count} "
             f"order={result.group.order}"]
    for gen in result.generator_tuples:
        lines.append(",".join(str(x) for x in gen))
    if include_elements:
        for t in result.group.tuples:
            lines.append(",".join(str(x) for x in t))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _run_verify(cmd: Command, out) -> int:
    name, group = _group(cmd)
    reports = []
    suite = cmd.suite

    def want(key):
        return suite in (key, "all")

    flags = structure_predicates(group)
    if want("free-action"):
        reports.append(verify_mod.check_free_action(group, cmd.n, name))
    if want("abelian") and (suite == "abelian" or flags.is_abelian):
        reports.append(verify_mod.check_abelian_formula(
            group, cmd.n, name, max_cover_order=cmd.max_closure))
    if want("nilpotent-sylow") and (suite == "nilpotent-sylow"
                                    or flags.is_nilpotent):
        reports.append(verify_mod.check_nilpotent_sylow(
            group, cmd.n, name, max_cover_order=cmd.max_closure))
    if want("hall-independence") and (suite == "hall-independence"
                                      or _looks_simple(group, flags)):
        reports.append(verify_mod.check_hall_independence(
            group, cmd.n, cmd.k, name, max_closure=cmd.max_closure))
    if want("simple-cover") and (suite == "simple-cover"
                                 or _looks_simple(group, flags)):
        reports.append(verify_mod.check_simple_cover_order(
            group, cmd.n, name, max_closure=cmd.max_closure))
    if want("pq"):
        spec = parse_spec(cmd.group)
        if isinstance(spec, PQSpec):
            reports.append(verify_mod.check_pq_structure(
                spec.p, spec.q, cmd.n, max_cover_order=cmd.max_closure))
        elif suite == "pq":
            raise PreconditionViolated(
                "the pq suite needs a pq(p,q) group spec")
    if want("lifting"):
        from .orbits import is_homogeneous

        if suite == "lifting" or is_homogeneous(group, cmd.n):
            reports.append(verify_mod.check_universal_lifting(
                group, cmd.n, name, samples=cmd.samples, seed=cmd.seed,
                max_cover_order=cmd.max_closure))
    if want("tower") and (suite == "tower" or cmd.m is not None):
        if cmd.m is None:
            raise PreconditionViolated("the tower suite needs --m")
        reports.append(verify_mod.check_tower(
            group, cmd.n, cmd.m, name, max_cover_order=cmd.max_closure))
    if want("cover-invariants"):
        reports.append(verify_mod.check_cover_invariants(
            group, cmd.n, name, max_cover_order=cmd.max_closure))

    for report in reports:
        emit_record(report.as_record(), cmd.fmt, out)
    return 0 if all(r.passed for r in reports) else 1


def _looks_simple(group, flags):
    from .groups import is_simple

    return not flags.is_abelian and is_simple(group)


def main(argv=None) -> int:
    code = run_command(parse_command(argv if argv is not None
                                     else sys.argv[1:]))
    sys.exit(code)


if __name__ == "__main__":
    main()
