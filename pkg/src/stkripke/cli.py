"""Command-line entry point.

Exit codes: 0 holds/pass, 1 fails/countermodel found, 2 inconclusive
(bounded search found nothing where a refutation was asked for), 3 usage,
parse, or validation error.
"""

from __future__ import annotations

import argparse
import sys

from . import properties, semantics
from .consequence import Bound, InternalError, Mode, Outcome, Query, check
from .formula import ParseError, parse, unparse
from .model import CeilingExceeded, ModelError, ModelKind, dump, load
from .suite import DEFAULT_SEED, MUTATIONS, run_suite

EXIT_HOLDS, EXIT_FAILS, EXIT_INCONCLUSIVE, EXIT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_query_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--logic", required=True, choices=[k.label for k in ModelKind])
    p.add_argument("--mode", required=True, choices=[m.value for m in Mode])
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--extra-atoms", type=int, default=0)
    p.add_argument("--rooted", action="store_true", help="search rooted frames only")
    p.add_argument("--cert-out", metavar="PATH", help="write the countermodel here instead of stdout")
    p.add_argument("payload", help="sequent 'G => D' or metainference '[ s1 ; s2 ] =>* [ s ]'")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="stkripke", description="Kripke semantics and strict-tolerant consequence checker")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a formula in a model file")
    p.add_argument("model")
    p.add_argument("formula")

    p = sub.add_parser("check", help="decide or bound-check a consequence claim")
    _add_query_args(p)
    p = sub.add_parser("countermodel", help="search for a countermodel")
    _add_query_args(p)

    p = sub.add_parser("paper-suite", help="run every fixture and property battery")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--mutation", choices=MUTATIONS)
    p.add_argument("--fixtures-only", action="store_true")

    p = sub.add_parser("random-test", help="run one randomised property battery")
    p.add_argument("--property", required=True, choices=["glivenko", "thm44", "reduction", "heredity"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--depth", type=int, default=4)
    return ap


def _query(args) -> Query:
    mode = Mode.parse(args.mode)
    payload = (semantics.parse_metainference(args.payload) if mode == Mode.META
               else semantics.parse_sequent(args.payload))
    return Query(ModelKind.parse(args.logic), mode, payload,
                 Bound(args.max_worlds, args.extra_atoms, args.rooted))


def _emit_certificate(cert, path: str | None) -> None:
    if path:
        dump(cert, path)
        print(f"certificate: {path}")
    else:
        print("certificate:")
        sys.stdout.write(cert.to_text())


def cmd_eval(args) -> int:
    m = load(args.model)
    f = parse(args.formula)
    for w, v in semantics.world_values(m, f).items():
        print(f"v_{w}({unparse(f)}) = {v}")
    print(f"true: {'yes' if semantics.is_true(m, f) else 'no'}")
    print(f"false: {'yes' if semantics.is_false(m, f) else 'no'}")
    return EXIT_HOLDS


def cmd_check(args, refute: bool) -> int:
    q = _query(args)
    v = check(q)
    print(f"{q.payload} | logic={q.logic.label} mode={q.mode.value} | {v.describe()}")
    if q.mode == Mode.ST and len(q.payload.succedent) > 1:
        rq = Query(q.logic, q.mode, semantics.reduce_succedent(q.payload), q.bound)
        rv = check(rq)
        print(f"{rq.payload} | reduced succedent | {rv.describe()}")
        if rv.holds != v.holds:
            raise InternalError("native and reduced-succedent verdicts disagree")
    if v.outcome == Outcome.FAILS:
        _emit_certificate(v.certificate, args.cert_out)
        return EXIT_FAILS
    if refute and v.outcome == Outcome.HOLDS_UP_TO_BOUND:
        return EXIT_INCONCLUSIVE
    return EXIT_HOLDS


def cmd_suite(args) -> int:
    rep = run_suite(args.seed, args.mutation, include_batteries=not args.fixtures_only)
    print(rep.text())
    return EXIT_HOLDS if rep.ok else EXIT_FAILS


def cmd_random(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    prop = args.property
    if prop == "glivenko":
        rep = properties.glivenko_test(args.seed, args.trials, Bound(args.max_worlds), args.atoms, args.depth)
    elif prop == "thm44":
        rep = properties.cross_check_st_classical(args.seed, args.trials, Bound(args.max_worlds),
                                                  args.atoms, args.depth)
    elif prop == "reduction":
        rep = properties.reduction(args.seed, args.trials, args.max_worlds, args.depth)
    else:
        rep = properties.heredity(args.seed, random_formulas=args.trials,
                                  max_depth=args.depth, max_worlds=args.max_worlds,
                                  n_atoms=min(args.atoms, 2))
    print(f"seed={args.seed}")
    print(rep.summary())
    for d in rep.discrepancies:
        print(f"  {d}")
    return EXIT_HOLDS if rep.ok else EXIT_FAILS


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command in ("check", "countermodel"):
            return cmd_check(args, refute=args.command == "countermodel")
        if args.command == "paper-suite":
            return cmd_suite(args)
        return cmd_random(args)
    except (UsageError, ParseError, ModelError, CeilingExceeded, ValueError, TypeError,
            OSError, InternalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
