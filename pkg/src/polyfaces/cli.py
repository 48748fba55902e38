"""Command-line front end.  Payloads go to stdout as JSON (or DOT), diagnostics to stderr."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import acceptance
from .charts import KINDS, chart, identify_stratum, parse_config
from .errors import InvariantError, ParseError, PolyfacesError, PreconditionError
from .functors import (
    check_species,
    fiber_poset,
    functor_map,
    pi,
    pi_double_prime,
    pi_prime,
    trunk_word,
)
from .laurent import parse_path
from .posets import face_poset, hasse_dot, order_complex
from .topology import cofinality_report, contractibility
from .trees import Fan, PlanarTree, cap_for, parse_tree
from .words import f_embed, format_halves, product_decompose, word_poset

HOMOLOGY_CAP = 4
PROJECTIONS: dict[str, tuple[str, Callable]] = {
    "pi": ("phi", pi),
    "pi-prime": ("phi_level", pi_prime),
    "pi-double-prime": ("psi_level", pi_double_prime),
}


def _emit(payload: object) -> None:
    if isinstance(payload, str) and payload.startswith(("digraph", "graph")):
        sys.stdout.write(payload + "\n")
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _resolve_cap(args: argparse.Namespace, default: int) -> int | None:
    """Explicit --max-n wins; exceeding the built-in cap earns a resource warning."""
    if args.max_n is None:
        return None
    if args.max_n > default:
        _warn(f"--max-n {args.max_n} is above the default cap {default}; runtime and memory grow super-exponentially")
    return args.max_n


def _homology_guard(n: int, args: argparse.Namespace) -> None:
    cap = HOMOLOGY_CAP if args.max_n is None else args.max_n
    if args.max_n is not None and args.max_n > HOMOLOGY_CAP:
        _warn(f"homology above n={HOMOLOGY_CAP} can take a long time")
    if n > cap:
        raise PreconditionError(f"homology runs are capped at n={cap}; raise it with --max-n")


def _tree(text: str, species: str):
    t = parse_tree(text)
    check_species(t, species)
    return t


# ---------------------------------------------------------------- subcommands


def cmd_enumerate(args: argparse.Namespace) -> int:
    species = args.species.replace("-", "_")
    max_n = _resolve_cap(args, cap_for(species))
    P = face_poset(species, args.n, max_n)
    if args.format == "count":
        _emit(len(P))
    elif args.format == "json":
        _emit({"species": args.species, "n": args.n, **P.to_json()})
    else:
        _emit(hasse_dot(P, f"{species}_{args.n}"))
    return 0


def cmd_project(args: argparse.Namespace) -> int:
    species, f = PROJECTIONS[args.functor]
    _emit(str(f(_tree(args.input, species))))
    return 0


def cmd_fiber(args: argparse.Namespace) -> int:
    Y = _tree(args.over, "psi")
    assert isinstance(Y, PlanarTree)
    max_n = _resolve_cap(args, cap_for("phi"))
    out: dict = {"over": str(Y)}
    if args.geq:
        That = _tree(args.geq, "phi")
        assert isinstance(That, Fan)
        d = product_decompose(Y, That, max_n)
        P = d.source
        out["geq"] = str(That)
        out["factors"] = [list(f) for f in d.factors]
        out["product_verified"] = d.verified
        if not d.verified:
            raise InvariantError("fibre above a fan is a product of word posets", str(That))
    else:
        P = fiber_poset(Y, max_n)
        ell, r = len(Y.leftmost_path()), len(Y.rightmost_path())
        out["word_counts"] = [ell, r]
        W = word_poset(ell, r)
        assert P.items is not None
        out["words"] = {str(f): "".join(trunk_word(f)) for f in P.items}
        if len(W) != len(P):
            raise InvariantError("fibre matches the word poset", f"{len(P)} != {len(W)}")
    out["poset"] = P.to_json()
    if args.homology:
        _homology_guard(Y.n, args)
        rep = contractibility(order_complex(P))
        out["homology"] = rep.to_json()
        if not rep.acyclic:
            raise InvariantError("fibre is acyclic", json.dumps(rep.to_json()))
    _emit(out)
    return 0


def cmd_cofinal(args: argparse.Namespace) -> int:
    _homology_guard(args.n, args)
    F = functor_map(args.functor, args.n, args.max_n)
    rep = cofinality_report(F)
    if not rep.all_acyclic:
        raise InvariantError("every comma poset is acyclic", json.dumps(rep.to_json()))
    _emit({"n": args.n, **rep.to_json()})
    return 0


def cmd_cube_embed(args: argparse.Namespace) -> int:
    _emit(format_halves(f_embed(args.word)))
    return 0


def cmd_chart(args: argparse.Namespace) -> int:
    _emit(chart(args.kind, parse_config(args.config)).to_json())
    return 0


def cmd_stratum(args: argparse.Namespace) -> int:
    _emit(str(identify_stratum(parse_path(args.path), args.space)))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    def progress(res: acceptance.CriterionResult) -> None:
        print(res.line(), file=sys.stderr, flush=True)

    results = acceptance.run_suite(args.suite, progress)
    ok = all(r.passed for r in results)
    payload = {"suite": args.suite, "passed": ok, "criteria": [r.to_json() for r in results]}
    if not ok:
        print(json.dumps({"error": "AcceptanceFailure", **payload}, sort_keys=True), file=sys.stderr)
        return 1
    _emit(payload)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=int, default=None, help="override the size cap (prints a warning)")
    p = argparse.ArgumentParser(prog="polyfaces", description="Face posets of trees, projections, charts and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common], help="list the face poset of a species")
    s.add_argument("--species", required=True, choices=["psi", "phi", "psi-level", "phi-level"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", default="count", choices=["count", "json", "dot"])
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("project", parents=[common], help="apply a projection to one label")
    s.add_argument("--functor", required=True, choices=sorted(PROJECTIONS))
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("fiber", parents=[common], help="fibre of pi over a tree")
    s.add_argument("--over", required=True)
    s.add_argument("--geq", default=None, help="restrict to fans above this one")
    s.add_argument("--homology", action="store_true")
    s.set_defaults(func=cmd_fiber)

    s = sub.add_parser("cofinal", parents=[common], help="homology of every comma poset")
    s.add_argument("--functor", required=True, choices=sorted(PROJECTIONS))
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_cofinal)

    s = sub.add_parser("cube-embed", parents=[common], help="cube centre of a word")
    s.add_argument("--word", required=True)
    s.set_defaults(func=cmd_cube_embed)

    s = sub.add_parser("chart", parents=[common], help="evaluate a chart on a configuration")
    s.add_argument("--kind", required=True, choices=list(KINDS))
    s.add_argument("--config", required=True, help='comma-separated values, e.g. "1/4,1/2"')
    s.set_defaults(func=cmd_chart)

    s = sub.add_parser("stratum", parents=[common], help="boundary stratum reached by an e-path")
    s.add_argument("--path", required=True, help='e.g. "e^2,e,1-e,1-e^2"')
    s.add_argument("--space", required=True, choices=["assoc", "cycl", "perm"])
    s.set_defaults(func=cmd_stratum)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    s.add_argument("--suite", default="all", choices=sorted(acceptance.SUITES))
    s.set_defaults(func=cmd_verify)
    return p


def _diagnostic(exc: PolyfacesError) -> dict:
    out: dict = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        out.update(text=exc.text, position=exc.position)
    if isinstance(exc, InvariantError):
        out.update(invariant=exc.invariant, detail=exc.detail)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PolyfacesError as exc:
        print(json.dumps(_diagnostic(exc), sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
