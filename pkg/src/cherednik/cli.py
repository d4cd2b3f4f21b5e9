"""Command-line front end. Outputs go to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 bad input or unmet precondition, 2 internal
consistency failure.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .block import (
    BlockError,
    block_diagonalizable,
    build_labeling,
    enumerate_block,
    st_pair,
    tight_check,
)
from .characters import CharacterError, general_basis_count, graded_dimension, monomial_basis_count, oblomkov_yun_check
from .combinatorics import Params, RPartition, h_c
from .decomposition import (
    conjecture_check,
    graded_dec_matrix,
    inverse_dec_matrix,
    quivers,
    bgg_resolution,
)
from .graph import ConsistencyError, build_gamma, fundamental_submodules, hom_relation, lowest_degree_isotype, to_dot
from .oracle import OracleError, attach_lattice, intersection_lattice, isotype_oracle, standard_tightness_screen

SCHEMA_VERSION = 1
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class UsageError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise UsageError(f"malformed rational {text!r}; expected k, p/q or -p/q")
    value = Fraction(text)
    return value


def params_from_args(args) -> Params:
    c0 = parse_rational(args.c0)
    if args.d == "equal":
        if c0 != Fraction(1, args.n):
            raise UsageError("the 'equal' preset needs c0 = 1/n")
        return Params.equal(args.r, args.n)
    d = tuple(parse_rational(x) for x in args.d.split(","))
    if len(d) != args.r:
        raise UsageError(f"--d needs {args.r} entries, got {len(d)}")
    return Params(args.r, args.n, c0, d)


def parse_lambda(text: str, p: Params) -> RPartition:
    try:
        lam = RPartition.parse(text, p.r)
    except ValueError as exc:
        raise UsageError(f"invalid r-partition {text!r}: {exc}") from exc
    if lam.size != p.n:
        raise UsageError(f"{text!r} has {lam.size} boxes, expected {p.n}")
    return lam


def emit(payload: dict) -> None:
    print(json.dumps({"schemaVersion": SCHEMA_VERSION, **payload}, indent=2, ensure_ascii=False))


def _graph(p: Params, lattice: bool = False):
    g = build_gamma(p)
    if lattice:
        attach_lattice(g)
    return g


# --------------------------------------------------------------------------
# subcommands


def cmd_block(args) -> None:
    p = params_from_args(args)
    if args.action == "enumerate":
        members = enumerate_block(p)
        emit(
            {
                "params": p.as_dict(),
                "size": len(members),
                "members": [
                    {"lambda": m.text(), "hc": str(h_c(m, p)), "S": list(st.S), "T": list(st.T)}
                    for m in members
                    for st in [st_pair(m, p)]
                ],
            }
        )
    elif args.action == "labeling":
        lab = build_labeling(p)
        emit({"params": p.as_dict(), "ell": lab.ell, "labels": lab.as_rows()})
    elif args.action == "tight":
        v = tight_check(p)
        emit({"params": p.as_dict(), "tight": v.tight, "witness": v.witness, "chain": [x.as_list() for x in v.chain]})
    elif args.action == "diagonalizable":
        rep = block_diagonalizable(p)
        emit(
            {
                "params": p.as_dict(),
                "sufficient": rep.sufficient,
                "exact": rep.exact,
                "failures": [m.text() for m in rep.failures],
            }
        )


def cmd_gamma(args) -> None:
    p = params_from_args(args)
    g = _graph(p)
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
        return
    pairs = lambda es: sorted([a.text(), b.text()] for a, b in es)  # noqa: E731
    emit(
        {
            "params": p.as_dict(),
            "tight": g.tight,
            "vertices": [v.text() for v in g.vertices],
            "primitive": pairs(g.primitive_edges()),
            "composite": pairs(g.composite_edges()),
        }
    )


def cmd_submodules(args) -> None:
    p = params_from_args(args)
    lam = parse_lambda(args.lam, p)
    subs = fundamental_submodules(lam, p)
    emit(
        {
            "lambda": lam.text(),
            "submodules": [
                {"kind": f.kind, "describe": f.describe(), "k": f.k, "isotype": lowest_degree_isotype(f, p).text()}
                for f in subs
            ],
        }
    )


def cmd_dec_matrix(args) -> None:
    p = params_from_args(args)
    g = _graph(p, lattice=True)
    m = inverse_dec_matrix(g) if args.inverse else graded_dec_matrix(g)
    if args.format == "tsv":
        sys.stdout.write(m.to_tsv())
        return
    rel, warning = hom_relation(g)
    emit({"params": p.as_dict(), "inverse": args.inverse, "homPairs": len(rel), "warning": warning, **m.to_json()})


def cmd_resolution(args) -> None:
    p = params_from_args(args)
    g = _graph(p)
    lam = parse_lambda(args.lam, p)
    res = bgg_resolution(g, lam)
    if args.format == "dot":
        sys.stdout.write(res.to_dot())
        return
    emit({"params": p.as_dict(), **res.to_json(), "levelSizes": res.level_sizes()})


def cmd_graded_dim(args) -> None:
    p = params_from_args(args)
    g = _graph(p)
    targets = [parse_lambda(args.lam, p)] if args.lam else g.vertices
    out = [graded_dimension(bgg_resolution(g, lam), p).to_json() for lam in targets]
    if args.monomial:
        ref = monomial_basis_count(p) if args.monomial == "equal" else general_basis_count(p)
        emit({"params": p.as_dict(), "results": out, "monomialOracle": list(ref.numerator)})
    else:
        emit({"params": p.as_dict(), "results": out})


def cmd_conjecture(args) -> None:
    p = params_from_args(args)
    g = _graph(p, lattice=True)
    inv = inverse_dec_matrix(g)
    screen = None
    if not g.tight:
        screen = lambda mu: standard_tightness_screen(g, mu)[0]  # noqa: E731
    targets = [parse_lambda(args.lam, p)] if args.lam else g.vertices
    reports = [conjecture_check(g, lam, inv, standard_is_tight=screen).to_json() for lam in targets]
    emit({"params": p.as_dict(), "tight": g.tight, "reports": reports, "allPassed": all(r["passed"] for r in reports)})


def cmd_quivers(args) -> None:
    p = params_from_args(args)
    emit({"params": p.as_dict(), **quivers(_graph(p)).to_json()})


def cmd_oy(args) -> None:
    rep = oblomkov_yun_check(args.nmax)
    emit(rep.to_json())
    if not rep.passed:
        raise ConsistencyError("Oblomkov–Yun series disagree with the closed formula")


def cmd_oracle(args) -> None:
    p = params_from_args(args)
    g = _graph(p)
    lam = parse_lambda(args.lam, p)
    subs = fundamental_submodules(lam, p)
    if args.action == "isotype":
        chosen = [subs[int(i)] for i in args.subs.split(",")] if args.subs else []
        cap = args.degree_cap if args.degree_cap is not None else None
        from .oracle import default_cap

        mu, deg = isotype_oracle(chosen, p, g.vertices, cap if cap is not None else default_cap(g, lam), host=lam)
        emit(
            {
                "lambda": lam.text(),
                "submodules": [f.describe() for f in chosen],
                "isotype": None if mu is None else mu.text(),
                "degree": deg,
            }
        )
    else:
        lat = intersection_lattice(g, lam, cap=args.degree_cap)
        emit(
            {
                "lambda": lam.text(),
                "submodules": [f.describe() for f in subs],
                "intersections": [
                    {"mask": S, "degree": lat.degrees[S], "isotype": None if mu is None else mu.text()}
                    for S, mu in sorted(lat.isotypes.items())
                ],
                "pSet": sorted(m.text() for m in lat.members),
            }
        )


# --------------------------------------------------------------------------
# parser


def _add_params(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c0", required=True, help="rational, e.g. 1/4")
    sp.add_argument("--d", required=True, help="'equal' or comma-separated rationals (use --d=-1,1 for a leading minus)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are precondition errors (exit 1)
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cherednik", description="Principal blocks of category O for G(r,1,n).")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("block", help="enumerate, label or test the principal block")
    sp.add_argument("action", choices=["enumerate", "labeling", "tight", "diagonalizable"])
    _add_params(sp)
    sp.set_defaults(func=cmd_block)

    sp = sub.add_parser("gamma", help="the submodule graph")
    _add_params(sp)
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("submodules", help="fundamental submodules of one standard")
    _add_params(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.set_defaults(func=cmd_submodules)

    sp = sub.add_parser("dec-matrix", help="graded decomposition matrix or its inverse")
    _add_params(sp)
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--format", choices=["json", "tsv"], default="json")
    sp.set_defaults(func=cmd_dec_matrix)

    sp = sub.add_parser("resolution", help="BGG resolution of a simple")
    _add_params(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.set_defaults(func=cmd_resolution)

    sp = sub.add_parser("graded-dim", help="graded dimensions via resolutions")
    _add_params(sp)
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--monomial", choices=["equal", "general"], help="also count a monomial basis of L(Triv)")
    sp.set_defaults(func=cmd_graded_dim)

    sp = sub.add_parser("conjecture", help="compare the pruning algorithm with the inverse matrix")
    _add_params(sp)
    sp.add_argument("--lambda", dest="lam")
    sp.set_defaults(func=cmd_conjecture)

    sp = sub.add_parser("quivers", help="primitive quiver and predicted Ext^1 quiver")
    _add_params(sp)
    sp.set_defaults(func=cmd_quivers)

    sp = sub.add_parser("oy-verify", help="check the Oblomkov-Yun generating series")
    sp.add_argument("--nmax", type=int, default=6)
    sp.set_defaults(func=cmd_oy)

    sp = sub.add_parser("oracle", help="brute-force membership searches")
    sp.add_argument("action", choices=["isotype", "lattice"])
    _add_params(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--subs", help="comma-separated submodule indices (isotype only)")
    sp.add_argument("--degree-cap", type=int)
    sp.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (UsageError, BlockError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConsistencyError, OracleError, CharacterError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
