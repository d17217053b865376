"""Command-line interface: ``python -m tolshadow <command> ...``.

Exit codes: 0 success, 1 infeasible result, 2 invalid input, 3 input larger
than the exhaustive-search budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cli_io
from .bounded_ds import solve_bounded_ds
from .dominating_ds import is_normalized, solve_min_dominating_set
from .generate import (
    generate_connected_shadow,
    generate_multitolerance,
    generate_shadow,
    generate_tolerance,
)
from .geometry import GeometryError
from .hardness import S3SCInstance, backmap_g, generate_s3sc, reduce_f, validate_s3sc
from .model import (
    MultitoleranceRepresentation,
    ShadowRepresentation,
    ToleranceRepresentation,
    ValidationError,
    adjacency_matrix,
    canonicalize,
    definitional_adjacency,
    multitolerance_to_shadow,
    neighbor_sets,
    shadow_adjacent,
    tolerance_to_shadow,
    validate_shadow,
)
from .oracle import BudgetExceeded, brute_min_dominating_set
from .restricted_ds import RBDSInstance, solve_restricted

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _as_shadow(obj, *, canonical: bool = False) -> ShadowRepresentation:
    if isinstance(obj, ToleranceRepresentation):
        rep = tolerance_to_shadow(obj)
    elif isinstance(obj, MultitoleranceRepresentation):
        rep = multitolerance_to_shadow(obj)
    elif isinstance(obj, ShadowRepresentation):
        rep = obj
    else:
        raise UsageError(f"expected a graph representation, got a {type(obj).__name__} document")
    return canonicalize(rep) if canonical else rep


def _load_shadow(path: str, canonical: bool = False) -> ShadowRepresentation:
    return _as_shadow(cli_io.read_file(path), canonical=canonical)


def _finish(problem: str, rep, sol, out, params=None) -> int:
    doc = cli_io.solution_file(problem, rep, sol, params)
    _emit(cli_io.dumps(doc), out)
    if not sol.feasible:
        print(f"infeasible: {sol.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


# --- commands ----------------------------------------------------------------


def cmd_convert(args) -> int:
    obj = cli_io.read_file(args.input)
    if not isinstance(obj, (ToleranceRepresentation, MultitoleranceRepresentation)):
        raise UsageError("convert expects a tolerance or multitolerance document")
    _emit(cli_io.dumps(_as_shadow(obj, canonical=args.canonical)), args.output)
    return EXIT_OK


def cmd_adjacency(args) -> int:
    ids, matrix = adjacency_matrix(_load_shadow(args.input))
    doc = {"ids": ids, "matrix": [[int(b) for b in row] for row in matrix]}
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_solve_ds(args) -> int:
    rep = _load_shadow(args.input)
    return _finish("ds", rep, solve_min_dominating_set(rep), args.output)


def cmd_solve_bds(args) -> int:
    rep = _load_shadow(args.input)
    return _finish("bds", rep, solve_bounded_ds(rep), args.output)


def cmd_solve_rbds(args) -> int:
    rep = _load_shadow(args.input)
    inst = RBDSInstance(rep, args.j, args.j2, args.i, args.i2)
    params = {"j": args.j, "j2": args.j2, "i": args.i, "i2": args.i2}
    return _finish("rbds", rep, solve_restricted(inst), args.output, params)


def cmd_reduce(args) -> int:
    inst = cli_io.read_file(args.input)
    if not isinstance(inst, S3SCInstance):
        raise UsageError("reduce expects an s3sc document")
    _emit(cli_io.dumps(reduce_f(inst).shadow), args.output)
    return EXIT_OK


def cmd_backmap(args) -> int:
    inst = cli_io.read_file(args.instance)
    sol = cli_io.read_file(args.solution)
    if not isinstance(inst, S3SCInstance) or not isinstance(sol, cli_io.SolutionFile):
        raise UsageError("backmap expects an s3sc document and a solution document")
    if not sol.feasible:
        raise UsageError("cannot map back an infeasible solution")
    cover = backmap_g(inst, reduce_f(inst), sol.chosen)
    doc = cli_io.SolutionFile("cover", tuple(cover), cli_io.cover_witness(inst, cover))
    _emit(cli_io.dumps(doc), args.output)
    return EXIT_OK


def _verify_graph(obj, problems: list) -> ShadowRepresentation | None:
    try:
        rep = _as_shadow(obj)
    except ValidationError as exc:
        problems.append(str(exc))
        return None
    problems.extend(validate_shadow(rep, distinct_diagonals=True))
    for sid, s in rep.segments:
        if s.p2.x < s.p1.x or s.p2.y - s.p1.y > s.p2.x - s.p1.x:
            problems.append(f"{sid} violates the slope bounds")
    if not isinstance(obj, ShadowRepresentation):
        truth = definitional_adjacency(obj)
        for pair, adj in truth.items():
            u, v = sorted(pair)
            if shadow_adjacent(rep, u, v) != adj:
                problems.append(f"shadow adjacency of {u},{v} disagrees with the interval model")
    return rep


def cmd_verify(args) -> int:
    obj = cli_io.read_file(args.input)
    problems: list[str] = []
    rep = None
    if isinstance(obj, S3SCInstance):
        problems.extend(validate_s3sc(obj)[1])
    elif isinstance(obj, cli_io.SolutionFile):
        raise UsageError("pass the instance as INPUT and the solution with --solution")
    else:
        rep = _verify_graph(obj, problems)
    if args.solution and not problems:
        sol = cli_io.read_file(args.solution)
        if not isinstance(sol, cli_io.SolutionFile):
            raise UsageError("--solution must be a solution document")
        if not sol.feasible:
            problems.append("solution is marked infeasible")
        elif isinstance(obj, S3SCInstance):
            chosen = set(sol.chosen)
            for e in obj.universe:
                c = sol.witness.get(e)
                if c not in chosen or e not in obj.sets[int(c)]:
                    problems.append(f"bad cover witness for {e}")
        else:
            nb = neighbor_sets(rep)
            problems.extend(cli_io.check_domination_witness(rep, sol, nb))
            if sol.problem == "ds" and not problems and not is_normalized(rep, sol.chosen, nb=nb):
                # a per-component union need not be normalized as a whole
                print("note: dominating set is not normalized", file=sys.stderr)
    for p in problems:
        print(p, file=sys.stderr)
    print("ok" if not problems else f"{len(problems)} problem(s)")
    return EXIT_OK if not problems else EXIT_INVALID


def cmd_oracle(args) -> int:
    rep = _load_shadow(args.input)
    sol = brute_min_dominating_set(rep, budget=args.budget)
    return _finish("ds", rep, sol, args.output)


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "tolerance":
        obj = generate_tolerance(args.seed, args.n, args.unbounded_fraction)
    elif kind == "multitolerance":
        obj = generate_multitolerance(args.seed, args.n, args.unbounded_fraction)
    elif kind == "shadow":
        if args.connected:
            obj = generate_connected_shadow(args.seed, args.n, args.unbounded_fraction, canonical=args.canonical)
        else:
            obj = generate_shadow(args.seed, args.n, args.unbounded_fraction, canonical=args.canonical)
    else:
        obj = generate_s3sc(args.seed, args.m)
    _emit(cli_io.dumps(obj), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    rep = _load_shadow(args.input)
    _emit(cli_io.svg_document(rep, shadows=args.shadows), args.output)
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tolshadow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, inp=True):
        p = sub.add_parser(name, help=help_)
        if inp:
            p.add_argument("input", help="input JSON file")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("convert", cmd_convert, "interval model to shadow representation")
    p.add_argument("--canonical", action="store_true", help="make every unbounded vertex inevitable")
    add("adjacency", cmd_adjacency, "adjacency matrix as JSON")
    add("solve-ds", cmd_solve_ds, "minimum dominating set")
    add("solve-bds", cmd_solve_bds, "minimum dominating set using bounded vertices only")
    p = add("solve-rbds", cmd_solve_rbds, "bounded domination with prescribed start and end pairs")
    for flag in ("--j", "--j2", "--i", "--i2"):
        p.add_argument(flag, required=True)
    add("reduce", cmd_reduce, "S3SC instance to multitolerance shadow representation")
    p = add("backmap", cmd_backmap, "dominating set of a reduced instance to a set cover", inp=False)
    p.add_argument("instance", help="s3sc JSON file")
    p.add_argument("solution", help="solution JSON file for the reduced graph")
    p = add("verify", cmd_verify, "check general position, fidelity and an optional solution certificate")
    p.add_argument("--solution", help="solution file to check against INPUT")
    p = add("oracle", cmd_oracle, "exhaustive minimum dominating set")
    p.add_argument("--budget", type=int, default=None, help="largest vertex count to enumerate")
    p = add("gen", cmd_gen, "seeded random instance", inp=False)
    p.add_argument("kind", choices=("tolerance", "multitolerance", "shadow", "s3sc"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--m", type=int, default=2, help="gadget count for s3sc")
    p.add_argument("--unbounded-fraction", type=float, default=0.3)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--canonical", action="store_true")
    p = add("render", cmd_render, "SVG drawing of the shadow representation")
    p.add_argument("--shadows", action="store_true", help="outline each element's shadow")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (cli_io.FormatError, ValidationError, GeometryError, UsageError, KeyError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
