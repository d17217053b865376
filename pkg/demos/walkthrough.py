"""Walk through the package on small instances.

Run with ``python3 demos/walkthrough.py [outdir]``. SVG drawings go to
``outdir`` (default: a temporary directory).
"""

import random
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from tolshadow import cli_io
from tolshadow.bounded_ds import solve_bounded_ds
from tolshadow.dominating_ds import solve_min_dominating_set
from tolshadow.generate import generate_connected_shadow
from tolshadow.hardness import check_l_reduction, generate_s3sc, reduce_f
from tolshadow.model import (
    ToleranceRepresentation,
    ToleranceVertex,
    adjacency_matrix,
    hovering_sets,
    tolerance_to_shadow,
)
from tolshadow.oracle import brute_min_dominating_set


def show(title):
    print(f"\n== {title}")


def main(outdir):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    show("a three-vertex tolerance graph")
    tol = ToleranceRepresentation((
        ToleranceVertex("u", 0, 4, 1),
        ToleranceVertex("v", 2, 8, Fraction(5, 2)),
        ToleranceVertex("w", Fraction(29, 10), Fraction(59, 10), 10),
    ))
    rep = tolerance_to_shadow(tol)
    for sid, s in rep.segments:
        print(f"  segment {sid}: {s.p1} to {s.p2}")
    for pid, p in rep.points:
        print(f"  point   {pid}: {p}   hovering set {sorted(hovering_sets(rep)[pid])}")
    ids, matrix = adjacency_matrix(rep)
    print("  adjacency:", {a: [b for b, m in zip(ids, row) if m] for a, row in zip(ids, matrix)})
    print("  bounded-only optimum:", solve_bounded_ds(rep).sorted_ids())
    print("  minimum dominating set:", solve_min_dominating_set(rep).sorted_ids())
    cli_io.render_svg(rep, outdir / "triangle.svg", shadows=True)

    show("random connected instances against exhaustive search")
    rng = random.Random(3)
    for _ in range(5):
        rep = generate_connected_shadow(rng, 6, 0.5)
        sol = solve_min_dominating_set(rep)
        ref = brute_min_dominating_set(rep)
        print(f"  |P|={len(rep.points)} |L|={len(rep.segments)}  solver {sol.sorted_ids()}  exhaustive size {ref.size}")
    cli_io.render_svg(rep, outdir / "random.svg")

    show("set cover instance mapped to a dominating-set instance")
    inst = generate_s3sc(1, 2)
    print("  sets:", [sorted(s) for s in inst.sets])
    out = reduce_f(inst)
    print(f"  reduced graph: {len(out.shadow.points)} points, {len(out.shadow.segments)} segments")
    report = check_l_reduction(inst, samples=20)
    print(f"  optimum cover {report.opt_cover}, optimum domination {report.opt_domination}, checks ok: {report.ok}")
    cli_io.render_svg(out.shadow, outdir / "reduction.svg")
    print(f"\nSVG files written to {outdir}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp(prefix="tolshadow-"))
