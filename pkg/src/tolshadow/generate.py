"""Seeded random instance generators.

Endpoints are integers. Lower trapezoid endpoints and upper trapezoid
endpoints are kept pairwise distinct across vertices by rejection, which
gives distinct x and distinct diagonal coordinates in the shadow
representation.
"""

from __future__ import annotations

import random

from .model import (
    MultitoleranceRepresentation,
    MultitoleranceVertex,
    ShadowRepresentation,
    ToleranceRepresentation,
    ToleranceVertex,
    canonicalize,
    connected_components,
    tolerance_to_shadow,
)

__all__ = [
    "generate_tolerance",
    "generate_multitolerance",
    "generate_shadow",
    "generate_connected_shadow",
    "GenerationError",
]


class GenerationError(RuntimeError):
    pass


def _claim(used_low: set, used_up: set, lows, ups) -> bool:
    lows, ups = set(lows), set(ups)
    if lows & used_low or ups & used_up:
        return False
    used_low |= lows
    used_up |= ups
    return True


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def generate_tolerance(seed, n: int, unbounded_fraction: float = 0.3, *, span: int | None = None) -> ToleranceRepresentation:
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _rng(seed)
    span = 4 * n + 12 if span is None else span
    used_low: set = set()
    used_up: set = set()
    vertices = []
    for k in range(n):
        for _ in range(10000):
            l = rng.randint(0, span)
            r = l + rng.randint(1, max(2, span // 2))
            if rng.random() < unbounded_fraction:
                t = r - l + rng.randint(1, span)
                lows, ups = (l,), (r,)
            else:
                # small tolerances keep random graphs reasonably dense
                t = rng.randint(1, max(1, (r - l + 1) // 2))
                lows, ups = (l, r - t), (l + t, r)
            if _claim(used_low, used_up, lows, ups):
                vertices.append(ToleranceVertex(f"v{k}", l, r, t))
                break
        else:
            raise GenerationError("could not place a vertex with distinct endpoints")
    return ToleranceRepresentation(tuple(vertices))


def generate_multitolerance(seed, n: int, unbounded_fraction: float = 0.3, *, span: int | None = None) -> MultitoleranceRepresentation:
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _rng(seed)
    span = 4 * n + 12 if span is None else span
    used_low: set = set()
    used_up: set = set()
    vertices = []
    for k in range(n):
        for _ in range(10000):
            l = rng.randint(0, span)
            r = l + rng.randint(1, max(2, span // 2))
            if rng.random() < unbounded_fraction:
                v = MultitoleranceVertex(f"v{k}", l, r)
                lows, ups = (l,), (r,)
            else:
                lt, rt = rng.randint(l, r), rng.randint(l, r)
                v = MultitoleranceVertex(f"v{k}", l, r, lt, rt)
                lows, ups = (l, rt), (lt, r)
            if _claim(used_low, used_up, lows, ups):
                vertices.append(v)
                break
        else:
            raise GenerationError("could not place a vertex with distinct endpoints")
    return MultitoleranceRepresentation(tuple(vertices))


def generate_shadow(seed, n: int, unbounded_fraction: float = 0.3, *, canonical: bool = False) -> ShadowRepresentation:
    """Horizontal shadow representation of a random tolerance graph."""
    rep = tolerance_to_shadow(generate_tolerance(seed, n, unbounded_fraction))
    return canonicalize(rep) if canonical else rep


def generate_connected_shadow(seed, n: int, unbounded_fraction: float = 0.3, *, canonical: bool = True, tries: int = 2000) -> ShadowRepresentation:
    """Like :func:`generate_shadow` but rejects disconnected graphs."""
    rng = _rng(seed)
    for _ in range(tries):
        rep = generate_shadow(rng, n, unbounded_fraction, canonical=canonical)
        if len(connected_components(rep)) == 1:
            return rep
    raise GenerationError(f"no connected instance with n={n} after {tries} tries")
