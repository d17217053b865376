import os
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from tolshadow.geometry import Point, Segment
from tolshadow.model import (
    ShadowRepresentation,
    ToleranceRepresentation,
    ToleranceVertex,
    tolerance_to_shadow,
)

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def xd(x, d):
    return Point.from_xd(F(x), F(d))


def seg_xd(x1, d1, x2, d2):
    return Segment(xd(x1, d1), xd(x2, d2))


@pytest.fixture
def e1_tolerance():
    return ToleranceRepresentation((
        ToleranceVertex("u", 0, 4, 1),
        ToleranceVertex("v", 2, 8, F(5, 2)),
        ToleranceVertex("w", F(29, 10), F(59, 10), 10),
    ))


@pytest.fixture
def e1(e1_tolerance):
    return tolerance_to_shadow(e1_tolerance)


@pytest.fixture
def fig4():
    """Five vertices: v1, v2, v5 unbounded, v3, v4 bounded.

    p_v1 lies in the shadow of p_v2, p_v2 in the shadow of L_v3 but not of
    L_v4, and L_v4 meets the shadow of p_v5. Nothing lies in the shadow of
    p_v1, so v1 is the only unbounded vertex that is not inevitable.
    """
    return ShadowRepresentation(
        points=(("v1", xd(3, 3)), ("v2", xd(5, 5)), ("v5", xd(12, 4))),
        segments=(("v3", seg_xd(6, 8, 7, 7)), ("v4", seg_xd(9, F(7, 2), 10, F(5, 2)))),
    )
