"""Shared test helpers: deterministic geometry grids and eta root-solving."""

import math

import numpy as np
from hypothesis import strategies as st

from toroflux import FluxTubeKind, TorusGeometry, derive


def eta_of(R: float, r_i: float, r_o: float) -> float:
    return (R / (r_o - r_i)) * math.log(r_o / r_i)


def solve_ro_for_eta(R: float, r_i: float, target: float, hi_factor: float = 1e8) -> float:
    """Bisect r_o so that (R/t) ln(r_o/r_i) equals the target eta.

    eta decreases strictly monotonically in r_o, from R/r_i as r_o -> r_i
    toward zero, so plain bisection converges to machine precision.
    """
    lo = r_i * (1.0 + 1e-13)
    hi = r_i * hi_factor
    assert eta_of(R, r_i, lo) > target > eta_of(R, r_i, hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if eta_of(R, r_i, mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_geometries(kind, n, seed, eta_margin=1e-3, inner_cap=0.95, ratio_max=0.95):
    """Deterministic valid geometries spanning decades, clear of the unit window.

    The margins keep every sample at least eta_margin away from eta = 1 and
    at least 5 % away from the existence boundaries, as the oracle-agreement
    bounds presuppose.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        R = 10.0 ** rng.uniform(-4.0, 0.0)
        if kind.is_outer:
            r_o = R * 10.0 ** rng.uniform(-1.3, 1.5)
        else:
            r_o = R * rng.uniform(0.05, inner_cap)
        r_i = r_o * 10.0 ** rng.uniform(-2.7, math.log10(ratio_max))
        geom = TorusGeometry(R, r_i, r_o)
        if abs(derive(geom).eta - 1.0) < eta_margin:
            continue
        out.append(geom)
    return out


@st.composite
def geometry_strategy(draw, kind):
    """Hypothesis strategy for a valid geometry of the given kind."""
    R = draw(st.floats(min_value=1e-4, max_value=1.0))
    if kind.is_outer:
        r_o = R * draw(st.floats(min_value=0.05, max_value=20.0))
    else:
        r_o = R * draw(st.floats(min_value=0.05, max_value=0.95))
    r_i = r_o * draw(st.floats(min_value=0.01, max_value=0.95))
    return TorusGeometry(R, r_i, r_o)


ALL_KINDS = list(FluxTubeKind)
HALF_KINDS = [FluxTubeKind.INNER_HALF, FluxTubeKind.OUTER_HALF]
QUARTER_OF = {
    FluxTubeKind.INNER_HALF: FluxTubeKind.INNER_QUARTER,
    FluxTubeKind.OUTER_HALF: FluxTubeKind.OUTER_QUARTER,
}
