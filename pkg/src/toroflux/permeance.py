"""Closed-form permeance of hollow-toroid flux tubes plus the legacy approximations.

The permeance of each tube is ``G_m0`` times a dimensionless shape factor in
eta = (R/t) ln(r_o/r_i):

==================  =============================  ==========  ==============================
kind                eta > 1                        eta = 1     eta < 1
==================  =============================  ==========  ==============================
inner half          sqrt(eta^2-1) / alpha_plus     (vanishes)  (cannot occur)
outer half          sqrt(eta^2-1) / alpha_minus    1           2 sqrt(1-eta^2) / lambda
lower half          sqrt(eta^2-1) / (pi/2)         (vanishes)  (tube does not exist)
quarters            twice the matching half
==================  =============================  ==========  ==============================

The outer branches merge continuously at eta = 1 where both tend to G_m0
(evaluating either branch there is 0/0, hence the reserved unit window).
Inner-side tubes reach eta -> 1 only as r_i -> r_o with r_o -> R, where the
tube itself vanishes; inside the unit window they are evaluated with the
single eta > 1 form and a clamped sqrt(max(eta^2-1, 0)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    MU0,
    BranchCase,
    DerivedQuantities,
    DomainError,
    FluxTubeKind,
    TorusGeometry,
    derive,
    validate,
)


@dataclass(frozen=True)
class Permeance:
    """A permeance value [H]; ``exists`` is False for a vanished tube (value 0)."""

    value: float
    exists: bool = True


@dataclass(frozen=True)
class LegacyCylinderSpec:
    """Half hollow cylinder with circumferential flux: depth w, thickness t, inner radius r_i."""

    w: float
    t: float
    r_i: float

    def __post_init__(self) -> None:
        for name, positive in (("w", True), ("t", False), ("r_i", True)):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise DomainError(f"{name} must be finite, got {v!r}")
            if v < 0.0 or (positive and v == 0.0):
                raise DomainError(f"{name} must be positive, got {v!r}")


def _half_shape_factor(kind: FluxTubeKind, d: DerivedQuantities) -> float:
    """G_m / G_m0 for a half torus (the quarters double this)."""
    eta = d.eta
    if kind is FluxTubeKind.OUTER_HALF:
        if d.branch is BranchCase.SUPER:
            x = math.sqrt(eta * eta - 1.0)
            return x / d.alpha_minus
        if d.branch is BranchCase.UNIT:
            return 1.0
        y = math.sqrt((1.0 - eta) * (1.0 + eta))
        return 2.0 * y / d.lam
    if d.branch is BranchCase.SUB:
        raise DomainError(
            f"{kind.value} tube requires eta > 1, got eta={eta!r} "
            "(the inner quarter constituent does not exist below eta = 1)"
        )
    # SUPER or UNIT; within the unit window the tube is nearly degenerate and
    # the single closed form stays numerically safe (no cancelling denominator).
    x = math.sqrt(max(eta * eta - 1.0, 0.0))
    if kind is FluxTubeKind.LOWER_HALF:
        return x / (0.5 * math.pi)
    alpha_plus = d.alpha_plus if d.alpha_plus is not None else math.pi - math.atan(x)
    return x / alpha_plus


_HALF_OF = {
    FluxTubeKind.INNER_QUARTER: FluxTubeKind.INNER_HALF,
    FluxTubeKind.OUTER_QUARTER: FluxTubeKind.OUTER_HALF,
}


def permeance(kind: FluxTubeKind, geom: TorusGeometry) -> Permeance:
    """Exact permeance [H] of the flux tube.

    A nonexistent tube (see :func:`toroflux.core.validate`) yields the
    degenerate ``Permeance(0.0, exists=False)`` rather than an error, so that
    sweeps remain total.  A lower-half tube evaluated on the SUB branch raises
    :class:`DomainError`: its inner quarter constituent only exists for eta > 1.
    """
    if not validate(kind, geom).exists:
        return Permeance(0.0, exists=False)
    d = derive(geom)
    half_kind = _HALF_OF.get(kind)
    if half_kind is not None:
        # A quarter tube has half the reluctance of the matching half tube.
        return Permeance(2.0 * (d.gm0 * _half_shape_factor(half_kind, d)))
    return Permeance(d.gm0 * _half_shape_factor(kind, d))


def reluctance(kind: FluxTubeKind, geom: TorusGeometry) -> float:
    """Reluctance 1/G_m [1/H]; ``math.inf`` signals a vanished (zero-permeance) tube."""
    value = permeance(kind, geom).value
    if value == 0.0:
        return math.inf
    return 1.0 / value


def legacy_half_hollow_cylinder(spec: LegacyCylinderSpec) -> Permeance:
    """Permeance of a straight half hollow cylinder with circumferential flux.

    G_m = mu0 w / pi * ln(1 + t/r_i).  With w = 2 pi R this is the customary
    wrapped-around-a-cylinder approximation of a half hollow torus, exact only
    in the limit (R/t) ln(r_o/r_i) -> infinity.
    """
    return Permeance(MU0 * spec.w / math.pi * math.log1p(spec.t / spec.r_i))
