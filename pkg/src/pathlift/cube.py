"""Multi-affine interpolation of measures over [0, 1]^n and its lifting.

With corner measures m_1, ..., m_{K}, the interpolation over the
(K-1)-cube blends the previous level toward the last corner along the
last coordinate.  The lifting mirrors this: the base level is the
segment lift between the canonical variables of the first two corners,
and each further level transfers mass toward the canonical variable of
the next corner through families nested inside that variable's blocks
(largest-s inversion of the prefix-mass map).  The pointwise law equals
the interpolation exactly at every rational point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantError, PreconditionError
from .lifting import segment_lift, transfer_blocks
from .omega import ONE, ZERO, IntervalSet, inverse_prefix_mass
from .randomvars import SimpleRandomVariable, canonical_rv
from .spaces import FiniteMetricSpace, Measure, mixture, same_space


@dataclass(frozen=True)
class CubeInterpolation:
    space: FiniteMetricSpace
    corners: tuple[Measure, ...]

    def __post_init__(self) -> None:
        if len(self.corners) < 2:
            raise PreconditionError("need at least two corner measures")
        for c in self.corners:
            same_space(c.space, self.space)

    @property
    def dimension(self) -> int:
        return len(self.corners) - 1


def _check_point(interp: CubeInterpolation, ts) -> tuple[Fraction, ...]:
    ts = tuple(Fraction(t) for t in ts)
    if len(ts) != interp.dimension:
        raise PreconditionError(
            f"expected {interp.dimension} coordinates, got {len(ts)}"
        )
    for t in ts:
        if t < ZERO or t > ONE:
            raise PreconditionError(f"coordinate {t} outside [0, 1]")
    return ts


def g_eval(interp: CubeInterpolation, ts) -> Measure:
    """Nested affine mixture of the corners at the given point."""
    ts = _check_point(interp, ts)
    acc = interp.corners[0]
    for t, corner in zip(ts, interp.corners[1:]):
        acc = mixture(acc, corner, t)
    return acc


def _nested_transfer(
    level: SimpleRandomVariable, corner_rv: SimpleRandomVariable, t: Fraction
) -> SimpleRandomVariable:
    """One inductive step: move mass from the level variable toward
    corner_rv along families nested inside corner_rv's blocks."""
    space = level.space
    cells = [
        [a.intersect(b) for b in corner_rv.blocks] for a in level.blocks
    ]
    masses = [[c.measure for c in row] for row in cells]

    def fam(i: int, j: int, gamma: Fraction) -> IntervalSet:
        base = corner_rv.blocks[j]
        s = inverse_prefix_mass(cells[i][j], base, gamma)
        part = cells[i][j].intersect(base.prefix(s))
        if part.measure != gamma:
            raise InvariantError("nested family missed its target mass")
        return part

    return transfer_blocks(space, cells, masses, fam, t)


@dataclass(frozen=True)
class CubeLift:
    interp: CubeInterpolation

    @property
    def space(self) -> FiniteMetricSpace:
        return self.interp.space

    def eval(self, ts) -> SimpleRandomVariable:
        ts = _check_point(self.interp, ts)
        corners = self.interp.corners
        base = segment_lift(canonical_rv(corners[0]), canonical_rv(corners[1]), ZERO, ONE)
        value = base.eval(ts[0])
        for t, corner in zip(ts[1:], corners[2:]):
            value = _nested_transfer(value, canonical_rv(corner), t)
        return value


def g_lift_eval(interp: CubeInterpolation, ts) -> SimpleRandomVariable:
    return CubeLift(interp).eval(ts)
