"""Lifting paths of measures to paths of random variables.

A segment lift joins two simple random variables by moving, inside each
cell A_i & B_j of their joint partition, a linearly growing leftmost
part from value a_i to value a_j.  Its pointwise law is exactly the
affine mixture of the endpoint laws, it reproduces the endpoints
exactly, and it contracts rho at rate 1 / (segment length).

Polygonal paths of measures are lifted segment by segment with
prescribed endpoint variables; an arbitrary Lipschitz path of measures
is approximated by polygonals on uniform grids and lifted iteratively,
each round staying rho-close to the previous one (the 5-epsilon
rebuild), with a Certificate recording every verified quantity as an
exact rational.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from .errors import PreconditionError
from .omega import ONE, ZERO, IntervalSet
from .prokhorov import prokhorov
from .randomvars import SimpleRandomVariable, kyfan_rho, law, match_to_law
from .spaces import FiniteMetricSpace, Measure, mixture, same_space

DEFAULT_GRID = 257  # odd count; avoids aliasing with power-of-two breakpoints


def transfer_blocks(
    space: FiniteMetricSpace,
    cells: Sequence[Sequence[IntervalSet]],
    masses: Sequence[Sequence[Fraction]],
    fam: Callable[[int, int, Fraction], IntervalSet],
    s: Fraction,
) -> SimpleRandomVariable:
    """Rearranged variable after moving mass s * masses[i][j] per cell.

    ``fam(i, j, g)`` must return a subset of cells[i][j] of exact mass g,
    monotone in g.  The moved part of cell (i, j) takes value j, the rest
    keeps value i; diagonal cells never move.
    """
    m = space.size
    moved: dict[tuple[int, int], IntervalSet] = {}
    for i in range(m):
        for j in range(m):
            if i != j:
                moved[i, j] = fam(i, j, s * masses[i][j])
    blocks = []
    for i in range(m):
        parts = [cells[i][i]]
        for k in range(m):
            if k != i:
                parts.append(moved[k, i])
        for j in range(m):
            if j != i:
                parts.append(cells[i][j].difference(moved[i, j]))
        blocks.append(IntervalSet.union_all(parts))
    return SimpleRandomVariable(space, tuple(blocks))


@dataclass(frozen=True)
class SegmentLift:
    """Exact path of random variables joining x at time a to y at time b."""

    a: Fraction
    b: Fraction
    x: SimpleRandomVariable
    y: SimpleRandomVariable

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise PreconditionError(f"empty segment [{self.a}, {self.b}]")
        same_space(self.x.space, self.y.space)

    @cached_property
    def cells(self) -> tuple[tuple[IntervalSet, ...], ...]:
        return tuple(
            tuple(ax.intersect(by) for by in self.y.blocks) for ax in self.x.blocks
        )

    @cached_property
    def masses(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(c.measure for c in row) for row in self.cells)

    @property
    def space(self) -> FiniteMetricSpace:
        return self.x.space

    def eval(self, t: Fraction) -> SimpleRandomVariable:
        t = Fraction(t)
        if t < self.a or t > self.b:
            raise PreconditionError(f"time {t} outside [{self.a}, {self.b}]")
        s = (t - self.a) / (self.b - self.a)
        cells = self.cells
        return transfer_blocks(
            self.space,
            cells,
            self.masses,
            lambda i, j, g: cells[i][j].prefix(g),
            s,
        )


def segment_lift(
    x: SimpleRandomVariable, y: SimpleRandomVariable, a: Fraction, b: Fraction
) -> SegmentLift:
    return SegmentLift(Fraction(a), Fraction(b), x, y)


@dataclass(frozen=True)
class PolygonalPath:
    """Piecewise-affine path of measures with prescribed vertices."""

    space: FiniteMetricSpace
    breakpoints: tuple[Fraction, ...]
    vertices: tuple[Measure, ...]

    def __post_init__(self) -> None:
        bps = self.breakpoints
        if len(bps) < 2 or bps[0] != ZERO or bps[-1] != ONE:
            raise PreconditionError("breakpoints must run from 0 to 1")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise PreconditionError("breakpoints must be strictly increasing")
        if len(self.vertices) != len(bps):
            raise PreconditionError("one vertex measure per breakpoint required")
        for v in self.vertices:
            same_space(v.space, self.space)

    def segment_index(self, t: Fraction) -> int:
        if t < ZERO or t > ONE:
            raise PreconditionError(f"time {t} outside [0, 1]")
        return min(bisect_right(self.breakpoints, t) - 1, len(self.breakpoints) - 2)

    def eval(self, t: Fraction) -> Measure:
        t = Fraction(t)
        i = self.segment_index(t)
        lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
        return mixture(self.vertices[i], self.vertices[i + 1], (t - lo) / (hi - lo))


def polygonal_eval(beta: PolygonalPath, t: Fraction) -> Measure:
    return beta.eval(t)


class SampledPath:
    """A measure path given by a sample function and a declared modulus.

    q(path(s), path(t)) <= lipschitz * |s - t| is promised by the caller
    and spot-checked at query time against the adjacent already-queried
    times; by the triangle inequality this certifies every queried pair,
    and any violated pair forces a violated adjacent pair, so violations
    cannot go unnoticed.  Values are memoized, so repeated queries are
    exact and cheap.
    """

    def __init__(
        self,
        space: FiniteMetricSpace,
        fn: Callable[[Fraction], Measure],
        lipschitz: Fraction,
        backbone: "PolygonalPath | None" = None,
    ):
        self.space = space
        self.fn = fn
        self.lipschitz = Fraction(lipschitz)
        self.backbone = backbone
        if self.lipschitz < ZERO:
            raise PreconditionError("Lipschitz constant must be nonnegative")
        self._times: list[Fraction] = []
        self._values: dict[Fraction, Measure] = {}

    @classmethod
    def from_polygonal(
        cls, beta: PolygonalPath, lipschitz: Fraction | None = None
    ) -> "SampledPath":
        """Wrap a polygonal; the default modulus max_i 1/(t_{i+1} - t_i)
        is always valid because a mixture moves at most |s - t| / length
        of mass per segment."""
        if lipschitz is None:
            lipschitz = max(
                ONE / (hi - lo)
                for lo, hi in zip(beta.breakpoints, beta.breakpoints[1:])
            )
        return cls(beta.space, beta.eval, lipschitz, backbone=beta)

    def eval(self, t: Fraction) -> Measure:
        t = Fraction(t)
        if t < ZERO or t > ONE:
            raise PreconditionError(f"time {t} outside [0, 1]")
        cached = self._values.get(t)
        if cached is not None:
            return cached
        value = self.fn(t)
        same_space(value.space, self.space)
        pos = bisect_right(self._times, t)
        for nb_idx in (pos - 1, pos):
            if 0 <= nb_idx < len(self._times):
                nb = self._times[nb_idx]
                gap = prokhorov(self._values[nb], value)
                if gap > self.lipschitz * abs(t - nb):
                    raise PreconditionError(
                        f"declared Lipschitz constant {self.lipschitz} violated: "
                        f"q(path({nb}), path({t})) = {gap} > "
                        f"{self.lipschitz} * {abs(t - nb)}"
                    )
        self._times.insert(pos, t)
        self._values[t] = value
        return value


MeasurePath = PolygonalPath | SampledPath


@dataclass(frozen=True)
class LiftedPath:
    """Chain of segment lifts sharing their vertex variables."""

    segments: tuple[SegmentLift, ...]

    def __post_init__(self) -> None:
        segs = self.segments
        if not segs:
            raise PreconditionError("a lifted path needs at least one segment")
        if segs[0].a != ZERO or segs[-1].b != ONE:
            raise PreconditionError("lifted path must cover [0, 1]")
        for left, right in zip(segs, segs[1:]):
            if left.b != right.a:
                raise PreconditionError("segments must tile [0, 1] contiguously")
            if left.y != right.x:
                raise PreconditionError("consecutive segments must share their vertex")

    @property
    def space(self) -> FiniteMetricSpace:
        return self.segments[0].space

    @cached_property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return (self.segments[0].a,) + tuple(s.b for s in self.segments)

    @cached_property
    def vertices(self) -> tuple[SimpleRandomVariable, ...]:
        return (self.segments[0].x,) + tuple(s.y for s in self.segments)

    def eval(self, t: Fraction) -> SimpleRandomVariable:
        t = Fraction(t)
        if t < ZERO or t > ONE:
            raise PreconditionError(f"time {t} outside [0, 1]")
        idx = min(bisect_right(self.breakpoints, t) - 1, len(self.segments) - 1)
        return self.segments[idx].eval(t)

    def law_path(self) -> PolygonalPath:
        """The exact polygonal of laws this path lifts."""
        return PolygonalPath(
            self.space, self.breakpoints, tuple(law(v) for v in self.vertices)
        )


def lift_polygonal(
    beta: PolygonalPath,
    x_start: SimpleRandomVariable,
    x_end: SimpleRandomVariable,
) -> LiftedPath:
    """Lift a polygonal with both endpoint variables prescribed.

    Interior vertices are chained matches of the previous vertex to the
    next vertex measure, which keeps oscillation at the Prokhorov
    distance of consecutive vertices; the last segment absorbs the
    prescribed right endpoint.  law(result(t)) = beta(t) for every t.
    """
    same_space(beta.space, x_start.space)
    same_space(beta.space, x_end.space)
    if law(x_start) != beta.vertices[0]:
        raise PreconditionError("left endpoint law differs from the path at 0")
    if law(x_end) != beta.vertices[-1]:
        raise PreconditionError("right endpoint law differs from the path at 1")
    variables = [x_start]
    for target in beta.vertices[1:-1]:
        variables.append(match_to_law(variables[-1], target))
    variables.append(x_end)
    segments = tuple(
        segment_lift(variables[i], variables[i + 1], beta.breakpoints[i], beta.breakpoints[i + 1])
        for i in range(len(variables) - 1)
    )
    return LiftedPath(segments)


def approximate_polygonal(alpha: SampledPath, eps: Fraction) -> PolygonalPath:
    """Uniform-grid polygonal within eps of alpha in sup Prokhorov gap.

    With N = ceil(2 L / eps) segments the gap on each piece is at most
    L/N (drift to the left grid point) plus L/N (mixture contraction to
    the vertex), and the endpoints interpolate alpha exactly.
    """
    eps = Fraction(eps)
    if eps <= ZERO:
        raise PreconditionError("approximation tolerance must be positive")
    n_seg = max(1, math.ceil(2 * alpha.lipschitz / eps))
    bps = tuple(Fraction(i, n_seg) for i in range(n_seg + 1))
    verts = tuple(alpha.eval(t) for t in bps)
    return PolygonalPath(alpha.space, bps, verts)


def _refined_grid(prev: LiftedPath, beta: PolygonalPath, eps: Fraction) -> list[Fraction]:
    points = set(prev.breakpoints) | set(beta.breakpoints)
    if eps > ZERO:
        # pieces of prev are rho-Lipschitz at rate 1/length, so relative
        # sublength < eps keeps the oscillation below eps
        parts = math.floor(1 / eps) + 1
        for lo, hi in zip(prev.breakpoints, prev.breakpoints[1:]):
            step = (hi - lo) / parts
            points.update(lo + k * step for k in range(1, parts))
    return sorted(points)


def relift_near(prev: LiftedPath, beta: PolygonalPath, eps: Fraction) -> LiftedPath:
    """Lift beta while staying within 5 * eps of prev in rho, everywhere.

    Precondition (checked on the refined verification grid): the law of
    prev is within eps of beta, and beta agrees with prev's endpoint
    laws exactly.  The endpoints of prev are kept; interior vertices are
    matches of prev to beta at breakpoints refined until prev oscillates
    less than eps per piece.
    """
    eps = Fraction(eps)
    if eps < ZERO:
        raise PreconditionError("closeness budget must be nonnegative")
    same_space(prev.space, beta.space)
    grid = _refined_grid(prev, beta, eps)
    snapshots = {t: prev.eval(t) for t in grid}
    if beta.vertices[0] != law(snapshots[grid[0]]):
        raise PreconditionError("target path differs from prev's law at t = 0")
    if beta.vertices[-1] != law(snapshots[grid[-1]]):
        raise PreconditionError("target path differs from prev's law at t = 1")
    for t in grid:
        gap = prokhorov(law(snapshots[t]), beta.eval(t))
        if gap > eps:
            raise PreconditionError(
                f"law gap {gap} at t = {t} exceeds the declared budget {eps}"
            )
    variables = [snapshots[grid[0]]]
    for t in grid[1:-1]:
        variables.append(match_to_law(snapshots[t], beta.eval(t)))
    variables.append(snapshots[grid[-1]])
    segments = tuple(
        segment_lift(variables[i], variables[i + 1], grid[i], grid[i + 1])
        for i in range(len(variables) - 1)
    )
    return LiftedPath(segments)


def certification_grid(lift: LiftedPath) -> list[Fraction]:
    """Breakpoints plus piece midpoints; where certified sups are taken."""
    bps = lift.breakpoints
    mids = [(lo + hi) / 2 for lo, hi in zip(bps, bps[1:])]
    return sorted(set(bps) | set(mids))


def sup_rho_on_grid(
    first: LiftedPath, second: LiftedPath, grid: Sequence[Fraction]
) -> Fraction:
    return max(kyfan_rho(first.eval(t), second.eval(t)) for t in grid)


@dataclass(frozen=True)
class Certificate:
    """Exact numeric evidence attached to a constructed lifting.

    max_law_gap is the sup over the grid of the Prokhorov distance from
    the lift's pointwise law to the target path; continuity_table lists
    rho between consecutive grid evaluations; endpoint_ok records the
    two endpoint checks; decay_table is the per-iteration sup-rho
    between successive liftings of the iterative pipeline (empty when a
    single lift is verified).  Everything is recomputable from the lift
    and the target.
    """

    grid: tuple[Fraction, ...]
    max_law_gap: Fraction
    continuity_table: tuple[Fraction, ...]
    endpoint_ok: tuple[bool, bool]
    decay_table: tuple[Fraction, ...]


def verify_lift(
    lift: LiftedPath,
    target: MeasurePath,
    grid_n: int = DEFAULT_GRID,
    endpoints: tuple[SimpleRandomVariable, SimpleRandomVariable] | None = None,
    decay_table: tuple[Fraction, ...] = (),
) -> Certificate:
    """Certificate of a lift against a target path over an exact grid.

    The grid is grid_n uniform points joined with every breakpoint of
    the lift (and of the target when polygonal).  Between grid points
    the continuity entries extend to a true bound: rho over a whole
    piece never exceeds the table entry plus 2 * (grid step) / (length
    of the containing piece), by the segment Lipschitz property.

    With ``endpoints`` given, endpoint_ok compares the lift's endpoint
    variables to the prescribed ones exactly; otherwise it compares
    endpoint laws with the target.
    """
    if grid_n < 2:
        raise PreconditionError("grid needs at least 2 points")
    points = {Fraction(i, grid_n - 1) for i in range(grid_n)}
    points.update(lift.breakpoints)
    if isinstance(target, PolygonalPath):
        points.update(target.breakpoints)
    grid = sorted(points)
    values = [lift.eval(t) for t in grid]
    laws = [law(v) for v in values]
    gaps = [prokhorov(lw, target.eval(t)) for t, lw in zip(grid, laws)]
    continuity = tuple(
        kyfan_rho(values[k], values[k + 1]) for k in range(len(values) - 1)
    )
    if endpoints is not None:
        endpoint_ok = (values[0] == endpoints[0], values[-1] == endpoints[1])
    else:
        endpoint_ok = (laws[0] == target.eval(ZERO), laws[-1] == target.eval(ONE))
    return Certificate(
        grid=tuple(grid),
        max_law_gap=max(gaps),
        continuity_table=continuity,
        endpoint_ok=endpoint_ok,
        decay_table=decay_table,
    )


def lift_path(
    alpha: SampledPath,
    x_start: SimpleRandomVariable,
    x_end: SimpleRandomVariable,
    tol: Fraction,
    iterations: int,
    grid_n: int = DEFAULT_GRID,
) -> tuple[LiftedPath, Certificate]:
    """Iteratively lift a Lipschitz measure path to within tol.

    Round n approximates alpha by a polygonal at tolerance eps_n =
    tol * 5^(iterations - n) / 5 and relifts near the previous lifting
    with budget eps_{n-1} + eps_n, so the recorded sup-rho decay is
    dominated by the geometric sequence 5 * (eps_{n-1} + eps_n).  The
    result is an exact lifting of the final polygonal, whose sup gap to
    alpha is at most tol; the certificate records the truncation.
    """
    tol = Fraction(tol)
    if tol <= ZERO:
        raise PreconditionError("tolerance must be positive")
    if iterations < 1:
        raise PreconditionError("at least one iteration is required")
    same_space(alpha.space, x_start.space)
    same_space(alpha.space, x_end.space)
    if law(x_start) != alpha.eval(ZERO):
        raise PreconditionError("left endpoint law differs from the path at 0")
    if law(x_end) != alpha.eval(ONE):
        raise PreconditionError("right endpoint law differs from the path at 1")
    eps = [tol * 5 ** (iterations - 1 - n) for n in range(iterations)]
    beta = approximate_polygonal(alpha, eps[0])
    lift = lift_polygonal(beta, x_start, x_end)
    decay = []
    for n in range(1, iterations):
        beta = approximate_polygonal(alpha, eps[n])
        relifted = relift_near(lift, beta, eps[n - 1] + eps[n])
        decay.append(sup_rho_on_grid(lift, relifted, certification_grid(relifted)))
        lift = relifted
    certificate = verify_lift(
        lift,
        alpha,
        grid_n=grid_n,
        endpoints=(x_start, x_end),
        decay_table=tuple(decay),
    )
    return lift, certificate
