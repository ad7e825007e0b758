"""Simple random variables on [0, 1) with values in a finite space.

A variable is a labeled partition of the unit interval: one IntervalSet
block per point of the space (empty blocks allowed), so any two
variables automatically share the full point list.  ``law`` pushes the
partition forward to a Measure; ``kyfan_rho`` is the metric of
convergence in probability; ``match_to_law`` rearranges a variable to
hit a target law at exactly the Prokhorov distance between the laws.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .omega import ONE, ZERO, IntervalSet
from .prokhorov import kyfan_functional, prokhorov_coupling
from .spaces import CouplingMatrix, FiniteMetricSpace, Measure, same_space


@dataclass(frozen=True)
class SimpleRandomVariable:
    space: FiniteMetricSpace
    blocks: tuple[IntervalSet, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != self.space.size:
            raise PreconditionError("one block per point of the space is required")
        # union = [0,1) and masses summing to 1 force pairwise disjointness:
        # an overlap would make the union measure smaller than the mass sum,
        # and a measure-zero IntervalSet is empty.
        total = sum((b.measure for b in self.blocks), ZERO)
        if total != ONE or IntervalSet.union_all(self.blocks) != IntervalSet.full():
            raise PreconditionError("blocks must partition [0, 1) exactly")

    def block(self, point: str) -> IntervalSet:
        return self.blocks[self.space.index(point)]


def law(x: SimpleRandomVariable) -> Measure:
    """The distribution of x: weight of each point is its block's measure."""
    return Measure(x.space, tuple(b.measure for b in x.blocks))


def joint_coupling(x: SimpleRandomVariable, y: SimpleRandomVariable) -> CouplingMatrix:
    """Joint mass matrix measure(A_i & B_j); couples law(x) with law(y)."""
    same_space(x.space, y.space)
    mass = tuple(
        tuple(a.intersect(b).measure for b in y.blocks) for a in x.blocks
    )
    return CouplingMatrix(x.space, mass)


def kyfan_rho(x: SimpleRandomVariable, y: SimpleRandomVariable) -> Fraction:
    """inf{eps > 0 : P(d(x, y) >= eps) <= eps}, exact."""
    return kyfan_functional(joint_coupling(x, y))


def realize_coupling(x: SimpleRandomVariable, pi: CouplingMatrix) -> SimpleRandomVariable:
    """A variable y with measure(A_i & B_j) = pi[i][j] for all i, j.

    Requires the row marginal of pi to equal law(x).  Deterministic: the
    j-th piece of the leftmost split of each block A_i by its pi row goes
    to B_j.  Consequently law(y) is the column marginal and
    kyfan_rho(x, y) = kyfan_functional(pi).
    """
    same_space(x.space, pi.space)
    if law(x) != pi.row_marginal():
        raise PreconditionError("row marginal of the coupling differs from law(x)")
    m = x.space.size
    pieces = [x.blocks[i].split(pi.mass[i]) for i in range(m)]
    new_blocks = tuple(
        IntervalSet.union_all(pieces[i][j] for i in range(m)) for j in range(m)
    )
    return SimpleRandomVariable(x.space, new_blocks)


def match_to_law(x: SimpleRandomVariable, nu: Measure) -> SimpleRandomVariable:
    """The best rearrangement of x with law nu.

    Returns y with law(y) = nu and kyfan_rho(x, y) equal to the
    Prokhorov distance between law(x) and nu, both exactly.
    """
    same_space(x.space, nu.space)
    _, witness = prokhorov_coupling(law(x), nu)
    return realize_coupling(x, witness)


def canonical_rv(nu: Measure) -> SimpleRandomVariable:
    """Consecutive leftmost slabs of [0, 1) with lengths nu.weights."""
    parts = IntervalSet.full().split(nu.weights)
    return SimpleRandomVariable(nu.space, tuple(parts))
