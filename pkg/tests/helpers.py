"""Shared oracles and strategies for the test suite.

The oracles here are deliberately written from first principles, not by
calling the library code paths they check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from pathlift import IntervalSet, Measure, SimpleRandomVariable, validate_space
from pathlift.omega import ONE, ZERO

F = Fraction


def rho_scan_oracle(x: SimpleRandomVariable, y: SimpleRandomVariable) -> Fraction:
    """Direct-scan Ky Fan value: for each threshold interval, measure the
    union of cells at distance >= the next distinct distance and compare
    with the threshold candidates."""
    space = x.space
    m = space.size
    cuts = sorted(
        {space.dist[i][j] for i in range(m) for j in range(m) if i != j}
    )
    best = None
    lo = ZERO
    for cut in cuts + [None]:
        if cut is None:
            far_mass = ZERO
        else:
            far = IntervalSet.empty()
            for i in range(m):
                for j in range(m):
                    if space.dist[i][j] >= cut:
                        far = far.union(x.blocks[i].intersect(y.blocks[j]))
            far_mass = far.measure
        cand = max(lo, far_mass)
        if cut is None or cand <= cut:
            if best is None or cand < best:
                best = cand
        lo = cut
    return best


def vertex_couplings(mu: Measure, nu: Measure) -> list[tuple[tuple[Fraction, ...], ...]]:
    """All vertices of the transportation polytope of (mu, nu).

    Every vertex is the unique solution supported on some spanning tree
    of the bipartite row/column graph; enumerate all 2m-1 edge trees,
    solve by peeling leaves, keep the nonnegative solutions.
    """
    m = mu.space.size
    edges = [(i, j) for i in range(m) for j in range(m)]
    found = set()
    for tree in combinations(edges, 2 * m - 1):
        solution = _solve_tree(m, tree, mu.weights, nu.weights)
        if solution is not None:
            found.add(solution)
    return sorted(found)


def _solve_tree(m, tree, row_w, col_w):
    degree = {("r", i): 0 for i in range(m)}
    degree.update({("c", j): 0 for j in range(m)})
    for i, j in tree:
        degree[("r", i)] += 1
        degree[("c", j)] += 1
    if any(d == 0 for d in degree.values()):
        return None
    remaining_row = list(row_w)
    remaining_col = list(col_w)
    alive = set(tree)
    values = {}
    while alive:
        leaf_edge = None
        for i, j in alive:
            if degree[("r", i)] == 1:
                leaf_edge, amount = (i, j), remaining_row[i]
                break
            if degree[("c", j)] == 1:
                leaf_edge, amount = (i, j), remaining_col[j]
                break
        if leaf_edge is None:
            return None  # a cycle: not a tree
        i, j = leaf_edge
        if amount < 0:
            return None
        values[leaf_edge] = amount
        remaining_row[i] -= amount
        remaining_col[j] -= amount
        degree[("r", i)] -= 1
        degree[("c", j)] -= 1
        alive.remove(leaf_edge)
    if any(r != 0 for r in remaining_row) or any(c != 0 for c in remaining_col):
        return None
    if any(v < 0 for v in values.values()):
        return None
    matrix = tuple(
        tuple(values.get((i, j), ZERO) for j in range(m)) for i in range(m)
    )
    return matrix


# -- hypothesis strategies ---------------------------------------------

@st.composite
def fractions01(draw, max_den: int = 16):
    den = draw(st.integers(1, max_den))
    return Fraction(draw(st.integers(0, den)), den)


@st.composite
def interval_sets(draw, den: int = 32, max_cuts: int = 8):
    cuts = sorted(draw(st.lists(st.integers(0, den), max_size=max_cuts, unique=True)))
    pairs = [
        (Fraction(cuts[k], den), Fraction(cuts[k + 1], den))
        for k in range(0, len(cuts) - 1, 2)
    ]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return IntervalSet.from_pairs(p for p, keep in zip(pairs, mask) if keep)


@st.composite
def metric_spaces(draw, min_size: int = 2, max_size: int = 4):
    m = draw(st.integers(min_size, max_size))
    names = "abcdefgh"[:m]
    d = [[ZERO] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            # entries within a factor of two satisfy the triangle inequality
            d[i][j] = d[j][i] = Fraction(draw(st.integers(4, 8)), 8)
    return validate_space(list(names), d)


@st.composite
def measures_on(draw, space, den: int = 24):
    cuts = sorted(
        draw(
            st.lists(
                st.integers(0, den), min_size=space.size - 1, max_size=space.size - 1
            )
        )
    )
    bounds = [0] + cuts + [den]
    return Measure(
        space, tuple(Fraction(bounds[k + 1] - bounds[k], den) for k in range(space.size))
    )


@st.composite
def rvs_on(draw, space, den: int = 24, max_slabs: int = 6):
    cuts = sorted(
        draw(st.lists(st.integers(1, den - 1), unique=True, max_size=max_slabs - 1))
    )
    bounds = [ZERO] + [Fraction(c, den) for c in cuts] + [ONE]
    labels = draw(
        st.lists(
            st.integers(0, space.size - 1),
            min_size=len(bounds) - 1,
            max_size=len(bounds) - 1,
        )
    )
    pieces = [[] for _ in range(space.size)]
    for (lo, hi), lab in zip(zip(bounds, bounds[1:]), labels):
        pieces[lab].append((lo, hi))
    return SimpleRandomVariable(
        space, tuple(IntervalSet.from_pairs(p) for p in pieces)
    )


@st.composite
def space_with(draw, n_measures: int = 0, n_rvs: int = 0, max_size: int = 4):
    space = draw(metric_spaces(max_size=max_size))
    measures = tuple(draw(measures_on(space)) for _ in range(n_measures))
    variables = tuple(draw(rvs_on(space)) for _ in range(n_rvs))
    return (space,) + measures + variables
