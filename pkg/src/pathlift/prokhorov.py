"""The Prokhorov metric on finite spaces, computed two independent ways.

``prokhorov_coupling`` minimizes the Ky Fan functional over couplings of
the two measures: for each threshold interval between consecutive
distinct distances it computes, by exact bipartite max-flow, the largest
mass routable through point pairs closer than the threshold, and takes
the best feasible epsilon.  It returns the optimal value together with a
deterministic witness coupling attaining it.

``prokhorov_subsets`` is the enumeration oracle over the defining
inequalities mu(A) <= nu(A^eps) + eps for every subset A of the (finite)
space, with A^eps the open eps-neighborhood.  Both routes share only the
one-dimensional step-function infimum; everything else is independent,
and the two values agree exactly (checked by the test suite on random
instances).
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .errors import InvariantError, PreconditionError
from .omega import ONE, ZERO
from .spaces import CouplingMatrix, Measure, same_space

SUBSET_ORACLE_LIMIT = 16


def _upward_infimum(cuts: list[Fraction], values: list[Fraction]) -> Fraction:
    """Infimum of the upward-closed set {eps > 0 : step(eps) <= eps}.

    ``step`` is the left-continuous nonincreasing function equal to
    values[k] on (cuts[k-1], cuts[k]], with cuts[-1] treated as 0 and a
    final interval (cuts[-1], infinity).  values must have exactly
    len(cuts) + 1 entries and end nonpositive or below every threshold.
    """
    if len(values) != len(cuts) + 1:
        raise InvariantError("step function shape mismatch")
    best = None
    lo = ZERO
    for k, val in enumerate(values):
        hi = cuts[k] if k < len(cuts) else None
        cand = max(lo, val)
        if hi is None or cand <= hi:
            if best is None or cand < best:
                best = cand
        if hi is not None:
            lo = hi
    if best is None:
        raise InvariantError("no feasible threshold interval")
    return best


def kyfan_functional(pi: CouplingMatrix) -> Fraction:
    """inf{eps > 0 : pi{(x, y) : d(x, y) >= eps} <= eps}, exact."""
    space = pi.space
    m = space.size
    cuts = space.distinct_distances()
    values = []
    for cut in cuts:
        tail = ZERO
        for i in range(m):
            for j in range(m):
                if space.dist[i][j] >= cut:
                    tail += pi.mass[i][j]
        values.append(tail)
    values.append(ZERO)
    return _upward_infimum(cuts, values)


class _FlowState:
    """Bipartite max-flow with exact capacities, warm-started as the
    allowed edge set grows.  Rows feed from the source with capacities
    mu, columns drain to the sink with capacities nu; allowed row-column
    edges are uncapacitated."""

    def __init__(self, mu_w, nu_w):
        self.m = len(mu_w)
        self.mu_w = list(mu_w)
        self.nu_w = list(nu_w)
        self.flow = [[ZERO] * self.m for _ in range(self.m)]
        self.allowed = [[False] * self.m for _ in range(self.m)]
        self.value = ZERO

    def row_slack(self, i):
        return self.mu_w[i] - sum(self.flow[i], ZERO)

    def col_slack(self, j):
        return self.nu_w[j] - sum((self.flow[i][j] for i in range(self.m)), ZERO)

    def allow(self, i, j):
        self.allowed[i][j] = True

    def _augment_once(self):
        """One BFS round; returns the pushed amount (0 when optimal)."""
        m = self.m
        row_slack = [self.row_slack(i) for i in range(m)]
        col_slack = [self.col_slack(j) for j in range(m)]
        # parent[('r', i)] / parent[('c', j)] traces the augmenting path
        parent = {}
        queue = deque()
        for i in range(m):
            if row_slack[i] > ZERO:
                parent[("r", i)] = None
                queue.append(("r", i))
        target = None
        while queue and target is None:
            kind, idx = queue.popleft()
            if kind == "r":
                for j in range(m):
                    if self.allowed[idx][j] and ("c", j) not in parent:
                        parent[("c", j)] = ("r", idx)
                        if col_slack[j] > ZERO:
                            target = ("c", j)
                            break
                        queue.append(("c", j))
            else:
                for i in range(m):
                    if self.flow[i][idx] > ZERO and ("r", i) not in parent:
                        parent[("r", i)] = ("c", idx)
                        queue.append(("r", i))
        if target is None:
            return ZERO
        # bottleneck along source -> ... -> target
        path = []
        node = target
        while parent[node] is not None:
            path.append((parent[node], node))
            node = parent[node]
        start_row = node[1]
        bottleneck = min(row_slack[start_row], col_slack[target[1]])
        for a, b in path:
            if a[0] == "c" and b[0] == "r":
                bottleneck = min(bottleneck, self.flow[b[1]][a[1]])
        for a, b in path:
            if a[0] == "r" and b[0] == "c":
                self.flow[a[1]][b[1]] += bottleneck
            else:
                self.flow[b[1]][a[1]] -= bottleneck
        self.value += bottleneck
        return bottleneck

    def maximize(self):
        while self._augment_once() > ZERO:
            pass
        return self.value


def prokhorov_coupling(mu: Measure, nu: Measure) -> tuple[Fraction, CouplingMatrix]:
    """The Prokhorov distance and a witness coupling attaining it.

    The witness is deterministic: threshold intervals are scanned in
    increasing order with a warm-started max-flow, and leftover mass is
    distributed by northwest-corner filling over the marginal deficits.
    """
    same_space(mu.space, nu.space)
    space = mu.space
    m = space.size
    cuts = space.distinct_distances()
    state = _FlowState(mu.weights, nu.weights)

    best = None          # (value, flow snapshot)
    lo = ZERO
    for k in range(len(cuts) + 1):
        hi = cuts[k] if k < len(cuts) else None
        if best is not None and lo >= best[0]:
            break  # candidates only grow with the interval's left edge
        # edges with d <= lo are available throughout (lo, hi]
        for i in range(m):
            for j in range(m):
                if not state.allowed[i][j] and space.dist[i][j] <= lo:
                    state.allow(i, j)
        routed = state.maximize()
        cand = max(lo, ONE - routed)
        if (hi is None or cand <= hi) and (best is None or cand < best[0]):
            best = (cand, [row[:] for row in state.flow])
        if hi is not None:
            lo = hi
    if best is None:
        raise InvariantError("no feasible threshold interval for the coupling scan")
    value, flow = best
    # complete the witness: route marginal deficits northwest-corner
    row_rem = [mu.weights[i] - sum(flow[i], ZERO) for i in range(m)]
    col_rem = [
        nu.weights[j] - sum((flow[i][j] for i in range(m)), ZERO) for j in range(m)
    ]
    i = j = 0
    while i < m and j < m:
        if row_rem[i] == ZERO:
            i += 1
            continue
        if col_rem[j] == ZERO:
            j += 1
            continue
        push = min(row_rem[i], col_rem[j])
        flow[i][j] += push
        row_rem[i] -= push
        col_rem[j] -= push
    if any(r != ZERO for r in row_rem) or any(c != ZERO for c in col_rem):
        raise InvariantError("witness coupling does not match the marginals")
    witness = CouplingMatrix(space, tuple(tuple(row) for row in flow))
    attained = kyfan_functional(witness)
    if attained != value:
        raise InvariantError(
            f"witness coupling attains {attained}, optimum claims {value}"
        )
    return value, witness


def prokhorov(mu: Measure, nu: Measure) -> Fraction:
    """The Prokhorov distance alone."""
    return prokhorov_coupling(mu, nu)[0]


def prokhorov_subsets(mu: Measure, nu: Measure) -> Fraction:
    """Enumeration oracle for the Prokhorov distance.

    Every subset of a finite space is closed, so the defining infimum is
    evaluated over all 2^m subsets; per subset the constraint is a step
    function of eps with jumps at the distances to the subset.  Guarded
    to m <= 16 points.
    """
    same_space(mu.space, nu.space)
    space = mu.space
    m = space.size
    if m > SUBSET_ORACLE_LIMIT:
        raise PreconditionError(
            f"subset oracle limited to {SUBSET_ORACLE_LIMIT} points, space has {m}"
        )
    best = ZERO
    for mask in range(1, 1 << m):
        members = [i for i in range(m) if mask >> i & 1]
        mu_a = sum((mu.weights[i] for i in members), ZERO)
        if mu_a <= best:
            continue  # this subset cannot force a larger epsilon
        # distance of every point to the subset
        gaps = [min(space.dist[x][i] for i in members) for x in range(m)]
        cuts = sorted({g for g in gaps if g > ZERO})
        values = []
        lo = ZERO
        for cut in cuts + [None]:
            near = sum((nu.weights[x] for x in range(m) if gaps[x] <= lo), ZERO)
            values.append(mu_a - near)
            lo = cut
        lower = _upward_infimum(cuts, values)
        if lower > best:
            best = lower
    return best
