"""Graphs, per-vertex thresholds, the synchronous flip dynamics, and the
one-step critical-set test that every solver in this package treats as
ground truth.

A state vector assigns 0/1 to every vertex.  At each step all vertices
update at once: v flips iff at least ``thresholds[v]`` of its neighbors
currently hold the opposite state.  A vertex set S is critical when the
process started from S's indicator vector is all-ones after one step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Config = tuple[int, ...]

FIXED_POINT = "fixed-point"
CYCLE = "cycle-detected"
STEP_LIMIT = "step-limit"


class GraphError(ValueError):
    """Raised when edge data does not describe a simple graph."""


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Immutable after construction; adjacency is kept as sorted tuples and,
    lazily, as per-vertex bitmasks for the hot counting loops.
    """

    __slots__ = ("n", "edges", "adj", "degrees", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.degrees: tuple[int, ...] = tuple(len(a) for a in self.adj)
        self._masks: tuple[int, ...] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @property
    def neighbor_masks(self) -> tuple[int, ...]:
        if self._masks is None:
            masks = []
            for v in range(self.n):
                m = 0
                for u in self.adj[v]:
                    m |= 1 << u
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def connected_within(self, verts: Iterable[int]) -> bool:
        """True iff the subgraph induced by ``verts`` is connected (or empty)."""
        vs = set(verts)
        if len(vs) <= 1:
            return True
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self.adj[v]:
                if u in vs and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == len(vs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Instance:
    """A connected graph, a valid threshold per vertex, and a budget k >= 1."""

    graph: Graph
    thresholds: tuple[int, ...]
    k: int

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def max_threshold(self) -> int:
        return max(self.thresholds)

    def with_budget(self, k: int) -> "Instance":
        return Instance(self.graph, self.thresholds, k)


@dataclass(frozen=True)
class Issue:
    kind: str
    vertex: int | None
    message: str


class InvalidInstanceError(ValueError):
    """Carries every violated invariant found during validation."""

    def __init__(self, issues: Sequence[Issue]):
        self.issues = tuple(issues)
        super().__init__("; ".join(i.message for i in self.issues))


def validate_instance(
    n: int,
    edges: Iterable[tuple[int, int]],
    thresholds: Sequence[int],
    k: int,
) -> Instance:
    """Build an Instance, reporting every violated invariant at once.

    Checks: simple graph, connectivity, 1 <= threshold <= degree+1 per
    vertex, and budget >= 1.  A zero threshold is reported separately
    because such a vertex flips forever and no critical set can exist.
    """
    issues: list[Issue] = []
    clean: set[tuple[int, int]] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            issues.append(Issue("bad-vertex", None, f"edge ({u}, {v}) out of range"))
            continue
        if u == v:
            issues.append(Issue("self-loop", u, f"self-loop at vertex {u}"))
            continue
        e = (u, v) if u < v else (v, u)
        if e in clean:
            issues.append(Issue("duplicate-edge", u, f"duplicate edge {e}"))
            continue
        clean.add(e)

    if n < 1:
        issues.append(Issue("empty-graph", None, "graph has no vertices"))
        raise InvalidInstanceError(issues)

    graph = Graph(n, clean)
    if len(thresholds) != n:
        issues.append(
            Issue("threshold-count", None,
                  f"expected {n} thresholds, got {len(thresholds)}")
        )
    else:
        for v, f in enumerate(thresholds):
            if f == 0:
                issues.append(Issue("zero-threshold", v, f"vertex {v} has threshold 0"))
            elif f < 0 or f > graph.degree(v) + 1:
                issues.append(
                    Issue("threshold-above-degree", v,
                          f"vertex {v}: threshold {f} exceeds degree+1 = {graph.degree(v) + 1}")
                )
    if not graph.is_connected():
        issues.append(Issue("disconnected", None, "graph is not connected"))
    if k < 1:
        issues.append(Issue("bad-budget", None, f"budget k={k} must be at least 1"))

    if issues:
        raise InvalidInstanceError(issues)
    return Instance(graph, tuple(thresholds), k)


def indicator(n: int, members: Iterable[int]) -> Config:
    states = [0] * n
    for v in members:
        states[v] = 1
    return tuple(states)


def step(inst: Instance, config: Config) -> Config:
    """One synchronous update of the whole state vector."""
    g = inst.graph
    f = inst.thresholds
    out = []
    for v in range(g.n):
        s = config[v]
        opposite = 0
        for u in g.adj[v]:
            if config[u] != s:
                opposite += 1
        out.append(1 - s if opposite >= f[v] else s)
    return tuple(out)


@dataclass(frozen=True)
class Trace:
    """A simulated run: states[t] is the configuration at time t."""

    states: tuple[Config, ...]
    reason: str

    def converges_by(self, t: int) -> bool:
        # All-ones is a fixed point whenever every threshold is >= 1, so
        # seeing it anywhere up to time t means the run has converged.
        limit = min(t, len(self.states) - 1)
        return any(all(s == 1 for s in cfg) for cfg in self.states[: limit + 1])


def simulate(inst: Instance, initial: Config, step_limit: int) -> Trace:
    """Run the dynamics until a fixed point, a revisited state, or the limit.

    The state space is finite and the update deterministic, so with a large
    enough limit every run ends in a fixed point or a cycle.
    """
    if step_limit < 1:
        raise ValueError("step_limit must be at least 1")
    states = [initial]
    seen = {initial: 0}
    current = initial
    for _ in range(step_limit):
        nxt = step(inst, current)
        if nxt == current:
            return Trace(tuple(states), FIXED_POINT)
        if nxt in seen:
            states.append(nxt)
            return Trace(tuple(states), CYCLE)
        states.append(nxt)
        seen[nxt] = len(states) - 1
        current = nxt
    return Trace(tuple(states), STEP_LIMIT)


def _member_mask(n: int, members: Iterable[int]) -> int:
    mask = 0
    for v in members:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range")
        mask |= 1 << v
    return mask


def is_critical_set(inst: Instance, members: Iterable[int]) -> bool:
    """One-step test: every outsider gains enough inside neighbors to flip,
    and no insider sees enough outside neighbors to flip back."""
    g = inst.graph
    f = inst.thresholds
    mask = _member_mask(g.n, members)
    masks = g.neighbor_masks
    for v in range(g.n):
        inside_nbrs = (masks[v] & mask).bit_count()
        if (mask >> v) & 1:
            if g.degrees[v] - inside_nbrs >= f[v]:
                return False
        else:
            if inside_nbrs < f[v]:
                return False
    return True


def first_violation(inst: Instance, members: Iterable[int]) -> tuple[int, str] | None:
    """A vertex witnessing that ``members`` is not critical.

    Outsiders that cannot flip are reported first as (vertex, "stays-zero"),
    then insiders that flip back as (vertex, "drops-out"); None if critical.
    """
    g = inst.graph
    f = inst.thresholds
    mask = _member_mask(g.n, members)
    masks = g.neighbor_masks
    for v in range(g.n):
        if not (mask >> v) & 1 and (masks[v] & mask).bit_count() < f[v]:
            return v, "stays-zero"
    for v in range(g.n):
        if (mask >> v) & 1 and g.degrees[v] - (masks[v] & mask).bit_count() >= f[v]:
            return v, "drops-out"
    return None
