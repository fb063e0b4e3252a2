"""Exhaustive ground-truth solver plus the cheap size gate.

``min_critical_set`` enumerates candidate sets smallest-first and checks
each with the one-step test, so the first hit is the optimum.  Before
enumerating it derives memberships that every solution within the size cap
must respect (see ``_propagate``); every rule is sound, and every surviving
candidate is still verified by ``is_critical_set``, so pruning can never
manufacture a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import Instance, is_critical_set


class Outcome(Enum):
    YES = "yes"
    NO = "no"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class SolveResult:
    outcome: Outcome
    witness: tuple[int, ...] | None = None
    optimum: int | None = None

    @property
    def decided_yes(self) -> bool:
        return self.outcome is Outcome.YES


@dataclass(frozen=True)
class ForcedSets:
    include: frozenset[int]
    exclude: frozenset[int]

    @property
    def conflict(self) -> frozenset[int]:
        return self.include & self.exclude

    @property
    def feasible(self) -> bool:
        return not self.conflict


DEFAULT_WORK_LIMIT = 2_000_000


def lower_bound(inst: Instance) -> int:
    """ceil(n / max threshold); no critical set can be smaller.

    Each member may pull in at most max_threshold - 1 outsiders without
    flipping back, and members count themselves.
    """
    mf = inst.max_threshold
    return -(-inst.n // mf)


def forced_sets(inst: Instance) -> ForcedSets:
    """Budget-k membership forced by thresholds and degrees alone.

    A vertex with threshold above k can never be flipped by at most k
    starters, so it must be a starter.  A vertex with degree - k >= threshold
    would flip back out of any set of size at most k.  A vertex in both
    camps makes the instance infeasible.
    """
    g = inst.graph
    f = inst.thresholds
    k = inst.k
    include = frozenset(v for v in range(g.n) if f[v] > k)
    exclude = frozenset(v for v in range(g.n) if g.degree(v) - k >= f[v])
    return ForcedSets(include, exclude)


class _Infeasible(Exception):
    pass


def _propagate(inst: Instance, cap: int) -> tuple[set[int], set[int]]:
    """Fixpoint of sound membership rules at size cap ``cap``.

    Rules (each one valid for *every* critical set S with |S| <= cap):
      - threshold > cap, or threshold > degree: v can never flip, so v in S;
      - degree - cap >= threshold: v would flip back, so v not in S;
      - a threshold-1 member flips unless all its neighbors are members,
        so a threshold-1 vertex next to a non-member cannot be a member,
        and neighbors of a threshold-1 member are members;
      - an outsider needs threshold-many supporting members among its
        neighbors, and a supporter next to an outsider must itself tolerate
        an opposite neighbor (threshold >= 2); too few eligible supporters
        force the vertex in;
      - a member may keep at most threshold-1 outside neighbors; when that
        bound is tight the rest of its neighborhood is forced in.
    Raises _Infeasible when the rules contradict each other.
    """
    g = inst.graph
    f = inst.thresholds
    n = g.n
    include = {v for v in range(n) if f[v] > cap or f[v] > g.degree(v)}
    exclude = {v for v in range(n) if g.degree(v) - cap >= f[v]}

    changed = True
    while changed:
        changed = False
        if include & exclude:
            raise _Infeasible
        for v in range(n):
            in_v = v in include
            out_v = v in exclude
            nbrs = g.adj[v]
            if in_v:
                out_n = sum(1 for u in nbrs if u in exclude)
                if out_n >= f[v]:
                    raise _Infeasible
                if out_n == f[v] - 1:
                    for u in nbrs:
                        if u not in include and u not in exclude:
                            include.add(u)
                            changed = True
            elif out_v:
                if any(u in include and f[u] == 1 for u in nbrs):
                    raise _Infeasible
                eligible = [u for u in nbrs if u not in exclude and f[u] >= 2]
                if len(eligible) < f[v]:
                    raise _Infeasible
                if len(eligible) == f[v]:
                    for u in eligible:
                        if u not in include:
                            include.add(u)
                            changed = True
            else:
                if f[v] == 1 and any(u in exclude for u in nbrs):
                    exclude.add(v)
                    changed = True
                    continue
                if any(u in include and f[u] == 1 for u in nbrs):
                    include.add(v)
                    changed = True
                    continue
                if sum(1 for u in nbrs if u in exclude) >= f[v]:
                    # Could not hold its state as a member.
                    exclude.add(v)
                    changed = True
                    continue
                eligible = sum(1 for u in nbrs if u not in exclude and f[u] >= 2)
                if eligible < f[v]:
                    include.add(v)
                    changed = True
    return include, exclude


def _implication_blocks(
    inst: Instance, include: set[int], exclude: set[int]
) -> tuple[list[tuple[int, ...]], list[frozenset[int]]]:
    """Group undecided vertices into all-or-nothing blocks.

    A threshold-1 member drags its whole neighborhood into the set, so the
    strongly connected components of those implications must be taken or
    left whole; taking a block also requires every block it reaches.
    Returns the blocks (sorted) and, per block, the closure of block
    indices that must accompany it.
    """
    g = inst.graph
    f = inst.thresholds
    undecided = [v for v in range(g.n) if v not in include and v not in exclude]
    succ: dict[int, list[int]] = {v: [] for v in undecided}
    for v in undecided:
        if f[v] == 1:
            for u in g.adj[v]:
                if u in succ:
                    succ[v].append(u)

    # Kosaraju with explicit stacks; graphs here are small but may chain.
    order: list[int] = []
    seen: set[int] = set()
    for root in undecided:
        if root in seen:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        seen.add(root)
        while stack:
            v, i = stack.pop()
            if i < len(succ[v]):
                stack.append((v, i + 1))
                u = succ[v][i]
                if u not in seen:
                    seen.add(u)
                    stack.append((u, 0))
            else:
                order.append(v)
    pred: dict[int, list[int]] = {v: [] for v in undecided}
    for v in undecided:
        for u in succ[v]:
            pred[u].append(v)
    comp: dict[int, int] = {}
    blocks: list[list[int]] = []
    for root in reversed(order):
        if root in comp:
            continue
        cid = len(blocks)
        members = [root]
        comp[root] = cid
        stack2 = [root]
        while stack2:
            v = stack2.pop()
            for u in pred[v]:
                if u not in comp:
                    comp[u] = cid
                    members.append(u)
                    stack2.append(u)
        blocks.append(sorted(members))

    blocks_sorted = sorted(blocks, key=lambda b: b[0])
    remap = {comp[b[0]]: i for i, b in enumerate(blocks_sorted)}
    edges: list[set[int]] = [set() for _ in blocks_sorted]
    for v in undecided:
        for u in succ[v]:
            a, b = remap[comp[v]], remap[comp[u]]
            if a != b:
                edges[a].add(b)
    closures: list[frozenset[int]] = []
    for i in range(len(blocks_sorted)):
        reach = {i}
        stack3 = [i]
        while stack3:
            a = stack3.pop()
            for b in edges[a]:
                if b not in reach:
                    reach.add(b)
                    stack3.append(b)
        closures.append(frozenset(reach))
    return [tuple(b) for b in blocks_sorted], closures


def min_critical_set(
    inst: Instance, size_cap: int, work_limit: int | None = None
) -> SolveResult:
    """Smallest critical set of size <= size_cap, or NO, exactly.

    Candidates are generated smallest-first and lexicographically within a
    size, restricted to the forced memberships and implication blocks that
    every solution must respect; each candidate is verified with the
    one-step test.  Hitting the work limit is reported as EXHAUSTED, never
    as NO.
    """
    if size_cap > inst.n:
        raise ValueError("size_cap exceeds vertex count")
    limit = DEFAULT_WORK_LIMIT if work_limit is None else work_limit
    try:
        include, exclude = _propagate(inst, size_cap)
    except _Infeasible:
        return SolveResult(Outcome.NO)
    if len(include) > size_cap:
        return SolveResult(Outcome.NO)

    blocks, closures = _implication_blocks(inst, include, exclude)
    nb = len(blocks)
    base = sorted(include)
    budget = size_cap - len(base)
    sizes = [len(b) for b in blocks]

    # Bucket candidate block subsets by total added size; branches that
    # already exceed the remaining budget are cut, so the walk never sees
    # the full 2^nb space unless the budget allows it.
    buckets: dict[int, list[tuple[int, ...]]] = {s: [] for s in range(budget + 1)}
    generated = 0
    cap_generated = 8 * limit

    stack: list[tuple[int, int, tuple[int, ...]]] = [(0, 0, ())]
    while stack:
        start, total, chosen = stack.pop()
        chosen_set = frozenset(chosen)
        if all(closures[i] <= chosen_set for i in chosen):
            buckets[total].append(chosen)
            generated += 1
            if generated > cap_generated:
                return SolveResult(Outcome.EXHAUSTED)
        for i in range(start, nb):
            if total + sizes[i] <= budget:
                stack.append((i + 1, total + sizes[i], chosen + (i,)))

    examined = 0
    for s in range(budget + 1):
        sized = [
            tuple(sorted(base + [v for i in chosen for v in blocks[i]]))
            for chosen in buckets[s]
        ]
        for verts in sorted(sized):
            if examined >= limit:
                return SolveResult(Outcome.EXHAUSTED)
            examined += 1
            if is_critical_set(inst, verts):
                return SolveResult(Outcome.YES, witness=verts, optimum=len(verts))
    return SolveResult(Outcome.NO)


def decide_kmf(inst: Instance, work_limit: int | None = None) -> SolveResult:
    """Budget-k decision behind the k * max_threshold >= n gate.

    When k times the largest threshold is below n, the size lower bound
    already rules out any critical set of size at most k, so the search is
    skipped entirely.
    """
    if inst.k * inst.max_threshold < inst.n:
        return SolveResult(Outcome.NO)
    return min_critical_set(inst, min(inst.k, inst.n), work_limit=work_limit)
