"""Budget-parameterized exact decision.

The search partitions vertices into those every small solution must take
(``required``), low-degree vertices it may take (``flexible``) and vertices
it can never take (``barred``).  For each choice of ``picks`` among the
still-open flexible vertices it enumerates connected candidate pieces whose
members can hold their state, classifies them by size and by how many
neighbors they give each open vertex, and asks for pairwise-compatible
representatives of classes whose combined influence meets every demand.
Compatibility is an independent-set question on a conflict graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .core import Graph, Instance, is_critical_set
from .oracle import Outcome, SolveResult


@dataclass(frozen=True)
class Partition:
    """Budget-k trichotomy plus the vertices still unsettled by ``required``.

    ``required`` must be inside every solution of size <= k, ``barred`` can
    never be, ``flexible`` is undetermined and has degree <= 2k-1.
    ``conflicts`` holds vertices that are simultaneously unflippable and
    unable to hold state; any such vertex makes the instance a NO.
    The ``*_open`` sets are the members whose state at time 1 is not yet
    guaranteed when only ``required`` is taken.
    """

    required: frozenset[int]
    flexible: frozenset[int]
    barred: frozenset[int]
    required_open: frozenset[int]
    flexible_open: frozenset[int]
    barred_open: frozenset[int]
    conflicts: frozenset[int] = frozenset()

    @property
    def open_order(self) -> tuple[int, ...]:
        return tuple(sorted(self.required_open | self.flexible_open | self.barred_open))


@dataclass(frozen=True)
class ClassKey:
    """Piece class: member count plus neighbor counts on the open vertices
    (aligned with Partition.open_order)."""

    size: int
    influence: tuple[int, ...]


@dataclass(frozen=True)
class PieceFamily:
    """Connected candidate pieces compatible with a given ``picks`` set.

    Contains the empty piece, and every connected set S of settled flexible
    vertices within the size budget whose members all keep their state when
    required + picks + S start the process.
    """

    picks: frozenset[int]
    pieces: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class ConflictGraph:
    """One node per (slot, piece); edges forbid co-selection."""

    members: tuple[tuple[int, frozenset[int]], ...]
    graph: Graph


def partition(inst: Instance) -> Partition:
    k = inst.k
    g = inst.graph
    f = inst.thresholds
    required = set()
    flexible = set()
    barred = set()
    conflicts = set()
    for v in range(g.n):
        unflippable = f[v] > k
        drops_out = g.degree(v) - k >= f[v]
        if unflippable and not drops_out:
            required.add(v)
        elif not unflippable and not drops_out:
            flexible.add(v)
        elif not unflippable and drops_out:
            barred.add(v)
        else:
            conflicts.add(v)

    def nbrs_outside_required(v: int) -> int:
        return sum(1 for u in g.adj[v] if u not in required)

    def nbrs_in_required(v: int) -> int:
        return sum(1 for u in g.adj[v] if u in required)

    required_open = frozenset(v for v in required if nbrs_outside_required(v) >= f[v])
    flexible_open = frozenset(v for v in flexible if nbrs_in_required(v) < f[v])
    barred_open = frozenset(v for v in barred if nbrs_in_required(v) < f[v])
    return Partition(
        frozenset(required),
        frozenset(flexible),
        frozenset(barred),
        required_open,
        flexible_open,
        barred_open,
        frozenset(conflicts),
    )


def feasibility_gate(inst: Instance, part: Partition) -> bool:
    """False when the instance is already a NO: too many required vertices,
    too many open vertices for any budget-k solution to reach, or a vertex
    that must be taken but cannot hold its state."""
    k = inst.k
    if part.conflicts:
        return False
    if len(part.required) > k:
        return False
    if len(part.open_order) > 2 * k * k:
        return False
    return True


def connected_subsets(
    graph: Graph, ground: Iterable[int], max_size: int
) -> list[frozenset[int]]:
    """All nonempty vertex sets within ``ground`` of size <= max_size that
    induce connected subgraphs; deduplicated, ordered by size then members."""
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    ground_set = set(ground)
    found: set[frozenset[int]] = {frozenset((v,)) for v in ground_set}
    stack = list(found)
    while stack:
        cur = stack.pop()
        if len(cur) == max_size:
            continue
        for u in cur:
            for w in graph.adj[u]:
                if w in ground_set and w not in cur:
                    nxt = cur | {w}
                    if nxt not in found:
                        found.add(nxt)
                        stack.append(nxt)
    return sorted(found, key=lambda s: (len(s), tuple(sorted(s))))


def _holds_state(
    inst: Instance, part: Partition, picks: frozenset[int], piece: frozenset[int]
) -> bool:
    solution = part.required | picks | piece
    f = inst.thresholds
    for v in piece:
        outside = sum(1 for u in inst.graph.adj[v] if u not in solution)
        if outside >= f[v]:
            return False
    return True


def piece_family(inst: Instance, part: Partition, picks: frozenset[int]) -> PieceFamily:
    """Empty piece plus every connected settled-flexible piece within budget
    whose members all hold their state alongside required + picks."""
    budget = inst.k - len(part.required) - len(picks)
    if budget < 0:
        raise ValueError("picks exceed the remaining budget")
    pieces: list[frozenset[int]] = [frozenset()]
    if budget >= 1:
        ground = part.flexible - part.flexible_open
        for cand in connected_subsets(inst.graph, ground, budget):
            if _holds_state(inst, part, picks, cand):
                pieces.append(cand)
    return PieceFamily(picks, tuple(pieces))


def influence_of(inst: Instance, part: Partition, piece: frozenset[int]) -> tuple[int, ...]:
    masks = inst.graph.neighbor_masks
    pm = 0
    for v in piece:
        pm |= 1 << v
    return tuple((masks[v] & pm).bit_count() for v in part.open_order)


def classify(
    inst: Instance, part: Partition, family: PieceFamily
) -> dict[ClassKey, tuple[frozenset[int], ...]]:
    """Group family members by (size, influence profile); the groups are
    disjoint and jointly cover the family."""
    grouped: dict[ClassKey, list[frozenset[int]]] = {}
    for piece in family.pieces:
        key = ClassKey(len(piece), influence_of(inst, part, piece))
        grouped.setdefault(key, []).append(piece)
    return {
        key: tuple(sorted(members, key=lambda s: tuple(sorted(s))))
        for key, members in grouped.items()
    }


@lru_cache(maxsize=8192)
def _demand_pairs(
    inst: Instance, part: Partition, picks: frozenset[int]
) -> tuple[tuple[int, int], ...]:
    # Memoized: the baseline neighbor counts are fixed per picks choice and
    # the faithful sweep re-asks for them once per slot tuple.
    g = inst.graph
    f = inst.thresholds
    pairs = []
    for v in part.open_order:
        base = sum(1 for u in g.adj[v] if u in part.required or u in picks)
        if v in part.required_open or v in picks:
            pairs.append((v, g.degree(v) - f[v] + 1 - base))
        else:
            pairs.append((v, f[v] - base))
    return tuple(pairs)


def demand_table(
    inst: Instance, part: Partition, picks: frozenset[int]
) -> dict[int, int]:
    """Required piece-influence per open vertex, given required + picks.

    A vertex that must end up inside (required_open or picks) needs enough
    inside neighbors to hold: degree - threshold + 1 minus what required and
    picks already give.  A vertex that must flip (unpicked flexible_open or
    barred_open) needs threshold-many inside neighbors minus the same
    baseline.  Values <= 0 are already satisfied.
    """
    return dict(_demand_pairs(inst, part, picks))


def meets_demands(
    inst: Instance,
    part: Partition,
    picks: frozenset[int],
    keys: Sequence[ClassKey],
) -> bool:
    """True iff the summed influence of the slot classes covers every demand."""
    order = part.open_order
    index = {v: i for i, v in enumerate(order)}
    table = demand_table(inst, part, picks)
    for v, need in table.items():
        if need <= 0:
            continue
        if sum(key.influence[index[v]] for key in keys) < need:
            return False
    return True


def _pieces_conflict(graph: Graph, a: frozenset[int], b: frozenset[int]) -> bool:
    # Empty pieces conflict with nothing; duplicated nonempty pieces would
    # double-count vertices, so equality conflicts like adjacency does.
    if not a or not b:
        return False
    if a == b:
        return True
    return graph.connected_within(a | b)


def build_conflict_graph(
    graph: Graph,
    slots: Sequence[ClassKey],
    class_map: Mapping[ClassKey, Sequence[frozenset[int]]],
) -> ConflictGraph:
    """Conflict graph over (slot, piece) nodes: same-slot nodes all conflict,
    and across slots two pieces conflict iff their union is connected (which
    includes identical nonempty pieces)."""
    members: list[tuple[int, frozenset[int]]] = []
    for slot, key in enumerate(slots):
        if key not in class_map:
            raise ValueError(f"slot {slot} names an unrealized class {key}")
        for piece in class_map[key]:
            members.append((slot, piece))
    edges = []
    for i in range(len(members)):
        slot_i, piece_i = members[i]
        for j in range(i + 1, len(members)):
            slot_j, piece_j = members[j]
            if slot_i == slot_j or _pieces_conflict(graph, piece_i, piece_j):
                edges.append((i, j))
    return ConflictGraph(tuple(members), Graph(len(members), edges))


def greedy_independent_set(graph: Graph, k: int) -> tuple[int, ...] | None:
    """Repeatedly take a minimum-degree vertex and drop its closed
    neighborhood; finds k vertices whenever n >= (k-1) * (max_degree+1) + 1."""
    active = set(range(graph.n))
    picked: list[int] = []
    while len(picked) < k and active:
        v = min(active, key=lambda x: (sum(1 for u in graph.adj[x] if u in active), x))
        picked.append(v)
        active.discard(v)
        active.difference_update(graph.adj[v])
    if len(picked) < k:
        return None
    return tuple(sorted(picked))


def find_independent_set(graph: Graph, k: int) -> tuple[int, ...] | None:
    """k pairwise-nonadjacent vertices, or None if none exist.

    Large graphs are settled immediately by the counting kernel (greedy
    extraction is then guaranteed to succeed); otherwise branch over the
    closed neighborhood of a minimum-degree vertex.
    """
    if k <= 0:
        return ()
    masks = graph.neighbor_masks
    degrees = graph.degrees

    def solve(active: int, need: int) -> tuple[int, ...] | None:
        if need == 0:
            return ()
        count = active.bit_count()
        if count == 0:
            return None
        verts = [v for v in range(graph.n) if (active >> v) & 1]
        deg = {v: (masks[v] & active).bit_count() for v in verts}
        max_deg = max(deg.values())
        if count >= (need - 1) * (max_deg + 1) + 1:
            local: list[int] = []
            rem = active
            while len(local) < need:
                v = min(
                    (x for x in verts if (rem >> x) & 1),
                    key=lambda x: ((masks[x] & rem).bit_count(), x),
                )
                local.append(v)
                rem &= ~(1 << v)
                rem &= ~masks[v]
            return tuple(sorted(local))
        pivot = min(verts, key=lambda x: (deg[x], x))
        for u in sorted(set([pivot]) | {w for w in graph.adj[pivot] if (active >> w) & 1}):
            rest = solve(active & ~(1 << u) & ~masks[u], need - 1)
            if rest is not None:
                return tuple(sorted(rest + (u,)))
        return None

    if graph.n == 0:
        return None if k > 0 else ()
    return solve((1 << graph.n) - 1, k)


def _empty_key(part: Partition) -> ClassKey:
    return ClassKey(0, tuple(0 for _ in part.open_order))


def _pick_candidates(part: Partition, max_size: int) -> list[frozenset[int]]:
    pool = sorted(part.flexible_open)
    out: list[frozenset[int]] = []
    for size in range(max_size + 1):
        for combo in itertools.combinations(pool, size):
            out.append(frozenset(combo))
    return out


class _Exhausted(Exception):
    pass


class _SearchState:
    """Per-instance scratch: the shared base pieces, influence profiles, and
    a piece-pair conflict cache reused across all picks."""

    def __init__(self, inst: Instance, part: Partition):
        self.inst = inst
        self.part = part
        g = inst.graph
        self.base_budget = inst.k - len(part.required)
        ground = part.flexible - part.flexible_open
        self.base_pieces: list[frozenset[int]] = (
            connected_subsets(g, ground, self.base_budget)
            if self.base_budget >= 1 and ground
            else []
        )
        masks = g.neighbor_masks
        self.outside_base = {}
        for piece in self.base_pieces:
            solution_mask = 0
            for v in piece:
                solution_mask |= 1 << v
            for v in part.required:
                solution_mask |= 1 << v
            self.outside_base[piece] = {
                v: g.degree(v) - (masks[v] & solution_mask).bit_count() for v in piece
            }
        self.influences = {
            piece: influence_of(inst, part, piece) for piece in self.base_pieces
        }
        self._conflicts: dict[tuple, bool] = {}

    def holds_with(self, piece: frozenset[int], picks_mask: int) -> bool:
        masks = self.inst.graph.neighbor_masks
        f = self.inst.thresholds
        for v, outside in self.outside_base[piece].items():
            if outside - (masks[v] & picks_mask).bit_count() >= f[v]:
                return False
        return True

    def conflict(self, a: frozenset[int], b: frozenset[int]) -> bool:
        if a is b or a == b:
            return True
        key = (min(tuple(sorted(a)), tuple(sorted(b))), max(tuple(sorted(a)), tuple(sorted(b))))
        hit = self._conflicts.get(key)
        if hit is None:
            hit = self.inst.graph.connected_within(a | b)
            self._conflicts[key] = hit
        return hit


def _compatible_representatives(
    state: _SearchState, slots: list[list[frozenset[int]]]
) -> list[frozenset[int]] | None:
    """One piece per slot, pairwise non-conflicting, via the independent-set
    subroutine on the slot-expanded conflict graph."""
    members: list[tuple[int, frozenset[int]]] = []
    for slot, options in enumerate(slots):
        for piece in options:
            members.append((slot, piece))
    edges = []
    for i in range(len(members)):
        slot_i, piece_i = members[i]
        for j in range(i + 1, len(members)):
            slot_j, piece_j = members[j]
            if slot_i == slot_j or state.conflict(piece_i, piece_j):
                edges.append((i, j))
    picked = find_independent_set(Graph(len(members), edges), len(slots))
    if picked is None:
        return None
    return [members[i][1] for i in picked]


def _decide_for_picks(
    state: _SearchState, picks: frozenset[int], budget_left: int
) -> tuple[int, ...] | None:
    """Search one picks choice; returns a witness vertex tuple or None."""
    inst, part = state.inst, state.part
    k = inst.k
    picks_mask = 0
    for v in picks:
        picks_mask |= 1 << v

    table = demand_table(inst, part, picks)
    open_order = part.open_order
    index = {v: i for i, v in enumerate(open_order)}
    demanded = sorted(v for v, need in table.items() if need > 0)
    base = tuple(sorted(part.required | picks))
    if not demanded:
        return base

    if budget_left <= 0:
        return None

    # Realized piece classes, merged by their influence on the demanded
    # vertices only; classes with no such influence can never help.
    demand_idx = [index[v] for v in demanded]
    groups: dict[tuple[int, tuple[int, ...]], list[frozenset[int]]] = {}
    for piece in state.base_pieces:
        if len(piece) > budget_left:
            continue
        if not state.holds_with(piece, picks_mask):
            continue
        restricted = tuple(state.influences[piece][i] for i in demand_idx)
        if not any(restricted):
            continue
        groups.setdefault((len(piece), restricted), []).append(piece)
    if not groups:
        return None

    needs = [table[v] for v in demanded]
    max_slots = min(k, budget_left)
    best_cover = [0] * len(demanded)
    for (_, restricted) in groups:
        for i, val in enumerate(restricted):
            best_cover[i] = max(best_cover[i], val)
    if any(need > cover * max_slots for need, cover in zip(needs, best_cover)):
        return None

    group_keys = sorted(
        groups,
        key=lambda kv: (-sum(kv[1]), kv[0], kv[1]),
    )
    suffix_best: list[list[int]] = [[0] * len(demanded)]
    for gk in reversed(group_keys):
        prev = suffix_best[0]
        suffix_best.insert(
            0, [max(p, h) for p, h in zip(prev, gk[1])]
        )

    def search(idx: int, unmet: list[int], size_left: int, slots_left: int,
               chosen: list[tuple[int, tuple[int, ...]]]) -> list[frozenset[int]] | None:
        if all(u <= 0 for u in unmet):
            slot_options = [sorted(groups[gk], key=lambda s: tuple(sorted(s))) for gk in chosen]
            reps = _compatible_representatives(state, slot_options)
            return reps  # None prunes every extension: supersets only add conflicts
        if idx == len(group_keys) or slots_left == 0 or size_left == 0:
            return None
        best = suffix_best[idx]
        if any(u > b * slots_left for u, b in zip(unmet, best)):
            return None
        gk = group_keys[idx]
        size, restricted = gk
        max_mult = min(slots_left, len(groups[gk]), size_left // size if size else 0)
        for mult in range(max_mult, -1, -1):
            if mult:
                new_unmet = [
                    u - restricted[i] * mult for i, u in enumerate(unmet)
                ]
            else:
                new_unmet = unmet
            result = search(
                idx + 1,
                new_unmet,
                size_left - size * mult,
                slots_left - mult,
                chosen + [gk] * mult,
            )
            if result is not None:
                return result
        return None

    reps = search(0, needs, budget_left, max_slots, [])
    if reps is None:
        return None
    witness = set(base)
    for piece in reps:
        witness.update(piece)
    return tuple(sorted(witness))


def decide(
    inst: Instance,
    *,
    faithful: bool = False,
    workers: int = 1,
    work_limit: int | None = None,
) -> SolveResult:
    """YES iff some picks set and compatible pieces satisfy every demand.

    On YES the witness is required + picks + selected pieces, confirmed by
    the one-step test.  ``workers`` only fixes how the picks space is
    partitioned; every partition is scanned to its own first hit and the
    smallest-then-lexicographic hit wins, so results never depend on the
    worker count.  ``faithful`` switches to the literal slot-tuple sweep
    (intended for tiny instances only).
    """
    part = partition(inst)
    if not feasibility_gate(inst, part):
        return SolveResult(Outcome.NO)
    if faithful:
        return _decide_faithful(inst, part)

    state = _SearchState(inst, part)
    max_picks = inst.k - len(part.required)
    candidates = _pick_candidates(part, max_picks)
    workers = max(1, workers)
    slices = [candidates[w::workers] for w in range(workers)]

    budget_spent = 0
    limit = work_limit
    hits: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []
    try:
        for chunk in slices:
            for picks in chunk:
                if limit is not None:
                    budget_spent += 1
                    if budget_spent > limit:
                        raise _Exhausted
                witness = _decide_for_picks(
                    state, picks, inst.k - len(part.required) - len(picks)
                )
                if witness is not None:
                    hits.append((len(picks), tuple(sorted(picks)), witness))
                    break
    except _Exhausted:
        if not hits:
            return SolveResult(Outcome.EXHAUSTED)

    if not hits:
        return SolveResult(Outcome.NO)
    _, _, witness = min(hits)
    if not is_critical_set(inst, witness):
        raise RuntimeError(f"search produced a non-critical witness {witness}")
    return SolveResult(Outcome.YES, witness=witness)


def _decide_faithful(inst: Instance, part: Partition) -> SolveResult:
    """Literal sweep: every picks set, every slot-size tuple, every influence
    tuple per slot, demand check, conflict graph, independent set."""
    k = inst.k
    open_order = part.open_order
    max_picks = k - len(part.required)
    for picks in _pick_candidates(part, max_picks):
        family = piece_family(inst, part, picks)
        class_map = classify(inst, part, family)
        budget = k - len(part.required) - len(picks)
        for sizes in itertools.product(range(budget + 1), repeat=k):
            if sum(sizes) > budget:
                continue
            pools = [
                [
                    ClassKey(size, infl)
                    for infl in itertools.product(range(size + 1), repeat=len(open_order))
                ]
                for size in sizes
            ]
            for keys in itertools.product(*pools):
                if not meets_demands(inst, part, picks, keys):
                    continue
                if any(key not in class_map for key in keys):
                    continue
                conflict = build_conflict_graph(inst.graph, keys, class_map)
                picked = find_independent_set(conflict.graph, k)
                if picked is None:
                    continue
                witness = set(part.required) | picks
                for node in picked:
                    witness.update(conflict.members[node][1])
                witness_t = tuple(sorted(witness))
                if not is_critical_set(inst, witness_t):
                    raise RuntimeError(
                        f"faithful sweep produced a non-critical witness {witness_t}"
                    )
                return SolveResult(Outcome.YES, witness=witness_t)
    return SolveResult(Outcome.NO)
