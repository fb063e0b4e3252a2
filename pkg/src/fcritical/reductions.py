"""Instance factories built from three hardness constructions, with
structural validators and witness translators.

* cover_to_critical: vertex-cover sources become subcubic bipartite
  instances with thresholds in {1, 2}.
* clique_to_critical: clique sources become instances whose small critical
  sets spell out a clique choice per slot, checked by tally vertices.
* uniformize: an arbitrary instance becomes one with a single threshold
  value by padding deficient vertices with leaves and sink gadgets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Graph, Instance, validate_instance


class ReductionError(RuntimeError):
    """A witness translation contradicted the construction's guarantees."""


# ---------------------------------------------------------------------------
# Vertex cover


@dataclass(frozen=True)
class VcLayout:
    source: Graph
    k: int
    instance: Instance
    tracks: tuple[tuple[int, ...], ...]       # one path of 2*max_degree-1 vertices per source vertex
    edge_checks: tuple[int, ...]              # one threshold-2 vertex per source edge
    pendants: tuple[int, ...]                 # threshold-2 degree-1 vertices
    k_prime: int

    def groups(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, tuple[int, ...]] = {
            "edge_checks": self.edge_checks,
            "pendants": self.pendants,
        }
        for v, track in enumerate(self.tracks):
            out[f"track_{v + 1}"] = track
        return out


def cover_to_critical(source: Graph, k: int) -> VcLayout:
    """Vertex-cover source -> threshold instance.

    Each source vertex becomes a threshold-1 path (a track) long enough to
    make taking it expensive; each source edge becomes a threshold-2 check
    attached to one odd track slot of each endpoint (incident edges fill the
    odd slots in source edge order); track vertices without a check get a
    threshold-2 pendant.  Budget: checks + pendants + k tracks.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not source.is_connected():
        raise ValueError("source must be connected")
    if source.m == 0:
        raise ValueError("source needs at least one edge (a single vertex is vacuous)")
    n = source.n
    length = 2 * source.max_degree - 1
    tracks = tuple(
        tuple(range(v * length, (v + 1) * length)) for v in range(n)
    )
    edges: list[tuple[int, int]] = []
    for track in tracks:
        edges.extend(zip(track, track[1:]))

    next_id = n * length
    edge_checks = []
    slot_cursor = [0] * n  # next free odd slot (0-based even positions)
    has_check = [False] * (n * length)
    for u, v in source.edges:
        check = next_id
        next_id += 1
        edge_checks.append(check)
        for endpoint in (u, v):
            pos = slot_cursor[endpoint]
            slot_cursor[endpoint] += 2
            vertex = tracks[endpoint][pos]
            edges.append((check, vertex))
            has_check[vertex] = True

    pendants = []
    for vertex in range(n * length):
        if not has_check[vertex]:
            pend = next_id
            next_id += 1
            pendants.append(pend)
            edges.append((vertex, pend))

    total = next_id
    thresholds = [0] * total
    for track in tracks:
        for vertex in track:
            thresholds[vertex] = 1
    for check in edge_checks:
        thresholds[check] = 2
    for pend in pendants:
        thresholds[pend] = 2

    k_prime = len(edge_checks) + len(pendants) + k * length
    inst = validate_instance(total, edges, thresholds, k_prime)
    return VcLayout(source, k, inst, tracks, tuple(edge_checks), tuple(pendants), k_prime)


def vc_layout_problems(layout: VcLayout) -> list[str]:
    """Structural checks; empty list means the layout is well formed."""
    problems: list[str] = []
    g = layout.instance.graph
    src = layout.source
    length = 2 * src.max_degree - 1

    expected_size = 2 * src.n * length - src.m
    if g.n != expected_size:
        problems.append(f"size {g.n} != 2*n*(2D-1)-m = {expected_size}")
    if g.max_degree > 3:
        problems.append(f"max degree {g.max_degree} > 3")
    if layout.instance.max_threshold > 2:
        problems.append("threshold above 2")

    # Two-sided split: even track slots + checks + pendants-on-odd-slots
    # versus odd track slots + pendants-on-even-slots (slots 1-based).
    side = [0] * g.n
    for track in layout.tracks:
        for pos, vertex in enumerate(track):
            side[vertex] = 0 if pos % 2 == 1 else 1  # 0-based odd pos = even slot
    for check in layout.edge_checks:
        side[check] = 0
    for pend in layout.pendants:
        (attach,) = g.neighbors(pend)
        side[pend] = 1 - side[attach]
    for u, v in g.edges:
        if side[u] == side[v]:
            problems.append(f"edge ({u}, {v}) stays inside one side")
            break

    for check in layout.edge_checks:
        if g.degree(check) != 2:
            problems.append(f"check {check} has degree {g.degree(check)}")
    for pend in layout.pendants:
        if g.degree(pend) != 1:
            problems.append(f"pendant {pend} has degree {g.degree(pend)}")
    for track in layout.tracks:
        for pos, vertex in enumerate(track):
            deg = g.degree(vertex)
            if length == 1:
                expected = 1
            elif pos in (0, length - 1):
                expected = 2
            else:
                expected = 3
            if deg != expected:
                problems.append(
                    f"track vertex {vertex} has degree {deg}, expected {expected}"
                )

    # Planarity itself is out of scope; a bipartite planar graph still has
    # to satisfy m <= 2n - 4 once n >= 3, so violations flag a bad build.
    if g.n >= 3 and g.m > 2 * g.n - 4:
        problems.append("edge count breaks the bipartite-planar bound")
    return problems


def vc_witness_forward(layout: VcLayout, cover: Iterable[int]) -> frozenset[int]:
    """Cover of the source -> critical set of the product: every check,
    every pendant, and the full track of each cover vertex."""
    cover_set = set(cover)
    if not cover_set <= set(range(layout.source.n)):
        raise ValueError("cover contains unknown vertices")
    if len(cover_set) > layout.k:
        raise ValueError(f"cover has size {len(cover_set)} > k = {layout.k}")
    for u, v in layout.source.edges:
        if u not in cover_set and v not in cover_set:
            raise ValueError(f"not a vertex cover: edge ({u}, {v}) is uncovered")
    out = set(layout.edge_checks) | set(layout.pendants)
    for v in cover_set:
        out.update(layout.tracks[v])
    return frozenset(out)


def vc_witness_backward(layout: VcLayout, product_set: Iterable[int], k: int) -> frozenset[int]:
    """Critical set of the product -> cover of the source: the vertices whose
    track is fully taken.  A non-cover outcome means the construction is
    broken, not the caller."""
    taken = set(product_set)
    cover = frozenset(
        v for v, track in enumerate(layout.tracks) if all(x in taken for x in track)
    )
    for u, v in layout.source.edges:
        if u not in cover and v not in cover:
            raise ReductionError(f"extracted set misses edge ({u}, {v})")
    if len(cover) > k:
        raise ReductionError(f"extracted cover has size {len(cover)} > {k}")
    return cover


# ---------------------------------------------------------------------------
# Clique


@dataclass(frozen=True)
class CliqueLayout:
    source: Graph
    k: int
    instance: Instance
    cycle_len: int                                        # q = 2n
    tally_a: dict[tuple[int, int], int]                   # ordered slot pair -> vertex
    tally_b: dict[tuple[int, int], int]
    slot_watch: tuple[int, ...]                           # one per slot
    pair_watch: dict[tuple[int, int], int]                # r < s
    choice_cycles: dict[tuple[int, int], tuple[int, ...]]  # (slot, candidate) -> cycle
    pair_cycles: dict[tuple[int, int, int, int], tuple[int, ...]]
    padding: tuple[int, ...]                              # threshold-1 mass on the tallies
    base: tuple[int, ...]                                 # k+1 vertices inside every solution
    k_prime: int

    def groups(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, tuple[int, ...]] = {
            "padding": self.padding,
            "base": self.base,
            "slot_watch": self.slot_watch,
        }
        for (r, s), vertex in sorted(self.tally_a.items()):
            out[f"tally_a_{r + 1}_{s + 1}"] = (vertex,)
        for (r, s), vertex in sorted(self.tally_b.items()):
            out[f"tally_b_{r + 1}_{s + 1}"] = (vertex,)
        for (r, s), vertex in sorted(self.pair_watch.items()):
            out[f"pair_watch_{r + 1}_{s + 1}"] = (vertex,)
        for (r, i), cyc in sorted(self.choice_cycles.items()):
            out[f"choice_{r + 1}_{i + 1}"] = cyc
        for (r, s, i, j), cyc in sorted(self.pair_cycles.items()):
            out[f"pair_cycle_{r + 1}_{s + 1}_{i + 1}_{j + 1}"] = cyc
        return out

    def majority(self, i: int) -> int:
        return self.source.n + i

    def minority(self, i: int) -> int:
        return self.source.n - i


def _cycle_edges(ids: Sequence[int]) -> list[tuple[int, int]]:
    # A two-vertex "cycle" degenerates to a single edge in a simple graph.
    if len(ids) == 2:
        return [(ids[0], ids[1])]
    return [(ids[p], ids[(p + 1) % len(ids)]) for p in range(len(ids))]


def clique_to_critical(source: Graph, k: int) -> CliqueLayout:
    """Clique source -> threshold instance.

    One choice cycle per (slot, candidate); tally vertices between ordered
    slot pairs receive majority/minority splits sized n+i and n-i so that
    only matching choices give a tally exactly cycle-length many selected
    neighbors.  Pair cycles exist only for source edges, which is what makes
    a consistent selection spell out a clique.
    """
    if k < 2:
        raise ValueError("k must be at least 2 (singleton cliques are trivial)")
    if source.n < 1:
        raise ValueError("source must have at least one vertex")
    n = source.n
    q = 2 * n
    k_prime = k * k * q + k + 1

    edges: list[tuple[int, int]] = []
    thresholds: dict[int, int] = {}
    next_id = 0

    def fresh(count: int, threshold: int) -> tuple[int, ...]:
        nonlocal next_id
        ids = tuple(range(next_id, next_id + count))
        next_id += count
        for x in ids:
            thresholds[x] = threshold
        return ids

    tally_a: dict[tuple[int, int], int] = {}
    tally_b: dict[tuple[int, int], int] = {}
    for r, s in sorted(itertools.permutations(range(k), 2)):
        (tally_a[(r, s)],) = fresh(1, q)
        (tally_b[(r, s)],) = fresh(1, q)

    slot_watch = tuple(fresh(1, q)[0] for _ in range(k))
    pair_watch = {
        (r, s): fresh(1, 2 * q)[0] for r, s in itertools.combinations(range(k), 2)
    }

    choice_cycles: dict[tuple[int, int], tuple[int, ...]] = {}
    for r in range(k):
        for i in range(n):
            cyc = fresh(q, k + 1)
            choice_cycles[(r, i)] = cyc
            edges.extend(_cycle_edges(cyc))
            for x in cyc:
                edges.append((x, slot_watch[r]))
            majority = n + i
            for pos, x in enumerate(cyc):
                for s in range(k):
                    if s == r:
                        continue
                    target = tally_a[(r, s)] if pos < majority else tally_b[(r, s)]
                    edges.append((x, target))

    oriented = sorted(
        set((u, v) for u, v in source.edges) | set((v, u) for u, v in source.edges)
    )
    pair_cycles: dict[tuple[int, int, int, int], tuple[int, ...]] = {}
    for r, s in itertools.combinations(range(k), 2):
        for i, j in oriented:
            cyc = fresh(2 * q, 3)
            pair_cycles[(r, s, i, j)] = cyc
            edges.extend(_cycle_edges(cyc))
            for x in cyc:
                edges.append((x, pair_watch[(r, s)]))
            arcs = [
                (n - i, tally_a[(r, s)]),
                (n + i, tally_b[(r, s)]),
                (n - j, tally_a[(s, r)]),
                (n + j, tally_b[(s, r)]),
            ]
            pos = 0
            for count, target in arcs:
                for x in cyc[pos : pos + count]:
                    edges.append((x, target))
                pos += count

    padding = fresh(k_prime, 1)
    watchers = (
        sorted(tally_a.values())
        + sorted(tally_b.values())
        + list(slot_watch)
        + sorted(pair_watch.values())
    )
    for w in padding:
        for x in watchers:
            edges.append((w, x))

    cycle_vertices = [
        x for cyc in choice_cycles.values() for x in cyc
    ] + [x for cyc in pair_cycles.values() for x in cyc]
    base_threshold = len(cycle_vertices) + len(padding) + 1
    base = fresh(k + 1, base_threshold)
    for z in base:
        for x in cycle_vertices:
            edges.append((z, x))
        for w in padding:
            edges.append((z, w))

    ordered_thresholds = [thresholds[x] for x in range(next_id)]
    inst = validate_instance(next_id, edges, ordered_thresholds, k_prime)
    return CliqueLayout(
        source, k, inst, q, tally_a, tally_b, slot_watch, pair_watch,
        choice_cycles, pair_cycles, padding, base, k_prime,
    )


def clique_layout_problems(layout: CliqueLayout) -> list[str]:
    """Structural checks; the tally-degree and watcher-slack inequalities
    assume the source has at least one edge (single-vertex sources keep the
    decision correct through the budget argument instead)."""
    problems: list[str] = []
    g = layout.instance.graph
    f = layout.instance.thresholds
    n = layout.source.n
    k = layout.k
    q = layout.cycle_len

    for i in range(n):
        if layout.majority(i) + layout.minority(i) != q:
            problems.append(f"split sizes for candidate {i} do not sum to {q}")
    for i, j in itertools.permutations(range(n), 2):
        if (
            layout.majority(i) + layout.minority(j) >= q
            and layout.majority(j) + layout.minority(i) >= q
        ):
            problems.append(f"splits for candidates {i}, {j} are not discriminating")

    tallies = set(layout.tally_a.values()) | set(layout.tally_b.values())
    watchers = tallies | set(layout.slot_watch) | set(layout.pair_watch.values())
    side_of: dict[int, set[str]] = {}
    for (r, i), cyc in layout.choice_cycles.items():
        a_targets = {layout.tally_a[(r, s)] for s in range(k) if s != r}
        b_targets = {layout.tally_b[(r, s)] for s in range(k) if s != r}
        a_seen = 0
        for x in cyc:
            nbrs = set(g.neighbors(x))
            in_core = nbrs & (set(cyc) | tallies)
            expected = (2 if q >= 3 else 1) + (k - 1)
            if len(in_core) != expected:
                problems.append(f"choice vertex {x} has core degree {len(in_core)}")
            if nbrs >= a_targets and not (nbrs & b_targets):
                a_seen += 1
                side_of.setdefault(x, set()).add("a")
            elif nbrs >= b_targets and not (nbrs & a_targets):
                side_of.setdefault(x, set()).add("b")
            else:
                problems.append(f"choice vertex {x} mixes tally sides")
        if a_seen != layout.majority(i):
            problems.append(
                f"choice cycle ({r}, {i}) has {a_seen} majority vertices, "
                f"expected {layout.majority(i)}"
            )

    for (r, s, i, j), cyc in layout.pair_cycles.items():
        four = [
            layout.tally_a[(r, s)], layout.tally_b[(r, s)],
            layout.tally_a[(s, r)], layout.tally_b[(s, r)],
        ]
        counts = {t: 0 for t in four}
        for x in cyc:
            hits = [t for t in four if g.has_edge(x, t)]
            if len(hits) != 1:
                problems.append(f"pair vertex {x} touches {len(hits)} tallies")
            else:
                counts[hits[0]] += 1
        expected = [
            layout.minority(i), layout.majority(i),
            layout.minority(j), layout.majority(j),
        ]
        if [counts[t] for t in four] != expected:
            problems.append(f"pair cycle ({r},{s},{i},{j}) arc counts are wrong")

    if len(layout.padding) != layout.k_prime:
        problems.append("padding size differs from the product budget")
    cycle_count = sum(len(c) for c in layout.choice_cycles.values()) + sum(
        len(c) for c in layout.pair_cycles.values()
    )
    for z in layout.base:
        if f[z] != g.degree(z) + 1 or g.degree(z) != cycle_count + len(layout.padding):
            problems.append(f"base vertex {z} has wrong degree or threshold")

    for x in sorted(watchers):
        if any(not g.has_edge(x, w) for w in layout.padding):
            problems.append(f"watcher {x} misses part of the padding")
        if layout.source.m >= 1 and f[x] > g.degree(x) - layout.k_prime:
            problems.append(f"watcher {x} lacks slack: f={f[x]}, d={g.degree(x)}")
    return problems


def clique_witness_forward(layout: CliqueLayout, clique: Sequence[int]) -> frozenset[int]:
    """Clique (one candidate per slot, in order) -> critical set: the base,
    each slot's chosen cycle, and the matching pair cycles."""
    if len(clique) != layout.k:
        raise ValueError(f"need exactly {layout.k} clique vertices")
    for a, b in itertools.combinations(range(layout.k), 2):
        if not layout.source.has_edge(clique[a], clique[b]):
            raise ValueError(f"vertices {clique[a]} and {clique[b]} are not adjacent")
    out = set(layout.base)
    for r, d in enumerate(clique):
        out.update(layout.choice_cycles[(r, d)])
    for r, s in itertools.combinations(range(layout.k), 2):
        out.update(layout.pair_cycles[(r, s, clique[r], clique[s])])
    if len(out) != layout.k_prime:
        raise ReductionError(f"forward witness has size {len(out)} != {layout.k_prime}")
    return frozenset(out)


def clique_structured_decide(layout: CliqueLayout) -> bool:
    """Try every structured candidate (a cycle per slot, an oriented edge's
    pair cycles per slot pair) against the one-step test."""
    inst = layout.instance
    n = layout.source.n
    k = layout.k

    def mask_of(ids: Iterable[int]) -> int:
        m = 0
        for x in ids:
            m |= 1 << x
        return m

    base_mask = mask_of(layout.base)
    choice_masks = {key: mask_of(c) for key, c in layout.choice_cycles.items()}
    pair_masks = {key: mask_of(c) for key, c in layout.pair_cycles.items()}
    pairs = list(itertools.combinations(range(k), 2))
    orientations = sorted({(i, j) for (_, _, i, j) in layout.pair_cycles})

    if not orientations and pairs:
        return False

    g = inst.graph
    f = inst.thresholds
    masks = g.neighbor_masks
    degrees = g.degrees

    def critical(mask: int) -> bool:
        for v in range(g.n):
            inside = (masks[v] & mask).bit_count()
            if (mask >> v) & 1:
                if degrees[v] - inside >= f[v]:
                    return False
            elif inside < f[v]:
                return False
        return True

    for choice in itertools.product(range(n), repeat=k):
        slot_mask = base_mask
        for r, d in enumerate(choice):
            slot_mask |= choice_masks[(r, d)]
        for assignment in itertools.product(orientations, repeat=len(pairs)):
            mask = slot_mask
            for (r, s), (i, j) in zip(pairs, assignment):
                mask |= pair_masks[(r, s, i, j)]
            if critical(mask):
                return True
    return False


# ---------------------------------------------------------------------------
# Threshold uniformization


@dataclass(frozen=True)
class UnitThresholdShortcut:
    """When every threshold is 1 the full vertex set is the only critical
    set, so the decision needs no construction."""

    witness: tuple[int, ...]
    decision: bool


@dataclass(frozen=True)
class UniformLayout:
    source: Instance
    instance: Instance
    target: int                                  # the single threshold value
    pad_leaves: dict[int, tuple[int, ...]]       # per deficient source vertex
    sink_hubs: dict[int, tuple[int, ...]]
    sink_arms: dict[int, tuple[int, ...]]
    forced_leaves: tuple[int, ...]               # every added degree-1 vertex
    k_prime: int

    def groups(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, tuple[int, ...]] = {"forced_leaves": self.forced_leaves}
        for v, ids in sorted(self.pad_leaves.items()):
            out[f"pad_leaves_{v + 1}"] = ids
        for v, ids in sorted(self.sink_hubs.items()):
            out[f"sink_hubs_{v + 1}"] = ids
        for v, ids in sorted(self.sink_arms.items()):
            out[f"sink_arms_{v + 1}"] = ids
        return out


def uniformize(source: Instance) -> UniformLayout | UnitThresholdShortcut:
    """Pad every vertex below the maximum threshold up to it.

    A deficient vertex v gets target - f(v) forced pendant leaves (always
    inside a solution) and the same number of sink hubs (never inside, and
    never flipping early thanks to their own leaf-fed arms), leaving v's
    effective behavior unchanged while its threshold rises to the target.
    Added leaves take threshold 2: a leaf can never flip either way once its
    threshold exceeds its degree, so any value above 2 acts identically and
    2 keeps the instance within the degree+1 bound.
    """
    c = source.max_threshold
    n = source.n
    if c == 1:
        return UnitThresholdShortcut(tuple(range(n)), decision=(n <= source.k))

    edges = list(source.graph.edges)
    thresholds: dict[int, int] = {}
    next_id = n

    def fresh(count: int, threshold: int) -> tuple[int, ...]:
        nonlocal next_id
        ids = tuple(range(next_id, next_id + count))
        next_id += count
        for x in ids:
            thresholds[x] = threshold
        return ids

    leaf_threshold = 2
    pad_leaves: dict[int, tuple[int, ...]] = {}
    sink_hubs: dict[int, tuple[int, ...]] = {}
    sink_arms: dict[int, tuple[int, ...]] = {}
    forced: list[int] = []
    for v in range(n):
        deficit = c - source.thresholds[v]
        if deficit == 0:
            continue
        pads = fresh(deficit, leaf_threshold)
        pad_leaves[v] = pads
        forced.extend(pads)
        for leaf in pads:
            edges.append((v, leaf))
        hubs = []
        arms_all = []
        for _ in range(deficit):
            (hub,) = fresh(1, c)
            hubs.append(hub)
            edges.append((v, hub))
            hub_leaves = fresh(c, leaf_threshold)
            forced.extend(hub_leaves)
            for leaf in hub_leaves:
                edges.append((hub, leaf))
            arms = fresh(c + source.k - 1, c)
            arms_all.extend(arms)
            for arm in arms:
                edges.append((hub, arm))
                arm_leaves = fresh(c, leaf_threshold)
                forced.extend(arm_leaves)
                for leaf in arm_leaves:
                    edges.append((arm, leaf))
        sink_hubs[v] = tuple(hubs)
        sink_arms[v] = tuple(arms_all)

    for v in range(n):
        thresholds[v] = c
    ordered = [thresholds[x] for x in range(next_id)]
    k_prime = source.k + len(forced)
    inst = validate_instance(next_id, edges, ordered, k_prime)
    return UniformLayout(
        source, inst, c, pad_leaves, sink_hubs, sink_arms, tuple(sorted(forced)), k_prime
    )


def uniform_layout_problems(layout: UniformLayout) -> list[str]:
    problems: list[str] = []
    src = layout.source
    g = layout.instance.graph
    f = layout.instance.thresholds
    c = layout.target

    for v in range(src.n):
        deficit = c - src.thresholds[v]
        pads = layout.pad_leaves.get(v, ())
        hubs = layout.sink_hubs.get(v, ())
        if len(pads) != deficit or len(hubs) != deficit:
            problems.append(f"vertex {v}: wrong pad or hub count")
        for hub in hubs:
            leaf_nbrs = [u for u in g.neighbors(hub) if g.degree(u) == 1]
            arm_nbrs = [u for u in g.neighbors(hub) if u in set(layout.sink_arms[v])]
            if len(leaf_nbrs) != c or len(arm_nbrs) != c + src.k - 1:
                problems.append(f"hub {hub}: wrong leaf/arm mix")
            for arm in arm_nbrs:
                if sum(1 for u in g.neighbors(arm) if g.degree(u) == 1) != c:
                    problems.append(f"arm {arm}: wrong leaf count")

    for x in range(g.n):
        expected = 2 if x in set(layout.forced_leaves) else c
        if f[x] != expected:
            problems.append(f"vertex {x}: threshold {f[x]}, expected {expected}")
    if layout.instance.max_threshold != c:
        problems.append("product does not preserve the maximum threshold")
    if layout.k_prime != src.k + len(layout.forced_leaves):
        problems.append("budget does not match k plus the forced leaves")
    return problems


def uniform_witness_forward(layout: UniformLayout, members: Iterable[int]) -> frozenset[int]:
    """Source critical set -> product critical set: add every forced leaf."""
    return frozenset(members) | frozenset(layout.forced_leaves)
