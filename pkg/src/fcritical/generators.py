"""Seeded instance corpora: random connected instances and an isomorph-free
atlas of small connected graphs for exhaustive sweeps."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .core import Graph, Instance, validate_instance


def random_connected_graph(rng: random.Random, n: int, extra_edges: int = 0) -> Graph:
    """Random tree plus up to ``extra_edges`` additional distinct edges."""
    if n < 1:
        raise ValueError("need at least one vertex")
    edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    missing = [
        (u, v) for u, v in itertools.combinations(range(n), 2) if (u, v) not in edges
    ]
    take = min(extra_edges, len(missing))
    if take:
        edges.update(rng.sample(missing, take))
    return Graph(n, edges)


def random_thresholds(
    rng: random.Random,
    graph: Graph,
    cap: int | None = None,
    floor_max: int | None = None,
) -> tuple[int, ...]:
    """One threshold per vertex, uniform over 1..degree+1 (optionally capped).

    ``floor_max`` bumps one highest-degree vertex so the maximum threshold
    reaches at least that value when the degrees allow it.
    """
    out = []
    for v in range(graph.n):
        top = graph.degree(v) + 1
        if cap is not None:
            top = min(top, cap)
        out.append(rng.randint(1, top))
    if floor_max is not None and out and max(out) < floor_max:
        v = max(range(graph.n), key=lambda x: (graph.degree(x), -x))
        out[v] = min(graph.degree(v) + 1, floor_max)
    return tuple(out)


def random_instance(
    rng: random.Random,
    n: int,
    k: int,
    extra_edges: int | None = None,
    threshold_cap: int | None = None,
) -> Instance:
    extras = rng.randint(0, n) if extra_edges is None else extra_edges
    graph = random_connected_graph(rng, n, extras)
    thresholds = random_thresholds(rng, graph, cap=threshold_cap)
    return validate_instance(graph.n, graph.edges, thresholds, k)


def random_configuration(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, 1) for _ in range(n))


# ---------------------------------------------------------------------------
# Isomorph-free atlas of connected graphs


def _refined_colors(n: int, adj: list[list[int]]) -> list[int]:
    colors = [len(adj[v]) for v in range(n)]
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)
        ]
        ranking = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        fresh = [ranking[sig] for sig in signatures]
        if fresh == colors:
            return colors
        colors = fresh


def _canonical_edges(n: int, edges: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    """Smallest edge bitmask over all colour-respecting relabelings.

    Colour refinement is isomorphism-invariant, so minimizing over the
    relabelings that keep each colour class together yields the same result
    for isomorphic graphs and distinct results otherwise.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    colors = _refined_colors(n, adj)
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(colors[v], []).append(v)
    ordered_classes = [classes[c] for c in sorted(classes)]

    offsets = []
    base = 0
    for cls in ordered_classes:
        offsets.append(base)
        base += len(cls)

    pair_index = {}
    bit = 0
    for a in range(n):
        for b in range(a + 1, n):
            pair_index[(a, b)] = bit
            bit += 1

    best_mask: int | None = None
    for combo in itertools.product(
        *[itertools.permutations(cls) for cls in ordered_classes]
    ):
        position = [0] * n
        for cls_order, offset in zip(combo, offsets):
            for spot, v in enumerate(cls_order):
                position[v] = offset + spot
        mask = 0
        for u, v in edges:
            a, b = position[u], position[v]
            if a > b:
                a, b = b, a
            mask |= 1 << pair_index[(a, b)]
        if best_mask is None or mask < best_mask:
            best_mask = mask

    out = []
    for (a, b), index in pair_index.items():
        if best_mask is not None and (best_mask >> index) & 1:
            out.append((a, b))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Canonical edge lists of every connected graph on n vertices, one per
    isomorphism class.

    Built by extending each (n-1)-vertex representative with a new vertex
    attached to every nonempty subset of the old ones; every connected graph
    arises this way because removing a non-cut vertex keeps it connected.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if n == 1:
        return ((),)
    seen: dict[tuple[tuple[int, int], ...], None] = {}
    new = n - 1
    for parent in connected_graphs(n - 1):
        for bits in range(1, 1 << new):
            extra = tuple((v, new) for v in range(new) if (bits >> v) & 1)
            key = _canonical_edges(n, parent + extra)
            seen.setdefault(key, None)
    return tuple(sorted(seen, key=lambda e: (len(e), e)))


def connected_graph_atlas(max_n: int) -> list[Graph]:
    out = []
    for n in range(1, max_n + 1):
        for edges in connected_graphs(n):
            out.append(Graph(n, edges))
    return out


def seeded_atlas_thresholds(
    graph: Graph,
    seed: int,
    variant: int,
    cap: int | None = None,
    floor_max: int | None = None,
) -> tuple[int, ...]:
    """Deterministic threshold draw for an atlas graph, stable across runs."""
    tag = f"{seed}:{graph.n}:{graph.edges}:{variant}"
    return random_thresholds(random.Random(tag), graph, cap=cap, floor_max=floor_max)
