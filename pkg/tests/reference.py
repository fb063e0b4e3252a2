"""Independent reference routes used only by the tests.

These deliberately avoid the package's solver paths: the dynamics are
re-derived edge by edge, and the searches are plain subset sweeps.
"""

from __future__ import annotations

import itertools

from fcritical.core import Config, Graph, Instance


def edge_tally_step(inst: Instance, config: Config) -> Config:
    """Tally opposite-state endpoints per edge, then apply the flip rule."""
    opposite = [0] * inst.n
    for u, v in inst.graph.edges:
        if config[u] != config[v]:
            opposite[u] += 1
            opposite[v] += 1
    return tuple(
        1 - config[v] if opposite[v] >= inst.thresholds[v] else config[v]
        for v in range(inst.n)
    )


def ref_is_critical(inst: Instance, members) -> bool:
    chosen = set(members)
    config = tuple(1 if v in chosen else 0 for v in range(inst.n))
    return all(s == 1 for s in edge_tally_step(inst, config))


def naive_min_critical(inst: Instance, size_cap: int) -> tuple[int, ...] | None:
    """Unpruned smallest-first sweep over every subset up to the cap."""
    for size in range(size_cap + 1):
        for combo in itertools.combinations(range(inst.n), size):
            if ref_is_critical(inst, combo):
                return combo
    return None


def brute_vertex_cover(graph: Graph, k: int) -> bool:
    for size in range(k + 1):
        for combo in itertools.combinations(range(graph.n), size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in graph.edges):
                return True
    return False


def all_vertex_covers(graph: Graph) -> list[tuple[int, ...]]:
    out = []
    for size in range(graph.n + 1):
        for combo in itertools.combinations(range(graph.n), size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in graph.edges):
                out.append(combo)
    return out


def brute_clique(graph: Graph, k: int) -> bool:
    return bool(list(all_cliques(graph, k)))


def all_cliques(graph: Graph, k: int):
    for combo in itertools.combinations(range(graph.n), k):
        if all(graph.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
            yield combo


def brute_independent_set(graph: Graph, k: int) -> bool:
    if k <= 0:
        return True
    masks = graph.neighbor_masks
    for combo in itertools.combinations(range(graph.n), k):
        mask = 0
        ok = True
        for v in combo:
            if masks[v] & mask:
                ok = False
                break
            mask |= 1 << v
        if ok:
            return True
    return False
