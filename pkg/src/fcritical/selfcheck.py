"""Cross-validation suites for the crosscheck command.

Each suite pits a solver path against a separately written reference route
(edge-tally dynamics, subset brute force, source-side search) on seeded
corpora and reports pass counts.  The reference routines here are kept
deliberately naive.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import fptk, oracle, reductions
from .core import Config, Graph, Instance, is_critical_set, step
from .generators import (
    connected_graph_atlas,
    random_configuration,
    random_connected_graph,
    random_instance,
    random_thresholds,
)


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def edge_tally_step(inst: Instance, config: Config) -> Config:
    """Second opinion on the dynamics: tally disagreements edge by edge."""
    opposite = [0] * inst.n
    for u, v in inst.graph.edges:
        if config[u] != config[v]:
            opposite[u] += 1
            opposite[v] += 1
    return tuple(
        1 - config[v] if opposite[v] >= inst.thresholds[v] else config[v]
        for v in range(inst.n)
    )


def brute_vertex_cover(graph: Graph, k: int) -> bool:
    for size in range(k + 1):
        for combo in itertools.combinations(range(graph.n), size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in graph.edges):
                return True
    return False


def brute_clique(graph: Graph, k: int) -> bool:
    for combo in itertools.combinations(range(graph.n), k):
        if all(graph.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
            return True
    return False


def brute_independent_set(graph: Graph, k: int) -> bool:
    if k == 0:
        return True
    for combo in itertools.combinations(range(graph.n), k):
        if all(not graph.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
            return True
    return False


def suite_step_agreement(seed: int, trials: int = 200) -> SuiteResult:
    rng = random.Random(f"step:{seed}")
    result = SuiteResult("step-evaluators", 0, trials)
    for t in range(trials):
        inst = random_instance(rng, rng.randint(1, 12), 1)
        config = random_configuration(rng, inst.n)
        ok = True
        for _ in range(6):
            a = step(inst, config)
            b = edge_tally_step(inst, config)
            if a != b:
                ok = False
                break
            config = a
        if ok:
            result.passed += 1
        else:
            result.failures.append(f"trial {t}: evaluators disagree on n={inst.n}")
    return result


def suite_search_agreement(
    seed: int, trials: int = 40, max_n: int = 10, max_k: int = 3
) -> SuiteResult:
    rng = random.Random(f"search:{seed}")
    result = SuiteResult("search-vs-brute", 0, trials)
    for t in range(trials):
        inst = random_instance(rng, rng.randint(2, max_n), rng.randint(1, max_k))
        brute = oracle.min_critical_set(inst, min(inst.k, inst.n))
        fast = fptk.decide(inst)
        ok = brute.outcome is fast.outcome
        if fast.decided_yes and fast.witness is not None:
            ok = ok and is_critical_set(inst, fast.witness) and len(fast.witness) <= inst.k
        if ok:
            result.passed += 1
        else:
            result.failures.append(
                f"trial {t}: n={inst.n} k={inst.k} brute={brute.outcome} fast={fast.outcome}"
            )
    return result


def suite_cover_reduction(seed: int, max_n: int = 5) -> SuiteResult:
    result = SuiteResult("cover-reduction", 0, 0)
    for source in connected_graph_atlas(max_n):
        if source.m == 0:
            continue
        for k in range(1, source.n + 1):
            result.total += 1
            layout = reductions.cover_to_critical(source, k)
            problems = reductions.vc_layout_problems(layout)
            covered = brute_vertex_cover(source, k)
            solved = oracle.min_critical_set(layout.instance, layout.k_prime)
            if not problems and covered == solved.decided_yes:
                result.passed += 1
            else:
                result.failures.append(
                    f"n={source.n} m={source.m} k={k}: problems={problems}, "
                    f"cover={covered}, product={solved.outcome}"
                )
    return result


def suite_clique_reduction(seed: int, max_n: int = 3, budgets: tuple[int, ...] = (2,)) -> SuiteResult:
    result = SuiteResult("clique-reduction", 0, 0)
    for source in connected_graph_atlas(max_n):
        for k in budgets:
            result.total += 1
            layout = reductions.clique_to_critical(source, k)
            problems = reductions.clique_layout_problems(layout)
            structured = reductions.clique_structured_decide(layout)
            brute = brute_clique(source, k)
            if not problems and structured == brute:
                result.passed += 1
            else:
                result.failures.append(
                    f"n={source.n} m={source.m} k={k}: problems={problems}, "
                    f"structured={structured}, brute={brute}"
                )
    return result


def suite_uniform_reduction(seed: int, trials: int = 15) -> SuiteResult:
    rng = random.Random(f"uniform:{seed}")
    result = SuiteResult("uniform-reduction", 0, trials)
    for t in range(trials):
        graph = random_connected_graph(rng, rng.randint(2, 5), rng.randint(0, 3))
        thresholds = random_thresholds(rng, graph, cap=3, floor_max=2)
        k = rng.randint(1, 3)
        inst = Instance(graph, thresholds, k)
        layout = reductions.uniformize(inst)
        if isinstance(layout, reductions.UnitThresholdShortcut):
            ok = layout.decision == (inst.n <= k)
        else:
            problems = reductions.uniform_layout_problems(layout)
            before = oracle.min_critical_set(inst, min(inst.k, inst.n)).decided_yes
            cap = min(layout.k_prime, layout.instance.n)
            after = oracle.min_critical_set(layout.instance, cap).decided_yes
            ok = not problems and before == after
        if ok:
            result.passed += 1
        else:
            result.failures.append(f"trial {t}: n={graph.n} k={k}")
    return result


def suite_independent_set(seed: int, trials: int = 120) -> SuiteResult:
    rng = random.Random(f"indep:{seed}")
    result = SuiteResult("independent-set", 0, trials)
    for t in range(trials):
        n = rng.randint(1, 12)
        density = rng.random()
        edges = [
            (u, v)
            for u, v in itertools.combinations(range(n), 2)
            if rng.random() < density
        ]
        graph = Graph(n, edges)
        k = rng.randint(1, 4)
        found = fptk.find_independent_set(graph, k)
        expected = brute_independent_set(graph, k)
        ok = (found is not None) == expected
        if found is not None:
            ok = ok and len(found) == k and all(
                not graph.has_edge(u, v) for u, v in itertools.combinations(found, 2)
            )
        if ok:
            result.passed += 1
        else:
            result.failures.append(f"trial {t}: n={n} k={k}")
    return result


def run_all(seed: int) -> list[SuiteResult]:
    return [
        suite_step_agreement(seed),
        suite_search_agreement(seed),
        suite_cover_reduction(seed),
        suite_clique_reduction(seed),
        suite_uniform_reduction(seed),
        suite_independent_set(seed),
    ]
