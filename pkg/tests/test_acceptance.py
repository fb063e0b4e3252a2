"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report lines.
Exhaustive corpora draw one representative per isomorphism class; threshold
assignments and random corpora are seeded and stable across runs.
"""

import contextlib
import io
import itertools
import math
import random
import time

import pytest

from fcritical import fptk, oracle, reductions
from fcritical.cli import main as cli_main
from fcritical.core import Graph, is_critical_set, validate_instance
from fcritical.core import step as core_step
from fcritical.fileformat import emit_instance_for
from fcritical.generators import (
    connected_graph_atlas,
    random_configuration,
    random_instance,
    seeded_atlas_thresholds,
)
from fcritical.oracle import Outcome

from reference import (
    all_cliques,
    brute_clique,
    brute_independent_set,
    brute_vertex_cover,
    edge_tally_step,
)

SEED = 1


def _report(num, name, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    print(f"[acceptance] criterion {num:2d} {name}: {status} {detail}".rstrip())
    assert not failures, f"criterion {num} ({name}): " + " | ".join(failures[:5])


def _budget(failures, started, limit_s, name):
    elapsed = time.time() - started
    if elapsed > limit_s:
        failures.append(f"{name} took {elapsed:.1f}s > {limit_s}s")
    return elapsed


def test_criterion_01_rule_fidelity():
    started = time.time()
    rng = random.Random(f"acceptance:1:{SEED}")
    failures = []
    for trial in range(1000):
        inst = random_instance(rng, rng.randint(1, 20), 1)
        config = random_configuration(rng, inst.n)
        for step_no in range(10):
            direct = edge_tally_step(inst, config)
            counted = core_step(inst, config)
            if direct != counted:
                failures.append(f"trial {trial} step {step_no}: evaluators disagree")
                break
            config = direct
        if failures:
            break
    elapsed = _budget(failures, started, 10.0, "rule fidelity")
    _report(1, "rule-fidelity", failures, f"(1000 instances, {elapsed:.1f}s)")


@pytest.fixture(scope="module")
def search_corpus():
    """Shared corpus for criteria 2, 4, 5 and 9: exhaustive atlas to n=7 with
    three seeded threshold draws and budgets 1..3, plus 500 seeded random
    instances with n <= 12 and k <= 4."""
    records = []
    for graph in connected_graph_atlas(7):
        for variant in range(3):
            thresholds = seeded_atlas_thresholds(graph, SEED, variant)
            optimum = None
            for k in (1, 2, 3):
                inst = validate_instance(graph.n, graph.edges, thresholds, k)
                if optimum is None:
                    optimum = oracle.min_critical_set(inst, inst.n).optimum
                records.append(
                    {
                        "inst": inst,
                        "fast": fptk.decide(inst),
                        "brute": oracle.min_critical_set(inst, min(k, inst.n)),
                        "optimum": optimum,
                    }
                )
    rng = random.Random(f"acceptance:2:{SEED}")
    for _ in range(500):
        inst = random_instance(rng, rng.randint(2, 12), rng.randint(1, 4))
        records.append(
            {
                "inst": inst,
                "fast": fptk.decide(inst),
                "brute": oracle.min_critical_set(inst, min(inst.k, inst.n)),
                "optimum": oracle.min_critical_set(inst, inst.n).optimum,
            }
        )
    return records


def test_criterion_02_search_agreement(search_corpus):
    started = time.time()
    failures = []
    for record in search_corpus:
        fast, brute = record["fast"], record["brute"]
        inst = record["inst"]
        if fast.outcome is not brute.outcome:
            failures.append(
                f"n={inst.n} k={inst.k} edges={inst.graph.edges} f={inst.thresholds}: "
                f"{fast.outcome} vs {brute.outcome}"
            )
        if fast.outcome is Outcome.YES and (
            len(fast.witness) > inst.k or not is_critical_set(inst, fast.witness)
        ):
            failures.append(f"bad witness on n={inst.n} k={inst.k}")
    elapsed = time.time() - started
    _report(2, "search-agreement", failures, f"({len(search_corpus)} runs, +{elapsed:.1f}s)")


def test_criterion_03_faithful_sweep_agreement():
    started = time.time()
    failures = []
    runs = 0
    for graph in connected_graph_atlas(6):
        for variant in range(3):
            thresholds = seeded_atlas_thresholds(graph, SEED, variant)
            for k in (1, 2):
                inst = validate_instance(graph.n, graph.edges, thresholds, k)
                runs += 1
                literal = fptk.decide(inst, faithful=True).outcome
                grouped = fptk.decide(inst).outcome
                if literal is not grouped:
                    failures.append(
                        f"n={inst.n} k={k} edges={graph.edges} f={thresholds}: "
                        f"faithful={literal} optimized={grouped}"
                    )
    elapsed = _budget(failures, started, 300.0, "faithful sweep")
    _report(3, "faithful-vs-optimized", failures, f"({runs} runs, {elapsed:.1f}s)")


def test_criterion_04_size_gate_soundness(search_corpus):
    failures = []
    for record in search_corpus:
        inst = record["inst"]
        optimum = record["optimum"]
        top = inst.max_threshold
        if optimum is None:
            failures.append(f"n={inst.n}: the full vertex set should be critical")
            continue
        if optimum * top < inst.n:
            failures.append(f"n={inst.n} f={inst.thresholds}: optimum {optimum} beats the bound")
        gated = oracle.decide_kmf(inst)
        if inst.k * top < inst.n and record["brute"].outcome is Outcome.YES:
            failures.append(f"n={inst.n} k={inst.k}: gate contradicts the search")
        if gated.outcome is not record["brute"].outcome:
            failures.append(f"n={inst.n} k={inst.k}: gated decision differs")
    _report(4, "size-lower-bound", failures, f"({len(search_corpus)} checks)")


def test_criterion_05_partition_bounds(search_corpus):
    failures = []
    yes_count = 0
    for record in search_corpus:
        if record["brute"].outcome is not Outcome.YES:
            continue
        yes_count += 1
        inst = record["inst"]
        part = fptk.partition(inst)
        if len(part.required) > inst.k:
            failures.append(f"n={inst.n} k={inst.k}: required set exceeds budget")
        if len(part.open_order) > 2 * inst.k * inst.k:
            failures.append(f"n={inst.n} k={inst.k}: open set exceeds 2k^2")
    _report(5, "partition-bounds", failures, f"({yes_count} accepted instances)")


def test_criterion_06_cover_reduction_equivalence():
    started = time.time()
    failures = []
    runs = 0
    for source in connected_graph_atlas(5):
        if source.m == 0:
            continue
        for k in range(1, source.n + 1):
            runs += 1
            layout = reductions.cover_to_critical(source, k)
            problems = reductions.vc_layout_problems(layout)
            if problems:
                failures.append(f"n={source.n} k={k}: {problems[0]}")
                continue
            covered = brute_vertex_cover(source, k)
            product = oracle.min_critical_set(layout.instance, layout.k_prime)
            if covered != (product.outcome is Outcome.YES):
                failures.append(
                    f"n={source.n} m={source.m} k={k}: cover={covered} product={product.outcome}"
                )
    elapsed = _budget(failures, started, 600.0, "cover equivalence")
    _report(6, "cover-reduction", failures, f"({runs} runs, {elapsed:.1f}s)")


def test_criterion_07_clique_reduction_checks():
    started = time.time()
    failures = []
    runs = 0
    for source in connected_graph_atlas(4):
        for k in (2, 3):
            runs += 1
            layout = reductions.clique_to_critical(source, k)
            problems = reductions.clique_layout_problems(layout)
            if problems:
                failures.append(f"n={source.n} k={k}: {problems[0]}")
            expected_budget = k * k * layout.cycle_len + k + 1
            if layout.k_prime != expected_budget:
                failures.append(f"n={source.n} k={k}: wrong budget")
            for clique in all_cliques(source, k):
                witness = reductions.clique_witness_forward(layout, clique)
                if len(witness) != layout.k_prime or not is_critical_set(
                    layout.instance, witness
                ):
                    failures.append(f"n={source.n} k={k}: bad witness for {clique}")
            structured = reductions.clique_structured_decide(layout)
            if structured != brute_clique(source, k):
                failures.append(f"n={source.n} k={k}: structured decision differs")
    elapsed = _budget(failures, started, 300.0, "clique checks")
    _report(7, "clique-reduction", failures, f"({runs} layouts, {elapsed:.1f}s)")


def test_criterion_08_uniformize_equivalence():
    started = time.time()
    failures = []
    runs = 0
    for source in connected_graph_atlas(5):
        for variant in range(3):
            thresholds = seeded_atlas_thresholds(
                source, SEED, variant, cap=3, floor_max=2
            )
            for k in (1, 2, 3):
                inst = validate_instance(source.n, source.edges, thresholds, k)
                layout = reductions.uniformize(inst)
                if isinstance(layout, reductions.UnitThresholdShortcut):
                    if layout.decision != (inst.n <= k):
                        failures.append(f"n={inst.n} k={k}: bad shortcut")
                    continue
                runs += 1
                if layout.target not in (2, 3):
                    failures.append(f"n={inst.n}: unexpected target {layout.target}")
                problems = reductions.uniform_layout_problems(layout)
                if problems:
                    failures.append(f"n={inst.n} k={k}: {problems[0]}")
                    continue
                before = oracle.min_critical_set(inst, min(k, inst.n)).outcome
                cap = min(layout.k_prime, layout.instance.n)
                after = oracle.min_critical_set(layout.instance, cap).outcome
                if before is not after:
                    failures.append(
                        f"n={inst.n} k={k} f={thresholds}: source={before} product={after}"
                    )
    elapsed = _budget(failures, started, 600.0, "uniformize equivalence")
    _report(8, "uniformize-reduction", failures, f"({runs} products, {elapsed:.1f}s)")


def test_criterion_09_connected_counting_bound(search_corpus):
    failures = []
    checked = 0
    for record in search_corpus:
        inst = record["inst"]
        part = fptk.partition(inst)
        if not fptk.feasibility_gate(inst, part):
            continue
        ground = sorted(part.flexible - part.flexible_open)
        bound = inst.k - len(part.required)
        if bound < 1 or not ground:
            continue
        checked += 1
        counts = {}
        for piece in fptk.connected_subsets(inst.graph, ground, bound):
            counts[len(piece)] = counts.get(len(piece), 0) + 1
        for size, count in counts.items():
            allowed = max(1.0, len(ground) / size) * (
                math.e * (2 * inst.k - 2)
            ) ** (size - 1)
            if count > allowed + 1e-9:
                failures.append(
                    f"n={inst.n} k={inst.k}: {count} pieces of size {size} > {allowed:.2f}"
                )
    _report(9, "connected-counting", failures, f"({checked} grounds)")


def test_criterion_10_independent_set_subroutine():
    started = time.time()
    rng = random.Random(f"acceptance:10:{SEED}")
    failures = []
    kernel_hits = 0
    for trial in range(500):
        n = rng.randint(1, 16)
        density = rng.random()
        edges = [
            e for e in itertools.combinations(range(n), 2) if rng.random() < density
        ]
        graph = Graph(n, edges)
        k = rng.randint(1, 5)
        got = fptk.find_independent_set(graph, k)
        expected = brute_independent_set(graph, k)
        if (got is not None) != expected:
            failures.append(f"trial {trial}: n={n} k={k} disagrees with brute force")
            continue
        if got is not None and (
            len(got) != k
            or any(graph.has_edge(u, v) for u, v in itertools.combinations(got, 2))
        ):
            failures.append(f"trial {trial}: invalid set returned")
        if graph.n >= (k - 1) * (graph.max_degree + 1) + 1:
            kernel_hits += 1
            picked = fptk.greedy_independent_set(graph, k)
            if picked is None or len(picked) != k or any(
                graph.has_edge(u, v) for u, v in itertools.combinations(picked, 2)
            ):
                failures.append(f"trial {trial}: kernel extraction failed")
            if got is None:
                failures.append(f"trial {trial}: kernel-sized graph answered no")
    elapsed = _budget(failures, started, 60.0, "independent set")
    _report(
        10, "independent-set", failures,
        f"(500 samples, {kernel_hits} kernel-sized, {elapsed:.1f}s)",
    )


def test_criterion_11_deterministic_output(tmp_path):
    rng = random.Random(f"acceptance:11:{SEED}")
    failures = []
    algos = ("fpt-k", "brute", "kmf")
    for trial in range(50):
        inst = random_instance(rng, rng.randint(2, 10), rng.randint(1, 3))
        path = tmp_path / f"i{trial}.fcs"
        path.write_text(emit_instance_for(inst))
        algo = algos[trial % len(algos)]
        base_args = ["solve", str(path), "--k", str(inst.k), "--algo", algo]
        outputs = set()
        for repeat in range(3):
            outputs.add(_run_cli_stdout(base_args))
        for workers in ("1", "2", "4"):
            outputs.add(_run_cli_stdout(base_args + ["--workers", workers]))
        if len(outputs) != 1:
            failures.append(f"trial {trial} ({algo}): outputs diverge")
    _report(11, "deterministic-output", failures, "(50 instances x 6 runs)")


def _run_cli_stdout(args):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = cli_main(args)
    return (code, out.getvalue())
