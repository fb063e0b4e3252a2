import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fcritical.core import (
    CYCLE,
    FIXED_POINT,
    STEP_LIMIT,
    Graph,
    InvalidInstanceError,
    first_violation,
    indicator,
    is_critical_set,
    simulate,
    step,
    validate_instance,
)
from fcritical.generators import random_configuration, random_instance

from reference import edge_tally_step


def k3(k=2):
    return validate_instance(3, [(0, 1), (1, 2), (0, 2)], (2, 2, 2), k)


def p3(k=2, thresholds=(1, 2, 1)):
    return validate_instance(3, [(0, 1), (1, 2)], thresholds, k)


class TestGraph:
    def test_adjacency_is_symmetric_and_sorted(self):
        g = Graph(4, [(2, 0), (1, 0), (3, 2)])
        assert g.adj == ((1, 2), (0,), (0, 3), (2,))
        assert g.edges == ((0, 1), (0, 2), (2, 3))
        assert g.max_degree == 2

    def test_rejects_self_loop_and_duplicate(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 0)])
        with pytest.raises(ValueError):
            Graph(2, [(0, 1), (1, 0)])

    def test_connectivity(self):
        assert Graph(1, []).is_connected()
        assert not Graph(4, [(0, 1), (2, 3)]).is_connected()
        assert Graph(3, [(0, 1), (1, 2)]).connected_within({0, 1})
        assert not Graph(3, [(0, 1), (1, 2)]).connected_within({0, 2})
        assert Graph(3, [(0, 1)]).connected_within(set())


class TestValidation:
    def test_valid_path(self):
        inst = p3()
        assert inst.thresholds == (1, 2, 1)
        assert inst.max_threshold == 2

    def test_zero_threshold_reported(self):
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(2, [(0, 1)], (0, 1), 1)
        assert any(i.kind == "zero-threshold" and i.vertex == 0 for i in err.value.issues)

    def test_disconnected_reported(self):
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(4, [(0, 1), (2, 3)], (1, 1, 1, 1), 1)
        assert any(i.kind == "disconnected" for i in err.value.issues)

    def test_threshold_above_degree_plus_one(self):
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(2, [(0, 1)], (3, 1), 1)
        assert any(i.kind == "threshold-above-degree" and i.vertex == 0 for i in err.value.issues)

    def test_bad_budget_and_multiple_issues_collected(self):
        with pytest.raises(InvalidInstanceError) as err:
            validate_instance(4, [(0, 1), (2, 3), (0, 0)], (0, 1, 1, 5), 0)
        kinds = {i.kind for i in err.value.issues}
        assert {"self-loop", "zero-threshold", "disconnected", "bad-budget"} <= kinds


class TestStep:
    def test_triangle_example(self):
        assert step(k3(), (1, 1, 0)) == (1, 1, 1)

    def test_all_ones_is_fixed(self):
        rng = random.Random("fixed:1")
        for _ in range(25):
            inst = random_instance(rng, rng.randint(1, 10), 1)
            ones = tuple(1 for _ in range(inst.n))
            assert step(inst, ones) == ones

    def test_edge_oscillation(self):
        inst = validate_instance(2, [(0, 1)], (1, 1), 1)
        assert step(inst, (0, 1)) == (1, 0)

    def test_step_is_pure(self):
        inst = p3()
        config = (0, 1, 0)
        assert step(inst, config) == step(inst, config)
        assert config == (0, 1, 0)


class TestSimulate:
    def test_two_cycle_detected(self):
        inst = validate_instance(2, [(0, 1)], (1, 1), 1)
        trace = simulate(inst, (0, 1), 10)
        assert trace.reason == CYCLE
        assert len(trace.states) == 3 and trace.states[2] == trace.states[0]

    def test_fixed_point_at_one(self):
        trace = simulate(k3(), (1, 1, 0), 10)
        assert trace.reason == FIXED_POINT
        assert trace.states[-1] == (1, 1, 1) and len(trace.states) == 2

    def test_all_ones_fixed_at_zero(self):
        trace = simulate(k3(), (1, 1, 1), 10)
        assert trace.reason == FIXED_POINT and len(trace.states) == 1

    def test_step_limit(self):
        inst = validate_instance(2, [(0, 1)], (1, 1), 1)
        trace = simulate(inst, (0, 1), 1)
        assert trace.reason == STEP_LIMIT

    def test_limit_of_state_space_always_resolves(self):
        rng = random.Random("resolve:1")
        for _ in range(40):
            inst = random_instance(rng, rng.randint(1, 8), 1)
            trace = simulate(inst, random_configuration(rng, inst.n), 2 ** inst.n)
            assert trace.reason in (FIXED_POINT, CYCLE)

    def test_rejects_zero_limit(self):
        with pytest.raises(ValueError):
            simulate(k3(), (1, 1, 1), 0)


class TestCriticalSet:
    def test_triangle_examples(self):
        assert is_critical_set(k3(), [0, 1])
        assert not is_critical_set(k3(), [0])

    def test_unit_thresholds_only_full_set(self):
        rng = random.Random("unit:1")
        for _ in range(20):
            inst = random_instance(rng, rng.randint(2, 7), 1, threshold_cap=1)
            assert is_critical_set(inst, range(inst.n))
            drop = rng.randrange(inst.n)
            assert not is_critical_set(inst, set(range(inst.n)) - {drop})

    def test_matches_short_simulation(self):
        rng = random.Random("simeq:1")
        for _ in range(200):
            inst = random_instance(rng, rng.randint(1, 9), 1)
            members = [v for v in range(inst.n) if rng.random() < 0.5]
            trace = simulate(inst, indicator(inst.n, members), 2)
            assert is_critical_set(inst, members) == trace.converges_by(1)

    def test_first_violation(self):
        assert first_violation(k3(), [0, 1]) is None
        assert first_violation(k3(), [0]) == (1, "stays-zero")
        inst = p3()
        assert first_violation(inst, [0]) == (1, "stays-zero")
        assert first_violation(inst, [0, 1, 2]) is None
        assert first_violation(validate_instance(2, [(0, 1)], (1, 1), 1), [0]) == (0, "drops-out")


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9), n=st.integers(1, 9))
def test_two_step_evaluators_agree(seed, n):
    rng = random.Random(seed)
    inst = random_instance(rng, n, 1)
    config = random_configuration(rng, n)
    for _ in range(4):
        expected = edge_tally_step(inst, config)
        assert step(inst, config) == expected
        config = expected
