import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fcritical.core import Graph, validate_instance
from fcritical.generators import connected_graph_atlas, seeded_atlas_thresholds

MASTER_SEED = 1


@pytest.fixture(scope="session")
def atlas7() -> list[Graph]:
    return connected_graph_atlas(7)


@pytest.fixture(scope="session")
def atlas5() -> list[Graph]:
    return connected_graph_atlas(5)


def atlas_instances(graphs, k_values, variants=3, seed=MASTER_SEED, cap=None, floor_max=None):
    """Every atlas graph under ``variants`` seeded threshold draws and each budget."""
    for g in graphs:
        for variant in range(variants):
            th = seeded_atlas_thresholds(g, seed, variant, cap=cap, floor_max=floor_max)
            for k in k_values:
                yield validate_instance(g.n, g.edges, th, k)
