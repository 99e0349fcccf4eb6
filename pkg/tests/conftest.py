from __future__ import annotations

import pytest

from helpers import random_small_instance

from lsckc import exact_opt

CORPUS_SIZE = 220


@pytest.fixture(scope="session")
def small_corpus():
    """Seeded random instances with their exact optima (criterion-1 corpus)."""
    out = []
    for seed in range(CORPUS_SIZE):
        inst = random_small_instance(seed)
        hit = exact_opt(inst)
        assert hit is not None, f"corpus seed {seed} unexpectedly infeasible"
        out.append((seed, inst, hit[0], hit[1]))
    return out


@pytest.fixture(scope="session")
def fig2_rows():
    """Planted-corpus sweep rows shared by the desk-scale criteria."""
    from lsckc.bench import sweep

    return sweep(
        n=1500,
        k=50,
        dim=2,
        constraint_pcts=(2, 4, 6, 8, 10),
        repetition_pcts=(0,),
        seeds=20,
        base_seed=0,
        solvers=("lsckc", "greedy"),
    )
