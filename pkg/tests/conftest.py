from __future__ import annotations

import itertools

import numpy as np
import pytest

from fluctmoments.partition_core import SetPartition

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


def brute_graph_sum(pi: SetPartition, mats) -> complex:
    """Sum over every j: [±m] -> [N] that is constant on the blocks of pi,
    written as a full index grid (no contraction)."""
    m = len(mats)
    N = mats[0].shape[0]
    r = len(pi)
    grids = np.indices((N,) * r).reshape(r, -1)
    total = np.ones(grids.shape[1], dtype=complex)
    for k in range(1, m + 1):
        total *= mats[k - 1][grids[pi.block_index(-k)], grids[pi.block_index(k)]]
    return complex(total.sum())


def brute_graph_sum_tuples(pi: SetPartition, mats) -> complex:
    """Same sum, looping over all tuples on [±m] and filtering by kernel."""
    m = len(mats)
    N = mats[0].shape[0]
    elems = [x for k in range(1, m + 1) for x in (-k, k)]
    total = 0j
    for vals in itertools.product(range(N), repeat=len(elems)):
        j = dict(zip(elems, vals))
        if all(len({j[x] for x in b}) == 1 for b in pi.blocks):
            p = 1 + 0j
            for k in range(1, m + 1):
                p *= mats[k - 1][j[-k], j[k]]
            total += p
    return total


def random_complex(rng, N, count):
    return [rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N)) for _ in range(count)]


def trace_zero(a):
    N = a.shape[0]
    return a - np.trace(a) / N * np.eye(N)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
