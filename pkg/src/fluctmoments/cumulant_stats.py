"""Classical cumulants from mixed moments, and plug-in Monte Carlo estimates.

Covariances are bilinear: cov(x, y) = E[xy] - E[x]E[y], with no complex
conjugation.  Estimates are plug-in (biased at order 1/samples); standard
errors come from a delete-a-group jackknife.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .partition_core import GroundSet, enumerate_partitions

JACKKNIFE_GROUPS = 50


class IncompleteTable(ValueError):
    pass


class TooFewSamples(ValueError):
    pass


class OrderTooHigh(ValueError):
    pass


@dataclass(frozen=True)
class MomentTable:
    """E[prod_{b in B} x_b] for every subset B of {1..n}."""

    n: int
    values: Mapping[frozenset, complex]

    def __getitem__(self, subset) -> complex:
        key = frozenset(subset)
        if not key:
            return 1
        try:
            return self.values[key]
        except KeyError:
            raise IncompleteTable(f"no moment for subset {sorted(key)}") from None


@dataclass(frozen=True)
class CumulantEstimate:
    value: complex
    std_error: float
    n_samples: int


def _partition_weights(n: int):
    # (blocks, mu(pi, 1_n)) for pi in P(n)
    out = []
    for pi in enumerate_partitions(GroundSet.plain(n)):
        r = len(pi)
        out.append((pi.blocks, (-1) ** (r - 1) * math.factorial(r - 1)))
    return out


def cumulant_from_moments(table: MomentTable, n: int | None = None, subset: Sequence[int] | None = None) -> complex:
    """c_n = sum_{pi in P(n)} mu(pi, 1_n) prod_B E[prod_{b in B} x_b].

    ``subset`` restricts to the joint cumulant of the listed variables.
    """
    idx = list(subset) if subset is not None else list(range(1, (n or table.n) + 1))
    total = 0
    for blocks, w in _partition_weights(len(idx)):
        term = w
        for b in blocks:
            term = term * table[{idx[i - 1] for i in b}]
        total += term
    return total


def cumulant_table(table: MomentTable) -> dict[frozenset, complex]:
    """Joint cumulant of every nonempty subset of the variables."""
    return {frozenset(s): cumulant_from_moments(table, subset=s)
            for r in range(1, table.n + 1) for s in combinations(range(1, table.n + 1), r)}


def moments_from_cumulants(cumulants: Mapping[frozenset, complex], n: int) -> MomentTable:
    """Inverse relation: E[prod_B x] = sum over partitions of B of prod of cumulants."""
    values = {}
    for r in range(1, n + 1):
        for s in combinations(range(1, n + 1), r):
            total = 0
            for pi in enumerate_partitions(GroundSet.plain(r)):
                term = 1
                for b in pi.blocks:
                    term = term * cumulants[frozenset(s[i - 1] for i in b)]
                total += term
            values[frozenset(s)] = total
    return MomentTable(n, values)


def _plug_in(moments: Mapping[frozenset, complex], n: int) -> complex:
    total = 0j
    for blocks, w in _partition_weights(n):
        term = complex(w)
        for b in blocks:
            term *= moments[frozenset(b)]
        total += term
    return total


def estimate_mixed_cumulant(samples: Sequence[Sequence[complex]], n: int | None = None,
                            groups: int = JACKKNIFE_GROUPS) -> CumulantEstimate:
    """Plug-in estimate of the joint cumulant of n aligned sample streams.

    Streams are shifted by their first sample before forming moments (the
    cumulant is shift invariant for n >= 2), so a constant stream gives an
    exact zero.  The standard error is a delete-a-group jackknife over
    ``groups`` contiguous groups; for complex values it is the square root
    of the summed real and imaginary variances.
    """
    x = np.asarray(samples, dtype=complex)
    if x.ndim == 1:
        x = x[None, :]
    n = x.shape[0] if n is None else n
    if x.shape[0] != n:
        raise ValueError(f"expected {n} streams, got {x.shape[0]}")
    if n > 4:
        raise OrderTooHigh("cumulant estimation is limited to n <= 4")
    S = x.shape[1]
    if S < 2:
        raise TooFewSamples("need at least two samples")
    if n >= 2:
        x = x - x[:, :1]
    subsets = [frozenset(s) for r in range(1, n + 1) for s in combinations(range(1, n + 1), r)]
    products = {}
    for s in subsets:
        p = np.ones(S, dtype=complex)
        for b in sorted(s):
            p = p * x[b - 1]
        products[s] = p
    full = {s: products[s].mean() for s in subsets}
    value = _plug_in(full, n)

    G = min(groups, S)
    edges = np.linspace(0, S, G + 1).astype(int)
    sums = {s: np.add.reduceat(products[s], edges[:-1]) for s in subsets}
    totals = {s: products[s].sum() for s in subsets}
    sizes = np.diff(edges)
    loo = np.empty(G, dtype=complex)
    for g in range(G):
        keep = S - sizes[g]
        loo[g] = _plug_in({s: (totals[s] - sums[s][g]) / keep for s in subsets}, n)
    dev = loo - loo.mean()
    se = math.sqrt((G - 1) / G * float(np.sum(np.abs(dev) ** 2)))
    return CumulantEstimate(complex(value), se, S)


def plug_in_covariance(x: Sequence[complex], y: Sequence[complex]) -> CumulantEstimate:
    return estimate_mixed_cumulant([x, y], 2)
