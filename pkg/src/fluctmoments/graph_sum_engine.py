"""Graph sums of square matrices indexed by partitions of [±m].

A partition ``pi`` of ``[±m]`` gives a multigraph ``G_pi`` whose vertices are
the blocks of ``pi`` and whose k-th edge joins the block of ``+k`` to the
block of ``-k``.  The graph sum of matrices ``A_1..A_m`` is

    sum over j with ker(j) >= pi of  prod_k A_k(j(-k), j(+k)),

i.e. one summation index per vertex, with ``A_k`` read from the vertex of
``-k`` (row) to the vertex of ``+k`` (column).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .partition_core import SetPartition, coarsenings, mobius

DEFAULT_BUDGET = 10**8


class GraphSumError(ValueError):
    pass


class WrongGroundSet(GraphSumError):
    pass


class DimensionMismatch(GraphSumError):
    pass


class BudgetExceeded(GraphSumError):
    pass


class NotCycleOrLoop(GraphSumError):
    pass


def _order(pi: SetPartition) -> int:
    g = pi.ground
    m = len(g) // 2
    if not g.is_signed or set(g.elements) != {x for k in range(1, m + 1) for x in (-k, k)}:
        raise WrongGroundSet("graph sums need a partition of [±m]")
    return m


@dataclass(frozen=True)
class PairGraph:
    """Multigraph with one vertex per block and edge k = (tail, head).

    ``tail`` is the block of ``+k`` and ``head`` the block of ``-k``.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def component_count(self, skip: int | None = None) -> int:
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, (a, b) in enumerate(self.edges):
            if i != skip:
                parent[find(a)] = find(b)
        return len({find(v) for v in range(self.n_vertices)})

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        adj = [[] for _ in range(self.n_vertices)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = [False] * self.n_vertices
        out = []
        for v in range(self.n_vertices):
            if seen[v]:
                continue
            stack, comp = [v], []
            seen[v] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return out


@dataclass(frozen=True)
class ForestSummary:
    components: tuple[frozenset, ...]
    bridges: frozenset
    exponent: Fraction


def build_graph(pi: SetPartition) -> PairGraph:
    m = _order(pi)
    edges = tuple((pi.block_index(k), pi.block_index(-k)) for k in range(1, m + 1))
    return PairGraph(len(pi), edges)


def find_bridges(g: PairGraph) -> frozenset:
    """Labels (1-based) of the cutting edges, via edge-indexed low-link DFS.

    Parallel edges are distinguished by index, so a doubled edge is never
    reported; loops are never bridges.
    """
    adj = [[] for _ in range(g.n_vertices)]
    for i, (a, b) in enumerate(g.edges):
        if a == b:
            continue
        adj[a].append((b, i))
        adj[b].append((a, i))
    disc = [-1] * g.n_vertices
    low = [0] * g.n_vertices
    out = set()
    clock = 0
    for root in range(g.n_vertices):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    out.add(via + 1)
    return frozenset(out)


def forest_summary(pi: SetPartition) -> ForestSummary:
    g = build_graph(pi)
    bridges = find_bridges(g)
    kept = PairGraph(g.n_vertices, tuple(e for i, e in enumerate(g.edges) if i + 1 not in bridges))
    comps = kept.components()
    where = {v: c for c, vs in enumerate(comps) for v in vs}
    deg = [0] * len(comps)
    for label in bridges:
        a, b = g.edges[label - 1]
        deg[where[a]] += 1
        deg[where[b]] += 1
    exponent = Fraction(0)
    for d in deg:
        if d == 0:
            exponent += 1
        elif d == 1:
            exponent += Fraction(1, 2)
    return ForestSummary(tuple(frozenset(c) for c in comps), bridges, exponent)


def graph_sum_exponent(pi: SetPartition) -> Fraction:
    """tau_pi: sum over vertices of the bridge forest of 1 (isolated) or 1/2 (leaf)."""
    return forest_summary(pi).exponent


# ------------------------------------------------------------------ evaluation

def _check_matrices(matrices: Sequence[np.ndarray], m: int) -> int:
    if len(matrices) != m:
        raise DimensionMismatch(f"expected {m} matrices, got {len(matrices)}")
    shapes = {np.shape(a) for a in matrices}
    if len(shapes) != 1:
        raise DimensionMismatch("matrices must share one shape")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionMismatch("matrices must be square")
    return shape[0]


def _at_least(pi: SetPartition, matrices: Sequence[np.ndarray]) -> complex:
    operands = []
    for k, a in enumerate(matrices, start=1):
        operands += [np.asarray(a), [pi.block_index(-k), pi.block_index(k)]]
    return complex(np.einsum(*operands, [], optimize=len(matrices) > 3))


def _exactly_direct(pi: SetPartition, matrices: Sequence[np.ndarray], N: int) -> complex:
    rows = [pi.block_index(-k) for k in range(1, len(matrices) + 1)]
    cols = [pi.block_index(k) for k in range(1, len(matrices) + 1)]
    total = 0j
    for j in itertools.permutations(range(N), len(pi)):
        p = 1 + 0j
        for a, r, c in zip(matrices, rows, cols):
            p *= a[j[r], j[c]]
        total += p
    return total


def evaluate_graph_sum(pi: SetPartition, matrices: Sequence[np.ndarray], constraint: str = "at_least",
                       method: str = "mobius", budget: int = DEFAULT_BUDGET) -> complex:
    """Graph sum of ``matrices`` over ``pi``.

    ``constraint="at_least"`` sums over ker(j) >= pi; ``"exactly"`` over
    ker(j) == pi, either by Möbius inversion over coarsenings
    (``method="mobius"``) or by enumerating injective block assignments
    (``method="direct"``).
    """
    m = _order(pi)
    N = _check_matrices(matrices, m)
    if N ** len(pi) > budget:
        raise BudgetExceeded(f"N^#pi = {N}^{len(pi)} exceeds the budget of {budget}")
    if constraint == "at_least":
        return _at_least(pi, matrices)
    if constraint != "exactly":
        raise ValueError(f"unknown constraint {constraint!r}")
    if method == "direct":
        return _exactly_direct(pi, matrices, N)
    if method != "mobius":
        raise ValueError(f"unknown method {method!r}")
    total = 0j
    for theta in coarsenings(pi):
        total += mobius(pi, theta) * _at_least(theta, matrices)
    return total


def operator_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a), 2))


# --------------------------------------------------------------- factorization

@dataclass(frozen=True)
class Cycle:
    """Tr of an ordered product; each entry is (label, transposed)."""

    steps: tuple[tuple[int, bool], ...]

    def evaluate(self, matrices: Sequence[np.ndarray]) -> complex:
        prod = None
        for label, transposed in self.steps:
            a = np.asarray(matrices[label - 1])
            a = a.T if transposed else a
            prod = a if prod is None else prod @ a
        return complex(np.trace(prod))

    def __str__(self) -> str:
        return "Tr(" + "".join(f"A{k}" + ("^T" if t else "") for k, t in self.steps) + ")"


@dataclass(frozen=True)
class Loop:
    """Tr of the entrywise product of the listed matrices."""

    labels: tuple[int, ...]

    def evaluate(self, matrices: Sequence[np.ndarray]) -> complex:
        d = np.ones(np.shape(matrices[0])[0], dtype=complex)
        for k in self.labels:
            d = d * np.diagonal(np.asarray(matrices[k - 1]))
        return complex(d.sum())

    def __str__(self) -> str:
        return "Tr(" + "∘".join(f"A{k}" for k in self.labels) + ")"


@dataclass(frozen=True)
class TraceExpression:
    factors: tuple

    def evaluate(self, matrices: Sequence[np.ndarray]) -> complex:
        out = 1 + 0j
        for f in self.factors:
            out *= f.evaluate(matrices)
        return out

    def labels(self) -> list[int]:
        out = []
        for f in self.factors:
            out += [k for k, _ in f.steps] if isinstance(f, Cycle) else list(f.labels)
        return out

    def __str__(self) -> str:
        return "·".join(str(f) for f in self.factors)


def factor_graph_sum(pi: SetPartition) -> TraceExpression:
    """Factor the graph sum of ``pi`` into traces when every component is a
    cycle or a bouquet of loops; raises :class:`NotCycleOrLoop` otherwise."""
    g = build_graph(pi)
    deg = g.degrees()
    incident = [[] for _ in range(g.n_vertices)]
    for i, (a, b) in enumerate(g.edges):
        incident[a].append(i)
        if b != a:
            incident[b].append(i)
    factors = []
    for comp in g.components():
        start = comp[0]
        if len(comp) == 1 and deg[start] > 2:
            factors.append(Loop(tuple(i + 1 for i in incident[start])))
            continue
        if any(deg[v] != 2 for v in comp):
            raise NotCycleOrLoop("component is neither a cycle nor a multiple loop")
        steps = []
        used = set()
        v = start
        while True:
            nxt = [i for i in incident[v] if i not in used]
            if not nxt:
                break
            e = min(nxt)
            used.add(e)
            tail, head = g.edges[e]  # tail = block(+k), head = block(-k)
            if head == v:
                steps.append((e + 1, False))
                v = tail
            else:
                steps.append((e + 1, True))
                v = head
        factors.append(Cycle(tuple(steps)))
    return TraceExpression(tuple(factors))
