"""DFT matrix, partition polynomials, Gauss sums and vanishing-polynomial pairings.

For a partition ``pi`` of ``[±2m]`` the sum of

    h(j) = prod_k H(j(-2k+1), j(2k-1)) * conj(H(j(-2k), j(2k)))

over ``ker(j) >= pi`` equals ``sum_j exp(2πi p_pi(j) / N)`` where ``p_pi`` is
the integer quadratic form obtained from ``sum_k (-1)^k x_{-k} x_k`` by
identifying variables along blocks.  Summation indices run over
``0..N-1``; the ``(j-1)`` shift in the DFT entry formula makes this agree
with matrix indices ``1..N``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .partition_core import (
    GroundSet,
    GroundTooLarge,
    SetPartition,
    SignedPermutationMap,
    apply_permutation,
    coarsenings,
    enumerate_partitions,
    is_refinement,
    is_symmetric,
    mobius,
)
from .graph_sum_engine import DEFAULT_BUDGET, BudgetExceeded, WrongGroundSet


class ParityViolation(ValueError):
    pass


class ZeroModulus(ValueError):
    pass


class ShapeTooLarge(ValueError):
    pass


def dft_matrix(N: int) -> np.ndarray:
    """H(j1, j2) = ω^{(j1-1)(j2-1)} with ω = exp(-2πi/N)."""
    if N < 1:
        raise ValueError("N must be positive")
    j = np.arange(N)
    # reduce the exponent mod N before exponentiating
    return np.exp(-2j * np.pi * (np.outer(j, j) % N) / N)


# ------------------------------------------------------------ quadratic forms

@dataclass(frozen=True)
class QuadraticForm:
    """Integer form ``sum_{t<=s} a[t,s] x_t x_s`` in variables ``x_1..x_r``.

    Only nonzero coefficients are stored, keyed by ``(t, s)`` with t <= s.
    """

    r: int
    coefficients: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (t, s), a in self.coefficients.items():
            if t > s:
                t, s = s, t
            if not (1 <= t <= self.r and 1 <= s <= self.r):
                raise ValueError("variable index out of range")
            clean[(t, s)] = clean.get((t, s), 0) + int(a)
        object.__setattr__(self, "coefficients", {k: v for k, v in sorted(clean.items()) if v != 0})

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, t: int, s: int) -> int:
        return self.coefficients.get((min(t, s), max(t, s)), 0)

    def __call__(self, x) -> int:
        return sum(a * x[t - 1] * x[s - 1] for (t, s), a in self.coefficients.items())

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for (t, s), a in self.coefficients.items():
            mono = f"x{t}^2" if t == s else f"x{t}x{s}"
            terms.append(f"{a:+d}{mono}" if abs(a) != 1 else ("+" if a > 0 else "-") + mono)
        return " ".join(terms).lstrip("+")


def _half_order(pi: SetPartition) -> int:
    g = pi.ground
    n = len(g) // 2
    if n % 2 or not g.is_signed or set(g.elements) != {x for k in range(1, n + 1) for x in (-k, k)}:
        raise WrongGroundSet("partition polynomials need a partition of [±2m]")
    return n // 2


def partition_polynomial(pi: SetPartition) -> QuadraticForm:
    m = _half_order(pi)
    coeffs: dict[tuple[int, int], int] = {}
    for k in range(1, 2 * m + 1):
        t, s = pi.block_index(-k) + 1, pi.block_index(k) + 1
        key = (min(t, s), max(t, s))
        coeffs[key] = coeffs.get(key, 0) + (-1) ** k
    return QuadraticForm(len(pi), coeffs)


def quadratic_exponential_sum(form: QuadraticForm, N: int, budget: int = DEFAULT_BUDGET) -> complex:
    """``sum_{j in {0..N-1}^r} exp(2πi form(j) / N)`` by tensor contraction.

    Each monomial contributes a factor depending on at most two variables,
    so the sum is a tensor network contracted with ``np.einsum``.  The
    budget bounds the contraction's estimated flop count.
    """
    if form.is_zero:
        return complex(N ** form.r)
    x = np.arange(N, dtype=np.int64)
    operands = []
    touched = set()
    for (t, s), a in form.coefficients.items():
        touched |= {t, s}
        if t == s:
            phase = (a * x * x) % N
            operands += [np.exp(2j * np.pi * phase / N), [t]]
        else:
            phase = (a * np.outer(x, x)) % N
            operands += [np.exp(2j * np.pi * phase / N), [t, s]]
    path, info = np.einsum_path(*operands, [], optimize="greedy")
    flops = int(float(info.split("Optimized FLOP count:")[1].split()[0]))
    if flops > budget:
        raise BudgetExceeded(f"contraction needs ~{flops} flops, budget {budget}")
    value = complex(np.einsum(*operands, [], optimize=path))
    return value * N ** (form.r - len(touched))


def h_graph_sum(pi: SetPartition, N: int, constraint: str = "at_least", budget: int = DEFAULT_BUDGET) -> complex:
    """Sum of h(j) over ker(j) >= pi (``at_least``) or ker(j) == pi (``exactly``)."""
    if constraint == "at_least":
        return quadratic_exponential_sum(partition_polynomial(pi), N, budget)
    if constraint != "exactly":
        raise ValueError(f"unknown constraint {constraint!r}")
    # strip the strictly coarser contributions by Möbius inversion
    total = 0j
    for theta in coarsenings(pi):
        total += mobius(pi, theta) * quadratic_exponential_sum(partition_polynomial(theta), N, budget)
    return total


def h_function(j: Mapping[int, int], H: np.ndarray) -> complex:
    """h(j) for an index assignment on [±2m] (values 1..N)."""
    m = len(j) // 4
    out = 1 + 0j
    for k in range(1, m + 1):
        out *= H[j[-2 * k + 1] - 1, j[2 * k - 1] - 1] * np.conj(H[j[-2 * k] - 1, j[2 * k] - 1])
    return out


def h_matrices(N: int, m: int) -> list[np.ndarray]:
    """The 2m matrices whose graph sum over pi equals the h sum: H, H*, H, H*, ..."""
    H = dft_matrix(N)
    return [H if k % 2 else H.conj().T for k in range(1, 2 * m + 1)]


# ------------------------------------------------------------------ Gauss sums

@dataclass(frozen=True)
class GaussSumParams:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.c == 0 or self.a == 0:
            raise ZeroModulus("a and c must be nonzero")
        if (self.a * self.c + self.b) % 2:
            raise ParityViolation("a*c + b must be even")


def _gauss(a: int, b: int, c: int) -> complex:
    mod = 2 * abs(c)
    total = 0j
    for j in range(abs(c)):
        total += cmath.exp(1j * math.pi * ((a * j * j + b * j) % mod) / c)
    return total


def gauss_sum(p: GaussSumParams) -> complex:
    """S(a, b, c) = sum_{j=0}^{|c|-1} exp(πi (a j^2 + b j) / c)."""
    return _gauss(p.a, p.b, p.c)


def reciprocity_rhs(p: GaussSumParams) -> complex:
    a, b, c = p.a, p.b, p.c
    pref = math.sqrt(abs(c / a)) * cmath.exp(1j * math.pi * (abs(a * c) - b * b) / (4 * a * c))
    return pref * _gauss(-c, -b, a)


def reciprocity_residual(p: GaussSumParams) -> float:
    return abs(gauss_sum(p) - reciprocity_rhs(p))


# ------------------------------------------------------- two-cycle permutation

@dataclass(frozen=True)
class TwoBlockShape:
    """The permutation (-1,1,-2,2,...,-2m1,2m1)(-2m1-1,2m1+1,...,-2m,2m)."""

    m1: int
    m2: int
    sigma: SignedPermutationMap = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m1 < 1 or self.m2 < 1:
            raise ValueError("m1 and m2 must be positive")
        images = {}
        for lo, hi in ((1, 2 * self.m1), (2 * self.m1 + 1, 2 * self.m)):
            cyc = [x for k in range(lo, hi + 1) for x in (-k, k)]
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        object.__setattr__(self, "sigma", SignedPermutationMap(self.ground, images))

    @property
    def m(self) -> int:
        return self.m1 + self.m2

    @property
    def ground(self) -> GroundSet:
        return GroundSet.signed(2 * self.m)

    def power(self, t: int):
        """sigma^t as a plain function."""
        return self.sigma.power(t)


def _orbit_pairing(shape: TwoBlockShape, pairs) -> SetPartition | None:
    blocks = {frozenset(p) for p in pairs}
    flat = [x for b in blocks for x in b]
    if any(len(b) != 2 for b in blocks) or sorted(flat) != sorted(shape.ground.elements):
        return None
    return SetPartition(shape.ground, tuple(tuple(b) for b in blocks))


def classify_zero_pairings(shape: TwoBlockShape, with_conditions: bool = False):
    """Symmetric pairings pi of [±2m] given by the six orbit conditions under
    which p_{σ^{-1}∘pi} vanishes.

    Returns a list in canonical order; with ``with_conditions=True`` returns
    ``(pi, conditions)`` pairs, ``conditions`` being the set of condition
    numbers (1-6) that generate ``pi``.  Candidates that fail to be a
    symmetric pairing are dropped.
    """
    m1, m2 = shape.m1, shape.m2
    if m1 + m2 > 4:
        raise ShapeTooLarge("classification is limited to m1 + m2 <= 4")
    m = m1 + m2
    pw = {t: shape.power(t) for t in range(-4 * m, 4 * m + 1)}
    found: dict[SetPartition, set[int]] = {}

    def add(pairs, cond):
        pi = _orbit_pairing(shape, pairs)
        if pi is not None and is_symmetric(pi):
            found.setdefault(pi, set()).add(cond)

    def reflection(k, span):
        return [(pw[t](-k), pw[-t](k)) for t in range(1, span + 1)]

    anti1 = [(pw[t](-1), pw[t](-m1 - 1)) for t in range(1, 2 * m1 + 1)]
    anti2 = [(pw[t](-2 * m1 - 1), pw[t](-2 * m1 - m2 - 1)) for t in range(1, 2 * m2 + 1)]
    second = range(2 * m1 + 1, 2 * m + 1)

    if m1 == m2:
        for k in range(1, 2 * m2 + 1):
            for l in second:
                if (k + l) % 2 == 0:
                    add([(pw[t](-k), pw[-t](l)) for t in range(1, 4 * m1 + 1)], 1)
                else:
                    add([(pw[t](-k), pw[t](-l)) for t in range(1, 4 * m1 + 1)], 2)
    for k in range(1, 2 * m1 + 1):
        for l in second:
            add(reflection(k, 2 * m1) + reflection(l, 2 * m2), 3)
    if m1 % 2 and m2 % 2:
        add(anti1 + anti2, 4)
    if m2 % 2:
        for k in range(1, 2 * m1 + 1):
            add(reflection(k, 2 * m1) + anti2, 5)
    if m1 % 2:
        for l in second:
            add(anti1 + reflection(l, 2 * m2), 6)

    ordered = sorted(found, key=lambda p: [tuple(map(lambda x: (abs(x), x), b)) for b in p.blocks])
    if with_conditions:
        return [(p, frozenset(found[p])) for p in ordered]
    return ordered


def shifted_polynomial(pi: SetPartition, shape: TwoBlockShape) -> QuadraticForm:
    """p_{σ^{-1}∘pi}."""
    return partition_polynomial(apply_permutation(shape.sigma.inverse(), pi))


def zero_pairings_by_scan(shape: TwoBlockShape) -> list[SetPartition]:
    """Exhaustive version of :func:`classify_zero_pairings`."""
    return [pi for pi in enumerate_partitions(shape.ground, "symmetric_pairings")
            if shifted_polynomial(pi, shape).is_zero]


def orbit_relations_hold(pi: SetPartition, shape: TwoBlockShape, t_max: int | None = None) -> bool:
    """Check: -k~l implies σ^{-t}(-k) ~ σ^t(l), and -k~-l implies
    σ^t(-k) ~ σ^t(-l), for k, l in [2m] and 0 <= t <= t_max (default 4m)."""
    t_max = 4 * shape.m if t_max is None else t_max
    pw = {t: shape.power(t) for t in range(-t_max, t_max + 1)}
    n = 2 * shape.m
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            if pi.same_block(-k, l):
                if not all(pi.same_block(pw[-t](-k), pw[t](l)) for t in range(t_max + 1)):
                    return False
            if k != l and pi.same_block(-k, -l):
                if not all(pi.same_block(pw[t](-k), pw[t](-l)) for t in range(t_max + 1)):
                    return False
    return True


def minimal_zero_witness(pi: SetPartition) -> SetPartition | None:
    """A symmetric pairing theta <= pi with vanishing polynomial, if p_pi vanishes."""
    _half_order(pi)
    if len(pi.ground) > 8:
        raise GroundTooLarge("witness search is limited to [±2m] with 2m <= 8")
    if not partition_polynomial(pi).is_zero:
        return None
    for theta in enumerate_partitions(pi.ground, "symmetric_pairings"):
        if is_refinement(theta, pi) and partition_polynomial(theta).is_zero:
            return theta
    return None
