"""Signature and signed-permutation ensembles, the DFT-based conjugators and
the centred deterministic factors A_k, B_l.

Conjugator cases (U1, U2):

* ``case1``: (W, HW/√N)
* ``case2``: (W, XHW/√N)
* ``case3``: (HW/√N, XHW/√N)
* ``haar_like``: (W1, HW2/√N) with W1, W2 independent

Every trace statistic used here depends on the pair only through
``V = U1* U2``, so the samplers also provide V directly in O(N^2).
"""
from __future__ import annotations

import functools
import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .dft_gauss import dft_matrix
from .partition_core import IndexTuple, kernel

CASES = ("case1", "case2", "case3", "haar_like")
CASE_ALIASES = {"1": "case1", "2": "case2", "3": "case3", "haar": "haar_like",
                "case1": "case1", "case2": "case2", "case3": "case3", "haar_like": "haar_like"}


class EnsembleError(ValueError):
    pass


class DomainMismatch(EnsembleError):
    pass


class TooLargeForExactEnumeration(EnsembleError):
    pass


class SpecInvalid(EnsembleError):
    pass


def normalize_case(case: str) -> str:
    try:
        return CASE_ALIASES[str(case)]
    except KeyError:
        raise SpecInvalid(f"unknown conjugator case {case!r}") from None


# ------------------------------------------------------------------ samplers

@dataclass(frozen=True)
class SignedPermutation:
    """W(i, j) = signs[i] if i == perm[j] else 0 (0-based)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise EnsembleError("perm must be a bijection of 0..N-1")
        if len(self.signs) != len(self.perm) or any(s not in (-1, 1) for s in self.signs):
            raise EnsembleError("signs must be ±1, one per row")

    @property
    def n(self) -> int:
        return len(self.perm)

    def matrix(self, dtype=np.int64) -> np.ndarray:
        N = self.n
        w = np.zeros((N, N), dtype=dtype)
        p = np.asarray(self.perm)
        w[p, np.arange(N)] = np.asarray(self.signs)[p]
        return w


def sample_signature(N: int, rng: np.random.Generator) -> np.ndarray:
    return np.diag(rng.choice(np.array([-1.0, 1.0]), size=N))


def sample_signed_permutation(N: int, rng: np.random.Generator) -> SignedPermutation:
    perm = rng.permutation(N)
    signs = rng.choice(np.array([-1, 1]), size=N)
    return SignedPermutation(tuple(int(x) for x in perm), tuple(int(s) for s in signs))


def all_signed_permutations(N: int) -> np.ndarray:
    """Every N×N signed permutation matrix, stacked along axis 0 (int64)."""
    mats = []
    for perm in itertools.permutations(range(N)):
        for signs in itertools.product((-1, 1), repeat=N):
            mats.append(SignedPermutation(perm, signs).matrix())
    return np.array(mats, dtype=np.int64).reshape(-1, N, N)


def all_signatures(N: int) -> np.ndarray:
    return np.array([np.diag(s) for s in itertools.product((-1, 1), repeat=N)], dtype=np.int64).reshape(-1, N, N)


# --------------------------------------------------------- entry expectations

def _same_domain(i: IndexTuple, j: IndexTuple) -> None:
    if i.domain != j.domain:
        raise DomainMismatch("index tuples live on different domains")


def expected_entry_product_signature(i: IndexTuple, j: IndexTuple) -> int:
    """E[prod_s X(i_s, j_s)] for a uniform signature matrix X."""
    _same_domain(i, j)
    return int(dict(i.values) == dict(j.values) and kernel(i).is_even)


def expected_entry_product_signed_perm(i: IndexTuple, j: IndexTuple, N: int) -> Fraction:
    """E[prod_s W(i_s, j_s)] for a uniform N×N signed permutation W.

    Zero unless ker(i) == ker(j) is even; then (N - #pi)!/N!, and 0 when the
    kernel has more blocks than N.
    """
    _same_domain(i, j)
    pi = kernel(i)
    if pi != kernel(j) or not pi.is_even or len(pi) > N:
        return Fraction(0)
    return Fraction(math.factorial(N - len(pi)), math.factorial(N))


def exact_expectation_small_N(f: Callable, N: int, include_signature: bool = False, vectorized: bool = False):
    """Average of ``f`` over all signed permutations (and signatures).

    ``f`` receives integer matrices ``W`` (and ``X`` when
    ``include_signature``).  With ``vectorized=True`` it receives the full
    stacks (shape ``(G, N, N)``) and must return one value per group
    element.  Integer or rational results are averaged exactly and returned
    as a :class:`Fraction`; anything else is averaged with compensated
    summation and returned as a complex number.
    """
    if N > 5 or (include_signature and N > 4):
        raise TooLargeForExactEnumeration(f"N={N} is too large for exact enumeration")
    W = all_signed_permutations(N)
    if include_signature:
        X = all_signatures(N)
        Wg = np.repeat(W, len(X), axis=0)
        Xg = np.tile(X, (len(W), 1, 1))
        args = (Wg, Xg)
    else:
        args = (W,)
    if vectorized:
        values = list(np.asarray(f(*args)).ravel())
    else:
        values = [f(*a) for a in zip(*args)]
    count = len(values)
    if all(isinstance(v, (int, np.integer, Fraction)) for v in values):
        return Fraction(sum(Fraction(int(v)) if not isinstance(v, Fraction) else v for v in values), count)
    values = [complex(v) for v in values]
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values)) / count


def exact_entry_moments(I: np.ndarray, J: np.ndarray, N: int, ensemble: str = "signed_perm",
                        chunk: int = 4096) -> list[Fraction]:
    """Exact E[prod_s M(I[r, s], J[r, s])] for each row r (0-based indices).

    ``ensemble`` is ``signed_perm`` or ``signature``; the average runs over
    the whole finite group in integer arithmetic.
    """
    if N > 5:
        raise TooLargeForExactEnumeration(f"N={N} is too large for exact enumeration")
    G = all_signed_permutations(N) if ensemble == "signed_perm" else all_signatures(N)
    I, J = np.atleast_2d(I), np.atleast_2d(J)
    out = []
    for a in range(0, len(I), chunk):
        prod = np.ones((len(G), min(chunk, len(I) - a)), dtype=np.int64)
        for s in range(I.shape[1]):
            prod *= G[:, I[a:a + chunk, s], J[a:a + chunk, s]]
        out += [Fraction(int(v), len(G)) for v in prod.sum(axis=0)]
    return out


# ------------------------------------------------------------------ conjugators

def sample_conjugators(case: str, N: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Dense (U1, U2) for one draw."""
    case = normalize_case(case)
    H = dft_matrix(N) / math.sqrt(N)
    W = sample_signed_permutation(N, rng).matrix(float)
    if case == "haar_like":
        W2 = sample_signed_permutation(N, rng).matrix(float)
        return W, H @ W2
    if case == "case1":
        return W, H @ W
    x = rng.choice(np.array([-1.0, 1.0]), size=N)
    XHW = (x[:, None] * H) @ W
    if case == "case2":
        return W, XHW
    return H @ W, XHW


def conjugator_product(case: str, N: int, rng: np.random.Generator, H: np.ndarray | None = None) -> np.ndarray:
    """V = U1* U2 for one draw; consumes the generator exactly like
    :func:`sample_conjugators`."""
    case = normalize_case(case)
    H = dft_matrix(N) if H is None else H
    s = sample_signed_permutation(N, rng)
    p = np.asarray(s.perm)
    e = np.asarray(s.signs, dtype=float)[p]
    if case == "haar_like":
        s2 = sample_signed_permutation(N, rng)
        p2 = np.asarray(s2.perm)
        e2 = np.asarray(s2.signs, dtype=float)[p2]
        return (e[:, None] * e2[None, :]) * H[np.ix_(p, p2)] / math.sqrt(N)
    sign = e[:, None] * e[None, :]
    if case == "case1":
        return sign * H[np.ix_(p, p)] / math.sqrt(N)
    x = rng.choice(np.array([-1.0, 1.0]), size=N)
    if case == "case2":
        return sign * (x[:, None] * H)[np.ix_(p, p)] / math.sqrt(N)
    # H* diag(x) H is circulant: entry (a, b) = sum_c x_c ω^{c(b-a)}
    g = np.fft.fft(x)
    idx = (np.arange(N)[None, :] - np.arange(N)[:, None]) % N
    return sign * g[idx][np.ix_(p, p)] / N


def exact_conjugator_products(case: str, N: int) -> np.ndarray:
    """V = U1* U2 for every element of the case's finite group, stacked."""
    case = normalize_case(case)
    H = dft_matrix(N) / math.sqrt(N)
    W = all_signed_permutations(N).astype(float)
    if case == "case1":
        return np.einsum("gji,jk,gkl->gil", W, H, W)
    if case == "haar_like":
        left = np.einsum("gji,jk->gik", W, H)
        return np.einsum("gik,hkl->ghil", left, W).reshape(-1, N, N)
    X = all_signatures(N).astype(float)
    if case == "case2":
        XH = np.einsum("xij,jk->xik", X, H)
        return np.einsum("gji,xjk,gkl->gxil", W, XH, W).reshape(-1, N, N)
    M = np.einsum("ji,xjk,kl->xil", H.conj(), X, H)
    return np.einsum("gji,xjk,gkl->gxil", W, M, W).reshape(-1, N, N)


# ------------------------------------------------------- deterministic matrices

@dataclass(frozen=True)
class DeterministicFamily:
    """A rule N -> self-adjoint N×N matrix.

    ``kind`` is ``diagonal`` (``pattern`` repeated cyclically down the
    diagonal), ``rotated`` (the same spectrum conjugated by a Haar-orthogonal
    matrix drawn from ``seed``), or ``explicit`` (a fixed matrix).
    """

    kind: str = "diagonal"
    pattern: tuple[float, ...] = (1.0, -1.0)
    seed: int = 0
    matrix: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("diagonal", "rotated", "explicit"):
            raise SpecInvalid(f"unknown family kind {self.kind!r}")
        if self.kind == "explicit":
            if self.matrix is None:
                raise SpecInvalid("explicit family needs a matrix")
            a = np.asarray(self.matrix)
            if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.allclose(a, a.conj().T, atol=1e-12, rtol=0):
                raise SpecInvalid("explicit matrix must be square and self-adjoint")
        elif not self.pattern:
            raise SpecInvalid("spectrum pattern must be nonempty")

    def spectrum(self, N: int) -> np.ndarray:
        pat = np.asarray(self.pattern, dtype=float)
        return pat[np.arange(N) % len(pat)]

    def is_diagonal(self) -> bool:
        return self.kind == "diagonal"

    def build(self, N: int) -> np.ndarray:
        if self.kind == "explicit":
            a = np.asarray(self.matrix)
            if a.shape[0] != N:
                raise SpecInvalid(f"explicit matrix has size {a.shape[0]}, not {N}")
            return a.copy()
        d = self.spectrum(N)
        if self.kind == "diagonal":
            return np.diag(d)
        q, r = np.linalg.qr(np.random.default_rng([self.seed, N]).standard_normal((N, N)))
        q = q * np.sign(np.diag(r))
        a = (q * d) @ q.T
        return (a + a.T) / 2


def load_matrix_file(path: str | Path) -> np.ndarray:
    """Read ``N`` then N rows of N numbers; the matrix must be symmetric."""
    path = Path(path)
    lines = [ln.split() for ln in path.read_text().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 1:
        raise SpecInvalid(f"{path}: first line must hold N")
    N = int(lines[0][0])
    rows = lines[1:]
    if len(rows) != N or any(len(r) != N for r in rows):
        raise SpecInvalid(f"{path}: expected {N} rows of {N} numbers")
    a = np.array([[float(x) for x in r] for r in rows])
    if not np.allclose(a, a.T, atol=1e-12, rtol=0):
        raise SpecInvalid(f"{path}: matrix is not symmetric")
    return a


# ----------------------------------------------------- ensemble description

def poly_eval(coeffs: Sequence[float], D: np.ndarray) -> np.ndarray:
    """p(D) for ascending coefficients c0 + c1 x + c2 x^2 + ..."""
    N = D.shape[0]
    out = np.zeros_like(D, dtype=np.result_type(D, float))
    for c in reversed(list(coeffs)):
        out = out @ D + c * np.eye(N)
    return out


@dataclass(frozen=True)
class EnsembleSpec:
    case: str
    m1: int = 1
    m2: int = 1
    deterministic: tuple[DeterministicFamily, DeterministicFamily] = (DeterministicFamily(), DeterministicFamily())
    polys: tuple[tuple[float, ...], ...] | None = None
    qpolys: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "case", normalize_case(self.case))
        if self.m1 < 1 or self.m2 < 1:
            raise SpecInvalid("m1 and m2 must be positive")
        if len(self.deterministic) != 2:
            raise SpecInvalid("need two deterministic families")
        x = ((0.0, 1.0),)
        p = tuple(tuple(map(float, c)) for c in (self.polys or x))
        q = tuple(tuple(map(float, c)) for c in (self.qpolys or p))
        if len(p) == 1:
            p = p * (2 * self.m1)
        if len(q) == 1:
            q = q * (2 * self.m2)
        if len(p) != 2 * self.m1 or len(q) != 2 * self.m2:
            raise SpecInvalid("need 2*m1 polynomials p and 2*m2 polynomials q")
        for c in p + q:
            if len(c) < 2 or all(v == 0 for v in c[1:]):
                raise SpecInvalid("every polynomial must have degree >= 1")
        object.__setattr__(self, "polys", p)
        object.__setattr__(self, "qpolys", q)


@dataclass
class CenteredFactors:
    A: list[np.ndarray]
    B: list[np.ndarray]
    diagonal: bool

    def trace_y(self, V: np.ndarray) -> complex:
        return alternating_trace(self.A, V, self.diagonal)

    def trace_z(self, V: np.ndarray) -> complex:
        return alternating_trace(self.B, V, self.diagonal)

    def build_y(self, U1: np.ndarray, U2: np.ndarray) -> np.ndarray:
        return _conjugated_product(self.A, U1, U2)

    def build_z(self, U1: np.ndarray, U2: np.ndarray) -> np.ndarray:
        return _conjugated_product(self.B, U1, U2)


def _conjugated_product(mats, U1, U2):
    out = np.eye(U1.shape[0], dtype=complex)
    for k, a in enumerate(mats, start=1):
        U = U1 if k % 2 else U2
        out = out @ U @ a @ U.conj().T
    return out


def alternating_trace(mats: Sequence[np.ndarray], V: np.ndarray, diagonal: bool = False) -> complex:
    """Tr(A_1 V A_2 V* A_3 V ...) with V and V* alternating after each factor.

    Equals Tr(prod_k U_{i_k} A_k U_{i_k}*) for V = U1* U2 and i_k
    alternating 1, 2, 1, 2, ...  The product is split into two halves and
    the final trace taken as an entrywise sum, saving one matrix product.
    """
    if diagonal and len(mats) == 2:
        # sum_ij a_i |V_ij|^2 b_j
        w = V.real ** 2 + V.imag ** 2 if np.iscomplexobj(V) else V ** 2
        return complex(np.diagonal(mats[0]) @ w @ np.diagonal(mats[1]))
    Vh = V.conj().T
    steps = []
    for k, a in enumerate(mats):
        right = V if k % 2 == 0 else Vh
        steps.append(np.diagonal(a)[:, None] * right if diagonal else a @ right)
    if len(steps) == 1:
        return complex(np.trace(steps[0]))
    h = len(steps) // 2
    left = functools.reduce(np.matmul, steps[:h])
    rest = functools.reduce(np.matmul, steps[h:])
    return complex(np.sum(left * rest.T))


def build_centered_factors(spec: EnsembleSpec, N: int) -> CenteredFactors:
    """A_k = p_k(D_{i_k}) - tr(p_k(D_{i_k})) I with i_k = 1 for odd k, 2 for
    even k; likewise B_l from q_l."""
    D = [fam.build(N) for fam in spec.deterministic]
    diagonal = all(fam.is_diagonal() for fam in spec.deterministic)

    def centred(coeffs, k):
        a = poly_eval(coeffs, D[0 if k % 2 else 1])
        a = a - (np.trace(a) / N) * np.eye(N)
        if np.allclose(a, 0, atol=1e-12):
            warnings.warn(f"centred factor {k} vanishes identically", RuntimeWarning, stacklevel=3)
        return a

    A = [centred(c, k) for k, c in enumerate(spec.polys, start=1)]
    B = [centred(c, l) for l, c in enumerate(spec.qpolys, start=1)]
    for a in A + B:
        if abs(np.trace(a)) > 1e-12 * max(1.0, N):
            raise SpecInvalid("centred factor is not trace zero")
    return CenteredFactors(A, B, diagonal)
