"""Covariances of conjugated trace products: limits, Monte Carlo, exact checks.

Y = prod_k U_{i_k} A_k U_{i_k}* and Z = prod_l U_{j_l} B_l U_{j_l}* with
i_k, j_l alternating 1, 2, 1, 2, ...  The left side is the bilinear
covariance of the unnormalized traces Tr Y and Tr Z; the limiting right
sides are written with normalized traces tr = Tr / N.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .cumulant_stats import CumulantEstimate, OrderTooHigh, estimate_mixed_cumulant
from .dft_gauss import TwoBlockShape, classify_zero_pairings, dft_matrix, zero_pairings_by_scan
from .graph_sum_engine import evaluate_graph_sum, graph_sum_exponent, operator_norm
from .matrix_ensembles import (
    DeterministicFamily,
    EnsembleSpec,
    SpecInvalid,
    TooLargeForExactEnumeration,
    build_centered_factors,
    conjugator_product,
    exact_conjugator_products,
    load_matrix_file,
    normalize_case,
)
from .partition_core import GroundSet, SetPartition, enumerate_partitions, mobius

CSV_COLUMNS = ["case", "N", "m1", "m2", "samples", "seed", "mc_re", "mc_im", "mc_se",
               "analytic_re", "analytic_im", "abs_err", "pass"]


class TraceNotZero(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class ConfigParseError(ValueError):
    pass


# ---------------------------------------------------------------- right sides

def _wrap(i: int, n: int) -> int:
    """Reduce i into 1..n, residue 0 mapping to n."""
    r = i % n
    return n if r == 0 else r


def _check_inputs(A: Sequence[np.ndarray], B: Sequence[np.ndarray]) -> int:
    shapes = {np.shape(a) for a in list(A) + list(B)}
    if len(shapes) != 1:
        raise DimensionMismatch("all matrices must share one shape")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionMismatch("matrices must be square")
    N = shape[0]
    for a in list(A) + list(B):
        if abs(np.trace(a)) / N > 1e-10:
            raise TraceNotZero("A_k and B_l must have trace zero")
    if len(A) % 2 or len(B) % 2 or not A or not B:
        raise DimensionMismatch("need an even, nonzero number of A's and B's")
    return N


def _tr(a: np.ndarray) -> complex:
    return complex(np.trace(a)) / a.shape[0]


def _tr_hadamard(a: np.ndarray, b: np.ndarray) -> complex:
    return complex(np.sum(np.diagonal(a) * np.diagonal(b))) / a.shape[0]


def _rotation_sum(A, B, shift, pair) -> complex:
    # prod_k pair(A_k, B_{shift(k)})
    n = len(A)
    out = 1 + 0j
    for k in range(1, n + 1):
        out *= pair(A[k - 1], B[_wrap(shift(k), n) - 1])
    return out


def case3_double_sum(A: Sequence[np.ndarray], B: Sequence[np.ndarray], form: str = "half") -> complex:
    """The part of the case-3 limit that does not need m1 == m2.

    ``form="half"``: 2 * sum over l1 in [m1], l2 in [m2];
    ``form="full"``: sum over l1 in [2 m1], l2 in [2 m2] with unit
    coefficient.  The summand is

        prod_{k1<=m1} tr(A_{l1+k1-1} A_{l1-k1}) * prod_{k2<=m2} tr(B_{l2+k2-1} B_{l2-k2}).

    The summand is invariant under l -> l + m, so the full form is exactly
    twice the half form; Monte Carlo agrees with the half form, which is
    the one used by :func:`analytic_rhs`.
    """
    n1, n2 = len(A), len(B)
    m1, m2 = n1 // 2, n2 // 2

    def prod(M, l, m, n):
        out = 1 + 0j
        for k in range(1, m + 1):
            out *= _tr(M[_wrap(l + k - 1, n) - 1] @ M[_wrap(l - k, n) - 1])
        return out

    if form == "half":
        r1, r2, coeff = range(1, m1 + 1), range(1, m2 + 1), 2
    elif form == "full":
        r1, r2, coeff = range(1, n1 + 1), range(1, n2 + 1), 1
    else:
        raise ValueError(f"unknown form {form!r}")
    total = sum(prod(A, l1, m1, n1) for l1 in r1) * sum(prod(B, l2, m2, n2) for l2 in r2)
    return coeff * total


def analytic_rhs(case: str, A: Sequence[np.ndarray], B: Sequence[np.ndarray], case3_form: str = "half") -> complex:
    """Limit of cov(Tr Y, Tr Z) for the given conjugator case."""
    case = normalize_case(case)
    _check_inputs(A, B)
    m1, m2 = len(A) // 2, len(B) // 2
    same = m1 == m2
    plain = lambda a, b: _tr(a @ b)
    if case in ("case1", "case2", "haar_like"):
        if not same:
            return 0j
        total = 0j
        for l in range(1, m1 + 1):
            total += _rotation_sum(A, B, lambda k: 2 * l - k, plain)
            if case == "case1":
                total += _rotation_sum(A, B, lambda k: 2 * l + k - 1, lambda a, b: _tr(a @ b.T))
            elif case == "case2":
                total += _rotation_sum(A, B, lambda k: 2 * l + k - 1, _tr_hadamard)
        return total
    total = case3_double_sum(A, B, case3_form)
    if same:
        for l in range(1, 2 * m1 + 1):
            total += _rotation_sum(A, B, lambda k: l - k, plain)
    return total


# ------------------------------------------------------------------ config

@dataclass
class ExperimentConfig:
    spec: EnsembleSpec
    n_grid: tuple[int, ...] = (32, 64, 128)
    samples: int = 2000
    master_seed: int = 12345
    tolerance_sigmas: float = 4.0
    drift_constant: float | None = None
    workers: int = 1
    force_identity: bool = False  # test hook: every conjugator is I

    def __post_init__(self):
        self.n_grid = tuple(int(n) for n in self.n_grid)
        if not self.n_grid or any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigParseError("n_grid must be nonempty and strictly increasing")
        if self.samples < 100:
            raise ConfigParseError("samples must be at least 100")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ConfigParseError("seed must be a 64-bit unsigned integer")


def sample_rng(seed: int, idx: int, N: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(idx), int(N)])


def _trace_chunk(args):
    spec, N, seed, start, stop, force_identity = args
    factors = build_centered_factors(spec, N)
    H = dft_matrix(N)
    ty = np.empty(stop - start, dtype=complex)
    tz = np.empty(stop - start, dtype=complex)
    for i, idx in enumerate(range(start, stop)):
        if force_identity:
            V = np.eye(N)
        else:
            V = conjugator_product(spec.case, N, sample_rng(seed, idx, N), H)
        ty[i] = factors.trace_y(V)
        tz[i] = factors.trace_z(V)
    return ty, tz


def sample_traces(config: ExperimentConfig, N: int, workers: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Tr Y and Tr Z for every sample index, in index order.

    Sample ``idx`` always uses the generator seeded by (seed, idx, N), so
    the output does not depend on the worker count.
    """
    workers = config.workers if workers is None else workers
    S = config.samples
    n_chunks = max(1, min(S, 4 * workers))
    edges = np.linspace(0, S, n_chunks + 1).astype(int)
    jobs = [(config.spec, N, config.master_seed, int(a), int(b), config.force_identity)
            for a, b in zip(edges[:-1], edges[1:]) if b > a]
    if workers <= 1:
        parts = [_trace_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_trace_chunk, jobs))
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def monte_carlo_cov(config: ExperimentConfig, N: int, workers: int | None = None) -> CumulantEstimate:
    ty, tz = sample_traces(config, N, workers)
    return estimate_mixed_cumulant([ty, tz], 2)


def default_drift_constant(A, B) -> float:
    out = 1.0
    for a in list(A) + list(B):
        out *= operator_norm(a)
    return out


# ------------------------------------------------------------- exact check

def p_chi(ground: GroundSet) -> list[SetPartition]:
    """Even partitions with no block of the form {k, -k}."""
    return [th for th in enumerate_partitions(ground, "even")
            if not any(len(b) == 2 and b[0] == -b[1] for b in th.blocks)]


def exact_cov_decomposition_check(case: str, A: Sequence[np.ndarray], B: Sequence[np.ndarray],
                                  return_sides: bool = False):
    """|LHS - RHS| where both sides are exact averages over the case's group.

    LHS = cov(Tr Y, Tr Z).  RHS = sum over theta in P_chi of
    [sum over even pi <= theta of c2[pi] mu(pi, theta)] * G_theta(A, B),
    with c2[pi] the covariance of the conjugator entries at an index tuple
    with kernel pi, and G_theta the graph sum of (A_1, A_2, B_1, B_2).
    """
    case = normalize_case(case)
    N = _check_inputs(A, B)
    if len(A) != 2 or len(B) != 2:
        raise ValueError("the exact check is implemented for m1 = m2 = 1")
    if N > 4:
        raise TooLargeForExactEnumeration(f"N={N} is too large for exact enumeration")
    Vs = exact_conjugator_products(case, N)
    Vh = np.conj(np.swapaxes(Vs, 1, 2))
    A1, A2 = (np.asarray(a, dtype=complex) for a in A)
    B1, B2 = (np.asarray(b, dtype=complex) for b in B)
    ty = np.einsum("ij,gjk,kl,gli->g", A1, Vs, A2, Vh)
    tz = np.einsum("ij,gjk,kl,gli->g", B1, Vs, B2, Vh)
    lhs = _group_cov(ty, tz)

    shape = TwoBlockShape(1, 1)
    sig = shape.sigma
    ground = shape.ground
    c2 = {}
    for pi in enumerate_partitions(ground, "even"):
        if len(pi) > N:
            continue
        j = {k: pi.block_index(k) for k in ground}
        vy = Vs[:, j[1], j[sig(1)]] * Vh[:, j[2], j[sig(2)]]
        vz = Vs[:, j[3], j[sig(3)]] * Vh[:, j[4], j[sig(4)]]
        c2[pi] = _group_cov(vy, vz)
    mats = [A1, A2, B1, B2]
    rhs = 0j
    for theta in p_chi(ground):
        coeff = sum(val * mobius(pi, theta) for pi, val in c2.items() if mobius(pi, theta))
        if coeff:
            rhs += coeff * evaluate_graph_sum(theta, mats)
    residual = abs(lhs - rhs)
    return (residual, lhs, rhs) if return_sides else residual


def _group_cov(x: np.ndarray, y: np.ndarray) -> complex:
    def mean(z):
        return complex(math.fsum(z.real), math.fsum(z.imag)) / len(z)

    return mean(x * y) - mean(x) * mean(y)


# -------------------------------------------------------------- cumulant scan

@dataclass
class ScanResult:
    order: int
    rows: list[tuple[int, CumulantEstimate]]
    slope: float
    slope_se: float
    raw_slope: float
    threshold: float = 0.2

    @property
    def passed(self) -> bool:
        return self.slope <= self.threshold + self.slope_se


def fit_loglog_slope(Ns: Sequence[int], estimates: Sequence[CumulantEstimate]) -> tuple[float, float, float]:
    """Weighted least-squares slope of log|c| against log N.

    Point weights come from the delta method, sigma_i = SE_i / |c_i|.
    Returns (weighted slope, its standard error, unweighted slope).
    """
    x = np.log(np.asarray(Ns, dtype=float))
    mags = np.array([max(abs(e.value), 1e-300) for e in estimates])
    y = np.log(mags)
    sig = np.array([max(e.std_error, 1e-300) for e in estimates]) / mags
    w = 1.0 / sig ** 2
    xb = np.sum(w * x) / np.sum(w)
    sxx = np.sum(w * (x - xb) ** 2)
    slope = float(np.sum(w * (x - xb) * y) / sxx)
    raw = float(np.polyfit(x, y, 1)[0])
    return slope, float(math.sqrt(1.0 / sxx)), raw


def bounded_cumulant_scan(config: ExperimentConfig, order: int = 3, workers: int | None = None) -> ScanResult:
    """Estimate c_n[Tr Y, ..., Tr Y] over the N grid and fit the growth rate."""
    if order > 4:
        raise OrderTooHigh("cumulant scan is limited to n <= 4")
    rows = []
    for N in config.n_grid:
        ty, _ = sample_traces(config, N, workers)
        rows.append((N, estimate_mixed_cumulant([ty] * order, order)))
    slope, se, raw = fit_loglog_slope([r[0] for r in rows], [r[1] for r in rows])
    return ScanResult(order, rows, slope, se, raw)


# ------------------------------------------------------------- experiments

@dataclass
class ReportRow:
    N: int
    mc: CumulantEstimate
    analytic: complex
    abs_err: float
    bound: float
    passed: bool


@dataclass
class FluctuationReport:
    config: ExperimentConfig
    rows: list[ReportRow] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        spec = self.config.spec
        g = lambda v: format(float(v), ".17g")
        for r in self.rows:
            w.writerow([spec.case, r.N, spec.m1, spec.m2, self.config.samples, self.config.master_seed,
                        g(r.mc.value.real), g(r.mc.value.imag), g(r.mc.std_error),
                        g(r.analytic.real), g(r.analytic.imag), g(r.abs_err),
                        "true" if r.passed else "false"])
        return buf.getvalue()

    def summary(self) -> str:
        spec = self.config.spec
        lines = [f"{spec.case} m1={spec.m1} m2={spec.m2} samples={self.config.samples} "
                 f"seed={self.config.master_seed} (plug-in covariance, jackknife SE)"]
        for r in self.rows:
            lines.append(f"  N={r.N:5d}  mc={r.mc.value.real:+.4f}{r.mc.value.imag:+.4f}i ± {r.mc.std_error:.4f}  "
                         f"analytic={r.analytic.real:+.4f}  |err|={r.abs_err:.4f}  bound={r.bound:.4f}  "
                         f"{'PASS' if r.passed else 'FAIL'}")
        lines.append(f"  wall time {self.wall_time:.1f}s; {'all rows pass' if self.all_passed else 'FAILURES'}")
        return "\n".join(lines)


def evaluate_row(config: ExperimentConfig, N: int, workers: int | None = None,
                 analytic_case: str | None = None) -> ReportRow:
    factors = build_centered_factors(config.spec, N)
    mc = monte_carlo_cov(config, N, workers)
    analytic = analytic_rhs(analytic_case or config.spec.case, factors.A, factors.B)
    drift = config.drift_constant if config.drift_constant is not None else default_drift_constant(factors.A, factors.B)
    err = abs(mc.value - analytic)
    bound = config.tolerance_sigmas * mc.std_error + drift / math.sqrt(N)
    return ReportRow(N, mc, analytic, err, bound, err <= bound)


def run_experiment(config: ExperimentConfig, out: str | Path | None = None, workers: int | None = None) -> FluctuationReport:
    if out is not None:
        parent = Path(out).resolve().parent
        if not parent.is_dir():
            raise OSError(f"output directory does not exist: {parent}")
    t0 = time.perf_counter()
    report = FluctuationReport(config)
    for N in config.n_grid:
        report.rows.append(evaluate_row(config, N, workers))
    report.wall_time = time.perf_counter() - t0
    if out is not None:
        Path(out).write_text(report.csv_text())
    return report


# --------------------------------------------------------------------- CLI

_KEYS = {"case", "m1", "m2", "n_grid", "samples", "seed", "out", "d_matrix", "poly", "qpoly",
         "d_family", "d_pattern", "d_seed", "workers", "tolerance_sigmas", "drift_constant", "order"}


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` text; ``#`` starts a comment; dashes in keys are
    read as underscores."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigParseError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise ConfigParseError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _parse_polys(text: str | None):
    if not text:
        return None
    return tuple(tuple(float(c) for c in chunk.replace(",", " ").split()) for chunk in text.split(";") if chunk.strip())


def config_from_settings(s: dict[str, str]) -> ExperimentConfig:
    try:
        m1, m2 = int(s.get("m1", 1)), int(s.get("m2", 1))
        if "d_matrix" in s and s["d_matrix"]:
            fam = DeterministicFamily("explicit", matrix=load_matrix_file(s["d_matrix"]))
        else:
            pattern = tuple(float(x) for x in s.get("d_pattern", "1,-1").replace(",", " ").split())
            fam = DeterministicFamily(s.get("d_family", "diagonal"), pattern, int(s.get("d_seed", 0)))
        spec = EnsembleSpec(s.get("case", "1"), m1, m2, (fam, fam), _parse_polys(s.get("poly")), _parse_polys(s.get("qpoly")))
        grid = tuple(int(x) for x in s.get("n_grid", "32,64,128").replace(",", " ").split())
        drift = s.get("drift_constant")
        return ExperimentConfig(spec, grid, int(s.get("samples", 2000)), int(s.get("seed", 12345)),
                                float(s.get("tolerance_sigmas", 4.0)), float(drift) if drift else None,
                                int(s.get("workers", 1)))
    except ConfigParseError:
        raise
    except (ValueError, SpecInvalid, OSError) as exc:
        raise ConfigParseError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags override it")
    common.add_argument("--case", choices=["1", "2", "3", "haar"])
    common.add_argument("--m1", type=int)
    common.add_argument("--m2", type=int)
    common.add_argument("--n-grid", dest="n_grid", help="comma-separated dimensions, e.g. 32,64,128")
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="CSV output path")
    common.add_argument("--d-matrix", dest="d_matrix", help="explicit symmetric matrix file")
    common.add_argument("--poly", help="ascending coefficients, e.g. '0,1' for x; ';' separates several")
    common.add_argument("--d-family", dest="d_family", choices=["diagonal", "rotated"])
    common.add_argument("--d-pattern", dest="d_pattern", help="spectrum pattern, e.g. '1,-1'")
    common.add_argument("--workers", type=int)
    common.add_argument("--order", type=int, help="cumulant order for cumulant-scan")

    p = argparse.ArgumentParser(prog="fluctmoments", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-fluctuations", parents=[common], help="Monte Carlo vs analytic covariance")
    sub.add_parser("exact-check", parents=[common], help="exact small-N covariance decomposition")
    sub.add_parser("cumulant-scan", parents=[common], help="growth of higher trace cumulants")
    sub.add_parser("classify-pairings", parents=[common], help="pairings with vanishing shifted polynomial")
    sub.add_parser("selftest", parents=[common], help="fast end-to-end sanity checks")
    return p


def _settings(args) -> dict[str, str]:
    s = parse_config_file(args.config) if args.config else {}
    for key in _KEYS:
        v = getattr(args, key, None)
        if v is not None:
            s[key] = str(v)
    return s


def _cmd_verify(s, args) -> int:
    cfg = config_from_settings(s)
    report = run_experiment(cfg, s.get("out"))
    if not s.get("out"):
        sys.stdout.write(report.csv_text())
    print(report.summary(), file=sys.stderr)
    return 0 if report.all_passed else 1


def _cmd_exact(s, args) -> int:
    s = {"n_grid": "3", "samples": "100", **s}
    cfg = config_from_settings(s)
    ok = True
    for N in cfg.n_grid:
        f = build_centered_factors(cfg.spec, N)
        res, lhs, rhs = exact_cov_decomposition_check(cfg.spec.case, f.A, f.B, return_sides=True)
        good = res <= 1e-10
        ok &= good
        print(f"{cfg.spec.case} N={N} lhs={lhs.real:+.12f}{lhs.imag:+.12f}i rhs={rhs.real:+.12f}{rhs.imag:+.12f}i "
              f"residual={res:.2e} {'PASS' if good else 'FAIL'}")
    return 0 if ok else 1


def _cmd_scan(s, args) -> int:
    cfg = config_from_settings(s)
    order = int(s.get("order", 3))
    res = bounded_cumulant_scan(cfg, order)
    for N, est in res.rows:
        print(f"N={N:5d} c{order}={est.value.real:+.5f}{est.value.imag:+.5f}i ± {est.std_error:.5f}")
    print(f"log-log slope {res.slope:+.3f} ± {res.slope_se:.3f} (unweighted {res.raw_slope:+.3f}); "
          f"threshold {res.threshold} -> {'PASS' if res.passed else 'FAIL'}")
    return 0 if res.passed else 1


def _cmd_classify(s, args) -> int:
    m1, m2 = int(s.get("m1", 1)), int(s.get("m2", 1))
    shape = TwoBlockShape(m1, m2)
    got = classify_zero_pairings(shape, with_conditions=True)
    for pi, conds in got:
        print(f"{pi}  conditions {sorted(conds)}")
    scan = set(zero_pairings_by_scan(shape))
    same = scan == {p for p, _ in got}
    print(f"(m1,m2)=({m1},{m2}): {len(got)} pairings; exhaustive scan {'agrees' if same else 'DISAGREES'}")
    return 0 if same else 1


def _cmd_selftest(s, args) -> int:
    checks = []
    P = SetPartition.from_blocks
    pi = P([[-3], [3, 1, -2], [-5, -1, -7, -4], [7], [2, 4], [6], [-6, 5, 8], [-8],
            [-10, 12], [10, -12], [-11, 11, -9], [9]])
    checks.append(("graph sum exponent of the worked example is 4", graph_sum_exponent(pi) == 4))
    shape = TwoBlockShape(1, 1)
    checks.append(("classification (1,1) matches scan",
                   set(classify_zero_pairings(shape)) == set(zero_pairings_by_scan(shape))))
    rng = np.random.default_rng(0)
    A = [rng.standard_normal((3, 3)) for _ in range(4)]
    A = [a - np.trace(a) / 3 * np.eye(3) for a in A]
    checks.append(("exact decomposition case1 N=3",
                   exact_cov_decomposition_check("case1", A[:2], A[2:]) <= 1e-10))
    D = np.diag([1.0, -1.0])
    checks.append(("analytic case1 on diag(1,-1) is 2", abs(analytic_rhs("case1", [D, D], [D, D]) - 2) < 1e-12))
    ok = True
    for name, good in checks:
        ok &= bool(good)
        print(f"{'PASS' if good else 'FAIL'}  {name}")
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        s = _settings(args)
        if args.command == "verify-fluctuations":
            return _cmd_verify(s, args)
        if args.command == "exact-check":
            return _cmd_exact(s, args)
        if args.command == "cumulant-scan":
            return _cmd_scan(s, args)
        if args.command == "classify-pairings":
            return _cmd_classify(s, args)
        return _cmd_selftest(s, args)
    except (ConfigParseError, SpecInvalid, TooLargeForExactEnumeration, TraceNotZero) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
