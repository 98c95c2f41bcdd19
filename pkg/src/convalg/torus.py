"""Kernel extraction and frequency recovery on a discretized circle.

An operator from grid functions on [0,1) to a window of integer
frequencies -N..N is a kernel operator: row xi of its table, divided by
the cell weight 1/M, is a sampled kernel h_xi with

    (T f)(xi) = (1/M) sum_i f(i/M) h_xi(i/M).

For operators turning convolutions into products each kernel satisfies the
character equation h((i+j) mod M) = h(i) h(j) on every grid pair (the grid
sum realizes the circle group law exactly), hence is either identically
zero or the sample of x -> e^{2i pi a x} for an integer a.  The classifier
reports the support and the frequency map phi with

    (T f)(xi) = chi_E(xi) fhat(phi(xi)),   fhat(nu) = (1/M) sum_i f_i e^{-2i pi nu i / M},

so phi(xi) = -a_xi for the recovered character exponent a_xi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import (CharacterEquationViolation, NotUnimodular, SnapFailure)
from .operators import DEFAULT_TOL, AxiomReport, Witness


@dataclass(frozen=True)
class TorusGrid:
    """M uniform samples of [0, 1); cell weight 1/M."""

    M: int

    def __post_init__(self):
        if self.M < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.M}")

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.M) / self.M

    @property
    def weight(self) -> float:
        return 1.0 / self.M


def character(grid: TorusGrid, a: int) -> np.ndarray:
    """Samples of x -> e^{2i pi a x}."""
    return np.exp(2j * np.pi * a * grid.points)


def coefficient(grid: TorusGrid, f: np.ndarray, nu: int) -> complex:
    """Quadrature Fourier coefficient (1/M) sum f_i e^{-2i pi nu i / M}."""
    return complex(np.sum(f * np.exp(-2j * np.pi * nu * grid.points)) * grid.weight)


@dataclass(frozen=True)
class KernelFamily:
    """Kernels h_xi indexed by the frequency window -N..N."""

    grid: TorusGrid
    N: int
    kernels: np.ndarray       # (2N+1, M), row r = kernel at xi = r - N

    def kernel(self, xi: int) -> np.ndarray:
        if not -self.N <= xi <= self.N:
            raise KeyError(f"frequency {xi} outside window -{self.N}..{self.N}")
        return self.kernels[xi + self.N]

    @property
    def frequencies(self) -> range:
        return range(-self.N, self.N + 1)


def extract_kernels(table: np.ndarray, grid: TorusGrid) -> KernelFamily:
    """Kernels from a dense (2N+1) x M table: h_xi = row / cell weight."""
    table = np.asarray(table, dtype=np.complex128)
    if table.ndim != 2 or table.shape[1] != grid.M or table.shape[0] % 2 == 0:
        raise ValueError(
            f"table must be (2N+1) x {grid.M} for the {grid.M}-point grid, "
            f"got {table.shape}")
    N = (table.shape[0] - 1) // 2
    return KernelFamily(grid, N, table / grid.weight)


def build_operator(family: KernelFamily) -> np.ndarray:
    """Dense table whose application equals quadrature against the kernels."""
    return family.kernels * family.grid.weight


def fourier_coefficient_operator(grid: TorusGrid, N: int) -> np.ndarray:
    """The map f -> (fhat(xi))_{xi=-N..N} as a dense table."""
    xi = np.arange(-N, N + 1)[:, None]
    return np.exp(-2j * np.pi * xi * grid.points[None, :]) * grid.weight


def check_character_equation(h: np.ndarray, tol: float = DEFAULT_TOL) -> AxiomReport:
    """max over grid pairs of |h((i+j) mod M) - h(i) h(j)|; exact group law."""
    h = np.asarray(h, dtype=np.complex128)
    M = h.shape[0]
    idx = (np.arange(M)[:, None] + np.arange(M)[None, :]) % M
    diff = np.abs(h[idx] - h[:, None] * h[None, :])
    worst = float(diff.max())
    if worst <= tol:
        return AxiomReport(True, worst, tol, checked=M * M)
    i, j = (int(v) for v in np.unravel_index(int(np.argmax(diff)), diff.shape))
    wit = Witness("h(x+y) = h(x) h(y)", (i, j),
                  np.array([h[(i + j) % M]]), np.array([h[i] * h[j]]), worst)
    return AxiomReport(False, worst, tol, witness=wit, checked=M * M)


def recover_frequency(h: np.ndarray, tol: float = DEFAULT_TOL, *,
                      snap: bool = True) -> int | float:
    """Frequency a of a sampled character h ~ e^{2i pi a x}.

    Smooths by cumulative sums over a lag window, fits the unwrapped phase
    of the summed segments by least squares, and snaps the slope to the
    nearest integer (circle characters have integer frequency); the input
    is then re-verified against the snapped character within tol.

    The caller is responsible for h having passed the character equation.
    With snap=False the raw least-squares estimate is returned un-snapped
    and unverified (the real-line variant, with no lattice to snap to).
    """
    h = np.asarray(h, dtype=np.complex128)
    M = h.shape[0]
    sup = float(np.max(np.abs(h)))
    if abs(sup - 1.0) > tol:
        raise NotUnimodular(sup)
    # circular segment sums at a safe lag: of the candidates, a lag whose
    # geometric factor vanishes (M | a * lag) would null the segments, so
    # keep whichever lag leaves them largest; lag 1 is always safe.
    tiled = np.concatenate([h, h])
    csum = np.concatenate([[0.0], np.cumsum(tiled)])
    lags = [max(1, M // 8), max(1, M // 8) + 1, 1]
    best = None
    for lag in dict.fromkeys(lags):
        g = csum[lag:lag + M] - csum[:M]
        floor = float(np.min(np.abs(g)))
        if best is None or floor > best[0]:
            best = (floor, g)
    g = best[1]
    theta = np.unwrap(np.angle(g))
    k = np.arange(M)
    slope = np.polyfit(k, theta, 1)[0]
    estimate = slope * M / (2.0 * np.pi)
    if not snap:
        return float(estimate)
    a = int(round(estimate))
    if abs(estimate - a) > 0.25:
        raise SnapFailure(float(estimate), a, float(abs(estimate - a)))
    dev = float(np.max(np.abs(h - np.exp(2j * np.pi * a * np.arange(M) / M))))
    if dev > tol:
        raise SnapFailure(float(estimate), a, dev)
    return a


@dataclass(frozen=True)
class TorusClassification:
    """Support within -N..N and the frequency map of the canonical form."""

    N: int
    support: tuple[int, ...]
    freq_map: Mapping[int, int]
    residual: float


def classify_torus_operator(table: np.ndarray, grid: TorusGrid,
                            tol: float = DEFAULT_TOL, *,
                            verify_signals: int = 8,
                            seed: int = 0) -> TorusClassification:
    """Classify a dense table as (T f)(xi) = chi_E(xi) fhat(phi(xi)).

    Per frequency: a kernel below tol in sup norm leaves the support; any
    other kernel must satisfy the character equation (else the violation is
    raised with the offending xi) and yields phi(xi) by frequency recovery.
    The assembled form is then verified on seeded band-limited signals.
    """
    family = extract_kernels(table, grid)
    M, N = grid.M, family.N
    support: list[int] = []
    freq_map: dict[int, int] = {}
    residual = 0.0
    for xi in family.frequencies:
        h = family.kernel(xi)
        sup = float(np.max(np.abs(h)))
        if sup <= tol:
            residual = max(residual, sup)
            continue
        report = check_character_equation(h, tol)
        if not report.passed:
            raise CharacterEquationViolation(xi, report)
        try:
            a = recover_frequency(h, tol)
        except (NotUnimodular, SnapFailure) as exc:
            exc.details["xi"] = xi
            raise
        support.append(xi)
        freq_map[xi] = -int(a)
        residual = max(residual, report.max_residual)

    rng = np.random.default_rng(seed)
    table = np.asarray(table, dtype=np.complex128)
    band = min(N + 1, M // 4)
    nus = np.arange(-band, band + 1)
    for _ in range(verify_signals):
        coeffs = rng.normal(size=nus.size) + 1j * rng.normal(size=nus.size)
        f = (coeffs[None, :] * np.exp(2j * np.pi * np.outer(grid.points, nus))).sum(axis=1)
        out = table @ f
        expect = np.array([
            coefficient(grid, f, freq_map[xi]) if xi in freq_map else 0.0
            for xi in family.frequencies])
        scale = 1.0 + max(float(np.max(np.abs(out))), float(np.max(np.abs(expect))))
        residual = max(residual, float(np.max(np.abs(out - expect))) / scale)
    return TorusClassification(N, tuple(support), freq_map, residual)
