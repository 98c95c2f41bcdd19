"""Canonical form of linear convolution-to-product homomorphisms on Z/nZ.

Every linear T with T(f * g) = T(f).T(g) acts row by row through a group
homomorphism pi_eta(k) = T(delta_k)(eta) into C.  Each pi_eta either
vanishes identically or is a character k -> e^{-2i pi k sigma(eta) / n},
so T is determined by a support set E and a frequency map sigma:

    T(f)(eta) = chi_E(eta) * fhat(sigma(eta))

classify() recovers (E, sigma) or raises the step at which the row
structure breaks; construct() builds the table back from (E, sigma).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import AxiomViolation, NotRootOfUnity, RowNotHomomorphic
from .groups import Group
from .operators import DEFAULT_TOL, Operator, check_conv_homomorphism


@dataclass(frozen=True)
class ConvClassification:
    """Support set, frequency map on the support, and the recovery residual."""

    n: int
    support: tuple[int, ...]
    sigma: Mapping[int, int]
    residual: float

    def sigma_at(self, eta: int) -> int:
        if eta not in self.sigma:
            raise KeyError(f"eta={eta} is outside the support; sigma is undefined there")
        return self.sigma[eta]


def _snap_root_index(z: complex, n: int, tol: float) -> tuple[int, float]:
    """Nearest m with z ~ e^{-2i pi m / n}, plus the angular deviation."""
    theta = cmath.phase(z)
    m = round(-theta * n / (2.0 * np.pi)) % n
    dev = abs(cmath.phase(z * cmath.exp(2j * np.pi * m / n)))
    return m, dev


def classify(T: Operator, tol: float = DEFAULT_TOL) -> ConvClassification:
    """Recover (support, sigma) from a dense operator passing the basis check.

    Per row eta: the value at the identity column snaps to 0 (whole row must
    vanish; eta excluded) or to 1 (the generator value z = T(delta_1)(eta)
    must be an n-th root of unity and the row must follow z^k exactly).
    Raises RowNotHomomorphic / NotRootOfUnity on rows of neither shape, and
    AxiomViolation when the basis check itself fails at tol.
    """
    if not T.is_dense:
        raise ValueError("classification needs a dense operator")
    if not T.group.is_cyclic:
        raise ValueError("classification is defined for a single cyclic factor")
    report = check_conv_homomorphism(T, "basis", tol=tol)
    if not report.passed:
        raise AxiomViolation(
            f"operator is not a convolution homomorphism "
            f"(residual {report.max_residual:.3e})", report)
    n = T.group.n
    table = T.table
    support: list[int] = []
    sigma: dict[int, int] = {}
    residual = 0.0
    # a basis-check pass at tol still leaves every recovered quantity up to
    # ~2 tol off its snapped value, so all snap gates carry a 4 tol floor
    snap_window = 4.0 * tol
    angle_window = tol * max(n / np.pi, 4.0)
    for eta in range(n):
        row = table[eta]
        v0 = row[0]
        if abs(v0) <= snap_window:
            row_max = float(np.max(np.abs(row)))
            if row_max > snap_window:
                raise RowNotHomomorphic(
                    eta, complex(v0),
                    f"row {eta}: vanishes at the identity column but not "
                    f"everywhere (max {row_max:.3e})")
            residual = max(residual, row_max)
            continue
        if abs(v0 - 1.0) > snap_window:
            raise RowNotHomomorphic(eta, complex(v0))
        residual = max(residual, abs(v0 - 1.0))
        if n == 1:
            support.append(eta)
            sigma[eta] = 0
            continue
        z = complex(row[1])
        root_dev = abs(z ** n - 1.0)
        if root_dev > tol * max(n * n / np.pi, 2.0 * n + 2.0):
            raise NotRootOfUnity(eta, z, root_dev)
        m, dev = _snap_root_index(z, n, tol)
        if dev > angle_window:
            raise NotRootOfUnity(eta, z, dev)
        powers = z ** np.arange(n)
        residual = max(residual, float(np.max(np.abs(row - powers))), root_dev)
        support.append(eta)
        sigma[eta] = m
    return ConvClassification(n, tuple(support), dict(sigma), residual)


def construct(group: Group, support, sigma: Mapping[int, int]) -> Operator:
    """Dense table of T(f)(eta) = chi_E(eta) fhat(sigma(eta)).

    sigma must be defined exactly on the support with values in 0..n-1; it
    need not be injective (any map gives a valid homomorphism).
    """
    if not group.is_cyclic:
        raise ValueError("canonical tables are defined for a single cyclic factor")
    n = group.n
    support = sorted(int(e) % n for e in support)
    table = np.zeros((n, n), dtype=np.complex128)
    k = np.arange(n)
    for eta in support:
        s = sigma[eta]
        if not 0 <= int(s) < n:
            raise ValueError(f"sigma({eta}) = {s} is out of range 0..{n - 1}")
        table[eta] = np.exp(-2j * np.pi * k * int(s) / n)
    return Operator.from_table(group, table)


def roundtrip_residual(T: Operator, cls: ConvClassification) -> float:
    """Sup-norm distance between T's table and the reconstructed canonical table."""
    rebuilt = construct(T.group, cls.support, cls.sigma)
    return float(np.max(np.abs(T.table - rebuilt.table)))
