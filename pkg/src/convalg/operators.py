"""Operators on group signals and the axiom checkers that probe them.

An Operator is either a dense column table (column k = image of the point
mass at k, hence linear) or an opaque evaluator Signal -> Signal.  Checkers
never raise on a failed identity; they return an AxiomReport whose witness
pins down a concrete violating input pair.

All residuals use the scale-free metric

    rel(lhs, rhs) = max|lhs - rhs| / (1 + max(max|lhs|, max|rhs|))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import GroupMismatch
from .groups import Group, Signal, constant, convolve, delta, pointwise_mul

DEFAULT_TOL = 1e-9


def rel_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Scale-free sup-norm distance between two value arrays."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    scale = 1.0 + max(np.max(np.abs(lhs), initial=0.0),
                      np.max(np.abs(rhs), initial=0.0))
    return float(np.max(np.abs(lhs - rhs), initial=0.0) / scale)


def random_signal(group: Group, rng: np.random.Generator) -> Signal:
    """Signal with entries uniform on the complex unit disc."""
    r = np.sqrt(rng.uniform(0.0, 1.0, group.order))
    th = rng.uniform(0.0, 2.0 * np.pi, group.order)
    return Signal(group, r * np.exp(1j * th))


@dataclass(frozen=True)
class Witness:
    """A concrete violation: the inputs and both sides of the identity."""

    identity: str
    inputs: tuple
    lhs: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    residual: float


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    max_residual: float
    tol: float
    witness: Optional[Witness] = None
    checked: int = 0
    note: str = ""


class Operator:
    """Transform of signals on a fixed group: dense table or black box."""

    def __init__(self, group: Group, *, table: Optional[np.ndarray] = None,
                 evaluate: Optional[Callable[[Signal], Signal]] = None,
                 linear_hint: bool = False):
        if (table is None) == (evaluate is None):
            raise ValueError("give exactly one of table= or evaluate=")
        self.group = group
        if table is not None:
            table = np.asarray(table, dtype=np.complex128).copy()
            n = group.order
            if table.shape != (n, n):
                raise ValueError(f"dense table must be {n}x{n}, got {table.shape}")
            table.flags.writeable = False
        self.table = table
        self._evaluate = evaluate
        self.linear_hint = linear_hint or table is not None

    @property
    def is_dense(self) -> bool:
        return self.table is not None

    @classmethod
    def from_table(cls, group: Group, table) -> "Operator":
        """Dense operator; column k of the table is the image of delta_k."""
        return cls(group, table=table)

    @classmethod
    def from_function(cls, group: Group, fn: Callable[[Signal], Signal],
                      linear_hint: bool = False) -> "Operator":
        return cls(group, evaluate=fn, linear_hint=linear_hint)

    @classmethod
    def identity(cls, group: Group) -> "Operator":
        return cls.from_table(group, np.eye(group.order))

    @classmethod
    def zero(cls, group: Group) -> "Operator":
        return cls.from_table(group, np.zeros((group.order, group.order)))

    @classmethod
    def dft(cls, group: Group, *, unitary: bool = False) -> "Operator":
        n = group.order
        k = np.arange(n)
        w = np.exp(-2j * np.pi * np.outer(k, k) / n)
        return cls.from_table(group, w / np.sqrt(n) if unitary else w)

    @classmethod
    def idft(cls, group: Group) -> "Operator":
        n = group.order
        k = np.arange(n)
        return cls.from_table(group, np.exp(2j * np.pi * np.outer(k, k) / n) / n)

    def __call__(self, a: Signal) -> Signal:
        return apply(self, a)

    def to_dense(self) -> "Operator":
        """Materialize the column table by evaluating on all point masses."""
        if self.is_dense:
            return self
        n = self.group.order
        cols = np.empty((n, n), dtype=np.complex128)
        for k in range(n):
            cols[:, k] = apply(self, delta(self.group, k)).values
        return Operator.from_table(self.group, cols)


def apply(T: Operator, a: Signal) -> Signal:
    """Image of a under T; dense form is the column-weighted sum."""
    if a.group != T.group:
        raise GroupMismatch(
            f"operator on {T.group.factors} applied to signal on {a.group.factors}")
    if T.is_dense:
        return Signal(T.group, T.table @ a.values)
    out = T._evaluate(a)
    if not isinstance(out, Signal) or out.group != T.group:
        raise ValueError("black-box evaluator returned a signal on the wrong group")
    return out


def compose(S: Operator, T: Operator) -> Operator:
    """The operator a -> S(T(a)); dense composes tables."""
    if S.group != T.group:
        raise GroupMismatch("cannot compose operators on different groups")
    if S.is_dense and T.is_dense:
        return Operator.from_table(S.group, S.table @ T.table)
    return Operator.from_function(
        S.group, lambda a: apply(S, apply(T, a)),
        linear_hint=S.linear_hint and T.linear_hint)


def check_conv_homomorphism(T: Operator, mode: str = "basis", *,
                            count: int = 64, seed: int = 0,
                            tol: float = DEFAULT_TOL) -> AxiomReport:
    """Check T(f * g) = T(f).T(g).

    basis mode runs all n^2 point-mass pairs, which is sufficient for the
    full identity when T is linear (both sides are bilinear in (f, g));
    sampled mode draws `count` random pairs with unit-disc entries.
    """
    group = T.group
    n = group.order
    if mode == "basis":
        if not T.linear_hint:
            raise ValueError("basis mode needs a dense or linear-hinted operator")
        D = T.to_dense().table if not T.is_dense else T.table
        if group.is_cyclic:
            k = np.arange(n)
            sums = (k[:, None] + k[None, :]) % n
        else:
            coords = group.coordinates()
            moduli = np.array(group.factors)
            radix = np.concatenate([[1], np.cumprod(moduli[::-1])[:-1]])[::-1]
            s = (coords[:, None, :] + coords[None, :, :]) % moduli
            sums = s @ radix
        lhs = D[:, sums]                          # (n_rows, k, l) = T(delta_{k+l})
        rhs = D[:, :, None] * D[:, None, :]       # T(delta_k).T(delta_l)
        scale = 1.0 + np.maximum(np.abs(lhs).max(axis=0), np.abs(rhs).max(axis=0))
        res = np.abs(lhs - rhs).max(axis=0) / scale
        worst = float(res.max())
        if worst <= tol:
            return AxiomReport(True, worst, tol, checked=n * n)
        bad = np.argwhere(res > tol)
        k0, l0 = (int(v) for v in bad[0])
        wit = Witness("T(f*g) = T(f).T(g)",
                      (delta(group, group.element(k0)), delta(group, group.element(l0))),
                      lhs[:, k0, l0], rhs[:, k0, l0], float(res[k0, l0]))
        return AxiomReport(False, worst, tol, witness=wit, checked=n * n)
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        worst = 0.0
        wit = None
        for _ in range(count):
            f = random_signal(group, rng)
            g = random_signal(group, rng)
            lhs = apply(T, convolve(f, g)).values
            rhs = pointwise_mul(apply(T, f), apply(T, g)).values
            r = rel_residual(lhs, rhs)
            if r > worst:
                worst = r
                if r > tol and wit is None:
                    wit = Witness("T(f*g) = T(f).T(g)", (f, g), lhs, rhs, r)
        return AxiomReport(worst <= tol, worst, tol, witness=wit, checked=count)
    raise ValueError(f"unknown mode {mode!r}")


def check_exchange_axioms(T: Operator, *, count: int = 64, seed: int = 0,
                          tol: float = DEFAULT_TOL) -> AxiomReport:
    """Check both exchange identities T(a.b) = T(a).T(b) and T(a*b) = T(a)*T(b).

    Random pairs plus the structured pairs (c*ones, a) and (delta_j, a) that
    the recovery procedure actually relies on.
    """
    group = T.group
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        pairs.append((random_signal(group, rng), random_signal(group, rng)))
    for c in (0.0, 1.0, 2.0, 0.5 + 0.25j):
        pairs.append((constant(group, c), random_signal(group, rng)))
    for j in range(min(group.order, 4)):
        pairs.append((delta(group, group.element(j)), random_signal(group, rng)))

    worst = 0.0
    wit = None
    for a, b in pairs:
        Ta, Tb = apply(T, a), apply(T, b)
        for name, lhs, rhs in (
            ("T(a.b) = T(a).T(b)",
             apply(T, pointwise_mul(a, b)).values, pointwise_mul(Ta, Tb).values),
            ("T(a*b) = T(a)*T(b)",
             apply(T, convolve(a, b)).values, convolve(Ta, Tb).values),
        ):
            r = rel_residual(lhs, rhs)
            if r > worst:
                worst = r
                if r > tol and wit is None:
                    wit = Witness(name, (a, b), lhs, rhs, r)
    return AxiomReport(worst <= tol, worst, tol, witness=wit, checked=len(pairs))
