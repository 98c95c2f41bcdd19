"""Signals on finite cyclic groups and their convolution/Fourier algebra.

A Group is a product of cyclic factors Z/n1 x ... x Z/nk, its elements
flattened to indices 0..order-1 in mixed-radix order (last factor fastest).
A Signal is a complex-valued function on such a group.  The algebra:

    (f * g)(x)   = sum_t f(t) g(x - t)          (convolution, counting measure)
    (f . g)(x)   = f(x) g(x)                    (pointwise product)
    fhat(eta)    = sum_k f(k) e^{-2i pi k.eta}   (transform; k.eta = sum k_i eta_i / n_i)
    E[f]         = sum_j f(j) = fhat(0)

The inverse transform carries the 1/order factor.  Transforms are direct
O(order^2) summation; a fast path exists for a single power-of-two factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import GroupMismatch

Element = Union[int, Sequence[int]]


@dataclass(frozen=True)
class Group:
    """Product of cyclic groups, elements indexed in mixed radix."""

    factors: tuple[int, ...]

    def __init__(self, factors: Union[int, Iterable[int]]):
        if isinstance(factors, int):
            factors = (factors,)
        factors = tuple(int(n) for n in factors)
        if not factors:
            raise ValueError("a group needs at least one cyclic factor")
        if any(n < 1 for n in factors):
            raise ValueError(f"moduli must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def order(self) -> int:
        p = 1
        for n in self.factors:
            p *= n
        return p

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) == 1

    @property
    def n(self) -> int:
        """Modulus of a single-factor group."""
        if not self.is_cyclic:
            raise ValueError(f"group {self.factors} has more than one factor")
        return self.factors[0]

    def canonical(self, k: Element) -> tuple[int, ...]:
        """Reduce each coordinate of k modulo its factor."""
        if isinstance(k, (int, np.integer)):
            k = (int(k),)
        k = tuple(int(c) for c in k)
        if len(k) != len(self.factors):
            raise ValueError(
                f"element {k} has {len(k)} coordinates, group has {len(self.factors)}")
        return tuple(c % n for c, n in zip(k, self.factors))

    def index(self, k: Element) -> int:
        """Flat mixed-radix index of the element k."""
        idx = 0
        for c, n in zip(self.canonical(k), self.factors):
            idx = idx * n + c
        return idx

    def element(self, idx: int) -> tuple[int, ...]:
        coords = []
        for n in reversed(self.factors):
            coords.append(idx % n)
            idx //= n
        return tuple(reversed(coords))

    def coordinates(self) -> np.ndarray:
        """(order, nfactors) array: row i = coordinates of element i."""
        grids = np.meshgrid(*[np.arange(n) for n in self.factors], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex-valued function on a Group; values immutable, all finite."""

    group: Group
    values: np.ndarray = field(repr=False)

    def __init__(self, group: Group, values):
        values = np.asarray(values, dtype=np.complex128).copy()
        if values.shape != (group.order,):
            raise ValueError(
                f"expected {group.order} values for group {group.factors}, "
                f"got shape {values.shape}")
        if not np.all(np.isfinite(values.view(np.float64))):
            raise ValueError("signal values must be finite")
        values.flags.writeable = False
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "values", values)

    def __getitem__(self, k: Element) -> complex:
        return complex(self.values[self.group.index(k)])


def _same_group(f: Signal, g: Signal) -> Group:
    if f.group != g.group:
        raise GroupMismatch(
            f"signals live on different groups: {f.group.factors} vs {g.group.factors}")
    return f.group


def delta(group: Group, k: Element = 0) -> Signal:
    """Point mass: 1 at k, 0 elsewhere."""
    v = np.zeros(group.order, dtype=np.complex128)
    v[group.index(k)] = 1.0
    return Signal(group, v)


def constant(group: Group, c: complex = 1.0) -> Signal:
    """The constant signal c * (1, 1, ..., 1)."""
    return Signal(group, np.full(group.order, c, dtype=np.complex128))


def expectation(a: Signal) -> complex:
    """E[a] = sum of all entries; equals the transform of a at 0."""
    return complex(np.sum(a.values))


def pointwise_mul(f: Signal, g: Signal) -> Signal:
    """Entrywise product f.g."""
    _same_group(f, g)
    return Signal(f.group, f.values * g.values)


def convolve(f: Signal, g: Signal) -> Signal:
    """(f * g)(x) = sum_t f(t) g(x - t), the group difference taken per factor."""
    group = _same_group(f, g)
    n = group.order
    out = np.empty(n, dtype=np.complex128)
    if group.is_cyclic:
        idx = np.arange(n)
        for x in range(n):
            out[x] = f.values @ g.values[(x - idx) % n]
    else:
        coords = group.coordinates()            # (n, nfactors)
        moduli = np.array(group.factors)
        radix = np.concatenate([[1], np.cumprod(moduli[::-1])[:-1]])[::-1]
        for x in range(n):
            diff = (coords[x] - coords) % moduli
            out[x] = f.values @ g.values[diff @ radix]
    return Signal(group, out)


@lru_cache(maxsize=32)
def _char_matrix(n: int, sign: int) -> np.ndarray:
    """Matrix W[eta, k] = exp(sign * 2i pi k eta / n), cached read-only."""
    k = np.arange(n)
    w = np.exp(sign * 2j * np.pi * np.outer(k, k) / n)
    w.flags.writeable = False
    return w


def _apply_per_factor(values: np.ndarray, factors: tuple[int, ...], sign: int) -> np.ndarray:
    t = values.reshape(factors)
    for axis, n in enumerate(factors):
        t = np.moveaxis(np.tensordot(_char_matrix(n, sign), t, axes=([1], [axis])),
                        0, axis)
    return t.reshape(-1)


def dft(f: Signal, *, fast: bool = False) -> Signal:
    """Transform fhat(eta) = sum_k f(k) e^{-2i pi <k, eta>}.

    Direct summation; with fast=True a single power-of-two factor is routed
    through np.fft.fft (identical convention, no normalization).
    """
    group = f.group
    if fast and group.is_cyclic and group.n & (group.n - 1) == 0:
        return Signal(group, np.fft.fft(f.values))
    return Signal(group, _apply_per_factor(f.values, group.factors, -1))


def idft(f: Signal, *, fast: bool = False) -> Signal:
    """Inverse transform, (1/order) sum with the opposite phase sign."""
    group = f.group
    if fast and group.is_cyclic and group.n & (group.n - 1) == 0:
        return Signal(group, np.fft.ifft(f.values))
    return Signal(group, _apply_per_factor(f.values, group.factors, +1) / group.order)
