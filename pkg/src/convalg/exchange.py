"""Recovery of bijective maps that preserve both products on Z/nZ.

A bijection T (not necessarily linear) with

    T(a.b) = T(a).T(b)      and      T(a*b) = T(a)*T(b)

is a unit reindexing, possibly composed with entrywise conjugation:
T(a)(eta*j) = a(j) or conj(a(j)) for a single eta coprime to n.  The
classifier runs the recovery as a four-step procedure, raising the
step-specific error on the first failure:

  1. fixed points:  T(delta_0) = delta_0, T(ones) = ones, T(zeros) = zeros
  2. point masses:  T(delta_j) = delta_{sigma(j)} with sigma(j) = j*sigma(1)
                    and gcd(sigma(1), n) = 1
  3. scalar action: beta(c) = E[T((c/n)*ones)] lies in {c, conj(c)} on a
                    probe set; beta(i) picks the conjugation branch
  4. final sweep:   T(a)(eta*j) = a(j) (or conjugate) on seeded random signals

The crossed variant (product to convolution and back) classifies the
composition with the inverse transform and reports the same parameters
for that composed map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (BetaNotIdentityOrConjugation, DeltaImageInconsistent,
                     DeltaImageNotDelta, EtaNotCoprime, FinalSweepViolation,
                     FixedPointViolation)
from .groups import Group, Signal, constant, delta, expectation
from .operators import (DEFAULT_TOL, AxiomReport, Operator, Witness, apply,
                        compose, random_signal, rel_residual)

SWEEP_SIGNALS = 32
_BETA_BASE = (2.0, 3.0, 1.5, 1j)   # 1 + t for t in {0.5, 1, 2}, plus i


@dataclass(frozen=True)
class ExchangeClassification:
    eta: int
    conjugate: bool
    variant: str            # "direct" or "fourier"
    residual: float


@dataclass(frozen=True)
class BetaProbe:
    """Sampled scalar action c -> beta(c) = E[T((c/n)*ones)]."""

    samples: tuple[tuple[complex, complex], ...]

    def multiplicativity_defect(self) -> float:
        """max |beta(c1 c2) - beta(c1) beta(c2)| / (1 + |c1 c2|) over sampled pairs."""
        table = dict(self.samples)
        worst = 0.0
        items = list(table.items())
        for c1, b1 in items:
            for c2, b2 in items:
                prod = c1 * c2
                if prod in table:
                    worst = max(worst, abs(table[prod] - b1 * b2) / (1.0 + abs(prod)))
        return worst


def beta_of(T: Operator, c: complex) -> complex:
    """The scalar action beta(c) = E[T((c/n) * ones)]."""
    n = T.group.order
    return expectation(apply(T, constant(T.group, c / n)))


def probe_beta(T: Operator, values=_BETA_BASE) -> BetaProbe:
    """Probe beta on a base set, closed under pairwise products."""
    cs = list(values)
    for c1 in list(cs):
        for c2 in list(cs):
            if c1 * c2 not in cs:
                cs.append(c1 * c2)
    return BetaProbe(tuple((c, beta_of(T, c)) for c in cs))


def construct_exchange(group: Group, eta: int, conjugate: bool = False) -> Operator:
    """The canonical map with T(a)(eta*j) = a(j), conjugated if asked.

    Explicitly: T(a)(m) = a(eta^{-1} m), so eta must be a unit mod n.
    """
    n = group.n
    if math.gcd(eta, n) != 1:
        raise ValueError(f"eta={eta} is not coprime to n={n}")
    inv = pow(eta, -1, n)
    perm = (inv * np.arange(n)) % n

    def run(a: Signal) -> Signal:
        v = a.values[perm]
        return Signal(group, np.conj(v) if conjugate else v)

    return Operator.from_function(group, run)


def _is_delta(values: np.ndarray, tol: float) -> int | None:
    """Index of the single entry ~1 if the rest are ~0, else None."""
    near_one = np.abs(values - 1.0) <= tol
    if np.count_nonzero(near_one) != 1:
        return None
    m = int(np.argmax(near_one))
    rest = np.abs(np.delete(values, m))
    if rest.size and rest.max() > tol:
        return None
    return m


def classify_exchange(T: Operator, tol: float = DEFAULT_TOL, *,
                      seed: int = 0) -> ExchangeClassification:
    """Run the four-step recovery; returns (eta, conjugate) on success."""
    group = T.group
    n = group.n
    if n < 2:
        raise ValueError("exchange classification needs n >= 2")
    residual = 0.0

    # step 1: fixed points
    for name, sig in (("delta_0", delta(group, 0)),
                      ("ones", constant(group, 1.0)),
                      ("zeros", constant(group, 0.0))):
        r = rel_residual(apply(T, sig).values, sig.values)
        if r > tol:
            raise FixedPointViolation(name, r)
        residual = max(residual, r)

    # step 2: point masses map to point masses, multiplicatively
    sigma = np.zeros(n, dtype=int)
    for j in range(1, n):
        img = apply(T, delta(group, j)).values
        m = _is_delta(img, tol)
        if m is None:
            raise DeltaImageNotDelta(j)
        sigma[j] = m
    eta = int(sigma[1])
    if math.gcd(eta, n) != 1:
        raise EtaNotCoprime(eta, n)
    for j in range(1, n):
        if sigma[j] != (j * eta) % n:
            raise DeltaImageInconsistent(j, int(sigma[j]), (j * eta) % n)

    # step 3: scalar action is the identity or conjugation
    for c in _BETA_BASE:
        b = beta_of(T, c)
        if min(abs(b - c), abs(b - np.conj(c))) > tol * (1.0 + abs(c)):
            raise BetaNotIdentityOrConjugation(c, b)
        residual = max(residual, min(abs(b - c), abs(b - np.conj(c))) / (1.0 + abs(c)))
    b_i = beta_of(T, 1j)
    d_id, d_conj = abs(b_i - 1j), abs(b_i + 1j)
    conjugate = d_conj < d_id
    if min(d_id, d_conj) > tol or max(d_id, d_conj) < 1.0:
        raise BetaNotIdentityOrConjugation(1j, b_i)

    # step 4: full-signal sweep of the recovered form
    rng = np.random.default_rng(seed)
    perm = (eta * np.arange(n)) % n
    for _ in range(SWEEP_SIGNALS):
        a = random_signal(group, rng)
        lhs = apply(T, a).values[perm]
        rhs = np.conj(a.values) if conjugate else a.values
        r = rel_residual(lhs, rhs)
        if r > tol:
            raise FinalSweepViolation(
                Witness("T(a)(eta j) = a(j)" + (" conjugated" if conjugate else ""),
                        (a,), lhs, rhs, r), r)
        residual = max(residual, r)

    return ExchangeClassification(eta, conjugate, "direct", residual)


def classify_fourier_exchange(T: Operator, tol: float = DEFAULT_TOL, *,
                              seed: int = 0) -> ExchangeClassification:
    """Classify a map expected to swap the two products.

    Composes the inverse transform in front of T and classifies that
    composition; the returned (eta, conjugate) are the composed map's
    parameters, so on the identity branch T(a)(j) = ahat(eta * j).
    """
    tilde = compose(Operator.idft(T.group), T)
    base = classify_exchange(tilde, tol, seed=seed)
    return ExchangeClassification(base.eta, base.conjugate, "fourier", base.residual)


def check_involution_symmetry(T: Operator, tol: float = DEFAULT_TOL, *,
                              samples: int = 16, seed: int = 0) -> AxiomReport:
    """Check T(T(a))(k) = a(-k) on seeded random signals."""
    group = T.group
    n = group.order
    rng = np.random.default_rng(seed)
    neg = (-np.arange(n)) % n
    worst = 0.0
    wit = None
    for _ in range(samples):
        a = random_signal(group, rng)
        lhs = apply(T, apply(T, a)).values
        rhs = a.values[neg]
        r = rel_residual(lhs, rhs)
        if r > worst:
            worst = r
            if r > tol and wit is None:
                wit = Witness("T(T(a))(k) = a(-k)", (a,), lhs, rhs, r)
    return AxiomReport(worst <= tol, worst, tol, witness=wit, checked=samples)
