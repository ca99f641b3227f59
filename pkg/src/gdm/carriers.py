"""Galois-Fourier spreading carriers and their correlation.

Carrier ``i`` is the row (alpha^(ik)) for k = 0..N-1 of the transform kernel.
Correlations are field elements: the autocorrelation is N summed in
characteristic p (N mod p), never the integer N.
"""
from __future__ import annotations

import numpy as np

from .errors import IndexOutOfRange
from .ffft import TransformPlan
from .finite_field import FieldElement

MAX_MATERIALISED = 4096


class CarrierSet:
    """The N carriers of a transform plan.

    ``exponents`` is the N x N matrix of generator exponents (entry (i, k) is
    the log of alpha^(ik)), held only for N <= 4096; larger sets compute rows
    on demand.
    """

    def __init__(self, plan: TransformPlan):
        self.plan = plan
        self.n = plan.n
        self.exponents: np.ndarray | None = None
        if self.n <= MAX_MATERIALISED:
            ik = np.outer(np.arange(self.n, dtype=np.int64), np.arange(self.n, dtype=np.int64))
            self.exponents = ((ik * plan.alpha.log) % plan.field.n_units).astype(np.int32)

    def _index(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexOutOfRange(f"carrier index {i} outside [0, {self.n})")
        return i

    def row_exponents(self, i: int) -> np.ndarray:
        self._index(i)
        if self.exponents is not None:
            return self.exponents[i]
        k = np.arange(self.n, dtype=np.int64)
        return (i * k * self.plan.alpha.log) % self.plan.field.n_units

    def matrix(self) -> list[list[FieldElement]]:
        return [carrier(self, i) for i in range(self.n)]


def carrier(cs: CarrierSet, i: int) -> list[FieldElement]:
    f = cs.plan.field
    return [f.power(int(e)) for e in cs.row_exponents(i)]


def _lag_sum(cs: CarrierSet, j: int) -> FieldElement:
    # sum_k alpha^(jk), evaluated by plain in-field addition
    f = cs.plan.field
    a = cs.plan.alpha.log
    acc = 0
    for k in range(cs.n):
        acc = f.add_codes(acc, f.exp_of(a * j * k))
    return f.from_code(acc)


def correlation(cs: CarrierSet, i: int, t: int) -> FieldElement:
    """R(i - t) = sum_k alpha^(ik) alpha^(-tk)."""
    cs._index(i)
    cs._index(t)
    f = cs.plan.field
    row_i, row_t = carrier(cs, i), carrier(cs, t)
    acc = f.zero
    for x, y in zip(row_i, row_t):
        acc = acc + x * y.inverse()
    return acc


def correlation_matrix(cs: CarrierSet) -> list[list[FieldElement]]:
    """Entry (i, t) = correlation(i, t); each lag is summed once and reused."""
    lags = [_lag_sum(cs, j) for j in range(cs.n)]
    return [[lags[(i - t) % cs.n] for t in range(cs.n)] for i in range(cs.n)]


def spread_user(cs: CarrierSet, i: int, symbol) -> list[FieldElement]:
    """Componentwise product of a user's symbol with its carrier."""
    s = cs.plan.field.coerce(symbol)
    return [s * c for c in carrier(cs, i)]
