"""Finite field Fourier transform of length N | p^m - 1.

``ffft`` and ``iffft`` evaluate the defining sums directly (O(N^2)) and are the
reference.  ``TransformPlan.forward_codes`` / ``inverse_codes`` are the
vectorised batch versions used by the simulator; tests pin them to the direct
evaluators.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import LengthMismatch, OrderNotAvailable
from .finite_field import FieldElement, GaloisField, element_order, find_element_of_order


class TransformPlan:
    """Kernel ``alpha`` of order N plus the cached quantities both directions need."""

    def __init__(self, field: GaloisField, n: int, alpha: FieldElement | None = None):
        if alpha is None:
            alpha = find_element_of_order(field, n)
        else:
            alpha = field.coerce(alpha)
            if alpha.is_zero or element_order(alpha) != n:
                raise OrderNotAvailable(f"kernel {alpha} does not have order {n}")
        self.field = field
        self.n = n
        self.alpha = alpha
        self.alpha_powers = [alpha**k for k in range(n)]
        # N as a field element: N copies of 1 summed, i.e. the base-field value N mod p
        self.n_field = field.from_code(n % field.p)
        self.n_inv = self.n_field.inverse()
        self._kernel: np.ndarray | None = None
        self._kernel_inv: np.ndarray | None = None

    def __repr__(self):
        return f"TransformPlan(GF({self.field.q}), N={self.n}, alpha={self.alpha})"

    def _check_len(self, values: Sequence) -> list[FieldElement]:
        if len(values) != self.n:
            raise LengthMismatch(f"expected length {self.n}, got {len(values)}")
        return [self.field.coerce(x) for x in values]

    # -- batch versions on integer codes ------------------------------------
    @property
    def kernel(self) -> np.ndarray:
        """Codes of alpha^(ik), shape (N, N)."""
        if self._kernel is None:
            ik = np.outer(np.arange(self.n), np.arange(self.n))
            idx = (ik * self.alpha.log) % self.field.n_units
            self._kernel = self.field.exp_table[idx]
        return self._kernel

    @property
    def kernel_inv(self) -> np.ndarray:
        """Codes of alpha^(-ik), shape (N, N)."""
        if self._kernel_inv is None:
            ik = np.outer(np.arange(self.n), np.arange(self.n))
            idx = (-ik * self.alpha.log) % self.field.n_units
            self._kernel_inv = self.field.exp_table[idx]
        return self._kernel_inv

    def _apply(self, rows: np.ndarray, kernel: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64)
        if rows.shape[-1] != self.n:
            raise LengthMismatch(f"expected last axis {self.n}, got {rows.shape[-1]}")
        f = self.field
        acc = np.zeros(rows.shape, dtype=np.int64)
        for i in range(self.n):
            term = f.mul_arrays(rows[..., i:i + 1], kernel[i])
            acc = f.add_arrays(acc, term)
        return acc

    def forward_codes(self, frames: np.ndarray) -> np.ndarray:
        """Spectra of a batch of time vectors given as codes, shape (..., N)."""
        return self._apply(frames, self.kernel)

    def inverse_codes(self, spectra: np.ndarray) -> np.ndarray:
        out = self._apply(spectra, self.kernel_inv)
        return self.field.mul_arrays(out, self.n_inv.code)


def ffft(plan: TransformPlan, v: Sequence) -> list[FieldElement]:
    """V_k = sum_i v_i alpha^(ik)."""
    vals = plan._check_len(v)
    f = plan.field
    a, nu = plan.alpha.log, f.n_units
    codes = [x.code for x in vals]
    out = []
    for k in range(plan.n):
        acc = 0
        for i, c in enumerate(codes):
            if c:
                acc = f.add_codes(acc, f.mul_codes(c, f.exp_of(a * i * k % nu)))
        out.append(f.from_code(acc))
    return out


def iffft(plan: TransformPlan, V: Sequence) -> list[FieldElement]:
    """v_i = N^-1 sum_k V_k alpha^(-ik), with N taken in the field."""
    vals = plan._check_len(V)
    f = plan.field
    a, nu = plan.alpha.log, f.n_units
    codes = [x.code for x in vals]
    scale = plan.n_inv.code
    out = []
    for i in range(plan.n):
        acc = 0
        for k, c in enumerate(codes):
            if c:
                acc = f.add_codes(acc, f.mul_codes(c, f.exp_of(-a * i * k % nu)))
        out.append(f.from_code(f.mul_codes(acc, scale)))
    return out


def is_valid_base_field_spectrum(plan: TransformPlan, V: Sequence) -> bool:
    """Conjugacy check V_k^p == V_(pk mod N) for every k."""
    vals = plan._check_len(V)
    p = plan.field.p
    return all(vals[k] ** p == vals[(p * k) % plan.n] for k in range(plan.n))
