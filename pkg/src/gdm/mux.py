"""GDM multiplexing: spreading, coset compression, decompression, despreading."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    InconsistentLeader,
    InvalidSpectrum,
    LengthMismatch,
    NonBaseFieldResult,
    NonBaseFieldSymbol,
    NotCoprime,
    OrderNotAvailable,
)
from .ffft import TransformPlan, ffft, iffft
from .finite_field import FieldElement, FieldParams, GaloisField, prime_factors


# ---------------------------------------------------------------------------
# Cyclotomic structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclotomicStructure:
    """Cyclotomic cosets of p modulo N, each as the cycle (s, sp, sp^2, ...)."""

    n: int
    p: int
    cosets: tuple[tuple[int, ...], ...]

    @property
    def leaders(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.cosets)

    @property
    def v(self) -> int:
        """Number of cosets, i.e. spectral values sent under compression."""
        return len(self.cosets)

    @cached_property
    def coset_index(self) -> dict[int, int]:
        return {k: j for j, c in enumerate(self.cosets) for k in c}


def cyclotomic_cosets(n: int, p: int) -> CyclotomicStructure:
    if n < 1:
        raise ValueError("N must be positive")
    if math.gcd(n, p) != 1:
        raise NotCoprime(f"gcd(N={n}, p={p}) != 1")
    seen = set()
    cosets = []
    for s in range(n):
        if s in seen:
            continue
        cycle = [s]
        k = (s * p) % n
        while k != s:
            cycle.append(k)
            k = (k * p) % n
        seen.update(cycle)
        cosets.append(tuple(cycle))
    return CyclotomicStructure(n, p, tuple(cosets))


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    mu = 1
    for f in prime_factors(n):
        if n % (f * f) == 0:
            return 0
        mu = -mu
    return mu


def count_irreducible(k: int, p: int) -> int:
    """Number of monic irreducible polynomials of degree k over GF(p)."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    total = sum(mobius(d) * p ** (k // d) for d in range(1, k + 1) if k % d == 0)
    return total // k


def count_cyclotomic_classes(p: int, m: int) -> int:
    """Coset count for N = p^m - 1, from the irreducible-polynomial census.

    Every monic irreducible of degree dividing m except ``x`` is the minimal
    polynomial of exactly one coset.
    """
    return sum(count_irreducible(k, p) for k in range(1, m + 1) if m % k == 0) - 1


def compactness_factor(structure: CyclotomicStructure) -> Fraction:
    return Fraction(structure.n, structure.v)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GdmConfig:
    """A GDM system: field, user count N, symbol duration T and user bandwidth B1.

    T and B1 are abstract scalars carried only through the bandwidth accounting.
    """

    params: FieldParams
    n: int
    symbol_duration: float = 1.0
    b1: float = 1.0
    primitive: bool = True
    alpha: int | None = None  # kernel as a power of the field generator

    def __post_init__(self):
        q = self.params.p**self.params.m
        if self.n < 1 or (q - 1) % self.n:
            raise OrderNotAvailable(f"N={self.n} does not divide {q - 1}")

    @cached_property
    def field(self) -> GaloisField:
        return GaloisField(self.params, primitive=self.primitive)

    @cached_property
    def plan(self) -> TransformPlan:
        kernel = None if self.alpha is None else self.field.power(self.alpha)
        return TransformPlan(self.field, self.n, kernel)

    @cached_property
    def structure(self) -> CyclotomicStructure:
        return cyclotomic_cosets(self.n, self.params.p)

    @property
    def chip_duration(self) -> float:
        """Duration of one spectral value: T / N."""
        return self.symbol_duration / self.n


@dataclass(frozen=True)
class CompressedSpectrum:
    structure: CyclotomicStructure
    leader_values: tuple[FieldElement, ...] = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "leader_values", tuple(self.leader_values))
        if len(self.leader_values) != self.structure.v:
            raise LengthMismatch(
                f"expected {self.structure.v} leader values, got {len(self.leader_values)}")


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

def _frame_elements(config: GdmConfig, v: Sequence) -> list[FieldElement]:
    if len(v) != config.n:
        raise LengthMismatch(f"frame has {len(v)} symbols, expected {config.n}")
    f = config.field
    out = []
    for x in v:
        if isinstance(x, FieldElement):
            e = f.coerce(x)
            ok = e.in_base_field()
        else:
            ok = isinstance(x, (int, np.integer)) and 0 <= x < f.p
            e = f.from_code(int(x)) if ok else None
        if not ok:
            raise NonBaseFieldSymbol(f"frame symbol {x!r} is not in GF({f.p})")
        out.append(e)
    return out


def multiplex(config: GdmConfig, v: Sequence) -> list[FieldElement]:
    """Sum of every user's spread vector, i.e. the transform of the frame."""
    return ffft(config.plan, _frame_elements(config, v))


def compress(V: Sequence[FieldElement], structure: CyclotomicStructure) -> CompressedSpectrum:
    """Keep the coset-leader values after checking the conjugacy constraint."""
    if len(V) != structure.n:
        raise LengthMismatch(f"spectrum has {len(V)} values, expected {structure.n}")
    p, n = structure.p, structure.n
    for k in range(n):
        if V[k] ** p != V[(p * k) % n]:
            raise InvalidSpectrum(
                f"V_{k}^{p} != V_{(p * k) % n}: not the spectrum of a GF({p}) frame")
    return CompressedSpectrum(structure, tuple(V[s] for s in structure.leaders))


def decompress(c: CompressedSpectrum) -> list[FieldElement]:
    """Rebuild every coset from its leader via V_(s p^j) = V_s^(p^j)."""
    st = c.structure
    if not c.leader_values:
        raise LengthMismatch("empty compressed spectrum")
    out: list[FieldElement | None] = [None] * st.n
    for coset, val in zip(st.cosets, c.leader_values):
        if val ** (st.p ** len(coset)) != val:
            raise InconsistentLeader(
                f"leader V_{coset[0]} = {val} is not in GF({st.p}^{len(coset)})")
        cur = val
        for k in coset:
            out[k] = cur
            cur = cur**st.p
    return out


def demultiplex(config: GdmConfig, V: Sequence[FieldElement]) -> list[int]:
    """Inverse transform; returns the users' GF(p) symbols as ints."""
    v = iffft(config.plan, V)
    if not all(x.in_base_field() for x in v):
        raise NonBaseFieldResult("despread frame has symbols outside the base field")
    return [x.code for x in v]


def bandwidth_requirements(config: GdmConfig, compressed: bool) -> Fraction:
    """Required bandwidth in units of B1: N uncompressed, N / gamma compressed.

    Assumes one channel symbol per spectral value, as with 16-QAM over GF(16).
    """
    if compressed:
        return Fraction(config.n) / compactness_factor(config.structure)
    return Fraction(config.n)


# ---------------------------------------------------------------------------
# Batch versions on integer codes (used by the simulator)
# ---------------------------------------------------------------------------

def compress_codes(spectra: np.ndarray, structure: CyclotomicStructure) -> np.ndarray:
    return np.asarray(spectra)[..., list(structure.leaders)]


def decompress_codes(leaders: np.ndarray, structure: CyclotomicStructure,
                     field: GaloisField) -> tuple[np.ndarray, np.ndarray]:
    """Expand leader codes to full spectra.

    Returns ``(spectra, consistent)`` where ``consistent`` flags rows whose
    leaders all satisfy subfield membership; inconsistent rows are still
    expanded so callers can count them as errors without raising.
    """
    leaders = np.asarray(leaders, dtype=np.int64)
    shape = leaders.shape[:-1] + (structure.n,)
    out = np.zeros(shape, dtype=np.int64)
    ok = np.ones(leaders.shape[:-1], dtype=bool)
    p = structure.p
    for j, coset in enumerate(structure.cosets):
        val = leaders[..., j]
        ok &= field.pow_arrays(val, p ** len(coset)) == val
        for e, k in enumerate(coset):
            out[..., k] = field.pow_arrays(val, p**e)
    return out, ok
