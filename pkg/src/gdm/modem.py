"""Constellation mapping of GF(2^m) symbols, AWGN channel and SER formulas.

SNR is Es/N0 per constellation symbol throughout, with constellations
normalised to unit average energy.  ``esn0_to_ebn0_db`` converts for plots
that compare constellations per bit.

Symbol error formulas (coherent detection, AWGN), with Q the Gaussian tail:

* BPSK   ``Q(sqrt(2 Es/N0))``, exact
* QPSK   ``2 Q(sqrt(Es/N0)) - Q(sqrt(Es/N0))**2``, exact
* 8-PSK  ``2 Q(sqrt(2 Es/N0) sin(pi/8))``, nearest-neighbour approximation
  clipped to 1
* 16-QAM ``1 - (1 - P4)**2`` with ``P4 = 1.5 Q(sqrt(Es/(5 N0)))``, exact
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.special import erfc

from .errors import DomainError, LengthMismatch, UnsupportedFieldConstellationPair
from .finite_field import FieldElement, FieldParams, GaloisField
from .mux import cyclotomic_cosets

KINDS = ("bpsk", "qpsk", "8psk", "16qam")

# Gray-coded 4-PAM levels keyed by the two label bits (first bit, second bit)
_PAM4 = {(0, 0): -3.0, (0, 1): -1.0, (1, 1): 1.0, (1, 0): 3.0}


def normalize_kind(kind: str) -> str:
    k = kind.strip().lower().replace("-", "").replace("_", "")
    aliases = {"qam16": "16qam", "psk8": "8psk", "2psk": "bpsk", "4psk": "qpsk"}
    k = aliases.get(k, k)
    if k not in KINDS:
        raise ValueError(f"unknown constellation {kind!r}; choose from {', '.join(KINDS)}")
    return k


@dataclass(frozen=True, eq=False)
class Constellation:
    """Points indexed by their integer label: ``points[label]``."""

    kind: str
    points: np.ndarray

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def bits_per_symbol(self) -> int:
        return int(math.log2(self.size))

    @property
    def labels(self) -> list[str]:
        return [format(i, f"0{self.bits_per_symbol}b") for i in range(self.size)]

    def nearest(self, received: np.ndarray) -> np.ndarray:
        """Minimum-Euclidean-distance label decisions."""
        r = np.asarray(received, dtype=np.complex128)
        d = np.abs(r[..., None] - self.points) ** 2
        return np.argmin(d, axis=-1)


@lru_cache(maxsize=None)
def get_constellation(kind: str) -> Constellation:
    kind = normalize_kind(kind)
    if kind == "bpsk":
        pts = np.array([-1.0, 1.0], dtype=np.complex128)
    elif kind == "qpsk":
        pts = np.array([complex(2 * (lab >> 1) - 1, 2 * (lab & 1) - 1) for lab in range(4)])
        pts /= math.sqrt(2.0)
    elif kind == "8psk":
        pts = np.zeros(8, dtype=np.complex128)
        for k in range(8):
            pts[k ^ (k >> 1)] = np.exp(2j * np.pi * k / 8)
    else:
        pts = np.zeros(16, dtype=np.complex128)
        for lab in range(16):
            b3, b2, b1, b0 = (lab >> 3) & 1, (lab >> 2) & 1, (lab >> 1) & 1, lab & 1
            pts[lab] = complex(_PAM4[(b3, b2)], _PAM4[(b1, b0)])
        pts /= math.sqrt(10.0)
    pts.flags.writeable = False
    return Constellation(kind, pts)


# ---------------------------------------------------------------------------
# Bit packing: field codes <-> constellation labels
# ---------------------------------------------------------------------------

def _bits_per_element(field_or_params) -> int:
    if field_or_params.p != 2:
        raise UnsupportedFieldConstellationPair(
            f"only characteristic-2 fields map onto binary-labelled constellations "
            f"(got p={field_or_params.p})")
    return field_or_params.m


def n_channel_symbols(count: int, m: int, c: Constellation) -> int:
    """Constellation symbols needed for ``count`` field symbols (zero-padded)."""
    return -(-count * m // c.bits_per_symbol)


def codes_to_labels(codes: np.ndarray, m: int, c: Constellation) -> np.ndarray:
    """Pack field codes (..., count) into constellation labels (..., nsym).

    Each code contributes m bits, highest-degree coefficient first; the stream
    is zero-padded up to a whole number of constellation symbols.
    """
    codes = np.asarray(codes, dtype=np.int64)
    k = c.bits_per_symbol
    count = codes.shape[-1]
    bits = (codes[..., None] >> np.arange(m - 1, -1, -1)) & 1
    bits = bits.reshape(codes.shape[:-1] + (count * m,))
    nsym = n_channel_symbols(count, m, c)
    pad = nsym * k - count * m
    if pad:
        bits = np.concatenate([bits, np.zeros(bits.shape[:-1] + (pad,), dtype=np.int64)], axis=-1)
    bits = bits.reshape(codes.shape[:-1] + (nsym, k))
    return bits @ (1 << np.arange(k - 1, -1, -1))


def labels_to_codes(labels: np.ndarray, m: int, count: int, c: Constellation) -> np.ndarray:
    """Inverse of ``codes_to_labels``; padding bits are dropped."""
    labels = np.asarray(labels, dtype=np.int64)
    k = c.bits_per_symbol
    nsym = labels.shape[-1]
    if nsym != n_channel_symbols(count, m, c):
        raise LengthMismatch(f"{nsym} channel symbols cannot carry {count} field symbols")
    bits = (labels[..., None] >> np.arange(k - 1, -1, -1)) & 1
    bits = bits.reshape(labels.shape[:-1] + (nsym * k,))[..., : count * m]
    bits = bits.reshape(labels.shape[:-1] + (count, m))
    return bits @ (1 << np.arange(m - 1, -1, -1))


def map_spectrum(values: Sequence[FieldElement], c: Constellation | str) -> np.ndarray:
    """Field symbols -> bit labels -> constellation points."""
    if isinstance(c, str):
        c = get_constellation(c)
    if not values:
        return np.zeros(0, dtype=np.complex128)
    field = values[0].field
    m = _bits_per_element(field)
    codes = np.array([field.coerce(v).code for v in values], dtype=np.int64)
    return c.points[codes_to_labels(codes, m, c)]


def demap(received: Sequence[complex], c: Constellation | str, field: GaloisField,
          count: int | None = None) -> list[FieldElement]:
    """Minimum-distance decisions unpacked back to field symbols.

    ``count`` is the number of field symbols carried; by default the largest
    count that fits, which is unambiguous whenever padding is shorter than m.
    """
    if isinstance(c, str):
        c = get_constellation(c)
    m = _bits_per_element(field)
    r = np.asarray(received, dtype=np.complex128)
    if count is None:
        count = len(r) * c.bits_per_symbol // m
    codes = labels_to_codes(c.nearest(r), m, count, c)
    return [field.from_code(int(x)) for x in codes]


# ---------------------------------------------------------------------------
# Frame accounting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrameModulation:
    params: FieldParams
    kind: str

    @property
    def constellation(self) -> Constellation:
        return get_constellation(self.kind)

    @property
    def bits_per_field_symbol(self) -> int:
        return _bits_per_element(self.params)

    def field_symbols_per_frame(self, n: int, compressed: bool) -> int:
        return cyclotomic_cosets(n, self.params.p).v if compressed else n

    def symbols_per_frame(self, n: int, compressed: bool = False) -> int:
        count = self.field_symbols_per_frame(n, compressed)
        return n_channel_symbols(count, self.bits_per_field_symbol, self.constellation)

    def bandwidth(self, n: int, compressed: bool = False) -> Fraction:
        """Bandwidth in units of B1, one B1 per channel symbol in the frame time T."""
        return Fraction(self.symbols_per_frame(n, compressed))

    def tdm_ratio(self, n: int, compressed: bool = False) -> Fraction:
        """Bandwidth relative to TDM of the same n binary users (n B1)."""
        return self.bandwidth(n, compressed) / n


# ---------------------------------------------------------------------------
# Channel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChannelModel:
    """AWGN at a given Es/N0 (Es = 1).  ``inf`` dB disables the noise."""

    es_n0_db: float
    rng_seed: int = 0
    kind: str = "awgn"

    @property
    def n0(self) -> float:
        if math.isinf(self.es_n0_db) and self.es_n0_db > 0:
            return 0.0
        return 10.0 ** (-self.es_n0_db / 10.0)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for (seed, stream...) via numpy's SeedSequence."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=stream)))


def awgn_channel(symbols: Sequence[complex], ch: ChannelModel,
                 rng: np.random.Generator | None = None) -> np.ndarray:
    """Add circular complex Gaussian noise with variance N0/2 per component."""
    x = np.asarray(symbols, dtype=np.complex128)
    n0 = ch.n0
    if n0 == 0.0:
        return x.copy()
    if rng is None:
        rng = make_rng(ch.rng_seed)
    sigma = math.sqrt(n0 / 2.0)
    noise = rng.standard_normal(x.shape + (2,)) * sigma
    return x + noise[..., 0] + 1j * noise[..., 1]


# ---------------------------------------------------------------------------
# Analytical error rates
# ---------------------------------------------------------------------------

def qfunc(x):
    return 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def esn0_to_ebn0_db(es_n0_db, c: Constellation | str):
    if isinstance(c, str):
        c = get_constellation(c)
    return np.asarray(es_n0_db, dtype=float) - 10.0 * math.log10(c.bits_per_symbol)


def ebn0_to_esn0_db(eb_n0_db, c: Constellation | str):
    if isinstance(c, str):
        c = get_constellation(c)
    return np.asarray(eb_n0_db, dtype=float) + 10.0 * math.log10(c.bits_per_symbol)


def analytical_symbol_error(c: Constellation | str, es_n0_db):
    """Probability of a constellation-symbol error P_M (formulas in module doc)."""
    kind = c.kind if isinstance(c, Constellation) else normalize_kind(c)
    g = 10.0 ** (np.asarray(es_n0_db, dtype=float) / 10.0)
    if kind == "bpsk":
        pm = qfunc(np.sqrt(2.0 * g))
    elif kind == "qpsk":
        q = qfunc(np.sqrt(g))
        pm = 2.0 * q - q * q
    elif kind == "8psk":
        pm = np.minimum(1.0, 2.0 * qfunc(np.sqrt(2.0 * g) * math.sin(math.pi / 8)))
    else:
        p4 = 1.5 * qfunc(np.sqrt(g / 5.0))
        pm = 1.0 - (1.0 - p4) ** 2
    return float(pm) if np.ndim(pm) == 0 else pm


def point_error_probabilities(c: Constellation | str, es_n0_db: float) -> np.ndarray:
    """Error probability given each transmitted label, indexed like ``points``.

    16-QAM is exact per point (corner, edge and inner points differ); the PSK
    family is symmetric so every label gets ``analytical_symbol_error``.
    """
    if isinstance(c, str):
        c = get_constellation(c)
    if c.kind != "16qam":
        return np.full(c.size, analytical_symbol_error(c, es_n0_db))
    n0 = 10.0 ** (-float(es_n0_db) / 10.0)
    q = float(qfunc(math.sqrt(2.0 / (10.0 * n0))))
    outer = np.isclose(np.abs(c.points.real) * math.sqrt(10.0), 3.0)
    e_i = np.where(outer, q, 2.0 * q)
    outer = np.isclose(np.abs(c.points.imag) * math.sqrt(10.0), 3.0)
    e_q = np.where(outer, q, 2.0 * q)
    return 1.0 - (1.0 - e_i) * (1.0 - e_q)


def frame_error_probability(p_m, exponent: int):
    """P_E = 1 - (1 - P_M)^exponent.

    Evaluated as ``-expm1(exponent * log1p(-P_M))`` so tiny P_M does not
    cancel to zero.
    """
    if exponent < 1:
        raise DomainError(f"exponent must be >= 1, got {exponent}")
    arr = np.asarray(p_m, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError(f"probability outside [0, 1]: {p_m}")
    with np.errstate(divide="ignore"):
        pe = -np.expm1(exponent * np.log1p(-arr))
    return float(pe) if np.ndim(pe) == 0 else pe


@dataclass(frozen=True)
class SerCurve:
    kind: str
    exponent: int
    points: tuple[tuple[float, float, float], ...]

    @property
    def snr_db(self) -> np.ndarray:
        return np.array([pt[0] for pt in self.points])

    @property
    def p_m(self) -> np.ndarray:
        return np.array([pt[1] for pt in self.points])

    @property
    def p_e(self) -> np.ndarray:
        return np.array([pt[2] for pt in self.points])


def ser_curve(c: Constellation | str, exponent: int, snr_grid: Iterable[float]) -> SerCurve:
    kind = c.kind if isinstance(c, Constellation) else normalize_kind(c)
    grid = [float(s) for s in snr_grid]
    if not grid:
        raise ValueError("empty SNR grid")
    pts = []
    for s in grid:
        pm = analytical_symbol_error(kind, s)
        pts.append((s, pm, frame_error_probability(pm, exponent)))
    return SerCurve(kind, exponent, tuple(pts))


def snr_grid(text: str) -> list[float]:
    """Parse ``start:stop:step`` (stop inclusive) or a comma list of dB values."""
    text = text.strip()
    if not text:
        raise ValueError("empty SNR grid")
    if ":" in text:
        parts = [float(x) for x in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f"bad SNR range {text!r}; expected start:stop:step")
        start, stop, step = parts
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        if n < 1:
            raise ValueError(f"empty SNR range {text!r}")
        return [round(start + i * step, 10) for i in range(n)]
    return [float(x) for x in text.split(",") if x.strip()]
