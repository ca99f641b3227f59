"""Monte Carlo SER through the full chain:
mux -> [compress] -> map -> AWGN -> demap -> [decompress] -> demux.

Frames are simulated in fixed-size chunks.  Chunk ``j`` draws its frames and
noise from ``PCG64(SeedSequence(seed, spawn_key=(j,)))``, so totals depend only
on (seed, n_frames, chunk size), never on how many threads run the chunks.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .modem import (
    ChannelModel,
    FrameModulation,
    codes_to_labels,
    frame_error_probability,
    get_constellation,
    labels_to_codes,
    make_rng,
    point_error_probabilities,
)
from .mux import GdmConfig, compress_codes, decompress_codes

DEFAULT_CHUNK = 2048


@dataclass(frozen=True)
class LinkConfig:
    gdm: GdmConfig
    kind: str
    compressed: bool = False
    chunk_frames: int = DEFAULT_CHUNK

    @property
    def modulation(self) -> FrameModulation:
        return FrameModulation(self.gdm.params, self.kind)

    @property
    def field_symbols_per_frame(self) -> int:
        return self.modulation.field_symbols_per_frame(self.gdm.n, self.compressed)

    @property
    def symbols_per_frame(self) -> int:
        return self.modulation.symbols_per_frame(self.gdm.n, self.compressed)

    def predicted(self, es_n0_db: float) -> tuple[float, float]:
        """Closed-form (P_M, P_E) for this link, accounting for symbol statistics.

        Spectral values are not uniform over the field: a value at an index in
        coset C is uniform over the subfield GF(p^|C|).  Per-point error rates
        are averaged over that distribution, and a frame survives only if every
        channel symbol does.  Exact for BPSK, QPSK and 16-QAM when a field
        symbol fills whole channel symbols; otherwise (8-PSK over GF(16)) the
        uniform formula and (1 - P_M)^symbols are used.
        """
        c = get_constellation(self.kind)
        pe = point_error_probabilities(c, es_n0_db)
        m = self.modulation.bits_per_field_symbol
        if m % c.bits_per_symbol:
            pm = float(pe.mean())
            return pm, frame_error_probability(pm, self.symbols_per_frame)
        field, st, p = self.gdm.field, self.gdm.structure, self.gdm.params.p
        err_sum = 0.0
        success = 1.0
        for coset in st.cosets:
            d = len(coset)
            sub = [e for e in field.elements() if e ** (p**d) == e]
            sent = coset[:1] if self.compressed else coset
            codes = np.array([[(x ** (p**j)).code for j in range(len(sent))] for x in sub])
            labels = codes_to_labels(codes, m, c)  # (|sub|, symbols)
            err_sum += float(pe[labels].sum(axis=1).mean())
            success *= float(np.prod(1.0 - pe[labels], axis=1).mean())
        return err_sum / self.symbols_per_frame, 1.0 - success


@dataclass(frozen=True)
class McResult:
    es_n0_db: float
    n_frames: int
    n_symbols: int
    symbol_errors: int
    n_field_symbols: int
    field_symbol_errors: int
    frame_errors: int

    @property
    def p_m(self) -> float:
        return self.symbol_errors / self.n_symbols

    @property
    def p_e(self) -> float:
        return self.frame_errors / self.n_frames

    @property
    def p_field(self) -> float:
        return self.field_symbol_errors / self.n_field_symbols

    @property
    def p_m_stderr(self) -> float:
        return math.sqrt(self.p_m * (1.0 - self.p_m) / self.n_symbols)

    @property
    def ci_radius(self) -> float:
        """Binomial standard error of the frame error rate."""
        return math.sqrt(self.p_e * (1.0 - self.p_e) / self.n_frames)


def _run_chunk(link: LinkConfig, ch: ChannelModel, index: int, n: int) -> tuple[int, int, int]:
    cfg = link.gdm
    field, plan, st = cfg.field, cfg.plan, cfg.structure
    c = get_constellation(link.kind)
    m = link.modulation.bits_per_field_symbol
    rng = make_rng(ch.rng_seed, index)

    frames = rng.integers(0, field.p, size=(n, cfg.n))
    spectra = plan.forward_codes(frames)
    tx = compress_codes(spectra, st) if link.compressed else spectra
    tx_labels = codes_to_labels(tx, m, c)

    rx_points = c.points[tx_labels]
    if ch.n0 > 0.0:
        sigma = math.sqrt(ch.n0 / 2.0)
        noise = rng.standard_normal(rx_points.shape + (2,)) * sigma
        rx_points = rx_points + noise[..., 0] + 1j * noise[..., 1]
    rx_labels = c.nearest(rx_points)
    rx = labels_to_codes(rx_labels, m, tx.shape[-1], c)

    if link.compressed:
        rx_spectra, consistent = decompress_codes(rx, st, field)
    else:
        rx_spectra, consistent = rx, np.ones(n, dtype=bool)
    recovered = plan.inverse_codes(rx_spectra)
    # values outside GF(p) can never equal the sent digits, so they count as errors
    frame_ok = consistent & np.all(recovered == frames, axis=1)

    return (int(np.count_nonzero(rx_labels != tx_labels)),
            int(np.count_nonzero(rx != tx)),
            int(n - np.count_nonzero(frame_ok)))


def monte_carlo_ser(link: LinkConfig, n_frames: int, ch: ChannelModel,
                    workers: int = 1) -> McResult:
    if n_frames < 1:
        raise ValueError("n_frames must be >= 1")
    size = link.chunk_frames
    chunks = [(j, min(size, n_frames - j * size)) for j in range(-(-n_frames // size))]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda jc: _run_chunk(link, ch, *jc), chunks))
    else:
        parts = [_run_chunk(link, ch, j, n) for j, n in chunks]
    sym_err, field_err, frame_err = (sum(x) for x in zip(*parts))
    return McResult(
        es_n0_db=ch.es_n0_db,
        n_frames=n_frames,
        n_symbols=n_frames * link.symbols_per_frame,
        symbol_errors=sym_err,
        n_field_symbols=n_frames * link.field_symbols_per_frame,
        field_symbol_errors=field_err,
        frame_errors=frame_err,
    )

