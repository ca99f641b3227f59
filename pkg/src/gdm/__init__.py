"""Galois-field division multiplex (GDM).

Spread-spectrum multiplexing of N users with the finite field Fourier
transform over GF(p^m), cyclotomic-coset spectrum compression, constellation
mapping and symbol-error-rate evaluation over AWGN.
"""
from .carriers import CarrierSet, carrier, correlation, correlation_matrix, spread_user
from .errors import GDMError
from .ffft import TransformPlan, ffft, iffft, is_valid_base_field_spectrum
from .finite_field import (
    FieldElement,
    FieldParams,
    GaloisField,
    construct_field,
    element_order,
    find_element_of_order,
    minimal_polynomial,
)
from .modem import (
    ChannelModel,
    Constellation,
    FrameModulation,
    SerCurve,
    analytical_symbol_error,
    awgn_channel,
    demap,
    frame_error_probability,
    get_constellation,
    map_spectrum,
    ser_curve,
)
from .mux import (
    CompressedSpectrum,
    CyclotomicStructure,
    GdmConfig,
    bandwidth_requirements,
    compactness_factor,
    compress,
    count_irreducible,
    cyclotomic_cosets,
    decompress,
    demultiplex,
    multiplex,
)
from .simulation import LinkConfig, McResult, monte_carlo_ser

__version__ = "0.1.0"
