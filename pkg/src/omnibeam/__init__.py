"""Complementary beam-pair synthesis and omni-directional broadcast
link simulation for antenna arrays."""

from .arrays import ArrayGeometry, Direction, steering, steering_ula, steering_upa
from .patterns import (
    PER_ELEMENT,
    RAW,
    AngularGrid,
    BeamPattern,
    composite_amplitude,
    composite_power,
    evaluate_pattern,
    pa_efficiency,
    pattern_variance,
    write_pattern_csv,
)
from .codebooks import (
    BASIS_8,
    ComplementarySet,
    SearchConfig,
    SearchSpaceError,
    UnsupportedLengthError,
    golay_construct,
    load_codebook,
    rbf_basis,
    rbf_sequence,
    save_codebook,
    search_complementary,
    split_subarrays,
)
from .linksim import (
    AWGN,
    CBF_ANALOG,
    CBF_DIGITAL,
    RAYLEIGH,
    RBF,
    SINGLE,
    BerCurve,
    RbfState,
    SimConfig,
    angle_sweep,
    effective_gain,
    qpsk_awgn_ber,
    qpsk_demodulate,
    qpsk_modulate,
    qpsk_rayleigh_ber,
    run_ber,
    write_ber_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "Direction",
    "steering",
    "steering_ula",
    "steering_upa",
    "AngularGrid",
    "BeamPattern",
    "evaluate_pattern",
    "composite_amplitude",
    "composite_power",
    "pattern_variance",
    "pa_efficiency",
    "write_pattern_csv",
    "PER_ELEMENT",
    "RAW",
    "BASIS_8",
    "ComplementarySet",
    "SearchConfig",
    "SearchSpaceError",
    "UnsupportedLengthError",
    "search_complementary",
    "golay_construct",
    "rbf_basis",
    "rbf_sequence",
    "split_subarrays",
    "save_codebook",
    "load_codebook",
    "SimConfig",
    "BerCurve",
    "RbfState",
    "SINGLE",
    "RBF",
    "CBF_DIGITAL",
    "CBF_ANALOG",
    "AWGN",
    "RAYLEIGH",
    "qpsk_modulate",
    "qpsk_demodulate",
    "effective_gain",
    "run_ber",
    "angle_sweep",
    "write_ber_csv",
    "qpsk_awgn_ber",
    "qpsk_rayleigh_ber",
    "__version__",
]
