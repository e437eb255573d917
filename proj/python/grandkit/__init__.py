"""GRAND / ORBGRAND decoders, pattern generation and a hardware cycle model."""

from ._core import (
    ConstructionError,
    LinearCode,
    ParseError,
    __version__,
    ca_polar,
    count_queries,
    grandab_decode,
    hamming_7_4,
    lambda_max,
    make_frame,
    noise_variance,
    orbgrand_decode,
    partitions_of,
    pattern_stream,
    quantize,
    random_linear,
    run_fer,
    steps_for_lw,
    worst_case_cycles,
)

__all__ = [
    "ConstructionError",
    "LinearCode",
    "ParseError",
    "__version__",
    "ca_polar",
    "count_queries",
    "grandab_decode",
    "hamming_7_4",
    "lambda_max",
    "make_frame",
    "noise_variance",
    "orbgrand_decode",
    "partitions_of",
    "pattern_stream",
    "quantize",
    "random_linear",
    "run_fer",
    "steps_for_lw",
    "worst_case_cycles",
]
