"""
tsgeom: geometric symbolization of discrete time series.

Every interior sample of a series is classified into one of 13 shapes of
its 3-point neighbourhood.  From the resulting symbol string the package
derives transition matrices, semantic entropy, information power (mean
absolute product of second and first differences), their windowed ratio,
and the synchronizability of oscillators in a Kuramoto network.
"""

__version__ = "0.1.0"

from .errors import (
    ClassificationError,
    CorruptedInputError,
    DivergenceError,
    EmptyInputError,
    IngestError,
    InvalidInputError,
    NoDefinedValueError,
    SpecError,
    TsgeomError,
)
from .kuramoto import (
    OscillatorNetwork,
    Trajectory,
    integrate,
    marginal_coupling,
    order_parameter,
    random_network,
    synchronizability,
)
from .measures import (
    WindowedSeries,
    histogram,
    information_power,
    locate_min,
    measure_series,
    permutation_entropy3,
    ratio_series,
    semantic_entropy,
    spectral_power,
)
from .signal import GeneratorSpec, Sign, Signal, WindowSpec, generate, sign_of, windows
from .symbolize import (
    CONFIGURATIONS,
    SymbolString,
    classify,
    difference_triple,
    enumerate_valid_patterns,
    left_product,
    pattern_lookup,
    peaks_troughs,
    right_product,
    symbolize,
)
from .transitions import TransitionMatrix, block_views, count_transitions, validity_mask
