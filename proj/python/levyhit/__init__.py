"""Point and interval hitting for one-dimensional symmetric Levy processes."""

from ._core import (  # noqa: F401
    ArgumentError,
    Error,
    HypothesisError,
    InsufficientSampleError,
    NumericalError,
    SymbolSpec,
    __version__,
    check_names,
    heat_kernel,
    interval_tail_band,
    kernel_K,
    kernel_K_lambda,
    kernel_K_tilde,
    point_tail,
    point_tail_band,
    potential,
    renewal_V,
    simulate_interval_tail,
    validate,
)
