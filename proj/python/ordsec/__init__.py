"""Ordinal partitions as Poincare sections: symbolization, partition entropies and first return maps."""

from ._core import (
    ConfigError,
    DivergenceError,
    Error,
    LengthError,
    NotFoundError,
    ParseError,
    __version__,
    analyze,
    delay_embed,
    detect_levels,
    diagonal_split,
    level_network,
    local_maxima,
    lorenz,
    mackey_glass,
    maxima_frm,
    partition_frm,
    pattern_of_window,
    permutation_entropy,
    rossler,
    run_manifest,
    symbolize,
    transition_network,
    window_from_embedding,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
