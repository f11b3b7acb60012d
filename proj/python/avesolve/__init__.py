"""Absolute value equations ``A x - |x| = b``.

Thin wrapper over the C++ core: generalized Newton solver, condition checks,
solvability classifier and a brute-force sign-pattern oracle (n <= 20).
"""

from ._core import (
    AveError,
    DimensionMismatch,
    DimensionTooLarge,
    ParseError,
    classify,
    diagnostics,
    dumps,
    enumerate_solutions,
    generate,
    load,
    loads,
    save,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "AveError",
    "DimensionMismatch",
    "DimensionTooLarge",
    "ParseError",
    "classify",
    "diagnostics",
    "dumps",
    "enumerate_solutions",
    "generate",
    "load",
    "loads",
    "save",
    "solve",
]
