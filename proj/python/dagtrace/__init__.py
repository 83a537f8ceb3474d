"""Canonical witness-path traceback on DP DAGs in frontier-width-bounded space.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._dagtrace import (
    DpDag,
    IoError,
    NoWitnessError,
    ValidationError,
    build_chain,
    build_gadget,
    build_grid,
    build_layered,
    default_base_case_threshold,
    global_forward,
    load,
    oracle_canonical_path,
    oracle_path,
    oracle_value,
    save,
    traceback,
    verify,
)

__all__ = [
    "DpDag",
    "IoError",
    "NoWitnessError",
    "ValidationError",
    "build_chain",
    "build_gadget",
    "build_grid",
    "build_layered",
    "default_base_case_threshold",
    "global_forward",
    "load",
    "oracle_canonical_path",
    "oracle_path",
    "oracle_value",
    "save",
    "traceback",
    "verify",
]

__version__ = "0.1.0"
