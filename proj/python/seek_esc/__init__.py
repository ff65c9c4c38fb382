"""Model-free unicycle source seeking (third-order Lie bracket ESC).

Thin Python layer over the C++ core. Trajectories come back as dicts of numpy
arrays with keys t, x, y, h, J, v.
"""

from ._seek import (
    Config,
    IoError,
    NumericalError,
    ParseError,
    SeekError,
    TimestampMismatchError,
    ValidationError,
    averaging_gap_sweep,
    certify,
    config,
    config_from_text,
    convergence_time,
    field_value,
    fit_decay,
    lbs,
    lbs_gains,
    load_config,
    moment_check,
    preset_names,
    preset_text,
    run_cli,
    simulate,
)

__all__ = [
    "Config",
    "IoError",
    "NumericalError",
    "ParseError",
    "SeekError",
    "TimestampMismatchError",
    "ValidationError",
    "averaging_gap_sweep",
    "certify",
    "config",
    "config_from_text",
    "convergence_time",
    "field_value",
    "fit_decay",
    "lbs",
    "lbs_gains",
    "load_config",
    "moment_check",
    "preset_names",
    "preset_text",
    "run_cli",
    "simulate",
]
