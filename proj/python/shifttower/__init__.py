"""Shift towers built from finite-dimensional algebras."""

import json

from ._shifttower import (
    SCHEMA_VERSION,
    CapExceeded,
    ShapeError,
    SpecError,
    commutant_structure,
    default_truncation,
    restricted_shift_entropy,
    run_job_json,
    shift_stream,
    spanning_dimension,
    validate_spec,
    vn_entropy,
)

COMMANDS = ("verify", "commutant", "entropy", "oracle", "all")


def run_job(config, command="all"):
    """Run a job from a config dict; returns (report dict, exit code)."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    text, code = run_job_json(json.dumps(config), command)
    return json.loads(text), code


__all__ = [
    "SCHEMA_VERSION",
    "COMMANDS",
    "CapExceeded",
    "ShapeError",
    "SpecError",
    "commutant_structure",
    "default_truncation",
    "restricted_shift_entropy",
    "run_job",
    "shift_stream",
    "spanning_dimension",
    "validate_spec",
    "vn_entropy",
]
