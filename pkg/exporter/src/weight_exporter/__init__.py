"""Checkpoint exporter for the neutral JSON weight format."""

from .exporter import (
    PARITY_TOLERANCE,
    ExportError,
    ExportManifest,
    ParityReport,
    export,
    load_state_dict,
    read_manifest,
)

__version__ = "0.1.0"

__all__ = [
    "PARITY_TOLERANCE",
    "ExportError",
    "ExportManifest",
    "ParityReport",
    "export",
    "load_state_dict",
    "read_manifest",
]
