"""Curve diffusion flow for plane curves.

Thin wrapper over the C++ core. Structured inputs (curve specs, flow specs)
are plain dicts; they are passed to the core as JSON.
"""

import json

import numpy as np

from ._core import (
    Curve,
    CurveflowError,
    fields,
    hausdorff_distance,
    isoperimetric_ratio,
    length,
    read_curve_csv,
    resample_uniform,
    signed_area,
    winding_number,
    write_curve_csv,
)
from . import _core

__all__ = [
    "Curve",
    "CurveflowError",
    "classify",
    "error_kind",
    "evolve",
    "fields",
    "hausdorff_distance",
    "isoperimetric_ratio",
    "length",
    "read_curve_csv",
    "resample_uniform",
    "sample",
    "signed_area",
    "time_bounds",
    "winding_number",
    "write_curve_csv",
]


def sample(spec, n):
    """Sample an analytic curve, e.g. sample({"kind": "lemniscate"}, 512)."""
    return _core.sample(json.dumps(spec), int(n))


def classify(curve, tol=1e-2):
    return json.loads(_core.classify(curve, tol))


def time_bounds(L0):
    return json.loads(_core.time_bounds(float(L0)))


def evolve(curve, flow):
    """Run the flow; `flow` uses the same keys as the CLI config's "flow"."""
    out = _core.evolve(curve, json.dumps(flow))
    out["times"] = np.asarray(out["times"])
    return out


def error_kind(exc):
    """Kind name ("DomainError", "Parse", ...) carried by a CurveflowError."""
    return exc.args[1] if len(exc.args) > 1 else None
