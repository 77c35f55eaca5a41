"""Brownian-motion viscosity estimation (Python bindings of the C++ core)."""

import json

from ._core import (
    InvalidArgument,
    InvalidState,
    NoRootError,
    ParseError,
    __version__,
    einstein_diffusion,
    estimate_diffusion,
    generate_wiener,
    predicted_relative_std,
    simulate_langevin,
    stay_probability,
    stokes_force,
    viscosity_from_diffusion,
)
from . import _core


def run_ensemble(**kwargs):
    """Monte Carlo ensemble report as a dict (same layout as `cytovisc ensemble`)."""
    return json.loads(_core.run_ensemble_json(**kwargs))


def reproduce_box1(seed=12345):
    """Reference-table comparison as a dict with per-cell verdicts."""
    return json.loads(_core.reproduce_box1_json(seed))


__all__ = [
    "InvalidArgument",
    "InvalidState",
    "NoRootError",
    "ParseError",
    "__version__",
    "einstein_diffusion",
    "estimate_diffusion",
    "generate_wiener",
    "predicted_relative_std",
    "reproduce_box1",
    "run_ensemble",
    "simulate_langevin",
    "stay_probability",
    "stokes_force",
    "viscosity_from_diffusion",
]
