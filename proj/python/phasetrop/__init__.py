"""PSL2 phase tropicalization: valuations of matrices over Hahn series."""

import json as _json

from . import _phasetrop as _core
from ._phasetrop import (
    ConvergenceError,
    DomainError,
    HypothesisError,
    InconclusiveError,
    InvariantError,
    ParseError,
    PhasetropError,
    cone_distance as _cone_distance,
    normalize_series,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "HypothesisError",
    "InconclusiveError",
    "InvariantError",
    "ParseError",
    "PhasetropError",
    "cone_distance",
    "example_line",
    "example_line_cloud",
    "example_quadric_cloud",
    "family",
    "normalize_series",
    "quadric_classify",
    "val",
    "val_numeric",
]


def val(entries, depth="4"):
    """Symbolic valuation of the matrix (a, b; c, d) given as four series strings."""
    return _json.loads(_core.val(list(entries), depth))


def val_numeric(entries, k_min=2, k_max=11, target=None, depth="4"):
    """Numeric limit along log t = 2^k. target is a cone point dict."""
    t = None if target is None else _json.dumps(target)
    return _json.loads(_core.val_numeric(list(entries), k_min, k_max, t, depth))


def cone_distance(a, b):
    return _cone_distance(_json.dumps(a), _json.dumps(b))


def example_line(gamma, c):
    return _json.loads(_core.example_line(str(gamma), complex(c)))


def example_line_cloud(gammas, theta_count=12, modulus_count=8):
    return _json.loads(_core.example_line_cloud([str(g) for g in gammas], theta_count, modulus_count))


def quadric_classify(entries, depth="4"):
    return _json.loads(_core.quadric_classify(list(entries), depth))


def example_quadric_cloud(alphas, theta_count=12, orbit_count=6, seed=0):
    return _json.loads(_core.example_quadric_cloud([str(a) for a in alphas], theta_count, orbit_count, seed))


def family(poly, alpha_grid, theta_grid, floor=32, quadric=8, seed=0):
    """Sampled image of the constant family V(poly)."""
    return _json.loads(_core.family(poly, list(alpha_grid), list(theta_grid), floor, quadric, seed))
