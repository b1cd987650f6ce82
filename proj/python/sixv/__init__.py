"""Six-vertex model with domain wall boundary conditions."""

import json

from . import _sixv
from ._sixv import *  # noqa: F401,F403


def verify_gaussian_limit(weights, grid=(8, 16, 32, 48)):
    return json.loads(_sixv._verify_gaussian_limit(_sixv.WeightTriple(*weights), list(grid)))


def verify_geometric_limit(weights, grid=(8, 16, 32, 48), threshold=-1.0):
    return json.loads(_sixv._verify_geometric_limit(_sixv.WeightTriple(*weights), list(grid), threshold))


def verify_expansions(theorem, weights, xi, grid=(8, 16, 32, 64)):
    p = _sixv.params_from_weights(*weights)
    return json.loads(_sixv._verify_expansions(theorem, p, [complex(x) for x in xi], list(grid)))
