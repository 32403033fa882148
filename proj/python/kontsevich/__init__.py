"""Truncated Kontsevich integrals of braids and moving graphs.

Braids, graphs, scenes and samples are plain dicts in the same JSON shapes
the command-line tool reads.
"""

import json

from . import _kontsevich as _k
from ._kontsevich import Error, NumericalError, ParseError, ResourceError, ValidationError

__all__ = [
    "Error",
    "ParseError",
    "ValidationError",
    "ResourceError",
    "NumericalError",
    "quotient",
    "braid_table",
    "graph_table",
    "closed",
    "braid_info",
    "identifold",
    "family",
    "run",
    "config_hash",
]


def _table(text):
    table = json.loads(text)
    table["coefficients"] = {
        e["word"]: complex(e["value"][0], e["value"][1]) for e in table["entries"]
    }
    return table


def quotient(skeleton, m, fi=False):
    """Diagram count, relation rank and dimension of the degree-m quotient."""
    return _k.quotient(skeleton, m, fi)


def braid_table(braid, max_degree, tol=1e-8, kappa=0.2):
    """Coefficient table of a braid; ``coefficients`` maps ``"1-2|2-3"`` to a complex value."""
    return _table(_k.braid_table(json.dumps(braid), max_degree, tol, kappa))


def graph_table(graph, max_degree, tol=1e-8, window=1e-3):
    return _table(_k.graph_table(json.dumps(graph), max_degree, tol, window))


def closed(braid, max_degree, fi=False):
    return json.loads(_k.closed(json.dumps(braid), max_degree, fi))


def braid_info(braid, eps=1e-9):
    """Validity, collision margin, permutation and realized strands."""
    return json.loads(_k.braid_info(json.dumps(braid), eps))


def identifold(scene, grid=(64, 64), eps=1e-3, threads=1):
    return json.loads(_k.identifold(json.dumps(scene), grid[0], grid[1], eps, threads))


def family(scene, samples, max_degree, eps=1e-3):
    return json.loads(_k.family(json.dumps(scene), json.dumps(samples), max_degree, eps))


def run(config):
    """Runs a command-line configuration; returns (status, report, partial)."""
    return _k.run(json.dumps(config))


def config_hash(config):
    return _k.config_hash(json.dumps(config))
