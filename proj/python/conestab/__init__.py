"""Stability of Lawson cones in the one-phase free boundary problem.

Thin wrapper over the compiled ``_core`` module; results come back as
plain dicts.
"""

import json as _json

from . import _core
from ._core import ConestabError, __version__

__all__ = [
    "ConestabError",
    "__version__",
    "solve",
    "boundary_data",
    "boundary_functional",
    "stability",
    "certify",
    "positive_solution",
    "interior_check",
    "lstar",
    "case_identity",
    "euler_zeros",
    "harmonic_dimension",
    "verify_simons",
    "scan",
]


def _loads(text):
    def fix(x):
        return float(x) if x in ("inf", "-inf", "nan") else x

    def walk(v):
        if isinstance(v, dict):
            return {k: walk(x) for k, x in v.items()}
        if isinstance(v, list):
            return [walk(x) for x in v]
        return fix(v) if isinstance(v, str) else v

    return walk(_json.loads(text))


def solve(k, h, tol=1e-10, samples=4096):
    return _loads(_core.solve(k, h, tol, samples))


def boundary_data(k, h):
    return _loads(_core.boundary_data(k, h))


def boundary_functional(values, H, weight="frobenius"):
    """Exact boundary functional; eigenvalues and H as rationals ("1/3", 2, ...)."""
    return _loads(_core.boundary_functional([str(v) for v in values], str(H), weight))


def stability(k, h, weight="frobenius", tol=1e-7, grid=4096):
    return _loads(_core.stability(k, h, weight, tol, grid))


def certify(k, h, quad=64):
    return _loads(_core.certify(k, h, quad))


def positive_solution(k, h):
    return _loads(_core.positive_solution(k, h))


def interior_check(k, h, weight="frobenius", grid=2048):
    return _loads(_core.interior_check(k, h, weight, grid))


def lstar(n, radius_max=2.0**20):
    return _loads(_core.lstar(n, radius_max))


def case_identity():
    return _loads(_core.case_identity())


def euler_zeros(alpha, beta):
    return _loads(_core.euler_zeros(alpha, beta))


def harmonic_dimension(n, d):
    return _core.harmonic_dimension(n, d)


def verify_simons(n, degree, weight="frobenius", points=50, seed=1):
    return _loads(_core.verify_simons(n, degree, weight, points, seed))


def scan(n, weight="frobenius", jobs=1):
    return _loads(_core.scan(n, weight, jobs))
