"""Phase retrieval of wide-band signals.

Specs, requests and reports are plain dicts (the JSON formats of the C++
library).
"""

import json

from . import _core
from ._core import (
    DominanceViolated,
    ParseError,
    WbprError,
    default_alpha,
    display_alpha,
    eval_riesz,
    phi,
    phi_inv,
    reference_solutions,
    riesz_coefficients,
)

__all__ = [
    "DominanceViolated",
    "ParseError",
    "WbprError",
    "conclude_uniqueness",
    "default_alpha",
    "display_alpha",
    "enumerate_solutions",
    "eval_riesz",
    "evaluate",
    "factorize",
    "lemma_conditions",
    "phi",
    "phi_inv",
    "reference_solutions",
    "riesz_coefficients",
    "solve",
    "verify",
    "verify_pauli_pair",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def factorize(coeffs, strip=False):
    """Spec for the polynomial sum c_k w^k (ascending coefficients)."""
    return json.loads(_core.factorize([complex(c) for c in coeffs], strip))


def evaluate(spec, points):
    return _core.evaluate(_text(spec), [complex(p) for p in points])


def solve(spec, request):
    """Apply a request such as {"flip": [0], "sigma_plus": [...], "outer": {...}}."""
    return json.loads(_core.solve(_text(spec), _text(request)))


def verify(f, g, grid=None, tol=1e-6):
    return json.loads(_core.verify(_text(f), _text(g), grid, tol))


def lemma_conditions(f, g):
    return json.loads(_core.lemma_conditions(_text(f), _text(g)))


def enumerate_solutions(spec, sigma_menu=(), outer_menu=(), flip_cap=1 << 20, max_solutions=1 << 16,
                        seed=0, dedup=True, grid=None, tol=1e-6):
    return json.loads(_core.enumerate(_text(spec), json.dumps(list(sigma_menu)), json.dumps(list(outer_menu)),
                                      flip_cap, max_solutions, seed, dedup, grid, tol))


def verify_pauli_pair(alphas, signs_a, signs_b, xgrid="-2:2:64", xigrid="-130:130:521"):
    return json.loads(_core.verify_pauli_pair(list(alphas), list(signs_a), list(signs_b), xgrid, xigrid))


def conclude_uniqueness(f, g, theta=1.0, a=0.0, half_length=1.0, samples=129):
    r = _core.conclude_uniqueness(_text(f), _text(g), theta, a, half_length, samples)
    r["report"] = json.loads(r["report"])
    return r
