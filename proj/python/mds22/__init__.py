"""Optimal-repair (n, n-2, 2) MDS array codes over finite fields.

Thin wrappers over the C++ core; structured results are returned as dicts
decoded from the library's JSON.
"""

import json

from ._core import Error, beta_opt, gamma_opt, search_witness
from . import _core

__all__ = [
    "Error",
    "beta_opt",
    "gamma_opt",
    "verdict",
    "construct",
    "verify",
    "cost",
    "search_witness",
    "exhaust",
]


def _text(code):
    return code if isinstance(code, str) else json.dumps(code)


def verdict(q, n):
    """Optimum verdict for (q, n): optima, regime, bounds and routes."""
    return json.loads(_core.verdict_json(q, n))


def construct(q, n, metric):
    """Code attaining the optimum of ``metric`` ("bw" or "io") as a dict."""
    return json.loads(_core.construct_json(q, n, metric))


def verify(code):
    """True when the code (dict or JSON text) is MDS."""
    return _core.verify_json(_text(code))


def cost(code, method="auto"):
    """Exact per-node repair bandwidth and I/O with witness schemes."""
    return json.loads(_core.cost_json(_text(code), method))


def exhaust(name, checkpoint=""):
    """Run one exhaustive search: n5q5, n10q8, n10q9 or n9q8."""
    return json.loads(_core.exhaust_json(name, checkpoint))
