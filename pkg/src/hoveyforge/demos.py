"""Built-in demo run specifications.

Three desk-scale algebras of finite representation type:

- ``lambda2``: F2[x]/(x^2), one vertex with a loop. Self-injective; the
  projectives and injectives coincide, and the certified triple is the
  stable module structure (all, add P, all).
- ``a2``: the path algebra of 1 -> 2 over F2. Hereditary; its default
  pair selection fails the core-agreement condition, demonstrating
  rejection with counterexamples.
- ``n3``: F2[x]/(x^3); like lambda2 but with three indecomposables.

Each spec pairs (all, inj) as the cofibration pair with (proj, all) as the
fibration pair; over the self-injective demos these resolve to the same
class add(P) on both sides.
"""

from __future__ import annotations

import copy

_DEFAULT_PAIRS = {
    "cofibration_pair": {"left": "all", "right": "inj"},
    "fibration_pair": {"left": "proj", "right": "all"},
}

_DEMOS = {
    "lambda2": {
        "algebra": {
            "prime": 2,
            "vertices": ["v"],
            "arrows": [{"name": "x", "from": "v", "to": "v"}],
            "relations": [[{"coeff": 1, "path": ["x", "x"]}]],
            "bounds": {"max_dim": 12, "max_iter": 64, "max_witness_dim": None},
        },
        "pairs": copy.deepcopy(_DEFAULT_PAIRS),
        "command": "build-hovey",
    },
    "a2": {
        "algebra": {
            "prime": 2,
            "vertices": ["1", "2"],
            "arrows": [{"name": "a", "from": "1", "to": "2"}],
            "relations": [],
            "bounds": {"max_dim": 12, "max_iter": 64, "max_witness_dim": None},
        },
        "pairs": copy.deepcopy(_DEFAULT_PAIRS),
        "command": "build-hovey",
    },
    "n3": {
        "algebra": {
            "prime": 2,
            "vertices": ["v"],
            "arrows": [{"name": "x", "from": "v", "to": "v"}],
            "relations": [[{"coeff": 1, "path": ["x", "x", "x"]}]],
            "bounds": {"max_dim": 12, "max_iter": 64, "max_witness_dim": None},
        },
        "pairs": copy.deepcopy(_DEFAULT_PAIRS),
        "command": "build-hovey",
    },
}

DEMO_NAMES = tuple(sorted(_DEMOS))


def demo_spec(name: str) -> dict:
    """A deep copy of the named demo's run specification."""
    if name not in _DEMOS:
        raise KeyError(f"unknown demo '{name}'; choose from {DEMO_NAMES}")
    return copy.deepcopy(_DEMOS[name])
