"""Result records shared by the verification routines and the CLI reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Check:
    """Outcome of one law or theorem check.

    ``passed`` is None when the check was skipped because a precondition
    does not hold; ``witness`` then says which one.
    """

    name: str
    passed: bool | None
    anchor: str = ""
    witness: Any = None
    error: float | None = None
    suite: str = ""
    info: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.passed is False

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "suite": self.suite,
            "status": {True: "pass", False: "fail", None: "skip"}[self.passed],
            "witness": _plain(self.witness),
            "error": self.error,
        }
        if self.info:
            out["info"] = _plain(self.info)
        return out


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    return x


def first_violation(ok: np.ndarray) -> tuple[int, ...] | None:
    """Index of the first False entry of a boolean array, or None."""
    bad = ~np.asarray(ok, dtype=bool)
    if not bad.any():
        return None
    return tuple(int(i) for i in np.argwhere(bad)[0])


def law(name: str, ok: np.ndarray, labels=None, anchor: str = "", suite: str = "") -> Check:
    """Wrap an exhaustive elementwise law into a :class:`Check`.

    ``labels`` is an optional per-axis list of label tuples used to render the
    counterexample.
    """
    bad = first_violation(ok)
    if bad is None:
        return Check(name, True, anchor=anchor, suite=suite)
    if labels is not None:
        bad = tuple(labels[k][i] for k, i in enumerate(bad))
    return Check(name, False, anchor=anchor, witness=list(bad), suite=suite)


def all_passed(checks) -> bool:
    return not any(c.failed for c in checks)
