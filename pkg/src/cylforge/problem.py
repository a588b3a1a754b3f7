"""Problem files: a ring, an optional derivation and task parameters."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError
from .graded import GradedDomain
from .lnd import Derivation, check_derivation

PROBLEM_KEYS = {"ring", "derivation", "params"}


@dataclass
class Problem:
    ring: GradedDomain
    derivation: Derivation | None = None
    params: dict = field(default_factory=dict)

    def require_derivation(self) -> Derivation:
        if self.derivation is None:
            raise InputError("this task needs a derivation")
        return self.derivation


def problem_from_json(data) -> Problem:
    if not isinstance(data, dict):
        raise InputError("a problem must be a JSON object")
    unknown = set(data) - PROBLEM_KEYS
    if unknown:
        raise InputError(f"unknown problem keys: {sorted(unknown)}")
    if "ring" not in data:
        raise InputError("problem is missing 'ring'")
    A = GradedDomain.from_json(data["ring"])
    der = data.get("derivation")
    if der is not None and not isinstance(der, dict):
        raise InputError("'derivation' must map variable names to polynomials")
    D = check_derivation(A, der) if der is not None else None
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise InputError("'params' must be an object")
    return Problem(A, D, params)


def load_json(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_problem(path: str | Path) -> Problem:
    return problem_from_json(load_json(path))
