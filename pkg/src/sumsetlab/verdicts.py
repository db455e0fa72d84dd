"""Structured results for inequality checkers.

Every checker in the package returns a :class:`VerdictReport`: the exact
measured quantities, the bound they are compared against, and flags computed
by exact rational comparison (``tight`` means exact equality, never a
tolerance).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .rationals import format_rational

__all__ = ["VerdictReport", "digest_inputs"]


def _canonical(obj) -> Any:
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    if isinstance(obj, (list, tuple)):
        return [_canonical(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((_canonical(x) for x in obj), key=repr)
    if isinstance(obj, Mapping):
        return {str(k): _canonical(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if hasattr(obj, "cells"):  # GridSet without importing grids
        return {"dim": obj.dim, "q": obj.q, "cells": sorted(obj.cells)}
    if hasattr(obj, "parts"):
        return {"parts": _canonical(obj.parts)}
    raise TypeError(f"cannot canonicalize {type(obj).__name__} for digesting")


def digest_inputs(*objs) -> str:
    """Short stable content hash of checker inputs."""
    blob = json.dumps([_canonical(o) for o in objs], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class VerdictReport:
    kind: str
    inputs_digest: str
    measured: Mapping[str, Fraction]
    bound: Fraction
    holds: bool
    tight: bool
    notes: tuple[str, ...] = ()
    witness: Mapping[str, Any] | None = None

    def to_json_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "inputs_digest": self.inputs_digest,
            "measured": {k: format_rational(v) for k, v in sorted(self.measured.items())},
            "bound": format_rational(self.bound),
            "holds": self.holds,
            "tight": self.tight,
            "notes": list(self.notes),
        }
        if self.witness is not None:
            out["witness"] = _canonical(self.witness)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)
