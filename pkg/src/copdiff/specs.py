"""JSON copula specs: a ``family`` discriminator plus family fields.

    {"family": "M"} | {"family": "W"} | {"family": "Pi"}
    {"family": "evc", "measure": {"atoms": [[t, w], ...],
                                  "density": {"breaks": [...], "values": [...]},
                                  "singular_weight": s}}
    {"family": "gumbel", "theta": 2.0}
    {"family": "shuffle", "N": 3, "sigma": [2, 3, 1]}
    {"family": "checkerboard", "N": 2, "T": [[...], [...]], "base": <spec>}
    {"family": "rotation", "terms": 6}          (optional "offsets": [...])
    {"family": "mix", "parts": [[w, <spec>], ...]}
"""

from __future__ import annotations

import json
from pathlib import Path

from .constructions import CheckerboardCopula, MixtureCopula, RotationCopula, ShuffleCopula
from .core import M, Pi, W, Copula
from .evc import ExtremeValueCopula, evc_from_measure
from .pickands import GumbelPickands, PickandsMeasure

BUILTINS = {"M": M, "W": W, "Pi": Pi}


class SpecError(ValueError):
    """A spec document is malformed or describes an invalid object."""

    def __init__(self, message: str, detail: dict | None = None):
        super().__init__(message)
        self.detail = detail or {}


def _require(spec: dict, *keys):
    missing = [k for k in keys if k not in spec]
    if missing:
        raise SpecError(f"{spec.get('family')!r} spec is missing {missing}")


def parse_measure(spec: dict) -> PickandsMeasure:
    if not isinstance(spec, dict):
        raise SpecError("measure spec must be a JSON object")
    if spec.get("family") == "evc":
        spec = spec.get("measure", {})
    try:
        return PickandsMeasure.from_spec(spec)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad measure spec: {exc}") from exc


def parse_copula(spec) -> Copula:
    if isinstance(spec, str):
        if spec in BUILTINS:
            return BUILTINS[spec]
        raise SpecError(f"unknown built-in copula {spec!r}")
    if not isinstance(spec, dict) or "family" not in spec:
        raise SpecError("copula spec must be an object with a 'family' field")
    family = spec["family"]
    try:
        if family in BUILTINS:
            return BUILTINS[family]
        if family == "evc":
            _require(spec, "measure")
            return evc_from_measure(parse_measure(spec["measure"]))
        if family == "gumbel":
            _require(spec, "theta")
            return ExtremeValueCopula(GumbelPickands(spec["theta"]))
        if family == "shuffle":
            _require(spec, "N", "sigma")
            return ShuffleCopula(spec["N"], spec["sigma"])
        if family == "checkerboard":
            _require(spec, "T")
            cb = CheckerboardCopula(spec["T"], parse_copula(spec.get("base", "Pi")))
            if "N" in spec and spec["N"] != cb.N:
                raise SpecError(f"N={spec['N']} does not match T of size {cb.N}")
            return cb
        if family == "rotation":
            _require(spec, "terms")
            return RotationCopula(spec["terms"], spec.get("offsets"))
        if family == "mix":
            _require(spec, "parts")
            return MixtureCopula([(w, parse_copula(part)) for w, part in spec["parts"]])
    except SpecError:
        raise
    except (TypeError, ValueError) as exc:
        detail = getattr(exc, "report", None)
        raise SpecError(f"invalid {family} spec: {exc}",
                        detail.to_dict() if detail is not None else None) from exc
    raise SpecError(f"unknown copula family {family!r}")


def load_json(source):
    """Read a JSON document from a path; built-in names pass through."""
    if isinstance(source, str) and source in BUILTINS:
        return source
    path = Path(source)
    try:
        return json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise SpecError(f"spec file not found: {source}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec file is not valid JSON: {exc}") from exc


def load_copula(source) -> Copula:
    return parse_copula(load_json(source))


def dump_copula(copula: Copula) -> dict:
    return copula.to_spec()
