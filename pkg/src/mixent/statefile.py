"""JSON state-description documents.

Every document is an object with a ``kind`` key. Complex numbers are written
as ``[re, im]``. Kinds::

    {"kind": "pure", "amplitudes": [[re, im], x4]}          # a, b, c, d
    {"kind": "ensemble", "members": [{"weight": p, "amplitudes": [...]}, ...]}
    {"kind": "rank2", "subspace": "parallel" | "antiparallel",
     "members": [{"p": p, "c1": c1, "c2": c2, "chi": chi}, ...]}
    {"kind": "rank4",
     "parallel": [{"p": p, "c1": c1, "c2": c2, "chi": chi}, ...],
     "antiparallel": [{"q": q, "d1": d1, "d2": d2, "phi": phi}, ...]}
    {"kind": "dense", "matrix": [[[re, im], x4], x4]}

Amplitude and matrix order is ``|uu>, |ud>, |du>, |dd>``. Structural
problems raise ``StateFileError``; well-formed documents describing invalid
states raise the relevant ``MixentError`` from ``states``.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .states import (
    DensityMatrix,
    Ensemble,
    PureState,
    Rank2Member,
    StructuredRank2,
    StructuredRank4,
    Subspace,
)

KINDS = ("pure", "ensemble", "rank2", "rank4", "dense")

_MEMBER_KEYS = {
    Subspace.PARALLEL: ("p", "c1", "c2", "chi"),
    Subspace.ANTIPARALLEL: ("q", "d1", "d2", "phi"),
}


class StateFileError(Exception):
    """Document is not valid JSON or does not follow the schema."""


def _real(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise StateFileError(f"{where}: expected a finite number, got {x!r}")
    return float(x)


def _complex(x, where: str) -> complex:
    if not isinstance(x, list) or len(x) != 2:
        raise StateFileError(f"{where}: expected [re, im], got {x!r}")
    return complex(_real(x[0], where), _real(x[1], where))


def _field(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise StateFileError(f"{where}: expected an object")
    if key not in doc:
        raise StateFileError(f"{where}: missing key {key!r}")
    return doc[key]


def _list(x, where: str, n: int | None = None) -> list:
    if not isinstance(x, list) or (n is not None and len(x) != n):
        size = f" of length {n}" if n is not None else ""
        raise StateFileError(f"{where}: expected a list{size}")
    return x


def _amplitudes(doc, where: str) -> PureState:
    amps = _list(_field(doc, "amplitudes", where), f"{where}.amplitudes", 4)
    return PureState(*(_complex(a, f"{where}.amplitudes[{i}]") for i, a in enumerate(amps)))


def _members(items, subspace: Subspace, where: str) -> StructuredRank2:
    keys = _MEMBER_KEYS[subspace]
    out = []
    for i, item in enumerate(_list(items, where)):
        loc = f"{where}[{i}]"
        out.append(Rank2Member(*(_real(_field(item, k, loc), f"{loc}.{k}") for k in keys)))
    return StructuredRank2(subspace, tuple(out))


def from_document(doc):
    """Build a ``states`` value from a decoded document."""
    kind = _field(doc, "kind", "document")
    if kind == "pure":
        return _amplitudes(doc, "document")
    if kind == "ensemble":
        members = []
        for i, m in enumerate(_list(_field(doc, "members", "document"), "members")):
            loc = f"members[{i}]"
            members.append((_real(_field(m, "weight", loc), f"{loc}.weight"), _amplitudes(m, loc)))
        return Ensemble(tuple(members))
    if kind == "rank2":
        sub = _field(doc, "subspace", "document")
        if sub not in ("parallel", "antiparallel"):
            raise StateFileError(f"subspace must be 'parallel' or 'antiparallel', got {sub!r}")
        subspace = Subspace(sub)
        r = _members(_field(doc, "members", "document"), subspace, "members")
        r.require_standalone()
        return r
    if kind == "rank4":
        par = _members(_field(doc, "parallel", "document"), Subspace.PARALLEL, "parallel")
        anti = _members(_field(doc, "antiparallel", "document"), Subspace.ANTIPARALLEL, "antiparallel")
        return StructuredRank4(par, anti)
    if kind == "dense":
        rows = _list(_field(doc, "matrix", "document"), "matrix", 4)
        m = np.empty((4, 4), dtype=complex)
        for i, row in enumerate(rows):
            for j, x in enumerate(_list(row, f"matrix[{i}]", 4)):
                m[i, j] = _complex(x, f"matrix[{i}][{j}]")
        return DensityMatrix(m)
    raise StateFileError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


def load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _member_docs(part: StructuredRank2) -> list[dict]:
    keys = _MEMBER_KEYS[part.subspace]
    return [dict(zip(keys, (m.weight, m.c1, m.c2, m.phase))) for m in part.members]


def to_document(value) -> dict:
    if isinstance(value, PureState):
        return {"kind": "pure", "amplitudes": [_pair(z) for z in value.vector]}
    if isinstance(value, Ensemble):
        return {
            "kind": "ensemble",
            "members": [{"weight": p, "amplitudes": [_pair(z) for z in s.vector]} for p, s in value.members],
        }
    if isinstance(value, StructuredRank2):
        return {"kind": "rank2", "subspace": value.subspace.value, "members": _member_docs(value)}
    if isinstance(value, StructuredRank4):
        return {
            "kind": "rank4",
            "parallel": _member_docs(value.parallel),
            "antiparallel": _member_docs(value.antiparallel),
        }
    if isinstance(value, DensityMatrix):
        return {"kind": "dense", "matrix": [[_pair(z) for z in row] for row in value.mat]}
    raise TypeError(f"cannot serialise {type(value).__name__}")


def dumps(value) -> str:
    return json.dumps(to_document(value), indent=2)
