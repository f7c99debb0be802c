"""Model documents: JSON with a ``{"format": 1, "kind": ...}`` envelope.

Payloads mirror the library types field for field. Matrices are arrays of
rows whose entries are integers or decimal strings; polynomials are
ascending coefficient arrays. Documents are validated against a JSON schema
before they are turned into objects, and unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .covers import CellularSelfMap, CombinatorialManifold
from .exact_sequence import Arrow, ExactSequenceSpec, SequenceTerm
from .homology import ChainComplexPair
from .lefschetz import InducedMapFamily
from .matrix import Matrix
from .structure import Ambient, BasicSetSpec, StructureModel

FORMAT = 1
KINDS = ("chain_pair", "toral_map", "induced_family", "structure_model", "cover_input", "exact_sequence")


class ModelFileError(ValueError):
    """Unreadable, malformed or schema-violating model document."""


_INT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^[+-]?\d+$"}]}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _INT}}
_VERTEX = {"oneOf": [{"type": "integer"}, {"type": "string", "minLength": 1}]}
_RANK = {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "null"}]}


def _envelope(kind: str, props: dict[str, Any], required: list[str]) -> dict[str, Any]:
    return {
        "type": "object",
        "additionalProperties": False,
        "required": ["format", "kind", *required],
        "properties": {"format": {"const": FORMAT}, "kind": {"const": kind}, "name": {"type": "string"}, **props},
    }


SCHEMAS: dict[str, dict[str, Any]] = {
    "chain_pair": _envelope("chain_pair", {
        "cells": {"type": "array", "minItems": 1, "items": {"type": "array", "items": {"type": "string"}}},
        "boundaries": {"type": "array", "items": _MATRIX},
        "subcomplex": {"type": "array", "items": {"type": "string"}},
    }, ["cells", "boundaries"]),
    "toral_map": _envelope("toral_map", {"matrix": _MATRIX}, ["matrix"]),
    "induced_family": _envelope("induced_family", {
        "matrices": {"type": "array", "minItems": 1, "items": _MATRIX},
    }, ["matrices"]),
    "structure_model": _envelope("structure_model", {
        "ambient": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "orientable": {"type": "boolean"},
                "closed": {"type": "boolean"},
                "dimension": {"type": "integer"},
                "name": {"type": "string"},
            },
        },
        "basic_sets": {"type": "array", "minItems": 1, "items": {
            "type": "object", "additionalProperties": False,
            "required": ["id", "kind", "dim_unstable"],
            "properties": {
                "id": {"type": "string", "minLength": 1},
                "kind": {"type": "string"},
                "dim_unstable": {"type": "integer", "minimum": 0, "maximum": 3},
                "orientable": {"type": "boolean"},
                "trapping": {"oneOf": [{"type": "string"}, {"type": "null"}]},
                "spectra": {"type": "object", "additionalProperties": False,
                            "patternProperties": {"^[0-3]$": {"type": "array", "minItems": 1, "items": _INT}}},
            },
        }},
        "relations": {"type": "array", "items": {
            "type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "string"}}},
    }, ["basic_sets"]),
    "cover_input": _envelope("cover_input", {
        "top_simplices": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _VERTEX}},
        "map": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": _VERTEX}},
    }, ["top_simplices"]),
    "exact_sequence": _envelope("exact_sequence", {
        "terms": {"type": "array", "items": {
            "type": "object", "additionalProperties": False, "required": ["label"],
            "properties": {"label": {"type": "string"}, "rank": _RANK}}},
        "arrows": {"type": "array", "items": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "label": {"type": "string"},
                "constraint": {"oneOf": [
                    {"type": "integer", "minimum": 0}, {"enum": ["epi", "mono", "zero", "iso"]}, {"type": "null"}]},
            }}},
    }, ["terms", "arrows"]),
}


@dataclass(frozen=True)
class CoverInput:
    manifold: CombinatorialManifold
    vertex_map: tuple[tuple[Any, Any], ...] | None = None

    def self_map(self) -> CellularSelfMap | None:
        if self.vertex_map is None:
            return None
        return CellularSelfMap(self.manifold, dict(self.vertex_map))


@dataclass(frozen=True)
class ToralMap:
    matrix: Matrix
    name: str = ""


def _int(x: int | str) -> int:
    return int(x)


def _matrix(data: list[list[Any]], rows: int | None = None, cols: int | None = None) -> Matrix:
    if rows is None:
        rows = len(data)
    if cols is None:
        cols = len(data[0]) if data else rows
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ModelFileError(f"matrix does not have shape {rows}x{cols}")
    return Matrix(rows, cols, tuple(tuple(_int(x) for x in r) for r in data))


def _square(data: list[list[Any]]) -> Matrix:
    return _matrix(data, len(data), len(data))


def _mat_out(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in m.entries]


def validate_document(doc: Any) -> str:
    if not isinstance(doc, dict):
        raise ModelFileError("model document must be a JSON object")
    kind = doc.get("kind")
    if kind not in SCHEMAS:
        raise ModelFileError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ModelFileError(f"schema violation at {where}: {exc.message}") from None
    return kind


def parse_document(doc: Any) -> tuple[str, Any]:
    """Validate and convert a decoded JSON document to (kind, object)."""
    kind = validate_document(doc)
    name = doc.get("name", "")
    try:
        if kind == "chain_pair":
            cells = [list(c) for c in doc["cells"]]
            raw = doc["boundaries"]
            if len(raw) != len(cells) - 1:
                raise ModelFileError(f"{len(cells)} cell degrees need {len(cells) - 1} boundary matrices (d_1 upward)")
            bds = [Matrix.zeros(0, len(cells[0]))]
            for k, m in enumerate(raw, start=1):
                bds.append(_matrix(m, len(cells[k - 1]), len(cells[k])))
            return kind, ChainComplexPair(tuple(tuple(c) for c in cells), tuple(bds),
                                          frozenset(doc.get("subcomplex", [])), name)
        if kind == "toral_map":
            return kind, ToralMap(_square(doc["matrix"]), name)
        if kind == "induced_family":
            return kind, InducedMapFamily(tuple(_square(m) for m in doc["matrices"]), name)
        if kind == "structure_model":
            amb = Ambient(**doc.get("ambient", {}))
            sets = tuple(
                BasicSetSpec(
                    id=b["id"], kind=b["kind"], dim_unstable=b["dim_unstable"],
                    orientable=b.get("orientable", True), trapping=b.get("trapping"),
                    spectra={int(k): tuple(_int(c) for c in v) for k, v in b.get("spectra", {}).items()})
                for b in doc["basic_sets"])
            rels = tuple((a, b) for a, b in doc.get("relations", []))
            return kind, StructureModel(sets, rels, amb, name)
        if kind == "cover_input":
            m = CombinatorialManifold(tuple(tuple(s) for s in doc["top_simplices"]), name)
            vmap = doc.get("map")
            return kind, CoverInput(m, tuple((a, b) for a, b in vmap) if vmap is not None else None)
        if kind == "exact_sequence":
            terms = tuple(SequenceTerm(t["label"], t.get("rank")) for t in doc["terms"])
            arrows = tuple(Arrow(a.get("label", ""), a.get("constraint")) for a in doc["arrows"])
            return kind, ExactSequenceSpec(terms, arrows, name)
    except ModelFileError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise ModelFileError(f"invalid {kind} model: {exc}") from None
    raise AssertionError(kind)  # pragma: no cover


def to_document(kind: str, obj: Any) -> dict[str, Any]:
    """Inverse of :func:`parse_document`."""
    doc: dict[str, Any] = {"format": FORMAT, "kind": kind}
    name = getattr(obj, "name", "") if kind != "cover_input" else obj.manifold.name
    if name:
        doc["name"] = name
    if kind == "chain_pair":
        doc["cells"] = [list(c) for c in obj.cells]
        doc["boundaries"] = [_mat_out(obj.boundaries[k]) for k in range(1, len(obj.cells))]
        if obj.subcomplex:
            # keep cell order for a stable serialization
            doc["subcomplex"] = [c for cs in obj.cells for c in cs if c in obj.subcomplex]
    elif kind == "toral_map":
        doc["matrix"] = _mat_out(obj.matrix)
    elif kind == "induced_family":
        doc["matrices"] = [_mat_out(m) for m in obj.matrices]
    elif kind == "structure_model":
        a = obj.ambient
        doc["ambient"] = {"orientable": a.orientable, "closed": a.closed, "dimension": a.dimension}
        if a.name:
            doc["ambient"]["name"] = a.name
        sets = []
        for b in obj.basic_sets:
            d: dict[str, Any] = {"id": b.id, "kind": b.kind, "dim_unstable": b.dim_unstable,
                                 "orientable": b.orientable, "trapping": b.trapping}
            if b.spectra:
                d["spectra"] = {str(k): [str(c) for c in v] for k, v in sorted(b.spectra.items())}
            sets.append(d)
        doc["basic_sets"] = sets
        doc["relations"] = [list(r) for r in obj.relations]
    elif kind == "cover_input":
        doc["top_simplices"] = [list(s) for s in obj.manifold.top_simplices]
        if obj.vertex_map is not None:
            doc["map"] = [list(p) for p in obj.vertex_map]
    elif kind == "exact_sequence":
        doc["terms"] = [{"label": t.label, "rank": t.rank} for t in obj.terms]
        doc["arrows"] = [{"label": a.label, "constraint": a.constraint} for a in obj.arrows]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return doc


def dumps(kind: str, obj: Any) -> str:
    return json.dumps(to_document(kind, obj), indent=2) + "\n"


def loads(text: str) -> tuple[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"not valid JSON: {exc}") from None
    return parse_document(doc)


def load_model(path: str | Path) -> tuple[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc.strerror or exc}") from None
    return loads(text)


def save_model(path: str | Path, kind: str, obj: Any) -> None:
    Path(path).write_text(dumps(kind, obj), encoding="utf-8")


def expect_kind(kind: str, obj: Any, wanted: str | tuple[str, ...]) -> Any:
    wanted_t = (wanted,) if isinstance(wanted, str) else wanted
    if kind not in wanted_t:
        raise ModelFileError(f"expected a model of kind {' or '.join(wanted_t)}, got {kind}")
    return obj

