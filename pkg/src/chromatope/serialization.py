"""JSON file formats for polytopes, characteristic matrices, and covers.

Serialization is canonical (sorted keys, fixed separators) so identical
objects produce byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .cells import CellComplex
from .characteristic import CharacteristicMatrix
from .covers import CoverInstance
from .polytopes import CombinatorialPolytope, GeometricRealization


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def polytope_to_dict(P: CombinatorialPolytope) -> dict:
    out: dict[str, Any] = {
        "dim": P.dim,
        "facets": list(P.facet_names),
        "vertex_facets": [sorted(fs) for fs in P.vertex_facets],
        "name": P.name,
    }
    if P.geometry is not None:
        geo = P.geometry
        out["coords"] = [[float(x) for x in row] for row in geo.coords]
        out["halfspaces"] = [
            {"normal": [float(x) for x in nrm], "offset": float(off)}
            for nrm, off in zip(geo.normals, geo.offsets)
        ]
    return out


def polytope_from_dict(data: dict) -> CombinatorialPolytope:
    geometry = None
    if "coords" in data and "halfspaces" in data:
        geometry = GeometricRealization(
            coords=np.array(data["coords"], dtype=float),
            normals=np.array([h["normal"] for h in data["halfspaces"]], dtype=float),
            offsets=np.array([h["offset"] for h in data["halfspaces"]], dtype=float),
        )
    return CombinatorialPolytope(
        dim=int(data["dim"]),
        facet_names=tuple(str(f) for f in data["facets"]),
        vertex_facets=tuple(frozenset(map(int, fs)) for fs in data["vertex_facets"]),
        name=str(data.get("name", "")),
        geometry=geometry,
    )


def matrix_to_dict(lam: CharacteristicMatrix) -> dict:
    return {
        "n": lam.n,
        "m": lam.m,
        "columns": [list(lam.column(j)) for j in range(lam.m)],
    }


def matrix_from_dict(data: dict) -> CharacteristicMatrix:
    n, m = int(data["n"]), int(data["m"])
    cols = data["columns"]
    if len(cols) != m or any(len(c) != n for c in cols):
        raise ValueError(f"columns must be {m} vectors of length {n}")
    rows = tuple(tuple(int(cols[j][i]) for j in range(m)) for i in range(n))
    return CharacteristicMatrix(rows)


def resolve_polytope(spec) -> CombinatorialPolytope:
    """Builder descriptor string, inline dict, or path to a polytope file."""
    from .builders import build

    if isinstance(spec, dict):
        return polytope_from_dict(spec)
    text = str(spec)
    if text.endswith(".json"):
        with open(text) as fh:
            return polytope_from_dict(json.load(fh))
    return build(text)


def cover_to_dict(cover: CoverInstance, polytope_spec=None) -> dict:
    spec = polytope_spec if polytope_spec is not None else polytope_to_dict(cover.complex.polytope)
    return {
        "polytope": spec,
        "grid": cover.complex.resolution,
        "sets": [
            {"label": label, "cells": list(cells)} for label, cells in cover.sets
        ],
    }


def cover_from_dict(data: dict, complex: CellComplex | None = None) -> CoverInstance:
    if complex is None:
        P = resolve_polytope(data["polytope"])
        complex = CellComplex(P, int(data["grid"]))
    sets = {entry["label"]: entry["cells"] for entry in data["sets"]}
    return CoverInstance.from_dict(complex, sets)
