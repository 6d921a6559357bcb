"""Closed covers on a cell complex and the covering-theorem checkers.

Each checker searches, in a fixed deterministic order, for the configuration
whose existence the corresponding covering statement guarantees under its
hypotheses (multiplicity bounds, contact restrictions).  A returned witness
can always be re-validated against the raw facet-contact data; an absence
under valid hypotheses is *not* a normal outcome, it marks a probable bug or
discretization artifact and is surfaced as such by the callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import sparse

from .cells import CellComplex
from .coloring import Coloring, is_proper
from .polytopes import CombinatorialPolytope, enumerate_faces


class CoverError(Exception):
    pass


class HypothesisViolation(CoverError):
    """The input breaks a precondition of the theorem being checked."""


@dataclass(frozen=True)
class CoverInstance:
    """Labelled closed sets, each the union of the closures of its cells."""

    complex: CellComplex
    sets: tuple[tuple[str, tuple[int, ...]], ...]  # (label, sorted cell ids)

    @classmethod
    def from_dict(cls, complex: CellComplex, sets: dict[str, Sequence[int]],
                  require_cover: bool = True) -> "CoverInstance":
        norm = []
        covered: set[int] = set()
        for label in sorted(sets):
            cells = tuple(sorted(set(int(c) for c in sets[label])))
            if not cells:
                raise CoverError(f"label {label!r} has no cells")
            for c in cells:
                if not 0 <= c < complex.num_cells:
                    raise CoverError(f"label {label!r} references unknown cell {c}")
            covered.update(cells)
            norm.append((label, cells))
        if require_cover and len(covered) != complex.num_cells:
            missing = sorted(set(range(complex.num_cells)) - covered)
            raise CoverError(f"sets do not cover the polytope; missing cells {missing[:5]}")
        return cls(complex, tuple(norm))

    def labels(self) -> list[str]:
        return [label for label, _ in self.sets]

    def cells_of(self, label: str) -> tuple[int, ...]:
        for lab, cells in self.sets:
            if lab == label:
                return cells
        raise CoverError(f"unknown label {label!r}")

    def as_dict(self) -> dict[str, tuple[int, ...]]:
        return {lab: cells for lab, cells in self.sets}


def multiplicity(cover: CoverInstance) -> int:
    """Max over subdivision points of the number of labels whose closure holds it."""
    cx = cover.complex
    if not cover.sets:
        return 0
    mask = np.zeros((cx.num_cells, len(cover.sets)), dtype=np.int8)
    for k, (_, cells) in enumerate(cover.sets):
        mask[list(cells), k] = 1
    touched = cx.point_cells @ sparse.csr_matrix(mask)
    counts = (touched > 0).sum(axis=1)
    return int(counts.max()) if counts.size else 0


def components(cover: CoverInstance, label: str) -> list[tuple[int, ...]]:
    """Connected components of a label under shared-wall adjacency.

    Deterministic: components ordered by smallest cell index, cells sorted.
    """
    cellset = set(cover.cells_of(label))
    return _components_of_cells(cover.complex, cellset)


def _components_of_cells(cx: CellComplex, cellset: set[int]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out: list[tuple[int, ...]] = []
    for start in sorted(cellset):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            c = queue.pop()
            for nb in cx.neighbors[c]:
                if nb in cellset and nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    queue.append(nb)
        out.append(tuple(sorted(comp)))
    return out


def touched_facets(cx: CellComplex, cells: Sequence[int]) -> frozenset[int]:
    out: set[int] = set()
    for c in cells:
        out |= cx.cell_facets[c]
    return frozenset(out)


# -- witnesses -----------------------------------------------------------------


@dataclass(frozen=True)
class SameColorPair:
    label: str
    component: tuple[int, ...]
    facet_pair: tuple[int, int]
    color: int


@dataclass(frozen=True)
class AllColors:
    label: str
    component: tuple[int, ...]
    facets: tuple[int, ...]  # one per color 1..n+1


@dataclass(frozen=True)
class ManyFacets:
    label: str
    component: tuple[int, ...]
    facets: tuple[int, ...]


@dataclass(frozen=True)
class EssentialComponent:
    component: tuple[int, ...]
    color_set: tuple[int, ...]
    faces: tuple[int, ...]  # indices into the checker's face list
    face_dim: int


@dataclass(frozen=True)
class SkeletonWitness:
    component: tuple[int, ...]
    simplex_facet: int
    skeleton_faces: tuple[int, ...]
    outside_faces: tuple[int, ...]
    face_dim: int


@dataclass(frozen=True)
class TwoKFaces:
    label: str
    component: tuple[int, ...]
    face_dim: int
    face_vertex_sets: tuple[tuple[int, ...], tuple[int, ...]]


def revalidate(cx: CellComplex, witness) -> bool:
    """Re-check a witness payload against raw facet contact data."""
    if isinstance(witness, SameColorPair):
        touched = touched_facets(cx, witness.component)
        a, b = witness.facet_pair
        return a != b and a in touched and b in touched
    if isinstance(witness, AllColors):
        touched = touched_facets(cx, witness.component)
        return all(f in touched for f in witness.facets)
    if isinstance(witness, ManyFacets):
        touched = touched_facets(cx, witness.component)
        return (
            len(set(witness.facets)) >= cx.polytope.dim + 1
            and all(f in touched for f in witness.facets)
        )
    return True


# -- checkers -------------------------------------------------------------------


def _require_multiplicity(cover: CoverInstance, bound: int):
    mult = multiplicity(cover)
    if mult > bound:
        raise HypothesisViolation(
            f"covering multiplicity {mult} exceeds the allowed {bound}"
        )


def check_colorful_lebesgue(
    P: CombinatorialPolytope, h: Coloring, cover: CoverInstance
) -> Optional[SameColorPair]:
    """Some component of some set touches two distinct same-colored facets."""
    if not is_proper(P, h):
        raise HypothesisViolation("coloring is not proper")
    _require_multiplicity(cover, P.dim)
    cx = cover.complex
    for label, _ in cover.sets:
        for comp in components(cover, label):
            by_color: dict[int, list[int]] = {}
            for f in sorted(touched_facets(cx, comp)):
                by_color.setdefault(h(f), []).append(f)
            for color in sorted(by_color):
                if len(by_color[color]) >= 2:
                    pair = (by_color[color][0], by_color[color][1])
                    return SameColorPair(label, comp, pair, color)
    return None


def check_colorful_kkm(
    P: CombinatorialPolytope, h: Coloring, cover: CoverInstance
) -> Optional[AllColors]:
    """Some component touches facets of all n+1 colors (special coloring)."""
    from .characteristic import special_characteristic

    special_characteristic(P, h)  # validates the coloring shape (raises otherwise)
    _require_multiplicity(cover, P.dim)
    cx = cover.complex
    want = set(range(1, P.dim + 2))
    for label, _ in cover.sets:
        for comp in components(cover, label):
            chosen: dict[int, int] = {}
            for f in sorted(touched_facets(cx, comp)):
                chosen.setdefault(h(f), f)
            if set(chosen) >= want:
                return AllColors(label, comp, tuple(chosen[c] for c in sorted(want)))
    return None


def check_karasev(P: CombinatorialPolytope, cover: CoverInstance) -> Optional[ManyFacets]:
    """Some component touches at least n+1 distinct facets."""
    if not P.is_simple():
        raise HypothesisViolation("polytope must be simple")
    _require_multiplicity(cover, P.dim)
    cx = cover.complex
    for label, _ in cover.sets:
        for comp in components(cover, label):
            touched = sorted(touched_facets(cx, comp))
            if len(touched) >= P.dim + 1:
                return ManyFacets(label, comp, tuple(touched))
    return None


def _family_cover(cx: CellComplex, family: dict[str, Sequence[int]]) -> CoverInstance:
    return CoverInstance.from_dict(cx, family, require_cover=False)


def check_quantitative_lebesgue(
    P: CombinatorialPolytope,
    h: Coloring,
    cx: CellComplex,
    family: dict[str, Sequence[int]],
    k: int,
    prescribed_vertex: Optional[int] = None,
) -> Optional[EssentialComponent]:
    """A complement component touching >= 2^(n-k) k-faces of one color class.

    The family need not cover; each member may touch at most one facet per
    color class and the multiplicity must be at most k.
    """
    n = P.dim
    if not is_proper(P, h):
        raise HypothesisViolation("coloring is not proper")
    if not 0 <= k <= n - 1:
        raise CoverError(f"face dimension {k} out of range (0..{n - 1})")
    fam = _family_cover(cx, family) if family else None
    if fam is not None:
        _require_multiplicity(fam, k)
        for label, cells in fam.sets:
            per_color: dict[int, set[int]] = {}
            for f in touched_facets(cx, cells):
                per_color.setdefault(h(f), set()).add(f)
            for color, fs in per_color.items():
                if len(fs) > 1:
                    raise HypothesisViolation(
                        f"family member {label!r} touches facets {sorted(fs)} "
                        f"of the same color {color}"
                    )
    used: set[int] = set()
    for _, cells in (fam.sets if fam else ()):
        used.update(cells)
    complement = set(range(cx.num_cells)) - used
    faces = enumerate_faces(P, k)
    contact = cx.cell_face_contact(faces)
    need = 2 ** (n - k)
    for comp in _components_of_cells(cx, complement):
        hit_faces = set()
        for c in comp:
            hit_faces |= contact[c]
        by_class: dict[tuple[int, ...], list[int]] = {}
        for fi in sorted(hit_faces):
            colors = tuple(sorted({h(f) for f in faces[fi].facet_set}))
            by_class.setdefault(colors, []).append(fi)
        for colors in sorted(by_class):
            listed = by_class[colors]
            if len(listed) < need:
                continue
            if prescribed_vertex is not None:
                if not any(prescribed_vertex in faces[fi].vertex_set for fi in listed):
                    continue
            return EssentialComponent(comp, colors, tuple(listed), k)
    return None


def check_quantitative_kkm(
    P: CombinatorialPolytope,
    h: Coloring,
    cx: CellComplex,
    family: dict[str, Sequence[int]],
    k: int,
) -> Optional[SkeletonWitness]:
    """A complement component whose touched k-faces contain a simplex facet's
    k-skeleton plus C(n,k) k-faces outside that facet."""
    from math import comb

    from .characteristic import special_characteristic
    from .ring import simplex_facets

    n = P.dim
    special_characteristic(P, h)
    fam = _family_cover(cx, family) if family else None
    if fam is not None:
        _require_multiplicity(fam, k)
        for label, cells in fam.sets:
            colors = {h(f) for f in touched_facets(cx, cells)}
            if len(colors) >= n + 1:
                raise HypothesisViolation(
                    f"family member {label!r} touches {len(colors)} distinctly "
                    "colored facets"
                )
    used: set[int] = set()
    for _, cells in (fam.sets if fam else ()):
        used.update(cells)
    complement = set(range(cx.num_cells)) - used
    faces = enumerate_faces(P, k)
    contact = cx.cell_face_contact(faces)
    simplices = simplex_facets(P, h)
    for comp in _components_of_cells(cx, complement):
        hit = set()
        for c in comp:
            hit |= contact[c]
        for t in simplices:
            skeleton = [fi for fi, K in enumerate(faces) if t in K.facet_set]
            if len(skeleton) != comb(n, k + 1):
                raise CoverError(
                    f"facet {t} has {len(skeleton)} {k}-faces, expected C({n},{k + 1})"
                )
            if not all(fi in hit for fi in skeleton):
                continue
            outside = [fi for fi in sorted(hit) if t not in faces[fi].facet_set]
            if len(outside) >= comb(n, k):
                return SkeletonWitness(comp, t, tuple(skeleton), tuple(outside), k)
    return None


def check_general_polytope(
    P_general: CombinatorialPolytope,
    cover: CoverInstance,
    k: Optional[int] = None,
) -> Optional[TwoKFaces]:
    """Reduce to the colorful statement on the total truncation.

    The cover's cells (living on P_general's grid) are clipped to the flag
    polytope; two same-colored touched facets of the truncation correspond to
    two faces of P_general of the same dimension.
    """
    from .builders import total_truncation

    cx = cover.complex
    if cx.polytope is not P_general:
        raise CoverError("cover must be built on the general polytope's complex")
    _require_multiplicity(cover, P_general.dim)
    # the reduction depends only on (polytope, grid); build it once per complex
    cached = getattr(cx, "_general_reduction", None)
    if cached is None:
        eps = float(np.min(cx.widths)) / cx.polytope.geometry.scale()
        Q, face_of_facet, colors = total_truncation(P_general, eps=eps)
        h = Coloring(colors, P_general.dim)
        sub, mapping = cx.restricted_to(Q)
        cached = (Q, face_of_facet, h, sub, mapping)
        cx._general_reduction = cached
    Q, face_of_facet, h, sub, mapping = cached
    sets: dict[str, list[int]] = {}
    for label, cells in cover.sets:
        mapped = sorted({mapping[c] for c in cells if c in mapping})
        if mapped:
            sets[label] = mapped
    restricted = CoverInstance.from_dict(sub, sets, require_cover=True)
    witness = check_colorful_lebesgue(Q, h, restricted)
    if witness is None:
        return None
    K1 = face_of_facet[witness.facet_pair[0]]
    K2 = face_of_facet[witness.facet_pair[1]]
    if k is not None and K1.dim != k:
        raise CoverError(f"witness has face dimension {K1.dim}, not the requested {k}")
    return TwoKFaces(
        witness.label,
        witness.component,
        K1.dim,
        (tuple(sorted(K1.vertex_set)), tuple(sorted(K2.vertex_set))),
    )
