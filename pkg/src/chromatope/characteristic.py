"""Characteristic matrices: canonical, sign-vector, and validation.

An n x m integer matrix is characteristic for a simple polytope when the
columns of the facets at each vertex form a Z^n-basis (determinant +-1).
Canonical matrices send facet j to the standard basis vector of its color.
The sign-vector variant sends the distinguished-color facets (which must be
simplices) to a common +-1 vector instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coloring import Coloring, ColoringError, require_proper
from .intlinalg import det_int
from .polytopes import CombinatorialPolytope, PolytopeError, vertex_figure_is_simplex


class CharacteristicError(Exception):
    pass


@dataclass(frozen=True)
class SignVector:
    """epsilon in {-1,+1}^n defining e_eps = sum eps_i e_i."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if not all(e in (-1, 1) for e in self.entries):
            raise CharacteristicError("sign vector entries must be +-1")

    @classmethod
    def preferred(cls, n: int) -> "SignVector":
        return cls((-1,) * n)


@dataclass(frozen=True)
class CharacteristicMatrix:
    """Rows indexed by basis directions, columns by facets."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.n))

    def with_entry(self, i: int, j: int, value: int) -> "CharacteristicMatrix":
        rows = [list(r) for r in self.entries]
        rows[i][j] = value
        return CharacteristicMatrix(tuple(tuple(r) for r in rows))


def canonical_characteristic(P: CombinatorialPolytope, h: Coloring) -> CharacteristicMatrix:
    """Column j is the basis vector of color h(j); needs a proper n-coloring."""
    n = P.dim
    require_proper(P, h, k=None)
    if h.colors_used() != set(range(1, n + 1)):
        raise ColoringError(f"canonical matrix needs exactly the colors 1..{n}")
    rows = [[0] * P.num_facets for _ in range(n)]
    for j in range(P.num_facets):
        rows[h(j) - 1][j] = 1
    lam = CharacteristicMatrix(tuple(tuple(r) for r in rows))
    ok, bad = validate_characteristic(P, lam)
    if not ok:
        raise CharacteristicError(f"canonical matrix fails at vertices {bad[:4]}")
    return lam


def special_characteristic(
    P: CombinatorialPolytope,
    h: Coloring,
    sign: Optional[SignVector] = None,
) -> CharacteristicMatrix:
    """Sign-vector matrix for a special (n+1)-coloring.

    Facets of color n+1 must all be (n-1)-simplices; their columns become the
    sign vector e_eps, every other facet keeps the basis vector of its color.
    """
    n = P.dim
    require_proper(P, h, k=None)
    if h.colors_used() != set(range(1, n + 2)):
        raise ColoringError(f"special matrix needs exactly the colors 1..{n + 1}")
    eps = SignVector.preferred(n) if sign is None else sign
    if len(eps.entries) != n:
        raise CharacteristicError("sign vector length must equal the dimension")
    for j in h.color_class(n + 1):
        if not vertex_figure_is_simplex(P, j):
            raise CharacteristicError(
                f"facet {j} ({P.facet_names[j]}) has color {n + 1} but is not a simplex"
            )
    rows = [[0] * P.num_facets for _ in range(n)]
    for j in range(P.num_facets):
        if h(j) <= n:
            rows[h(j) - 1][j] = 1
        else:
            for i in range(n):
                rows[i][j] = eps.entries[i]
    lam = CharacteristicMatrix(tuple(tuple(r) for r in rows))
    ok, bad = validate_characteristic(P, lam)
    if not ok:
        raise CharacteristicError(f"sign-vector matrix fails at vertices {bad[:4]}")
    return lam


def validate_characteristic(
    P: CombinatorialPolytope, lam: CharacteristicMatrix
) -> tuple[bool, list[int]]:
    """Exact |det| = 1 check at every vertex; returns (ok, offending vertices)."""
    n = P.dim
    if lam.n != n or lam.m != P.num_facets:
        raise CharacteristicError(
            f"matrix is {lam.n}x{lam.m}, polytope needs {n}x{P.num_facets}"
        )
    bad = []
    for v, fs in enumerate(P.vertex_facets):
        if len(fs) != n:
            raise PolytopeError(f"vertex {v} is not simple; matrix check undefined")
        cols = sorted(fs)
        sub = [[lam.entries[i][j] for j in cols] for i in range(n)]
        if abs(det_int(sub)) != 1:
            bad.append(v)
    return not bad, bad
