"""Exact integer arithmetic in the facet-variable quotient ring.

Elements are integer combinations of monomials in one degree-two variable per
facet.  The quotient kills (a) monomials whose facets have empty common
intersection and (b) the linear forms read off the rows of a characteristic
matrix.  Squares are eliminated by substituting a variable from a row with a
unit entry, so only coloring-induced matrices (entries in {0,+-1}) are
supported for reduction; validation of general matrices lives elsewhere.

Each graded piece is reduced against a Hermite form of the relation lattice
spanned by (linear form) x (face monomial of one degree lower), which yields
canonical representatives, exact zero tests, and integration against the top
class normalized to +1 on a chosen reference vertex.
"""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass, field

from .characteristic import CharacteristicMatrix, validate_characteristic
from .coloring import Coloring
from .intlinalg import hermite_normal_form, reduce_vector
from .polytopes import CombinatorialPolytope

Monomial = tuple[int, ...]  # weakly increasing facet indices, repeats allowed


class RingError(Exception):
    pass


class UnsupportedMatrixError(RingError):
    """No unit pivot available to rewrite some variable."""


class RewriteDepthError(RingError):
    """Square elimination exceeded the substitution budget."""


@dataclass(frozen=True)
class RingElement:
    """Immutable integer combination of monomials."""

    coeffs: tuple[tuple[Monomial, int], ...]

    @classmethod
    def from_dict(cls, d: dict[Monomial, int]) -> "RingElement":
        return cls(tuple(sorted((m, c) for m, c in d.items() if c != 0)))

    @classmethod
    def zero(cls) -> "RingElement":
        return cls(())

    @classmethod
    def one(cls) -> "RingElement":
        return cls((((), 1),))

    @classmethod
    def var(cls, j: int) -> "RingElement":
        return cls((((j,), 1),))

    @classmethod
    def monomial(cls, facets, coeff: int = 1) -> "RingElement":
        return cls.from_dict({tuple(sorted(facets)): coeff})

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RingElement") -> "RingElement":
        d = self.as_dict()
        for m, c in other.coeffs:
            d[m] = d.get(m, 0) + c
        return RingElement.from_dict(d)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-1) * other

    def __neg__(self) -> "RingElement":
        return (-1) * self

    def __rmul__(self, scalar: int) -> "RingElement":
        if not isinstance(scalar, int):
            return NotImplemented
        return RingElement.from_dict({m: scalar * c for m, c in self.coeffs})

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, int):
            return other * self
        d: dict[Monomial, int] = {}
        for m1, c1 in self.coeffs:
            for m2, c2 in other.coeffs:
                m = tuple(sorted(m1 + m2))
                d[m] = d.get(m, 0) + c1 * c2
        return RingElement.from_dict(d)

    def __pow__(self, k: int) -> "RingElement":
        if k < 0:
            raise RingError("negative powers are not defined")
        out = RingElement.one()
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set[int]:
        return {len(m) for m, _ in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def graded_part(self, d: int) -> "RingElement":
        return RingElement(tuple((m, c) for m, c in self.coeffs if len(m) == d))

    def pretty(self, names: dict[int, str] | None = None) -> str:
        if not self.coeffs:
            return "0"
        def varname(j):
            return names[j] if names else f"v{j + 1}"
        parts = []
        for m, c in self.coeffs:
            factors = []
            for j, grp in itertools.groupby(m):
                e = len(list(grp))
                factors.append(varname(j) + (f"^{e}" if e > 1 else ""))
            body = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                term = body
            elif c == -1 and factors:
                term = f"-{body}"
            else:
                term = f"{c}*{body}" if factors else str(c)
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


@dataclass
class GradedBasis:
    """Face-monomial spanning set plus Hermite form of the relation lattice."""

    degree: int
    monomials: list[Monomial]
    index: dict[Monomial, int] = field(repr=False)
    basis_rows: list[list[int]] = field(repr=False)
    pivots: list[int] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.monomials) - len(self.pivots)

    def is_free_rank_one(self) -> bool:
        return self.rank == 1 and all(
            row[col] == 1 for row, col in zip(self.basis_rows, self.pivots)
        )


class CohomologyRing:
    """Quotient ring of a simple polytope with a coloring-induced matrix."""

    def __init__(self, P: CombinatorialPolytope, lam: CharacteristicMatrix):
        ok, bad = validate_characteristic(P, lam)
        if not ok:
            raise RingError(f"matrix is not characteristic; bad vertices {bad[:4]}")
        self.P = P
        self.lam = lam
        self.n = P.dim
        self.m = P.num_facets
        self.vertex_sets = [frozenset(fs) for fs in P.vertex_facets]
        self.depth_cap = 4 * self.n
        self._pivot_rows: dict[int, list[int]] = {
            j: [i for i in range(self.n) if self.lam.entries[i][j] in (1, -1)]
            for j in range(self.m)
        }
        self._subst: dict[tuple[int, int], list[tuple[int, int]]] = {}
        self._face_support: dict[frozenset[int], bool] = {}
        self._bases: dict[int, GradedBasis] = {}
        self.last_rewrite_depth = 0

    # -- rewriting ---------------------------------------------------------

    def _substitution(self, j: int, support: frozenset[int]) -> list[tuple[int, int]]:
        """Solve a unit-pivot row for v_j: list of (coeff, var) with var != j.

        Among the available rows, prefer one whose other variables avoid the
        monomial's support; reintroducing a variable already present would
        recreate a square and the rewriting could cycle.
        """
        rows = self._pivot_rows[j]
        if not rows:
            raise UnsupportedMatrixError(
                f"no unit pivot for facet {j}; only coloring-induced "
                "matrices support ring reduction"
            )

        def score(i: int) -> int:
            return sum(
                1
                for l in support
                if l != j and self.lam.entries[i][l] != 0
            )

        i = min(rows, key=lambda r: (score(r), r))
        key = (j, i)
        cached = self._subst.get(key)
        if cached is None:
            piv = self.lam.entries[i][j]
            cached = [
                (-piv * self.lam.entries[i][l], l)
                for l in range(self.m)
                if l != j and self.lam.entries[i][l] != 0
            ]
            self._subst[key] = cached
        return cached

    def support_is_face(self, support: frozenset[int]) -> bool:
        hit = self._face_support.get(support)
        if hit is None:
            hit = any(support <= vs for vs in self.vertex_sets)
            self._face_support[support] = hit
        return hit

    def _first_square(self, m: Monomial) -> int | None:
        for a, b in zip(m, m[1:]):
            if a == b:
                return a
        return None

    def square_free_form(self, x: RingElement) -> tuple[RingElement, int]:
        """Kill non-face monomials and eliminate squares; returns (element, max depth)."""
        out: dict[Monomial, int] = {}
        work = [(m, c, 0) for m, c in x.coeffs]
        max_depth = 0
        while work:
            m, c, depth = work.pop()
            if c == 0:
                continue
            if not self.support_is_face(frozenset(m)):
                continue
            j = self._first_square(m)
            if j is None:
                out[m] = out.get(m, 0) + c
                continue
            if depth >= self.depth_cap:
                raise RewriteDepthError(
                    f"substitution budget {self.depth_cap} exceeded on monomial {m}"
                )
            subst = self._substitution(j, frozenset(m))
            max_depth = max(max_depth, depth + 1)
            reduced = list(m)
            reduced.remove(j)
            for coef, l in subst:
                work.append((tuple(sorted(reduced + [l])), c * coef, depth + 1))
        self.last_rewrite_depth = max_depth
        return RingElement.from_dict(out), max_depth

    # -- graded structure ----------------------------------------------------

    def face_monomials(self, d: int) -> list[Monomial]:
        if d == 0:
            return [()]
        seen: set[Monomial] = set()
        for vs in self.vertex_sets:
            for sub in itertools.combinations(sorted(vs), d):
                seen.add(sub)
        return sorted(seen)

    def graded_basis(self, d: int) -> GradedBasis:
        cached = self._bases.get(d)
        if cached is not None:
            return cached
        monos = self.face_monomials(d)
        index = {m: i for i, m in enumerate(monos)}
        rows: list[list[int]] = []
        if d >= 1:
            lower = self.face_monomials(d - 1)
            for mu in lower:
                for i in range(self.n):
                    poly: dict[Monomial, int] = {}
                    for j in range(self.m):
                        coef = self.lam.entries[i][j]
                        if coef:
                            mono = tuple(sorted(mu + (j,)))
                            poly[mono] = poly.get(mono, 0) + coef
                    reduced, _ = self.square_free_form(RingElement.from_dict(poly))
                    if reduced.is_zero():
                        continue
                    vec = [0] * len(monos)
                    for mono, c in reduced.coeffs:
                        vec[index[mono]] = c
                    rows.append(vec)
        basis_rows, pivots = hermite_normal_form(rows) if rows else ([], [])
        gb = GradedBasis(d, monos, index, basis_rows, pivots)
        self._bases[d] = gb
        return gb

    def _reduce_graded(self, x: RingElement) -> RingElement:
        out = RingElement.zero()
        for d in sorted(x.degrees()):
            part = x.graded_part(d)
            if d == 0:
                out = out + part
                continue
            gb = self.graded_basis(d)
            vec = [0] * len(gb.monomials)
            for m, c in part.coeffs:
                vec[gb.index[m]] = c
            red = reduce_vector(vec, gb.basis_rows, gb.pivots)
            out = out + RingElement.from_dict(
                {gb.monomials[i]: c for i, c in enumerate(red) if c}
            )
        return out

    # -- public operations ---------------------------------------------------

    def normal_form(self, x: RingElement) -> RingElement:
        squarefree, _ = self.square_free_form(x)
        return self._reduce_graded(squarefree)

    def is_zero(self, x: RingElement) -> bool:
        if not x.is_homogeneous():
            raise RingError("zero test expects a homogeneous element")
        return self.normal_form(x).is_zero()

    def integrate(self, x: RingElement, ref_vertex: int) -> int:
        """Coefficient of x against the top class, +1 on the ref vertex monomial."""
        squarefree, _ = self.square_free_form(x)
        if squarefree.is_zero():
            return 0
        if squarefree.degrees() != {self.n}:
            raise RingError("integration expects a homogeneous top-degree element")
        gb = self.graded_basis(self.n)
        if not gb.is_free_rank_one():
            raise RingError(
                "top graded piece is not free of rank one; invalid matrix/polytope pair"
            )
        pivot_cols = set(gb.pivots)
        free_col = next(i for i in range(len(gb.monomials)) if i not in pivot_cols)

        def top_value(elem: RingElement) -> int:
            vec = [0] * len(gb.monomials)
            for m, c in elem.coeffs:
                vec[gb.index[m]] = c
            red = reduce_vector(vec, gb.basis_rows, gb.pivots)
            assert all(c == 0 for i, c in enumerate(red) if i != free_col)
            return red[free_col]

        ref_mono = tuple(sorted(self.P.vertex_facets[ref_vertex]))
        sign = top_value(RingElement.monomial(ref_mono))
        if abs(sign) != 1:
            raise RingError("reference vertex monomial is not a generator")
        return top_value(squarefree) * sign


# -- distinguished classes and bookkeeping -----------------------------------


def vertex_class(P: CombinatorialPolytope, V: int) -> RingElement:
    """Sum of the facet variables at a vertex."""
    if not 0 <= V < P.num_vertices:
        raise RingError(f"no vertex {V}")
    out = RingElement.zero()
    for j in sorted(P.vertex_facets[V]):
        out = out + RingElement.var(j)
    return out


def simplex_facets(P: CombinatorialPolytope, h: Coloring) -> list[int]:
    """Facets of the distinguished color n+1, in index order (t_1, t_2, ...)."""
    return sorted(h.color_class(P.dim + 1))


def simplicial_class(P: CombinatorialPolytope, h: Coloring) -> RingElement:
    """Sum of the distinguished-color facet variables."""
    out = RingElement.zero()
    for j in simplex_facets(P, h):
        out = out + RingElement.var(j)
    if out.is_zero():
        raise RingError("coloring has no facets of the distinguished color")
    return out


def adjacent_color_facet(P: CombinatorialPolytope, h: Coloring, t_facet: int, color: int) -> int:
    """The unique facet of the given color adjacent to a simplex facet."""
    from .polytopes import facet_neighbors

    hits = sorted(f for f in facet_neighbors(P, t_facet) if h(f) == color)
    if len(hits) != 1:
        raise RingError(
            f"facet {t_facet} has {len(hits)} neighbors of color {color}, expected one"
        )
    return hits[0]


# -- literal expressions -------------------------------------------------------


def variable_names(P: CombinatorialPolytope, h: Coloring | None = None) -> dict[str, int]:
    """v<i> for every facet (1-based) plus t<j> for distinguished-color facets."""
    names = {f"v{j + 1}": j for j in range(P.num_facets)}
    if h is not None and (P.dim + 1) in h.colors_used():
        for idx, j in enumerate(simplex_facets(P, h)):
            names[f"t{idx + 1}"] = j
    return names


def display_names(P: CombinatorialPolytope, h: Coloring | None = None) -> dict[int, str]:
    out = {j: f"v{j + 1}" for j in range(P.num_facets)}
    if h is not None and (P.dim + 1) in h.colors_used():
        for idx, j in enumerate(simplex_facets(P, h)):
            out[j] = f"t{idx + 1}"
    return out


def parse_class_expression(text: str, names: dict[str, int]) -> RingElement:
    """Parse literals like "3*v1*v2 - t1^2" into a RingElement."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise RingError(f"cannot parse ring expression: {exc}") from None

    def ev(node) -> RingElement:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return node.value * RingElement.one()
            raise RingError(f"only integer constants allowed, got {node.value!r}")
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise RingError(f"unknown variable {node.id!r}")
            return RingElement.var(names[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = ev(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Add):
                return ev(node.left) + ev(node.right)
            if isinstance(node.op, ast.Sub):
                return ev(node.left) - ev(node.right)
            if isinstance(node.op, ast.Mult):
                return ev(node.left) * ev(node.right)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise RingError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
        raise RingError(f"unsupported syntax in ring expression: {ast.dump(node)}")

    return ev(tree)
