"""Degreewise construction of the path algebra modulo relations.

The algebra is positively graded by path length.  For every degree n and
pair of vertices (x, y) we enumerate the paths x -> y of length n, span the
two-sided ideal layer generated by the relations, and take the quotient.
The quotient basis is indexed by the non-pivot paths of the ideal layer in
reduced row echelon form, which makes every construction canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Subspace, Vec, vec_is_zero, zero_vec
from .presentation import QuiverPresentation

Path = tuple[str, ...]


class NotFiniteDimensionalError(ValueError):
    """The degreewise components did not vanish within the degree cap."""


@dataclass(frozen=True)
class AlgebraElement:
    """Element of one hom component A(x, y)_n in quotient-basis coordinates."""

    source: str
    target: str
    degree: int
    coords: Vec

    def is_zero(self) -> bool:
        return vec_is_zero(self.coords)


class GradedAlgebra:
    """Finite-dimensional positively graded quiver algebra.

    basis_paths[(x, y, n)] is the ordered list of paths indexing the
    quotient basis of A(x, y)_n.  Degree 0 components are spanned by the
    trivial paths (one per vertex).
    """

    def __init__(self, presentation: QuiverPresentation, degree_cap: int = 64):
        if degree_cap < 2:
            raise ValueError("degree_cap must be >= 2")
        self.presentation = presentation
        self.vertices = presentation.vertices
        self.heights = dict(presentation.heights)
        self._arrows = {a.name: a for a in presentation.arrows}
        # all_paths[(x, y, n)]: paths of length n before taking the quotient
        self._all_paths: dict[tuple[str, str, int], list[Path]] = {}
        # ideal layer inside the path span, same indexing as _all_paths
        self._ideal: dict[tuple[str, str, int], Subspace] = {}
        self.basis_paths: dict[tuple[str, str, int], list[Path]] = {}
        self._build(degree_cap)
        self._mult_cache: dict = {}
        self._op: GradedAlgebra | None = None

    # -- construction ---------------------------------------------------

    def _build(self, degree_cap: int) -> None:
        pres = self.presentation
        for x in self.vertices:
            self._all_paths[(x, x, 0)] = [()]
            self.basis_paths[(x, x, 0)] = [()]
        prev: dict[tuple[str, str], list[Path]] = {
            (x, x): [()] for x in self.vertices
        }
        rels_by_len: dict[int, list] = {}
        for rel in pres.relations:
            rels_by_len.setdefault(len(rel[0][1]), []).append(rel)

        top = None
        for n in range(1, degree_cap + 1):
            layer: dict[tuple[str, str], list[Path]] = {}
            for (x, y), paths in prev.items():
                for p in paths:
                    for a in pres.arrows_from(y):
                        layer.setdefault((x, a.target), []).append(p + (a.name,))
            nonzero = False
            for (x, y), paths in sorted(layer.items()):
                self._all_paths[(x, y, n)] = paths
                ideal_vecs = self._ideal_layer_vectors(x, y, n, paths, rels_by_len)
                sub = Subspace(len(paths), ideal_vecs)
                self._ideal[(x, y, n)] = sub
                pivots = set(sub.pivots)
                basis = [p for i, p in enumerate(paths) if i not in pivots]
                if basis:
                    self.basis_paths[(x, y, n)] = basis
                    nonzero = True
            if not nonzero:
                top = n - 1
                break
            prev = {
                (x, y): self._all_paths[(x, y, n)]
                for (x, y) in layer
                if (x, y, n) in self._all_paths
            }
        if top is None:
            raise NotFiniteDimensionalError(
                f"components persist past degree {degree_cap}"
            )
        self.top_degree = top

    def _ideal_layer_vectors(self, x, y, n, paths, rels_by_len):
        index = {p: i for i, p in enumerate(paths)}
        vecs = []
        for d, rels in rels_by_len.items():
            if d > n:
                continue
            for rel in rels:
                rx, ry = self.presentation.path_endpoints(rel[0][1])
                # all p.r.q with p: x -> rx of length i, q: ry -> y
                for i in range(0, n - d + 1):
                    j = n - d - i
                    lefts = self._paths_raw(x, rx, i)
                    rights = self._paths_raw(ry, y, j)
                    for lp in lefts:
                        for rp in rights:
                            v = [Fraction(0)] * len(paths)
                            for coeff, mid in rel:
                                v[index[lp + mid + rp]] += coeff
                            vecs.append(tuple(v))
        return vecs

    def _paths_raw(self, x: str, y: str, n: int) -> list[Path]:
        return self._all_paths.get((x, y, n), [])

    # -- basic queries ---------------------------------------------------

    def dim(self, x: str, y: str, n: int) -> int:
        return len(self.basis_paths.get((x, y, n), []))

    def basis(self, x: str, y: str, n: int) -> list[AlgebraElement]:
        k = self.dim(x, y, n)
        out = []
        for i in range(k):
            coords = [Fraction(0)] * k
            coords[i] = Fraction(1)
            out.append(AlgebraElement(x, y, n, tuple(coords)))
        return out

    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis_paths.values())

    def hilbert(self) -> dict[int, int]:
        table: dict[int, int] = {}
        for (x, y, n), b in self.basis_paths.items():
            table[n] = table.get(n, 0) + len(b)
        return {n: d for n, d in sorted(table.items()) if d}

    def ht(self, x: str) -> int:
        return self.heights[x]

    def arrow_element(self, name: str) -> AlgebraElement:
        a = self._arrows[name]
        return self._reduce_path_vector(
            a.source, a.target, 1, {(name,): Fraction(1)}
        )

    def unit(self, x: str) -> AlgebraElement:
        return AlgebraElement(x, x, 0, (Fraction(1),))

    # -- quotient arithmetic ----------------------------------------------

    def _reduce_path_vector(self, x, y, n, coeffs: dict[Path, Fraction]) -> AlgebraElement:
        """Image in the quotient basis of a linear combination of paths."""
        paths = self._all_paths.get((x, y, n), [])
        basis = self.basis_paths.get((x, y, n), [])
        if not basis:
            return AlgebraElement(x, y, n, ())
        v = [coeffs.get(p, Fraction(0)) for p in paths]
        if n > 0:
            v = list(self._ideal[(x, y, n)].reduce(tuple(v)))
        index = {p: i for i, p in enumerate(paths)}
        return AlgebraElement(
            x, y, n, tuple(v[index[b]] for b in basis)
        )

    def path_coeffs(self, el: AlgebraElement) -> dict[Path, Fraction]:
        """Canonical path lift of a quotient element (non-pivot paths only)."""
        basis = self.basis_paths.get((el.source, el.target, el.degree), [])
        return {p: c for p, c in zip(basis, el.coords) if c != 0}

    def multiply(self, f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
        """Composite "f then g" for f in A(x,y)_n, g in A(y,z)_m."""
        if f.target != g.source:
            raise ValueError("non-composable elements")
        x, z = f.source, g.target
        n = f.degree + g.degree
        coeffs: dict[Path, Fraction] = {}
        for pf, cf in self.path_coeffs(f).items():
            for pg, cg in self.path_coeffs(g).items():
                p = pf + pg
                coeffs[p] = coeffs.get(p, Fraction(0)) + cf * cg
        return self._reduce_path_vector(x, z, n, coeffs)

    def species(self) -> dict[tuple[str, str, int], int]:
        """Degreewise dimensions of A_+ / A_+^2."""
        out: dict[tuple[str, str, int], int] = {}
        for (x, y, n), basis in self.basis_paths.items():
            if n == 0 or not basis:
                continue
            k = len(basis)
            products: list[Vec] = []
            for i in range(1, n):
                for m in self.vertices:
                    for f in self.basis(x, m, i):
                        for g in self.basis(m, y, n - i):
                            prod = self.multiply(f, g)
                            if not prod.is_zero():
                                products.append(prod.coords)
            quotient_dim = k - Subspace(k, products).dim
            if quotient_dim:
                out[(x, y, n)] = quotient_dim
        return out

    def species_table(self) -> dict[tuple[str, str], int]:
        """Total species dimensions (summed over degrees)."""
        table: dict[tuple[str, str], int] = {}
        for (x, y, n), d in self.species().items():
            table[(x, y)] = table.get((x, y), 0) + d
        return table

    def generated_in_degree_one(self) -> bool:
        return all(n == 1 for (_, _, n) in self.species())

    def opposite(self) -> "GradedAlgebra":
        if self._op is None:
            op = GradedAlgebra(
                self.presentation.opposite(),
                degree_cap=max(2, self.top_degree + 1),
            )
            op._op = self
            self._op = op
        return self._op


def build_algebra(pres: QuiverPresentation, degree_cap: int = 64) -> GradedAlgebra:
    return GradedAlgebra(pres, degree_cap=degree_cap)
