"""Graded modules over a graded quiver algebra.

A module is a table of componentwise vector spaces M(x)_n together with an
action matrix per arrow and degree.  All morphisms are homogeneous of
degree 0; grade shifts are materialized on the modules themselves
(shift(M, j) has shift(M, j)(x)_n = M(x)_{n+j}).  Maps between components
are matrices acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .linalg import Matrix, Subspace, Vec
from .algebra import AlgebraElement, GradedAlgebra


class ModuleError(ValueError):
    pass


class GradedModule:
    """Degreewise vector-space data with arrow-action matrices."""

    def __init__(
        self,
        algebra: GradedAlgebra,
        components: dict[tuple[str, int], int],
        actions: dict[tuple[str, int], Matrix],
    ):
        self.algebra = algebra
        self.components = {k: d for k, d in components.items() if d > 0}
        self.actions = {}
        arrows = {a.name: a for a in algebra.presentation.arrows}
        for (name, n), mat in actions.items():
            a = arrows[name]
            sdim = self.components.get((a.source, n), 0)
            tdim = self.components.get((a.target, n + 1), 0)
            if sdim == 0 or tdim == 0:
                if not (mat.rows == 0 or mat.cols == 0 or mat.is_zero()):
                    raise ModuleError("action into a zero component must vanish")
                continue
            if mat.rows != tdim or mat.cols != sdim:
                raise ModuleError(
                    f"action shape mismatch for arrow {name} at degree {n}"
                )
            self.actions[(name, n)] = mat

    # -- queries -----------------------------------------------------------

    def dim(self, v: str, n: int) -> int:
        return self.components.get((v, n), 0)

    def total_dim(self) -> int:
        return sum(self.components.values())

    def is_zero(self) -> bool:
        return not self.components

    def degrees(self) -> list[int]:
        return sorted({n for (_, n) in self.components})

    def support(self) -> list[tuple[str, int]]:
        return sorted(self.components)

    def dims_table(self) -> dict[tuple[str, int], int]:
        return dict(self.components)

    def action(self, arrow: str, n: int) -> Matrix:
        a = self.algebra.presentation.arrow(arrow)
        if (arrow, n) in self.actions:
            return self.actions[(arrow, n)]
        return Matrix.zero(self.dim(a.target, n + 1), self.dim(a.source, n))

    def path_action(self, path: tuple[str, ...], n: int) -> Matrix:
        """Composite action of a path, acting from degree n upward."""
        arrows = self.algebra.presentation
        if not path:
            raise ValueError("empty path has no unique source")
        src = arrows.arrow(path[0]).source
        mat = Matrix.identity(self.dim(src, n))
        deg = n
        for name in path:
            mat = self.action(name, deg) * mat
            deg += 1
        return mat

    def element_action(self, el: AlgebraElement, n: int) -> Matrix:
        """Action matrix of an algebra element from (source, n) to (target, n+deg)."""
        out = Matrix.zero(self.dim(el.target, n + el.degree), self.dim(el.source, n))
        if el.degree == 0:
            one = self.algebra.path_coeffs(el).get((), Fraction(0))
            return Matrix.identity(self.dim(el.source, n)).scale(one)
        for path, coeff in self.algebra.path_coeffs(el).items():
            out = out + self.path_action(path, n).scale(coeff)
        return out

    def check(self) -> None:
        """Assert that every relation of the algebra acts as zero."""
        for rel in self.algebra.presentation.relations:
            src, tgt = self.algebra.presentation.path_endpoints(rel[0][1])
            d = len(rel[0][1])
            for (v, n), dim in self.components.items():
                if v != src:
                    continue
                if self.dim(tgt, n + d) == 0:
                    continue
                total = Matrix.zero(self.dim(tgt, n + d), dim)
                for coeff, path in rel:
                    total = total + self.path_action(path, n).scale(coeff)
                if not total.is_zero():
                    raise ModuleError(f"relation does not annihilate at ({v}, {n})")

    def __repr__(self):
        dims = {f"({v},{n})": d for (v, n), d in sorted(self.components.items())}
        return f"GradedModule({dims})"


@dataclass
class GradedMap:
    """Degree-0 morphism of graded modules, stored blockwise."""

    source: GradedModule
    target: GradedModule
    blocks: dict[tuple[str, int], Matrix]

    def __post_init__(self):
        cleaned = {}
        for (v, n), mat in self.blocks.items():
            sdim = self.source.dim(v, n)
            tdim = self.target.dim(v, n)
            if sdim == 0 or tdim == 0:
                continue
            if mat.rows != tdim or mat.cols != sdim:
                raise ModuleError(f"map block shape mismatch at ({v}, {n})")
            cleaned[(v, n)] = mat
        self.blocks = cleaned

    def block(self, v: str, n: int) -> Matrix:
        if (v, n) in self.blocks:
            return self.blocks[(v, n)]
        return Matrix.zero(self.target.dim(v, n), self.source.dim(v, n))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """self o inner (inner first)."""
        if inner.target is not self.source and inner.target.dims_table() != self.source.dims_table():
            raise ModuleError("composition endpoint mismatch")
        blocks = {}
        for (v, n) in inner.source.components:
            if self.target.dim(v, n) and inner.source.dim(v, n):
                blocks[(v, n)] = self.block(v, n) * inner.block(v, n)
        return GradedMap(inner.source, self.target, blocks)

    def add(self, other: "GradedMap") -> "GradedMap":
        blocks = {}
        for key in set(self.blocks) | set(other.blocks):
            v, n = key
            blocks[key] = self.block(v, n) + other.block(v, n)
        return GradedMap(self.source, self.target, blocks)

    def scale(self, c) -> "GradedMap":
        return GradedMap(
            self.source, self.target,
            {k: m.scale(c) for k, m in self.blocks.items()},
        )

    def check_commutes(self) -> None:
        for a in self.source.algebra.presentation.arrows:
            for (v, n) in set(self.source.components) | set(self.target.components):
                if v != a.source:
                    continue
                lhs = self.block(a.target, n + 1) * self.source.action(a.name, n)
                rhs = self.target.action(a.name, n) * self.block(v, n)
                if lhs.entries != rhs.entries:
                    raise ModuleError(
                        f"map does not commute with arrow {a.name} at degree {n}"
                    )

    def is_injective(self) -> bool:
        return all(
            self.block(v, n).rank() == d for (v, n), d in self.source.components.items()
        )

    def is_surjective(self) -> bool:
        return all(
            self.block(v, n).rank() == d for (v, n), d in self.target.components.items()
        )

    def is_isomorphism(self) -> bool:
        if self.source.dims_table() != self.target.dims_table():
            return False
        return all(m.is_invertible() for m in self.blocks.values()) and set(
            self.blocks
        ) == set(self.source.components)


def zero_module(algebra: GradedAlgebra) -> GradedModule:
    return GradedModule(algebra, {}, {})


def zero_map(source: GradedModule, target: GradedModule) -> GradedMap:
    return GradedMap(source, target, {})


def identity_map(m: GradedModule) -> GradedMap:
    return GradedMap(
        m, m, {k: Matrix.identity(d) for k, d in m.components.items()}
    )


def shift(m: GradedModule, j: int) -> GradedModule:
    """Grade shift: shift(M, j)(x)_n = M(x)_{n+j}."""
    comps = {(v, n - j): d for (v, n), d in m.components.items()}
    acts = {(a, n - j): mat for (a, n), mat in m.actions.items()}
    return GradedModule(m.algebra, comps, acts)


def shift_map(f: GradedMap, j: int) -> GradedMap:
    return GradedMap(
        shift(f.source, j),
        shift(f.target, j),
        {(v, n - j): mat for (v, n), mat in f.blocks.items()},
    )


# -- constructors -----------------------------------------------------------


def simple(algebra: GradedAlgebra, x: str) -> GradedModule:
    return GradedModule(algebra, {(x, 0): 1}, {})


def projective(algebra: GradedAlgebra, x: str) -> GradedModule:
    """Representable module A(x, -) with its top in degree 0."""
    comps = {}
    for (s, y, n), basis in algebra.basis_paths.items():
        if s == x and basis:
            comps[(y, n)] = len(basis)
    acts = {}
    for a in algebra.presentation.arrows:
        ael = algebra.arrow_element(a.name)
        for n in range(algebra.top_degree + 1):
            sdim = comps.get((a.source, n), 0)
            tdim = comps.get((a.target, n + 1), 0)
            if sdim == 0 or tdim == 0:
                continue
            cols = []
            for b in algebra.basis(x, a.source, n):
                cols.append(algebra.multiply(b, ael).coords)
            acts[(a.name, n)] = Matrix.from_cols(cols, rows=tdim)
    return GradedModule(algebra, comps, acts)


def injective(algebra: GradedAlgebra, x: str) -> GradedModule:
    """Dual of the corepresentable module, socle S(x) in degree 0."""
    comps = {}
    for (y, s, n), basis in algebra.basis_paths.items():
        if s == x and basis:
            comps[(y, -n)] = len(basis)
    acts = {}
    for a in algebra.presentation.arrows:
        ael = algebra.arrow_element(a.name)
        for n in range(-algebra.top_degree, 1):
            sdim = comps.get((a.source, n), 0)
            tdim = comps.get((a.target, n + 1), 0)
            if sdim == 0 or tdim == 0:
                continue
            # right multiplication A(target, x)_{-n-1} -> A(source, x)_{-n}
            cols = []
            for b in algebra.basis(a.target, x, -n - 1):
                cols.append(algebra.multiply(ael, b).coords)
            rmul = Matrix.from_cols(cols, rows=sdim)
            acts[(a.name, n)] = rmul.transpose()
    return GradedModule(algebra, comps, acts)


def direct_sum(
    algebra: GradedAlgebra, summands: list[GradedModule]
) -> tuple[GradedModule, list[GradedMap], list[GradedMap]]:
    """Direct sum with injections and projections."""
    comps: dict[tuple[str, int], int] = {}
    offsets: list[dict[tuple[str, int], int]] = []
    for m in summands:
        off = {}
        for key, d in m.components.items():
            off[key] = comps.get(key, 0)
            comps[key] = comps.get(key, 0) + d
        offsets.append(off)
    acts = {}
    for a in algebra.presentation.arrows:
        degs = {n for (v, n) in comps if v == a.source}
        for n in degs:
            sdim = comps.get((a.source, n), 0)
            tdim = comps.get((a.target, n + 1), 0)
            if sdim == 0 or tdim == 0:
                continue
            rows = [[Fraction(0)] * sdim for _ in range(tdim)]
            for m, off in zip(summands, offsets):
                blk = m.action(a.name, n)
                ro = off.get((a.target, n + 1), 0)
                co = off.get((a.source, n), 0)
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        rows[ro + i][co + j] = blk[i, j]
            acts[(a.name, n)] = Matrix(rows)
    total = GradedModule(algebra, comps, acts)
    injections, projections = [], []
    for m, off in zip(summands, offsets):
        inj_blocks, proj_blocks = {}, {}
        for key, d in m.components.items():
            td = total.dim(*key)
            o = off[key]
            inj = Matrix(
                [[Fraction(int(i == o + j)) for j in range(d)] for i in range(td)]
            )
            inj_blocks[key] = inj
            proj_blocks[key] = inj.transpose()
        injections.append(GradedMap(m, total, inj_blocks))
        projections.append(GradedMap(total, m, proj_blocks))
    return total, injections, projections


# -- submodules and quotients -------------------------------------------------


def _stable_closure(
    m: GradedModule, seeds: dict[tuple[str, int], Subspace]
) -> dict[tuple[str, int], Subspace]:
    """Close a family of componentwise subspaces under all arrow actions."""
    spaces = {key: Subspace.zero(d) for key, d in m.components.items()}
    for key, sub in seeds.items():
        if key in spaces:
            spaces[key] = spaces[key].add(sub)
    changed = True
    while changed:
        changed = False
        for a in m.algebra.presentation.arrows:
            for (v, n), sub in list(spaces.items()):
                if v != a.source or sub.dim == 0:
                    continue
                tkey = (a.target, n + 1)
                if tkey not in spaces:
                    continue
                mat = m.action(a.name, n)
                imgs = [mat.matvec(b) for b in sub.vectors()]
                new = spaces[tkey].add(Subspace(m.dim(*tkey), imgs))
                if new.dim != spaces[tkey].dim:
                    spaces[tkey] = new
                    changed = True
    return spaces


def submodule(
    m: GradedModule, subspaces: dict[tuple[str, int], Subspace]
) -> tuple[GradedModule, GradedMap]:
    """Module structure on action-stable componentwise subspaces."""
    comps = {}
    incl_blocks = {}
    bases = {}
    for key, d in m.components.items():
        sub = subspaces.get(key, Subspace.zero(d))
        if sub.ambient_dim != d:
            raise ModuleError(f"subspace ambient mismatch at {key}")
        if sub.dim:
            comps[key] = sub.dim
            bases[key] = sub
            incl_blocks[key] = Matrix.from_cols(sub.vectors(), rows=d)
    acts = {}
    for a in m.algebra.presentation.arrows:
        for (v, n), sub in bases.items():
            if v != a.source:
                continue
            tkey = (a.target, n + 1)
            tdim = comps.get(tkey, 0)
            mat = m.action(a.name, n)
            cols = []
            for b in sub.vectors():
                img = mat.matvec(b)
                if tdim == 0:
                    if any(c != 0 for c in img):
                        raise ModuleError("subspaces not action-stable")
                    continue
                c = incl_blocks[tkey].solve(img)
                if c is None:
                    raise ModuleError("subspaces not action-stable")
                cols.append(c)
            if tdim and cols:
                acts[(a.name, n)] = Matrix.from_cols(cols, rows=tdim)
    s = GradedModule(m.algebra, comps, acts)
    return s, GradedMap(s, m, incl_blocks)


def quotient(
    m: GradedModule, subspaces: dict[tuple[str, int], Subspace]
) -> tuple[GradedModule, GradedMap]:
    """Quotient by action-stable componentwise subspaces, with projection."""
    comps = {}
    proj_blocks = {}
    lift_blocks = {}
    for key, d in m.components.items():
        sub = subspaces.get(key, Subspace.zero(d))
        nonpivots = [j for j in range(d) if j not in set(sub.pivots)]
        q = len(nonpivots)
        if q == 0:
            continue
        comps[key] = q
        rows = []
        for i in nonpivots:
            rows.append(
                tuple(
                    sub.reduce(tuple(Fraction(int(k == j)) for k in range(d)))[i]
                    for j in range(d)
                )
            )
        proj_blocks[key] = Matrix(rows)
        lift_blocks[key] = Matrix(
            [[Fraction(int(i == nonpivots[j])) for j in range(q)] for i in range(d)]
        )
    acts = {}
    for a in m.algebra.presentation.arrows:
        for (v, n) in list(comps):
            if v != a.source:
                continue
            tkey = (a.target, n + 1)
            if comps.get(tkey, 0) == 0:
                continue
            acts[(a.name, n)] = (
                proj_blocks[tkey] * m.action(a.name, n) * lift_blocks[(v, n)]
            )
    q_mod = GradedModule(m.algebra, comps, acts)
    return q_mod, GradedMap(m, q_mod, proj_blocks)


def kernel(f: GradedMap) -> tuple[GradedModule, GradedMap]:
    subspaces = {}
    for key, d in f.source.components.items():
        subspaces[key] = f.block(*key).kernel() if f.target.dim(*key) else Subspace.full(d)
    return submodule(f.source, subspaces)


def image(f: GradedMap) -> tuple[GradedModule, GradedMap]:
    subspaces = {}
    for key, d in f.target.components.items():
        if f.source.dim(*key):
            subspaces[key] = f.block(*key).column_space()
    return submodule(f.target, subspaces)


def cokernel(f: GradedMap) -> tuple[GradedModule, GradedMap]:
    subspaces = {}
    for key, d in f.target.components.items():
        if f.source.dim(*key):
            subspaces[key] = f.block(*key).column_space()
    return quotient(f.target, subspaces)


def radical(m: GradedModule) -> tuple[GradedModule, GradedMap]:
    """Submodule generated by all arrow-action images (A_+ . M)."""
    seeds: dict[tuple[str, int], Subspace] = {}
    for a in m.algebra.presentation.arrows:
        for (v, n), d in m.components.items():
            if v != a.target:
                continue
            mat = m.action(a.name, n - 1)
            if mat.cols == 0:
                continue
            sub = mat.column_space()
            seeds[(v, n)] = seeds.get((v, n), Subspace.zero(d)).add(sub)
    return submodule(m, seeds)


def top(m: GradedModule) -> tuple[GradedModule, GradedMap]:
    rad, _ = radical(m)
    seeds = {}
    for a in m.algebra.presentation.arrows:
        for (v, n), d in m.components.items():
            if v != a.target:
                continue
            mat = m.action(a.name, n - 1)
            if mat.cols == 0:
                continue
            seeds[(v, n)] = seeds.get((v, n), Subspace.zero(d)).add(mat.column_space())
    return quotient(m, seeds)


def socle(m: GradedModule) -> tuple[GradedModule, GradedMap]:
    """Joint kernel of all arrow actions."""
    spaces = {}
    for key, d in m.components.items():
        v, n = key
        sub = Subspace.full(d)
        for a in m.algebra.presentation.arrows_from(v):
            if m.dim(a.target, n + 1):
                sub = sub.intersect(m.action(a.name, n).kernel())
        spaces[key] = sub
    return submodule(m, spaces)


# -- hom spaces ---------------------------------------------------------------


def hom_basis(m: GradedModule, n_mod: GradedModule) -> list[GradedMap]:
    """Basis of degree-0 graded homomorphisms M -> N."""
    keys = [k for k in sorted(m.components) if n_mod.dim(*k) > 0]
    if not keys:
        return []
    offsets = {}
    total = 0
    for k in keys:
        offsets[k] = total
        total += m.dim(*k) * n_mod.dim(*k)

    def var(key, i, j):
        # entry (i, j) of block at key; block is (dimN x dimM)
        return offsets[key] + i * m.dim(*key) + j

    rows = []
    for a in m.algebra.presentation.arrows:
        degs = {n for (v, n) in list(m.components) if v == a.source}
        for n in degs:
            skey, tkey = (a.source, n), (a.target, n + 1)
            mX, mY = m.dim(*skey), m.dim(*tkey)
            nX, nY = n_mod.dim(*skey), n_mod.dim(*tkey)
            if nY == 0 or mX == 0:
                continue
            m_act = m.action(a.name, n)
            n_act = n_mod.action(a.name, n)
            # F_t * Mact - Nact * F_s = 0, entrywise (r, c), r < nY, c < mX
            for r in range(nY):
                for c in range(mX):
                    row = [Fraction(0)] * total
                    if mY and tkey in offsets:
                        for k in range(mY):
                            row[var(tkey, r, k)] += m_act[k, c]
                    if nX and skey in offsets:
                        for k in range(nX):
                            row[var(skey, k, c)] -= n_act[r, k]
                    if any(e != 0 for e in row):
                        rows.append(tuple(row))
    if rows:
        ker = Matrix.from_rows(rows, cols=total).kernel()
        solutions = ker.vectors()
    else:
        solutions = list(Matrix.identity(total).entries)
    maps = []
    for sol in solutions:
        blocks = {}
        for k in keys:
            nd, md = n_mod.dim(*k), m.dim(*k)
            blocks[k] = Matrix(
                [[sol[var(k, i, j)] for j in range(md)] for i in range(nd)]
            )
        maps.append(GradedMap(m, n_mod, blocks))
    return maps


def shift_overlap_window(m: GradedModule, n_mod: GradedModule) -> range:
    """Shifts j for which shift(M, j) and N can share support degrees."""
    if m.is_zero() or n_mod.is_zero():
        return range(0)
    md, nd = m.degrees(), n_mod.degrees()
    return range(md[0] - nd[-1], md[-1] - nd[0] + 1)


def hom_total(m: GradedModule, n_mod: GradedModule) -> dict[int, list[GradedMap]]:
    """Graded homs of every degree: j -> basis of Hom(M<j>, N)."""
    out = {}
    for j in shift_overlap_window(m, n_mod):
        basis = hom_basis(shift(m, j), n_mod)
        if basis:
            out[j] = basis
    return out


def trace_subspaces(
    family: list[GradedModule], m: GradedModule
) -> dict[tuple[str, int], Subspace]:
    """Componentwise span of the images of all graded homs into M."""
    seeds: dict[tuple[str, int], Subspace] = {}
    for f_mod in family:
        for j, maps in hom_total(f_mod, m).items():
            for h in maps:
                for key, blk in h.blocks.items():
                    sub = blk.column_space()
                    seeds[key] = seeds.get(
                        key, Subspace.zero(m.dim(*key))
                    ).add(sub)
    return seeds


def trace(
    family: list[GradedModule], m: GradedModule
) -> tuple[GradedModule, GradedMap]:
    """Sum of images of all graded homs (all shifts) from the family into M."""
    return submodule(m, trace_subspaces(family, m))


def hom_from_projective(
    x: str, j: int, m: GradedModule, v0: Vec
) -> GradedMap:
    """The map shift(P(x), j) -> M sending the top generator to v0 in M(x, -j)."""
    algebra = m.algebra
    p = shift(projective(algebra, x), j)
    if len(v0) != m.dim(x, -j):
        raise ModuleError("generator image has wrong dimension")
    blocks = {}
    for (y, n) in p.components:
        cols = []
        for el in algebra.basis(x, y, n + j):
            cols.append(m.element_action(el, -j).matvec(v0))
        blocks[(y, n)] = Matrix.from_cols(cols, rows=m.dim(y, n))
    return GradedMap(p, m, blocks)


def projective_cover(m: GradedModule) -> tuple[GradedModule, GradedMap]:
    """Minimal projective cover P -> M (surjective with top-isomorphic P)."""
    algebra = m.algebra
    t, proj = top(m)
    summand_maps = []
    for (x, n), d in sorted(t.components.items()):
        blk = proj.block(x, n)
        for i in range(d):
            e_i = tuple(Fraction(int(k == i)) for k in range(d))
            v0 = blk.solve(e_i)
            if v0 is None:
                raise ModuleError("top projection not surjective")
            summand_maps.append(hom_from_projective(x, -n, m, v0))
    if not summand_maps:
        z = zero_module(algebra)
        return z, zero_map(z, m)
    total, injections, projections = direct_sum(
        algebra, [f.source for f in summand_maps]
    )
    epi = zero_map(total, m)
    for f, pr in zip(summand_maps, projections):
        epi = epi.add(f.compose(pr))
    if not epi.is_surjective():
        raise ModuleError("projective cover construction failed")
    return total, epi


def dualize(m: GradedModule) -> GradedModule:
    """Vector-space dual as a module over the opposite algebra."""
    op = m.algebra.opposite()
    comps = {(v, -n): d for (v, n), d in m.components.items()}
    acts = {}
    for a in op.presentation.arrows:
        # a reverses an original arrow a.target -> a.source
        degs = {n for (v, n) in comps if v == a.source}
        for n in degs:
            if comps.get((a.target, n + 1), 0) == 0:
                continue
            orig = m.action(a.name, -n - 1)
            acts[(a.name, n)] = orig.transpose()
    return GradedModule(op, comps, acts)


def dualize_map(f: GradedMap) -> GradedMap:
    """Contravariant dual: D(f): D(target) -> D(source)."""
    dsrc = dualize(f.target)
    dtgt = dualize(f.source)
    blocks = {
        (v, -n): mat.transpose() for (v, n), mat in f.blocks.items()
    }
    return GradedMap(dsrc, dtgt, blocks)


def is_iso(m: GradedModule, n_mod: GradedModule) -> GradedMap | None:
    """An invertible graded map M -> N if one exists (bounded exact search)."""
    if m.dims_table() != n_mod.dims_table():
        return None
    if m.is_zero():
        return zero_map(m, n_mod)
    homs = hom_basis(m, n_mod)
    if not homs:
        return None
    for h in homs:
        if h.is_isomorphism():
            return h
    d = len(homs)
    if d > 1:
        coeff_range = (1, -1, 2, -2, 3, -3, 0)
        for coeffs in iter_product(coeff_range, repeat=d):
            if all(c == 0 for c in coeffs):
                continue
            h = homs[0].scale(coeffs[0])
            for c, g in zip(coeffs[1:], homs[1:]):
                h = h.add(g.scale(c))
            if h.is_isomorphism():
                return h
    return None
