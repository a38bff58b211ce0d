"""Standard, costandard and tilting modules for a height function.

The heights on the vertices order the simples.  The standard module at x is
the projective at x modulo the trace of all projectives of strictly larger
height; the costandard module is the dual of the standard module of the
opposite algebra.  check_qh verifies that this data actually is
quasi-hereditary; tilting modules are built by iterated universal
extensions between standard modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GradedAlgebra
from .linalg import Matrix, Subspace, Vec
from .modules import (
    GradedMap,
    GradedModule,
    ModuleError,
    cokernel,
    direct_sum,
    dualize,
    hom_basis,
    kernel,
    projective,
    projective_cover,
    quotient,
    radical,
    shift,
    shift_overlap_window,
    simple,
    submodule,
    top,
    trace_subspaces,
    zero_map,
    zero_module,
    is_iso,
)


def higher_projectives(algebra: GradedAlgebra, x: str) -> list[GradedModule]:
    return [
        projective(algebra, y)
        for y in algebra.vertices
        if algebra.ht(y) > algebra.ht(x)
    ]


def standard(algebra: GradedAlgebra, x: str) -> GradedModule:
    """P(x) modulo the trace of all projectives of larger height."""
    p = projective(algebra, x)
    seeds = trace_subspaces(higher_projectives(algebra, x), p)
    q, _ = quotient(p, seeds)
    return q


def standard_kernel(algebra: GradedAlgebra, x: str) -> GradedModule:
    """Kernel of the projection P(x) -> standard(x)."""
    p = projective(algebra, x)
    seeds = trace_subspaces(higher_projectives(algebra, x), p)
    k, _ = submodule(p, seeds)
    return k


def costandard(algebra: GradedAlgebra, x: str) -> GradedModule:
    """Dual of the opposite-algebra standard module; socle S(x) in degree 0."""
    return dualize(standard(algebra.opposite(), x))


def composition_multiplicities(m: GradedModule) -> dict[tuple[str, int], int]:
    """Multiplicity of each shifted simple S(y)<j>: dim of M(y, -j)."""
    return {(y, -n): d for (y, n), d in m.components.items()}


@dataclass
class QHReport:
    ok: bool
    witnesses: list[str] = field(default_factory=list)
    standard_dims: dict = field(default_factory=dict)


def check_qh(algebra: GradedAlgebra) -> QHReport:
    """Verify that the height function makes the algebra quasi-hereditary."""
    witnesses = []
    standard_dims = {}
    deltas = {x: standard(algebra, x) for x in algebra.vertices}
    for x in algebra.vertices:
        d = deltas[x]
        standard_dims[x] = d.dims_table()
        if d.dim(x, 0) != 1:
            witnesses.append(f"Δ({x}) does not have simple top S({x})")
            continue
        rad, _ = radical(d)
        for (y, n) in sorted(rad.components):
            if algebra.ht(y) >= algebra.ht(x):
                witnesses.append(f"S({y}) occurs in Rad Δ({x})")
        if len(hom_basis(d, d)) != 1:
            witnesses.append(f"End(Δ({x})) is not one-dimensional")
    if not witnesses:
        for x in algebra.vertices:
            k = standard_kernel(algebra, x)
            filt = delta_filtration(k, deltas)
            if filt is None:
                witnesses.append(
                    f"kernel of P({x}) -> Δ({x}) has no standard filtration"
                )
                continue
            for (y, j) in filt:
                if algebra.ht(y) <= algebra.ht(x):
                    witnesses.append(
                        f"Δ({y}) of height <= ht({x}) occurs above Δ({x}) in P({x})"
                    )
    return QHReport(ok=not witnesses, witnesses=witnesses, standard_dims=standard_dims)


def delta_filtration(
    m: GradedModule, deltas: dict[str, GradedModule] | None = None
) -> list[tuple[str, int]] | None:
    """Multiset of (x, shift) with M filtered by Δ(x)<shift>, or None.

    Strategy: the trace of the maximal-height projectives must be a direct
    sum of shifted standards of that height (read off from its top);
    recurse on the quotient.
    """
    algebra = m.algebra
    if deltas is None:
        deltas = {x: standard(algebra, x) for x in algebra.vertices}
    if m.is_zero():
        return []
    h = max(algebra.ht(v) for (v, _) in m.components)
    family = [projective(algebra, y) for y in algebra.vertices if algebra.ht(y) == h]
    seeds = trace_subspaces(family, m)
    t, _ = submodule(m, seeds)
    if t.is_zero():
        return None
    t_top, _ = top(t)
    layers = []
    summands = []
    for (y, n), d in sorted(t_top.components.items()):
        if algebra.ht(y) != h:
            return None
        for _ in range(d):
            layers.append((y, -n))
            summands.append(shift(deltas[y], -n))
    expected, _, _ = direct_sum(algebra, summands)
    if is_iso(expected, t) is None:
        return None
    q, _ = quotient(m, seeds)
    rest = delta_filtration(q, deltas)
    if rest is None:
        return None
    return rest + layers


def nabla_filtration(m: GradedModule) -> list[tuple[str, int]] | None:
    """Multiset of (x, shift) with M filtered by ∇(x)<shift>, or None."""
    dm = dualize(m)
    filt = delta_filtration(dm)
    if filt is None:
        return None
    return [(x, -j) for (x, j) in filt]


# -- Ext^1 between a standard module and a candidate tilting ----------------


def _flatten(f: GradedMap, keys: list[tuple[str, int]]) -> Vec:
    out: list[Fraction] = []
    for k in keys:
        for row in f.block(*k).entries:
            out.extend(row)
    return tuple(out)


def _ext1_representatives(
    c: GradedModule,
    presentation: tuple[GradedModule, GradedMap, GradedModule, GradedMap],
) -> list[GradedMap]:
    """Maps K -> C spanning Ext^1(N, C) = Hom(K, C)/Hom(P0, C)|K."""
    p0, epi, k_mod, incl = presentation
    hom_k = hom_basis(k_mod, c)
    if not hom_k:
        return []
    keys = sorted(set(k_mod.components) & set(c.components))
    restricted = [h.compose(incl) for h in hom_basis(p0, c)]
    span = Subspace(
        len(_flatten(hom_k[0], keys)), [_flatten(r, keys) for r in restricted]
    )
    reps = []
    current = span
    for h in hom_k:
        v = _flatten(h, keys)
        if not current.contains(v):
            reps.append(h)
            current = current.add(Subspace(current.ambient_dim, [v]))
    return reps


def _presentation(n_mod: GradedModule):
    p0, epi = projective_cover(n_mod)
    k_mod, incl = kernel(epi)
    return p0, epi, k_mod, incl


def universal_extension(
    c: GradedModule, presentation, reps: list[GradedMap]
) -> GradedModule:
    """Middle term of the universal extension 0 -> C -> E -> N^d -> 0."""
    p0, epi, k_mod, incl = presentation
    d = len(reps)
    algebra = c.algebra
    kd, _, k_projs = direct_sum(algebra, [k_mod] * d)
    target, t_injs, _ = direct_sum(algebra, [p0] * d + [c])
    phi = zero_map(kd, target)
    for i, rep in enumerate(reps):
        phi = phi.add(t_injs[i].compose(incl).compose(k_projs[i]))
        phi = phi.add(t_injs[d].compose(rep).compose(k_projs[i]).scale(-1))
    e, _ = cokernel(phi)
    return e


def tilting(algebra: GradedAlgebra, x: str, sweep_cap: int = 64) -> GradedModule:
    """Indecomposable module in F(Δ) ∩ F(∇) whose Δ-filtration starts at Δ(x)."""
    deltas = {y: standard(algebra, y) for y in algebra.vertices}
    presentations = {y: _presentation(deltas[y]) for y in algebra.vertices}
    order = sorted(algebra.vertices, key=lambda y: (-algebra.ht(y), y))
    c = deltas[x]
    for _ in range(sweep_cap):
        changed = False
        for y in order:
            p0, epi, k_mod, incl = presentations[y]
            for j in shift_overlap_window(k_mod, c):
                pres_j = (
                    shift(p0, j),
                    None,
                    shift(k_mod, j),
                    GradedMap(
                        shift(k_mod, j), shift(p0, j),
                        {(v, n - j): m for (v, n), m in incl.blocks.items()},
                    ),
                )
                reps = _ext1_representatives(c, pres_j)
                if reps:
                    c = universal_extension(c, pres_j, reps)
                    changed = True
        if not changed:
            break
    else:
        raise ModuleError(f"tilting construction for {x} did not stabilize")
    filt = delta_filtration(c, deltas)
    if filt is None or (x, 0) not in filt:
        raise ModuleError(f"tilting candidate for {x} lost its Δ-filtration")
    if nabla_filtration(c) is None:
        raise ModuleError(f"tilting candidate for {x} has no costandard filtration")
    if not is_indecomposable(c):
        raise ModuleError(f"tilting candidate for {x} is decomposable")
    return c


def is_indecomposable(m: GradedModule) -> bool:
    """Locality of the graded endomorphism ring via the trace form (char 0)."""
    if m.is_zero():
        return False
    ends = hom_basis(m, m)
    d = len(ends)
    if d == 1:
        return True
    keys = sorted(m.components)
    vecs = [_flatten(h, keys) for h in ends]
    basis = Matrix.from_cols(vecs)
    # left-multiplication matrices in the chosen basis
    lmuls = []
    for h in ends:
        cols = []
        for g in ends:
            coords = basis.solve(_flatten(h.compose(g), keys))
            if coords is None:
                raise ModuleError("endomorphism composition left the hom space")
            cols.append(coords)
        lmuls.append(Matrix.from_cols(cols, rows=d))
    gram = Matrix(
        [
            [
                sum((lmuls[i] * lmuls[j])[k, k] for k in range(d))
                for j in range(d)
            ]
            for i in range(d)
        ]
    )
    # rank of the trace form = dimension of the semisimple quotient
    return gram.rank() == 1


def tilting_family(algebra: GradedAlgebra) -> dict[str, GradedModule]:
    return {x: tilting(algebra, x) for x in algebra.vertices}


def ringel_dual_homs(
    algebra: GradedAlgebra, tiltings: dict[str, GradedModule] | None = None
) -> dict[tuple[str, str, int], int]:
    """Graded hom dimensions dim Hom(T(x), T(y)<k>) between tilting modules."""
    if tiltings is None:
        tiltings = tilting_family(algebra)
    out = {}
    for x, tx in tiltings.items():
        for y, ty in tiltings.items():
            for k in shift_overlap_window(ty, tx):
                d = len(hom_basis(tx, shift(ty, k)))
                if d:
                    if k < 0:
                        raise ModuleError(
                            "tilting hom in negative degree; grading not positive"
                        )
                    out[(x, y, k)] = d
    return out
