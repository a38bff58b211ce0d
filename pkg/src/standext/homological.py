"""Minimal resolutions, bigraded Ext spaces and Yoneda composition.

Ext^n(M, N<j>) is computed from a minimal projective resolution of M as the
cohomology of the Hom complex.  Classes are represented by cocycles
P_n -> N<j>; composition lifts a cocycle to a chain map between resolutions
and composes at the top.  An independent injective-side computation
(projective resolution over the opposite algebra of the dual) is provided
for cross-checks.
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
    dualize,
    hom_basis,
    kernel,
    projective_cover,
    radical,
    shift,
    shift_map,
    shift_overlap_window,
    top,
    zero_map,
    zero_module,
)


@dataclass
class Resolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0."""

    module: GradedModule
    terms: list[GradedModule]
    diffs: list[GradedMap]  # diffs[i]: terms[i+1] -> terms[i]
    augmentation: GradedMap  # terms[0] -> module
    complete: bool  # True when the resolution stops (next kernel is zero)

    def term(self, n: int) -> GradedModule:
        if 0 <= n < len(self.terms):
            return self.terms[n]
        return zero_module(self.module.algebra)

    def diff(self, n: int) -> GradedMap:
        """The differential terms[n] -> terms[n-1]."""
        if 1 <= n <= len(self.diffs):
            return self.diffs[n - 1]
        return zero_map(self.term(n), self.term(n - 1))

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def check(self) -> None:
        """d^2 = 0, exactness at every computed term, minimality."""
        if not self.augmentation.is_surjective():
            raise ModuleError("augmentation not surjective")
        prev_kernel, _ = kernel(self.augmentation)
        for i, d in enumerate(self.diffs):
            if i + 1 < len(self.diffs):
                if not d.compose(self.diffs[i + 1]).is_zero():
                    raise ModuleError("d^2 != 0")
            img_dims = {}
            for key in d.source.components:
                r = d.block(*key).rank()
                if r:
                    img_dims[key] = r
            if img_dims != prev_kernel.dims_table():
                raise ModuleError(f"resolution not exact at term {i}")
            # minimality: the differential lands in the radical
            rad, incl = radical(d.target)
            for key, blk in d.blocks.items():
                space = Subspace(
                    d.target.dim(*key),
                    [incl.block(*key).col(c) for c in range(rad.dim(*key))],
                )
                for c in range(blk.cols):
                    if not space.contains(blk.col(c)):
                        raise ModuleError(f"non-minimal differential at {key}")
            prev_kernel, _ = kernel(d)
        if self.complete and not prev_kernel.is_zero():
            raise ModuleError("resolution marked complete but kernel persists")


def min_proj_resolution(m: GradedModule, n_bound: int) -> Resolution:
    """Minimal projective resolution with terms P_0 .. P_{n_bound}."""
    p0, eps = projective_cover(m)
    terms = [p0]
    diffs: list[GradedMap] = []
    k, incl = kernel(eps)
    complete = k.is_zero()
    while len(terms) <= n_bound and not k.is_zero():
        p, ep = projective_cover(k)
        diffs.append(incl.compose(ep))
        terms.append(p)
        k, incl = kernel(ep)
        if k.is_zero():
            complete = True
    return Resolution(m, terms, diffs, eps, complete)


def shift_resolution(res: Resolution, j: int) -> Resolution:
    return Resolution(
        shift(res.module, j),
        [shift(t, j) for t in res.terms],
        [shift_map(d, j) for d in res.diffs],
        shift_map(res.augmentation, j),
        res.complete,
    )


def min_inj_coresolution(m: GradedModule, n_bound: int) -> Resolution:
    """Minimal projective resolution of the dual over the opposite algebra.

    Dualizing it back yields the minimal injective coresolution of m.
    """
    return min_proj_resolution(dualize(m), n_bound)


def is_linear_resolution(res: Resolution) -> bool:
    """Term n generated purely in degree n (tops concentrated there)."""
    for n, p in enumerate(res.terms):
        t, _ = top(p)
        if any(deg != n for (_, deg) in t.components):
            return False
    return True


# -- flattened hom coordinates -----------------------------------------------


def _keys(x: GradedModule, y: GradedModule) -> list[tuple[str, int]]:
    return sorted(k for k in x.components if y.dim(*k))


def _flat(f: GradedMap, keys: list[tuple[str, int]]) -> Vec:
    out: list[Fraction] = []
    for k in keys:
        for row in f.block(*k).entries:
            out.extend(row)
    return tuple(out)


def _combo(maps: list[GradedMap], coeffs: Vec) -> GradedMap:
    out = zero_map(maps[0].source, maps[0].target)
    for c, h in zip(coeffs, maps):
        if c:
            out = out.add(h.scale(c))
    return out


def factor_through(f: GradedMap, g: GradedMap) -> GradedMap:
    """Some h with g o h = f; exists when f lands in the image of g."""
    x, p, y = f.source, g.source, g.target
    if x.is_zero() or f.is_zero():
        return zero_map(x, p)
    homs = hom_basis(x, p)
    keys = _keys(x, y)
    mat = Matrix.from_cols(
        [_flat(g.compose(h), keys) for h in homs],
        rows=len(_flat(f, keys)),
    )
    c = mat.solve(_flat(f, keys))
    if c is None:
        raise ModuleError("map does not factor through the given surjection")
    return _combo(homs, c) if homs else zero_map(x, p)


# -- approximations by a fixed family (tilting (co)resolutions) ---------------


@dataclass
class AddResolutionStep:
    """One term of an add(family) (co)resolution: its summands by label/shift."""

    summands: list[tuple[str, int]]


@dataclass
class AddResolution:
    steps: list[AddResolutionStep]
    truncated: bool
    failure: str | None = None


def _family_homs_into(
    m: GradedModule, targets: dict[str, GradedModule]
) -> list[tuple[str, int, GradedMap]]:
    out = []
    for lab in sorted(targets):
        t = targets[lab]
        for j in shift_overlap_window(t, m):
            for h in hom_basis(m, shift(t, j)):
                out.append((lab, j, h))
    return out


def _family_homs_from(
    m: GradedModule, targets: dict[str, GradedModule]
) -> list[tuple[str, int, GradedMap]]:
    # shifts j with Hom(shift(t, j), m) possibly nonzero
    out = []
    for lab in sorted(targets):
        t = targets[lab]
        if t.is_zero() or m.is_zero():
            continue
        td, md = t.degrees(), m.degrees()
        for j in range(td[0] - md[-1], td[-1] - md[0] + 1):
            for h in hom_basis(shift(t, j), m):
                out.append((lab, j, h))
    return out


def _factors_through_sources(h: GradedMap, others: list[GradedMap]) -> bool:
    """h = sum u_k o h_k for maps u_k: h.source -> h_k.source (left approx)."""
    keys = _keys(h.source, h.target)
    target_vec = _flat(h, keys)
    cols = []
    for hk in others:
        for u in hom_basis(h.source, hk.source):
            cols.append(_flat(hk.compose(u), keys))
    if not cols:
        return all(e == 0 for e in target_vec)
    return Matrix.from_cols(cols, rows=len(target_vec)).solve(target_vec) is not None


def _factors_through_targets(h: GradedMap, others: list[GradedMap]) -> bool:
    """h = sum t_k o h_k for maps t_k: h_k.target -> h.target (right... dual)."""
    keys = _keys(h.source, h.target)
    target_vec = _flat(h, keys)
    cols = []
    for hk in others:
        for u in hom_basis(hk.target, h.target):
            cols.append(_flat(u.compose(hk), keys))
    if not cols:
        return all(e == 0 for e in target_vec)
    return Matrix.from_cols(cols, rows=len(target_vec)).solve(target_vec) is not None


def _greedy_minimize(entries, removable) -> list:
    """Drop entries that stay redundant; `removable(entry, rest)` decides."""
    current = list(entries)
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            rest = current[:i] + current[i + 1:]
            if removable(current[i], rest):
                current = rest
                changed = True
                break
    return current


def minimal_left_approximation(
    m: GradedModule, targets: dict[str, GradedModule]
) -> tuple[list[tuple[str, int]], GradedMap]:
    """Minimal left add(family)-approximation f: M -> direct sum of shifts."""
    entries = _family_homs_into(m, targets)
    entries = _greedy_minimize(
        entries,
        lambda e, rest: _factors_through_targets(e[2], [r[2] for r in rest]),
    )
    from .modules import direct_sum  # local to avoid top-level clutter

    if not entries:
        z = zero_module(m.algebra)
        return [], zero_map(m, z)
    total, injections, _ = direct_sum(m.algebra, [e[2].target for e in entries])
    f = zero_map(m, total)
    for (_, _, h), inj in zip(entries, injections):
        f = f.add(inj.compose(h))
    return [(lab, j) for (lab, j, _) in entries], f


def minimal_right_approximation(
    m: GradedModule, targets: dict[str, GradedModule]
) -> tuple[list[tuple[str, int]], GradedMap]:
    """Minimal right add(family)-approximation g: direct sum of shifts -> M."""
    entries = _family_homs_from(m, targets)
    entries = _greedy_minimize(
        entries,
        lambda e, rest: _factors_through_sources(e[2], [r[2] for r in rest]),
    )
    from .modules import direct_sum

    if not entries:
        z = zero_module(m.algebra)
        return [], zero_map(z, m)
    total, _, projections = direct_sum(m.algebra, [e[2].source for e in entries])
    g = zero_map(total, m)
    for (_, _, h), pr in zip(entries, projections):
        g = g.add(h.compose(pr))
    return [(lab, j) for (lab, j, _) in entries], g


def min_add_coresolution(
    m: GradedModule, targets: dict[str, GradedModule], max_steps: int
) -> AddResolution:
    """Minimal coresolution 0 -> M -> F_0 -> F_1 -> ... by the family."""
    steps = []
    cur = m
    for _ in range(max_steps + 1):
        if cur.is_zero():
            return AddResolution(steps, truncated=False)
        summands, f = minimal_left_approximation(cur, targets)
        ker, _ = kernel(f)
        if not ker.is_zero():
            return AddResolution(
                steps, truncated=False,
                failure="left approximation not injective",
            )
        steps.append(AddResolutionStep(summands))
        from .modules import cokernel

        cur, _ = cokernel(f)
    return AddResolution(steps, truncated=True)


def min_add_resolution(
    m: GradedModule, targets: dict[str, GradedModule], max_steps: int
) -> AddResolution:
    """Minimal resolution ... -> F_1 -> F_0 -> M -> 0 by the family."""
    steps = []
    cur = m
    for _ in range(max_steps + 1):
        if cur.is_zero():
            return AddResolution(steps, truncated=False)
        summands, g = minimal_right_approximation(cur, targets)
        if not g.is_surjective():
            return AddResolution(
                steps, truncated=False,
                failure="right approximation not surjective",
            )
        steps.append(AddResolutionStep(summands))
        cur, _ = kernel(g)
    return AddResolution(steps, truncated=True)


# -- Ext components ------------------------------------------------------------


@dataclass
class ExtComponent:
    """Ext^n(M, N<j>) presented inside Hom(P_n, N<j>)."""

    res: Resolution
    target: GradedModule  # already shifted: N<j>
    n: int
    hom: list[GradedMap]
    rep_coords: list[Vec]  # coordinates (wrt hom) of chosen basis cocycles
    cobound: Subspace  # coboundary coordinates inside Q^len(hom)
    cocycles: Subspace

    @property
    def dim(self) -> int:
        return len(self.rep_coords)

    def rep_maps(self) -> list[GradedMap]:
        return [_combo(self.hom, c) for c in self.rep_coords]

    def class_coords(self, cocycle: GradedMap) -> Vec:
        """Coordinates of a cocycle's class in the chosen basis."""
        if not self.hom:
            return ()
        src = self.res.term(self.n)
        keys = _keys(src, self.target)
        hom_mat = Matrix.from_cols(
            [_flat(h, keys) for h in self.hom], rows=len(_flat(cocycle, keys))
        )
        coords = hom_mat.solve(_flat(cocycle, keys))
        if coords is None:
            raise ModuleError("cocycle outside the hom space")
        basis_cols = list(self.rep_coords) + self.cobound.vectors()
        if not basis_cols:
            if any(e != 0 for e in coords):
                raise ModuleError("nonzero class in zero Ext component")
            return ()
        mat = Matrix.from_cols(basis_cols, rows=len(self.hom))
        sol = mat.solve(coords)
        if sol is None:
            raise ModuleError("cocycle class not in span of basis")
        return tuple(sol[: len(self.rep_coords)])


def ext_component(res: Resolution, n_mod: GradedModule, n: int, j: int) -> ExtComponent:
    """Ext^n(res.module, n_mod<j>) with explicit cocycle representatives."""
    nj = shift(n_mod, j)
    pn = res.term(n)
    homs = hom_basis(pn, nj) if not pn.is_zero() else []
    if not homs:
        return ExtComponent(res, nj, n, [], [], Subspace.zero(0), Subspace.zero(0))
    d = len(homs)
    # cocycles: h o d_{n+1} = 0
    d_next = res.diff(n + 1)
    if d_next.source.is_zero():
        cocycles = Subspace.full(d)
    else:
        keys_next = _keys(d_next.source, nj)
        cols = [_flat(h.compose(d_next), keys_next) for h in homs]
        if not cols[0]:
            cocycles = Subspace.full(d)
        else:
            cocycles = Matrix.from_cols(cols, rows=len(cols[0])).kernel()
    # coboundaries: g o d_n for g in Hom(P_{n-1}, N<j>)
    cob_vecs = []
    if n >= 1 and not res.term(n - 1).is_zero():
        d_n = res.diff(n)
        keys = _keys(pn, nj)
        hom_mat = Matrix.from_cols(
            [_flat(h, keys) for h in homs], rows=len(_flat(homs[0], keys))
        )
        for g in hom_basis(res.term(n - 1), nj):
            v = hom_mat.solve(_flat(g.compose(d_n), keys))
            if v is None:
                raise ModuleError("coboundary outside hom space")
            cob_vecs.append(v)
    cobound = Subspace(d, cob_vecs)
    reps = []
    current = cobound
    for v in cocycles.vectors():
        if not current.contains(v):
            reps.append(v)
            current = current.add(Subspace(d, [v]))
    return ExtComponent(res, nj, n, homs, reps, cobound, cocycles)


def ext_dims(
    m: GradedModule,
    n_mod: GradedModule,
    n_bound: int,
    res: Resolution | None = None,
) -> dict[tuple[int, int], int]:
    """All nonzero dim Ext^n(M, N<j>) for n <= n_bound."""
    if res is None:
        res = min_proj_resolution(m, n_bound + 1)
    out = {}
    for n in range(n_bound + 1):
        pn = res.term(n)
        if pn.is_zero():
            break
        for j in shift_overlap_window(n_mod, pn):
            d = ext_component(res, n_mod, n, j).dim
            if d:
                out[(n, j)] = d
    return out


def ext_dims_inj(
    m: GradedModule, n_mod: GradedModule, n_bound: int
) -> dict[tuple[int, int], int]:
    """Same table computed by coresolving N instead of resolving M.

    Uses Ext^n(M, N<j>) = Ext^n(DN, DM<j>) over the opposite algebra, i.e.
    the minimal injective coresolution of N.
    """
    return ext_dims(dualize(n_mod), dualize(m), n_bound)


def lift_cocycle(
    res_x: Resolution, cocycle: GradedMap, n: int, res_target: Resolution, steps: int
) -> GradedMap:
    """Chain-map lift of a degree-n cocycle through res_target, `steps` deep.

    Returns the component P_{n+steps}(X) -> res_target.term(steps); the
    target resolution must resolve the cocycle's target module.
    """
    cur = factor_through(cocycle, res_target.augmentation)
    for i in range(1, steps + 1):
        rhs = cur.compose(res_x.diff(n + i))
        cur = factor_through(rhs, res_target.diff(i))
    return cur


@dataclass(frozen=True)
class ExtClass:
    source: str
    target: str
    n: int
    m: int
    coords: Vec


class BigradedCategory:
    """Ext category of a family of modules: objects labelled, homs bigraded.

    components[(x, y, n, m)] is Ext^n(M_x, M_y<m>); composition is the
    Yoneda product, computed by chain-map lifting, with "f then g" order
    (f: x -> y, g: y -> z).
    """

    def __init__(
        self, algebra: GradedAlgebra, objects: dict[str, GradedModule], n_bound: int
    ):
        self.algebra = algebra
        self.objects = objects
        self.n_bound = n_bound
        self.resolutions = {
            x: min_proj_resolution(mod, n_bound + 1) for x, mod in objects.items()
        }
        self.components: dict[tuple[str, str, int, int], ExtComponent] = {}
        for x, res in self.resolutions.items():
            for y, n_mod in objects.items():
                for n in range(n_bound + 1):
                    pn = res.term(n)
                    if pn.is_zero():
                        break
                    for j in shift_overlap_window(n_mod, pn):
                        comp = ext_component(res, n_mod, n, j)
                        if comp.dim:
                            self.components[(x, y, n, j)] = comp

    def dims(self) -> dict[tuple[str, str, int, int], int]:
        return {k: c.dim for k, c in self.components.items()}

    def total_dim(self) -> int:
        return sum(c.dim for c in self.components.values())

    def basis(self) -> list[ExtClass]:
        out = []
        for (x, y, n, m), comp in sorted(self.components.items()):
            for i in range(comp.dim):
                coords = tuple(
                    Fraction(int(k == i)) for k in range(comp.dim)
                )
                out.append(ExtClass(x, y, n, m, coords))
        return out

    def cocycle_of(self, cls: ExtClass) -> GradedMap:
        comp = self.components[(cls.source, cls.target, cls.n, cls.m)]
        return _combo(comp.rep_maps(), cls.coords)

    def compose(self, f: ExtClass, g: ExtClass) -> ExtClass:
        """Yoneda product "f then g" for f: x -> y, g: y -> z."""
        if f.target != g.source:
            raise ModuleError("non-composable Ext classes")
        x, z = f.source, g.target
        n, m = f.n + g.n, f.m + g.m
        key = (x, z, n, m)
        if key not in self.components:
            return ExtClass(x, z, n, m, ())
        comp = self.components[key]
        phi = self.cocycle_of(f)
        if phi.is_zero() or all(c == 0 for c in g.coords):
            return ExtClass(x, z, n, m, (Fraction(0),) * comp.dim)
        res_y = shift_resolution(self.resolutions[g.source], f.m)
        lifted = lift_cocycle(self.resolutions[x], phi, f.n, res_y, g.n)
        psi = shift_map(self.cocycle_of(g), f.m)
        coords = comp.class_coords(psi.compose(lifted))
        return ExtClass(x, z, n, m, coords)

    def composition_ranks(self) -> dict[tuple, int]:
        """Rank of every pairwise composition map between components."""
        out = {}
        basis = self.basis()
        by_comp: dict[tuple, list[ExtClass]] = {}
        for cls in basis:
            by_comp.setdefault((cls.source, cls.target, cls.n, cls.m), []).append(cls)
        for k1, fs in by_comp.items():
            for k2, gs in by_comp.items():
                if k1[1] != k2[0]:
                    continue
                key = (k1[0], k2[1], k1[2] + k2[2], k1[3] + k2[3])
                if key not in self.components:
                    continue
                vecs = []
                for f in fs:
                    for g in gs:
                        coords = self.compose(f, g).coords
                        if coords:
                            vecs.append(coords)
                if vecs:
                    r = Subspace(len(vecs[0]), vecs).dim
                    if r:
                        out[(k1, k2)] = r
        return out


def ext_category(
    algebra: GradedAlgebra, objects: dict[str, GradedModule], n_bound: int
) -> BigradedCategory:
    return BigradedCategory(algebra, objects, n_bound)
