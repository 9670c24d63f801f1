"""Hom spaces, extension cocycles, resolutions, Yoneda products, and the
Auslander-Reiten translate.

Extensions 0 -> M -> W -> N -> 0 are modeled by arrow-indexed matrix
tuples Z with Z_a : N_(source a) -> M_(target a) satisfying the
derivative of every relation; coboundaries are the tuples h.N - M.h for
vertexwise maps h.  First-degree classes live here; degree-two data is
carried by resolution cochains, with a lifting bridge between the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InvariantViolation,
    NotACocycle,
    NotAField,
    QuiverMismatch,
    ShapeError,
)
from .algebra import AlgebraBasis, dual_module, projective
from .exact import Mat, kernel_basis, rank, solve_many
from .modules import (
    DimensionVector,
    Morphism,
    Representation,
    direct_sum,
    evaluate_path,
    identity_morphism,
    iso,
    morphism_from_flat,
)
from .quiver import Path


def hom_space_dim(src: Representation, dst: Representation) -> int:
    """Dimension of the ambient space of vertexwise maps src -> dst."""
    return sum(dst.dim.at(x) * src.dim.at(x) for x in src.bq.quiver.vertices)


def arrow_space_dim(bq, src_dim: DimensionVector, dst_dim: DimensionVector) -> int:
    return sum(dst_dim.at(a.target) * src_dim.at(a.source) for a in bq.quiver.arrows)


def hom_system_matrix(h_rep: Representation, w_rep: Representation) -> Mat:
    """Matrix of the linear system cutting out Hom(h_rep, w_rep).

    Unknowns are the vertexwise maps f_x (row-major, vertex order); one
    block of rows per arrow a encodes W_a f_(sa) - f_(ta) H_a = 0.  Over a
    field its kernel is the Hom space; over a truncated ring its
    base-field rank profile counts Hom dimensions of the level quotients.
    """
    if h_rep.bq != w_rep.bq:
        raise QuiverMismatch("hom system needs a common quiver")
    if h_rep.ring != w_rep.ring:
        raise QuiverMismatch("hom system needs a common ring")
    bq, ring = h_rep.bq, h_rep.ring
    verts = bq.quiver.vertices
    col_off = {}
    q = 0
    for v in verts:
        col_off[v] = q
        q += w_rep.dim.at(v) * h_rep.dim.at(v)
    rows = []
    zero = ring.zero()
    for a in bq.quiver.arrows:
        wa, ha = w_rep.mat(a.name), h_rep.mat(a.name)
        ds, dt = h_rep.dim.at(a.source), h_rep.dim.at(a.target)
        ws, wt = w_rep.dim.at(a.source), w_rep.dim.at(a.target)
        for r in range(wt):
            for c in range(ds):
                row = [zero] * q
                base_s = col_off[a.source]
                for i in range(ws):
                    coeff = wa.get(r, i)
                    if not ring.is_zero(coeff):
                        idx = base_s + i * ds + c
                        row[idx] = ring.add(row[idx], coeff)
                base_t = col_off[a.target]
                for j in range(dt):
                    coeff = ha.get(j, c)
                    if not ring.is_zero(coeff):
                        idx = base_t + r * dt + j
                        row[idx] = ring.sub(row[idx], coeff)
                rows.append(row)
    p = sum(h_rep.dim.at(a.source) * w_rep.dim.at(a.target) for a in bq.quiver.arrows)
    if not rows:
        return Mat(ring, 0, q, ())
    out = Mat.from_rows(ring, rows)
    if out.rows != p:
        raise InvariantViolation("hom system row count mismatch")
    return out


@dataclass(frozen=True)
class HomBasis:
    source: Representation
    target: Representation
    morphisms: tuple[Morphism, ...]

    @property
    def dimension(self) -> int:
        return len(self.morphisms)


def hom_basis(src: Representation, dst: Representation) -> HomBasis:
    """Basis of Hom(src, dst) over a field, from the explicit linear system."""
    if not src.ring.is_field:
        raise NotAField("hom_basis needs field coefficients")
    system = hom_system_matrix(src, dst)
    # unflatten kernel vectors: same layout as the system columns, which
    # matches Morphism.flatten (vertex order, row-major)
    morphs = tuple(morphism_from_flat(src, dst, k.column_entries(0)) for k in kernel_basis(system))
    for f in morphs:
        if not f.is_valid():
            raise InvariantViolation("hom solution fails the intertwining check")
    return HomBasis(src, dst, morphs)


def hom_dim(src: Representation, dst: Representation) -> int:
    system = hom_system_matrix(src, dst)
    return system.cols - rank(system) if system.cols else 0


# ---------------------------------------------------------------------------
# cocycles and first extensions


@dataclass(frozen=True)
class Cocycle:
    """Arrow tuple Z with Z_a : quot_(sa) -> sub_(ta)."""

    sub: Representation
    quot: Representation
    mats: tuple[Mat, ...]

    @staticmethod
    def build(sub: Representation, quot: Representation, mats_by_name=None) -> "Cocycle":
        sub.same_setting(quot)
        mats_by_name = mats_by_name or {}
        out = []
        for a in sub.bq.quiver.arrows:
            shape = (sub.dim.at(a.target), quot.dim.at(a.source))
            m = mats_by_name.get(a.name)
            if m is None:
                m = Mat.zero(sub.ring, *shape)
            if (m.rows, m.cols) != shape:
                raise ShapeError(f"cocycle block for {a.name} must be {shape[0]}x{shape[1]}")
            out.append(m)
        return Cocycle(sub, quot, tuple(out))

    def mat(self, arrow_name: str) -> Mat:
        for a, m in zip(self.sub.bq.quiver.arrows, self.mats):
            if a.name == arrow_name:
                return m
        raise ShapeError(f"no arrow named {arrow_name}")

    def add(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.sub, self.quot, tuple(a + b for a, b in zip(self.mats, other.mats)))

    def subtract(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.sub, self.quot, tuple(a - b for a, b in zip(self.mats, other.mats)))

    def scale(self, c) -> "Cocycle":
        return Cocycle(self.sub, self.quot, tuple(m.scale(c) for m in self.mats))

    def flatten(self):
        out = []
        for m in self.mats:
            out.extend(m.data)
        return out

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def path_derivative(self, path: Path) -> Mat:
        """Sum over positions of sub-prefix x Z x quot-suffix along the path."""
        ring = self.sub.ring
        quiver = self.sub.bq.quiver
        names = path.arrows
        acc = None
        for i, name in enumerate(names):
            pre = None
            for nm in names[:i]:
                blk = self.sub.mat(nm)
                pre = blk if pre is None else pre @ blk
            suf = None
            for nm in names[i + 1 :]:
                blk = self.quot.mat(nm)
                suf = blk if suf is None else suf @ blk
            term = self.mat(name)
            if pre is not None:
                term = pre @ term
            if suf is not None:
                term = term @ suf
            acc = term if acc is None else acc + term
        if acc is None:
            arr_s = quiver.vertex_index(path.source)
            return Mat.zero(ring, self.sub.dim.values[quiver.vertex_index(path.target)], self.quot.dim.values[arr_s])
        return acc

    def relation_value(self, relation) -> Mat:
        ring = self.sub.ring
        acc = None
        for coeff, path in relation.terms:
            term = self.path_derivative(path).scale(ring.from_fraction(coeff))
            acc = term if acc is None else acc + term
        return acc

    def is_cocycle(self) -> bool:
        return all(self.relation_value(rel).is_zero() for rel in self.sub.bq.relations)


def cocycle_from_flat(sub: Representation, quot: Representation, flat) -> Cocycle:
    mats = []
    pos = 0
    for a in sub.bq.quiver.arrows:
        r, c = sub.dim.at(a.target), quot.dim.at(a.source)
        mats.append(Mat(sub.ring, r, c, tuple(flat[pos : pos + r * c])))
        pos += r * c
    return Cocycle(sub, quot, tuple(mats))


def coboundary(sub: Representation, quot: Representation, hmats) -> Cocycle:
    """The cocycle h.quot - sub.h for vertexwise maps h_x: quot_x -> sub_x."""
    by_vertex = dict(zip(sub.bq.quiver.vertices, hmats))
    mats = {}
    for a in sub.bq.quiver.arrows:
        mats[a.name] = by_vertex[a.target] @ quot.mat(a.name) - sub.mat(a.name) @ by_vertex[a.source]
    return Cocycle.build(sub, quot, mats)


def coboundary_matrix(sub: Representation, quot: Representation) -> Mat:
    """Matrix of h |-> h.quot - sub.h from vertex maps to arrow tuples."""
    bq, ring = sub.bq, sub.ring
    verts = bq.quiver.vertices
    col_off = {}
    q = 0
    for v in verts:
        col_off[v] = q
        q += sub.dim.at(v) * quot.dim.at(v)
    rows = []
    zero = ring.zero()
    for a in bq.quiver.arrows:
        na, ma = quot.mat(a.name), sub.mat(a.name)
        rdim, cdim = sub.dim.at(a.target), quot.dim.at(a.source)
        dt_sub, dt_quot = sub.dim.at(a.target), quot.dim.at(a.target)
        ds_sub, ds_quot = sub.dim.at(a.source), quot.dim.at(a.source)
        for r in range(rdim):
            for c in range(cdim):
                row = [zero] * q
                base_t = col_off[a.target]
                for j in range(dt_quot):
                    coeff = na.get(j, c)
                    if not ring.is_zero(coeff):
                        idx = base_t + r * dt_quot + j
                        row[idx] = ring.add(row[idx], coeff)
                base_s = col_off[a.source]
                for i in range(ds_sub):
                    coeff = ma.get(r, i)
                    if not ring.is_zero(coeff):
                        idx = base_s + i * ds_quot + c
                        row[idx] = ring.sub(row[idx], coeff)
                rows.append(row)
    if not rows:
        return Mat(ring, 0, q, ())
    return Mat.from_rows(ring, rows)


def _cocycle_system(sub: Representation, quot: Representation) -> Mat:
    """Relation-derivative system whose kernel is the cocycle space."""
    bq, ring = sub.bq, sub.ring
    arrows = bq.quiver.arrows
    col_off = {}
    ncols = 0
    for a in arrows:
        col_off[a.name] = ncols
        ncols += sub.dim.at(a.target) * quot.dim.at(a.source)
    rows = []
    zero = ring.zero()
    for rel in bq.relations:
        rdim = sub.dim.at(rel.target)
        cdim = quot.dim.at(rel.source)
        block = [[dict() for _ in range(cdim)] for _ in range(rdim)]
        for coeff, path in rel.terms:
            lam = ring.from_fraction(coeff)
            names = path.arrows
            for i, name in enumerate(names):
                pre = None
                for nm in names[:i]:
                    blk = sub.mat(nm)
                    pre = blk if pre is None else pre @ blk
                suf = None
                for nm in names[i + 1 :]:
                    blk = quot.mat(nm)
                    suf = blk if suf is None else suf @ blk
                arr = bq.quiver.arrow(name)
                zr = sub.dim.at(arr.target)
                zc = quot.dim.at(arr.source)
                for r in range(rdim):
                    for c in range(cdim):
                        cell = block[r][c]
                        for u in range(zr):
                            pv = pre.get(r, u) if pre is not None else (ring.one() if r == u else zero)
                            if ring.is_zero(pv):
                                continue
                            for v in range(zc):
                                sv = suf.get(v, c) if suf is not None else (ring.one() if v == c else zero)
                                if ring.is_zero(sv):
                                    continue
                                idx = col_off[name] + u * zc + v
                                val = ring.mul(lam, ring.mul(pv, sv))
                                cell[idx] = ring.add(cell.get(idx, zero), val)
        for r in range(rdim):
            for c in range(cdim):
                row = [zero] * ncols
                for idx, val in block[r][c].items():
                    row[idx] = ring.add(row[idx], val)
                rows.append(row)
    if not rows:
        return Mat(ring, 0, ncols, ())
    return Mat.from_rows(ring, rows)


class _FlatSpan:
    """Echelonized span of flat vectors over a field (membership + insert)."""

    def __init__(self, ring, width):
        self.ring = ring
        self.width = width
        self.rows = []

    def insert(self, vec) -> bool:
        ring = self.ring
        vec = list(vec)
        for piv, row in self.rows:
            c = vec[piv]
            if not ring.is_zero(c):
                vec = [ring.sub(a, ring.mul(c, b)) for a, b in zip(vec, row)]
        piv = next((i for i, c in enumerate(vec) if not ring.is_zero(c)), None)
        if piv is None:
            return False
        inv = ring.inv(vec[piv])
        vec = [ring.mul(inv, c) for c in vec]
        self.rows.append((piv, vec))
        self.rows.sort(key=lambda t: t[0])
        return True


@dataclass(frozen=True)
class CocycleSpace:
    """Cocycle space, its coboundary subspace, and chosen class representatives
    for extensions 0 -> sub -> W -> quot -> 0."""

    sub: Representation
    quot: Representation
    z_basis: tuple[Cocycle, ...]
    b_basis: tuple[Cocycle, ...]
    b_preimages: tuple  # tuple of vertex-map tuples h with coboundary(h) = b_basis[i]
    ext_reps: tuple[Cocycle, ...]
    vee_dim: int
    hom_dim: int

    @property
    def z_dim(self) -> int:
        return len(self.z_basis)

    @property
    def b_dim(self) -> int:
        return len(self.b_basis)

    @property
    def ext1_dim(self) -> int:
        return len(self.z_basis) - len(self.b_basis)

    def zero(self) -> Cocycle:
        return Cocycle.build(self.sub, self.quot)


def cocycles(quot: Representation, sub: Representation) -> CocycleSpace:
    """Cocycle and coboundary spaces for extensions of ``quot`` by ``sub``.

    Re-asserts the dimension bookkeeping: the coboundary rank plus the
    Hom dimension exhausts the vertex-map space, so the class count is
    z_dim - b_dim.
    """
    if not sub.ring.is_field:
        raise NotAField("cocycles needs field coefficients")
    sub.same_setting(quot)
    ring = sub.ring
    system = _cocycle_system(sub, quot)
    z_basis = tuple(cocycle_from_flat(sub, quot, k.column_entries(0)) for k in kernel_basis(system))
    dmat = coboundary_matrix(sub, quot)
    vee = dmat.cols
    hom = hom_dim(quot, sub)
    b_rank = rank(dmat) if vee else 0
    if b_rank != vee - hom:
        raise InvariantViolation("coboundary rank does not match the Hom count")
    from .exact import column_space_pivots

    piv = column_space_pivots(dmat) if vee else []
    b_basis = []
    b_pre = []
    for j in piv:
        flat = dmat.column_entries(j)
        b_basis.append(cocycle_from_flat(sub, quot, flat))
        hmats = []
        pos = 0
        hflat = [ring.zero()] * vee
        hflat[j] = ring.one()
        for v in sub.bq.quiver.vertices:
            r, c = sub.dim.at(v), quot.dim.at(v)
            hmats.append(Mat(ring, r, c, tuple(hflat[pos : pos + r * c])))
            pos += r * c
        b_pre.append(tuple(hmats))
    width = arrow_space_dim(sub.bq, quot.dim, sub.dim)
    span = _FlatSpan(ring, width)
    for b in b_basis:
        span.insert(b.flatten())
    reps = tuple(z for z in z_basis if span.insert(z.flatten()))
    if len(reps) != len(z_basis) - len(b_basis):
        raise InvariantViolation("extension representatives do not complement the coboundaries")
    return CocycleSpace(sub, quot, z_basis, tuple(b_basis), tuple(b_pre), reps, vee, hom)


def coboundary_solve(z: Cocycle):
    """Vertex maps h with coboundary(h) = z, or None if z is not a coboundary."""
    dmat = coboundary_matrix(z.sub, z.quot)
    rhs = Mat.column(z.sub.ring, z.flatten())
    sol = solve_many(dmat, rhs)
    if sol is None:
        return None
    ring = z.sub.ring
    hmats = []
    pos = 0
    flat = list(sol.data)
    for v in z.sub.bq.quiver.vertices:
        r, c = z.sub.dim.at(v), z.quot.dim.at(v)
        hmats.append(Mat(ring, r, c, tuple(flat[pos : pos + r * c])))
        pos += r * c
    return tuple(hmats)


@dataclass(frozen=True)
class ExtClass:
    """A first-extension class, stored through one cocycle representative."""

    cocycle: Cocycle

    def is_zero_class(self) -> bool:
        return coboundary_solve(self.cocycle) is not None

    def equals(self, other: "ExtClass") -> bool:
        return coboundary_solve(self.cocycle.subtract(other.cocycle)) is not None


@dataclass(frozen=True)
class ExtensionSequence:
    sub: Representation
    middle: Representation
    quot: Representation
    inclusion: Morphism
    projection: Morphism


def middle_term(z) -> tuple[Representation, ExtensionSequence]:
    """Block-upper-triangular module realizing an extension class."""
    if isinstance(z, ExtClass):
        z = z.cocycle
    if not z.is_cocycle():
        raise NotACocycle("relation derivative does not vanish")
    sub, quot = z.sub, z.quot
    ring = sub.ring
    dims = sub.dim + quot.dim
    mats = {}
    for a in sub.bq.quiver.arrows:
        am, an, az = sub.mat(a.name), quot.mat(a.name), z.mat(a.name)
        top = am.hstack(az)
        bot = Mat.zero(ring, an.rows, am.cols).hstack(an)
        mats[a.name] = top.vstack(bot)
    w = Representation.build(sub.bq, ring, dims, mats)
    incl = Morphism.build(
        sub,
        w,
        {
            v: Mat.identity(ring, sub.dim.at(v)).vstack(Mat.zero(ring, quot.dim.at(v), sub.dim.at(v)))
            for v in sub.bq.quiver.vertices
        },
    )
    proj = Morphism.build(
        w,
        quot,
        {
            v: Mat.zero(ring, quot.dim.at(v), sub.dim.at(v)).hstack(Mat.identity(ring, quot.dim.at(v)))
            for v in sub.bq.quiver.vertices
        },
    )
    return w, ExtensionSequence(sub, w, quot, incl, proj)


def push_pull(f: Morphism, xi: ExtClass, side: str) -> ExtClass:
    """Compose an extension class with a morphism.

    side="left": push 0 -> M -> W -> N -> 0 along f: M -> M' (blocks
    f_(ta) Z_a); side="right": pull back along f: N' -> N (blocks
    Z_a f_(sa)).
    """
    z = xi.cocycle
    quiver = z.sub.bq.quiver
    if side == "left":
        if f.source.dim != z.sub.dim:
            raise ShapeError("push needs f out of the subterm")
        mats = {a.name: f.at(a.target) @ z.mat(a.name) for a in quiver.arrows}
        return ExtClass(Cocycle.build(f.target, z.quot, mats))
    if side == "right":
        if f.target.dim != z.quot.dim:
            raise ShapeError("pull needs f into the quotient term")
        mats = {a.name: z.mat(a.name) @ f.at(a.source) for a in quiver.arrows}
        return ExtClass(Cocycle.build(z.sub, f.source, mats))
    raise ShapeError("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# projective bundles, resolutions, higher ext


@dataclass(frozen=True)
class ProjectiveBundle:
    """Finite direct sum of indecomposable projectives with layout data.

    ``layout[x]`` lists, in coordinate order, pairs (summand index, basis
    path) describing the basis of the bundle at vertex x.
    """

    bas: AlgebraBasis
    generators: tuple[str, ...]
    rep: Representation
    layout: dict

    def generator_position(self, j: int) -> int:
        x = self.generators[j]
        for pos, (i, path) in enumerate(self.layout[x]):
            if i == j and path.length == 0:
                return pos
        raise InvariantViolation("missing generator coordinate")

    def summand_block(self, vertex: str, j: int) -> tuple[int, int]:
        """Coordinate range [lo, hi) of summand j at a vertex."""
        lo = None
        hi = 0
        for pos, (i, _) in enumerate(self.layout[vertex]):
            if i == j:
                if lo is None:
                    lo = pos
                hi = pos + 1
        if lo is None:
            return (0, 0)
        return (lo, hi)

    def is_zero(self) -> bool:
        return not self.generators


def projective_bundle(bas: AlgebraBasis, ring, generators) -> ProjectiveBundle:
    generators = tuple(generators)
    bq = bas.bq
    layout = {v: [] for v in bq.quiver.vertices}
    for j, x in enumerate(generators):
        for v in bq.quiver.vertices:
            for path in bas.basis[(x, v)]:
                layout[v].append((j, path))
    rep = None
    for x in generators:
        p = projective(bas, x, ring)
        rep = p if rep is None else direct_sum(rep, p)
    if rep is None:
        rep = Representation.zero_module(bq, ring)
    return ProjectiveBundle(bas, generators, rep, layout)


def projective_cover(bas: AlgebraBasis, m: Representation) -> tuple[ProjectiveBundle, Morphism]:
    """Minimal cover: one projective per top generator, mapped by path action."""
    ring = m.ring
    bq = m.bq
    gens = []  # (vertex, lift column)
    for x in bq.quiver.vertices:
        d = m.dim.at(x)
        if d == 0:
            continue
        rad_cols = []
        for a in bq.quiver.arrows_into(x):
            block = m.mat(a.name)
            for j in range(block.cols):
                rad_cols.append(block.column_entries(j))
        span = _FlatSpan(ring, d)
        for col in rad_cols:
            span.insert(col)
        for k in range(d):
            e = [ring.zero()] * d
            e[k] = ring.one()
            if span.insert(e):
                gens.append((x, Mat.column(ring, e)))
    bundle = projective_bundle(bas, ring, tuple(x for x, _ in gens))
    mats = {}
    for v in bq.quiver.vertices:
        cols = []
        for (j, path) in bundle.layout[v]:
            x, lift = gens[j]
            vec = evaluate_path(m, path) @ lift
            cols.append(vec.column_entries(0))
        if cols:
            mats[v] = Mat.from_rows(ring, [[cols[j][i] for j in range(len(cols))] for i in range(m.dim.at(v))])
        else:
            mats[v] = Mat.zero(ring, m.dim.at(v), 0)
    cover = Morphism.build(bundle.rep, m, mats)
    if not cover.is_valid():
        raise InvariantViolation("projective cover is not a morphism")
    for v in bq.quiver.vertices:
        if rank(cover.at(v)) != m.dim.at(v):
            raise InvariantViolation("projective cover is not surjective")
    return bundle, cover


def subrep_from_kernel(f: Morphism) -> tuple[Representation, Morphism]:
    """Kernel of a morphism as a subrepresentation with its inclusion."""
    m = f.source
    ring = m.ring
    cols = {}
    for v in m.bq.quiver.vertices:
        ker = kernel_basis(f.at(v))
        if ker:
            stacked = ker[0]
            for k in ker[1:]:
                stacked = stacked.hstack(k)
        else:
            stacked = Mat.zero(ring, m.dim.at(v), 0)
        cols[v] = stacked
    dims = {v: cols[v].cols for v in m.bq.quiver.vertices}
    mats = {}
    for a in m.bq.quiver.arrows:
        mapped = m.mat(a.name) @ cols[a.source]
        sol = solve_many(cols[a.target], mapped)
        if sol is None:
            raise InvariantViolation("kernel is not arrow-stable")
        mats[a.name] = sol
    sub = Representation.build(m.bq, ring, dims, mats)
    incl = Morphism.build(sub, m, cols)
    return sub, incl


def quotient_by_image(f: Morphism) -> tuple[Representation, Morphism]:
    """Cokernel of a morphism with its projection."""
    m = f.target
    ring = m.ring
    incl_cols = {}
    proj_rows = {}
    for v in m.bq.quiver.vertices:
        d = m.dim.at(v)
        block = f.at(v)
        span = _FlatSpan(ring, d)
        im_cols = []
        for j in range(block.cols):
            col = block.column_entries(j)
            if span.insert(col):
                im_cols.append(col)
        comp_cols = []
        for k in range(d):
            e = [ring.zero()] * d
            e[k] = ring.one()
            if span.insert(e):
                comp_cols.append(e)
        all_cols = im_cols + comp_cols
        if all_cols:
            square = Mat.from_rows(ring, [[all_cols[j][i] for j in range(len(all_cols))] for i in range(d)])
            inv = solve_many(square, Mat.identity(ring, d))
            if inv is None:
                raise InvariantViolation("image-complement assembly is singular")
            proj_rows[v] = Mat.from_rows(
                ring, [inv.row_list(len(im_cols) + t) for t in range(len(comp_cols))]
            ) if comp_cols else Mat.zero(ring, 0, d)
        else:
            proj_rows[v] = Mat.zero(ring, 0, 0)
        if comp_cols:
            incl_cols[v] = Mat.from_rows(ring, [[comp_cols[j][i] for j in range(len(comp_cols))] for i in range(d)])
        else:
            incl_cols[v] = Mat.zero(ring, d, 0)
    dims = {v: incl_cols[v].cols for v in m.bq.quiver.vertices}
    mats = {}
    for a in m.bq.quiver.arrows:
        mats[a.name] = proj_rows[a.target] @ (m.mat(a.name) @ incl_cols[a.source])
    quot = Representation.build(m.bq, ring, dims, mats)
    proj = Morphism.build(m, quot, proj_rows)
    if not proj.is_valid():
        raise InvariantViolation("cokernel projection is not a morphism")
    return quot, proj


@dataclass(frozen=True)
class Resolution:
    """Chain of projective bundles resolving a module (minimal by construction)."""

    module: Representation
    bundles: tuple[ProjectiveBundle, ...]
    diffs: tuple[Morphism, ...]  # diffs[i]: bundles[i+1] -> bundles[i]
    augmentation: Morphism
    minimal: bool = True

    def term(self, i: int) -> ProjectiveBundle:
        return self.bundles[i] if i < len(self.bundles) else None

    def length(self) -> int:
        return len(self.bundles) - 1

    def verify(self) -> bool:
        """Exactness by rank counts at every stage."""
        aug = self.augmentation
        for v in self.module.bq.quiver.vertices:
            if rank(aug.at(v)) != self.module.dim.at(v):
                return False
        prev = aug
        for d in self.diffs:
            comp = prev.compose(d)
            if not comp.is_zero():
                return False
            for v in self.module.bq.quiver.vertices:
                ker_dim = prev.at(v).cols - rank(prev.at(v))
                if rank(d.at(v)) != ker_dim:
                    return False
            prev = d
        return True


def resolution(bas: AlgebraBasis, m: Representation, length: int) -> Resolution:
    """Minimal projective resolution out to the requested stage (or until
    the syzygy vanishes)."""
    bundle0, aug = projective_cover(bas, m)
    bundles = [bundle0]
    diffs = []
    current_epi = aug
    for _ in range(length):
        syz, incl = subrep_from_kernel(current_epi)
        if syz.total_dim() == 0:
            break
        bundle, cover = projective_cover(bas, syz)
        diff = incl.compose(cover)
        bundles.append(bundle)
        diffs.append(diff)
        current_epi = cover
    return Resolution(m, tuple(bundles), tuple(diffs), aug)


def pdim(bas: AlgebraBasis, m: Representation, cap: int = 4):
    """Projective dimension, or None when it exceeds the cap."""
    if m.total_dim() == 0:
        return 0
    current = m
    for k in range(cap + 1):
        _, cover = projective_cover(bas, current)
        syz, _ = subrep_from_kernel(cover)
        if syz.total_dim() == 0:
            return k
        current = syz
    return None


def idim(bas: AlgebraBasis, m: Representation, cap: int = 4):
    """Injective dimension via duality over the opposite algebra."""
    return pdim(bas.opposite(), dual_module(m), cap)


def projective_hom_basis(bundle: ProjectiveBundle, n: Representation) -> list[Morphism]:
    """Canonical basis of Hom(bundle, n): the generator of summand j may go
    to any basis vector of n at the generator's vertex, and paths follow."""
    ring = n.ring
    out = []
    for j, x in enumerate(bundle.generators):
        for k in range(n.dim.at(x)):
            target_vec = [ring.zero()] * n.dim.at(x)
            target_vec[k] = ring.one()
            lift = Mat.column(ring, target_vec)
            mats = {}
            for v in n.bq.quiver.vertices:
                cols = []
                for (i, path) in bundle.layout[v]:
                    if i != j:
                        cols.append([ring.zero()] * n.dim.at(v))
                    else:
                        vec = evaluate_path(n, path) @ lift
                        cols.append(vec.column_entries(0))
                if cols:
                    mats[v] = Mat.from_rows(ring, [[cols[t][r] for t in range(len(cols))] for r in range(n.dim.at(v))])
                else:
                    mats[v] = Mat.zero(ring, n.dim.at(v), 0)
            out.append(Morphism.build(bundle.rep, n, mats))
    return out


def extn_dim(bas: AlgebraBasis, m: Representation, n: Representation, degree: int, res: Resolution | None = None) -> int:
    """dim Ext^degree(m, n) from a minimal projective resolution of m."""
    if degree < 0:
        raise ShapeError("negative ext degree")
    if m.total_dim() == 0 or n.total_dim() == 0:
        return 0
    if res is None or res.length() < degree + 1:
        res = resolution(bas, m, degree + 1)
    def _hom_dim_at(i):
        if i >= len(res.bundles):
            return 0
        return sum(n.dim.at(x) for x in res.bundles[i].generators)

    def _delta_rank(i):
        # rank of Hom(P_i, n) -> Hom(P_{i+1}, n), f |-> f o d_{i+1}
        if i + 1 >= len(res.bundles) or i >= len(res.bundles):
            return 0
        basis = projective_hom_basis(res.bundles[i], n)
        if not basis:
            return 0
        d = res.diffs[i]
        cols = [f.compose(d).flatten() for f in basis]
        matrix = Mat.from_rows(n.ring, [[cols[j][r] for j in range(len(cols))] for r in range(len(cols[0]))]) if cols and cols[0] else None
        if matrix is None:
            return 0
        return rank(matrix)

    if degree == 0:
        return _hom_dim_at(0) - _delta_rank(0)
    return _hom_dim_at(degree) - _delta_rank(degree) - _delta_rank(degree - 1)


# ---------------------------------------------------------------------------
# cochain bridge and Yoneda products


def express_in_morphisms(basis: list[Morphism], rhs: Morphism):
    """Coefficients writing rhs as a combination of the basis, or None."""
    ring = rhs.source.ring
    if not basis:
        return [] if rhs.is_zero() else None
    cols = [f.flatten() for f in basis]
    width = len(cols[0])
    if width == 0:
        return [ring.zero()] * len(basis)
    matrix = Mat.from_rows(ring, [[cols[j][r] for j in range(len(cols))] for r in range(width)])
    sol = solve_many(matrix, Mat.column(ring, rhs.flatten()))
    if sol is None:
        return None
    return list(sol.data)


def lift_through(bundle: ProjectiveBundle, epi: Morphism, f: Morphism) -> Morphism:
    """Solve epi o g = f for g out of a projective bundle."""
    basis = projective_hom_basis(bundle, epi.source)
    composed = [epi.compose(g) for g in basis]
    coeffs = express_in_morphisms(composed, f)
    if coeffs is None:
        raise InvariantViolation("projective lifting failed; target not in image")
    ring = f.source.ring
    out = None
    for c, g in zip(coeffs, basis):
        part = g.scale(c)
        out = part if out is None else out + part
    if out is None:
        out = Morphism.build(bundle.rep, epi.source)
    return out


def cocycle_to_cochain(bas: AlgebraBasis, xi: ExtClass, res: Resolution) -> Morphism:
    """Degree-one resolution cochain P_1(quot) -> sub representing a class."""
    z = xi.cocycle
    w, seq = middle_term(z)
    u0 = lift_through(res.bundles[0], seq.projection, res.augmentation)
    if len(res.bundles) < 2:
        # projective quotient: every class is zero; represent by the zero map
        return Morphism.build(_zero_bundle_rep(bas, z.sub.ring), z.sub) if False else Morphism.build(
            res.bundles[0].rep, z.sub
        ).compose(Morphism.build(res.bundles[0].rep, res.bundles[0].rep))
    comp = u0.compose(res.diffs[0])  # P_1 -> W, lands in the subterm
    ring = z.sub.ring
    mats = {}
    for v in z.sub.bq.quiver.vertices:
        d_sub = z.sub.dim.at(v)
        block = comp.at(v)
        top = block.submatrix(0, d_sub, 0, block.cols)
        bottom = block.submatrix(d_sub, block.rows, 0, block.cols)
        if not bottom.is_zero():
            raise InvariantViolation("lift does not end in the subterm")
        mats[v] = top
    return Morphism.build(res.bundles[1].rep, z.sub, mats)


def _zero_bundle_rep(bas, ring):
    return Representation.zero_module(bas.bq, ring)


@dataclass(frozen=True)
class Ext2Element:
    """Degree-two class as a cochain P_2(base) -> target modulo coboundaries."""

    bas: AlgebraBasis
    base_resolution: Resolution
    target: Representation
    cochain: Morphism | None  # None encodes the zero cochain on a zero bundle

    def add(self, other: "Ext2Element") -> "Ext2Element":
        if self.cochain is None:
            return other
        if other.cochain is None:
            return self
        return Ext2Element(self.bas, self.base_resolution, self.target, self.cochain + other.cochain)

    def is_zero(self) -> bool:
        res = self.base_resolution
        if self.cochain is None or len(res.bundles) < 3:
            return True if self.cochain is None or self.cochain.is_zero() else _degree2_trivial(res, self.cochain)
        basis = projective_hom_basis(res.bundles[1], self.target)
        d2 = res.diffs[1]
        composed = [f.compose(d2) for f in basis]
        return express_in_morphisms(composed, self.cochain) is not None


def _degree2_trivial(res, cochain):
    # resolution stopped before stage 2: the bundle is zero, so any cochain
    # on it is zero
    return cochain.is_zero()


def yoneda_product(
    bas: AlgebraBasis,
    eta: ExtClass,
    xi: ExtClass,
    res_x: Resolution | None = None,
    res_y: Resolution | None = None,
) -> Ext2Element:
    """Splice a class in Ext^1(Y, T) with a class in Ext^1(X, Y) to a
    degree-two class over X with values in T."""
    y_mod = xi.cocycle.sub
    x_mod = xi.cocycle.quot
    if eta.cocycle.quot.dim != y_mod.dim:
        raise ShapeError("classes do not splice: middle modules differ")
    t_mod = eta.cocycle.sub
    if res_x is None:
        res_x = resolution(bas, x_mod, 3)
    if res_y is None:
        res_y = resolution(bas, y_mod, 2)
    if len(res_x.bundles) < 3:
        return Ext2Element(bas, res_x, t_mod, None)
    c_xi = cocycle_to_cochain(bas, xi, res_x)
    phi0 = lift_through(res_y.bundles[0], res_y.augmentation, c_xi)
    psi = phi0.compose(res_x.diffs[1])
    if len(res_y.bundles) < 2:
        # Y has projective dimension 0; the product lifts through zero
        return Ext2Element(bas, res_x, t_mod, None)
    phi1 = lift_through(res_y.bundles[1], res_y.diffs[0], psi)
    c_eta = cocycle_to_cochain(bas, eta, res_y)
    return Ext2Element(bas, res_x, t_mod, c_eta.compose(phi1))


# ---------------------------------------------------------------------------
# transpose, dual, Auslander-Reiten translate


def transpose(bas: AlgebraBasis, m: Representation) -> Representation:
    """Cokernel of the dualized minimal presentation, as a module over the
    opposite algebra; kills projective summands."""
    ring = m.ring
    bas_op = bas.opposite()
    if m.total_dim() == 0:
        return Representation.zero_module(bas_op.bq, ring)
    bundle0, aug = projective_cover(bas, m)
    syz, incl = subrep_from_kernel(aug)
    if syz.total_dim() == 0:
        return Representation.zero_module(bas_op.bq, ring)
    bundle1, cover1 = projective_cover(bas, syz)
    delta = Morphism(bundle1.rep, bundle0.rep, incl.compose(cover1).mats)
    # read off the algebra elements of each component P_{x_j} -> P_{y_i}
    elements = {}
    for j, xj in enumerate(bundle1.generators):
        gen_pos = bundle1.generator_position(j)
        col = delta.at(xj).column_entries(gen_pos)
        for pos, (i, path) in enumerate(bundle0.layout[xj]):
            coeff = col[pos]
            if ring.is_zero(coeff):
                continue
            elements.setdefault((j, i), []).append((coeff, path))
    bundle0_op = projective_bundle(bas_op, ring, bundle0.generators)
    bundle1_op = projective_bundle(bas_op, ring, bundle1.generators)
    from .algebra import projective_hom_from_element

    mats = {}
    for v in bas_op.bq.quiver.vertices:
        rows_dim = bundle1_op.rep.dim.at(v)
        cols_dim = bundle0_op.rep.dim.at(v)
        grid = [[ring.zero()] * cols_dim for _ in range(rows_dim)]
        for (j, i), terms in elements.items():
            rev_terms = [
                (c, Path(tuple(reversed(p.arrows)), p.target, p.source)) for c, p in terms
            ]
            comp = projective_hom_from_element(bas_op, bundle0.generators[i], bundle1.generators[j], rev_terms, ring)
            block = comp.at(v)
            rlo, rhi = bundle1_op.summand_block(v, j)
            clo, chi = bundle0_op.summand_block(v, i)
            if (rhi - rlo, chi - clo) != (block.rows, block.cols):
                raise InvariantViolation("transpose block shape mismatch")
            for r in range(block.rows):
                for c in range(block.cols):
                    grid[rlo + r][clo + c] = ring.add(grid[rlo + r][clo + c], block.get(r, c))
        mats[v] = Mat.from_rows(ring, grid) if rows_dim else Mat.zero(ring, 0, cols_dim)
    t_map = Morphism.build(bundle0_op.rep, bundle1_op.rep, mats)
    if not t_map.is_valid():
        raise InvariantViolation("dualized presentation is not a morphism")
    tr, _ = quotient_by_image(t_map)
    return tr


def tau(bas: AlgebraBasis, m: Representation) -> Representation:
    """Auslander-Reiten translate: dual of the transpose.  Projective
    summands are dropped (the translate of a projective is zero)."""
    return dual_module(transpose(bas, m))


def tau_inverse(bas: AlgebraBasis, m: Representation) -> Representation:
    """Inverse translate: transpose of the dual (drops injective summands)."""
    return transpose(bas.opposite(), dual_module(m))


def tau_with_dropped(bas: AlgebraBasis, m: Representation):
    """(tau m, dimension vector of the projective part dropped)."""
    t = tau(bas, m)
    back = tau_inverse(bas, t)
    dropped = m.dim - back.dim
    return t, dropped


@dataclass(frozen=True)
class PeriodReport:
    periodic: bool
    period: int | None
    orbit_dims: tuple
    dropped_projective: tuple
    steps: int

    def to_dict(self):
        return {
            "periodic": self.periodic,
            "period": self.period,
            "orbit_dims": [list(d) for d in self.orbit_dims],
            "dropped_projective": list(self.dropped_projective),
            "steps": self.steps,
        }


def tau_orbit(bas: AlgebraBasis, m: Representation, max_steps: int, seed: int = 0) -> PeriodReport:
    """Iterate the translate, testing isomorphism with the start each step."""
    current = m
    orbit = [m.dim.values]
    dropped = None
    for k in range(1, max_steps + 1):
        if dropped is None:
            nxt, drop = tau_with_dropped(bas, current)
            dropped = drop.values
        else:
            nxt = tau(bas, current)
        orbit.append(nxt.dim.values)
        if nxt.total_dim() == 0:
            return PeriodReport(m.total_dim() == 0, 1 if m.total_dim() == 0 else None, tuple(orbit), dropped, k)
        if nxt.dim == m.dim and iso(nxt, m, seed=seed):
            return PeriodReport(True, k, tuple(orbit), dropped, k)
        current = nxt
    return PeriodReport(False, None, tuple(orbit), dropped or (0,) * len(m.dim.values), max_steps)
