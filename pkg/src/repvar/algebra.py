"""Linear basis of the path algebra of a bound quiver and its module zoo.

The basis of e_y * Lambda * e_x is chosen greedily in (length, arrow-name)
order, eliminating against the span of the relation ideal inside a long
enough path window, so bases are deterministic and tests are bit-stable.
Indecomposable projectives are built by left multiplication on basis
paths; injectives by duality over the opposite algebra; simples directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAdmissible, ShapeError
from .exact import Mat, QQ, solve_many
from .modules import DimensionVector, Morphism, Representation
from .quiver import BoundQuiver, Path, enumerate_paths, is_admissible, _ideal_generators


class _IncrementalSpan:
    """Row space in reduced echelon form supporting membership and insert."""

    def __init__(self, ring, width: int):
        self.ring = ring
        self.width = width
        self.rows = []  # (pivot index, coefficient list), sorted by pivot

    def _reduce(self, vec):
        ring = self.ring
        vec = list(vec)
        for piv, row in self.rows:
            c = vec[piv]
            if ring.is_zero(c):
                continue
            vec = [ring.sub(a, ring.mul(c, b)) for a, b in zip(vec, row)]
        return vec

    def contains(self, vec) -> bool:
        return all(self.ring.is_zero(c) for c in self._reduce(vec))

    def insert(self, vec) -> bool:
        ring = self.ring
        red = self._reduce(vec)
        piv = next((i for i, c in enumerate(red) if not ring.is_zero(c)), None)
        if piv is None:
            return False
        inv = ring.inv(red[piv])
        red = [ring.mul(inv, c) for c in red]
        for i, (p, row) in enumerate(self.rows):
            c = row[piv]
            if not ring.is_zero(c):
                self.rows[i] = (p, [ring.sub(a, ring.mul(c, b)) for a, b in zip(row, red)])
        self.rows.append((piv, red))
        self.rows.sort(key=lambda t: t[0])
        return True


class AlgebraBasis:
    """Basis paths per vertex pair, with reduction of arbitrary paths."""

    def __init__(self, bq: BoundQuiver, ring, basis, expansions, cap):
        self.bq = bq
        self.ring = ring
        self.basis = basis  # (x, y) -> list[Path], paths x -> y
        self._expansions = expansions  # (x, y) -> {arrow word: coeff tuple}
        self.cap = cap
        self.total_dim = sum(len(v) for v in basis.values())
        self._opposite = None

    def pair_dim(self, x: str, y: str) -> int:
        return len(self.basis[(x, y)])

    def reduce_path(self, path: Path):
        """Expansion of a path in the basis: list of (coefficient, basis path)."""
        if path.length >= self.bq.bound:
            return []
        coeffs = self._expansions[(path.source, path.target)].get(path.arrows)
        if coeffs is None:
            raise ShapeError(f"path {path.label()} outside the reduction window")
        blist = self.basis[(path.source, path.target)]
        return [(c, blist[i]) for i, c in enumerate(coeffs) if not self.ring.is_zero(c)]

    def compose_basis(self, left: Path, right: Path):
        """Product (left after right) expanded in the basis."""
        return self.reduce_path(left.compose(right))

    def opposite(self) -> "AlgebraBasis":
        if self._opposite is None:
            self._opposite = build(self.bq.opposite(), self.ring)
            self._opposite._opposite = self
        return self._opposite


def build(bq: BoundQuiver, ring=QQ) -> AlgebraBasis:
    """Construct the basis; raises NotAdmissible when long paths survive."""
    ok, _ = is_admissible(bq, ring=ring)
    if not ok:
        raise NotAdmissible("paths of the declared bound length do not lie in the relation ideal")
    L = bq.bound
    max_rel = max((max(p.length for _, p in rel.terms) for rel in bq.relations), default=0)
    cap = L + max_rel
    if bq.quiver.is_acyclic():
        cap = max(cap, len(bq.quiver.vertices))
    paths, gens = _ideal_generators(bq, bq.relations, cap)
    basis = {}
    expansions = {}
    for key, plist in paths.items():
        n = len(plist)
        span = _IncrementalSpan(ring, n)
        ideal_cols = []
        for vec in gens[key]:
            col = [ring.zero()] * n
            for idx, c in vec.items():
                col[idx] = ring.from_fraction(c)
            span.insert(col)
            ideal_cols.append(col)
        for i, p in enumerate(plist):
            if p.length >= L:
                col = [ring.zero()] * n
                col[i] = ring.one()
                span.insert(col)
                ideal_cols.append(col)
        chosen = []
        chosen_cols = []
        for i, p in enumerate(plist):
            if p.length >= L:
                continue
            col = [ring.zero()] * n
            col[i] = ring.one()
            if span.insert(col):
                chosen.append((i, p))
                chosen_cols.append(col)
        basis[key] = [p for _, p in chosen]
        # expansion of every short path: solve against [ideal | basis]
        exp = {}
        short = [(i, p) for i, p in enumerate(plist) if p.length < L]
        if short:
            all_cols = ideal_cols + chosen_cols
            width = len(all_cols)
            mat = Mat.from_rows(ring, [[all_cols[j][r] for j in range(width)] for r in range(n)])
            rhs_cols = []
            for i, _ in short:
                col = [ring.zero()] * n
                col[i] = ring.one()
                rhs_cols.append(col)
            rhs = Mat.from_rows(ring, [[rc[r] for rc in rhs_cols] for r in range(n)])
            sol = solve_many(mat, rhs)
            if sol is None:
                raise NotAdmissible("path window too small for reduction")
            nb = len(chosen)
            for col_idx, (i, p) in enumerate(short):
                coeffs = tuple(sol.get(len(ideal_cols) + k, col_idx) for k in range(nb))
                exp[p.arrows] = coeffs
        expansions[key] = exp
    return AlgebraBasis(bq, ring, basis, expansions, cap)


def projective(bas: AlgebraBasis, x: str, ring=None) -> Representation:
    """Indecomposable projective generated at x: spaces are basis paths out
    of x, arrows act by left composition followed by reduction."""
    ring = ring or bas.ring
    _check_ring(bas, ring)
    bq = bas.bq
    dims = {y: bas.pair_dim(x, y) for y in bq.quiver.vertices}
    mats = {}
    for a in bq.quiver.arrows:
        src_paths = bas.basis[(x, a.source)]
        tgt_paths = bas.basis[(x, a.target)]
        index = {p.arrows: i for i, p in enumerate(tgt_paths)}
        cols = []
        for sigma in src_paths:
            word = Path.of(bq.quiver, (a.name,)).compose(sigma) if sigma.arrows else Path.of(bq.quiver, (a.name,))
            col = [ring.zero()] * len(tgt_paths)
            for coeff, bpath in bas.reduce_path(word):
                col[index[bpath.arrows]] = _into(ring, bas.ring, coeff)
            cols.append(col)
        mats[a.name] = Mat.from_rows(ring, [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt_paths))]) if src_paths else Mat.zero(ring, len(tgt_paths), 0)
    return Representation.build(bq, ring, dims, mats)


def simple(bas: AlgebraBasis, x: str, ring=None) -> Representation:
    ring = ring or bas.ring
    bq = bas.bq
    return Representation.build(bq, ring, DimensionVector.unit(bq.quiver, x))


def dual_module(m: Representation) -> Representation:
    """Dual over the opposite algebra: same dimensions, transposed action."""
    op = m.bq.opposite()
    mats = {a.name: m.mat(a.name).transpose() for a in m.bq.quiver.arrows}
    return Representation.build(op, m.ring, dict(zip(op.quiver.vertices, m.dim.values)), mats)


def injective(bas: AlgebraBasis, x: str, ring=None) -> Representation:
    """Injective envelope of the simple at x: dual of the opposite
    projective at x."""
    ring = ring or bas.ring
    p_op = projective(bas.opposite(), x, ring)
    return dual_module(p_op)


def standard_zoo(bas: AlgebraBasis, ring=None) -> dict:
    """Simples, projectives, and injectives, keyed by short names."""
    ring = ring or bas.ring
    out = {}
    for x in bas.bq.quiver.vertices:
        out[f"S({x})"] = simple(bas, x, ring)
        out[f"P({x})"] = projective(bas, x, ring)
        out[f"I({x})"] = injective(bas, x, ring)
    return out


def projective_hom_from_element(bas: AlgebraBasis, a: str, b: str, terms, ring=None) -> Morphism:
    """Morphism P_a -> P_b determined by sending the generator to an
    algebra element (list of (coefficient, path b -> a))."""
    ring = ring or bas.ring
    pa = projective(bas, a, ring)
    pb = projective(bas, b, ring)
    bq = bas.bq
    mats = {}
    for z in bq.quiver.vertices:
        rows = bas.pair_dim(b, z)
        cols_paths = bas.basis[(a, z)]
        index = {p.arrows: i for i, p in enumerate(bas.basis[(b, z)])}
        cols = []
        for u in cols_paths:
            col = [ring.zero()] * rows
            for coeff, w in terms:
                if w.source != b or w.target != a:
                    raise ShapeError("element term is not a path b -> a")
                word = u.compose(w)
                for c2, bpath in bas.reduce_path(word):
                    c = ring.mul(_into(ring, bas.ring, coeff), _into(ring, bas.ring, c2))
                    col[index[bpath.arrows]] = ring.add(col[index[bpath.arrows]], c)
            cols.append(col)
        mats[z] = Mat.from_rows(ring, [[cols[j][i] for j in range(len(cols))] for i in range(rows)]) if cols else Mat.zero(ring, rows, 0)
    return Morphism.build(pa, pb, mats)


def _check_ring(bas: AlgebraBasis, ring):
    if ring != bas.ring:
        # expansions were eliminated over bas.ring; reuse is only sound for
        # the same field
        raise ShapeError("algebra basis was built over a different field")


def _into(ring, source_ring, value):
    if ring == source_ring:
        return value
    if isinstance(value, Fraction):
        return ring.from_fraction(value)
    raise ShapeError("cannot convert basis coefficient between fields")
