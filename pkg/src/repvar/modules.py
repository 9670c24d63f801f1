"""Representations of a bound quiver over an exact field or truncated ring.

A representation assigns to each vertex a free module of finite rank and
to each arrow a matrix of shape d(target) x d(source); it is valid when
every relation evaluates to zero.  Everything is immutable; random
generation threads an explicit seed, never a global RNG.

Module text format::

    module NAME over (Q | GF P | GF P / t^N) on QUIVERNAME
    dim V1=D1 V2=D2 ...
    mat ARROW = [[a,b];[c,d]]

with entries integers, fractions ``p/q``, or truncated polynomials
``c0+c1*t+c2*t^2``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    GenerationFailed,
    NotAField,
    ParseError,
    QuiverMismatch,
    ShapeError,
    UnsupportedField,
)
from .exact import (
    Mat,
    PrimeField,
    QQ,
    Rationals,
    TruncatedRing,
    kernel_basis,
    rank,
    solve_many,
)
from .gfpoly import charpoly_gf, factor_poly, poly_apply_matrix
from .quiver import BoundQuiver, Path, Quiver


@dataclass(frozen=True)
class DimensionVector:
    """Vertexwise ranks, aligned with the quiver's vertex order."""

    quiver: Quiver
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.quiver.vertices):
            raise ShapeError("dimension vector length mismatch")
        if any(v < 0 for v in self.values):
            raise ShapeError("negative dimension")

    @staticmethod
    def of(quiver: Quiver, data) -> "DimensionVector":
        if isinstance(data, dict):
            vals = tuple(int(data.get(v, 0)) for v in quiver.vertices)
        else:
            vals = tuple(int(x) for x in data)
        return DimensionVector(quiver, vals)

    @staticmethod
    def zero(quiver: Quiver) -> "DimensionVector":
        return DimensionVector(quiver, (0,) * len(quiver.vertices))

    @staticmethod
    def unit(quiver: Quiver, x: str) -> "DimensionVector":
        i = quiver.vertex_index(x)
        return DimensionVector(quiver, tuple(1 if j == i else 0 for j in range(len(quiver.vertices))))

    def at(self, x: str) -> int:
        return self.values[self.quiver.vertex_index(x)]

    def __add__(self, other: "DimensionVector") -> "DimensionVector":
        self._check(other)
        return DimensionVector(self.quiver, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "DimensionVector") -> "DimensionVector":
        self._check(other)
        return DimensionVector(self.quiver, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c: int) -> "DimensionVector":
        return DimensionVector(self.quiver, tuple(c * a for a in self.values))

    def dominates(self, other: "DimensionVector") -> bool:
        return all(a >= b for a, b in zip(self.values, other.values))

    def total(self) -> int:
        return sum(self.values)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def _check(self, other):
        if other.quiver != self.quiver:
            raise QuiverMismatch("dimension vectors over different quivers")


@dataclass(frozen=True)
class Representation:
    """Arrow-indexed matrices of shape d(target) x d(source)."""

    bq: BoundQuiver
    ring: object
    dim: DimensionVector
    mats: tuple[Mat, ...]

    @staticmethod
    def build(bq: BoundQuiver, ring, dims, mats_by_name=None) -> "Representation":
        dim = dims if isinstance(dims, DimensionVector) else DimensionVector.of(bq.quiver, dims)
        mats_by_name = mats_by_name or {}
        mats = []
        for a in bq.quiver.arrows:
            shape = (dim.at(a.target), dim.at(a.source))
            m = mats_by_name.get(a.name)
            if m is None:
                m = Mat.zero(ring, *shape)
            if (m.rows, m.cols) != shape:
                raise ShapeError(f"matrix for {a.name} must be {shape[0]}x{shape[1]}")
            if m.ring != ring:
                raise ShapeError(f"matrix for {a.name} is over the wrong ring")
            mats.append(m)
        return Representation(bq, ring, dim, tuple(mats))

    @staticmethod
    def zero_module(bq: BoundQuiver, ring) -> "Representation":
        return Representation.build(bq, ring, DimensionVector.zero(bq.quiver))

    def mat(self, arrow_name: str) -> Mat:
        for a, m in zip(self.bq.quiver.arrows, self.mats):
            if a.name == arrow_name:
                return m
        raise ShapeError(f"no arrow named {arrow_name}")

    def total_dim(self) -> int:
        return self.dim.total()

    def same_setting(self, other: "Representation"):
        if self.bq != other.bq or self.ring != other.ring:
            raise QuiverMismatch("representations over different quivers or rings")


def evaluate_path(m: Representation, path: Path) -> Mat:
    """Product of the arrow matrices in storage order (first arrow applied
    last); a trivial path evaluates to the identity at its anchor."""
    if not path.arrows:
        return Mat.identity(m.ring, m.dim.at(path.source))
    acc = None
    for name in path.arrows:
        block = m.mat(name)
        acc = block if acc is None else acc @ block
    return acc


def evaluate_relation(m: Representation, relation) -> Mat:
    acc = None
    for coeff, path in relation.terms:
        term = evaluate_path(m, path).scale(m.ring.from_fraction(coeff))
        acc = term if acc is None else acc + term
    return acc


def validate(m: Representation) -> bool:
    """True when every relation of the bound quiver vanishes on ``m``."""
    return all(evaluate_relation(m, rel).is_zero() for rel in m.bq.relations)


def direct_sum(m: Representation, n: Representation) -> Representation:
    """Block-diagonal sum with ``m``'s coordinates first."""
    m.same_setting(n)
    dims = m.dim + n.dim
    mats = {}
    for a in m.bq.quiver.arrows:
        am, an = m.mat(a.name), n.mat(a.name)
        top = am.hstack(Mat.zero(m.ring, am.rows, an.cols))
        bot = Mat.zero(m.ring, an.rows, am.cols).hstack(an)
        mats[a.name] = top.vstack(bot)
    return Representation.build(m.bq, m.ring, dims, mats)


@dataclass(frozen=True)
class Morphism:
    """Vertex-indexed matrices intertwining two representations."""

    source: Representation
    target: Representation
    mats: tuple[Mat, ...]

    @staticmethod
    def build(source: Representation, target: Representation, mats_by_vertex=None) -> "Morphism":
        source.same_setting(target)
        mats_by_vertex = mats_by_vertex or {}
        out = []
        for v in source.bq.quiver.vertices:
            shape = (target.dim.at(v), source.dim.at(v))
            m = mats_by_vertex.get(v)
            if m is None:
                m = Mat.zero(source.ring, *shape)
            if (m.rows, m.cols) != shape:
                raise ShapeError(f"component at {v} must be {shape[0]}x{shape[1]}")
            out.append(m)
        return Morphism(source, target, tuple(out))

    def at(self, vertex: str) -> Mat:
        return self.mats[self.source.bq.quiver.vertex_index(vertex)]

    def is_valid(self) -> bool:
        for a in self.source.bq.quiver.arrows:
            lhs = self.at(a.target) @ self.source.mat(a.name)
            rhs = self.target.mat(a.name) @ self.at(a.source)
            if not lhs.equals(rhs):
                return False
        return True

    def compose(self, other: "Morphism") -> "Morphism":
        """``self`` after ``other``."""
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ShapeError("morphisms do not compose")
        return Morphism(other.source, self.target, tuple(a @ b for a, b in zip(self.mats, other.mats)))

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a + b for a, b in zip(self.mats, other.mats)))

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, tuple(a - b for a, b in zip(self.mats, other.mats)))

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, tuple(m.scale(c) for m in self.mats))

    def flatten(self):
        out = []
        for m in self.mats:
            out.extend(m.data)
        return out

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)


def morphism_from_flat(source: Representation, target: Representation, flat) -> Morphism:
    mats = []
    pos = 0
    ring = source.ring
    for v in source.bq.quiver.vertices:
        r, c = target.dim.at(v), source.dim.at(v)
        mats.append(Mat(ring, r, c, tuple(flat[pos : pos + r * c])))
        pos += r * c
    return Morphism(source, target, tuple(mats))


def identity_morphism(m: Representation) -> Morphism:
    return Morphism(m, m, tuple(Mat.identity(m.ring, d) for d in m.dim.values))


# ---------------------------------------------------------------------------
# endomorphism algebras, decomposition, isomorphism


@dataclass(frozen=True)
class EndAlgebra:
    module: Representation
    basis: tuple[Morphism, ...]
    structure: tuple  # structure[i][j] = coefficients of basis[i] o basis[j]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def end_algebra(m: Representation) -> EndAlgebra:
    """Endomorphism basis plus structure constants; asserts closure and
    that the identity lies in the span."""
    from .homology import hom_basis  # deferred: homology builds the solver

    basis = hom_basis(m, m).morphisms
    ring = m.ring
    if not basis:
        if m.total_dim():
            raise ShapeError("nonzero module with empty endomorphism space")
        return EndAlgebra(m, (), ())
    cols = Mat.from_rows(ring, list(map(list, zip(*[f.flatten() for f in basis]))))
    ident = identity_morphism(m)
    if solve_many(cols, Mat.column(ring, ident.flatten())) is None:
        raise ShapeError("identity not in endomorphism span")
    structure = []
    for f in basis:
        row = []
        for g in basis:
            comp = f.compose(g)
            coeffs = solve_many(cols, Mat.column(ring, comp.flatten()))
            if coeffs is None:
                raise ShapeError("endomorphism span not closed under composition")
            row.append(tuple(coeffs.data))
        structure.append(tuple(row))
    return EndAlgebra(m, tuple(basis), tuple(structure))


def _random_endo(basis, ring, rng: random.Random) -> Morphism:
    p = ring.p
    coeffs = [rng.randrange(p) for _ in basis]
    acc = basis[0].scale(coeffs[0])
    for c, f in zip(coeffs[1:], basis[1:]):
        acc = acc + f.scale(c)
    return acc


def _sub_representation(m: Representation, vertex_cols: dict) -> tuple[Representation, Morphism]:
    """Representation on given per-vertex column spans, with its inclusion.

    ``vertex_cols[v]`` is a Mat whose columns are independent vectors
    spanning an arrow-stable subspace.
    """
    dims = {v: vertex_cols[v].cols for v in m.bq.quiver.vertices}
    mats = {}
    for a in m.bq.quiver.arrows:
        src, tgt = vertex_cols[a.source], vertex_cols[a.target]
        mapped = m.mat(a.name) @ src
        sol = solve_many(tgt, mapped)
        if sol is None:
            raise ShapeError("subspace is not arrow-stable")
        mats[a.name] = sol
    sub = Representation.build(m.bq, m.ring, dims, mats)
    incl = Morphism.build(sub, m, {v: vertex_cols[v] for v in m.bq.quiver.vertices})
    return sub, incl


def _split_by_endo(m: Representation, phi: Morphism, rng: random.Random):
    """Generalized-eigenspace split along a module endomorphism; returns a
    list of >= 2 summands or None when the characteristic polynomial is
    primary."""
    p = m.ring.p
    f = [1]
    from .gfpoly import poly_mul

    for block in phi.mats:
        if block.rows:
            f = poly_mul(f, charpoly_gf(block.to_rows(), p), p)
    factors = factor_poly(f, p, rng)
    if len(factors) < 2:
        return None
    pieces = []
    for irr, mult in factors:
        power = [1]
        for _ in range(mult):
            power = poly_mul(power, irr, p)
        cols = {}
        for v, block in zip(m.bq.quiver.vertices, phi.mats):
            if block.rows == 0:
                cols[v] = Mat.zero(m.ring, 0, 0)
                continue
            evaluated = poly_apply_matrix(power, block.to_rows(), p)
            ker = kernel_basis(Mat.from_rows(m.ring, evaluated))
            if ker:
                stacked = ker[0]
                for k in ker[1:]:
                    stacked = stacked.hstack(k)
            else:
                stacked = Mat.zero(m.ring, block.rows, 0)
            cols[v] = stacked
        sub, _ = _sub_representation(m, cols)
        if sub.total_dim():
            pieces.append(sub)
    if len(pieces) < 2:
        return None
    return pieces


def _nilpotent_or_invertible(phi: Morphism) -> bool:
    d = phi.source.total_dim()
    if all(rank(b) == b.rows == b.cols for b in phi.mats):
        return True
    power = phi
    steps = max(1, d.bit_length())
    for _ in range(steps):
        power = power.compose(power)
    return power.is_zero()


def _is_indecomposable_certified(m: Representation, basis, rng: random.Random, tries: int) -> bool:
    """Procedural locality check: no random endomorphism splits, and every
    probed endomorphism is nilpotent or invertible (so no nontrivial
    idempotent was found)."""
    if len(basis) == 1:
        return True
    probes = list(basis) + [_random_endo(basis, m.ring, rng) for _ in range(tries)]
    return all(_nilpotent_or_invertible(f) for f in probes)


def decompose(m: Representation, seed: int = 0, tries: int = 24):
    """Indecomposable summands with multiplicities over a finite field.

    Randomized splitting along generalized eigenspaces of random
    endomorphisms; repeats until every piece passes the locality probe.
    Deterministic for a fixed seed.  Refused over Q and truncated rings.
    """
    from .homology import hom_basis

    if not isinstance(m.ring, PrimeField):
        raise UnsupportedField("decompose needs a finite prime field; over Q only iso is offered")
    rng = random.Random((seed, "decompose", m.dim.values))
    out: list[Representation] = []

    def rec(x: Representation, depth: int):
        if x.total_dim() == 0:
            return
        basis = hom_basis(x, x).morphisms
        if len(basis) == 1:
            out.append(x)
            return
        for _ in range(tries):
            phi = _random_endo(basis, x.ring, rng)
            pieces = _split_by_endo(x, phi, rng)
            if pieces:
                for piece in pieces:
                    rec(piece, depth + 1)
                return
        if _is_indecomposable_certified(x, basis, rng, tries):
            out.append(x)
            return
        raise GenerationFailed("could not certify a summand as indecomposable")

    rec(m, 0)
    groups: list[tuple[Representation, int]] = []
    for piece in out:
        for i, (rep, mult) in enumerate(groups):
            if piece.dim == rep.dim and iso(piece, rep, seed=seed):
                groups[i] = (rep, mult + 1)
                break
        else:
            groups.append((piece, 1))
    groups.sort(key=lambda t: (t[0].total_dim(), t[0].dim.values))
    return groups


def iso(m: Representation, n: Representation, seed: int = 0, tries: int = 64) -> bool:
    """Isomorphism test.

    Over GF(p): random combinations of a Hom basis are tested for
    vertexwise invertibility (failure probability below (D/p)**tries when
    an isomorphism exists).  Over Q: the determinant polynomial of the
    Hom pencil is tested for nonvanishing exactly, per vertex, on an
    integer grid large enough for the degree (finite-grid polynomial
    identity testing); this decides existence exactly.
    """
    from .homology import hom_basis

    m.same_setting(n)
    if m.dim != n.dim:
        return False
    if m.total_dim() == 0:
        return True
    basis = hom_basis(m, n).morphisms
    if not basis:
        return False
    ring = m.ring
    if isinstance(ring, PrimeField):
        rng = random.Random((seed, "iso", m.dim.values))
        for _ in range(tries):
            f = _random_endo(basis, ring, rng)
            if all(b.rows == rank(b) for b in f.mats):
                return True
        return False
    if isinstance(ring, Rationals):
        return _iso_rational(m, n, basis)
    raise UnsupportedField("iso is offered over fields only")


def _iso_rational(m, n, basis) -> bool:
    mvars = len(basis)
    budget = 0
    for d in m.dim.values:
        if d:
            budget += (d + 1) ** mvars
    if budget > 500_000:
        raise UnsupportedField("exact rational iso test exceeds the evaluation budget")
    for vi, v in enumerate(m.bq.quiver.vertices):
        d = m.dim.at(v)
        if d == 0:
            continue
        blocks = [f.mats[vi] for f in basis]
        found = False
        for point in itertools.product(range(d + 1), repeat=mvars):
            acc = Mat.zero(QQ, d, d)
            for c, b in zip(point, blocks):
                if c:
                    acc = acc + b.scale(Fraction(c))
            if rank(acc) == d:
                found = True
                break
        if not found:
            # degree of each vertex determinant is at most d in every
            # variable, so vanishing on the whole grid forces the zero
            # polynomial: no combination is invertible at this vertex
            return False
    return True


# ---------------------------------------------------------------------------
# random generation


def random_module(
    bq: BoundQuiver,
    d: DimensionVector,
    seed: int,
    ring=None,
    zoo=None,
    bas=None,
) -> Representation:
    """A valid representation of dimension vector d: a seeded choice of
    known modules (simples, projectives, injectives, caller extras) glued
    along random extension cocycles.  Samples a constructible family, not
    necessarily every component."""
    from . import algebra
    from .homology import cocycles, middle_term

    if ring is None:
        ring = PrimeField(101)
    if not ring.is_field:
        raise NotAField("random_module needs field coefficients")
    if not isinstance(d, DimensionVector):
        d = DimensionVector.of(bq.quiver, d)
    if d.is_zero():
        return Representation.zero_module(bq, ring)
    rng = random.Random((seed, "random_module", d.values))
    if zoo is None:
        if bas is None:
            bas = algebra.build(bq, ring)
        zoo = list(algebra.standard_zoo(bas, ring).values())
    zoo = [z for z in zoo if not z.dim.is_zero()]
    summands = []
    residual = d
    while not residual.is_zero():
        candidates = [z for z in zoo if residual.dominates(z.dim)]
        if not candidates:
            raise GenerationFailed(f"no zoo module fits remaining {residual.values}")
        pick = rng.choice(candidates)
        summands.append(pick)
        residual = residual - pick.dim
    rng.shuffle(summands)
    acc = summands[0]
    for nxt in summands[1:]:
        if rng.random() < 0.5:
            sub, quot = acc, nxt
        else:
            sub, quot = nxt, acc
        space = cocycles(quot, sub)
        if space.z_basis:
            z = space.zero()
            for zc in space.z_basis:
                c = rng.randrange(ring.p) if isinstance(ring, PrimeField) else ring.from_int(rng.randrange(-3, 4))
                z = z.add(zc.scale(c))
            acc = middle_term(z)[0]
        else:
            acc = direct_sum(sub, quot)
    if acc.dim != d:
        raise GenerationFailed("glued module has wrong dimension vector")
    return acc


# ---------------------------------------------------------------------------
# text format


def parse_ring(text: str):
    toks = text.split()
    if toks == ["Q"]:
        return QQ
    if len(toks) >= 2 and toks[0] == "GF":
        rest = " ".join(toks[1:])
        if "/" in rest:
            left, right = rest.split("/", 1)
            p = int(left.strip())
            right = right.strip()
            if not right.startswith("t^"):
                raise ParseError(f"bad truncation spec {right!r}")
            return TruncatedRing(PrimeField(p), int(right[2:]))
        return PrimeField(int(rest))
    raise ParseError(f"unknown ring {text!r}")


def ring_spec(ring) -> str:
    if isinstance(ring, Rationals):
        return "Q"
    if isinstance(ring, PrimeField):
        return f"GF {ring.p}"
    if isinstance(ring, TruncatedRing) and isinstance(ring.base, PrimeField):
        return f"GF {ring.base.p} / t^{ring.order}"
    if isinstance(ring, TruncatedRing) and isinstance(ring.base, Rationals):
        return f"Q / t^{ring.order}"
    raise ParseError(f"cannot serialize ring {ring!r}")


def _parse_scalar(tok: str, ring, lineno=None):
    tok = tok.strip()
    if isinstance(ring, TruncatedRing):
        coeffs = [ring.base.zero()] * ring.order
        for term in tok.replace("+-", "+ -").split("+"):
            term = term.strip()
            if not term:
                continue
            if "t" in term:
                if "*" in term:
                    c_tok, t_tok = term.split("*", 1)
                else:
                    c_tok, t_tok = ("1", term) if not term.startswith("-") else ("-1", term[1:])
                t_tok = t_tok.strip()
                power = 1 if t_tok == "t" else int(t_tok[2:])
                c = Fraction(c_tok.strip())
            else:
                power, c = 0, Fraction(term)
            if power >= ring.order:
                raise ParseError(f"t-power {power} exceeds truncation", lineno)
            coeffs[power] = ring.base.add(coeffs[power], ring.base.from_fraction(c))
        return tuple(coeffs)
    try:
        return ring.from_fraction(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad scalar {tok!r}", lineno) from None


def _split_rows(body: str, lineno):
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("matrix must be bracketed", lineno)
    inner = body[1:-1].strip()
    if not inner:
        return []
    rows = []
    depth = 0
    cur = ""
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                cur = ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                rows.append(cur)
                continue
        if depth >= 1:
            cur += ch
        elif ch not in ",; \t":
            raise ParseError(f"unexpected {ch!r} between matrix rows", lineno)
    if depth != 0:
        raise ParseError("unbalanced brackets in matrix", lineno)
    return rows


def parse_module(text: str, bq_by_name) -> tuple[str, Representation]:
    """Parse a module file; ``bq_by_name`` maps quiver names to BoundQuiver."""
    name = ring = bq = None
    dims = None
    mats = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword, rest = parts[0], parts[1] if len(parts) > 1 else ""
        if keyword == "module":
            if " over " not in rest or " on " not in rest:
                raise ParseError("expected 'module NAME over RING on QUIVER'", lineno)
            name, tail = rest.split(" over ", 1)
            ring_text, quiver_name = tail.rsplit(" on ", 1)
            name = name.strip()
            ring = parse_ring(ring_text.strip())
            quiver_name = quiver_name.strip()
            if quiver_name not in bq_by_name:
                raise ParseError(f"unknown quiver {quiver_name!r}", lineno)
            bq = bq_by_name[quiver_name]
        elif keyword == "dim":
            if bq is None:
                raise ParseError("dim before module header", lineno)
            data = {}
            for tok in rest.split():
                if "=" not in tok:
                    raise ParseError(f"bad dim token {tok!r}", lineno)
                v, val = tok.split("=", 1)
                data[v] = int(val)
            dims = DimensionVector.of(bq.quiver, data)
        elif keyword == "mat":
            if bq is None or dims is None:
                raise ParseError("mat before module/dim header", lineno)
            if "=" not in rest:
                raise ParseError("expected 'mat ARROW = [[...]]'", lineno)
            arrow_name, body = rest.split("=", 1)
            arrow_name = arrow_name.strip()
            arr = bq.quiver.arrow(arrow_name)
            rows_text = _split_rows(body, lineno)
            shape = (dims.at(arr.target), dims.at(arr.source))
            if shape[0] * shape[1] == 0:
                mats[arrow_name] = Mat.zero(ring, *shape)
                continue
            rows = []
            for row_text in rows_text:
                rows.append([_parse_scalar(tok, ring, lineno) for tok in row_text.split(",") if tok.strip()])
            if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
                raise ParseError(f"matrix for {arrow_name} must be {shape[0]}x{shape[1]}", lineno)
            mats[arrow_name] = Mat.from_rows(ring, rows)
        else:
            raise ParseError(f"unknown declaration {keyword!r}", lineno)
    if name is None or dims is None:
        raise ParseError("missing module/dim header")
    return name, Representation.build(bq, ring, dims, mats)


def emit_module(name: str, m: Representation, quiver_name: str) -> str:
    lines = [f"module {name} over {ring_spec(m.ring)} on {quiver_name}"]
    lines.append("dim " + " ".join(f"{v}={m.dim.at(v)}" for v in m.bq.quiver.vertices))
    for a in m.bq.quiver.arrows:
        block = m.mat(a.name)
        if block.rows * block.cols == 0:
            lines.append(f"mat {a.name} = []")
            continue
        rows = []
        for i in range(block.rows):
            rows.append("[" + ",".join(m.ring.scalar_str(x) for x in block.row_list(i)) + "]")
        lines.append(f"mat {a.name} = [" + ";".join(rows) + "]")
    return "\n".join(lines) + "\n"
