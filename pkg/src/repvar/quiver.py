"""Quivers, paths, relations, and bound-quiver validation.

A bound quiver is a finite quiver plus a set of relations (linear
combinations of parallel paths of length >= 2) together with a nilpotency
bound L: every path of length L must lie in the two-sided ideal generated
by the relations.  Admissibility is certified by a finite span
computation; for acyclic quivers (our main case) the check is complete.
All objects are frozen after construction and freely shareable.

Text format (one declaration per line, ``#`` starts a comment)::

    quiver NAME
    vertex V
    arrow A SRC TGT
    relation C1*P1 + C2*P2 + ...
    bound L

where a path ``P`` is dot-separated arrow names read right-to-left (the
rightmost arrow is traversed first) and coefficients are integers or
fractions ``p/q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, ShapeError, UnknownVertex
from .exact import Mat, QQ, column_space_pivots, in_column_span, rank


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """Finite quiver: ordered vertex names and arrows with endpoints."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ShapeError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ShapeError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise UnknownVertex(f"arrow {a.name}: endpoint not declared")

    def vertex_index(self, x: str) -> int:
        try:
            return self.vertices.index(x)
        except ValueError:
            raise UnknownVertex(x) from None

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownVertex(f"arrow {name} not declared")

    def arrows_from(self, x: str):
        return [a for a in self.arrows if a.source == x]

    def arrows_into(self, x: str):
        return [a for a in self.arrows if a.target == x]

    def is_acyclic(self) -> bool:
        color = {v: 0 for v in self.vertices}
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a.target)

        def visit(v):
            color[v] = 1
            for w in out[v]:
                if color[w] == 1:
                    return False
                if color[w] == 0 and not visit(w):
                    return False
            color[v] = 2
            return True

        return all(color[v] or visit(v) for v in self.vertices)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


@dataclass(frozen=True)
class Path:
    """A composable arrow word.  ``arrows[0]`` is the arrow applied last,
    so evaluating on a representation multiplies the matrices in storage
    order.  Length-zero paths carry an anchoring vertex."""

    arrows: tuple[str, ...]
    source: str
    target: str

    @staticmethod
    def trivial(x: str) -> "Path":
        return Path((), x, x)

    @staticmethod
    def of(quiver: Quiver, arrow_names) -> "Path":
        names = tuple(arrow_names)
        if not names:
            raise ShapeError("use Path.trivial for length-zero paths")
        arrs = [quiver.arrow(n) for n in names]
        for left, right in zip(arrs, arrs[1:]):
            if left.source != right.target:
                raise ShapeError(f"arrows {left.name}, {right.name} do not compose")
        return Path(names, arrs[-1].source, arrs[0].target)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def compose(self, other: "Path") -> "Path":
        """``self`` after ``other``; needs source(self) == target(other)."""
        if self.source != other.target:
            raise ShapeError("paths do not compose")
        if not self.arrows:
            return other
        if not other.arrows:
            return self
        return Path(self.arrows + other.arrows, other.source, self.target)

    def label(self) -> str:
        return ".".join(self.arrows) if self.arrows else f"e_{self.source}"


@dataclass(frozen=True)
class Relation:
    """k-linear combination of parallel paths of length >= 2; coefficients
    are stored as exact rationals and mapped into the working ring at
    evaluation time."""

    terms: tuple[tuple[Fraction, Path], ...]

    def __post_init__(self):
        if not self.terms:
            raise ShapeError("empty relation")

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target

    def issues(self) -> list[str]:
        out = []
        s, t = self.source, self.target
        for coeff, path in self.terms:
            if path.source != s or path.target != t:
                out.append(f"path {path.label()} is not parallel to the first term")
            if path.length < 2:
                out.append(f"path {path.label()} has length {path.length} < 2")
        if all(c == 0 for c, _ in self.terms):
            out.append("all coefficients vanish")
        return out

    def label(self) -> str:
        return " + ".join(f"{c}*{p.label()}" for c, p in self.terms)


@dataclass(frozen=True)
class BoundQuiver:
    """Quiver plus relations plus the nilpotency bound L."""

    quiver: Quiver
    relations: tuple[Relation, ...]
    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ShapeError("nilpotency bound must be >= 1")

    def is_triangular(self) -> bool:
        return self.quiver.is_acyclic()

    def opposite(self) -> "BoundQuiver":
        op = self.quiver.opposite()
        rels = []
        for rel in self.relations:
            terms = []
            for coeff, path in rel.terms:
                rev = Path(tuple(reversed(path.arrows)), path.target, path.source)
                terms.append((coeff, rev))
            rels.append(Relation(tuple(terms)))
        return BoundQuiver(op, tuple(rels), self.bound)


def enumerate_paths(bq: BoundQuiver, x: str, y: str, max_len: int) -> list[Path]:
    """All paths x -> y of length <= max_len, ordered by (length, arrow names)."""
    if max_len < 0:
        raise ShapeError("max_len must be >= 0")
    quiver = bq.quiver if isinstance(bq, BoundQuiver) else bq
    quiver.vertex_index(x)
    quiver.vertex_index(y)
    out = []
    if x == y:
        out.append(Path.trivial(x))
    frontier = [Path.trivial(x)]
    for _ in range(max_len):
        nxt = []
        for path in frontier:
            for a in quiver.arrows_from(path.target):
                ext = Path((a.name,) + path.arrows if path.arrows else (a.name,), path.source, a.target)
                nxt.append(ext)
                if a.target == y:
                    out.append(ext)
        frontier = nxt
        if not frontier:
            break
    out.sort(key=lambda p: (p.length, p.arrows))
    return out


def _pair_path_index(bq: BoundQuiver, cap: int):
    """Per vertex pair: ordered list of paths of length <= cap and a lookup."""
    paths = {}
    lookup = {}
    for x in bq.quiver.vertices:
        for y in bq.quiver.vertices:
            plist = enumerate_paths(bq, x, y, cap)
            paths[(x, y)] = plist
            for i, p in enumerate(plist):
                lookup[(x, y, p.arrows)] = i
    return paths, lookup


def _ideal_generators(bq: BoundQuiver, relations, cap: int):
    """Vectors u*rho*v (components of length <= cap) per vertex pair.

    Sound for membership certification; complete when the quiver is
    acyclic or all relations are length-homogeneous.
    """
    paths, lookup = _pair_path_index(bq, cap)
    gens = {key: [] for key in paths}
    for rel in relations:
        max_len = max(p.length for _, p in rel.terms)
        for x in bq.quiver.vertices:
            for v in paths[(x, rel.source)]:
                budget = cap - v.length - max_len
                if budget < 0:
                    continue
                for y in bq.quiver.vertices:
                    for u in paths[(rel.target, y)]:
                        if u.length > budget:
                            continue
                        vec = {}
                        ok = True
                        for coeff, sigma in rel.terms:
                            word = u.compose(sigma).compose(v)
                            idx = lookup.get((x, y, word.arrows))
                            if idx is None:
                                ok = False
                                break
                            vec[idx] = vec.get(idx, Fraction(0)) + coeff
                        if ok and any(c != 0 for c in vec.values()):
                            gens[(x, y)].append(vec)
    return paths, gens


@dataclass(frozen=True)
class AdmissibilityCertificate:
    admissible: bool
    per_pair: dict = field(default_factory=dict)  # "x->y" -> {"paths": n, "covered": bool, "span": r}


def is_admissible(bq: BoundQuiver, bound: int | None = None, ring=QQ):
    """Do all paths of length exactly L lie in the relation ideal?

    Returns (bool, certificate with per-pair span dimensions).  Works in
    the span of ideal elements with components of length <= L plus the
    longest relation word; for acyclic quivers this window is exhaustive.
    """
    L = bq.bound if bound is None else bound
    max_rel = max((max(p.length for _, p in rel.terms) for rel in bq.relations), default=0)
    cap = L + max_rel
    if bq.quiver.is_acyclic():
        cap = max(cap, len(bq.quiver.vertices))
    paths, gens = _ideal_generators(bq, bq.relations, cap)
    per_pair = {}
    ok_all = True
    for (x, y), plist in paths.items():
        targets = [i for i, p in enumerate(plist) if p.length == L]
        if not targets:
            continue
        n = len(plist)
        cols = []
        for vec in gens[(x, y)]:
            col = [ring.zero()] * n
            for idx, c in vec.items():
                col[idx] = ring.from_fraction(c)
            cols.append(col)
        span = Mat.from_rows(ring, list(map(list, zip(*cols)))) if cols else Mat.zero(ring, n, 0)
        span_rank = rank(span) if cols else 0
        covered = True
        for i in targets:
            v = [ring.zero()] * n
            v[i] = ring.one()
            if not cols or not in_column_span(span, Mat.column(ring, v)):
                covered = False
                break
        per_pair[f"{x}->{y}"] = {"paths_at_bound": len(targets), "span_rank": span_rank, "covered": covered}
        ok_all = ok_all and covered
    return ok_all, AdmissibilityCertificate(ok_all, per_pair)


@dataclass(frozen=True)
class ValidationReport:
    relation_issues: tuple
    admissible: bool
    admissibility: AdmissibilityCertificate
    triangular: bool
    minimality_warnings: tuple

    @property
    def valid(self) -> bool:
        return self.admissible and not self.relation_issues

    def to_dict(self) -> dict:
        return {
            "relation_issues": list(self.relation_issues),
            "admissible": self.admissible,
            "admissibility_per_pair": dict(self.admissibility.per_pair),
            "triangular": self.triangular,
            "minimality_warnings": list(self.minimality_warnings),
            "valid": self.valid,
        }


def validate(bq: BoundQuiver, ring=QQ) -> ValidationReport:
    """Full structural report: relation well-formedness, admissibility at
    the declared bound, acyclicity, and a minimality lint (a warning when
    some relation already lies in the ideal spanned by the others)."""
    issues = []
    for rel in bq.relations:
        for msg in rel.issues():
            issues.append(f"relation {rel.label()}: {msg}")
    admissible, cert = is_admissible(bq, ring=ring)
    warnings = []
    for k, rel in enumerate(bq.relations):
        others = tuple(r for i, r in enumerate(bq.relations) if i != k)
        if _relation_in_ideal(bq, rel, others, ring):
            warnings.append(f"relation {rel.label()} lies in the ideal of the others")
    return ValidationReport(tuple(issues), admissible, cert, bq.is_triangular(), tuple(warnings))


def _relation_in_ideal(bq: BoundQuiver, rel: Relation, others, ring) -> bool:
    if not others:
        return False
    max_rel = max(max(p.length for _, p in r.terms) for r in bq.relations)
    cap = max_rel + max(p.length for _, p in rel.terms)
    if bq.quiver.is_acyclic():
        cap = max(cap, len(bq.quiver.vertices))
    paths, gens = _ideal_generators(bq, others, cap)
    key = (rel.source, rel.target)
    plist = paths[key]
    lookup = {p.arrows: i for i, p in enumerate(plist)}
    n = len(plist)
    target = [ring.zero()] * n
    for coeff, p in rel.terms:
        target[lookup[p.arrows]] = ring.add(target[lookup[p.arrows]], ring.from_fraction(coeff))
    cols = []
    for vec in gens[key]:
        col = [ring.zero()] * n
        for idx, c in vec.items():
            col[idx] = ring.from_fraction(c)
        cols.append(col)
    if not cols:
        return all(ring.is_zero(c) for c in target)
    span = Mat.from_rows(ring, list(map(list, zip(*cols))))
    return in_column_span(span, Mat.column(ring, target))


# ---------------------------------------------------------------------------
# text format


def _parse_coefficient(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {tok!r}", lineno) from None


def _parse_relation_terms(rest: str, quiver: Quiver, lineno: int) -> Relation:
    # normalize "a - b" to "a + -b" so '+' is the only separator
    text = rest.replace(" - ", " + -")
    chunks = [c.strip() for c in text.split("+") if c.strip()]
    terms = []
    for chunk in chunks:
        sign = Fraction(1)
        if chunk.startswith("-"):
            sign = Fraction(-1)
            chunk = chunk[1:].strip()
        if "*" in chunk:
            coeff_tok, path_tok = chunk.split("*", 1)
            coeff = _parse_coefficient(coeff_tok.strip(), lineno)
        else:
            coeff, path_tok = Fraction(1), chunk
        names = [n.strip() for n in path_tok.strip().split(".") if n.strip()]
        if not names:
            raise ParseError("empty path in relation", lineno)
        try:
            path = Path.of(quiver, names)
        except (ShapeError, UnknownVertex) as exc:
            raise ParseError(str(exc), lineno) from None
        terms.append((sign * coeff, path))
    return Relation(tuple(terms))


def parse_quiver(text: str) -> tuple[str, BoundQuiver]:
    """Parse the plain-text quiver format; returns (name, BoundQuiver)."""
    name = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    relation_lines: list[tuple[int, str]] = []
    bound = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if keyword == "quiver":
            name = rest.strip()
        elif keyword == "vertex":
            toks = rest.split()
            if len(toks) != 1:
                raise ParseError("vertex takes one name", lineno)
            vertices.append(toks[0])
        elif keyword == "arrow":
            toks = rest.split()
            if len(toks) != 3:
                raise ParseError("arrow takes NAME SRC TGT", lineno)
            arrows.append(Arrow(*toks))
        elif keyword == "relation":
            relation_lines.append((lineno, rest))
        elif keyword == "bound":
            toks = rest.split()
            if len(toks) != 1 or not toks[0].isdigit():
                raise ParseError("bound takes one integer", lineno)
            bound = int(toks[0])
        else:
            raise ParseError(f"unknown declaration {keyword!r}", lineno)
    if name is None:
        raise ParseError("missing 'quiver NAME' line")
    if bound is None:
        raise ParseError("missing 'bound L' line")
    try:
        quiver = Quiver(tuple(vertices), tuple(arrows))
    except (ShapeError, UnknownVertex) as exc:
        raise ParseError(str(exc)) from None
    relations = tuple(_parse_relation_terms(rest, quiver, lineno) for lineno, rest in relation_lines)
    return name, BoundQuiver(quiver, relations, bound)


def emit_quiver(name: str, bq: BoundQuiver) -> str:
    lines = [f"quiver {name}"]
    lines += [f"vertex {v}" for v in bq.quiver.vertices]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in bq.quiver.arrows]
    for rel in bq.relations:
        lines.append("relation " + " + ".join(f"{c}*{p.label()}" for c, p in rel.terms))
    lines.append(f"bound {bq.bound}")
    return "\n".join(lines) + "\n"
