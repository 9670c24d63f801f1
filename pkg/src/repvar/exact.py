"""Exact linear algebra over the rationals, prime fields, and truncated
polynomial rings.

Scalars are plain immutable values (``Fraction`` for Q, ``int`` in
``[0, p)`` for GF(p), tuples of base-field scalars for F[t]/(t^n)); the
ring objects know how to combine them.  Everything here is pure and
side-effect free, so values can be shared freely between threads.

Gaussian elimination over GF(p) runs on int64 numpy arrays: all
intermediate values are bounded by p**2, so the arithmetic stays exact
integer arithmetic throughout.  Rational elimination uses full pivoting
with a smallest-entry heuristic to control coefficient blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotAField, ShapeError

_FR0 = Fraction(0)
_FR1 = Fraction(1)

# numpy elimination is safe while pivoting products fit in int64
_NP_PRIME_LIMIT = 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class Rationals:
    """The field Q; elements are ``fractions.Fraction`` in lowest terms."""

    is_field = True
    characteristic = 0

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("repvar.Q")

    def zero(self):
        return _FR0

    def one(self):
        return _FR1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def from_int(self, n: int):
        return Fraction(n)

    def from_fraction(self, fr: Fraction):
        return Fraction(fr)

    def scalar_str(self, a) -> str:
        return str(a)


class PrimeField:
    """GF(p) for a prime p; elements are ints in ``[0, p)``."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("repvar.GF", self.p))

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def from_int(self, n: int):
        return n % self.p

    def from_fraction(self, fr: Fraction):
        den = fr.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator {fr.denominator} vanishes mod {self.p}")
        return fr.numerator * pow(den, self.p - 2, self.p) % self.p

    def scalar_str(self, a) -> str:
        return str(a % self.p)


class TruncatedRing:
    """F[t]/(t^n) over a base field F; elements are tuples of length n.

    Not a field: only kernel-free operations (products, reductions,
    unfolding to base-field matrices) are supported on matrices over it.
    """

    is_field = False

    def __init__(self, base, order: int):
        if not base.is_field:
            raise NotAField("truncated ring needs a field of coefficients")
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        self.base = base
        self.order = order
        self.characteristic = base.characteristic

    def __repr__(self):
        return f"{self.base!r}[t]/(t^{self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedRing)
            and other.base == self.base
            and other.order == self.order
        )

    def __hash__(self):
        return hash(("repvar.trunc", self.base, self.order))

    def zero(self):
        return (self.base.zero(),) * self.order

    def one(self):
        return (self.base.one(),) + (self.base.zero(),) * (self.order - 1)

    def t(self):
        if self.order == 1:
            return self.zero()
        tail = [self.base.zero()] * self.order
        tail[1] = self.base.one()
        return tuple(tail)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        n = self.order
        base = self.base
        out = [base.zero()] * n
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j in range(n - i):
                y = b[j]
                if not base.is_zero(y):
                    out[i + j] = base.add(out[i + j], base.mul(x, y))
        return tuple(out)

    def inv(self, a):
        # power-series inversion; needs a unit constant term
        base = self.base
        if base.is_zero(a[0]):
            raise ZeroDivisionError("constant term is zero; not a unit")
        c0 = base.inv(a[0])
        out = [c0] + [base.zero()] * (self.order - 1)
        for k in range(1, self.order):
            acc = base.zero()
            for i in range(1, k + 1):
                acc = base.add(acc, base.mul(a[i], out[k - i]))
            out[k] = base.neg(base.mul(c0, acc))
        return tuple(out)

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def eq(self, a, b):
        return all(self.base.eq(x, y) for x, y in zip(a, b))

    def from_int(self, n: int):
        return (self.base.from_int(n),) + (self.base.zero(),) * (self.order - 1)

    def from_fraction(self, fr: Fraction):
        return (self.base.from_fraction(fr),) + (self.base.zero(),) * (self.order - 1)

    def from_coeffs(self, coeffs):
        cs = list(coeffs)[: self.order]
        cs += [self.base.zero()] * (self.order - len(cs))
        return tuple(cs)

    def coefficient(self, a, k: int):
        return a[k]

    def truncate(self, a, j: int):
        """Reduce an element modulo t^j (as an element of F[t]/(t^j))."""
        return tuple(a[:j])

    def scalar_str(self, a) -> str:
        parts = []
        for k, c in enumerate(a):
            if self.base.is_zero(c) and not (k == 0 and all(self.base.is_zero(x) for x in a)):
                continue
            s = self.base.scalar_str(c)
            if k == 0:
                parts.append(s)
            elif k == 1:
                parts.append(f"{s}*t")
            else:
                parts.append(f"{s}*t^{k}")
        return "+".join(parts) if parts else "0"


QQ = Rationals()
GF101 = PrimeField(101)


@dataclass(frozen=True)
class Mat:
    """Dense matrix over one of the exact rings; immutable row-major data."""

    ring: object
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise ShapeError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @staticmethod
    def from_rows(ring, rows2d) -> "Mat":
        rows2d = [list(r) for r in rows2d]
        r = len(rows2d)
        c = len(rows2d[0]) if r else 0
        for row in rows2d:
            if len(row) != c:
                raise ShapeError("ragged rows")
        return Mat(ring, r, c, tuple(x for row in rows2d for x in row))

    @staticmethod
    def zero(ring, rows: int, cols: int) -> "Mat":
        return Mat(ring, rows, cols, (ring.zero(),) * (rows * cols))

    @staticmethod
    def identity(ring, n: int) -> "Mat":
        z, o = ring.zero(), ring.one()
        return Mat(ring, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    @staticmethod
    def column(ring, entries) -> "Mat":
        entries = tuple(entries)
        return Mat(ring, len(entries), 1, entries)

    def get(self, i: int, j: int):
        return self.data[i * self.cols + j]

    def row_list(self, i: int):
        return list(self.data[i * self.cols : (i + 1) * self.cols])

    def to_rows(self):
        return [self.row_list(i) for i in range(self.rows)]

    def column_entries(self, j: int):
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        rng = self.ring
        return Mat(rng, self.rows, self.cols, tuple(rng.add(a, b) for a, b in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        rng = self.ring
        return Mat(rng, self.rows, self.cols, tuple(rng.sub(a, b) for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "Mat":
        rng = self.ring
        return Mat(rng, self.rows, self.cols, tuple(rng.neg(a) for a in self.data))

    def scale(self, c) -> "Mat":
        rng = self.ring
        return Mat(rng, self.rows, self.cols, tuple(rng.mul(c, a) for a in self.data))

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.ring != other.ring:
            raise ShapeError("matmul over different rings")
        rng = self.ring
        if isinstance(rng, PrimeField) and rng.p < _NP_PRIME_LIMIT and self.cols:
            a = np.asarray(self.data, dtype=np.int64).reshape(self.rows, self.cols)
            b = np.asarray(other.data, dtype=np.int64).reshape(other.rows, other.cols)
            return Mat(rng, self.rows, other.cols, tuple(int(x) for x in ((a @ b) % rng.p).ravel()))
        out = []
        bt = other.to_rows()
        for i in range(self.rows):
            ai = self.row_list(i)
            for j in range(other.cols):
                acc = rng.zero()
                for k in range(self.cols):
                    x = ai[k]
                    if rng.is_zero(x):
                        continue
                    acc = rng.add(acc, rng.mul(x, bt[k][j]))
                out.append(acc)
        return Mat(rng, self.rows, other.cols, tuple(out))

    def transpose(self) -> "Mat":
        return Mat(
            self.ring,
            self.cols,
            self.rows,
            tuple(self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def is_zero(self) -> bool:
        rng = self.ring
        return all(rng.is_zero(a) for a in self.data)

    def equals(self, other: "Mat") -> bool:
        if self.rows != other.rows or self.cols != other.cols or self.ring != other.ring:
            return False
        rng = self.ring
        return all(rng.eq(a, b) for a, b in zip(self.data, other.data))

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ShapeError("hstack row mismatch")
        rows = [self.row_list(i) + other.row_list(i) for i in range(self.rows)]
        return Mat.from_rows(self.ring, rows) if rows else Mat(self.ring, 0, self.cols + other.cols, ())

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ShapeError("vstack col mismatch")
        return Mat(self.ring, self.rows + other.rows, self.cols, self.data + other.data)

    @staticmethod
    def block(grid) -> "Mat":
        """Assemble a matrix from a 2d grid of conforming blocks."""
        rows_out = None
        for row in grid:
            acc = row[0]
            for b in row[1:]:
                acc = acc.hstack(b)
            rows_out = acc if rows_out is None else rows_out.vstack(acc)
        return rows_out

    def submatrix(self, row_lo, row_hi, col_lo, col_hi) -> "Mat":
        rows = [self.row_list(i)[col_lo:col_hi] for i in range(row_lo, row_hi)]
        nr, nc = row_hi - row_lo, col_hi - col_lo
        return Mat(self.ring, nr, nc, tuple(x for r in rows for x in r))

    def map_entries(self, ring, fn) -> "Mat":
        return Mat(ring, self.rows, self.cols, tuple(fn(a) for a in self.data))

    def _check_same_shape(self, other: "Mat"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError("shape mismatch")
        if self.ring != other.ring:
            raise ShapeError("ring mismatch")


def _fraction_size(a: Fraction) -> int:
    return a.numerator.bit_length() + a.denominator.bit_length()


def _generic_rref(ring, rows2d, npiv_cols, full_pivot):
    """In-place reduced row echelon form over a field.

    Only the first ``npiv_cols`` columns are eligible as pivots (columns
    beyond are augmented data).  With ``full_pivot`` the pivot is chosen
    among all remaining eligible entries (smallest by ``_fraction_size``
    for rationals) and column swaps are tracked in the returned
    permutation: ``perm[j]`` is the original index of current column j.
    """
    m = len(rows2d)
    perm = list(range(npiv_cols))
    piv_cols = []
    r = 0
    c = 0
    while r < m and c < npiv_cols:
        pi = pj = None
        if full_pivot:
            best = None
            for i in range(r, m):
                for j in range(c, npiv_cols):
                    x = rows2d[i][j]
                    if not ring.is_zero(x):
                        sz = _fraction_size(x) if isinstance(x, Fraction) else 0
                        if best is None or sz < best:
                            best, pi, pj = sz, i, j
                            if sz == 0:
                                break
                if best == 0:
                    break
            if pi is None:
                break
        else:
            for j in range(c, npiv_cols):
                for i in range(r, m):
                    if not ring.is_zero(rows2d[i][j]):
                        pi, pj = i, j
                        break
                if pi is not None:
                    break
            if pi is None:
                break
        if pj != c:
            for row in rows2d:
                row[c], row[pj] = row[pj], row[c]
            perm[c], perm[pj] = perm[pj], perm[c]
        if pi != r:
            rows2d[r], rows2d[pi] = rows2d[pi], rows2d[r]
        inv = ring.inv(rows2d[r][c])
        rows2d[r] = [ring.mul(inv, x) for x in rows2d[r]]
        for i in range(m):
            if i == r:
                continue
            f = rows2d[i][c]
            if ring.is_zero(f):
                continue
            pivot_row = rows2d[r]
            rows2d[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows2d[i], pivot_row)]
        piv_cols.append(c)
        r += 1
        c += 1
    return rows2d, piv_cols, perm


def _gf_rref(p, arr, npiv_cols):
    """Reduced row echelon form of an int64 array over GF(p)."""
    a = np.array(arr, dtype=np.int64) % p
    m = a.shape[0]
    piv_cols = []
    r = 0
    for c in range(npiv_cols):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        piv_cols.append(c)
        r += 1
    return a, piv_cols


def _use_numpy(ring) -> bool:
    return isinstance(ring, PrimeField) and ring.p < _NP_PRIME_LIMIT


def rref(a: Mat):
    """RREF of a matrix over a field; returns (Mat, pivot column list)."""
    _require_field(a.ring)
    if a.rows == 0 or a.cols == 0:
        return a, []
    if _use_numpy(a.ring):
        arr, piv = _gf_rref(a.ring.p, np.asarray(a.data, dtype=np.int64).reshape(a.rows, a.cols), a.cols)
        return Mat(a.ring, a.rows, a.cols, tuple(int(x) for x in arr.ravel())), piv
    rows, piv, perm = _generic_rref(a.ring, a.to_rows(), a.cols, full_pivot=isinstance(a.ring, Rationals))
    # undo column permutation so callers see original variable order
    inv = [0] * len(perm)
    for pos, orig in enumerate(perm):
        inv[orig] = pos
    fixed = [[row[inv[j]] for j in range(a.cols)] for row in rows]
    piv_orig = sorted(perm[c] for c in piv)
    out = Mat(a.ring, a.rows, a.cols, tuple(x for row in fixed for x in row)) if fixed else Mat(a.ring, 0, a.cols, ())
    return out, piv_orig


def _require_field(ring):
    if not getattr(ring, "is_field", False):
        raise NotAField(f"{ring!r} is not a field")


def kernel_basis(a: Mat):
    """Basis of the right kernel of a matrix over a field.

    Returns column vectors (as ``Mat`` n x 1), one per free column of the
    reduced form, in ascending free-column order; deterministic.
    """
    _require_field(a.ring)
    ring = a.ring
    n = a.cols
    if a.rows == 0 or n == 0:
        return [_unit_vector(ring, n, j) for j in range(n)] if a.rows == 0 else []
    if _use_numpy(ring):
        arr, piv = _gf_rref(ring.p, np.asarray(a.data, dtype=np.int64).reshape(a.rows, a.cols), n)
        p = ring.p
        piv_set = set(piv)
        free = [j for j in range(n) if j not in piv_set]
        out = []
        for j in free:
            v = [0] * n
            v[j] = 1
            for r, pc in enumerate(piv):
                v[pc] = (-int(arr[r, j])) % p
            out.append(Mat.column(ring, v))
        return out
    red, piv = rref(a)
    piv_set = set(piv)
    free = [j for j in range(n) if j not in piv_set]
    out = []
    for j in free:
        v = [ring.zero()] * n
        v[j] = ring.one()
        for r, pc in enumerate(piv):
            v[pc] = ring.neg(red.get(r, j))
        out.append(Mat.column(ring, v))
    return out


def _unit_vector(ring, n, j):
    v = [ring.zero()] * n
    v[j] = ring.one()
    return Mat.column(ring, v)


def rank(a: Mat) -> int:
    """Rank over a field; equals cols minus kernel dimension."""
    _require_field(a.ring)
    if a.rows == 0 or a.cols == 0:
        return 0
    if _use_numpy(a.ring):
        _, piv = _gf_rref(a.ring.p, np.asarray(a.data, dtype=np.int64).reshape(a.rows, a.cols), a.cols)
        return len(piv)
    _, piv = rref(a)
    return len(piv)


def solve(a: Mat, b: Mat):
    """One exact solution of A x = b over a field, or None if inconsistent.

    ``b`` is a column (rows x 1).  Free variables are set to zero, so the
    answer is deterministic.
    """
    if b.rows != a.rows or b.cols != 1:
        raise ShapeError(f"rhs must be a {a.rows}-row column")
    sols = solve_many(a, b)
    return None if sols is None else sols


def solve_many(a: Mat, b: Mat):
    """Solve A X = B columnwise; returns X or None if any column fails."""
    _require_field(a.ring)
    if b.rows != a.rows:
        raise ShapeError("rhs row mismatch")
    ring = a.ring
    n = a.cols
    k = b.cols
    if _use_numpy(ring):
        if a.rows == 0:
            return Mat.zero(ring, n, k)
        arr = np.concatenate(
            [
                np.asarray(a.data, dtype=np.int64).reshape(a.rows, a.cols),
                np.asarray(b.data, dtype=np.int64).reshape(b.rows, b.cols),
            ],
            axis=1,
        )
        red, piv = _gf_rref(ring.p, arr, n)
        for r in range(len(piv), a.rows):
            if np.any(red[r, n:] % ring.p):
                return None
        xs = np.zeros((n, k), dtype=np.int64)
        for r, pc in enumerate(piv):
            xs[pc] = red[r, n:]
        return Mat(ring, n, k, tuple(int(x) for x in xs.ravel()))
    if a.rows == 0:
        return Mat.zero(ring, n, k)
    rows = [a.row_list(i) + b.row_list(i) for i in range(a.rows)]
    red, piv, perm = _generic_rref(ring, rows, n, full_pivot=isinstance(ring, Rationals))
    for r in range(len(piv), a.rows):
        if any(not ring.is_zero(x) for x in red[r][n:]):
            return None
    xs = [[ring.zero()] * k for _ in range(n)]
    for r, pc in enumerate(piv):
        xs[perm[pc]] = red[r][n:]
    return Mat(ring, n, k, tuple(x for row in xs for x in row))


def column_space_pivots(a: Mat):
    """Indices of a deterministic maximal independent set of columns."""
    _require_field(a.ring)
    if a.rows == 0 or a.cols == 0:
        return []
    if _use_numpy(a.ring):
        _, piv = _gf_rref(a.ring.p, np.asarray(a.data, dtype=np.int64).reshape(a.rows, a.cols), a.cols)
        return piv
    # no column swaps here: partial pivoting keeps column identity
    rows, piv, _ = _generic_rref(a.ring, a.to_rows(), a.cols, full_pivot=False)
    return piv


def in_column_span(basis: Mat, v: Mat) -> bool:
    """Membership of a column vector in the span of the columns of ``basis``."""
    return solve_many(basis, v) is not None


def truncated_unfold(a: Mat, levels: int | None = None) -> Mat:
    """Unfold a matrix over F[t]/(t^n) to a base-field matrix.

    Each entry becomes the ``levels x levels`` lower-triangular Toeplitz
    block of its multiplication action modulo t^levels.  The rank of the
    result is the base-field rank of the reduction mod t^levels.
    """
    ring = a.ring
    if not isinstance(ring, TruncatedRing):
        raise ShapeError("truncated_unfold needs a matrix over a truncated ring")
    j = ring.order if levels is None else levels
    if not 1 <= j <= ring.order:
        raise ShapeError("levels out of range")
    base = ring.base
    zero = base.zero()
    big = [[zero] * (a.cols * j) for _ in range(a.rows * j)]
    for i in range(a.rows):
        for jj in range(a.cols):
            coeffs = a.get(i, jj)
            for lr in range(j):
                for lc in range(lr + 1):
                    big[i * j + lr][jj * j + lc] = coeffs[lr - lc]
    return Mat.from_rows(base, big) if big else Mat(base, 0, 0, ())


def rank_k_truncated(a: Mat, levels: int | None = None) -> int:
    """Base-field rank of the unfolding of a truncated-ring matrix."""
    unfolded = truncated_unfold(a, levels)
    return rank(unfolded)


def truncated_mat_inverse(a: Mat) -> Mat:
    """Inverse of a matrix over F[t]/(t^n) whose reduction mod t is invertible.

    Gaussian elimination with unit pivots; over a local ring this succeeds
    exactly when the matrix is invertible.
    """
    ring = a.ring
    if not isinstance(ring, TruncatedRing):
        raise ShapeError("expected a truncated-ring matrix")
    if a.rows != a.cols:
        raise ShapeError("inverse of a non-square matrix")
    n = a.rows
    base = ring.base
    work = a.to_rows()
    aug = Mat.identity(ring, n).to_rows()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not base.is_zero(work[i][c][0]):
                piv = i
                break
        if piv is None:
            raise ShapeError("matrix is not invertible over the truncated ring")
        work[c], work[piv] = work[piv], work[c]
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = ring.inv(work[c][c])
        work[c] = [ring.mul(inv, x) for x in work[c]]
        aug[c] = [ring.mul(inv, x) for x in aug[c]]
        for i in range(n):
            if i == c:
                continue
            f = work[i][c]
            if ring.is_zero(f):
                continue
            work[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(work[i], work[c])]
            aug[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(aug[i], aug[c])]
    return Mat.from_rows(ring, aug)


def mat_inverse(a: Mat) -> Mat | None:
    """Inverse over a field, or None when singular."""
    _require_field(a.ring)
    if a.rows != a.cols:
        raise ShapeError("inverse of a non-square matrix")
    sol = solve_many(a, Mat.identity(a.ring, a.rows))
    if sol is None:
        return None
    # solve_many returns a solution of A X = I; for square A that means rank n
    if rank(a) != a.rows:
        return None
    return sol
