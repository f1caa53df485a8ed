"""Exact dense linear algebra over F_q, row-vector convention.

A vector x is a Python list of field elements and acts on a matrix M
from the left: x . M.  Consequently "solve" means solve_left (find x
with x.M = y), kernels are left kernels ({x : x.M = 0}), and a code
generated by M is the row space of M.

Matrices are small, dense lists of row lists; everything is computed
by exact Gaussian elimination.  Subspaces carry a reduced-row-echelon
canonical basis, so equality of subspaces is list equality of bases.
"""

from __future__ import annotations

from .errors import (
    DimensionMismatch,
    DuplicateEvaluationPoint,
    FieldTooSmall,
    NoSolution,
    NotContained,
    Singular,
    ZeroMultiplier,
)
from .field import Field


class Matrix:
    """Dense matrix over a Field; treat instances as immutable."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: list[list[int]], ncols: int | None = None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if ncols is not None and ncols != self.ncols:
                raise DimensionMismatch(
                    f"ncols {ncols} != row length {self.ncols}"
                )
        else:
            if ncols is None:
                raise DimensionMismatch("empty matrix needs explicit ncols")
            self.ncols = ncols
        q = field.q
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatch("ragged rows")
            for e in r:
                if not 0 <= e < q:
                    raise ValueError(f"entry {e!r} not in F_{q}")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        return cls(field, rows, n)

    @classmethod
    def hstack(cls, *mats: Matrix) -> Matrix:
        field, nrows = mats[0].field, mats[0].nrows
        for m in mats:
            if m.nrows != nrows:
                raise DimensionMismatch("hstack: row counts differ")
        rows = [
            [e for m in mats for e in m.rows[i]] for i in range(nrows)
        ]
        return cls(field, rows, sum(m.ncols for m in mats))

    @classmethod
    def vstack(cls, *mats: Matrix) -> Matrix:
        field, ncols = mats[0].field, mats[0].ncols
        for m in mats:
            if m.ncols != ncols:
                raise DimensionMismatch("vstack: column counts differ")
        rows = [r for m in mats for r in m.rows]
        return cls(field, rows, ncols)

    # -- basics -------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(
            (self.field, self.ncols, tuple(tuple(r) for r in self.rows))
        )

    def __repr__(self) -> str:
        return f"Matrix(F_{self.field.q}, {self.nrows}x{self.ncols})"

    def copy_rows(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> Matrix:
        rows = [
            [self.rows[i][j] for i in range(self.nrows)]
            for j in range(self.ncols)
        ]
        return Matrix(self.field, rows, self.nrows)

    def submatrix(self, row_idx, col_idx) -> Matrix:
        rows = [[self.rows[i][j] for j in col_idx] for i in row_idx]
        return Matrix(self.field, rows, len(list(col_idx)))

    def take_cols(self, col_idx) -> Matrix:
        return self.submatrix(range(self.nrows), list(col_idx))

    def take_rows(self, row_idx) -> Matrix:
        return self.submatrix(list(row_idx), range(self.ncols))

    # -- arithmetic ---------------------------------------------------

    def add(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        f = self.field
        return Matrix(
            self.field,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.ncols,
        )

    def sub(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        f = self.field
        return Matrix(
            self.field,
            [
                [f.sub(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.ncols,
        )

    def scale(self, c: int) -> Matrix:
        f = self.field
        return Matrix(
            self.field,
            [[f.mul(c, a) for a in r] for r in self.rows],
            self.ncols,
        )

    def neg(self) -> Matrix:
        f = self.field
        return Matrix(
            self.field,
            [[f.neg(a) for a in r] for r in self.rows],
            self.ncols,
        )

    def mul(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"mul: {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        f = self.field
        bt = other.transpose().rows
        if f.m == 1:
            p = f.p
            rows = [
                [sum(x * y for x, y in zip(r, c)) % p for c in bt]
                for r in self.rows
            ]
        else:
            mulf, addf = f.mul, f.add
            rows = []
            for r in self.rows:
                out = []
                for c in bt:
                    acc = 0
                    for x, y in zip(r, c):
                        if x and y:
                            acc = addf(acc, mulf(x, y))
                    out.append(acc)
                rows.append(out)
        return Matrix(self.field, rows, other.ncols)

    def left_mul_vec(self, x: list[int]) -> list[int]:
        """Row vector times matrix: x . M."""
        if len(x) != self.nrows:
            raise DimensionMismatch(
                f"vector length {len(x)} != nrows {self.nrows}"
            )
        f = self.field
        if f.m == 1:
            p = f.p
            out = [0] * self.ncols
            for xi, row in zip(x, self.rows):
                if xi:
                    out = [(o + xi * e) % p for o, e in zip(out, row)]
            return out
        out = [0] * self.ncols
        for xi, row in zip(x, self.rows):
            if xi:
                out = [f.add(o, f.mul(xi, e)) for o, e in zip(out, row)]
        return out

    def _same_shape(self, other: Matrix) -> None:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch(
                f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )

    # -- elimination --------------------------------------------------

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row echelon form and its pivot column indices."""
        rows = self.copy_rows()
        pivots = _rref_in_place(self.field, rows, self.ncols)
        return Matrix(self.field, rows, self.ncols), pivots

    def rank(self) -> int:
        rows = self.copy_rows()
        return len(_rref_in_place(self.field, rows, self.ncols))

    def inverse(self) -> Matrix:
        if self.nrows != self.ncols:
            raise Singular("inverse of non-square matrix")
        n = self.nrows
        aug = Matrix.hstack(self, Matrix.identity(self.field, n))
        r, pivots = aug.rref()
        if len(pivots) < n or any(p >= n for p in pivots):
            raise Singular("matrix is rank deficient")
        return r.take_cols(range(n, 2 * n))

    def solve_left(self, y: list[int]) -> list[int]:
        """Some x with x . M = y, else NoSolution."""
        if len(y) != self.ncols:
            raise DimensionMismatch(
                f"rhs length {len(y)} != ncols {self.ncols}"
            )
        sols = self.solve_left_matrix(Matrix(self.field, [y], self.ncols))
        return sols.rows[0]

    def solve_left_matrix(self, ys: Matrix) -> Matrix:
        """X with X . M = ys, row by row, else NoSolution."""
        if ys.ncols != self.ncols:
            raise DimensionMismatch("rhs column count differs")
        # transpose to the column convention: M^T x^T = y^T
        mt = self.transpose()
        aug = Matrix.hstack(mt, ys.transpose())
        r, pivots = aug.rref()
        m = self.nrows
        if any(p >= m for p in pivots):
            raise NoSolution("rhs not in the row space")
        xs = [[0] * m for _ in range(ys.nrows)]
        for row_i, p in enumerate(pivots):
            for k in range(ys.nrows):
                xs[k][p] = r.rows[row_i][m + k]
        # consistency rows beyond the pivots must be zero already
        for row_i in range(len(pivots), aug.nrows):
            if any(r.rows[row_i][m:]):
                raise NoSolution("rhs not in the row space")
        return Matrix(self.field, xs, m)

    def left_kernel(self) -> "Subspace":
        """Subspace {x in F_q^nrows : x . M = 0}."""
        mt = self.transpose()
        r, pivots = mt.rref()
        m = self.nrows
        free = [j for j in range(m) if j not in pivots]
        f = self.field
        basis = []
        for j in free:
            v = [0] * m
            v[j] = 1
            for row_i, p in enumerate(pivots):
                v[p] = f.neg(r.rows[row_i][j])
            basis.append(v)
        return Subspace(self.field, m, basis)

    def row_space(self) -> "Subspace":
        r, pivots = self.rref()
        return Subspace._trusted(
            self.field, self.ncols, r.rows[: len(pivots)]
        )

    def is_zero(self) -> bool:
        return all(not any(r) for r in self.rows)


def _rref_in_place(field: Field, rows: list[list[int]], ncols: int):
    """Reduce rows to RREF in place; return tuple of pivot columns."""
    if field.m == 1:
        return _rref_prime(rows, ncols, field.p)
    return _rref_generic(rows, ncols, field)


def _rref_prime(rows: list[list[int]], ncols: int, p: int):
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        piv = next(
            (i for i in range(r, nrows) if rows[i][col]), None
        )
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, p)
        if inv != 1:
            rows[r] = [x * inv % p for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            c = rows[i][col]
            if c and i != r:
                rows[i] = [
                    (x - c * y) % p for x, y in zip(rows[i], prow)
                ]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return tuple(pivots)


def _rref_generic(rows: list[list[int]], ncols: int, field: Field):
    pivots = []
    r = 0
    nrows = len(rows)
    sub, mul, inv = field.sub, field.mul, field.inv
    for col in range(ncols):
        piv = next(
            (i for i in range(r, nrows) if rows[i][col]), None
        )
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        factor = inv(rows[r][col])
        if factor != 1:
            rows[r] = [mul(x, factor) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            c = rows[i][col]
            if c and i != r:
                rows[i] = [
                    sub(x, mul(c, y)) for x, y in zip(rows[i], prow)
                ]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return tuple(pivots)


class Subspace:
    """Subspace of F_q^ambient with a canonical RREF basis."""

    __slots__ = ("field", "ambient", "basis")

    def __init__(self, field: Field, ambient: int, vectors: list[list[int]]):
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient:
                raise DimensionMismatch(
                    f"vector length {len(v)} != ambient {ambient}"
                )
        pivots = _rref_in_place(field, rows, ambient)
        self.field = field
        self.ambient = ambient
        self.basis = rows[: len(pivots)]

    @classmethod
    def _trusted(cls, field, ambient, rref_rows) -> Subspace:
        s = object.__new__(cls)
        s.field = field
        s.ambient = ambient
        s.basis = [list(r) for r in rref_rows]
        return s

    @classmethod
    def zero(cls, field: Field, ambient: int) -> Subspace:
        return cls._trusted(field, ambient, [])

    @classmethod
    def full(cls, field: Field, ambient: int) -> Subspace:
        return cls._trusted(
            field, ambient, Matrix.identity(field, ambient).rows
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash(
            (self.field, self.ambient, tuple(tuple(r) for r in self.basis))
        )

    def __repr__(self) -> str:
        return (
            f"Subspace(F_{self.field.q}, dim {self.dim} "
            f"of {self.ambient})"
        )

    def contains(self, v: list[int]) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length != ambient")
        f = self.field
        v = list(v)
        for row in self.basis:
            lead = next(j for j, e in enumerate(row) if e)
            c = v[lead]
            if c:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return not any(v)

    def contains_subspace(self, other: Subspace) -> bool:
        self._same_ambient(other)
        return all(self.contains(v) for v in other.basis)

    def sum_(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        return Subspace(
            self.field, self.ambient, self.basis + other.basis
        )

    def intersect(self, other: Subspace) -> Subspace:
        """Zassenhaus: reduce [[A A],[B 0]]; zero-left rows carry the
        intersection in their right halves."""
        self._same_ambient(other)
        n = self.ambient
        rows = [list(v) + list(v) for v in self.basis]
        rows += [list(v) + [0] * n for v in other.basis]
        _rref_in_place(self.field, rows, 2 * n)
        inter = [
            r[n:] for r in rows if not any(r[:n]) and any(r[n:])
        ]
        return Subspace(self.field, n, inter)

    def complement_within(self, whole: Subspace) -> Subspace:
        """A subspace C with self (+) C = whole (direct sum)."""
        self._same_ambient(whole)
        if not whole.contains_subspace(self):
            raise NotContained("subspace not inside the given space")
        picked: list[list[int]] = []
        span = self
        for v in whole.basis:
            if not span.contains(v):
                picked.append(v)
                span = Subspace(
                    self.field, self.ambient, span.basis + [v]
                )
        return Subspace(self.field, self.ambient, picked)

    def _same_ambient(self, other: Subspace) -> None:
        if self.field != other.field or self.ambient != other.ambient:
            raise DimensionMismatch("ambient spaces differ")


# -- structured matrices ----------------------------------------------

def cauchy(field: Field, alphas: list[int], betas: list[int]) -> Matrix:
    """Matrix with entry (i, j) = 1 / (alphas[i] - betas[j])."""
    combined = list(alphas) + list(betas)
    if len(set(combined)) != len(combined):
        raise DuplicateEvaluationPoint(
            "cauchy points must be pairwise distinct across both lists"
        )
    f = field
    rows = [
        [f.inv(f.sub(a, b)) for b in betas] for a in alphas
    ]
    return Matrix(field, rows, len(betas))


def vandermonde(field: Field, zetas: list[int], k: int) -> Matrix:
    """k x len(zetas) matrix with entry (i, j) = zetas[j] ** i."""
    if len(set(zetas)) != len(zetas):
        raise DuplicateEvaluationPoint("vandermonde points must be distinct")
    if k > len(zetas):
        raise DimensionMismatch("more rows than evaluation points")
    f = field
    rows = []
    powers = [1] * len(zetas)
    for _ in range(k):
        rows.append(list(powers))
        powers = [f.mul(pw, z) for pw, z in zip(powers, zetas)]
    return Matrix(field, rows, len(zetas))


def grs(field: Field, v: list[int], alphas: list[int]) -> Matrix:
    """N x N generalized Reed-Solomon generator: entry (i,j) = v_j a_j^i."""
    n = len(alphas)
    if len(v) != n:
        raise DimensionMismatch("multiplier and point counts differ")
    if len(set(alphas)) != n:
        raise DuplicateEvaluationPoint("grs points must be distinct")
    if any(x == 0 for x in v):
        raise ZeroMultiplier("grs column multipliers must be nonzero")
    f = field
    rows = []
    powers = list(v)
    for _ in range(n):
        rows.append(list(powers))
        powers = [f.mul(pw, a) for pw, a in zip(powers, alphas)]
    return Matrix(field, rows, n)


def grs_dual(field: Field, v: list[int], alphas: list[int], k: int) -> Matrix:
    """(N-k) x N matrix orthogonal to the first k rows of grs(v, alphas).

    Its row space is the dual code: multipliers are
    u_n = 1 / (v_n * prod_{i != n} (alphas[n] - alphas[i])).
    """
    n = len(alphas)
    if not 1 <= k < n:
        raise DimensionMismatch("need 1 <= k < N")
    f = field
    u = []
    for idx in range(n):
        prod = v[idx]
        if prod == 0:
            raise ZeroMultiplier("grs column multipliers must be nonzero")
        for i in range(n):
            if i != idx:
                prod = f.mul(prod, f.sub(alphas[idx], alphas[i]))
        u.append(f.inv(prod))
    dual = grs(field, u, alphas).take_rows(range(n - k))
    g = grs(field, v, alphas).take_rows(range(k))
    if not dual.mul(g.transpose()).is_zero():
        raise AssertionError("dual construction lost orthogonality")
    return dual


def zero_forcing_rank_ok(
    field: Field, v: list[int], alphas: list[int], k: int
) -> bool:
    """Whether dual x (parity rows)^T of the split GRS has full rank.

    The split puts the first k rows of the N x N GRS generator into one
    code and the last N-k rows into another; this checks that the dual
    of the first meshes invertibly with the generator of the second,
    which is what lets a decoder cancel one code's symbols and keep an
    invertible view of the other's.
    """
    n = len(alphas)
    full = grs(field, v, alphas)
    parity = full.take_rows(range(k, n))
    dual = grs_dual(field, v, alphas, k)
    return dual.mul(parity.transpose()).rank() == n - k


# -- deterministic default evaluation points --------------------------

def default_cauchy_points(
    field: Field, nrows: int, ncols: int
) -> tuple[list[int], list[int]]:
    """Ascending field elements: rows take 0..nrows-1, cols continue."""
    if field.q < nrows + ncols:
        raise FieldTooSmall(
            f"need {nrows + ncols} distinct points, field has {field.q}"
        )
    return list(range(nrows)), list(range(nrows, nrows + ncols))


def default_eval_points(field: Field, n: int) -> list[int]:
    """Ascending field elements 0..n-1."""
    if field.q < n:
        raise FieldTooSmall(
            f"need {n} distinct points, field has {field.q}"
        )
    return list(range(n))
