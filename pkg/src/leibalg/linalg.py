"""Exact dense linear algebra with deterministic canonical forms.

Everything downstream (subspace comparisons, quotients, witness derivation)
leans on one fact: a subspace is stored as the reduced row echelon basis of
its span, so equality of subspaces is equality of tuples.  Matrices act on
column vectors: y = M @ x with M of shape (codomain dim, domain dim).

Dense and small on purpose; ambient dimensions stay <= 16 in this library.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import _backend
from .fields import Field


class LinalgError(ValueError):
    pass


def _rref_fraction(nrows, ncols, rows):
    """Fraction RREF, same contract as the mod-p kernels but over Q."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [v / piv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


@dataclass(frozen=True)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    entries: tuple  # tuple of row tuples, canonical scalars

    def __post_init__(self):
        if len(self.entries) != self.nrows or any(len(r) != self.ncols for r in self.entries):
            raise LinalgError("matrix shape mismatch")

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        rows = [tuple(field.of(v) for v in r) for r in rows]
        if ncols is None:
            if not rows:
                raise LinalgError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        return cls(field, len(rows), ncols, tuple(rows))

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field, nrows, ncols):
        zero = field.zero
        return cls(field, nrows, ncols, tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows)))

    @classmethod
    def from_columns(cls, field, columns, nrows=None):
        cols = [tuple(field.of(v) for v in c) for c in columns]
        if nrows is None:
            if not cols:
                raise LinalgError("cannot infer row count of an empty matrix")
            nrows = len(cols[0])
        return cls(field, nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return Matrix(self.field, self.ncols, self.nrows,
                      tuple(self.column(j) for j in range(self.ncols)))

    def apply(self, vec):
        """M @ x for a coordinate tuple x of length ncols."""
        if len(vec) != self.ncols:
            raise LinalgError("vector length mismatch")
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero
            for a, x in zip(row, vec):
                if a and x:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.ncols != other.nrows:
            raise LinalgError("matmul shape/field mismatch")
        f = self.field
        if f.is_finite:
            flat = _backend.kernels.matmul_mod(
                self.nrows, self.ncols, other.ncols,
                [v for r in self.entries for v in r],
                [v for r in other.entries for v in r], f.p)
            n = other.ncols
            return Matrix(f, self.nrows, n,
                          tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(self.nrows)))
        rows = []
        bt = other.transpose().entries
        for arow in self.entries:
            rows.append(tuple(sum((a * b for a, b in zip(arow, bcol)), Fraction(0)) for bcol in bt))
        return Matrix(f, self.nrows, other.ncols, tuple(rows))

    def __add__(self, other):
        if self.field != other.field or (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinalgError("matrix add mismatch")
        f = self.field
        return Matrix(f, self.nrows, self.ncols,
                      tuple(tuple(f.add(a, b) for a, b in zip(ra, rb))
                            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other):
        f = self.field
        return self + Matrix(f, other.nrows, other.ncols,
                             tuple(tuple(f.neg(v) for v in r) for r in other.entries))

    def hstack(self, other):
        if self.nrows != other.nrows or self.field != other.field:
            raise LinalgError("hstack mismatch")
        return Matrix(self.field, self.nrows, self.ncols + other.ncols,
                      tuple(ra + rb for ra, rb in zip(self.entries, other.entries)))

    def vstack(self, other):
        if self.ncols != other.ncols or self.field != other.field:
            raise LinalgError("vstack mismatch")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols,
                      self.entries + other.entries)

    def is_zero(self):
        z = self.field.zero
        return all(v == z for r in self.entries for v in r)

    def rank(self):
        return len(rref(self)[1])

    def inverse(self):
        """Inverse of a square matrix, or None if singular."""
        if self.nrows != self.ncols:
            raise LinalgError("inverse of a non-square matrix")
        n = self.nrows
        aug, pivots = rref(self.hstack(Matrix.identity(self.field, n)))
        if pivots != list(range(n)):
            return None
        return Matrix(self.field, n, n, tuple(r[n:] for r in aug.entries))


def rref(m: Matrix):
    """(reduced matrix, pivot columns); zero rows sink to the bottom."""
    if m.field.is_finite:
        flat, pivots = _backend.kernels.rref_mod(
            m.nrows, m.ncols, [v for r in m.entries for v in r], m.field.p)
        ent = tuple(tuple(flat[i * m.ncols:(i + 1) * m.ncols]) for i in range(m.nrows))
        return Matrix(m.field, m.nrows, m.ncols, ent), pivots
    rows, pivots = _rref_fraction(m.nrows, m.ncols, m.entries)
    return Matrix(m.field, m.nrows, m.ncols, tuple(tuple(r) for r in rows)), pivots


def vec_zero(field, n):
    return tuple(field.zero for _ in range(n))


def vec_add(field, a, b):
    return tuple(field.add(x, y) for x, y in zip(a, b))


def vec_sub(field, a, b):
    return tuple(field.sub(x, y) for x, y in zip(a, b))


def vec_scale(field, c, a):
    return tuple(field.mul(c, x) for x in a)


def vec_is_zero(field, a):
    z = field.zero
    return all(x == z for x in a)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient_dim held by its canonical RREF basis rows."""

    field: Field
    ambient_dim: int
    basis: tuple  # tuple of row tuples, RREF, no zero rows
    pivots: tuple = dc_field(default=())

    @property
    def dim(self):
        return len(self.basis)

    def basis_vectors(self):
        return list(self.basis)

    def reduce(self, vec):
        """Remainder of vec after subtracting its projection onto the basis."""
        f = self.field
        v = tuple(f.of(x) for x in vec)
        if len(v) != self.ambient_dim:
            raise LinalgError("vector/ambient mismatch")
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if c:
                v = tuple(f.sub(a, f.mul(c, b)) for a, b in zip(v, row))
        return v

    def contains(self, vec):
        return vec_is_zero(self.field, self.reduce(vec))

    def coords_of(self, vec):
        """Coordinates of vec in the canonical basis; raises if not a member."""
        f = self.field
        v = tuple(f.of(x) for x in vec)
        coords = tuple(v[piv] for piv in self.pivots)
        if not vec_is_zero(f, self.reduce(v)):
            raise LinalgError("vector not in subspace")
        return coords

    def vector_from_coords(self, coords):
        f = self.field
        out = vec_zero(f, self.ambient_dim)
        for c, row in zip(coords, self.basis):
            if c:
                out = vec_add(f, out, vec_scale(f, c, row))
        return out

    def is_subspace_of(self, other):
        return all(other.contains(v) for v in self.basis)

    def basis_matrix(self):
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)


def span(field, ambient_dim, vectors) -> Subspace:
    vecs = [tuple(field.of(v) for v in vec) for vec in vectors]
    for v in vecs:
        if len(v) != ambient_dim:
            raise LinalgError("spanning vector has wrong length")
    if not vecs:
        return Subspace(field, ambient_dim, (), ())
    m, pivots = rref(Matrix(field, len(vecs), ambient_dim, tuple(vecs)))
    basis = tuple(m.entries[i] for i in range(len(pivots)))
    return Subspace(field, ambient_dim, basis, tuple(pivots))


def zero_subspace(field, ambient_dim) -> Subspace:
    return Subspace(field, ambient_dim, (), ())


def full_subspace(field, ambient_dim) -> Subspace:
    eye = Matrix.identity(field, ambient_dim)
    return Subspace(field, ambient_dim, eye.entries, tuple(range(ambient_dim)))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.field != b.field or a.ambient_dim != b.ambient_dim:
        raise LinalgError("subspace sum mismatch")
    return span(a.field, a.ambient_dim, list(a.basis) + list(b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rows (u|u) for u in A and (w|0) for w in B; the RREF rows
    whose left half vanished carry an intersection basis in the right half."""
    if a.field != b.field or a.ambient_dim != b.ambient_dim:
        raise LinalgError("subspace intersection mismatch")
    f, n = a.field, a.ambient_dim
    rows = [u + u for u in a.basis] + [w + vec_zero(f, n) for w in b.basis]
    if not rows:
        return zero_subspace(f, n)
    m, pivots = rref(Matrix(f, len(rows), 2 * n, tuple(rows)))
    inter = [row[n:] for row, piv in zip(m.entries, pivots) if piv >= n]
    return span(f, n, inter)


def kernel(m: Matrix) -> Subspace:
    """{x : M @ x = 0} as a subspace of F^ncols."""
    f = m.field
    red, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    for fc in free:
        v = [f.zero] * m.ncols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(red.entries[i][fc])
        basis.append(tuple(v))
    return span(f, m.ncols, basis)


def image(m: Matrix) -> Subspace:
    """Column space of M as a subspace of F^nrows."""
    return span(m.field, m.nrows, m.columns())


def solve(m: Matrix, rhs):
    """One exact solution of M @ x = rhs (free coordinates zero), or None."""
    f = m.field
    b = Matrix(f, m.nrows, 1, tuple((f.of(v),) for v in rhs))
    red, pivots = rref(m.hstack(b))
    if any(p == m.ncols for p in pivots):
        return None
    x = [f.zero] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = red.entries[i][m.ncols]
    return tuple(x)


@dataclass(frozen=True)
class QuotientStructure:
    """F^n / ideal with a fixed section through standard coordinates.

    Coset representatives are the standard coordinates that are not pivot
    columns of the ideal's canonical basis; projection(section) = identity and
    kernel(projection) = ideal.
    """

    field: Field
    ambient_dim: int
    ideal: Subspace
    coset_coords: tuple
    projection: Matrix  # (quot_dim x n)
    section: Matrix  # (n x quot_dim)

    @property
    def dim(self):
        return len(self.coset_coords)

    def project(self, vec):
        return self.projection.apply(tuple(self.field.of(v) for v in vec))

    def lift(self, coords):
        return self.section.apply(tuple(self.field.of(v) for v in coords))


def quotient(ideal: Subspace) -> QuotientStructure:
    f, n = ideal.field, ideal.ambient_dim
    coset = tuple(j for j in range(n) if j not in ideal.pivots)
    cols = []
    for i in range(n):
        e = [f.zero] * n
        e[i] = f.one
        red = ideal.reduce(tuple(e))
        cols.append(tuple(red[c] for c in coset))
    proj = Matrix.from_columns(f, cols, nrows=len(coset)) if cols else Matrix.zeros(f, len(coset), 0)
    sec_cols = []
    for c in coset:
        e = [f.zero] * n
        e[c] = f.one
        sec_cols.append(tuple(e))
    sec = Matrix.from_columns(f, sec_cols, nrows=n) if sec_cols else Matrix.zeros(f, n, 0)
    return QuotientStructure(f, n, ideal, coset, proj, sec)


@dataclass(frozen=True)
class LinearMap:
    """A linear map between two stored subspaces, in basis coordinates."""

    domain: Subspace
    codomain: Subspace
    matrix: Matrix  # (codomain.dim x domain.dim)

    def __post_init__(self):
        if (self.matrix.nrows, self.matrix.ncols) != (self.codomain.dim, self.domain.dim):
            raise LinalgError("linear map shape mismatch")

    def apply_coords(self, coords):
        return self.matrix.apply(coords)

    def apply_ambient(self, vec):
        return self.codomain.vector_from_coords(self.matrix.apply(self.domain.coords_of(vec)))

    def compose(self, inner: "LinearMap") -> "LinearMap":
        if inner.codomain != self.domain:
            raise LinalgError("linear map composition mismatch")
        return LinearMap(inner.domain, self.codomain, self.matrix @ inner.matrix)

    def rank(self):
        return self.matrix.rank()

    @property
    def is_injective(self):
        return self.rank() == self.domain.dim

    @property
    def is_surjective(self):
        return self.rank() == self.codomain.dim

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    def inverse(self) -> "LinearMap":
        inv = self.matrix.inverse()
        if inv is None:
            raise LinalgError("linear map is not invertible")
        return LinearMap(self.codomain, self.domain, inv)

    @classmethod
    def identity(cls, space: Subspace) -> "LinearMap":
        return cls(space, space, Matrix.identity(space.field, space.dim))


TOTAL = "total"
UNDERDETERMINED = "underdetermined"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of solve_linear_map.

    status: "total" (map defined on all of domain), "underdetermined" (pairs
    only span a proper subspace; linear_map is the unique map on that span),
    or "inconsistent" (no linear map satisfies the pairs; linear_map is None).
    """

    status: str
    linear_map: LinearMap | None

    def __bool__(self):
        return self.status == TOTAL


def solve_linear_map(pairs, domain: Subspace, codomain: Subspace) -> SolveResult:
    """The unique linear map sending each v_in to v_out, if one exists.

    pairs is a sequence of (v_in, v_out) ambient vectors with v_in in domain
    and v_out in codomain (violations raise).  Deterministic: everything is
    read off one RREF of the stacked [coords_in | coords_out] system.
    """
    f = domain.field
    d1, d2 = domain.dim, codomain.dim
    rows = []
    for vin, vout in pairs:
        rows.append(domain.coords_of(vin) + codomain.coords_of(vout))
    if rows:
        red, pivots = rref(Matrix(f, len(rows), d1 + d2, tuple(rows)))
        if any(p >= d1 for p in pivots):
            return SolveResult(INCONSISTENT, None)
        red_rows = [red.entries[i] for i in range(len(pivots))]
    else:
        pivots, red_rows = [], []
    rank = len(pivots)

    def image_of(coord_vec):
        # express coord_vec over the left parts, accumulate the right parts
        v = list(coord_vec)
        out = [f.zero] * d2
        for row, piv in zip(red_rows, pivots):
            c = v[piv]
            if c:
                for t in range(d1):
                    v[t] = f.sub(v[t], f.mul(c, row[t]))
                for t in range(d2):
                    out[t] = f.add(out[t], f.mul(c, row[d1 + t]))
        if any(v):
            raise LinalgError("coordinate vector outside the solved span")
        return tuple(out)

    if d2 == 0:
        # the zero codomain admits exactly one map however few pairs were given
        return SolveResult(TOTAL, LinearMap(domain, codomain, Matrix.zeros(f, 0, d1)))
    if rank == d1:
        cols = [image_of(tuple(f.one if t == i else f.zero for t in range(d1))) for i in range(d1)]
        mat = Matrix.from_columns(f, cols, nrows=d2) if cols else Matrix.zeros(f, d2, 0)
        return SolveResult(TOTAL, LinearMap(domain, codomain, mat))

    # proper span: restate the map on span(v_in)
    sub = span(f, domain.ambient_dim, [domain.vector_from_coords(r[:d1]) for r in red_rows])
    cols = [image_of(domain.coords_of(b)) for b in sub.basis]
    mat = Matrix.from_columns(f, cols, nrows=d2) if cols else Matrix.zeros(f, d2, 0)
    return SolveResult(UNDERDETERMINED, LinearMap(sub, codomain, mat))
