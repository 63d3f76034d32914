"""Finite-dimensional Leibniz algebras and their relative (Lie-) invariants.

An algebra is a structure-constant tensor: structure[i][j] holds the
coordinates of [b_i, b_j].  The defining identity is

    [x, [y, z]] = [[x, y], z] - [[x, z], y]

checked on basis triples (bilinearity carries it to the whole space).

The "Lie-" invariants measure the failure of antisymmetry:
  * symmetric brackets [x, y] + [y, x] generate the Lie-commutator of two
    subspaces (as a two-sided ideal);
  * the Lie-center collects z with [x, z] + [z, x] = 0 for every x;
  * the squares [x, x] span the annihilator ideal, and dividing by it gives
    the largest Lie quotient (the liezation).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .linalg import (
    Matrix,
    QuotientStructure,
    Subspace,
    image,
    kernel,
    quotient,
    span,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    vec_zero,
    zero_subspace,
)


class AlgebraError(ValueError):
    pass


class MorphismError(ValueError):
    pass


def _default_names(dim):
    return tuple(f"e{i + 1}" for i in range(dim))


@dataclass(frozen=True)
class LeibnizAlgebra:
    field: Field
    dim: int
    structure: tuple  # structure[i][j] = coordinate tuple of [b_i, b_j]
    basis_names: tuple = ()

    def __post_init__(self):
        if len(self.structure) != self.dim or any(
            len(row) != self.dim or any(len(v) != self.dim for v in row) for row in self.structure
        ):
            raise AlgebraError("structure tensor shape mismatch")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", _default_names(self.dim))
        elif len(self.basis_names) != self.dim:
            raise AlgebraError("basis_names length mismatch")

    @classmethod
    def from_structure(cls, field, dim, entries, basis_names=()):
        """entries: {(i, j): vector} or full nested sequence."""
        if isinstance(entries, dict):
            tensor = [[list(vec_zero(field, dim)) for _ in range(dim)] for _ in range(dim)]
            for (i, j), vec in entries.items():
                if not (0 <= i < dim and 0 <= j < dim):
                    raise AlgebraError(f"bracket index ({i}, {j}) out of range for dim {dim}")
                if len(vec) != dim:
                    raise AlgebraError(f"bracket value for ({i}, {j}) must have {dim} coordinates")
                tensor[i][j] = list(vec)
        else:
            tensor = entries
        c = tuple(
            tuple(tuple(field.of(v) for v in tensor[i][j]) for j in range(dim))
            for i in range(dim)
        )
        return cls(field, dim, c, tuple(basis_names))

    @classmethod
    def abelian(cls, field, dim):
        z = vec_zero(field, dim)
        return cls(field, dim, tuple(tuple(z for _ in range(dim)) for _ in range(dim)))

    def bracket_basis(self, i, j):
        return self.structure[i][j]

    def bracket(self, x, y):
        """[x, y] for coordinate tuples x, y (bilinear tensor contraction)."""
        f = self.field
        out = vec_zero(f, self.dim)
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.structure[i]
            for j, yj in enumerate(y):
                if yj:
                    out = vec_add(f, out, vec_scale(f, f.mul(xi, yj), row[j]))
        return out

    def symmetric_bracket(self, x, y):
        return vec_add(self.field, self.bracket(x, y), self.bracket(y, x))

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)


@dataclass(frozen=True)
class Violation:
    triple: tuple  # basis indices (i, j, k)
    residual: tuple  # [b_i,[b_j,b_k]] - [[b_i,b_j],b_k] + [[b_i,b_k],b_j]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def validate(alg: LeibnizAlgebra) -> ValidationReport:
    """Check the Leibniz identity on all basis triples."""
    f = alg.field
    bad = []
    for i, j, k in itertools.product(range(alg.dim), repeat=3):
        lhs = alg.bracket(alg.basis_vector(i), alg.bracket_basis(j, k))
        rhs = vec_sub(
            f,
            alg.bracket(alg.bracket_basis(i, j), alg.basis_vector(k)),
            alg.bracket(alg.bracket_basis(i, k), alg.basis_vector(j)),
        )
        res = vec_sub(f, lhs, rhs)
        if not vec_is_zero(f, res):
            bad.append(Violation((i, j, k), res))
    return ValidationReport(not bad, tuple(bad))


def ideal_closure(alg: LeibnizAlgebra, vectors) -> Subspace:
    """Smallest two-sided ideal containing the given vectors or subspace."""
    if isinstance(vectors, Subspace):
        vectors = vectors.basis
    space = span(alg.field, alg.dim, vectors)
    while True:
        extra = []
        for v in space.basis:
            for j in range(alg.dim):
                e = alg.basis_vector(j)
                extra.append(alg.bracket(v, e))
                extra.append(alg.bracket(e, v))
        bigger = span(alg.field, alg.dim, list(space.basis) + extra)
        if bigger.dim == space.dim:
            return space
        space = bigger


def is_ideal(alg: LeibnizAlgebra, s: Subspace) -> bool:
    for v in s.basis:
        for j in range(alg.dim):
            e = alg.basis_vector(j)
            if not (s.contains(alg.bracket(v, e)) and s.contains(alg.bracket(e, v))):
                return False
    return True


def lie_commutator(alg: LeibnizAlgebra, m: Subspace, n: Subspace) -> Subspace:
    """Two-sided ideal generated by [x, y] + [y, x], x in m, y in n."""
    gens = [alg.symmetric_bracket(u, v) for u in m.basis for v in n.basis]
    return ideal_closure(alg, gens)


def lie_commutator_of(alg: LeibnizAlgebra) -> Subspace:
    full = span(alg.field, alg.dim, [alg.basis_vector(i) for i in range(alg.dim)])
    return lie_commutator(alg, full, full)


def lie_center(alg: LeibnizAlgebra) -> Subspace:
    """{z : [x, z] + [z, x] = 0 for all x}; a two-sided ideal."""
    f = alg.field
    rows = []
    for j in range(alg.dim):
        # row block: z |-> [b_j, z] + [z, b_j], column i = [b_j, b_i] + [b_i, b_j]
        cols = [alg.symmetric_bracket(alg.basis_vector(j), alg.basis_vector(i))
                for i in range(alg.dim)]
        for r in range(alg.dim):
            rows.append(tuple(c[r] for c in cols))
    if not rows:
        return zero_subspace(f, 0)
    return kernel(Matrix(f, len(rows), alg.dim, tuple(rows)))


def annihilator_ideal(alg: LeibnizAlgebra) -> Subspace:
    """Span of all squares [x, x], closed into an ideal.

    Polarized generators: [b_i, b_i] and [b_i + b_j, b_i + b_j] for i < j.
    """
    gens = [alg.bracket_basis(i, i) for i in range(alg.dim)]
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            v = vec_add(alg.field, alg.basis_vector(i), alg.basis_vector(j))
            gens.append(alg.bracket(v, v))
    return ideal_closure(alg, gens)


def is_abelian(alg: LeibnizAlgebra) -> bool:
    return all(vec_is_zero(alg.field, alg.bracket_basis(i, j))
               for i in range(alg.dim) for j in range(alg.dim))


def has_trivial_lie_commutator(alg: LeibnizAlgebra) -> bool:
    """True exactly when the algebra is a Lie algebra (no nonzero squares)."""
    return annihilator_ideal(alg).dim == 0


@dataclass(frozen=True)
class AlgebraMorphism:
    """A bracket-preserving linear map, validated at construction."""

    source: LeibnizAlgebra
    target: LeibnizAlgebra
    matrix: Matrix  # (target.dim x source.dim)

    def __post_init__(self):
        if (self.matrix.nrows, self.matrix.ncols) != (self.target.dim, self.source.dim):
            raise MorphismError("morphism matrix shape mismatch")
        if self.source.field != self.target.field or self.matrix.field != self.source.field:
            raise MorphismError("morphism field mismatch")
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.matrix.apply(self.source.bracket_basis(i, j))
                rhs = self.target.bracket(self.matrix.column(i), self.matrix.column(j))
                if lhs != rhs:
                    raise MorphismError(f"bracket not preserved on basis pair ({i}, {j})")

    @classmethod
    def identity(cls, alg: LeibnizAlgebra) -> "AlgebraMorphism":
        return cls(alg, alg, Matrix.identity(alg.field, alg.dim))

    def apply(self, vec):
        return self.matrix.apply(vec)

    def compose(self, inner: "AlgebraMorphism") -> "AlgebraMorphism":
        if inner.target != self.source:
            raise MorphismError("morphism composition mismatch")
        return AlgebraMorphism(inner.source, self.target, self.matrix @ inner.matrix)

    def kernel_space(self) -> Subspace:
        return kernel(self.matrix)

    def image_space(self) -> Subspace:
        return image(self.matrix)

    @property
    def is_injective(self):
        return self.kernel_space().dim == 0

    @property
    def is_surjective(self):
        return self.image_space().dim == self.target.dim

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    def inverse(self) -> "AlgebraMorphism":
        inv = self.matrix.inverse()
        if inv is None:
            raise MorphismError("morphism is not invertible")
        return AlgebraMorphism(self.target, self.source, inv)


@dataclass(frozen=True)
class QuotientAlgebra:
    algebra: LeibnizAlgebra
    projection: AlgebraMorphism
    structure: QuotientStructure


def quotient_algebra(alg: LeibnizAlgebra, ideal: Subspace, basis_names=()) -> QuotientAlgebra:
    """alg / ideal with the induced bracket; errors if ideal is not two-sided.

    Checks afterwards that the projection intertwines the brackets, i.e. the
    induced tensor is well defined.
    """
    if not is_ideal(alg, ideal):
        raise AlgebraError("quotient by a subspace that is not a two-sided ideal")
    qs = quotient(ideal)
    f = alg.field
    names = tuple(basis_names) if basis_names else tuple(
        alg.basis_names[c] for c in qs.coset_coords)
    tensor = tuple(
        tuple(qs.project(alg.bracket(qs.section.column(i), qs.section.column(j)))
              for j in range(qs.dim))
        for i in range(qs.dim)
    )
    q_alg = LeibnizAlgebra(f, qs.dim, tensor, names)
    proj = AlgebraMorphism(alg, q_alg, qs.projection)  # construction re-checks brackets
    return QuotientAlgebra(q_alg, proj, qs)


@dataclass(frozen=True)
class Liezation:
    algebra: LeibnizAlgebra  # the Lie quotient
    projection: AlgebraMorphism
    annihilator: Subspace


def liezation(alg: LeibnizAlgebra) -> Liezation:
    ann = annihilator_ideal(alg)
    q = quotient_algebra(alg, ann)
    return Liezation(q.algebra, q.projection, ann)


def direct_product(a: LeibnizAlgebra, b: LeibnizAlgebra) -> LeibnizAlgebra:
    if a.field != b.field:
        raise AlgebraError("direct product over different fields")
    f = a.field
    n = a.dim + b.dim
    z = vec_zero(f, n)

    def emb_a(v):
        return tuple(v) + vec_zero(f, b.dim)

    def emb_b(v):
        return vec_zero(f, a.dim) + tuple(v)

    tensor = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < a.dim and j < a.dim:
                row.append(emb_a(a.bracket_basis(i, j)))
            elif i >= a.dim and j >= a.dim:
                row.append(emb_b(b.bracket_basis(i - a.dim, j - a.dim)))
            else:
                row.append(z)
        tensor.append(tuple(row))
    names = tuple(f"l_{s}" for s in a.basis_names) + tuple(f"r_{s}" for s in b.basis_names)
    return LeibnizAlgebra(f, n, tuple(tensor), names)


def subalgebra_check(alg: LeibnizAlgebra, s: Subspace) -> bool:
    return all(s.contains(alg.bracket(u, v)) for u in s.basis for v in s.basis)


@dataclass(frozen=True)
class Subalgebra:
    algebra: LeibnizAlgebra
    inclusion: AlgebraMorphism


def subalgebra(alg: LeibnizAlgebra, s: Subspace, basis_names=()) -> Subalgebra:
    """The restricted algebra on a bracket-closed subspace, with inclusion."""
    if not subalgebra_check(alg, s):
        raise AlgebraError("subspace is not closed under the bracket")
    f = alg.field
    tensor = tuple(
        tuple(s.coords_of(alg.bracket(u, v)) for v in s.basis)
        for u in s.basis
    )
    names = tuple(basis_names) if basis_names else tuple(f"s{i + 1}" for i in range(s.dim))
    sub = LeibnizAlgebra(f, s.dim, tensor, names)
    incl = AlgebraMorphism(sub, alg, s.basis_matrix().transpose())
    return Subalgebra(sub, incl)


def subalgebra_closure(alg: LeibnizAlgebra, vectors) -> Subspace:
    """Smallest bracket-closed subspace containing the vectors or subspace."""
    if isinstance(vectors, Subspace):
        vectors = vectors.basis
    space = span(alg.field, alg.dim, vectors)
    while True:
        extra = [alg.bracket(u, v) for u in space.basis for v in space.basis]
        bigger = span(alg.field, alg.dim, list(space.basis) + extra)
        if bigger.dim == space.dim:
            return space
        space = bigger


def full_space(alg: LeibnizAlgebra) -> Subspace:
    return span(alg.field, alg.dim, [alg.basis_vector(i) for i in range(alg.dim)])
