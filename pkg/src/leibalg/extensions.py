"""Lie-central extensions of Leibniz algebras and their constructions.

An extension 0 -> n --chi--> g --pi--> q -> 0 is Lie-central when the image
of chi lies in the Lie-center of g, equivalently [chi(n), g]_Lie = 0.  The
commutator map C(x, y) = [x^, y^] + [y^, x^] on lifts is then independent of
the lifts and is the bilinear invariant that isoclinism matches up.

Constructions: the canonical extension by the Lie-center, pulling an
extension back along an isomorphism of quotients, the diagonal pullback of
two extensions, the product with a Lie algebra, and the quotient by an ideal
inside the kernel part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraMorphism,
    LeibnizAlgebra,
    annihilator_ideal,
    direct_product,
    full_space,
    has_trivial_lie_commutator,
    is_ideal,
    lie_center,
    lie_commutator,
    quotient_algebra,
    subalgebra,
)
from .linalg import (
    Matrix,
    Subspace,
    kernel,
    solve,
    span,
    vec_add,
    vec_zero,
)


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class CentralExtension:
    """0 -> n --chi--> g --pi--> q -> 0 with a fixed linear section of pi.

    Not validated at construction so that broken candidates can be fed to
    validate_extension; every constructor in this module produces valid ones.
    """

    n: LeibnizAlgebra
    g: LeibnizAlgebra
    q: LeibnizAlgebra
    chi: AlgebraMorphism
    pi: AlgebraMorphism
    section: Matrix  # (g.dim x q.dim), pi . section = id

    def lift(self, q_vec):
        return self.section.apply(q_vec)

    def kernel_subspace(self) -> Subspace:
        return self.chi.image_space()


@dataclass(frozen=True)
class ExtensionReport:
    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def compute_section(pi: AlgebraMorphism) -> Matrix:
    """A deterministic linear section of a surjection (free coordinates 0)."""
    f = pi.source.field
    cols = []
    for j in range(pi.target.dim):
        rhs = [f.zero] * pi.target.dim
        rhs[j] = f.one
        x = solve(pi.matrix, tuple(rhs))
        if x is None:
            raise ExtensionError("map is not surjective, no section exists")
        cols.append(x)
    return (Matrix.from_columns(f, cols, nrows=pi.source.dim)
            if cols else Matrix.zeros(f, pi.source.dim, 0))


def make_extension(n, g, q, chi, pi, section=None) -> CentralExtension:
    if section is None:
        section = compute_section(pi)
    return CentralExtension(n, g, q, chi, pi, section)


def validate_extension(e: CentralExtension) -> ExtensionReport:
    """Exactness, injectivity/surjectivity, Lie-centrality, section check."""
    failures = []
    if e.chi.source != e.n or e.chi.target != e.g:
        failures.append("chi endpoints do not match n -> g")
    if e.pi.source != e.g or e.pi.target != e.q:
        failures.append("pi endpoints do not match g -> q")
    if not e.chi.is_injective:
        failures.append("chi is not injective")
    if not e.pi.is_surjective:
        failures.append("pi is not surjective")
    if e.chi.image_space() != e.pi.kernel_space():
        failures.append("image(chi) != kernel(pi)")
    cm = lie_commutator(e.g, e.chi.image_space(), full_space(e.g))
    if cm.dim != 0:
        failures.append("[chi(n), g]_Lie != 0 (extension is not Lie-central)")
    prod = e.pi.matrix @ e.section
    if prod != Matrix.identity(e.g.field, e.q.dim):
        failures.append("section is not a right inverse of pi")
    return ExtensionReport(not failures, tuple(failures))


def canonical_extension(g: LeibnizAlgebra) -> CentralExtension:
    """0 -> Z_Lie(g) -> g -> g/Z_Lie(g) -> 0."""
    z = lie_center(g)
    sub = subalgebra(g, z, basis_names=tuple(f"z{i + 1}" for i in range(z.dim)))
    quot = quotient_algebra(g, z)
    return CentralExtension(sub.algebra, g, quot.algebra, sub.inclusion,
                            quot.projection, quot.structure.section)


@dataclass(frozen=True)
class CommutatorMap:
    """C(x, y) = [x^, y^] + [y^, x^] on section lifts, tabulated on basis pairs.

    Values live in the ambient of g and span [g, g]_Lie; C is symmetric and,
    for a Lie-central extension, does not depend on the choice of lifts.
    """

    extension: CentralExtension
    table: tuple  # table[i][j] = C(b_i, b_j) in g coordinates

    def value_on_basis(self, i, j):
        return self.table[i][j]

    def value(self, x_q, y_q):
        """Bilinear evaluation on arbitrary quotient coordinate vectors."""
        f = self.extension.g.field
        out = vec_zero(f, self.extension.g.dim)
        for i, xi in enumerate(x_q):
            if not xi:
                continue
            for j, yj in enumerate(y_q):
                if yj:
                    out = vec_add(f, out, tuple(f.mul(f.mul(xi, yj), t) for t in self.table[i][j]))
        return out

    def value_span(self) -> Subspace:
        vals = [self.table[i][j] for i in range(len(self.table)) for j in range(len(self.table))]
        return span(self.extension.g.field, self.extension.g.dim, vals)

    def radical(self) -> Subspace:
        """{x in q : C(x, y) = 0 for all y}, an isoclinism-invariant subspace."""
        f = self.extension.g.field
        m = self.extension.q.dim
        rows = []
        for j in range(m):
            for r in range(self.extension.g.dim):
                rows.append(tuple(self.table[i][j][r] for i in range(m)))
        if not rows:
            return span(f, m, [self.extension.q.basis_vector(i) for i in range(m)])
        return kernel(Matrix(f, len(rows), m, tuple(rows)))


def commutator_map(e: CentralExtension) -> CommutatorMap:
    g, q = e.g, e.q
    lifts = [e.section.column(j) for j in range(q.dim)]
    table = tuple(
        tuple(g.symmetric_bracket(lifts[i], lifts[j]) for j in range(q.dim))
        for i in range(q.dim)
    )
    return CommutatorMap(e, table)


@dataclass(frozen=True)
class ExtensionMorphism:
    """A commuting triple (alpha, beta, gamma) between two extensions."""

    source: CentralExtension
    target: CentralExtension
    alpha: AlgebraMorphism  # n1 -> n2
    beta: AlgebraMorphism  # g1 -> g2
    gamma: AlgebraMorphism  # q1 -> q2

    def __post_init__(self):
        s, t = self.source, self.target
        if (self.alpha.source, self.alpha.target) != (s.n, t.n):
            raise ExtensionError("alpha endpoints mismatch")
        if (self.beta.source, self.beta.target) != (s.g, t.g):
            raise ExtensionError("beta endpoints mismatch")
        if (self.gamma.source, self.gamma.target) != (s.q, t.q):
            raise ExtensionError("gamma endpoints mismatch")
        if self.beta.matrix @ s.chi.matrix != t.chi.matrix @ self.alpha.matrix:
            raise ExtensionError("left square does not commute (beta.chi1 != chi2.alpha)")
        if self.gamma.matrix @ s.pi.matrix != t.pi.matrix @ self.beta.matrix:
            raise ExtensionError("right square does not commute (gamma.pi1 != pi2.beta)")

    @property
    def is_isomorphism(self):
        return self.alpha.is_bijective and self.beta.is_bijective and self.gamma.is_bijective

    def compose(self, inner: "ExtensionMorphism") -> "ExtensionMorphism":
        if inner.target is not self.source and inner.target != self.source:
            raise ExtensionError("extension morphism composition mismatch")
        return ExtensionMorphism(inner.source, self.target,
                                 self.alpha.compose(inner.alpha),
                                 self.beta.compose(inner.beta),
                                 self.gamma.compose(inner.gamma))


def _embed_left(f, vec, right_dim):
    return tuple(vec) + vec_zero(f, right_dim)


def _embed_right(f, vec, left_dim):
    return vec_zero(f, left_dim) + tuple(vec)


@dataclass(frozen=True)
class BackwardExtension:
    extension: CentralExtension
    iso: ExtensionMorphism  # from the built extension onto the original


def backward_extension(e2: CentralExtension, eta: AlgebraMorphism) -> BackwardExtension:
    """Pull e2 back along an isomorphism eta: q1 -> q2 of quotient algebras.

    The total algebra is {(g, x) in g2 x q1 : pi2(g) = eta(x)}; the result is
    an extension of q1 by n2 together with the isomorphism of extensions
    (id, (g, x) |-> g, eta) onto e2.
    """
    if eta.target != e2.q:
        raise ExtensionError("eta must land in the quotient of the extension")
    if not eta.is_bijective:
        raise ExtensionError("eta is not an isomorphism")
    q1 = eta.source
    f = e2.g.field
    prod = direct_product(e2.g, q1)
    # membership: pi2(g) - eta(x) = 0
    constraint = e2.pi.matrix.hstack(
        Matrix(f, eta.matrix.nrows, eta.matrix.ncols,
               tuple(tuple(f.neg(v) for v in row) for row in eta.matrix.entries)))
    w = kernel(constraint)
    sub = subalgebra(prod, w)
    total = sub.algebra

    chi_cols = [w.coords_of(_embed_left(f, e2.chi.matrix.column(j), q1.dim))
                for j in range(e2.n.dim)]
    chi = AlgebraMorphism(e2.n, total,
                          Matrix.from_columns(f, chi_cols, nrows=total.dim)
                          if chi_cols else Matrix.zeros(f, total.dim, 0))
    pi_rows_src = [sub.inclusion.matrix.column(j)[e2.g.dim:] for j in range(total.dim)]
    pi = AlgebraMorphism(total, q1,
                         Matrix.from_columns(f, pi_rows_src, nrows=q1.dim)
                         if pi_rows_src else Matrix.zeros(f, q1.dim, 0))
    # natural section: x |-> (s2(eta x), x)
    sec_cols = [w.coords_of(tuple(e2.section.apply(eta.matrix.column(j))) + q1.basis_vector(j))
                for j in range(q1.dim)]
    section = (Matrix.from_columns(f, sec_cols, nrows=total.dim)
               if sec_cols else Matrix.zeros(f, total.dim, 0))
    ext = CentralExtension(e2.n, total, q1, chi, pi, section)

    beta_cols = [sub.inclusion.matrix.column(j)[:e2.g.dim] for j in range(total.dim)]
    beta = AlgebraMorphism(total, e2.g,
                           Matrix.from_columns(f, beta_cols, nrows=e2.g.dim)
                           if beta_cols else Matrix.zeros(f, e2.g.dim, 0))
    iso = ExtensionMorphism(ext, e2, AlgebraMorphism.identity(e2.n), beta, eta)
    return BackwardExtension(ext, iso)


@dataclass(frozen=True)
class PullbackExtension:
    """Diagonal pullback of e1 and e2 along eta: q1 -> q2.

    total = {(x, y) in g1 x g2 : eta(pi1 x) = pi2 y}, an extension of q1 by
    n1 x n2; to_first and to_second are the projection triples
    (sigma_i, tau_i, gamma_i) with gamma_1 = id and gamma_2 = eta.
    """

    extension: CentralExtension
    to_first: ExtensionMorphism
    to_second: ExtensionMorphism


def diagonal_pullback(e1: CentralExtension, e2: CentralExtension,
                      eta: AlgebraMorphism) -> PullbackExtension:
    if eta.source != e1.q or eta.target != e2.q:
        raise ExtensionError("eta must map the first quotient onto the second")
    if not eta.is_bijective:
        raise ExtensionError("eta is not an isomorphism")
    f = e1.g.field
    prod = direct_product(e1.g, e2.g)
    constraint = (eta.matrix @ e1.pi.matrix).hstack(
        Matrix(f, e2.pi.matrix.nrows, e2.pi.matrix.ncols,
               tuple(tuple(f.neg(v) for v in row) for row in e2.pi.matrix.entries)))
    w = kernel(constraint)
    sub = subalgebra(prod, w)
    total = sub.algebra

    n_prod = direct_product(e1.n, e2.n)
    chi_cols = []
    for j in range(e1.n.dim):
        chi_cols.append(w.coords_of(_embed_left(f, e1.chi.matrix.column(j), e2.g.dim)))
    for j in range(e2.n.dim):
        chi_cols.append(w.coords_of(_embed_right(f, e2.chi.matrix.column(j), e1.g.dim)))
    chi = AlgebraMorphism(n_prod, total,
                          Matrix.from_columns(f, chi_cols, nrows=total.dim)
                          if chi_cols else Matrix.zeros(f, total.dim, 0))

    tau1_cols = [sub.inclusion.matrix.column(j)[:e1.g.dim] for j in range(total.dim)]
    tau1 = AlgebraMorphism(total, e1.g,
                           Matrix.from_columns(f, tau1_cols, nrows=e1.g.dim)
                           if tau1_cols else Matrix.zeros(f, e1.g.dim, 0))
    tau2_cols = [sub.inclusion.matrix.column(j)[e1.g.dim:] for j in range(total.dim)]
    tau2 = AlgebraMorphism(total, e2.g,
                           Matrix.from_columns(f, tau2_cols, nrows=e2.g.dim)
                           if tau2_cols else Matrix.zeros(f, e2.g.dim, 0))
    rho = AlgebraMorphism(total, e1.q, e1.pi.matrix @ tau1.matrix)

    # natural section: x |-> (s1 x, s2 eta x)
    sec_cols = [w.coords_of(tuple(e1.section.column(j)) + tuple(e2.section.apply(eta.matrix.column(j))))
                for j in range(e1.q.dim)]
    section = (Matrix.from_columns(f, sec_cols, nrows=total.dim)
               if sec_cols else Matrix.zeros(f, total.dim, 0))
    ext = CentralExtension(n_prod, total, e1.q, chi, rho, section)

    sigma1 = AlgebraMorphism(n_prod, e1.n,
                             Matrix.identity(f, e1.n.dim).hstack(Matrix.zeros(f, e1.n.dim, e2.n.dim)))
    sigma2 = AlgebraMorphism(n_prod, e2.n,
                             Matrix.zeros(f, e2.n.dim, e1.n.dim).hstack(Matrix.identity(f, e2.n.dim)))
    to_first = ExtensionMorphism(ext, e1, sigma1, tau1, AlgebraMorphism.identity(e1.q))
    to_second = ExtensionMorphism(ext, e2, sigma2, tau2, eta)
    return PullbackExtension(ext, to_first, to_second)


@dataclass(frozen=True)
class ProductExtension:
    """e x a for a Lie algebra a: 0 -> n x a -> g x a -> q -> 0."""

    extension: CentralExtension
    onto_original: ExtensionMorphism  # (projections, id)
    from_original: ExtensionMorphism  # (embeddings, id)


def product_with_abelian(e: CentralExtension, a: LeibnizAlgebra) -> ProductExtension:
    if not has_trivial_lie_commutator(a):
        raise ExtensionError("factor must have trivial Lie-commutator (a Lie algebra)")
    f = e.g.field
    total = direct_product(e.g, a)
    n_new = direct_product(e.n, a)
    chi = AlgebraMorphism(
        n_new, total,
        Matrix.from_columns(
            f,
            [_embed_left(f, e.chi.matrix.column(j), a.dim) for j in range(e.n.dim)]
            + [_embed_right(f, a.basis_vector(j), e.g.dim) for j in range(a.dim)],
            nrows=total.dim)
        if n_new.dim else Matrix.zeros(f, total.dim, 0))
    pi = AlgebraMorphism(total, e.q, e.pi.matrix.hstack(Matrix.zeros(f, e.q.dim, a.dim)))
    section = e.section.vstack(Matrix.zeros(f, a.dim, e.q.dim))
    ext = CentralExtension(n_new, total, e.q, chi, pi, section)

    phi_prime = AlgebraMorphism(n_new, e.n,
                                Matrix.identity(f, e.n.dim).hstack(Matrix.zeros(f, e.n.dim, a.dim)))
    phi = AlgebraMorphism(total, e.g,
                          Matrix.identity(f, e.g.dim).hstack(Matrix.zeros(f, e.g.dim, a.dim)))
    onto = ExtensionMorphism(ext, e, phi_prime, phi, AlgebraMorphism.identity(e.q))

    mu_prime = AlgebraMorphism(e.n, n_new,
                               Matrix.identity(f, e.n.dim).vstack(Matrix.zeros(f, a.dim, e.n.dim)))
    mu = AlgebraMorphism(e.g, total,
                         Matrix.identity(f, e.g.dim).vstack(Matrix.zeros(f, a.dim, e.g.dim)))
    fro = ExtensionMorphism(e, ext, mu_prime, mu, AlgebraMorphism.identity(e.q))
    return ProductExtension(ext, onto, fro)


@dataclass(frozen=True)
class QuotientExtension:
    extension: CentralExtension
    onto: ExtensionMorphism  # the natural epimorphism triple (nat', nat, id)


def quotient_extension_by_alpha(e: CentralExtension, alpha_image: Subspace) -> QuotientExtension:
    """Quotient an extension by an ideal sitting inside the kernel part.

    alpha_image is a subspace of the total algebra g; it must be a two-sided
    ideal of g contained in image(chi).  The result is
    0 -> n/chi^{-1}(alpha_image) -> g/alpha_image -> q -> 0 together with the
    natural epimorphism triple from e.
    """
    f = e.g.field
    if not alpha_image.is_subspace_of(e.chi.image_space()):
        raise ExtensionError("alpha image is not contained in the kernel part image(chi)")
    if not is_ideal(e.g, alpha_image):
        raise ExtensionError("alpha image is not a two-sided ideal of the total algebra")
    g_quot = quotient_algebra(e.g, alpha_image)
    # preimage in n: kernel of (project mod alpha_image) . chi
    pre = kernel(g_quot.structure.projection @ e.chi.matrix)
    n_quot = quotient_algebra(e.n, pre)
    chi_bar = AlgebraMorphism(
        n_quot.algebra, g_quot.algebra,
        g_quot.structure.projection @ e.chi.matrix @ n_quot.structure.section)
    pi_bar = AlgebraMorphism(g_quot.algebra, e.q, e.pi.matrix @ g_quot.structure.section)
    section = g_quot.structure.projection @ e.section
    ext = CentralExtension(n_quot.algebra, g_quot.algebra, e.q, chi_bar, pi_bar, section)
    onto = ExtensionMorphism(e, ext, n_quot.projection, g_quot.projection,
                             AlgebraMorphism.identity(e.q))
    return QuotientExtension(ext, onto)


def is_stem_extension(e: CentralExtension) -> bool:
    """True when image(chi) lies inside the annihilator ideal of g
    (equivalently the liezations of g and q are isomorphic)."""
    return e.chi.image_space().is_subspace_of(annihilator_ideal(e.g))


def central_extension_from_ideal(g: LeibnizAlgebra, n_space: Subspace) -> CentralExtension:
    """0 -> n -> g -> g/n -> 0 for a bracket-closed ideal given as a subspace.

    Lie-centrality is NOT enforced here; run validate_extension on the result
    (useful for exercising the validator on non-central candidates).
    """
    sub = subalgebra(g, n_space)
    quot = quotient_algebra(g, n_space)
    return CentralExtension(sub.algebra, g, quot.algebra, sub.inclusion,
                            quot.projection, quot.structure.section)
