"""The computable fragment of low-degree relative homology.

For a Lie-central extension 0 -> n -> g -> q -> 0 the pieces that are finite
dimensional without a free presentation are:

* HL1 of an algebra, which is its liezation;
* the image of the connecting map theta, which equals n meet [g,g]_Lie
  (reported in n-coordinates through the injection chi);
* the tail  n -> HL1(g) -> HL1(q) -> 0  of the six-term sequence;
* the end  [g,g]_Lie -> [q,q]_Lie -> 0  of the extended sequence, whose
  kernel is exactly the theta image.

The second homology itself is out of reach here (its Hopf-type formula
quantifies over a free presentation), so the stem-cover question can only be
answered up to the data theta provides: stemness is decidable, the cover
property is not, and is_stem_cover_candidate says so explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LeibnizAlgebra, lie_commutator_of, liezation
from .extensions import CentralExtension, is_stem_extension
from .linalg import (
    LinearMap,
    Matrix,
    image,
    intersect,
    kernel,
    quotient,
    solve,
    span,
    zero_subspace,
)


@dataclass(frozen=True)
class JunctionCheck:
    """Exactness data at one junction: incoming image vs outgoing kernel."""

    label: str
    space_dim: int
    image_dim: int
    kernel_dim: int
    exact: bool


@dataclass(frozen=True)
class SequenceReport:
    ok: bool
    junctions: tuple
    spaces: tuple  # (label, dim) pairs, in sequence order

    def __bool__(self):
        return self.ok


def hl1_lie(g: LeibnizAlgebra) -> LeibnizAlgebra:
    """First relative homology of an algebra: its liezation."""
    return liezation(g).algebra


def theta_image(e: CentralExtension):
    """Image of the connecting map, as a subspace of n.

    Equals chi^{-1}(chi(n) meet [g,g]_Lie); chi is injective, so pulling the
    intersection back through it is exact and unambiguous.
    """
    meet = intersect(e.chi.image_space(), lie_commutator_of(e.g))
    coords = []
    for v in meet.basis:
        y = solve(e.chi.matrix, v)
        if y is None:
            raise AssertionError("intersection escaped the image of chi")
        coords.append(y)
    if not coords:
        return zero_subspace(e.n.field, e.n.dim)
    return span(e.n.field, e.n.dim, coords)


def _induced_on_liezations(e: CentralExtension):
    """The maps n -> HL1(g) and HL1(g) -> HL1(q) in liezation coordinates."""
    lz_g = liezation(e.g)
    lz_q = liezation(e.q)
    proj_g = lz_g.projection.matrix
    proj_q = lz_q.projection.matrix
    a = proj_g @ e.chi.matrix
    b0 = proj_q @ e.pi.matrix
    for v in lz_g.annihilator.basis:
        if any(b0.apply(v)):
            raise AssertionError("pi does not descend to the liezations")
    sect_g = quotient(lz_g.annihilator).section
    b = b0 @ sect_g
    return lz_g, lz_q, a, b


def check_sequence_tail(e: CentralExtension) -> SequenceReport:
    """Exactness of  n -> HL1(g) -> HL1(q) -> 0."""
    lz_g, lz_q, a, b = _induced_on_liezations(e)
    im_a = image(a)
    ker_b = kernel(b)
    im_b = image(b)
    middle = JunctionCheck("HL1(g)", lz_g.algebra.dim, im_a.dim, ker_b.dim,
                           im_a == ker_b)
    end = JunctionCheck("HL1(q)", lz_q.algebra.dim, im_b.dim, lz_q.algebra.dim,
                        im_b.dim == lz_q.algebra.dim)
    spaces = (("n", e.n.dim), ("HL1(g)", lz_g.algebra.dim),
              ("HL1(q)", lz_q.algebra.dim))
    return SequenceReport(middle.exact and end.exact, (middle, end), spaces)


def pi_prime(e: CentralExtension) -> LinearMap:
    """Restriction of pi to the Lie-commutators."""
    com_g = lie_commutator_of(e.g)
    com_q = lie_commutator_of(e.q)
    cols = [com_q.coords_of(e.pi.apply(v)) for v in com_g.basis]
    f = e.g.field
    mat = (Matrix.from_columns(f, cols, nrows=com_q.dim) if cols
           else Matrix.zeros(f, com_q.dim, 0))
    return LinearMap(com_g, com_q, mat)


def check_sequence_nine(e: CentralExtension) -> SequenceReport:
    """Kernel and surjectivity of  [g,g]_Lie -> [q,q]_Lie -> 0.

    Exactness here is the computable consequence of the long sequence: the
    kernel of the restricted pi must be exactly the theta image, and the map
    must be onto.
    """
    restricted = pi_prime(e)
    com_g, com_q = restricted.domain, restricted.codomain
    ker_coords = kernel(restricted.matrix)
    ker_ambient = (span(e.g.field, e.g.dim,
                        [com_g.vector_from_coords(c) for c in ker_coords.basis])
                   if ker_coords.dim else zero_subspace(e.g.field, e.g.dim))
    theta_n = theta_image(e)
    theta_ambient = (span(e.g.field, e.g.dim,
                          [e.chi.apply(v) for v in theta_n.basis])
                     if theta_n.dim else zero_subspace(e.g.field, e.g.dim))
    head = JunctionCheck("[g,g]_Lie", com_g.dim, theta_ambient.dim,
                         ker_ambient.dim, theta_ambient == ker_ambient)
    end = JunctionCheck("[q,q]_Lie", com_q.dim, restricted.rank(), com_q.dim,
                        restricted.is_surjective)
    spaces = (("[g,g]_Lie", com_g.dim), ("[q,q]_Lie", com_q.dim))
    return SequenceReport(head.exact and end.exact, (head, end), spaces)


NOT_STEM = "not_stem"
STEM = "stem"
UNDECIDABLE_COVER = "undecidable_cover"


@dataclass(frozen=True)
class StemCoverReport:
    """Stemness is decided; the cover property needs dim HL2, which is not
    computed, so for stem extensions the cover verdict is undecidable_cover
    together with the data theta does provide."""

    verdict: str  # NOT_STEM or STEM
    cover: str  # "not_applicable" or UNDECIDABLE_COVER
    n_dim: int
    theta_dim: int
    theta_surjective: bool  # theta_image = n; necessary for a cover


def is_stem_cover_candidate(e: CentralExtension) -> StemCoverReport:
    theta = theta_image(e)
    surj = theta.dim == e.n.dim
    if not is_stem_extension(e):
        return StemCoverReport(NOT_STEM, "not_applicable", e.n.dim, theta.dim, surj)
    return StemCoverReport(STEM, UNDECIDABLE_COVER, e.n.dim, theta.dim, surj)
