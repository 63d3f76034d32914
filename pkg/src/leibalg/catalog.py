"""Built-in example algebras.

Only algebras used throughout the documentation and tests ship here: the two
Leibniz algebras of the worked isoclinism example, the two-dimensional
quotient that exhibits their common commutator structure, and parametric
abelian algebras.  Entries are constructed over a caller-chosen field
(default Q); their structure constants are integers, so any supported field
works.
"""

from __future__ import annotations

from .algebra import LeibnizAlgebra
from .fields import Field


class CatalogError(KeyError):
    pass


def _paper_g1(field):
    return LeibnizAlgebra.from_structure(
        field, 2, {(0, 0): (0, 1), (1, 0): (0, 1)}, basis_names=("e1", "e2"))


def _paper_g2(field):
    return LeibnizAlgebra.from_structure(
        field, 3,
        {(0, 0): (0, 0, 1), (1, 0): (0, 0, 1), (2, 0): (0, 0, 1)},
        basis_names=("a1", "a2", "a3"))


def _paper_q2(field):
    return LeibnizAlgebra.from_structure(
        field, 2, {(0, 0): (0, 1), (1, 0): (0, 1)}, basis_names=("a1", "a3"))


_FIXED = {
    "paper_g1": (_paper_g1, "dim 2: [e1,e1] = [e2,e1] = e2"),
    "paper_g2": (_paper_g2, "dim 3: [a1,a1] = [a2,a1] = [a3,a1] = a3"),
    "paper_q2": (_paper_q2, "dim 2 quotient of paper_g2 by its Lie-center"),
}

ABELIAN_PREFIX = "abelian_"


def catalog_names():
    """Entry names; abelian_n stands for the family abelian_1, abelian_2, ..."""
    return tuple(sorted(_FIXED)) + ("abelian_n",)


def describe(name: str) -> str:
    if name in _FIXED:
        return _FIXED[name][1]
    if name == "abelian_n":
        return "parametric abelian algebra: use abelian_<dim>, e.g. abelian_3"
    raise CatalogError(f"unknown catalog entry {name!r}")


def catalog_entry(name: str, field: Field | None = None) -> LeibnizAlgebra:
    field = field if field is not None else Field.rationals()
    if name in _FIXED:
        return _FIXED[name][0](field)
    if name.startswith(ABELIAN_PREFIX):
        suffix = name[len(ABELIAN_PREFIX):]
        if suffix == "n":
            raise CatalogError(
                "abelian_n is parametric: pick a dimension, e.g. abelian_2")
        if not suffix.isdigit():
            raise CatalogError(f"unknown catalog entry {name!r}")
        return LeibnizAlgebra.abelian(field, int(suffix))
    raise CatalogError(f"unknown catalog entry {name!r}")
