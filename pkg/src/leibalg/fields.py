"""Exact scalar arithmetic over the rationals and over odd prime fields.

Scalars are kept as plain Python values: `int` residues in [0, p) for a
prime field, `fractions.Fraction` (lowest terms, positive denominator,
which Fraction guarantees) for the rationals.  A Field instance supplies
the arithmetic so that matrices never need to know which case they are in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# Largest prime modulus accepted.  Keeps every product of two canonical
# residues (and any pivot arithmetic at ambient dimension <= 16) inside
# int64 for the compiled kernels.
MAX_PRIME = 1 << 20


class FieldError(ValueError):
    """Raised for unusable coefficient fields or non-field scalars."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (p is None) or the prime field F_p for an odd prime p.

    Characteristic 2 is rejected: the constructions downstream divide by 2
    (polarization of symmetric brackets).
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p == 2:
                raise FieldError("characteristic 2 is not supported (2 must be invertible)")
            if not _is_prime(self.p):
                raise FieldError(f"modulus {self.p} is not prime")
            if self.p > MAX_PRIME:
                raise FieldError(f"modulus {self.p} exceeds the supported bound {MAX_PRIME}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    # -- canonical values ---------------------------------------------------

    def of(self, value):
        """Canonicalize an int, Fraction or "a/b" string into this field."""
        if isinstance(value, str):
            try:
                value = Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"cannot parse scalar {value!r}: {exc}") from None
        if isinstance(value, Fraction):
            if self.p is None:
                return value
            den = value.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, self.p - 2, self.p) % self.p
        if isinstance(value, int):
            return value % self.p if self.p is not None else Fraction(value)
        raise FieldError(f"cannot coerce {value!r} into {self}")

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p) if self.p is not None else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- serialization ------------------------------------------------------

    def scalar_to_json(self, a):
        """JSON value for a scalar: int for F_p, canonical string for Q."""
        return a if self.p is not None else str(a)
