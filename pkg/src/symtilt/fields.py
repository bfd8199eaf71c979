"""Exact ground fields: the rationals and prime fields F_p.

Scalars are plain Python objects: ``Fraction`` over Q and ``int`` in
``range(p)`` over F_p.  Every arithmetic result that leaves this module
is normalised through :meth:`Field.norm`.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import StructuralError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Either Q (``p is None``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise StructuralError(f"F_{p}: characteristic must be prime")
        self.p = p

    @classmethod
    def parse(cls, spec) -> "Field":
        """Accept ``"Q"``, ``"Fp:5"``, ``{"Fp": 5}`` or a Field."""
        if isinstance(spec, Field):
            return spec
        if spec in (None, "Q", "QQ"):
            return cls()
        if isinstance(spec, dict) and "Fp" in spec:
            return cls(int(spec["Fp"]))
        if isinstance(spec, str) and spec.startswith("Fp:"):
            return cls(int(spec[3:]))
        raise StructuralError(f"unrecognised field specification {spec!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise StructuralError(f"{x} has no image in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x if self.p is None else x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(x, self.p - 2, self.p)

    def elements(self):
        """All field elements; prime fields only."""
        if self.p is None:
            raise StructuralError("Q is infinite")
        return range(self.p)

    def to_str(self, x) -> str:
        return str(x)

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F_{self.p}"


QQ = Field()
