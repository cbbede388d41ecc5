"""Exact scalars: rationals (via ``fractions.Fraction``) and residues mod p."""

from fractions import Fraction
from typing import Any, Union

from .errors import FieldMismatch, MalformedStructure


class ModP:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other: Any) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"cannot combine F_{self.p} with F_{other.p}")
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        return NotImplemented

    def __add__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.value - other.value, self.p)

    def __rsub__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(other.value - self.value, self.p)

    def __mul__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModP(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "ModP":
        return ModP(-self.value, self.p)

    def inverse(self) -> "ModP":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return ModP(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"ModP({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


ExactScalar = Union[Fraction, ModP]


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
    """Descriptor of the base field: ``Field.rationals()`` or ``Field.prime(p)``."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise MalformedStructure(f"{characteristic} is not a prime")
        self.characteristic = characteristic

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, spec: Union[str, dict, "Field"]) -> "Field":
        """Accept "Q", "F2", "Fp:5", {"Q": ...} or {"Fp": 5}."""
        if isinstance(spec, Field):
            return spec
        if isinstance(spec, dict):
            if "Fp" in spec:
                return cls.prime(int(spec["Fp"]))
            if "Q" in spec:
                return cls.rationals()
            raise MalformedStructure(f"unknown field descriptor {spec!r}")
        text = str(spec).strip()
        if text in ("Q", "QQ"):
            return cls.rationals()
        if text.startswith("Fp:"):
            return cls.prime(int(text[3:]))
        if text.startswith("F") and text[1:].isdigit():
            return cls.prime(int(text[1:]))
        raise MalformedStructure(f"unknown field descriptor {spec!r}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.is_rational else f"F{self.characteristic}"

    @property
    def zero(self) -> ExactScalar:
        return self(0)

    @property
    def one(self) -> ExactScalar:
        return self(1)

    def __call__(self, value: Any) -> ExactScalar:
        """Coerce ints, "a/b" strings, Fractions and residues into the field."""
        if self.is_rational:
            if isinstance(value, ModP):
                raise FieldMismatch("residue given where a rational was expected")
            if isinstance(value, str):
                try:
                    return Fraction(value.strip())
                except ValueError as exc:
                    raise MalformedStructure(f"bad rational {value!r}") from exc
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, ModP):
            if value.p != p:
                raise FieldMismatch(f"residue mod {value.p} given for F_{p}")
            return value
        if isinstance(value, Fraction):
            return ModP(value.numerator, p) / ModP(value.denominator, p)
        if isinstance(value, str):
            return self(Fraction(value.strip()))
        return ModP(int(value), p)

    def encode(self, value: ExactScalar) -> Union[str, int]:
        """JSON encoding: "a/b" strings over Q, plain integers over F_p."""
        if self.is_rational:
            value = Fraction(value)
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return int(value)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __repr__(self) -> str:
        return f"Field({self.name})"
