"""Exact values in Z[zeta_d] for prime d.

``EisensteinInt`` is the d = 3 case ``a + b*w`` with ``w^2 = -1 - w``.
``CycloSum`` handles any prime d in the power basis ``1, z, ..., z^(d-2)``,
using ``1 + z + ... + z^(d-1) = 0`` to eliminate ``z^(d-1)``.

Python ints never overflow, so no range checks are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class EisensteinInt:
    a: int
    b: int

    def __add__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.a + other, self.b)
        if not isinstance(other, EisensteinInt):
            return NotImplemented
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.a * other, self.b * other)
        if not isinstance(other, EisensteinInt):
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    @property
    def order(self) -> int:
        return 3

    def conjugate(self) -> "EisensteinInt":
        # w -> w^2 = -1 - w
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_real(self) -> bool:
        return self.b == 0

    def equals_integer(self, n: int) -> bool:
        return self.b == 0 and self.a == n

    def as_integer(self) -> int:
        if self.b:
            raise ArithmeticError(f"{self} is not a rational integer")
        return self.a

    def times_root(self, k: int) -> "EisensteinInt":
        """Multiply by ``w^k``."""
        out = self
        for _ in range(k % 3):
            out = EisensteinInt(-out.b, out.a - out.b)
        return out

    def to_cyclo(self) -> "CycloSum":
        return CycloSum(3, (self.a, self.b))

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}w"


OMEGA = EisensteinInt(0, 1)


def eis_add(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    return x + y


def eis_mul(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    return x * y


def eis_conj(x: EisensteinInt) -> EisensteinInt:
    return x.conjugate()


def eis_norm(x: EisensteinInt) -> int:
    return x.norm()


@dataclass(frozen=True)
class CycloSum:
    """Element of Z[zeta_d], d prime, stored as ``d - 1`` power-basis coefficients."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if not _is_prime(self.order):
            raise ValueError(f"order {self.order} is not prime")
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.order - 1:
            raise ValueError(f"expected {self.order - 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_exponents(cls, d: int, vec: Sequence[int]) -> "CycloSum":
        """Reduce ``sum_k vec[k] z^k`` (``len(vec) == d``) to canonical form."""
        if len(vec) != d:
            raise ValueError(f"expected {d} exponent counts, got {len(vec)}")
        top = int(vec[d - 1])
        return cls(d, tuple(int(c) - top for c in vec[: d - 1]))

    @classmethod
    def integer(cls, d: int, n: int) -> "CycloSum":
        return cls(d, (n,) + (0,) * (d - 2))

    def exponent_vector(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _same_order(self, other: "CycloSum") -> None:
        if other.order != self.order:
            raise ValueError(f"mismatched orders {self.order} and {other.order}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycloSum.integer(self.order, other)
        if not isinstance(other, CycloSum):
            return NotImplemented
        self._same_order(other)
        return CycloSum(self.order, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloSum(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        d = self.order
        if isinstance(other, int):
            return CycloSum(d, tuple(c * other for c in self.coeffs))
        if not isinstance(other, CycloSum):
            return NotImplemented
        self._same_order(other)
        prod = [0] * d
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    prod[(i + j) % d] += x * y
        return CycloSum.from_exponents(d, prod)

    __rmul__ = __mul__

    def conjugate(self) -> "CycloSum":
        d = self.order
        vec = self.exponent_vector()
        return CycloSum.from_exponents(d, [vec[(-k) % d] for k in range(d)])

    def times_root(self, k: int) -> "CycloSum":
        d = self.order
        vec = self.exponent_vector()
        return CycloSum.from_exponents(d, [vec[(j - k) % d] for j in range(d)])

    def is_real(self) -> bool:
        return self == self.conjugate()

    def equals_integer(self, n: int) -> bool:
        return self.coeffs[0] == n and not any(self.coeffs[1:])

    def as_integer(self) -> int:
        if any(self.coeffs[1:]):
            raise ArithmeticError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def norm(self) -> int:
        """``|x|^2``, which is a rational integer."""
        return (self * self.conjugate()).as_integer()

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": list(self.coeffs)}

    def __str__(self) -> str:
        terms = [f"{c}z^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


SumValue = Union[EisensteinInt, CycloSum]


def cyclo_add(x: CycloSum, y: CycloSum) -> CycloSum:
    return x + y


def cyclo_conjugate(x: CycloSum) -> CycloSum:
    return x.conjugate()


def cyclo_is_real(x: SumValue) -> bool:
    return x.is_real()


def cyclo_equals_integer(x: SumValue, n: int) -> bool:
    return x.equals_integer(n)


def from_exponent_counts(d: int, vec: Sequence[int]) -> SumValue:
    """Canonical value of ``sum_k vec[k] z_d^k``; an ``EisensteinInt`` when d = 3."""
    c = CycloSum.from_exponents(d, vec)
    if d == 3:
        return EisensteinInt(*c.coeffs)
    return c


def value_from_json(obj: dict) -> SumValue:
    if "a" in obj:
        return EisensteinInt(int(obj["a"]), int(obj["b"]))
    return CycloSum(int(obj["order"]), tuple(obj["coeffs"]))
