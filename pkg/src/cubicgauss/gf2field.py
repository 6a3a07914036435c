"""Binary finite fields GF(2^s) in polynomial basis.

Elements are plain Python ints used as bitmasks: bit ``i`` holds the
coefficient of ``x^i``.  A :class:`FieldContext` carries the modulus, the
canonical primitive element and (for small degrees) log/antilog tables.
Scalar operations work on ints; the ``*_many`` methods work on numpy int64
arrays and back every brute-force character sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

MAX_DEGREE = 30
TABLE_MAX_DEGREE = 20

FieldElement = int


# ---------- GF(2)[x] polynomial helpers

def poly_degree(a: int) -> int:
    return a.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carryless product of two GF(2)[x] bitmasks."""
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def poly_mod(a: int, m: int) -> int:
    dm = poly_degree(m)
    da = poly_degree(a)
    while da >= dm:
        a ^= m << (da - dm)
        da = poly_degree(a)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def is_irreducible(poly: int) -> bool:
    """Irreducibility over GF(2).

    ``f`` of degree ``s`` is irreducible iff ``x^(2^s) = x (mod f)`` and
    ``gcd(x^(2^k) - x, f) = 1`` for every ``0 < k < s``.
    """
    s = poly_degree(poly)
    if s < 1:
        return False
    if s == 1:
        return True
    xpow = 0b10  # x^(2^k) mod f, starting at k = 0
    for _ in range(1, s):
        xpow = poly_mulmod(xpow, xpow, poly)
        if poly_gcd(poly, xpow ^ 0b10) != 1:
            return False
    xpow = poly_mulmod(xpow, xpow, poly)
    return xpow == 0b10


def _check_degree(s: int) -> None:
    if not isinstance(s, (int, np.integer)) or isinstance(s, bool):
        raise TypeError(f"degree must be an integer, got {s!r}")
    if not 1 <= s <= MAX_DEGREE:
        raise ValueError(f"degree {s} outside supported range 1..{MAX_DEGREE}")


def find_irreducible(s: int) -> int:
    """Smallest-bitmask monic irreducible polynomial of degree ``s``.

    Degree 1 returns ``x + 1`` (0b11) by convention.
    """
    _check_degree(s)
    if s == 1:
        return 0b11
    # irreducibles of degree >= 2 have constant term 1
    for poly in range((1 << s) | 1, 1 << (s + 1), 2):
        if is_irreducible(poly):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {s}")  # pragma: no cover


def irreducibles(s: int):
    """Iterate monic irreducible polynomials of degree ``s`` in increasing bitmask order."""
    _check_degree(s)
    start = 0b10 if s == 1 else (1 << s) | 1
    step = 1 if s == 1 else 2
    for poly in range(start, 1 << (s + 1), step):
        if is_irreducible(poly):
            yield poly


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _parity(arr: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(arr) & 1).astype(np.int64)


# ---------- field context

@dataclass(frozen=True)
class FieldContext:
    """Immutable description of GF(2^s).

    Build instances with :func:`build_field`.  Equality and hashing only
    look at ``(degree, modulus, generator)``.
    """

    degree: int
    modulus: int
    generator: FieldElement
    order: int
    order_factors: dict = field(compare=False, hash=False, repr=False)
    trace_mask: int = field(compare=False, repr=False, default=0)
    antilog: Optional[np.ndarray] = field(compare=False, repr=False, default=None)
    log: Optional[np.ndarray] = field(compare=False, repr=False, default=None)

    @property
    def size(self) -> int:
        return self.order + 1

    @property
    def has_tables(self) -> bool:
        return self.antilog is not None

    def __contains__(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and 0 <= a < self.size

    def _check(self, a) -> None:
        if a not in self:
            raise ValueError(f"{a!r} is not an element of GF(2^{self.degree})")

    # -- scalar arithmetic

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a ^ b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if a == 0 or b == 0:
            return 0
        if self.antilog is not None:
            return int(self.antilog[(int(self.log[a]) + int(self.log[b])) % self.order])
        return self._mul_shift(a, b)

    def _mul_shift(self, a: int, b: int) -> int:
        s, m = self.degree, self.modulus
        top = 1 << s
        c = 0
        while b:
            if b & 1:
                c ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= m
        return c

    def square(self, a: FieldElement) -> FieldElement:
        return self.mul(a, a)

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        if k == 0:
            return 1
        if a == 0:
            return 0
        if self.antilog is not None:
            return int(self.antilog[(int(self.log[a]) * k) % self.order])
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._mul_shift(result, base)
            base = self._mul_shift(base, base)
            k >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return self.pow(a, self.order - 1)

    def frobenius(self, x: FieldElement, k: int = 1) -> FieldElement:
        """``x^(2^k)``; ``k`` is taken mod the degree."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        for _ in range(k % self.degree):
            x = self.mul(x, x)
        return x

    def trace(self, x: FieldElement) -> int:
        """Absolute trace ``x + x^2 + ... + x^(2^(s-1))`` as 0 or 1."""
        acc = 0
        y = x
        for _ in range(self.degree):
            acc ^= y
            y = self.mul(y, y)
        assert acc in (0, 1)
        return acc

    def relative_trace(self, x: FieldElement, r: int) -> FieldElement:
        """Trace from GF(2^s) down to the subfield GF(2^r)."""
        self._check_divisor(r)
        acc = 0
        y = x
        for _ in range(self.degree // r):
            acc ^= y
            y = self.frobenius(y, r)
        return acc

    def _check_divisor(self, r: int) -> None:
        if r < 1 or self.degree % r:
            raise ValueError(f"{r} does not divide the degree {self.degree}")

    def subfield_elements(self, r: int) -> list[FieldElement]:
        """The ``2^r`` elements of the subfield GF(2^r), zero first.

        Generated as 0 and the powers of ``g^((2^s-1)/(2^r-1))``.
        """
        self._check_divisor(r)
        h = self.pow(self.generator, self.order // ((1 << r) - 1))
        out = [0]
        y = 1
        for _ in range((1 << r) - 1):
            out.append(y)
            y = self.mul(y, h)
        return out

    def element_order(self, a: FieldElement) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.order
        for p in self.order_factors:
            while n % p == 0 and self.pow(a, n // p) == 1:
                n //= p
        return n

    def is_primitive(self, a: FieldElement) -> bool:
        return a != 0 and all(self.pow(a, self.order // p) != 1 for p in self.order_factors)

    # -- vectorised arithmetic on int64 arrays

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def _xtime_many(self, a: np.ndarray) -> np.ndarray:
        a = a << 1
        return np.where(a >> self.degree, a ^ self.modulus, a)

    def mul_scalar_many(self, a: np.ndarray, c: FieldElement) -> np.ndarray:
        """Multiply every entry of ``a`` by the scalar ``c``."""
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        if self.antilog is not None:
            shift = int(self.log[c])
            out = self.antilog[(self.log[a] + shift) % self.order]
            return np.where(a == 0, 0, out)
        out = np.zeros_like(a)
        t = a
        while c:
            if c & 1:
                out ^= t
            c >>= 1
            if c:
                t = self._xtime_many(t)
        return out

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.antilog is not None:
            out = self.antilog[(self.log[a] + self.log[b]) % self.order]
            return np.where((a == 0) | (b == 0), 0, out)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        t = np.broadcast_to(a, out.shape)
        for i in range(self.degree):
            out ^= np.where((b >> i) & 1, t, 0)
            t = self._xtime_many(t)
        return out

    def pow_many(self, a: np.ndarray, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        if self.antilog is not None:
            out = self.antilog[(self.log[a] * (k % self.order)) % self.order]
            return np.where(a == 0, 0, out)
        result = np.ones_like(a)
        base = a
        while k:
            if k & 1:
                result = self.mul_many(result, base)
            k >>= 1
            if k:
                base = self.mul_many(base, base)
        return result

    def powers(self, start: int, count: int) -> np.ndarray:
        """``g^start, g^(start+1), ..., g^(start+count-1)`` for the generator ``g``."""
        if self.antilog is not None:
            return self.antilog[np.arange(start, start + count, dtype=np.int64) % self.order]
        return _power_run(self, self.pow(self.generator, start), self.generator, count)

    def trace_many(self, a: np.ndarray) -> np.ndarray:
        """Absolute trace of every entry, as a 0/1 int64 array.

        The trace is GF(2)-linear, so it equals the parity of ``a & trace_mask``.
        """
        return _parity(np.asarray(a, dtype=np.int64) & self.trace_mask)

    def relative_trace_many(self, a: np.ndarray, r: int) -> np.ndarray:
        self._check_divisor(r)
        images = [self.relative_trace(1 << i, r) for i in range(self.degree)]
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(a)
        for i, img in enumerate(images):
            if img:
                out ^= np.where((a >> i) & 1, img, 0)
        return out

    def describe(self) -> dict:
        return {
            "degree": self.degree,
            "modulus": to_hex(self.modulus),
            "generator": to_hex(self.generator),
            "order": self.order,
            "order_factorization": {str(p): e for p, e in sorted(self.order_factors.items())},
            "tables": self.has_tables,
        }


def _power_run(ctx: FieldContext, first: int, step: int, count: int) -> np.ndarray:
    """``first * step^j`` for ``j < count``, by repeated doubling of a block."""
    out = np.empty(count, dtype=np.int64)
    if count == 0:
        return out
    out[0] = first
    filled = 1
    block_step = step  # step^filled
    while filled < count:
        n = min(filled, count - filled)
        out[filled:filled + n] = ctx.mul_scalar_many(out[:n], block_step)
        filled += n
        block_step = ctx.mul(block_step, block_step)
    return out


def to_hex(a: int) -> str:
    return hex(a)


def parse_hex(text: str) -> int:
    """Parse a hex bitmask such as ``0x13``; the ``0x`` prefix is optional."""
    text = text.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    if not text:
        raise ValueError("empty hex value")
    return int(text, 16)


@lru_cache(maxsize=64)
def build_field(s: int, modulus: Optional[int] = None, tables: Optional[bool] = None,
                generator: Optional[int] = None) -> FieldContext:
    """Construct GF(2^s).

    Parameters
    ----------
    s : int
        Extension degree, ``1 <= s <= 30``.
    modulus : int, optional
        Bitmask of a monic irreducible polynomial of degree ``s``.  Defaults
        to :func:`find_irreducible`.
    tables : bool, optional
        Force log/antilog tables on or off.  By default they are built for
        ``s <= 20``.
    generator : int, optional
        Primitive element to use instead of the smallest-bitmask one.

    Raises
    ------
    ValueError
        On an out-of-range degree, a modulus that is not a monic
        irreducible polynomial of degree ``s``, or a non-primitive generator.
    """
    _check_degree(s)
    if modulus is None:
        modulus = find_irreducible(s)
    elif poly_degree(modulus) != s:
        raise ValueError(f"modulus {to_hex(modulus)} does not have degree {s}")
    elif not is_irreducible(modulus):
        raise ValueError(f"modulus {to_hex(modulus)} is reducible")
    if s == 1 and modulus != 0b11:
        # only x+1 gives the standard encoding of GF(2)
        raise ValueError("GF(2) is built with modulus x+1 (0x3)")

    order = (1 << s) - 1
    factors = factorize(order) if order > 1 else {}
    bare = FieldContext(s, modulus, 1, order, factors)
    if generator is None:
        generator = next(g for g in range(1, 1 << s) if bare.is_primitive(g))
    elif not (0 < generator < 1 << s and bare.is_primitive(generator)):
        raise ValueError(f"{to_hex(generator)} is not a primitive element")
    ctx = FieldContext(s, modulus, generator, order, factors)

    # trace of each basis monomial x^i, packed into a mask
    mask = 0
    for i in range(s):
        mask |= ctx.trace(1 << i) << i

    antilog = log = None
    if tables if tables is not None else s <= TABLE_MAX_DEGREE:
        antilog = _power_run(ctx, 1, generator, order)
        log = np.zeros(order + 1, dtype=np.int64)
        log[antilog] = np.arange(order, dtype=np.int64)
        antilog.setflags(write=False)
        log.setflags(write=False)
    return FieldContext(s, modulus, generator, order, factors, mask, antilog, log)
