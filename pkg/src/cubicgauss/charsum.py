"""Multiplicative characters of GF(2^s) and their character sums.

A character of prime order ``d`` is fixed by the canonical generator ``g``:
``chi(g^h) = z_d^h``.  Character values are handled as exponents in
``0..d-1`` and every sum is accumulated as integer counters (one per
exponent and sign) which are reduced to an exact cyclotomic value once at
the end.  Counters from disjoint chunks of the index domain simply add, so
chunked and threaded evaluation give identical results.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .cyclotomic import SumValue, from_exponent_counts
from .gf2field import MAX_DEGREE, FieldContext, FieldElement, build_field, to_hex

CHUNK = 1 << 16
WORKERS_ENV = "CUBICGAUSS_WORKERS"
METHODS = ("brute_force", "trace_class", "twist", "closed_form")


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class CharacterSpec:
    """A multiplicative character of prime order on GF(2^s).

    ``roots[k]`` is ``g^(k (2^s-1)/d)``.  When a cubic character is
    requested for odd ``s`` every nonzero element is a cube and the result is
    the trivial character: ``trivial`` is set and ``roots == (1,)``.
    """

    ctx: FieldContext
    order: int
    trivial: bool
    roots: tuple = field(repr=False)

    @property
    def exponent(self) -> int:
        """Power that sends ``x`` into the group of ``d``-th roots of unity."""
        return self.ctx.order // (1 if self.trivial else self.order)

    def _root_index(self) -> dict:
        return {r: k for k, r in enumerate(self.roots)}


def character_spec(ctx: FieldContext, order: int = 3) -> CharacterSpec:
    """Build the order-``order`` character of ``ctx``.

    Raises ``ValueError`` unless ``order`` is a prime dividing ``2^s - 1``;
    the cubic character on an odd-degree field is returned as trivial.
    """
    if order < 2 or any(order % p == 0 for p in range(2, int(order**0.5) + 1)):
        raise ValueError(f"character order {order} is not prime")
    if ctx.order % order:
        if order == 3:
            return CharacterSpec(ctx, 3, True, (1,))
        raise ValueError(f"order {order} does not divide 2^{ctx.degree} - 1 = {ctx.order}")
    h = ctx.pow(ctx.generator, ctx.order // order)
    roots = [1]
    for _ in range(order - 1):
        roots.append(ctx.mul(roots[-1], h))
    return CharacterSpec(ctx, order, False, tuple(roots))


def cubic_character(s: int, modulus: Optional[int] = None) -> CharacterSpec:
    return character_spec(build_field(s, modulus), 3)


def _require_nontrivial(spec: CharacterSpec) -> None:
    if spec.trivial:
        raise ValueError("identity requires a nontrivial character")


# ---------- evaluation

def character(spec: CharacterSpec, x: FieldElement) -> Optional[int]:
    """Exponent ``k`` with ``chi(x) = z_d^k``, or ``None`` for ``x = 0``.

    Computed from ``x^((2^s-1)/d)`` against the root table, so no discrete
    logarithm of ``x`` is taken.
    """
    if x == 0:
        return None
    if spec.trivial:
        return 0
    return spec._root_index()[spec.ctx.pow(x, spec.exponent)]


def character_many(spec: CharacterSpec, xs: np.ndarray) -> np.ndarray:
    """Vectorised :func:`character`; zero maps to -1.

    Uses the log table when the field has one (``log(x) mod d`` is the same
    exponent), otherwise powers every entry.
    """
    ctx = spec.ctx
    xs = np.asarray(xs, dtype=np.int64)
    if spec.trivial:
        return np.where(xs == 0, -1, 0)
    d = spec.order
    if ctx.log is not None:
        out = ctx.log[xs] % d
    else:
        powered = ctx.pow_many(xs, spec.exponent)
        roots = np.asarray(spec.roots, dtype=np.int64)
        perm = np.argsort(roots)
        pos = np.searchsorted(roots[perm], powered)
        out = perm[np.minimum(pos, d - 1)]
    return np.where(xs == 0, -1, out)


def value_of_exponent(spec: CharacterSpec, k: Optional[int]) -> SumValue:
    vec = [0] * spec.order
    if k is not None:
        vec[k] = 1
    return from_exponent_counts(spec.order, vec)


# ---------- accumulation

def _tally(d: int, exps: np.ndarray, signs: Optional[np.ndarray] = None) -> np.ndarray:
    """Counters of length 2d: index ``k`` counts +z^k, index ``d + k`` counts -z^k."""
    keep = exps >= 0
    idx = exps[keep]
    if signs is not None:
        idx = idx + d * signs[keep]
    return np.bincount(idx, minlength=2 * d).astype(np.int64)


def _accumulate(total: int, chunk_fn: Callable[[int, int], np.ndarray], workers: int = 1) -> np.ndarray:
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
    if workers <= 1 or len(bounds) == 1:
        parts = [chunk_fn(lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: chunk_fn(*b), bounds))
    return np.sum(parts, axis=0)


def _to_value(d: int, counters: np.ndarray) -> SumValue:
    return from_exponent_counts(d, [int(counters[k] - counters[d + k]) for k in range(d)])


# ---------- sums

@dataclass
class GaussSumRecord:
    degree: int
    modulus: int
    generator: int
    beta: int
    method: str
    value: SumValue
    elapsed: float = 0.0
    order: int = 3
    class_sums: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "modulus": to_hex(self.modulus),
            "generator": to_hex(self.generator),
            "beta": to_hex(self.beta),
            "method": self.method,
            "value": self.value.to_json(),
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }
        if self.class_sums is not None:
            out["class_sums"] = {"trace0": self.class_sums[0].to_json(), "trace1": self.class_sums[1].to_json()}
        return out


def _record(spec: CharacterSpec, beta: int, method: str, value: SumValue, t0: float, class_sums=None):
    ctx = spec.ctx
    return GaussSumRecord(ctx.degree, ctx.modulus, ctx.generator, beta, method, value,
                          time.perf_counter() - t0, spec.order, class_sums)


def total_sum(spec: CharacterSpec, workers: int = 1) -> SumValue:
    """Sum of ``chi(x)`` over the whole field."""
    ctx, d = spec.ctx, spec.order

    def chunk(lo, hi):
        return _tally(d, character_many(spec, np.arange(lo, hi, dtype=np.int64)))

    return _to_value(d, _accumulate(ctx.size, chunk, workers))


def gauss_sum(spec: CharacterSpec, beta: FieldElement = 1, workers: int = 1) -> GaussSumRecord:
    """Brute-force ``G(beta) = sum_y chi(y) (-1)^Tr(beta y)``.

    Runs over ``y = g^h`` in exponent order, where ``chi(y)`` is read off
    directly as ``h mod d``.
    """
    t0 = time.perf_counter()
    ctx, d = spec.ctx, spec.order
    if beta not in ctx:
        raise ValueError(f"beta {beta!r} not in GF(2^{ctx.degree})")

    def chunk(lo, hi):
        ys = ctx.powers(lo, hi - lo)
        if spec.trivial:
            exps = np.zeros(hi - lo, dtype=np.int64)
        else:
            exps = np.arange(lo, hi, dtype=np.int64) % d
        signs = ctx.trace_many(ctx.mul_scalar_many(ys, beta))
        return _tally(d, exps, signs)

    value = _to_value(d, _accumulate(ctx.order, chunk, workers))
    return _record(spec, beta, "brute_force", value, t0)


def trace_class_sums(spec: CharacterSpec, workers: int = 1) -> tuple[SumValue, SumValue]:
    """``(sum over Tr(y)=0 of chi(y), sum over Tr(y)=1 of chi(y))``."""
    ctx, d = spec.ctx, spec.order

    def chunk(lo, hi):
        xs = np.arange(lo, hi, dtype=np.int64)
        return _tally(d, character_many(spec, xs), ctx.trace_many(xs))

    counters = _accumulate(ctx.size, chunk, workers)
    return from_exponent_counts(d, list(counters[:d])), from_exponent_counts(d, list(counters[d:]))


def gauss_sum_via_trace_class(spec: CharacterSpec, workers: int = 1) -> GaussSumRecord:
    """``G(1)`` as twice the trace-0 class sum (nontrivial characters only)."""
    _require_nontrivial(spec)
    t0 = time.perf_counter()
    s0, s1 = trace_class_sums(spec, workers)
    return _record(spec, 1, "trace_class", s0 * 2, t0, (s0, s1))


def gauss_sum_via_twist(spec: CharacterSpec, beta: FieldElement, workers: int = 1) -> GaussSumRecord:
    """``G(beta) = conj(chi(beta)) G(1)`` for ``beta != 0``."""
    if beta == 0:
        raise ValueError("the twist identity needs beta != 0")
    t0 = time.perf_counter()
    base = gauss_sum(spec, 1, workers).value
    value = base.times_root(-character(spec, beta))
    return _record(spec, beta, "twist", value, t0)


def gauss_sum_closed_form(s: int) -> int:
    """Cubic Gauss sum ``G_s(1)``: -1 for odd s, ``-(-2)^(s/2)`` for even s."""
    if s < 1:
        raise ValueError("degree must be positive")
    if s % 2:
        return -1
    return -((-2) ** (s // 2))


def gauss_sum_by_method(spec: CharacterSpec, beta: int, method: str, workers: int = 1) -> GaussSumRecord:
    if method == "brute_force":
        return gauss_sum(spec, beta, workers)
    if method == "trace_class":
        if beta != 1:
            raise ValueError("trace_class method only evaluates beta = 1")
        return gauss_sum_via_trace_class(spec, workers)
    if method == "twist":
        return gauss_sum_via_twist(spec, beta, workers)
    if method == "closed_form":
        if spec.order != 3:
            raise ValueError("closed form is only known for the cubic character")
        t0 = time.perf_counter()
        base = value_of_exponent(spec, 0) * gauss_sum_closed_form(spec.ctx.degree)
        if beta == 0:
            value = value_of_exponent(spec, 0) * (spec.ctx.order if spec.trivial else 0)
        else:
            value = base.times_root(-character(spec, beta))
        return _record(spec, beta, "closed_form", value, t0)
    raise ValueError(f"unknown method {method!r}")


def kummer_sum(spec: CharacterSpec, beta: FieldElement, workers: int = 1) -> SumValue:
    """``sum_x chi(x) conj(chi(x + beta))``."""
    _require_nontrivial(spec)
    ctx, d = spec.ctx, spec.order

    def chunk(lo, hi):
        xs = np.arange(lo, hi, dtype=np.int64)
        ex = character_many(spec, xs)
        ey = character_many(spec, xs ^ beta)
        return _tally(d, np.where((ex >= 0) & (ey >= 0), (ex - ey) % d, -1))

    return _to_value(d, _accumulate(ctx.size, chunk, workers))


def shifted_self_sum(spec: CharacterSpec, workers: int = 1) -> SumValue:
    """``sum_x chi(x) chi(x + 1)``."""
    _require_nontrivial(spec)
    ctx, d = spec.ctx, spec.order

    def chunk(lo, hi):
        xs = np.arange(lo, hi, dtype=np.int64)
        ex = character_many(spec, xs)
        ey = character_many(spec, xs ^ 1)
        return _tally(d, np.where((ex >= 0) & (ey >= 0), (ex + ey) % d, -1))

    return _to_value(d, _accumulate(ctx.size, chunk, workers))


def _half_degree(spec: CharacterSpec) -> int:
    s = spec.ctx.degree
    if s % 2:
        raise ValueError(f"degree {s} is odd; a quadratic subfield is required")
    return s // 2


def relative_trace_one(ctx: FieldContext, m: int) -> np.ndarray:
    """All ``gamma`` in GF(2^s) with relative trace 1 down to GF(2^m), ascending."""
    xs = ctx.elements()
    return xs[ctx.relative_trace_many(xs, m) == 1]


def a_sum(spec: CharacterSpec, alpha: FieldElement) -> SumValue:
    """``A(alpha) = sum over z in GF(2^m) of chi(z + alpha)`` on GF(2^(2m))."""
    m = _half_degree(spec)
    ctx = spec.ctx
    if ctx.relative_trace(alpha, m) != 1:
        raise ValueError(f"alpha {to_hex(alpha)} does not have relative trace 1")
    zs = np.asarray(ctx.subfield_elements(m), dtype=np.int64)
    return _to_value(spec.order, _tally(spec.order, character_many(spec, zs ^ alpha)))


def m_counts(spec: CharacterSpec) -> tuple[int, int, int]:
    """How many relative-trace-1 elements have cubic character 1, w, w^2."""
    m = _half_degree(spec)
    if spec.order != 3 or spec.trivial:
        raise ValueError("m_counts needs the nontrivial cubic character")
    exps = character_many(spec, relative_trace_one(spec.ctx, m))
    counts = np.bincount(exps[exps >= 0], minlength=3)
    return int(counts[0]), int(counts[1]), int(counts[2])


def a_sum_from_integrality(m: int) -> int:
    """Value of ``M0 - M1`` forced by integrality.

    With ``M0 + 2 M1 = 2^m`` and ``M0 - M1 = e 2^(m/2)``, ``M1`` is an
    integer for exactly one sign ``e``.
    """
    if m < 2 or m % 2:
        raise ValueError("m must be even and positive")
    half = 1 << (m // 2)
    signs = [e for e in (1, -1) if ((1 << m) - e * half) % 3 == 0]
    assert len(signs) == 1
    return signs[0] * half


def parseval_total(spec: CharacterSpec, workers: int = 1) -> int:
    """``sum over all beta of |G(beta)|^2``, every Gauss sum brute-forced."""
    return sum(gauss_sum(spec, beta, workers).value.norm() for beta in range(spec.ctx.size))


def theorem2_factorization(m: int, workers: int = 1) -> tuple[int, int]:
    """``(G_2m(1), (-2)^(m/2) G_m(1))`` brute-forced in two separately built fields."""
    if m < 2 or m % 2:
        raise ValueError("m must be even and positive")
    if 2 * m > MAX_DEGREE:
        raise ValueError(f"2m = {2 * m} exceeds the degree cap {MAX_DEGREE}")
    lhs = gauss_sum(cubic_character(2 * m), 1, workers).value.as_integer()
    g_m = gauss_sum(cubic_character(m), 1, workers).value.as_integer()
    return lhs, (-2) ** (m // 2) * g_m


def odd_cube_root(ctx: FieldContext, beta: FieldElement) -> FieldElement:
    """For odd s, ``beta^((2^(s+1)-1)/3)``, whose cube is ``beta``."""
    if ctx.degree % 2 == 0:
        raise ValueError("every element is a cube only for odd degree")
    return ctx.pow(beta, ((1 << (ctx.degree + 1)) - 1) // 3)
