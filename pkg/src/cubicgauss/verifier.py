"""Claim-by-claim verification suites with json/csv/text reports.

Each claim id maps to a checker that compares a closed form or identity
against brute-force sums over a range of degrees.  Reports list checks in
registry order, so they are reproducible for a fixed seed; only the
``elapsed_ms`` fields vary between runs.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import charsum as cs
from .gf2field import MAX_DEGREE, TABLE_MAX_DEGREE, FieldContext, build_field, irreducibles, to_hex

CLAIMS = ("L1", "L2", "L3", "EQ1", "EQ3-4", "T1", "T2", "COR", "INIT", "ODD", "TRACE-BAL", "CUBE-ID")

CLAIM_TITLES = {
    "L1": "Kummer sum: q-1 at beta=0, -1 otherwise",
    "L2": "sum chi(x)chi(x+1) equals G(1)",
    "L3": "G(1) is real for characters of order 2^r+1",
    "EQ1": "G(1) splits into trace-0 minus trace-1 class sums",
    "EQ3-4": "sum over beta of |G(beta)|^2 and |G(1)|^2 = 2^s",
    "T1": "m odd: A(alpha) = -1 and G_2m = 2^m",
    "T2": "m even: G_2m = (-2)^(m/2) G_m, M-counts",
    "COR": "m even: G_2m = -2^m",
    "INIT": "initial values G_2..G_10",
    "ODD": "s odd: G_s = -1",
    "TRACE-BAL": "trace classes have 2^(s-1) elements each",
    "CUBE-ID": "s odd: every element is a cube",
}

INITIAL_VALUES = {2: 2, 4: -4, 6: 8, 8: -16, 10: 32}

# sweeps over all beta (or alpha) cost O(4^s); above this they are sampled
EXHAUSTIVE_MAX_DEGREE = 12
DEFAULT_SAMPLES = 256


class ConfigError(ValueError):
    """Invalid suite configuration (unknown claim, bad range, bad sampling)."""


@dataclass(frozen=True)
class Sampling:
    mode: str = "exhaustive"
    count: int = DEFAULT_SAMPLES
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ConfigError(f"unknown sampling mode {self.mode!r}")
        if self.count < 1:
            raise ConfigError("sample count must be positive")

    def pick(self, pool: np.ndarray, degree: int, salt: int, exhaustive_limit: int = EXHAUSTIVE_MAX_DEGREE) -> np.ndarray:
        """Subset of ``pool`` to sweep: all of it, or ``count`` seeded draws."""
        if self.mode == "exhaustive" and degree <= exhaustive_limit:
            return pool
        if len(pool) <= self.count:
            return pool
        rng = np.random.default_rng([self.seed, degree, salt])
        return np.sort(rng.choice(pool, size=self.count, replace=False))

    def to_dict(self) -> dict:
        return {"mode": self.mode, "count": self.count, "seed": self.seed}


@dataclass
class Check:
    claim: str
    degrees: list
    label: str
    expected: Any
    computed: Any
    passed: bool
    elapsed_ms: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    config: dict
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "config": self.config,
            "summary": {"checks": len(self.checks), "failed": sum(not c.passed for c in self.checks)},
            "checks": [asdict(c) for c in self.checks],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(data["suite"], data["config"], [Check(**c) for c in data["checks"]])


def _j(value):
    """JSON-friendly rendering of an exact value."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_j(v) for v in value]
    try:
        return value.as_integer()
    except (AttributeError, ArithmeticError):
        return str(value)


def _distinct(values) -> list:
    return sorted({_j(v) for v in values}, key=lambda v: (isinstance(v, str), v))


class _Runner:
    def __init__(self, sampling: Sampling, workers: int, closed_form: Callable[[int], int]):
        self.sampling = sampling
        self.workers = workers
        self.closed_form = closed_form
        self.checks: list[Check] = []
        self.moduli: dict[int, list[str]] = {}

    def field(self, s: int, modulus: Optional[int] = None) -> FieldContext:
        ctx = build_field(s, modulus)
        used = self.moduli.setdefault(s, [])
        if to_hex(ctx.modulus) not in used:
            used.append(to_hex(ctx.modulus))
        return ctx

    def cubic(self, s: int, modulus: Optional[int] = None) -> cs.CharacterSpec:
        return cs.character_spec(self.field(s, modulus), 3)

    def characters(self, s: int) -> list[cs.CharacterSpec]:
        """Nontrivial characters exercised at degree s: cubic, plus order 5 when 4 | s."""
        out = []
        if s % 2 == 0:
            out.append(self.cubic(s))
        if s % 4 == 0:
            out.append(cs.character_spec(self.field(s), 5))
        return out

    def g1(self, spec: cs.CharacterSpec):
        return cs.gauss_sum(spec, 1, self.workers).value

    def add(self, claim, degrees, label, expected, computed, passed, t0):
        self.checks.append(Check(claim, list(degrees), label, _j(expected), _j(computed), bool(passed),
                                 round((time.perf_counter() - t0) * 1000.0, 3)))

    def alternative_modulus(self, s: int) -> Optional[int]:
        if s > EXHAUSTIVE_MAX_DEGREE:
            return None
        found = irreducibles(s)
        next(found)
        return next(found, None)

    # -- claim checkers; each receives one degree

    def check_L1(self, s):
        for spec in self.characters(s):
            d = spec.order
            t0 = time.perf_counter()
            k0 = cs.kummer_sum(spec, 0, self.workers)
            self.add("L1", [s], f"order {d}: kummer sum at beta=0", (1 << s) - 1, k0,
                     k0.equals_integer((1 << s) - 1), t0)
            t0 = time.perf_counter()
            betas = self.sampling.pick(np.arange(1, 1 << s), s, 1)
            seen = _distinct(cs.kummer_sum(spec, int(b), self.workers) for b in betas)
            self.add("L1", [s], f"order {d}: kummer sum over {len(betas)} nonzero beta", [-1], seen,
                     seen == [-1], t0)

    def check_L2(self, s):
        for spec in self.characters(s):
            t0 = time.perf_counter()
            lhs, g = cs.shifted_self_sum(spec, self.workers), self.g1(spec)
            self.add("L2", [s], f"order {spec.order}: shifted self sum vs brute-force G(1)", g, lhs, lhs == g, t0)

    def check_L3(self, s):
        specs = self.characters(s) if s % 2 == 0 else [self.cubic(s)]
        for spec in specs:
            t0 = time.perf_counter()
            g = self.g1(spec)
            self.add("L3", [s], f"order {spec.order}: G(1) is real", "real", g, g.is_real(), t0)

    def check_EQ1(self, s):
        for spec in self.characters(s):
            t0 = time.perf_counter()
            s0, s1 = cs.trace_class_sums(spec, self.workers)
            g = self.g1(spec)
            self.add("EQ1", [s], f"order {spec.order}: trace-0 sum = -(trace-1 sum)", -s1, s0, s0 == -s1, t0)
            self.add("EQ1", [s], f"order {spec.order}: G(1) = trace-0 sum - trace-1 sum", g, s0 - s1,
                     s0 - s1 == g and s0 * 2 == g, t0)

    def check_EQ3_4(self, s):
        if s % 2:
            return
        spec = self.cubic(s)
        t0 = time.perf_counter()
        norm = self.g1(spec).norm()
        self.add("EQ3-4", [s], "|G(1)|^2", 1 << s, norm, norm == 1 << s, t0)
        if self.sampling.mode == "exhaustive" and s <= EXHAUSTIVE_MAX_DEGREE:
            t0 = time.perf_counter()
            total = cs.parseval_total(spec, self.workers)
            q = 1 << s
            self.add("EQ3-4", [s], "sum over beta of |G(beta)|^2 = q(q-1)", q * (q - 1), total,
                     total == q * (q - 1), t0)
            self.add("EQ3-4", [s], "sum over beta of |G(beta)|^2 = (q-1)|G(1)|^2", (q - 1) * norm, total,
                     total == (q - 1) * norm, t0)

    def check_T1(self, s):
        if s % 2 or (s // 2) % 2 == 0:
            return
        m = s // 2
        spec = self.cubic(s)
        t0 = time.perf_counter()
        alphas = self.sampling.pick(cs.relative_trace_one(spec.ctx, m), s, 7)
        values = _distinct(cs.a_sum(spec, int(a)) for a in alphas)
        self.add("T1", [s], f"A(alpha) over {len(alphas)} alpha with relative trace 1", [-1], values,
                 values == [-1], t0)
        t0 = time.perf_counter()
        g = self.g1(spec)
        a_val = cs.a_sum(spec, int(alphas[0]))
        decomposed = a_val * ((1 << m) - 2) + (1 << (m + 1)) - 2
        self.add("T1", [s], "G_2m = 2^(m+1) - 2 + (2^m - 2) A(alpha)", g, decomposed, decomposed == g, t0)
        self.add("T1", [s], "brute-force G_2m vs closed form 2^m", self.closed_form(s), g,
                 g.equals_integer(self.closed_form(s)) and g.equals_integer(1 << m), t0)
        self._alt_modulus_check("T1", s)

    def check_T2(self, s):
        if s % 2 or (s // 2) % 2:
            return
        m = s // 2
        t0 = time.perf_counter()
        lhs, rhs = cs.theorem2_factorization(m, self.workers)
        self.field(m)
        self.field(s)
        self.add("T2", [s, m], "G_2m = (-2)^(m/2) G_m", rhs, lhs, lhs == rhs, t0)
        self.add("T2", [s, m], "G_2m vs closed form", self.closed_form(s), lhs, lhs == self.closed_form(s), t0)

        spec = self.cubic(s)
        t0 = time.perf_counter()
        g_m = cs.gauss_sum(cs.cubic_character(m), 1, self.workers).value.as_integer()
        alphas = self.sampling.pick(cs.relative_trace_one(spec.ctx, m), s, 11)
        values = _distinct(cs.a_sum(spec, int(a)) for a in alphas)
        expected_a = lhs // g_m if lhs % g_m == 0 else f"{lhs}/{g_m}"
        self.add("T2", [s], f"A_m(alpha) constant over {len(alphas)} alpha, equal to G_2m/G_m", [expected_a], values,
                 values == [expected_a], t0)

        t0 = time.perf_counter()
        m0, m1, m2 = cs.m_counts(spec)
        forced = cs.a_sum_from_integrality(m)
        self.add("T2", [s], "M0 + M1 + M2 = 2^m and M1 = M2", [1 << m, "M1=M2"], [m0 + m1 + m2, [m1, m2]],
                 m0 + m1 + m2 == 1 << m and m1 == m2, t0)
        self.add("T2", [s], "M0 - M1 equals the sign forced by integrality", forced, m0 - m1,
                 m0 - m1 == forced and values == [forced], t0)

    def check_COR(self, s):
        if s % 2 or (s // 2) % 2:
            return
        t0 = time.perf_counter()
        g = self.g1(self.cubic(s))
        expected = self.closed_form(s)
        self.add("COR", [s], "brute-force G_2m vs closed form -2^m", expected, g,
                 g.equals_integer(expected) and expected == -(1 << (s // 2)), t0)
        self._alt_modulus_check("COR", s)

    def check_INIT(self, s):
        if s not in INITIAL_VALUES:
            return
        t0 = time.perf_counter()
        g = self.g1(self.cubic(s))
        self.add("INIT", [s], f"G_{s}(1)", INITIAL_VALUES[s], g, g.equals_integer(INITIAL_VALUES[s]), t0)

    def check_ODD(self, s):
        if s % 2 == 0:
            return
        t0 = time.perf_counter()
        spec = self.cubic(s)
        g = self.g1(spec)
        self.add("ODD", [s], "cubic character is trivial", True, spec.trivial, spec.trivial, t0)
        self.add("ODD", [s], "brute-force G_s vs closed form -1", self.closed_form(s), g,
                 g.equals_integer(self.closed_form(s)) and g.equals_integer(-1), t0)
        self._alt_modulus_check("ODD", s)

    def check_TRACE_BAL(self, s):
        ctx = self.field(s)
        t0 = time.perf_counter()
        xs = self.sampling.pick(ctx.elements(), s, 3, TABLE_MAX_DEGREE)
        tr = ctx.trace_many(xs)
        if len(xs) == ctx.size:
            n1 = int(tr.sum())
            counts = [ctx.size - n1, n1]
            self.add("TRACE-BAL", [s], "trace-0 and trace-1 class sizes", [1 << (s - 1)] * 2, counts,
                     counts == [1 << (s - 1)] * 2, t0)
        same = bool(np.array_equal(tr, ctx.trace_many(ctx.mul_many(xs, xs))))
        self.add("TRACE-BAL", [s], f"Tr(x) = Tr(x^2) on {len(xs)} elements", True, same, same, t0)

    def check_CUBE_ID(self, s):
        if s % 2 == 0:
            return
        ctx = self.field(s)
        t0 = time.perf_counter()
        xs = self.sampling.pick(ctx.elements(), s, 5, TABLE_MAX_DEGREE)
        roots = ctx.pow_many(xs, ((1 << (s + 1)) - 1) // 3)
        bad = int(np.count_nonzero(ctx.pow_many(roots, 3) != xs))
        self.add("CUBE-ID", [s], f"(beta^((2^(s+1)-1)/3))^3 = beta on {len(xs)} elements", 0, bad, bad == 0, t0)

    def _alt_modulus_check(self, claim, s):
        alt = self.alternative_modulus(s)
        if alt is None:
            return
        t0 = time.perf_counter()
        g = self.g1(self.cubic(s, alt))
        self.add(claim, [s], f"G_s under alternative modulus {to_hex(alt)}", self.closed_form(s), g,
                 g.equals_integer(self.closed_form(s)), t0)


def parse_range(text: str) -> tuple[int, int]:
    """Parse ``"a..b"`` (or a single degree ``"a"``)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise ConfigError(f"bad degree range {text!r}; expected LO..HI") from None


def parse_claims(text: Optional[str]) -> list[str]:
    if not text:
        return list(CLAIMS)
    return [c.strip().upper() for c in text.split(",") if c.strip()]


def run_suite(claims, degree_range, sampling: Optional[Sampling] = None, workers: int = 1,
              closed_form: Callable[[int], int] = cs.gauss_sum_closed_form,
              suite: str = "gauss-sums") -> VerificationReport:
    """Run the given claims over ``degree_range = (lo, hi)`` inclusive.

    ``closed_form`` can be replaced to check that the harness notices a
    wrong formula.  Raises :class:`ConfigError` on unknown claims or a range
    outside ``1..30``.
    """
    sampling = sampling or Sampling()
    claims = list(claims)
    if not claims:
        raise ConfigError("no claims requested")
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        raise ConfigError(f"unknown claim id(s): {', '.join(unknown)}; known: {', '.join(CLAIMS)}")
    lo, hi = degree_range
    if lo > hi:
        raise ConfigError(f"empty degree range {lo}..{hi}")
    if lo < 1 or hi > MAX_DEGREE:
        raise ConfigError(f"degree range {lo}..{hi} outside 1..{MAX_DEGREE}")

    runner = _Runner(sampling, workers, closed_form)
    ordered = [c for c in CLAIMS if c in claims]
    for claim in ordered:
        checker = getattr(runner, "check_" + claim.replace("-", "_"))
        for s in range(lo, hi + 1):
            checker(s)
    config = {
        "claims": ordered,
        "degree_range": [lo, hi],
        "sampling": sampling.to_dict(),
        "moduli": {str(s): runner.moduli[s] for s in sorted(runner.moduli)},
    }
    return VerificationReport(suite, config, runner.checks)


CSV_FIELDS = ("claim", "degrees", "label", "expected", "computed", "passed", "elapsed_ms")


def render_report(report: VerificationReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for c in report.checks:
            writer.writerow([c.claim, ";".join(map(str, c.degrees)), c.label, json.dumps(c.expected),
                             json.dumps(c.computed), "pass" if c.passed else "fail", c.elapsed_ms])
        return buf.getvalue().encode()
    if fmt == "text":
        cfg = report.config
        lines = [f"suite {report.suite}: claims {','.join(cfg['claims'])}, degrees "
                 f"{cfg['degree_range'][0]}..{cfg['degree_range'][1]}, sampling {cfg['sampling']['mode']}"]
        for c in report.checks:
            mark = "PASS" if c.passed else "FAIL"
            degs = ",".join(map(str, c.degrees))
            lines.append(f"[{mark}] {c.claim:<9} s={degs:<6} {c.label}: expected {c.expected}, got {c.computed}"
                         f"  ({c.elapsed_ms:.1f} ms)")
        failed = sum(not c.passed for c in report.checks)
        lines.append(f"{report.status.upper()}: {len(report.checks) - failed}/{len(report.checks)} checks passed")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def strip_timing(doc: dict) -> dict:
    """Copy of a json report without elapsed fields."""
    doc = json.loads(json.dumps(doc))
    for c in doc.get("checks", []):
        c.pop("elapsed_ms", None)
    return doc
