import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicgauss import charsum as cs
from cubicgauss.cyclotomic import CycloSum, EisensteinInt
from cubicgauss.gf2field import build_field
from oracle import NaiveField, eisenstein, naive_gauss, naive_kummer


def cubic(s, **kw):
    return cs.character_spec(build_field(s, **kw), 3)


def order5(s, **kw):
    return cs.character_spec(build_field(s, **kw), 5)


def E(a, b=0):
    return EisensteinInt(a, b)


# ---------- character evaluation

def test_character_examples_gf4():
    spec = cubic(2)
    assert cs.character(spec, 1) == 0
    assert cs.character(spec, 0) is None
    assert cs.character(spec, 0b10) == 1
    assert cs.character(spec, 0b11) == 2


@pytest.mark.parametrize("s", [1, 3, 5, 9])
def test_cubic_on_odd_degree_is_trivial(s):
    spec = cubic(s)
    assert spec.trivial
    ctx = spec.ctx
    assert all(cs.character(spec, x) == 0 for x in range(1, ctx.size))
    assert cs.character(spec, 0) is None


def test_character_spec_errors():
    ctx = build_field(6)
    with pytest.raises(ValueError):
        cs.character_spec(ctx, 5)  # 5 does not divide 63
    with pytest.raises(ValueError):
        cs.character_spec(ctx, 9)
    assert cs.character_spec(ctx, 7).order == 7


@pytest.mark.parametrize("s, d", [(2, 3), (4, 3), (4, 5), (6, 7), (8, 5), (8, 17)])
def test_character_matches_discrete_log_oracle(s, d):
    spec = cs.character_spec(build_field(s), d)
    ref = NaiveField(s, spec.ctx.modulus)
    assert ref.gen == spec.ctx.generator
    for x in range(1 << s):
        assert cs.character(spec, x) == ref.chi(x, d)


@pytest.mark.parametrize("s, d", [(2, 3), (4, 5), (8, 3), (8, 17), (14, 3), (20, 5)])
def test_character_many_matches_scalar(s, d):
    spec = cs.character_spec(build_field(s), d)
    bare = cs.character_spec(build_field(s, tables=False), d)
    xs = spec.ctx.elements() if s <= 10 else np.random.default_rng(s).integers(0, 1 << s, 3000)
    expected = [-1 if x == 0 else cs.character(spec, int(x)) for x in xs]
    assert cs.character_many(spec, xs).tolist() == expected
    assert cs.character_many(bare, xs).tolist() == expected


@pytest.mark.parametrize("s", range(2, 9))
def test_multiplicativity_exhaustive(s):
    for d in (3, 5, 7, 17):
        if (2**s - 1) % d:
            continue
        spec = cs.character_spec(build_field(s), d)
        xs = np.arange(1, 1 << s)
        chi = cs.character_many(spec, xs)
        for x in range(1, 1 << s):
            prods = spec.ctx.mul_scalar_many(xs, x)
            assert np.array_equal(cs.character_many(spec, prods), (chi + chi[x - 1]) % d)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([10, 12, 16, 22, 24]), st.data())
def test_multiplicativity_random(s, data):
    spec = cubic(s)
    x = data.draw(st.integers(1, spec.ctx.order))
    y = data.draw(st.integers(1, spec.ctx.order))
    xy = spec.ctx.mul(x, y)
    assert cs.character(spec, xy) == (cs.character(spec, x) + cs.character(spec, y)) % 3


# ---------- total sum and Gauss sums

def test_total_sum_examples():
    assert cs.total_sum(cubic(2)) == E(0)
    assert cs.total_sum(cubic(3)) == E(7)
    assert cs.total_sum(order5(4)) == CycloSum.integer(5, 0)


def test_gauss_sum_examples():
    assert cs.gauss_sum(cubic(2), 1).value == E(2)
    assert cs.gauss_sum(cubic(4), 1).value == E(-4)
    assert cs.gauss_sum(cubic(2), 0).value == E(0)
    rec = cs.gauss_sum(cubic(2), 1)
    assert rec.method == "brute_force" and rec.elapsed >= 0


@pytest.mark.parametrize("s", range(1, 7))
def test_gauss_sum_matches_oracle_all_beta(s):
    spec = cubic(s)
    ref = NaiveField(s, spec.ctx.modulus)
    for beta in range(1 << s):
        assert cs.gauss_sum(spec, beta).value == E(*eisenstein(naive_gauss(ref, beta)))


@pytest.mark.parametrize("s, d", [(4, 5), (8, 5), (6, 7)])
def test_gauss_sum_other_orders_match_oracle(s, d):
    spec = cs.character_spec(build_field(s), d)
    ref = NaiveField(s, spec.ctx.modulus)
    for beta in (1, 2, 3, (1 << s) - 1):
        assert cs.gauss_sum(spec, beta).value == CycloSum.from_exponents(d, naive_gauss(ref, beta, d))


@pytest.mark.parametrize("s, expected", [(1, -1), (2, 2), (4, -4), (6, 8), (8, -16), (10, 32), (12, -64)])
def test_closed_form_values(s, expected):
    assert cs.gauss_sum_closed_form(s) == expected


def test_closed_form_rejects_nonpositive():
    with pytest.raises(ValueError):
        cs.gauss_sum_closed_form(0)


@pytest.mark.parametrize("s", range(1, 15))
def test_brute_force_equals_closed_form(s):
    assert cs.gauss_sum(cubic(s), 1).value == E(cs.gauss_sum_closed_form(s))


def test_trace_class_examples():
    rec = cs.gauss_sum_via_trace_class(cubic(2))
    assert rec.value == E(2)
    assert rec.class_sums[0] == E(1)  # trace-0 elements are 0 and 1
    assert cs.gauss_sum_via_trace_class(cubic(4)).value == E(-4)
    spec = order5(4)
    assert cs.gauss_sum_via_trace_class(spec).value == cs.gauss_sum(spec, 1).value


def test_trace_class_split_identity():
    for spec in (cubic(6), order5(8)):
        s0, s1 = cs.trace_class_sums(spec)
        g = cs.gauss_sum(spec, 1).value
        assert s0 == -s1 and s0 - s1 == g


def test_trace_class_requires_nontrivial():
    with pytest.raises(ValueError):
        cs.gauss_sum_via_trace_class(cubic(5))


def test_twist_examples():
    assert cs.gauss_sum_via_twist(cubic(2), 1).value == E(2)
    assert cs.gauss_sum_via_twist(cubic(2), 0b10).value == E(-2, -2)
    assert cs.gauss_sum(cubic(2), 0b10).value == E(-2, -2)
    spec = cubic(4)
    cubes = {spec.ctx.pow(x, 3) for x in range(1, 16)}
    for beta in cubes:
        assert cs.gauss_sum_via_twist(spec, beta).value == E(-4)
        assert cs.gauss_sum(spec, beta).value == E(-4)
    with pytest.raises(ValueError):
        cs.gauss_sum_via_twist(spec, 0)


@pytest.mark.parametrize("s, d", [(4, 3), (8, 3), (4, 5), (8, 5)])
def test_twist_matches_brute_force(s, d):
    spec = cs.character_spec(build_field(s), d)
    for beta in range(1, 1 << s):
        assert cs.gauss_sum_via_twist(spec, beta).value == cs.gauss_sum(spec, beta).value


def test_gauss_sum_by_method():
    spec = cubic(6)
    values = {m: cs.gauss_sum_by_method(spec, 1, m).value for m in cs.METHODS}
    assert set(values.values()) == {E(8)}
    assert cs.gauss_sum_by_method(spec, 5, "closed_form").value == cs.gauss_sum(spec, 5).value
    assert cs.gauss_sum_by_method(spec, 0, "closed_form").value == E(0)
    assert cs.gauss_sum_by_method(cubic(5), 0, "closed_form").value == E(31)
    with pytest.raises(ValueError):
        cs.gauss_sum_by_method(spec, 1, "bogus")


def test_record_json():
    doc = cs.gauss_sum(cubic(4), 1).to_json()
    assert doc["degree"] == 4 and doc["modulus"] == "0x13" and doc["generator"] == "0x2"
    assert doc["beta"] == "0x1" and doc["method"] == "brute_force"
    assert doc["value"] == {"a": -4, "b": 0} and doc["elapsed_ms"] >= 0
    assert cs.gauss_sum(order5(4), 1).to_json()["value"]["order"] == 5


# ---------- Kummer and shifted sums

def test_kummer_examples():
    assert cs.kummer_sum(cubic(2), 0) == E(3)
    assert cs.kummer_sum(cubic(2), 1) == E(-1)
    assert cs.kummer_sum(order5(4), 0b10) == CycloSum.integer(5, -1)


@pytest.mark.parametrize("s, d", [(4, 3), (6, 3), (4, 5)])
def test_kummer_matches_oracle(s, d):
    spec = cs.character_spec(build_field(s), d)
    ref = NaiveField(s, spec.ctx.modulus)
    for beta in range(1 << s):
        counts = naive_kummer(ref, beta, d)
        expected = E(*eisenstein(counts)) if d == 3 else CycloSum.from_exponents(d, counts)
        assert cs.kummer_sum(spec, beta) == expected


def test_shifted_self_sum_examples():
    assert cs.shifted_self_sum(cubic(2)) == E(2)
    assert cs.shifted_self_sum(cubic(4)) == E(-4)
    assert cs.shifted_self_sum(cubic(6)) == E(8)


def test_sums_reject_trivial_character():
    spec = cubic(7)
    with pytest.raises(ValueError):
        cs.kummer_sum(spec, 1)
    with pytest.raises(ValueError):
        cs.shifted_self_sum(spec)


# ---------- subfield sums and counts

def rel_trace_one(spec):
    return [int(a) for a in cs.relative_trace_one(spec.ctx, spec.ctx.degree // 2)]


@pytest.mark.parametrize("s, expected", [(2, -1), (6, -1), (4, -2), (10, -1), (8, 4)])
def test_a_sum_constant_over_alphas(s, expected):
    spec = cubic(s)
    alphas = rel_trace_one(spec)
    assert len(alphas) == 1 << (s // 2)
    assert {cs.a_sum(spec, a) for a in alphas} == {E(expected)}


def test_a_sum_m1_root_of_x2_x_1():
    spec = cubic(2)
    # the roots of x^2 + x + 1 in GF(4) are x and x + 1
    assert cs.a_sum(spec, 0b10) == cs.a_sum(spec, 0b11) == E(-1)


def test_a_sum_errors():
    with pytest.raises(ValueError):
        cs.a_sum(cubic(5), 1)
    with pytest.raises(ValueError):
        cs.a_sum(cubic(4), 1)  # 1 is in the subfield


def test_a_sum_times_g_m_is_g_2m():
    for m in (2, 4, 6):
        spec = cubic(2 * m)
        a = cs.a_sum(spec, rel_trace_one(spec)[0])
        g_m = cs.gauss_sum(cubic(m), 1).value
        assert a * g_m == cs.gauss_sum(spec, 1).value


def test_m_counts_examples():
    assert cs.m_counts(cubic(4)) == (0, 2, 2)
    assert cs.m_counts(cubic(2)) == (0, 1, 1)
    m0, m1, m2 = cs.m_counts(cubic(8))
    assert m0 - m1 == 4 and m1 == m2 and m0 + m1 + m2 == 16


def test_m_counts_oracle_gf16():
    spec = cubic(4)
    ref = NaiveField(4, spec.ctx.modulus)
    gammas = [x for x in range(16) if ref.power(x, 4) ^ x == 1]
    counts = [0, 0, 0]
    for g in gammas:
        counts[ref.chi(g)] += 1
    assert tuple(counts) == cs.m_counts(spec)


def test_m_counts_errors():
    with pytest.raises(ValueError):
        cs.m_counts(cubic(7))
    with pytest.raises(ValueError):
        cs.m_counts(order5(4))


@pytest.mark.parametrize("m, expected", [(2, -2), (4, 4), (6, -8), (8, 16)])
def test_integrality_sign(m, expected):
    assert cs.a_sum_from_integrality(m) == expected


def test_parseval_examples():
    assert cs.parseval_total(cubic(2)) == 12
    assert cs.parseval_total(cubic(4)) == 240
    assert cs.parseval_total(cubic(6)) == 4032


def test_factorization_examples():
    assert cs.theorem2_factorization(2) == (-4, -4)
    assert cs.theorem2_factorization(4) == (-16, -16)
    assert cs.theorem2_factorization(6) == (-64, -64)
    with pytest.raises(ValueError):
        cs.theorem2_factorization(3)
    with pytest.raises(ValueError):
        cs.theorem2_factorization(16)


@pytest.mark.parametrize("s", [3, 5, 7])
def test_odd_cube_root(s):
    ctx = build_field(s)
    for b in range(ctx.size):
        assert ctx.pow(cs.odd_cube_root(ctx, b), 3) == b
    with pytest.raises(ValueError):
        cs.odd_cube_root(build_field(4), 3)


# ---------- representation independence and parallel evaluation

@pytest.mark.parametrize("s", [4, 6, 8])
def test_generator_independence(s):
    base = cubic(s)
    ctx = base.ctx
    other_gen = max(g for g in range(1, ctx.size) if ctx.is_primitive(g) and cs.character(base, g) == 2)
    alt = cubic(s, generator=other_gen)
    assert alt.ctx.generator != ctx.generator
    # alt's character is the conjugate of base's
    assert all(cs.character(alt, x) == (-cs.character(base, x)) % 3 for x in range(1, ctx.size))
    assert cs.gauss_sum(alt, 1).value == cs.gauss_sum(base, 1).value
    for beta in (0, 1, 2, 5):
        assert cs.kummer_sum(alt, beta) == cs.kummer_sum(base, beta)
    m0, m1, m2 = cs.m_counts(base)
    assert cs.m_counts(alt) == (m0, m2, m1)


def test_bad_generator_rejected():
    with pytest.raises(ValueError):
        build_field(4, generator=0b1111)  # order 5


@pytest.mark.parametrize("s", [6, 10, 12])
def test_modulus_independence(s):
    from cubicgauss.gf2field import irreducibles

    values = {cs.gauss_sum(cubic(s, modulus=p), 1).value for p in list(irreducibles(s))[:4]}
    assert values == {E(cs.gauss_sum_closed_form(s))}


def test_workers_give_identical_counts(monkeypatch):
    monkeypatch.setattr(cs, "CHUNK", 1 << 10)
    spec = cubic(16)
    serial = cs.gauss_sum(spec, 7, workers=1).value
    assert cs.gauss_sum(spec, 7, workers=4).value == serial
    assert cs.kummer_sum(spec, 3, workers=4) == cs.kummer_sum(spec, 3, workers=1) == E(-1)
    assert cs.trace_class_sums(spec, workers=3) == cs.trace_class_sums(spec, workers=1)


def test_no_table_field_gives_same_sums():
    a, b = cubic(14), cubic(14, tables=False)
    assert cs.gauss_sum(a, 9).value == cs.gauss_sum(b, 9).value
    assert cs.shifted_self_sum(b) == E(128)
    assert cs.m_counts(a) == cs.m_counts(b)


def test_default_workers_env(monkeypatch):
    monkeypatch.setenv(cs.WORKERS_ENV, "3")
    assert cs.default_workers() == 3
    monkeypatch.delenv(cs.WORKERS_ENV)
    assert cs.default_workers() >= 1
