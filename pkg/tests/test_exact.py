import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from xtl.exact import (
    DegeneratePointError,
    DomainError,
    GaussianRational,
    MultiLaurent,
    ParamPoint,
    UsageError,
    bracket,
    brace,
    div_exact_univar,
    format_scalar,
    interpolate_laurent,
    parse_scalar,
)

I = GaussianRational(0, 1)
X = MultiLaurent.var("x")
TAU = MultiLaurent.var("tau")


# ---------------------------------------------------------------------------
# GaussianRational
# ---------------------------------------------------------------------------

def test_gaussian_basic_ops():
    a = GaussianRational(Fraction(1, 2), Fraction(3, 4))
    b = GaussianRational(2, -1)
    assert a + b == GaussianRational(Fraction(5, 2), Fraction(-1, 4))
    assert a * b == GaussianRational(Fraction(7, 4), 1)
    assert (a / b) * b == a
    assert a - a == 0
    assert (I * I) == -1
    assert I ** 4 == 1
    assert GaussianRational(3) == 3 and GaussianRational(3) == Fraction(3)


def test_gaussian_inverse_and_division_by_zero():
    assert GaussianRational(0, 2).inverse() == GaussianRational(0, Fraction(-1, 2))
    with pytest.raises(DomainError):
        GaussianRational(0).inverse()


def test_bracket_brace_examples():
    assert bracket(1) == 0
    assert brace(1) == 2
    # i - 1/i = i + i = 2i, checked against the scalar oracle
    assert bracket(I) == I - I.inverse() == GaussianRational(0, 2)
    assert bracket(Fraction(2)) == Fraction(3, 2)
    with pytest.raises(DomainError):
        bracket(0)


def test_scalar_strings_roundtrip():
    vals = [0, 5, -3, Fraction(1, 2), Fraction(-7, 3),
            GaussianRational(Fraction(1, 2), Fraction(3, 4)),
            GaussianRational(0, -1), GaussianRational(2, 5)]
    for v in vals:
        s = format_scalar(v)
        w = parse_scalar(s)
        assert GaussianRational(0) + w == GaussianRational(0) + v, (s, v)
    assert format_scalar(GaussianRational(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4*i"


# ---------------------------------------------------------------------------
# MultiLaurent core
# ---------------------------------------------------------------------------

def test_poly_arith_examples():
    x = X
    xinv = MultiLaurent.monomial(("x",), (-1,))
    assert x * xinv == 1
    assert (1 + x) * (1 + TAU) == 1 + x + TAU + x * TAU
    assert ((1 + x) - (1 + x)).is_zero()


def test_coeff_extract_examples():
    p = 1 + 2 * X + 3 * X * X
    assert p.coeff_of("x", 1) == MultiLaurent.const(2)
    q = MultiLaurent(("x", "tau"), {(-1, 1): 1})
    assert q.coeff_of("x", -1) == TAU
    assert (1 + X).coeff_of("x", 5).is_zero()
    with pytest.raises(UsageError):
        p.coeff_of("y", 0)


def test_degree_width_examples():
    p = MultiLaurent(("x",), {(2,): 1, (-2,): 1})
    assert p.degree_width("x") == 4 and p.is_centred("x")
    z = MultiLaurent(("x",), {})
    assert z.degree_width("x") == float("-inf") and z.is_centred("x")
    q = X + 1
    assert q.degree_width("x") == 1 and not q.is_centred("x")


def test_eval_examples():
    assert (X + TAU).eval_at({"x": 1, "tau": 1}) == 2
    assert MultiLaurent.monomial(("x",), (-1,)).eval_at({"x": 2}) == Fraction(1, 2)
    # [q z] as a Laurent polynomial in z with q = 4 evaluates at z=2 to 8 - 1/8
    qz = MultiLaurent(("z",), {(1,): 4, (-1,): Fraction(-1, 4)})
    assert qz.eval_at({"z": 2}) == Fraction(63, 8)
    with pytest.raises(DomainError):
        MultiLaurent.monomial(("x",), (-1,)).eval_at({"x": 0})
    with pytest.raises(UsageError):
        (X + TAU).eval_at({"x": 1})


def test_substitute():
    p = X ** 2 + X * TAU
    assert p.substitute({"tau": 1}) == (X ** 2 + X).substitute({})
    q = p.substitute({"x": 1 + TAU})
    assert q == (1 + TAU) ** 2 + (1 + TAU) * TAU
    inv_mono = MultiLaurent.monomial(("y",), (-1,))
    r = MultiLaurent.monomial(("x",), (-2,)).substitute({"x": inv_mono})
    assert r == MultiLaurent.monomial(("y",), (2,))


def test_variable_alignment():
    p = X + 1
    q = TAU + 1
    r = p + q
    assert r.vars == ("x", "tau")
    assert r == MultiLaurent(("x", "tau"), {(0, 0): 2, (1, 0): 1, (0, 1): 1})
    assert MultiLaurent.const(1, ("x",)) == MultiLaurent.const(1)


def test_json_schema_roundtrip_and_order():
    p = MultiLaurent(("x", "tau"), {(1, 0): 1, (0, 0): -2, (0, 2): Fraction(1, 2),
                                    (-1, 1): GaussianRational(0, 1)})
    obj = p.to_json()
    assert obj["vars"] == ["x", "tau"]
    es = [tuple(t["e"]) for t in obj["terms"]]
    assert es == sorted(es)
    q = MultiLaurent.from_json(json.loads(json.dumps(obj)))
    assert q == p


# ---------------------------------------------------------------------------
# ring laws on random values
# ---------------------------------------------------------------------------

coef = st.integers(-9, 9)
expo = st.integers(-3, 3)


@st.composite
def polys(draw, vars=("x", "tau")):
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        e = tuple(draw(expo) for _ in vars)
        terms[e] = draw(coef)
    return MultiLaurent(vars, terms)


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_canonical_form_add_sub(a, b):
    assert (a + b) - b == a


@given(polys(), polys(), polys())
@settings(max_examples=40, deadline=None)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_eval_is_ring_homomorphism(a, b):
    pt = {"x": Fraction(3, 2), "tau": Fraction(-5, 7)}
    ga = GaussianRational(0)
    assert ga + (a * b).eval_at(pt) == (ga + a.eval_at(pt)) * (ga + b.eval_at(pt)) + 0
    assert ga + (a + b).eval_at(pt) == ga + a.eval_at(pt) + b.eval_at(pt)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_degree_width_additive_under_mul(a, b):
    if a.is_zero() or b.is_zero():
        return
    for v in ("x", "tau"):
        assert (a * b).degree_width(v) == a.degree_width(v) + b.degree_width(v)


# ---------------------------------------------------------------------------
# interpolation and exact division
# ---------------------------------------------------------------------------

def test_interpolate_laurent_recovers():
    p = MultiLaurent(("w",), {(-2,): Fraction(3, 5), (0,): -1, (3,): 7})
    xs = [Fraction(k) for k in range(2, 8)]
    ys = [p.eval_at({"w": x}) for x in xs]
    q = interpolate_laurent("w", xs, ys, -2, 3)
    assert q == p
    # sanity at a fresh point
    assert q.eval_at({"w": Fraction(11, 3)}) == p.eval_at({"w": Fraction(11, 3)})


def test_interpolate_rejects_bad_input():
    with pytest.raises(UsageError):
        interpolate_laurent("w", [1, 2], [1, 1, 1], 0, 2)
    with pytest.raises(UsageError):
        interpolate_laurent("w", [1, 1, 2], [0, 0, 0], 0, 2)


def test_div_exact_univar():
    w = MultiLaurent.var("w")
    d = w - MultiLaurent.monomial(("w",), (-1,))
    p = d * (3 * w ** 2 + MultiLaurent.monomial(("w",), (-5,), Fraction(1, 2)))
    assert div_exact_univar(p, d, "w") * d == p
    with pytest.raises(DomainError):
        div_exact_univar(w + 1, d, "w")


# ---------------------------------------------------------------------------
# ParamPoint validation
# ---------------------------------------------------------------------------

def test_parampoint_rejects_excluded_values():
    ParamPoint(Fraction(3, 2), Fraction(5, 7), sites=(1, 2))
    for bad_s in (0, 1, -1, I, -I):
        with pytest.raises(DomainError):
            ParamPoint(bad_s, Fraction(5, 7))
    for bad_beta in (0, 1, -1):
        with pytest.raises(DomainError):
            ParamPoint(Fraction(3, 2), bad_beta)
    with pytest.raises(DomainError):
        ParamPoint(Fraction(3, 2), Fraction(5, 7), sites=(1, 0))
    assert isinstance(DegeneratePointError("x"), DomainError)
