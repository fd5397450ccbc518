import itertools
import random

import pytest

from xtl.exact import GaussianRational as G, MultiLaurent as ML, UsageError, bracket, brace, inv
from xtl.operators import apply_two_site, mat4_eq, r_bulk, r_check_bulk
from xtl.sampling import ExactSampler
from xtl.sixvertex import (alpha_minus, alpha_plus, check_yb_identities,
                           config_weight, enumerate_configs, overlap_ZZ,
                           overlap_ZZ_poly_in_w, partition_algebraic,
                           partition_enum, rescaled_YY)

RNG = ExactSampler(101)
S = RNG.s_value()
T = RNG.nonzero()
B = RNG.nonzero()
Q = S * S


def test_configuration_counts_match_published_figures():
    assert len(enumerate_configs(1, "-")) == 1
    assert len(enumerate_configs(1, "+")) == 2
    assert len(enumerate_configs(2, "-")) == 4
    assert len(enumerate_configs(2, "+")) == 13


def test_alpha_validation():
    with pytest.raises(UsageError):
        enumerate_configs(2, "uu")
    with pytest.raises(UsageError):
        enumerate_configs(2, "udx u")
    assert alpha_plus(2) == "udud" and alpha_minus(2) == "dudu"


def test_dump_lines_are_distinct_and_sorted():
    cs = enumerate_configs(2, "+")
    lines = [c.dump_line() for c in cs]
    assert len(set(lines)) == len(lines)
    assert lines == sorted(lines)


def test_size_one_partition_closed_forms_numeric():
    z1, z2 = RNG.nonzero(), RNG.nonzero()
    zp = partition_enum(1, "+", [z1, z2], S, T)
    zm = partition_enum(1, "-", [z1, z2], S, T)
    assert zp == -T * bracket(Q * z1 * z2) * brace(S ** 3 * inv(z1)) * inv(brace(S))
    assert zm == T * bracket(Q * z1 * z2) * brace(S * z2) * inv(brace(S))


def test_size_one_partition_closed_form_symbolic_sites():
    zs = [ML.var("z1"), ML.var("z2")]
    got = partition_enum(1, "+", zs, S, T)
    want = -T * bracket(Q * zs[0] * zs[1]) * brace(S ** 3 * zs[0].inverse()) * inv(brace(S))
    assert got == want


def test_corner_and_bulk_weight_values():
    # the two transmitting corner states weigh t; the two turning bulk states -[q^2]
    zs = [RNG.nonzero(), RNG.nonzero()]
    for cfg in enumerate_configs(1, "+"):
        w = config_weight(cfg, zs, S, T)
        classes = {cfg.corner_class(1), cfg.corner_class(2)}
        assert classes & {"tp", "tm", "s"}
    cfgs = enumerate_configs(1, "+")
    # one of the two configurations has the turning bulk vertex
    turning = [c for c in cfgs if c.bulk_class(1, 2) in ("cp", "cm")]
    assert len(turning) == 1
    w = config_weight(turning[0], zs, S, T)
    assert w == T * (-bracket(Q * Q)) * brace(S * zs[1]) * inv(brace(S))


def test_partition_enum_equals_sum_of_config_weights():
    zs = [RNG.nonzero() for _ in range(4)]
    total = None
    for c in enumerate_configs(2, "-"):
        w = config_weight(c, zs, S, T)
        total = w if total is None else total + w
    assert total == partition_enum(2, "-", zs, S, T)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dual_route_partition_functions(n):
    zs = [RNG.nonzero() for _ in range(2 * n)]
    words = ["".join(w) for w in itertools.product("ud", repeat=2 * n)]
    if n == 3:
        words = random.Random(0).sample(words, 16) + [alpha_plus(3), alpha_minus(3)]
    for w in words:
        assert partition_enum(n, w, zs, S, T) == partition_algebraic(n, w, zs, S, T), w


def test_dual_route_alternating_words_n4():
    zs = [RNG.nonzero() for _ in range(8)]
    for a in ("+", "-"):
        assert partition_enum(4, a, zs, S, T) == partition_algebraic(4, a, zs, S, T)


def test_homogeneous_partition_is_generating_function_in_t():
    # symbolic corner weight: the normalized homogeneous partition function is
    # the full generating-function polynomial at tau = -{q}
    from xtl.tsasm import genfun
    tvar = ML.var("t")
    ones = [G(1)] * 4
    got = partition_enum(2, "-", ones, S, tvar) * inv(bracket(Q)) ** 6
    want = genfun(4).substitute({"tau": -brace(Q)})
    assert got == want


def test_all_words_batch_matches_per_word():
    from xtl.sixvertex import partition_algebraic_all_words, partition_enum_all_words
    n = 2
    zs = [RNG.nonzero() for _ in range(4)]
    enum = partition_enum_all_words(n, zs, S, T)
    alg = partition_algebraic_all_words(n, zs, S, T)
    assert len(enum) == 16
    for w in ("udud", "dudu", "uudd", "dddd"):
        assert enum[w] == partition_enum(n, w, zs, S, T)
        assert alg[w] == partition_algebraic(n, w, zs, S, T)
        assert enum[w] == alg[w]


def test_overlap_closed_forms():
    w1 = RNG.w_point(2, S)[0]
    got = overlap_ZZ(1, [w1], S, T, B)
    assert got == T * bracket(S) * brace(B * inv(S)) * bracket(Q * Q * inv(w1) ** 2)
    assert rescaled_YY(1, [w1], S, T, B) == -T * brace(B * inv(S))
    assert overlap_ZZ(0, [], S, T, B) == G(1)
    assert rescaled_YY(0, [], S, T, B) == G(1)


def test_overlap_expands_over_pairing_words():
    # the overlap is the stated 2^n combination of half-specialized partition values
    n = 2
    ws = list(RNG.w_point(2 * n, S))
    zs = [ws[0], ws[0].inverse(), ws[1], ws[1].inverse()]
    cu = [bracket(inv(Q) * B * w) for w in ws]
    cd = [bracket(Q * B * inv(w)) for w in ws]
    total = G(0)
    for bits in itertools.product((0, 1), repeat=n):
        word = "".join("du" if b else "ud" for b in bits)
        coef = G(1)
        for i, b in enumerate(bits):
            coef = coef * (cd[i] if b else cu[i])
        total = total + coef * partition_enum(n, word, zs, S, T)
    assert total == overlap_ZZ(n, ws, S, T, B)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_overlap_symmetry_inversion_evenness(n):
    ws = list(RNG.w_point(2 * n, S))
    z0 = overlap_ZZ(n, ws, S, T, B)
    assert overlap_ZZ(n, [-ws[0]] + ws[1:], S, T, B) == z0
    li = overlap_ZZ(n, [ws[0].inverse()] + ws[1:], S, T, B) * bracket(Q * Q * ws[0].inverse() ** 2)
    assert li == z0 * bracket(Q * Q * ws[0] ** 2)
    if n >= 2:
        sw = [ws[1], ws[0]] + ws[2:]
        assert overlap_ZZ(n, sw, S, T, B) == z0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_overlap_reduction_half_turn(n):
    ws = list(RNG.w_point(2 * n, S))
    pt = ws[:-1] + [G(0, 1) * S]
    lhs = rescaled_YY(n, pt, S, T, B)
    rhs = T * brace(B * inv(S))
    if n % 2:
        rhs = -rhs
    for w in ws[:-1]:
        rhs = rhs * brace(S ** 3 * w) ** 2 * brace(S ** 3 * w.inverse()) ** 2
    rhs = rhs * rescaled_YY(n - 1, ws[:-1], S, T, B)
    assert lhs == rhs


@pytest.mark.parametrize("n", [2, 3])
def test_overlap_reduction_pair(n):
    ws = list(RNG.w_point(2 * n, S))
    pt = list(ws)
    pt[n - 1] = ws[n - 2] * Q.inverse()
    w0 = ws[n - 2]
    lhs = rescaled_YY(n, pt, S, T, B)
    detk = T * T - (brace(S * inv(w0)) * inv(brace(S))) ** 2
    f = (-bracket(Q * Q) ** 2 * bracket(B * inv(w0)) * bracket(B * inv(Q) * w0)
         * brace(S * w0) * brace(S ** 3 * inv(w0)) * detk)
    for w in ws[:n - 2]:
        f = f * (bracket(Q * Q * inv(w0) * inv(w)) * bracket(Q * Q * inv(w0) * w)
                 * bracket(Q * w0 * w) * bracket(Q * w0 * inv(w))) ** 2
    assert lhs == f * rescaled_YY(n - 2, ws[:n - 2], S, T, B)


@pytest.mark.parametrize("n", [2, 3])
def test_overlap_polynomial_width_bound(n):
    # even inversion-symmetric rescaled overlap of width at most 8(n-1)
    from xtl.exact import div_exact_univar
    ws = list(RNG.w_point(2 * n, S))
    poly = overlap_ZZ_poly_in_w(n, ws, 1, S, T, B)
    assert all(e[0] % 2 == 0 for e in poly.terms)
    den = bracket(S) ** n
    for w in ws[1:]:
        den = den * bracket(Q * Q * w.inverse() ** 2)
    sign = -1 if (n * (n + 1) // 2) % 2 else 1
    qw = ML(("w",), {(-2,): Q * Q, (2,): -(Q * Q).inverse()})  # [q^2/w^2]
    ypoly = div_exact_univar(poly, qw, "w") * (sign * den.inverse())
    r = ypoly.degree_range("w")
    assert ypoly.is_centred("w") and r[1] - r[0] <= 8 * (n - 1)
    assert all(ypoly.terms.get((-e[0],), 0) == c for e, c in ypoly.terms.items())


def test_yang_baxter_suite_passes():
    rep = check_yb_identities(trials=8, seed=6)
    assert rep["passed"], {k: v for k, v in rep.items()
                           if isinstance(v, dict) and v["failures"]}


def test_stack_commutation_full_operator_n3():
    # operator-level equality on all 64 basis vectors, at one random point
    from xtl.sixvertex import apply_operator_stack
    rng = ExactSampler(55)
    s, t = rng.s_value(), rng.nonzero()
    zs = [rng.nonzero() for _ in range(6)]
    i = 3
    rc = r_check_bulk(zs[i - 1] * inv(zs[i]), s)
    zs_sw = list(zs)
    zs_sw[i - 1], zs_sw[i] = zs_sw[i], zs_sw[i - 1]
    for k in range(64):
        vec = [G(int(j == k)) for j in range(64)]
        lhs = apply_two_site(apply_operator_stack(zs, s, t, vec), rc, i, i + 1, 6)
        rhs = apply_operator_stack(zs_sw, s, t, apply_two_site(vec, rc, i, i + 1, 6))
        assert lhs == rhs, k


def test_negative_control_corrupted_crossing_matrix():
    # a corrupted crossing entry must break the cubic consistency identity
    s = RNG.s_value()
    z, w = RNG.nonzero(), RNG.nonzero()
    rc = r_check_bulk(z * inv(w), s)
    bad = tuple(tuple(v * 2 if (r, c) == (0, 0) else v for c, v in enumerate(row))
                for r, row in enumerate(rc))
    assert not mat4_eq(bad, rc)
    vec = [G(k % 7 - 3) for k in range(8)]
    lhs = apply_two_site(apply_two_site(apply_two_site(
        vec, r_bulk(w, s), 2, 3, 3), r_bulk(z, s), 1, 3, 3), bad, 1, 2, 3)
    rhs = apply_two_site(apply_two_site(apply_two_site(
        vec, bad, 1, 2, 3), r_bulk(z, s), 2, 3, 3), r_bulk(w, s), 1, 3, 3)
    assert lhs != rhs
