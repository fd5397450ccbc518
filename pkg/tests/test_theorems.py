import json

import pytest

from xtl.contour import sum_components
from xtl.exact import MultiLaurent
from xtl.theorems import (check_corollaries, check_gf_lemma, check_main_theorem,
                          check_relation_SZ, check_Y_equals_YY)

X = MultiLaurent.var("x")
TAU = MultiLaurent.var("tau")


@pytest.mark.parametrize("N", range(0, 7))
def test_main_theorem_symbolic(N):
    rep = check_main_theorem(N)
    assert rep.passed, rep.failures[:1]


def test_main_theorem_four_site_expansion():
    # S_4 = x + (1+x+x^2)(1+tau)^2 equals (1+x(x-tau)) tau + (1+x)^2 (1+tau+tau^2)
    lhs = sum_components(4)
    rhs = (1 + X * (X - TAU)) * TAU + (1 + X) ** 2 * (1 + TAU + TAU ** 2)
    assert lhs == rhs


def test_main_theorem_two_sites():
    # S_2 = 1+x against the single degree-one term of the generating function
    assert sum_components(2) == (1 + X).substitute({})


@pytest.mark.parametrize("N", range(0, 6))
def test_corollaries(N):
    rep = check_corollaries(N)
    assert rep.passed, rep.failures[:1]


def test_corollary_supersymmetric_point_values():
    # the x = tau = 1 values step two orders up the counting sequence
    assert sum_components(4, x=1, tau=1) == 13
    assert sum_components(5, x=1, tau=1) == 46


def test_corollary_count_chain_n6():
    rep = check_corollaries(6, susy_max=5, shift_max=5)
    assert rep.passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gf_lemma(n):
    rep = check_gf_lemma(n, trials=4, seed=2)
    assert rep.passed, rep.failures[:1]


@pytest.mark.parametrize("N", range(0, 7))
def test_y_equals_yy(N):
    rep = check_Y_equals_YY(N, trials=4, seed=3)
    assert rep.passed, rep.failures[:1]


def test_y_equals_yy_negative_control_swapped_parity():
    # using the wrong pairing parameter for the parity must fail
    from xtl.exact import brace, inv
    from xtl.qkz import rescaled_Y
    from xtl.sampling import ExactSampler
    from xtl.sixvertex import rescaled_YY

    rng = ExactSampler(12)
    N = 3
    mismatches = 0
    for _ in range(3):
        s, beta = rng.s_value(), rng.beta_value()
        q = s * s
        t = -brace(beta * s) * inv(brace(s))
        ws = list(rng.w_point(N, s))
        lhs = rescaled_Y(N, ws, s, beta)
        rhs = rescaled_YY(1, ws, s, t, q)  # parity-wrong parameter
        mismatches += lhs != rhs
    assert mismatches


@pytest.mark.parametrize("N", range(0, 5))
def test_relation_sz(N):
    rep = check_relation_SZ(N, trials=3, seed=4)
    assert rep.passed, rep.failures[:1]


def test_relation_sz_five_sites_single_trial():
    rep = check_relation_SZ(5, trials=1, seed=8)
    assert rep.passed


def test_relation_sz_six_sites_single_trial():
    rep = check_relation_SZ(6, trials=1, seed=8)
    assert rep.passed


def test_report_json_lines():
    rep = check_main_theorem(2)
    obj = json.loads(rep.to_json_line())
    assert obj["pass"] and obj["statement"]
