import json
from fractions import Fraction

import pytest

from xtl.contour import psi_components, sum_components
from xtl.exact import DomainError
from xtl.spinchain import (apply_hamiltonian_sector, build_hamiltonian,
                           eigenvalue_E, verify_eigenpair)


def test_eigenvalue_examples():
    assert eigenvalue_E(5, 1) == Fraction(-7, 2)
    assert eigenvalue_E(3, 2) == Fraction(-9, 4)
    x = Fraction(4, 7)
    assert eigenvalue_E(1, x) == Fraction(1, 2) - x / 2 - 1 / (2 * x)
    with pytest.raises(DomainError):
        eigenvalue_E(2, 0)


def test_single_site_hamiltonian_is_boundary_fields_only():
    x = Fraction(3, 5)
    h = build_hamiltonian(1, x)
    d = h.dense()
    val = Fraction(1, 2) * (Fraction(1, 2) - x) + Fraction(1, 2) * (Fraction(1, 2) - 1 / x)
    assert d[0][0] == val and d[1][1] == -val and d[0][1] == 0


def test_two_site_hamiltonian_structure():
    d = build_hamiltonian(2, Fraction(1)).dense()
    # off-diagonal hop of strength -1 in the mixed block, quarter-weighted diagonal
    assert d[1][2] == d[2][1] == -1
    assert d[0][0] == Fraction(-1, 4) and d[3][3] == Fraction(3, 4)
    assert d[0][1] == d[0][2] == d[0][3] == 0


def test_dense_matrix_is_symmetric_and_sector_preserving():
    for N in (2, 3, 4):
        h = build_hamiltonian(N, Fraction(2, 3))
        d = h.dense()
        dim = 1 << N
        for a in range(dim):
            for b in range(dim):
                assert d[a][b] == d[b][a]
                if d[a][b] != 0:
                    assert bin(a).count("1") == bin(b).count("1")


def test_sector_application_matches_dense():
    N, x = 4, Fraction(5, 3)
    h = build_hamiltonian(N, x).dense()
    amps = {(1, 3): Fraction(2), (2, 4): Fraction(-1, 2), (3, 4): Fraction(7)}

    def idx(key):
        b = 0
        for p in key:
            b |= 1 << (N - p)
        return b

    out = apply_hamiltonian_sector(N, x, amps)
    dim = 1 << N
    vec = [Fraction(0)] * dim
    for k, v in amps.items():
        vec[idx(k)] = v
    hv = [sum(h[r][c] * vec[c] for c in range(dim)) for r in range(dim)]
    got = [Fraction(0)] * dim
    for k, v in out.items():
        got[idx(k)] = v
    assert got == hv


@pytest.mark.parametrize("x", [Fraction(1), Fraction(2), Fraction(1, 3), Fraction(7, 5)])
def test_eigenpair_small_sizes(x):
    for N in range(1, 7):
        rep = verify_eigenpair(N, x)
        assert rep.passed, (N, x)
        assert rep.eigenvalue == eigenvalue_E(N, x)


def test_eigenpair_normalization_component():
    rep = verify_eigenpair(4, Fraction(1))
    assert rep.normalization_ok
    tab = psi_components(4, x=Fraction(1), tau=Fraction(1))
    assert tab.entries[(1, 2)] == 1


def test_negative_control_perturbed_component():
    N, x = 3, Fraction(2)
    tab = psi_components(N, x=x, tau=Fraction(1))
    amps = {a: Fraction(v) for a, v in tab.entries.items() if v != 0}
    first = next(iter(amps))
    amps[first] += 1
    hv = apply_hamiltonian_sector(N, x, amps)
    e = eigenvalue_E(N, x)
    assert any(hv.get(k, 0) != e * amps.get(k, 0) for k in set(hv) | set(amps))


def test_component_sum_consistency():
    x = Fraction(7, 5)
    for N in range(1, 9):
        tab = psi_components(N, x=x, tau=Fraction(1))
        assert sum(tab.entries.values()) == sum_components(N, x=x, tau=Fraction(1))


def test_report_json():
    rep = verify_eigenpair(3, Fraction(3, 7))
    obj = json.loads(json.dumps(rep.to_json()))
    assert obj["N"] == 3 and obj["x"] == "3/7"
    assert obj["residual_zero"] and obj["magnetization_ok"]
