from fractions import Fraction

from xtl.contour import ChainShape, psi_components, sum_components, tsasm_count_integral
from xtl.exact import MultiLaurent

X = MultiLaurent.var("x")
T = MultiLaurent.var("tau")


def test_chain_shape():
    s = ChainShape.of(5)
    assert (s.n, s.nprime, s.eps) == (2, 3, 1)
    assert s.n + s.nprime == 5
    s = ChainShape.of(8)
    assert (s.n, s.nprime, s.eps) == (4, 4, 0)


def test_psi4_table_matches_published_polynomials():
    t = psi_components(4).entries
    assert t[(1, 2)] == T
    assert t[(1, 3)] == 1 + X * T + T ** 2
    assert t[(1, 4)] == X * (1 + T ** 2)
    assert t[(2, 3)] == X + T + X ** 2 * T
    assert t[(2, 4)] == X * (X + T + X * T ** 2)
    assert t[(3, 4)] == X ** 2 * T


def test_smallest_tuple_entry_is_tau_power():
    for N in range(0, 9):
        table = psi_components(N)
        n, npr = table.shape.n, table.shape.nprime
        first = tuple(range(1, n + 1))
        assert table.entries[first] == T ** (npr * (npr - 1) // 2)


def test_table_has_full_tuple_set():
    from math import comb
    for N in (3, 5, 6):
        table = psi_components(N)
        assert len(table.entries) == comb(N, table.shape.n)


def test_sum_components_published_values():
    assert sum_components(0) == 1
    assert sum_components(1) == 1
    assert sum_components(2) == 1 + X
    assert sum_components(3) == (1 + X) * (1 + T)
    assert sum_components(4) == X + (1 + X + X ** 2) * (1 + T) ** 2
    assert sum_components(5) == (X * (1 + T) ** 2 * (2 + 2 * T + T ** 2)
                                 + (1 + X ** 2) * (1 + 4 * T + 4 * T ** 2 + 3 * T ** 3 + T ** 4))


def test_sum_equals_sum_of_components():
    for N in range(0, 9):
        table = psi_components(N)
        total = MultiLaurent.const(0, ("x", "tau"))
        for p in table.entries.values():
            total = total + p
        assert total == sum_components(N), N


def test_coefficients_nonnegative_regression():
    # Empirical regression check (not a stated claim): all coefficients of the
    # component polynomials and their sum are nonnegative integers for N <= 8.
    def coeffs(p):
        if isinstance(p, MultiLaurent):
            return p.terms.values()
        return [p]

    for N in range(0, 9):
        for p in psi_components(N).entries.values():
            assert all(isinstance(c, int) and c >= 0 for c in coeffs(p))
        assert all(isinstance(c, int) and c >= 0 for c in coeffs(sum_components(N)))


def test_numeric_specialization_matches_symbolic():
    x0, t0 = Fraction(7, 5), Fraction(1)
    sym = sum_components(5)
    num = sum_components(5, x=x0, tau=t0)
    assert sym.eval_at({"x": x0, "tau": t0}) == num
    tab = psi_components(4, x=x0, tau=t0)
    symtab = psi_components(4)
    for a, v in tab.entries.items():
        assert symtab.entries[a].eval_at({"x": x0, "tau": t0}) == v


def test_tsasm_count_integral_small_orders():
    assert [tsasm_count_integral(N) for N in range(0, 7)] == [1, 1, 1, 2, 4, 13, 46]


def test_count_integral_equals_sum_at_special_point():
    for N in range(0, 7):
        assert sum_components(N, x=0, tau=1) == tsasm_count_integral(N)


def test_component_table_json():
    obj = psi_components(2).to_json()
    assert obj["N"] == 2 and obj["n"] == 1
    assert [e["a"] for e in obj["entries"]] == [[1], [2]]
