"""The inhomogeneous eigenvector family and its generalized component sum.

The components at site values z_1..z_N are defined by multiple contour
integrals whose w-contours surround the simple poles at w = z_j only.  Each
integral is evaluated exactly as a residue sum: an assignment sends
integration variable i to a pole index j_i <= a_i, assignments with repeated
indices vanish (a cross factor [w_i/w_j] is zero), and at a simple pole of
1/[z/w] the combined residue and measure bookkeeping contributes a factor of
minus the remaining integrand at w = z_j.  The per-pole constant is pinned by
the closed form of the two-site component, which is unit-tested.

Specializations that collide poles (equal site values up to sign, ratios
+-q^{+-1}, products +-q^{-2}) raise DegeneratePointError; property checkers
reach such points through exact one-variable Laurent interpolation instead,
using the stated degree-width bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import (DegeneratePointError, DomainError, GaussianRational,
                    MultiLaurent, UsageError, as_gaussian, bracket, brace, inv,
                    interpolate_laurent, div_exact_univar)
from .operators import k_boundary, r_check_exchange
from .sampling import ExactSampler

__all__ = [
    "SpinVector", "chi_covector", "big_psi_component", "psi_vector",
    "psi_vector_poly_in_z", "psi_vector_homogeneous",
    "gen_sum_Z", "gen_sum_Z_poly_in_w", "rescaled_Y", "y_divisor",
    "check_exchange_and_reflection", "check_psi_reduction", "check_Z_properties",
]

_ONE = GaussianRational(1)
_ZERO = GaussianRational(0)
_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# sparse vectors on (C^2)^{\otimes N}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinVector:
    """Sparse vector indexed by strictly increasing down-spin position tuples."""

    N: int
    amps: Mapping[tuple, GaussianRational]

    @staticmethod
    def make(N: int, amps: Mapping[tuple, GaussianRational]) -> "SpinVector":
        clean = {}
        for k, v in amps.items():
            k = tuple(k)
            if any(not 1 <= p <= N for p in k) or list(k) != sorted(set(k)):
                raise UsageError(f"bad down-spin positions {k} for N={N}")
            v = as_gaussian(v)
            if not v.is_zero():
                clean[k] = v
        return SpinVector(N, clean)

    def amplitude(self, key: tuple) -> GaussianRational:
        return self.amps.get(tuple(key), _ZERO)

    def is_zero(self) -> bool:
        return not self.amps

    def __add__(self, other: "SpinVector") -> "SpinVector":
        if self.N != other.N:
            raise UsageError("size mismatch")
        out = dict(self.amps)
        for k, v in other.amps.items():
            w = out.get(k, _ZERO) + v
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
        return SpinVector(self.N, out)

    def __sub__(self, other: "SpinVector") -> "SpinVector":
        return self + other.scale(GaussianRational(-1))

    def scale(self, c) -> "SpinVector":
        c = as_gaussian(c)
        if c.is_zero():
            return SpinVector(self.N, {})
        return SpinVector(self.N, {k: v * c for k, v in self.amps.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, SpinVector) and self.N == other.N
                and self.amps == other.amps)

    def apply_one_site(self, m2, i: int) -> "SpinVector":
        out: dict = {}
        for key, amp in self.amps.items():
            down = i in key
            rest = tuple(p for p in key if p != i)
            for new_down, coef in ((False, m2[0][down]), (True, m2[1][down])):
                if not coef:
                    continue
                nk = tuple(sorted(rest + ((i,) if new_down else ())))
                w = out.get(nk, _ZERO) + coef * amp
                if w.is_zero():
                    out.pop(nk, None)
                else:
                    out[nk] = w
        return SpinVector(self.N, out)

    def apply_two_site(self, m4, i: int) -> "SpinVector":
        """Apply a 4x4 matrix on adjacent sites (i, i+1)."""
        out: dict = {}
        for key, amp in self.amps.items():
            col = 2 * (i in key) + (i + 1 in key)
            rest = tuple(p for p in key if p != i and p != i + 1)
            for row in range(4):
                coef = m4[row][col]
                if not coef:
                    continue
                add = (() if row == 0 else (i + 1,) if row == 1
                       else (i,) if row == 2 else (i, i + 1))
                nk = tuple(sorted(rest + add))
                w = out.get(nk, _ZERO) + coef * amp
                if w.is_zero():
                    out.pop(nk, None)
                else:
                    out[nk] = w
        return SpinVector(self.N, out)

    def insert_singlet(self, i: int) -> "SpinVector":
        """Map a vector on N-2 sites to N sites by inserting ud - du at (i, i+1)."""
        out: dict = {}
        for key, amp in self.amps.items():
            shifted = tuple(p if p < i else p + 2 for p in key)
            for pos, sign in ((i + 1, _ONE), (i, -_ONE)):
                nk = tuple(sorted(shifted + (pos,)))
                w = out.get(nk, _ZERO) + sign * amp
                if w.is_zero():
                    out.pop(nk, None)
                else:
                    out[nk] = w
        return SpinVector(self.N + 2, out)


def chi_covector(w, s):
    """Dense coefficients [uu, ud, du, dd] of the two-site pairing covector."""
    c = brace(s * w) * inv(brace(s))
    return [c, _ONE + 0 * c, _ONE + 0 * c, c]


# ---------------------------------------------------------------------------
# residue evaluation of the components
# ---------------------------------------------------------------------------

class _ResidueTables:
    """Shared bracket tables for one site tuple; raises DegeneratePointError
    if any denominator bracket vanishes."""

    def __init__(self, zs: Sequence, s, beta):
        N = len(zs)
        self.N = N
        zs = [as_gaussian(z) for z in zs]
        s, beta = as_gaussian(s), as_gaussian(beta)
        q = s * s
        zinv = [z.inverse() for z in zs]
        self.ratio = [[None] * N for _ in range(N)]      # [z_j / z_k]
        self.qratio = [[None] * N for _ in range(N)]     # [q z_j / z_k]
        self.qprod = [[None] * N for _ in range(N)]      # [q z_j z_k]
        self.q2prod = [[None] * N for _ in range(N)]     # [q^2 z_j z_k]
        for j in range(N):
            for k in range(N):
                r = zs[j] * zinv[k]
                if j != k:
                    v = bracket(r)
                    if v.is_zero():
                        raise DegeneratePointError("site values collide: z_j = +-z_k")
                    self.ratio[j][k] = v
                v = bracket(q * r)
                if v.is_zero():
                    raise DegeneratePointError("site ratio hits +-1/q")
                self.qratio[j][k] = v
                self.qprod[j][k] = bracket(q * zs[j] * zs[k])
                v = bracket(q * q * zs[j] * zs[k])
                if v.is_zero():
                    raise DegeneratePointError("site product hits +-1/q^2")
                self.q2prod[j][k] = v
        self.bw = [bracket(beta * z) for z in zs]
        self.q2sq = [self.q2prod[j][j] for j in range(N)]


def _prefactor(t: _ResidueTables, n: int) -> GaussianRational:
    p = _ONE
    for i in range(t.N):
        for j in range(i + 1, t.N):
            p = p * t.qratio[j][i] * t.q2prod[i][j]
    return p * (-t.qratio[0][0]) ** n  # qratio[j][j] is [q]


def _denominators(t: _ResidueTables):
    """inv of the three per-variable denominator groups, keyed by (pole, a)."""
    N = t.N
    d3 = []
    for p in range(N):
        v = _ONE
        for j in range(N):
            v = v * t.q2prod[p][j]
        d3.append(v)
    d1 = [[None] * (N + 1) for _ in range(N)]  # d1[p][a] = prod_{j<=a, j!=p} [z_j/z_p]
    for p in range(N):
        acc = _ONE
        for a in range(1, N + 1):
            if a - 1 != p:
                acc = acc * t.ratio[a - 1][p]
            d1[p][a] = acc
    d2 = [[None] * (N + 2) for _ in range(N)]  # d2[p][a] = prod_{j>=a} [q z_j/z_p]
    for p in range(N):
        acc = _ONE
        for a in range(N, 0, -1):
            acc = acc * t.qratio[a - 1][p]
            d2[p][a] = acc
    inv_cache: dict = {}

    def denom_inv(p: int, a: int) -> GaussianRational:
        key = (p, a)
        if key not in inv_cache:
            inv_cache[key] = (d1[p][a] * d2[p][a] * d3[p]).inverse()
        return inv_cache[key]

    return denom_inv


def _component_sum(t: _ResidueTables, a: tuple, denom_inv) -> GaussianRational:
    """Residue sum for one position tuple (without the global prefactor)."""
    n = len(a)
    total = _ZERO
    poles: list[int] = []

    def cross(i: int, p: int) -> GaussianRational:
        acc = _ONE
        for ii in range(i):
            pp = poles[ii]
            acc = (acc * t.qratio[p][pp] * t.ratio[pp][p]
                   * t.qprod[pp][p] * t.q2prod[pp][p])
        return acc

    def walk(i: int, acc: GaussianRational):
        nonlocal total
        if i == n:
            total = total + acc
            return
        for p in range(a[i]):
            if p in poles:
                continue
            term = (acc * cross(i, p) * t.q2sq[p] * t.bw[p] * denom_inv(p, a[i]))
            poles.append(p)
            walk(i + 1, term)
            poles.pop()

    walk(0, _ONE)
    return total if n % 2 == 0 else -total


def psi_vector(N: int, zs: Sequence, s, beta) -> SpinVector:
    """The eigenvector-family vector at the given site values (exact)."""
    if N < 0:
        raise UsageError("N must be >= 0")
    if N <= 1:
        return SpinVector.make(N, {(): _ONE})
    if len(zs) != N:
        raise UsageError(f"need {N} site values")
    from itertools import combinations
    t = _ResidueTables(zs, s, beta)
    n = N // 2
    pref = _prefactor(t, n)
    denom_inv = _denominators(t)
    amps = {}
    for a in combinations(range(1, N + 1), n):
        v = pref * _component_sum(t, a, denom_inv)
        if not v.is_zero():
            amps[a] = v
    return SpinVector(N, amps)


def big_psi_component(N: int, a: tuple, zs: Sequence, s, beta) -> GaussianRational:
    """A single component at strictly increasing positions a (exact)."""
    a = tuple(a)
    if N <= 1:
        if a != ():
            raise UsageError("chains of fewer than two sites have only the empty tuple")
        return _ONE
    n = N // 2
    if len(a) != n or list(a) != sorted(set(a)) or not all(1 <= p <= N for p in a):
        raise UsageError(f"positions must be {n} strictly increasing values in 1..{N}")
    t = _ResidueTables(zs, s, beta)
    return _prefactor(t, n) * _component_sum(t, a, _denominators(t))


# ---------------------------------------------------------------------------
# interpolation wrappers for degenerate specializations
# ---------------------------------------------------------------------------

def _distinct_abscissae(m: int, accept) -> list:
    """m distinct exact sample values x with accept(x) true, from a fixed sweep."""
    out = []
    k = 1
    while len(out) < m:
        k += 1
        for cand in (Fraction(k + 1, k), Fraction(k, k + 1), Fraction(-k - 1, k)):
            x = GaussianRational(cand)
            if accept(x):
                out.append(x)
                if len(out) == m:
                    break
        if k > 40 * m + 40:
            raise DomainError("could not find enough nondegenerate sample points")
    return out


def psi_vector_poly_in_z(N: int, zs: Sequence, i: int, s, beta,
                         halfwidth: int | None = None) -> dict:
    """All components as exact Laurent polynomials in z_i (others fixed).

    Interpolates at distinct nondegenerate abscissae using the centred
    degree-width bounds, then cross-validates at two extra points.
    """
    if not 1 <= i <= N:
        raise UsageError("variable index out of range")
    n = N // 2
    npr = N - n
    if halfwidth is None:
        halfwidth = max(2 * (npr - 1), 2 * n - 1)
    zs = [as_gaussian(z) for z in zs]

    def vector_at(x) -> SpinVector:
        pt = list(zs)
        pt[i - 1] = x
        return psi_vector(N, pt, s, beta)

    def accept(x) -> bool:
        pt = list(zs)
        pt[i - 1] = x
        from .sampling import z_point_degenerate
        return not x.is_zero() and not z_point_degenerate(pt, as_gaussian(s))

    m = 2 * halfwidth + 1
    xs = _distinct_abscissae(m + 2, accept)
    vecs = [vector_at(x) for x in xs]
    keys = set()
    for v in vecs:
        keys.update(v.amps)
    out = {}
    for key in keys:
        poly = interpolate_laurent("z", xs[:m], [v.amplitude(key) for v in vecs[:m]],
                                   -halfwidth, halfwidth)
        for x, v in zip(xs[m:], vecs[m:]):
            if poly.eval_at({"z": x}) != v.amplitude(key):
                raise DomainError("interpolation window too small for a component")
        out[key] = poly
    return out


def psi_vector_homogeneous(N: int, s, beta) -> SpinVector:
    """The vector with every site value specialized to 1, via exact
    interpolation along the curve z_i = lambda^(i-1)."""
    if N <= 1:
        return SpinVector.make(N, {(): _ONE})
    n = N // 2
    npr = N - n
    h = max(2 * (npr - 1), 2 * n - 1)
    H = h * (N * (N - 1) // 2)
    s = as_gaussian(s)

    def accept(lam) -> bool:
        from .sampling import z_point_degenerate
        if lam.is_zero():
            return False
        zs = [lam ** k for k in range(N)]
        return not z_point_degenerate(zs, s)

    m = 2 * H + 1
    lams = _distinct_abscissae(m + 1, accept)
    vecs = [psi_vector(N, [lam ** k for k in range(N)], s, beta) for lam in lams]
    keys = set()
    for v in vecs:
        keys.update(v.amps)
    amps = {}
    one = GaussianRational(1)
    for key in keys:
        poly = interpolate_laurent("l", lams[:m], [v.amplitude(key) for v in vecs[:m]],
                                   -H, H)
        if poly.eval_at({"l": lams[m]}) != vecs[m].amplitude(key):
            raise DomainError("homogeneous-curve window too small")
        amps[key] = poly.eval_at({"l": one})
    return SpinVector.make(N, amps)


# ---------------------------------------------------------------------------
# the generalized component sum
# ---------------------------------------------------------------------------

def _half_specialized_sites(N: int, ws: Sequence) -> list:
    zs = []
    for w in ws:
        w = as_gaussian(w)
        if w.is_zero():
            raise DegeneratePointError("w values must be nonzero")
        zs.extend([w, w.inverse()])
    if N % 2:
        zs.append(_ONE)
    return zs


def _chi_weights(N: int, ws: Sequence, s) -> dict:
    """Pairing coefficient per down-position tuple: a factor {s w_i}/{s} for
    every site pair (2i-1, 2i) whose spins agree, 1 otherwise."""
    n = N // 2
    s = as_gaussian(s)
    return {"n": n, "c": [brace(s * as_gaussian(w)) * inv(brace(s)) for w in ws]}


def _chi_pair(vec: SpinVector, weights) -> GaussianRational:
    n, cs = weights["n"], weights["c"]
    total = _ZERO
    for key, amp in vec.amps.items():
        f = amp
        for i in range(n):
            hits = (2 * i + 1 in key) + (2 * i + 2 in key)
            if hits != 1:
                f = f * cs[i]
        total = total + f
    return total


def gen_sum_Z(N: int, ws: Sequence, s, beta) -> GaussianRational:
    """The generalized component sum at exact w values.

    The all-ones point (the homogeneous limit) is evaluated through the
    one-parameter curve w_i = lambda^i; any other degenerate point raises
    DegeneratePointError.
    """
    if N < 0:
        raise UsageError("N must be >= 0")
    if N <= 1:
        return _ONE
    n = N // 2
    if len(ws) != n:
        raise UsageError(f"need {n} w values")
    ws = [as_gaussian(w) for w in ws]
    if all(w == 1 for w in ws):
        return gen_sum_Z_homogeneous(N, s, beta)
    vec = psi_vector(N, _half_specialized_sites(N, ws), s, beta)
    return _chi_pair(vec, _chi_weights(N, ws, s))


def _gen_sum_on_curve(N: int, s, beta, lam) -> GaussianRational:
    n = N // 2
    ws = [lam ** (i + 1) for i in range(n)]
    vec = psi_vector(N, _half_specialized_sites(N, ws), s, beta)
    return _chi_pair(vec, _chi_weights(N, ws, s))


def gen_sum_Z_homogeneous(N: int, s, beta) -> GaussianRational:
    """The generalized component sum at w = (1, ..., 1), by interpolation in
    lambda along w_i = lambda^i (degree bound from the centred width 2(2N-3))."""
    if N <= 1:
        return _ONE
    n = N // 2
    H = (2 * N - 3) * (n * (n + 1) // 2)
    s = as_gaussian(s)

    def accept(lam) -> bool:
        from .sampling import z_point_degenerate
        if lam.is_zero():
            return False
        zs = _half_specialized_sites(N, [lam ** (i + 1) for i in range(n)])
        return not z_point_degenerate(zs, s)

    m = 2 * H + 1
    lams = _distinct_abscissae(m + 1, accept)
    vals = [_gen_sum_on_curve(N, s, beta, lam) for lam in lams]
    poly = interpolate_laurent("l", lams[:m], vals[:m], -H, H)
    if poly.eval_at({"l": lams[m]}) != vals[m]:
        raise DomainError("homogeneous-curve window too small for the sum")
    return as_gaussian(poly.eval_at({"l": GaussianRational(1)}))


def gen_sum_Z_poly_in_w(N: int, ws: Sequence, i: int, s, beta,
                        halfwidth: int | None = None) -> MultiLaurent:
    """The generalized sum as an exact Laurent polynomial in w_i, interpolated
    at nondegenerate abscissae and cross-validated at two more."""
    n = N // 2
    if not 1 <= i <= n:
        raise UsageError("variable index out of range")
    if halfwidth is None:
        halfwidth = 2 * N - 3
    ws = [as_gaussian(w) for w in ws]
    s = as_gaussian(s)

    def value(x) -> GaussianRational:
        pt = list(ws)
        pt[i - 1] = x
        vec = psi_vector(N, _half_specialized_sites(N, pt), s, beta)
        return _chi_pair(vec, _chi_weights(N, pt, s))

    def accept(x) -> bool:
        from .sampling import z_point_degenerate
        if x.is_zero():
            return False
        pt = list(ws)
        pt[i - 1] = x
        return not z_point_degenerate(_half_specialized_sites(N, pt), s)

    m = 2 * halfwidth + 1
    xs = _distinct_abscissae(m + 2, accept)
    vals = [value(x) for x in xs]
    poly = interpolate_laurent("w", xs[:m], vals[:m], -halfwidth, halfwidth)
    for x, v in zip(xs[m:], vals[m:]):
        if poly.eval_at({"w": x}) != v:
            raise DomainError("interpolation window too small for the sum")
    return poly


def y_divisor(N: int, ws: Sequence, s) -> GaussianRational:
    """The elementary product dividing the sum: prod [w_i/q^{1/2}] and, for odd
    size, also prod [q w_i][q/w_i]."""
    s = as_gaussian(s)
    q = s * s
    d = _ONE
    for w in ws:
        w = as_gaussian(w)
        d = d * bracket(inv(s) * w)
        if N % 2:
            d = d * bracket(q * w) * bracket(q * inv(w))
    return d


def rescaled_Y(N: int, ws: Sequence, s, beta) -> GaussianRational:
    """The generalized sum divided by its forced elementary factors."""
    if N <= 1:
        return _ONE
    d = y_divisor(N, ws, s)
    if d.is_zero():
        raise DomainError("rescaling divisor vanishes at this point")
    return gen_sum_Z(N, ws, s, beta) * d.inverse()


# ---------------------------------------------------------------------------
# relation checkers
# ---------------------------------------------------------------------------

def check_exchange_and_reflection(N: int, i: int, zs: Sequence, s, beta) -> dict:
    """Exchange at (i, i+1) and the left boundary reflection, both exact."""
    if not 1 <= i <= N - 1:
        raise UsageError("need 1 <= i <= N-1")
    zs = [as_gaussian(z) for z in zs]
    base = psi_vector(N, zs, s, beta)
    fails = []

    swapped = list(zs)
    swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
    lhs = base.apply_two_site(r_check_exchange(zs[i - 1] * zs[i].inverse(), s), i)
    rhs = psi_vector(N, swapped, s, beta)
    if lhs != rhs:
        fails.append({"relation": "exchange", "i": i})

    reflected = [zs[0].inverse()] + list(zs[1:])
    lhs2 = base.apply_one_site(k_boundary(zs[0].inverse(), beta), 1)
    rhs2 = psi_vector(N, reflected, s, beta)
    if lhs2 != rhs2:
        fails.append({"relation": "left_reflection"})
    return {"property": "exchange_reflection", "N": N, "i": i,
            "pass": not fails, "failures": fails}


def check_psi_reduction(N: int, i: int, zs: Sequence, s, beta) -> dict:
    """Specializing z_{i+1} = z_i/q factors the vector through a singlet
    insertion with an explicit elementary prefactor."""
    if N < 2 or not 1 <= i <= N - 1:
        raise UsageError("need N >= 2 and 1 <= i <= N-1")
    zs = [as_gaussian(z) for z in zs]
    s, beta = as_gaussian(s), as_gaussian(beta)
    q = s * s
    zi = zs[i - 1]
    special = zi * q.inverse()

    polys = psi_vector_poly_in_z(N, zs, i + 1, s, beta)
    lhs = SpinVector.make(N, {k: p.eval_at({"z": special}) for k, p in polys.items()})

    n = N // 2
    if N == 2:
        rhs = SpinVector.make(2, {(1,): -_ONE, (2,): _ONE}).scale(-bracket(beta * zi))
    else:
        pref = bracket(beta * zi)
        for j in range(1, i):
            pref = pref * bracket(q * zi * zs[j - 1].inverse()) * bracket(q * zi * zs[j - 1])
        for j in range(i + 2, N + 1):
            pref = pref * bracket(q * q * zi.inverse() * zs[j - 1]) * bracket(q * zi * zs[j - 1])
        if (n + i + 1) % 2:
            pref = -pref
        inner = psi_vector(N - 2, zs[:i - 1] + zs[i + 1:], s, beta)
        rhs = inner.insert_singlet(i).scale(pref)
    ok = lhs == rhs
    return {"property": "reduction", "N": N, "i": i, "pass": ok,
            "failures": [] if ok else [{"relation": "reduction", "i": i}]}


def _y_from_poly(N: int, poly_val: GaussianRational, ws_special: Sequence, s) -> GaussianRational:
    d = y_divisor(N, ws_special, s)
    if d.is_zero():
        raise DomainError("rescaling divisor vanishes at the specialized point")
    return poly_val * d.inverse()


def check_Z_properties(N: int, trials: int = 20, seed: int = 42,
                       interp_trials: int = 2) -> dict:
    """All stated properties of the generalized sum for one chain size.

    Covers: symmetry under adjacent swaps, the sign flip under w -> -w, the
    inversion identity, the forced zeros at +-q^{1/2} (and +-1/q for odd size),
    the centred degree-width bound by interpolation, the rescaled sum being an
    even inversion-symmetric polynomial of width at most 8(n-1), and the two
    reduction relations.
    """
    if N < 2:
        return {"property": "z_properties", "N": N, "trials": 0, "pass": True,
                "subchecks": {}, "failures": []}
    n = N // 2
    rng = ExactSampler(seed)
    sub: dict[str, int] = {}
    fails: list = []

    def record(name: str, ok: bool, info=None):
        sub[name] = sub.get(name, 0) + 1
        if not ok:
            fails.append({"property": name, "N": N, "info": info})

    for trial in range(trials):
        s = rng.s_value()
        beta = rng.beta_value()
        q = s * s
        ws = list(rng.w_point(N, s))
        try:
            z0 = gen_sum_Z(N, ws, s, beta)

            if n >= 2:
                for i in range(n - 1):
                    swapped = list(ws)
                    swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                    zs = gen_sum_Z(N, swapped, s, beta)
                    record("symmetry", zs == z0, {"lhs": repr(zs), "rhs": repr(z0)})
            flipped = [-ws[0]] + ws[1:]
            zf = gen_sum_Z(N, flipped, s, beta)
            record("sign_flip", zf == -z0, {"lhs": repr(zf), "rhs": repr(-z0)})
            inverted = [ws[0].inverse()] + ws[1:]
            lhs = bracket(inv(s) * ws[0]) * gen_sum_Z(N, inverted, s, beta)
            rhs = bracket(inv(s) * ws[0].inverse()) * z0
            record("inversion", lhs == rhs, {"lhs": repr(lhs), "rhs": repr(rhs)})
        except DegeneratePointError:
            continue

        if trial < interp_trials:
            poly = gen_sum_Z_poly_in_w(N, ws, 1, s, beta)
            width = poly.degree_width("w")
            record("degree_width",
                   poly.is_centred("w") and (width == float("-inf")
                                             or width <= 2 * (2 * N - 3)),
                   {"width": str(width)})
            for z in (s, -s):
                record("zero_at_sqrt_q", not poly.eval_at({"w": z}))
            if N % 2:
                for z in (q.inverse(), -q.inverse()):
                    record("zero_at_inv_q", not poly.eval_at({"w": z}))

            # rescaled sum: even inversion-symmetric polynomial of width <= 8(n-1)
            ypoly = _rescaled_poly(N, poly, s)
            rng_y = ypoly.degree_range("w")
            record("y_even", all(e[0] % 2 == 0 for e in ypoly.terms))
            record("y_inversion",
                   all(ypoly.terms.get((-e[0],), 0) == c
                       for e, c in ypoly.terms.items()))
            record("y_width", rng_y is None
                   or (ypoly.is_centred("w") and rng_y[1] - rng_y[0] <= 8 * (n - 1)),
                   {"range": str(rng_y)})

            # reduction at w_1 = i q^{1/2}
            wi = _I * s
            zval = poly.eval_at({"w": wi})
            ylhs = _y_from_poly(N, zval, [wi] + ws[1:], s)
            yrhs = brace(s * beta)
            if N % 2:
                yrhs = yrhs * brace(s ** 3) * inv(brace(s))
            if n % 2 == 0:
                yrhs = -yrhs
            for w in ws[1:]:
                yrhs = yrhs * brace(s ** 3 * w) ** 2 * brace(s ** 3 * w.inverse()) ** 2
            yrhs = yrhs * rescaled_Y(N - 2, ws[1:], s, beta)
            record("reduction_half_turn", ylhs == yrhs,
                   {"lhs": repr(ylhs), "rhs": repr(yrhs)})

            if N >= 4 and n >= 2:
                poly2 = gen_sum_Z_poly_in_w(N, ws, 2, s, beta)
                w2 = q.inverse() * ws[0]
                zval2 = poly2.eval_at({"w": w2})
                ylhs2 = _y_from_poly(N, zval2, [ws[0], w2] + ws[2:], s)
                f = _f_reduction(N, ws[0], s, beta)
                for w in ws[2:]:
                    f = f * (bracket(q * ws[0] * w) * bracket(q * ws[0] * w.inverse())
                             * bracket(q * q * w * ws[0].inverse())
                             * bracket(q * q * ws[0].inverse() * w.inverse())) ** 2
                yrhs2 = f * rescaled_Y(N - 4, ws[2:], s, beta)
                record("reduction_pair", ylhs2 == yrhs2,
                       {"lhs": repr(ylhs2), "rhs": repr(yrhs2)})

    return {"property": "z_properties", "N": N, "trials": trials,
            "pass": not fails, "subchecks": sub, "failures": fails}


def _rescaled_poly(N: int, zpoly: MultiLaurent, s) -> MultiLaurent:
    """Divide the interpolated sum by its forced elementary factors in w."""
    s = as_gaussian(s)
    q = s * s
    div = MultiLaurent(("w",), {(1,): s.inverse(), (-1,): -s})
    out = div_exact_univar(zpoly, div, "w")
    if N % 2:
        for c in (q, q.inverse()):
            d = MultiLaurent(("w",), {(1,): c, (-1,): -c.inverse()})
            out = div_exact_univar(out, d, "w")
    return out


def _f_reduction(N: int, w, s, beta) -> GaussianRational:
    """The elementary prefactor of the pair reduction relation."""
    q = s * s
    f = (-(bracket(q * q) ** 2) * brace(s * w) * brace(s ** 3 * inv(w))
         * bracket(beta * w) * bracket(beta * q * inv(w)) * inv(brace(s)) ** 2)
    if N % 2 == 0:
        return f * bracket(w) * bracket(q * inv(w))
    return f * bracket(q * w) * bracket(q * q * inv(w))
