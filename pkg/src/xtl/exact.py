"""Exact scalar and multivariate Laurent-polynomial arithmetic.

Everything downstream is built on two value types:

* :class:`GaussianRational` -- an exact element of Q(i), used for
  polynomial-identity testing at random points and for all numeric
  specializations.
* :class:`MultiLaurent` -- an exact multivariate Laurent polynomial with
  arbitrary-precision coefficients (int or GaussianRational), the universal
  value type for symbolic results.

All values are immutable after construction and all operations are pure, so
they are safe to share between threads or processes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "DomainError",
    "UsageError",
    "DegeneratePointError",
    "GaussianRational",
    "MultiLaurent",
    "ParamPoint",
    "as_gaussian",
    "inv",
    "bracket",
    "brace",
    "format_scalar",
    "parse_scalar",
    "interpolate_laurent",
    "div_exact_univar",
]


class DomainError(ValueError):
    """A mathematically invalid input (zero where an invertible is needed, etc.)."""


class UsageError(ValueError):
    """A malformed request (unknown variable, bad format, ...)."""


class DegeneratePointError(DomainError):
    """An evaluation point violating a nondegeneracy constraint; callers may resample."""


Scalar = Union[int, Fraction, "GaussianRational"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussianRational:
    """An exact element a + b*i of Q(i), with a, b stored as Fractions in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def i() -> "GaussianRational":
        return GaussianRational(0, 1)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            if not self.im and not other.im:
                return GaussianRational(self.re * other.re)
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise DomainError("division by zero in Q(i)")
        if not self.im:
            return GaussianRational(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return format_scalar(self)


def as_gaussian(x: Scalar) -> GaussianRational:
    """Coerce an exact scalar to GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise UsageError(f"not an exact scalar: {x!r}")


def inv(x):
    """Multiplicative inverse of an exact scalar or an invertible MultiLaurent."""
    if isinstance(x, int):
        if x == 0:
            raise DomainError("division by zero")
        return Fraction(1, x)
    if isinstance(x, Fraction):
        if not x:
            raise DomainError("division by zero")
        return 1 / x
    return x.inverse()


def bracket(v):
    """v - 1/v.  Requires v invertible (nonzero scalar or unit monomial)."""
    return v - inv(v)


def brace(v):
    """v + 1/v.  Requires v invertible (nonzero scalar or unit monomial)."""
    return v + inv(v)


# ---------------------------------------------------------------------------
# scalar <-> string, per the polynomial JSON schema
# ---------------------------------------------------------------------------

def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(c: Scalar) -> str:
    """Canonical decimal string: "3", "-1/2", or "a/b+c/d*i" for true Gaussians."""
    if isinstance(c, int):
        return str(c)
    if isinstance(c, Fraction):
        return _frac_str(c)
    if isinstance(c, GaussianRational):
        if not c.im:
            return _frac_str(c.re)
        sign = "+" if c.im > 0 else "-"
        return f"{_frac_str(c.re)}{sign}{_frac_str(abs(c.im))}*i"
    raise UsageError(f"cannot format {c!r}")


def parse_scalar(s: str) -> Scalar:
    """Parse the canonical scalar strings; returns int, Fraction, or GaussianRational."""
    s = s.strip().replace(" ", "")
    if s.endswith("*i") or s.endswith("i"):
        body = s[:-2] if s.endswith("*i") else s[:-1]
        # split off the imaginary part: last +/- not at position 0 and not in a numerator sign
        idx = max(body.rfind("+", 1), body.rfind("-", 1))
        # guard against "1/-2"-style strings (not emitted, but be strict)
        if idx <= 0:
            re_part, im_part = "0", body if body not in ("", "+", "-") else body + "1"
        else:
            re_part, im_part = body[:idx], body[idx:]
        if im_part in ("+", "-"):
            im_part += "1"
        return GaussianRational(Fraction(re_part), Fraction(im_part))
    f = Fraction(s)
    return int(f) if f.denominator == 1 else f


def _normcoef(c):
    """Coefficient normal form: int when integral, else GaussianRational."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else GaussianRational(c)
    if isinstance(c, GaussianRational):
        if not c.im and c.re.denominator == 1:
            return int(c.re)
        return c
    raise UsageError(f"bad coefficient {c!r}")


# ---------------------------------------------------------------------------
# MultiLaurent
# ---------------------------------------------------------------------------

class MultiLaurent:
    """Exact multivariate Laurent polynomial.

    terms maps integer exponent tuples (one slot per variable, negatives
    allowed) to nonzero coefficients.  Two values over the same variables are
    equal iff their term maps are equal; values over different variable lists
    are compared after aligning variables by name.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Scalar] | None = None):
        object.__setattr__(self, "vars", tuple(vars))
        nv = len(self.vars)
        if len(set(self.vars)) != nv:
            raise UsageError(f"duplicate variable names in {self.vars}")
        tm = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nv:
                    raise UsageError(f"exponent tuple {e} does not match {nv} variables")
                c = _normcoef(c)
                if c != 0:
                    tm[e] = c
        object.__setattr__(self, "terms", tm)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("MultiLaurent is immutable")

    # -- constructors ----------------------------------------------------------
    @staticmethod
    def const(c: Scalar, vars: Sequence[str] = ()) -> "MultiLaurent":
        vars = tuple(vars)
        return MultiLaurent(vars, {(0,) * len(vars): c})

    @staticmethod
    def var(name: str) -> "MultiLaurent":
        return MultiLaurent((name,), {(1,): 1})

    @staticmethod
    def monomial(vars: Sequence[str], exps: Sequence[int], c: Scalar = 1) -> "MultiLaurent":
        return MultiLaurent(vars, {tuple(exps): c})

    # -- basic structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def constant_value(self) -> Scalar:
        """The value of a constant polynomial (raises if non-constant)."""
        if not self.terms:
            return 0
        zero = (0,) * len(self.vars)
        if set(self.terms) != {zero}:
            raise UsageError("polynomial is not constant")
        return self.terms[zero]

    def _aligned(self, other: "MultiLaurent"):
        """Common variable list: self's order, then other's unseen variables."""
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        allv = list(self.vars) + [v for v in other.vars if v not in self.vars]
        return tuple(allv), _reindex(self, allv), _reindex(other, allv)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiLaurent.const(other)
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        _, a, b = self._aligned(other)
        return a == b

    def __hash__(self):  # canonical form makes this well-defined but costly; unused
        raise TypeError("MultiLaurent is not hashable")

    # -- ring operations ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiLaurent.const(other, self.vars)
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        vars, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return _raw(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = MultiLaurent.const(other, self.vars)
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c0 = _normcoef(other)
            if c0 == 0:
                return _raw(self.vars, {})
            return _raw(self.vars, {e: _normcoef(c * c0) for e, c in self.terms.items()})
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        vars, a, b = self._aligned(other)
        out: dict = {}
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return _raw(vars, {e: _normcoef(c) for e, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = MultiLaurent.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "MultiLaurent":
        """Inverse of a unit monomial c * prod(v^e); raises DomainError otherwise."""
        if len(self.terms) != 1:
            raise DomainError("only single monomials are invertible")
        (e, c), = self.terms.items()
        return _raw(self.vars, {tuple(-x for x in e): _normcoef(inv(c))})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * inv(other)
        if isinstance(other, MultiLaurent):
            return self * other.inverse()
        return NotImplemented

    # -- queries ----------------------------------------------------------------
    def _axis(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise UsageError(f"unknown variable {var!r} (have {self.vars})") from None

    def coeff_of(self, var: str, k: int) -> "MultiLaurent":
        """Coefficient of var**k, a MultiLaurent in the remaining variables."""
        ax = self._axis(var)
        rest = self.vars[:ax] + self.vars[ax + 1:]
        out = {}
        for e, c in self.terms.items():
            if e[ax] == k:
                out[e[:ax] + e[ax + 1:]] = c
        return _raw(rest, out)

    def degree_range(self, var: str):
        """(min exponent, max exponent) of var, or None for the zero polynomial."""
        ax = self._axis(var)
        if not self.terms:
            return None
        exps = [e[ax] for e in self.terms]
        return min(exps), max(exps)

    def degree_width(self, var: str):
        """max exponent minus min exponent; -inf for the zero polynomial."""
        r = self.degree_range(var)
        if r is None:
            return float("-inf")
        return r[1] - r[0]

    def is_centred(self, var: str) -> bool:
        """True iff leading plus trailing degree is zero (zero polynomial counts)."""
        r = self.degree_range(var)
        return r is None or r[0] + r[1] == 0

    def eval_at(self, point: Mapping[str, Scalar]):
        """Exact full evaluation; every variable must be assigned.

        Zero assigned to a variable occurring with a negative exponent is a
        DomainError.
        """
        vals = []
        for v in self.vars:
            if v not in point:
                raise UsageError(f"no value for variable {v!r}")
            vals.append(as_gaussian(point[v]))
        total = GaussianRational(0)
        powcache: list[dict[int, GaussianRational]] = [dict() for _ in self.vars]
        for e, c in self.terms.items():
            term = as_gaussian(c)
            for ax, k in enumerate(e):
                if k == 0:
                    continue
                p = powcache[ax].get(k)
                if p is None:
                    if vals[ax].is_zero() and k < 0:
                        raise DomainError(
                            f"zero assigned to {self.vars[ax]!r} with negative exponent")
                    p = vals[ax] ** k
                    powcache[ax][k] = p
                term = term * p
            total = total + term
        return _normcoef(total)

    def substitute(self, repl: Mapping[str, "MultiLaurent | Scalar"]) -> "MultiLaurent":
        """Substitute values or polynomials for a subset of the variables.

        A polynomial replacement is only valid for variables occurring with
        nonnegative exponents, unless the replacement is an invertible monomial.
        """
        keep = [v for v in self.vars if v not in repl]
        out = MultiLaurent.const(0, tuple(keep))
        cache: dict[tuple[str, int], MultiLaurent | Scalar] = {}

        def _power(v: str, k: int):
            key = (v, k)
            if key not in cache:
                r = repl[v]
                if isinstance(r, MultiLaurent):
                    cache[key] = r ** k
                else:
                    cache[key] = as_gaussian(r) ** k
            return cache[key]

        for e, c in self.terms.items():
            term = MultiLaurent.monomial(
                keep, [e[self.vars.index(v)] for v in keep], c)
            for v in self.vars:
                if v in repl:
                    k = e[self.vars.index(v)]
                    if k:
                        term = term * _power(v, k)
            out = out + term
        return out

    def rename(self, mapping: Mapping[str, str]) -> "MultiLaurent":
        newv = tuple(mapping.get(v, v) for v in self.vars)
        return MultiLaurent(newv, self.terms)

    # -- serialization ------------------------------------------------------------
    def sorted_terms(self):
        """Terms in lexicographic exponent order (deterministic iteration)."""
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": format_scalar(c)} for e, c in self.sorted_terms()],
        }

    @staticmethod
    def from_json(obj: Mapping) -> "MultiLaurent":
        try:
            vars = tuple(obj["vars"])
            terms = {tuple(t["e"]): parse_scalar(t["c"]) for t in obj["terms"]}
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed polynomial JSON: {exc}") from exc
        return MultiLaurent(vars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" for v, k in zip(self.vars, e) if k) or "1"
            bits.append(f"({format_scalar(c)})*{mono}")
        return " + ".join(bits)


def _raw(vars: tuple, terms: dict) -> MultiLaurent:
    """Internal constructor skipping revalidation (terms already canonical)."""
    p = MultiLaurent.__new__(MultiLaurent)
    object.__setattr__(p, "vars", vars)
    object.__setattr__(p, "terms", terms)
    return p


def _reindex(p: MultiLaurent, allv: list) -> dict:
    pos = [allv.index(v) for v in p.vars]
    n = len(allv)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for i, k in enumerate(e):
            ne[pos[i]] = k
        out[tuple(ne)] = c
    return out


# ---------------------------------------------------------------------------
# exact interpolation and division helpers
# ---------------------------------------------------------------------------

def interpolate_laurent(var: str, xs: Sequence[Scalar], ys: Sequence, min_exp: int,
                        max_exp: int) -> MultiLaurent:
    """Recover the unique Laurent polynomial with exponents in [min_exp, max_exp]
    from its exact values ys at distinct nonzero abscissae xs.

    Needs len(xs) == max_exp - min_exp + 1.  Uses Newton divided differences on
    the shifted ordinary polynomial x^{-min_exp} * p(x).
    """
    m = max_exp - min_exp + 1
    if len(xs) != m or len(ys) != m:
        raise UsageError(f"need exactly {m} sample points, got {len(xs)}")
    pts = [as_gaussian(x) for x in xs]
    if len({(p.re, p.im) for p in pts}) != m:
        raise UsageError("interpolation abscissae must be distinct")
    shifted = [as_gaussian(y) * (p ** (-min_exp)) for p, y in zip(pts, ys)]
    # divided differences
    dd = list(shifted)
    for j in range(1, m):
        for k in range(m - 1, j - 1, -1):
            dd[k] = (dd[k] - dd[k - 1]) * (pts[k] - pts[k - j]).inverse()
    # expand Newton form to monomial coefficients: p <- p*(x - x_j) + dd[j]
    coeffs = [GaussianRational(0)] * m
    for j in range(m - 1, -1, -1):
        for k in range(m - 1, 0, -1):
            coeffs[k] = coeffs[k - 1] - coeffs[k] * pts[j]
        coeffs[0] = dd[j] - coeffs[0] * pts[j]
    terms = {(k + min_exp,): c for k, c in enumerate(coeffs) if c != 0}
    return MultiLaurent((var,), terms)


def div_exact_univar(p: MultiLaurent, d: MultiLaurent, var: str) -> MultiLaurent:
    """Exact division of univariate Laurent polynomials in `var`; raises if inexact."""
    if p.vars != (var,) or d.vars != (var,):
        raise UsageError("div_exact_univar expects univariate polynomials in the same variable")
    if d.is_zero():
        raise DomainError("division by the zero polynomial")
    if p.is_zero():
        return p
    rem = dict(p.terms)
    dmin, dmax = d.degree_range(var)
    pmin, _ = p.degree_range(var)
    qlow = pmin - dmin  # lowest exponent any exact quotient can contain
    lead_inv = as_gaussian(d.terms[(dmax,)]).inverse()
    out = {}
    while rem:
        rmax = max(e[0] for e in rem)
        k = rmax - dmax
        if k < qlow:
            raise DomainError("inexact Laurent division")
        c = as_gaussian(rem[(rmax,)]) * lead_inv
        out[(k,)] = _normcoef(c)
        for (e,), dc in d.terms.items():
            key = (e + k,)
            s = rem.get(key, 0) - c * dc
            if s == 0:
                rem.pop(key, None)
            else:
                rem[key] = _normcoef(s)
    return MultiLaurent((var,), out)


# ---------------------------------------------------------------------------
# parameter points
# ---------------------------------------------------------------------------

_I = GaussianRational(0, 1)


class ParamPoint:
    """An exact parameter point (s, beta, optional b, site values).

    q is represented through an independent value s with q = s*s, so half-odd
    powers of q are ordinary powers of s.  Construction rejects the excluded
    parameter values: s = 0, q^4 = 1 (i.e. s in {0, +-1, +-i} over Q(i)),
    beta^2 = 1, and zero site values.
    """

    __slots__ = ("s", "beta", "b", "sites", "kind")

    def __init__(self, s: Scalar, beta: Scalar, sites: Iterable[Scalar] = (),
                 b: Scalar | None = None, kind: str = "z"):
        s = as_gaussian(s)
        beta = as_gaussian(beta)
        if s.is_zero() or s == 1 or s == -1 or s == _I or s == -_I:
            raise DomainError("s must be nonzero with q^4 != 1")
        if beta.is_zero() or beta == 1 or beta == -1:
            raise DomainError("beta must be nonzero with beta^2 != 1")
        sites = tuple(as_gaussian(z) for z in sites)
        if any(z.is_zero() for z in sites):
            raise DomainError("site values must be nonzero")
        if kind not in ("z", "w"):
            raise UsageError("kind must be 'z' or 'w'")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "b", None if b is None else as_gaussian(b))
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("ParamPoint is immutable")

    @property
    def q(self) -> GaussianRational:
        return self.s * self.s

    def unpack(self):
        """(sites, s, beta) for handing to the evaluation functions."""
        return self.sites, self.s, self.beta

    def __repr__(self):
        xs = ",".join(format_scalar(z) for z in self.sites)
        b = "" if self.b is None else f", b={format_scalar(self.b)}"
        return (f"ParamPoint(s={format_scalar(self.s)}, beta={format_scalar(self.beta)}"
                f"{b}, {self.kind}=[{xs}])")
