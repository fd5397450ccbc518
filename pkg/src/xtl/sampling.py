"""Seeded sampling of exact nondegenerate parameter points.

Values are small Gaussian rationals with numerators and denominators bounded
by 20 in absolute value.  Site-value tuples are rejected until they avoid the
pole-collision set of the residue evaluation: pairwise z_i != +-z_j, ratios
z_i/z_j != +-q^{+-1}, and products z_i z_j != +-1/q^2 (including i = j).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import GaussianRational, as_gaussian

__all__ = ["ExactSampler", "z_point_degenerate"]

_I = GaussianRational(0, 1)


def z_point_degenerate(zs, s) -> bool:
    q = s * s
    q2i = (q * q).inverse()
    for j, zj in enumerate(zs):
        zz = zj * zj
        if zz == q2i or zz == -q2i:
            return True
        for k in range(j + 1, len(zs)):
            zk = zs[k]
            if zj == zk or zj == -zk:
                return True
            r = zj * zk.inverse()
            if r == q or r == -q or r.inverse() == q or r.inverse() == -q:
                return True
            p = zj * zk
            if p == q2i or p == -q2i:
                return True
    return False


class ExactSampler:
    """Deterministic source of exact random values and nondegenerate points."""

    def __init__(self, seed: int = 42, bound: int = 20):
        self.rng = random.Random(seed)
        self.bound = bound

    def randint(self, a: int, b: int) -> int:
        return self.rng.randint(a, b)

    def fraction(self) -> Fraction:
        num = self.rng.randint(1, self.bound) * self.rng.choice((1, -1))
        den = self.rng.randint(1, self.bound)
        return Fraction(num, den)

    def nonzero(self, gaussian_prob: float = 0.2) -> GaussianRational:
        while True:
            im = self.fraction() if self.rng.random() < gaussian_prob else 0
            v = GaussianRational(self.fraction(), im)
            if not v.is_zero():
                return v

    def s_value(self) -> GaussianRational:
        while True:
            v = self.nonzero()
            if v != 1 and v != -1 and v != _I and v != -_I:
                return v

    def beta_value(self) -> GaussianRational:
        while True:
            v = self.nonzero()
            if v != 1 and v != -1:
                return v

    def dense_vector(self, L: int) -> list:
        return [GaussianRational(self.rng.randint(-5, 5)) for _ in range(1 << L)]

    def z_point(self, N: int, s, beta=None) -> tuple:
        """Site values with the residue nondegeneracy conditions, kept valid
        under inverting the first value (reflection) and, when beta is given,
        with [beta z_j] nonzero everywhere (boundary matrix)."""
        while True:
            zs = tuple(self.nonzero() for _ in range(N))
            if z_point_degenerate(zs, s):
                continue
            if z_point_degenerate((zs[0].inverse(),) + zs[1:], s):
                continue
            if beta is not None and any((beta * z) ** 2 == 1 for z in zs):
                continue
            return zs

    def w_point(self, N: int, s, need_rescaling: bool = True) -> tuple:
        """Half-specialization-ready w values for a chain of N sites: the induced
        site tuple (w_1, 1/w_1, ..., [1]) is nondegenerate and the rescaling
        divisors are nonzero."""
        n = N // 2
        q = s * s
        while True:
            ws = tuple(self.nonzero() for _ in range(n))
            zs = []
            for w in ws:
                zs.extend([w, w.inverse()])
            if N % 2:
                zs.append(as_gaussian(1))
            if z_point_degenerate(zs, s):
                continue
            if need_rescaling and not self._rescaling_ok(ws, N, q, s):
                continue
            return ws

    @staticmethod
    def _rescaling_ok(ws, N, q, s) -> bool:
        for w in ws:
            if (w * s.inverse()) ** 2 == 1:      # [w/q^{1/2}] = 0
                return False
            if (w * w) ** 2 == (q * q) ** 2:     # [q^2/w^2] = 0 or [q^2 w^2] = 0
                return False
            if N % 2 and ((q * w) ** 2 == 1 or (q * w.inverse()) ** 2 == 1):
                return False
        return True
