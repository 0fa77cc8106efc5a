"""Shearlet and similitude dilation groups.

A shearlet group element is written in the normal form ``S_y A_s`` with
``A_s = diag(s, s**c)`` and ``S_y = [[1, y], [0, 1]]``; the discrete set
``D = {A_{a^k} S_{mb}}`` is indexed by :class:`ShearElement`.  Similitude
elements are ``a**k R_n**l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryPoint
from .geometry import Mat2, as_rational

BOUNDARY_TOL = 1e-9


def _int_root(n: int, k: int):
    """Exact integer k-th root of ``n >= 0`` or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def rational_power(a: Fraction, q) -> Fraction | None:
    """``a ** q`` for rational ``a > 0`` and rational ``q`` if it is rational."""
    q = Fraction(q)
    base = Fraction(a) ** q.numerator
    if q.denominator == 1:
        return base
    num = _int_root(base.numerator, q.denominator)
    den = _int_root(base.denominator, q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def power(a, q):
    """``a ** q`` exactly when possible, as a float otherwise."""
    if isinstance(a, Fraction) and isinstance(q, (int, Fraction)):
        exact = rational_power(a, q)
        if exact is not None:
            return exact
    return float(a) ** float(q)


@dataclass(frozen=True)
class ShearletParams:
    a: Fraction
    b: Fraction
    c: Fraction = Fraction(1, 2)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a <= 1:
            raise ValueError("scaling parameter a must be > 1")
        if self.b <= 0:
            raise ValueError("shearing parameter b must be > 0")

    def to_json(self) -> dict:
        return {"a": [self.a.numerator, self.a.denominator],
                "b": [self.b.numerator, self.b.denominator],
                "c": [self.c.numerator, self.c.denominator]}

    @classmethod
    def from_json(cls, data) -> "ShearletParams":
        return cls(as_rational(data["a"]), as_rational(data["b"]), as_rational(data.get("c", "1/2")))


@dataclass(frozen=True)
class ShearElement:
    k: int
    m: int


@dataclass(frozen=True)
class SimilitudeParams:
    a: int
    n: int

    def __post_init__(self):
        if int(self.a) != self.a or self.a < 2:
            raise ValueError("similitude scale a must be an integer >= 2")
        if int(self.n) != self.n or self.n <= 2 or self.n % 2:
            raise ValueError("n must be an even integer > 2")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "n", int(self.n))

    @property
    def half_angle_tan(self) -> float:
        return math.tan(math.pi / self.n)

    def to_json(self) -> dict:
        return {"a": self.a, "n": self.n}

    @classmethod
    def from_json(cls, data) -> "SimilitudeParams":
        return cls(int(data["a"]), int(data["n"]))


@dataclass(frozen=True)
class SimilitudeElement:
    k: int
    l: int

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("rotation index l must be >= 0")


@dataclass(frozen=True)
class ContinuousShearFactor:
    """Complement element ``S_y A_s`` with ``s in (1/a, 1)``, ``|y| < b/2``."""

    s: float
    y: float
    params: ShearletParams

    def __post_init__(self):
        a, b = self.params.a, self.params.b
        if not (1 / a < self.s < 1):
            raise ValueError(f"s={self.s} outside (1/a, 1)")
        if not (-b / 2 < self.y < b / 2):
            raise ValueError(f"y={self.y} outside (-b/2, b/2)")


# ---------------------------------------------------------------------------
# shearlet group

def h_matrix(s, y, p: ShearletParams) -> Mat2:
    """Matrix of ``S_y A_s``."""
    sc = power(s, p.c) if isinstance(s, Fraction) else float(s) ** float(p.c)
    entries = (s, y * sc, 0, sc)
    if all(isinstance(e, (int, Fraction)) for e in entries):
        return Mat2(entries)
    return Mat2(tuple(float(e) for e in entries), is_exact=False)


def shear_matrix(e: ShearElement, p: ShearletParams) -> Mat2:
    """``A_{a^k} S_{mb}``; exact whenever ``a**(c k)`` is rational."""
    ak = p.a ** e.k
    ack = power(p.a, p.c * e.k)
    entries = (ak, ak * e.m * p.b, 0, ack)
    if isinstance(ack, Fraction):
        return Mat2(entries)
    return Mat2(tuple(float(v) for v in entries), is_exact=False)


def compose(g1, g2, p: ShearletParams) -> tuple:
    """Product of two elements given as ``(scale, shear)`` normal forms.

    Uses ``A_s S_y = S_{s^(1-c) y} A_s``, so
    ``(S_{y1} A_{s1})(S_{y2} A_{s2}) = S_{y1 + s1^(1-c) y2} A_{s1 s2}``.
    """
    s1, y1 = g1
    s2, y2 = g2
    lift = power(s1, 1 - p.c) if isinstance(s1, Fraction) else float(s1) ** float(1 - p.c)
    return (s1 * s2, y1 + lift * y2)


def element_pair(e: ShearElement, p: ShearletParams) -> tuple:
    """Normal form ``(scale, shear)`` of ``A_{a^k} S_{mb}``."""
    ak = p.a ** e.k
    return compose((ak, Fraction(0)), (Fraction(1), e.m * p.b), p)


@dataclass(frozen=True)
class Factorization:
    k: int
    m: int
    s: object
    y: object


def _frac_dist(v) -> float:
    """Distance of ``v`` to the nearest integer."""
    return abs(v - round(v))


def factorize(t, r, p: ShearletParams, tol: float = BOUNDARY_TOL) -> Factorization:
    """Solve ``S_r A_t = A_{a^k} S_{mb} S_y A_s`` for the discrete indices.

    Equivalent to ``t = a^k s`` and ``r = a^{(1-c)k} (m b + y)`` with
    ``s in (1/a, 1)`` and ``y in (-b/2, b/2)``.  Raises
    :class:`BoundaryPoint` on the null set where either interval is hit at
    its end point.  Exact when ``t``, ``r`` are Fractions and the power is
    rational, float otherwise.
    """
    a, b, c = p.a, p.b, p.c
    exact = isinstance(t, (int, Fraction)) and isinstance(r, (int, Fraction))
    if exact:
        t, r = Fraction(t), Fraction(r)
    if t <= 0:
        raise ValueError("t must be positive")

    est = math.floor(math.log(float(t)) / math.log(float(a))) + 1
    if exact:
        k = est
        while a**k <= t:
            k += 1
        while a ** (k - 1) >= t:
            k -= 1
        if a ** (k - 1) == t or a**k == t:
            raise BoundaryPoint(f"t={t} lies in a^Z")
    else:
        la = math.log(float(t)) / math.log(float(a))
        if _frac_dist(la) < tol:
            raise BoundaryPoint(f"t={t} lies in a^Z within {tol}")
        af = float(a)
        k = est
        while af**k <= t:
            k += 1
        while af ** (k - 1) >= t:
            k -= 1

    lift = power(a, (1 - c) * k) if exact else float(a) ** float((1 - c) * k)
    if not isinstance(lift, Fraction):
        exact = False
    u = r / lift if exact else float(r) / float(lift)
    v = u / b if exact else u / float(b)
    if exact:
        if (v - Fraction(1, 2)).denominator == 1:
            raise BoundaryPoint(f"shear coordinate {v} on b(Z + 1/2)")
        m = math.floor(v + Fraction(1, 2))
        y = u - m * b
        s = t / a**k
    else:
        if _frac_dist(v - 0.5) < tol:
            raise BoundaryPoint(f"shear coordinate {v} on b(Z + 1/2) within {tol}")
        m = math.floor(v + 0.5)
        y = u - m * float(b)
        s = float(t) / float(a) ** k
    return Factorization(int(k), int(m), s, y)


def reconstruct(f: Factorization, p: ShearletParams) -> Mat2:
    """Matrix ``A_{a^k} S_{mb} S_y A_s`` for a factorization."""
    outer = shear_matrix(ShearElement(f.k, f.m), p)
    inner = h_matrix(f.s, f.y, p)
    return outer @ inner


def in_complement(s, y, p: ShearletParams) -> bool:
    return bool(1 / float(p.a) < float(s) < 1 and abs(float(y)) < float(p.b) / 2)


# ---------------------------------------------------------------------------
# similitude group

def rotation_matrix(l: int, p: SimilitudeParams) -> Mat2:
    """``R_n**l`` as one rotation by ``2 pi l / n`` (exact on quarter turns)."""
    frac = Fraction(l % p.n, p.n)
    quarter = {Fraction(0): (1, 0, 0, 1), Fraction(1, 4): (0, -1, 1, 0),
               Fraction(1, 2): (-1, 0, 0, -1), Fraction(3, 4): (0, 1, -1, 0)}
    if frac in quarter:
        return Mat2(quarter[frac])
    th = 2 * math.pi * float(frac)
    cs, sn = math.cos(th), math.sin(th)
    return Mat2.shadow_of(cs, -sn, sn, cs)


def similitude_matrix(e: SimilitudeElement, p: SimilitudeParams) -> Mat2:
    rot = rotation_matrix(e.l, p)
    scale = Fraction(p.a) ** e.k
    if rot.is_exact:
        return Mat2(tuple(scale * v for v in rot.entries))
    return Mat2(tuple(float(scale) * v for v in rot.entries), is_exact=False)


def element_matrix(g, p) -> Mat2:
    if isinstance(g, ShearElement):
        return shear_matrix(g, p)
    if isinstance(g, SimilitudeElement):
        return similitude_matrix(g, p)
    raise TypeError(f"unknown group element {g!r}")


def dual_action(g, p) -> Mat2:
    """``g^{-T}``, the matrix acting on the frequency side."""
    if isinstance(g, SimilitudeElement):
        # rotations are orthogonal: (a^k R^l)^{-T} = a^{-k} R^l
        rot = rotation_matrix(g.l, p)
        scale = Fraction(p.a) ** (-g.k)
        if rot.is_exact:
            return Mat2(tuple(scale * v for v in rot.entries))
        return Mat2(tuple(float(scale) * v for v in rot.entries), is_exact=False)
    return element_matrix(g, p).inverse_transpose()
