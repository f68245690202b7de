"""Elliptic and genus-2 curves over small finite fields.

Short Weierstrass models y^2 = x^3 + a x + b, naive point counting, the
chord-tangent group law, isomorphism classes up to twisting by k^* and
Galois conjugation, and the reduction of marked points modulo 3E(k) and
Aut(E).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import isqrt

from . import polys
from .finite_fields import FieldSpec
from .function_field import HyperellipticModel


@dataclass(frozen=True)
class ECPoint:
    x: int = 0
    y: int = 0
    is_infinity: bool = False

    def __repr__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = ECPoint(is_infinity=True)


class EllipticCurve:
    """y^2 = x^3 + a x + b over a FieldSpec (coefficients given as codes)."""

    def __init__(self, field: FieldSpec, a: int, b: int):
        self.field = F = field
        self.a = a
        self.b = b
        disc = F.add(F.mul(F.from_int(4), F.pow(a, 3)), F.mul(F.from_int(27), F.mul(b, b)))
        if disc == 0 or F.p == 2:
            raise ValueError(f"singular curve y^2 = x^3 + {a}x + {b} over F_{F.q}")

    @classmethod
    def from_ints(cls, field: FieldSpec, a: int, b: int) -> EllipticCurve:
        return cls(field, field.from_int(a), field.from_int(b))

    def __repr__(self) -> str:
        return f"EllipticCurve(F_{self.field.q}: y^2 = x^3 + {self.a}x + {self.b})"

    def __eq__(self, other) -> bool:
        return isinstance(other, EllipticCurve) and (self.field, self.a, self.b) == (
            other.field,
            other.a,
            other.b,
        )

    def __hash__(self) -> int:
        return hash((self.field, self.a, self.b))

    @property
    def cubic(self) -> list[int]:
        return polys.trim([self.b, self.a, 0, 1])

    def rhs(self, x: int) -> int:
        F = self.field
        return F.add(F.mul(F.add(F.mul(x, x), self.a), x), self.b)

    @cached_property
    def model(self) -> HyperellipticModel:
        return HyperellipticModel(self.field, self.cubic)

    @cached_property
    def j_invariant_kind(self) -> str:
        if self.a == 0:
            return "j=0"
        if self.b == 0:
            return "j=1728"
        return "generic"

    # -- counting -------------------------------------------------------------

    @cached_property
    def order(self) -> int:
        F = self.field
        return 1 + sum(1 + F.chi(self.rhs(x)) for x in range(F.q))

    @property
    def trace(self) -> int:
        return self.field.q + 1 - self.order

    # -- group law --------------------------------------------------------------

    def contains(self, P: ECPoint) -> bool:
        if P.is_infinity:
            return True
        F = self.field
        return F.mul(P.y, P.y) == self.rhs(P.x)

    @cached_property
    def points(self) -> list[ECPoint]:
        F = self.field
        pts = [INFINITY]
        for x in range(F.q):
            v = self.rhs(x)
            if v == 0:
                pts.append(ECPoint(x, 0))
            elif F.is_square(v):
                r = F.sqrt(v)
                for y in sorted({r, F.neg(r)}):
                    pts.append(ECPoint(x, y))
        return pts

    def neg(self, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        return ECPoint(P.x, self.field.neg(P.y))

    def add(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        if not (self.contains(P) and self.contains(Q)):
            raise ValueError("point not on curve")
        F = self.field
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if F.add(P.y, Q.y) == 0:
                return INFINITY
            num = F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)), self.a)
            lam = F.div(num, F.add(P.y, P.y))
        else:
            lam = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x))
        x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x)
        y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y)
        return ECPoint(x3, y3)

    def mul(self, n: int, P: ECPoint) -> ECPoint:
        if n < 0:
            return self.mul(-n, self.neg(P))
        R = INFINITY
        while n:
            if n & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            n >>= 1
        return R

    def point_order(self, P: ECPoint) -> int:
        n = 1
        R = P
        while not R.is_infinity:
            R = self.add(R, P)
            n += 1
        return n

    # -- automorphisms and the 3-quotient ----------------------------------------

    @cached_property
    def automorphism_scalars(self) -> list[int]:
        """u with (x, y) -> (u^2 x, u^3 y) an automorphism fixing infinity."""
        F = self.field
        return [u for u in range(1, F.q)
                if F.mul(F.pow(u, 4), self.a) == self.a and F.mul(F.pow(u, 6), self.b) == self.b]

    def apply_automorphism(self, u: int, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        F = self.field
        return ECPoint(F.mul(F.pow(u, 2), P.x), F.mul(F.pow(u, 3), P.y))

    @cached_property
    def triple_subgroup(self) -> frozenset[ECPoint]:
        return frozenset(self.mul(3, P) for P in self.points)

    def three_quotient(self) -> list[frozenset[ECPoint]]:
        """Cosets of 3E(k) in E(k), identity coset first."""
        H = self.triple_subgroup
        seen: set[ECPoint] = set()
        cosets = []
        for P in self.points:
            if P in seen:
                continue
            coset = frozenset(self.add(P, h) for h in H)
            seen |= coset
            cosets.append(coset)
        return cosets


def q_representatives(E: EllipticCurve) -> list[ECPoint]:
    """One marked point per Aut(E)-orbit on E(k)/3E(k), avoiding 2-torsion."""
    cosets = E.three_quotient()
    index = {}
    for i, c in enumerate(cosets):
        for P in c:
            index[P] = i
    reps: list[ECPoint] = []
    done: set[int] = set()
    for i, c in enumerate(cosets):
        if i in done:
            continue
        some = next(iter(c))
        orbit = {index[E.apply_automorphism(u, some)] for u in E.automorphism_scalars}
        done |= orbit
        if INFINITY in c:
            reps.append(INFINITY)
            continue
        members = sorted((P for j in orbit for P in cosets[j]), key=lambda P: (P.x, P.y))
        good = [P for P in members if P.y != 0]
        reps.append(good[0])
    return reps


@dataclass
class CurveClass:
    representative: EllipticCurve
    orbit_size: int
    trace: int


@dataclass
class CurveClassSet:
    field: FieldSpec
    trace: int
    classes: list[CurveClass] = field(default_factory=list)

    @property
    def representatives(self) -> list[EllipticCurve]:
        return [c.representative for c in self.classes]


@lru_cache(maxsize=None)
def all_curve_classes(F: FieldSpec) -> tuple[CurveClass, ...]:
    """Orbits of nonsingular (a, b) under (a^s u^4, b^s u^6), lex-least reps."""
    if F.p <= 3:
        raise ValueError("curve classes need characteristic > 3")
    q = F.q
    seen = bytearray(q * q)
    out = []
    units = range(1, q)
    u4 = [F.pow(u, 4) for u in units]
    u6 = [F.pow(u, 6) for u in units]
    for a in range(q):
        for b in range(q):
            if seen[a * q + b]:
                continue
            try:
                E = EllipticCurve(F, a, b)
            except ValueError:
                seen[a * q + b] = 1
                continue
            orbit = set()
            ca, cb = a, b
            for _ in range(F.k):
                for s4, s6 in zip(u4, u6):
                    orbit.add((F.mul(ca, s4), F.mul(cb, s6)))
                ca, cb = F.frobenius(ca), F.frobenius(cb)
            for a2, b2 in orbit:
                seen[a2 * q + b2] = 1
            # (a, b) is the first unseen pair in row-major order, hence lex-least
            out.append(CurveClass(E, len(orbit), E.trace))
    return tuple(out)


def enumerate_classes(F: FieldSpec, t: int) -> CurveClassSet:
    if F.p <= 3:
        raise ValueError("curve classes need characteristic > 3")
    result = CurveClassSet(F, t)
    if t * t > 4 * F.q:
        return result
    result.classes = [c for c in all_curve_classes(F) if c.trace == t]
    return result


def count_points(E: EllipticCurve) -> int:
    return E.order


def hasse_ok(q: int, t: int) -> bool:
    return t * t <= 4 * q


def serre_bound(q: int, g: int) -> int:
    return q + 1 + g * isqrt(4 * q)


class Genus2Curve:
    """y^2 = f(x) with f separable of degree 5 or 6."""

    def __init__(self, field: FieldSpec, f: list[int]):
        f = polys.trim(f)
        if field.p == 2:
            raise ValueError("characteristic 2 not supported")
        if polys.deg(f) not in (5, 6):
            raise ValueError("genus-2 model needs degree 5 or 6")
        if not polys.is_squarefree(field, f):
            raise ValueError("f is not separable")
        self.field = field
        self.f = f

    @classmethod
    def from_ints(cls, field: FieldSpec, coeffs) -> Genus2Curve:
        return cls(field, polys.from_ints(field, coeffs))

    @cached_property
    def model(self) -> HyperellipticModel:
        return HyperellipticModel(self.field, self.f)

    def __repr__(self) -> str:
        return f"Genus2Curve(F_{self.field.q}: y^2 = {polys.to_str(self.field, self.f)})"


def count_points_genus2(C: Genus2Curve) -> int:
    F = C.field
    affine = sum(1 + F.chi(polys.evaluate(F, C.f, x)) for x in range(F.q))
    if polys.deg(C.f) == 6:
        return affine + 1 + F.chi(C.f[-1])
    return affine + 1


def shifted_model(E: EllipticCurve, Q: ECPoint) -> tuple[int, int, int]:
    """(r, s, t) with E: y^2 = x^3 + r x^2 + s x + t^2 after x -> x + x(Q), t = y(Q)."""
    if Q.is_infinity or Q.y == 0:
        raise ValueError("marked point must be affine and not of order 2")
    F = E.field
    x0 = Q.x
    r = F.mul(F.from_int(3), x0)
    s = F.add(F.mul(F.from_int(3), F.mul(x0, x0)), E.a)
    return r, s, Q.y
