"""Functions a(x) + b(x)*y on curves y^2 = F(x), and their local behaviour.

Everything here is exact arithmetic over a FieldSpec.  Local expansions are
truncated Laurent series in a uniformizer at a point; they are used to read
off valuations and leading coefficients, which is all the point counting
rules need.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd as igcd

from . import polys
from .finite_fields import FieldSpec, local_root_count
from .polys import Poly

PREC = 24


class Laurent:
    """sum(coeffs[i] * t^(val + i)), known to relative precision len(coeffs)."""

    __slots__ = ("F", "val", "coeffs")

    def __init__(self, F: FieldSpec, val: int, coeffs: list[int], prec: int | None = None):
        prec = PREC if prec is None else prec
        coeffs = list(coeffs[:prec]) + [0] * max(0, prec - len(coeffs))
        shift = 0
        while shift < prec and coeffs[shift] == 0:
            shift += 1
        self.F = F
        self.val = val + shift
        self.coeffs = coeffs[shift:]

    @classmethod
    def const(cls, F: FieldSpec, c: int, prec: int = PREC) -> Laurent:
        return cls(F, 0, [c], prec)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    @property
    def leading(self) -> int:
        return self.coeffs[0]

    def __add__(self, other: Laurent) -> Laurent:
        F = self.F
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        v = min(self.val, other.val)
        top = min(self.val + self.prec, other.val + other.prec)
        out = [0] * (top - v)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                j = s.val + i - v
                if j < len(out):
                    out[j] = F.add(out[j], c)
        return Laurent(F, v, out, len(out))

    def __neg__(self) -> Laurent:
        return Laurent(self.F, self.val, [self.F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: Laurent) -> Laurent:
        return self + (-other)

    def __mul__(self, other: Laurent) -> Laurent:
        F = self.F
        if self.is_zero or other.is_zero:
            return Laurent(F, self.val + other.val, [], 0)
        n = min(self.prec, other.prec)
        out = [0] * n
        a, b = self.coeffs, other.coeffs
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                if b[j]:
                    out[i + j] = F.add(out[i + j], F.mul(ai, b[j]))
        return Laurent(F, self.val + other.val, out, n)

    def scale(self, c: int) -> Laurent:
        return Laurent(self.F, self.val, [self.F.mul(c, x) for x in self.coeffs], self.prec)

    def inverse(self) -> Laurent:
        F = self.F
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero series")
        a = self.coeffs
        n = len(a)
        inv0 = F.inv(a[0])
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            s = 0
            for i in range(1, k + 1):
                s = F.add(s, F.mul(a[i], out[k - i]))
            out[k] = F.neg(F.mul(s, inv0))
        return Laurent(F, -self.val, out, n)

    def __repr__(self) -> str:
        return f"Laurent(val={self.val}, coeffs={self.coeffs[:6]}...)"


def _series_sqrt(F: FieldSpec, g: list[int], root0: int, n: int) -> list[int]:
    """Power series y with y^2 = g (g[0] = root0^2 != 0)."""
    g = list(g) + [0] * max(0, n - len(g))
    y = [root0] + [0] * (n - 1)
    inv2y = F.inv(F.add(root0, root0))
    for k in range(1, n):
        s = g[k]
        for i in range(1, k):
            s = F.sub(s, F.mul(y[i], y[k - i]))
        y[k] = F.mul(s, inv2y)
    return y


def _series_reversion(F: FieldSpec, g: list[int], n: int) -> list[int]:
    """Power series e(w) with e(0)=0 and g(e(w)) = w, given g[0]=0, g[1]!=0."""
    inv1 = F.inv(g[1])
    e = Laurent(F, 1, [inv1], n)
    w = Laurent(F, 1, [1], n)
    for _ in range(n):
        # e <- (w - sum_{k>=2} g_k e^k) / g_1
        acc = w
        ek = e * e
        for k in range(2, len(g)):
            if g[k]:
                acc = acc - ek.scale(g[k])
            ek = ek * e
        e = acc.scale(inv1)
    out = [0] * n
    for i, c in enumerate(e.coeffs):
        j = e.val + i
        if 0 <= j < n:
            out[j] = c
    return out


def _expand_poly_in(F: FieldSpec, p: Poly, x: Laurent, prec: int) -> Laurent:
    acc = Laurent(F, 0, [], prec)
    for c in reversed(p):
        acc = acc * x if not acc.is_zero else acc
        if c:
            acc = acc + Laurent.const(F, c, prec)
    return acc


@dataclass(frozen=True)
class Place:
    """A rational point of y^2 = F(x).

    kind is 'affine' (x, y set) or 'inf'; sign distinguishes the two points
    at infinity of an even-degree model (+1: y ~ +sqrt(lead)*x^(d/2)).
    """

    kind: str
    x: int = 0
    y: int = 0
    sign: int = 0

    @property
    def is_infinite(self) -> bool:
        return self.kind == "inf"


@dataclass(frozen=True)
class CurveFunction:
    """f = a(x) + b(x) * y."""

    a: tuple[int, ...]
    b: tuple[int, ...] = ()

    @classmethod
    def make(cls, a: Poly, b: Poly = ()) -> CurveFunction:
        return cls(tuple(polys.trim(a)), tuple(polys.trim(b)))

    @property
    def is_zero(self) -> bool:
        return not self.a and not self.b


class HyperellipticModel:
    """The curve y^2 = F(x), F squarefree of degree >= 3, char != 2."""

    def __init__(self, field: FieldSpec, F: Poly):
        if field.p == 2:
            raise ValueError("characteristic 2 not supported")
        F = polys.trim(F)
        if polys.deg(F) < 3:
            raise ValueError("need degree >= 3")
        if not polys.is_squarefree(field, F):
            raise ValueError("F is not squarefree")
        self.field = field
        self.F = F
        self.d = polys.deg(F)
        self.genus = (self.d - 1) // 2
        self._cache: dict[Place, tuple[Laurent, Laurent]] = {}

    # -- points -------------------------------------------------------------

    @cached_property
    def rational_places(self) -> list[Place]:
        K = self.field
        out: list[Place] = []
        for x in range(K.q):
            v = polys.evaluate(K, self.F, x)
            if v == 0:
                out.append(Place("affine", x, 0))
            elif K.is_square(v):
                r = K.sqrt(v)
                for y in sorted({r, K.neg(r)}):
                    out.append(Place("affine", x, y))
        out.extend(self.infinite_places)
        return out

    @cached_property
    def infinite_places(self) -> list[Place]:
        if self.d % 2:
            return [Place("inf", sign=1)]
        if self.field.is_square(self.F[-1]):
            return [Place("inf", sign=1), Place("inf", sign=-1)]
        return []

    @property
    def affine_places(self) -> list[Place]:
        return [P for P in self.rational_places if not P.is_infinite]

    # -- local expansions -----------------------------------------------------

    def expansion(self, P: Place, prec: int = PREC) -> tuple[Laurent, Laurent]:
        """(x(t), y(t)) as Laurent series in a uniformizer t at P."""
        key = (P, prec)
        if key in self._cache:
            return self._cache[key]
        K = self.field
        if P.kind == "affine" and P.y != 0:
            G = polys.compose_linear(K, self.F, 1, P.x)
            ys = _series_sqrt(K, G, P.y, prec)
            xs = Laurent(K, 0, [P.x, 1], prec)
            res = (xs, Laurent(K, 0, ys, prec))
        elif P.kind == "affine":
            G = polys.compose_linear(K, self.F, 1, P.x)
            e = _series_reversion(K, G + [0] * 2, prec)
            # x = x0 + e(t^2), y = t
            xc = [0] * prec
            xc[0] = P.x
            for i, c in enumerate(e):
                if 2 * i < prec:
                    xc[2 * i] = K.add(xc[2 * i], c)
            res = (Laurent(K, 0, xc, prec), Laurent(K, 1, [1], prec))
        elif self.d % 2 == 0:
            c = self.d // 2
            Ft = list(reversed(self.F))  # u^d F(1/u)
            r = K.sqrt(self.F[-1])
            if r is None:
                raise ValueError("points at infinity are not rational")
            root = r if P.sign > 0 else K.neg(r)
            S = _series_sqrt(K, Ft, root, prec)
            res = (Laurent(K, -1, [1], prec), Laurent(K, -c, S, prec))
        else:
            c = (self.d + 1) // 2
            Ft = [0] + list(reversed(self.F))  # X^(d+1) F(1/X), vanishes at 0
            n = prec + 2  # X starts at t^2, keep prec terms after stripping
            e = _series_reversion(K, Ft, n)
            X = Laurent(K, 0, [e[i // 2] if i % 2 == 0 else 0 for i in range(n)], n)
            Xinv = X.inverse()
            x = Xinv
            y = Laurent(K, 1, [1], prec)
            for _ in range(c):
                y = y * Xinv
            res = (x, y)
        self._cache[key] = res
        return res

    def local_series(self, f: CurveFunction, P: Place, prec: int = PREC) -> Laurent:
        xs, ys = self.expansion(P, prec)
        A = _expand_poly_in(self.field, list(f.a), xs, prec)
        if f.b:
            A = A + _expand_poly_in(self.field, list(f.b), xs, prec) * ys
        return A

    def valuation_and_unit(self, f: CurveFunction, P: Place) -> tuple[int, int]:
        # a nonzero leading term survives truncation exactly, so start cheap
        for prec in (6, 12, PREC, 4 * PREC):
            s = self.local_series(f, P, prec)
            if not s.is_zero:
                return s.val, s.leading
        raise ArithmeticError("function vanishes to the working precision")

    # -- geometry of the double cover z^2 = f --------------------------------

    def norm(self, f: CurveFunction) -> Poly:
        K = self.field
        return polys.sub(K, polys.mul(K, list(f.a), list(f.a)),
                         polys.mul(K, polys.mul(K, list(f.b), list(f.b)), self.F))

    def odd_places_degree(self, f: CurveFunction, m: int = 2) -> int:
        """Number of geometric points where v_P(f) is not divisible by m."""
        return sum(n for n, v in self.geometric_valuations(f) if v % m)

    def geometric_valuations(self, f: CurveFunction) -> list[tuple[int, int]]:
        """[(n, v)]: n geometric points where f has valuation v != 0."""
        K = self.field
        if f.is_zero:
            raise ValueError("zero function")
        a, b = list(f.a), list(f.b)
        if b:
            h = polys.gcd(K, a, b) if a else polys.monic(K, b)
            a1 = polys.exact_div(K, a, h) if a else []
            b1 = polys.exact_div(K, b, h)
        else:
            h = polys.monic(K, a)
            a1, b1 = [a[-1]], []
        N1 = polys.sub(K, polys.mul(K, a1, a1), polys.mul(K, polys.mul(K, b1, b1), self.F))
        out: list[tuple[int, int]] = []
        for n, (mN, mh, mF) in polys.multiplicity_blocks(K, [N1, h, self.F]):
            if mF:
                v = mN + 2 * mh
                if v:
                    out.append((n, v))
            else:
                if mN + mh:
                    out.append((n, mN + mh))
                if mh:
                    out.append((n, mh))
        out.extend(self._infinite_valuations(f))
        return out

    def _infinite_valuations(self, f: CurveFunction) -> list[tuple[int, int]]:
        K = self.field
        da, db = polys.deg(list(f.a)), polys.deg(list(f.b))
        if self.d % 2:
            v = -max(2 * da if f.a else -10**9, (2 * db + self.d) if f.b else -10**9)
            return [(1, v)] if v else []
        total = -polys.deg(self.norm(f))
        if not K.is_square(self.F[-1]):
            v = total // 2
            return [(2, v)] if v else []
        vp = self.valuation_and_unit(f, Place("inf", sign=1))[0]
        vm = total - vp
        return [(1, v) for v in (vp, vm) if v]

    def cover_genus(self, f: CurveFunction, m: int = 2) -> int | None:
        """Genus of the smooth curve z^m = f (None if f is an m'-th power, m'|m)."""
        vals = self.geometric_valuations(f)
        g0 = self.genus
        ram = sum(n * (m - igcd(m, v)) for n, v in vals)
        if m == 2 and ram == 0:
            return None
        two_g_minus_2 = m * (2 * g0 - 2) + ram
        if two_g_minus_2 % 2:
            return None
        return two_g_minus_2 // 2 + 1

    def local_count(self, f: CurveFunction, P: Place, m: int = 2) -> int:
        v, w = self.valuation_and_unit(f, P)
        return local_root_count(self.field, igcd(m, v), w)

    def count_cover(self, f: CurveFunction, m: int = 2) -> int:
        """Exact number of rational points on the smooth model of z^m = f."""
        K = self.field
        total = 0
        table = None
        for P in self.rational_places:
            if P.kind == "affine":
                val = polys.evaluate(K, list(f.a), P.x)
                if f.b:
                    val = K.add(val, K.mul(polys.evaluate(K, list(f.b), P.x), P.y))
                if val != 0:
                    if table is None:
                        from .finite_fields import residue_table

                        table = residue_table(K, m)
                    total += table.root_count[val]
                    continue
            total += self.local_count(f, P, m)
        return total
