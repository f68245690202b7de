"""Searches outside the double-cover framework.

* hyperelliptic curves y^2 = f with an automorphism (x, y) -> (-1/x, y/x^5);
* cyclic degree-5 covers z^5 = f of the projective line;
* cyclic degree-3 covers z^3 = y + a x + b of elliptic curves;
* exact point counts for superelliptic curves z^m = f(x).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from . import polys
from .cover_search import (
    Family,
    KernelTables,
    SearchOutcome,
    family_shards,
    run_shards,
    square_class_counts,
)
from .curves import EllipticCurve, enumerate_classes, serre_bound
from .finite_fields import FieldSpec, field_of_order, local_root_count
from .function_field import CurveFunction
from .polys import Poly

# x^10 + 1, x^9 - x, x^8 + x^2, x^7 - x^3, x^6 + x^4
ORDER4_BASIS = [
    {10: 1, 0: 1},
    {9: 1, 1: -1},
    {8: 1, 2: 1},
    {7: 1, 3: -1},
    {6: 1, 4: 1},
]


def _order4_polys(F: FieldSpec) -> list[Poly]:
    out = []
    for terms in ORDER4_BASIS:
        p = [0] * 11
        for e, c in terms.items():
            p[e] = F.from_int(c)
        out.append(polys.trim(p))
    return out


# ---------------------------------------------------------------------------
# superelliptic curves over the projective line
# ---------------------------------------------------------------------------


def superelliptic_count(F: FieldSpec, m: int, f: Poly) -> int:
    """Rational points on the smooth projective model of z^m = f(x)."""
    f = polys.trim(f)
    if not f:
        raise ValueError("f = 0")
    if is_power_on_line(F, f, m):
        raise ValueError("f is a power: the cover is reducible")
    total = 0
    mults = {}
    for g, e in polys.squarefree_decomposition(F, f):
        for r in polys.roots(F, g):
            mults[r] = e
    for x in range(F.q):
        if x in mults:
            total += _local_at_root(F, m, f, x, mults[x])
        else:
            total += local_root_count(F, m, polys.evaluate(F, f, x))
    # at infinity: uniformizer 1/x, f = lead * x^deg * (1 + ...)
    v = -polys.deg(f)
    total += local_root_count(F, gcd(m, v), f[-1])
    return total


def _local_at_root(F: FieldSpec, m: int, f: Poly, x0: int, e: int) -> int:
    # unit part of f at x0 w.r.t. the uniformizer x - x0
    g = polys.compose_linear(F, f, 1, x0)
    w = g[e]
    return local_root_count(F, gcd(m, e), w)


def is_power_on_line(F: FieldSpec, f: Poly, m: int) -> bool:
    """True if f is an l-th power in kbar(x) for some prime l dividing m."""
    exps = [e for _, e in polys.squarefree_decomposition(F, f)]
    g = 0
    for e in exps:
        g = gcd(g, e)
    g = gcd(g, polys.deg(f))  # the exponent at infinity
    return gcd(g, m) > 1 or not exps


def superelliptic_genus(F: FieldSpec, m: int, f: Poly) -> int | None:
    """Riemann-Hurwitz genus of z^m = f over P^1 (None if f is a power)."""
    if is_power_on_line(F, f, m):
        return None
    ram = 0
    for g, e in polys.squarefree_decomposition(F, f):
        ram += polys.deg(g) * (m - gcd(m, e))
    ram += m - gcd(m, polys.deg(f))
    two_g_minus_2 = -2 * m + ram
    return two_g_minus_2 // 2 + 1


def shifted_datum(F: FieldSpec, m: int, f: Poly, a: int) -> Poly:
    """f(a + 1/u) * u^(m*k), a polynomial in u defining the same cover."""
    g = polys.compose_linear(F, f, 1, a)
    d = polys.deg(g)
    k = -(-d // m)
    return polys.trim([0] * (m * k - d) + list(reversed(g)))


# ---------------------------------------------------------------------------
# family members
# ---------------------------------------------------------------------------


@dataclass
class HyperFamilyMember:
    """y^2 = c0(x^10+1) + c1(x^9-x) + c2(x^8+x^2) + c3(x^7-x^3) + c4(x^6+x^4)."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def f(self) -> Poly:
        F = self.field
        out: Poly = []
        for c, p in zip(self.coeffs, _order4_polys(F)):
            out = polys.add(F, out, polys.scale(F, int(c), p))
        return out

    def is_valid(self) -> bool:
        f = self.f
        return polys.deg(f) in (9, 10) and polys.is_squarefree(self.field, f)

    def genus(self) -> int | None:
        return 4 if self.is_valid() else None

    def count(self) -> int:
        return superelliptic_count(self.field, 2, self.f)

    def to_dict(self) -> dict:
        return {"family": "order-4 hyperelliptic", "coeffs": [int(c) for c in self.coeffs],
                "f": polys.to_str(self.field, self.f)}


@dataclass
class KummerSpec:
    """z^m = f over P^1 (base None, f a polynomial) or over an elliptic curve."""

    field: FieldSpec
    m: int
    f: Poly | CurveFunction
    base: EllipticCurve | None = None

    def genus(self) -> int | None:
        if self.base is None:
            return superelliptic_genus(self.field, self.m, self.f)
        return self.base.model.cover_genus(self.f, self.m)

    def count(self) -> int:
        if self.base is None:
            return superelliptic_count(self.field, self.m, self.f)
        return self.base.model.count_cover(self.f, self.m)

    def to_dict(self) -> dict:
        F = self.field
        if self.base is None:
            return {"m": self.m, "base": "P1", "f": polys.to_str(F, self.f)}
        return {"m": self.m, "base": repr(self.base),
                "f_a": polys.to_str(F, list(self.f.a)), "f_b": polys.to_str(F, list(self.f.b))}


# ---------------------------------------------------------------------------
# hyperelliptic curves with an automorphism of order 4
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Order4Recipe:
    """Members with leading coefficient c_start in {1, nu} and c_j = 0 for j < start."""

    q: int
    start: int  # 0: degree 10, 1: degree 9

    @property
    def ident(self) -> str:
        return f"hyper{self.q}/deg{10 - self.start}"

    def build(self) -> Family:
        F = field_of_order(self.q)
        basis = _order4_polys(F)[self.start:]
        nb = len(basis)
        V = np.zeros((nb, F.q), dtype=np.int32)
        D = np.zeros((nb, F.q), dtype=np.int32)
        for j, p in enumerate(basis):
            dp = polys.derivative(F, p)
            for x in range(F.q):
                V[j, x] = polys.evaluate(F, p, x)
                D[j, x] = polys.evaluate(F, dp, x)
        if self.start == 0:
            base = (2, 0)  # 1 + chi(c0) points at infinity
        else:
            base = (1, 1)
        zeros = np.zeros(nb, dtype=np.int32)
        T = KernelTables(F.add_table.astype(np.int32), F.mul_table.astype(np.int32),
                         square_class_counts(F), V, D, zeros, zeros, False, base)
        start = self.start

        def make_spec(coeffs):
            return HyperFamilyMember(F, (0,) * start + tuple(int(c) for c in coeffs))

        return Family(T, nb, serre_bound(self.q, 4), make_spec)


def hyperelliptic_order4_search(F: FieldSpec, *, floor: int = 0, workers: int = 1) -> SearchOutcome:
    """Best point count in the order-4 family, f up to squares, f separable of degree 9 or 10."""
    if F.p == 2:
        raise ValueError("characteristic 2 not supported")
    tops = (1, F.nonsquare)
    shards = family_shards(Order4Recipe(F.q, 0), F.q, tops) + family_shards(Order4Recipe(F.q, 1), F.q, tops)
    return run_shards(shards, floor=floor, workers=workers)


# ---------------------------------------------------------------------------
# degree-5 Kummer covers of the projective line
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _residues(F: FieldSpec, m: int) -> np.ndarray:
    """log(v) mod m for v != 0, and -1 at 0."""
    lg = F.log_table.astype(np.int64)
    out = np.where(lg >= 0, lg % m, -1)
    return out.astype(np.int64)


def _values(F: FieldSpec, g: Poly) -> np.ndarray:
    """g(x) for all x in F, vectorized through the field tables."""
    xs = np.arange(F.q)
    acc = np.zeros(F.q, dtype=np.int64)
    add, mul = F.add_table, F.mul_table
    for c in reversed(g):
        acc = add[mul[acc, xs], c]
    return acc


def _irreducible_monic(F: FieldSpec, d: int, depressed: bool = False) -> list[Poly]:
    out = []
    for tail in product(range(F.q), repeat=d):
        g = list(tail) + [1]
        if depressed and d >= 2 and g[d - 1] != 0:
            continue
        if d <= 3 and polys.roots(F, g):
            continue
        out.append(g)
    return out


def kummer5_data(F: FieldSpec) -> list[list[tuple[Poly, int]]]:
    """Support/exponent data [(g, e)] with four geometric support points, up to PGL2 and 5th powers.

    Infinity is in the support exactly when the total degree is prime to 5.
    Orbit shapes: four rational points {0, 1, lam, inf}; {0, inf} plus a
    conjugate pair; inf plus a cubic orbit; two conjugate pairs, the first
    moved to the roots of x^2 - nu.
    """
    q = F.q
    out: list[list[tuple[Poly, int]]] = []
    E = range(1, 5)
    x = [0, 1]
    xm1 = [F.neg(1), 1]
    for lam in range(2, q):
        xl = [F.neg(lam), 1]
        for e0, e1, e2 in product(E, E, E):
            if (e0 + e1 + e2) % 5:
                out.append([(x, e0), (xm1, e1), (xl, e2)])
    # x -> u x normalizes the linear coefficient of the pair to 0 or 1
    pairs = [g for g in _irreducible_monic(F, 2) if g[1] in (0, 1)]
    for g in pairs:
        for e0, e1 in product(E, E):
            if (e0 + 2 * e1) % 5:
                out.append([(x, e0), (g, e1)])
    # x -> x + v makes the cubic depressed
    for g in _irreducible_monic(F, 3, depressed=True):
        for e in E:
            out.append([(g, e)])
    g1 = [F.neg(F.nonsquare), 0, 1]
    for g2 in _irreducible_monic(F, 2):
        if g2 == g1:
            continue
        for e in E:
            out.append([(g1, e), (g2, 5 - e)])
    return out


def _datum_poly(F: FieldSpec, datum, c: int) -> Poly:
    f: Poly = [c]
    for g, e in datum:
        f = polys.mul(F, f, polys.power(F, g, e))
    return f


def kummer5_search(F: FieldSpec) -> SearchOutcome:
    """Best point count among genus-4 curves z^5 = f over P^1."""
    m = 5
    if (F.q - 1) % m or F.p == m:
        raise ValueError("need q = 1 mod 5")
    res = _residues(F, m)
    gen = F.exp(1)
    consts = [F.pow(gen, j) for j in range(m)]
    best, witness, counted = -1, None, 0
    cache: dict[tuple, np.ndarray] = {}
    for datum in kummer5_data(F):
        acc = np.zeros(F.q, dtype=np.int64)
        zero = np.zeros(F.q, dtype=bool)
        deg = 0
        for g, e in datum:
            key = tuple(g)
            if key not in cache:
                cache[key] = res[_values(F, g)]
            r = cache[key]
            zero |= r < 0
            acc += e * np.where(r < 0, 0, r)
            deg += e * (len(g) - 1)
        n_zero = int(zero.sum())
        for j in range(m):
            counted += 1
            hits = int(((acc + j) % m == 0)[~zero].sum())
            total = n_zero + m * hits
            if deg % m:
                total += 1
            elif j == 0:
                total += m
            if total > best:
                spec = KummerSpec(F, m, _datum_poly(F, datum, consts[j]))
                if spec.genus() != 4:
                    raise AssertionError(f"bad Kummer datum {datum}")
                best, witness = total, spec
    return SearchOutcome(best, witness, counted, 0)


# ---------------------------------------------------------------------------
# degree-3 Kummer covers of elliptic curves
# ---------------------------------------------------------------------------


def kummer3_search(F: FieldSpec, t: int) -> SearchOutcome:
    """Best count of z^3 = y + a x + b over the elliptic curves of trace t."""
    m = 3
    if (F.q - 1) % m or F.p <= 3:
        raise ValueError("need q = 1 mod 3 and characteristic > 3")
    res = _residues(F, m)
    add, mul = F.add_table, F.mul_table
    best, witness, counted = -1, None, 0
    serre = serre_bound(F.q, 4)
    for cls in enumerate_classes(F, t).classes:
        E = cls.representative
        model = E.model
        pts = model.affine_places
        xs = np.array([P.x for P in pts], dtype=np.int64)
        ys = np.array([P.y for P in pts], dtype=np.int64)
        at_inf = model.local_count(CurveFunction.make([], [1]), model.infinite_places[0], m)
        bs = np.arange(F.q)[:, None]
        for a in range(F.q):
            lin = add[ys, mul[a, xs]]  # y + a x at each point
            vals = add[lin[None, :], bs]  # rows: b
            r = res[vals]
            counts = at_inf + (r < 0).sum(axis=1) + m * (r == 0).sum(axis=1)
            counted += F.q
            order = np.argsort(-counts, kind="stable")
            for b in order:
                n = int(counts[b])
                if n <= best:
                    break
                if n > serre:
                    continue
                spec = KummerSpec(F, m, CurveFunction.make([int(b), a], [1]), E)
                if spec.genus() == 4:
                    exact = spec.count()
                    if exact != n:
                        raise AssertionError(f"fast count {n} != exact {exact}")
                    best, witness = n, spec
                    break
    return SearchOutcome(best if witness else None, witness, counted, 0)
