"""Point counts on cyclic covers checked against direct enumeration."""
import random
from math import gcd

import pytest

from genus4 import polys
from genus4.cover_search import CoverSpec, count_cover_points, rr_basis_8
from genus4.curves import EllipticCurve, q_representatives
from genus4.finite_fields import make_field
from genus4.function_field import Place
from genus4.special_families import (
    is_power_on_line,
    shifted_datum,
    superelliptic_count,
    superelliptic_genus,
)

INSTANCES = 200


def _roots_of(F, d, w):
    return sum(1 for c in range(F.q) if F.pow(c, d) == w)


def brute_superelliptic(F, m, f):
    """Affine solutions of z^m = f(x) where f(x) != 0, plus branch counts at zeros and infinity.

    Above a place of valuation v with leading unit w there are gcd(m, v)
    geometric branches z ~ c t^(v/m) with c^gcd(m, v) = w; this is checked
    by enumerating c, with v and w found by repeated division.
    """
    total = 0
    for x in range(F.q):
        val = polys.evaluate(F, f, x)
        if val:
            total += sum(1 for z in range(F.q) if F.pow(z, m) == val)
            continue
        g, v = list(f), 0
        lin = [F.neg(x), 1]
        while True:
            quo, rem = polys.divmod_(F, g, lin)
            if rem:
                break
            g, v = quo, v + 1
        total += _roots_of(F, gcd(m, v), polys.evaluate(F, g, x))
    total += _roots_of(F, gcd(m, polys.deg(f)), f[-1])
    return total


def random_datum(rng, F, m):
    """A random non-power f, often with repeated roots."""
    while True:
        f = [1]
        for _ in range(rng.randint(1, 4)):
            r = rng.randrange(F.q)
            f = polys.mul(F, f, polys.power(F, [F.neg(r), 1], rng.randint(1, m + 1)))
        if rng.random() < 0.5:
            f = polys.mul(F, f, [rng.randrange(F.q) for _ in range(rng.randint(1, 4))] + [1])
        f = polys.scale(F, rng.randrange(1, F.q), f)
        if polys.deg(f) > 0 and not is_power_on_line(F, f, m):
            return f


CONFIGS = [(q, m) for q in (5, 7, 11, 13) for m in (2, 3, 5, 6)]


@pytest.mark.parametrize("q,m", CONFIGS)
def test_gcd_rule_matches_brute_force(q, m):
    F = make_field(q)
    rng = random.Random(1000 * q + m)
    for _ in range(INSTANCES):
        f = random_datum(rng, F, m)
        assert superelliptic_count(F, m, f) == brute_superelliptic(F, m, f), f


@pytest.mark.parametrize("q,m", CONFIGS)
def test_count_is_birational(q, m):
    """f and f * g^m define the same curve, whatever g does at its roots."""
    F = make_field(q)
    rng = random.Random(7 * q + m)
    for _ in range(INSTANCES // 4):
        f = random_datum(rng, F, m)
        g = [rng.randrange(F.q) for _ in range(rng.randint(1, 3))] + [1]
        twisted = polys.mul(F, f, polys.power(F, g, m))
        assert superelliptic_count(F, m, twisted) == superelliptic_count(F, m, f)
        assert superelliptic_genus(F, m, twisted) == superelliptic_genus(F, m, f)


@pytest.mark.parametrize("q,m", CONFIGS)
def test_shift_trick(q, m):
    """Moving any point a to infinity by x -> a + 1/u leaves the count unchanged."""
    F = make_field(q)
    rng = random.Random(31 * q + m)
    for _ in range(10):
        f = random_datum(rng, F, m)
        n = superelliptic_count(F, m, f)
        for a in range(F.q):
            assert superelliptic_count(F, m, shifted_datum(F, m, f, a)) == n


@pytest.mark.parametrize("q,m", [(7, 2), (7, 3), (11, 5), (13, 6), (13, 3)])
def test_twist_sum(q, m):
    """Summing over all scalings t*f every place of the line contributes q - 1."""
    F = make_field(q)
    rng = random.Random(q * m)
    for _ in range(5):
        f = random_datum(rng, F, m)
        total = sum(superelliptic_count(F, m, polys.scale(F, t, f)) for t in range(1, q))
        assert total == (q - 1) * (q + 1)


# ---------------------------------------------------------------------------
# double covers of an elliptic curve
# ---------------------------------------------------------------------------


def _brute_double_cover(spec, marked):
    """Enumerate (x, y, z) with z^2 = f(x, y) on the shifted model.

    Points where f vanishes and the two special places use the valuation
    read off the norm f * conj(f) when that is possible.
    """
    model = spec.base_model
    F = model.field
    f = spec.function
    a, b = list(f.a), list(f.b)
    total = 0
    for x in range(F.q):
        rhs = polys.evaluate(F, model.F, x)
        for y in range(F.q):
            if F.mul(y, y) != rhs:
                continue
            P = Place("affine", x, y)
            val = F.add(polys.evaluate(F, a, x), F.mul(polys.evaluate(F, b, x), y))
            if P == marked:
                total += model.local_count(f, P)
            elif val:
                total += sum(1 for z in range(F.q) if F.mul(z, z) == val)
            else:
                conj = F.sub(polys.evaluate(F, a, x), F.mul(polys.evaluate(F, b, x), y))
                if y == 0 or conj == 0:
                    total += model.local_count(f, P)
                    continue
                norm = model.norm(f)
                v = 0
                while True:
                    quo, rem = polys.divmod_(F, norm, [F.neg(x), 1])
                    if rem:
                        break
                    norm, v = quo, v + 1
                w = F.div(polys.evaluate(F, norm, x), conj)
                total += _roots_of(F, gcd(2, v), w)
    for P in model.infinite_places:
        total += model.local_count(f, P)
    return total


@pytest.mark.parametrize("q,a,b", [(5, 1, 1), (7, 3, 2), (13, 0, 4)])
def test_double_cover_count_matches_enumeration(q, a, b):
    F = make_field(q)
    E = EllipticCurve.from_ints(F, a, b)
    Q = next(P for P in q_representatives(E) if not P.is_infinity) if len(q_representatives(E)) > 1 \
        else next(P for P in E.points if not P.is_infinity and P.y)
    B = rr_basis_8(E, Q)
    rng = random.Random(q)
    seen = 0
    while seen < INSTANCES:
        coeffs = [rng.randrange(q) for _ in range(len(B))]
        if not any(coeffs):
            continue
        spec = CoverSpec(E, 2, list(B.functions), coeffs, {"Q": Q}, model=B.model)
        assert count_cover_points(spec) == _brute_double_cover(spec, B.marked), coeffs
        seen += 1
