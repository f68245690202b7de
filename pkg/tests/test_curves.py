import random
from math import isqrt

import pytest

from genus4.curves import (
    INFINITY,
    EllipticCurve,
    Genus2Curve,
    all_curve_classes,
    count_points,
    count_points_genus2,
    enumerate_classes,
    hasse_ok,
    q_representatives,
    serre_bound,
    shifted_model,
)
from genus4.finite_fields import field_of_order, make_field


def _nonsingular_pairs(F):
    return sum(1 for a in range(F.q) for b in range(F.q)
               if F.add(F.mul(4, F.pow(a, 3)), F.mul(27 % F.p, F.mul(b, b))) != 0)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_class_mass(q):
    F = make_field(q)
    mass = sum(c.orbit_size for t in range(-isqrt(4 * q), isqrt(4 * q) + 1)
               for c in enumerate_classes(F, t).classes)
    assert mass == q * q - q == _nonsingular_pairs(F)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 19, 23, 37, 41, 43, 97])
def test_number_of_isomorphism_classes(q):
    # classical count of F_q-isomorphism classes for prime q > 3
    extra = {1: 6, 5: 2, 7: 4, 11: 0}[q % 12]
    assert len(all_curve_classes(make_field(q))) == 2 * q + extra


def test_prime_power_mass():
    F = field_of_order(25)
    # Galois-conjugate classes are merged, so only the mass is invariant
    assert sum(c.orbit_size for c in all_curve_classes(F)) == 25 * 24


def test_example_counts():
    F = make_field(13)
    E = EllipticCurve.from_ints(F, 0, 4)
    assert E.trace == -7 and count_points(E) == 21
    assert E in enumerate_classes(F, -7).representatives


@pytest.mark.parametrize("q", [7, 11, 13, 25])
def test_traces_and_twist_invariance(q):
    F = field_of_order(q)
    for c in all_curve_classes(F):
        E = c.representative
        assert hasse_ok(q, E.trace)
        assert E.order == len(E.points)
        u = F.nonsquare if q % 2 else 2
        sq = F.mul(u, u)
        twin = EllipticCurve(F, F.mul(E.a, F.pow(sq, 2)), F.mul(E.b, F.pow(sq, 3)))
        assert twin.order == E.order
        conj = EllipticCurve(F, F.frobenius(E.a), F.frobenius(E.b))
        assert conj.order == E.order
        if c.orbit_size:
            quad = EllipticCurve(F, F.mul(E.a, F.pow(u, 2)), F.mul(E.b, F.pow(u, 3)))
            assert quad.trace == -E.trace


def test_hasse_violation_gives_no_classes():
    assert enumerate_classes(make_field(13), 8).classes == []
    assert not hasse_ok(13, 8)


@pytest.mark.parametrize("q,a,b", [(13, 0, 4), (23, 1, 5), (41, 3, 7)])
def test_group_law(q, a, b):
    E = EllipticCurve.from_ints(make_field(q), a, b)
    pts = E.points
    rng = random.Random(q)
    for _ in range(500):
        P, Q, R = (rng.choice(pts) for _ in range(3))
        assert E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R))
        assert E.add(P, Q) == E.add(Q, P)
        assert E.add(P, E.neg(P)) == INFINITY
    for P in pts[:10]:
        acc = INFINITY
        for n in range(8):
            assert E.mul(n, P) == acc
            acc = E.add(acc, P)
        assert E.mul(E.order, P) == INFINITY


@pytest.mark.parametrize("q", [7, 13, 19, 31])
def test_q_representatives(q):
    F = make_field(q)
    for c in all_curve_classes(F):
        E = c.representative
        reps = q_representatives(E)
        cosets = E.three_quotient()
        assert sum(len(x) for x in cosets) == E.order
        # every coset is hit by an automorphism image of exactly one representative
        owner = {}
        for i, R in enumerate(reps):
            assert R.is_infinity or R.y != 0
            for u in E.automorphism_scalars:
                img = E.apply_automorphism(u, R)
                k = next(j for j, x in enumerate(cosets) if img in x)
                assert owner.setdefault(k, i) == i
        assert len(owner) == len(cosets)
        assert (len(cosets) == 1) == (reps == [INFINITY])


def test_shifted_model():
    F = make_field(13)
    E = EllipticCurve.from_ints(F, 0, 4)
    Q = next(P for P in E.points if not P.is_infinity and P.y)
    r, s, t = shifted_model(E, Q)
    for P in E.points[1:]:
        x = F.sub(P.x, Q.x)
        rhs = F.add(F.mul(F.add(F.mul(F.add(x, r), x), s), x), F.mul(t, t))
        assert rhs == F.mul(P.y, P.y)
    with pytest.raises(ValueError):
        shifted_model(E, INFINITY)


def test_genus2_counts():
    F = make_field(41)
    C = Genus2Curve.from_ints(F, [-7, 0, 8, 0, 7, 0, 1])
    n = count_points_genus2(C)
    assert abs(n - 42) <= 2 * isqrt(4 * 41)
    brute = sum(1 for x in range(41) for y in range(41)
                if (y * y - (x**6 + 7 * x**4 + 8 * x**2 - 7)) % 41 == 0) + 2
    assert n == brute
    c = 5
    D = Genus2Curve(F, [F.mul(F.mul(c, c), v) for v in C.f])
    assert count_points_genus2(D) == n
    with pytest.raises(ValueError):
        Genus2Curve.from_ints(make_field(5), [0, 0, 0, 0, 0, 1])


def test_serre_bound():
    assert serre_bound(13, 4) == 13 + 1 + 4 * 7
    assert serre_bound(97, 4) == 98 + 4 * 19
