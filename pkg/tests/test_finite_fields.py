from math import gcd

import pytest
from hypothesis import given, strategies as st

from genus4.finite_fields import (
    field_of_order,
    frobenius_orbit,
    is_prime,
    local_root_count,
    make_field,
    residue_table,
)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 81]


@st.composite
def field_and_elements(draw, n=3):
    F = field_of_order(draw(st.sampled_from(ORDERS)))
    xs = [draw(st.integers(0, F.q - 1)) for _ in range(n)]
    return F, xs


@given(field_and_elements())
def test_ring_axioms(data):
    F, (a, b, c) = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


@given(field_and_elements(1))
def test_inverses_and_powers(data):
    F, (a,) = data
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            F.inv(a)
        return
    assert F.mul(a, F.inv(a)) == 1
    assert F.pow(a, F.q - 1) == 1
    assert F.exp(F.log(a)) == a
    assert F.pow(a, F.q) == a


@given(field_and_elements(1))
def test_square_roots(data):
    F, (a,) = data
    r = F.sqrt(a)
    if F.is_square(a):
        assert r is not None and F.mul(r, r) == a
    else:
        assert r is None
        assert F.chi(a) == -1


@given(field_and_elements(1), st.integers(1, 12))
def test_nth_root(data, n):
    F, (a,) = data
    r = F.nth_root(a, n)
    if r is None:
        assert all(F.pow(z, n) != a for z in range(F.q))
    else:
        assert F.pow(r, n) == a


@pytest.mark.parametrize("q", ORDERS)
def test_frobenius_is_additive_and_has_order_k(q):
    F = field_of_order(q)
    for a in range(q):
        for b in range(0, q, 3):
            assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        x = a
        for _ in range(F.k):
            x = F.frobenius(x)
        assert x == a
    assert all(len(frobenius_orbit(F(a))) in [d for d in range(1, F.k + 1) if F.k % d == 0] for a in range(q))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27, 49])
def test_least_nonsquare(q):
    F = field_of_order(q)
    nu = F.nonsquare
    assert not F.is_square(nu)
    assert all(F.is_square(v) for v in range(1, nu))


def test_prime_field_codes():
    F = make_field(13)
    assert F.from_int(-1) == 12
    assert F.from_int(27) == 1
    assert F.nonsquare == 2
    assert make_field(41).nonsquare == 3


def test_bad_fields():
    with pytest.raises(ValueError):
        make_field(15)
    with pytest.raises(ValueError):
        field_of_order(12)
    assert not is_prime(1) and is_prime(97)


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11, 13, 16])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_residue_table_invariants(q, m):
    F = field_of_order(q)
    tab = residue_table(F, m)
    assert tab.root_count[0] == 1
    assert sum(tab.root_count) == q
    g = gcd(m, q - 1)
    assert set(tab.root_count[1:]) <= {0, g}
    for w in range(1, q):
        brute = sum(1 for c in range(q) if F.pow(c, m) == w)
        assert local_root_count(F, m, w) == brute
