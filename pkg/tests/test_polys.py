from hypothesis import assume, given, strategies as st

from genus4 import polys
from genus4.finite_fields import field_of_order


@st.composite
def field_polys(draw, count=2, max_deg=8):
    F = field_of_order(draw(st.sampled_from([2, 3, 5, 7, 9, 13, 25])))
    out = []
    for _ in range(count):
        n = draw(st.integers(0, max_deg + 1))
        out.append(polys.trim([draw(st.integers(0, F.q - 1)) for _ in range(n)]))
    return F, out


@given(field_polys())
def test_division_identity(data):
    F, (a, b) = data
    assume(b)
    quo, rem = polys.divmod_(F, a, b)
    assert polys.add(F, polys.mul(F, quo, b), rem) == polys.trim(a)
    assert polys.deg(rem) < polys.deg(b)


@given(field_polys())
def test_gcd_divides_both(data):
    F, (a, b) = data
    assume(a or b)
    g = polys.gcd(F, a, b)
    assert g[-1] == 1
    assert not polys.mod(F, a, g) and not polys.mod(F, b, g)


@given(field_polys(), st.integers(0, 24))
def test_evaluate_is_a_ring_map(data, x):
    F, (a, b) = data
    x %= F.q
    assert polys.evaluate(F, polys.mul(F, a, b), x) == F.mul(polys.evaluate(F, a, x), polys.evaluate(F, b, x))
    assert polys.evaluate(F, polys.add(F, a, b), x) == F.add(polys.evaluate(F, a, x), polys.evaluate(F, b, x))


@given(field_polys(1), st.integers(1, 24), st.integers(0, 24), st.integers(0, 24))
def test_compose_linear(data, u, v, x):
    F, (a,) = data
    u, v, x = u % F.q or 1, v % F.q, x % F.q
    c = polys.compose_linear(F, a, u, v)
    assert polys.evaluate(F, c, x) == polys.evaluate(F, a, F.add(F.mul(u, x), v))


@given(field_polys(3, max_deg=3))
def test_squarefree_decomposition_reassembles(data):
    F, (a, b, c) = data
    f = polys.mul(F, polys.mul(F, a, polys.power(F, b, 2)), polys.power(F, c, 3))
    assume(polys.deg(f) > 0)
    dec = polys.squarefree_decomposition(F, f)
    prod = [1]
    for g, e in dec:
        assert polys.is_squarefree(F, g)
        prod = polys.mul(F, prod, polys.power(F, g, e))
    assert prod == polys.monic(F, f)
    for i in range(len(dec)):
        for j in range(i + 1, len(dec)):
            assert polys.deg(polys.gcd(F, dec[i][0], dec[j][0])) == 0


def test_squarefree_in_characteristic_p():
    F = field_of_order(5)
    f = polys.from_ints(F, [1, 0, 0, 0, 0, 1])  # x^5 + 1 = (x + 1)^5
    assert polys.squarefree_decomposition(F, f) == [([1, 1], 5)]
    assert not polys.is_squarefree(F, f)
    assert polys.radical(F, f) == [1, 1]


def test_roots_and_strings():
    F = field_of_order(7)
    f = polys.mul(F, [F.from_int(-2), 1], [F.from_int(-3), 1])
    assert polys.roots(F, f) == [2, 3]
    assert polys.to_str(F, [1, 0, 1])
