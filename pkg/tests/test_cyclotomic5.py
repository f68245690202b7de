import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genus4.cyclotomic5 import (
    IDENTITY,
    ONE,
    PHI_REAL,
    VARPHI,
    VARPHI_INV,
    ZERO,
    ZETA,
    CycloElement,
    Hermitian2x2,
    ReductionError,
    ReductionTrace,
    Surd,
    closest_vector,
    covering_radius_check,
    euclid_divide,
    find_frobenius_root,
    mat,
    mat_det,
    mat_mul,
    mat_star,
    quartic_from_real_weil,
    random_invertible,
    reduce_unimodular,
    ring_index,
    trace_lattice_form,
    verify_frobenius_cm,
)

ints = st.integers(-6, 6)
integral = st.builds(CycloElement.of, ints, ints, ints, ints)
rational = st.builds(CycloElement.of, *(st.fractions(min_value=-3, max_value=3, max_denominator=5),) * 4)


def test_zeta_relations():
    assert ZETA * ZETA * ZETA * ZETA * ZETA == ONE
    assert ONE + ZETA + ZETA * ZETA + CycloElement.zeta_power(3) + CycloElement.zeta_power(4) == ZERO
    assert VARPHI == -CycloElement.zeta_power(2) - CycloElement.zeta_power(3)
    assert VARPHI * VARPHI == VARPHI + 1
    assert VARPHI * VARPHI_INV == ONE
    assert VARPHI.real_part().psi(1) == PHI_REAL
    assert VARPHI.real_part().psi(2) == Surd(Fraction(-1)) / PHI_REAL


@given(rational, rational, rational)
def test_field_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    if x:
        assert x * x.inverse() == ONE
        assert x.norm() > 0


@given(rational)
def test_magnitudes_and_trace_form(x):
    r = (x * x.conj()).real_part()
    assert r.psi(1) + r.psi(2) == Surd(Fraction(trace_lattice_form(x), 2))
    assert x.magnitude(1) >= 0 and x.magnitude(2) >= 0
    assert trace_lattice_form(x) == (x * x.conj()).trace()


def test_trace_form_values():
    assert trace_lattice_form(ONE) == 4
    assert trace_lattice_form(ZETA) == 4
    assert trace_lattice_form(ONE + ZETA) == 6
    assert trace_lattice_form(VARPHI) == 6


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_surd_order_matches_floats(u, v):
    s = Surd(Fraction(u, 3), Fraction(v, 2))
    f = float(s)
    assert s.sign() == (f > 1e-12) - (f < -1e-12)


@given(rational)
@settings(max_examples=40)
def test_closest_vector_against_a_window(x):
    y, dist = closest_vector(x)
    assert y.is_integral()
    assert trace_lattice_form(x - y) == dist
    base = [round(a) for a in x.coords]
    for off in itertools.product((-1, 0, 1), repeat=4):
        z = CycloElement.of(*(b + o for b, o in zip(base, off)))
        assert trace_lattice_form(x - z) >= dist


@given(integral, integral)
def test_euclid_postcondition(n, d):
    if not d:
        with pytest.raises(ZeroDivisionError):
            euclid_divide(n, d)
        return
    q, r = euclid_divide(n, d)
    assert q.is_integral() and n == q * d + r
    assert 4 * r.norm() <= d.norm()
    assert r.magnitude(1) <= d.magnitude(1) and r.magnitude(2) <= d.magnitude(2)


def test_euclid_examples():
    d = CycloElement.of(2, 1, 0, 3)
    assert euclid_divide(d, d) == (ONE, ZERO)
    n = CycloElement.of(5, -2, 7, 1)
    assert euclid_divide(n, ONE) == (n, ZERO)


def test_covering_small_denominators():
    rep = covering_radius_check([2, 3])
    assert rep.cosets_checked == 16 + 81
    assert rep.ok and rep.max_distance <= 2


def _round_trip(P):
    C = reduce_unimodular(P)
    assert mat_mul(mat_star(C), C) == P.matrix
    return C


def test_determinant_step():
    phi2 = VARPHI * VARPHI
    P = Hermitian2x2(phi2, ZERO, VARPHI_INV * VARPHI_INV)
    trace = ReductionTrace(P)
    C = reduce_unimodular(P, trace)
    assert mat_mul(mat_star(C), C) == P.matrix
    assert trace.final.matrix == IDENTITY


@pytest.mark.parametrize("seed", range(20))
def test_reduction_round_trip(seed):
    rng = random.Random(seed)
    C0 = random_invertible(rng, steps=6, size=2)
    P = Hermitian2x2.from_matrix(mat_mul(mat_star(C0), C0))
    trace = ReductionTrace(P)
    C = reduce_unimodular(P, trace)
    assert mat_mul(mat_star(C), C) == P.matrix
    assert trace.final.matrix == IDENTITY
    det = mat_det(trace.composed())
    assert det.is_integral() and abs(det.norm()) == 1
    swaps = [s for s in trace.steps if s.kind == "swap"]
    norms = [s.result.alpha.real_part().norm() for s in swaps]
    assert all(a > b for a, b in zip(norms, norms[1:]))


def test_reduction_rejects_bad_input():
    with pytest.raises(ReductionError):
        reduce_unimodular(Hermitian2x2(CycloElement.of(2), ZERO, ONE))
    with pytest.raises(ReductionError):
        reduce_unimodular(Hermitian2x2(-ONE, ZERO, -ONE))
    with pytest.raises(ValueError):
        Hermitian2x2.from_matrix(mat(1, ZETA, ZETA, 1))


def test_weil_polynomials():
    assert quartic_from_real_weil(11, [29, 11, 1]) == [121, 121, 51, 11, 1]
    for q, h in ((11, [29, 11, 1]), (61, [209, 29, 1])):
        rep = verify_frobenius_cm(q, quartic_from_real_weil(q, h))
        assert rep.ok
        pi = rep.root
        assert pi * pi.conj() == q


def test_cm_failures():
    rep = verify_frobenius_cm(11, [1, 0, 0, 0, 1])
    assert not rep.ok and rep.root is None
    assert find_frobenius_root(11, [1, 0, 0, 0, 1]) is None
    assert ring_index([CycloElement.of(2)]) == 0
    assert ring_index([ZETA]) == 1
    assert ring_index([2 * ZETA, 2 * ZETA.conj()]) > 1
    with pytest.raises(ValueError):
        verify_frobenius_cm(11, [1, 2, 3])
