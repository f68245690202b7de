"""Exact arithmetic in Z[zeta_5] and rank-2 unimodular Hermitian reduction.

Elements of K = Q(zeta) are stored on the basis 1, zeta, zeta^2, zeta^3.
Real quantities that arise (archimedean magnitudes, ratios) live in
Q(sqrt 5) and are compared exactly through `Surd`, so no decision depends
on floating point.  The two embeddings of the real subfield are psi1,
sending sqrt 5 to its positive root, and psi2, sending it to the negative
one; psi1 comes from zeta -> exp(2 pi i/5) and psi2 from zeta -> exp(4 pi i/5).
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Q = Fraction


# ---------------------------------------------------------------------------
# Q(sqrt 5) as ordered real numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Surd:
    """u + v*sqrt(5) as a real number, with exact order."""

    u: Fraction
    v: Fraction = Q(0)

    def __add__(self, o):
        o = _surd(o)
        return Surd(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.u, -self.v)

    def __sub__(self, o):
        return self + (-_surd(o))

    def __rsub__(self, o):
        return _surd(o) - self

    def __mul__(self, o):
        o = _surd(o)
        return Surd(self.u * o.u + 5 * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _surd(o)
        n = o.u * o.u - 5 * o.v * o.v
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return self * Surd(o.u / n, -o.v / n)

    def sign(self) -> int:
        su, sv = (self.u > 0) - (self.u < 0), (self.v > 0) - (self.v < 0)
        if su == sv or sv == 0:
            return su
        if su == 0:
            return sv
        # opposite signs: compare u^2 with 5 v^2
        d = self.u * self.u - 5 * self.v * self.v
        return su if d > 0 else (sv if d < 0 else 0)

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def __float__(self):
        return float(self.u) + float(self.v) * math.sqrt(5)

    def __repr__(self):
        return f"{self.u}{'+' if self.v >= 0 else '-'}{abs(self.v)}*sqrt5"


def _surd(x) -> Surd:
    return x if isinstance(x, Surd) else Surd(Q(x), Q(0))


PHI_REAL = Surd(Q(1, 2), Q(1, 2))  # the real number (1 + sqrt 5)/2


# ---------------------------------------------------------------------------
# K = Q(zeta_5)
# ---------------------------------------------------------------------------


def _reduce5(c: Sequence) -> tuple:
    """Coefficients on 1..zeta^4 (mod zeta^5 - 1) to the basis 1..zeta^3."""
    return tuple(Q(c[j] - c[4]) for j in range(4))


@dataclass(frozen=True)
class CycloElement:
    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    @classmethod
    def of(cls, *c) -> CycloElement:
        if len(c) == 1 and not isinstance(c[0], (int, Fraction)):
            c = tuple(c[0])
        c = tuple(Q(x) for x in c) + (Q(0),) * (4 - len(c))
        return cls(c)

    @classmethod
    def zeta_power(cls, k: int) -> CycloElement:
        c = [0] * 5
        c[k % 5] = 1
        return cls(_reduce5(c))

    def _five(self) -> list:
        return list(self.coords) + [Q(0)]

    def __add__(self, o):
        o = _cyc(o)
        return CycloElement(tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(tuple(-a for a in self.coords))

    def __sub__(self, o):
        return self + (-_cyc(o))

    def __rsub__(self, o):
        return _cyc(o) - self

    def __mul__(self, o):
        o = _cyc(o)
        out = [Q(0)] * 5
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        out[(i + j) % 5] += a * b
        return CycloElement(_reduce5(out))

    __rmul__ = __mul__

    def galois(self, k: int) -> CycloElement:
        """zeta -> zeta^k."""
        out = [Q(0)] * 5
        for j, a in enumerate(self.coords):
            out[(j * k) % 5] += a
        return CycloElement(_reduce5(out))

    def conj(self) -> CycloElement:
        return self.galois(4)

    def trace(self) -> Fraction:
        c = self.coords
        return 4 * c[0] - c[1] - c[2] - c[3]

    def norm(self) -> Fraction:
        p = self * self.galois(2) * self.galois(3) * self.galois(4)
        return p.coords[0]

    def inverse(self) -> CycloElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(zeta_5)")
        p = self.galois(2) * self.galois(3) * self.galois(4)
        return CycloElement(tuple(a / n for a in p.coords))

    def __truediv__(self, o):
        return self * _cyc(o).inverse()

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def is_real(self) -> bool:
        c = self.coords
        return c[1] == 0 and c[2] == c[3]

    def real_part(self) -> RealSubElement:
        """This element as a + b*phi, phi = -zeta^2 - zeta^3; it must be real."""
        if not self.is_real():
            raise ValueError(f"{self} is not in the real subfield")
        c0, _, c2, _ = self.coords
        # a + b*phi = a - b zeta^2 - b zeta^3
        return RealSubElement(c0, -c2)

    def magnitude(self, i: int) -> Surd:
        """||psi_i(x)|| = psi_i(x * conj x)."""
        r = (self * self.conj()).real_part()
        return r.psi(i)

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = _cyc(o)
        return isinstance(o, CycloElement) and self.coords == o.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        terms = []
        for j, a in enumerate(self.coords):
            if a:
                terms.append(f"{a}" if j == 0 else f"{a}*z^{j}" if j > 1 else f"{a}*z")
        return " + ".join(terms) if terms else "0"


def _cyc(x) -> CycloElement:
    if isinstance(x, CycloElement):
        return x
    if isinstance(x, RealSubElement):
        return x.to_cyclo()
    return CycloElement((Q(x), Q(0), Q(0), Q(0)))


ZETA = CycloElement.zeta_power(1)
ONE = CycloElement.of(1)
ZERO = CycloElement.of(0)


@dataclass(frozen=True)
class RealSubElement:
    """a + b*phi in Q(sqrt 5), phi = (1 + sqrt 5)/2 under psi1."""

    a: Fraction
    b: Fraction

    def to_cyclo(self) -> CycloElement:
        return CycloElement.of(self.a, 0, -self.b, -self.b)

    def psi(self, i: int) -> Surd:
        # psi1(phi) = (1 + sqrt5)/2, psi2(phi) = (1 - sqrt5)/2
        s = 1 if i == 1 else -1
        return Surd(Q(self.a) + Q(self.b, 2), s * Q(self.b, 2))

    def norm(self) -> Fraction:
        return (self.psi(1) * self.psi(2)).u

    def is_totally_positive(self) -> bool:
        return self.psi(1).sign() > 0 and self.psi(2).sign() > 0

    def is_integral(self) -> bool:
        return Q(self.a).denominator == 1 and Q(self.b).denominator == 1


VARPHI = RealSubElement(Q(0), Q(1)).to_cyclo()  # fundamental unit, trace 1
VARPHI_INV = VARPHI - 1  # phi^2 = phi + 1


def trace_lattice_form(x: CycloElement) -> Fraction:
    """Tr(x * conj x) = 5 |c|^2 - (sum c)^2 on the zeta-basis coordinates."""
    c = x.coords
    return 5 * sum(a * a for a in c) - sum(c) ** 2


# ---------------------------------------------------------------------------
# closest vectors
# ---------------------------------------------------------------------------


def _qform_int(z: Sequence[int]) -> int:
    return 5 * sum(a * a for a in z) - sum(z) ** 2


def closest_vector(x: CycloElement) -> tuple[CycloElement, Fraction]:
    """Exact CVP in (O, q): returns y in O minimizing q(x - y), and that minimum.

    Uses q(z) >= |z|^2 (the form is 5I - J, least eigenvalue 1) to bound a box.
    """
    den = math.lcm(*(a.denominator for a in x.coords))
    X = [int(a * den) for a in x.coords]
    base = [round(a) for a in x.coords]
    best = base
    best_val = _qform_int([X[i] - den * base[i] for i in range(4)])
    radius = math.isqrt(best_val // (den * den)) + 1
    ranges = [range(math.floor(x.coords[i] - radius), math.ceil(x.coords[i] + radius) + 1) for i in range(4)]
    for y in itertools.product(*ranges):
        v = _qform_int([X[i] - den * y[i] for i in range(4)])
        if v < best_val or (v == best_val and list(y) < best):
            best, best_val = list(y), v
    return CycloElement.of(*best), Q(best_val, den * den)


@dataclass
class CoveringReport:
    denominators: list[int]
    cosets_checked: int
    max_distance: Fraction
    worst: dict[int, Fraction] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.max_distance <= 2

    def to_dict(self) -> dict:
        return {"denominators": self.denominators, "cosets_checked": self.cosets_checked,
                "max_distance": str(self.max_distance),
                "worst": {str(k): str(v) for k, v in self.worst.items()}, "ok": self.ok}


def covering_radius_check(denominators: Sequence[int] = (2, 3, 4, 5)) -> CoveringReport:
    """Largest closest-vector distance over all cosets of (1/M)O/O, for each M.

    A one-sided check: it bounds the covering radius from below at the sampled
    points and certifies that those points are within q-distance 2 of O.
    """
    overall = Q(0)
    worst = {}
    total = 0
    for M in denominators:
        m_worst = Q(0)
        for c in itertools.product(range(M), repeat=4):
            _, dist = closest_vector(CycloElement.of(*(Q(a, M) for a in c)))
            m_worst = max(m_worst, dist)
            total += 1
        worst[M] = m_worst
        overall = max(overall, m_worst)
    return CoveringReport(list(denominators), total, overall, worst)


# ---------------------------------------------------------------------------
# Euclidean division
# ---------------------------------------------------------------------------


class EuclidFailure(ArithmeticError):
    pass


def _certified(r: CycloElement, d: CycloElement) -> bool:
    if 4 * r.norm() > d.norm():
        return False
    return all(r.magnitude(i) <= d.magnitude(i) for i in (1, 2))


def euclid_divide(n: CycloElement, d: CycloElement) -> tuple[CycloElement, CycloElement]:
    """(q, r) with n = q d + r, N(r) <= N(d)/4 and ||psi_i(r)|| <= ||psi_i(d)||.

    q is the best point of a rounding window around n/d; the window widens
    once from {-1, 0, 1}^4 to {-2..2}^4 before giving up.
    """
    n, d = _cyc(n), _cyc(d)
    if not d:
        raise ZeroDivisionError("euclid_divide by zero")
    x = n / d
    den = math.lcm(*(a.denominator for a in x.coords))
    X = [int(a * den) for a in x.coords]
    base = [round(a) for a in x.coords]
    for width in (1, 2):
        cands = []
        for off in itertools.product(range(-width, width + 1), repeat=4):
            y = [base[i] + off[i] for i in range(4)]
            cands.append((_qform_int([X[i] - den * y[i] for i in range(4)]), y))
        cands.sort()
        for _, y in cands:
            q = CycloElement.of(*y)
            r = n - q * d
            if _certified(r, d):
                return q, r
            break  # the form minimizer failed; widen rather than walk a long list
    raise EuclidFailure(f"no certified quotient for n={n}, d={d}")


# ---------------------------------------------------------------------------
# 2x2 Hermitian matrices and reduction
# ---------------------------------------------------------------------------

Mat2 = tuple[tuple[CycloElement, CycloElement], tuple[CycloElement, CycloElement]]


def mat(a, b, c, d) -> Mat2:
    return ((_cyc(a), _cyc(b)), (_cyc(c), _cyc(d)))


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    return tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2))


def mat_star(A: Mat2) -> Mat2:
    return ((A[0][0].conj(), A[1][0].conj()), (A[0][1].conj(), A[1][1].conj()))


def mat_det(A: Mat2) -> CycloElement:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_inverse(A: Mat2) -> Mat2:
    inv = mat_det(A).inverse()
    return mat(A[1][1] * inv, -A[0][1] * inv, -A[1][0] * inv, A[0][0] * inv)


def mat_integral(A: Mat2) -> bool:
    return all(e.is_integral() for row in A for e in row)


IDENTITY = mat(1, 0, 0, 1)
SWAP = mat(0, 1, 1, 0)


def is_unit(x: CycloElement) -> bool:
    return x.is_integral() and abs(x.norm()) == 1


@dataclass(frozen=True)
class Hermitian2x2:
    """[[alpha, conj(beta)], [beta, gamma]] with alpha, gamma real."""

    alpha: CycloElement
    beta: CycloElement
    gamma: CycloElement

    @classmethod
    def from_matrix(cls, A: Mat2) -> Hermitian2x2:
        if A[0][1] != A[1][0].conj() or not A[0][0].is_real() or not A[1][1].is_real():
            raise ValueError("matrix is not Hermitian")
        return cls(A[0][0], A[1][0], A[1][1])

    @property
    def matrix(self) -> Mat2:
        return mat(self.alpha, self.beta.conj(), self.beta, self.gamma)

    def det(self) -> RealSubElement:
        return (self.alpha * self.gamma - self.beta * self.beta.conj()).real_part()

    def is_totally_positive(self) -> bool:
        return self.alpha.real_part().is_totally_positive() and self.det().is_totally_positive()

    def is_unimodular(self) -> bool:
        dt = self.det()
        return all(e.is_integral() for e in (self.alpha, self.beta, self.gamma)) and dt.is_integral() \
            and abs(dt.norm()) == 1

    def transform(self, C: Mat2) -> Hermitian2x2:
        return Hermitian2x2.from_matrix(mat_mul(mat_mul(mat_star(C), self.matrix), C))


@dataclass
class ReductionStep:
    kind: str
    transform: Mat2
    result: Hermitian2x2
    B: RealSubElement | None = None
    b1: Surd | None = None
    b2: Surd | None = None
    c1: Surd | None = None
    c2: Surd | None = None
    epsilon: Fraction | None = None


@dataclass
class ReductionTrace:
    start: Hermitian2x2
    steps: list[ReductionStep] = field(default_factory=list)

    def composed(self) -> Mat2:
        T = IDENTITY
        for s in self.steps:
            T = mat_mul(T, s.transform)
        return T

    @property
    def final(self) -> Hermitian2x2:
        return self.steps[-1].result if self.steps else self.start


class ReductionError(ValueError):
    pass


def _phi_power(k: int) -> CycloElement:
    base = VARPHI if k >= 0 else VARPHI_INV
    out = ONE
    for _ in range(abs(k)):
        out = out * base
    return out


def _unit_exponent(u: RealSubElement) -> int:
    """k with u = phi^k for a positive unit u (psi1(u) > 0)."""
    k = 0
    x = u.to_cyclo()
    while x.real_part().psi(1) > 1:
        x = x * VARPHI_INV
        k += 1
    while x.real_part().psi(1) < 1:
        x = x * VARPHI
        k -= 1
    if x != ONE:
        raise ReductionError(f"{u} is not a power of phi")
    return k


def reduce_unimodular(P: Hermitian2x2 | Mat2, trace: ReductionTrace | None = None) -> Mat2:
    """Invertible C over Z[zeta_5] with C* C = P.

    Repeatedly replaces P by C* P C: normalize the determinant, balance the
    two embeddings of alpha, reduce beta modulo alpha, swap when that shrinks
    the norm of alpha.  Ends at the identity.
    """
    if not isinstance(P, Hermitian2x2):
        P = Hermitian2x2.from_matrix(P)
    if not P.is_unimodular():
        raise ReductionError("matrix is not unimodular over Z[zeta_5]")
    if not P.is_totally_positive():
        raise ReductionError("matrix is not totally positive")
    tr = trace if trace is not None else ReductionTrace(P)
    tr.start = P
    cur = P

    def apply(kind, C, **extra):
        nonlocal cur
        cur = cur.transform(C)
        tr.steps.append(ReductionStep(kind, C, cur, **extra))

    k = _unit_exponent(cur.det())
    if k % 2:
        raise ReductionError("determinant is not an even power of phi")
    if k:
        apply("determinant", mat(_phi_power(-k // 2), 0, 0, 1))

    for _ in range(10_000):
        # balance psi1(alpha)/psi2(alpha) into [phi^-2, phi^2]
        while True:
            a = cur.alpha.real_part()
            r1, r2 = a.psi(1), a.psi(2)
            phi2 = PHI_REAL * PHI_REAL
            if r1 > phi2 * r2:
                apply("balance", mat(VARPHI_INV, 0, 0, VARPHI))
            elif r1 * phi2 < r2:
                apply("balance", mat(VARPHI, 0, 0, VARPHI_INV))
            else:
                break
        alpha = cur.alpha
        q, _ = euclid_divide(cur.beta, alpha)
        if q:
            apply("shear", mat(1, -q.conj(), 0, 1))
        a = cur.alpha.real_part()
        n_alpha = a.norm()
        B = (cur.beta * cur.beta.conj()).real_part()
        a2 = (cur.alpha * cur.alpha).real_part()
        b1, b2 = B.psi(1) / a2.psi(1), B.psi(2) / a2.psi(2)
        c1, c2 = Surd(Q(1)) / a2.psi(1), Surd(Q(1)) / a2.psi(2)
        stats = dict(B=B, b1=b1, b2=b2, c1=c1, c2=c2, epsilon=1 / n_alpha)
        if tr.steps:
            last = tr.steps[-1]
            for key, val in stats.items():
                setattr(last, key, val)
        if cur.alpha == ONE:
            if cur.beta:
                raise ReductionError("beta not cleared at alpha = 1")
            if cur.gamma != ONE:
                raise ReductionError(f"reduction ended at gamma = {cur.gamma}")
            break
        if n_alpha < 4:
            raise ReductionError(f"totally positive alpha = {cur.alpha} of norm {n_alpha} is not 1")
        apply("swap", SWAP, **stats)
        if not cur.alpha.real_part().norm() < n_alpha:
            raise ReductionError("swap did not decrease the norm of alpha")
    else:
        raise ReductionError("reduction did not terminate")

    T = tr.composed()
    C = mat_inverse(T)
    if not mat_integral(C) or not is_unit(mat_det(C)):
        raise ReductionError("composed transform is not invertible over Z[zeta_5]")
    if mat_mul(mat_star(C), C) != P.matrix:
        raise ReductionError("C* C does not reproduce P")
    return C


def random_invertible(rng: random.Random, steps: int = 4, size: int = 1) -> Mat2:
    """A product of random shears, swaps and unit scalings over Z[zeta_5]."""
    C = IDENTITY
    for _ in range(steps):
        kind = rng.randrange(4)
        if kind == 0:
            q = CycloElement.of(*(rng.randint(-size, size) for _ in range(4)))
            E = mat(1, q, 0, 1) if rng.random() < 0.5 else mat(1, 0, q, 1)
        elif kind == 1:
            E = SWAP
        elif kind == 2:
            u = CycloElement.zeta_power(rng.randrange(5)) * _phi_power(rng.randint(-2, 2))
            E = mat(u, 0, 0, 1) if rng.random() < 0.5 else mat(1, 0, 0, u)
        else:
            E = mat(-1, 0, 0, 1)
        C = mat_mul(C, E)
    return C


# ---------------------------------------------------------------------------
# Frobenius with complex multiplication by Z[zeta_5]
# ---------------------------------------------------------------------------


def quartic_from_real_weil(q: int, h: Sequence[int]) -> list[int]:
    """x^2 h(x + q/x) for monic h = x^2 + a x + b; coefficients constant-first."""
    if len(h) != 3 or h[2] != 1:
        raise ValueError("expected a monic quadratic, constant coefficient first")
    b, a = h[0], h[1]
    return [q * q, a * q, b + 2 * q, a, 1]


def _eval(poly: Sequence[int], x: CycloElement) -> CycloElement:
    out = ZERO
    for c in reversed(poly):
        out = out * x + c
    return out


def _vectors_of_form(value: int):
    """All z in Z^4 with 5|z|^2 - (sum z)^2 = value."""
    r = math.isqrt(value)
    out = []
    # |z_i| <= sqrt(value) since the form dominates |z|^2
    for z in itertools.product(range(-r, r + 1), repeat=3):
        s3 = sum(a * a for a in z)
        if 5 * s3 - sum(z) ** 2 > 5 * value:
            continue
        t = sum(z)
        # solve 5(s3 + w^2) - (t + w)^2 = value, i.e. 4w^2 - 2tw + (5 s3 - t^2 - value) = 0
        A, Bc, Cc = 4, -2 * t, 5 * s3 - t * t - value
        disc = Bc * Bc - 4 * A * Cc
        if disc < 0:
            continue
        sd = math.isqrt(disc)
        if sd * sd != disc:
            continue
        for num in {-Bc + sd, -Bc - sd}:
            if num % (2 * A) == 0:
                out.append(z + (num // (2 * A),))
    return out


def find_frobenius_root(q: int, poly: Sequence[int]) -> CycloElement | None:
    """A root pi in Z[zeta_5] of the quartic with pi * conj(pi) = q, by exhaustive search.

    Such a root has q-form Tr(pi conj pi) = 4q, which bounds the search.
    """
    found = []
    for z in _vectors_of_form(4 * q):
        x = CycloElement.of(*z)
        if x * x.conj() == q and not _eval(poly, x):
            found.append(z)
    if not found:
        return None
    return CycloElement.of(*min(found))


def ring_index(gens: Sequence[CycloElement]) -> int:
    """Index in Z[zeta_5] of the ring Z[gens], or 0 if it has lower rank."""
    from .hermitian import hermite_basis

    monos = [ONE]
    frontier = [ONE]
    seen = {ONE}
    # multiply out until the span stabilizes; degree 3 in each generator suffices
    for _ in range(3 * len(gens)):
        nxt = []
        for m in frontier:
            for g in gens:
                y = m * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        monos += nxt
        frontier = nxt
    rows = [[int(a) for a in m.coords] for m in monos]
    basis = hermite_basis(rows, 4)
    if len(basis) < 4:
        return 0
    return abs(math.prod(next(a for a in row if a) for row in basis))


@dataclass
class CMReport:
    q: int
    charpoly: list[int]
    root: CycloElement | None
    root_is_zero: bool
    generates_ring: bool
    ordinary: bool

    @property
    def ok(self) -> bool:
        return self.root is not None and self.root_is_zero and self.generates_ring and self.ordinary

    def to_dict(self) -> dict:
        return {"q": self.q, "charpoly": self.charpoly,
                "root": [str(a) for a in self.root.coords] if self.root is not None else None,
                "root_is_zero": self.root_is_zero, "generates_ring": self.generates_ring,
                "ordinary": self.ordinary, "ok": self.ok}


def verify_frobenius_cm(q: int, charpoly: Sequence[int], root: CycloElement | None = None) -> CMReport:
    """Check that a quartic Weil polynomial has a root generating Z[zeta_5] with its conjugate.

    charpoly is constant-first and monic of degree 4.  Without an explicit
    root one is searched for among elements of absolute value sqrt(q).
    """
    poly = list(charpoly)
    if len(poly) != 5 or poly[-1] != 1:
        raise ValueError("expected a monic quartic, constant coefficient first")
    pi = root if root is not None else find_frobenius_root(q, poly)
    ordinary = math.gcd(poly[2], q) == 1
    if pi is None:
        return CMReport(q, poly, None, False, False, ordinary)
    is_zero = not _eval(poly, pi)
    gen = ring_index([pi, pi.conj()]) == 1
    return CMReport(q, poly, pi, is_zero, gen, ordinary)
