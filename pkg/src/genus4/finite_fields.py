"""Arithmetic in small finite fields F_q, q = p^k.

Elements are encoded as integers ``0 <= n < q`` whose base-p digits are the
coefficients of the polynomial-basis representation (lowest degree first).
For a prime field the encoding is simply the residue.  Multiplication goes
through discrete log tables; every field we care about has q < 10^4, so all
tables are built eagerly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- bare F_p[x] helpers used only while choosing a modulus -----------------

def _polymod_p(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible_p(poly: list[int], p: int) -> bool:
    """Exhaustive divisor search; fine for the tiny degrees used here."""
    k = len(poly) - 1
    if k <= 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _polymod_p(poly, list(low) + [1], p) == []:
                return False
    return True


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        low = [(n // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        poly = low + [1]
        if _is_irreducible_p(poly, p):
            return tuple(poly)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")


class FieldSpec:
    """The field F_{p^k} = F_p[x]/(modulus)."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        ca = self.coeffs(a)
        cb = self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _polymod_p(prod, list(self.modulus), p) if k > 1 else prod[:1]
        return self.from_coeffs(red)

    def _build_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        gen = None
        for g in range(1, q):
            if all(self._pow_slow(g, order // r) != 1 for r in factors):
                gen = g
                break
        assert gen is not None
        exp = [0] * order
        log = [0] * q
        x = 1
        for e in range(order):
            exp[e] = x
            log[x] = e
            x = self._mul_slow(x, gen)
        self.generator = gen
        self._exp = exp
        self._log = log
        self._digits = [self.coeffs(n) for n in range(q)] if self.k > 1 else None

    def _pow_slow(self, a: int, e: int) -> int:
        r, b = 1, a
        while e:
            if e & 1:
                r = self._mul_slow(r, b)
            b = self._mul_slow(b, b)
            e >>= 1
        return r

    # -- encoding -------------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p**i) % p for i in range(self.k))

    def from_coeffs(self, cs) -> int:
        p = self.p
        n = 0
        for i, c in enumerate(list(cs)[: self.k]):
            n += (c % p) * p**i
        return n

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        return FieldElement(self, self.from_int(value))

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, n) for n in range(self.q)]

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # -- arithmetic on codes --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        da, db = self._digits[a], self._digits[b]
        n = 0
        for i in range(self.k):
            n += ((da[i] + db[i]) % p) * p**i
        return n

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        p = self.p
        return sum(((-d) % p) * p**i for i, d in enumerate(self._digits[a]))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def is_square(self, a: int) -> bool:
        return a == 0 or self.p == 2 or self._log[a] % 2 == 0

    def chi(self, a: int) -> int:
        """Quadratic character (0 at 0)."""
        if a == 0:
            return 0
        return 1 if self.is_square(a) else -1

    def sqrt(self, a: int) -> int | None:
        if a == 0:
            return 0
        la = self._log[a]
        if (self.q - 1) % 2 == 0:
            if la % 2:
                return None
            return self._exp[la // 2]
        # characteristic 2: squaring is a bijection
        return self._exp[(la * ((self.q) // 2)) % (self.q - 1)]

    def nth_root(self, a: int, n: int) -> int | None:
        """Some c with c^n = a, or None."""
        for c in range(self.q):
            if self.pow(c, n) == a:
                return c
        return None

    @cached_property
    def nonsquare(self) -> int:
        """Least element (in encoding order) that is not a square."""
        for a in range(1, self.q):
            if not self.is_square(a):
                return a
        raise ValueError("every element is a square (characteristic 2)")

    @property
    def characteristic(self) -> int:
        return self.p

    # -- numpy tables for the counting kernels --------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.q
        if self.k == 1:
            r = np.arange(q)
            return ((r[:, None] + r[None, :]) % q).astype(np.int32)
        t = np.empty((q, q), dtype=np.int32)
        for a in range(q):
            for b in range(q):
                t[a, b] = self.add(a, b)
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        t = np.zeros((q, q), dtype=np.int32)
        for a in range(1, q):
            for b in range(1, q):
                t[a, b] = self._exp[(self._log[a] + self._log[b]) % (q - 1)]
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int32)

    @cached_property
    def log_table(self) -> np.ndarray:
        t = np.array(self._log, dtype=np.int64)
        t[0] = -1
        return t

    @cached_property
    def chi_table(self) -> np.ndarray:
        return np.array([self.chi(a) for a in range(self.q)], dtype=np.int64)


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    return FieldSpec(p, k, _least_irreducible(p, k))


def field_of_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            n = q
            while n % p == 0:
                n //= p
                k += 1
            if n != 1:
                raise ValueError(f"{q} is not a prime power")
            return make_field(p, k)
    raise ValueError(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.from_int(int(other))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def is_square(self) -> bool:
        return self.field.is_square(self.value)

    def __repr__(self) -> str:
        if self.field.k == 1:
            return f"{self.value}"
        return f"F{self.field.q}{self.coeffs}"


def frobenius_orbit(x: FieldElement) -> set[FieldElement]:
    F = x.field
    orbit = {x}
    y = x
    for _ in range(F.k - 1):
        y = FieldElement(F, F.frobenius(y.value))
        orbit.add(y)
    return orbit


@dataclass(frozen=True)
class PowerResidueTable:
    """root_count[v] = #{z in F_q : z^m = v}."""

    field: FieldSpec
    m: int
    root_count: tuple[int, ...]

    def __getitem__(self, v) -> int:
        if isinstance(v, FieldElement):
            v = v.value
        return self.root_count[v]

    def as_array(self) -> np.ndarray:
        return np.array(self.root_count, dtype=np.int64)


@lru_cache(maxsize=None)
def residue_table(F: FieldSpec, m: int) -> PowerResidueTable:
    if m < 1:
        raise ValueError("exponent must be positive")
    counts = [0] * F.q
    for z in range(F.q):
        counts[F.pow(z, m)] += 1
    return PowerResidueTable(F, m, tuple(counts))


def local_root_count(F: FieldSpec, d: int, w: int) -> int:
    """#{c in F_q : c^d = w} for a unit w; d = 1 gives 1."""
    if d == 1:
        return 1
    return residue_table(F, d).root_count[w]
