"""Dense univariate polynomials over a FieldSpec.

A polynomial is a list of element codes, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations

from .finite_fields import FieldSpec

Poly = list[int]


def trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: Poly) -> int:
    return len(a) - 1 if a else -1


def from_ints(F: FieldSpec, coeffs) -> Poly:
    return trim([F.from_int(c) for c in coeffs])


def add(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F.add(x, y))
    return trim(out)


def neg(F: FieldSpec, a: Poly) -> Poly:
    return [F.neg(c) for c in a]


def sub(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    return add(F, a, neg(F, b))


def scale(F: FieldSpec, c: int, a: Poly) -> Poly:
    if c == 0:
        return []
    return [F.mul(c, x) for x in a]


def mul(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def power(F: FieldSpec, a: Poly, e: int) -> Poly:
    r: Poly = [1]
    for _ in range(e):
        r = mul(F, r, a)
    return r


def divmod_(F: FieldSpec, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = deg(b)
    inv = F.inv(b[-1])
    quo = [0] * max(len(a) - db, 0)
    while deg(a) >= db:
        c = F.mul(a[-1], inv)
        shift = deg(a) - db
        quo[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, y))
        a = trim(a)
    return trim(quo), a


def mod(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    return divmod_(F, a, b)[1]


def exact_div(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    quo, rem = divmod_(F, a, b)
    if rem:
        raise ArithmeticError("division is not exact")
    return quo


def monic(F: FieldSpec, a: Poly) -> Poly:
    if not a:
        return []
    return scale(F, F.inv(a[-1]), a)


def gcd(F: FieldSpec, a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def derivative(F: FieldSpec, a: Poly) -> Poly:
    return trim([F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def evaluate(F: FieldSpec, a: Poly, x: int) -> int:
    r = 0
    for c in reversed(a):
        r = F.add(F.mul(r, x), c)
    return r


def compose_linear(F: FieldSpec, a: Poly, u: int, v: int) -> Poly:
    """a(u*x + v)."""
    out: Poly = []
    lin = trim([v, u])
    for c in reversed(a):
        out = add(F, mul(F, out, lin), [c] if c else [])
    return out


def roots(F: FieldSpec, a: Poly) -> list[int]:
    return [x for x in range(F.q) if evaluate(F, a, x) == 0]


def _pth_root(F: FieldSpec, a: Poly) -> Poly:
    p = F.p
    e = F.q // p  # c -> c^(q/p) inverts Frobenius
    return trim([F.pow(a[i], e) for i in range(0, len(a), p)])


def squarefree_decomposition(F: FieldSpec, a: Poly) -> list[tuple[Poly, int]]:
    """[(g_i, i)] with a = lead * prod g_i^i, g_i squarefree, monic, coprime."""
    a = monic(F, a)
    if deg(a) <= 0:
        return []
    out: list[tuple[Poly, int]] = []
    c = gcd(F, a, derivative(F, a))
    w = exact_div(F, a, c)
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        fac = exact_div(F, w, y)
        if deg(fac) > 0:
            out.append((fac, i))
        w = y
        c = exact_div(F, c, y)
        i += 1
    if deg(c) > 0:
        for g, j in squarefree_decomposition(F, _pth_root(F, c)):
            out.append((g, j * F.p))
    # merge equal multiplicities produced by the recursion
    merged: dict[int, Poly] = {}
    for g, j in out:
        merged[j] = mul(F, merged[j], g) if j in merged else g
    return sorted(((g, j) for j, g in merged.items()), key=lambda t: t[1])


def is_squarefree(F: FieldSpec, a: Poly) -> bool:
    if deg(a) <= 0:
        return True
    return all(j == 1 for _, j in squarefree_decomposition(F, a))


def radical(F: FieldSpec, a: Poly) -> Poly:
    r: Poly = [1]
    for g, _ in squarefree_decomposition(F, a):
        r = mul(F, r, g)
    return r


def multiplicity_blocks(F: FieldSpec, polys: list[Poly]) -> list[tuple[int, tuple[int, ...]]]:
    """Partition the geometric roots of the nonzero ``polys`` by multiplicity.

    Returns ``[(n, (m_1, ..., m_r))]``: n roots in the algebraic closure have
    multiplicity m_j in polys[j].
    """
    decomps = [squarefree_decomposition(F, p) if deg(p) > 0 else [] for p in polys]
    rad: Poly = [1]
    for dec in decomps:
        for g, _ in dec:
            rad = mul(F, rad, exact_div(F, g, gcd(F, g, rad)))
    blocks: list[tuple[Poly, tuple[int, ...]]] = [(rad, ())] if deg(rad) > 0 else []
    for dec in decomps:
        refined = []
        for block, mv in blocks:
            rest = block
            for g, j in dec:
                h = gcd(F, rest, g)
                if deg(h) > 0:
                    refined.append((h, mv + (j,)))
                    rest = exact_div(F, rest, h)
            if deg(rest) > 0:
                refined.append((rest, mv + (0,)))
        blocks = refined
    return [(deg(b), mv) for b, mv in blocks]


def to_str(F: FieldSpec, a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        cs = str(c) if F.k == 1 else str(F.coeffs(c))
        if i == 0:
            terms.append(cs)
        elif i == 1:
            terms.append(f"{cs}*{var}")
        else:
            terms.append(f"{cs}*{var}^{i}")
    return " + ".join(terms)
