"""Exhaustive searches for genus-4 double covers z^2 = f of low-genus curves.

Elliptic bases.  After translating a marked point Q = (x0, t) to x = 0 the
curve reads y^2 = x^3 + r x^2 + s x + t^2 and the tangent at Q is
y = m x + t with m = s / (2t).  Every genus-4 double cover can be written
z^2 = f with f in L(8inf - 2Q) or L(7inf - 2Q) for some Q in a fixed set of
representatives of E(k)/3E(k) modulo automorphisms, or with Q = inf and f in
L(6inf) or L(5inf).  The top coefficient is normalized to 1 or the least
nonsquare.

Genus-2 bases.  With inf a fixed rational point, f ranges over
L(6inf - 2D') for effective degree-2 divisors D', up to squares.

Counting trusts the expected ramification shape and only candidates that
beat the running bound get the full genus check.  Candidates are split
into shards on the two leading coefficients; the merge is a max plus the
first valid witness in canonical shard order, so results do not depend on
the number of workers.
"""
from __future__ import annotations

import logging
import multiprocessing as mp
import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import polys
from ._kernels import double_cover_shard, empty_buffers
from .curves import (
    ECPoint,
    EllipticCurve,
    Genus2Curve,
    enumerate_classes,
    q_representatives,
    serre_bound,
    shifted_model,
)
from .finite_fields import FieldSpec, make_field
from .function_field import CurveFunction, HyperellipticModel, Laurent, Place, _series_sqrt
from .polys import Poly

log = logging.getLogger(__name__)

DESK_BUDGET = 2.5e9  # candidate evaluations run without the full-budget flag


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------


@dataclass
class CoverSpec:
    """z^m = sum(coeffs[j] * basis[j]) over a base curve."""

    base: EllipticCurve | Genus2Curve
    m: int
    basis: list[CurveFunction]
    coeffs: list[int]
    branch_data: dict = field(default_factory=dict)
    model: HyperellipticModel | None = None

    @property
    def function(self) -> CurveFunction:
        return combine(self.base.field, self.basis, self.coeffs)

    @property
    def base_model(self) -> HyperellipticModel:
        return self.model if self.model is not None else self.base.model

    def genus(self) -> int | None:
        return self.base_model.cover_genus(self.function, self.m)

    def count(self) -> int:
        return self.base_model.count_cover(self.function, self.m)

    def to_dict(self) -> dict:
        F = self.base.field
        f = self.function
        return {
            "base": repr(self.base),
            "model": polys.to_str(F, self.base_model.F),
            "m": self.m,
            "coeffs": [int(c) for c in self.coeffs],
            "f_a": polys.to_str(F, list(f.a)),
            "f_b": polys.to_str(F, list(f.b)),
            "branch_data": {k: str(v) for k, v in sorted(self.branch_data.items())},
        }


@dataclass
class SearchOutcome:
    max_points: int | None
    witness: CoverSpec | None
    counted: int = 0
    pruned: int = 0
    complete: bool = True

    def to_dict(self) -> dict:
        # counted/pruned depend on scheduling and are left out on purpose
        return {
            "max_points": self.max_points,
            "witness": self.witness.to_dict() if self.witness else None,
            "complete": self.complete,
        }


def combine(F: FieldSpec, basis: Sequence[CurveFunction], coeffs: Sequence[int]) -> CurveFunction:
    a: Poly = []
    b: Poly = []
    for c, g in zip(coeffs, basis):
        if c:
            a = polys.add(F, a, polys.scale(F, int(c), list(g.a)))
            b = polys.add(F, b, polys.scale(F, int(c), list(g.b)))
    return CurveFunction.make(a, b)


# ---------------------------------------------------------------------------
# Riemann-Roch bases over an elliptic curve
# ---------------------------------------------------------------------------


@dataclass
class RRBasis:
    """A basis of a Riemann-Roch space on a fixed model, with its marked point.

    pole_orders are at infinity; marked is the affine point Q (or None when
    Q is the point at infinity).
    """

    model: HyperellipticModel
    functions: list[CurveFunction]
    pole_orders: list[int]
    marked: Place | None
    label: str

    def __len__(self) -> int:
        return len(self.functions)

    def value(self, j: int, P: Place) -> int:
        return evaluate_function(self.model, self.functions[j], P)

    def vanishing_order(self, j: int) -> int:
        if self.marked is None:
            return 0
        return self.model.valuation_and_unit(self.functions[j], self.marked)[0]


def evaluate_function(model: HyperellipticModel, f: CurveFunction, P: Place) -> int:
    K = model.field
    val = polys.evaluate(K, list(f.a), P.x)
    if f.b:
        val = K.add(val, K.mul(polys.evaluate(K, list(f.b), P.x), P.y))
    return val


def _shifted(E: EllipticCurve, Q: ECPoint) -> tuple[HyperellipticModel, int, int, int, int]:
    F = E.field
    r, s, t = shifted_model(E, Q)
    model = HyperellipticModel(F, [F.mul(t, t), s, r, 1])
    m = F.div(s, F.add(t, t))
    return model, r, s, t, m


def rr_basis_8(E: EllipticCurve, Q: ECPoint) -> RRBasis:
    """L(8inf - 2Q) on the model with Q moved to (0, t)."""
    model, _, _, t, m = _shifted(E, Q)
    F = E.field
    nt = F.neg(t)
    fs = [
        CurveFunction.make([0, 0, 0, 0, 1]),
        CurveFunction.make([0, 0, nt], [0, 0, 1]),
        CurveFunction.make([0, 0, 0, 1]),
        CurveFunction.make([0, nt], [0, 1]),
        CurveFunction.make([0, 0, 1]),
        CurveFunction.make([nt, F.neg(m)], [1]),
    ]
    return RRBasis(model, fs, [8, 7, 6, 5, 4, 3], Place("affine", 0, t), "8inf-2Q")


def rr_basis_7(E: EllipticCurve, Q: ECPoint) -> RRBasis:
    """L(7inf - 2Q): drop the x^4 term."""
    B = rr_basis_8(E, Q)
    return RRBasis(B.model, B.functions[1:], B.pole_orders[1:], B.marked, "7inf-2Q")


def rr_basis_at_infinity(E: EllipticCurve, pole: int) -> RRBasis:
    """L(6inf) or L(5inf) on the original model, for Q = inf."""
    if pole not in (5, 6):
        raise ValueError("pole order must be 5 or 6")
    fs = [
        CurveFunction.make([0, 0, 0, 1]),
        CurveFunction.make([], [0, 1]),
        CurveFunction.make([0, 0, 1]),
        CurveFunction.make([], [1]),
        CurveFunction.make([0, 1]),
        CurveFunction.make([1]),
    ]
    orders = [6, 5, 4, 3, 2, 0]
    if pole == 5:
        fs, orders = fs[1:], orders[1:]
    return RRBasis(E.model, fs, orders, None, f"{pole}inf")


def _coeff(L: Laurent, e: int) -> int:
    i = e - L.val
    if L.is_zero or i < 0:
        return 0
    if i >= len(L.coeffs):
        raise ArithmeticError("series precision exhausted")
    return L.coeffs[i]


@dataclass
class KernelTables:
    """Everything the compiled kernel needs for one linear family of functions.

    V[j, i], D[j, i]: value and first-order coefficient of basis function j
    at ordinary point i; QA, QB: t^2 and t^3 coefficients at the marked
    point; base_counts: points over the fixed special places for top
    coefficient 1 and for the least nonsquare.
    """

    add: np.ndarray
    mul: np.ndarray
    cnt: np.ndarray
    V: np.ndarray
    D: np.ndarray
    QA: np.ndarray
    QB: np.ndarray
    has_q: bool
    base_counts: tuple[int, int]

    @property
    def n_points(self) -> int:
        return self.V.shape[1]


def square_class_counts(F: FieldSpec) -> np.ndarray:
    return np.array([1] + [2 if F.is_square(v) else 0 for v in range(1, F.q)], dtype=np.int32)


def kernel_tables(B: RRBasis) -> KernelTables:
    model = B.model
    F = model.field
    places = [P for P in model.affine_places if P != B.marked]
    nb = len(B)
    V = np.zeros((nb, len(places)), dtype=np.int32)
    D = np.zeros((nb, len(places)), dtype=np.int32)
    for i, P in enumerate(places):
        for j, g in enumerate(B.functions):
            S = model.local_series(g, P, prec=3)
            V[j, i] = _coeff(S, 0)
            D[j, i] = _coeff(S, 1)
    QA = np.zeros(nb, dtype=np.int32)
    QB = np.zeros(nb, dtype=np.int32)
    if B.marked is not None:
        for j, g in enumerate(B.functions):
            S = model.local_series(g, B.marked, prec=6)
            if S.val < 2:
                raise ArithmeticError("basis function does not vanish twice at Q")
            QA[j] = _coeff(S, 2)
            QB[j] = _coeff(S, 3)
    if B.pole_orders[0] % 2 == 0:
        lead_sq = F.is_square(_infinity_leading(model, B.functions[0]))
        # 1 + chi(top * lead) points over infinity
        base = (2 if lead_sq else 0, 0 if lead_sq else 2)
    else:
        base = (1, 1)
    return KernelTables(F.add_table.astype(np.int32), F.mul_table.astype(np.int32),
                        square_class_counts(F), V, D, QA, QB, B.marked is not None, base)


def _infinity_leading(model: HyperellipticModel, f: CurveFunction) -> int:
    P = model.infinite_places[0]
    return model.local_series(f, P, prec=2).leading


# ---------------------------------------------------------------------------
# shards
# ---------------------------------------------------------------------------


@dataclass
class Family:
    """A built linear family: kernel tables plus a way to turn coefficients into a cover."""

    tables: KernelTables
    nb: int
    serre: int
    make_spec: object  # callable: coeffs -> object with genus(), count(), to_dict()


@dataclass(frozen=True)
class EllipticRecipe:
    """f in one Riemann-Roch space over a fixed elliptic curve and marked point."""

    q: int
    a: int
    b: int
    Q: ECPoint
    space: str  # '8', '7' (Q affine) or '6', '5' (Q at infinity)

    @property
    def ident(self) -> str:
        qs = "inf" if self.Q.is_infinity else f"{self.Q.x}:{self.Q.y}"
        return f"E{self.a}:{self.b}/Q{qs}/L{self.space}"

    def build(self) -> Family:
        F = field_for(self.q)
        E = EllipticCurve(F, self.a, self.b)
        if self.space == "8":
            B = rr_basis_8(E, self.Q)
        elif self.space == "7":
            B = rr_basis_7(E, self.Q)
        else:
            B = rr_basis_at_infinity(E, int(self.space))
        Q = self.Q

        def make_spec(coeffs):
            return CoverSpec(E, 2, list(B.functions), [int(c) for c in coeffs],
                             {"Q": Q, "space": B.label}, model=B.model)

        return Family(kernel_tables(B), len(B), serre_bound(self.q, 4), make_spec)


@lru_cache(maxsize=64)
def build_family(recipe) -> Family:
    return recipe.build()


@dataclass(frozen=True)
class Shard:
    """One slice of a family: the two leading coefficients are fixed."""

    recipe: object
    top: int
    c1: int

    @property
    def ident(self) -> str:
        return f"{self.recipe.ident}/t{self.top}/c{self.c1}"


def field_for(q: int) -> FieldSpec:
    from .finite_fields import field_of_order

    return field_of_order(q)


def shard_spec(shard: Shard, coeffs: Sequence[int]):
    return build_family(shard.recipe).make_spec(coeffs)


def validate(spec, expected: int | None = None) -> bool:
    if spec.genus() != 4:
        return False
    if expected is not None:
        exact = spec.count()
        if exact != expected:
            raise AssertionError(f"fast count {expected} != exact count {exact} for {spec.to_dict()}")
    return True


@dataclass
class ShardResult:
    ident: str
    best: int | None  # exact best valid count if >= floor, else None
    witness: list[int] | None
    floor: int
    counted: int = 0
    pruned: int = 0


CAPACITY = 1 << 14


def _run_kernel(fam: Family, top: int, c1: int, thr: int, optimistic: bool, cap: int = CAPACITY):
    T = fam.tables
    oc, cn = empty_buffers(fam.nb, cap)
    base = T.base_counts[0 if top == 1 else 1]
    n, overflow, counted, pruned = double_cover_shard(
        T.add, T.mul, T.cnt, T.V, T.D, T.QA, T.QB, T.has_q, base, top, c1,
        thr, optimistic, fam.serre, oc, cn)
    return oc[:n], cn[:n], bool(overflow), int(counted), int(pruned)


def run_shard(shard: Shard, floor: int) -> ShardResult:
    """Exact best valid count in the shard provided it is >= floor."""
    fam = build_family(shard.recipe)
    oc, cn, _, counted, pruned = _run_kernel(fam, shard.top, shard.c1, floor - 1, True)
    best, wit, bad_hi = None, None, None
    for coeffs, c in zip(oc, cn):
        if validate(fam.make_spec(coeffs), int(c)):
            if best is None or c > best:
                best, wit = int(c), [int(x) for x in coeffs]
        elif bad_hi is None or c > bad_hi:
            bad_hi = int(c)
    if bad_hi is not None and (best is None or bad_hi >= best):
        # thresholds were raised past candidates that might be valid: rescan
        best, wit, extra_c, extra_p = _rescan(shard, fam, bad_hi, floor)
        counted += extra_c
        pruned += extra_p
    return ShardResult(shard.ident, best, wit, floor, counted, pruned)


def _rescan(shard: Shard, fam: Family, hi: int, floor: int):
    """Step the threshold down from hi until a valid candidate appears (or floor is reached)."""
    counted = pruned = 0
    c = hi
    while True:
        oc, cn, overflow, k, p = _run_kernel(fam, shard.top, shard.c1, c - 1, False)
        counted += k
        pruned += p
        if overflow:
            raise RuntimeError(f"candidate buffer overflow in shard {shard.ident}")
        best, wit = None, None
        for coeffs, cnt in zip(oc, cn):
            if (best is None or cnt > best) and validate(fam.make_spec(coeffs), int(cnt)):
                best, wit = int(cnt), [int(x) for x in coeffs]
        if best is not None:
            return best, wit, counted, pruned
        if c <= floor:
            return None, None, counted, pruned
        c = max(floor, c - 4)


# ---------------------------------------------------------------------------
# checkpoints
# ---------------------------------------------------------------------------


class Checkpoint:
    """Plain-text shard log: one line `q t shard-id best witness` per finished shard.

    best is an integer or `<F` (nothing valid at or above F); witness is a
    comma-separated coefficient list or `-`.
    """

    def __init__(self, path: Path | None, q: int, t: int | str):
        self.path = path
        self.q = q
        self.t = t
        self.done: dict[str, ShardResult] = {}
        if path is not None and path.exists():
            for line in path.read_text().splitlines():
                parts = line.split()
                if len(parts) != 5 or parts[0] != str(q) or parts[1] != str(t):
                    continue
                _, _, ident, best, wit = parts
                if best.startswith("<"):
                    res = ShardResult(ident, None, None, int(best[1:]))
                else:
                    res = ShardResult(ident, int(best), [int(x) for x in wit.split(",")], int(best))
                self.done[ident] = res

    def record(self, res: ShardResult) -> None:
        self.done[res.ident] = res
        if self.path is None:
            return
        best = f"<{res.floor}" if res.best is None else str(res.best)
        wit = "-" if res.witness is None else ",".join(map(str, res.witness))
        with self.path.open("a") as fh:
            fh.write(f"{self.q} {self.t} {res.ident} {best} {wit}\n")


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------


def family_shards(recipe, q: int, tops: Sequence[int]) -> list[Shard]:
    return [Shard(recipe, top, c1) for top in tops for c1 in range(q)]


def elliptic_shards(E: EllipticCurve) -> list[Shard]:
    F = E.field
    tops = (1, F.nonsquare)
    out = []
    for Q in q_representatives(E):
        spaces = ("6", "5") if Q.is_infinity else ("8", "7")
        for space in spaces:
            out += family_shards(EllipticRecipe(F.q, E.a, E.b, Q, space), F.q, tops)
    return out


_shared_best = None


def _init_worker(best):
    global _shared_best
    _shared_best = best


def _worker(args):
    shard, floor0 = args
    floor = max(floor0, _shared_best.value) if _shared_best is not None else floor0
    res = run_shard(shard, floor)
    if res.best is not None and _shared_best is not None:
        with _shared_best.get_lock():
            if res.best > _shared_best.value:
                _shared_best.value = res.best
    return res


def run_shards(shards: list[Shard], *, floor: int = 0, workers: int = 1,
               checkpoint: Checkpoint | None = None) -> SearchOutcome:
    """Max over shards of the best valid cover; witness from the first shard attaining it."""
    results: dict[str, ShardResult] = {}
    best = floor - 1
    todo = []
    for s in shards:
        if checkpoint is not None and s.ident in checkpoint.done:
            r = checkpoint.done[s.ident]
            results[s.ident] = r
            if r.best is not None:
                best = max(best, r.best)
        else:
            todo.append(s)
    if workers <= 1 or len(todo) < 2:
        for s in todo:
            r = run_shard(s, max(floor, best))
            results[s.ident] = r
            if r.best is not None:
                best = max(best, r.best)
            if checkpoint is not None:
                checkpoint.record(r)
    else:
        ctx = mp.get_context("fork" if os.name == "posix" else "spawn")
        shared = ctx.Value("i", max(best, floor - 1))
        with ctx.Pool(workers, initializer=_init_worker, initargs=(shared,)) as pool:
            for r in pool.imap_unordered(_worker, [(s, floor) for s in todo]):
                results[r.ident] = r
                if checkpoint is not None:
                    checkpoint.record(r)
    counted = sum(r.counted for r in results.values())
    pruned = sum(r.pruned for r in results.values())
    bests = [r.best for r in results.values() if r.best is not None]
    if not bests:
        return SearchOutcome(None, None, counted, pruned)
    top = max(bests)
    for s in shards:
        r = results[s.ident]
        if r.best == top:
            return SearchOutcome(top, shard_spec(s, r.witness), counted, pruned)
    raise AssertionError("unreachable")


def estimate_candidates(q: int, n_units: int) -> float:
    """Candidate count for n_units (class, Q) pairs: both spaces, both top coefficients."""
    return n_units * (2 * q**5 + 2 * q**4)


def double_covers_genus_4(base: EllipticCurve | Genus2Curve, *, floor: int = 0, workers: int = 1,
                          checkpoint: Checkpoint | None = None) -> SearchOutcome:
    if isinstance(base, Genus2Curve):
        return genus2_double_covers(base, floor=floor)
    if base.field.p <= 3:
        raise ValueError("elliptic searches need characteristic > 3")
    return run_shards(elliptic_shards(base), floor=floor, workers=workers, checkpoint=checkpoint)


def trace_shards(F: FieldSpec, t: int) -> list[Shard]:
    return [s for c in enumerate_classes(F, t).classes for s in elliptic_shards(c.representative)]


def double_covers_given_trace(F: FieldSpec, t: int, *, floor: int = 0, workers: int = 1,
                              checkpoint_dir: Path | None = None) -> SearchOutcome:
    """Best genus-4 double cover of any elliptic curve over F with trace t.

    Only covers with at least `floor` points are reported exactly; a result
    of None means every cover has fewer.
    """
    if F.p <= 3:
        raise ValueError("elliptic searches need characteristic > 3")
    if t * t > 4 * F.q:
        raise ValueError(f"trace {t} violates the Hasse bound for q = {F.q}")
    ck = None
    if checkpoint_dir is not None:
        checkpoint_dir.mkdir(parents=True, exist_ok=True)
        ck = Checkpoint(checkpoint_dir / f"trace_{F.q}_{t}.ckpt", F.q, t)
    return run_shards(trace_shards(F, t), floor=floor, workers=workers, checkpoint=ck)


def trace_search_estimate(F: FieldSpec, t: int) -> float:
    units = sum(len(q_representatives(c.representative)) for c in enumerate_classes(F, t).classes)
    return estimate_candidates(F.q, units)


def count_cover_points(spec: CoverSpec, assume_good_divisor: bool = False) -> int:
    """Points on the smooth model of z^m = f.

    With assume_good_divisor every zero of f away from the marked point is
    taken to be simple, which is what the search kernels do.
    """
    f = spec.function
    if f.is_zero:
        raise ValueError("f = 0")
    model = spec.base_model
    if not assume_good_divisor:
        return model.count_cover(f, spec.m)
    F = model.field
    marked = spec.branch_data.get("Q")
    total = 0
    from .finite_fields import residue_table

    tab = residue_table(F, spec.m)
    for P in model.rational_places:
        special = P.is_infinite or (
            isinstance(marked, ECPoint) and not marked.is_infinity and P == Place("affine", 0, marked.y)
        )
        if special:
            total += model.local_count(f, P, spec.m)
            continue
        v = evaluate_function(model, f, P)
        total += 1 if v == 0 else tab.root_count[v]
    return total


# ---------------------------------------------------------------------------
# genus-2 bases
# ---------------------------------------------------------------------------


def _sqrt_at_infinity(F: FieldSpec, f: Poly, n: int) -> list[int]:
    """c_i with sqrt(f) = x^3 * sum c_i x^-i for a monic sextic f."""
    return _series_sqrt(F, list(reversed(f)), 1, n)


def genus2_rr_basis(C: Genus2Curve) -> tuple[list[CurveFunction], list[int], Place]:
    """Basis of L(6inf) for a chosen rational point inf, with pole orders."""
    F = C.field
    model = C.model
    f = C.f
    if polys.deg(f) == 5:
        fs = [CurveFunction.make([1]), CurveFunction.make([0, 1]), CurveFunction.make([0, 0, 1]),
              CurveFunction.make([], [1]), CurveFunction.make([0, 0, 0, 1])]
        return fs, [0, 2, 4, 5, 6], model.infinite_places[0]
    if f[-1] != 1:
        raise ValueError("sextic model must be monic")
    ser = _sqrt_at_infinity(F, f, 7)
    fs = [CurveFunction.make([1])]
    for j in range(4):
        # polynomial part of x^j sqrt(f) cancels x^j y at one of the two points at infinity
        a = [ser[3 + j - d] for d in range(4 + j)]
        fs.append(CurveFunction.make(a, [0] * j + [1]))
    inf = Place("inf", sign=1)
    if model.valuation_and_unit(fs[1], inf)[0] >= 0:
        inf = Place("inf", sign=-1)
    return fs, [0, 3, 4, 5, 6], inf


def _nullspace(F: FieldSpec, rows: list[list[int]], n: int) -> list[list[int]]:
    """Basis of {v in F^n : rows . v = 0} via row reduction."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][col])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                c = M[i][col]
                M[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(M[i][fc])
        out.append(v)
    return out


def degree2_divisors(C: Genus2Curve) -> list[tuple[str, tuple]]:
    """Effective degree-2 divisors: unordered pairs of rational places, then quadratic places.

    A quadratic place is recorded as ("quad", (x0, y0)) with coordinates in
    F_{q^2}; ("quadx", (x0,)) marks the pair over a rational x0 with f(x0) a
    nonsquare.
    """
    model = C.model
    F = C.field
    pts = model.rational_places
    out: list[tuple[str, tuple]] = []
    for i in range(len(pts)):
        for j in range(i, len(pts)):
            out.append(("pair", (pts[i], pts[j])))
    for x0 in range(F.q):
        v = polys.evaluate(F, C.f, x0)
        if v and not F.is_square(v):
            out.append(("quadx", (x0,)))
    if F.k != 1:
        raise NotImplementedError("degree-2 places are implemented for prime fields only")
    big = make_field(F.p, 2)
    for x0 in range(F.q, big.q):
        if big.frobenius(x0) < x0:
            continue  # one x per conjugate pair
        v = polys.evaluate(big, C.f, x0)
        if v == 0:
            out.append(("quad", (x0, 0)))
        elif big.is_square(v):
            r = big.sqrt(v)
            for y0 in sorted({r, big.neg(r)}):
                out.append(("quad", (x0, y0)))
    return out


@lru_cache(maxsize=8)
def _extended_model(p: int, f: tuple[int, ...]) -> HyperellipticModel:
    return HyperellipticModel(make_field(p, 2), list(f))


def _conditions(C: Genus2Curve, basis: list[CurveFunction], D: tuple[str, tuple], inf: Place):
    """Linear conditions over F_q for f in span(basis) to lie in L(6inf - 2D')."""
    F = C.field
    model = C.model
    kind, data = D
    rows: list[list[int]] = []
    if kind == "pair":
        P, R = data
        mult = {P: 2} if P != R else {P: 4}
        if P != R:
            mult[R] = 2
        for X, k in mult.items():
            series = [model.local_series(g, X, prec=k + 8) for g in basis]
            lo = min(s.val for s in series if not s.is_zero)
            for e in range(lo, k + (-6 if X == inf else 0)):
                rows.append([_coeff(s, e) for s in series])
        return rows
    # quadratic places: work over F_{q^2}, whose prime-field codes embed unchanged
    big = make_field(F.p, 2)
    bigF = list(C.f)
    if kind == "quad":
        x0, y0 = data
    else:
        (x0,) = data
        y0 = big.sqrt(polys.evaluate(big, bigF, x0))
    bigmodel = _extended_model(F.p, tuple(bigF))
    P = Place("affine", x0, y0)
    series = [bigmodel.local_series(g, P, prec=6) for g in basis]
    for e in range(0, 2):
        row = [_coeff(s, e) for s in series]
        # split each F_{q^2} entry into its two F_q digits
        rows.append([c % F.p for c in row])
        rows.append([c // F.p for c in row])
    return rows


def genus2_double_covers(C: Genus2Curve, *, floor: int = 0) -> SearchOutcome:
    """Best genus-4 double cover z^2 = f, f in L(6inf - 2D'), of a genus-2 curve."""
    F = C.field
    if F.p == 2:
        raise ValueError("characteristic 2 not supported")
    model = C.model
    basis, _, inf = genus2_rr_basis(C)
    nu = F.nonsquare
    serre = serre_bound(F.q, 4)
    best, witness = floor - 1, None
    counted = 0
    for D in degree2_divisors(C):
        rows = _conditions(C, basis, D, inf)
        null = _nullspace(F, rows, len(basis))
        for vec in _projective_points(F, null):
            for scale in (1, nu):
                coeffs = [F.mul(scale, c) for c in vec]
                f = combine(F, basis, coeffs)
                if f.is_zero:
                    continue
                counted += 1
                n = model.count_cover(f, 2)
                if n > serre or n < best or (n == best and witness is not None):
                    continue
                if model.cover_genus(f, 2) == 4:
                    best = n
                    witness = CoverSpec(C, 2, basis, coeffs, {"D'": _describe(D)}, model=model)
    if witness is None:
        return SearchOutcome(None, None, counted, 0)
    return SearchOutcome(best, witness, counted, 0)


def _describe(D: tuple[str, tuple]) -> str:
    kind, data = D
    if kind == "pair":
        return " + ".join("inf%+d" % P.sign if P.is_infinite else f"({P.x},{P.y})" for P in data)
    return f"{kind}{data}"


def _projective_points(F: FieldSpec, basis: list[list[int]]) -> Iterable[list[int]]:
    """Representatives of nonzero vectors of span(basis) modulo F^*."""
    k = len(basis)
    if k == 0:
        return
    n = len(basis[0])
    for lead in range(k):
        for rest in product(range(F.q), repeat=k - lead - 1):
            coeffs = [0] * lead + [1] + list(rest)
            v = [0] * n
            for c, b in zip(coeffs, basis):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
            yield v
