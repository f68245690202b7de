"""The table of (q, N) cases, the witness curves, and the bounds report.

The ledger is a JSON file with a version field and a list of records:
`case` records say what any genus-4 curve over F_q with N points must look
like and therefore which search eliminates it; `witness` records hold an
explicit curve; `range` records hold the previously known and the claimed
ranges for N_q(4).  Rows marked none_exist are facts imported from the
isogeny-class analysis and are never recomputed here.
"""
from __future__ import annotations

import json
import logging
import random
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import polys
from .cover_search import DESK_BUDGET, double_covers_given_trace, genus2_double_covers, trace_search_estimate
from .curves import Genus2Curve
from .cyclotomic5 import (
    mat_mul,
    mat_star,
    quartic_from_real_weil,
    random_invertible,
    reduce_unimodular,
    verify_frobenius_cm,
)
from .finite_fields import FieldSpec, field_of_order
from .function_field import CurveFunction, HyperellipticModel
from .hermitian import hermitian_case
from .special_families import (
    hyperelliptic_order4_search,
    kummer5_search,
    superelliptic_count,
    superelliptic_genus,
)

log = logging.getLogger(__name__)

LEDGER_VERSION = 1
STRATEGIES = ("none_exist", "double_cover_elliptic", "hermitian_maximal", "hermitian_nonmaximal",
              "hermitian_zeta5", "composite")
BUDGETS = ("desk", "full")
DELTA_CASES = {-3: "delta12", -4: "delta16", -7: "delta28"}


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------


@dataclass
class CaseRecord:
    q: int
    N: int
    strategy: dict
    notes: str = ""

    def __post_init__(self):
        _check_strategy(self.strategy)

    @property
    def kind(self) -> str:
        return self.strategy["kind"]

    def to_dict(self) -> dict:
        return {"type": "case", "q": self.q, "N": self.N, "strategy": self.strategy, "notes": self.notes}


def _check_strategy(s: dict) -> None:
    kind = s.get("kind")
    if kind not in STRATEGIES:
        raise ValueError(f"unknown strategy tag {kind!r}")
    if kind == "composite":
        for b in s["branches"]:
            _check_strategy(b)


@dataclass
class WitnessRecord:
    """An explicit tower: base curve y^2 = g(x) (or the line) and a cover z^m = f."""

    q: int
    N: int
    base: str | None
    cover: str
    table: str = "lower"

    def to_dict(self) -> dict:
        return {"type": "witness", "q": self.q, "N": self.N, "base": self.base, "cover": self.cover,
                "table": self.table}


@dataclass
class RangeRecord:
    q: int
    old: tuple[int | None, int]
    new: tuple[int, int]

    def to_dict(self) -> dict:
        return {"type": "range", "q": self.q, "old": list(self.old), "new": list(self.new)}


@dataclass
class Ledger:
    version: int
    cases: list[CaseRecord]
    witnesses: list[WitnessRecord]
    ranges: list[RangeRecord]
    order: list[str] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        recs = {"case": iter(self.cases), "witness": iter(self.witnesses), "range": iter(self.ranges)}
        order = self.order or ["case"] * len(self.cases) + ["witness"] * len(self.witnesses) + [
            "range"] * len(self.ranges)
        return {"version": self.version, "records": [next(recs[t]).to_dict() for t in order]}

    def case(self, q: int, N: int) -> CaseRecord:
        for c in self.cases:
            if (c.q, c.N) == (q, N):
                return c
        raise KeyError(f"no ledger row for (q, N) = ({q}, {N})")

    @property
    def lower_table(self) -> list[WitnessRecord]:
        return [w for w in self.witnesses if w.table == "lower"]


def parse_ledger(data: dict) -> Ledger:
    if data.get("version") != LEDGER_VERSION:
        raise ValueError(f"unsupported ledger version {data.get('version')!r}")
    cases, wits, ranges, order = [], [], [], []
    for r in data["records"]:
        t = r["type"]
        order.append(t)
        if t == "case":
            cases.append(CaseRecord(r["q"], r["N"], r["strategy"], r.get("notes", "")))
        elif t == "witness":
            wits.append(WitnessRecord(r["q"], r["N"], r["base"], r["cover"], r.get("table", "lower")))
        elif t == "range":
            ranges.append(RangeRecord(r["q"], tuple(r["old"]), tuple(r["new"])))
        else:
            raise ValueError(f"unknown record type {t!r}")
    return Ledger(data["version"], cases, wits, ranges, order)


def load_ledger(path: Path | None = None) -> Ledger:
    if path is None:
        text = resources.files("genus4").joinpath("data/ledger.json").read_text()
    else:
        text = Path(path).read_text()
    return parse_ledger(json.loads(text))


# ---------------------------------------------------------------------------
# equations
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^(\d*)\*?((?:[xy](?:\^\d+)?)*)$")
_EQ = re.compile(r"^\s*([yz])\s*\^\s*(\d+)\s*=\s*(.+)$")


def parse_polynomial(text: str) -> dict[tuple[int, int], int]:
    """Integer polynomial in x and y, e.g. "xy + 2x^3 - 11x^2 + 1", as {(i, j): c} for c x^i y^j."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    out: dict[tuple[int, int], int] = {}
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        m = _TERM.match(body)
        if not m or (not m.group(1) and not m.group(2)):
            raise ValueError(f"cannot parse term {body!r} in {text!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        i = j = 0
        for var, exp in re.findall(r"([xy])(?:\^(\d+))?", m.group(2)):
            e = int(exp) if exp else 1
            if var == "x":
                i += e
            else:
                j += e
        out[(i, j)] = out.get((i, j), 0) + (coeff if sign == "+" else -coeff)
    if "".join(sign + body for sign, body in re.findall(r"([+-])([^+-]+)", s)) != s:
        raise ValueError(f"malformed polynomial {text!r}")
    return {k: v for k, v in out.items() if v}


def parse_equation(text: str) -> tuple[str, int, dict[tuple[int, int], int]]:
    m = _EQ.match(text)
    if not m:
        raise ValueError(f"malformed equation {text!r}")
    return m.group(1), int(m.group(2)), parse_polynomial(m.group(3))


def _x_poly(F: FieldSpec, terms: dict[tuple[int, int], int], j: int) -> list[int]:
    deg = max((i for (i, jj) in terms if jj == j), default=-1)
    out = [0] * (deg + 1)
    for (i, jj), c in terms.items():
        if jj == j:
            out[i] = F.from_int(c)
    return polys.trim(out)


@dataclass
class WitnessCheck:
    q: int
    N: int
    count: int | None
    genus: int | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.count == self.N and self.genus == 4

    def to_dict(self) -> dict:
        return {"q": self.q, "N": self.N, "count": self.count, "genus": self.genus, "ok": self.ok,
                "error": self.error}


def count_witness(rec: WitnessRecord) -> tuple[int, int | None]:
    """(points, genus) of the smooth model of the tower in rec."""
    F = field_of_order(rec.q)
    var, m, terms = parse_equation(rec.cover)
    if rec.base is None:
        if var != "y" or any(j for (_, j) in terms):
            raise ValueError("a cover of the line must be y^m = f(x)")
        f = _x_poly(F, terms, 0)
        return superelliptic_count(F, m, f), superelliptic_genus(F, m, f)
    bvar, two, bterms = parse_equation(rec.base)
    if bvar != "y" or two != 2 or any(j for (_, j) in bterms) or var != "z":
        raise ValueError("base must be y^2 = g(x) and the cover z^m = a(x) + b(x) y")
    if any(j > 1 for (_, j) in terms):
        raise ValueError("reduce the cover modulo y^2 = g(x) first")
    model = HyperellipticModel(F, _x_poly(F, bterms, 0))
    f = CurveFunction.make(_x_poly(F, terms, 0), _x_poly(F, terms, 1))
    return model.count_cover(f, m), model.cover_genus(f, m)


def verify_witness(rec: WitnessRecord) -> WitnessCheck:
    try:
        n, g = count_witness(rec)
    except ValueError as exc:
        return WitnessCheck(rec.q, rec.N, None, None, str(exc))
    return WitnessCheck(rec.q, rec.N, n, g)


@dataclass
class TableReport:
    checks: list[WitnessCheck]

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.checks)

    def to_dict(self) -> dict:
        return {"rows": [c.to_dict() for c in self.checks], "passed": self.passed, "total": len(self.checks),
                "ok": self.ok}


def verify_table(records: Iterable[WitnessRecord]) -> TableReport:
    return TableReport([verify_witness(r) for r in records])


# ---------------------------------------------------------------------------
# case dispatch
# ---------------------------------------------------------------------------


@dataclass
class Task:
    """One computation a case depends on; shared between cases through its key."""

    key: tuple
    estimate: float
    run: Callable[[], dict] = field(repr=False, compare=False)


def _outcome_dict(out) -> dict:
    return out.to_dict()


def _genus2_curve(q: int, text: str) -> Genus2Curve:
    F = field_of_order(q)
    terms = parse_polynomial(text)
    return Genus2Curve(F, _x_poly(F, terms, 0))


def _tasks(q: int, N: int, s: dict, workers: int, checkpoint_dir: Path | None) -> list[tuple[Task, Callable[[dict], bool]]]:
    """(task, eliminates) pairs for one strategy; eliminates reads the task result."""
    F = field_of_order(q)
    below = lambda res: res.get("max_points") is None or res["max_points"] < N  # noqa: E731
    kind = s["kind"]
    out: list[tuple[Task, Callable[[dict], bool]]] = []
    if kind == "none_exist":
        return out
    if kind == "composite":
        for b in s["branches"]:
            out += _tasks(q, N, b, workers, checkpoint_dir)
        return out
    if kind in ("double_cover_elliptic", "hermitian_maximal", "hermitian_nonmaximal"):
        t = s["trace"]
        out.append((Task(("trace", q, t), trace_search_estimate(F, t),
                         lambda: _outcome_dict(double_covers_given_trace(
                             F, t, workers=workers, checkpoint_dir=checkpoint_dir))), below))
    if kind in ("hermitian_maximal", "hermitian_nonmaximal"):
        for text in s.get("genus2_bases", []):
            out.append((Task(("genus2", q, text), 8.0 * q**4,
                             lambda text=text: _outcome_dict(genus2_double_covers(_genus2_curve(q, text)))), below))
    if kind == "hermitian_maximal" and 2 * (q + 1) >= N:
        out.append((Task(("hyper4", q), 4.0 * q**4,
                         lambda: _outcome_dict(hyperelliptic_order4_search(F, workers=workers))), below))
    if kind == "hermitian_nonmaximal":
        case = DELTA_CASES[s["d_K"]]
        out.append((Task(("hermitian", case), 1e8, lambda: hermitian_case(case)), lambda res: res["ok"]))
    if kind == "hermitian_zeta5":
        h = s["real_weil"]
        out.append((Task(("cm", q, tuple(h)), 1e6,
                         lambda: verify_frobenius_cm(q, quartic_from_real_weil(q, h)).to_dict()),
                    lambda res: res["ok"]))
        out.append((Task(("reduction",), 1e6, reduction_sample), lambda res: res["ok"]))
        out.append((Task(("kummer5", q), 50.0 * q**3, lambda: _outcome_dict(kummer5_search(F))), below))
    return out


def reduction_sample(n: int = 100, seed: int = 5) -> dict:
    """Reduce n random unimodular forms C*C over Z[zeta_5] to the identity."""
    rng = random.Random(seed)
    done = 0
    for _ in range(n):
        C0 = random_invertible(rng, 6)
        P = mat_mul(mat_star(C0), C0)
        C = reduce_unimodular(P)
        if mat_mul(mat_star(C), C) == P:
            done += 1
    return {"instances": n, "reduced": done, "ok": done == n}


@dataclass
class CaseOutcome:
    q: int
    N: int
    status: str  # eliminated | witness-found | budget-exceeded | external | failed
    components: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"q": self.q, "N": self.N, "status": self.status, "components": self.components}


def run_case(rec: CaseRecord, budget: str = "desk", *, workers: int = 1,
             checkpoint_dir: Path | None = None, cache: dict | None = None) -> CaseOutcome:
    """Run every search a ledger row depends on and decide whether (q, N) is eliminated."""
    if budget not in BUDGETS:
        raise ValueError(f"budget must be one of {BUDGETS}")
    _check_strategy(rec.strategy)
    if rec.kind == "none_exist":
        return CaseOutcome(rec.q, rec.N, "external", [{"task": "none_exist",
                                                       "provenance": rec.strategy.get("provenance", "")}])
    tasks = _tasks(rec.q, rec.N, rec.strategy, workers, checkpoint_dir)
    if budget == "desk":
        over = [t for t, _ in tasks if t.estimate > DESK_BUDGET]
        if over:
            comps = [{"task": list(map(str, t.key)), "estimate": f"{t.estimate:.2e}"} for t in over]
            return CaseOutcome(rec.q, rec.N, "budget-exceeded", comps)
    cache = cache if cache is not None else {}
    comps = []
    all_ok = True
    found = False
    for task, eliminates in tasks:
        if task.key not in cache:
            log.info("running %s", task.key)
            cache[task.key] = task.run()
        res = cache[task.key]
        ok = eliminates(res)
        all_ok = all_ok and ok
        mp = res.get("max_points")
        if mp is not None and mp >= rec.N:
            found = True
        comps.append({"task": [str(k) for k in task.key], "result": res, "eliminates": ok})
    status = "eliminated" if all_ok else ("witness-found" if found else "failed")
    return CaseOutcome(rec.q, rec.N, status, comps)


# ---------------------------------------------------------------------------
# bounds report
# ---------------------------------------------------------------------------


@dataclass
class BoundsRow:
    q: int
    lower: int | None
    upper: int
    claimed: tuple[int, int]
    status: str

    @property
    def display(self) -> str:
        return _range_str(self.lower, self.upper)

    def to_dict(self) -> dict:
        return {"q": self.q, "lower": self.lower, "upper": self.upper, "range": self.display,
                "claimed": _range_str(*self.claimed), "status": self.status}


def _range_str(lo, hi) -> str:
    if lo is None:
        return f"-{hi}"
    return str(lo) if lo == hi else f"{lo}-{hi}"


@dataclass
class BoundsReport:
    rows: list[BoundsRow]
    outcomes: list[CaseOutcome]
    witnesses: list[WitnessCheck]

    def to_dict(self) -> dict:
        return {"version": LEDGER_VERSION, "rows": [r.to_dict() for r in self.rows],
                "cases": [o.to_dict() for o in self.outcomes],
                "witnesses": [w.to_dict() for w in self.witnesses]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{'q':>3}  {'computed':>9}  {'claimed':>9}  status", "-" * 40]
        for r in self.rows:
            lines.append(f"{r.q:>3}  {r.display:>9}  {_range_str(*r.claimed):>9}  {r.status}")
        return "\n".join(lines) + "\n"


def bounds_report(ledger: Ledger, outcomes: Sequence[CaseOutcome] = (),
                  witnesses: Sequence[WitnessCheck] = ()) -> BoundsReport:
    """Chain eliminations downward from the old upper bound and combine with verified witnesses.

    A row is 'not run' while some case it depends on has no outcome or some
    witness it depends on was not checked; 'pending' when a case ran out of
    budget; 'matches' or 'differs' against the claimed range otherwise.
    """
    done = {(o.q, o.N): o for o in outcomes}
    checked = {(w.q, w.N): w for w in witnesses}
    rows = []
    for rr in ledger.ranges:
        q = rr.q
        upper = rr.old[1]
        status = "matches"
        cases = {c.N: c for c in ledger.cases if c.q == q}
        while upper in cases:
            rec = cases[upper]
            o = done.get((q, upper))
            if rec.kind == "none_exist":
                upper -= 1
                continue
            if o is None:
                status = "not run"
                break
            if o.status != "eliminated":
                status = "pending" if o.status == "budget-exceeded" else "differs"
                break
            upper -= 1
        lower = rr.old[0]
        for w in ledger.lower_table:
            if w.q != q:
                continue
            chk = checked.get((q, w.N))
            if chk is None:
                if status == "matches":
                    status = "not run"
            elif chk.ok:
                lower = max(lower or 0, w.N)
            elif status in ("matches", "not run"):
                status = "differs"
        if status == "matches" and (lower, upper) != tuple(rr.new):
            status = "differs"
        rows.append(BoundsRow(q, lower, upper, tuple(rr.new), status))
    return BoundsReport(rows, list(outcomes), list(witnesses))


def emit_report(report: BoundsReport, fmt: str = "json") -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "text":
        return report.to_text()
    raise ValueError(f"unknown report format {fmt!r}")


def run_all(ledger: Ledger, budget: str = "desk", *, workers: int = 1,
            checkpoint_dir: Path | None = None) -> BoundsReport:
    cache: dict = {}
    outcomes = [run_case(c, budget, workers=workers, checkpoint_dir=checkpoint_dir, cache=cache)
                for c in ledger.cases]
    table = verify_table(ledger.witnesses)
    return bounds_report(ledger, outcomes, table.checks)
