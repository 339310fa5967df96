"""Exact rational linear programming.

The solver accepts problems of the form::

    minimize    c . x
    subject to  a_i . x >= b_i     (labeled "ge" rows)
                a_j . x  = b_j     (labeled "eq" rows)
                optional per-variable lower/upper bounds

with free variables, and returns one of three certified outcomes. Internally
it runs a two-phase simplex method with Bland's rule on the LP dual, which is
in standard form and has one equality row per primal variable. That keeps the
tableau small when there are many more constraints than variables, which is
the typical shape of every LP in this package.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]


class LPError(ValueError):
    """Malformed linear program (dimension mismatch, duplicate labels)."""


def rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(x)


def rat_vector(xs) -> tuple:
    return tuple(rat(x) for x in xs)


def rat_str(x: Fraction) -> str:
    return str(x)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


@dataclass(frozen=True)
class Constraint:
    label: str
    coeffs: tuple
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", rat_vector(self.coeffs))
        object.__setattr__(self, "rhs", rat(self.rhs))


@dataclass
class LinearProgram:
    objective: tuple
    ge_rows: list = field(default_factory=list)
    eq_rows: list = field(default_factory=list)
    lower: Optional[Sequence[Optional[RatLike]]] = None
    upper: Optional[Sequence[Optional[RatLike]]] = None

    def __post_init__(self):
        self.objective = rat_vector(self.objective)
        n = len(self.objective)
        labels = set()
        for row in list(self.ge_rows) + list(self.eq_rows):
            if len(row.coeffs) != n:
                raise LPError(f"row {row.label!r} has length {len(row.coeffs)}, expected {n}")
            if row.label in labels:
                raise LPError(f"duplicate row label {row.label!r}")
            labels.add(row.label)
        for bounds in (self.lower, self.upper):
            if bounds is not None and len(bounds) != n:
                raise LPError("bound vector length does not match the number of variables")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def inequality_rows(self) -> list:
        """ge rows with the variable bounds appended as rows ``lower[i]``/``upper[i]``."""
        rows = list(self.ge_rows)
        n = self.num_vars
        for name, bounds, sign in (("lower", self.lower, 1), ("upper", self.upper, -1)):
            if bounds is None:
                continue
            for i, bnd in enumerate(bounds):
                if bnd is None:
                    continue
                coeffs = [Fraction(0)] * n
                coeffs[i] = Fraction(sign)
                rows.append(Constraint(f"{name}[{i}]", tuple(coeffs), sign * rat(bnd)))
        return rows


@dataclass(frozen=True)
class Optimal:
    x: tuple
    objective_value: Fraction
    dual: dict
    status: str = "optimal"


@dataclass(frozen=True)
class Unbounded:
    feasible_point: tuple
    improving_ray: tuple
    status: str = "unbounded"


@dataclass(frozen=True)
class Infeasible:
    farkas: dict
    status: str = "infeasible"


LpOutcome = Union[Optimal, Unbounded, Infeasible]


# ---------------------------------------------------------------------------
# standard-form simplex (minimize g.z, M z = q, z >= 0)

class _StandardForm:
    def __init__(self, columns: list, q: list, g: list):
        self.m = len(q)
        self.ncols = len(columns)
        self.sign = [1 if qi >= 0 else -1 for qi in q]
        width = self.ncols + self.m
        rows = []
        for i in range(self.m):
            s = self.sign[i]
            row = [Fraction(0)] * (width + 1)
            for j, col in enumerate(columns):
                v = col[i]
                if v:
                    row[j] = v if s > 0 else -v
            row[self.ncols + i] = Fraction(1)
            row[width] = q[i] if s > 0 else -q[i]
            rows.append(row)
        self.rows = rows
        self.g = list(g)
        self.basis = [self.ncols + i for i in range(self.m)]
        self.width = width

    def _pivot(self, obj: list, pr: int, pc: int):
        rows = self.rows
        prow = rows[pr]
        piv = prow[pc]
        if piv != 1:
            inv = 1 / piv
            for k in range(len(prow)):
                if prow[k]:
                    prow[k] *= inv
        nz = [k for k in range(len(prow)) if prow[k]]
        for r, row in enumerate(rows):
            if r == pr:
                continue
            f = row[pc]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
        f = obj[pc]
        if f:
            for k in nz:
                obj[k] -= f * prow[k]
        self.basis[pr] = pc

    def _run(self, obj: list, allowed: int):
        """Bland's rule iterations; returns None on optimality or the unbounded column."""
        rows = self.rows
        rhs = self.width
        while True:
            enter = -1
            for j in range(allowed):
                if obj[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return None
            best, best_r = None, -1
            for r, row in enumerate(rows):
                a = row[enter]
                if a > 0:
                    ratio = row[rhs] / a
                    if best is None or ratio < best or (ratio == best and self.basis[r] < self.basis[best_r]):
                        best, best_r = ratio, r
            if best_r < 0:
                return enter
            self._pivot(obj, best_r, enter)

    def phase_one(self) -> bool:
        """Drive artificials to zero; returns feasibility."""
        rhs = self.width
        obj = [Fraction(0)] * (self.width + 1)
        for row in self.rows:
            for k in range(self.ncols):
                if row[k]:
                    obj[k] -= row[k]
            obj[rhs] -= row[rhs]
        self._run(obj, self.ncols)
        self.phase1_obj = obj
        if obj[rhs] != 0:
            return False
        # pivot remaining zero-level artificials out where possible
        for r in range(self.m):
            if self.basis[r] >= self.ncols:
                row = self.rows[r]
                for k in range(self.ncols):
                    if row[k]:
                        self._pivot(obj, r, k)
                        break
        return True

    def phase_one_multipliers(self) -> list:
        obj = self.phase1_obj
        return [(1 - obj[self.ncols + i]) * self.sign[i] for i in range(self.m)]

    def phase_two(self):
        rhs = self.width
        obj = [Fraction(0)] * (self.width + 1)
        for j in range(self.ncols):
            obj[j] = self.g[j]
        for r, b in enumerate(self.basis):
            cb = self.g[b] if b < self.ncols else Fraction(0)
            if cb:
                row = self.rows[r]
                for k in range(self.width + 1):
                    if row[k]:
                        obj[k] -= cb * row[k]
        self.phase2_obj = obj
        return self._run(obj, self.ncols)

    def multipliers(self) -> list:
        obj = self.phase2_obj
        return [-obj[self.ncols + i] * self.sign[i] for i in range(self.m)]

    def solution(self) -> list:
        z = [Fraction(0)] * self.ncols
        for r, b in enumerate(self.basis):
            if b < self.ncols:
                z[b] = self.rows[r][self.width]
        return z

    def ray(self, enter: int) -> list:
        d = [Fraction(0)] * self.ncols
        d[enter] = Fraction(1)
        for r, b in enumerate(self.basis):
            if b < self.ncols:
                d[b] = -self.rows[r][enter]
        return d


def _dual_standard_form(objective, ge_rows, eq_rows):
    """Columns of the dual system, one per y_i (ge row) and two per w_j (eq row)."""
    columns, g = [], []
    for row in ge_rows:
        columns.append(row.coeffs)
        g.append(-row.rhs)
    for row in eq_rows:
        columns.append(row.coeffs)
        g.append(-row.rhs)
    for row in eq_rows:
        columns.append(tuple(-c for c in row.coeffs))
        g.append(row.rhs)
    return _StandardForm(columns, list(objective), g)


def _split_dual(z, ge_rows, eq_rows) -> dict:
    k = len(ge_rows)
    e = len(eq_rows)
    out = {}
    for i, row in enumerate(ge_rows):
        out[row.label] = z[i]
    for j, row in enumerate(eq_rows):
        out[row.label] = z[k + j] - z[k + e + j]
    return out


def _farkas_from_ray(d, ge_rows, eq_rows) -> dict:
    return _split_dual(d, ge_rows, eq_rows)


def _feasible_point(n, ge_rows, eq_rows):
    """Either a feasible point (tuple) or a Farkas map."""
    sf = _dual_standard_form([Fraction(0)] * n, ge_rows, eq_rows)
    sf.phase_one()
    enter = sf.phase_two()
    if enter is not None:
        return None, _farkas_from_ray(sf.ray(enter), ge_rows, eq_rows)
    return tuple(-p for p in sf.multipliers()), None


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp`` exactly and return a certified outcome."""
    n = lp.num_vars
    ge_rows = lp.inequality_rows()
    eq_rows = list(lp.eq_rows)
    sf = _dual_standard_form(lp.objective, ge_rows, eq_rows)
    if not sf.phase_one():
        ray = tuple(-p for p in sf.phase_one_multipliers())
        point, farkas = _feasible_point(n, ge_rows, eq_rows)
        if point is None:
            return Infeasible(farkas)
        return Unbounded(point, ray)
    enter = sf.phase_two()
    if enter is not None:
        return Infeasible(_farkas_from_ray(sf.ray(enter), ge_rows, eq_rows))
    x = tuple(-p for p in sf.multipliers())
    dual = _split_dual(sf.solution(), ge_rows, eq_rows)
    return Optimal(x, dot(lp.objective, x), dual)


# ---------------------------------------------------------------------------
# independent certificate checks

def _combination(weights: Mapping[str, Fraction], rows, n) -> list:
    acc = [Fraction(0)] * n
    for row in rows:
        w = weights.get(row.label, Fraction(0))
        if w:
            for i, c in enumerate(row.coeffs):
                if c:
                    acc[i] += w * c
    return acc


def verify_outcome(lp: LinearProgram, outcome: LpOutcome) -> bool:
    """Re-check every certificate identity of ``outcome`` with fresh exact arithmetic."""
    n = lp.num_vars
    ge_rows = lp.inequality_rows()
    eq_rows = list(lp.eq_rows)
    labels = {r.label for r in ge_rows} | {r.label for r in eq_rows}

    def feasible(x):
        return (len(x) == n
                and all(dot(r.coeffs, x) >= r.rhs for r in ge_rows)
                and all(dot(r.coeffs, x) == r.rhs for r in eq_rows))

    if isinstance(outcome, Optimal):
        x = rat_vector(outcome.x)
        if not feasible(x) or dot(lp.objective, x) != outcome.objective_value:
            return False
        dual = {k: rat(v) for k, v in outcome.dual.items()}
        if set(dual) - labels:
            return False
        if any(dual.get(r.label, 0) < 0 for r in ge_rows):
            return False
        if _combination(dual, ge_rows + eq_rows, n) != list(lp.objective):
            return False
        for r in ge_rows:
            if dual.get(r.label, 0) and dot(r.coeffs, x) != r.rhs:
                return False
        dual_value = sum((dual.get(r.label, 0) * r.rhs for r in ge_rows + eq_rows), Fraction(0))
        return dual_value == outcome.objective_value
    if isinstance(outcome, Unbounded):
        x = rat_vector(outcome.feasible_point)
        d = rat_vector(outcome.improving_ray)
        if not feasible(x) or len(d) != n:
            return False
        return (all(dot(r.coeffs, d) >= 0 for r in ge_rows)
                and all(dot(r.coeffs, d) == 0 for r in eq_rows)
                and dot(lp.objective, d) < 0)
    if isinstance(outcome, Infeasible):
        w = {k: rat(v) for k, v in outcome.farkas.items()}
        if set(w) - labels:
            return False
        if any(w.get(r.label, 0) < 0 for r in ge_rows):
            return False
        if any(_combination(w, ge_rows + eq_rows, n)):
            return False
        return sum((w.get(r.label, 0) * r.rhs for r in ge_rows + eq_rows), Fraction(0)) > 0
    return False


def outcome_to_json(outcome: LpOutcome) -> dict:
    if isinstance(outcome, Optimal):
        return {"status": "optimal",
                "x": [rat_str(v) for v in outcome.x],
                "objective_value": rat_str(outcome.objective_value),
                "dual": {k: rat_str(v) for k, v in outcome.dual.items() if v}}
    if isinstance(outcome, Unbounded):
        return {"status": "unbounded",
                "feasible_point": [rat_str(v) for v in outcome.feasible_point],
                "improving_ray": [rat_str(v) for v in outcome.improving_ray]}
    return {"status": "infeasible",
            "farkas": {k: rat_str(v) for k, v in outcome.farkas.items() if v}}
