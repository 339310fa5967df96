"""Binomial inequalities between path homomorphism numbers.

Write ``y_i = log hom(P_i; G)``. A pure binomial inequality
``prod P_i^{a_i} >= prod P_j^{b_j}`` is valid (on graphs where the counts
involved are positive) exactly when the linear functional ``a.y - b.y`` is
nonnegative on the lifted cone ``C(n)`` in coordinates ``y_0..y_{4n+3}``,
where ``2n+1`` is at least the largest path index involved. The checker
minimizes the functional over ``C(n)``: optimum zero gives a certificate
(the LP dual, a conic combination of labeled rows of ``C(n)``); an unbounded
LP gives a violating ray.

The same module decomposes points of the projected cone into rays of the
R-families, which are realized by blow-up graphs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence

from . import blowup, graphs
from .cones import ConeH, RaySet, extreme_rays, hull_h_rep, primitive, tropical_sum, tropical_sum_all
from .exactlp import Constraint, LinearProgram, Optimal, Unbounded, rat, solve
from .graphs import Graph

SEMANTICS = "positive-part"

FAMILY_LETTERS = {"P": "Paths", "C": "Cycles", "S": "Stars", "K": "Cliques", "F": "FVector"}


class InequalityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# binomial inequalities

@dataclass(frozen=True)
class BinomialInequality:
    family: str
    lhs: tuple  # sorted ((index, exponent), ...)
    rhs: tuple

    @classmethod
    def make(cls, family: str, lhs: dict, rhs: dict) -> "BinomialInequality":
        """Build with common factors cancelled and zero exponents dropped."""
        lhs = {int(k): rat(v) for k, v in lhs.items()}
        rhs = {int(k): rat(v) for k, v in rhs.items()}
        for side in (lhs, rhs):
            for k, v in side.items():
                if v < 0:
                    raise InequalityError("exponents must be nonnegative")
                if k < 0:
                    raise InequalityError("indices must be nonnegative")
        for k in set(lhs) & set(rhs):
            m = min(lhs[k], rhs[k])
            lhs[k] -= m
            rhs[k] -= m
        lhs = tuple(sorted((k, v) for k, v in lhs.items() if v))
        rhs = tuple(sorted((k, v) for k, v in rhs.items() if v))
        return cls(family, lhs, rhs)

    @property
    def max_index(self) -> int:
        idx = [k for k, _ in self.lhs + self.rhs]
        return max(idx) if idx else 0

    def functional(self, dim: int, coord=lambda k: k) -> tuple:
        """Coefficient vector of ``a.y - b.y`` in ``dim`` coordinates."""
        out = [Fraction(0)] * dim
        for k, v in self.lhs:
            out[coord(k)] += v
        for k, v in self.rhs:
            out[coord(k)] -= v
        return tuple(out)

    def holds_on_counts(self, counts: dict) -> bool:
        """Exact integer comparison of both sides at the given counts."""
        den = 1
        for _, v in self.lhs + self.rhs:
            den = lcm(den, v.denominator)
        left = 1
        for k, v in self.lhs:
            left *= counts[k] ** int(v * den)
        right = 1
        for k, v in self.rhs:
            right *= counts[k] ** int(v * den)
        return left >= right

    def __str__(self) -> str:
        letter = next((k for k, v in FAMILY_LETTERS.items() if v == self.family), "P")

        def side(terms):
            if not terms:
                return "1"
            parts = []
            for k, v in terms:
                parts.append(f"{letter}{k}" if v == 1 else f"{letter}{k}^{v}")
            return "*".join(parts)

        return f"{side(self.lhs)} >= {side(self.rhs)}"


_TERM = re.compile(r"([A-Z])(\d+)(?:\^(\d+)(?:/(\d+))?)?$")


def _parse_side(text: str) -> tuple:
    text = text.strip()
    if not text:
        raise InequalityError("empty side; write 1 for an empty product")
    if text == "1":
        return None, {}
    out = {}
    letter = None
    for tok in re.split(r"[\s*]+", text):
        if not tok:
            continue
        m = _TERM.match(tok)
        if not m:
            raise InequalityError(f"cannot parse term {tok!r}")
        lt, k, num, den = m.groups()
        if lt not in FAMILY_LETTERS:
            raise InequalityError(f"unknown graph family letter {lt!r}")
        if letter is not None and lt != letter:
            raise InequalityError("mixed graph families in one inequality")
        letter = lt
        if den is not None and int(den) == 0:
            raise InequalityError("zero denominator in exponent")
        e = Fraction(int(num), int(den or 1)) if num is not None else Fraction(1)
        out[int(k)] = out.get(int(k), Fraction(0)) + e
    return letter, out


def parse_terms(text: str) -> tuple:
    """Parse a product of terms (the source grammar); returns (family, (index, exponent))."""
    letter, terms = _parse_side(text)
    return FAMILY_LETTERS.get(letter or "P"), terms


def parse_inequality(text: str) -> BinomialInequality:
    """Parse ``P0^2 * P5^3 >= P3^5`` style text."""
    if text.count(">=") != 1:
        raise InequalityError("expected exactly one '>='")
    left, right = text.split(">=")
    if "-" in text:
        raise InequalityError("negative exponents are not allowed")
    l1, lhs = _parse_side(left)
    l2, rhs = _parse_side(right)
    if l1 and l2 and l1 != l2:
        raise InequalityError("mixed graph families in one inequality")
    letter = l1 or l2 or "P"
    return BinomialInequality.make(FAMILY_LETTERS[letter], lhs, rhs)


def inequality_from_row(row: Sequence, family: str = "Paths") -> BinomialInequality:
    """The binomial inequality whose log form is ``row . y >= 0``."""
    lhs = {i: rat(c) for i, c in enumerate(row) if c > 0}
    rhs = {i: -rat(c) for i, c in enumerate(row) if c < 0}
    return BinomialInequality.make(family, lhs, rhs)


# ---------------------------------------------------------------------------
# the lifted cone

@dataclass(frozen=True)
class PathConeC:
    n: int
    cone: ConeH

    @property
    def dim(self) -> int:
        return 4 * self.n + 4


def _row(dim: int, *entries) -> tuple:
    """Row vector from (index, coefficient) pairs; repeated indices add up."""
    v = [0] * dim
    for k, c in entries:
        v[k] += c
    return tuple(v)


def cone_rows(n: int, literal: bool = False) -> list:
    """Labeled rows of C(n) in family order.

    Family 5.5 includes the boundary case u = v-1 (the inequality
    P_{2v-2}^2 P_{2v+1} >= P_{2v-1}^3). Without it the cone misses valid
    inequalities such as P0^2*P3 >= P1^3; ``literal=True`` drops it and
    reproduces the strict range u < v-1.
    """
    if n < 0:
        raise InequalityError("n must be nonnegative")
    dim = 4 * n + 4
    top = 4 * n + 3
    rows = []

    def add(label, *entries):
        rows.append((label, _row(dim, *entries)))

    for u in range(0, 2 * n + 1):
        add(f"5.1[u={u}]", (2 * u, 1), (2 * u + 1, -2), (2 * u + 2, 1))
    for u in range(0, 2 * n):
        add(f"5.2[u={u}]", (2 * u, 1), (2 * u + 2, -2), (2 * u + 4, 1))
    for u in range(1, 2 * n + 2):
        add(f"5.3[u={u}]", (2 * u, -1), (2 * u + 1, 1))
    for u in range(0, top + 1):
        for v in range(u, top + 1):
            if 2 * u + 2 * v + 3 <= top:
                add(f"5.4[u={u},v={v}]", (2 * u + 1, 1), (2 * v + 1, 1), (2 * u + 2 * v + 3, -1))
    for v in range(1, 2 * n + 2):
        for u in range(0, v - 1 if literal else v):
            add(f"5.5[u={u},v={v}]", (2 * u, 2), (2 * v - 1, -(2 * v + 1 - 2 * u)), (2 * v + 1, 2 * v - 1 - 2 * u))
    for u in range(1, 2 * n + 2):
        add(f"5.6[u={u}]", (2 * u - 2, u + 1), (2 * u, -(u + 1)), (2 * u + 1, 1))
    if 4 <= top:
        add("5.7", (1, 1), (2, -2), (4, 1))
    for v in range(2, 2 * n + 2):
        add(f"5.8[v={v}]", (1, 2), (2 * v - 1, -(2 * v + 1)), (2 * v + 1, 2 * v - 1))
    add("5.9", (1, -1), (2, 1))
    return rows


@lru_cache(maxsize=16)
def build_cone_C(n: int) -> PathConeC:
    rows = cone_rows(n)
    return PathConeC(n, ConeH(4 * n + 4, tuple(r for _, r in rows), tuple(l for l, _ in rows)))


def lift_size(max_index: int) -> int:
    """Smallest n with 2n+1 >= max_index."""
    return max(0, (max_index) // 2)


# ---------------------------------------------------------------------------
# checking

@dataclass(frozen=True)
class Certificate:
    terms: tuple  # ((label, coefficient), ...)

    def to_json(self) -> list:
        return [{"generator": lab, "coeff": str(c)} for lab, c in self.terms]


@dataclass(frozen=True)
class Valid:
    certificate: Certificate
    n: int
    status: str = "valid"


@dataclass(frozen=True)
class Invalid:
    ray: tuple
    n: int
    lift: tuple = ()
    status: str = "invalid"


def check_path_inequality(ineq: BinomialInequality, n: Optional[int] = None):
    """Decide validity; returns :class:`Valid` or :class:`Invalid`."""
    if ineq.family != "Paths":
        raise InequalityError("check_path_inequality needs a path inequality")
    if n is None:
        n = lift_size(ineq.max_index)
    elif 2 * n + 1 < ineq.max_index:
        raise InequalityError("n too small for the inequality")
    pc = build_cone_C(n)
    objective = ineq.functional(pc.dim)
    lp = LinearProgram(objective, [Constraint(lab, row) for lab, row in pc.cone.labeled_rows()])
    out = solve(lp)
    if isinstance(out, Optimal):
        if out.objective_value != 0:  # pragma: no cover - a cone LP is 0 or unbounded
            raise AssertionError("cone LP with nonzero optimum")
        terms = tuple((lab, out.dual[lab]) for lab in pc.cone.labels if out.dual.get(lab))
        return Valid(Certificate(terms), n)
    if isinstance(out, Unbounded):
        ray = out.improving_ray
        return Invalid(tuple(ray[: 2 * n + 2]), n, tuple(ray))
    raise AssertionError("cone LP cannot be infeasible")  # pragma: no cover


def verify_certificate(ineq: BinomialInequality, cert: Certificate, n: Optional[int] = None) -> bool:
    if n is None:
        n = lift_size(ineq.max_index)
    pc = build_cone_C(n)
    acc = [Fraction(0)] * pc.dim
    for lab, c in cert.terms:
        c = rat(c)
        if c < 0:
            return False
        row = pc.cone.row(lab)  # KeyError on unknown label
        for i, a in enumerate(row):
            acc[i] += c * a
    return tuple(acc) == ineq.functional(pc.dim)


def lift_membership(r: Sequence) -> Optional[tuple]:
    """Completion of r (length 2n+2) to a point of C(n), or None."""
    if len(r) % 2 or not r:
        raise InequalityError("expected a vector of even length 2n+2")
    n = len(r) // 2 - 1
    pc = build_cone_C(n)
    eqs = []
    for i, x in enumerate(r):
        e = [0] * pc.dim
        e[i] = 1
        eqs.append(Constraint(f"fix[{i}]", tuple(e), rat(x)))
    lp = LinearProgram(tuple([0] * pc.dim),
                       [Constraint(lab, row) for lab, row in pc.cone.labeled_rows()], eqs)
    out = solve(lp)
    if isinstance(out, Optimal):
        return out.x
    return None


def in_projection(r: Sequence) -> bool:
    return lift_membership(r) is not None


MAX_PROJECTION_N = 2


def projected_cone(n: int) -> ConeH:
    """Half-space description of proj_{2n+1}(C(n)) for small n.

    Computed by projecting the generators of C(n) and converting back, which
    gives the same cone as Fourier-Motzkin elimination.
    """
    if n > MAX_PROJECTION_N:
        raise InequalityError(f"projection is only supported for n <= {MAX_PROJECTION_N}")
    pc = build_cone_C(n)
    rays = extreme_rays(pc.cone)
    k = 2 * n + 2
    proj = RaySet(k, tuple(r[:k] for r in rays.generators() if any(r[:k])))
    return hull_h_rep(proj, prefix="proj")



@lru_cache(maxsize=8)
def projected_generators(n: int) -> tuple:
    """Projections of the generators of C(n) onto the path coordinates."""
    pc = build_cone_C(n)
    k = 2 * n + 2
    return tuple(sorted({primitive(r[:k]) for r in extreme_rays(pc.cone).generators() if any(r[:k])}))


def random_projected_point(n: int, rng, terms: int = 3, max_coeff: int = 4) -> tuple:
    """A random integer point of proj(C(n)).

    Sums a few random generators; with probability one half the result is
    tropically added to a second such sum, since the cone is max-closed.
    """
    gens = projected_generators(n)

    def conic():
        acc = [0] * (2 * n + 2)
        for _ in range(terms):
            g = gens[rng.randrange(len(gens))]
            c = rng.randint(1, max_coeff)
            acc = [a + c * x for a, x in zip(acc, g)]
        return tuple(Fraction(a) for a in acc)

    point = conic()
    if rng.random() < 0.5:
        point = tropical_sum(point, conic())
    return point

# ---------------------------------------------------------------------------
# derived valid rows

def derived_inequality_rows(n: int) -> list:
    """Labeled rows (length 2n+2) of the five derived families, all valid on proj(C(n))."""
    dim = 2 * n + 2
    top = 2 * n + 1
    rows = []

    def add(label, *entries):
        row = _row(dim, *entries)
        if any(row):
            rows.append((label, row))

    for v in range(0, top + 1):
        for u in range(0, v // 2 + 1):
            add(f"D1[u={u},v={v}]", (2 * u, v), (v, -2 * u))
    for v in range(1, top + 1):
        for u in range(0, (v - 1) // 2 + 1):
            add(f"D2[u={u},v={v}]", (2 * u, v - 2 * u - 1), (2 * u + 1, -(v - 2 * u)), (v, 1))
    for v in range(0, top + 1):
        for t in range(0, v // 2 + 1):
            for u in range(0, (v - 1) // 2 + 1):
                add(f"D3[t={t},u={u},v={v}]", (2 * u + 1, v - 2 * t), (2 * t, 2 * (u + 1)), (v, -2 * (u + 1)))
    for v in range(1, n + 1):
        for u in range(0, v):
            add(f"D4[u={u},v={v}]", (2 * u, 2 * v + 1), (2 * v, -(2 * u + 1)))
    for v in range(1, n + 1):
        for u in range(0, v):
            for l in range(0, n - v + 1):
                add(f"D5[u={u},v={v},l={l}]", (2 * u, 2 * (l + 1)), (2 * v - 1, -(2 * v + 2 * l + 1 - 2 * u)), (2 * (v + l) + 1, 2 * v - 1 - 2 * u))
    return rows


# ---------------------------------------------------------------------------
# hand certificates

def power_chain_certificate(l: int, p: int, k: int) -> Certificate:
    """Explicit certificate for P_{2l+pk} P_{2l}^{k-1} >= P_{2l+p}^k when pk is even.

    Uses only rows y_{2i} - 2y_{2i+2} + y_{2i+4} and, for odd p, one row
    y_{2l+p-1} - 2y_{2l+p} + y_{2l+p+1}.
    """
    if (p * k) % 2 or p < 1 or k < 1 or l < 0:
        raise InequalityError("needs p, k >= 1, l >= 0 and pk even")
    half = -(-p // 2)
    coeffs = {}
    for i in range(l, l + half - 1):
        coeffs[f"5.2[u={i}]"] = Fraction((i + 1 - l) * (k - 1))
    if p % 2:
        coeffs[f"5.1[u={(2 * l + p - 1) // 2}]"] = Fraction(k, 2)
    for i in range(l + half - 1, l + p * k // 2 - 1):
        coeffs[f"5.2[u={i}]"] = coeffs.get(f"5.2[u={i}]", Fraction(0)) + (l + Fraction(p * k, 2) - 1 - i)
    return Certificate(tuple((lab, c) for lab, c in coeffs.items() if c))


# ---------------------------------------------------------------------------
# R-families and the decomposition

@dataclass(frozen=True)
class RFamilySpec:
    s: Fraction
    b: Fraction
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", rat(self.s))
        object.__setattr__(self, "b", rat(self.b))
        object.__setattr__(self, "d", tuple(rat(x) for x in self.d))

    def to_json(self) -> dict:
        return {"s": str(self.s), "b": str(self.b), "d": [str(x) for x in self.d]}


def rfamily_check(spec: RFamilySpec) -> bool:
    s, b, d = spec.s, spec.b, spec.d
    if s < 0 or b < 0 or not d:
        return False
    if any(x < 0 for x in d):
        return False
    if not (b - s <= d[0] <= Fraction(2 * b - s, 2)):
        return False
    if not blowup.prefix_dominant(d):
        return False
    return 2 * sum(d[1:], Fraction(0)) <= s


def rfamily_ray(spec: RFamilySpec, n: Optional[int] = None) -> tuple:
    if n is None:
        n = len(spec.d) - 1
    out = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += spec.d[i] if i < len(spec.d) else 0
        out.append(i * spec.s + spec.b)
        out.append((i + 1) * spec.s + acc)
    return tuple(out)


@dataclass(frozen=True)
class DecompositionPart:
    kind: str  # "rfamily" or "special"
    ray: tuple
    l: Optional[int] = None
    spec: Optional[RFamilySpec] = None
    j: Optional[int] = None
    combination: tuple = ()  # special part: ((name, coefficient), ...)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "ray": [str(x) for x in self.ray]}
        if self.kind == "rfamily":
            out.update({"l": self.l, "j": self.j, "spec": self.spec.to_json()})
        else:
            out["combination"] = [{"generator": g, "coeff": str(c)} for g, c in self.combination]
        return out


def _argmax_first(values: list) -> int:
    best = max(values)
    return values.index(best)


def part_for_index(r: Sequence, l: int) -> DecompositionPart:
    """The ray r'_l for a point r with r_1 >= r_0."""
    r = [rat(x) for x in r]
    n = len(r) // 2 - 1
    if l % 2:
        i = (l - 1) // 2
        slopes = [Fraction(2 * (r[2 * i + 1] - r[2 * j]), 2 * i + 1 - 2 * j) for j in range(i + 1)]
        jp = _argmax_first(slopes)
        s = slopes[jp]
        devs = [r[2 * u + 1] - (u + 1) * s for u in range(i + 1)]
        d = []
        acc = Fraction(0)
        for v in range(i + 1):
            dv = min(devs[v:]) - acc
            d.append(dv)
            acc += dv
        d += [Fraction(0)] * (n - i)
    else:
        i = l // 2
        if i == 0:
            jp, s = 0, Fraction(0)
        else:
            slopes = [Fraction(r[2 * i] - r[2 * j], i - j) for j in range(i)]
            jp = _argmax_first(slopes)
            s = slopes[jp]
        bp = r[2 * jp] - jp * s
        d = [bp - s if bp > s else Fraction(0)] + [Fraction(0)] * n
    b = r[2 * jp] - jp * s
    spec = RFamilySpec(s, b, tuple(d))
    return DecompositionPart("rfamily", rfamily_ray(spec, n), l, spec, jp)


def decompose_ray(r: Sequence, check_membership: bool = True) -> list:
    """Split a point of proj(C) into R-family rays whose tropical sum is r."""
    r = tuple(rat(x) for x in r)
    if len(r) % 2 or not r:
        raise InequalityError("expected a vector of even length 2n+2")
    if check_membership and not in_projection(r):
        raise InequalityError("point is not in the projected cone")
    if r[1] >= r[0]:
        return [part_for_index(r, l) for l in range(len(r))]
    star = (r[1],) + r[1:]
    parts = decompose_ray(star, check_membership=False)
    special = (r[0],) + (r[1],) * (len(r) - 1)
    parts.append(DecompositionPart("special", special,
                                   combination=(("e0", r[0] - r[1]), ("ones", r[1]))))
    return parts


def recombine(parts: Iterable[DecompositionPart]) -> tuple:
    return tropical_sum_all([p.ray for p in parts])


# ---------------------------------------------------------------------------
# symmetrization of deviation sequences

def _last_nonzero(d: Sequence) -> int:
    nz = [i for i, x in enumerate(d) if x]
    return nz[-1] if nz else 0


def _r_bar_ok(d: Sequence) -> bool:
    return all(x >= 0 for x in d) and blowup.prefix_dominant(d)


def _almost_symmetric(d: Sequence) -> bool:
    f = _last_nonzero(d)
    spec = blowup.BlowUpSpec(f, d[0], 0, tuple(d))
    return not [c for c in spec.violations(require_s_ge_d0=False) if c in (1, 3, 4, 5, 6)]


def truncate_d(d: Sequence) -> tuple:
    d = [rat(x) for x in d]
    if not _r_bar_ok(d):
        raise InequalityError("d violates nonnegativity or prefix dominance")
    if any(d):
        d[_last_nonzero(d)] = Fraction(0)
    assert _r_bar_ok(d)
    return tuple(d)


def symmetrize_d(d: Sequence) -> tuple:
    """Almost symmetric d' with the same total whose prefix sums are at most those of d.

    Keeps d_w for w < t (t the first index where the prefix reaches half the
    total), mirrors those entries onto the tail, and places the remaining mass
    M at positions t and f-t. When M < d_t the mass is split evenly so that
    every entry stays nonnegative.
    """
    d = [rat(x) for x in d]
    if not _r_bar_ok(d):
        raise InequalityError("d violates nonnegativity or prefix dominance")
    if not any(d):
        return tuple(d)
    f = _last_nonzero(d)
    total = sum(d, Fraction(0))
    acc = Fraction(0)
    t = 0
    for w, x in enumerate(d):
        acc += x
        if 2 * acc >= total:
            t = w
            break
    head = sum(d[:t], Fraction(0))
    mass = total - 2 * head
    out = [Fraction(0)] * len(d)
    for w in range(t):
        out[w] = d[w]
        out[f - w] = d[w]
    if f - t == t:
        out[t] = mass
    elif mass >= d[t]:
        out[t], out[f - t] = d[t], mass - d[t]
    else:
        out[t] = out[f - t] = mass / 2
    # conclusions: almost symmetric, same total, dominated prefix sums
    pre_d = pre_o = Fraction(0)
    for w in range(len(d)):
        pre_d += d[w]
        pre_o += out[w]
        if pre_o > pre_d:
            raise AssertionError("symmetrized sequence is not dominated")
    if pre_o != pre_d or not _r_bar_ok(out) or not _almost_symmetric(out):
        raise AssertionError("symmetrized sequence lost an invariant")
    return tuple(out)


# ---------------------------------------------------------------------------
# witness search

@dataclass(frozen=True)
class Witness:
    graph: Graph
    name: str
    counts: tuple
    lhs_value: int
    rhs_value: int
    source: str  # "search" or "blowup"

    def to_json(self) -> dict:
        return {"name": self.name, "source": self.source,
                "graph": graphs.graph_to_json(self.graph),
                "counts": [str(c) for c in self.counts],
                "lhs": str(self.lhs_value), "rhs": str(self.rhs_value)}


def _scaled_sides(ineq: BinomialInequality, counts: Sequence) -> tuple:
    den = 1
    for _, v in ineq.lhs + ineq.rhs:
        den = lcm(den, v.denominator)
    left = 1
    for k, v in ineq.lhs:
        left *= counts[k] ** int(v * den)
    right = 1
    for k, v in ineq.rhs:
        right *= counts[k] ** int(v * den)
    return left, right, den


def violation(ineq: BinomialInequality, g: Graph) -> Optional[tuple]:
    """(counts, lhs, rhs) if g violates ineq with all involved counts positive."""
    counts = graphs.path_hom_vector(g, ineq.max_index)
    involved = [k for k, _ in ineq.lhs + ineq.rhs]
    if any(counts[k] == 0 for k in involved):
        return None
    left, right, den = _scaled_sides(ineq, counts)
    if left < right:
        return counts, left, right
    return None


def candidate_graphs(max_vertices: int = 7) -> Iterable[tuple]:
    """Search order: unions of two cliques K_a + K_b (2 <= a <= b), then all graphs."""
    for total in range(4, max_vertices + 1):
        for a in range(2, total // 2 + 1):
            b = total - a
            yield f"K{a}+K{b}", graphs.disjoint_union(graphs.complete(a), graphs.complete(b))
    for idx, g in enumerate(graphs.all_graphs(max_vertices, allow_seven=max_vertices >= 7)):
        yield f"atlas[{idx}]", g


def find_witness(ineq: BinomialInequality, max_vertices: int = 7) -> Optional[Witness]:
    for name, g in candidate_graphs(max_vertices):
        hit = violation(ineq, g)
        if hit:
            counts, left, right = hit
            return Witness(g, name, tuple(counts), left, right, "search")
    return None


def _scale_to_integers(ray: Sequence) -> tuple:
    den = 1
    for x in ray:
        den = lcm(den, rat(x).denominator)
    return tuple(int(rat(x) * den) for x in ray)


def _part_graph(part: DecompositionPart, m: int, budget: int) -> Optional[Graph]:
    if part.kind == "special":
        coeffs = dict(part.combination)
        iso = m ** int(coeffs["e0"] + coeffs["ones"])
        copies = m ** int(coeffs["ones"])
        if iso + 2 * copies > budget:
            return None
        g = graphs.disjoint_union_all([graphs.complete(2)] * copies) if copies else graphs.empty(0)
        return graphs.disjoint_union(g, graphs.empty(iso))
    spec = part.spec
    if spec.d[0] != spec.b - spec.s or spec.b < spec.s:
        return None
    bs = blowup.BlowUpSpec.from_d(spec.b, spec.s, spec.d)
    if not bs.is_valid():
        return None
    try:
        return blowup.build_blowup_graph(bs, m, budget)
    except blowup.BlowUpError:
        return None


def blowup_witness(ineq: BinomialInequality, ray: Sequence, budget: int = 4096) -> Optional[Witness]:
    """Realize a violating ray by disjoint unions of blow-ups, where every part allows it."""
    ray = _scale_to_integers(ray)
    try:
        parts = decompose_ray(ray)
    except InequalityError:
        return None
    for m in range(2, 64):
        pieces = []
        size = 0
        for part in parts:
            g = _part_graph(part, m, budget)
            if g is None:
                return None
            pieces.append(g)
            size += g.vertex_count
        if size > budget:
            return None
        g = graphs.disjoint_union_all(pieces)
        hit = violation(ineq, g)
        if hit:
            counts, left, right = hit
            return Witness(g, f"blowup[m={m}]", tuple(counts), left, right, "blowup")
    return None


def check_with_witness(ineq: BinomialInequality, max_vertices: int = 7):
    """Check, and for invalid inequalities also search for a witness graph."""
    res = check_path_inequality(ineq)
    if isinstance(res, Valid):
        return res, None
    w = find_witness(ineq, max_vertices)
    if w is None:
        w = blowup_witness(ineq, res.ray)
    return res, w


def result_to_json(ineq: BinomialInequality, res, witness: Optional[Witness] = None) -> dict:
    if isinstance(res, Valid):
        return {"status": "valid", "inequality": str(ineq), "n": res.n,
                "semantics": SEMANTICS, "certificate": res.certificate.to_json()}
    return {"status": "invalid", "inequality": str(ineq), "n": res.n,
            "semantics": SEMANTICS, "ray": [str(x) for x in res.ray],
            "witness_graph": witness.to_json() if witness else None}
