"""Homomorphism domination exponents.

``HDE(F1; F2)`` is the largest ``c`` with ``hom(F1; G) >= hom(F2; G)**c`` for
every graph ``G``. For chordal ``F1`` and series-parallel ``F2`` it equals the
value of a linear program over normalized polymatroidal functions on the
vertex subsets of ``F2``. This module builds that LP
exactly and also provides the closed forms for pairs of paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Mapping, Optional, Sequence

import networkx as nx

from .exactlp import Constraint, LinearProgram, Optimal, rat, solve
from .graphs import Graph, path

MAX_TARGET_VERTICES = 8
MAX_HOMS = 200_000


class HdeError(ValueError):
    pass


class EmptyHomSetError(HdeError):
    """Some source component has no homomorphism into the target.

    The LP is then unbounded below: no exponent works on every graph.
    """


# ---------------------------------------------------------------------------
# graph helpers

def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.sorted_edges())
    return h


def maximal_cliques(g: Graph) -> tuple:
    """(sorted list of maximal cliques as frozensets, chordality flag)."""
    h = _to_nx(g)
    cliques = sorted((frozenset(c) for c in nx.find_cliques(h)), key=lambda c: (len(c), sorted(c)))
    return cliques, nx.is_chordal(h)


def is_series_parallel(g: Graph) -> bool:
    """True when g has no K4 minor (each block is series-parallel).

    Repeatedly deletes vertices of degree at most one and suppresses degree-two
    vertices, merging parallel edges; a graph reduces to nothing exactly when it
    has no K4 minor.
    """
    adj = {v: set(g.neighbors(v)) for v in range(g.vertex_count)}
    changed = True
    while changed and adj:
        changed = False
        for v in list(adj):
            deg = len(adj[v])
            if deg <= 1:
                for w in adj[v]:
                    adj[w].discard(v)
                del adj[v]
                changed = True
            elif deg == 2:
                a, b = adj[v]
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    return not adj


def homomorphisms(source: Graph, target: Graph, limit: int = MAX_HOMS) -> Iterator[tuple]:
    """All homomorphisms as tuples phi[v] for source vertices v."""
    n = source.vertex_count
    order = []
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(source.neighbors(v)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in source.neighbors(v) if pos[w] < pos[v]] for v in order]
    phi = [None] * n
    count = 0

    def rec(i):
        nonlocal count
        if i == n:
            count += 1
            if count > limit:
                raise HdeError(f"more than {limit} homomorphisms")
            yield tuple(phi)
            return
        v = order[i]
        if back[i]:
            cands = set(target.neighbors(phi[back[i][0]]))
            for w in back[i][1:]:
                cands &= target.neighbors(phi[w])
        else:
            cands = range(target.vertex_count)
        for x in sorted(cands):
            phi[v] = x
            yield from rec(i + 1)
        phi[v] = None

    yield from rec(0)


@lru_cache(maxsize=256)
def hom_set(source: Graph, target: Graph) -> tuple:
    """Memoized tuple of all homomorphisms source -> target."""
    return tuple(homomorphisms(source, target))


# ---------------------------------------------------------------------------
# c_phi

def clique_intersections(g: Graph) -> list:
    """(sign, vertex set) over nonempty families S of maximal cliques with nonempty intersection.

    The sign is -(-1)^{|S|}; families whose intersection is empty contribute
    p(empty set) = 0 and are pruned together with all their supersets.
    """
    cliques, _ = maximal_cliques(g)
    out = []

    def rec(start, inter, size):
        for k in range(start, len(cliques)):
            nxt = cliques[k] if inter is None else inter & cliques[k]
            if not nxt:
                continue
            out.append((1 if (size + 1) % 2 else -1, nxt))
            rec(k + 1, nxt, size + 1)

    rec(0, None, 0)
    return out


def c_phi_linear(source: Graph, phi: Sequence[int], terms: Optional[list] = None) -> dict:
    """c_phi as a linear form {frozenset of target vertices: coefficient}."""
    if terms is None:
        terms = clique_intersections(source)
    out = {}
    for sign, verts in terms:
        key = frozenset(phi[v] for v in verts)
        out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


def c_phi(source: Graph, phi: Sequence[int], p, target: Optional[Graph] = None) -> Fraction:
    """Evaluate c_phi at p (a mapping or callable on frozensets of target vertices)."""
    if target is not None:
        for u, v in source.edges:
            if phi[v] not in target.neighbors(phi[u]):
                raise HdeError("phi is not a homomorphism")
    get = p if callable(p) else (lambda s: p[frozenset(s)])
    total = Fraction(0)
    for key, coef in c_phi_linear(source, phi).items():
        total += coef * rat(get(key))
    return total


# ---------------------------------------------------------------------------
# the polymatroid system

def separated(g: Graph, a: frozenset, b: frozenset) -> bool:
    """Every path in g from a-b to b-a passes through a&b."""
    blocked = a & b
    src = a - b
    dst = b - a
    if not src or not dst:
        return True
    seen = set(src)
    stack = list(src)
    while stack:
        v = stack.pop()
        if v in dst:
            return False
        for w in g.neighbors(v):
            if w not in blocked and w not in seen:
                seen.add(w)
                stack.append(w)
    return False if seen & dst else True


@dataclass(frozen=True)
class PolymatroidSystem:
    """P(F2) with equalities eliminated.

    ``affine[S]`` is a pair (constant, {free index: coefficient}) expressing
    p(S) through the free coordinates ``free``; ``rows`` are the remaining
    inequalities (a, c) meaning a.z >= c in the free coordinates.
    """
    base_graph: Graph
    subsets: tuple
    free: tuple
    affine: dict
    rows: tuple
    equalities: tuple  # labels of the equality rows that were imposed

    def point(self, z: Sequence) -> dict:
        return {s: _eval_affine(self.affine[s], z) for s in self.subsets}

    def contains(self, p: Mapping) -> bool:
        """Check a full subset function against every defining constraint."""
        return polymatroid_violations(self.base_graph, p) == []


def _eval_affine(form, z) -> Fraction:
    const, coeffs = form
    return const + sum((c * rat(z[i]) for i, c in coeffs.items()), Fraction(0))


def _all_subsets(n: int) -> tuple:
    return tuple(frozenset(c) for k in range(n + 1) for c in combinations(range(n), k))


def _equalities(g: Graph, subsets) -> Iterator[tuple]:
    """(label, {subset: coef}, const) meaning sum coef*p(S) = const."""
    n = g.vertex_count
    yield "empty", {frozenset(): 1}, Fraction(0)
    yield "full", {frozenset(range(n)): 1}, Fraction(1)
    for i, a in enumerate(subsets):
        for b in subsets[i + 1:]:
            if a <= b or b <= a:
                continue
            if separated(g, a, b):
                form = {}
                for s, c in ((a, 1), (b, 1), (a & b, -1), (a | b, -1)):
                    form[s] = form.get(s, 0) + c
                yield f"mod[{sorted(a)}|{sorted(b)}]", form, Fraction(0)


def _inequalities(n: int, subsets) -> Iterator[tuple]:
    """(label, {subset: coef}) meaning sum coef*p(S) >= 0."""
    for a in subsets:
        rest = [i for i in range(n) if i not in a]
        for i in rest:
            yield f"mono[{sorted(a)}+{i}]", {a | {i}: 1, a: -1}
        for i, j in combinations(rest, 2):
            yield f"sub[{sorted(a)};{i},{j}]", {a | {i}: 1, a | {j}: 1, a | {i, j}: -1, a: -1}


def polymatroid_violations(g: Graph, p: Mapping) -> list:
    """Labels of P(F2) constraints that a full subset function violates."""
    subsets = _all_subsets(g.vertex_count)
    val = {s: rat(p[s]) for s in subsets}
    bad = []
    for label, form, const in _equalities(g, subsets):
        if sum(c * val[s] for s, c in form.items()) != const:
            bad.append(label)
    for label, form in _inequalities(g.vertex_count, subsets):
        if sum(c * val[s] for s, c in form.items()) < 0:
            bad.append(label)
    return bad


@lru_cache(maxsize=32)
def polymatroid_system(f2: Graph, max_vertices: int = MAX_TARGET_VERTICES) -> PolymatroidSystem:
    n = f2.vertex_count
    if n > max_vertices:
        raise HdeError(f"target has {n} vertices, limit is {max_vertices}")
    if n == 0:
        raise HdeError("target must have at least one vertex")
    subsets = _all_subsets(n)
    index = {s: k for k, s in enumerate(subsets)}
    # incremental Gaussian elimination over equality rows, kept in reduced form
    pivots = {}  # pivot variable -> (row dict, const)
    labels = []
    for label, form, const in _equalities(f2, subsets):
        row = {index[s]: Fraction(c) for s, c in form.items()}
        const = Fraction(const)
        for pv in [k for k in row if k in pivots]:
            if pv not in row:
                continue
            f = row[pv]
            prow, pconst = pivots[pv]
            for k, c in prow.items():
                row[k] = row.get(k, 0) - f * c
                if row[k] == 0:
                    del row[k]
            const -= f * pconst
        if not row:
            if const != 0:
                raise HdeError("inconsistent polymatroid equalities")
            continue
        pv = min(row)
        inv = 1 / row[pv]
        row = {k: c * inv for k, c in row.items()}
        const *= inv
        for q, (qrow, qconst) in list(pivots.items()):
            if pv in qrow:
                f = qrow[pv]
                nrow = dict(qrow)
                for k, c in row.items():
                    nrow[k] = nrow.get(k, 0) - f * c
                    if nrow[k] == 0:
                        del nrow[k]
                pivots[q] = (nrow, qconst - f * const)
        pivots[pv] = (row, const)
        labels.append(label)
    free_vars = [k for k in range(len(subsets)) if k not in pivots]
    fpos = {k: i for i, k in enumerate(free_vars)}
    affine = {}
    for s in subsets:
        k = index[s]
        if k in pivots:
            row, const = pivots[k]
            affine[s] = (const, {fpos[j]: -c for j, c in row.items() if j != k})
        else:
            affine[s] = (Fraction(0), {fpos[k]: Fraction(1)})
    rows = {}
    for label, form in _inequalities(n, subsets):
        a, c = _linear_in_free(form, affine, len(free_vars))
        if any(a):
            rows.setdefault((a, c), label)
        elif c > 0:
            raise HdeError("polymatroid system is empty")
    row_list = tuple((label, a, c) for (a, c), label in rows.items())
    return PolymatroidSystem(f2, subsets, tuple(subsets[k] for k in free_vars), affine, row_list, tuple(labels))


def _linear_in_free(form: Mapping, affine: Mapping, nfree: int) -> tuple:
    """Turn sum coef*p(S) >= 0 into (a, c) with a.z >= c."""
    a = [Fraction(0)] * nfree
    const = Fraction(0)
    for s, coef in form.items():
        c0, coeffs = affine[s]
        const += coef * c0
        for i, c in coeffs.items():
            a[i] += coef * c
    return tuple(a), -const


def averaged_point(f2: Graph) -> dict:
    """Average of the indicator points p_i(S) = [i in S]: p(S) = |S|/|V|."""
    n = f2.vertex_count
    return {s: Fraction(len(s), n) for s in _all_subsets(n)}


# ---------------------------------------------------------------------------
# sources and the LP

@dataclass(frozen=True)
class SourceSpec:
    components: tuple  # ((Graph, multiplicity), ...)

    def __post_init__(self):
        comps = []
        for g, a in self.components:
            a = rat(a)
            if a < 0:
                raise HdeError("multiplicities must be nonnegative")
            comps.append((g, a))
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def paths(cls, exponents: Mapping[int, object]) -> "SourceSpec":
        return cls(tuple((path(k), a) for k, a in sorted(exponents.items())))

    def validate(self):
        for g, _ in self.components:
            if g.vertex_count == 0 or not g.is_connected():
                raise HdeError("source components must be connected and nonempty")
            if not maximal_cliques(g)[1]:
                raise HdeError("source components must be chordal")


@dataclass(frozen=True)
class HdeLpResult:
    value: Fraction
    point: dict
    target_series_parallel: bool


def hde_lp_solve(source: SourceSpec, f2: Graph) -> HdeLpResult:
    source.validate()
    system = polymatroid_system(f2)
    comps = [(g, a) for g, a in source.components if a != 0]
    nz = len(system.free)
    nvar = nz + len(comps)
    ge = []
    for label, a, c in system.rows:
        ge.append(Constraint(label, a + (Fraction(0),) * len(comps), c))
    seen = set()
    for j, (g, _) in enumerate(comps):
        terms = clique_intersections(g)
        found = False
        for phi in hom_set(g, f2):
            found = True
            form = c_phi_linear(g, phi, terms)
            a, c = _linear_in_free(form, system.affine, nz)
            # t_j - a.z >= -c
            row = tuple(-x for x in a) + tuple(Fraction(1 if k == j else 0) for k in range(len(comps)))
            key = (row, -c)
            if key in seen:
                continue
            seen.add(key)
            ge.append(Constraint(f"c[{j}][{','.join(map(str, phi))}]", row, -c))
        if not found:
            raise EmptyHomSetError(f"component {j} has no homomorphism into the target")
    objective = (Fraction(0),) * nz + tuple(a for _, a in comps)
    lp = LinearProgram(objective, ge)
    out = solve(lp)
    if not isinstance(out, Optimal):  # pragma: no cover - bounded below once Hom sets are nonempty
        raise HdeError(f"unexpected LP outcome {out.status}")
    point = system.point(out.x[:nz])
    return HdeLpResult(out.objective_value, point, is_series_parallel(f2))


def hde_lp(source: SourceSpec, f2: Graph) -> Fraction:
    return hde_lp_solve(source, f2).value


def max_c_at(source: SourceSpec, f2: Graph, p: Mapping) -> Fraction:
    """sum_j alpha_j max_phi c_phi(p): the LP objective at a fixed feasible point."""
    total = Fraction(0)
    for g, a in source.components:
        if a == 0:
            continue
        terms = clique_intersections(g)
        best = None
        for phi in hom_set(g, f2):
            val = sum((coef * p[s] for s, coef in c_phi_linear(g, phi, terms).items()), Fraction(0))
            best = val if best is None or val > best else best
        if best is None:
            raise EmptyHomSetError("empty homomorphism set")
        total += a * best
    return total


# ---------------------------------------------------------------------------
# closed forms for paths

def hde_paths_closed_form(v: int, w: int) -> Fraction:
    """HDE(P_v; P_w) for paths with v and w edges."""
    if v < 0 or w < 0:
        raise HdeError("path lengths must be nonnegative")
    if v >= w:
        return Fraction(1)
    if v % 2 == 0:
        return Fraction(v + 1, w + 1)
    if w % 2 == 0:
        return Fraction(v + 1, w + 2)
    k = -(-(w + 1) // (v + 1))
    return Fraction(k * (v + 1) - v, k * w + 2 * k - w - 1)


def generalized_es_value(u: int, v: int) -> Fraction:
    """Value 2v+1-2u for the source P_{2u}^2 P_{2v+1}^{2v-1-2u} and target P_{2v-1}."""
    return Fraction(2 * v + 1 - 2 * u)


def generalized_es_source(u: int, v: int) -> SourceSpec:
    return SourceSpec.paths({2 * u: 2, 2 * v + 1: 2 * v - 1 - 2 * u})


def second_family_source(u: int) -> SourceSpec:
    """Source P_{2u-2}^{u+1} P_{2u+1} with target P_{2u} and value u+1."""
    return SourceSpec.paths({2 * u - 2: u + 1, 2 * u + 1: 1})
