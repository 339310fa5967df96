"""Simple graphs and exact homomorphism counting.

Every count here is a Python integer; nothing goes through floating point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Iterator

MAX_PATTERN_VERTICES = 12
MAX_PRODUCT_VERTICES = 4096
MAX_CLIQUE_SIZE = 12


class GraphError(ValueError):
    """Malformed graph data or invalid constructor parameters."""


class ResourceLimitError(RuntimeError):
    """A computation was refused because it exceeds a configured bound."""


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 0:
            raise GraphError(f"vertex count must be a nonnegative integer, got {n!r}")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {e} out of range for {n} vertices")
            norm.add((min(u, v), max(u, v)))
        adj = [set() for _ in range(n)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        return cls(vertex_count, frozenset(edges))

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and len(self.components()) == 1

    def __str__(self) -> str:
        return f"Graph(n={self.vertex_count}, edges={self.sorted_edges()})"


# ---------------------------------------------------------------------------
# counting

def _search_order(pattern: Graph) -> list[int]:
    """Vertex order where each vertex (after a component's first) has an earlier neighbour."""
    order, placed = [], set()
    by_degree = sorted(range(pattern.vertex_count), key=lambda v: -pattern.degree(v))
    for root in by_degree:
        if root in placed:
            continue
        frontier = [root]
        placed.add(root)
        while frontier:
            v = frontier.pop(0)
            order.append(v)
            for w in sorted(pattern.neighbors(v), key=lambda x: -pattern.degree(x)):
                if w not in placed:
                    placed.add(w)
                    frontier.append(w)
    return order


def hom_count(pattern: Graph, target: Graph, max_pattern_vertices: int = MAX_PATTERN_VERTICES) -> int:
    """Number of edge-preserving vertex maps ``pattern -> target``."""
    if pattern.vertex_count < 1:
        raise GraphError("pattern must have at least one vertex")
    if pattern.vertex_count > max_pattern_vertices:
        raise ResourceLimitError(
            f"pattern has {pattern.vertex_count} vertices, limit is {max_pattern_vertices}")
    order = _search_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in pattern.neighbors(v) if pos[w] < i] for i, v in enumerate(order)]
    non_isolated = [w for w in range(target.vertex_count) if target.degree(w) > 0]
    all_vertices = list(range(target.vertex_count))
    assign = [0] * pattern.vertex_count
    last = len(order) - 1

    def candidates(i):
        v = order[i]
        prev = back[i]
        if not prev:
            return non_isolated if pattern.degree(v) else all_vertices
        cand = target.neighbors(assign[prev[0]])
        for w in prev[1:]:
            cand = cand & target.neighbors(assign[w])
        return cand

    def extend(i):
        cand = candidates(i)
        if i == last:
            return len(cand)
        total = 0
        v = order[i]
        for x in cand:
            assign[v] = x
            total += extend(i + 1)
        return total

    return extend(0)


def path_hom_vector(target: Graph, max_len: int) -> list[int]:
    """``counts[k] = hom(P_k; target)`` for ``0 <= k <= max_len`` (walk counts)."""
    if max_len < 0:
        raise GraphError("max_len must be nonnegative")
    vec = [1] * target.vertex_count
    counts = [target.vertex_count]
    for _ in range(max_len):
        vec = [sum(vec[w] for w in target.neighbors(v)) for v in range(target.vertex_count)]
        counts.append(sum(vec))
    return counts


def _adjacency_power(target: Graph, k: int) -> list[list[int]]:
    n = target.vertex_count
    mat = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for _ in range(k):
        mat = [[sum(row[u] for u in target.neighbors(c)) for c in range(n)] for row in mat]
    return mat


def cycle_hom(target: Graph, k: int) -> int:
    """``hom(C_k; target) = tr(A^k)``."""
    if k < 3:
        raise GraphError("cycle length must be at least 3")
    mat = _adjacency_power(target, k)
    return sum(mat[i][i] for i in range(target.vertex_count))


def star_hom(target: Graph, k: int) -> int:
    """``hom(S_k; target)``: sum of k-th powers of the degrees, with 0**0 == 1."""
    if k < 0:
        raise GraphError("star size must be nonnegative")
    return sum(d ** k for d in target.degrees())


def clique_hom(target: Graph, p: int, max_clique: int = MAX_CLIQUE_SIZE) -> int:
    """``hom(K_p; target)``: the number of ordered p-cliques."""
    if p < 1:
        raise GraphError("clique size must be at least 1")
    if p > max_clique:
        raise ResourceLimitError(f"clique size {p} exceeds limit {max_clique}")

    def count(size, cand):
        if size == p:
            return 1
        total = 0
        for v in sorted(cand):
            higher = {w for w in cand if w > v} & target.neighbors(v)
            if len(higher) >= p - size - 1:
                total += count(size + 1, higher)
        return total

    return count(0, set(range(target.vertex_count))) * factorial(p)


# ---------------------------------------------------------------------------
# constructions

def tensor_product(g1: Graph, g2: Graph, max_vertices: int = MAX_PRODUCT_VERTICES) -> Graph:
    """Categorical product: ``(a,b) ~ (c,d)`` iff ``a~c`` and ``b~d``."""
    n1, n2 = g1.vertex_count, g2.vertex_count
    if n1 * n2 > max_vertices:
        raise ResourceLimitError(f"product has {n1 * n2} vertices, limit is {max_vertices}")
    edges = set()
    for a, c in g1.edges:
        for b, d in g2.edges:
            edges.add((a * n2 + b, c * n2 + d))
            edges.add((a * n2 + d, c * n2 + b))
    return Graph(n1 * n2, frozenset(edges))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.vertex_count
    edges = set(g1.edges) | {(u + shift, v + shift) for u, v in g2.edges}
    return Graph(g1.vertex_count + g2.vertex_count, frozenset(edges))


def disjoint_union_all(graphs: Iterable[Graph]) -> Graph:
    out = Graph(0)
    for g in graphs:
        out = disjoint_union(out, g)
    return out


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle length must be at least 3")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path(k: int) -> Graph:
    """Path with ``k`` edges (``k+1`` vertices)."""
    if k < 0:
        raise GraphError("path length must be nonnegative")
    return Graph(k + 1, frozenset((i, i + 1) for i in range(k)))


def star(k: int) -> Graph:
    """Star with ``k`` leaves; vertex 0 is the centre."""
    if k < 0:
        raise GraphError("star size must be nonnegative")
    return Graph(k + 1, frozenset((0, i) for i in range(1, k + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0 or a + b < 1:
        raise GraphError("complete bipartite graph needs a, b >= 0 and a + b >= 1")
    return Graph(a + b, frozenset((i, a + j) for i in range(a) for j in range(b)))


def turan(n: int, parts: int) -> Graph:
    """Complete ``parts``-partite graph on ``n`` vertices with balanced parts."""
    if parts < 1 or n < 1:
        raise GraphError("Turan graph needs n >= 1 and parts >= 1")
    part = [i % parts for i in range(n)]
    return Graph(n, frozenset((i, j) for i, j in itertools.combinations(range(n), 2)
                              if part[i] != part[j]))


def empty(n: int) -> Graph:
    return Graph(n)


NAMED = {
    "complete": complete,
    "cycle": cycle,
    "path": path,
    "star": star,
    "complete_bipartite": complete_bipartite,
    "turan": turan,
    "empty": empty,
}


def make_named(family: str, *params: int) -> Graph:
    try:
        builder = NAMED[family]
    except KeyError:
        raise GraphError(f"unknown graph family {family!r}") from None
    try:
        return builder(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {params}") from exc


# ---------------------------------------------------------------------------
# enumeration

def canonical_form(g: Graph) -> tuple:
    """Lexicographically smallest sorted edge list over all relabelings (small graphs only)."""
    n = g.vertex_count
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (n, best or ())


def enumerate_by_canonical_form(n: int) -> list[Graph]:
    """All graphs on exactly ``n`` vertices up to isomorphism, by canonical-form dedup.

    Works layer by layer in the number of edges: every graph with k edges is a
    representative with k-1 edges plus one edge, so only representatives are
    extended. Still factorial in ``n``; meant as an oracle for n <= 6.
    """
    pairs = list(itertools.combinations(range(n), 2))
    layer = {canonical_form(Graph(n, frozenset()))[1]: Graph(n, frozenset())}
    seen = dict(layer)
    while layer:
        nxt = {}
        for g in layer.values():
            for p in pairs:
                if p in g.edges:
                    continue
                h = Graph(n, g.edges | {p})
                key = canonical_form(h)[1]
                if key not in nxt:
                    nxt[key] = h
        seen.update(nxt)
        layer = nxt
    return [seen[k] for k in sorted(seen, key=lambda k: (len(k), k))]


def all_graphs(max_vertices: int = 6, min_vertices: int = 1, allow_seven: bool = False) -> Iterator[Graph]:
    """All graphs with ``min_vertices..max_vertices`` vertices up to isomorphism.

    Uses the networkx graph atlas. Seven vertices must be requested explicitly.
    """
    if max_vertices > 7:
        raise ResourceLimitError("graph enumeration is limited to 7 vertices")
    if max_vertices == 7 and not allow_seven:
        raise ResourceLimitError("7-vertex enumeration requires allow_seven=True")
    from networkx.generators.atlas import graph_atlas_g

    for h in graph_atlas_g():
        n = h.number_of_nodes()
        if n < min_vertices:
            continue
        if n > max_vertices:
            break
        yield Graph(n, frozenset((min(u, v), max(u, v)) for u, v in h.edges()))


# ---------------------------------------------------------------------------
# text format

def parse_graph(text: str) -> Graph:
    """Parse ``n`` on the first line followed by ``u v`` edge lines; ``#`` starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphError("empty graph description")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"first line must be the vertex count, got {lines[0]!r}") from None
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    edges, seen = [], set()
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"edge line must have two integers: {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"edge line must have two integers: {line!r}") from None
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not u < v:
            raise GraphError(f"edge must be written with u < v: {line!r}")
        if v >= n:
            raise GraphError(f"edge {u} {v} out of range for {n} vertices")
        if (u, v) in seen:
            raise GraphError(f"duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, frozenset(edges))


def format_graph(g: Graph) -> str:
    lines = [str(g.vertex_count)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {"vertex_count": g.vertex_count, "edges": [list(e) for e in g.sorted_edges()]}
