"""Weighted paths, blow-up graphs and their limit log-homomorphism rays.

A :class:`BlowUpSpec` ``(f, b, s, d)`` determines weights ``p`` on the vertices
and edges of a path with ``2f+1`` edges. Blowing vertex ``v`` up to a stable
set of ``m**p(v)`` vertices, and joining consecutive sets by ``m**p(e)``
edges, gives graphs ``B_m`` whose path counts grow like ``m**r_i`` where
``r_i`` is the largest weight of a walk of length ``i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exactlp import rat
from .graphs import Graph, GraphError

MAX_BLOWUP_VERTICES = 4096


class BlowUpError(ValueError):
    pass


@dataclass(frozen=True)
class BlowUpSpec:
    f: int
    b: Fraction
    s: Fraction
    d: tuple

    def __post_init__(self):
        if self.f < 0:
            raise BlowUpError("f must be nonnegative")
        object.__setattr__(self, "b", rat(self.b))
        object.__setattr__(self, "s", rat(self.s))
        d = [rat(x) for x in self.d]
        if len(d) < self.f + 1:
            d += [Fraction(0)] * (self.f + 1 - len(d))
        object.__setattr__(self, "d", tuple(d))

    @classmethod
    def from_d(cls, b, s, d) -> "BlowUpSpec":
        """Spec with f equal to the index of the last nonzero entry of d."""
        d = [rat(x) for x in d]
        nz = [i for i, x in enumerate(d) if x]
        return cls(nz[-1] if nz else 0, b, s, tuple(d))

    def dv(self, v: int) -> Fraction:
        return self.d[v] if v < len(self.d) else Fraction(0)

    @property
    def t(self) -> int:
        """Largest index t <= f/2 with d_t > 0 (0 when there is none)."""
        cands = [u for u in range(self.f // 2 + 1) if self.dv(u) > 0]
        return cands[-1] if cands else 0

    def violations(self, require_s_ge_d0: bool = True) -> list:
        """Numbers of the defining conditions that fail (empty when valid)."""
        f, b, s, t = self.f, self.b, self.s, self.t
        d = list(self.d)
        n = len(d) - 1
        bad = []
        if not (b >= s >= 0):
            bad.append(0)
        if any(x < 0 for x in d):
            bad.append(1)
        if d[0] != b - s:
            bad.append(2)
        if not prefix_dominant(d):
            bad.append(3)
        if any(self.dv(u) != self.dv(f - u) for u in range(t)):
            bad.append(4)
        if any(self.dv(u) != 0 for u in range(t + 1, f - t)):
            bad.append(5)
        if not (self.dv(t) >= self.dv(f - t) >= 0):
            bad.append(6)
        if any(self.dv(u) != 0 for u in range(f + 1, n + 1)) or 2 * sum(d[1:f + 1]) > s:
            bad.append(7)
        if require_s_ge_d0 and t == 0 and s < d[0]:
            bad.append(8)
        return bad

    def is_valid(self, require_s_ge_d0: bool = True) -> bool:
        return not self.violations(require_s_ge_d0)

    def validate(self, require_s_ge_d0: bool = True) -> None:
        bad = self.violations(require_s_ge_d0)
        if bad:
            raise BlowUpError(f"spec violates condition(s) {bad}")

    def realization_path(self) -> str:
        """``direct`` when a single blow-up realizes the ray, else ``conic``.

        In the conic case (t = 0 and s < d_0) the ray is the sum of a directly
        realizable ray and a multiple of the all-ones ray.
        """
        self.validate(require_s_ge_d0=False)
        return "conic" if self.t == 0 and self.s < self.d[0] else "direct"

    def conic_parts(self) -> tuple:
        """For the conic case: (direct spec, multiple of the all-ones ray)."""
        if self.realization_path() != "conic":
            return self, Fraction(0)
        f = self.f
        df = self.dv(f)
        d = [Fraction(0)] * len(self.d)
        d[0] = df
        d[f] = df
        return BlowUpSpec(f, self.b - self.d[0] + df, self.s, tuple(d)), self.d[0] - df


def random_valid_spec(rng, f: int, max_entry: int = 5) -> BlowUpSpec:
    """A random spec of length f satisfying every condition, drawn with ``rng``.

    Builds the mirrored shape around t directly and rejects samples that fail
    prefix dominance.
    """
    if f < 0:
        raise BlowUpError("f must be nonnegative")
    while True:
        t = rng.randint(0, f // 2)
        d = [0] * (f + 1)
        for u in range(t):
            d[u] = d[f - u] = rng.randint(0, max_entry)
        d[t] = rng.randint(1 if t else 0, max_entry)
        if f - t != t:
            d[f - t] = rng.randint(0, d[t])
        if not prefix_dominant(d):
            continue
        s = 2 * sum(d[1:]) + rng.randint(0, max_entry)
        if t == 0:
            s = max(s, d[0])
        spec = BlowUpSpec(f, s + d[0], s, tuple(d))
        if spec.is_valid():
            return spec


def prefix_dominant(d: Sequence) -> bool:
    """d_0+...+d_u >= d_{v-u}+...+d_v for all 0 <= u < v < len(d)."""
    pre = [Fraction(0)]
    for x in d:
        pre.append(pre[-1] + x)
    n = len(d)
    for v in range(n):
        for u in range(v):
            if pre[u + 1] < pre[v + 1] - pre[v - u]:
                return False
    return True


@dataclass(frozen=True)
class WeightedPath:
    vertex_weights: tuple
    edge_weights: tuple

    def __post_init__(self):
        vw = tuple(rat(x) for x in self.vertex_weights)
        ew = tuple(rat(x) for x in self.edge_weights)
        if len(ew) != max(len(vw) - 1, 0):
            raise BlowUpError("a path with k+1 vertices needs k edge weights")
        object.__setattr__(self, "vertex_weights", vw)
        object.__setattr__(self, "edge_weights", ew)

    @property
    def length(self) -> int:
        return len(self.edge_weights)

    def is_admissible(self) -> bool:
        p, e = self.vertex_weights, self.edge_weights
        if any(x < 0 for x in p + e):
            return False
        return all(max(p[k], p[k + 1]) <= e[k] <= p[k] + p[k + 1] for k in range(len(e)))


def weight_function(spec: BlowUpSpec, require_s_ge_d0: bool = True,
                    check_admissible: bool = True) -> WeightedPath:
    """Vertex and edge weights of the spec's path.

    For even f with d_t > d_{f-t} the middle edge weight can exceed the sum of
    its endpoint weights; such weights still give the right walk maxima but
    no finite blow-up has that many edges, so by default they are rejected.
    """
    spec.validate(require_s_ge_d0)
    f, b, s = spec.f, spec.b, spec.s
    d = spec.dv
    t = spec.t
    p = {0: b, 1: d(0)}
    for u in range(1, (f - 1) // 2 + 1):
        p[2 * u + 1] = d(0) + 2 * sum((d(v) for v in range(1, u + 1)), Fraction(0))
    for u in range(1, f // 2 + 1):
        p[2 * u] = s - d(0) - 2 * sum((d(v) for v in range(1, u)), Fraction(0))
    for u in range(f + 1):
        if 2 * f + 1 - u not in p:
            p[2 * f + 1 - u] = p[u]
    # edge k joins vertices k and k+1
    e = {}
    for u in range((f - 1) // 2 + 1):
        e[2 * u] = s + d(u)
    for u in range(1, f // 2 + 1):
        e[2 * u - 1] = s
    if f % 2 == 0:
        e[f] = s + d(f // 2) - d(t) + d(f - t)
    else:
        e[f] = p[f] + p[f + 1] - d(t) + d(f - t)
    for u in range(f):
        e[2 * f - u] = e[u]
    wp = WeightedPath(tuple(p[v] for v in range(2 * f + 2)),
                      tuple(e[k] for k in range(2 * f + 1)))
    if check_admissible and not wp.is_admissible():
        bad = [k for k in range(len(wp.edge_weights))
               if not max(wp.vertex_weights[k], wp.vertex_weights[k + 1]) <= wp.edge_weights[k]
               <= wp.vertex_weights[k] + wp.vertex_weights[k + 1]]
        raise BlowUpError(f"weights are not admissible on edge(s) {bad}")
    return wp


def max_weight_hom_vector(wp: WeightedPath, max_len: int) -> tuple:
    """Entry i is the largest p(phi) over homomorphisms phi of P_i into the weighted path."""
    p, e = wp.vertex_weights, wp.edge_weights
    nv = len(p)
    if nv == 1 and max_len > 0:
        raise BlowUpError("a single vertex has no walks of positive length")
    best = list(p)
    out = [max(best)]
    for _ in range(max_len):
        nxt = []
        for v in range(nv):
            cands = []
            if v > 0:
                cands.append(best[v - 1] + e[v - 1] - p[v - 1])
            if v < nv - 1:
                cands.append(best[v + 1] + e[v] - p[v + 1])
            nxt.append(max(cands))
        best = nxt
        out.append(max(best))
    return tuple(out)


def max_weight_hom(wp: WeightedPath, i: int) -> Fraction:
    return max_weight_hom_vector(wp, i)[i]


def limit_ray(spec: BlowUpSpec, n: int) -> tuple:
    """Closed-form ray (r_0, ..., r_{2n+1})."""
    spec.validate(require_s_ge_d0=False)
    out = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += spec.dv(i)
        out.append(spec.b + i * spec.s)
        out.append((i + 1) * spec.s + acc)
    return tuple(out)


def walk_weight_sum(wp: WeightedPath, i: int, m: int) -> int:
    """Sum over homomorphisms phi of P_i into the path of m**p(phi), for integer weights."""
    p, e = wp.vertex_weights, wp.edge_weights
    if any(x.denominator != 1 for x in p + e):
        raise BlowUpError("exact walk sums need integer weights")
    nv = len(p)
    cur = [m ** int(x) for x in p]
    for _ in range(i):
        nxt = [0] * nv
        for v in range(nv):
            if v > 0:
                nxt[v] += cur[v - 1] * m ** int(e[v - 1] - p[v - 1])
            if v < nv - 1:
                nxt[v] += cur[v + 1] * m ** int(e[v] - p[v + 1])
        cur = nxt
    return sum(cur)


def walk_count(nv: int, i: int) -> int:
    """Number of walks of length i in a path with nv vertices."""
    cur = [1] * nv
    for _ in range(i):
        cur = [(cur[v - 1] if v > 0 else 0) + (cur[v + 1] if v < nv - 1 else 0) for v in range(nv)]
    return sum(cur)


def iroot(x: int, k: int) -> int:
    lo, hi = 0, 1
    while hi ** k <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** k <= x:
            lo = mid
        else:
            hi = mid
    return lo


def rounded_power(m: int, p: Fraction) -> int:
    """m**p rounded to the nearest integer, computed exactly."""
    p = rat(p)
    if p < 0:
        raise BlowUpError("negative weight")
    num, den = p.numerator, p.denominator
    value = m ** num
    x = iroot(value, den)
    # pick x+1 when the real root is at least x + 1/2
    return x + 1 if (2 * x + 1) ** den <= value * 2 ** den else x


def build_blowup_graph(wp, m: int, max_vertices: int = MAX_BLOWUP_VERTICES) -> Graph:
    """Finite blow-up of a weighted path (or spec) at scale m.

    Part v has round(m**p(v)) vertices. Between parts of sizes a and c with
    L = lcm(a, c) and g = gcd(a, c), the construction takes q <= g layers
    {(k mod a, (k + j) mod c) : 0 <= k < L} for j < q, a biregular graph with
    q*L edges; q is chosen so that q*L is as close as possible to
    round(m**p(e)). For complete joins (p(e) = p(v) + p(w)) this is exact.
    """
    if isinstance(wp, BlowUpSpec):
        wp = weight_function(wp)
    if m < 2:
        raise BlowUpError("scale m must be at least 2")
    sizes = [rounded_power(m, x) for x in wp.vertex_weights]
    total = sum(sizes)
    if total > max_vertices:
        raise BlowUpError(f"blow-up needs {total} vertices, budget is {max_vertices}")
    offsets = [0]
    for sz in sizes:
        offsets.append(offsets[-1] + sz)
    edges = set()
    for k, ew in enumerate(wp.edge_weights):
        a, c = sizes[k], sizes[k + 1]
        if a == 0 or c == 0:
            continue
        g = gcd(a, c)
        lcm = a * c // g
        target = rounded_power(m, ew)
        q = min(max(1, (2 * target + lcm) // (2 * lcm)), g)
        for j in range(q):
            for x in range(lcm):
                edges.add((offsets[k] + x % a, offsets[k + 1] + (x + j) % c))
    try:
        return Graph.from_edges(total, sorted(edges))
    except GraphError as exc:  # pragma: no cover - construction is always simple
        raise BlowUpError(str(exc)) from exc


_SPEC_RE = re.compile(r"(\w+)\s*=\s*([^\s]+)")


def parse_spec(text: str) -> BlowUpSpec:
    """Parse ``b=<rat> s=<rat> d=<rat>,<rat>,... [f=<int>]``."""
    fields = dict(_SPEC_RE.findall(text))
    unknown = set(fields) - {"b", "s", "d", "f"}
    if unknown or not {"b", "s", "d"} <= set(fields):
        raise BlowUpError(f"cannot parse spec {text!r}")
    try:
        d = [Fraction(x) for x in fields["d"].split(",") if x]
        b, s = Fraction(fields["b"]), Fraction(fields["s"])
    except (ValueError, ZeroDivisionError) as exc:
        raise BlowUpError(f"cannot parse spec {text!r}") from exc
    if "f" in fields:
        return BlowUpSpec(int(fields["f"]), b, s, tuple(d))
    return BlowUpSpec.from_d(b, s, d)


def spec_to_json(spec: BlowUpSpec) -> dict:
    return {"f": spec.f, "b": str(spec.b), "s": str(spec.s), "d": [str(x) for x in spec.d]}


def spec_from_json(obj: dict) -> BlowUpSpec:
    return BlowUpSpec(int(obj["f"]), Fraction(obj["b"]), Fraction(obj["s"]),
                      tuple(Fraction(x) for x in obj["d"]))
