"""Polyhedral cones in exact arithmetic.

A cone is stored either by half-spaces (:class:`ConeH`, rows ``a`` meaning
``a . y >= 0``) or by generators (:class:`RaySet`, extreme rays plus a basis
of the lineality space). Conversion runs the double description method on
primitive integer vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .exactlp import Constraint, Infeasible, LinearProgram, Optimal, rat, solve

MAX_DIM = 16


class ConeError(ValueError):
    pass


class DimensionLimitError(ConeError):
    pass


class DomainError(ConeError):
    pass


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector by a positive factor to coprime integers."""
    fr = [rat(x) for x in v]
    den = 1
    for x in fr:
        den = _lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _sign_normalize(v: tuple) -> tuple:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


@dataclass(frozen=True)
class ConeH:
    dim: int
    rows: tuple = ()
    labels: tuple = ()

    def __post_init__(self):
        rows = tuple(tuple(rat(x) for x in r) for r in self.rows)
        labels = tuple(self.labels) if self.labels else tuple(f"h{i}" for i in range(len(rows)))
        if len(labels) != len(rows):
            raise ConeError("labels and rows differ in length")
        if len(set(labels)) != len(labels):
            raise ConeError("duplicate row labels")
        for r in rows:
            if len(r) != self.dim:
                raise ConeError(f"row of length {len(r)} in a cone of dimension {self.dim}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "labels", labels)

    def labeled_rows(self):
        return list(zip(self.labels, self.rows))

    def row(self, label: str) -> tuple:
        try:
            return self.rows[self.labels.index(label)]
        except ValueError:
            raise KeyError(label) from None


@dataclass(frozen=True)
class RaySet:
    dim: int
    rays: tuple = ()
    lineality: tuple = ()

    def __post_init__(self):
        rays = sorted({primitive(r) for r in self.rays if any(r)})
        lin = tuple(_sign_normalize(primitive(r)) for r in self.lineality if any(r))
        for r in list(rays) + list(lin):
            if len(r) != self.dim:
                raise ConeError("ray length does not match dimension")
        object.__setattr__(self, "rays", tuple(rays))
        object.__setattr__(self, "lineality", lin)

    def generators(self) -> list:
        """Rays followed by both signs of every lineality vector."""
        out = list(self.rays)
        for v in self.lineality:
            out.append(v)
            out.append(tuple(-x for x in v))
        return out

    @property
    def is_pointed(self) -> bool:
        return not self.lineality


# ---------------------------------------------------------------------------
# linear algebra helpers

def _rref(rows: list) -> tuple:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list) -> int:
    if not rows:
        return 0
    return len(_rref(rows)[1])


def nullspace(rows: list, dim: int) -> list:
    """Basis of {y : a.y = 0 for every row a}, as primitive integer vectors."""
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    red, pivots = _rref(rows)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(_sign_normalize(primitive(v)))
    return basis


def _solve_square(mat: list, rhs: list) -> list:
    n = len(mat)
    aug = [list(map(Fraction, mat[i])) + [Fraction(rhs[i])] for i in range(n)]
    red, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ConeError("singular system")
    return [red[i][n] for i in range(n)]


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b) if x and y)


# ---------------------------------------------------------------------------
# double description

def _check_dim(dim: int, limit: int):
    if dim > limit:
        raise DimensionLimitError(f"dimension {dim} exceeds the limit {limit}")


def extreme_rays(cone: ConeH, max_dim: int = MAX_DIM) -> RaySet:
    """Extreme rays (and lineality basis) of ``{y : A y >= 0}``."""
    dim = cone.dim
    _check_dim(dim, max_dim)
    rows = [primitive(r) for r in cone.rows if any(r)]
    rows = sorted(set(rows), key=lambda r: (sum(1 for x in r if x), r))
    lin = nullspace(rows, dim)
    work = list(rows)
    for v in lin:
        work.append(v)
        work.append(tuple(-x for x in v))
    if len(lin) == dim:
        return RaySet(dim, (), lin)
    # d independent rows for the initial simplicial cone
    basis_idx, acc = [], []
    for i, r in enumerate(work):
        if rank(acc + [r]) > len(acc):
            acc.append(r)
            basis_idx.append(i)
            if len(acc) == dim:
                break
    inv_cols = []
    for k in range(dim):
        e = [0] * dim
        e[k] = 1
        inv_cols.append(primitive(_solve_square(acc, e)))
    order = basis_idx + [i for i in range(len(work)) if i not in set(basis_idx)]
    # ray -> zero-set bitmask over processed row positions
    rays = []
    for k, col in enumerate(inv_cols):
        mask = 0
        for pos in range(dim):
            if pos != k:
                mask |= 1 << pos
        rays.append((col, mask))
    for pos in range(dim, len(order)):
        a = work[order[pos]]
        vals = [_idot(a, r) for r, _ in rays]
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        bit = 1 << pos
        new = [(rays[i][0], rays[i][1]) for i in plus]
        new += [(rays[i][0], rays[i][1] | bit) for i in zero]
        masks = [m for _, m in rays]
        for i in plus:
            for j in minus:
                common = masks[i] & masks[j]
                if bin(common).count("1") < dim - 2:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != i and k != j and (masks[k] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                p, q = rays[i][0], rays[j][0]
                vp, vq = vals[i], -vals[j]
                r = primitive([vq * x + vp * y for x, y in zip(p, q)])
                new.append((r, common | bit))
        rays = new
    return RaySet(dim, tuple(r for r, _ in rays), tuple(lin))


def hull_h_rep(rays: RaySet, max_dim: int = MAX_DIM, prefix: str = "h") -> ConeH:
    """Irredundant half-space description of the cone generated by ``rays``."""
    gens = rays.generators()
    dual = extreme_rays(ConeH(rays.dim, tuple(gens)), max_dim)
    rows = list(dual.rays)
    labels = [f"{prefix}{i}" for i in range(len(rows))]
    for k, v in enumerate(dual.lineality):
        rows.append(v)
        labels.append(f"{prefix}=+{k}")
        rows.append(tuple(-x for x in v))
        labels.append(f"{prefix}=-{k}")
    return ConeH(rays.dim, tuple(rows), tuple(labels))


def dual_cone(cone: ConeH, max_dim: int = MAX_DIM) -> RaySet:
    """Minimal generators of the dual cone, which is the conic hull of the rows."""
    h = hull_h_rep(RaySet(cone.dim, cone.rows), max_dim)
    return extreme_rays(h, max_dim)


def dual_cone_of_rays(rays: RaySet) -> ConeH:
    gens = rays.generators()
    return ConeH(rays.dim, tuple(gens), tuple(f"g{i}" for i in range(len(gens))))


def tropical_sum(x: Sequence, y: Sequence) -> tuple:
    if len(x) != len(y):
        raise ConeError("tropical sum of vectors of different lengths")
    return tuple(max(rat(a), rat(b)) for a, b in zip(x, y))


def tropical_sum_all(vectors: Sequence[Sequence]) -> tuple:
    it = iter(vectors)
    acc = tuple(rat(a) for a in next(it))
    for v in it:
        acc = tropical_sum(acc, v)
    return acc


def max_closure(rays: RaySet, max_dim: int = MAX_DIM) -> ConeH:
    """Smallest max-closed cone containing the given nonnegative rays.

    Computed as the intersection over coordinates i of cone(S) + Q_i, where Q_i
    has coordinate i nonpositive and all other coordinates nonnegative.
    """
    dim = rays.dim
    _check_dim(dim, max_dim)
    for r in rays.generators():
        if any(x < 0 for x in r):
            raise DomainError("max_closure requires rays in the nonnegative orthant")
    # the orthant rows are redundant except in dimension one
    collected = {tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)}
    for i in range(dim):
        gens = list(rays.generators())
        for j in range(dim):
            e = [0] * dim
            e[j] = -1 if j == i else 1
            gens.append(tuple(e))
        h = hull_h_rep(RaySet(dim, tuple(gens)), max_dim)
        collected.update(primitive(r) for r in h.rows)
    if dim == 0:
        return ConeH(0)
    return minimize_rows(ConeH(dim, tuple(sorted(collected))), max_dim)


def double_hull(rays: RaySet, max_dim: int = MAX_DIM) -> ConeH:
    return max_closure(rays, max_dim)


def minimize_rows(cone: ConeH, max_dim: int = MAX_DIM, prefix: str = "h") -> ConeH:
    """Replace the rows by an irredundant set describing the same cone."""
    return hull_h_rep(extreme_rays(cone, max_dim), max_dim, prefix)


def member(cone: ConeH, point: Sequence) -> bool:
    p = [rat(x) for x in point]
    if len(p) != cone.dim:
        raise ConeError("point dimension mismatch")
    return all(sum((a * b for a, b in zip(r, p)), Fraction(0)) >= 0 for r in cone.rows)


def _contains_all(cone: ConeH, gens) -> bool:
    return all(member(cone, g) for g in gens)


def cones_equal(a: ConeH, b: ConeH, max_dim: int = MAX_DIM) -> bool:
    if a.dim != b.dim:
        raise ConeError("cones of different dimension")
    return (_contains_all(b, extreme_rays(a, max_dim).generators())
            and _contains_all(a, extreme_rays(b, max_dim).generators()))


def _hull_lp(rays: RaySet, point: Sequence) -> tuple:
    gens = list(rays.rays) + list(rays.lineality)
    k = len(gens)
    nr = len(rays.rays)
    eq = [Constraint(f"coord[{c}]", tuple(g[c] for g in gens), rat(point[c]))
          for c in range(rays.dim)]
    lower = [0] * nr + [None] * (k - nr)
    lp = LinearProgram(tuple([0] * k), [], eq, lower=lower)
    return lp, solve(lp)


def member_hull(rays: RaySet, point: Sequence) -> Optional[tuple]:
    """Coefficients expressing ``point`` over rays then lineality vectors, or None."""
    if len(point) != rays.dim:
        raise ConeError("point dimension mismatch")
    if rays.dim == 0:
        return ()
    _, out = _hull_lp(rays, point)
    if isinstance(out, Optimal):
        return out.x
    return None


def hull_separator(rays: RaySet, point: Sequence) -> Optional[tuple]:
    """A row h with h.r >= 0 on the generators and h.point < 0, or None if point is inside."""
    _, out = _hull_lp(rays, point)
    if not isinstance(out, Infeasible):
        return None
    w = [out.farkas.get(f"coord[{c}]", Fraction(0)) for c in range(rays.dim)]
    return primitive([-x for x in w])


# ---------------------------------------------------------------------------
# serialization

def _vec_json(v) -> list:
    return [str(rat(x)) for x in v]


def cone_to_json(cone: ConeH) -> dict:
    return {"dim": cone.dim,
            "rows": [{"label": lab, "row": _vec_json(r)} for lab, r in cone.labeled_rows()]}


def rayset_to_json(rays: RaySet) -> dict:
    return {"dim": rays.dim,
            "rays": [_vec_json(r) for r in rays.rays],
            "lineality": [_vec_json(r) for r in rays.lineality]}
