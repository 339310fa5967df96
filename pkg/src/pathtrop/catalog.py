"""Small profile families with known tropicalizations.

Each family comes with its half-space description, the rays it is generated
by, closed-form realizer sequences, and an exact membership/certificate check
for binomial inequalities between its graphs. Simplicial complexes and
partition matroids are handled through scaled f-vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Optional, Sequence, Union

from .blowup import iroot
from .cones import (
    ConeH,
    RaySet,
    cones_equal,
    double_hull,
    extreme_rays,
    member,
    primitive,
)
from .exactlp import Constraint, LinearProgram, Optimal, Unbounded, rat, solve
from .pathprofile import BinomialInequality, Certificate, InequalityError

TAGS = ("EvenCycles", "OddCycles", "Stars", "Cliques", "SimplicialF", "MatroidF")
SELECTORS = {
    "even-cycles": "EvenCycles",
    "odd-cycles": "OddCycles",
    "stars": "Stars",
    "cliques": "Cliques",
    "simplicial": "SimplicialF",
    "matroid": "MatroidF",
}
MIN_M = {"EvenCycles": 2, "OddCycles": 1, "Stars": 2, "Cliques": 1, "SimplicialF": 1, "MatroidF": 1}
LETTER_FAMILY = {
    "EvenCycles": "Cycles",
    "OddCycles": "Cycles",
    "Stars": "Stars",
    "Cliques": "Cliques",
    "SimplicialF": "FVector",
    "MatroidF": "FVector",
}
# families whose cone is the double hull of its stated rays
DOUBLE_HULL_FAMILIES = {"EvenCycles", "OddCycles", "Stars", "Cliques", "SimplicialF"}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class ProfileFamily:
    tag: str
    m: int

    def __post_init__(self):
        if self.tag not in TAGS:
            raise CatalogError(f"unknown family {self.tag!r}")
        if not isinstance(self.m, int) or self.m < MIN_M[self.tag]:
            raise CatalogError(f"{self.tag} needs m >= {MIN_M[self.tag]}")

    @classmethod
    def parse(cls, selector: str) -> "ProfileFamily":
        name, _, m = selector.partition(":")
        if name not in SELECTORS or not m.strip().isdigit():
            raise CatalogError(f"bad family selector {selector!r}")
        return cls(SELECTORS[name], int(m))

    @property
    def selector(self) -> str:
        name = next(k for k, v in SELECTORS.items() if v == self.tag)
        return f"{name}:{self.m}"

    @property
    def indices(self) -> tuple:
        """Graph indices of the coordinates, in order."""
        m = self.m
        if self.tag == "EvenCycles":
            return tuple(range(4, 2 * m + 1, 2))
        if self.tag == "OddCycles":
            return tuple(range(3, 2 * m + 2, 2))
        if self.tag == "Cliques":
            return tuple(range(1, m + 1))
        return tuple(range(m + 1))

    @property
    def dim(self) -> int:
        return len(self.indices)

    @property
    def letter(self) -> str:
        return {"Cycles": "C", "Stars": "S", "Cliques": "K", "FVector": "F"}[LETTER_FAMILY[self.tag]]

    def coord(self, k: int) -> int:
        try:
            return self.indices.index(k)
        except ValueError:
            raise InequalityError(f"index {k} is outside {self.selector}") from None

    def __str__(self) -> str:
        return f"{self.tag}({self.m})"


def _vec(dim: int, *entries) -> tuple:
    out = [0] * dim
    for i, c in entries:
        out[i] += c
    return tuple(out)


def family_rows(fam: ProfileFamily, extended: bool = False) -> list:
    """(label, row) pairs of the half-space description.

    With ``extended`` the even-cycle description lists each of its three row
    families for every admissible index rather than the irredundant subset.
    """
    m, d = fam.m, fam.dim
    rows = []
    if fam.tag == "EvenCycles":
        if m == 2:
            return [("nonneg[i=2]", (1,))]
        c = lambda i: i - 2  # noqa: E731  position of y_{2i}
        lo_conv, hi_conv = 3, m - 1
        mono = [3] if not extended else list(range(3, m + 1))
        sub = [m] if not extended else list(range(3, m + 1))
        for i in range(lo_conv, hi_conv + 1):
            rows.append((f"log-convex[i={i}]", _vec(d, (c(i - 1), 1), (c(i), -2), (c(i + 1), 1))))
        for i in mono:
            rows.append((f"non-decreasing[i={i}]", _vec(d, (c(i - 1), -1), (c(i), 1))))
        for i in sub:
            rows.append((f"sublinear[i={i}]", _vec(d, (c(i - 1), i), (c(i), -(i - 1)))))
    elif fam.tag == "OddCycles":
        rows.append(("nonneg[i=1]", _vec(d, (0, 1))))
        for i in range(2, m + 1):
            rows.append((f"non-decreasing[i={i}]", _vec(d, (i - 2, -1), (i - 1, 1))))
    elif fam.tag == "Stars":
        for i in range(1, m):
            rows.append((f"log-convex[i={i}]", _vec(d, (i - 1, 1), (i, -2), (i + 1, 1))))
        rows.append(("non-decreasing[i=2]", _vec(d, (1, -1), (2, 1))))
        rows.append(("vertex-bound", _vec(d, (0, 1), (m - 1, 1), (m, -1))))
        rows.append((f"sublinear[i={m}]", _vec(d, (m - 1, m), (m, -(m - 1)))))
    elif fam.tag == "Cliques":
        for i in range(2, m + 1):
            rows.append((f"kruskal-katona[i={i}]", _vec(d, (i - 2, i), (i - 1, -(i - 1)))))
        rows.append((f"nonneg[i={m}]", _vec(d, (m - 1, 1))))
    elif fam.tag == "SimplicialF":
        for i in range(1, m + 1):
            rows.append((f"kruskal-katona[i={i}]", _vec(d, (i - 1, i + 1), (i, -i))))
        rows.append((f"nonneg[i={m}]", _vec(d, (m, 1))))
    else:  # MatroidF
        rows.append(("log-concave[i=0]", _vec(d, (0, 2), (1, -1))))
        for i in range(1, m):
            rows.append((f"log-concave[i={i}]", _vec(d, (i - 1, -1), (i, 2), (i + 1, -1))))
        rows.append((f"non-decreasing[i={m}]", _vec(d, (m - 1, -1), (m, 1))))
    return rows


def stated_rays(fam: ProfileFamily) -> list:
    """(name, ray) pairs generating the family's cone."""
    m = fam.m
    if fam.tag == "EvenCycles":
        if m == 2:
            return [("ones", (1,))]
        return [("ones", (1,) * (m - 1)), ("linear", tuple(range(2, m + 1)))]
    if fam.tag == "OddCycles":
        return [(f"r{i}", (0,) * (i - 1) + (1,) * (m - i + 1)) for i in range(1, m + 1)]
    if fam.tag == "Stars":
        return [
            ("ones", (1,) * (m + 1)),
            ("e0", (1,) + (0,) * m),
            ("star", (1,) + tuple(range(1, m + 1))),
            ("complete", tuple(range(1, m + 2))),
        ]
    if fam.tag == "Cliques":
        return [(f"r{i}", tuple(range(1, i + 1)) + (0,) * (m - i)) for i in range(1, m + 1)]
    if fam.tag == "SimplicialF":
        return [(f"r{i}", tuple(range(1, i + 2)) + (0,) * (m - i)) for i in range(0, m + 1)]
    return [(f"r{k}", tuple(range(1, k + 2)) + (k + 1,) * (m - k)) for k in range(0, m + 1)]


def star_extreme_rays(m: int) -> list:
    """The piecewise extreme rays r_i, s_i of the star cone plus e0 and (1..m+1)."""
    out = [(1,) + (0,) * m, tuple(range(1, m + 2))]
    for i in range(2, m + 1):
        out.append(tuple(i if j <= i else j for j in range(m + 1)))
    for i in range(1, m):
        out.append(tuple(i + j * (i - 1) if j <= i else i + i * (i - 1) + (j - i) * i for j in range(m + 1)))
    return out


def listed_extreme_rays(fam: ProfileFamily) -> Optional[list]:
    """Extreme rays of the H-cone itself, for families where they are known."""
    if fam.tag == "Stars":
        return star_extreme_rays(fam.m)
    if fam.tag in ("OddCycles", "Cliques", "SimplicialF", "MatroidF"):
        return [r for _, r in stated_rays(fam)]
    return None


def profile_cone(fam: ProfileFamily, extended: bool = False) -> tuple:
    rows = family_rows(fam, extended)
    cone = ConeH(fam.dim, tuple(r for _, r in rows), tuple(l for l, _ in rows))
    rays = RaySet(fam.dim, tuple(r for _, r in stated_rays(fam)))
    return cone, rays


@dataclass(frozen=True)
class FamilyReport:
    family: ProfileFamily
    rays_in_cone: bool
    double_hull_equal: Optional[bool]
    extreme_rays_equal: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.rays_in_cone and self.double_hull_equal is not False and self.extreme_rays_equal is not False

    def to_json(self) -> dict:
        return {
            "family": self.family.selector,
            "rays_in_cone": self.rays_in_cone,
            "double_hull_equal": self.double_hull_equal,
            "extreme_rays_equal": self.extreme_rays_equal,
            "pass": self.passed,
        }


def verify_family(fam: ProfileFamily) -> FamilyReport:
    cone, rays = profile_cone(fam)
    in_cone = all(member(cone, r) for r in rays.rays)
    dh = cones_equal(double_hull(rays), cone) if fam.tag in DOUBLE_HULL_FAMILIES else None
    listed = listed_extreme_rays(fam)
    er = None
    if listed is not None:
        found = extreme_rays(cone)
        er = not found.lineality and set(found.rays) == {primitive(r) for r in listed}
    return FamilyReport(fam, in_cone, dh, er)


# ---------------------------------------------------------------------------
# inequalities inside a family

@dataclass(frozen=True)
class FamilyValid:
    certificate: Certificate
    status: str = "valid"


@dataclass(frozen=True)
class FamilyInvalid:
    ray: tuple
    ray_name: Optional[str] = None
    status: str = "invalid"


def check_binomial_in_family(fam: ProfileFamily, ineq: BinomialInequality, extended: bool = True):
    """Decide an inequality on the family cone.

    Valid results carry nonnegative weights on labeled rows; invalid ones carry
    a cone point (a stated ray when one suffices) where the functional is
    negative.
    """
    if ineq.family != LETTER_FAMILY[fam.tag]:
        raise InequalityError(f"{ineq.family} inequality does not fit {fam}")
    f = ineq.functional(fam.dim, fam.coord)
    rows = family_rows(fam, extended)
    lp = LinearProgram(f, [Constraint(lab, r) for lab, r in rows])
    out = solve(lp)
    if isinstance(out, Optimal):
        terms = tuple((lab, out.dual[lab]) for lab, _ in rows if out.dual.get(lab))
        return FamilyValid(Certificate(terms))
    if not isinstance(out, Unbounded):  # pragma: no cover - a cone LP is feasible
        raise AssertionError("cone LP cannot be infeasible")
    for name, r in stated_rays(fam):
        if sum(a * b for a, b in zip(f, r)) < 0:
            return FamilyInvalid(tuple(Fraction(x) for x in r), name)
    return FamilyInvalid(primitive(out.improving_ray))


def verify_family_certificate(fam: ProfileFamily, ineq: BinomialInequality, cert: Certificate,
                              extended: bool = True) -> bool:
    rows = dict(family_rows(fam, extended))
    acc = [Fraction(0)] * fam.dim
    for lab, c in cert.terms:
        c = rat(c)
        if c < 0:
            return False
        for i, a in enumerate(rows[lab]):
            acc[i] += c * a
    return tuple(acc) == ineq.functional(fam.dim, fam.coord)


# ---------------------------------------------------------------------------
# realizers

def closed_walks_on_cycle(k: int, length: int) -> int:
    """hom(C_k; C_length): closed walks of k steps on a cycle with ``length`` vertices."""
    per_vertex = sum(comb(k, s) for s in range(k + 1) if (k - 2 * s) % length == 0)
    return length * per_vertex


def elementary_symmetric(values: Sequence[int], k: int) -> int:
    e = [1] + [0] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * v
    return e[k]


def ceil_power(n: int, a) -> int:
    """ceil(n**a) for a nonnegative rational a, exactly."""
    a = rat(a)
    if a < 0:
        raise CatalogError("negative exponent")
    value = n ** a.numerator
    r = iroot(value, a.denominator)
    return r if r ** a.denominator == value else r + 1


def partition_matroid_f(part_sizes: Sequence[int], m: int) -> tuple:
    """Scaled f-vector entries f_0..f_m of the partition matroid with these parts."""
    return tuple(factorial(i) * elementary_symmetric(part_sizes, i + 1) for i in range(m + 1))


RayId = Union[int, str, Sequence]


def _ray_index(fam: ProfileFamily, ray_id) -> int:
    names = [n for n, _ in stated_rays(fam)]
    if isinstance(ray_id, int) and 0 <= ray_id < len(names):
        return ray_id
    if isinstance(ray_id, str) and ray_id in names:
        return names.index(ray_id)
    raise CatalogError(f"unknown ray {ray_id!r} for {fam}")


def realizer_counts(fam: ProfileFamily, ray_id: RayId, n: int) -> tuple:
    """Exact profile of the realizer graph (or complex) at scale n."""
    if n < 2:
        raise CatalogError("scale parameter must be at least 2")
    m = fam.m
    idx = fam.indices
    if fam.tag == "MatroidF" and not isinstance(ray_id, (int, str)):
        y = [rat(x) for x in ray_id]
        if len(y) != m + 1:
            raise CatalogError("point has the wrong length")
        a = [y[0]] + [y[i] - y[i - 1] for i in range(1, m + 1)]
        if any(x < 0 for x in a) or any(a[i] < a[i + 1] for i in range(m)):
            raise CatalogError("point is not in the matroid cone")
        return partition_matroid_f([ceil_power(n, x) for x in a], m)
    k = _ray_index(fam, ray_id)
    name = stated_rays(fam)[k][0]
    if fam.tag == "EvenCycles":
        if name == "ones":  # K_2
            return tuple(2 for _ in idx)
        return tuple((n - 1) ** j + (n - 1) for j in idx)  # K_n
    if fam.tag == "OddCycles":
        i = k + 1  # n copies of C_{2i+1} plus a triangle
        return tuple(n * closed_walks_on_cycle(j, 2 * i + 1) + 2 ** j + 2 * (-1) ** j for j in idx)
    if fam.tag == "Stars":
        if name == "ones":  # K_2
            return tuple(2 for _ in idx)
        if name == "e0":  # one edge plus n isolated vertices
            return (n + 2,) + tuple(2 for _ in idx[1:])
        if name == "star":  # the star with n leaves
            return (n + 1,) + tuple(n ** j + n for j in idx[1:])
        return (n,) + tuple(n * (n - 1) ** j for j in idx[1:])  # K_n
    if fam.tag == "Cliques":
        i = k + 1  # complete i-partite graph with parts of size n, plus K_m
        return tuple(factorial(j) * elementary_symmetric([n] * i, j) + math.perm(m, j) for j in idx)
    if fam.tag == "SimplicialF":
        i = k  # clique complex of (i+1) parts of size n, plus a full m-simplex
        return tuple(factorial(j) * (elementary_symmetric([n] * (i + 1), j + 1) + comb(m + 1, j + 1)) for j in idx)
    # MatroidF stated ray k: k+1 parts of size n, the rest single elements
    return partition_matroid_f([n] * (k + 1) + [1] * (m - k), m)


def realizer_log_vector(fam: ProfileFamily, ray_id: RayId, n: int) -> tuple:
    """log(count)/log(n) for each coordinate of the realizer at scale n."""
    counts = realizer_counts(fam, ray_id, n)
    ln = math.log(n)
    return tuple(math.log(c) / ln for c in counts)


def direction(v: Sequence) -> tuple:
    """v scaled to unit l1 norm (as floats)."""
    s = sum(abs(float(x)) for x in v)
    if s == 0:
        raise CatalogError("zero vector has no direction")
    return tuple(float(x) / s for x in v)


# ---------------------------------------------------------------------------
# simplicial complexes

def _normalize_complex(faces: Iterable) -> set:
    out = {frozenset(f) for f in faces}
    out.discard(frozenset())
    for f in out:
        for k in range(1, len(f)):
            for sub in combinations(sorted(f), k):
                if frozenset(sub) not in out:
                    raise CatalogError(f"faces are not closed under subsets: {sorted(f)} lacks {list(sub)}")
    return out


def scaled_f_vector(faces: Iterable) -> tuple:
    """Entry k is k! times the number of faces with k+1 vertices."""
    complex_ = _normalize_complex(faces)
    if not complex_:
        return ()
    top = max(len(f) for f in complex_)
    counts = [0] * top
    for f in complex_:
        counts[len(f) - 1] += 1
    return tuple(factorial(k) * c for k, c in enumerate(counts))


def f_tensor(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Entrywise product of two scaled f-vectors.

    Under the k! weighting used here the tensor product complex has k-th entry
    (k+1) * a[k] * b[k], since two faces with k+1 vertices match in (k+1)! ways.
    The constant factor does not change tropicalizations.
    """
    return tuple(x * y for x, y in zip(a, b))


def tensor_complex(s_faces: Iterable, t_faces: Iterable) -> set:
    """Faces of S (x) T: vertex sets of [m]x[n] projecting bijectively onto faces of both."""
    s = _normalize_complex(s_faces)
    t = _normalize_complex(t_faces)
    out = set()
    for a in s:
        for b in t:
            if len(a) != len(b):
                continue
            la = sorted(a)
            for perm in permutations(sorted(b)):
                out.add(frozenset(zip(la, perm)))
    return out


def clique_complex_f_vector(counts_by_clique_size: Sequence[int]) -> tuple:
    """Scaled f-vector of a clique complex from hom(K_1..K_r; G)."""
    return tuple(c // (k + 1) for k, c in enumerate(counts_by_clique_size))


def family_to_json(fam: ProfileFamily) -> dict:
    cone, rays = profile_cone(fam)
    coords = [f"{fam.letter}{k}" for k in fam.indices]
    return {
        "family": fam.selector,
        "coordinates": coords,
        "rows": [{"label": l, "coeffs": [str(x) for x in r]} for l, r in zip(cone.labels, cone.rows)],
        "rays": [{"name": n, "ray": [str(x) for x in r]} for n, r in stated_rays(fam)],
    }
