import math
import random
from itertools import combinations
from fractions import Fraction

import pytest

from pathtrop import catalog, graphs
from pathtrop.catalog import (CatalogError, ProfileFamily, check_binomial_in_family, clique_complex_f_vector,
                              direction, f_tensor, family_rows, listed_extreme_rays, partition_matroid_f,
                              profile_cone, realizer_counts, realizer_log_vector, scaled_f_vector,
                              stated_rays, tensor_complex, verify_family, verify_family_certificate)
from pathtrop.cones import member, primitive
from pathtrop.pathprofile import InequalityError, parse_inequality


def fam(sel):
    return ProfileFamily.parse(sel)


def rows_of(sel):
    return {lab: tuple(row) for lab, row in family_rows(fam(sel))}


class TestFamilies:
    def test_selectors(self):
        f = fam("even-cycles:4")
        assert f.tag == "EvenCycles" and f.m == 4 and f.selector == "even-cycles:4"
        assert f.indices == (4, 6, 8) and f.dim == 3
        with pytest.raises(CatalogError):
            fam("hexagons:3")
        with pytest.raises(CatalogError):
            fam("even-cycles:x")

    def test_minimum_size(self):
        with pytest.raises(CatalogError):
            fam("even-cycles:1")

    def test_even_cycles_rows(self):
        assert set(rows_of("even-cycles:4").values()) == {(1, -2, 1), (-1, 1, 0), (0, 4, -3)}
        rays = dict(stated_rays(fam("even-cycles:4")))
        assert set(rays.values()) == {(1, 1, 1), (2, 3, 4)}

    def test_clique_rows(self):
        assert set(rows_of("cliques:3").values()) == {(2, -1, 0), (0, 3, -2), (0, 0, 1)}
        rays = [tuple(r) for _, r in stated_rays(fam("cliques:3"))]
        assert rays == [(1, 0, 0), (1, 2, 0), (1, 2, 3)]

    def test_matroid_rows(self):
        assert set(rows_of("matroid:2").values()) == {(2, -1, 0), (-1, 2, -1), (0, -1, 1)}

    def test_out_of_range_coordinate(self):
        with pytest.raises(InequalityError):
            check_binomial_in_family(fam("even-cycles:3"), parse_inequality("C4 >= C10"))


class TestVerification:
    @pytest.mark.parametrize("sel", [f"even-cycles:{m}" for m in range(2, 7)] +
                             [f"odd-cycles:{m}" for m in range(1, 7)] +
                             [f"stars:{m}" for m in range(2, 6)] +
                             [f"cliques:{m}" for m in range(1, 7)] +
                             [f"simplicial:{m}" for m in range(1, 6)] +
                             [f"matroid:{m}" for m in range(1, 6)])
    def test_family_passes(self, sel):
        report = verify_family(fam(sel))
        assert report.passed, report.to_json()

    def test_stated_rays_in_cone(self):
        for sel in ("stars:4", "simplicial:4", "odd-cycles:4"):
            cone, rays = profile_cone(fam(sel))
            assert all(member(cone, r) for r in rays.rays)

    def test_odd_cycle_staircase(self):
        rays = [tuple(r) for _, r in stated_rays(fam("odd-cycles:3"))]
        assert rays == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]

    def test_star_piecewise_rays(self):
        listed = {primitive(r) for r in listed_extreme_rays(fam("stars:4"))}
        assert {(1, 1, 1, 1, 1), (1, 0, 0, 0, 0), (1, 1, 2, 3, 4), (1, 2, 3, 4, 5)} <= listed

    def test_report_json(self):
        out = verify_family(fam("cliques:3")).to_json()
        assert out["family"] == "cliques:3" and out["pass"] is True


class TestInequalities:
    def test_four_cycles_example(self):
        f = fam("even-cycles:5")
        q = parse_inequality("C4^3*C10^2 >= C8^4")
        res = check_binomial_in_family(f, q)
        assert res.status == "valid"
        assert verify_family_certificate(f, q, res.certificate)
        assert dict(res.certificate.terms) == {"log-convex[i=4]": 2, "sublinear[i=3]": 1}

    def test_generator(self):
        f = fam("even-cycles:5")
        q = parse_inequality("C6*C10 >= C8^2")
        res = check_binomial_in_family(f, q)
        assert res.status == "valid" and verify_family_certificate(f, q, res.certificate)

    def test_invalid_uses_stated_ray(self):
        res = check_binomial_in_family(fam("even-cycles:5"), parse_inequality("C8 >= C10"))
        assert res.status == "invalid"
        assert res.ray == (2, 3, 4, 5) and res.ray_name == "linear"

    def test_family_mismatch(self):
        with pytest.raises(InequalityError):
            check_binomial_in_family(fam("cliques:3"), parse_inequality("C4 >= C6"))


ALL6 = list(graphs.all_graphs(6))


class TestInvariants:
    def test_kruskal_katona_on_clique_counts(self):
        for g in ALL6:
            k = {p: graphs.clique_hom(g, p) for p in range(1, 5)}
            for p, q in combinations(range(2, 5), 2):
                assert k[p] ** q >= k[q] ** p

    def test_star_rows_on_degree_sums(self):
        rows = family_rows(fam("stars:4"))
        for g in ALL6:
            if g.edge_count == 0:
                continue
            counts = {i: graphs.star_hom(g, i) for i in range(5)}
            for lab, row in rows:
                pos = 1
                neg = 1
                for i, c in enumerate(row):
                    if c > 0:
                        pos *= counts[i] ** int(c)
                    elif c < 0:
                        neg *= counts[i] ** int(-c)
                assert pos >= neg, (lab, g)

    def test_matroid_log_concavity(self):
        # Exact log-concavity of the factorial-scaled vector can fail: the free
        # matroid on six elements gives 15^2 < 6 * 40. Ultra-log-concavity of
        # the raw counts holds exactly and yields the scaled rows up to the
        # factor k(k+2)/(k+1)^2, which disappears after tropicalization.
        free = partition_matroid_f([1] * 6, 5)
        assert free[:3] == (6, 15, 40) and free[1] ** 2 < free[0] * free[2]
        rng = random.Random(4)
        for _ in range(200):
            m = rng.randint(1, 5)
            parts = [rng.randint(1, 6) for _ in range(rng.randint(m + 1, m + 3))]
            f = partition_matroid_f(parts, m)
            raw = [1] + [f[i] // math.factorial(i) for i in range(m + 1)]
            big_n = len(parts)
            for j in range(1, m + 1):
                lhs = raw[j] ** 2 * j * (big_n - j)
                rhs = raw[j - 1] * raw[j + 1] * (j + 1) * (big_n - j + 1)
                assert lhs >= rhs
            for k in range(1, m):
                assert f[k] ** 2 * (k + 1) ** 2 >= f[k - 1] * f[k + 1] * k * (k + 2)
            assert f[0] ** 2 >= f[1]


class TestComplexes:
    HOLLOW = [{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}]
    FULL = HOLLOW + [{0, 1, 2}]

    def test_hollow_triangle(self):
        assert scaled_f_vector(self.HOLLOW) == (3, 3)

    def test_full_triangle(self):
        assert scaled_f_vector(self.FULL) == (3, 3, 2)

    def test_tensor(self):
        a = scaled_f_vector(self.HOLLOW)
        assert f_tensor(a, a) == (9, 9)

    @pytest.mark.parametrize("s_faces, t_faces", [
        (HOLLOW, HOLLOW), (FULL, FULL), (FULL, HOLLOW),
        ([{0}, {1}, {0, 1}], [{0}, {1}, {2}, {0, 1}, {1, 2}]),
    ])
    def test_tensor_face_counts(self, s_faces, t_faces):
        # faces with j vertices: j! matchings for each pair of j-vertex faces
        def counts(faces):
            out = {}
            for f in faces:
                out[len(f)] = out.get(len(f), 0) + 1
            return out

        cs, ct = counts(s_faces), counts(t_faces)
        cst = counts(tensor_complex(s_faces, t_faces))
        for j in set(cs) & set(ct):
            assert cst[j] == math.factorial(j) * cs[j] * ct[j]
        a, b = scaled_f_vector(s_faces), scaled_f_vector(t_faces)
        prod = scaled_f_vector(tensor_complex(s_faces, t_faces))
        assert prod == tuple((k + 1) * x for k, x in enumerate(f_tensor(a, b)))

    def test_rejects_non_complex(self):
        with pytest.raises(CatalogError):
            scaled_f_vector([{0, 1, 2}, {0, 1}])


def test_clique_complex_of_triangle():
    counts = [graphs.clique_hom(graphs.complete(3), p) for p in (1, 2, 3)]
    assert clique_complex_f_vector(counts) == (3, 3, 2)


class TestRealizers:
    def test_even_cycle_convergence(self):
        m = 5
        f = fam(f"even-cycles:{m}")
        n = 2 ** 20
        got = direction(realizer_log_vector(f, "linear", n))
        want = direction(range(2, m + 1))
        assert max(abs(a - b) for a, b in zip(got, want)) < 1e-4

    def test_edge_realizer(self):
        f = fam("even-cycles:4")
        assert realizer_counts(f, "ones", 7) == (2, 2, 2)
        assert all(math.isclose(x, math.log(2) / math.log(7)) for x in realizer_log_vector(f, "ones", 7))

    def test_closed_forms_match_graphs(self):
        n = 4
        f = fam("even-cycles:3")
        kn = graphs.complete(n)
        assert realizer_counts(f, "linear", n) == tuple(graphs.cycle_hom(kn, k) for k in f.indices)
        s = fam("stars:3")
        star = graphs.star(n)
        assert realizer_counts(s, "star", n) == tuple(graphs.star_hom(star, k) for k in s.indices)

    def test_matroid_point(self):
        f = fam("matroid:2")
        assert realizer_counts(f, (1, 2, 3), 3) == partition_matroid_f([3, 3, 3], 2)
        with pytest.raises(CatalogError):
            realizer_counts(f, (2, 2, 5), 3)

    def test_scale_bounds(self):
        with pytest.raises(CatalogError):
            realizer_counts(fam("cliques:3"), 0, 1)
        with pytest.raises(CatalogError):
            realizer_counts(fam("cliques:3"), "missing", 5)
