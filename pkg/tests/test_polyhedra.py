import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hivekron.kron import lambda_shifts, sigma_of
from hivekron.polyhedra import (Cone, FibreQuery, _hnf_solve, build_cone,
                                cone_from_json, cone_to_json,
                                count_lattice_points, lp_extent)
from hivekron.quiver import hive_vertex


def test_cone_333_facets(small_builds):
    c = build_cone(3, 3)
    assert len(c.facets) == 43
    assert c.ambient_dim == 21


def test_cone_facet_breakdown(small_builds):
    from hivekron.pathmods import boundary_path, diagonal_module, submodule_dims
    from hivekron.diamonds import build_bar
    Q, _ = build_bar(3, 3)
    path_facets = set()
    for v in Q.frozen:
        if v.kind == "hive":
            for d in submodule_dims(boundary_path(3, 3, v, Q), True):
                path_facets.add(d)
    diag_facets = set()
    for n in (1, 2, 3):
        for d in submodule_dims(diagonal_module(3, 3, n, Q), False):
            diag_facets.add(d)
    assert len(path_facets) == 36
    assert len(diag_facets) == 7
    assert not (path_facets & diag_facets)


def test_facets_normalized_and_distinct(small_builds):
    for lm, built in small_builds.items():
        c = built["cone"]
        seen = set(c.facets)
        assert len(seen) == len(c.facets)
        import math
        for f in c.facets:
            assert math.gcd(*[abs(x) for x in f if x] or [1]) == 1


def test_cone_json_roundtrip(small_builds):
    c = build_cone(2, 3)
    again = cone_from_json(cone_to_json(c))
    assert again == c
    assert cone_to_json(again) == cone_to_json(c)


def test_lp_extent_statuses(small_builds):
    c = build_cone(2, 2)
    zero = FibreQuery((0,) * 6)
    for v in c.vertices:
        e = lp_extent(c, zero, v)
        assert e.status == "interval" and e.lo == 0 and e.hi == 0
    bad = FibreQuery((1, 0, 0, 0, 0, 0))
    assert lp_extent(c, bad, c.vertices[0]).status == "infeasible"


def test_lp_extent_fixed_prefix(small_builds):
    c = build_cone(2, 2)
    theta = FibreQuery(sigma_of((1,), (1,), 2) + (1, 0))
    v0 = c.vertices[0]
    base = lp_extent(c, theta, v0)
    clamped = lp_extent(c, theta, v0, fixed={v0: base.lo})
    assert clamped.status == "interval"
    assert clamped.lo == clamped.hi == base.lo


def test_count_zero_fibre(small_builds):
    for lm, built in small_builds.items():
        c = built["cone"]
        assert count_lattice_points(c, FibreQuery((0,) * (2 * c.l + c.m))) == 1


def test_count_negative_lambda_is_empty(small_builds):
    c = build_cone(2, 2)
    theta = FibreQuery((0, 0, 0, 0, -1, 1))
    assert count_lattice_points(c, theta) == 0


def brute_force_count(c: Cone, theta: FibreQuery) -> int:
    """Naive enumeration over the lp_extent bounding box (test oracle)."""
    box = []
    for v in c.vertices:
        e = lp_extent(c, theta, v)
        if e.status == "infeasible":
            return 0
        assert e.status == "interval"
        import math
        box.append(range(math.ceil(e.lo), math.floor(e.hi) + 1))
    n = 0
    dim = len(theta.theta)
    for g in itertools.product(*box):
        if any(sum(f[k] * g[k] for k in range(len(g))) < 0 for f in c.facets):
            continue
        if all(sum(c.grading[k][t] * g[k] for k in range(len(g))) ==
               theta.theta[t] for t in range(dim)):
            n += 1
    return n


def test_dfs_equals_brute_force_22(small_builds):
    c = build_cone(2, 2)
    rng = random.Random(22)
    for _ in range(20):
        theta = FibreQuery(tuple(rng.randint(-2, 2) for _ in range(6)))
        assert count_lattice_points(c, theta) == brute_force_count(c, theta)


def test_worker_count_invariance(small_builds):
    c = build_cone(2, 2)
    rng = random.Random(7)
    thetas = [FibreQuery(tuple(rng.randint(-2, 2) for _ in range(6)))
              for _ in range(8)]
    thetas.append(FibreQuery(sigma_of((2, 1), (2, 1), 2) + (2, 1)))
    for theta in thetas:
        assert count_lattice_points(c, theta, workers=1) == \
            count_lattice_points(c, theta, workers=4)


def test_facet_essentiality_22(small_builds):
    """Removing any facet enlarges the cone (checked by exact LP)."""
    from hivekron.lp import OPTIMAL, solve_lp
    c = build_cone(2, 2)
    n = c.ambient_dim
    for drop in range(len(c.facets)):
        kept = [f for k, f in enumerate(c.facets) if k != drop]
        dropped = c.facets[drop]
        # maximize violation of the dropped facet subject to the rest and
        # a normalization box |g_v| <= 1
        A_ub = [[-x for x in f] for f in kept]
        b_ub = [0] * len(kept)
        for k in range(n):
            row = [0] * n
            row[k] = 1
            A_ub.append(row[:])
            b_ub.append(1)
            row2 = [0] * n
            row2[k] = -1
            A_ub.append(row2)
            b_ub.append(1)
        st_, val, _ = solve_lp([x for x in dropped], A_ub, b_ub)
        assert st_ == OPTIMAL
        assert val < 0, f"facet {drop} is not essential"


def test_python_fallback_matches_numpy(small_builds, monkeypatch):
    # the pure-Python DFS must agree with the vectorized path
    import hivekron.polyhedra as P
    c = build_cone(2, 3)
    rng = random.Random(99)
    thetas = [FibreQuery(tuple(rng.randint(-2, 2) for _ in range(7)))
              for _ in range(10)]
    thetas.append(FibreQuery(sigma_of((2, 1), (2, 1), 2) + (2, 1, 0)))
    fast = [count_lattice_points(c, th) for th in thetas]
    monkeypatch.setattr(P, "_np_count", lambda *a, **k: None)
    slow = [count_lattice_points(c, th) for th in thetas]
    assert fast == slow


def test_unbounded_fibre_detected():
    from hivekron.errors import UnboundedFibre
    from hivekron.quiver import hive_vertex
    # a cone with no facets and a rank-deficient grading has unbounded fibres
    verts = (hive_vertex(1, 0, 1), hive_vertex(1, 0, 2))
    fake = Cone(1, 1, verts, ((1, 1),), ((1, 0, 0), (1, 0, 0)))
    with pytest.raises(UnboundedFibre):
        count_lattice_points(fake, FibreQuery((2, 0, 0)))


def test_hnf_solve_simple():
    g0, ker = _hnf_solve([[2, 0, 0], [0, 3, 0]], [4, 6])
    assert g0[0] == 2 and g0[1] == 2
    assert len(ker) == 1 and ker[0][2] != 0
    assert _hnf_solve([[2, 0]], [3]) is None


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4),
       st.integers(-4, 4), st.integers(-9, 9), st.integers(-9, 9))
@settings(max_examples=80, deadline=None)
def test_hnf_solve_random(a, b, c, d, t1, t2):
    rows = [[a, b, 1, 0], [c, d, 0, 2]]
    sol = _hnf_solve(rows, [t1, t2])
    if sol is None:
        return
    g0, ker = sol
    for r, t in zip(rows, (t1, t2)):
        assert sum(x * y for x, y in zip(r, g0)) == t
        for kv in ker:
            assert sum(x * y for x, y in zip(r, kv)) == 0
    assert len(ker) == 4 - 2  # these rows are always independent


def test_count_matches_known_kronecker(small_builds):
    # single surviving shift: the count itself is the coefficient
    c = build_cone(2, 2)
    theta = FibreQuery(sigma_of((1,), (1,), 2) + tuple(
        lambda_shifts((1,), 2)[0][1]))
    assert count_lattice_points(c, theta) == 1
