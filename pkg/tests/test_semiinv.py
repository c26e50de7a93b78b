import random

import pytest

from hivekron.diamonds import build_tilde
from hivekron.errors import IndexOutOfRange
from hivekron.semiinv import (Representation,
                              check_exchange_relations, det_weight,
                              eval_semi_invariant, lambda_degree_probe,
                              lifted_presentation, sigma_lambda_weight,
                              vertex_value)


def E(t, l, m, coef=1):
    w = [0] * (2 * l + m)
    if t < 0:
        w[-t - 1] = coef
    else:
        w[l + t - 1] = coef
    return w


def add(*ws):
    return tuple(sum(col) for col in zip(*ws))


def test_sigma_weight_diag():
    l, m = 3, 3
    assert sigma_lambda_weight(2, 0, 3, False, l, m) == \
        add(E(2, l, m), E(-2, l, m, -1), [0]*6 + [0, 0, 2])


def test_sigma_weight_112():
    # (1,1,2) at l=3: sigma = e2 - 2e(-1), lambda = e2 + e1
    w = sigma_lambda_weight(1, 1, 2, False, 3, 3)
    assert w == (-2, 0, 0, 0, 1, 0, 1, 1, 0)


def test_sigma_weight_123_odd_hyp():
    # i+j=l with odd n falls back to the even diamond: no e_l correction
    w = sigma_lambda_weight(1, 2, 3, False, 3, 3)
    assert w[:6] == (-1, -1, 0, 0, 0, 1)
    assert w == sigma_lambda_weight(1, 2, 2, False, 3, 3)


def test_sigma_weight_dual_mirror():
    l, m = 3, 3
    w = sigma_lambda_weight(1, 1, 3, True, l, m)
    # dual sigma: e_i + e_j - e_{-(i+j)} + r(e_l - e_{-l})
    assert w[:6] == (0, -1, -1, 2, 0, 1)
    # lambda part equals the plain one
    assert w[6:] == sigma_lambda_weight(1, 1, 3, False, l, m)[6:]


def test_weight_out_of_range():
    with pytest.raises(IndexOutOfRange):
        sigma_lambda_weight(3, 1, 2, False, 3, 3)


def test_lifted_presentation_diag():
    p = lifted_presentation(2, 0, 3, False, 3, 3)
    assert p.sources == (2,) and p.targets == (-2,) and p.grid == ((3,),)


def test_lifted_presentation_hyp_falls_back():
    assert lifted_presentation(1, 2, 3, False, 3, 3) == \
        lifted_presentation(1, 2, 2, False, 3, 3)


def test_lifted_presentation_sigma_consistency():
    l, m = 3, 3
    for (i, j, n) in [(1, 1, 2), (1, 1, 3), (0, 2, 3), (2, 1, 2), (1, 0, 3)]:
        for dual in (False, True):
            p = lifted_presentation(i, j, n, dual, l, m)
            w = sigma_lambda_weight(i, j, n, dual, l, m)
            assert p.weight(l) == w[:2 * l]


def test_eval_standard_is_one():
    M = Representation.standard(3, 3)
    for i in (1, 2):
        for n in (1, 2, 3):
            p = lifted_presentation(i, 0, n, False, 3, 3)
            assert eval_semi_invariant(p, M) == 1


def test_eval_l2_one_by_one():
    rng = random.Random(0)
    M = Representation.random(2, 2, rng)
    p = lifted_presentation(1, 0, 1, False, 2, 2)
    # 1x1 determinant: the flag-conjugated (1,1) entry of the first map
    val = eval_semi_invariant(p, M)
    a = M.central[1]
    asc, desc = M.asc[1], M.desc[1]
    direct = sum(desc[0][r] * a[r][c] * asc[c][0]
                 for r in range(2) for c in range(2))
    assert val == direct


def test_scaling_degree_matches_lambda():
    rng = random.Random(5)
    l, m = 3, 3
    for (i, j, n, dual) in [(1, 1, 3, False), (1, 1, 3, True), (2, 1, 2, True)]:
        w = sigma_lambda_weight(i, j, n, dual, l, m)
        for k in (1, 2, 3):
            assert lambda_degree_probe(i, j, n, dual, l, m, k, rng) == \
                w[2 * l + k - 1]


def test_flag_scaling_degrees():
    # the value is homogeneous in each flag map; the degree in asc_k is
    # the total size of targets P_{-x} with x <= k (and dually for desc)
    rng = random.Random(9)
    l, m = 3, 3
    for (i, j, n, dual) in [(1, 1, 3, False), (2, 1, 2, False),
                            (1, 1, 3, True), (0, 2, 3, False)]:
        p = lifted_presentation(i, j, n, dual, l, m)
        for k in range(1, l):
            exp_asc = sum(-t for t in p.targets if -t <= k)
            exp_desc = sum(t for t in p.sources if t <= k)
            for _ in range(20):
                M = Representation.random(l, m, rng)
                base = eval_semi_invariant(p, M)
                if base == 0:
                    continue
                Ma = Representation(l, m, dict(M.asc), M.desc, M.central)
                Ma.asc[k] = [[2 * x for x in row] for row in M.asc[k]]
                assert eval_semi_invariant(p, Ma) == base * 2 ** exp_asc
                Md = Representation(l, m, M.asc, dict(M.desc), M.central)
                Md.desc[k] = [[2 * x for x in row] for row in M.desc[k]]
                assert eval_semi_invariant(p, Md) == base * 2 ** exp_desc
                break


def test_dual_presentation_roundtrip():
    p = lifted_presentation(1, 1, 3, False, 3, 3)
    assert p.dual().dual() == p


def test_vertex_values_nonzero_generically():
    rng = random.Random(1)
    Q, _ = build_tilde(2, 3)
    M = Representation.random(2, 3, rng)
    vals = [vertex_value(v, M, 2, 3) for v in Q.vertices]
    assert all(isinstance(v, int) for v in vals)


@pytest.mark.parametrize("l,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_exchange_relations_sample(l, m):
    rng = random.Random(100 * l + m)
    Q, _ = build_tilde(l, m)
    done = 0
    while done < 10:
        M = Representation.random(l, m, rng)
        try:
            rep = check_exchange_relations(l, m, M, Q)
        except Exception:
            continue
        done += 1
        assert rep.ok, rep.failures
        assert rep.checked == len(Q.mutable)


def test_det_weight():
    assert det_weight(2, 3, 3) == (0, 0, -1, 0, 0, 1, 0, 3, 0)
