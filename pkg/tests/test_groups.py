import random

import pytest

from shalika.field import Field, UnityRoot
from shalika.matrices import Mat, gl_order, tau
from shalika.groups import (DeltaPContext, ShalikaContext, action_character,
                            chi, deltap_character_coverage, deltap_contains,
                            deltap_enumerate, deltap_generators, deltap_size,
                            gk_conjugators, h_block_data, h_contains,
                            h_enumerate, h_generators, h_size, hprime_contains,
                            hprime_enumerate, psi, psi_tau, psi_u, random_h,
                            verify_gk_conditions)

F2 = Field(2)
F3 = Field(3)


def test_h_size_formula():
    # |H| = |GL_n| |GL_{m-n}| q^{n^2 + 2n(m-n)}
    for q, n, m in [(2, 1, 1), (2, 1, 2), (3, 1, 2), (2, 2, 2), (3, 1, 3)]:
        ctx = ShalikaContext(Field(q), n, m)
        expect = (gl_order(q, n) * gl_order(q, m - n)
                  * q ** (n * n + 2 * n * (m - n)))
        assert h_size(ctx) == expect


def test_h_enumerate_matches_membership():
    ctx = ShalikaContext(F2, 1, 2)
    members = list(h_enumerate(ctx))
    assert len(members) == h_size(ctx) == 8
    for h in members:
        assert h_contains(ctx, h) is not None
    # distinct
    assert len({h.key() for h in members}) == 8


def test_h_block_data_consistent():
    ctx = ShalikaContext(F3, 1, 2)
    stack, tr, dg, dk = h_block_data(F3, 1, 2)
    members = list(h_enumerate(ctx))
    assert stack.shape[0] == len(members)
    for i, h in enumerate(members):
        assert (stack[i] == h.array).all()
        dec = h_contains(ctx, h)
        assert dg[i] == dec.g.det().code
        assert dk[i] == dec.k.det().code


def test_hprime_is_tau_of_h():
    ctx = ShalikaContext(F2, 1, 2)
    taus = {tau(h, 1, 2).key() for h in h_enumerate(ctx)}
    hps = {h.key() for h in hprime_enumerate(ctx)}
    assert taus == hps
    for hp in hprime_enumerate(ctx):
        assert hprime_contains(ctx, hp) is not None


def test_psi_untwisted_example():
    # n = m = 1, q = 3: the unipotent element [[1,2],[0,1]] has character
    # exponent Tr(2)/3 = 2/3
    ctx = ShalikaContext(F3, 1, 1)
    h = Mat.from_rows(F3, [[1, 2], [0, 1]])
    assert psi(ctx, h) == UnityRoot("2/3")
    assert psi_u(ctx, h) == UnityRoot("2/3")


def test_psi_twisted_example():
    # a1 = 1 picks up the determinant character: dlog(2) = 1, exponent 1/2
    ctx = ShalikaContext(F3, 1, 1, a1=1)
    h = Mat.from_rows(F3, [[2, 0], [0, 2]])
    assert psi(ctx, h) == UnityRoot("1/2")
    assert psi_u(ctx, h).is_one


def test_additive_twist_changes_psi():
    ctx1 = ShalikaContext(F3, 1, 1, c=1)
    ctx2 = ShalikaContext(F3, 1, 1, c=2)
    h = Mat.from_rows(F3, [[1, 1], [0, 1]])
    assert psi(ctx1, h) != psi(ctx2, h)


def test_psi_multiplicative_exhaustive_small():
    ctx = ShalikaContext(F3, 1, 1, a1=1, c=2)
    members = list(h_enumerate(ctx))
    for h1 in members:
        for h2 in members:
            assert psi(ctx, h1 @ h2) == psi(ctx, h1) * psi(ctx, h2)


def test_psi_tau_matches_definition():
    ctx = ShalikaContext(F3, 1, 2, a1=1, a2=1)
    for hp in list(hprime_enumerate(ctx))[:40]:
        assert psi_tau(ctx, hp) == psi(ctx, tau(hp, 1, 2))


def test_action_character():
    ctx = ShalikaContext(F2, 1, 2)
    rng = random.Random(1)
    for _ in range(20):
        h1 = tau(random_h(ctx, rng), 1, 2)
        h2 = random_h(ctx, rng)
        expect = psi(ctx, tau(h1, 1, 2) @ h2.inv())
        assert action_character(ctx, h1, h2) == expect


def test_h_generators_generate():
    for ctx in [ShalikaContext(F2, 1, 2), ShalikaContext(F3, 1, 1),
                ShalikaContext(F2, 2, 2)]:
        gens = h_generators(ctx)
        seen = {Mat.identity(ctx.field, ctx.size).key()}
        frontier = [Mat.identity(ctx.field, ctx.size)]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = x @ g
                    if y.key() not in seen:
                        seen.add(y.key())
                        new.append(y)
            frontier = new
        assert len(seen) == h_size(ctx)


def test_gk_conjugators():
    ctx = ShalikaContext(F3, 1, 2, a1=1)
    res = verify_gk_conditions(ctx, samples=50, seed=3)
    assert res["ok"], res


def test_deltap_membership_and_size():
    ctx = DeltaPContext(F2, 1, 1)
    members = list(deltap_enumerate(ctx))
    assert len(members) == deltap_size(ctx) == 2
    for p in members:
        assert deltap_contains(ctx, p) is not None
    bad = (Mat.identity(F2, 1), Mat.from_rows(F2, [[0, 1], [1, 0]]))
    assert deltap_contains(ctx, bad) is None


def test_chi_multiplicative():
    ctx = DeltaPContext(F3, 1, 1, x1=1, x2=1)
    members = list(deltap_enumerate(ctx))
    for p1 in members[:10]:
        for p2 in members[:10]:
            prod = (p1[0] @ p2[0], p1[1] @ p2[1])
            assert chi(ctx, prod) == chi(ctx, p1) * chi(ctx, p2)


def test_deltap_generators_generate():
    ctx = DeltaPContext(F2, 1, 1)
    gens = deltap_generators(ctx)
    f = ctx.field
    start = (Mat.identity(f, 1), Mat.identity(f, 2))
    seen = {(start[0].key(), start[1].key())}
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = (x[0] @ g[0], x[1] @ g[1])
                k = (y[0].key(), y[1].key())
                if k not in seen:
                    seen.add(k)
                    new.append(y)
        frontier = new
    assert len(seen) == deltap_size(ctx)


def test_deltap_character_coverage_reports():
    # GL_1(2) and GL_2(2) have nontrivial abelianization quirks at tiny q;
    # the report must expose whether the det family is exhaustive rather
    # than assume it
    cov = deltap_character_coverage(DeltaPContext(F3, 1, 1))
    assert cov["det_family"] == 4
    assert cov["all_unipotent_trivial"] >= cov["det_family"]
    cov2 = deltap_character_coverage(DeltaPContext(F2, 1, 1))
    assert cov2["det_family"] == 1


def test_context_normalization():
    ctx = ShalikaContext(F3, 1, 1, a1=5, a2=-1, c=5)
    assert ctx.a1 == 1 and ctx.a2 == 1 and ctx.c == 2
    with pytest.raises(ValueError):
        ShalikaContext(F3, 2, 1)
