import random

import pytest

from ss5 import curves as C
from ss5 import kummer as KM
from ss5.field import FieldCtx, embed


def _kappa_coeffs(K):
    return {m: c for m, c in K.kappa().items()}


def test_surface_p5_example_coefficients():
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1))
    K = KM.kummer_surface(Z)
    got = {m: int(c.coeffs[0]) for m, c in _kappa_coeffs(K).items()}
    want = {
        (1, 3, 0, 0): 2, (0, 4, 0, 0): 2, (2, 1, 1, 0): 3, (1, 2, 1, 0): 1,
        (2, 0, 2, 0): 2, (0, 0, 4, 0): 1, (3, 0, 0, 1): 2, (0, 1, 2, 1): 3,
        (0, 0, 3, 1): 1, (0, 2, 0, 2): 1, (1, 0, 1, 2): 1,
    }
    assert got == want


def test_surface_p37_degree5_example_coefficients():
    ctx = FieldCtx(37)
    Z = KM.sextic_normalize(ctx, (36, 0, 0, 0, 0, 1, 0))
    assert [int(c.coeffs[0]) for c in Z.d] == [0, 1, 0, 0, 0, 0, 36]
    K = KM.kummer_surface(Z)
    got = {m: int(c.coeffs[0]) for m, c in _kappa_coeffs(K).items()}
    want = {
        (4, 0, 0, 0): 1, (0, 3, 1, 0): 4, (1, 1, 2, 0): 33,
        (2, 1, 0, 1): 35, (0, 0, 3, 1): 4, (0, 2, 0, 2): 1, (1, 0, 1, 2): 33,
    }
    assert got == want


def test_middle_form_is_independent_of_the_sextic():
    rng = random.Random(0)
    ctx = FieldCtx(13)
    for _ in range(5):
        coeffs = [rng.randrange(13) for _ in range(6)] + [rng.randrange(1, 13)]
        try:
            Z = KM.sextic_normalize(ctx, coeffs)
        except ValueError:
            continue
        K = KM.kummer_surface(Z)
        assert K.K2 == {(0, 2, 0): ctx.one, (1, 0, 1): ctx.elem(-4)}


def test_normalize_degree5_with_root_at_zero_uses_a_shift():
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (0, 3, 0, 0, 0, 1, 0))
    assert not Z.d[6].is_zero()
    f = __import__("ss5.poly", fromlist=["UniPoly"]).UniPoly(ctx, list(Z.d))
    assert f.gcd(f.derivative()).degree == 0


def test_normalize_degree5_point_count_invariance():
    # the inverted model must describe the same curve: equal counts
    ctx = FieldCtx(53)
    Z = KM.sextic_normalize(ctx, (52, 0, 0, 0, 0, 1, 0))
    assert [int(c.coeffs[0]) for c in Z.d] == [0, 1, 0, 0, 0, 0, 52]
    orig = C.HyperellipticSextic(ctx, tuple(ctx.elem(v) for v in (52, 0, 0, 0, 0, 1)))
    for k in (1, 2):
        assert C.count_points(orig, k) == C.count_points(Z.model(), k)


def test_normalize_rejects_bad_input():
    ctx = FieldCtx(7)
    with pytest.raises(ValueError):
        KM.sextic_normalize(ctx, (1, 2, 3, 1, 0, 0, 0))  # degree 3
    with pytest.raises(ValueError):
        KM.sextic_normalize(ctx, (0, 0, 1, 0, 1, 0, 0))  # x^2 (1 + x^2): not separable
    with pytest.raises(ValueError):
        KM.sextic_normalize(FieldCtx(5), (0, 4, 0, 0, 0, 1, 0))  # branch locus = P^1


def test_nodes_sixteen_with_vanishing_gradient():
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1))
    K = KM.kummer_surface(Z)
    nodes = KM.kummer_nodes(K)  # the asserts inside are the test
    assert len(nodes) == 16
    assert [c.is_zero() for c in nodes[0][0]] == [True, True, True, False]


def test_plane_w_zero_section_is_the_constant_form():
    ctx = FieldCtx(13)
    Z = KM.sextic_normalize(ctx, (4, 1, 4, 0, 11, 5, 5))
    K = KM.kummer_surface(Z)
    V = KM.PlaneV(ctx, ctx.zero, ctx.zero, ctx.zero, ctx.one)
    X = KM.plane_section(K, V)
    for (i, j, l), c in X.coeff_dict().items():
        assert c == K.K0.get((i, j, l), ctx.zero)


def test_section_points_lift_to_the_surface():
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1))
    K = KM.kummer_surface(Z)
    V = KM.PlaneV(ctx, ctx.zero, ctx.one, ctx.one, ctx.one)
    X = KM.plane_section(K, V)
    one = ctx.one
    for y in ctx.elements():
        for z in ctx.elements():
            if not X.eval(one, y, z).is_zero():
                continue
            w = -(V.b * y + V.c * z) / V.d  # a = 0 on this plane
            assert K.kappa_eval(one, y, z, w).is_zero()


def test_plane_through_node_gives_singular_section():
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1))
    K = KM.kummer_surface(Z)
    nodes = KM.kummer_nodes(K)
    # the identity node [0:0:0:1] lies on every plane with d = 0
    V = KM.PlaneV(ctx, ctx.one, ctx.one, ctx.zero, ctx.zero)
    assert V.eval(*nodes[0][0]).is_zero()
    X = KM.plane_section(K, V)
    smooth, _w = C.smoothness_check(X)
    assert not smooth


def test_scan_contains_both_published_curves():
    found = KM.genus2_supersingular_scan(5, max_curves=10 ** 9)
    labels = {tuple(int(c.coeffs[0]) for c in Z.d) for Z in found}
    assert (2, 0, 0, 0, 0, 1, 1) in labels
    assert (0, 1, 0, 0, 0, 3, 4) in labels  # x^5 + 3x after normalization
    for Z in found[:20]:
        L = C.lpolynomial(Z.model())
        assert C.is_supersingular(L)


def test_search_table_row_p13_plane_is_supersingular():
    ctx = FieldCtx(13)
    Z = KM.sextic_normalize(ctx, (4, 1, 4, 0, 11, 5, 5))
    K = KM.kummer_surface(Z)
    nodes = KM.kummer_nodes(K)
    V = KM.PlaneV(ctx, *[ctx.elem(v) for v in (4, 1, 11, 1)])
    res = KM._examine_plane(K, nodes, V, C.Config().counting_budget)
    assert res is not None and res.status == "supersingular"


def test_search_checkpoint_resume_matches_uninterrupted(tmp_path):
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1), label="ck")
    full = KM.search_planes(Z)
    ck = str(tmp_path / "scan.json")
    # small checkpoint blocks, interrupted by a limit, then resumed
    partial = KM.search_planes(Z, checkpoint_path=ck, checkpoint_every=25, limit=2)
    assert len(partial) == 2
    resumed = KM.search_planes(Z, checkpoint_path=ck, checkpoint_every=25)
    assert [r.payload() for r in resumed] == [r.payload() for r in full]


def test_search_rejects_mismatched_checkpoint(tmp_path):
    import json

    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1), label="a")
    ck = tmp_path / "scan.json"
    ck.write_text(json.dumps({
        "p": 13, "curve_label": "other", "chart": "d", "next_index": 0, "found": []
    }))
    with pytest.raises(ValueError):
        KM.search_planes(Z, checkpoint_path=str(ck))


def test_parallel_chunking_matches_serial():
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1))
    serial = KM.search_planes(Z)
    cfg = C.Config(jobs=2)
    parallel = KM.search_planes(Z, cfg)
    assert [r.payload() for r in parallel] == [r.payload() for r in serial]


def test_verify_table_single_rows():
    for p in (5, 61):  # 61 exercises the a = 0 plane
        out = KM.verify_table1(p)
        assert out["all_pass"], out
    with pytest.raises(ValueError):
        KM.verify_table1(7)
