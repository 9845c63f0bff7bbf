import random

import pytest
from hypothesis import given, settings, strategies as st

from hodgemc import fixtures as fx
from hodgemc.errors import InputError, PreconditionError
from hodgemc.field import I, ONE, QI
from hodgemc.forms import FormMatrix
from hodgemc.linalg import identity
from hodgemc.mc import MaurerCartanElement, _unipotent_inverse
from hodgemc.mhs import check_mhs
from hodgemc.samplers import random_mhs
from hodgemc.vmhs import (HodgeRep, VmhsMorphism, VmhsObject, build_3block_example, check_hodge_rep,
                          check_vmhs_morphism, check_vmhs_object, descend, identity_morphism, kappa, phi_C, phi_C_morphism,
                          random_hodge_rep, reps_equal, threeblock_rep, transform_rep, zero_rep)

QUARTER = ONE / QI(4)
SEED = {(0, 1): "m1_1", (0, 2): "m1_2", (1, 3): "m1_3", (2, 3): "m1_4"}


@pytest.fixture(scope="module")
def tb(contexts):
    ctx = contexts["threeblock"]
    r = threeblock_rep(ctx, fx.threeblock_V(), SEED, "minus")
    return ctx, r, phi_C(r, ctx)


def test_threeblock_rep_is_hodge_rep(tb):
    ctx, r, _ = tb
    assert check_hodge_rep(r, ctx).ok
    assert [str(x) for x in r.Omega.omega.e[0]][:3] == ["0", "m1_1", "m1_2"]


def test_threeblock_corner_entries(tb):
    # closed forms computed by hand inside B with beta = (-i/4)(b - b̄)
    ctx, r, o = tb
    B, iota = ctx.diagram.B, ctx.diagram.iota
    om_corner = (B["dbar_b"] - B["dbar_bb"] - B["del_b"] + B["del_bb"]).scale(QUARTER)
    assert iota(o.omega.omega.e[0][3]) == om_corner
    assert o.omega_prime.omega.e[0][3] == (B["del_bb"] - B["del_b"]).scale(ONE / QI(2))
    assert o.a.e[0][3] == (B["bb"] - B["b"]).scale(QUARTER)
    # a = Id - i beta E_03: everything else is the identity
    for i in range(4):
        for j in range(4):
            if (i, j) != (0, 3):
                assert o.a.e[i][j] == (B.unit() if i == j else B.zero(0))


def test_threeblock_matches_direct_formula(tb):
    ctx, r, o = tb
    m = ctx.diagram
    A, B, phi = m.A, m.B, ctx.phi_model.phi
    a1 = FormMatrix(A, 1, [[phi(ctx.M.gen("m1_1")), phi(ctx.M.gen("m1_2"))]])
    a2 = FormMatrix(A, 1, [[phi(ctx.M.gen("m1_3"))], [phi(ctx.M.gen("m1_4"))]])
    ex, beta = build_3block_example(m, fx.threeblock_V(), (1, 2, 1), a1, a2)
    assert m.iota(beta.e[0][0]) == (B["b"] - B["bb"]).scale(-I * QUARTER)
    # α₁∧α₂ = dd^cβ and ι(β) has no constant term
    assert (a1 @ a2).e[0][0] == beta.e[0][0].dc().d()
    assert m.iota(beta.e[0][0]).vec()[0] == 0
    assert ex.omega == o.omega and ex.omega_prime == o.omega_prime and ex.a == o.a


def test_threeblock_descends(tb):
    ctx, r, o = tb
    d = descend(o, ctx)
    assert reps_equal(d.rep, r)
    assert d.c == identity(4)
    assert d.report.ok


def test_object_checks(tb):
    ctx, r, o = tb
    assert check_vmhs_object(o).ok
    B = ctx.diagram.B
    # a with a diagonal perturbation is not unipotent
    ents = [row[:] for row in o.a.e]
    ents[1][1] = ents[1][1] + B["b"]
    bad = VmhsObject(o.diagram, o.mhs, o.omega, o.omega_prime, FormMatrix(B, 0, ents))
    assert "a in Id + B^0 ⊗ W_-1 End" in check_vmhs_object(bad).failed_names()


def test_shifted_object_descends_to_same_rep(tb):
    """Replace ω by its gauge transform under b = Id + Re(b)·E_03; descent
    finds an isomorphism back to Φ_C of the original representation."""
    ctx, r, o = tb
    A, B, iota = ctx.diagram.A, ctx.diagram.B, ctx.diagram.iota
    E = [[ONE if (i, j) == (0, 3) else 0 for j in range(4)] for i in range(4)]
    f = A.element(0, {A.labels(0)[1]: ONE})
    b = FormMatrix.identity(A, 4) + FormMatrix.tensor(f, E)
    binv = _unipotent_inverse(b)
    # "minus" flatness db - ω₂b + bω₁ = 0 gives ω₂ = (bω₁ + db)b⁻¹
    om2 = (b @ o.omega.omega + b.d()) @ binv
    omega2 = MaurerCartanElement(A, o.mhs.W, om2, "minus")
    ib_inv = binv.map(lambda x: iota(x), dga=B)
    o2 = VmhsObject(o.diagram, o.mhs, omega2, o.omega_prime, o.a @ ib_inv)
    assert check_vmhs_object(o2).ok
    assert check_vmhs_morphism(VmhsMorphism(b, FormMatrix.identity(B, 4)), o, o2, iso=True).ok
    d = descend(o2, ctx)
    assert d.rep.Omega == r.Omega
    assert check_vmhs_morphism(d.iso, d.image, o2, iso=True).ok


def test_identity_morphism_and_functoriality(tb):
    ctx, r, o = tb
    assert check_vmhs_morphism(identity_morphism(o), o, o, iso=True).ok
    m = phi_C_morphism(identity(4), r, r, ctx)
    assert check_vmhs_morphism(m, o, o).ok


def test_basis_change_functoriality(contexts):
    ctx = contexts["threeblock"]
    r = threeblock_rep(ctx, fx.threeblock_V(), SEED, "minus")
    # scaling V0 and V2 by 2 preserves W and F, so g is an isomorphism r -> g·r
    g = [[QI(2), 0, 0, 0], [0, ONE, 0, 0], [0, 0, ONE, 0], [0, 0, 0, QI(2)]]
    g = [[QI.coerce(x) for x in row] for row in g]
    r2 = transform_rep(r, g)
    assert check_hodge_rep(r2, ctx).ok
    o1, o2 = phi_C(r, ctx), phi_C(r2, ctx)
    assert check_vmhs_morphism(phi_C_morphism(g, r, r2, ctx), o1, o2, iso=True).ok


@pytest.mark.parametrize("name", ["kahler-torus", "mixed", "threeblock"])
def test_kappa_descends_to_zero(contexts, name):
    ctx = contexts[name]
    V = random_mhs(random.Random(7), 4)
    o = kappa(ctx.diagram, V)
    assert check_vmhs_object(o).ok
    d = descend(o, ctx)
    assert d.rep.Omega.omega.is_zero() and d.rep.mhs == V
    assert reps_equal(d.rep, zero_rep(ctx, V))


@settings(max_examples=9)
@given(st.integers(0, 10 ** 6), st.sampled_from(["kahler-torus", "mixed", "threeblock"]),
       st.sampled_from(["plus", "minus"]))
def test_round_trip_random_reps(contexts, seed, name, conv):
    ctx = contexts[name]
    r = random_hodge_rep(ctx, random.Random(seed), convention=conv)
    assert check_hodge_rep(r, ctx).ok
    o = phi_C(r, ctx)
    d = descend(o, ctx)
    assert reps_equal(d.rep, r)
    assert check_mhs(d.rep.mhs).ok


def test_descend_rejects_foreign_object(contexts, tb):
    ctx, r, o = tb
    with pytest.raises(InputError):
        descend(o, contexts["kahler-torus"])


def test_phi_C_rejects_non_rep(contexts):
    ctx = contexts["threeblock"]
    V = fx.threeblock_V()
    M = ctx.M
    n = V.dim
    # a weight-2 generator on a weight -1 entry: outside W_0 and not closed
    Om = FormMatrix.zeros(M, 1, n, n)
    ents = [row[:] for row in Om.e]
    ents[0][1] = M.gen("m2_1")
    bad = MaurerCartanElement(M, V.W, FormMatrix(M, 1, ents), "minus")
    rep = HodgeRep(bad, V)
    assert not check_hodge_rep(rep, ctx).ok
    with pytest.raises(PreconditionError):
        phi_C(rep, ctx)
