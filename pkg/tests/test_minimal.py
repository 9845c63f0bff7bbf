import pytest

from hodgemc import fixtures as fx
from hodgemc.dga import ExplicitDga, check_morphism_1qis
from hodgemc.errors import InputError, PreconditionError
from hodgemc.field import ONE, QI
from hodgemc.minimal import (ComplementChoice, bigraded_minimal_model, build_I_and_H, canonical_1_minimal_model,
                             ddc_lemma, ddc_minimal_model, dual_lie_algebra, mhs_on_minimal_model)
from hodgemc.mhs import check_mhs, hodge_numbers


def test_torus_model():
    m = canonical_1_minimal_model(fx.torus(), 2)
    assert m.stage_dims() == [2, 0]
    assert [str(m.phi_of(g)) for g in m.generators] == ["a", "b"]
    assert m.check().ok
    assert check_morphism_1qis(m.phi).ok


def test_heisenberg_model():
    m = canonical_1_minimal_model(fx.heisenberg(), 2)
    assert m.stage_dims() == [2, 1]
    v = m.generators[2]
    assert str(m.d_of(v)) == "m1_1*m1_2"
    assert str(m.phi_of(v)) == "z"
    assert m.weight(v) == 2
    assert check_morphism_1qis(m.phi).ok


def test_simply_connected_model_is_trivial():
    m = canonical_1_minimal_model(fx.even_sphere(), 3)
    assert m.generators == []
    assert m.stage_dims() == [0, 0, 0]


def test_heisenberg_stages_stabilise():
    # H^2 of the model maps injectively once v is added, so stage 3 is empty
    assert canonical_1_minimal_model(fx.heisenberg(), 3).stage_dims() == [2, 1, 0]


def test_disconnected_rejected():
    A = ExplicitDga({0: ["1", "e"], 1: []}, {("e", "e"): {"e": 1}}, {}, max_degree=1)
    with pytest.raises(PreconditionError):
        canonical_1_minimal_model(A, 2)


def test_dual_lie():
    L = dual_lie_algebra(canonical_1_minimal_model(fx.torus(), 2))
    assert L.dim == 2 and L.structure_constants() == {}
    assert L.lower_central_length() == 1
    H = dual_lie_algebra(canonical_1_minimal_model(fx.heisenberg(), 2))
    assert H.dim == 3
    assert H.structure_constants() == {("m1_1*", "m1_2*"): {"m2_1*": ONE}}
    assert H.jacobi_residual() == []
    assert H.lower_central_length() == 2
    # dual weights are negative
    assert H.weights == [-1, -1, -2]


def test_ddc_model_on_kahler_torus():
    B = fx.kahler_torus().B
    assert B.has_dc and ddc_lemma(B).ok
    # d = 0, so the dd^c model agrees with the canonical one
    assert ddc_minimal_model(B, 2).stage_dims() == [2, 0]


def test_bigraded_model_torus():
    q = bigraded_minimal_model(fx.kahler_torus().B, 2)
    assert q.stage_dims() == [2, 0]
    assert [q.types[g] for g in q.generators] == [(1, 0), (0, 1)]
    assert [str(q.phi_of(g)) for g in q.generators] == ["al", "be"]


def test_bigraded_model_threeblock():
    q = bigraded_minimal_model(fx.threeblock().B, 2)
    assert q.stage_dims() == [4, 5]
    assert q.check().ok
    types = sorted(q.types[g] for g in q.generators if q.stage_of(g) == 2)
    assert types == [(0, 2), (1, 1), (1, 1), (1, 1), (2, 0)]
    # psi of the generator killing ζ1ζ̄2 is a pure ∂-form
    psis = {str(q.d_of(g)): str(q.phi_of(g)) for g in q.generators if q.stage_of(g) == 2}
    assert psis["n1_1*n1_4"] == "-del_b"
    assert psis["n1_2*n1_3"] == "-del_bb"


@pytest.mark.parametrize("name", ["kahler-torus", "mixed", "threeblock"])
def test_I_and_H(name):
    m = fx.all_diagrams()[name]()
    pm = ddc_minimal_model(m.A, 2) if m.A.has_dc else canonical_1_minimal_model(m.A, 2)
    qm = bigraded_minimal_model(m.B, 2)
    C = ComplementChoice.augmentation(m.B)
    assert C.report.ok
    ih = build_I_and_H(pm, qm, m.iota, C)
    assert ih.report().ok, ih.report().failed_names()
    mhs, dual = mhs_on_minimal_model(pm, ih)
    assert check_mhs(mhs).ok and check_mhs(dual).ok


def test_torus_model_mhs():
    m = fx.kahler_torus()
    pm = canonical_1_minimal_model(m.A, 2)
    ih = build_I_and_H(pm, bigraded_minimal_model(m.B, 2), m.iota, ComplementChoice.augmentation(m.B))
    # stage 1 only, iota∘phi = psi up to the change of basis: no b corrections
    assert all(not b for b in ih.b.values())
    mhs, _ = mhs_on_minimal_model(pm, ih)
    assert hodge_numbers(mhs) == {(1, 0): 1, (0, 1): 1}


def test_threeblock_model_mhs_has_type_11():
    m = fx.threeblock()
    pm = ddc_minimal_model(m.A, 2) if m.A.has_dc else canonical_1_minimal_model(m.A, 2)
    ih = build_I_and_H(pm, bigraded_minimal_model(m.B, 2), m.iota, ComplementChoice.augmentation(m.B))
    mhs, _ = mhs_on_minimal_model(pm, ih)
    hn = hodge_numbers(mhs)
    assert hn[(1, 0)] == 2 and hn[(0, 1)] == 2
    # corrections b_v are nonzero exactly on the two generators hit by ∂∂̄b and ∂∂̄b̄
    assert sum(1 for b in ih.b.values() if b) == 2


def test_complement_choices():
    B = fx.threeblock().B
    C = ComplementChoice.augmentation(B)
    assert C.C.dim == 2
    y = B["del_b"] + B["dbar_b"]
    assert C.delta_elem(y) == B["b"]
    # kernel of the functional 1 -> 1, b -> 1, bb -> 1 still complements the constants
    K = ComplementChoice.kernel_of(B, [ONE, ONE, ONE])
    assert K.report.ok
    with pytest.raises((InputError, PreconditionError)):
        ComplementChoice.kernel_of(B, [QI(0), ONE, QI(0)])
