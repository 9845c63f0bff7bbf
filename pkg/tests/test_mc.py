import random

import pytest
from hypothesis import given, settings, strategies as st

from hodgemc import fixtures as fx
from hodgemc.dga import DgaMorphism, FreeDga, TdtElement
from hodgemc.errors import InputError
from hodgemc.forms import FormMatrix
from hodgemc.linalg import IncreasingFiltration
from hodgemc.mc import (MaurerCartanElement, check_flat_morphism, check_mc, gauge, gauge_in_complement,
                        random_tdt_mc, random_transport_instance, transport)
from hodgemc.minimal import ComplementChoice, canonical_1_minimal_model, ddc_minimal_model

N = [[0, 1], [0, 0]]
W01 = IncreasingFiltration.from_weights([0, 1])


@pytest.fixture(scope="module")
def B():
    return fx.threeblock_B()


def _id(B):
    return FormMatrix.identity(B, 2)


def test_zero_and_square_zero(B):
    assert check_mc(MaurerCartanElement(B, W01, FormMatrix.zeros(B, 1, 2, 2))).ok
    assert check_mc(MaurerCartanElement(B, W01, FormMatrix.tensor(B["z1"], N))).ok


def test_noncommuting_fails():
    T = fx.torus()
    W = IncreasingFiltration.from_weights([0, 1, 2])
    Nm = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    M = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]
    om = FormMatrix.tensor(T.gen("a"), Nm) + FormMatrix.tensor(T.gen("b"), M)
    r = check_mc(MaurerCartanElement(T, W, om))
    # residual a∧b ⊗ NM is supported at entry (0, 2)
    assert r.failed_names() == ["residual is zero"]
    assert r.checks[0].witness == {"entries": [[0, 2]]}


def test_weight_condition(B):
    # N^T raises weight
    r = check_mc(MaurerCartanElement(B, W01, FormMatrix.tensor(B["z1"], [[0, 0], [1, 0]])))
    assert "omega in W_-1 End(V)" in r.failed_names()


def test_shape_errors(B):
    with pytest.raises(InputError):
        MaurerCartanElement(B, W01, FormMatrix.zeros(B, 1, 3, 3))
    with pytest.raises(InputError):
        MaurerCartanElement(B, W01, FormMatrix.zeros(B, 1, 2, 2), "sideways")


def test_conventions_agree(B):
    x = MaurerCartanElement(B, W01, FormMatrix.tensor(B["z1"], N), "minus")
    assert x.to_plus().omega == -x.omega
    assert x.as_convention("plus") == x


def test_flat_morphism_examples(B):
    om = MaurerCartanElement(B, W01, FormMatrix.tensor(B["z1"], N))
    assert check_flat_morphism(_id(B), om, om).ok
    assert check_flat_morphism(FormMatrix.zeros(B, 0, 2, 2), om, om).ok
    # a = Id + b N is not flat: da = db N is left over
    a = _id(B) + FormMatrix.tensor(B["b"], N)
    assert not check_flat_morphism(a, om, om).ok


def test_transport_example(B):
    # source Λ(x), omega = (f(x) + dg) N  ->  Omega = x N, a = Id - g N
    S = FreeDga([("x", 1)], field="qi", name="S")
    f = DgaMorphism(S, B, {"x": B["z1"]})
    g = B["b"]
    om = MaurerCartanElement(B, W01, FormMatrix.tensor(B["z1"] + g.d(), N))
    tr = transport(f, om)
    assert tr.Omega.omega == FormMatrix.tensor(S.gen("x"), N)
    assert tr.a.a == _id(B) - FormMatrix.tensor(g, N)
    assert tr.report(f, om).ok


def test_transport_identity_and_zero(B):
    om = MaurerCartanElement(B, W01, FormMatrix.tensor(B["z1"] + B["zb2"], N))
    idm = DgaMorphism(B, B, {lab: B[lab] for k in range(3) for lab in B.labels(k)})
    tr = transport(idm, om)
    assert tr.Omega.omega == om.omega and tr.a.a == _id(B)
    zero = MaurerCartanElement(B, W01, FormMatrix.zeros(B, 1, 2, 2))
    tr = transport(idm, zero)
    assert tr.Omega.omega.is_zero() and tr.a.a == _id(B)


def test_gauge_example(B):
    C = ComplementChoice.augmentation(B)
    g, x = B["b"], B["z1"]
    # w = (x + t dg) N + g N dt
    w = FormMatrix.tensor(TdtElement(B, 1, {0: x, 1: g.d()}, {}), N) + \
        FormMatrix.tensor(TdtElement(B, 1, {}, {0: g}), N)
    mc = MaurerCartanElement(B, W01, w, "minus")
    assert check_mc(mc).ok
    res = gauge(mc, C)
    assert res.a.a == _id(B) - FormMatrix.tensor(g, N)
    assert res.identity_residual().is_zero()
    assert gauge_in_complement(res, C)


def test_gauge_constant_is_identity(B):
    C = ComplementChoice.augmentation(B)
    w = FormMatrix.tensor(TdtElement.lift(B["z1"]), N)
    res = gauge(MaurerCartanElement(B, W01, w), C)
    assert res.a.a == _id(B)


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6), st.sampled_from(["plus", "minus"]))
def test_random_gauge(seed, conv):
    B = fx.threeblock_B()
    C = ComplementChoice.augmentation(B)
    rng = random.Random(seed)
    W = IncreasingFiltration.from_weights(sorted(rng.choice([-1, 0, 1, 2]) for _ in range(rng.randint(2, 4))))
    m = random_tdt_mc(B, W, rng, 4, conv)
    r = gauge(m, C)
    assert r.identity_residual().is_zero()
    assert gauge_in_complement(r, C)
    assert r.a.a == m.expected_a


_MODELS = {}


def _model(i):
    if i not in _MODELS:
        build = [lambda: canonical_1_minimal_model(fx.heisenberg(), 3),
                 lambda: canonical_1_minimal_model(fx.torus(), 3),
                 lambda: canonical_1_minimal_model(fx.mixed_diagram().A, 3),
                 lambda: ddc_minimal_model(fx.threeblock().A, 2)][i]
        _MODELS[i] = build()
    return _MODELS[i]


@settings(max_examples=12)
@given(st.integers(0, 10 ** 6), st.integers(0, 3))
def test_random_transport(seed, which):
    m = _model(which)
    Om0, om = random_transport_instance(m, random.Random(seed), max_len=3)
    tr = transport(m.phi, om)
    assert tr.report(m.phi, om).ok
