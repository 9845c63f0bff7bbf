import pytest
from hypothesis import given, strategies as st

from hodgemc import fixtures as fx
from hodgemc.dga import (DgaMorphism, ExplicitDga, FreeDga, TdtElement, check_dga_morphism, check_homotopy,
                         check_morphism_1qis, cohomology, constant_homotopy, dec_shift, identity_morphism,
                         tdt_calculus, validate_dga)
from hodgemc.errors import InputError, PreconditionError
from hodgemc.field import I, ONE, QI


def test_free_algebras_validate():
    for A in (fx.torus(), fx.heisenberg(), fx.even_sphere()):
        assert validate_dga(A).ok


def test_free_basis_labels():
    H = fx.heisenberg()
    assert H.labels(2) == ["x*y", "x*z", "y*z"]
    assert H.labels(3) == ["x*y*z"]
    assert H.gen("z").d() == H["x*y"]
    # odd generators square to zero
    assert (H.gen("x") * H.gen("x")).is_zero()
    assert H.gen("y") * H.gen("x") == -H["x*y"]


@pytest.mark.parametrize("builder,dims", [
    (fx.torus, [1, 2, 1, 0]),
    (fx.heisenberg, [1, 2, 2, 1]),
    (fx.even_sphere, [1, 0, 1, 0]),
])
def test_cohomology_dims(builder, dims):
    A = builder()
    assert [cohomology(A, n).dim for n in range(4)] == dims


def test_heisenberg_representatives():
    H = fx.heisenberg()
    c = cohomology(H, 2)
    assert [str(r) for r in c.representatives()] == ["x*z", "y*z"]
    assert c.is_exact(H["x*y"])
    assert not cohomology(H, 1).is_exact(H.gen("x"))
    with pytest.raises(InputError):
        cohomology(H, 1).classify(H.gen("z"))
    with pytest.raises(InputError):
        cohomology(H, 7)


def test_explicit_failures_detected():
    # d∘d != 0
    A = ExplicitDga({0: ["1"], 1: ["x"], 2: ["y"], 3: ["w"]}, {}, {"x": {"y": 1}, "y": {"w": 1}}, max_degree=3)
    assert "d∘d = 0" in validate_dga(A).failed_names()
    # x^2 = y for odd x breaks graded commutativity
    B = ExplicitDga({0: ["1"], 1: ["x"], 2: ["y"]}, {("x", "x"): {"y": 1}}, {}, max_degree=2)
    assert "graded commutativity" in validate_dga(B).failed_names()


def test_free_differential_must_be_ordered():
    A = FreeDga([("x", 1), ("z", 1)], {"z": [[1, "z", "x"]]})
    assert not validate_dga(A).ok


def test_inclusion_is_not_1qis():
    H = fx.heisenberg()
    S = FreeDga([("x", 1), ("y", 1)], name="s")
    inc = DgaMorphism(S, H, {"x": H.gen("x"), "y": H.gen("y")})
    assert check_dga_morphism(inc).ok
    r = check_morphism_1qis(inc)
    assert r.failed_names() == ["H^2 injective"]
    assert r.data["ranks"]["2"] == {"source": 1, "target": 2, "rank": 0}


def test_identity_is_1qis():
    H = fx.heisenberg()
    assert check_morphism_1qis(identity_morphism(H)).ok


def test_non_chain_map_rejected():
    H = fx.heisenberg()
    T = fx.torus()
    # z -> a is not a chain map since dz = xy -> ab != 0 = da
    f = DgaMorphism(H, T, {"x": T.gen("a"), "y": T.gen("b"), "z": T.gen("a")})
    assert "chain map" in check_dga_morphism(f).failed_names()


# (t, dt) calculus --------------------------------------------------------------

def test_tdt_examples():
    H = fx.heisenberg()
    z = H.gen("z")
    e = TdtElement(H, 1, {2: z}, {})
    # d(t^2 z) = t^2 xy + 2 t dt z; the sign comes from moving dt past nothing
    de = e.d()
    assert de.eval1() == H["x*y"]
    assert de.integrate01() == z
    # b dt with b of degree 0 integrates to b
    assert tdt_calculus("integrate01", TdtElement(H, 1, {}, {0: H.unit()})) == H.unit()
    # sign (-1)^(n-1) and the 1/(i+1) factor: x t^2 dt has total degree 2
    assert TdtElement(H, 2, {}, {2: H.gen("x")}).integrate01() == -H.gen("x").scale(ONE / QI(3))
    assert TdtElement(H, 1, {2: z}, {}).integrate01().is_zero()
    with pytest.raises(InputError):
        tdt_calculus("nope", e)


def _tdt(H, data):
    names = ["x", "y", "z"]
    poly, dt = {}, {}
    for j, (c, g, kind) in enumerate(data):
        if kind == 0:
            poly[j] = poly.get(j, H.zero(1)) + H.gen(names[g]).scale(QI(c))
        else:
            dt[j] = dt.get(j, H.zero(0)) + H.unit().scale(QI(c))
    return TdtElement(H, 1, poly, dt)


terms = st.lists(st.tuples(st.integers(-4, 4), st.integers(0, 2), st.integers(0, 1)), max_size=5)


@given(terms)
def test_stokes_identities(data):
    H = fx.heisenberg()
    e = _tdt(H, data)
    assert e.d().integrate01() + e.integrate01().d() == e.eval1() - e.eval0()
    assert e.d().integrate0t() + e.integrate0t().d() == e - TdtElement.lift(e.eval0())
    assert e.d().d().is_zero()


@given(terms, terms)
def test_tdt_leibniz(a, b):
    H = fx.heisenberg()
    x, y = _tdt(H, a), _tdt(H, b)
    assert x.wedge(y).d() == x.d().wedge(y) - x.wedge(y.d())


# homotopies --------------------------------------------------------------------

def test_constant_homotopy():
    H = fx.heisenberg()
    f = identity_morphism(H)
    assert check_homotopy(constant_homotopy(f), f, f).ok


def test_homotopy_with_dt_component():
    T = fx.torus()
    f = identity_morphism(T)
    # b -> b + dt is closed and multiplicative, and restricts to the identity at both ends
    Hm = DgaMorphism(T, T, {"a": TdtElement.lift(T.gen("a")),
                            "b": TdtElement(T, 1, {0: T.gen("b")}, {0: T.unit()})})
    assert check_homotopy(Hm, f, f).ok
    zero = DgaMorphism(T, T, {"a": T.zero(1), "b": T.zero(1)})
    assert check_homotopy(Hm, f, zero).failed_names() == ["endpoint t=1"]
    # b -> t b is not closed: d(t b) = dt b
    bad = DgaMorphism(T, T, {"a": TdtElement.lift(T.gen("a")), "b": TdtElement(T, 1, {1: T.gen("b")}, {})})
    assert not check_homotopy(bad, f, f).ok


# weights -----------------------------------------------------------------------

def test_dec_shift():
    m = fx.kahler_torus()
    A = m.A
    D = dec_shift(A)
    # everything sits in weight 0, so W' jumps exactly at i = r in degree r
    assert D.W(1)(1).dim == 2 and D.W(1)(0).dim == 0
    assert D.W(2)(2).dim == 1 and D.W(2)(1).dim == 0
    assert validate_dga(D).ok
    with pytest.raises(PreconditionError):
        dec_shift(fx.torus())


def test_complex_coefficients():
    T = FreeDga([("a", 1), ("b", 1)], field="qi")
    x = T.gen("a").scale(I) + T.gen("b")
    assert (x * x).is_zero()
    assert x.conj_coeffs() == T.gen("a").scale(-I) + T.gen("b")
    assert T.gen("a").scale(ONE / QI(2)).is_real()
