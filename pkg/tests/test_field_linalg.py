from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hodgemc.errors import InputError
from hodgemc.field import I, ONE, ZERO, QI, format_scalar, parse_scalar, scalar_to_json
from hodgemc.linalg import (DecreasingFiltration, IncreasingFiltration, Subspace, annihilator, induced_filtration,
                            inverse, kernel, mat_mul, preimage, rank, rref, solve_linear, identity)

small = st.integers(-6, 6)
fracs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))
scalars = st.builds(QI, fracs, fracs)


def mat(rows):
    return [[QI.coerce(x) for x in r] for r in rows]


# scalars ------------------------------------------------------------------

def test_parse_forms():
    assert parse_scalar("3/2") == QI(Fraction(3, 2))
    assert parse_scalar("-i") == QI(0, -1)
    assert parse_scalar("1/2-3i") == QI(Fraction(1, 2), -3)
    assert parse_scalar({"re": "1", "im": "-1/3"}) == QI(1, Fraction(-1, 3))
    assert parse_scalar(4) == QI(4)


@pytest.mark.parametrize("bad", ["1/0", "", "x", "1.5", {"re": "1", "zz": "0"}, True, 1.5])
def test_parse_rejects(bad):
    with pytest.raises(InputError):
        parse_scalar(bad)


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conj() == a.conj() * b.conj()
    if a:
        assert a * (ONE / a) == ONE


@given(scalars)
def test_scalar_json_round_trip(a):
    assert parse_scalar(scalar_to_json(a)) == a
    assert parse_scalar(format_scalar(a)) == a


# linear algebra --------------------------------------------------------------

def test_solve_examples():
    assert solve_linear(identity(2), [QI(3), QI(5)]) == (QI(3), QI(5))
    assert solve_linear([[ZERO]], [ONE]) is None
    # free variable set to zero
    assert solve_linear([[ONE, I]], [I]) == (I, ZERO)


def test_subspace_examples():
    e1, e2 = Subspace(2, mat([[1, 0]])), Subspace(2, mat([[0, 1]]))
    assert e1.intersect(e2).dim == 0
    assert Subspace(2, [(ONE, I)]).conjugate() == Subspace(2, [(ONE, -I)])
    # preimage of <e1> under (x, y) -> x + y is everything
    assert preimage([[ONE, ONE]], 2, Subspace(1, [(ONE,)])).dim == 2


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rref_idempotent_and_rank(rows):
    M = mat(rows)
    R, piv = rref(M, 4)
    assert rref(R, 4)[0] == R
    assert len(R) == rank(M, 4)
    assert kernel(M, 4).dim == 4 - len(R)


@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=3),
       st.lists(st.lists(small, min_size=3, max_size=3), max_size=3))
def test_sum_intersection_dims(a, b):
    S, T = Subspace(3, mat(a)), Subspace(3, mat(b))
    assert S.sum(T).dim + S.intersect(T).dim == S.dim + T.dim
    assert S.intersect(T).le(S) and S.le(S.sum(T))
    assert annihilator(annihilator(S)) == S


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse(rows):
    M = mat(rows)
    if rank(M, 3) == 3:
        assert mat_mul(M, inverse(M)) == identity(3)


# filtrations -----------------------------------------------------------------

def test_hom_filtration_weight_minus_one():
    W = IncreasingFiltration(2, {0: [(ONE, ZERO)], 2: Subspace.full(2)})
    H = induced_filtration(W, "hom", W)
    # the only weight-lowering endomorphism is f -> e (row-major: entry (0, 1))
    assert H(-1) == Subspace(4, [(ZERO, ONE, ZERO, ZERO)])
    assert H(-3).dim == 0
    assert H(2).dim == 4


def test_dual_filtration_convention():
    W = IncreasingFiltration(2, {0: [(ONE, ZERO)], 2: Subspace.full(2)})
    D = induced_filtration(W, "dual")
    # W_k(V*) = annihilator of W_{-k-1}
    assert D(-2) == annihilator(W(1))
    assert D(-3).dim == 0 and D(0).dim == 2


def test_trivial_filtration_stays_trivial():
    W = IncreasingFiltration.trivial(3)
    for target, args in (("dual", ()), ("hom", (W,)), ("tensor", (W,))):
        f = induced_filtration(W, target, *args)
        assert len(f.levels) == 1


def test_filtration_validation():
    with pytest.raises(InputError):
        IncreasingFiltration(2, {0: Subspace.full(2), 1: [(ONE, ZERO)]})
    with pytest.raises(InputError):
        IncreasingFiltration(2, {0: [(ONE, ZERO)]})
    with pytest.raises(InputError):
        DecreasingFiltration(2, {0: [(ONE, ZERO)]})
