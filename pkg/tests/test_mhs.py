import random

import pytest
from hypothesis import given, strategies as st

from hodgemc import fixtures as fx
from hodgemc.errors import InputError
from hodgemc.field import I, ONE, ZERO
from hodgemc.linalg import DecreasingFiltration, IncreasingFiltration, Subspace
from hodgemc.mhs import (Bigrading, MixedHodgeStructure, check_hodge_structure, check_mhs, check_morphism,
                         check_polarization, conj_symmetry_failures, deligne_bigrading, derived_mhs, end_mhs,
                         hodge_numbers, is_r_split, mhs_from_bigrading)
from hodgemc.samplers import random_bigrading

E = (ONE, ZERO)
F_ = (ZERO, ONE)


def test_hodge_structure_examples():
    assert check_hodge_structure(1, 0, DecreasingFiltration.trivial(1)).ok
    # F^1 = <e1 + i e2> splits V_C with its conjugate
    assert check_hodge_structure(2, 1, DecreasingFiltration(2, {0: Subspace.full(2), 1: [(ONE, I)]})).ok
    # a real line is its own conjugate
    assert not check_hodge_structure(2, 1, DecreasingFiltration(2, {0: Subspace.full(2), 1: [E]})).ok


def test_nonsplit_is_mhs():
    assert check_mhs(fx.nonsplit_mhs()).ok
    W = IncreasingFiltration(2, {0: [E], 2: Subspace.full(2)})
    assert check_mhs(MixedHodgeStructure(W, DecreasingFiltration(2, {0: Subspace.full(2), 1: [F_]}))).ok
    assert not check_mhs(MixedHodgeStructure(W, DecreasingFiltration(2, {0: Subspace.full(2)}))).ok


def test_nonsplit_bigrading():
    bg = deligne_bigrading(fx.nonsplit_mhs())
    # oracle by hand: R∩L formulas give these two lines
    assert bg[(0, 0)] == Subspace(2, [E])
    assert bg[(1, 1)] == Subspace(2, [(I, ONE)])
    assert set(bg.components) == {(0, 0), (1, 1)}
    # conj I^{1,1} = <f - i e> is not I^{1,1}, but agrees modulo I^{0,0}
    assert bg[(1, 1)].conjugate() == Subspace(2, [(-I, ONE)])
    assert not is_r_split(fx.nonsplit_mhs(), bg)
    assert conj_symmetry_failures(bg) == []
    # I^{0,0} also sits in the strict lower part r < 1, s < 1
    assert conj_symmetry_failures(bg, strict_deligne=True) == []


def test_split_two_lines():
    W = IncreasingFiltration(2, {0: [E], 2: Subspace.full(2)})
    m = MixedHodgeStructure(W, DecreasingFiltration(2, {0: Subspace.full(2), 1: [F_]}))
    bg = deligne_bigrading(m)
    assert bg[(0, 0)] == Subspace(2, [E]) and bg[(1, 1)] == Subspace(2, [F_])
    assert is_r_split(m, bg)


def test_pure_bigrading_is_hodge_decomposition():
    F = DecreasingFiltration(2, {0: Subspace.full(2), 1: [(ONE, I)]})
    m = MixedHodgeStructure(IncreasingFiltration.trivial(2, 1), F)
    bg = deligne_bigrading(m)
    assert bg[(1, 0)] == F(1) and bg[(0, 1)] == F(1).conjugate()


def test_from_bigrading_examples():
    unit = mhs_from_bigrading(Bigrading(1, {(0, 0): Subspace.full(1)}))
    assert unit == MixedHodgeStructure.unit()
    m = mhs_from_bigrading(Bigrading(2, {(0, 0): [E], (1, 1): [(I, ONE)]}))
    assert m == fx.nonsplit_mhs()
    with pytest.raises(InputError):
        mhs_from_bigrading(Bigrading(2, {(0, 0): [E], (2, 1): [(I, ONE)]}))


def test_derived_structures():
    m = fx.nonsplit_mhs()
    end = end_mhs(m)
    assert check_mhs(end).ok
    assert end.W(-1).dim == 1
    t = derived_mhs("tensor", m, MixedHodgeStructure.unit())
    assert hodge_numbers(t) == hodge_numbers(m)
    pure = MixedHodgeStructure(IncreasingFiltration.trivial(2, 1),
                               DecreasingFiltration(2, {0: Subspace.full(2), 1: [(ONE, I)]}))
    d = derived_mhs("dual", pure)
    assert d.W(-2).dim == 0 and d.W(-1).dim == 2


def test_morphism_examples():
    m = fx.nonsplit_mhs()
    ident = [[ONE, ZERO], [ZERO, ONE]]
    assert check_morphism(ident, m, m).strict
    assert check_morphism([[ZERO, ZERO], [ZERO, ZERO]], m, m).strict
    line = MixedHodgeStructure.unit()
    # e -> e, f -> 0 respects W but sends f + i e to i e, which is outside F^1 = 0
    res = check_morphism([[ONE, ZERO]], m, line)
    assert not res.is_morphism
    assert res.witness["filtration"] == "F"


def test_polarization():
    F = DecreasingFiltration(2, {0: Subspace.full(2), 1: [(ONE, I)]})
    S = [[0, 1], [-1, 0]]
    # h(u, u) = 2 on both u = e1 + i e2 and its conjugate (hand evaluation)
    assert check_polarization(F, 1, S).ok
    assert not check_polarization(F, 1, [[0, -1], [1, 0]]).ok
    r = check_polarization(F, 1, [[0, 1], [1, 0]])
    assert "(-1)^w symmetry" in r.failed_names()
    assert check_polarization(DecreasingFiltration.trivial(1), 0, [[1]]).ok


@given(st.integers(0, 10 ** 6))
def test_bigrading_round_trip(seed):
    bg = random_bigrading(random.Random(seed))
    m = mhs_from_bigrading(bg)
    assert check_mhs(m).ok
    bg2 = deligne_bigrading(m)
    assert mhs_from_bigrading(bg2) == m
    # the recovered bigrading satisfies the Deligne relations, hence is the canonical one
    assert deligne_bigrading(mhs_from_bigrading(bg2)) == bg2
    assert sum(bg2.hodge_numbers().values()) == m.dim


@given(st.integers(0, 10 ** 6))
def test_split_samples_are_split(seed):
    bg = random_bigrading(random.Random(seed), split=True)
    assert is_r_split(mhs_from_bigrading(bg))
