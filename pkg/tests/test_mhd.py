import pytest

from hodgemc import fixtures as fx
from hodgemc.dga import cohomology
from hodgemc.errors import PreconditionError
from hodgemc.mhd import axiom_verdicts, check_mhd, induced_mhs_on_cohomology, w_spectral_pages
from hodgemc.mhs import check_mhs, hodge_numbers


def test_trivial_weight_e1_is_cohomology():
    A = fx.kahler_torus().A
    E = w_spectral_pages(A)
    assert set(p for p, q in E.cells) == {0}
    assert {q: c.dim1 for (p, q), c in E.cells.items()} == {q: cohomology(A, q).dim for q in range(3)}
    assert E.dims("E1")[(0, 1)] == 2


def test_two_level_pages():
    E = w_spectral_pages(fx.mixed_diagram().A)
    # weight w in degree n sits in cell (-w, n + w)
    assert {k: (c.dim0, c.dim1) for k, c in E.cells.items()} == {
        (0, 0): (1, 1), (0, 1): (2, 2), (0, 2): (1, 1),
        (-1, 2): (1, 1), (-1, 3): (2, 2), (-1, 4): (1, 1)}
    A = fx.mixed_diagram().A
    for n in range(4):
        assert sum(c.dim1 for (p, q), c in E.cells.items() if p + q == n) >= cohomology(A, n).dim


@pytest.mark.parametrize("name", ["kahler-torus", "mixed", "threeblock"])
def test_diagrams_pass(name):
    m = fx.all_diagrams()[name]()
    assert m.structure_report().ok
    r = check_mhd(m)
    assert r.ok, r.failed_names()
    assert axiom_verdicts(r) == {1: True, 2: True, 3: True}


@pytest.mark.parametrize("name", ["f-shift", "iota-degeneration", "strictness-break"])
def test_mutations_break_one_axiom(name):
    build, axiom = fx.mutations()[name]
    verdicts = axiom_verdicts(check_mhd(build()))
    assert verdicts == {a: a != axiom for a in (1, 2, 3)}


def test_f_shift_fails_at_cell():
    r = check_mhd(fx.kahler_torus_f_shift())
    assert r.failed_names() == ["axiom 3: Hodge structure on E1(0, 1)"]


def test_induced_mhs_kahler_torus():
    m = fx.kahler_torus()
    h0 = induced_mhs_on_cohomology(m, 0)
    assert h0.dim == 1 and hodge_numbers(h0) == {(0, 0): 1}
    h1 = induced_mhs_on_cohomology(m, 1)
    assert hodge_numbers(h1) == {(1, 0): 1, (0, 1): 1}
    assert hodge_numbers(induced_mhs_on_cohomology(m, 2)) == {(1, 1): 1}


def test_induced_mhs_mixed():
    h1 = induced_mhs_on_cohomology(fx.mixed_diagram(), 1)
    assert check_mhs(h1).ok
    assert h1.W(1).dim == 2 and h1.W(2).dim == 3
    assert hodge_numbers(h1) == {(1, 0): 1, (0, 1): 1, (1, 1): 1}


def test_induced_mhs_requires_axioms():
    with pytest.raises(PreconditionError):
        induced_mhs_on_cohomology(fx.kahler_torus_f_shift(), 1)
