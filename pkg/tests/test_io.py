import importlib.util
import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from hodgemc import fixtures as fx
from hodgemc import io
from hodgemc.errors import InputError
from hodgemc.linalg import IncreasingFiltration
from hodgemc.mc import check_mc, random_tdt_mc
from hodgemc.mhs import deligne_bigrading, mhs_from_bigrading
from hodgemc.minimal import ddc_minimal_model
from hodgemc.samplers import random_bigrading
from hodgemc.vmhs import check_vmhs_object, phi_C, reps_equal, threeblock_rep

ROOT = Path(__file__).resolve().parent.parent


def _round_trip(obj, to, frm):
    s = io.dumps(to(obj))
    s2 = io.dumps(to(frm(io.loads(s))))
    assert s == s2
    return s


@pytest.mark.parametrize("build", [fx.torus, fx.heisenberg, fx.even_sphere, fx.threeblock_B])
def test_dga_round_trip(build):
    _round_trip(build(), io.dga_to_json, io.dga_from_json)


@pytest.mark.parametrize("name", ["kahler-torus", "mixed", "threeblock"])
def test_diagram_round_trip(name):
    _round_trip(fx.all_diagrams()[name](), io.mhd_to_json, io.mhd_from_json)


@given(st.integers(0, 10 ** 6))
def test_mhs_and_bigrading_round_trip(seed):
    m = mhs_from_bigrading(random_bigrading(random.Random(seed)))
    _round_trip(m, io.mhs_to_json, io.mhs_from_json)
    _round_trip(deligne_bigrading(m), io.bigrading_to_json, io.bigrading_from_json)


def test_model_round_trip():
    m = ddc_minimal_model(fx.threeblock().A, 2)
    _round_trip(m, io.model_to_json, io.model_from_json)


def test_tdt_mc_round_trip():
    B = fx.threeblock_B()
    mc = random_tdt_mc(B, IncreasingFiltration.from_weights([0, 1, 2]), random.Random(1))
    s = _round_trip(mc, io.mc_to_json, io.mc_from_json)
    assert check_mc(io.mc_from_json(io.loads(s))).ok


def test_vmhs_round_trip(contexts):
    ctx = contexts["threeblock"]
    seed = {(0, 1): "m1_1", (0, 2): "m1_2", (1, 3): "m1_3", (2, 3): "m1_4"}
    r = threeblock_rep(ctx, fx.threeblock_V(), seed, "minus")
    o = phi_C(r, ctx)
    s = _round_trip(o, io.vmhs_object_to_json, io.vmhs_object_from_json)
    assert check_vmhs_object(io.vmhs_object_from_json(io.loads(s))).ok
    r2 = io.hodge_rep_from_json(io.loads(io.dumps(io.hodge_rep_to_json(r))), ctx)
    assert reps_equal(r, r2)


def test_fixture_files_are_current():
    spec = importlib.util.spec_from_file_location("make_fixtures", ROOT / "scripts" / "make_fixtures.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    for name, doc in mod.documents().items():
        assert (ROOT / "fixtures" / name).read_text(encoding="utf-8") == io.dumps(doc), name


def test_scalar_format():
    doc = io.mhs_to_json(fx.nonsplit_mhs())
    # real scalars are plain strings, complex ones are re/im pairs
    assert doc["weight_filtration"]["levels"]["0"] == [["1", "0"]]
    # <i e + f> in echelon form is <e - i f>
    assert doc["hodge_filtration"]["levels"]["1"] == [["1", {"re": "0", "im": "-1"}]]


@pytest.mark.parametrize("doc,pointer", [
    ({"dim": 1, "weight_filtration": {"levels": {"0": [["1/0"]]}},
      "hodge_filtration": {"levels": {"0": [["1"]]}}}, "/weight_filtration/levels/0/0/0"),
    ({"dim": 1, "weight_filtration": {"levels": {"0": [["1"]]}}}, "/hodge_filtration"),
    ({"dim": "two", "weight_filtration": {}, "hodge_filtration": {}}, "/dim"),
])
def test_pointer_errors(doc, pointer):
    with pytest.raises(InputError) as e:
        io.mhs_from_json(doc)
    assert e.value.pointer == pointer


def test_malformed_json():
    with pytest.raises(InputError):
        io.loads("{")


def test_field_rejects_complex():
    doc = {"basis": {"0": ["1"], "1": ["x"], "2": ["y"]}, "d": {"x": {"y": {"re": "0", "im": "1"}}}}
    assert io.dga_from_json(doc, field="qi").dim(2) == 1
    with pytest.raises(InputError) as e:
        io.dga_from_json(doc)
    assert e.value.pointer == "/d/x/y"


def test_dumps_is_deterministic():
    a = io.dumps(io.mhd_to_json(fx.threeblock()))
    b = io.dumps(io.mhd_to_json(fx.threeblock()))
    assert a == b and a.endswith("\n")
