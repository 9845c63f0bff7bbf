import io as _io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hodgemc import fixtures as fx
from hodgemc import io
from hodgemc.cli import run
from hodgemc.dga import validate_dga
from hodgemc.forms import FormMatrix
from hodgemc.linalg import IncreasingFiltration
from hodgemc.mc import MaurerCartanElement, check_mc
from hodgemc.mhd import check_mhd
from hodgemc.mhs import check_mhs

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def cli(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = run([str(a) for a in argv], out, err)
    doc = json.loads(out.getvalue()) if out.getvalue() else None
    return code, doc, err.getvalue()


def test_mhs_bigrade_nonsplit():
    code, doc, _ = cli("mhs", "bigrade", FIX / "nonsplit.json")
    assert code == 0
    assert sorted(doc["components"]) == ["(0,0)", "(1,1)"]
    assert doc["components"]["(0,0)"] == [["1", "0"]]
    assert doc["hodge_numbers"] == {"(0,0)": 1, "(1,1)": 1}
    assert doc["r_split"] is False


def test_from_bigrading_inverts_bigrade(tmp_path):
    code, _, _ = cli("mhs", "from-bigrading", FIX / "nonsplit-bigrading.json", "--output", tmp_path / "m.json")
    assert code == 0
    assert (tmp_path / "m.json").read_text() == (FIX / "nonsplit.json").read_text()


def test_dga_cohomology_heisenberg():
    code, doc, _ = cli("dga", "cohomology", FIX / "heisenberg.json", "--degree", 2)
    assert code == 0
    assert doc["dim"] == 2 and doc["degree"] == 2
    assert len(doc["representatives"]) == 2
    code, doc, _ = cli("dga", "cohomology", FIX / "torus.json")
    assert {k: v["dim"] for k, v in doc["degrees"].items()} == {"0": 1, "1": 2, "2": 1, "3": 0}


def test_dga_check_and_dec():
    assert cli("dga", "check", FIX / "torus.json")[0] == 0
    code, doc, _ = cli("dga", "dec", FIX / "torus.json")
    # no weight filtration to shift
    assert code == 1 and doc["ok"] is False


@pytest.mark.parametrize("name,lib", [
    ("kahler-torus.json", fx.kahler_torus),
    ("mixed-diagram.json", fx.mixed_diagram),
    ("kahler-torus-f-shift.json", fx.kahler_torus_f_shift),
    ("kahler-torus-iota-degeneration.json", fx.kahler_torus_iota_zero),
    ("kahler-torus-strictness-break.json", fx.kahler_torus_nonstrict),
])
def test_mhd_verdicts_match_library(name, lib):
    code, doc, _ = cli("mhd", "check", FIX / name)
    ok = check_mhd(lib()).ok
    assert doc["ok"] is ok
    assert code == (0 if ok else 1)


def test_mhd_axioms_reported():
    _, doc, _ = cli("mhd", "check", FIX / "kahler-torus-f-shift.json")
    assert doc["axioms"] == {"1": True, "2": True, "3": False}


def test_induced_mhs():
    code, doc, _ = cli("mhd", "induced-mhs", FIX / "kahler-torus.json")
    assert code == 0
    m = io.mhs_from_json(doc)
    assert check_mhs(m).ok and m.dim == 2


def test_minimal_model_commands():
    code, doc, _ = cli("minmodel", "build", FIX / "heisenberg.json", "--stages", 2)
    assert code == 0
    assert [len(s["generators"]) for s in doc["stages"]] == [2, 1]
    code, doc, _ = cli("minmodel", "dual-lie", FIX / "heisenberg.json", "--stages", 2)
    assert code == 0 and doc["dim"] == 3 and doc["jacobi_residual"] == []
    assert cli("minmodel", "bigraded-build", FIX / "kahler-torus.json", "--stages", 2)[0] == 0
    code, doc, _ = cli("minmodel", "ih-build", FIX / "threeblock-diagram.json", "--stages", 2)
    assert code == 0 and doc["report"]["ok"]


def test_mc_commands(tmp_path):
    B = fx.threeblock_B()
    W = IncreasingFiltration.from_weights([0, 1])
    good = MaurerCartanElement(B, W, FormMatrix.tensor(B["z1"], [[0, 1], [0, 0]]))
    bad = MaurerCartanElement(B, W, FormMatrix.tensor(B["z1"], [[0, 0], [1, 0]]))
    for x, name in ((good, "good"), (bad, "bad")):
        (tmp_path / f"{name}.json").write_text(io.dumps(io.mc_to_json(x)))
    assert cli("mc", "check", tmp_path / "good.json")[0] == 0
    code, doc, _ = cli("mc", "check", tmp_path / "bad.json")
    assert code == 1 and doc["ok"] is check_mc(bad).ok is False


def test_mc_transport_identity(tmp_path):
    B = fx.torus()
    W = IncreasingFiltration.from_weights([0, 1])
    x = MaurerCartanElement(B, W, FormMatrix.tensor(B.gen("a"), [[0, 1], [0, 0]]))
    doc = {"source": io.dga_to_json(B), "target": io.dga_to_json(B),
           "map": {"images": {"a": {"a": "1"}, "b": {"b": "1"}}},
           "mc": io.mc_to_json(x, with_dga=False)}
    (tmp_path / "t.json").write_text(io.dumps(doc))
    code, out, _ = cli("mc", "transport", tmp_path / "t.json")
    assert code == 0 and out["report"]["ok"]


def test_vmhs_build_reproduces_object(tmp_path):
    code, _, _ = cli("vmhs", "build", FIX / "threeblock-rep.json", "--output", tmp_path / "o.json")
    assert code == 0
    assert (tmp_path / "o.json").read_text() == (FIX / "threeblock-object.json").read_text()


def test_vmhs_check_and_descend():
    assert cli("vmhs", "check", FIX / "threeblock-object.json")[0] == 0
    code, doc, _ = cli("vmhs", "descend", FIX / "threeblock-object.json")
    assert code == 0 and doc["report"]["ok"]
    assert doc["c"] == [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]


def test_vmhs_example3():
    code, doc, _ = cli("vmhs", "example3", FIX / "threeblock-diagram.json")
    assert code == 0 and doc["report"]["ok"]
    a = doc["object"]["a"]
    # a = Id - i·beta·E_03 with -i·beta = (b̄ - b)/4
    corner = {lab: M[0][3] for lab, M in a.items()}
    assert corner == {"1": "0", "b": "-1/4", "bb": "1/4"}


def test_figures(tmp_path):
    f1, f2 = tmp_path / "hodge.png", tmp_path / "e1.svg"
    assert cli("mhs", "bigrade", FIX / "nonsplit.json", "--figure", f1)[0] == 0
    assert cli("mhd", "check", FIX / "kahler-torus.json", "--figure", f2)[0] == 0
    assert f1.stat().st_size > 0 and f2.stat().st_size > 0


def test_input_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 1, "weight_filtration": {"levels": {"0": [["1/0"]]}}, '
                 '"hodge_filtration": {"levels": {"0": [["1"]]}}}')
    code, doc, err = cli("mhs", "check", p)
    assert code == 2 and doc is None
    assert "input error at /weight_filtration/levels/0/0/0" in err
    code, _, err = cli("mhs", "check", tmp_path / "missing.json")
    assert code == 2
    (tmp_path / "trunc.json").write_text("{")
    assert cli("dga", "check", tmp_path / "trunc.json")[0] == 2


def test_usage_errors():
    code, _, err = cli("frobnicate")
    assert code == 2 and "usage" in err
    assert cli("mhs", "explode", FIX / "nonsplit.json")[0] == 2
    assert cli("mhs")[0] == 2
    assert cli("minmodel", "build", FIX / "torus.json", "--stages", 0)[0] == 2


def test_check_failure_exit_code(tmp_path):
    doc = io.mhs_to_json(fx.nonsplit_mhs())
    # without F^1 the weight-2 quotient carries no Hodge structure of weight 2
    del doc["hodge_filtration"]["levels"]["1"]
    (tmp_path / "m.json").write_text(io.dumps(doc))
    code, out, _ = cli("mhs", "check", tmp_path / "m.json")
    assert code == 1 and out["ok"] is False


def test_verdict_equals_library_dga():
    for name, build in (("torus.json", fx.torus), ("heisenberg.json", fx.heisenberg)):
        _, doc, _ = cli("dga", "check", FIX / name)
        assert doc["ok"] is validate_dga(build()).ok


def test_deterministic_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli("vmhs", "descend", FIX / "threeblock-object.json", "--output", a)
    cli("vmhs", "descend", FIX / "threeblock-object.json", "--output", b)
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "hodgemc.cli", "dga", "cohomology", str(FIX / "torus.json"),
                        "--degree", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["dim"] == 2
