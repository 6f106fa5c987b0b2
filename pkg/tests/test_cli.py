import io
import json
from pathlib import Path

import pytest

from condcoh.cli import run

FIX = Path(__file__).parent / "fixtures"
EXPECTED = json.loads((FIX / "expected.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "name,command,status",
    [(n, c, s) for n, cmds in sorted(EXPECTED.items()) for c, s in sorted(cmds.items())],
)
def test_fixture_status(name, command, status):
    code, _, err = call(command, str(FIX / name))
    assert code == status, err


def test_extend_json():
    code, out, _ = call("extend", str(FIX / "extend_ac.json"), "--json")
    assert code == 0
    assert json.loads(out)["interval"]["upper"] == "2/3"


def test_bisect_route_from_cli():
    code, out, _ = call("extend", str(FIX / "extend_ac.json"), "--json", "--method", "bisect")
    assert code == 0 and json.loads(out)["interval"]["upper"] == "2/3"


def test_table_rows():
    code, out, _ = call("table", str(FIX / "table_self_antecedent.json"), "--json")
    rows = {r["constituent"]: r["value"] for r in json.loads(out)["rows"]}
    assert rows == {"A C": "1/1", "A ~C": "3/10", "~A C": "3/100", "~A ~C": "3/100"}


def test_check_witness_json():
    code, out, _ = call("check", str(FIX / "incoherent_frechet.json"), "--json")
    rep = json.loads(out)
    assert code == 1 and rep["verdict"] == "incoherent" and rep["witness"]["stakes"]


def test_json_output_is_byte_identical():
    runs = [call("check", str(FIX / "incoherent_frechet.json"), "--json")[1] for _ in range(2)]
    assert runs[0] == runs[1]


def test_verify_small(tmp_path):
    code, out, _ = call("verify", "--trials", "2", "--seed", "4", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and len(rep["checks"]) >= 19


def test_usage_errors(tmp_path):
    assert call("frobnicate")[0] == 2
    assert call("check")[0] == 2
    assert call("check", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("check", str(bad))[0] == 2
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"atoms": ["A", "B", "C"], "assessments": [{"expr": "A", "value": "1/2"}]}))
    assert call("check", str(big), "--max-atoms", "2")[0] == 2
    assert call("check", str(big), "--max-atoms", "3")[0] == 0
    assert call("extend", str(big))[0] == 2  # no query


def test_module_entry_point():
    import subprocess
    import sys

    p = subprocess.run([sys.executable, "-m", "condcoh", "check", str(FIX / "coherent_ac.json")], capture_output=True, text=True)
    assert p.returncode == 0 and "coherent" in p.stdout
