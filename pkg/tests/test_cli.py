import io
import json
import subprocess
import sys

import pytest

from singzeta import cli
from singzeta.formats import fixture_names, load_fixture
from singzeta.oracle import CheckRow, OracleReport


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def test_semigroup_description():
    code, text = run("semigroup", "-i", "cusp")
    assert code == 0
    assert text.splitlines() == ["d: 1", "conductor: [2]", "delta: 1", "small: [[0], [2]]",
                                 "symmetric: true", "validation: ok"]


def test_universal_and_poincare():
    assert run("universal", "-i", "cusp") == (0, "(-1*T1^1 + 1*U^1 + 1*T1^2) / ((U-T1)^1)\n")
    code, text = run("universal", "--poincare", "-i", "cusp")
    assert code == 0 and "U^2" in text


def test_monodromy_of_triple_point():
    assert run("specialize", "--monodromy", "-i", "triple") == (0, "1 - T^3\n")


def test_counting_with_expansion():
    code, text = run("specialize", "--count", "2", "--expand", "4", "-i", "node")
    assert code == 0
    assert text.splitlines()[-1] == "series: [1, 0, 1, 2, 3]"


def test_motivic_mentions_field_hypothesis():
    code, text = run("specialize", "--motivic", "-i", "tacnode")
    assert code == 0 and "big enough" in text


def test_oracle_table():
    code, text = run("oracle", "-i", "cusp_model_p3", "--max-norm", "6")
    assert code == 0
    lines = text.splitlines()
    assert any(line.startswith("PASS  ideals") and "(2,)" in line and "got=3" in line for line in lines)
    assert "FAIL" not in text and lines[-1].startswith("summary: PASS=")


def test_oracle_skip_is_success():
    code, text = run("oracle", "-i", "triple_model_p2", "--semigroup", "triple")
    assert code == 0 and text.startswith("SKIP")


def test_inline_json_input():
    obj = json.dumps({"kind": "numerical", "generators": [3, 4, 5]})
    code, text = run("semigroup", "-i", obj)
    assert code == 0 and "symmetric: false" in text


def test_invalid_semigroup_exit_2(capsys):
    bad = json.dumps({"kind": "semigroup", "d": 1, "conductor": [3], "small": [[0], [2], [3]]})
    code, _ = run("semigroup", "-i", bad)
    assert code == 2
    assert "conductor not minimal" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["semigroup", "-i", "no_such_fixture"],
    ["semigroup", "-i", "nodal_p1_q2"],
    ["oracle", "-i", "cusp"],
    ["global", "-i", "cusp"],
])
def test_bad_input_exit_2(argv):
    assert run(*argv)[0] == 2


def test_argument_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        run("specialize", "--count", "4", "-i", "cusp")
    assert err.value.code == 2


def test_work_limit_exit_3():
    assert run("--work-limit", "3", "oracle", "-i", "cusp_model_p3")[0] == 3


def test_verification_failure_exit_1(monkeypatch):
    def broken(*args, **kwargs):
        return OracleReport([CheckRow("h", (1,), 1, 2, "FAIL")])
    monkeypatch.setattr(cli, "verify_model", broken)
    code, text = run("oracle", "-i", "cusp_model_p3")
    assert code == 1 and "FAIL" in text


def test_deterministic_output():
    first = [run("global", "-i", "nodal_p1_q3"), run("oracle", "-i", "node_model_p2")]
    second = [run("global", "-i", "nodal_p1_q3"), run("oracle", "-i", "node_model_p2")]
    assert first == second


@pytest.mark.parametrize("name", fixture_names())
def test_every_fixture_passes(name):
    kind = load_fixture(name)["kind"]
    command = {"ring_model": "oracle", "curve": "global"}.get(kind, "semigroup")
    code, text = run(command, "-i", name)
    assert code == 0, text
    assert "FAIL" not in text


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "singzeta", "specialize", "--monodromy", "-i", "cusp"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "(1 - T + T^2) / (1 - T)\n"
