import json
import subprocess
import sys

import pytest

from potts.acceptance import GOLDEN_BATTERY, golden_text
from potts.cli import main, run


@pytest.mark.parametrize("name,argv", GOLDEN_BATTERY, ids=[n for n, _ in GOLDEN_BATTERY])
def test_golden(name, argv):
    code, text = run(list(argv))
    assert code == 0
    assert text == golden_text(name)


def test_spec_examples():
    code, text = run(["pgl2", "order", "--field", "7", "--matrix", "[[3,0],[0,1]]"])
    assert (code, json.loads(text)) == (0, {"order": 6})
    code, text = run(["curve", "aut", "--field", "7", "--N", "3", "--A", "0", "--B", "-1", "--oracle"])
    doc = json.loads(text)
    assert (doc["class"], doc["order"], doc["oracle_order"]) == ("TwoTimesDihedral2N", 24, 24)


@pytest.mark.parametrize("argv", [
    ["pgl2", "order", "--field", "7", "--matrix", "[[3,0],[0"],
    ["pgl2", "order", "--field", "7"],
    ["pgl2", "frobnicate"],
    ["curve", "info", "--field", "7", "--N", "3", "--A", "x", "--B", "1"],
    ["pgl2", "order", "--field", "abc", "--matrix", "[[1,0],[0,1]]"],
])
def test_malformed_input_exit_2(argv):
    code, text = run(argv)
    assert code == 2
    assert json.loads(text)["error"]["code"] == "UsageError"


@pytest.mark.parametrize("argv,err", [
    (["curve", "info", "--field", "7", "--N", "3", "--A", "0", "--B", "0"], "SingularModel"),
    (["pgl2", "order", "--field", "12", "--matrix", "[[1,0],[0,1]]"], "NotPrime"),
    (["picard", "wild", "--p", "9"], "WrongCharacteristic"),
    (["wildnorm", "verify-resultant", "--p", "5", "--field", "7"], "InvalidContext"),
])
def test_domain_errors_exit_1(argv, err):
    code, text = run(argv)
    assert code == 1
    assert json.loads(text)["error"]["code"] == err


def test_deterministic_with_seed():
    argv = ["wildnorm", "verify-resultant", "--p", "5", "--field", "11", "--trials", "10", "--seed", "3"]
    assert run(argv) == run(argv)
    other = run(argv[:-1] + ["4"])
    assert other[1] != run(argv)[1]


def test_other_commands():
    doc = json.loads(run(["moduli", "cusps", "--N", "5"])[1])
    assert [c["nodes"] for c in doc["cusps"]] == [5, 1]
    doc = json.loads(run(["moduli", "ring", "--N", "15", "--p", "3"])[1])
    assert doc["empty"]
    doc = json.loads(run(["wildnorm", "j", "--p", "3", "--field", "7", "--t", "2", "--psi", "1",
                          "--U", "1", "--A", "1", "--B", "3"])[1])
    assert (doc["delta"], doc["j"]) == ([3], [1])
    doc = json.loads(run(["picard", "wild", "--p", "5", "--trials", "50"])[1])
    assert doc["mu_2"]["verified"] and doc["mu_p"]["verified"]
    code, text = run(["moduli", "census", "--variant", "wild", "--field", "3", "--csv"])
    assert code == 0 and text.startswith("A,B,j,class\n")
    doc = json.loads(run(["poly", "psi", "--n", "7"])[1])
    assert doc["coeffs"] == [-1, -2, 1, 1]
    doc = json.loads(run(["pgl2", "survey", "--field", "5"])[1])
    assert doc["order_p_elements"] == 24


def test_main_writes_stdout(capsys):
    assert main(["poly", "phi", "--n", "3"]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": 3, "coeffs": [1, 1, 1]}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "potts", "pgl2", "order", "--field", "5",
                           "--matrix", "[[1,1],[0,1]]"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"order": 5}
