import json
import os
import subprocess
import sys

import pytest

from lnlcat.cli import main, run
from conftest import DATA


def data(name):
    return os.path.join(DATA, name)


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def test_laws_q_one_passes():
    code, rep = run(["laws", "--monad", "Q", "--base", data("one.json"), "--max-len", "2"])
    assert code == 0 and rep["status"] == "pass" and rep["findings"] == []
    assert rep["sweep"]["truncated"] is False


def test_hom_lists_two_morphisms():
    code, rep = run(["hom", "--monad", "S", "--base", data("one.json"), "--src", '["•","•"]', "--tgt", '["•","•"]'])
    assert code == 0
    assert rep["result"]["count"] == 2 and len(rep["result"]["morphisms"]) == 2


def test_q_hom_with_tags():
    code, rep = run(["hom", "--monad", "Q", "--base", "one", "--src", '["•^L"]', "--tgt", '["•^L","•^N"]'])
    assert code == 0 and rep["result"]["count"] == 0


def test_term_subst_example():
    code, rep = run(["term", "subst", "--ctx", "x^L,w^L;y^N", "--term", "(g x w)", "--var", "w",
                     "--with", "(k u)", "--with-ctx", "u^L;v^N"])
    assert code == 0
    assert rep["result"] == {"term": "(g x (k u))", "context": "x^L,u^L;v^N,y^N"}


def test_term_check_fails_with_exit_1():
    code, rep = run(["term", "check", "--ctx", "x^L;", "--term", "(g x x)"])
    assert code == 1 and rep["status"] == "fail"
    assert rep["findings"][0]["law"] == "linear-use"


def test_term_fuzz_seeded():
    code, rep = run(["term", "fuzz", "--trials", "50", "--seed", "7"])
    assert code == 0 and rep["sweep"]["seed"] == 7


@pytest.mark.parametrize("argv", [
    ["fincat", "validate", "chain3.json"],
    ["structure", "check", "--builtin", "chain3"],
    ["structure", "roundtrip", "--builtin", "diamond"],
    ["structure", "from-algebra", "--builtin", "chain3-meet"],
    ["colimit", "--functor", "arrow_to_one.json"],
])
def test_passing_commands(argv):
    argv = [data(a) if a.endswith(".json") else a for a in argv]
    code, rep = run(argv)
    assert code == 0, rep["findings"]


def test_structure_eval():
    code, rep = run(["structure", "to-algebra", "--builtin", "chain3", "--eval", '["1^L","1^N"]'])
    assert code == 0 and rep["result"]["value"] == "0"


def test_bad_structure_fails():
    code, rep = run(["structure", "check", "--builtin", "chain3-bad"])
    assert code == 1
    assert any(f["law"] == "f(I)=I" for f in rep["findings"])


def test_structure_file_matches_builtin():
    code, rep = run(["structure", "check", data("chain3_structure.json")])
    assert code == 0


def test_colimit_writes_files(tmp_path):
    code, rep = run(["colimit", "--functor", data("arrow_to_one.json"), "--out", str(tmp_path)])
    assert code == 0
    assert sorted(os.listdir(tmp_path)) == ["beta.json", "carrier.json", "iota_A.json", "iota_B.json"]
    code, _ = run(["fincat", "validate", str(tmp_path / "carrier.json")])
    assert code == 0


def test_invalid_category_file_fails(tmp_path):
    doc = {"objects": ["a"], "morphisms": [{"name": "e", "src": "a", "tgt": "a"}], "composition": []}
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(doc))
    code, rep = run(["fincat", "validate", str(p)])
    # parseable but incomplete: a failed check, not an input error
    assert code == 1 and rep["findings"][0]["law"] == "missing-composite"


def test_unparseable_input_reports_location(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"objects": [\n  "a",\n}')
    code, rep = run(["fincat", "validate", str(p)])
    assert code == 2 and rep["status"] == "error"
    assert f"{p}:3:" in rep["findings"][0]["witness"]


@pytest.mark.parametrize("argv", [
    ["term", "check", "--ctx", "x^Q", "--term", "x"],
    ["term", "check", "--ctx", "x^L", "--term", "(g x"],
    ["hom", "--monad", "S", "--base", "nowhere.json", "--src", "[]", "--tgt", "[]"],
    ["structure", "check", "--builtin", "nonesuch"],
])
def test_input_errors_exit_2(argv):
    code, rep = run(argv)
    assert code == 2 and rep["status"] == "error"


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        run(["laws", "--monad", "Z", "--base", "one"])
    assert info.value.code == 2


def test_json_output_parses_and_matches_exit_code(capsys):
    code = main(["term", "check", "--json", "--ctx", "x^L;", "--term", "x"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["status"] == "pass"
    assert set(doc) == {"command", "status", "findings", "checked", "sweep", "result", "timing"}


def test_json_flag_before_subcommand(capsys):
    code = main(["--json", "laws", "--monad", "S", "--base", "one", "--max-len", "2"])
    assert code == 0 and json.loads(capsys.readouterr().out)["status"] == "pass"


def test_reports_are_deterministic():
    argv = ["term", "fuzz", "--trials", "100", "--seed", "5"]
    assert strip_timing(run(argv)[1]) == strip_timing(run(argv)[1])
    argv = ["laws", "--monad", "C", "--base", "arrow", "--max-len", "2"]
    assert strip_timing(run(argv)[1]) == strip_timing(run(argv)[1])


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "lnlcat", "--json", "hom", "--monad", "C", "--base", "one",
                          "--src", '["•"]', "--tgt", '["•","•"]'], capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["count"] == 1
