import json

import pytest

from mvder.algebra import make_chain, make_product
from mvder.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_tables(tmp_path, A, name="alg.json", **patch):
    data = A.to_dict()
    data.update(patch)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_count_chain(capsys):
    code, out, _ = run(capsys, "count", "L5")
    assert code == 0
    assert out.splitlines() == ["14", "closed form (n-1)(n+2)/2 = 14"]


def test_count_boolean(capsys):
    assert run(capsys, "count", "B4")[:2] == (0, "9\n")


def test_derivations_table(capsys):
    code, out, _ = run(capsys, "derivations", "L2 x L3")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 34
    assert lines[0].split() == ["(0,0)", "(0,1/2)", "(0,1)", "(1,0)", "(1,1/2)", "(1,1)", "flags"]
    assert lines[1].startswith("d1")


def test_derivations_json_and_filter(capsys):
    code, out, _ = run(capsys, "derivations", "L3", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 5
    code, out, _ = run(capsys, "derivations", "L2 x L3", "--filter", "ider", "--format", "json")
    assert len(json.loads(out)) == 4


def test_derivations_labels(capsys):
    code, out, _ = run(capsys, "derivations", "L2 x L3", "--labels", "0,a,b,c,d,1")
    assert code == 0 and out.splitlines()[0].split() == list("0abcd1") + ["flags"]


def test_check_text_and_json(capsys):
    code, out, _ = run(capsys, "check", "L2 x L3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["n"] == 6 and data["axioms"]["passed"]
    assert data["boolean_center"] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]


def test_hasse_formats(capsys):
    code, out, _ = run(capsys, "hasse", "L3")
    assert code == 0 and out.startswith("digraph {") and out.count("->") == 5
    code, out, _ = run(capsys, "hasse", "L3", "--format", "layers")
    assert out.split("\n\n")[0].splitlines()[0] == "0 0 0"
    code, out, _ = run(capsys, "hasse", "L2 x L3", "--family", "ider")
    assert out.count("->") == 4


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", "L4")
    assert code == 0 and all(line.startswith("ok") for line in out.splitlines())


def test_decompose_input(tmp_path, capsys):
    A = make_product([make_chain(3), make_chain(2)])
    code, out, _ = run(capsys, "decompose", "--input", write_tables(tmp_path, A))
    assert code == 0 and json.loads(out)["chains"] == [2, 3]


def test_broken_tables_exit_1(tmp_path, capsys):
    A = make_chain(3)
    oplus = [list(r) for r in A.oplus]
    oplus[1][1] = 1
    path = write_tables(tmp_path, A, oplus=oplus)
    code, _, err = run(capsys, "decompose", "--input", path)
    assert code == 1 and "not an MV-algebra" in err
    code, out, _ = run(capsys, "verify", "--input", path)
    assert code == 1 and out.startswith("FAIL  MV axioms")
    assert run(capsys, "check", "--input", path)[0] == 1


def test_malformed_input_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "count", "--input", str(bad))[0] == 2
    bad.write_text(json.dumps({"n": 2, "oplus": [[0]], "neg": [1, 0]}))
    assert run(capsys, "count", "--input", str(bad))[0] == 2
    assert run(capsys, "count", "--input", str(tmp_path / "missing.json"))[0] == 2


@pytest.mark.parametrize("argv", [["count", "L1"], ["count", "L2 +"], ["count"],
                                  ["chang", "--window", "0"], ["classify-sizes", "--max", "1"]])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("mvder:")


def test_parse_error_names_offset(capsys):
    _, _, err = run(capsys, "count", "L2 x Q3")
    assert "5" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_caps_exit_3(capsys):
    assert run(capsys, "count", "L2 x L3", "--max-search", "10")[0] == 3
    assert run(capsys, "count", "L50 x L50", "--max-elements", "100")[0] == 3


def test_classify_sizes(capsys):
    code, out, _ = run(capsys, "classify-sizes", "--max", "6", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert [(r["algebra"], r["derivations"]) for r in data["classes"]] == [
        ("L2", 2), ("L3", 5), ("L4", 9), ("L2 x L2", 9), ("L5", 14), ("L6", 20), ("L2 x L3", 33)]


def test_chang(capsys):
    code, out, _ = run(capsys, "chang", "--window", "10")
    data = json.loads(out)
    assert code == 0
    assert data["eq1_ok"] and data["injective_on_window"] and data["image_of_one"] == "c*"
    data = json.loads(run(capsys, "chang", "--window", "10", "--op", "principal")[1])
    assert data["eq1_ok"] and not data["injective_on_window"]


def test_der_iso(capsys):
    code, out, _ = run(capsys, "der-iso", "--max", "6")
    data = json.loads(out)
    assert code == 0 and data["coincidences"] == []
    assert len(data["algebras"]) == 7


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "L2 x L2", "--format", "json")
    results = json.loads(out)
    assert code == 0 and {r["status"] for r in results} <= {"pass", "skip"}


def test_output_is_deterministic(capsys):
    first = run(capsys, "derivations", "L2 x L3", "--format", "json")
    second = run(capsys, "derivations", "L2 x L3", "--format", "json")
    assert first == second
