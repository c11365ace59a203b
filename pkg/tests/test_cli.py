import json
import pytest
from flagged_slides import cli
from flagged_slides import helper


@pytest.fixture
def forest_file(tmp_path):
    doc = {"trees": [{"interval": [3, 4], "tree": [None, None]}]}
    path = tmp_path / "forest.json"
    path.write_text(json.dumps(doc))
    return path


def _run(capsys, *argv):
    status = cli.run(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_no_arguments_prints_help(capsys):
    status, out, err = _run(capsys)
    assert status == 0
    assert "flagged_slides" in err


def test_kpoly(capsys, poset_file):
    status, out, _ = _run(capsys, "kpoly", str(poset_file))
    assert status == 0
    assert out == "x(1)*x(2)^2 + x(1)^2*x(2)\n\n+1 F(1,2)\n+1 F(2,1)\n"


def test_kpoly_machine(capsys, poset_file):
    status, out, _ = _run(capsys, "--format", "machine", "kpoly", str(poset_file))
    assert status == 0
    assert out.splitlines() == ["vector,coefficient", '"1,2",1', '"2,1",1']


def test_kpoly_back(capsys, poset_file):
    status, out, _ = _run(capsys, "kpoly", str(poset_file), "--back")
    assert status == 0
    assert out.splitlines() == ["+1 bF(1,2)", "+1 bF(2,1)"]


def test_kpoly_missing_file(capsys, tmp_path):
    status, _, err = _run(capsys, "kpoly", str(tmp_path / "missing.json"))
    assert status == 3
    assert err.startswith("ERROR:")


def test_kpoly_bad_document(capsys, tmp_path):
    path = tmp_path / "poset.json"
    path.write_text(json.dumps({"elements": ["a"]}))
    status, _, err = _run(capsys, "kpoly", str(path))
    assert status == 2
    assert "ERROR:" in err


def test_slide_word(capsys):
    status, out, _ = _run(capsys, "slide", "word", "l(3,1) l(3,2) l(1,1)")
    assert status == 0
    assert out == "x(1)*x(3)^2 + x(1)*x(2)*x(3) + x(1)*x(2)^2\n"
    _, out, _ = _run(capsys, "slide", "word", "l(1,2) l(1,1)")
    assert out == "0\n"


def test_slide_poly_and_expand(capsys):
    _, out, _ = _run(capsys, "slide", "poly", "0,0,1")
    assert out == "x(3) + x(2) + x(1)\n"
    _, out, _ = _run(capsys, "slide", "expand", "x(1)*x(2)^2 + x(1)^2*x(2)")
    assert out == "+1 F(1,2)\n+1 F(2,1)\n"


def test_slide_errors(capsys):
    status, _, _ = _run(capsys, "slide", "poly", "1,-1")
    assert status == 2
    status, _, _ = _run(capsys, "slide", "poly", "1|1")
    assert status == 3
    status, _, _ = _run(capsys, "slide", "word", "l(1,1) l(1,1)")
    assert status == 3
    status, _, err = _run(capsys, "slide", "word", "l(1,0)")
    assert status == 2
    assert err.startswith("ERROR:")


def test_argparse_errors(capsys):
    assert cli.run(["kostka"]) == 2
    assert cli.run(["nosuchverb"]) == 2
    assert cli.run(["--format", "xml", "kostka", "expand", "1"]) == 2
    capsys.readouterr()


def test_forest(capsys, forest_file):
    _, out, _ = _run(capsys, "forest", "poly", str(forest_file))
    assert out == "x(3) + x(2) + x(1)\n"
    _, out, _ = _run(capsys, "forest", "slides", str(forest_file))
    assert out == "+1 F(0,0,1)\n"
    _, out, _ = _run(capsys, "forest", "back", str(forest_file))
    assert out == "+1 bF(0,0,1)\n"
    _, out, _ = _run(capsys, "forest", "expand", "x(1) + x(2) + x(3)")
    assert out == "+1 P(0,0,1)\n"


def test_forest_ofc(capsys):
    status, out, _ = _run(capsys, "forest", "ofc", "0,2,0,1")
    assert status == 0
    assert json.loads(out) == {
        "trees": [{"interval": [2, 5], "tree": [[None, None], [None, None]]}]
    }


def test_forest_ofc_several_trees(capsys):
    status, out, _ = _run(capsys, "forest", "ofc", "1,0,1")
    assert status == 0
    assert json.loads(out) == {
        "trees": [
            {"interval": [1, 2], "tree": [None, None]},
            {"interval": [3, 4], "tree": [None, None]},
        ]
    }


def test_back_slide(capsys):
    _, out, _ = _run(capsys, "back", "slide", "1|1")
    assert out.splitlines() == ["+1 F(1)|x(1)", "+1 F(1,1)"]
    _, out, _ = _run(capsys, "--vars=1..2", "back", "slide", "0,1")
    assert out == "x(2) + x(1)\n"


def test_back_mul(capsys):
    _, out, _ = _run(capsys, "back", "mul", "0,1,0,2", "0,1")
    assert out.splitlines() == [
        "+1 bF(0,2,0,2)",
        "+1 bF(1,1,0,2)",
        "+1 bF(1,2,0,1)",
        "+1 bF(1,3)",
    ]


def test_back_expand(capsys, tmp_path):
    doc = {"terms": [{"composition": [1], "vector": "0", "coefficient": 2}]}
    path = tmp_path / "element.json"
    path.write_text(json.dumps(doc))
    _, out, _ = _run(capsys, "back", "expand", str(path))
    assert out == "+2 bF(1|)\n"


def test_kostka_expand(capsys):
    _, out, _ = _run(capsys, "kostka", "expand", "4", "4", "2")
    assert out.splitlines() == [
        "+1 bF(0,1,0,2)",
        "-1 bF(1,0,0,2)",
        "-1 bF(0,1,1,1)",
        "+1 bF(1,0,1,1)",
        "-1 bF(0,1,2)",
        "+1 bF(1,0,2)",
    ]
    _, out, _ = _run(capsys, "kostka", "expand", "2", "1", "--positive")
    assert out == "+1 F(1,1)\n"


def test_kostka_expand_machine(capsys):
    _, out, _ = _run(capsys, "--format", "machine", "kostka", "expand", "4 4 2")
    lines = out.splitlines()
    assert lines[0] == "vector,coefficient"
    assert lines[1] == '"0,1,0,2",1'
    assert len(lines) == 7


def test_kostka_lattice(capsys):
    _, out, _ = _run(capsys, "kostka", "mobius", "4,3,1", "4,4,2")
    assert out == "1\n"
    _, out, _ = _run(capsys, "kostka", "join", "5,5,5,3,2,2", "6,6,4,4,2,1")
    assert out == "6 6 6 6 2 2\n"
    _, out, _ = _run(capsys, "--format", "machine", "kostka", "mobius", "2,2,1", "4,4,2")
    assert out == "mobius\n0\n"
    status, _, _ = _run(capsys, "kostka", "join", "2,4", "4,4")
    assert status == 3


def test_kostka_bset(capsys):
    _, out, _ = _run(capsys, "kostka", "bset", "4", "4", "2")
    lines = out.splitlines()
    assert lines[0] == "4 4 2 : {} : +1"
    assert lines[1] == "3 3 2 : {0} : -1"
    assert lines[-1] == "4 3 1 : {1,2} : +1"


def test_verify(capsys, monkeypatch):
    monkeypatch.delenv(helper.ENV_VERIFY, raising=False)
    status, out, _ = _run(
        capsys, "verify", "--suite", "core", "--bounds", "weight=2,procs=1"
    )
    assert status == 0
    lines = out.splitlines()
    assert lines[-1].endswith("properties passed")
    assert all(x.startswith("PASS core") for x in lines[:-1])


def test_verify_bad_bounds(capsys, monkeypatch):
    monkeypatch.setenv(helper.ENV_VERIFY, "depth=2")
    status, _, err = _run(capsys, "verify", "--suite", "core")
    assert status == 3
    assert helper.ENV_VERIFY in err
