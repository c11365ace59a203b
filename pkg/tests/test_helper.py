import json
import pandas as pd
import pytest
from flagged_slides import helper
from flagged_slides.helper import ParseError, ValidationError, VerifyBounds


def test_verify_bounds_defaults():
    bounds = VerifyBounds()
    assert bounds.weight == 4
    assert bounds.posets == 200
    assert bounds.procs == 4


def test_verify_bounds_override():
    bounds = VerifyBounds().override("weight=2, procs=1")
    assert bounds.weight == 2
    assert bounds.procs == 1
    assert bounds.posets == 200
    assert VerifyBounds().override("  ") == VerifyBounds()
    with pytest.raises(ValidationError):
        VerifyBounds().override("depth=3")
    with pytest.raises(ValidationError):
        VerifyBounds().override("weight=two")
    with pytest.raises(ValidationError):
        VerifyBounds().override("weight=-1")
    with pytest.raises(ValidationError):
        VerifyBounds().override("weight")


def test_verify_bounds_from_env(monkeypatch):
    monkeypatch.delenv(helper.ENV_VERIFY, raising=False)
    assert helper.check_verify_env() == ""
    assert VerifyBounds.from_env() == VerifyBounds()
    monkeypatch.setenv(helper.ENV_VERIFY, "seed=7,samples=3")
    bounds = VerifyBounds.from_env()
    assert (bounds.seed, bounds.samples) == (7, 3)


def test_load_document(tmp_path):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps({"trees": []}))
    assert helper.load_document(path) == {"trees": []}
    with pytest.raises(FileNotFoundError):
        helper.load_document(tmp_path / "missing.json")
    path.write_text("{not json")
    with pytest.raises(ParseError):
        helper.load_document(path)
    path.write_text("[1, 2]")
    with pytest.raises(ParseError):
        helper.load_document(path)


def test_check_document():
    helper.check_document({"terms": []}, ("terms",), "element")
    with pytest.raises(ParseError, match="elements, flag"):
        helper.check_document({"covers": []}, ("elements", "covers", "flag"), "poset")


def test_parse_window():
    assert helper.parse_window("-2..3") == (-2, 3)
    assert helper.parse_window("1..1") == (1, 1)
    with pytest.raises(ParseError):
        helper.parse_window("1-3")
    with pytest.raises(ParseError):
        helper.parse_window("a..3")
    with pytest.raises(ValidationError):
        helper.parse_window("3..1")


def test_frame_to_text():
    df = pd.DataFrame({"vector": ["0,1", "2"], "coefficient": [1, -1]})
    assert helper.frame_to_text(df) == 'vector,coefficient\n"0,1",1\n2,-1\n'
