import json
import pytest
from flagged_slides.forest import IndexedForest
from flagged_slides.poset import FlaggedPoset


@pytest.fixture
def three_poset():
    """f(a) >= f(b), f(c) > f(b), every flag value 4."""
    return FlaggedPoset.three_element(4)


@pytest.fixture
def forest_0201():
    """Forest on [2,5] with c(F) = (0,2,0,1)."""
    return IndexedForest([((2, 5), ((None, None), (None, None)))])


@pytest.fixture
def poset_file(tmp_path):
    doc = {
        "elements": ["a", "b", "c"],
        "covers": [["a", "b"], ["c", "b"]],
        "flag": {"a": [2, 1], "b": [2, 2], "c": [2, 3]},
    }
    path = tmp_path / "poset.json"
    path.write_text(json.dumps(doc))
    return path
