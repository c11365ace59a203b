import pytest
from flagged_slides.core import Letter as L
from flagged_slides.core import NVector, check_injective, concat, flatten
from flagged_slides.core import composition_subset, near_concat, reverse
from flagged_slides.core import format_nvector, parse_composition
from flagged_slides.core import parse_integers, parse_letters, parse_nvector
from flagged_slides.core import rs_normalize, splittings, standardize
from flagged_slides.core import subset_composition, transpose, word_of
from flagged_slides.helper import ParseError, ValidationError


def test_letter_order():
    assert L(2, 1) < L(2, 2) < L(3, 1)
    assert 2 < L(2, 5) < 3
    assert L(-1, 4) < L(0, 1)


def test_letter_tier_positive():
    with pytest.raises(ValidationError):
        L(1, 0)


def test_standardize():
    assert standardize((1, 2, 2, 1, 6, 2, 5)) == (
        L(1, 1), L(2, 1), L(2, 2), L(1, 2), L(6, 1), L(2, 3), L(5, 1)
    )
    assert standardize(()) == ()
    assert standardize((3, 3, 3)) == (L(3, 1), L(3, 2), L(3, 3))


def test_check_injective():
    with pytest.raises(ValidationError):
        check_injective((L(1, 1), L(2, 1), L(1, 1)))


def test_nvector_basics():
    c = NVector.from_list([0, 2, 0, 2])
    assert c.support == (2, 4)
    assert c.weight == 4
    assert c[3] == 0 and c[4] == 2
    assert c.shift(-2) == NVector({0: 2, 2: 2})
    assert not c.shift(-2).is_positive
    assert c.word() == (4, 4, 2, 2)
    assert NVector({1: 0}) == NVector()


def test_nvector_rejects_negative_counts():
    with pytest.raises(ValidationError):
        NVector({1: -1})


@pytest.mark.parametrize(
    "counts, expected",
    [([0, 2, 0, 2], (2, 2)), ([], ()), ([3, 1, 1, 0, 3], (3, 1, 1, 3))],
)
def test_flatten(counts, expected):
    assert flatten(NVector.from_list(counts)) == expected


def test_word_of():
    assert word_of(NVector.from_list([0, 1, 0, 2])) == (L(4, 1), L(4, 2), L(2, 1))
    assert word_of(NVector()) == ()
    assert word_of(NVector.from_list([3, 1, 1, 0, 3])) == (
        L(5, 1), L(5, 2), L(5, 3), L(3, 1), L(2, 1), L(1, 1), L(1, 2), L(1, 3)
    )


def test_rs_normalize_scan():
    word = parse_letters("l(5,1) l(6,5) l(8,3) l(3,2) l(3,1) l(1,2) l(2,1) l(3,3)")
    c = rs_normalize(word)
    assert c.word() == (5, 5, 5, 3, 2, 1, 1, 1)
    assert c == NVector.from_list([3, 1, 1, 0, 3])


def test_rs_normalize_zero_and_backstable():
    word = (L(1, 2), L(1, 1))
    assert rs_normalize(word) is None
    assert rs_normalize(word, backstable=True) == NVector({0: 1, 1: 1})


@pytest.mark.parametrize("counts", [[0, 1, 0, 2], [3, 1, 1, 0, 3], [1], []])
def test_rs_normalize_fixed_point(counts):
    c = NVector.from_list(counts)
    assert rs_normalize(word_of(c)) == c


def test_concat():
    assert concat((1,), (2,)) == (1, 2)
    assert near_concat((1,), (1, 2)) == (2, 2)
    assert concat((), (2, 2)) == (2, 2)
    assert near_concat((), (2, 2)) == (2, 2)


def test_splittings():
    found = splittings((2, 2))
    assert len(found) == 5
    assert ((1,), (1, 2)) in found
    assert ((2, 1), (1,)) in found


def test_composition_subset():
    assert composition_subset((1, 2), 3) == {1}
    assert composition_subset((2, 1), 3) == {2}
    assert composition_subset((4,), 4) == frozenset()
    assert subset_composition({1}, 3) == (1, 2)
    assert subset_composition(set(), 0) == ()
    with pytest.raises(ValidationError):
        composition_subset((1, 2), 4)
    with pytest.raises(ValidationError):
        subset_composition({3}, 3)


def test_reverse_transpose():
    assert reverse((1, 2)) == (2, 1)
    assert transpose((3,)) == (1, 1, 1)
    assert transpose((1, 1, 1)) == (3,)
    assert transpose((2, 1)) == (2, 1)
    assert transpose((1, 1, 2)) == (1, 3)
    for alpha in [(1, 3, 2), (2, 2), (1,), ()]:
        assert transpose(transpose(alpha)) == alpha


def test_parse_letters():
    assert parse_letters("l(1,2) l(1,1)") == (L(1, 2), L(1, 1))
    assert parse_letters("l(-1, 2)") == (L(-1, 2),)
    assert parse_letters("1 2 1") == (L(1, 1), L(2, 1), L(1, 2))
    assert parse_letters("") == ()
    with pytest.raises(ParseError):
        parse_letters("l(1,2) x")
    with pytest.raises(ParseError):
        parse_letters("l(1")
    with pytest.raises(ParseError):
        parse_letters("l(1,0)")


def test_parse_integers():
    assert parse_integers("4 4, 2") == (4, 4, 2)
    with pytest.raises(ParseError):
        parse_integers("4 a")


def test_parse_nvector():
    assert parse_nvector("0,2,0,1") == NVector({2: 2, 4: 1})
    assert parse_nvector("1,0|2") == NVector({-1: 1, 1: 2})
    assert format_nvector(NVector({-1: 1, 1: 2})) == "1,0|2"
    assert format_nvector(NVector({2: 2, 4: 1})) == "0,2,0,1"
    assert format_nvector(NVector()) == "0"
    with pytest.raises(ParseError):
        parse_nvector("1,-1")


def test_parse_composition():
    assert parse_composition("(2,1)") == (2, 1)
    assert parse_composition("2,1") == (2, 1)
    assert parse_composition("()") == ()
    with pytest.raises(ParseError):
        parse_composition("(0,1)")
