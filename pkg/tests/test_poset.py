import pytest
from flagged_slides import poset
from flagged_slides.backstable import fundamental_truncated
from flagged_slides.core import Letter as L
from flagged_slides.core import parse_letters
from flagged_slides.helper import ParseError, ValidationError
from flagged_slides.poly import Polynomial
from flagged_slides.poset import FlaggedPoset

x = Polynomial.variable


def _values(P, parts):
    return {tuple(f[u] for u in P.elements) for f in parts}


def test_construction_errors():
    flag = {"a": L(1, 1), "b": L(1, 2), "c": L(1, 3)}
    with pytest.raises(ValidationError):
        FlaggedPoset(["a", "b", "c"], [("a", "b"), ("b", "a")], flag)
    with pytest.raises(ValidationError):
        FlaggedPoset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")], flag)
    with pytest.raises(ValidationError):
        FlaggedPoset(["a", "b", "c"], [("a", "d")], flag)
    with pytest.raises(ValidationError):
        FlaggedPoset(["a", "b", "c"], [], {"a": L(1, 1), "b": L(1, 1), "c": L(2, 1)})
    with pytest.raises(ValidationError):
        FlaggedPoset(["a", "b"], [], {"a": L(1, 1)})


def test_linear_extensions(three_poset):
    assert three_poset.linear_extensions() == [("a", "c", "b"), ("c", "a", "b")]
    chain = FlaggedPoset.from_word(parse_letters("1 2 3"))
    assert len(chain.linear_extensions()) == 1
    anti = FlaggedPoset(["a", "b", "c"], [], {u: L(k + 1, 1) for k, u in enumerate("abc")})
    assert len(anti.linear_extensions()) == 6


def test_enumerate_partitions_small():
    single = FlaggedPoset(["u"], [], {"u": L(3, 1)})
    assert len(poset.enumerate_partitions(single)) == 3
    chain = FlaggedPoset.from_word(parse_letters("l(3,1) l(3,2) l(1,1)"))
    assert _values(chain, poset.enumerate_partitions(chain)) == {
        (3, 3, 1), (3, 2, 1), (2, 2, 1)
    }


def test_enumerate_matches_brute_force(three_poset):
    fast = _values(three_poset, poset.enumerate_partitions(three_poset))
    slow = _values(three_poset, poset.brute_force_partitions(three_poset))
    assert fast == slow
    K = poset.k_polynomial(three_poset)
    assert sum(K.terms().values()) == len(fast)


def test_k_polynomial():
    chain = FlaggedPoset.from_word(parse_letters("l(3,1) l(3,2) l(1,1)"))
    expected = x(3) * x(3) * x(1) + x(3) * x(2) * x(1) + x(2) * x(2) * x(1)
    assert poset.k_polynomial(chain) == expected
    assert poset.k_polynomial(FlaggedPoset([], [], {})) == Polynomial.one()
    zero = FlaggedPoset.from_word(parse_letters("l(1,2) l(1,1)"))
    assert poset.k_polynomial(zero) == Polynomial()


def test_k_polynomial_rejects_nonpositive_flags():
    P = FlaggedPoset(["u"], [], {"u": L(0, 1)})
    with pytest.raises(ValidationError):
        poset.k_polynomial(P)


@pytest.mark.parametrize("bound", range(1, 7))
def test_three_element_fundamental_expansion(bound):
    K = poset.k_polynomial(FlaggedPoset.three_element(bound))
    assert K == fundamental_truncated((2, 1), bound) + fundamental_truncated((1, 2), bound)


def test_stanley_decomposition(three_poset):
    blocks = poset.stanley_decomposition(three_poset)
    assert list(blocks) == [("a", "c", "b"), ("c", "a", "b")]
    first = _values(three_poset, blocks[("a", "c", "b")])
    second = _values(three_poset, blocks[("c", "a", "b")])
    assert all(a >= c > b for a, b, c in first)
    assert all(c > a >= b for a, b, c in second)
    everything = _values(three_poset, poset.enumerate_partitions(three_poset))
    assert first | second == everything
    assert not first & second


def test_stanley_decomposition_chain():
    chain = FlaggedPoset.from_word(parse_letters("l(3,1) l(3,2) l(1,1)"))
    blocks = poset.stanley_decomposition(chain)
    assert list(blocks) == [("v1", "v2", "v3")]


def test_omega_rho_two_chain():
    P = FlaggedPoset.chain(["u", "v"], {"u": L(1, 1), "v": L(1, 2)})
    flagged = poset.flag_from_omega_rho(P, {"u": 2, "v": 1}, {"u": 2, "v": 2})
    assert flagged.flag == {"u": L(2, 2), "v": L(2, 1)}
    assert flagged.is_strict("u", "v")
    assert _values(flagged, poset.enumerate_partitions(flagged)) == {(2, 1)}
    omega, rho = poset.omega_rho_from_flag(flagged)
    assert omega == {"u": 2, "v": 1}
    assert rho == {"u": 2, "v": 2}


def test_omega_rho_partitions_agree(three_poset):
    omega, rho = poset.omega_rho_from_flag(three_poset)
    assert poset.check_lf_flag(three_poset, omega, rho)
    direct = _values(three_poset, poset.omega_rho_partitions(three_poset, omega, rho))
    assert direct == _values(three_poset, poset.enumerate_partitions(three_poset))


def test_flag_conditions():
    P = FlaggedPoset.chain(["u", "v"], {"u": L(1, 1), "v": L(1, 2)})
    omega = {"u": 2, "v": 1}
    assert poset.check_ab_flag(P, omega, {"u": 2, "v": 2})
    assert poset.check_ab_flag(P, {"u": 1, "v": 2}, {"u": 3, "v": 3})
    assert not poset.check_lf_flag(P, omega, {"u": 1, "v": 2})
    with pytest.raises(ValidationError):
        poset.flag_from_omega_rho(P, omega, {"u": 1, "v": 2})

    flag = {u: L(1, k + 1) for k, u in enumerate("abc")}
    vee = FlaggedPoset(["a", "b", "c"], [("b", "a"), ("b", "c")], flag)
    omega = {"a": 2, "b": 1, "c": 3}
    assert not poset.check_ab_flag(vee, omega, {"a": 3, "b": 2, "c": 2})
    with pytest.raises(ValidationError):
        poset.flag_from_ab_flag(vee, omega, {"a": 3, "b": 2, "c": 2})


def test_ab_flag_partitions():
    flag = {u: L(1, k + 1) for k, u in enumerate("abc")}
    vee = FlaggedPoset(["a", "b", "c"], [("a", "b"), ("c", "b")], flag)
    omega = {"a": 2, "b": 1, "c": 3}
    rho = {"a": 3, "b": 2, "c": 2}
    assert poset.check_ab_flag(vee, omega, rho)
    assert not poset.check_lf_flag(vee, omega, rho)
    flagged = poset.flag_from_ab_flag(vee, omega, rho)
    assert _values(flagged, poset.enumerate_partitions(flagged)) == _values(
        vee, poset.omega_rho_partitions(vee, omega, rho)
    )


def test_labeling_must_be_bijective(three_poset):
    with pytest.raises(ValidationError):
        poset.omega_rho_partitions(three_poset, {"a": 1, "b": 1, "c": 2}, {"a": 1, "b": 1, "c": 1})


def test_descent_composition():
    chain = FlaggedPoset.chain(["b", "c", "a"], {"b": L(1, 1), "c": L(1, 2), "a": L(1, 3)})
    assert poset.descent_composition(chain, {"b": 1, "c": 3, "a": 2}) == (2, 1)
    assert poset.descent_composition(chain, {"b": 1, "c": 2, "a": 3}) == (3,)
    assert poset.descent_composition(chain, {"b": 3, "c": 2, "a": 1}) == (1, 1, 1)


def test_descent_composition_needs_chain(three_poset):
    with pytest.raises(ValidationError):
        poset.descent_composition(three_poset, {"a": 1, "b": 2, "c": 3})


def test_document_round_trip(three_poset):
    doc = poset.poset_to_document(three_poset)
    again = poset.poset_from_document(doc)
    assert again.elements == three_poset.elements
    assert again.covers == three_poset.covers
    assert again.flag == three_poset.flag


def test_document_errors():
    with pytest.raises(ParseError):
        poset.poset_from_document({"elements": ["a"], "covers": []})
    with pytest.raises(ParseError):
        poset.poset_from_document(
            {"elements": ["a"], "covers": [], "flag": {"a": ["x", 1]}}
        )
    doc = {"elements": ["a"], "covers": [], "flag": {"a": [0, 1]}}
    with pytest.raises(ValidationError):
        poset.poset_from_document(doc)
    assert poset.poset_from_document(doc, backstable=True).flag["a"] == L(0, 1)
