import pytest

from mvder.chang import (
    C,
    C_STAR,
    ONE,
    ZERO,
    chang_leq,
    chang_neg,
    chang_odot,
    chang_oplus,
    chang_vee,
    chang_wedge,
    lower,
    principal_cstar,
    remark_derivation,
    upper,
    verify_window,
    window,
    window_axiom_violations,
)
from mvder.errors import InvalidArgumentError

from oracles import lex_add, lex_neg, to_lex

W = window(12)


def test_oplus_matches_lexicographic_model():
    for a in W:
        assert to_lex(chang_neg(a)) == lex_neg(to_lex(a))
        for b in W:
            assert to_lex(chang_oplus(a, b)) == lex_add(to_lex(a), to_lex(b))


def test_order_matches_lexicographic_model():
    for a in W:
        for b in W:
            assert (a <= b) == (to_lex(a) <= to_lex(b)) == chang_leq(a, b)


def test_window_is_increasing():
    assert W == sorted(W)
    assert W[0] == ZERO and W[-1] == ONE
    assert len(W) == 26


def test_three_addition_rules():
    assert chang_oplus(lower(2), lower(3)) == lower(5)
    assert chang_oplus(lower(2), upper(5)) == upper(3)
    assert chang_oplus(upper(5), lower(2)) == upper(3)
    assert chang_oplus(upper(2), upper(3)) == ONE
    assert chang_oplus(lower(5), upper(2)) == ONE


def test_strings():
    assert [str(x) for x in (ZERO, C, lower(3), ONE, C_STAR, upper(4))] == \
        ["0", "c", "3c", "1", "c*", "(4c)*"]


def test_derived_operations():
    assert chang_odot(upper(2), C_STAR) == upper(3)
    assert chang_odot(C, C_STAR) == ZERO
    assert chang_odot(lower(3), C_STAR) == lower(2)
    for a in W:
        for b in W:
            assert chang_vee(a, b) == max(a, b)
            assert chang_wedge(a, b) == min(a, b)


def test_operators():
    assert remark_derivation(ONE) == C_STAR
    assert remark_derivation(C) == C and principal_cstar(C) == ZERO
    assert remark_derivation(upper(2)) == upper(3)
    assert remark_derivation(C_STAR) == principal_cstar(C_STAR)
    assert all(remark_derivation(x) <= x for x in W)


def test_window_reports():
    r = verify_window(remark_derivation, 30)
    assert r.eq1_ok and r.injective_on_window and r.image_of_one == "c*"
    assert r.to_dict() == {"window": 30, "eq1_ok": True, "injective_on_window": True,
                           "image_of_one": "c*", "scope": "verified for k <= 30"}
    p = verify_window(principal_cstar, 30)
    assert p.eq1_ok and not p.injective_on_window


def test_window_detects_non_derivation():
    r = verify_window(lambda x: C_STAR if x == ONE else ZERO, 5)
    assert not r.eq1_ok and r.first_failure is not None
    assert not verify_window(lambda x: x if x.tag == "lower" else ONE, 5).eq1_ok


def test_window_axioms():
    assert window_axiom_violations(6) == []


def test_argument_checks():
    with pytest.raises(InvalidArgumentError):
        verify_window(remark_derivation, 0)
    with pytest.raises(InvalidArgumentError):
        lower(-1)
    with pytest.raises(InvalidArgumentError):
        upper(1.5)


def test_large_indices_do_not_overflow():
    big = 10 ** 30
    assert chang_oplus(lower(big), lower(big)) == lower(2 * big)
    assert chang_oplus(lower(big), upper(big + 1)) == C_STAR
