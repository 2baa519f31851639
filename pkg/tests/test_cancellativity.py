import random

import pytest
from hypothesis import given, settings, strategies as st

from powmon.cancellativity import (
    RelCancWitness,
    are_relatively_prime,
    gcd_criterion,
    is_relatively_cancellative,
    relcanc_witness,
    verify_separated_sum,
    word_product,
)
from powmon.checks import EXAMPLE_SETS, all_sets_up_to, random_separated_pairs
from powmon.factorizer import Factorization, Factorizer
from powmon.finset import ZERO, parse, sumset

S1 = parse("{0,1,3,4,5,7,8}")


@pytest.mark.parametrize("name, expected", [("A", False), ("B", True), ("C", True), ("D", False), ("E", True)])
def test_example_verdicts(name, expected):
    assert is_relatively_cancellative(EXAMPLE_SETS[name]) is expected


def test_witness_is_least():
    w = relcanc_witness(parse("{0,1,2,3}"))
    assert w == RelCancWitness(parse("{0,1}"), parse("{0,2}"), parse("{0,1,2}"))
    assert sumset(w.b, w.c) == sumset(w.b, w.d)
    assert w.to_json()["b"] == {"elements": [0, 1]}
    d = relcanc_witness(parse("{0,3,6,9}"))
    assert d.b == parse("{0,3}") and {d.c, d.d} == {parse("{0,6}"), parse("{0,3,6}")}
    assert relcanc_witness(parse("{0,7}")) is None
    assert relcanc_witness(ZERO) is None


def test_relative_primality():
    assert are_relatively_prime(ZERO, parse("{0,1,2,3}"))
    assert are_relatively_prime(parse("{0,1}"), parse("{0,2}"))
    assert not are_relatively_prime(parse("{0,1}"), parse("{0,1,2}"))
    assert not are_relatively_prime(parse("{0,1}"), parse("{0,1}"))


def test_gcd_criterion_examples():
    assert gcd_criterion(S1)
    assert not gcd_criterion(parse("{0,1,2,3}"))
    assert gcd_criterion(ZERO)


def test_word_product():
    u = Factorization((parse("{0,1}"),))
    v = Factorization((parse("{0,3}"),))
    assert word_product([u], [v, u]) == {u * v, u * u}


def test_separated_sum_passes():
    rep = verify_separated_sum(parse("{0,1}"), parse("{0,3}"))
    assert rep.passed and rep.failed_precondition is None
    assert rep.conclusions == {"relcanc": True, "z_product": True, "l_additivity": True}
    assert Factorizer().factorizations(parse("{0,1,3,4}")) == {
        Factorization((parse("{0,1}"), parse("{0,3}")))
    }
    obj = rep.to_json()
    assert obj["preconditions"] == {"x_relcanc": True, "y_relcanc": True, "gcd": True}
    assert obj["witness"] is None


def test_separated_sum_rejections():
    rep = verify_separated_sum(parse("{0,1}"), parse("{0,2}"))
    assert rep.failed_precondition == "gcd"
    assert rep.conclusions is None and not rep.passed
    rep = verify_separated_sum(parse("{0,1,2,3}"), parse("{0,9}"))
    assert rep.failed_precondition == "x_relcanc"
    rep = verify_separated_sum(parse("{0,1}"), parse("{0,3,6,9}"))
    assert rep.failed_precondition == "y_relcanc"


def test_gcd_criterion_implies_relcanc_on_0_to_9():
    f = Factorizer()
    for a in all_sets_up_to(9):
        if gcd_criterion(a, factorizer=f):
            assert is_relatively_cancellative(a, factorizer=f), a


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_separated_sum_property(seed):
    f = Factorizer()
    (x, y), = random_separated_pairs(random.Random(seed), 1, factorizer=f)
    rep = verify_separated_sum(x, y, factorizer=f)
    assert rep.passed, rep.to_json()
