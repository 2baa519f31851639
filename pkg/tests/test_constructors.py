import random
from fractions import Fraction

import pytest

from powmon.cancellativity import is_relatively_cancellative
from powmon.checks import all_sets_up_to
from powmon.constructors import (
    ATOM01,
    INTERVAL_BASE,
    INTERVAL_SHIFT,
    InvalidSequence,
    PreconditionFailed,
    TwoLengthFamily,
    build_family,
    certify_generators,
    compose_sum,
    distant_copy_structure,
    elasticity_recipe,
    for_elasticity,
    from_generators,
    generator_length_set,
    interval_three,
    verify_distant_copy,
    verify_family,
)
from powmon.factorizer import Factorizer, LengthSet
from powmon.finset import ZERO, FinSet, parse, sumset

S1 = parse("{0,1,3,4,5,7,8}")


def test_family_base_index():
    f = build_family(0)
    assert (f.a[0], f.b[0], f.c[0], f.d[0], f.s[0]) == (ATOM01, ZERO, ZERO, ATOM01, ATOM01)
    rep = verify_family(f)
    assert rep.passed and rep.notes


def test_family_index_one():
    f = build_family(1)
    assert f.n == (3,)
    assert f.a[1] == parse("{0,1,4}")
    assert f.b[1] == parse("{0,3,4}")
    assert f.c[1] == parse("{0,3}")
    assert f.d[1] == parse("{0,1,4,5}")
    assert f.top == S1


def test_family_index_two():
    f = build_family(2)
    assert f.n == (3, 15)
    assert f.c[2] == parse("{0,3,15}")
    assert f.d[2] == parse("{0,1,4,5,16,17,20,21}")
    assert f.steps() == (1, 4, 16)


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_verify_family(i):
    rep = verify_family(build_family(i))
    assert rep.passed, rep.failures
    assert rep.factorization_count == 2
    assert rep.lengths == LengthSet((2, i + 2))


def test_family_with_larger_steps():
    f = build_family(2, [4, 20])
    rep = verify_family(f)
    assert rep.passed and rep.lengths == LengthSet((2, 4))


def test_family_rejects_short_steps():
    with pytest.raises(InvalidSequence) as err:
        build_family(2, [3, 14])
    assert err.value.index == 2
    with pytest.raises(InvalidSequence):
        build_family(2, [3])


def test_family_json_round_trip():
    f = build_family(2)
    obj = f.to_json()
    assert set(obj) == {"i", "n", "A", "B", "C", "D", "S"}
    assert TwoLengthFamily.from_json(obj) == f


def test_compose_sum_examples():
    w = compose_sum(S1, ATOM01)
    assert w == sumset(S1, FinSet((0, 17)))
    assert Factorizer().length_set(w) == LengthSet((3, 4))
    assert compose_sum(S1, ZERO) == S1
    with pytest.raises(PreconditionFailed) as err:
        compose_sum(parse("{0,1,2,3}"), ATOM01)
    assert err.value.which == "x_relcanc"


def test_compose_sum_pairs():
    f = Factorizer()
    rng = random.Random(7)
    pool = [a for a in all_sets_up_to(5) if is_relatively_cancellative(a, factorizer=f)]
    for _ in range(25):
        x, y = rng.choice(pool), rng.choice(pool)
        w = compose_sum(x, y, factorizer=f)
        assert is_relatively_cancellative(w, factorizer=f)
        assert f.length_set(w) == f.length_set(x) + f.length_set(y)


def test_from_generators_examples():
    assert from_generators(0, [3]) == S1
    assert from_generators(2, []) == parse("{0,1,3,4}")
    assert from_generators(0, []) == ZERO
    f = Factorizer()
    assert f.length_set(from_generators(2, [])) == LengthSet((2,))
    assert f.length_set(ZERO) == LengthSet((0,))
    assert generator_length_set(1, [3, 4]) == LengthSet((5, 6, 7, 8))
    with pytest.raises(ValueError):
        from_generators(0, [2])
    with pytest.raises(ValueError):
        from_generators(-1, [])


def test_from_generators_lengths_by_brute_force():
    f = Factorizer()
    for c, ns in [(1, [3]), (0, [4]), (1, [3, 3]), (0, [3, 4])]:
        assert f.length_set(from_generators(c, ns)) == generator_length_set(c, ns)


def test_certify_generators():
    cert = certify_generators(1, [3, 5])
    assert cert.passed
    assert cert.lengths == LengthSet((5, 6, 8, 9))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_interval_three(k):
    assert Factorizer().length_set(interval_three(k)) == LengthSet((k, k + 1, k + 2))


def test_interval_three_fixtures():
    assert interval_three(2) == INTERVAL_BASE
    assert interval_three(3) == sumset(INTERVAL_BASE, FinSet((0, INTERVAL_SHIFT)))
    with pytest.raises(ValueError):
        interval_three(1)


@pytest.mark.parametrize(
    "q, recipe",
    [("1", (1, [])), ("3/2", (0, [3])), ("2", (0, [4])), ("5/2", (0, [5])), ("7/3", (1, [6])),
     ("4/3", (1, [3])), ("3", (0, [6]))],
)
def test_elasticity_recipe(q, recipe):
    assert elasticity_recipe(q) == recipe


def test_for_elasticity_examples():
    assert for_elasticity(1) == ATOM01
    assert for_elasticity(Fraction(3, 2)) == S1
    assert for_elasticity("2") == build_family(2).top
    with pytest.raises(ValueError):
        for_elasticity(Fraction(1, 2))
    with pytest.raises(ValueError):
        for_elasticity("x")


@pytest.mark.parametrize("q", ["4/3", "3", "5/3"])
def test_for_elasticity_more(q):
    assert Factorizer().elasticity(for_elasticity(q)) == Fraction(q)


def test_distant_copy_examples():
    assert distant_copy_structure(parse("{0,1,2}"), 5).bases == (parse("{0,1,2}"),)
    st = distant_copy_structure(INTERVAL_BASE, INTERVAL_SHIFT)
    assert set(st.bases) == {parse("{0,1,10,11}"), INTERVAL_BASE}
    assert st.to_json()["n"] == 61
    with pytest.raises(PreconditionFailed):
        distant_copy_structure(ATOM01, 2)


def test_verify_distant_copy_examples():
    rep = verify_distant_copy(parse("{0,1,2}"), 5)
    assert rep.passed and rep.direct_lengths == LengthSet((3,))
    rep = verify_distant_copy(ZERO, 1)
    assert rep.passed and rep.direct_lengths == rep.structural_lengths == LengthSet((1,))
    rep = verify_distant_copy(INTERVAL_BASE, INTERVAL_SHIFT)
    assert rep.passed and rep.direct_lengths == LengthSet((3, 4, 5))


def test_verify_distant_copy_larger_gaps():
    for x in all_sets_up_to(4):
        for extra in (0, 3):
            assert verify_distant_copy(x, 2 * x.max + 1 + extra).passed
