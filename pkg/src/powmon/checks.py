"""Reference checks: the worked examples and families, recomputed from scratch.

:func:`run_reference_suite` is what ``powmon verify-paper`` prints.  Each
item is a short name plus a callable returning ``(passed, detail)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .cancellativity import is_relatively_cancellative, verify_separated_sum
from .constructors import (
    INTERVAL_BASE,
    INTERVAL_SHIFT,
    build_family,
    distant_copy_structure,
    for_elasticity,
    interval_three,
    verify_distant_copy,
    verify_family,
)
from .factorizer import Factorization, Factorizer, LengthSet
from .finset import FinSet, dilate, parse, set_gcd, sumset

__all__ = [
    "CheckResult",
    "reference_items",
    "run_reference_suite",
    "random_separated_pairs",
    "all_sets_up_to",
    "EXAMPLE_SETS",
    "BASE_WORDS",
    "BASE_ATOM_DIVISORS",
]

#: The five sets used to show that each hypothesis of the separated-sum rule matters.
EXAMPLE_SETS = {
    "A": parse("{0,1,2,3}"),
    "B": parse("{0,7}"),
    "C": parse("{0,1}"),
    "D": parse("{0,3,6,9}"),
    "E": parse("{0,2}"),
}

BASE_WORDS = frozenset(
    Factorization(tuple(parse(u) for u in word))
    for word in (
        ("{0,1}", "{0,4}", "{0,10}", "{0,11,15}"),
        ("{0,1}", "{0,10}", "{0,4,10,11,15,19}"),
        ("{0,10,11}", "{0,1,4,5,10,11,15,19}"),
    )
)

BASE_ATOM_DIVISORS = frozenset(
    parse(s)
    for s in (
        "{0,1}",
        "{0,4}",
        "{0,10}",
        "{0,10,11}",
        "{0,11,15}",
        "{0,4,10,11,15,19}",
        "{0,1,4,5,10,11,15,19}",
    )
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def all_sets_up_to(top: int):
    """Every set ``A`` with ``0 in A`` and ``A <= [0, top]``."""
    rest = range(1, top + 1)
    for r in range(top + 1):
        for combo in combinations(rest, r):
            yield FinSet((0,) + combo)


def random_separated_pairs(rng: random.Random, count: int, factorizer=None):
    """Pairs ``(x, y)`` meeting the separated-sum preconditions.

    ``x`` is a relatively cancellative sum of at most two atoms with
    ``max(x) <= 6``; ``y`` is a relatively cancellative subset of ``[0, 6]``
    other than ``{0}`` (whose gcd is 0), dilated by ``2 max(x) + 1``.
    """
    f = factorizer if factorizer is not None else Factorizer()
    small = list(all_sets_up_to(6))
    atoms = [a for a in small if f.is_atom(a)]
    relcanc = [a for a in small if not a.is_zero() and is_relatively_cancellative(a, factorizer=f)]
    pairs = []
    while len(pairs) < count:
        k = rng.randint(0, 2)
        x = FinSet((0,))
        for _ in range(k):
            x = sumset(x, rng.choice(atoms))
        if x.max > 6 or not is_relatively_cancellative(x, factorizer=f):
            continue
        y = dilate(rng.choice(relcanc), 2 * x.max + 1)
        pairs.append((x, y))
    return pairs


def _lengths(f: Factorizer, a: FinSet) -> LengthSet:
    return f.length_set(a)


def reference_items(include_slow: bool = False) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    f = Factorizer()
    A, B, C, D, E = (EXAMPLE_SETS[k] for k in "ABCDE")
    X = INTERVAL_BASE
    Y = sumset(X, FinSet((0, INTERVAL_SHIFT)))

    def lengths_item(x, y, want, additive):
        def run():
            got = _lengths(f, sumset(x, y))
            add = _lengths(f, x) + _lengths(f, y)
            ok = got == LengthSet(want) and add == LengthSet(additive)
            return ok, f"L({x}+{y}) = {got}, L({x})+L({y}) = {add}"

        return run

    def relcanc_verdicts():
        got = {k: is_relatively_cancellative(v, factorizer=f) for k, v in EXAMPLE_SETS.items()}
        want = {"A": False, "B": True, "C": True, "D": False, "E": True}
        return got == want, ", ".join(f"{EXAMPLE_SETS[k]}: {v}" for k, v in got.items())

    def gcd_relations():
        ok = set_gcd(B) > 2 * A.max and set_gcd(D) > 2 * C.max and set_gcd(E) == 2 * C.max
        return ok, f"gcd(B)={set_gcd(B)}, gcd(D)={set_gcd(D)}, gcd(E)={set_gcd(E)}"

    def witness_atoms():
        u, v = parse("{0,1,2,7,9}"), parse("{0,1,4,6,7}")
        ok = (
            f.is_atom(u)
            and f.is_atom(v)
            and sumset(A, B) == sumset(C, u)
            and sumset(C, D) == sumset(parse("{0,3}"), v)
        )
        return ok, f"{u} and {v} are atoms"

    def base_set():
        zs = f.factorizations(X)
        ok = _lengths(f, X) == LengthSet((2, 3, 4)) and zs == BASE_WORDS
        ok = ok and f.atom_divisors(X) == BASE_ATOM_DIVISORS
        return ok, f"L(X) = {_lengths(f, X)}, |Z(X)| = {len(zs)}"

    def base_bases():
        st = distant_copy_structure(X, INTERVAL_SHIFT, factorizer=f)
        ok = set(st.bases) == {parse("{0,1,10,11}"), X}
        return ok, "bases: " + ", ".join(map(str, st.bases))

    def shifted_lengths():
        direct = Factorizer().length_set(Y)
        rep = verify_distant_copy(X, INTERVAL_SHIFT)
        want = LengthSet((3, 4, 5))
        ok = direct == want and rep.structural_lengths == want and rep.passed
        return ok, f"direct {direct}, via divisors {rep.structural_lengths}"

    def family(i):
        def run():
            rep = verify_family(build_family(i), factorizer=Factorizer())
            return rep.passed, f"L(S_{i}) = {rep.lengths}, |Z| = {rep.factorization_count}"

        return run

    def separated_sums():
        pairs = random_separated_pairs(random.Random(20250101), 20, factorizer=f)
        reps = [verify_separated_sum(x, y, factorizer=f) for x, y in pairs]
        bad = [r for r in reps if not r.passed]
        r1 = verify_separated_sum(C, E, factorizer=f)
        r2 = verify_separated_sum(A, parse("{0,9}"), factorizer=f)
        ok = not bad and r1.failed_precondition == "gcd" and r2.failed_precondition == "x_relcanc"
        return ok, f"{len(reps) - len(bad)}/{len(reps)} sampled pairs; boundary cases rejected"

    def distant_copies():
        reps = [verify_distant_copy(x, 2 * x.max + 1) for x in all_sets_up_to(6)]
        good = sum(r.passed for r in reps)
        return good == len(reps), f"{good}/{len(reps)} sets in [0,6]"

    def intervals():
        got = {k: Factorizer().length_set(interval_three(k)) for k in range(2, 7)}
        ok = all(v == LengthSet((k, k + 1, k + 2)) for k, v in got.items())
        return ok, ", ".join(f"k={k}: {v}" for k, v in got.items())

    def elasticities():
        qs = ["1", "3/2", "2", "5/2", "7/3"]
        got = {q: Factorizer().elasticity(for_elasticity(q)) for q in qs}
        ok = all(str(v) == q for q, v in got.items())
        return ok, ", ".join(f"{q} -> {v}" for q, v in got.items())

    items = [
        ("lengths of {0,1,2,3}+{0,7}", lengths_item(A, B, (2, 3, 4), (3, 4))),
        ("lengths of {0,1}+{0,3,6,9}", lengths_item(C, D, (2, 3, 4), (3, 4))),
        ("lengths of {0,1}+{0,2}", lengths_item(C, E, (2, 3), (2,))),
        ("relative cancellativity of A..E", relcanc_verdicts),
        ("gcd relations of A..E", gcd_relations),
        ("atoms in the alternative splittings", witness_atoms),
        ("base set X: lengths, words, atom divisors", base_set),
        ("distant-copy bases of X with n=61", base_bases),
        ("lengths of X+{0,61}, two routes", shifted_lengths),
        ("two-length family i=1", family(1)),
        ("two-length family i=2", family(2)),
        ("separated sums (sampled) and rejections", separated_sums),
        ("distant copies of all X in [0,6]", distant_copies),
        ("three-element intervals k=2..6", intervals),
        ("elasticities 1, 3/2, 2, 5/2, 7/3", elasticities),
    ]
    if include_slow:
        items.append(("two-length family i=3", family(3)))
        items.append(("two-length family i=4", family(4)))
    return items


def run_reference_suite(include_slow: bool = False) -> list[CheckResult]:
    results = []
    for name, fn in reference_items(include_slow):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed item, not a failed run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
