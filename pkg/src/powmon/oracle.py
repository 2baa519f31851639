"""Brute-force reference answers for small sets.

Nothing here touches the factorizer: sets are plain ``frozenset`` objects
and every candidate pair of subsets is tried.  Inputs are capped hard instead of budgeted.
"""

from __future__ import annotations

from itertools import combinations

from .factorizer import Factorization
from .finset import FinSet

__all__ = [
    "OracleCapExceeded",
    "naive_divisor_pairs",
    "naive_factorizations",
    "naive_is_atom",
    "naive_relcanc",
]

PAIR_CAP = 12
ATOM_CAP = 16
FACTOR_CAP = 10


class OracleCapExceeded(ValueError):
    pass


def _plus(x: frozenset, y: frozenset) -> frozenset:
    return frozenset(p + q for p in x for q in y)


def _subsets_with_zero(elems: frozenset) -> list[frozenset]:
    rest = sorted(elems - {0})
    out = []
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            out.append(frozenset((0,) + combo))
    return out


def _pairs(a: frozenset) -> list[tuple[frozenset, frozenset]]:
    subs = _subsets_with_zero(a)
    return [(b, c) for b in subs for c in subs if _plus(b, c) == a]


def _check(a: FinSet, cap: int) -> frozenset:
    if a.max > cap:
        raise OracleCapExceeded(f"oracle input max {a.max} exceeds cap {cap}")
    return frozenset(a.elements)


def naive_divisor_pairs(a: FinSet) -> set[tuple[FinSet, FinSet]]:
    """Every ordered ``(B, C)`` of subsets of ``a`` containing 0 with ``B + C == a``."""
    fa = _check(a, PAIR_CAP)
    return {(FinSet(b), FinSet(c)) for b, c in _pairs(fa)}


def _naive_words(a: frozenset) -> set[tuple]:
    if a == {0}:
        return {()}
    split = [(b, c) for b, c in _pairs(a) if b != {0} and c != {0}]
    if not split:
        return {(tuple(sorted(a)),)}
    words = set()
    for b, c in split:
        for u in _naive_words(b):
            for v in _naive_words(c):
                words.add(tuple(sorted(u + v)))
    return words


def naive_factorizations(a: FinSet) -> set[Factorization]:
    fa = _check(a, FACTOR_CAP)
    return {Factorization(tuple(FinSet(u) for u in w)) for w in _naive_words(fa)}


def naive_relcanc(a: FinSet) -> bool:
    fa = _check(a, FACTOR_CAP)
    groups: dict[frozenset, set] = {}
    for b, c in _pairs(fa):
        groups.setdefault(b, set()).add(c)
    return all(len(cs) == 1 for cs in groups.values())


def naive_is_atom(a: FinSet) -> bool:
    """Atom test by trying every proper subset ``B`` as a summand.

    For a given ``B`` the largest possible partner is
    ``{c in a : c + B <= a}``; some partner works iff that one does.
    """
    fa = _check(a, ATOM_CAP)
    if fa == {0}:
        return False
    for b in _subsets_with_zero(fa):
        if b == {0} or b == fa:
            continue
        partner = frozenset(c for c in fa if all(c + x in fa for x in b))
        if _plus(b, partner) == fa:
            return False
    return True
