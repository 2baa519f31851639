"""Divisor and factorization search in the power monoid of N_0.

All searches run on bitmasks (bit ``k`` set means ``k`` is an element).
The two primitive searches are

* small-side divisor enumeration: every ``B`` with ``B + C = A`` for some
  ``C`` and ``max(B) <= max(A) // 2``.  For a fixed ``b = max(B)`` the
  elements of ``B`` are decided in increasing order while the maximal
  quotient ``C* = {y : B + y <= A}`` shrinks; a branch dies as soon as an
  element of ``A`` below the decision point can no longer be written as
  ``x + y`` with ``x`` in ``B`` and ``y`` in ``C*``.
* cofactor enumeration: every ``C`` with ``B + C = A`` is a subset of ``C*``
  covering ``A``; elements of ``C*`` are included/excluded with a
  coverability check after each exclusion, so uniquely-representable
  elements are forced.

Every divisor with ``max(B) > max(A) / 2`` is a cofactor of a small-side
divisor, and every word of length at least two contains an atom with
``max <= max(A) / 2``, which is what :meth:`Factorizer.factorizations`
branches on.  Results are memoized per :class:`Factorizer` and every search
node counts against a budget; running out raises :class:`BudgetExceeded`
rather than returning a partial answer.
"""

from __future__ import annotations

import math
import os
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .finset import ZERO, FinSet, iter_bits

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "Factorization",
    "LengthSet",
    "Factorizer",
    "default_budget",
    "cofactors",
    "divisors",
    "is_atom",
    "atom_divisors",
    "factorizations",
    "length_set",
    "elasticity_of_set",
    "fact_gcd",
    "sorted_sets",
    "sorted_words",
]

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """The search visited more nodes than its budget allows."""


def default_budget() -> int:
    env = os.environ.get("POWMON_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"POWMON_BUDGET must be an integer, got {env!r}") from None
        if value <= 0:
            raise ValueError("POWMON_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Factorization:
    """A word in the factorization monoid: a multiset of atoms.

    Atoms are kept sorted by (max element, elements); the word length is
    ``len(z)``.
    """

    atoms: tuple[FinSet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms, key=FinSet.sort_key)))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[FinSet]:
        return iter(self.atoms)

    def __mul__(self, other: "Factorization") -> "Factorization":
        return Factorization(self.atoms + other.atoms)

    def value(self) -> FinSet:
        """Sumset of all atoms (``{0}`` for the empty word)."""
        total = ZERO
        for u in self.atoms:
            total = total + u
        return total

    def to_json(self) -> dict:
        return {"word": [u.to_json() for u in self.atoms]}

    @classmethod
    def from_json(cls, obj: dict) -> "Factorization":
        return cls(tuple(FinSet.from_json(u) for u in obj["word"]))

    def __str__(self) -> str:
        if not self.atoms:
            return "1"
        return "*".join(str(u) for u in self.atoms)


@dataclass(frozen=True)
class LengthSet:
    lengths: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(sorted(set(self.lengths))))

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths)

    def __len__(self) -> int:
        return len(self.lengths)

    def __contains__(self, k) -> bool:
        return k in self.lengths

    def __add__(self, other: "LengthSet") -> "LengthSet":
        return LengthSet(tuple(x + y for x in self.lengths for y in other.lengths))

    def __radd__(self, k: int) -> "LengthSet":
        # 1 + L shifts every length
        return LengthSet(tuple(k + x for x in self.lengths))

    def __or__(self, other: "LengthSet") -> "LengthSet":
        return LengthSet(self.lengths + other.lengths)

    def elasticity(self) -> Fraction:
        if not self.lengths or self.lengths == (0,):
            return Fraction(1)
        return Fraction(self.lengths[-1], self.lengths[0])

    def to_json(self) -> dict:
        return {"lengths": list(self.lengths)}

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.lengths)) + "}"


def _sum_masks(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    s = 0
    while a:
        low = a & -a
        s |= b << (low.bit_length() - 1)
        a ^= low
    return s


def _mask_gcd(a: int) -> int:
    g = 0
    for x in iter_bits(a >> 1):
        g = math.gcd(g, x + 1)
        if g == 1:
            break
    return g


def _scale(a: int, num: int, den: int) -> int:
    m = 0
    for x in iter_bits(a):
        m |= 1 << (x * num // den)
    return m


def _word_key(w: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(w))


class Factorizer:
    """Memoizing search engine for divisors and factorizations.

    ``budget`` bounds the number of search nodes of each top-level call.
    With ``shared=True`` the memo tables are guarded by a lock so one
    instance can serve several threads.
    """

    def __init__(self, budget: int | None = None, *, shared: bool = False):
        self.budget = default_budget() if budget is None else int(budget)
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        self._lock = threading.RLock() if shared else None
        self._local = threading.local()
        self._small: dict[int, tuple[int, ...]] = {}
        self._atom: dict[int, bool] = {}
        self._cof: dict[tuple[int, int], tuple[int, ...]] = {}
        self._z: dict[int, frozenset] = {}

    # -- bookkeeping -------------------------------------------------------

    def _tick(self, n: int = 1) -> None:
        loc = self._local
        loc.nodes = getattr(loc, "nodes", 0) + n
        if loc.nodes > self.budget:
            raise BudgetExceeded(
                f"search exceeded its budget of {self.budget} nodes; "
                "raise it with --budget or POWMON_BUDGET"
            )

    def _enter(self) -> None:
        loc = self._local
        depth = getattr(loc, "depth", 0)
        if depth == 0:
            loc.nodes = 0
        loc.depth = depth + 1

    def _leave(self) -> None:
        self._local.depth -= 1

    def _get(self, table: dict, key):
        if self._lock is None:
            return table.get(key)
        with self._lock:
            return table.get(key)

    def _put(self, table: dict, key, value) -> None:
        if self._lock is None:
            table[key] = value
        else:
            with self._lock:
                table.setdefault(key, value)

    @property
    def nodes(self) -> int:
        """Search nodes used by the latest top-level call on this thread."""
        return getattr(self._local, "nodes", 0)

    # -- mask-level searches ----------------------------------------------

    def _iter_small_divisors(self, a: int, nontrivial_only: bool = False) -> Iterator[int]:
        if not nontrivial_only:
            yield 1
        top = a.bit_length() - 1
        for b in range(1, top // 2 + 1):
            if not (a >> b & 1 and a >> (top - b) & 1):
                continue
            c = top - b
            cup0 = a & (a >> b) & ((1 << (c + 1)) - 1)
            cand = [x for x in iter_bits(a & ((1 << b) - 1) & ~1) if a >> (x + c) & 1]
            ncand = len(cand)
            stack = [(0, 1 | (1 << b), cup0)]
            while stack:
                i, bm, cup = stack.pop()
                self._tick()
                s = _sum_masks(bm, cup)
                if i == ncand:
                    if a & ~s == 0:
                        yield bm
                    continue
                v = cand[i]
                if a & ~s & ((1 << v) - 1):
                    continue
                stack.append((i + 1, bm, cup))
                cup2 = cup & (a >> v)
                if cup2 >> c & 1:
                    stack.append((i + 1, bm | (1 << v), cup2))

    def _small_divisors(self, a: int) -> tuple[int, ...]:
        hit = self._get(self._small, a)
        if hit is None:
            hit = tuple(sorted(self._iter_small_divisors(a)))
            self._put(self._small, a, hit)
        return hit

    def _is_atom(self, a: int) -> bool:
        if a == 1:
            return False
        hit = self._get(self._atom, a)
        if hit is not None:
            return hit
        top = a.bit_length() - 1
        rest = a ^ (1 << top)
        if rest == 1 or 2 * (rest.bit_length() - 1) < top:
            # a nontrivial B + C puts both max(B) and max(C) below max(A)
            result = True
        elif a in self._small:
            result = len(self._small[a]) == 1
        else:
            result = next(self._iter_small_divisors(a, nontrivial_only=True), None) is None
        self._put(self._atom, a, result)
        return result

    def _cofactors(self, a: int, b: int) -> tuple[int, ...]:
        if b == 1:
            return (a,)
        key = (a, b)
        hit = self._get(self._cof, key)
        if hit is not None:
            return hit
        q = a
        for x in iter_bits(b):
            q &= a >> x
        out = []
        if _sum_masks(b, q) == a:
            elems = list(iter_bits(q))
            n = len(elems)
            # (index, included, still possible)
            stack = [(0, 0, q)]
            while stack:
                i, inc, avail = stack.pop()
                self._tick()
                if i == n:
                    out.append(inc)
                    continue
                bit = 1 << elems[i]
                without = avail & ~bit
                if _sum_masks(b, without) == a:
                    stack.append((i + 1, inc, without))
                stack.append((i + 1, inc | bit, avail))
        result = tuple(sorted(out))
        self._put(self._cof, key, result)
        return result

    def _factorizations(self, a: int) -> frozenset:
        if a == 1:
            return frozenset({()})
        hit = self._get(self._z, a)
        if hit is not None:
            return hit
        g = _mask_gcd(a)
        if g > 1:
            reduced = self._factorizations(_scale(a, 1, g))
            result = frozenset(_word_key(tuple(_scale(u, g, 1) for u in w)) for w in reduced)
        elif self._is_atom(a):
            result = frozenset({(a,)})
        else:
            words = set()
            for u in self._small_divisors(a):
                if u == 1 or not self._is_atom(u):
                    continue
                for c in self._cofactors(a, u):
                    for w in self._factorizations(c):
                        words.add(_word_key(w + (u,)))
            result = frozenset(words)
        self._put(self._z, a, result)
        return result

    # -- public API --------------------------------------------------------

    def cofactors(self, a: FinSet, b: FinSet) -> frozenset[FinSet]:
        """All ``C`` with ``b + C == a`` (empty when ``b`` does not divide ``a``)."""
        self._enter()
        try:
            if b.max > a.max:
                return frozenset()
            return frozenset(FinSet.from_mask(c) for c in self._cofactors(a.mask, b.mask))
        finally:
            self._leave()

    def divisors(self, a: FinSet) -> frozenset[FinSet]:
        self._enter()
        try:
            am = a.mask
            found = set()
            for b in self._small_divisors(am):
                found.add(b)
                found.update(self._cofactors(am, b))
            return frozenset(FinSet.from_mask(m) for m in found)
        finally:
            self._leave()

    def is_atom(self, a: FinSet) -> bool:
        self._enter()
        try:
            return self._is_atom(a.mask)
        finally:
            self._leave()

    def atom_divisors(self, a: FinSet) -> frozenset[FinSet]:
        self._enter()
        try:
            return frozenset(d for d in self.divisors(a) if self._is_atom(d.mask))
        finally:
            self._leave()

    def factorizations(self, a: FinSet) -> frozenset[Factorization]:
        self._enter()
        try:
            words = self._factorizations(a.mask)
            return frozenset(
                Factorization(tuple(FinSet.from_mask(u) for u in w)) for w in words
            )
        finally:
            self._leave()

    def length_set(self, a: FinSet) -> LengthSet:
        self._enter()
        try:
            return LengthSet(tuple(len(w) for w in self._factorizations(a.mask)))
        finally:
            self._leave()

    def elasticity(self, a: FinSet) -> Fraction:
        return self.length_set(a).elasticity()


def fact_gcd(u: Factorization, v: Factorization) -> Factorization:
    """Greatest common divisor in the factorization monoid (multiset meet)."""
    common = Counter(u.atoms) & Counter(v.atoms)
    return Factorization(tuple(common.elements()))


def _engine(factorizer: Factorizer | None, budget: int | None) -> Factorizer:
    if factorizer is not None:
        return factorizer
    return Factorizer(budget)


def cofactors(a: FinSet, b: FinSet, *, budget=None, factorizer=None) -> frozenset[FinSet]:
    return _engine(factorizer, budget).cofactors(a, b)


def divisors(a: FinSet, *, budget=None, factorizer=None) -> frozenset[FinSet]:
    """Every ``B`` dividing ``a``; always includes ``{0}`` and ``a``."""
    return _engine(factorizer, budget).divisors(a)


def is_atom(a: FinSet, *, budget=None, factorizer=None) -> bool:
    return _engine(factorizer, budget).is_atom(a)


def atom_divisors(a: FinSet, *, budget=None, factorizer=None) -> frozenset[FinSet]:
    return _engine(factorizer, budget).atom_divisors(a)


def factorizations(a: FinSet, *, budget=None, factorizer=None) -> frozenset[Factorization]:
    """The complete set Z(a); ``{0}`` has exactly the empty word."""
    return _engine(factorizer, budget).factorizations(a)


def length_set(a: FinSet, *, budget=None, factorizer=None) -> LengthSet:
    return _engine(factorizer, budget).length_set(a)


def elasticity_of_set(a: FinSet, *, budget=None, factorizer=None) -> Fraction:
    """max(L)/min(L); 1 for ``{0}`` and for atoms."""
    return _engine(factorizer, budget).elasticity(a)


def sorted_sets(sets: Iterable[FinSet]) -> list[FinSet]:
    return sorted(sets, key=FinSet.sort_key)


def sorted_words(words: Iterable[Factorization]) -> list[Factorization]:
    return sorted(words, key=lambda z: (len(z), [u.sort_key() for u in z]))
