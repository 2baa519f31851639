"""Finite subsets of the nonnegative integers that contain 0.

A :class:`FinSet` is an element of the reduced finitary power monoid of N_0:
the operation is set addition (``A + B = {a + b}``) and ``{0}`` is the
identity.  Values are immutable and hashable.

Small sets (max element below :data:`BITSET_THRESHOLD`) carry a bitmask so
that sumsets reduce to shifted bitwise-or; larger ones fall back to a merge
of sorted sums.
"""

from __future__ import annotations

import bisect
import heapq
import math
import re
from fractions import Fraction
from typing import Iterable, Iterator

__all__ = [
    "BITSET_THRESHOLD",
    "MAX_ELEMENT",
    "FinSet",
    "FinSetError",
    "MissingZero",
    "InvalidElement",
    "EmptySet",
    "ElementOverflow",
    "Rational",
    "parse",
    "render",
    "sumset",
    "dilate",
    "set_gcd",
    "iter_bits",
    "mask_of",
]

MAX_ELEMENT = 2**64 - 1

#: Sets whose max element is below this use the bitmask sumset.
BITSET_THRESHOLD = 4096

#: Exact elasticities and targets are plain fractions (always in lowest terms).
Rational = Fraction


class FinSetError(ValueError):
    """Raised when a value cannot be a member of the monoid."""


class MissingZero(FinSetError):
    pass


class InvalidElement(FinSetError):
    pass


class EmptySet(FinSetError):
    pass


class ElementOverflow(FinSetError, OverflowError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _check_element(e) -> int:
    if isinstance(e, bool) or not isinstance(e, int):
        raise InvalidElement(f"not an integer: {e!r}")
    if e < 0:
        raise InvalidElement(f"negative element: {e}")
    if e > MAX_ELEMENT:
        raise ElementOverflow(f"element {e} exceeds the 64-bit unsigned range")
    return e


class FinSet:
    """A finite set of nonnegative integers containing 0.

    Construction normalizes order and duplicates and rejects anything that
    is not a valid monoid element.
    """

    __slots__ = ("_elements", "_mask", "_hash")

    def __init__(self, elements: Iterable[int] = (0,)):
        elems = sorted({_check_element(e) for e in elements})
        if not elems:
            raise EmptySet("a FinSet needs at least the element 0")
        if elems[0] != 0:
            raise MissingZero(f"0 is not an element of {{{','.join(map(str, elems))}}}")
        self._elements = tuple(elems)
        self._mask = None
        self._hash = None

    @classmethod
    def _trusted(cls, elements: tuple[int, ...], mask: int | None = None) -> "FinSet":
        # caller guarantees a sorted, duplicate-free tuple starting at 0
        obj = cls.__new__(cls)
        obj._elements = elements
        obj._mask = mask
        obj._hash = None
        return obj

    @classmethod
    def from_mask(cls, mask: int) -> "FinSet":
        """Build from a bitmask whose bit ``k`` marks element ``k``."""
        if mask <= 0 or not mask & 1:
            raise MissingZero("bitmask does not contain 0")
        if mask.bit_length() - 1 > MAX_ELEMENT:
            raise ElementOverflow("bitmask exceeds the 64-bit unsigned range")
        return cls._trusted(tuple(iter_bits(mask)), mask)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    @property
    def max(self) -> int:
        return self._elements[-1]

    @property
    def mask(self) -> int:
        """Bitmask form; built on first use."""
        if self._mask is None:
            self._mask = mask_of(self._elements)
        return self._mask

    def is_zero(self) -> bool:
        return len(self._elements) == 1

    def sort_key(self) -> tuple:
        """Canonical order: max element first, then lexicographic."""
        return (self._elements[-1], self._elements)

    def shortlex_key(self) -> tuple:
        return (len(self._elements), self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __contains__(self, x) -> bool:
        i = bisect.bisect_left(self._elements, x)
        return i < len(self._elements) and self._elements[i] == x

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinSet):
            return NotImplemented
        return self._elements == other._elements

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._elements)
        return self._hash

    def __lt__(self, other: "FinSet") -> bool:
        return self.sort_key() < other.sort_key()

    def __add__(self, other: "FinSet") -> "FinSet":
        if not isinstance(other, FinSet):
            return NotImplemented
        return sumset(self, other)

    def __mul__(self, d: int) -> "FinSet":
        return dilate(self, d)

    __rmul__ = __mul__

    def issubset(self, other: "FinSet") -> bool:
        return set(self._elements) <= set(other._elements)

    def to_json(self) -> dict:
        return {"elements": list(self._elements)}

    @classmethod
    def from_json(cls, obj: dict) -> "FinSet":
        if not isinstance(obj, dict) or "elements" not in obj:
            raise FinSetError('expected an object with an "elements" list')
        return cls(obj["elements"])

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"FinSet({render(self)})"


ZERO = FinSet._trusted((0,), 1)

_TOKEN = re.compile(r"^\s*\+?\d+\s*$")


def parse(text: str) -> FinSet:
    """Parse ``"{0,1,4}"``; extra whitespace and unsorted or repeated elements are fine."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise FinSetError(f"expected a brace-delimited list, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise EmptySet("empty set literal")
    values = []
    for tok in body.split(","):
        if not _TOKEN.match(tok):
            raise InvalidElement(f"bad element token {tok.strip()!r} in {text!r}")
        values.append(int(tok))
    return FinSet(values)


def render(a: FinSet) -> str:
    return "{" + ",".join(map(str, a.elements)) + "}"


def sumset(a: FinSet, b: FinSet) -> FinSet:
    top = a.max + b.max
    if top > MAX_ELEMENT:
        raise ElementOverflow(f"sumset max {top} exceeds the 64-bit unsigned range")
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        return b
    if top < BITSET_THRESHOLD:
        bm = b.mask
        m = 0
        for x in a.elements:
            m |= bm << x
        return FinSet._trusted(tuple(iter_bits(m)), m)
    merged = heapq.merge(*[[x + y for y in b.elements] for x in a.elements])
    out = []
    last = -1
    for v in merged:
        if v != last:
            out.append(v)
            last = v
    return FinSet._trusted(tuple(out))


def dilate(a: FinSet, d: int) -> FinSet:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValueError(f"dilation factor must be a positive integer, got {d!r}")
    if a.max * d > MAX_ELEMENT:
        raise ElementOverflow(f"dilation by {d} exceeds the 64-bit unsigned range")
    if d == 1:
        return a
    return FinSet._trusted(tuple(d * x for x in a.elements))


def set_gcd(a: FinSet) -> int:
    """gcd of all elements; 0 exactly for ``{0}``."""
    return math.gcd(*a.elements)
