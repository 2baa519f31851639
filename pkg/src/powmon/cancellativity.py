"""Relative cancellativity of sets and relative primality of pairs.

``A`` is relatively cancellative when ``A = B + C = B + D`` forces
``C = D``, i.e. every divisor of ``A`` has exactly one cofactor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .factorizer import Factorization, Factorizer, fact_gcd
from .finset import ZERO, FinSet, set_gcd, sumset

__all__ = [
    "RelCancWitness",
    "SeparatedSumReport",
    "relcanc_witness",
    "is_relatively_cancellative",
    "are_relatively_prime",
    "gcd_criterion",
    "verify_separated_sum",
    "word_product",
]


@dataclass(frozen=True)
class RelCancWitness:
    """``b + c == b + d`` with ``c != d``."""

    b: FinSet
    c: FinSet
    d: FinSet

    def to_json(self) -> dict:
        return {"b": self.b.to_json(), "c": self.c.to_json(), "d": self.d.to_json()}


def _engine(factorizer, budget) -> Factorizer:
    return factorizer if factorizer is not None else Factorizer(budget)


def relcanc_witness(a: FinSet, *, budget=None, factorizer=None) -> RelCancWitness | None:
    """Least counterexample to relative cancellativity, or ``None``.

    Sets are compared by (cardinality, elements): the least divisor with two
    cofactors, then its two least cofactors.
    """
    f = _engine(factorizer, budget)
    for b in sorted(f.divisors(a), key=FinSet.shortlex_key):
        cs = f.cofactors(a, b)
        if len(cs) > 1:
            c, d = sorted(cs, key=FinSet.shortlex_key)[:2]
            return RelCancWitness(b, c, d)
    return None


def is_relatively_cancellative(a: FinSet, *, budget=None, factorizer=None) -> bool:
    return relcanc_witness(a, budget=budget, factorizer=factorizer) is None


def are_relatively_prime(b: FinSet, c: FinSet, *, budget=None, factorizer=None) -> bool:
    """True iff ``{0}`` is the only common divisor of ``b`` and ``c``."""
    if b.is_zero() or c.is_zero():
        return True
    f = _engine(factorizer, budget)
    return f.divisors(b) & f.divisors(c) == {ZERO}


def gcd_criterion(a: FinSet, *, budget=None, factorizer=None) -> bool:
    """Distinct factorizations of ``a`` never share an atom."""
    words = list(_engine(factorizer, budget).factorizations(a))
    return all(len(fact_gcd(u, v)) == 0 for u, v in combinations(words, 2))


def word_product(us, vs) -> frozenset[Factorization]:
    """Elementwise product ``{u * v}`` of two sets of words."""
    return frozenset(u * v for u in us for v in vs)


@dataclass
class SeparatedSumReport:
    x: FinSet
    y: FinSet
    preconditions: dict[str, bool] = field(default_factory=dict)
    conclusions: dict[str, bool] | None = None
    witness: RelCancWitness | None = None

    @property
    def failed_precondition(self) -> str | None:
        for name, ok in self.preconditions.items():
            if not ok:
                return name
        return None

    @property
    def passed(self) -> bool:
        return self.conclusions is not None and all(self.conclusions.values())

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "preconditions": dict(self.preconditions),
            "conclusions": None if self.conclusions is None else dict(self.conclusions),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def verify_separated_sum(x: FinSet, y: FinSet, *, budget=None, factorizer=None) -> SeparatedSumReport:
    """Check that ``x + y`` inherits relative cancellativity and factorizations.

    Needs ``x`` and ``y`` relatively cancellative and ``gcd(y) > 2 max(x)``.
    A violated precondition is recorded in the report (the conclusions are
    then left unevaluated) instead of raising.
    """
    f = _engine(factorizer, budget)
    report = SeparatedSumReport(x, y)
    report.preconditions["x_relcanc"] = is_relatively_cancellative(x, factorizer=f)
    report.preconditions["y_relcanc"] = is_relatively_cancellative(y, factorizer=f)
    report.preconditions["gcd"] = set_gcd(y) > 2 * x.max
    if report.failed_precondition is not None:
        return report
    w = sumset(x, y)
    report.witness = relcanc_witness(w, factorizer=f)
    zx, zy = f.factorizations(x), f.factorizations(y)
    report.conclusions = {
        "relcanc": report.witness is None,
        "z_product": f.factorizations(w) == word_product(zx, zy),
        "l_additivity": f.length_set(w) == f.length_set(x) + f.length_set(y),
    }
    return report

