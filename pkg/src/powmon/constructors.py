"""Explicit sets with prescribed length sets.

The building blocks are

* the two-length family ``S_0, S_1, ...`` with exactly two factorizations
  and ``L(S_i) = {2, i + 2}`` (:func:`build_family`);
* the separated sum ``x + d*y`` with ``d = 2 max(x) + 1``, which adds length
  sets of relatively cancellative sets (:func:`compose_sum`);
* the distant copy ``x + {0, n}`` with ``n > 2 max(x)``, whose
  factorizations all consist of one long atom times a factorization of a
  divisor of ``x`` (:func:`distant_copy_structure`).

:func:`from_generators` adds up such pieces; :func:`interval_three` and
:func:`for_elasticity` use it to reach three-element intervals and any
rational elasticity ``q >= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .cancellativity import are_relatively_prime, gcd_criterion, relcanc_witness
from .factorizer import Factorization, Factorizer, LengthSet, sorted_sets
from .finset import ZERO, FinSet, dilate, parse, sumset

__all__ = [
    "PreconditionFailed",
    "InvalidSequence",
    "TwoLengthFamily",
    "FamilyReport",
    "DistantCopyStructure",
    "DistantCopyReport",
    "CertifiedLengthSet",
    "build_family",
    "verify_family",
    "compose_sum",
    "from_generators",
    "generator_length_set",
    "certify_generators",
    "interval_three",
    "elasticity_recipe",
    "for_elasticity",
    "distant_copy_structure",
    "verify_distant_copy",
    "INTERVAL_BASE",
    "INTERVAL_SHIFT",
]

ATOM01 = FinSet._trusted((0, 1), 0b11)

#: Length set {2,3,4}; the k=2 interval witness.
INTERVAL_BASE = parse("{0,1,4,5,10,11,12,14,15,16,19,20,21,22,25,26,29,30}")
#: INTERVAL_BASE + {0, 61} has length set {3,4,5}.
INTERVAL_SHIFT = 61


class PreconditionFailed(ValueError):
    def __init__(self, which: str, message: str | None = None):
        self.which = which
        super().__init__(message or f"precondition failed: {which}")


class InvalidSequence(ValueError):
    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(message)


def _engine(factorizer, budget) -> Factorizer:
    return factorizer if factorizer is not None else Factorizer(budget)


# -- two-length family -------------------------------------------------------


@dataclass(frozen=True)
class TwoLengthFamily:
    """``n_1..n_i`` and the sets ``A_j, B_j, C_j, D_j, S_j`` for ``j = 0..i``."""

    i: int
    n: tuple[int, ...]
    a: tuple[FinSet, ...]
    b: tuple[FinSet, ...]
    c: tuple[FinSet, ...]
    d: tuple[FinSet, ...]
    s: tuple[FinSet, ...]

    @property
    def top(self) -> FinSet:
        return self.s[-1]

    def steps(self) -> tuple[int, ...]:
        """``1 + n_j`` for ``j = 0..i`` (with ``n_0 = 0``)."""
        return (1,) + tuple(1 + n for n in self.n)

    def short_word(self) -> Factorization:
        return Factorization((self.a[-1], self.b[-1]))

    def pair_word(self) -> Factorization:
        """The unique factorization of ``D_i`` into two-element atoms."""
        return Factorization(tuple(FinSet._trusted((0, m)) for m in self.steps()))

    def long_word(self) -> Factorization:
        return Factorization((self.c[-1],)) * self.pair_word()

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "n": list(self.n),
            "A": [x.to_json() for x in self.a],
            "B": [x.to_json() for x in self.b],
            "C": [x.to_json() for x in self.c],
            "D": [x.to_json() for x in self.d],
            "S": [x.to_json() for x in self.s],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TwoLengthFamily":
        fam = build_family(int(obj["i"]), [int(v) for v in obj["n"]])
        for key, got in (("A", fam.a), ("B", fam.b), ("C", fam.c), ("D", fam.d), ("S", fam.s)):
            if [FinSet.from_json(v) for v in obj[key]] != list(got):
                raise ValueError(f"family field {key} does not match its n-sequence")
        return fam


def build_family(i: int, n_seq=None) -> TwoLengthFamily:
    """Build the family up to index ``i``.

    Without ``n_seq`` the smallest legal steps ``n_{j+1} = 3 max(D_j)`` are
    used.  A supplied sequence must have length ``i`` and satisfy
    ``n_{j+1} >= 3 max(D_j)`` at every step.
    """
    if isinstance(i, bool) or not isinstance(i, int) or i < 0:
        raise ValueError(f"family index must be a nonnegative integer, got {i!r}")
    if n_seq is not None:
        n_seq = list(n_seq)
        if len(n_seq) != i:
            raise InvalidSequence(
                min(len(n_seq), i) + 1, f"need {i} step values, got {len(n_seq)}"
            )
    a, b, c, d = [ATOM01], [ZERO], [ZERO], [ATOM01]
    s = [ATOM01]
    ns = []
    for j in range(i):
        floor = 3 * d[-1].max
        if n_seq is None:
            nj = floor
        else:
            nj = n_seq[j]
            if isinstance(nj, bool) or not isinstance(nj, int) or nj < floor:
                raise InvalidSequence(j + 1, f"n_{j + 1} = {nj!r} is below 3*max(D_{j}) = {floor}")
        ns.append(nj)
        a.append(FinSet(a[-1].elements + (1 + nj,)))
        b.append(FinSet(b[-1].elements + tuple(nj + x for x in d[-1].elements)))
        c.append(FinSet(c[-1].elements + (nj,)))
        d.append(sumset(d[-1], FinSet._trusted((0, 1 + nj))))
        s.append(sumset(c[-1], d[-1]))
    return TwoLengthFamily(i, tuple(ns), tuple(a), tuple(b), tuple(c), tuple(d), tuple(s))


@dataclass
class FamilyReport:
    i: int
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    factorization_count: int | None = None
    lengths: LengthSet | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "passed": self.passed,
            "checks": dict(self.checks),
            "notes": list(self.notes),
            "factorization_count": self.factorization_count,
            "lengths": None if self.lengths is None else list(self.lengths),
        }


def verify_family(f: TwoLengthFamily, *, budget=None, factorizer=None) -> FamilyReport:
    """Recompute the structure of the top index by exhaustive factorization."""
    eng = _engine(factorizer, budget)
    rep = FamilyReport(f.i)
    i = f.i
    A, B, C, D, S = f.a[-1], f.b[-1], f.c[-1], f.d[-1], f.s[-1]
    if i == 0:
        rep.notes.append("index 0 only fixes the base sets; the two-length property starts at i = 1")
        rep.checks["base_sets"] = (A, B, C, D, S) == (ATOM01, ZERO, ZERO, ATOM01, ATOM01)
        return rep

    rep.checks["n_sequence"] = all(f.n[j] >= 3 * f.d[j].max for j in range(i))
    rep.checks["atoms"] = all(eng.is_atom(x) for x in (A, B, C))
    rep.checks["max_below_d"] = max(A.max, B.max, C.max) < D.max
    rep.checks["a_is_shifted_c"] = A == FinSet((0,) + tuple(1 + x for x in C.elements))
    rep.checks["ab_equals_cd"] = sumset(A, B) == sumset(C, D) == S
    rep.checks["d_factorizations"] = eng.factorizations(D) == {f.pair_word()}
    rep.checks["d_lengths"] = eng.length_set(D) == LengthSet((i + 1,))
    zs = eng.factorizations(S)
    rep.factorization_count = len(zs)
    rep.lengths = eng.length_set(S)
    rep.checks["s_factorizations"] = zs == {f.short_word(), f.long_word()}
    rep.checks["s_lengths"] = rep.lengths == LengthSet((2, i + 2))
    rep.checks["gcd_criterion"] = gcd_criterion(S, factorizer=eng)
    return rep


# -- sums with additive length sets --------------------------------------------


def compose_sum(x: FinSet, y: FinSet, *, check: bool = True, budget=None, factorizer=None) -> FinSet:
    """``x + d*y`` with ``d = 2 max(x) + 1``.

    For relatively cancellative ``x`` and ``y`` the result is relatively
    cancellative and ``L(result) = L(x) + L(y)``.  ``check=False`` skips the
    (exhaustive) precondition test for inputs already known to qualify.
    """
    if check:
        eng = _engine(factorizer, budget)
        for which, v in (("x_relcanc", x), ("y_relcanc", y)):
            w = relcanc_witness(v, factorizer=eng)
            if w is not None:
                raise PreconditionFailed(
                    which, f"{v} is not relatively cancellative: {w.b}+{w.c} = {w.b}+{w.d}"
                )
    return sumset(x, dilate(y, 2 * x.max + 1))


def _generator_pieces(c: int, ns) -> list[FinSet]:
    if isinstance(c, bool) or not isinstance(c, int) or c < 0:
        raise ValueError(f"count of {{0,1}} summands must be a nonnegative integer, got {c!r}")
    ns = list(ns)
    for n in ns:
        if isinstance(n, bool) or not isinstance(n, int) or n < 3:
            raise ValueError(f"generator lengths must be integers >= 3, got {n!r}")
    return [ATOM01] * c + [build_family(n - 2).top for n in ns]


def from_generators(c: int, ns) -> FinSet:
    """Relatively cancellative set with length set ``{c} + sum_k {2, n_k}``."""
    pieces = _generator_pieces(c, ns)
    return reduce(lambda w, p: compose_sum(w, p, check=False), pieces, ZERO)


def generator_length_set(c: int, ns) -> LengthSet:
    total = LengthSet((c,))
    for n in ns:
        total = total + LengthSet((2, n))
    return total


@dataclass
class CertifiedLengthSet:
    """Length set of a generator sum, established piece by piece.

    Each family piece is factorized exhaustively; the pieces are relatively
    cancellative (pairwise-disjoint factorizations), so the separated-sum
    rule adds their length sets.
    """

    lengths: LengthSet
    pieces: list[FinSet]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def certify_generators(c: int, ns, *, budget=None, factorizer=None) -> CertifiedLengthSet:
    eng = _engine(factorizer, budget)
    pieces = _generator_pieces(c, ns)
    cert = CertifiedLengthSet(generator_length_set(c, ns), pieces)
    if c:
        cert.checks["atom {0,1}"] = eng.is_atom(ATOM01)
    for n in sorted(set(ns)):
        rep = verify_family(build_family(n - 2), factorizer=eng)
        cert.checks[f"family index {n - 2}"] = rep.passed
    return cert


def interval_three(k: int) -> FinSet:
    """A set whose length set is ``[k, k + 2]``."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    if k == 2:
        return INTERVAL_BASE
    if k == 3:
        return sumset(INTERVAL_BASE, FinSet._trusted((0, INTERVAL_SHIFT)))
    return from_generators(k - 4, [3, 3])


def _as_fraction(q) -> Fraction:
    try:
        return Fraction(q)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {q!r}") from None


def elasticity_recipe(q) -> tuple[int, list[int]]:
    """``(c, ns)`` such that ``from_generators(c, ns)`` has elasticity ``q``.

    ``q = 1`` gives ``(1, [])``, i.e. the atom ``{0,1}``.
    """
    q = _as_fraction(q)
    if q < 1:
        raise ValueError(f"elasticity must be at least 1, got {q}")
    if q == 1:
        return 1, []
    p, r = q.numerator, q.denominator
    m, n = (r, p) if r >= 2 else (2, 2 * p)
    return m - 2, [n - m + 2]


def for_elasticity(q) -> FinSet:
    """A set ``W`` with ``max(L(W)) / min(L(W)) == q``; its length set is ``{m, n}``."""
    c, ns = elasticity_recipe(q)
    if not ns:
        return ATOM01
    return from_generators(c, ns)


# -- distant copies x + {0, n} ----------------------------------------------------


@dataclass(frozen=True)
class DistantCopyStructure:
    """Triples ``(A, C, D)`` with ``A + C = A + D = x`` and ``C, D`` relatively prime.

    ``bases`` is the set of first coordinates.  Ordered triples are kept,
    so ``(A, C, D)`` and ``(A, D, C)`` both appear.
    """

    x: FinSet
    n: int
    triples: tuple[tuple[FinSet, FinSet, FinSet], ...]
    bases: tuple[FinSet, ...]

    def long_atom(self, c: FinSet, d: FinSet) -> FinSet:
        return FinSet(c.elements + tuple(self.n + v for v in d.elements))

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "n": self.n,
            "triples": [[t.to_json() for t in tr] for tr in self.triples],
            "bases": [b.to_json() for b in self.bases],
        }


def _check_distance(x: FinSet, n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n <= 2 * x.max:
        raise PreconditionFailed("n", f"need n > 2*max(x) = {2 * x.max}, got {n!r}")


def distant_copy_structure(x: FinSet, n: int, *, budget=None, factorizer=None) -> DistantCopyStructure:
    _check_distance(x, n)
    eng = _engine(factorizer, budget)
    triples = []
    for a in sorted_sets(eng.divisors(x)):
        cs = sorted_sets(eng.cofactors(x, a))
        for c in cs:
            for d in cs:
                if are_relatively_prime(c, d, factorizer=eng):
                    triples.append((a, c, d))
    bases = tuple(sorted_sets({t[0] for t in triples}))
    return DistantCopyStructure(x, n, tuple(triples), bases)


@dataclass
class DistantCopyReport:
    x: FinSet
    n: int
    checks: dict[str, bool] = field(default_factory=dict)
    direct_lengths: LengthSet | None = None
    structural_lengths: LengthSet | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "n": self.n,
            "passed": self.passed,
            "checks": dict(self.checks),
            "direct_lengths": None if self.direct_lengths is None else list(self.direct_lengths),
            "structural_lengths": None
            if self.structural_lengths is None
            else list(self.structural_lengths),
        }


def verify_distant_copy(x: FinSet, n: int, *, budget=None) -> DistantCopyReport:
    """Compare Z and L of ``x + {0, n}`` with the values predicted from divisors of ``x``.

    The direct side factorizes ``x + {0, n}`` with its own engine; the
    predicted side only factorizes divisors of ``x``.
    """
    _check_distance(x, n)
    direct = Factorizer(budget)
    side = Factorizer(budget)
    target = sumset(x, FinSet._trusted((0, n)))
    z_direct = direct.factorizations(target)
    structure = distant_copy_structure(x, n, factorizer=side)
    z_pred = set()
    for a, c, d in structure.triples:
        head = Factorization((structure.long_atom(c, d),))
        z_pred.update(head * z for z in side.factorizations(a))
    l_pred = LengthSet(())
    for a in structure.bases:
        l_pred = l_pred | side.length_set(a)
    rep = DistantCopyReport(x, n)
    rep.direct_lengths = direct.length_set(target)
    rep.structural_lengths = 1 + l_pred
    rep.checks["z_identity"] = z_direct == z_pred
    rep.checks["l_identity"] = rep.direct_lengths == rep.structural_lengths
    return rep
