"""Factorizations and length sets in the monoid of finite sets of
nonnegative integers containing 0, under sumset addition."""

from .cancellativity import (
    RelCancWitness,
    SeparatedSumReport,
    are_relatively_prime,
    gcd_criterion,
    is_relatively_cancellative,
    relcanc_witness,
    verify_separated_sum,
    word_product,
)
from .constructors import (
    ATOM01,
    INTERVAL_BASE,
    INTERVAL_SHIFT,
    DistantCopyReport,
    DistantCopyStructure,
    FamilyReport,
    InvalidSequence,
    PreconditionFailed,
    TwoLengthFamily,
    build_family,
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
from .factorizer import (
    BudgetExceeded,
    Factorization,
    Factorizer,
    LengthSet,
    atom_divisors,
    cofactors,
    divisors,
    elasticity_of_set,
    fact_gcd,
    factorizations,
    is_atom,
    length_set,
)
from .finset import (
    MAX_ELEMENT,
    ZERO,
    ElementOverflow,
    EmptySet,
    FinSet,
    FinSetError,
    InvalidElement,
    MissingZero,
    Rational,
    dilate,
    parse,
    render,
    set_gcd,
    sumset,
)

__version__ = "0.1.0"
