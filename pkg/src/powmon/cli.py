"""Command-line interface: ``powmon <subcommand> ...``.

Exit codes: 0 for success or a true predicate, 1 for a false predicate or a
failed verification item, 2 for errors such as a bad argument or an
exhausted search budget.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .cancellativity import (
    are_relatively_prime,
    gcd_criterion,
    relcanc_witness,
)
from .checks import run_reference_suite
from .constructors import (
    InvalidSequence,
    PreconditionFailed,
    build_family,
    certify_generators,
    compose_sum,
    distant_copy_structure,
    elasticity_recipe,
    from_generators,
    generator_length_set,
    interval_three,
    verify_distant_copy,
    verify_family,
)
from .factorizer import BudgetExceeded, Factorizer, LengthSet, sorted_sets, sorted_words
from .finset import FinSet, FinSetError, parse, sumset

EXACT_DENSITY_CAP = 20


class CliError(Exception):
    """Reported on stderr with exit code 2."""


def _finset_arg(text: str) -> FinSet:
    try:
        return parse(text)
    except FinSetError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a valid set: {exc}") from None


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be nonnegative")
    return v


def _positive_int(text: str) -> int:
    v = _nonneg_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


class Output:
    """Collects text lines or a JSON payload and prints once."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.payload: dict = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def flush(self, stream) -> None:
        if self.as_json:
            stream.write(json.dumps(self.payload, indent=2) + "\n")
        else:
            for s in self.lines:
                stream.write(s + "\n")


# -- subcommands -----------------------------------------------------------
# Each handler fills ``out`` and returns the exit code.


def cmd_sumset(args, f, out):
    total = FinSet((0,))
    for a in args.sets:
        total = sumset(total, a)
    out.payload = total.to_json()
    out.line(str(total))
    return 0


def cmd_atom(args, f, out):
    ok = f.is_atom(args.set)
    out.payload = {"set": args.set.to_json(), "atom": ok}
    out.line("true" if ok else "false")
    return 0 if ok else 1


def cmd_divisors(args, f, out):
    ds = sorted_sets(f.divisors(args.set))
    out.payload = {"set": args.set.to_json(), "divisors": [d.to_json() for d in ds]}
    for d in ds:
        out.line(str(d))
    return 0


def cmd_factorize(args, f, out):
    words = sorted_words(f.factorizations(args.set))
    lengths = f.length_set(args.set)
    out.payload = {
        "set": args.set.to_json(),
        "factorizations": [w.to_json() for w in words],
        "lengths": lengths.to_json()["lengths"],
    }
    for w in words:
        out.line(str(w))
    out.line(f"lengths: {lengths}")
    return 0


def cmd_lengthset(args, f, out):
    lengths = f.length_set(args.set)
    out.payload = lengths.to_json()
    out.line(str(lengths))
    return 0


def cmd_elasticity(args, f, out):
    rho = f.elasticity(args.set)
    out.payload = {"elasticity": str(rho), "numerator": rho.numerator, "denominator": rho.denominator}
    out.line(str(rho))
    return 0


def cmd_relcanc(args, f, out):
    w = relcanc_witness(args.set, factorizer=f)
    out.payload = {"set": args.set.to_json(), "relcanc": w is None, "witness": w and w.to_json()}
    if w is None:
        out.line("true")
        return 0
    out.line("false")
    out.line(f"witness: {w.b}+{w.c} = {w.b}+{w.d}")
    return 1


def cmd_relprime(args, f, out):
    ok = are_relatively_prime(args.b, args.c, factorizer=f)
    out.payload = {"relprime": ok}
    out.line("true" if ok else "false")
    return 0 if ok else 1


def cmd_gcdcrit(args, f, out):
    ok = gcd_criterion(args.set, factorizer=f)
    out.payload = {"set": args.set.to_json(), "gcd_criterion": ok}
    out.line("true" if ok else "false")
    return 0 if ok else 1


def cmd_family(args, f, out):
    try:
        fam = build_family(args.i, args.n)
    except InvalidSequence as exc:
        raise CliError(f"argument --n: {exc}") from None
    out.payload = fam.to_json()
    for j in range(fam.i + 1):
        n = f"  n={fam.n[j]}" if j < fam.i else ""
        out.line(f"j={j}{n}")
        for name, seq in zip("ABCDS", (fam.a, fam.b, fam.c, fam.d, fam.s)):
            out.line(f"  {name}={seq[j]}")
    if not args.verify:
        return 0
    rep = verify_family(fam, factorizer=f)
    out.payload["report"] = rep.to_json()
    for note in rep.notes:
        out.line(f"note: {note}")
    for name, ok in rep.checks.items():
        out.line(f"{'PASS' if ok else 'FAIL'} {name}")
    if rep.lengths is not None:
        out.line(f"lengths: {rep.lengths}")
    return 0 if rep.passed else 1


def cmd_compose(args, f, out):
    try:
        w = compose_sum(args.x, args.y, factorizer=f)
    except PreconditionFailed as exc:
        arg = "X" if exc.which == "x_relcanc" else "Y"
        raise CliError(f"argument {arg}: {exc}") from None
    out.payload = {"set": w.to_json()}
    out.line(str(w))
    if args.verify:
        got = f.length_set(w)
        want = f.length_set(args.x) + f.length_set(args.y)
        out.payload["lengths"] = list(got)
        out.payload["verified"] = got == want
        out.line(f"lengths: {got}" + (" (verified)" if got == want else f" (expected {want})"))
        return 0 if got == want else 1
    return 0


def _generators_report(c, ns, f, out, verify):
    w = from_generators(c, ns)
    want = generator_length_set(c, ns)
    out.payload = {"set": w.to_json(), "lengths": list(want)}
    out.line(str(w))
    if not verify:
        out.line(f"lengths: {want}")
        return 0
    got = f.length_set(w)
    out.payload["verified"] = got == want
    out.line(f"lengths: {got}" + (" (verified)" if got == want else f" (expected {want})"))
    return 0 if got == want else 1


def cmd_generators(args, f, out):
    for n in args.ns:
        if n < 3:
            raise CliError(f"argument N: generator lengths must be >= 3, got {n}")
    return _generators_report(args.c, args.ns, f, out, args.verify)


def cmd_interval(args, f, out):
    if args.k < 2:
        raise CliError(f"argument K: must be >= 2, got {args.k}")
    w = interval_three(args.k)
    want = LengthSet((args.k, args.k + 1, args.k + 2))
    out.payload = {"set": w.to_json(), "lengths": list(want)}
    out.line(str(w))
    if not args.verify:
        out.line(f"lengths: {want}")
        return 0
    got = f.length_set(w)
    out.payload["verified"] = got == want
    out.line(f"lengths: {got}" + (" (verified)" if got == want else f" (expected {want})"))
    return 0 if got == want else 1


def cmd_construct_elasticity(args, f, out):
    q = args.q
    if q < 1:
        raise CliError(f"argument Q: elasticity must be at least 1, got {q}")
    c, ns = elasticity_recipe(q)
    w = from_generators(c, ns)
    out.payload = {"set": w.to_json(), "elasticity": str(q), "generators": {"c": c, "ns": ns}}
    out.line(str(w))
    if not args.verify:
        out.line(f"rho = {q}")
        return 0
    try:
        rho = f.elasticity(w)
        how = "verified"
    except BudgetExceeded:
        # Too big to factorize directly: certify each piece instead.
        cert = certify_generators(c, ns, factorizer=Factorizer(f.budget))
        if not cert.passed:
            raise CliError("certification of the generator pieces failed") from None
        rho, how = cert.lengths.elasticity(), "certified"
    out.payload["verified"] = rho == q
    out.payload["method"] = how
    if rho != q:
        out.line(f"rho = {rho} (expected {q})")
        return 1
    out.line(f"rho = {rho} ({how})")
    return 0


def cmd_distant_copy(args, f, out):
    try:
        st = distant_copy_structure(args.x, args.n, factorizer=f)
    except PreconditionFailed as exc:
        raise CliError(f"argument N: {exc}") from None
    rep = verify_distant_copy(args.x, args.n, budget=f.budget)
    out.payload = {"structure": st.to_json(), "report": rep.to_json()}
    out.line("bases: " + " ".join(str(b) for b in st.bases))
    out.line(f"triples: {len(st.triples)}")
    for name, ok in rep.checks.items():
        out.line(f"{'PASS' if ok else 'FAIL'} {name}")
    out.line(f"lengths: {rep.direct_lengths}")
    return 0 if rep.passed else 1


def cmd_reference_suite(args, f, out):
    results = run_reference_suite(include_slow=args.include_slow)
    out.payload = {
        "passed": all(r.passed for r in results),
        "items": [r.to_json() for r in results],
    }
    for r in results:
        out.line(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    good = sum(r.passed for r in results)
    out.line(f"{good}/{len(results)} items passed")
    return 0 if good == len(results) else 1


def cmd_density(args, f, out):
    m = args.max_element
    if args.samples is None:
        if m > EXACT_DENSITY_CAP:
            raise CliError(
                f"argument max_element: exact count needs max_element <= {EXACT_DENSITY_CAP}, "
                f"got {m}; pass --samples"
            )
        masks = range(1, 1 << (m + 1), 2)
    else:
        rng = random.Random(args.seed)
        masks = [(rng.getrandbits(m) << 1) | 1 for _ in range(args.samples)] if m else [1] * args.samples
    total = atoms = 0
    for mask in masks:
        total += 1
        atoms += f.is_atom(FinSet.from_mask(mask))
    ratio = Fraction(atoms, total)
    out.payload = {
        "max_element": m,
        "mode": "exact" if args.samples is None else "sampled",
        "atoms": atoms,
        "sets": total,
        "ratio": str(ratio),
        "ratio_float": float(ratio),
    }
    if args.samples is not None:
        out.payload["seed"] = args.seed
    out.line(f"atoms: {atoms}")
    out.line(f"sets: {total}")
    out.line(f"ratio: {ratio} ({float(ratio):.6f})")
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument(
        "--budget", type=_positive_int, default=argparse.SUPPRESS, metavar="N",
        help="search node budget (default: $POWMON_BUDGET or 10^8)",
    )

    p = argparse.ArgumentParser(prog="powmon", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("sumset", cmd_sumset, "sumset of one or more sets")
    sp.add_argument("sets", nargs="+", type=_finset_arg, metavar="SET")

    for name, fn, help_ in (
        ("atom", cmd_atom, "is SET an atom"),
        ("divisors", cmd_divisors, "all divisors of SET"),
        ("factorize", cmd_factorize, "all factorizations of SET"),
        ("lengthset", cmd_lengthset, "length set of SET"),
        ("elasticity", cmd_elasticity, "elasticity max(L)/min(L) of SET"),
        ("relcanc", cmd_relcanc, "is SET relatively cancellative"),
        ("gcdcrit", cmd_gcdcrit, "do distinct factorizations of SET share no atom"),
    ):
        add(name, fn, help_).add_argument("set", type=_finset_arg, metavar="SET")

    sp = add("relprime", cmd_relprime, "are B and C relatively prime")
    sp.add_argument("b", type=_finset_arg, metavar="B")
    sp.add_argument("c", type=_finset_arg, metavar="C")

    sp = add("family", cmd_family, "two-length family up to index I")
    sp.add_argument("i", type=_nonneg_int, metavar="I")
    sp.add_argument("--n", nargs="+", type=_nonneg_int, help="explicit n-sequence (I values)")
    sp.add_argument("--verify", action="store_true", help="factorize and check the top index")

    sp = add("compose", cmd_compose, "X + (2max(X)+1)*Y for relatively cancellative X, Y")
    sp.add_argument("x", type=_finset_arg, metavar="X")
    sp.add_argument("y", type=_finset_arg, metavar="Y")
    sp.add_argument("--verify", action="store_true")

    sp = add("generators", cmd_generators, "C copies of {0,1} plus one family top per N")
    sp.add_argument("c", type=_nonneg_int, metavar="C")
    sp.add_argument("ns", nargs="*", type=_nonneg_int, metavar="N")
    sp.add_argument("--verify", action="store_true")

    sp = add("interval", cmd_interval, "a set with length set [K, K+2]")
    sp.add_argument("k", type=_nonneg_int, metavar="K")
    sp.add_argument("--verify", action="store_true")

    sp = add("construct-elasticity", cmd_construct_elasticity, "a set with elasticity Q")
    sp.add_argument("q", type=_rational_arg, metavar="Q")
    sp.add_argument("--verify", action="store_true")

    sp = add("prop36", cmd_distant_copy, "structure of X + {0,N} from the divisors of X")
    sp.add_argument("x", type=_finset_arg, metavar="X")
    sp.add_argument("n", type=_nonneg_int, metavar="N")

    sp = add("verify-paper", cmd_reference_suite, "run the reference fixture suite")
    sp.add_argument("--include-slow", action="store_true")

    sp = add("density", cmd_density, "proportion of atoms among subsets of [0, MAX]")
    sp.add_argument("max_element", type=_nonneg_int, metavar="MAX")
    sp.add_argument("--samples", type=_positive_int)
    sp.add_argument("--seed", type=int, default=0)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code or 0)
    as_json = getattr(args, "json", False)
    out = Output(as_json)
    try:
        f = Factorizer(getattr(args, "budget", None))
        code = args.func(args, f, out)
    except (CliError, PreconditionFailed, InvalidSequence, FinSetError, BudgetExceeded, ValueError) as exc:
        stderr.write(f"powmon {args.command}: error: {exc}\n")
        return 2
    out.flush(stdout)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
