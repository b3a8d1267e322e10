"""Valuations pulled back through a coordinate prime.

A CoordinatePrime is the prime ideal generated by a subset of the ambient
variables.  Localizing there and passing to the residue field k(remaining
variables) turns a valuation on the smaller field into a ring on the big
one: the pullback consists of the local elements whose residue the smaller
valuation accepts.  Composing with the order along the prime itself gives a
rank-two value, a lexicographic pair (prime order, residue value).

A transform sequence of the residue field lifts along the prime: the prime
coordinates are never pivoted or translated, and they carry an infinite
value in every stage vector.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .analysis import DEFAULT_BUDGET, AnalysisSession
from .charts import Directive
from .functions import RationalFunction
from .polynomials import Polynomial
from .programs import (POS_INF, Infinite, ProgramError, ProgramStep,
                       ValuationProgram, multiplicity_sequence)
from .series import DEFAULT_PRECISION, SeriesDVR, SeriesTrace, series_value

QuotientValuation = Union[ValuationProgram, SeriesDVR]


class CoordinatePrime:
    """The prime ideal generated by a subset of the ambient variables."""

    __slots__ = ("bases", "generators", "indices", "residue_bases")

    def __init__(self, bases: Iterable[str], generators: Iterable[str]):
        bs = tuple(bases)
        gens = tuple(generators)
        if not gens:
            raise ValueError("a coordinate prime needs a generator")
        for g in gens:
            if g not in bs:
                raise ValueError(f"generator {g!r} is not a variable "
                                 f"(expected one of {', '.join(bs)})")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate prime generators")
        if len(gens) == len(bs):
            raise ValueError("the prime must be proper: some variable has "
                             "to survive into the residue field")
        self.bases = bs
        self.generators = gens
        self.indices = tuple(i for i, b in enumerate(bs) if b in gens)
        self.residue_bases = tuple(b for b in bs if b not in gens)

    def poly_order(self, p: Polynomial) -> int:
        """Largest k with p in the k-th power of the prime."""
        if p.is_zero():
            raise ValueError("the order of zero is undefined")
        return min(sum(e[i] for i in self.indices) for e in p.terms)

    def contains_poly(self, p: Polynomial) -> bool:
        return not p.is_zero() and self.poly_order(p) >= 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoordinatePrime):
            return NotImplemented
        return (self.bases, self.generators) == (other.bases,
                                                 other.generators)

    def __repr__(self) -> str:
        return f"CoordinatePrime(({', '.join(self.generators)}))"


def member_RP(f: RationalFunction, prime: CoordinatePrime) -> bool:
    """Whether f lies in the localization at the prime."""
    _check_field(f, prime)
    return not prime.contains_poly(f.denominator)


def in_prime(f: RationalFunction, prime: CoordinatePrime) -> bool:
    """Whether f lies in the extension of the prime to the localization."""
    _check_field(f, prime)
    if f.is_zero():
        return True
    return member_RP(f, prime) and prime.contains_poly(f.numerator)


def residue(f: RationalFunction, prime: CoordinatePrime) -> RationalFunction:
    """The image of f in the residue field at the prime."""
    _check_field(f, prime)
    if not member_RP(f, prime):
        raise ValueError(f"{f} is not in the local ring at "
                         f"({', '.join(prime.generators)}); it has no residue")
    kill = list(prime.generators)
    num = f.numerator.set_zero(kill).restrict(prime.residue_bases)
    den = f.denominator.set_zero(kill).restrict(prime.residue_bases)
    return RationalFunction(num, den)


def _check_field(f: RationalFunction, prime: CoordinatePrime) -> None:
    if f.variables != prime.bases:
        raise ValueError(f"element over {f.variables} does not live in the "
                         f"field over {prime.bases}")


# -- quotient values ---------------------------------------------------------

def quotient_value(quotient: QuotientValuation, r: RationalFunction,
                   budget: int = DEFAULT_BUDGET,
                   precision: int = DEFAULT_PRECISION,
                   session: AnalysisSession | None = None
                   ) -> Fraction | None:
    """Value of a residue-field element under the quotient valuation, or
    None when undecided within the budget or precision cap."""
    if isinstance(quotient, SeriesDVR):
        v = series_value(quotient, r, precision)
        return None if v is None else Fraction(v)
    if session is None:
        session = AnalysisSession(quotient)
    res = session.value_of(r, budget)
    if res is None:
        return None
    value, _ = res
    assert isinstance(value, Fraction)
    return value


class PullbackVerdict:
    """Membership in the pullback ring: In, NotIn or Undecided."""

    __slots__ = ("status", "detail")

    def __init__(self, status: str, detail: str = ""):
        self.status = status
        self.detail = detail

    @property
    def decided(self) -> bool:
        return self.status != "Undecided"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PullbackVerdict):
            return NotImplemented
        return self.status == other.status

    def __repr__(self) -> str:
        return f"PullbackVerdict({self.status})"


def member_pullback(f: RationalFunction, prime: CoordinatePrime,
                    quotient: QuotientValuation,
                    budget: int = DEFAULT_BUDGET,
                    precision: int = DEFAULT_PRECISION,
                    session: AnalysisSession | None = None
                    ) -> PullbackVerdict:
    """Whether f lies in the pullback of the quotient valuation ring.

    f must be local at the prime and its residue must have nonnegative
    quotient value; a zero residue is always accepted.
    """
    _check_field(f, prime)
    if not member_RP(f, prime):
        return PullbackVerdict(
            "NotIn", "the denominator lies in the prime, so the element is "
                     "not local there")
    r = residue(f, prime)
    if r.is_zero():
        return PullbackVerdict("In", "the residue is zero")
    v = quotient_value(quotient, r, budget, precision, session)
    if v is None:
        return PullbackVerdict(
            "Undecided", "the residue value did not resolve within budget")
    if v >= 0:
        return PullbackVerdict("In", f"the residue has value {v}")
    return PullbackVerdict("NotIn", f"the residue has value {v}")


# -- composite values --------------------------------------------------------

class CompositeValue:
    """Lexicographic value (prime order, residue value).

    residue_value is None when the quotient side stayed undecided; such a
    value is only partially known."""

    __slots__ = ("prime_order", "residue_value")

    def __init__(self, prime_order: int, residue_value: Fraction | None):
        self.prime_order = prime_order
        self.residue_value = residue_value

    @property
    def decided(self) -> bool:
        return self.residue_value is not None

    def sort_key(self) -> tuple[int, Fraction]:
        if self.residue_value is None:
            raise ValueError("cannot order a partially known value")
        return (self.prime_order, self.residue_value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompositeValue):
            return NotImplemented
        return (self.prime_order, self.residue_value) == (other.prime_order,
                                                          other.residue_value)

    def __lt__(self, other: "CompositeValue") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        r = "?" if self.residue_value is None else str(self.residue_value)
        return f"({self.prime_order}, {r})"


def composite_value(f: RationalFunction, prime: CoordinatePrime,
                    quotient: QuotientValuation,
                    budget: int = DEFAULT_BUDGET,
                    precision: int = DEFAULT_PRECISION,
                    session: AnalysisSession | None = None) -> CompositeValue:
    """The rank-two value of f: order along the prime, then the quotient
    value of what remains.  Needs a single-generator prime, since only there
    is the leading part along the prime a well-defined residue element."""
    _check_field(f, prime)
    if f.is_zero():
        raise ValueError("the value of zero is undefined")
    if len(prime.generators) != 1:
        raise ValueError("composite values need a single-generator prime")
    gen = prime.generators[0]
    k = prime.poly_order(f.numerator) - prime.poly_order(f.denominator)
    shift = RationalFunction.variable(gen, prime.bases) ** (-k)
    leading = residue(f * shift, prime)
    v = quotient_value(quotient, leading, budget, precision, session)
    return CompositeValue(k, v)


# -- induced and lifted sequences ---------------------------------------------

def induced_quotient_program(program: ValuationProgram,
                             prime: CoordinatePrime) -> ValuationProgram:
    """Project an ambient program to the residue field at the prime.

    Fails if any step pivots or translates a prime coordinate: such a
    sequence does not stay along the prime.
    """
    if program.bases != prime.bases:
        raise ProgramError(f"program over {program.bases} does not match the "
                           f"prime over {prime.bases}")
    inside = set(prime.indices)
    new_index = {j: i for i, j in enumerate(
        j for j in range(len(program.bases)) if j not in inside)}

    def project(steps, label):
        out = []
        for i, step in enumerate(steps, start=1):
            if step.pivot in inside:
                raise ProgramError(
                    f"{label} step {i} pivots {program.bases[step.pivot]}, "
                    f"which generates the prime")
            for j, _, _ in step.translations:
                if j in inside:
                    raise ProgramError(
                        f"{label} step {i} translates "
                        f"{program.bases[j]}, which generates the prime")
            out.append(ProgramStep(new_index[step.pivot],
                                   [(new_index[j], c, r)
                                    for j, c, r in step.translations]))
        return out

    return ValuationProgram(
        prime.residue_bases,
        [v for j, v in enumerate(program.initial_values) if j not in inside],
        project(program.preperiod, "preperiod"),
        project(program.period, "period"))


class LiftedTrace:
    """A residue-field transform sequence viewed in the ambient field.

    Prime coordinates are never pivoted or translated and carry an infinite
    value at every stage.  This is deliberately not a ValuationProgram: its
    stage vectors contain infinities, which programs never hold.
    """

    __slots__ = ("quotient", "prime", "bases", "_ambient_index")

    def __init__(self, quotient: ValuationProgram | SeriesTrace,
                 prime: CoordinatePrime):
        if tuple(quotient.bases) != prime.residue_bases:
            raise ValueError(
                f"quotient sequence over {tuple(quotient.bases)} does not "
                f"match the residue field over {prime.residue_bases}")
        self.quotient = quotient
        self.prime = prime
        self.bases = prime.bases
        self._ambient_index = tuple(prime.bases.index(b)
                                    for b in quotient.bases)

    @property
    def dimension(self) -> int:
        return len(self.bases)

    def directive_at(self, n: int) -> Directive:
        qd = self.quotient.directive_at(n)
        amb = self._ambient_index
        return Directive(amb[qd.pivot],
                         [(amb[j], c) for j, c in qd.translations])

    def value_vector_at(self, n: int) -> tuple[Fraction | Infinite, ...]:
        qv = self.quotient.value_vector_at(n)
        out: list[Fraction | Infinite] = [POS_INF] * len(self.bases)
        for i, v in zip(self._ambient_index, qv):
            out[i] = v
        return tuple(out)

    def multiplicity_sequence(self, count: int) -> list[Fraction]:
        """Finite stage multiplicities: the prime coordinates never achieve
        the minimum."""
        if isinstance(self.quotient, SeriesTrace):
            return self.quotient.multiplicity_sequence(count)
        return multiplicity_sequence(self.quotient, count)

    def __repr__(self) -> str:
        return f"LiftedTrace({self.quotient!r} along {self.prime!r})"


def lift_along(quotient: ValuationProgram | SeriesTrace,
               prime: CoordinatePrime) -> LiftedTrace:
    return LiftedTrace(quotient, prime)
