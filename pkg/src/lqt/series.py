"""Discrete rank-one valuations given by a power series substitution.

A SeriesDVR describes the valuation on k(x, y) obtained by sending y to a
power series tau(x) with zero constant term and reading off the x-adic order
of the result.  The series is a CoefficientStream, an infinite-support
coefficient sequence with computable gaps, which keeps every question about
truncations exact.

Such a valuation also induces an infinite transform sequence: x always
pivots, and y is translated by the next series coefficient whenever that
coefficient is nonzero.  SeriesTrace exposes that sequence in the same shape
a ValuationProgram does, so the transform machinery can follow it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .charts import Directive
from .functions import RationalFunction
from .polynomials import Polynomial

DEFAULT_PRECISION = 16
MAX_PRECISION = 1024


class StreamError(ValueError):
    pass


class CoefficientStream:
    """Coefficients a_1, a_2, ... of a series sum(a_i x^i) with a_0 = 0."""

    def coefficient(self, i: int) -> Fraction:
        raise NotImplementedError

    def next_nonzero(self, after: int) -> int:
        """Smallest index > after with a nonzero coefficient."""
        raise NotImplementedError

    def truncate(self, cap: int) -> dict[int, Fraction]:
        """Sparse coefficients of the truncation to degree <= cap."""
        out: dict[int, Fraction] = {}
        i = self.next_nonzero(0)
        while i <= cap:
            out[i] = self.coefficient(i)
            i = self.next_nonzero(i)
        return out

    def describe(self) -> str:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefficientStream):
            return NotImplemented
        return self.describe() == other.describe()

    def __hash__(self) -> int:
        return hash(self.describe())

    def __repr__(self) -> str:
        return f"CoefficientStream({self.describe()})"


class GeometricGaps(CoefficientStream):
    """Coefficient 1 at the powers of b: x + x^b + x^(b^2) + ..."""

    def __init__(self, base: int):
        if base < 2:
            raise StreamError(f"geometric gap base must be >= 2, got {base}")
        self.base = base

    def coefficient(self, i: int) -> Fraction:
        e = 1
        while e < i:
            e *= self.base
        return Fraction(1) if e == i and i >= 1 else Fraction(0)

    def next_nonzero(self, after: int) -> int:
        e = 1
        while e <= after:
            e *= self.base
        return e

    def describe(self) -> str:
        return f"geometric({self.base})"


class FactorialGaps(CoefficientStream):
    """Coefficient 1 at the factorials: x + x^2 + x^6 + x^24 + ..."""

    def coefficient(self, i: int) -> Fraction:
        e, k = 1, 1
        while e < i:
            k += 1
            e *= k
        return Fraction(1) if e == i and i >= 1 else Fraction(0)

    def next_nonzero(self, after: int) -> int:
        e, k = 1, 1
        while e <= after:
            k += 1
            e *= k
        return e

    def describe(self) -> str:
        return "factorial"


class PeriodicCoefficients(CoefficientStream):
    """Coefficients cycling through a fixed tuple, starting at x^1."""

    def __init__(self, cycle: Iterable[Fraction]):
        cs = tuple(Fraction(c) for c in cycle)
        if not cs or all(c == 0 for c in cs):
            raise StreamError("periodic cycle needs a nonzero entry")
        self.cycle = cs

    def coefficient(self, i: int) -> Fraction:
        if i < 1:
            return Fraction(0)
        return self.cycle[(i - 1) % len(self.cycle)]

    def next_nonzero(self, after: int) -> int:
        i = max(after, 0) + 1
        while self.coefficient(i) == 0:
            i += 1
        return i

    def describe(self) -> str:
        return f"periodic({','.join(str(c) for c in self.cycle)})"


def parse_stream(text: str) -> CoefficientStream:
    """Parse a stream description: geometric(b), factorial, periodic(c,...)."""
    text = text.strip()
    if text == "factorial":
        return FactorialGaps()
    m_geo = _call_args(text, "geometric")
    if m_geo is not None:
        if len(m_geo) != 1:
            raise StreamError("geometric takes exactly one argument")
        try:
            base = int(m_geo[0])
        except ValueError:
            raise StreamError(f"bad geometric base {m_geo[0]!r}") from None
        return GeometricGaps(base)
    m_per = _call_args(text, "periodic")
    if m_per is not None:
        try:
            cycle = [Fraction(a) for a in m_per]
        except (ValueError, ZeroDivisionError):
            raise StreamError(f"bad periodic cycle in {text!r}") from None
        return PeriodicCoefficients(cycle)
    raise StreamError(f"unknown series form {text!r}")


def _call_args(text: str, name: str) -> list[str] | None:
    if not (text.startswith(name + "(") and text.endswith(")")):
        return None
    inner = text[len(name) + 1:-1].strip()
    if not inner:
        raise StreamError(f"{name} needs arguments")
    return [a.strip() for a in inner.split(",")]


class SeriesDVR:
    """The valuation on k(x, y) defined by y -> tau(x)."""

    __slots__ = ("bases", "stream")

    def __init__(self, bases: Iterable[str], stream: CoefficientStream):
        bs = tuple(bases)
        if len(bs) != 2:
            raise StreamError(
                f"a series valuation needs exactly two variables, got {bs}")
        self.bases = bs
        self.stream = stream

    @property
    def x(self) -> str:
        return self.bases[0]

    @property
    def y(self) -> str:
        return self.bases[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesDVR):
            return NotImplemented
        return self.bases == other.bases and self.stream == other.stream

    def __repr__(self) -> str:
        return f"SeriesDVR({self.y} -> {self.stream.describe()})"


def series_value(dvr: SeriesDVR, f: RationalFunction,
                 precision: int = DEFAULT_PRECISION,
                 max_precision: int = MAX_PRECISION) -> int | None:
    """The valuation of f, or None if undecided within the precision cap.

    Substituting a degree-N truncation of the series perturbs the result
    only above degree N, so an order found at or below N is exact.  The
    precision doubles until both numerator and denominator certify.
    """
    if f.is_zero():
        raise ValueError("the valuation of zero is undefined")
    if f.variables != dvr.bases:
        raise ValueError(f"element over {f.variables} does not live in the "
                         f"field over {dvr.bases}")
    cap = max(1, precision)
    while cap <= max_precision:
        num = _certified_order(f.numerator, dvr, cap)
        den = _certified_order(f.denominator, dvr, cap)
        if num is not None and den is not None:
            return num - den
        cap *= 2
    return None


def _certified_order(p: Polynomial, dvr: SeriesDVR, cap: int) -> int | None:
    coeffs = _evaluate_truncated(p, dvr, cap)
    if not coeffs:
        return None
    return min(coeffs)


def _evaluate_truncated(p: Polynomial, dvr: SeriesDVR,
                        cap: int) -> dict[int, Fraction]:
    """p(x, tau(x)) as sparse coefficients modulo x^(cap+1)."""
    tau = dvr.stream.truncate(cap)
    by_y_degree: dict[int, dict[int, Fraction]] = {}
    for (a, b), c in p.terms.items():
        if a <= cap:
            group = by_y_degree.setdefault(b, {})
            group[a] = group.get(a, Fraction(0)) + c
    out: dict[int, Fraction] = {}
    power: dict[int, Fraction] = {0: Fraction(1)}
    degree = 0
    for b in sorted(by_y_degree):
        while degree < b:
            power = _mul_truncated(power, tau, cap)
            degree += 1
            if not power:
                break
        for i, ci in by_y_degree[b].items():
            for j, cj in power.items():
                k = i + j
                if k <= cap:
                    out[k] = out.get(k, Fraction(0)) + ci * cj
    return {k: v for k, v in out.items() if v}


def _mul_truncated(a: dict[int, Fraction], b: dict[int, Fraction],
                   cap: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, ci in a.items():
        for j, cj in b.items():
            k = i + j
            if k <= cap:
                out[k] = out.get(k, Fraction(0)) + ci * cj
    return {k: v for k, v in out.items() if v}


class SeriesTrace:
    """The transform sequence that follows a series valuation.

    Every stage pivots on x; y is translated by coefficient a_n exactly when
    a_n is nonzero.  All stage multiplicities are 1, so the multiplicity sum
    diverges and the union of the stage rings is the valuation ring itself.
    """

    __slots__ = ("dvr",)

    def __init__(self, dvr: SeriesDVR):
        self.dvr = dvr

    @property
    def bases(self) -> tuple[str, ...]:
        return self.dvr.bases

    @property
    def dimension(self) -> int:
        return 2

    def directive_at(self, n: int) -> Directive:
        if n < 1:
            raise ValueError(f"step index {n} out of range")
        a = self.dvr.stream.coefficient(n)
        if a == 0:
            return Directive(0)
        return Directive(0, [(1, a)])

    def value_vector_at(self, n: int) -> tuple[Fraction, Fraction]:
        """Values of the stage-n coordinates: x keeps 1, y carries the gap
        to the next nonzero series coefficient."""
        if n < 0:
            raise ValueError(f"stage {n} out of range")
        return Fraction(1), Fraction(self.dvr.stream.next_nonzero(n) - n)

    def multiplicity_sequence(self, count: int) -> list[Fraction]:
        if count < 0:
            raise ValueError("count must be nonnegative")
        return [Fraction(1)] * count

    def __repr__(self) -> str:
        return f"SeriesTrace({self.dvr!r})"
