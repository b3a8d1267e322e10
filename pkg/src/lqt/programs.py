"""Valuation programs: eventually periodic transform sequences with values.

A ValuationProgram drives an infinite sequence of transforms.  Each step
fixes a pivot and translation constants, exactly like a chart Directive, and
additionally assigns the new value of every translated coordinate as a
positive multiple of the pivot value.  Untranslated coordinates lose the
pivot value, the pivot keeps its own, so a positive value vector evolves
exactly at every stage.

The step list is a finite preperiod followed by a period repeated forever.
Programs are read from and written to a small text format::

    [vars]
    x y
    [values]
    x = 1
    y = 1
    [period]
    pivot=x translate y:1->1/2
    pivot=y

A ``translate y:c->r`` clause translates y by the constant c and assigns the
new coordinate the value r times the pivot value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator

from .charts import Directive


class ProgramError(ValueError):
    pass


class Infinite:
    """Signed infinite value, for coordinates inside a lifted prime.

    Supports just enough arithmetic and ordering to flow through value
    vectors: addition with finite values, scaling by nonzero integers, and
    comparisons.  Adding opposite infinities raises.
    """

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        object.__setattr__(self, "sign", sign)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Infinite is immutable")

    def __repr__(self) -> str:
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinite) and other.sign == self.sign

    def __hash__(self) -> int:
        return hash(("Infinite", self.sign))

    def __neg__(self) -> "Infinite":
        return NEG_INF if self.sign > 0 else POS_INF

    def __add__(self, other: object) -> "Infinite":
        if isinstance(other, Infinite) and other.sign != self.sign:
            raise ArithmeticError("cannot add opposite infinite values")
        if isinstance(other, (int, Fraction, Infinite)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other: object) -> "Infinite":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ArithmeticError("cannot scale an infinite value by 0")
            return self if other > 0 else -self
        return NotImplemented

    __rmul__ = __mul__

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Infinite):
            return self.sign < other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __le__(self, other: object) -> bool:
        return self < other or self == other

    def __gt__(self, other: object) -> bool:
        if isinstance(other, Infinite):
            return self.sign > other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign > 0
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        return self > other or self == other


POS_INF = Infinite(1)
NEG_INF = Infinite(-1)


class ProgramFormatError(ProgramError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ProgramConsistencyError(ProgramError):
    def __init__(self, stage: int, coordinate: str, message: str):
        super().__init__(f"stage {stage}, coordinate {coordinate}: {message}")
        self.stage = stage
        self.coordinate = coordinate


class ProgramStep:
    """A directive plus assigned relative values for translated coordinates.

    translations holds (index, constant, factor) triples: the coordinate is
    translated by `constant` and its new value is `factor` times the pivot
    value.
    """

    __slots__ = ("pivot", "translations", "directive")

    def __init__(self, pivot: int,
                 translations: Iterable[tuple[int, Fraction, Fraction]] = ()):
        trans = tuple(sorted((j, Fraction(c), Fraction(r))
                             for j, c, r in translations))
        for j, c, r in trans:
            if r <= 0:
                raise ProgramError(
                    f"assigned value factor for coordinate {j} must be "
                    f"positive, got {r}")
        directive = Directive(pivot, [(j, c) for j, c, r in trans])
        object.__setattr__(self, "pivot", pivot)
        object.__setattr__(self, "translations", trans)
        object.__setattr__(self, "directive", directive)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ProgramStep is immutable")

    def next_values(self, values: tuple[Fraction, ...], stage: int,
                    bases: tuple[str, ...]) -> tuple[Fraction, ...]:
        """Values after this step, given the values entering it.

        `stage` is the stage the step produces, used in error messages.
        """
        p = self.pivot
        vp = values[p]
        for j, vj in enumerate(values):
            if vj < vp:
                raise ProgramConsistencyError(
                    stage, bases[p],
                    f"pivot value {vp} is not minimal: {bases[j]} has value "
                    f"{vj}")
        factors = {j: r for j, _, r in self.translations}
        out = []
        for j, vj in enumerate(values):
            if j == p:
                out.append(vp)
            elif j in factors:
                if vj != vp:
                    raise ProgramConsistencyError(
                        stage, bases[j],
                        f"translated coordinate has value {vj}, which must "
                        f"equal the pivot value {vp}")
                out.append(factors[j] * vp)
            else:
                if vj == vp:
                    raise ProgramConsistencyError(
                        stage, bases[j],
                        f"coordinate shares the pivot value {vp} and must be "
                        f"translated")
                out.append(vj - vp)
        return tuple(out)

    def serialize(self, bases: tuple[str, ...]) -> str:
        parts = [f"pivot={bases[self.pivot]}"]
        for j, c, r in self.translations:
            parts.append(f"translate {bases[j]}:{c}->{r}")
        return " ".join(parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProgramStep):
            return NotImplemented
        return (self.pivot, self.translations) == (other.pivot,
                                                   other.translations)

    def __hash__(self) -> int:
        return hash((self.pivot, self.translations))

    def __repr__(self) -> str:
        return f"ProgramStep(pivot={self.pivot}, translations={self.translations})"


ValueVector = tuple[Fraction, ...]


class ValuationProgram:
    __slots__ = ("bases", "initial_values", "preperiod", "period")

    def __init__(self, bases: Iterable[str],
                 initial_values: Iterable[Fraction],
                 preperiod: Iterable[ProgramStep],
                 period: Iterable[ProgramStep]):
        bs = tuple(bases)
        vals = tuple(Fraction(v) for v in initial_values)
        pre = tuple(preperiod)
        per = tuple(period)
        if len(set(bs)) != len(bs):
            raise ProgramError("duplicate variable names")
        if not bs:
            raise ProgramError("a program needs at least one variable")
        if len(vals) != len(bs):
            raise ProgramError(f"{len(bs)} variables but {len(vals)} values")
        for b, v in zip(bs, vals):
            if v <= 0:
                raise ProgramError(f"initial value of {b} must be positive, "
                                   f"got {v}")
        if not per:
            raise ProgramError("period must contain at least one step")
        for step in pre + per:
            step.directive.check_dimension(len(bs))
        object.__setattr__(self, "bases", bs)
        object.__setattr__(self, "initial_values", vals)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ValuationProgram is immutable")

    @property
    def dimension(self) -> int:
        return len(self.bases)

    def step_at(self, n: int) -> ProgramStep:
        """The step taking stage n-1 to stage n (n >= 1)."""
        if n < 1:
            raise ValueError(f"step index {n} out of range")
        p = len(self.preperiod)
        if n <= p:
            return self.preperiod[n - 1]
        return self.period[(n - 1 - p) % len(self.period)]

    def directive_at(self, n: int) -> Directive:
        return self.step_at(n).directive

    def value_vectors(self) -> Iterator[ValueVector]:
        """Yield the value vector at stage 0, 1, 2, ... (never stops)."""
        values = self.initial_values
        yield values
        n = 1
        while True:
            values = self.step_at(n).next_values(values, n, self.bases)
            yield values
            n += 1

    def value_vector_at(self, n: int) -> ValueVector:
        if n < 0:
            raise ValueError(f"stage {n} out of range")
        for stage, values in enumerate(self.value_vectors()):
            if stage == n:
                return values
        raise AssertionError("unreachable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ValuationProgram):
            return NotImplemented
        return (self.bases == other.bases
                and self.initial_values == other.initial_values
                and self.preperiod == other.preperiod
                and self.period == other.period)

    def __repr__(self) -> str:
        return (f"ValuationProgram(bases={self.bases}, "
                f"preperiod={len(self.preperiod)} steps, "
                f"period={len(self.period)} steps)")


def multiplicity_sequence(program: ValuationProgram,
                          count: int) -> list[Fraction]:
    """The first `count` stage multiplicities: min coordinate value at each
    stage, starting from stage 0."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    out: list[Fraction] = []
    for values in program.value_vectors():
        if len(out) == count:
            break
        out.append(min(values))
    return out


class MultiplicityClass:
    """Outcome of classifying the multiplicity sum of a program.

    kind is "Divergent", "Convergent" or "Undecided"; limit is the exact sum
    when convergent, None otherwise.  nonscaling lists the coordinates whose
    values do not shrink with the deciding pass ratio.
    """

    __slots__ = ("kind", "limit", "detail", "nonscaling")

    def __init__(self, kind: str, limit: Fraction | None = None,
                 detail: str = "", nonscaling: tuple[int, ...] = ()):
        self.kind = kind
        self.limit = limit
        self.detail = detail
        self.nonscaling = nonscaling

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiplicityClass):
            return NotImplemented
        return (self.kind, self.limit) == (other.kind, other.limit)

    def __repr__(self) -> str:
        if self.kind == "Convergent":
            return f"MultiplicityClass(Convergent, limit={self.limit})"
        return f"MultiplicityClass({self.kind})"


def classify_multiplicity(program: ValuationProgram,
                          max_passes: int = 8) -> MultiplicityClass:
    """Decide whether the multiplicity sum diverges, and its value if not.

    A period pass maps the value vector linearly, so once consecutive
    pass-end vectors are exact scalar multiples the ratio repeats forever and
    the tail of the sum is geometric.  When only some coordinates scale, the
    rest evolve by subtracting the stage multiplicities; if those stay
    strictly above every future scaled value they never pivot, the scaled
    part runs autonomously, and the subtraction stream itself is geometric,
    which keeps any one-off scaling coincidence self-sustaining.  Either way
    one observed scaling pass decides the sum.
    """
    p = len(program.preperiod)
    length = len(program.period)
    stages = iter(program.value_vectors())

    head_sum = Fraction(0)
    for _ in range(p):
        head_sum += min(next(stages))
    prev = next(stages)

    for k in range(1, max_passes + 1):
        vectors = [next(stages) for _ in range(length)]
        end = vectors[-1]
        pass_sum = min(prev) + sum(min(v) for v in vectors[:-1])

        jmin = min(range(len(prev)), key=prev.__getitem__)
        ratio = end[jmin] / prev[jmin]
        scaled = [j for j in range(len(prev)) if end[j] == ratio * prev[j]]
        rest = [j for j in range(len(prev)) if end[j] != ratio * prev[j]]

        if not rest:
            if ratio >= 1:
                return MultiplicityClass(
                    "Divergent", detail=f"pass ratio {ratio} from pass {k}")
            return MultiplicityClass(
                "Convergent", head_sum + pass_sum / (1 - ratio),
                detail=f"pass ratio {ratio} from pass {k}")

        if ratio < 1 and _rest_stays_clear(program, scaled, rest, ratio,
                                           pass_sum, prev, vectors):
            return MultiplicityClass(
                "Convergent", head_sum + pass_sum / (1 - ratio),
                detail=f"pass ratio {ratio} on {len(scaled)} coordinates "
                       f"from pass {k}",
                nonscaling=tuple(rest))

        if all(b >= a for a, b in zip(prev, end)):
            return MultiplicityClass(
                "Divergent", detail=f"values do not decrease across pass {k}")

        head_sum += pass_sum
        prev = end
    return MultiplicityClass(
        "Undecided", detail=f"no stable pass ratio within {max_passes} passes")


def _rest_stays_clear(program: ValuationProgram, scaled: list[int],
                      rest: list[int], ratio: Fraction, pass_sum: Fraction,
                      prev: ValueVector, vectors: list[ValueVector]) -> bool:
    """Whether the non-scaling coordinates provably never pivot again.

    They must not be pivoted or translated by the period itself, and their
    limiting values (current minus all future subtractions, a geometric
    series) must stay strictly above every future value of the scaling part.
    """
    for step in program.period:
        if step.pivot in rest:
            return False
        if any(j in rest for j, _, _ in step.translations):
            return False
    future_subtraction = pass_sum * ratio / (1 - ratio)
    floor = min(vectors[-1][j] for j in rest) - future_subtraction
    peak = max(v[j] for v in [prev, *vectors[:-1]] for j in scaled)
    return floor > ratio * peak


# -- text format -------------------------------------------------------------

_SECTIONS = ("vars", "values", "preperiod", "period")
_TRANSLATE = re.compile(
    r"translate\s+([A-Za-z_][A-Za-z_0-9]*)\s*:\s*(-?\d+(?:/\d+)?)\s*->\s*"
    r"(-?\d+(?:/\d+)?)")


def split_sections(text: str) -> dict[str, list[tuple[int, str]]]:
    """Split `[name]`-sectioned text into numbered, comment-stripped lines."""
    sections: dict[str, list[tuple[int, str]]] = {}
    current: list[tuple[int, str]] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name in sections:
                raise ProgramFormatError(f"duplicate section [{name}]", lineno)
            current = sections.setdefault(name, [])
            continue
        if current is None:
            raise ProgramFormatError(
                f"content before the first section: {line!r}", lineno)
        current.append((lineno, line))
    return sections


def _parse_fraction(text: str, lineno: int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ProgramFormatError(f"bad rational {text!r}", lineno) from None


def parse_step(line: str, bases: tuple[str, ...],
               lineno: int | None = None) -> ProgramStep:
    m = re.match(r"pivot\s*=\s*([A-Za-z_][A-Za-z_0-9]*)\s*", line)
    if not m:
        raise ProgramFormatError(f"expected pivot=<var>, got {line!r}", lineno)
    pivot_name = m.group(1)
    if pivot_name not in bases:
        raise ProgramFormatError(f"unknown pivot variable {pivot_name!r}",
                                 lineno)
    rest = line[m.end():]
    translations = []
    pos = 0
    while pos < len(rest):
        t = _TRANSLATE.match(rest, pos)
        if not t:
            raise ProgramFormatError(
                f"expected translate <var>:<c>-><value>, got {rest[pos:]!r}",
                lineno)
        name = t.group(1)
        if name not in bases:
            raise ProgramFormatError(f"unknown variable {name!r}", lineno)
        c = _parse_fraction(t.group(2), lineno or 0)
        r = _parse_fraction(t.group(3), lineno or 0)
        translations.append((bases.index(name), c, r))
        pos = t.end()
        while pos < len(rest) and rest[pos].isspace():
            pos += 1
    try:
        return ProgramStep(bases.index(pivot_name), translations)
    except ProgramError as exc:
        raise ProgramFormatError(str(exc), lineno) from None


def program_from_sections(
        sections: dict[str, list[tuple[int, str]]]) -> ValuationProgram:
    for name in ("vars", "values", "period"):
        if name not in sections:
            raise ProgramFormatError(f"missing section [{name}]")
    var_lines = sections["vars"]
    names: list[str] = []
    for lineno, line in var_lines:
        names.extend(line.replace(",", " ").split())
    bases = tuple(names)

    values: dict[str, Fraction] = {}
    for lineno, line in sections["values"]:
        if "=" not in line:
            raise ProgramFormatError(f"expected <var> = <value>, got {line!r}",
                                     lineno)
        name, _, val = line.partition("=")
        name = name.strip()
        if name not in bases:
            raise ProgramFormatError(f"unknown variable {name!r}", lineno)
        if name in values:
            raise ProgramFormatError(f"value of {name} given twice", lineno)
        values[name] = _parse_fraction(val.strip(), lineno)
    missing = [b for b in bases if b not in values]
    if missing:
        raise ProgramFormatError(f"no value given for {', '.join(missing)}")

    def steps_of(section: str) -> list[ProgramStep]:
        return [parse_step(line, bases, lineno)
                for lineno, line in sections.get(section, [])]

    try:
        return ValuationProgram(bases, [values[b] for b in bases],
                                steps_of("preperiod"), steps_of("period"))
    except ProgramError as exc:
        if isinstance(exc, ProgramFormatError):
            raise
        raise ProgramFormatError(str(exc)) from None


def parse_program(text: str) -> ValuationProgram:
    sections = split_sections(text)
    unknown = set(sections) - set(_SECTIONS)
    if unknown:
        raise ProgramFormatError(
            f"unknown section [{sorted(unknown)[0]}] in a program file")
    return program_from_sections(sections)


def serialize_program(program: ValuationProgram) -> str:
    lines = ["[vars]", " ".join(program.bases), "", "[values]"]
    for b, v in zip(program.bases, program.initial_values):
        lines.append(f"{b} = {v}")
    if program.preperiod:
        lines.append("")
        lines.append("[preperiod]")
        for step in program.preperiod:
            lines.append(step.serialize(program.bases))
    lines.append("")
    lines.append("[period]")
    for step in program.period:
        lines.append(step.serialize(program.bases))
    lines.append("")
    return "\n".join(lines)
