"""Config files: user-supplied examples in the sectioned text format.

A plain config is a program file ([vars], [values], optional [preperiod],
[period]).  Two more shapes extend it:

* a [series] section with a single ``<var> = <form>`` line makes the example
  a series valuation over two variables;
* a [pullback] section with a ``prime = [<vars>]`` line lifts a quotient
  valuation along that prime.  The quotient is either a ``series <var> =
  <form>`` line in the same section, or the program sections themselves,
  which are then read over the residue variables.
"""

from __future__ import annotations

import os
import re

from .programs import (ProgramFormatError, program_from_sections,
                       split_sections)
from .pullback import CoordinatePrime, lift_along
from .registry import Example, make_program_example, make_series_example
from .series import SeriesDVR, SeriesTrace, StreamError, parse_stream

_PROGRAM_SECTIONS = {"vars", "values", "preperiod", "period"}

_SERIES_LINE = re.compile(
    r"(?:series\s+)?([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.+)")
_PRIME_LINE = re.compile(r"prime\s*=\s*\[([^\]]*)\]\s*$")


class ConfigError(ValueError):
    pass


def load_config_text(text: str, name: str) -> Example:
    try:
        sections = split_sections(text)
    except ProgramFormatError as exc:
        raise ConfigError(str(exc)) from None
    unknown = set(sections) - _PROGRAM_SECTIONS - {"pullback", "series"}
    if unknown:
        raise ConfigError(f"unknown section [{sorted(unknown)[0]}]")
    if "pullback" in sections and "series" in sections:
        raise ConfigError("[pullback] and [series] cannot be combined; put "
                          "the series line inside [pullback]")
    if "vars" not in sections:
        raise ConfigError("missing section [vars]")
    names: list[str] = []
    for _, line in sections["vars"]:
        names.extend(line.replace(",", " ").split())
    ambient = tuple(names)

    try:
        if "pullback" in sections:
            return _pullback_example(sections, ambient, name)
        if "series" in sections:
            return _series_example(sections, ambient, name)
        return _program_example(sections, name)
    except (ProgramFormatError, StreamError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def load_config_file(path: str) -> Example:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    name = os.path.splitext(os.path.basename(path))[0]
    return load_config_text(text, name)


def _program_example(sections, name: str) -> Example:
    program = program_from_sections(sections)
    return Example(name, f"program from config {name}", "program", program,
                   program=program)


def _series_example(sections, ambient, name: str) -> Example:
    lines = sections["series"]
    if len(lines) != 1:
        raise ConfigError("[series] needs exactly one <var> = <form> line")
    for key in ("values", "preperiod", "period"):
        if key in sections:
            raise ConfigError(f"[{key}] does not belong in a series config")
    dvr = _parse_series(lines[0], ambient)
    return make_series_example(name, f"series valuation from config {name}",
                               dvr)


def _pullback_example(sections, ambient, name: str) -> Example:
    prime: CoordinatePrime | None = None
    series_line = None
    for lineno, line in sections["pullback"]:
        m = _PRIME_LINE.match(line)
        if m:
            if prime is not None:
                raise ConfigError(f"line {lineno}: prime given twice")
            gens = [g.strip() for g in m.group(1).split(",") if g.strip()]
            prime = CoordinatePrime(ambient, gens)
            continue
        if line.startswith("series"):
            if series_line is not None:
                raise ConfigError(f"line {lineno}: series given twice")
            series_line = (lineno, line)
            continue
        raise ConfigError(f"line {lineno}: expected prime = [...] or "
                          f"series <var> = <form>, got {line!r}")
    if prime is None:
        raise ConfigError("[pullback] needs a prime = [...] line")

    has_program = any(k in sections for k in ("values", "preperiod", "period"))
    if series_line is not None and has_program:
        raise ConfigError("give either a quotient series or quotient program "
                          "sections, not both")

    if series_line is not None:
        quotient = _parse_series(series_line, prime.residue_bases)
        lifted = lift_along(SeriesTrace(quotient), prime)
    elif has_program:
        quotient_sections = dict(sections)
        quotient_sections.pop("pullback")
        quotient_sections["vars"] = [(0, " ".join(prime.residue_bases))]
        quotient = program_from_sections(quotient_sections)
        lifted = lift_along(quotient, prime)
    else:
        raise ConfigError("a pullback config needs a quotient: a series line "
                          "or program sections over the residue variables")
    return Example(name, f"pullback from config {name}", "pullback", lifted,
                   prime=prime, quotient=quotient)


def _parse_series(line_info, bases) -> SeriesDVR:
    lineno, line = line_info
    m = _SERIES_LINE.match(line)
    if not m:
        raise ConfigError(f"line {lineno}: expected <var> = <form>, "
                          f"got {line!r}")
    var, form = m.group(1), m.group(2).strip()
    if len(bases) != 2:
        raise ConfigError(f"line {lineno}: a series valuation needs exactly "
                          f"two variables, got {', '.join(bases)}")
    if var != bases[1]:
        raise ConfigError(f"line {lineno}: the series variable must be the "
                          f"last one ({bases[1]}), got {var!r}")
    return SeriesDVR(bases, parse_stream(form))
