"""Shared fixtures: builtin example sessions and element parsing helpers."""

from __future__ import annotations

import pytest

from lqt import AnalysisSession, RationalFunction, get_example, parse_expr


@pytest.fixture(scope="session")
def two_var():
    """Analysis session for the two-variable builtin program."""
    return get_example("ex3.7-2d").session


@pytest.fixture(scope="session")
def three_var():
    """Analysis session for the three-variable builtin program."""
    return get_example("ex3.7-3d").session


@pytest.fixture(scope="session")
def curve_dvr():
    """Analysis session for the factorial-gap series example."""
    return get_example("dvr-curve").session


@pytest.fixture(scope="session")
def nonarch():
    """Analysis session for the lifted x-adic pullback example."""
    return get_example("nonarch2d").session


def el(text: str, session: AnalysisSession) -> RationalFunction:
    """Parse an element over the session's base variables."""
    return parse_expr(text, session.source.bases)


def el_on(text: str, bases: tuple[str, ...]) -> RationalFunction:
    """Parse an element over explicit base variables."""
    return parse_expr(text, bases)
