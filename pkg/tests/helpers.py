"""Shared test helpers: sympy conversion and seeded random generators."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy as sp

from lqt import Polynomial, RationalFunction

XY = ("x", "y")
XYZ = ("x", "y", "z")


def to_sympy(p: Polynomial) -> sp.Expr:
    syms = sp.symbols(p.variables)
    total = sp.Integer(0)
    for exps, coeff in p.terms.items():
        term = sp.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(syms, exps):
            term *= s**e
        total += term
    return sp.expand(total)


def to_sympy_rf(f: RationalFunction) -> sp.Expr:
    return sp.cancel(to_sympy(f.numerator) / to_sympy(f.denominator))


def random_poly(rng: random.Random, variables: tuple[str, ...],
                max_terms: int = 4, max_exp: int = 3) -> Polynomial:
    """A nonzero polynomial with small exponents and coefficients."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in variables)
        terms[exps] = Fraction(rng.choice([-4, -3, -2, -1, 1, 2, 3, 4]),
                               rng.randint(1, 3))
    return Polynomial(variables, terms)


def random_rf(rng: random.Random, variables: tuple[str, ...] = XY,
              max_terms: int = 4, max_exp: int = 3) -> RationalFunction:
    return RationalFunction(random_poly(rng, variables, max_terms, max_exp),
                            random_poly(rng, variables, max_terms, max_exp))
