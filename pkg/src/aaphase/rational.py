"""Exact arithmetic on rationals and finite rational sets.

Everything in this module is pure and exact.  Values are
`fractions.Fraction` instances; floating point enters only through
`rationalize`, which converts a real input to an exact rational once, at
the boundary, or fails loudly.  Downstream phase arithmetic never mixes
exact and approximate numbers.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Union

__all__ = [
    "IncommensurableError",
    "RationalSet",
    "are_commensurable",
    "format_rational",
    "lcm_rationals",
    "parse_rational",
    "rationalize",
]

RationalLike = Union[Fraction, int, str]


class IncommensurableError(ValueError):
    """A real input admits no rational approximation within tolerance."""


_RATIONAL_FORM = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical ``p/q`` text form (``q`` omitted when 1).

    The sign sits on the numerator only.  Decimal strings are rejected:
    reading "1.41421356..." as an exact power-of-ten fraction would
    silently manufacture commensurability, so real-number inputs must go
    through ``rationalize`` instead.
    """
    s = text.strip()
    if not _RATIONAL_FORM.match(s):
        raise ValueError(f"not a p/q rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical ``p/q`` text form, denominator omitted when 1.

    Round-trips bit-exactly through `parse_rational`.
    """
    return str(Fraction(x))


class RationalSet:
    """Finite ordered collection of nonzero rationals, deduplicated.

    Duplicates (by canonical reduced form) are dropped, keeping first
    occurrence order.  Zero elements are rejected: the set models inverse
    level spacings, and a zero spacing never enters by construction.
    """

    __slots__ = ("_elements",)

    def __init__(self, values: Iterable[RationalLike]):
        seen: dict[Fraction, None] = {}
        for v in values:
            f = Fraction(v)
            if f == 0:
                raise ValueError("RationalSet elements must be nonzero")
            seen.setdefault(f, None)
        self._elements: tuple[Fraction, ...] = tuple(seen)

    @property
    def elements(self) -> tuple[Fraction, ...]:
        return self._elements

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, item: object) -> bool:
        try:
            return Fraction(item) in self._elements  # type: ignore[arg-type]
        except (TypeError, ValueError):
            return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalSet):
            return NotImplemented
        return set(self._elements) == set(other._elements)

    def __hash__(self) -> int:
        return hash(frozenset(self._elements))

    def __repr__(self) -> str:
        inner = ", ".join(str(e) for e in self._elements)
        return f"RationalSet({{{inner}}})"


def lcm_rationals(values: Union[RationalSet, Iterable[RationalLike]]) -> Fraction:
    """Least common multiple of a set of nonzero rationals.

    Returns the smallest L > 0 such that L/|x| is a positive integer for
    every x in the set.  Signs are ignored: spacings come in +/- pairs and
    the recurrence condition is sign-insensitive.  For reduced |x| = p/q
    the result is lcm(all p) / gcd(all q).

    Raises ValueError("empty spacing set") on empty input; an empty
    spacing set signals a stationary state, which the caller must handle
    through the single-eigenvalue special case.
    """
    if not isinstance(values, RationalSet):
        values = RationalSet(values)
    if len(values) == 0:
        raise ValueError("empty spacing set")
    nums = [abs(f.numerator) for f in values]
    dens = [f.denominator for f in values]
    return Fraction(math.lcm(*nums), math.gcd(*dens))


def rationalize(x: Union[float, int, Fraction], max_denominator: int,
                tolerance: Union[float, Fraction]) -> Fraction:
    """Best rational approximation p/q of ``x`` with q <= max_denominator.

    Uses the continued-fraction best-approximation algorithm
    (``Fraction.limit_denominator``); succeeds only if |x - p/q| <=
    tolerance, measured exactly.  Exact inputs (int, Fraction) with small
    enough denominator pass through unchanged, so
    ``rationalize(p/q, q, 0) == p/q``.

    Raises IncommensurableError("incommensurable input") when no
    approximation is close enough; the caller must then treat the
    spectrum as non-cyclic or retry with a larger ``max_denominator``.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    tol = Fraction(tolerance)
    if tol < 0:
        raise ValueError("tolerance must be >= 0")
    exact = Fraction(x)  # binary floats convert exactly
    best = exact.limit_denominator(max_denominator)
    if abs(exact - best) > tol:
        raise IncommensurableError("incommensurable input")
    return best


def are_commensurable(values: Union[RationalSet, Iterable[RationalLike]]) -> bool:
    """True for every RationalSet: rationals are pairwise commensurable.

    Exists to document the contract explicitly: commensurability of real
    inputs is decided at the boundary, by `rationalize` succeeding or
    failing, and once values are exact rationals the test is trivially
    true.
    """
    if not isinstance(values, RationalSet):
        RationalSet(values)  # validate only
    return True
