"""Multivariate integer Laurent polynomials and their specializations.

A Laurent polynomial here plays the role of an element of the group ring
Z[Z^nvars]: a finite map from integer exponent vectors to nonzero integer
coefficients.  Pairing the exponent vectors with an integral cohomology
class collapses it to a univariate integer polynomial; the only
normalization applied afterwards is a single shift making the constant
term nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .unipoly import IntPoly


class DimensionMismatch(ValueError):
    """Exponent-vector or class length does not match nvars."""


class MultiLaurentPoly:
    """Integer-coefficient Laurent polynomial in `nvars` variables.

    Terms are stored sorted lexicographically by exponent vector, with no
    zero coefficients, so iteration order and equality are canonical.
    Instances are immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | Iterable):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[tuple[int, ...], int] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionMismatch(
                    f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
            if not isinstance(coeff, int):
                raise TypeError("coefficients must be integers")
            merged[exps] = merged.get(exps, 0) + coeff
        self.nvars = nvars
        self.terms = tuple(sorted((e, c) for e, c in merged.items() if c != 0))

    # -- constructors / literal form ----------------------------------------
    @classmethod
    def from_literal(cls, nvars: int, literal: Sequence) -> "MultiLaurentPoly":
        """Build from the config literal form: [[coeff, [e1, ..., ek]], ...]."""
        return cls(nvars, [(tuple(e), int(c)) for c, e in literal])

    def to_literal(self) -> list:
        return [[c, list(e)] for e, c in self.terms]

    # -- structure -----------------------------------------------------------
    def term_count(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiLaurentPoly)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, self.terms))

    def __repr__(self) -> str:
        return f"MultiLaurentPoly(nvars={self.nvars}, terms={list(self.terms)})"

    # -- arithmetic ----------------------------------------------------------
    def __mul__(self, other: "MultiLaurentPoly") -> "MultiLaurentPoly":
        if self.nvars != other.nvars:
            raise DimensionMismatch("cannot multiply polynomials in different rings")
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, 0) + c1 * c2
        return MultiLaurentPoly(self.nvars, acc)

    def __add__(self, other: "MultiLaurentPoly") -> "MultiLaurentPoly":
        if self.nvars != other.nvars:
            raise DimensionMismatch("cannot add polynomials in different rings")
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return MultiLaurentPoly(self.nvars, acc)


@dataclass(frozen=True)
class CohomClass:
    """Integral cohomology class (a_1, ..., a_m, b) used for specialization."""

    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    def __len__(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def pair(self, exps: Sequence[int]) -> int:
        """The exponent pairing <alpha, g>: the dot product with g."""
        return sum(a * e for a, e in zip(self.coords, exps))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def term_count(theta: MultiLaurentPoly) -> int:
    """Number of nonzero terms (the N of the real-root bound 2N-2)."""
    return theta.term_count()


def multiply(a: MultiLaurentPoly, b: MultiLaurentPoly) -> MultiLaurentPoly:
    return a * b


def specialize(theta: MultiLaurentPoly, alpha: CohomClass) -> IntPoly:
    """Collapse theta along alpha: sum of a_g * t^<alpha, g>.

    Colliding exponents are combined by exact addition; the result is
    shifted by the minimal occurring exponent so it has a nonzero constant
    term and nonnegative exponents.  Returns zero only on total
    cancellation.
    """
    if len(alpha) != theta.nvars:
        raise DimensionMismatch(
            f"class has length {len(alpha)}, polynomial has {theta.nvars} variables")
    if alpha.is_zero():
        raise ValueError("cannot specialize at the zero class")
    acc: dict[int, int] = {}
    for exps, coeff in theta.terms:
        k = alpha.pair(exps)
        acc[k] = acc.get(k, 0) + coeff
    acc = {k: c for k, c in acc.items() if c != 0}
    if not acc:
        return IntPoly.zero()
    lo = min(acc)
    out = [0] * (max(acc) - lo + 1)
    for k, c in acc.items():
        out[k - lo] = c
    return IntPoly(out)
