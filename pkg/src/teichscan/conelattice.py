"""Open polyhedral cones and primitive lattice-point enumeration.

Cones are given by strict integer inequalities <r, v> > 0 plus a witness
point proving nonemptiness.  Enumeration slices the cone by one designated
height coordinate; boundedness of every slice is verified exactly (via
Fourier-Motzkin elimination on the recession cone) before any points are
produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence


class UnboundedSliceError(ValueError):
    """A height slice of the cone is unbounded; enumeration is impossible."""


@dataclass(frozen=True)
class ConeSpec:
    """Open convex polyhedral cone {v : <r, v> > 0 for each row r}.

    `norm`, when present, is an integer linear functional playing the role
    of the Thurston norm on the cone; it must be positive at the witness.
    """

    dim: int
    ineqs: tuple[tuple[int, ...], ...]
    witness: tuple[int, ...]
    norm: tuple[int, ...] | None = None

    def __init__(self, dim: int, ineqs: Iterable[Sequence[int]],
                 witness: Sequence[int], norm: Sequence[int] | None = None):
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "ineqs",
                           tuple(tuple(int(x) for x in row) for row in ineqs))
        object.__setattr__(self, "witness", tuple(int(x) for x in witness))
        object.__setattr__(self, "norm",
                           tuple(int(x) for x in norm) if norm is not None else None)
        if any(len(row) != self.dim for row in self.ineqs):
            raise ValueError("inequality row length does not match dimension")
        if len(self.witness) != self.dim:
            raise ValueError("witness length does not match dimension")
        if not contains(self, self.witness):
            raise ValueError("witness point does not satisfy the strict inequalities")
        if self.norm is not None:
            if len(self.norm) != self.dim:
                raise ValueError("norm row length does not match dimension")
            if _dot(self.norm, self.witness) <= 0:
                raise ValueError("norm functional is not positive at the witness")


def _dot(r: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(r, v))


def contains(cone: ConeSpec, v: Sequence[int]) -> bool:
    """True iff every inequality holds strictly at v."""
    if len(v) != cone.dim:
        raise ValueError(f"point has length {len(v)}, cone has dimension {cone.dim}")
    return all(_dot(r, v) > 0 for r in cone.ineqs)


def is_primitive(v: Sequence[int]) -> bool:
    """True iff the gcd of the absolute coordinates is 1."""
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g == 0:
        raise ValueError("the zero vector is neither primitive nor imprimitive")
    return g == 1


def subcone_margin(cone: ConeSpec, v: Sequence[int]) -> Fraction:
    """min_r <r, v> / ||v||_1: a scale-invariant distance proxy to the boundary."""
    if not contains(cone, v):
        raise ValueError(f"point {tuple(v)} is not in the open cone")
    l1 = sum(abs(x) for x in v)
    return min(Fraction(_dot(r, v), l1) for r in cone.ineqs)


def thurston_norm(cone: ConeSpec, v: Sequence[int]) -> int | None:
    """<norm, v> when a norm functional is configured, else None."""
    if cone.norm is None:
        return None
    if not contains(cone, v):
        raise ValueError(f"point {tuple(v)} is not in the open cone")
    return _dot(cone.norm, v)


# ---------------------------------------------------------------------------
# exact linear feasibility (Fourier-Motzkin)
# ---------------------------------------------------------------------------

def _fm_feasible(rows: list[tuple[tuple[Fraction, ...], Fraction]]) -> bool:
    """Feasibility of {x : <a, x> >= c for each (a, c)} over the rationals."""
    if not rows:
        return True
    nvar = len(rows[0][0])
    for k in range(nvar - 1, -1, -1):
        pos, neg, keep = [], [], []
        for a, c in rows:
            if a[k] > 0:
                pos.append((a, c))
            elif a[k] < 0:
                neg.append((a, c))
            else:
                keep.append((a[:k] + a[k + 1:], c))
        for ap, cp in pos:
            for an, cn in neg:
                lp, ln = ap[k], -an[k]
                a = tuple(ln * x + lp * y for x, y in zip(ap, an))
                keep.append((a[:k] + a[k + 1:], ln * cp + lp * cn))
        rows = keep
    return all(c <= 0 for _, c in rows)


def _slice_is_bounded(cone: ConeSpec, height_index: int) -> bool:
    """True iff {v in closure : v[height]=h} has trivial recession cone.

    The recession cone of a level slice is {d : <r, d> >= 0, d[height]=0};
    the slice is bounded exactly when that cone is {0}.
    """
    n = cone.dim
    base: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for r in cone.ineqs:
        base.append((tuple(Fraction(x) for x in r), Fraction(0)))
    eh = tuple(Fraction(1 if j == height_index else 0) for j in range(n))
    base.append((eh, Fraction(0)))
    base.append((tuple(-x for x in eh), Fraction(0)))
    for i in range(n):
        if i == height_index:
            continue
        ei = tuple(Fraction(1 if j == i else 0) for j in range(n))
        for s in (1, -1):
            sei = tuple(s * x for x in ei)
            nsei = tuple(-x for x in sei)
            rows = base + [(sei, Fraction(1)), (nsei, Fraction(-1))]
            if _fm_feasible(rows):
                return False
    return True


def _coordinate_bounds(cone: ConeSpec, height_index: int, h: int,
                       coord: int) -> tuple[int, int]:
    """Integer bounds for one coordinate over the closed slice at height h.

    Uses the fact that integral points of the open cone satisfy
    <r, v> >= 1, giving a compact polytope to project.
    """
    n = cone.dim
    lo = -_fm_extreme(cone, height_index, h, coord, maximize=False)
    hi = _fm_extreme(cone, height_index, h, coord, maximize=True)
    return lo, hi


def _fm_extreme(cone: ConeSpec, height_index: int, h: int, coord: int,
                maximize: bool) -> int:
    """Floor of max (or -min) of v[coord] over {<r,v> >= 1, v[height] = h}."""
    # binary search on integer threshold using exact feasibility
    span = 1
    sign = 1 if maximize else -1
    while _feasible_with_threshold(cone, height_index, h, coord, sign, span):
        span *= 2
        if span > 1 << 62:
            raise UnboundedSliceError("slice projection appears unbounded")
    lo_t, hi_t = 0, span  # largest feasible threshold is in [lo_t, hi_t)
    while lo_t + 1 < hi_t:
        mid = (lo_t + hi_t) // 2
        if _feasible_with_threshold(cone, height_index, h, coord, sign, mid):
            lo_t = mid
        else:
            hi_t = mid
    return lo_t


def _feasible_with_threshold(cone: ConeSpec, height_index: int, h: int,
                             coord: int, sign: int, thresh: int) -> bool:
    n = cone.dim
    rows: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for r in cone.ineqs:
        rows.append((tuple(Fraction(x) for x in r), Fraction(1)))
    eh = tuple(Fraction(1 if j == height_index else 0) for j in range(n))
    rows.append((eh, Fraction(h)))
    rows.append((tuple(-x for x in eh), Fraction(-h)))
    ec = tuple(Fraction(sign if j == coord else 0) for j in range(n))
    rows.append((ec, Fraction(thresh)))
    return _fm_feasible(rows)


def enumerate_primitive(cone: ConeSpec, height_index: int,
                        height_bound: int) -> list[tuple[int, ...]]:
    """Primitive points of the open cone with 0 < v[height] < height_bound.

    Returned in lexicographic order on the coordinate tuples; every slice
    is verified bounded before enumeration starts.
    """
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    if not 0 <= height_index < cone.dim:
        raise ValueError("height index out of range")
    if not _slice_is_bounded(cone, height_index):
        raise UnboundedSliceError(
            "cone slices along the chosen height coordinate are unbounded")
    out: list[tuple[int, ...]] = []
    others = [i for i in range(cone.dim) if i != height_index]
    for h in range(1, height_bound):
        ranges = []
        for i in others:
            lo, hi = _coordinate_bounds(cone, height_index, h, i)
            ranges.append(range(lo, hi + 1))
        for combo in product(*ranges):
            v = [0] * cone.dim
            v[height_index] = h
            for i, x in zip(others, combo):
                v[i] = x
            tv = tuple(v)
            if contains(cone, tv) and is_primitive(tv):
                out.append(tv)
    out.sort()
    return out
