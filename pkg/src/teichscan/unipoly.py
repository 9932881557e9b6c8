"""Exact univariate integer-polynomial algebra.

Everything in this module is computed over Z (or Q for interval endpoints)
with arbitrary-precision integers; there is no floating point anywhere.
Polynomials are dense, constant term first.  The module provides the
arithmetic kernel used by the factorizer and the root machinery: gcds and
squarefree parts through primitive pseudo-remainder sequences, Sturm chains
for exact real-root counting, Descartes sign-variation bounds, reciprocal
structure detection, the degree-halving substitution s = t + 1/t, and
cyclotomic recognition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce, lru_cache
from typing import Iterable, Sequence


class ExactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


# ---------------------------------------------------------------------------
# list-level kernels (hot paths; coefficients constant-first, trimmed)
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = list(a)
    if len(b) > len(out):
        out.extend([0] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _neg(a: Sequence[int]) -> list[int]:
    return [-x for x in a]


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _mul_scalar(a: Sequence[int], k: int) -> list[int]:
    if k == 0:
        return []
    return [x * k for x in a]


def _divmod_exactish(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]] | None:
    """Long division of a by b over Z.

    Returns (q, r) when every elimination step divides evenly in Z, else
    None (which implies b does not divide a exactly).  r may be nonzero.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    _trim(r)
    db, lb = len(b) - 1, b[-1]
    q: list[int] = [0] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        lead = r[-1]
        if lead % lb:
            return None
        c = lead // lb
        k = len(r) - 1 - db
        q[k] = c
        for i in range(db + 1):
            r[k + i] -= c * b[i]
        _trim(r)
    return q, r


def _pseudo_rem(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], int]:
    """Pseudo-remainder of a by b.

    Returns (r, e) with lc(b)^e * a = q*b + r and e = deg a - deg b + 1,
    without introducing fractions.
    """
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    e = len(a) - len(b) + 1
    steps = 0
    while r and len(r) - 1 >= db:
        lead = r[-1]
        r = [x * lb for x in r]
        k = len(r) - 1 - db
        for i in range(db + 1):
            r[k + i] -= lead * b[i]
        _trim(r)
        steps += 1
    # pad the multiplier so the overall scale factor is exactly lc(b)^e
    if steps < e:
        m = lb ** (e - steps)
        r = [x * m for x in r]
    return r, e


def _content(a: Sequence[int]) -> int:
    return reduce(math.gcd, (abs(x) for x in a), 0)


def _primitive(a: Sequence[int]) -> list[int]:
    """Divide out the content; result keeps the sign of the input."""
    c = _content(a)
    if c <= 1:
        return list(a)
    return [x // c for x in a]


def _eval_int(a: Sequence[int], x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _eval_frac_sign(a: Sequence[int], num: int, den: int) -> int:
    """Sign of a(num/den) for den > 0, via homogeneous integer evaluation."""
    v = 0
    p = 1
    for c in reversed(a):
        v = v * num + c * p
        p *= den
    return (v > 0) - (v < 0)


# ---------------------------------------------------------------------------
# public polynomial type
# ---------------------------------------------------------------------------

class IntPoly:
    """Dense univariate polynomial over Z, constant term first.

    Immutable; the stored coefficient tuple never has trailing zeros, so
    degree is len(coeffs) - 1 (and -1 for the zero polynomial).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        for x in c:
            if not isinstance(x, int):
                raise TypeError(f"integer coefficients required, got {type(x).__name__}")
        self.coeffs = tuple(_trim(c))

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        if k < 0:
            raise ValueError("monomial exponent must be >= 0")
        return cls([0] * k + [c])

    # -- basic structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({self.to_text()!r})"

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_add(self.coeffs, other.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(_sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "IntPoly":
        return IntPoly(_neg(self.coeffs))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(_mul_scalar(self.coeffs, other))
        return IntPoly(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        out, base = IntPoly.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        if isinstance(x, int):
            return _eval_int(self.coeffs, x)
        x = Fraction(x)
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def reversal(self) -> "IntPoly":
        """t^deg * p(1/t): the coefficient sequence reversed."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def shift_down(self, k: int) -> "IntPoly":
        """Divide by t^k; requires the k lowest coefficients to vanish."""
        if any(self.coeffs[:k]):
            raise ExactDivisionError("monomial does not divide")
        return IntPoly(self.coeffs[k:])

    def valuation(self) -> int:
        """Largest k with t^k dividing p (0 for p(0) != 0; 0 for p = 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    # -- text form ----------------------------------------------------------
    def to_text(self) -> str:
        """Canonical report form: exact integers, highest degree first."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = f"{mag}"
            elif k == 1:
                body = "t" if mag == 1 else f"{mag}*t"
            else:
                body = f"t^{k}" if mag == 1 else f"{mag}*t^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


# ---------------------------------------------------------------------------
# arithmetic operations on IntPoly
# ---------------------------------------------------------------------------

def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient a/b in Z[t]; raises ExactDivisionError unless b divides a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return IntPoly.zero()
    qr = _divmod_exactish(a.coeffs, b.coeffs)
    if qr is None or qr[1]:
        raise ExactDivisionError("polynomial division is not exact")
    return IntPoly(qr[0])


def divides(b: IntPoly, a: IntPoly) -> bool:
    """True iff b divides a in Z[t]."""
    if b.is_zero():
        return a.is_zero()
    if a.is_zero():
        return True
    qr = _divmod_exactish(a.coeffs, b.coeffs)
    return qr is not None and not qr[1]


def content_and_primitive(p: IntPoly) -> tuple[int, IntPoly]:
    """(content, primitive part); the primitive part has positive lead.

    The sign of the leading coefficient is absorbed into the content, so
    content * primitive == p exactly.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no content decomposition")
    c = _content(p.coeffs)
    if p.lead < 0:
        c = -c
    return c, IntPoly([x // c for x in p.coeffs])


def gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd in Z[t] with positive leading coefficient.

    Uses a primitive pseudo-remainder sequence (content stripped at every
    step) with a single-prime modular shortcut for the common coprime case.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return content_and_primitive(b)[1]
    if b.is_zero():
        return content_and_primitive(a)[1]
    if a.degree >= 1 and b.degree >= 1 and _coprime_mod_p(a, b):
        return IntPoly.one()
    f, g = list(a.coeffs), list(b.coeffs)
    if len(f) < len(g):
        f, g = g, f
    f, g = _primitive(f), _primitive(g)
    while g:
        r, _ = _pseudo_rem(f, g)
        f, g = g, _primitive(r)
    if f[-1] < 0:
        f = _neg(f)
    return IntPoly(f)


def _coprime_mod_p(a: IntPoly, b: IntPoly) -> bool:
    """True when gcd(a, b) = 1 is certified by a good-reduction prime."""
    from . import _modp

    for p in (10007, 10009, 10037):
        if a.lead % p == 0 or b.lead % p == 0:
            continue
        if _modp.gcd_is_one(a.coeffs, b.coeffs, p):
            return True
    return False


def squarefree_part(p: IntPoly) -> IntPoly:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    _, pp = content_and_primitive(p)
    if pp.degree == 0:
        return IntPoly.one()
    g = gcd(pp, pp.derivative())
    if g.degree == 0:
        return pp
    q = exact_div(pp, g)
    return content_and_primitive(q)[1]


# ---------------------------------------------------------------------------
# Sturm chains and real-root counting
# ---------------------------------------------------------------------------

def sturm_chain(p: IntPoly) -> list[tuple[int, ...]]:
    """Sturm chain of a squarefree p, as integer coefficient tuples.

    Each element is a positive rational multiple of the classical chain
    element, so sign variations are unchanged; contents are stripped at
    every step to control coefficient growth.
    """
    chain: list[tuple[int, ...]] = [p.coeffs, p.derivative().coeffs]
    while chain[-1]:
        f, g = chain[-2], chain[-1]
        if len(f) < len(g):
            r: Sequence[int] = f
            e_sign = 1
        else:
            r, e = _pseudo_rem(f, g)
            # the pseudo-remainder equals lc(g)^e times the true remainder
            e_sign = -1 if (g[-1] < 0 and e % 2 == 1) else 1
        r = _primitive(r)
        if e_sign < 0:
            r = _neg(list(r))
        chain.append(tuple(_neg(list(r))))
    chain.pop()
    return chain


def _variations(signs: Iterable[int]) -> int:
    v, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _sign_at(coeffs: Sequence[int], x: Fraction | None, at_pos_inf: bool = False,
             at_neg_inf: bool = False) -> int:
    if not coeffs:
        return 0
    if at_pos_inf:
        return 1 if coeffs[-1] > 0 else -1
    if at_neg_inf:
        s = 1 if coeffs[-1] > 0 else -1
        return s if (len(coeffs) - 1) % 2 == 0 else -s
    assert x is not None
    return _eval_frac_sign(coeffs, x.numerator, x.denominator)


def chain_variations(chain: list[tuple[int, ...]], x: Fraction | None, *,
                     pos_inf: bool = False, neg_inf: bool = False) -> int:
    return _variations(
        _sign_at(c, x, at_pos_inf=pos_inf, at_neg_inf=neg_inf) for c in chain
    )


def sturm_count(p: IntPoly, interval: RationalInterval | None = None,
                chain: list[tuple[int, ...]] | None = None) -> int:
    """Number of distinct real roots of squarefree p in (lo, hi].

    With no interval, counts all real roots.  Callers are expected to pass
    squarefree input (take squarefree_part first).
    """
    if p.is_zero():
        raise ValueError("sturm_count of the zero polynomial")
    if p.degree == 0:
        return 0
    ch = chain if chain is not None else sturm_chain(p)
    if interval is None:
        return chain_variations(ch, None, neg_inf=True) - chain_variations(ch, None, pos_inf=True)
    return chain_variations(ch, interval.lo) - chain_variations(ch, interval.hi)


def sturm_count_above(p: IntPoly, lo: Fraction,
                      chain: list[tuple[int, ...]] | None = None) -> int:
    """Number of distinct real roots of squarefree p in (lo, +inf)."""
    ch = chain if chain is not None else sturm_chain(p)
    return chain_variations(ch, lo) - chain_variations(ch, None, pos_inf=True)


def descartes_bound(p: IntPoly) -> int:
    """V(p) + V(p(-t)): an upper bound on nonzero real roots with multiplicity."""
    if p.is_zero():
        raise ValueError("descartes_bound of the zero polynomial")
    pos = _variations((c > 0) - (c < 0) for c in p.coeffs)
    neg = _variations(
        ((c > 0) - (c < 0)) * (-1 if k % 2 else 1) for k, c in enumerate(p.coeffs)
    )
    return pos + neg


# ---------------------------------------------------------------------------
# reciprocal structure and the trace transform
# ---------------------------------------------------------------------------

SELF_RECIPROCAL = "self_reciprocal"
ANTI_RECIPROCAL = "anti_reciprocal"
NOT_RECIPROCAL = "none"


def reciprocal_type(p: IntPoly) -> str:
    """Compare p with its reversal t^deg p(1/t)."""
    if p.is_zero() or p.constant == 0:
        raise ValueError("reciprocal type requires p(0) != 0")
    rev = tuple(reversed(p.coeffs))
    if rev == p.coeffs:
        return SELF_RECIPROCAL
    if rev == tuple(-c for c in p.coeffs):
        return ANTI_RECIPROCAL
    return NOT_RECIPROCAL


@lru_cache(maxsize=512)
def trace_transform(p: IntPoly) -> IntPoly:
    """For self-reciprocal p of even degree 2d, the q with p(t) = t^d q(t + 1/t).

    Uses the recurrence w_0 = 2, w_1 = s, w_k = s*w_{k-1} - w_{k-2} for
    t^k + t^{-k}; the defining identity is re-verified exactly before
    returning (once per distinct input; results are cached).
    """
    if reciprocal_type(p) != SELF_RECIPROCAL:
        raise ValueError("trace transform requires a self-reciprocal polynomial")
    if p.degree % 2:
        raise ValueError("trace transform requires even degree")
    d = p.degree // 2
    # w[k] = t^k + t^-k expressed in s
    w_prev: list[int] = [2]
    w_cur: list[int] = [0, 1]
    q = [p.coeffs[d]]  # constant: the middle coefficient times w_0/2 handled below
    q = _add(q, _mul_scalar(w_cur, p.coeffs[d + 1])) if d >= 1 else q
    for k in range(2, d + 1):
        w_next = _sub([0] + w_cur, w_prev)
        w_prev, w_cur = w_cur, w_next
        c = p.coeffs[d + k]
        if c:
            q = _add(q, _mul_scalar(w_cur, c))
    result = IntPoly(q)
    if _expand_trace(result, d) != p:
        raise AssertionError("trace transform identity failed to verify")
    return result


def _expand_trace(q: IntPoly, d: int) -> IntPoly:
    """t^d * q(t + 1/t) as a polynomial in t."""
    out = IntPoly.zero()
    s_pow = IntPoly.one()  # (t^2 + 1)^j, tracked incrementally
    base = IntPoly((1, 0, 1))
    for j, c in enumerate(q.coeffs):
        if c:
            out = out + c * (s_pow * IntPoly.monomial(d - j))
        if j < q.degree:
            s_pow = s_pow * base
    return out


# ---------------------------------------------------------------------------
# cyclotomic recognition
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by exact division of t^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = IntPoly.monomial(n, 1) - IntPoly.one()
    for m in range(1, n):
        if n % m == 0:
            num = exact_div(num, cyclotomic_poly(m))
    return num


@lru_cache(maxsize=None)
def _totients_upto(bound: int) -> tuple[int, ...]:
    phi = list(range(bound + 1))
    for i in range(2, bound + 1):
        if phi[i] == i:  # prime
            for j in range(i, bound + 1, i):
                phi[j] -= phi[j] // i
    return tuple(phi)


def is_cyclotomic(p: IntPoly) -> tuple[bool, int | None]:
    """Decide whether irreducible p is a cyclotomic polynomial.

    Candidate orders n are limited to n <= 2*deg^2 (valid since
    phi(n) >= sqrt(n/2)), then checked by exact comparison with the
    actual cyclotomic polynomial of that order.
    """
    d = p.degree
    if d < 1 or p.lead != 1 or p.constant not in (1, -1):
        return False, None
    bound = 2 * d * d
    phi = _totients_upto(bound)
    for n in range(1, bound + 1):
        if phi[n] == d and p == cyclotomic_poly(n):
            return True, n
    return False, None
