"""Complete factorization of integer polynomials into Z-irreducibles.

Zassenhaus with quadratic Hensel lifting: pick the smallest good-reduction
prime above 30, factor modulo it (distinct-degree then equal-degree
splitting driven by a stream seeded from the coefficients, so runs are
reproducible), lift to a modulus beyond twice the coefficient bound
2^deg * ||f||_2, then recombine modular factors subset-by-subset with a
constant-coefficient early exit before each exact trial division.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from itertools import combinations

from . import _modp
from .unipoly import (
    IntPoly,
    content_and_primitive,
    divides,
    exact_div,
    gcd,
    squarefree_part,
    _mul,
    _trim,
)


@dataclass(frozen=True)
class Factorization:
    """p = unit * content * t^monomial_shift * prod(factor_i ^ mult_i).

    Factors are primitive irreducible with positive leading coefficient,
    pairwise distinct, sorted by (degree, coefficients); content is the
    positive integer content of the input.
    """

    unit: int
    content: int
    monomial_shift: int
    factors: tuple[tuple[IntPoly, int], ...]

    def reassemble(self) -> IntPoly:
        out = IntPoly([self.unit * self.content])
        for f, m in self.factors:
            out = out * (f ** m)
        return out * IntPoly.monomial(self.monomial_shift)

    def non_cyclotomic_factors(self) -> list[tuple[IntPoly, int]]:
        from .unipoly import is_cyclotomic

        return [(f, m) for f, m in self.factors if not is_cyclotomic(f)[0]]

    def to_text(self) -> str:
        parts = []
        lead = self.unit * self.content
        if lead != 1 or not self.factors:
            parts.append(str(lead))
        if self.monomial_shift:
            parts.append(f"t^{self.monomial_shift}" if self.monomial_shift > 1 else "t")
        for f, m in self.factors:
            body = f"({f.to_text()})"
            parts.append(body if m == 1 else f"{body}^{m}")
        return " * ".join(parts)


def _isqrt_ceil(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _trunc_sym(coeffs: list[int], m: int) -> list[int]:
    return _trim([_symmetric(c, m) for c in coeffs])


def _divmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Long division by monic b over Z (always exact steps)."""
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            q[k - db] = c
            for i in range(db + 1):
                r[k - db + i] -= c * b[i]
    return _trim(q), _trim(r)


def _sub_lists(a: list[int], b: list[int]) -> list[int]:
    out = list(a)
    if len(b) > len(out):
        out.extend([0] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _add_lists(a: list[int], b: list[int]) -> list[int]:
    out = list(a)
    if len(b) > len(out):
        out.extend([0] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


# ---------------------------------------------------------------------------
# Hensel lifting (quadratic, multifactor by bisection)
# ---------------------------------------------------------------------------

def _hensel_step(m: int, f: list[int], g: list[int], h: list[int],
                 s: list[int], t: list[int]):
    """One quadratic lift: from f = g*h, s*g + t*h = 1 (mod m) to mod m^2.

    Requires h monic; returns (G, H, S, T) with the same relations mod m^2.
    """
    M = m * m
    e = _trunc_sym(_sub_lists(f, _mul(g, h)), M)
    q, r = _divmod_monic(_mul(s, e), h)
    q, r = _trunc_sym(q, M), _trunc_sym(r, M)
    u = _add_lists(_mul(t, e), _mul(q, g))
    G = _trunc_sym(_add_lists(g, u), M)
    H = _trunc_sym(_add_lists(h, r), M)
    b = _trunc_sym(_sub_lists(_add_lists(_mul(s, G), _mul(t, H)), [1]), M)
    c, d = _divmod_monic(_mul(s, b), H)
    c, d = _trunc_sym(c, M), _trunc_sym(d, M)
    S = _trunc_sym(_sub_lists(s, d), M)
    T = _trunc_sym(_sub_lists(t, _add_lists(_mul(t, b), _mul(c, G))), M)
    return G, H, S, T


def _gf_gcdex(a, b, p: int):
    """Extended Euclid over F_p on int lists: s*a + t*b = 1 (gcd must be 1)."""
    A = _modp.from_coeffs(a, p)
    B = _modp.from_coeffs(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    r0, r1 = A, B
    while len(r1):
        q, r = _modp.divmod_(r0, r1, p)
        ql = [int(x) for x in q]
        r0, r1 = r1, r
        s0, s1 = s1, [c % p for c in _sub_lists(s0, _mul(ql, s1))]
        t0, t1 = t1, [c % p for c in _sub_lists(t0, _mul(ql, t1))]
    if _modp.deg(r0) != 0:
        raise ArithmeticError("gcdex expected coprime inputs")
    inv = pow(int(r0[0]), -1, p)
    s = _trim([(c * inv) % p for c in s0])
    t = _trim([(c * inv) % p for c in t0])
    return s, t


def _hensel_lift(p: int, f: list[int], f_list: list[list[int]], l: int) -> list[list[int]]:
    """Lift monic pairwise-coprime factors of f from mod p to mod p^l."""
    r = len(f_list)
    lc = f[-1]
    pl = p**l
    if r == 1:
        inv = pow(lc % pl, -1, pl)
        return [_trunc_sym([c * inv for c in f], pl)]
    m = p
    k = r // 2
    d = int(math.ceil(math.log2(l))) if l > 1 else 0

    g: list[int] = [lc % p]
    for fi in f_list[:k]:
        g = [c % p for c in _mul(g, fi)]
    h: list[int] = [1]
    for fi in f_list[k:]:
        h = [c % p for c in _mul(h, fi)]
    s, t = _gf_gcdex(g, h, p)
    g, h = _trunc_sym(g, p), _trunc_sym(h, p)
    s, t = _trunc_sym(s, p), _trunc_sym(t, p)

    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m

    return _hensel_lift(p, g, f_list[:k], l) + _hensel_lift(p, h, f_list[k:], l)


# ---------------------------------------------------------------------------
# Zassenhaus
# ---------------------------------------------------------------------------

def _small_primes():
    n = 31
    while True:
        if all(n % q for q in range(2, math.isqrt(n) + 1)):
            yield n
        n += 2


def _good_prime(coeffs) -> int:
    """Smallest prime > 30 not dividing lc with squarefree reduction."""
    lc = coeffs[-1]
    for p in _small_primes():
        if lc % p == 0:
            continue
        fp = _modp.from_coeffs(coeffs, p)
        if _modp.deg(fp) == len(coeffs) - 1 and _modp.is_squarefree(fp, p):
            return p


def _rng_for(coeffs, p: int) -> random.Random:
    digest = hashlib.sha256(repr((p, tuple(coeffs))).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def modular_factor_degrees(f: IntPoly, p: int) -> list[int]:
    """Degrees of the monic irreducible factors of squarefree f modulo p."""
    fp = _modp.from_coeffs(f.coeffs, p)
    if _modp.deg(fp) != f.degree or not _modp.is_squarefree(fp, p):
        raise ValueError(f"{p} is not a good-reduction prime for this polynomial")
    return sorted(_modp.deg(g) for g in _modp.factor_squarefree(_modp.monic(fp, p), p, _rng_for(f.coeffs, p)))


def _zassenhaus(f: list[int]) -> list[IntPoly]:
    """Irreducible factors of a primitive squarefree f, f(0) != 0, lc > 0."""
    n = len(f) - 1
    if n <= 1:
        return [IntPoly(f)]
    lc = f[-1]

    p = _good_prime(f)
    rng = _rng_for(f, p)
    fp = _modp.monic(_modp.from_coeffs(f, p), p)
    modular = [[int(c) for c in g] for g in _modp.factor_squarefree(fp, p, rng)]
    if len(modular) == 1:
        return [IntPoly(f)]

    # coefficient bound for lc * (any monic-lifted true factor)
    bound = abs(lc) * (1 << n) * _isqrt_ceil(sum(c * c for c in f))
    l = 1
    while p**l <= 2 * bound:
        l += 1
    pl = p**l

    lifted = _hensel_lift(p, f, [_trunc_sym(m, p) for m in modular], l)

    remaining = list(range(len(lifted)))
    cur = list(f)
    factors: list[IntPoly] = []
    s = 1
    while 2 * s <= len(remaining):
        lc_cur, fc_cur = cur[-1], cur[0]
        committed = False
        for subset in combinations(remaining, s):
            tc = lc_cur
            for i in subset:
                tc = tc * lifted[i][0] % pl
            tc = _symmetric(tc, pl)
            if tc and (fc_cur * lc_cur) % tc:
                continue
            G = [lc_cur]
            for i in subset:
                G = _trunc_sym(_mul(G, lifted[i]), pl)
            Gp = IntPoly(G)
            if Gp.is_zero():
                continue
            _, Gp = content_and_primitive(Gp)
            qr = divides(Gp, IntPoly(cur))
            if qr:
                factors.append(Gp)
                cur = exact_div(IntPoly(cur), Gp).coeffs
                cur = list(cur)
                remaining = [i for i in remaining if i not in subset]
                committed = True
                break
        if not committed:
            s += 1
    last = IntPoly(cur)
    if last.degree >= 1:
        factors.append(last)
    elif last.coeffs != (1,):
        raise AssertionError("recombination left a non-unit constant")
    return factors


def factor(p: IntPoly) -> Factorization:
    """Complete factorization of nonzero p into Z-irreducibles.

    The result is verified by exact multiplication before returning.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    shift = p.valuation()
    body = p.shift_down(shift)
    cont, prim = content_and_primitive(body)
    unit = -1 if cont < 0 else 1
    cont = abs(cont)
    factors: list[tuple[IntPoly, int]] = []
    if prim.degree >= 1:
        sqf = squarefree_part(prim)
        parts = _zassenhaus(list(sqf.coeffs))
        rest = prim
        for q in sorted(parts, key=lambda g: (g.degree, g.coeffs)):
            mult = 0
            while divides(q, rest):
                rest = exact_div(rest, q)
                mult += 1
            factors.append((q, mult))
        if rest.coeffs != (1,):
            raise AssertionError("multiplicity extraction did not exhaust the input")
    result = Factorization(unit=unit, content=cont, monomial_shift=shift,
                           factors=tuple(factors))
    if result.reassemble() != p:
        raise AssertionError("factorization failed round-trip verification")
    return result


def is_irreducible(p: IntPoly) -> bool:
    """True iff primitive p of degree >= 1 is irreducible over Z."""
    if p.degree < 1:
        raise ValueError("irreducibility is for degree >= 1")
    fac = factor(p)
    return (fac.monomial_shift == 0 and fac.content == 1
            and len(fac.factors) == 1 and fac.factors[0][1] == 1)
