"""Polynomial arithmetic over F_p on int64 numpy arrays.

Internal helper for the factorizer: distinct-degree and equal-degree
splitting, gcds, and modular exponentiation, all with coefficients in
[0, p) stored constant-term-first.  Primes stay below 2^20 so convolution
products fit comfortably in int64.
"""

from __future__ import annotations

import random

import numpy as np

Arr = np.ndarray


def from_coeffs(coeffs, p: int) -> Arr:
    a = np.array([c % p for c in coeffs], dtype=np.int64)
    return trim(a)


def trim(a: Arr) -> Arr:
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def deg(a: Arr) -> int:
    return len(a) - 1


def mul(a: Arr, b: Arr, p: int) -> Arr:
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    return trim(np.convolve(a, b) % p)


def monic(a: Arr, p: int) -> Arr:
    if len(a) == 0 or a[-1] == 1:
        return a
    inv = pow(int(a[-1]), -1, p)
    return (a * inv) % p


def divmod_(a: Arr, b: Arr, p: int) -> tuple[Arr, Arr]:
    if len(b) == 0:
        raise ZeroDivisionError("mod-p division by zero polynomial")
    r = a.copy()
    db = len(b) - 1
    if len(r) - 1 < db:
        return a[:0], trim(r)
    inv = pow(int(b[-1]), -1, p)
    q = np.zeros(len(r) - db, dtype=np.int64)
    for k in range(len(r) - 1, db - 1, -1):
        c = (r[k] * inv) % p
        if c:
            q[k - db] = c
            r[k - db : k + 1] = (r[k - db : k + 1] - c * b) % p
    return trim(q), trim(r)


def rem(a: Arr, b: Arr, p: int) -> Arr:
    return divmod_(a, b, p)[1]


def gcd(a: Arr, b: Arr, p: int) -> Arr:
    while len(b):
        a, b = b, rem(a, b, p)
    return monic(a, p)


def gcd_is_one(coeffs_a, coeffs_b, p: int) -> bool:
    return deg(gcd(from_coeffs(coeffs_a, p), from_coeffs(coeffs_b, p), p)) == 0


def deriv(a: Arr, p: int) -> Arr:
    if len(a) <= 1:
        return a[:0]
    return trim((a[1:] * np.arange(1, len(a), dtype=np.int64)) % p)


def pow_mod(base: Arr, e: int, mod: Arr, p: int) -> Arr:
    fm = FixedMod(mod, p)
    out = np.array([1], dtype=np.int64)
    base = fm.reduce(base)
    while e:
        if e & 1:
            out = fm.mulmod(out, base)
        e >>= 1
        if e:
            base = fm.mulmod(base, base)
    return out


class FixedMod:
    """Reduction modulo a fixed monic f over F_p via a Newton inverse.

    Replaces the coefficient-by-coefficient division loop with three
    convolutions per product, which is what makes repeated modular
    squaring (distinct/equal-degree splitting) cheap.
    """

    def __init__(self, f: Arr, p: int):
        if len(f) == 0:
            raise ZeroDivisionError("zero modulus")
        self.p = p
        self.f = monic(f, p)
        self.n = len(self.f) - 1
        self.inv = np.array([1], dtype=np.int64)  # inverse of rev(f) mod x^k

    def _extend_inverse(self, k: int) -> None:
        fr = self.f[::-1]
        inv = self.inv
        while len(inv) < k:
            m = min(2 * len(inv), k)
            t = (-np.convolve(fr[: min(m, len(fr))], inv)[:m]) % self.p
            t[0] = (t[0] + 2) % self.p
            inv = np.convolve(inv, t)[:m] % self.p
        self.inv = inv

    def reduce(self, c: Arr) -> Arr:
        c = trim(c % self.p)
        dc = len(c) - 1
        if self.n == 0:
            return c[:0]
        if dc < self.n:
            return c
        qlen = dc - self.n + 1
        self._extend_inverse(qlen)
        crev = c[::-1]
        qrev = np.convolve(crev[:qlen], self.inv[:qlen])[:qlen] % self.p
        q = qrev[::-1]
        r = (c[: self.n] - np.convolve(q, self.f)[: self.n]) % self.p
        return trim(r)

    def mulmod(self, a: Arr, b: Arr) -> Arr:
        if len(a) == 0 or len(b) == 0:
            return a[:0]
        return self.reduce(np.convolve(a, b) % self.p)


def is_squarefree(a: Arr, p: int) -> bool:
    d = deriv(a, p)
    if len(d) == 0:
        return deg(a) == 0
    return deg(gcd(a, d, p)) == 0


X = np.array([0, 1], dtype=np.int64)


def _distinct_degree(f: Arr, p: int) -> list[tuple[Arr, int]]:
    """Split monic squarefree f into products of same-degree irreducibles."""
    out: list[tuple[Arr, int]] = []
    fm = FixedMod(f, p)
    h = pow_mod(X, p, f, p)
    d = 1
    while deg(f) >= 2 * d:
        g = gcd(_sub(h, X, p), f, p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            fm = FixedMod(f, p)
            h = fm.reduce(h)
        d += 1
        if deg(f) >= 2 * d:
            e = p
            hp = h
            out_pow = np.array([1], dtype=np.int64)
            while e:
                if e & 1:
                    out_pow = fm.mulmod(out_pow, hp)
                e >>= 1
                if e:
                    hp = fm.mulmod(hp, hp)
            h = out_pow
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _sub(a: Arr, b: Arr, p: int) -> Arr:
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return trim(out % p)


def _equal_degree(f: Arr, d: int, p: int, rng: random.Random) -> list[Arr]:
    """Cantor-Zassenhaus split of monic f, a product of degree-d irreducibles."""
    n = deg(f)
    if n == d:
        return [f]
    half = (p**d - 1) // 2
    while True:
        r = np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64)
        r = trim(r)
        if deg(r) < 1:
            continue
        g = gcd(r, f, p)
        if 0 < deg(g) < n:
            break
        m = _sub(pow_mod(r, half, f, p), np.array([1], dtype=np.int64), p)
        g = gcd(m, f, p)
        if 0 < deg(g) < n:
            break
    other = divmod_(f, g, p)[0]
    return _equal_degree(g, d, p, rng) + _equal_degree(other, d, p, rng)


def factor_squarefree(f: Arr, p: int, rng: random.Random) -> list[Arr]:
    """Monic irreducible factors of monic squarefree f, sorted canonically."""
    factors: list[Arr] = []
    for g, d in _distinct_degree(f, p):
        factors.extend(_equal_degree(g, d, p, rng))
    factors.sort(key=lambda a: (len(a), a.tolist()))
    return factors
