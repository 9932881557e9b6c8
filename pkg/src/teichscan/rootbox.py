"""Certified root numerics layered over exact integer algebra.

Approximation and certification are strictly separated.  Floating point
(numpy, with an mpmath fallback) only ever produces root *candidates*;
every returned enclosure is certified in exact integer arithmetic:

  * real roots get isolating intervals from Sturm bisection, refined by
    exact sign bisection, and are reported as zero-height boxes;
  * non-real roots are certified through Weierstrass/Gerschgorin discs
    D(z_i, n*|w_i|), w_i = p(z_i) / (lc * prod_{j!=i} (z_i - z_j)),
    evaluated exactly at dyadic centers.  When the discs are pairwise
    disjoint each contains exactly one root; a disc centered on the real
    axis holds a real root, and a disc avoiding the axis a non-real one.

Precision escalates by exact Newton polishing of the dyadic centers
(roughly doubling the scale each stage, ceiling 2^14 bits).  On-circle
versus off-circle classification is never numerical: it always comes from
the exact unimodular-root count, so Salem-type factors are handled
correctly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from . import factorint
from .unipoly import (
    IntPoly,
    RationalInterval,
    SELF_RECIPROCAL,
    exact_div,
    gcd,
    is_cyclotomic,
    reciprocal_type,
    sturm_chain,
    sturm_count,
    sturm_count_above,
    trace_transform,
    chain_variations,
)

DEFAULT_PRECISION_CEILING = 1 << 14
CERT_RATIO = Fraction(1, 1 << 40)  # default: hi/lo <= 1 + 2^-40

# dyadic center scales; stage 0 is reachable by extended-precision floats,
# later stages by exact Newton polishing
_LADDER = (72, 160, 336, 688, 1392, 2800, 5616, 11248, 16384)


class PrecisionCeilingError(RuntimeError):
    """Certification could not be completed below the precision ceiling."""


class NoPerronRootError(ValueError):
    """The polynomial has no real root greater than one."""


# ---------------------------------------------------------------------------
# rational sqrt with directed rounding
# ---------------------------------------------------------------------------

def sqrt_lower(q: Fraction, bits: int = 96) -> Fraction:
    """Dyadic lower bound for sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    s = math.isqrt((q.numerator << (2 * bits)) // q.denominator)
    return Fraction(s, 1 << bits)


def sqrt_upper(q: Fraction, bits: int = 96) -> Fraction:
    """Dyadic upper bound for sqrt(q), q >= 0."""
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    s = math.isqrt((q.numerator << (2 * bits)) // q.denominator) + 2
    return Fraction(s, 1 << bits)


# ---------------------------------------------------------------------------
# enclosure and measure types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootEnclosure:
    """Axis-aligned complex box with exact rational corners.

    When `certified` is true the box contains exactly one root of the
    polynomial it was produced for; the root is real iff the box has zero
    imaginary extent.
    """

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction
    multiplicity: int = 1
    certified: bool = True

    @property
    def is_real(self) -> bool:
        return self.im_lo == 0 == self.im_hi

    def conjugate(self) -> "RootEnclosure":
        return RootEnclosure(self.re_lo, self.re_hi, -self.im_hi, -self.im_lo,
                             self.multiplicity, self.certified)

    def real_interval(self) -> RationalInterval:
        if not self.is_real:
            raise ValueError("not a real enclosure")
        return RationalInterval(self.re_lo, self.re_hi)

    def modulus_sq_bounds(self) -> tuple[Fraction, Fraction]:
        def sq_range(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
            hi2 = max(lo * lo, hi * hi)
            if lo <= 0 <= hi:
                return Fraction(0), hi2
            return min(lo * lo, hi * hi), hi2

        rlo, rhi = sq_range(self.re_lo, self.re_hi)
        ilo, ihi = sq_range(self.im_lo, self.im_hi)
        return rlo + ilo, rhi + ihi

    def meets_unit_circle(self) -> bool:
        lo, hi = self.modulus_sq_bounds()
        return lo <= 1 <= hi

    def modulus_bounds(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.modulus_sq_bounds()
        return sqrt_lower(lo), sqrt_upper(hi)

    def disjoint_from(self, other: "RootEnclosure") -> bool:
        return (self.re_hi < other.re_lo or other.re_hi < self.re_lo
                or self.im_hi < other.im_lo or other.im_hi < self.im_lo)


@dataclass(frozen=True)
class MeasureInterval:
    """Exact rational bracket [lo, hi] around a positive real quantity."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not 0 < self.lo <= self.hi:
            raise ValueError("measure interval must satisfy 0 < lo <= hi")

    @classmethod
    def exact(cls, v) -> "MeasureInterval":
        v = Fraction(v)
        return cls(v, v)

    def __mul__(self, other: "MeasureInterval") -> "MeasureInterval":
        return MeasureInterval(self.lo * other.lo, self.hi * other.hi)

    def __pow__(self, n: int) -> "MeasureInterval":
        return MeasureInterval(self.lo ** n, self.hi ** n)

    def ratio_ok(self, ratio: Fraction = CERT_RATIO) -> bool:
        return self.hi <= self.lo * (1 + ratio)

    def intersects(self, other: "MeasureInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi


# ---------------------------------------------------------------------------
# real-root isolation (Sturm bisection from the Cauchy bound)
# ---------------------------------------------------------------------------

def cauchy_root_bound(p: IntPoly) -> Fraction:
    """Dyadic B with every complex root of p strictly inside |z| < B."""
    if p.is_zero():
        raise ValueError("root bound of the zero polynomial")
    m = max(abs(c) for c in p.coeffs[:-1]) if p.degree > 0 else 0
    b = 1 + Fraction(m, abs(p.lead))
    k = 0
    while (1 << k) < b:
        k += 1
    return Fraction(1 << k)


def isolate_real_roots(p: IntPoly,
                       chain: list[tuple[int, ...]] | None = None
                       ) -> list[RationalInterval]:
    """Disjoint closed isolating intervals for the real roots of squarefree p.

    Sorted ascending, one root per interval; endpoints are dyadic and
    either straddle a sign change or pin the root exactly.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    ch = chain if chain is not None else sturm_chain(p)
    bound = cauchy_root_bound(p)
    var_cache: dict[Fraction, int] = {}

    def var(x: Fraction) -> int:
        if x not in var_cache:
            var_cache[x] = chain_variations(ch, x)
        return var_cache[x]

    raw: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        cnt = var(lo) - var(hi)
        if cnt == 0:
            continue
        if cnt == 1:
            raw.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    raw.sort()

    out: list[RationalInterval] = []
    for lo, hi in raw:
        # (lo, hi] holds exactly one root; normalize to a closed
        # sign-change (or exact-point) interval
        while True:
            if _sign_at_frac(p, hi) == 0:
                res = RationalInterval(hi, hi)
                break
            slo = _sign_at_frac(p, lo)
            if slo != 0 and slo != _sign_at_frac(p, hi):
                res = RationalInterval(lo, hi)
                break
            mid = (lo + hi) / 2
            if _sign_at_frac(p, mid) == 0:
                res = RationalInterval(mid, mid)
                break
            if var(mid) - var(hi) == 1:  # the root sits in (mid, hi]
                lo = mid
            else:
                hi = mid
        out.append(res)
    return out


def _sign_at_frac(p: IntPoly, x: Fraction) -> int:
    from .unipoly import _eval_frac_sign

    return _eval_frac_sign(p.coeffs, x.numerator, x.denominator)


def refine_root_interval(p: IntPoly, iv: RationalInterval,
                         max_width: Fraction) -> RationalInterval:
    """Shrink an isolating interval below max_width by exact sign bisection."""
    lo, hi = iv.lo, iv.hi
    if lo == hi:
        return iv
    slo = _sign_at_frac(p, lo)
    while hi - lo > max_width:
        mid = (lo + hi) / 2
        s = _sign_at_frac(p, mid)
        if s == 0:
            return RationalInterval(mid, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return RationalInterval(lo, hi)


# ---------------------------------------------------------------------------
# floating-point candidate roots (never trusted)
# ---------------------------------------------------------------------------

_EXTENDED = np.finfo(np.longdouble).nmant > 52


def _float_candidates(coeffs: Sequence[int]) -> np.ndarray | None:
    try:
        c = np.array(coeffs[::-1], dtype=np.float64)
        if not np.all(np.isfinite(c)):
            return None
        z = np.roots(c)
    except Exception:
        return None
    z = _aberth_f64(coeffs, z)
    if _EXTENDED:
        z = _newton_polish_ld(coeffs, z)
    return z


def _aberth_f64(coeffs: Sequence[int], z: np.ndarray, iters: int = 40) -> np.ndarray:
    c = np.array(coeffs, dtype=np.float64)
    chi = c[::-1]
    dchi = (c[1:] * np.arange(1, len(c)))[::-1]
    for _ in range(iters):
        pv = np.polyval(chi, z)
        dpv = np.polyval(dchi, z)
        dpv = np.where(dpv == 0, 1.0, dpv)
        nwt = pv / dpv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        diff = np.where(diff == 0, np.inf, diff)  # coincident candidates
        s = (1.0 / diff).sum(axis=1)
        denom = 1.0 - nwt * s
        denom = np.where(denom == 0, 1.0, denom)
        step = nwt / denom
        if not np.all(np.isfinite(step)):
            return z
        z = z - step
        if np.max(np.abs(step)) < 1e-15 * (1.0 + np.max(np.abs(z))):
            break
    return z


def _newton_polish_ld(coeffs: Sequence[int], z64: np.ndarray) -> np.ndarray:
    """Three Newton sweeps in extended precision (x86 80-bit long double)."""
    z = z64.astype(np.clongdouble)
    c = np.array(coeffs, dtype=np.longdouble)
    chi = c[::-1]
    dchi = (c[1:] * np.arange(1, len(c), dtype=np.longdouble))[::-1]
    for _ in range(3):
        pv = np.polyval(chi, z)
        dpv = np.polyval(dchi, z)
        dpv = np.where(dpv == 0, np.clongdouble(1.0), dpv)
        step = pv / dpv
        if not np.all(np.isfinite(step)):
            return z
        z = z - step
    return z


def _ld_to_frac(x) -> Fraction:
    """Exact Fraction from a (long double) float scalar."""
    if x == 0:
        return Fraction(0)
    m, e = np.frexp(x)
    mi = int(m * np.longdouble(2.0) ** 64)
    return Fraction(mi) * Fraction(2) ** (int(e) - 64)


def _mpf_to_frac(x) -> Fraction:
    """Exact Fraction from an mpmath mpf."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(-man if sign else man)
    return v * Fraction(2) ** exp


def _mpmath_candidates(coeffs: Sequence[int], prec: int) -> list[tuple[Fraction, Fraction]]:
    """Aberth iteration at `prec` bits from perturbed-circle initial points."""
    import mpmath

    n = len(coeffs) - 1
    with mpmath.workprec(prec + 20):
        cs = [mpmath.mpf(c) for c in coeffs]
        dcs = [k * cs[k] for k in range(1, len(cs))]

        def ev(poly, x):
            v = mpmath.mpc(0)
            for cc in reversed(poly):
                v = v * x + cc
            return v

        r = mpmath.mpf(1) + mpmath.mpf(1) / n
        z = [r * mpmath.exp(2j * mpmath.pi * (k + mpmath.mpf("0.375")) / n)
             for k in range(n)]
        tol = mpmath.mpf(2) ** (-prec)
        for _ in range(200):
            moved = mpmath.mpf(0)
            newz = []
            for i, zi in enumerate(z):
                pv = ev(cs, zi)
                dpv = ev(dcs, zi)
                if dpv == 0:
                    newz.append(zi + tol)
                    moved = 1 + moved
                    continue
                nwt = pv / dpv
                s = mpmath.mpc(0)
                for j, zj in enumerate(z):
                    if j != i and zi != zj:
                        s += 1 / (zi - zj)
                denom = 1 - nwt * s
                step = nwt if denom == 0 else nwt / denom
                newz.append(zi - step)
                moved = max(moved, abs(step))
            z = newz
            if moved < tol:
                break
        return [(_mpf_to_frac(zi.real), _mpf_to_frac(zi.imag)) for zi in z]


# ---------------------------------------------------------------------------
# exact disc certification at dyadic centers
# ---------------------------------------------------------------------------

class _CertifiedRoots(NamedTuple):
    scale: int                                  # K: centers live on 2^-K grid
    reals: tuple[RationalInterval, ...]         # ascending isolating intervals
    pairs: tuple[tuple[int, int, int], ...]     # (a, b, rho): upper-half discs
    # disc (a + b i)/2^K, radius rho/2^K; the conjugate disc is implied


def _horner_gauss(coeffs: Sequence[int], a: int, b: int, K: int) -> tuple[int, int]:
    """p((a + b i)/2^K) * 2^(deg*K) as an exact Gaussian integer."""
    vre = vim = 0
    pw = 1
    for c in reversed(coeffs):
        vre, vim = vre * a - vim * b + c * pw, vre * b + vim * a
        pw <<= K
    return vre, vim


def _prod_lower(vals: list[int]) -> tuple[int, int]:
    """(m, e) with 0 < m * 2^e <= product(vals); vals positive."""
    m, e = 1, 0
    for v in vals:
        m *= v
        bl = m.bit_length()
        if bl > 160:
            s = bl - 96
            m >>= s
            e += s
    return m, e


def _certify_discs(coeffs: Sequence[int], centers: list[tuple[int, int]],
                   K: int) -> list[int] | None:
    """Weierstrass/Gerschgorin radii (scale 2^-K) or None when uncertifiable.

    centers must list one approximation per root of the squarefree
    polynomial; when the returned discs exist they are pairwise disjoint
    (as squares), so each contains exactly one root, and every disc with
    b != 0 avoids the real axis.
    """
    n = len(coeffs) - 1
    lc = coeffs[-1]
    if len(centers) != n:
        return None
    d2 = [[0] * n for _ in range(n)]
    for i in range(n):
        ai, bi = centers[i]
        for j in range(i + 1, n):
            da = ai - centers[j][0]
            db = bi - centers[j][1]
            if da == 0 and db == 0:
                return None
            d2[i][j] = d2[j][i] = da * da + db * db
    n2 = n * n
    lc2 = lc * lc
    radii: list[int] = []
    for i in range(n):
        ai, bi = centers[i]
        vre, vim = _horner_gauss(coeffs, ai, bi, K)
        v2 = vre * vre + vim * vim
        m, e = _prod_lower([d2[i][j] for j in range(n) if j != i])
        denom = (lc2 * m) << e if e >= 0 else (lc2 * m) >> -e
        if denom <= 0:
            return None
        rho = math.isqrt((n2 * v2) // denom) + 2
        radii.append(rho)
    # discs off the axis must stay off the axis
    for (ai, bi), rho in zip(centers, radii):
        if bi != 0 and abs(bi) <= rho:
            return None
    # pairwise square disjointness
    for i in range(n):
        ai, bi = centers[i]
        for j in range(i + 1, n):
            s = radii[i] + radii[j]
            if abs(ai - centers[j][0]) <= s and abs(bi - centers[j][1]) <= s:
                return None
    return radii


def _scale_fraction(x: Fraction, K: int) -> int:
    """floor(x * 2^K) exactly."""
    return (x.numerator << K) // x.denominator


@lru_cache(maxsize=256)
def _chain_cache(coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(sturm_chain(IntPoly(coeffs)))


@lru_cache(maxsize=256)
def _real_isolation_cache(coeffs: tuple[int, ...]) -> tuple[RationalInterval, ...]:
    p = IntPoly(coeffs)
    return tuple(isolate_real_roots(p, list(_chain_cache(coeffs))))


@lru_cache(maxsize=192)
def _certified_stage(coeffs: tuple[int, ...], stage: int) -> _CertifiedRoots | None:
    """Certified root data for squarefree coeffs at ladder stage, else None."""
    p = IntPoly(coeffs)
    n = p.degree
    K = _LADDER[stage]
    reals = list(_real_isolation_cache(coeffs))
    width = Fraction(1, 1 << min(K - 4, 2048))
    reals = [refine_root_interval(p, iv, width) for iv in reals]
    n_real = len(reals)
    n_pairs = (n - n_real) // 2
    if n_real + 2 * n_pairs != n:
        return None

    ups: list[tuple[Fraction, Fraction]] | None = None
    if n_pairs == 0:
        ups = []
    elif stage == 0:
        z = _float_candidates(p.coeffs)
        if z is not None:
            ups = _pick_upper(z, n_real, n_pairs)
        if ups is None:
            ups = _pick_upper_exact(_mpmath_candidates(p.coeffs, 128), n_real, n_pairs)
    else:
        prev = _certified_stage(coeffs, stage - 1)
        if prev is not None:
            ups = [_newton_exact(p, a, b, prev.scale)
                   for a, b, _ in prev.pairs]
        else:
            ups = _pick_upper_exact(_mpmath_candidates(p.coeffs, K + 32),
                                    n_real, n_pairs)
    if ups is None or len(ups) != n_pairs:
        return None

    centers: list[tuple[int, int]] = []
    for iv in reals:
        centers.append((_scale_fraction(iv.mid, K), 0))
    pair_ints: list[tuple[int, int]] = []
    for re, im in ups:
        a, b = _scale_fraction(re, K), _scale_fraction(abs(im), K)
        pair_ints.append((a, b))
        centers.append((a, b))
        centers.append((a, -b))
    radii = _certify_discs(p.coeffs, centers, K)
    if radii is None:
        return None
    pairs = []
    for idx, (a, b) in enumerate(pair_ints):
        rho = radii[n_real + 2 * idx]
        pairs.append((a, b, rho))
    pairs.sort()
    return _CertifiedRoots(scale=K, reals=tuple(reals), pairs=tuple(pairs))


def _pick_upper(z: np.ndarray, n_real: int, n_pairs: int
                ) -> list[tuple[Fraction, Fraction]] | None:
    order = np.argsort(np.abs(np.asarray(z.imag, dtype=np.float64)), kind="stable")
    rest = z[order[n_real:]]
    up = rest[rest.imag > 0]
    if len(up) != n_pairs:
        return None
    if z.dtype == np.clongdouble:
        out = [(_ld_to_frac(w.real), _ld_to_frac(w.imag)) for w in up]
    else:
        out = [(Fraction(float(w.real)), Fraction(float(w.imag))) for w in up]
    out.sort()
    return out


def _pick_upper_exact(zs: list[tuple[Fraction, Fraction]], n_real: int,
                      n_pairs: int) -> list[tuple[Fraction, Fraction]] | None:
    by_im = sorted(zs, key=lambda w: abs(w[1]))
    rest = by_im[n_real:]
    up = sorted([w for w in rest if w[1] > 0])
    if len(up) != n_pairs:
        return None
    return up


def _newton_exact(p: IntPoly, a: int, b: int, K_from: int
                  ) -> tuple[Fraction, Fraction]:
    """One exact-rational Newton step from (a+bi)/2^K_from, output exact."""
    coeffs = p.coeffs
    n = p.degree
    vre, vim = _horner_gauss(coeffs, a, b, K_from)
    dcoeffs = p.derivative().coeffs
    dre, dim = _horner_gauss(dcoeffs, a, b, K_from)
    # p/p' = (v * conj(d)) / |d|^2, with scale adjustment 2^-K_from
    den = dre * dre + dim * dim
    if den == 0:
        return Fraction(a, 1 << K_from), Fraction(b, 1 << K_from)
    sre = Fraction((vre * dre + vim * dim), den * (1 << K_from))
    sim = Fraction((vim * dre - vre * dim), den * (1 << K_from))
    return Fraction(a, 1 << K_from) - sre, Fraction(b, 1 << K_from) - sim


def _stages_for_ceiling(ceiling: int) -> list[int]:
    out = [s for s, K in enumerate(_LADDER) if K <= max(ceiling, _LADDER[0])]
    return out or [0]


def certified_roots(p: IntPoly, want, ceiling: int = DEFAULT_PRECISION_CEILING):
    """Run the stage ladder until `want(data)` accepts; raise at the ceiling.

    `want` receives a _CertifiedRoots and returns a truthy result or None.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    for stage in _stages_for_ceiling(ceiling):
        data = _certified_stage(p.coeffs, stage)
        if data is None:
            continue
        got = want(data)
        if got is not None:
            return got
    raise PrecisionCeilingError(
        f"certification failed below {ceiling} bits for {p.to_text()}")


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _boxes_from_data(data: _CertifiedRoots) -> list[RootEnclosure]:
    scale = Fraction(1, 1 << data.scale)
    out = [RootEnclosure(iv.lo, iv.hi, Fraction(0), Fraction(0))
           for iv in data.reals]
    for a, b, rho in data.pairs:
        box = RootEnclosure((a - rho) * scale, (a + rho) * scale,
                            (b - rho) * scale, (b + rho) * scale)
        out.append(box)
        out.append(box.conjugate())
    return out


def complex_enclosures(p: IntPoly,
                       precision_bits: int = DEFAULT_PRECISION_CEILING
                       ) -> list[RootEnclosure]:
    """Certified, pairwise disjoint, conjugation-closed boxes, one per root.

    Requires squarefree p of degree >= 1.
    """
    if p.degree < 1:
        return []
    if p.degree == 1:
        r = Fraction(-p.coeffs[0], p.coeffs[1])
        return [RootEnclosure(r, r, Fraction(0), Fraction(0))]
    return certified_roots(p, _boxes_from_data, precision_bits)


def perron_root(p: IntPoly,
                precision_bits: int = DEFAULT_PRECISION_CEILING) -> RootEnclosure:
    """Certified enclosure of the real root > 1 strictly dominating in modulus.

    Requires squarefree p with a real root above 1; raises
    NoPerronRootError otherwise and PrecisionCeilingError when strict
    dominance cannot be certified.
    """
    if p.degree < 1:
        raise NoPerronRootError("constant polynomial")
    chain = list(_chain_cache(p.coeffs))
    if sturm_count_above(p, Fraction(1), chain) == 0:
        raise NoPerronRootError("no real root greater than one")
    if p.degree == 1:
        r = Fraction(-p.coeffs[0], p.coeffs[1])
        return RootEnclosure(r, r, Fraction(0), Fraction(0))

    def want(data: _CertifiedRoots):
        lam = data.reals[-1]
        lam = refine_root_interval(p, lam, Fraction(1, 1 << 44))
        if lam.lo <= 1:
            return None
        lam_lo_sq = lam.lo * lam.lo
        lam_hi_sq = lam.hi * lam.hi
        for iv in data.reals[:-1]:
            away = max(abs(iv.lo), abs(iv.hi))
            near = min(abs(iv.lo), abs(iv.hi))
            if iv.lo <= 0 <= iv.hi:
                near = Fraction(0)
            if near > lam.hi:
                raise NoPerronRootError(
                    "largest real root is not modulus-dominant")
            if away >= lam.lo:
                return None
        scale = Fraction(1, 1 << data.scale)
        for a, b, rho in data.pairs:
            hi_re = max(abs(a - rho), abs(a + rho))
            hi_im = abs(b) + rho
            lo_re = 0 if a - rho <= 0 <= a + rho else min(abs(a - rho), abs(a + rho))
            lo_im = max(abs(b) - rho, 0)
            m2_hi = (hi_re * hi_re + hi_im * hi_im) * scale * scale
            m2_lo = (lo_re * lo_re + lo_im * lo_im) * scale * scale
            if m2_lo > lam_hi_sq:
                raise NoPerronRootError(
                    "largest real root is not modulus-dominant")
            if m2_hi >= lam_lo_sq:
                return None
        return RootEnclosure(lam.lo, lam.hi, Fraction(0), Fraction(0))

    return certified_roots(p, want, precision_bits)


def count_unimodular(p: IntPoly) -> int:
    """Exact number of roots of squarefree p (p(0) != 0) on the unit circle.

    Roots on the circle of a real polynomial are shared with the
    coefficient reversal, so they are counted on gcd(p, reversal):
    strip t -/+ 1, halve through the trace transform, and Sturm-count the
    image on (-2, 2).
    """
    if p.is_zero() or p.constant == 0:
        raise ValueError("count_unimodular requires p(0) != 0")
    if p.degree == 0:
        return 0
    rt = reciprocal_type(p)
    if rt == SELF_RECIPROCAL:
        g = p if p.lead > 0 else -p
    else:
        g = gcd(p, p.reversal())
    if g.degree == 0:
        return 0
    ones = 0
    for root in (1, -1):
        if g(root) == 0:
            g = exact_div(g, IntPoly((-root, 1)))
            ones += 1
    if g.degree == 0:
        return ones
    if reciprocal_type(g) != SELF_RECIPROCAL or g.degree % 2:
        raise AssertionError("unimodular core failed to be self-reciprocal")
    q = trace_transform(g)
    inside = sturm_count(q, RationalInterval(Fraction(-2), Fraction(2)))
    return 2 * inside + ones


def _unimodular_pair_count(f: IntPoly) -> int:
    """Non-real on-circle conjugate pairs of an irreducible factor."""
    u = count_unimodular(f)
    ones = (1 if f(1) == 0 else 0) + (1 if f(-1) == 0 else 0)
    return (u - ones) // 2


def mahler_measure_irreducible(f: IntPoly, ratio: Fraction = CERT_RATIO,
                               ceiling: int = DEFAULT_PRECISION_CEILING
                               ) -> MeasureInterval:
    """Certified Mahler measure of a known-irreducible primitive factor.

    Skips the factorization step of mahler_measure; the caller vouches for
    irreducibility (factors coming out of the factorizer already qualify).
    """
    cyc, _ = is_cyclotomic(f)
    if cyc:
        return MeasureInterval.exact(1)
    if f.degree == 1:
        c0, c1 = f.coeffs
        return MeasureInterval.exact(max(Fraction(abs(c1)), Fraction(abs(c0))))
    on_circle = _unimodular_pair_count(f)

    def want(data: _CertifiedRoots):
        lo = hi = Fraction(abs(f.lead))
        for iv in data.reals:
            iv = refine_root_interval(f, iv, _ratio_width(iv, ratio))
            alo, ahi = sorted((abs(iv.lo), abs(iv.hi)))
            if iv.lo <= 0 <= iv.hi:
                alo = Fraction(0)
            if ahi <= 1:
                continue
            if alo < 1:
                return None  # straddles the circle; realign at higher stage
            lo *= alo
            hi *= ahi
        scale = Fraction(1, 1 << data.scale)
        meeting = 0
        for a, b, rho in data.pairs:
            box = RootEnclosure((a - rho) * scale, (a + rho) * scale,
                                (b - rho) * scale, (b + rho) * scale)
            m2_lo, m2_hi = box.modulus_sq_bounds()
            if m2_lo <= 1 <= m2_hi:
                meeting += 1
                continue
            if m2_hi < 1:
                continue  # certified inside; contributes 1
            lo *= m2_lo
            hi *= m2_hi
        if meeting != on_circle:
            if meeting < on_circle:
                raise AssertionError(
                    "fewer boxes meet the circle than certified on-circle roots")
            return None  # off-circle boxes still straddle; refine
        out = MeasureInterval(lo, hi)
        return out if out.ratio_ok(ratio) else None

    return certified_roots(f, want, ceiling)


def _ratio_width(iv: RationalInterval, ratio: Fraction) -> Fraction:
    base = max(abs(iv.lo), Fraction(1, 4))
    return base * ratio / 4


def mahler_measure(p: IntPoly, ratio: Fraction = CERT_RATIO,
                   precision_bits: int = DEFAULT_PRECISION_CEILING) -> MeasureInterval:
    """Certified interval around M(p) with hi/lo <= 1 + ratio.

    Cyclotomic factors contribute exactly 1; every other irreducible
    factor is measured from certified enclosures, with on-circle roots
    identified by exact count, never numerically.
    """
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    fac = factorint.factor(p)
    out = MeasureInterval.exact(fac.content)
    for f, mult in fac.factors:
        out = out * (mahler_measure_irreducible(f, ratio, precision_bits) ** mult)
    return out


def mahler_split(p: IntPoly, ratio: Fraction = CERT_RATIO,
                 precision_bits: int = DEFAULT_PRECISION_CEILING
                 ) -> tuple[MeasureInterval, MeasureInterval]:
    """M(p) = A * B for irreducible monic p.

    A is the product of the moduli of real roots outside the unit circle,
    B the product over non-real roots outside it; real/non-real
    classification comes from exact Sturm counts, on/off circle from the
    exact unimodular count.
    """
    if p.degree < 1 or p.lead != 1:
        raise ValueError("mahler_split requires an irreducible monic polynomial")
    if p.coeffs in ((-1, 1), (1, 1)):
        return MeasureInterval.exact(1), MeasureInterval.exact(1)
    on_circle = _unimodular_pair_count(p)

    def want(data: _CertifiedRoots):
        a_lo = a_hi = Fraction(1)
        for iv in data.reals:
            iv = refine_root_interval(p, iv, _ratio_width(iv, ratio))
            alo, ahi = sorted((abs(iv.lo), abs(iv.hi)))
            if iv.lo <= 0 <= iv.hi:
                alo = Fraction(0)
            if ahi <= 1:
                continue
            if alo < 1:
                return None
            a_lo *= alo
            a_hi *= ahi
        b_lo = b_hi = Fraction(1)
        scale = Fraction(1, 1 << data.scale)
        meeting = 0
        for a, b, rho in data.pairs:
            box = RootEnclosure((a - rho) * scale, (a + rho) * scale,
                                (b - rho) * scale, (b + rho) * scale)
            m2_lo, m2_hi = box.modulus_sq_bounds()
            if m2_lo <= 1 <= m2_hi:
                meeting += 1
                continue
            if m2_hi < 1:
                continue
            b_lo *= m2_lo
            b_hi *= m2_hi
        if meeting != on_circle:
            if meeting < on_circle:
                raise AssertionError(
                    "fewer boxes meet the circle than certified on-circle roots")
            return None
        A = MeasureInterval(a_lo, a_hi)
        B = MeasureInterval(b_lo, b_hi)
        if A.ratio_ok(ratio) and B.ratio_ok(ratio):
            return A, B
        return None

    return certified_roots(p, want, precision_bits)
