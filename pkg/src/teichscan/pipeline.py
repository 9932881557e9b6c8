"""Per-class and whole-cone analysis.

For each primitive class in the cone this computes the specialization, its
complete factorization, the stretch factor (largest-modulus root, verified
real, simple and strictly dominant), the minimal polynomial, the exact
totally-real trace-field verdict, and certified Mahler diagnostics
(measure, real/non-real split, Lehmer and Schinzel comparisons).

The trace-field decision runs entirely on the exact side (reciprocal
structure, trace transform, Sturm counts); certified complex enclosures
are computed independently per class and the two verdicts are compared,
so a disagreement surfaces as an internal verification failure instead of
a silently wrong report.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import rootbox
from .conelattice import ConeSpec, contains, enumerate_primitive, is_primitive, \
    subcone_margin, thurston_norm
from .factorint import Factorization, factor
from .groupring import CohomClass, MultiLaurentPoly, specialize, term_count
from .rootbox import (
    CERT_RATIO,
    DEFAULT_PRECISION_CEILING,
    MeasureInterval,
    NoPerronRootError,
    PrecisionCeilingError,
    RootEnclosure,
    certified_roots,
    count_unimodular,
    mahler_measure,
    mahler_measure_irreducible,
    mahler_split,
    refine_root_interval,
    _certified_stage,
    _chain_cache,
    _mpf_to_frac,
    _real_isolation_cache,
    _stages_for_ceiling,
    _unimodular_pair_count,
)
from .unipoly import (
    IntPoly,
    RationalInterval,
    SELF_RECIPROCAL,
    ANTI_RECIPROCAL,
    descartes_bound,
    is_cyclotomic,
    reciprocal_type,
    sturm_count,
    sturm_count_above,
    trace_transform,
)


class NotInConeError(ValueError):
    """The class lies outside the open cone."""


class NotPrimitiveError(ValueError):
    """The class is an integral multiple of a smaller class."""


class InternalVerificationError(RuntimeError):
    """A cross-check that can never legitimately fail has failed."""


LEHMER_POLY = IntPoly((1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1))
_LEHMER_MIRROR = IntPoly(tuple(c if k % 2 == 0 else -c
                               for k, c in enumerate(LEHMER_POLY.coeffs)))

_PHI_SQ_MINPOLY = IntPoly((1, -3, 1))  # minimal polynomial of phi^2


@dataclass(frozen=True)
class ClassReport:
    """Everything the scan records about one primitive class."""

    alpha: CohomClass
    specialization: IntPoly | None = None
    N: int = 0
    factorization: Factorization | None = None
    cyclotomic_orders: tuple[int | None, ...] = ()
    minpoly: IntPoly | None = None
    lam: RootEnclosure | None = None
    log_lambda: MeasureInterval | None = None
    degree_proxy_norm: int | None = None
    thurston_norm: int | None = None
    margin: Fraction | None = None
    real_root_count: int | None = None
    descartes: int | None = None
    self_reciprocal: bool | None = None
    totally_real: bool | None = None
    enclosure_verdict: bool | None = None
    mahler: MeasureInterval | None = None
    split_A: MeasureInterval | None = None
    split_B: MeasureInterval | None = None
    unimodular_count: int | None = None
    lehmer_flag: bool | None = None
    schinzel_ok: bool | None = None
    anomalies: tuple[str, ...] = ()
    error: str | None = None

    @property
    def n_factors(self) -> int:
        return len(self.factorization.factors) if self.factorization else 0

    @property
    def n_cyclotomic(self) -> int:
        return sum(1 for n in self.cyclotomic_orders if n is not None)

    def flags(self) -> list[str]:
        out = list(self.anomalies)
        if self.lehmer_flag:
            out.append("lehmer")
        elif self.lehmer_flag is None and self.error is None:
            out.append("lehmer_inconclusive")
        if self.error is not None:
            out.append("error")
        return out


@dataclass(frozen=True)
class ScanReport:
    """Deterministically ordered per-class reports plus aggregates."""

    config: dict
    classes: tuple[ClassReport, ...]
    summary: dict
    runtime: dict


# ---------------------------------------------------------------------------
# stretch factor and minimal polynomial
# ---------------------------------------------------------------------------

def _factor_entries(fac: Factorization) -> list[tuple[IntPoly, int, int | None]]:
    """(factor, multiplicity, cyclotomic order or None), canonical order."""
    out = []
    for f, m in fac.factors:
        cyc, order = is_cyclotomic(f)
        out.append((f, m, order if cyc else None))
    return out


def _largest_real_root(f: IntPoly) -> RationalInterval:
    iv = _real_isolation_cache(f.coeffs)[-1]
    return refine_root_interval(f, iv, Fraction(1, 1 << 44))


def _dominant_root(entries: Sequence[tuple[IntPoly, int, int | None]],
                   precision: int) -> tuple[RationalInterval, IntPoly, int]:
    """Certified (lambda interval, minpoly, multiplicity) across all factors.

    lambda is the largest real root > 1 over every factor; strict modulus
    dominance over all other roots (of every non-cyclotomic factor) is
    verified before returning.  Cyclotomic factors need no enclosures:
    their roots have modulus exactly one.
    """
    candidates = []
    for f, mult, order in entries:
        if order is not None or f.degree < 1:
            continue
        if sturm_count_above(f, Fraction(1), list(_chain_cache(f.coeffs))) >= 1:
            candidates.append((_largest_real_root(f), f, mult))
    if not candidates:
        raise NoPerronRootError("no factor has a real root greater than one")

    # separate the candidate intervals until the largest is unambiguous
    width = Fraction(1, 1 << 48)
    while True:
        candidates = [(refine_root_interval(f, iv, width), f, mult)
                      for iv, f, mult in candidates]
        candidates.sort(key=lambda t: t[0].lo)
        lam, minpoly, mult = candidates[-1]
        if all(iv.hi < lam.lo for iv, _, _ in candidates[:-1]):
            break
        if any(iv.width == 0 and lam.width == 0 and iv.lo == lam.lo
               for iv, _, _ in candidates[:-1]):
            raise InternalVerificationError(
                "two irreducible factors share the dominant real root")
        width /= 1 << 32

    if mult != 1:
        raise InternalVerificationError(
            "dominant root is a multiple root of the specialization")

    # strict modulus dominance over every root of every non-cyclotomic factor
    noncyc = [f for f, _, order in entries if order is None and f.degree >= 1]
    lam_iv = lam
    for stage in _stages_for_ceiling(precision):
        datas = {}
        ok = True
        for f in noncyc:
            data = _certified_stage(f.coeffs, stage)
            if data is None:
                ok = False
                break
            datas[f] = data
        if not ok:
            continue
        verdict = _check_dominance(datas, minpoly, lam_iv)
        if verdict is None:
            continue
        if verdict:
            return lam_iv, minpoly, mult
        raise NoPerronRootError("largest real root is not modulus-dominant")
    raise PrecisionCeilingError("dominance could not be certified")


def _check_dominance(datas, minpoly: IntPoly, lam: RationalInterval) -> bool | None:
    """True/False when dominance is decided, None when refinement is needed."""
    lam_lo_sq = lam.lo * lam.lo
    lam_hi_sq = lam.hi * lam.hi
    for f, data in datas.items():
        reals = list(data.reals)
        if f == minpoly:
            reals = reals[:-1]  # skip lambda itself
        for iv in reals:
            away = max(abs(iv.lo), abs(iv.hi))
            near = Fraction(0) if iv.lo <= 0 <= iv.hi else min(abs(iv.lo), abs(iv.hi))
            if near > lam.hi:
                return False
            if away >= lam.lo:
                return None
        scale = Fraction(1, 1 << data.scale)
        for a, b, rho in data.pairs:
            hi_re = max(abs(a - rho), abs(a + rho))
            hi_im = abs(b) + rho
            lo_re = 0 if a - rho <= 0 <= a + rho else min(abs(a - rho), abs(a + rho))
            lo_im = max(abs(b) - rho, 0)
            m2_hi = Fraction(hi_re * hi_re + hi_im * hi_im) * scale * scale
            m2_lo = Fraction(lo_re * lo_re + lo_im * lo_im) * scale * scale
            if m2_lo > lam_hi_sq:
                return False
            if m2_hi >= lam_lo_sq:
                return None
    return True


def stretch_factor(theta: MultiLaurentPoly, alpha: CohomClass,
                   precision: int = DEFAULT_PRECISION_CEILING
                   ) -> tuple[RootEnclosure, IntPoly]:
    """Certified stretch-factor enclosure and its minimal polynomial."""
    spec = specialize(theta, alpha)
    if spec.is_zero():
        raise ValueError("specialization vanishes identically")
    fac = factor(spec)
    entries = _factor_entries(fac)
    lam, minpoly, _ = _dominant_root(entries, precision)
    encl = RootEnclosure(lam.lo, lam.hi, Fraction(0), Fraction(0))
    return encl, minpoly


# ---------------------------------------------------------------------------
# trace-field, Lehmer, Schinzel decisions
# ---------------------------------------------------------------------------

def totally_real_trace_field(minpoly: IntPoly) -> bool:
    """Exact decision for Q(lambda + 1/lambda) totally real.

    The trace of a conjugate z is real iff z is real or unimodular, so:
    a non-self-reciprocal irreducible has no unimodular roots and needs
    every root real; a self-reciprocal one is totally real iff its trace
    transform has only real roots.
    """
    if minpoly.degree < 1:
        raise ValueError("degree must be >= 1")
    if minpoly.degree == 1:
        return True
    if reciprocal_type(minpoly) != SELF_RECIPROCAL:
        return sturm_count(minpoly) == minpoly.degree
    q = trace_transform(minpoly)
    return sturm_count(q) == q.degree


def _enclosure_trace_verdict(minpoly: IntPoly, precision: int) -> bool:
    """Totally-real verdict recomputed from certified complex enclosures.

    Every non-real enclosure must either meet the unit circle (with the
    total matching the exact unimodular count) or force a non-real trace.
    """
    if minpoly.degree == 1:
        return True
    on_circle = _unimodular_pair_count(minpoly)

    def want(data):
        scale = Fraction(1, 1 << data.scale)
        meeting = 0
        for a, b, rho in data.pairs:
            box = RootEnclosure((a - rho) * scale, (a + rho) * scale,
                                (b - rho) * scale, (b + rho) * scale)
            if box.meets_unit_circle():
                meeting += 1
        if meeting < on_circle:
            raise InternalVerificationError(
                "fewer enclosures meet the circle than on-circle roots")
        if meeting > on_circle:
            return None
        return len(data.pairs) == on_circle

    return certified_roots(minpoly, want, precision)


def _lehmer_mu0(ratio: Fraction = CERT_RATIO,
                precision: int = DEFAULT_PRECISION_CEILING) -> MeasureInterval:
    """Certified Mahler measure of Lehmer's degree-10 polynomial."""
    global _MU0
    if _MU0 is None:
        _MU0 = mahler_measure_irreducible(LEHMER_POLY, ratio, precision)
    return _MU0


_MU0: MeasureInterval | None = None


def lehmer_flag(f: IntPoly, precision: int = DEFAULT_PRECISION_CEILING) -> bool | None:
    """True when f is certified to have Mahler measure below Lehmer's mu0.

    Expected never; cyclotomic factors are skipped (False), Lehmer's
    polynomial itself and its t -> -t mirror are the exact equality case
    (False).  None means undecidable at the precision ceiling.
    """
    if f.degree < 1:
        return False
    cyc, _ = is_cyclotomic(f)
    if cyc:
        return False
    if f in (LEHMER_POLY, _LEHMER_MIRROR):
        return False
    mu0 = _lehmer_mu0()
    try:
        m = mahler_measure_irreducible(f, CERT_RATIO, precision)
    except PrecisionCeilingError:
        return None
    if m.hi < mu0.lo:
        return True
    if m.lo > mu0.hi:
        return False
    return None


def _fib_lucas(n: int) -> tuple[int, int]:
    """(F_n, L_n) so that phi^n = (L_n + F_n sqrt 5) / 2."""
    f0, f1 = 0, 1
    for _ in range(n):
        f0, f1 = f1, f0 + f1
    l = 2 * f1 - f0  # L_n = 2 F_{n+1} - F_n
    return f0, l


def _cmp_phi_power(r: Fraction, n: int) -> int:
    """Sign of r - phi^n, exactly."""
    f, l = _fib_lucas(n)
    lhs = 2 * r - l  # compare with f * sqrt(5)
    if lhs < 0:
        return -1
    return (lhs * lhs > 5 * f * f) - (lhs * lhs < 5 * f * f)


def schinzel_check(minpoly: IntPoly,
                   precision: int = DEFAULT_PRECISION_CEILING) -> bool | None:
    """Certified M(p) >= phi^(deg/2) for totally-real monic minimal polynomials.

    Returns None when the hypothesis fails (non-monic, a root in
    {0, 1, -1}, or not all roots real); the comparison squares both sides
    so no irrational threshold is ever evaluated numerically.
    """
    if minpoly.degree < 1 or minpoly.lead != 1:
        return None
    if minpoly.constant == 0 or minpoly(1) == 0 or minpoly(-1) == 0:
        return None
    if sturm_count(minpoly) != minpoly.degree:
        return None
    if minpoly.coeffs in ((-1, -1, 1), (-1, 1, 1)):
        return True  # measure is exactly phi, the equality case of the bound
    m = mahler_measure_irreducible(minpoly, CERT_RATIO, precision)
    if _cmp_phi_power(m.lo * m.lo, minpoly.degree) >= 0:
        return True
    if _cmp_phi_power(m.hi * m.hi, minpoly.degree) < 0:
        raise InternalVerificationError(
            "certified violation of the totally-real Mahler lower bound")
    return None


def _log_interval(lo: Fraction, hi: Fraction) -> MeasureInterval:
    """Outward-rounded [log lo, log hi] for 1 < lo <= hi."""
    import mpmath

    bits = 128
    while (lo.numerator << bits) // lo.denominator <= (1 << bits):
        bits *= 2
        if bits > 1 << 14:
            raise PrecisionCeilingError("lambda bound too close to 1 for log")
    lo_n = (lo.numerator << bits) // lo.denominator          # floor
    hi_n = -((-hi.numerator << bits) // hi.denominator)      # ceil
    with mpmath.workprec(bits + 16):
        old = mpmath.iv.prec
        mpmath.iv.prec = bits + 16
        try:
            x = mpmath.iv.mpf([mpmath.mpf(lo_n) / (1 << bits),
                               mpmath.mpf(hi_n) / (1 << bits)])
            y = mpmath.iv.log(x)
            lo_t, hi_t = y._mpi_
            return MeasureInterval(_mpf_tuple_to_frac(lo_t), _mpf_tuple_to_frac(hi_t))
        finally:
            mpmath.iv.prec = old


def _mpf_tuple_to_frac(t) -> Fraction:
    sign, man, exp, _ = t
    man = int(man)
    v = Fraction(-man if sign else man)
    return v * Fraction(2) ** int(exp)


# ---------------------------------------------------------------------------
# per-class analysis
# ---------------------------------------------------------------------------

def _real_count_of_factor(f: IntPoly) -> int:
    """Distinct real roots; self-reciprocal factors go through the half-
    degree trace polynomial, which is much cheaper than a full Sturm chain."""
    if f.degree < 1:
        return 0
    if f.degree == 1:
        return 1
    if f.constant != 0 and reciprocal_type(f) == SELF_RECIPROCAL and f.degree % 2 == 0:
        q = trace_transform(f)
        outside = sturm_count(q) - sturm_count(
            q, RationalInterval(Fraction(-2), Fraction(2)))
        extra = (1 if f(1) == 0 else 0) + (1 if f(-1) == 0 else 0)
        return 2 * outside + extra
    return sturm_count(f, chain=list(_chain_cache(f.coeffs)))


def analyze_class(theta: MultiLaurentPoly, cone: ConeSpec, alpha: CohomClass,
                  precision: int = DEFAULT_PRECISION_CEILING,
                  strict: bool = False) -> ClassReport:
    """Fully populated ClassReport; failures are captured with their stage.

    With strict=True exceptions propagate instead of being recorded, which
    is what the CLI uses to map failures onto exit codes.
    """
    stage = "validate"
    report = ClassReport(alpha=alpha, N=term_count(theta))
    try:
        if len(alpha.coords) != cone.dim:
            raise NotInConeError("class dimension does not match the cone")
        if alpha.is_zero() or not is_primitive(alpha.coords):
            raise NotPrimitiveError(f"{alpha} is not a primitive class")
        if not contains(cone, alpha.coords):
            raise NotInConeError(f"{alpha} is not in the open cone")
        report = replace(report, margin=subcone_margin(cone, alpha.coords),
                         thurston_norm=thurston_norm(cone, alpha.coords))

        stage = "specialize"
        spec = specialize(theta, alpha)
        if spec.is_zero():
            raise ValueError("specialization vanishes identically")
        anomalies: list[str] = []
        rt = reciprocal_type(spec) if spec.constant != 0 else None
        if rt == ANTI_RECIPROCAL:
            anomalies.append("anti_reciprocal_specialization")
        report = replace(report, specialization=spec,
                         degree_proxy_norm=spec.degree,
                         descartes=descartes_bound(spec),
                         self_reciprocal=(rt == SELF_RECIPROCAL))

        stage = "factor"
        fac = factor(spec)
        entries = _factor_entries(fac)
        if any(m > 1 for _, m, _ in entries):
            anomalies.append("non_squarefree_specialization")
        report = replace(
            report, factorization=fac,
            cyclotomic_orders=tuple(order for _, _, order in entries),
            real_root_count=sum(_real_count_of_factor(f) for f, _, _ in entries))

        stage = "stretch_factor"
        lam_iv, minpoly, _ = _dominant_root(entries, precision)
        lam = RootEnclosure(lam_iv.lo, lam_iv.hi, Fraction(0), Fraction(0))
        report = replace(report, minpoly=minpoly, lam=lam,
                         log_lambda=_log_interval(lam_iv.lo, lam_iv.hi))

        stage = "trace_field"
        verdict = totally_real_trace_field(minpoly)
        oracle = _enclosure_trace_verdict(minpoly, precision)
        report = replace(report, totally_real=verdict, enclosure_verdict=oracle)
        if verdict != oracle:
            raise InternalVerificationError(
                "exact and enclosure-based trace verdicts disagree")

        stage = "mahler"
        u = count_unimodular(minpoly)
        m = mahler_measure_irreducible(minpoly, CERT_RATIO, precision)
        a_part, b_part = mahler_split(minpoly, CERT_RATIO, precision)
        flags = [lehmer_flag(f, precision) for f, _, order in entries
                 if order is None]
        if any(fl is True for fl in flags):
            lf: bool | None = True
        elif any(fl is None for fl in flags):
            lf = None
        else:
            lf = False
        report = replace(report, unimodular_count=u, mahler=m,
                         split_A=a_part, split_B=b_part, lehmer_flag=lf,
                         schinzel_ok=schinzel_check(minpoly, precision),
                         anomalies=tuple(anomalies))

        stage = "verify"
        if not (m.lo <= a_part.hi * b_part.hi and a_part.lo * b_part.lo <= m.hi):
            raise InternalVerificationError("mahler split drifted from the measure")
        from .unipoly import divides
        if not divides(minpoly, spec):
            raise InternalVerificationError("minpoly does not divide specialization")
        return report
    except Exception as exc:
        if strict:
            raise
        return replace(report, error=f"{stage}: {exc}")


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

def _scan_worker(payload) -> ClassReport:
    theta, cone, coords, precision = payload
    return analyze_class(theta, cone, CohomClass(coords), precision)


def scan(theta: MultiLaurentPoly, cone: ConeSpec, height_index: int,
         height_bound: int, precision: int = DEFAULT_PRECISION_CEILING,
         workers: int | None = None, config_echo: dict | None = None) -> ScanReport:
    """Analyze every primitive class with 0 < height < bound, in lex order.

    Per-class failures are recorded inline and never abort the scan; the
    output is byte-for-byte reproducible and independent of the worker
    count.
    """
    points = enumerate_primitive(cone, height_index, height_bound)
    nworkers = workers if workers and workers > 0 else (os.cpu_count() or 1)
    payloads = [(theta, cone, pt, precision) for pt in points]
    if nworkers <= 1 or len(points) < 4:
        reports = [_scan_worker(p) for p in payloads]
    else:
        import multiprocessing

        chunk = max(1, len(payloads) // (8 * nworkers))
        with multiprocessing.Pool(nworkers) as pool:
            reports = pool.map(_scan_worker, payloads, chunksize=chunk)
    summary = {
        "classes": len(reports),
        "totally_real": sum(1 for r in reports if r.totally_real is True),
        "not_totally_real": sum(1 for r in reports if r.totally_real is False),
        "errors": sum(1 for r in reports if r.error is not None),
    }
    runtime = {
        "precision_ceiling": precision,
        "height_index": height_index,
        "height_bound": height_bound,
    }
    return ScanReport(config=dict(config_echo or {}), classes=tuple(reports),
                      summary=summary, runtime=runtime)


# ---------------------------------------------------------------------------
# ray studies
# ---------------------------------------------------------------------------

def ray_sequence(theta: MultiLaurentPoly, cone: ConeSpec,
                 direction: Sequence[int], multiples: Sequence[int],
                 precision: int = DEFAULT_PRECISION_CEILING) -> list[dict]:
    """Rows along integer multiples of a primitive in-cone direction.

    Non-primitive multiples are skipped with a note (they name the same
    fibration as the primitive class); each surviving row records the
    certified stretch factor, its log, the norm proxy in use, and the
    product log(lambda) * proxy.
    """
    if not is_primitive(direction):
        raise NotPrimitiveError("ray direction must be primitive")
    if not contains(cone, direction):
        raise NotInConeError("ray direction must lie in the open cone")
    rows: list[dict] = []
    for k in multiples:
        v = tuple(k * x for x in direction)
        row: dict = {"multiple": k, "alpha": v}
        if k < 1:
            row["note"] = "skipped: nonpositive multiple"
        elif k > 1:
            row["note"] = "skipped: non-primitive multiple of the direction"
        else:
            row.update(_ray_row(theta, cone, v, precision))
        rows.append(row)
    return rows


def family_rows(theta: MultiLaurentPoly, cone: ConeSpec,
                classes: Sequence[Sequence[int]],
                precision: int = DEFAULT_PRECISION_CEILING) -> list[dict]:
    """Ray-style rows for an explicit list of primitive classes."""
    rows = []
    for v in classes:
        v = tuple(int(x) for x in v)
        row: dict = {"alpha": v}
        if not is_primitive(v):
            row["note"] = "skipped: non-primitive class"
        elif not contains(cone, v):
            row["note"] = "skipped: outside the cone"
        else:
            row.update(_ray_row(theta, cone, v, precision))
        rows.append(row)
    return rows


def _ray_row(theta: MultiLaurentPoly, cone: ConeSpec, v: tuple[int, ...],
             precision: int) -> dict:
    alpha = CohomClass(v)
    spec = specialize(theta, alpha)
    fac = factor(spec)
    lam_iv, minpoly, _ = _dominant_root(_factor_entries(fac), precision)
    log_iv = _log_interval(lam_iv.lo, lam_iv.hi)
    tn = thurston_norm(cone, v)
    proxy = tn if tn is not None else spec.degree
    return {
        "lambda": MeasureInterval(lam_iv.lo, lam_iv.hi),
        "log_lambda": log_iv,
        "norm_proxy": proxy,
        "norm_is_thurston": tn is not None,
        "product": MeasureInterval(log_iv.lo * proxy, log_iv.hi * proxy),
        "minpoly_degree": minpoly.degree,
    }


def edge_class(cone: ConeSpec, height_index: int, h: int) -> tuple[int, ...] | None:
    """Largest-first-coordinate primitive class at the given height (2D)."""
    if cone.dim != 2:
        raise ValueError("edge families are only defined for 2-dimensional cones")
    other = 1 - height_index
    from .conelattice import _coordinate_bounds

    lo, hi = _coordinate_bounds(cone, height_index, h, other)
    for a in range(hi, lo - 1, -1):
        v = [0, 0]
        v[height_index] = h
        v[other] = a
        tv = tuple(v)
        if contains(cone, tv) and is_primitive(tv):
            return tv
    return None
