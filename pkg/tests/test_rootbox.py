import random
from fractions import Fraction

import pytest

from teichscan.pipeline import LEHMER_POLY
from teichscan.rootbox import (
    MeasureInterval,
    NoPerronRootError,
    PrecisionCeilingError,
    RootEnclosure,
    complex_enclosures,
    count_unimodular,
    isolate_real_roots,
    mahler_measure,
    mahler_split,
    perron_root,
)
from teichscan.unipoly import (
    IntPoly,
    RationalInterval,
    cyclotomic_poly,
    squarefree_part,
    sturm_count,
    trace_transform,
)


def P(*coeffs_high_first):
    return IntPoly(tuple(reversed(coeffs_high_first)))


GOLDEN = P(1, -3, 1)          # roots (3 +- sqrt5)/2
QUARTIC = P(1, -1, -1, -1, 1)  # lambda ~ 1.7220838


def as_frac(s: str) -> Fraction:
    return Fraction(s)


class TestIsolation:
    def test_golden_quadratic(self):
        ivs = isolate_real_roots(GOLDEN)
        assert len(ivs) == 2
        lo_root = as_frac("0.3819660112501051")   # (3 - sqrt5)/2
        hi_root = as_frac("2.618033988749895")    # (3 + sqrt5)/2
        assert ivs[0].lo <= lo_root <= ivs[0].hi + Fraction(1, 10**12)
        assert ivs[1].lo - Fraction(1, 10**12) <= hi_root <= ivs[1].hi + Fraction(1, 10**12)

    def test_no_real_roots(self):
        assert isolate_real_roots(P(1, 0, 1)) == []

    def test_three_roots(self):
        ivs = isolate_real_roots(P(1, 0, -1, 0))
        assert len(ivs) == 3
        for iv, root in zip(ivs, (-1, 0, 1)):
            assert iv.lo <= root <= iv.hi

    def test_intervals_disjoint_and_sorted(self):
        p = P(1, 0, -5, 0, 4)  # roots +-1, +-2
        ivs = isolate_real_roots(p)
        assert len(ivs) == 4
        for a, b in zip(ivs, ivs[1:]):
            assert a.hi < b.lo

    def test_rational_roots_can_pin_exactly(self):
        ivs = isolate_real_roots(P(2, -1))  # root 1/2
        assert len(ivs) == 1
        assert ivs[0].contains(Fraction(1, 2))


class TestEnclosures:
    def test_pure_imaginary_pair(self):
        boxes = complex_enclosures(P(1, 0, 1))
        assert len(boxes) == 2
        assert all(not b.is_real for b in boxes)
        ups = [b for b in boxes if b.im_lo > 0]
        assert len(ups) == 1
        b = ups[0]
        assert b.re_lo <= 0 <= b.re_hi
        assert b.im_lo <= 1 <= b.im_hi

    def test_quartic_split_two_real_one_pair(self):
        boxes = complex_enclosures(QUARTIC)
        assert len(boxes) == 4
        assert sum(1 for b in boxes if b.is_real) == 2 == sturm_count(QUARTIC)

    def test_mixed_product(self):
        p = P(1, -2) * P(1, 0, 1)
        boxes = complex_enclosures(p)
        assert len(boxes) == 3
        assert sum(1 for b in boxes if b.is_real) == 1

    def test_conjugation_closure_and_disjointness(self):
        p = P(1, 0, 0, 0, 0, 0, 0, 1)  # t^7 + 1
        boxes = complex_enclosures(p)
        assert len(boxes) == 7
        key = lambda b: (b.re_lo, b.re_hi, b.im_lo, b.im_hi)
        mirrored = sorted(key(b.conjugate()) for b in boxes)
        assert mirrored == sorted(key(b) for b in boxes)
        for i, a in enumerate(boxes):
            for b in boxes[i + 1:]:
                assert a.disjoint_from(b)

    def test_linear_exact(self):
        (b,) = complex_enclosures(P(3, -2))
        assert b.is_real and b.re_lo == b.re_hi == Fraction(2, 3)

    def test_tight_cluster_requires_escalation_but_succeeds(self):
        # roots 1 +- i * 2^-60: far below float64 resolution near 1
        eps = 1 << 120
        p = IntPoly((eps + 1, -2 * eps, eps))
        boxes = complex_enclosures(p)
        assert len(boxes) == 2
        assert all(not b.is_real for b in boxes)

    def test_real_pair_below_grid_resolution(self):
        # roots 1 +- 2^-100: closer than the stage-0 center grid, so the
        # first stage cannot certify; later stages must
        big = 1 << 200
        p = IntPoly((big - 1, -2 * (1 << 100) * (1 << 100), big))
        boxes = complex_enclosures(p)
        assert len(boxes) == 2 and all(b.is_real for b in boxes)
        with pytest.raises(PrecisionCeilingError):
            complex_enclosures(p, precision_bits=72)


class TestPerron:
    def test_golden(self):
        e = perron_root(GOLDEN)
        assert e.is_real
        assert e.re_lo <= as_frac("2.618033988749895") <= e.re_hi + Fraction(1, 10**13)
        assert e.re_hi - e.re_lo < Fraction(1, 10**12)

    def test_quartic(self):
        e = perron_root(QUARTIC)
        assert as_frac("1.722083805738") <= e.re_lo
        assert e.re_hi <= as_frac("1.722083805740")

    def test_trivial_linear(self):
        e = perron_root(P(1, -2))
        assert e.re_lo == e.re_hi == 2

    def test_no_root_above_one(self):
        with pytest.raises(NoPerronRootError):
            perron_root(P(1, 0, 1))
        with pytest.raises(NoPerronRootError):
            perron_root(P(1, 1))  # root -1

    def test_not_dominant(self):
        p = P(1, 0, -2) * P(1, 3)  # sqrt(2) beaten by -3
        with pytest.raises(NoPerronRootError):
            perron_root(p)

    def test_dominance_invariant(self):
        for p in (GOLDEN, QUARTIC, LEHMER_POLY):
            e = perron_root(p)
            chain_free = sturm_count(p, RationalInterval(e.re_hi, Fraction(10**9)))
            assert chain_free == 0
            lam_lo = e.re_lo
            for b in complex_enclosures(p):
                if b.is_real and b.real_interval().contains(e.re_lo):
                    continue
                assert b.modulus_sq_bounds()[1] < lam_lo * lam_lo


class TestUnimodular:
    def test_spec_examples(self):
        assert count_unimodular(P(1, 0, -1, 0, 1)) == 4       # Phi_12
        assert count_unimodular(GOLDEN) == 0
        assert count_unimodular(LEHMER_POLY) == 8             # Salem

    def test_pm_one_roots_counted(self):
        assert count_unimodular(P(1, 0, -1)) == 2             # t^2 - 1
        assert count_unimodular(P(1, 1)) == 1

    def test_constructed_products(self):
        rng = random.Random(11)
        for _ in range(25):
            p = IntPoly((1,))
            expect = 0
            for n in rng.sample([1, 2, 3, 4, 5, 6, 12], rng.randrange(1, 4)):
                c = cyclotomic_poly(n)
                from teichscan.unipoly import divides

                if divides(c, p):
                    continue
                p = p * c
                expect += c.degree
            for _ in range(rng.randrange(0, 3)):
                a = rng.choice([-5, -4, -3, 3, 4, 5])  # |a| > 2: off circle
                q = IntPoly((1, -a, 1))
                p = p * q
            sq = squarefree_part(p)
            if sq != p or p.constant == 0:
                continue
            assert count_unimodular(p) == expect

    def test_trace_side_correspondence(self):
        # unimodular pairs of p = roots of the trace transform inside (-2, 2)
        rng = random.Random(5)
        for _ in range(20):
            traces = [rng.randrange(-6, 7) for _ in range(rng.randrange(1, 5))]
            if any(abs(t) == 2 for t in traces) or len(set(traces)) != len(traces):
                continue
            p = IntPoly((1,))
            for a in traces:
                p = p * IntPoly((1, -a, 1))
            q = trace_transform(p)
            inside = sturm_count(q, RationalInterval(Fraction(-2), Fraction(2)))
            assert inside == sum(1 for a in traces if abs(a) < 2)
            assert count_unimodular(p) == 2 * inside
            boxes = complex_enclosures(p)
            n_real = sum(1 for b in boxes if b.is_real)
            assert n_real == 2 * sum(1 for a in traces if abs(a) > 2)


class TestMahler:
    def test_golden_ratio(self):
        m = mahler_measure(P(1, -1, -1))
        phi_lo, phi_hi = as_frac("1.6180339887498948"), as_frac("1.6180339887498950")
        assert m.lo <= phi_hi and phi_lo <= m.hi
        assert m.ratio_ok()

    def test_cyclotomic_exact_one(self):
        assert mahler_measure(P(1, 0, -1, 0, 1)) == MeasureInterval.exact(1)
        assert mahler_measure(cyclotomic_poly(105)) == MeasureInterval.exact(1)

    def test_content_and_unit_roots(self):
        assert mahler_measure(P(2, -2)) == MeasureInterval.exact(2)
        assert mahler_measure(IntPoly.monomial(3, 5)) == MeasureInterval.exact(5)

    def test_lehmer_value(self):
        m = mahler_measure(LEHMER_POLY)
        assert (m.hi - m.lo) / m.lo < Fraction(1, 10**10)
        assert m.lo <= as_frac("1.17628081825991750654") <= m.hi

    def test_multiplicativity_sample(self):
        rng = random.Random(99)
        done = 0
        while done < 30:
            f = IntPoly([rng.randrange(-5, 6) for _ in range(rng.randrange(2, 9))])
            g = IntPoly([rng.randrange(-5, 6) for _ in range(rng.randrange(2, 9))])
            if f.degree < 1 or g.degree < 1:
                continue
            mf, mg, mfg = mahler_measure(f), mahler_measure(g), mahler_measure(f * g)
            assert mfg.intersects(mf * mg)
            done += 1

    def test_split_spec_examples(self):
        A, B = mahler_split(GOLDEN)
        assert B == MeasureInterval.exact(1)
        assert A.lo <= as_frac("2.618033988749895") <= A.hi
        A, B = mahler_split(P(1, 0, -1, 0, 1))
        assert A == MeasureInterval.exact(1) and B == MeasureInterval.exact(1)
        A, B = mahler_split(LEHMER_POLY)
        assert B == MeasureInterval.exact(1)
        assert A.lo <= as_frac("1.176280818259918") <= A.hi

    def test_split_with_nonreal_offcircle(self):
        # t^4 - 2t^3 + t^2 - 2t + 1: reciprocal, no unimodular roots,
        # one real pair and one non-real pair off the circle
        p = P(1, -2, 1, -2, 1)
        assert count_unimodular(p) == 0
        A, B = mahler_split(p)
        assert A.lo > 1 and B.lo > 1
        m = mahler_measure(p)
        prod = A * B
        assert m.intersects(prod)

    def test_split_requires_monic(self):
        with pytest.raises(ValueError):
            mahler_split(P(2, -1))


class TestSqrtBounds:
    def test_directed(self):
        from teichscan.rootbox import sqrt_lower, sqrt_upper

        for q in (Fraction(2), Fraction(5, 7), Fraction(10**12, 7)):
            lo, hi = sqrt_lower(q), sqrt_upper(q)
            assert lo * lo <= q <= hi * hi
            assert hi - lo < Fraction(1, 10**20) * max(1, hi)
