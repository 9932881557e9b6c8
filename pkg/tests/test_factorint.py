import random

import pytest

from teichscan.factorint import Factorization, factor, is_irreducible, \
    modular_factor_degrees
from teichscan.groupring import CohomClass, specialize
from teichscan.unipoly import IntPoly, content_and_primitive, divides, exact_div


def P(*coeffs_high_first):
    return IntPoly(tuple(reversed(coeffs_high_first)))


# ---------------------------------------------------------------------------
# independent oracle for degree <= 4: bounded divisor enumeration
# (rational-root search plus exhaustive low-degree divisor candidates)
# ---------------------------------------------------------------------------

def _divisors(n):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _oracle_irreducible_factors(p: IntPoly) -> list[IntPoly]:
    if p.degree == 0:
        return []
    if p.degree == 1:
        return [p]
    height = 2 ** p.degree * int(sum(c * c for c in p.coeffs) ** 0.5 + 1)
    for deg in (1, 2):
        if deg >= p.degree and p.degree != deg:
            continue
        if p.degree < deg:
            continue
        for a in _divisors(p.lead):
            for c in _divisors(p.constant):
                for sc in (c, -c):
                    candidates = []
                    if deg == 1:
                        candidates.append(IntPoly((sc, a)))
                    else:
                        candidates.extend(IntPoly((sc, b, a))
                                          for b in range(-height, height + 1))
                    for g in candidates:
                        if g.degree != deg:
                            continue
                        _, gp = content_and_primitive(g)
                        if gp.degree == deg and divides(gp, p):
                            return [gp] + _oracle_irreducible_factors(
                                exact_div(p, gp))
    return [p]  # no factor of degree <= 2 for degree <= 4 means irreducible


def oracle_factor(p: IntPoly):
    """(unit, content, shift, sorted factor multiset) for deg(p) <= 4."""
    assert not p.is_zero()
    shift = p.valuation()
    body = p.shift_down(shift)
    cont, prim = content_and_primitive(body)
    unit = -1 if cont < 0 else 1
    factors = sorted((f.coeffs for f in _oracle_irreducible_factors(prim)
                      if f.degree >= 1))
    return unit, abs(cont), shift, factors


def _as_oracle_shape(fac: Factorization):
    flat = []
    for f, m in fac.factors:
        flat.extend([f.coeffs] * m)
    return fac.unit, fac.content, fac.monomial_shift, sorted(flat)


# ---------------------------------------------------------------------------
# golden factorizations
# ---------------------------------------------------------------------------

def test_factor_example1_9_14(theta1):
    spec = specialize(theta1, CohomClass((9, 14)))
    fac = factor(spec)
    assert fac.unit == 1 and fac.content == 1 and fac.monomial_shift == 0
    degs = [f.degree for f, _ in fac.factors]
    assert degs == [2, 4, 22]
    assert fac.factors[0][0] == P(1, -1, 1)
    assert fac.factors[1][0] == P(1, 0, -1, 0, 1)
    assert is_irreducible(fac.factors[2][0])
    assert all(m == 1 for _, m in fac.factors)
    assert fac.reassemble() == spec


def test_factor_example2_7_18(theta2):
    spec = specialize(theta2, CohomClass((7, 18)))
    fac = factor(spec)
    want = [
        P(1, -1, 1),
        P(1, 1, 1, 1, 1),
        P(1, 0, 0, -1, -1, 1, 1, 1, -1, -1, 0, 0, 1),
        P(1, 0, -1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, -1, 0, 1),
    ]
    assert [f for f, _ in fac.factors] == want
    assert all(m == 1 for _, m in fac.factors)


def test_irreducibility_golden(theta1, theta2):
    assert is_irreducible(specialize(theta2, CohomClass((6, 17))))
    assert is_irreducible(specialize(theta1, CohomClass((5, 14))))
    assert not is_irreducible(P(1, 0, -1))


def test_factor_difference_of_squares():
    fac = factor(P(1, 0, -1))
    assert [f for f, _ in fac.factors] == [P(1, -1), P(1, 1)]


def test_factor_handles_unit_content_shift():
    p = IntPoly((0, 0, -6, -6))  # -6 t^2 (t + 1)
    fac = factor(p)
    assert fac.unit == -1 and fac.content == 6 and fac.monomial_shift == 2
    assert fac.factors == ((P(1, 1), 1),)
    assert fac.reassemble() == p


def test_factor_multiplicities():
    p = P(1, -1) ** 3 * P(1, 1) * 2
    fac = factor(p)
    assert fac.content == 2
    assert fac.factors == ((P(1, -1), 3), (P(1, 1), 1))
    assert fac.reassemble() == p


def test_factor_zero_rejected():
    with pytest.raises(ValueError):
        factor(IntPoly.zero())


def test_canonical_factor_order_deterministic():
    p = P(1, 0, -1) * P(1, 1, 1) * P(1, -5, 6)
    a = factor(p)
    b = factor(p)
    assert a == b
    degs = [f.degree for f, _ in a.factors]
    assert degs == sorted(degs)


# ---------------------------------------------------------------------------
# oracle comparison and properties on random polynomials
# ---------------------------------------------------------------------------

def test_matches_degree4_oracle():
    rng = random.Random(20250810)
    checked = 0
    while checked < 300:
        deg = rng.randrange(1, 5)
        coeffs = [rng.randrange(-9, 10) for _ in range(deg)] + [rng.choice(
            [-3, -2, -1, 1, 2, 3])]
        p = IntPoly(coeffs)
        if p.degree < 1:
            continue
        assert _as_oracle_shape(factor(p)) == oracle_factor(p), p.to_text()
        checked += 1


def test_round_trip_and_modp_consistency_random():
    rng = random.Random(777)
    checked = 0
    while checked < 120:
        deg = rng.randrange(2, 25)
        coeffs = [rng.randrange(-12, 13) for _ in range(deg)] + [
            rng.choice([-2, -1, 1, 2])]
        p = IntPoly(coeffs)
        if p.degree < 2:
            continue
        fac = factor(p)
        assert fac.reassemble() == p
        for f, _ in fac.factors:
            assert f.lead > 0
            assert content_and_primitive(f)[0] == 1
        checked += 1


def test_modp_degree_refinement():
    rng = random.Random(4242)
    for _ in range(40):
        deg = rng.randrange(4, 22)
        p = IntPoly([rng.randrange(-9, 10) for _ in range(deg)] + [1])
        from teichscan.unipoly import squarefree_part

        p = squarefree_part(p)
        if p.degree < 2:
            continue
        fac = factor(p)
        primes = _three_good_primes(p)
        for q in primes:
            whole = modular_factor_degrees(p, q)
            pieces: list[int] = [1] * fac.monomial_shift
            for f, _ in fac.factors:
                if f.degree >= 1:
                    pieces.extend(modular_factor_degrees(f, q))
            assert sorted(pieces) == whole


def _three_good_primes(p: IntPoly):
    from teichscan import _modp

    out = []
    q = 31
    while len(out) < 3:
        while True:
            q += 2
            if all(q % r for r in range(2, int(q ** 0.5) + 1)):
                break
        fp = _modp.from_coeffs(p.coeffs, q)
        if p.lead % q == 0 or _modp.deg(fp) != p.degree:
            continue
        if _modp.is_squarefree(fp, q):
            out.append(q)
    return out
