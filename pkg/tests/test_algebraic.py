import random
from fractions import Fraction

import numpy as np

from indefdist import intpoly as ip
from indefdist.algebraic import (
    AlgebraicNumber,
    alg_compare,
    alg_equal,
    alg_sign,
    from_rational,
    isolate_roots,
    lambda_to_b,
    negate,
    pretty,
    refine,
)

CUBIC = (-1, -2, 1, 1)  # x^3 + x^2 - 2x - 1


def numeric_roots(poly):
    roots = np.roots(list(reversed(poly)))
    return sorted(r.real for r in roots if abs(r.imag) < 1e-9)


def test_isolate_simple():
    roots = isolate_roots((0, -1, 1))  # x^2 - x
    assert len(roots) == 2
    assert roots[0].lo <= 0 <= roots[0].hi
    assert roots[1].lo <= 1 <= roots[1].hi
    assert roots[0].hi <= roots[1].lo


def test_isolate_cubic_matches_numeric():
    expected = numeric_roots(CUBIC)
    got = isolate_roots(CUBIC)
    assert len(got) == len(expected) == 3
    for a, x in zip(got, expected):
        assert float(a.lo) - 1e-12 <= x <= float(a.hi) + 1e-12
    second = got[1]
    assert alg_compare(second, from_rational(-1)) == 1
    assert alg_compare(second, from_rational(0)) == -1


def test_isolate_repeated_roots_collapse():
    p = ip.mul(ip.mul((-1, 1), (-1, 1)), (2, 1))  # (x-1)^2 (x+2)
    got = isolate_roots(p)
    assert len(got) == 2


def test_isolate_dyadic_and_rational_roots():
    # roots at 0, 1/2, 1/5
    p = ip.mul(ip.mul((0, 1), (-1, 2)), (-1, 5))
    got = isolate_roots(p)
    assert len(got) == 3
    vals = [Fraction(0), Fraction(1, 5), Fraction(1, 2)]
    for a, v in zip(got, vals):
        assert a.lo <= v <= a.hi
        assert alg_compare(a, from_rational(v)) == 0


def test_alg_sign_examples():
    sqrt2 = isolate_roots((-2, 0, 1))[-1]
    assert alg_sign((-1, 1), sqrt2) == 1
    assert alg_sign((-2, 0, 1), sqrt2) == 0
    second = isolate_roots(CUBIC)[1]
    assert alg_sign((-1, 4), second) == -1  # root ~ -0.445 < 1/4


def test_alg_compare_representations():
    a = AlgebraicNumber((-2, 0, 1), Fraction(1), Fraction(2))
    b = AlgebraicNumber((-4, 0, 2), Fraction(1), Fraction(2))
    assert alg_compare(a, b) == 0
    assert alg_compare(from_rational(1), from_rational(2)) == -1


def test_alg_compare_close_values():
    # 1/5 vs the larger root of 5x^2 + x - 1 (~0.3583)
    other = isolate_roots((-1, 1, 5))[-1]
    assert alg_compare(from_rational(Fraction(1, 5)), other) == -1


def test_refine_examples():
    sqrt2 = isolate_roots((-2, 0, 1))[-1]
    r = refine(sqrt2, Fraction(1, 100))
    assert r.width() <= Fraction(1, 100)
    tight = refine(sqrt2, Fraction(1, 1000))
    assert Fraction(141, 100) < tight.lo and tight.hi < Fraction(142, 100)
    three = from_rational(3)
    assert refine(three, Fraction(1, 10)) == three
    narrow = refine(sqrt2, Fraction(1, 8))
    assert refine(narrow, 1) == narrow  # idempotent on already-narrow input


def test_refine_preserves_sign_and_order():
    rng = random.Random(99)
    for _ in range(50):
        coeffs = [rng.randint(-4, 4) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 4)]
        p = ip.normalize(coeffs)
        if ip.degree(p) < 1:
            continue
        roots = isolate_roots(p)
        for a in roots:
            expr = (rng.randint(-3, 3), rng.randint(-3, 3), 1)
            before = alg_sign(expr, a)
            after = alg_sign(expr, refine(a, Fraction(1, 1 << 20)))
            assert before == after


def test_total_order_random_triples():
    rng = random.Random(123)
    pool = []
    while len(pool) < 30:
        coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(1, 4))] + [rng.randint(1, 5)]
        p = ip.normalize(coeffs)
        if ip.degree(p) < 1:
            continue
        pool.extend(isolate_roots(p))
    for _ in range(300):
        a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        ab, ba = alg_compare(a, b), alg_compare(b, a)
        assert ab == -ba  # antisymmetry
        if ab <= 0 and alg_compare(b, c) <= 0:
            assert alg_compare(a, c) <= 0  # transitivity


def test_lambda_to_b():
    one = from_rational(1)
    assert lambda_to_b(one, 1).rational_value() == Fraction(1, 2)
    assert lambda_to_b(one, -1).rational_value() == Fraction(-1, 2)
    golden = isolate_roots((-1, 1, 1))[-1]  # (-1+sqrt5)/2
    b = lambda_to_b(golden, 1)
    # b = (3 - sqrt5)/2 is a root of x^2 - 3x + 1
    assert alg_sign((1, -3, 1), b) == 0
    assert 0 < float(b) < 1
    second = isolate_roots(CUBIC)[1]
    bneg = lambda_to_b(second, 1)
    assert -1 < float(bneg) < 0


def test_negate():
    sqrt2 = isolate_roots((-2, 0, 1))[-1]
    m = negate(sqrt2)
    assert alg_sign((0, 1), m) == -1
    assert alg_equal(negate(m), sqrt2)


def test_pretty():
    assert pretty(from_rational(Fraction(1, 5))) == "1/5"
    golden = isolate_roots((-1, 1, 1))[-1]
    assert "√5" in pretty(golden)


def test_json_roundtrip():
    second = isolate_roots(CUBIC)[1]
    data = second.to_json()
    back = AlgebraicNumber.from_json(data)
    assert back == second
