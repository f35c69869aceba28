import random
from fractions import Fraction

import numpy as np
import pytest

from indefdist import intpoly as ip


def real_root_count_oracle(poly, lo, hi):
    """Independent numeric count of distinct real roots in (lo, hi)."""
    roots = np.roots(list(reversed(poly)))
    reals = [r.real for r in roots if abs(r.imag) < 1e-9]
    reals.sort()
    distinct = []
    for r in reals:
        if not distinct or abs(r - distinct[-1]) > 1e-6:
            distinct.append(r)
    return sum(1 for r in distinct if lo < r < hi)


def test_sturm_count_sqrt2():
    assert ip.sturm_count((-2, 0, 1), 1, 2) == 1


def test_sturm_count_cubic_oracle():
    poly = (-1, -2, 1, 1)  # x^3 + x^2 - 2x - 1
    assert real_root_count_oracle(poly, -2, 2) == 3
    assert ip.sturm_count(poly, -2, 2) == 3


def test_sturm_count_double_root():
    # (x-1)^2 has one distinct root in (0, 2)
    assert ip.sturm_count((1, -2, 1), 0, 2) == 1


def test_sturm_count_endpoint_root_raises():
    with pytest.raises(ip.EndpointRootError):
        ip.sturm_count((1, -2, 1), 1, 2)  # lo = 1 is a root of (x-1)^2
    with pytest.raises(ip.EndpointRootError):
        ip.sturm_count((0, 1), 0, 1)


def test_squarefree_decompose_examples():
    # (x-1)^2 (x+2) = x^3 - 3x + 2
    got = ip.squarefree_decompose((2, -3, 0, 1))
    assert got == [((2, 1), 1), ((-1, 1), 2)]
    cubic = (-1, -2, 1, 1)
    assert ip.squarefree_decompose(cubic) == [(cubic, 1)]
    assert ip.squarefree_decompose((0, 0, 0, 0, 1)) == [((0, 1), 4)]


def test_squarefree_multiply_back_random():
    rng = random.Random(20240811)
    for _ in range(1000):
        deg = rng.randint(1, 8)
        p = ip.normalize([rng.randint(-5, 5) for _ in range(deg)] + [rng.randint(1, 5)])
        if ip.degree(p) < 1:
            continue
        parts = ip.squarefree_decompose(p)
        prod = ip.ONE
        for f, m in parts:
            for _ in range(m):
                prod = ip.mul(prod, f)
        # equal up to a rational constant: cross-multiplied coefficients match
        lead_p, lead_q = p[-1], prod[-1]
        assert ip.degree(prod) == ip.degree(p)
        assert ip.normalize([c * lead_q for c in p]) == ip.normalize(
            [c * lead_p for c in prod]
        )
        for i, (f, _) in enumerate(parts):
            assert ip.degree(ip.gcd(f, ip.derivative(f))) == 0
            for g, _ in parts[i + 1 :]:
                assert ip.degree(ip.gcd(f, g)) == 0


def test_gcd_and_div_exact():
    a = ip.mul((1, 1), (-2, 0, 1))
    b = ip.mul((1, 1), (3, 1))
    assert ip.gcd(a, b) == (1, 1)
    assert ip.div_exact(a, (1, 1)) == (-2, 0, 1)
    with pytest.raises(ValueError):
        ip.div_exact((1, 1, 1), (1, 1))


def test_descartes_vs_sturm_all_real_rooted():
    rng = random.Random(7)
    for _ in range(200):
        roots = [rng.randint(-6, 6) for _ in range(rng.randint(1, 6))]
        p = ip.ONE
        for r in roots:
            p = ip.mul(p, (-r, 1))
        e = ip.root_bound_exponent(p)
        bound = 1 << e
        expected_pos = sum(1 for r in roots if r > 0)
        assert ip.descartes_positive(p) == expected_pos
        assert ip.descartes_negative(p) == sum(1 for r in roots if r < 0)
        sf = ip.squarefree_part(p)
        chain = ip.sturm_chain(sf)
        distinct_pos = len({r for r in roots if r > 0})
        assert ip.count_roots_halfopen(chain, Fraction(0), Fraction(bound)) == distinct_pos


def test_resultant_common_root():
    # share the root 2
    p = ip.mul((-2, 1), (1, 1))
    q = ip.mul((-2, 1), (5, 1))
    assert ip.resultant(p, q) == 0
    assert ip.resultant((-2, 1), (-3, 1)) != 0
    # Res(x^2-2, x^2-3) = 1 (classical)
    assert ip.resultant((-2, 0, 1), (-3, 0, 1)) == 1


def test_moebius_lambda_to_b():
    # t = 1 -> b = 1/2: polynomial for t is x - 1, image must vanish at 1/2
    img = ip.moebius_lambda_to_b((-1, 1))
    assert ip.evaluate(img, Fraction(1, 2)) == 0
    # golden-ratio eigenvalue x^2 + x - 1, b = (3 - sqrt 5)/2 satisfies x^2-3x+1
    img2 = ip.moebius_lambda_to_b((-1, 1, 1))
    assert ip.monic_primitive(img2) == (1, -3, 1)
