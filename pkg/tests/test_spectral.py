import random
from fractions import Fraction

import numpy as np
import pytest

from indefdist import intpoly as ip
from indefdist import ratmat
from indefdist import spectral as sp
from indefdist.algebraic import alg_sign, isolate_roots
from indefdist.quotient import NumberContext, charpoly_elements, solve_linear


def J(n):
    return [[1] * n for _ in range(n)]


def JminusI(n):
    return [[0 if i == j else 1 for j in range(n)] for i in range(n)]


def cycle(n):
    return [[1 if abs(i - j) in (1, n - 1) else 0 for j in range(n)] for i in range(n)]


def path3():
    return [[0, 1, 0], [1, 0, 1], [0, 1, 0]]


def centered(mat):
    n = len(mat)
    p = [[Fraction(-1, n) + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    return ratmat.mat_mul(ratmat.mat_mul(p, [[Fraction(x) for x in row] for row in mat]), p)


def test_charpoly_int_basics():
    assert ratmat.charpoly_int([[1, 0], [0, 1]]) == (1, -2, 1)  # (x-1)^2
    assert ratmat.charpoly_int(J(3)) == (0, 0, -3, 1)  # x^2 (x-3)


def test_charpoly_pentagon_centered():
    poly, s = sp.char_poly(centered(cycle(5)))
    assert s == 5
    expected = ip.mul((0, 1), ip.mul((-25, 5, 1), (-25, 5, 1)))
    assert poly == expected  # x (x^2+5x-25)^2, roots 5*(2cos(2pi k/5))


def test_signature_examples():
    assert sp.signature([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).as_pair() == (3, 0)
    assert sp.signature(JminusI(3)).as_pair() == (1, 2)


def test_signature_float_oracle_random():
    rng = random.Random(42)
    checked = 0
    while checked < 300:
        n = rng.randint(2, 8)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                m[i][j] = m[j][i] = v
        eig = np.linalg.eigvalsh(np.array([[float(x) for x in row] for row in m]))
        if min(abs(e) for e in eig) < 1e-6:
            continue
        expected = (int(sum(e > 0 for e in eig)), int(sum(e < 0 for e in eig)))
        assert sp.signature(m).as_pair() == expected
        checked += 1


def test_main_polynomial():
    assert sp.main_polynomial(J(4)) == (-4, 1)  # x - n
    assert sp.main_polynomial(cycle(5)) == (-2, 1)  # k-regular: x - k
    assert sp.main_polynomial(path3()) == (-2, 0, 1)  # x^2 - 2, Krylov oracle
    cp, s = sp.char_poly(path3())
    assert s == 1
    # main polynomial divides the characteristic polynomial
    assert ip.degree(ip.gcd(cp, sp.main_polynomial(path3()))) == ip.degree(
        sp.main_polynomial(path3())
    )


def test_main_angles_rational():
    ms = sp.main_angles(JminusI(3))
    mains = [e for e in ms.entries if e.is_main]
    assert len(mains) == 1
    assert mains[0].eigenvalue.rational_value() == 2
    assert mains[0].beta_squared == 1
    others = [e for e in ms.entries if not e.is_main]
    assert others[0].eigenvalue.rational_value() == -1
    assert others[0].multiplicity == 2


def test_main_angles_path3_projector_oracle():
    ms = sp.main_angles(path3())
    mains = [e for e in ms.entries if e.is_main]
    assert len(mains) == 2
    # numeric projector oracle
    a = np.array([[0.0, 1, 0], [1, 0, 1], [0, 1, 0]])
    w, v = np.linalg.eigh(a)
    j = np.ones(3)
    for entry in mains:
        lam = float(entry.eigenvalue)
        cols = [k for k in range(3) if abs(w[k] - lam) < 1e-9]
        e = sum(np.outer(v[:, k], v[:, k]) for k in cols)
        beta2 = j @ e @ j / 3
        assert abs(float(entry.beta_squared) - beta2) < 1e-10
    zero = [e for e in ms.entries if not e.is_main]
    assert len(zero) == 1 and zero[0].eigenvalue.rational_value() == 0


def test_harmonic_main_sum():
    sign, val = sp.harmonic_main_sum_sign(JminusI(3))
    assert (sign, val) == (1, Fraction(1, 2))
    neg = [[-x for x in row] for row in JminusI(3)]
    sign2, val2 = sp.harmonic_main_sum_sign(neg)
    assert (sign2, val2) == (-1, Fraction(-1, 2))
    # 0 a main eigenvalue: P = I - J/n has j in its kernel
    n = 3
    p = [[Fraction(-1, n) + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    with pytest.raises(sp.JNotInRangeError):
        sp.harmonic_main_sum_sign(p)


def complement_rows(a1):
    n = len(a1)
    return [[0 if i == j else 1 - a1[i][j] for j in range(n)] for i in range(n)]


def test_bivariate_consistency():
    a1 = cycle(5)
    a2 = complement_rows(a1)
    bi = sp.char_poly_bivariate(a1, a2, 1)
    # t = 1 slice equals char of -(J - I)
    slice1 = sp.substitute_rational(bi, Fraction(1))
    direct = ratmat.charpoly_int([[-x for x in row] for row in JminusI(5)])
    assert slice1 == direct
    # rational t slice matches a direct exact computation
    t = Fraction(1, 2)
    slice_half = sp.substitute_rational(bi, t)
    cleared = [
        [-(a1[i][j] * 2 + a2[i][j]) for j in range(5)] for i in range(5)
    ]  # 2*(A1 + 1/2 A2)
    direct2 = ratmat.charpoly_int(cleared)
    # slice_half has roots at v*eigenvalues with v = 2: identical polynomials
    assert slice_half == direct2


def test_bivariate_random_rational_slices():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(3, 6)
        a1 = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a1[i][j] = a1[j][i] = rng.randint(0, 1)
        a2 = complement_rows(a1)
        bi = sp.char_poly_bivariate(a1, a2, 1)
        t = Fraction(rng.randint(-3, 3), rng.randint(1, 5))
        got = sp.substitute_rational(bi, t)
        v = t.denominator
        cleared = [
            [int(-(a1[i][j] * v + a2[i][j] * t.numerator)) for j in range(n)]
            for i in range(n)
        ]
        assert got == ratmat.charpoly_int(cleared)


def test_signature_at_algebraic_golden():
    a1 = cycle(5)
    a2 = complement_rows(a1)
    bi = sp.char_poly_bivariate(a1, a2, 1)
    # rational slice agrees with the scalar engine
    sig0 = sp.signature_at_algebraic(bi, Fraction(0))
    assert sig0.as_pair() == sp.signature([[-x for x in row] for row in cycle(5)]).as_pair()
    # b = (3 - sqrt5)/2 ~ 0.382, defining poly x^2 - 3x + 1
    b = isolate_roots((1, -3, 1))[0]
    sig = sp.signature_at_algebraic(bi, b)
    assert sig.positives + sig.negatives <= 5
    # cross-check against a float slice
    bf = float(b)
    m = np.array(
        [[-(a1[i][j] + bf * a2[i][j]) for j in range(5)] for i in range(5)]
    )
    eig = np.linalg.eigvalsh(m)
    expected = (int(sum(e > 1e-9 for e in eig)), int(sum(e < -1e-9 for e in eig)))
    assert sig.as_pair() == expected


def test_charpoly_batch_mod_matches_exact():
    rng = random.Random(11)
    mats = []
    for _ in range(40):
        n = 6
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = rng.randint(-20, 20)
        mats.append(a)
    arr = np.array(mats, dtype=np.int64)
    prime = 268_435_399
    batched = ratmat.charpoly_batch_mod(arr, prime)
    for a, row in zip(mats, batched):
        exact = ratmat.charpoly_int(a)
        for k in range(7):
            c = exact[k] if k < len(exact) else 0
            assert c % prime == row[k] % prime


def test_repeated_root_filter():
    # P A P of C5 has repeated nonzero eigenvalues; a path's does not
    def centered_int(mat):
        n = len(mat)
        deg = [sum(row) for row in mat]
        tot = sum(deg)
        return [
            [n * n * mat[i][j] - n * (deg[i] + deg[j]) + tot for j in range(n)]
            for i in range(n)
        ]

    c5 = centered_int(cycle(5))
    p5 = centered_int(
        [[1 if abs(i - j) == 1 else 0 for j in range(5)] for i in range(5)]
    )
    mask = ratmat.repeated_nonzero_root_filter(np.array([c5, p5], dtype=np.int64))
    assert mask[0]
    assert not mask[1]


def test_quotient_field_basics():
    golden = isolate_roots((-1, 1, 1))[-1]  # root of x^2 + x - 1
    ctx = NumberContext(golden)
    t = ctx.generator()
    # t^2 = 1 - t in this field
    sq = ctx.mul(t, t)
    assert sq == ctx.sub(ctx.one(), t)
    inv = ctx.inverse(t)  # 1/t = t + 1 since t^2 + t = 1
    assert inv == ctx.add(t, ctx.one())
    val = ctx.to_algebraic(ctx.add(t, ctx.one()))
    # t + 1 = (1+sqrt5)/2 is a root of x^2 - x - 1
    assert alg_sign((-1, -1, 1), val) == 0


def test_quotient_dynamic_split():
    # start with the reducible square-free modulus (x^2-2)(x^2-3)
    prod = ip.mul((-2, 0, 1), (-3, 0, 1))
    roots = isolate_roots(prod)
    sqrt2 = [r for r in roots if alg_sign((-2, 0, 1), r) == 0 and r.lo > 0][0]
    ctx = NumberContext(sqrt2)
    elem = ctx.from_int_poly((-2, 0, 1))  # vanishes at sqrt2 but not mod f
    assert ctx.is_zero(elem)
    assert ctx.modulus == (-2, 0, 1)  # modulus shrank to x^2 - 2


def test_quotient_solve_and_charpoly():
    golden = isolate_roots((-1, 1, 1))[-1]
    ctx = NumberContext(golden)
    t = ctx.generator()
    one = ctx.one()
    # [[1, t], [t, 1]] x = [1, 0]
    mat = [[one, t], [t, one]]
    sol = solve_linear(ctx, mat, [one, ctx.zero()])
    assert sol is not None
    lhs0 = ctx.add(sol[0], ctx.mul(t, sol[1]))
    assert ctx.is_zero(ctx.sub(lhs0, one))
    coeffs = charpoly_elements(ctx, mat)
    # char of [[1,t],[t,1]] = x^2 - 2x + (1 - t^2)
    assert coeffs[2] == one
    assert ctx.is_zero(ctx.sub(coeffs[1], ctx.from_fraction(-2)))
    expected0 = ctx.sub(one, ctx.mul(t, t))
    assert ctx.is_zero(ctx.sub(coeffs[0], expected0))


def test_matrix_json_roundtrip():
    m = [[Fraction(1, 3), Fraction(-2)], [Fraction(-2), Fraction(0)]]
    data = ratmat.matrix_to_json(m)
    assert data == [["1/3", "-2/1"], ["-2/1", "0/1"]]
    assert ratmat.matrix_from_json(data) == m


def test_bivariate_json():
    a1 = cycle(5)
    a2 = complement_rows(a1)
    bi = sp.char_poly_bivariate(a1, a2, 1)
    data = bi.to_json()
    assert data["order"] == 5 and data["scale"] == 1
    assert all(isinstance(c, list) for c in data["coeffs"])


def test_signature_plus_kernel_is_order():
    rng = random.Random(99)
    for _ in range(60):
        n = rng.randint(2, 7)
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = Fraction(rng.randint(-3, 3))
                m[i][j] = m[j][i] = v
        poly, _ = sp.char_poly(m)
        sig = sp.signature_from_charpoly(poly)
        assert sig.positives + sig.negatives + ip.trailing_zero_count(poly) == n
