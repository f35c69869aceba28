"""Exact spectral computations on symmetric rational matrices.

Signatures are read off characteristic polynomials with Descartes' rule of
signs, which is exact here because every matrix involved is symmetric (all
roots real).  Matrices with an algebraic parameter are handled through
characteristic polynomials of integer pencils M0 + t*M1, interpolated at
integer points and evaluated at the algebraic value by certified sign
computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intpoly as ip
from . import ratmat
from .algebraic import AlgebraicNumber, alg_sign, from_rational, isolate_roots, scale_down
from .intpoly import Poly
from .quotient import NumberContext


class JNotInRangeError(ValueError):
    """The all-one vector is outside the column space (0 is a main eigenvalue)."""


@dataclass(frozen=True)
class Signature:
    positives: int
    negatives: int

    def as_pair(self) -> tuple[int, int]:
        return (self.positives, self.negatives)


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: AlgebraicNumber
    multiplicity: int
    is_main: bool
    beta_squared: object  # Fraction or AlgebraicNumber; 0 when not main


@dataclass(frozen=True)
class MainSpectrum:
    entries: tuple[SpectrumEntry, ...]


@dataclass(frozen=True)
class BivariateCharPoly:
    """char(x) of an integer pencil (M0 + t*M1)/scale, stored as one integer
    polynomial in t per power of x."""

    coeffs_by_xdeg: tuple[Poly, ...]
    scale: int
    order: int

    def to_json(self) -> dict:
        return {
            "coeffs": [list(p) for p in self.coeffs_by_xdeg],
            "scale": self.scale,
            "order": self.order,
        }


def _variations(signs) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def signature_from_charpoly(poly: Poly) -> Signature:
    """Signature of a symmetric matrix from its characteristic polynomial."""
    return Signature(ip.descartes_positive(poly), ip.descartes_negative(poly))


def char_poly(mat) -> tuple[Poly, int]:
    """(p, s): monic integer p whose roots are s times the eigenvalues."""
    return ratmat.charpoly_scaled(mat)


def signature(mat) -> Signature:
    poly, _ = ratmat.charpoly_scaled(mat)
    return signature_from_charpoly(poly)


def main_polynomial(mat) -> Poly:
    """Primitive integer polynomial whose roots are exactly the main
    eigenvalues (the minimal polynomial of the matrix relative to the all-one
    vector, computed from the Krylov sequence over Q)."""
    n = len(mat)
    return ratmat.krylov_min_poly(mat, [1] * n)


def _moments(mat, upto: int) -> list[Fraction]:
    """j^T M^k j for k = 0..upto-1."""
    n = len(mat)
    frac = [[Fraction(x) for x in row] for row in mat]
    v = [Fraction(1)] * n
    out = []
    for _ in range(upto):
        out.append(sum(v))
        v = [sum(frac[i][j] * v[j] for j in range(n)) for i in range(n)]
    return out


def main_angles(mat) -> MainSpectrum:
    """Exact eigenvalue/multiplicity/mainness table with beta^2 values.

    beta_i^2 = j^T E_i j / n is evaluated without forming projectors: with m
    the minimal polynomial relative to j and q = m/(x - lambda),
    beta^2 = (sum_k q_k * j^T M^k j) / (n * m'(lambda)), computed in
    Q(lambda).  The beta^2 of main eigenvalues sum to 1; this is asserted via
    a companion-matrix trace.
    """
    n = len(mat)
    mp = main_polynomial(mat)
    moments = _moments(mat, max(ip.degree(mp), 1))
    cp, s = ratmat.charpoly_scaled(mat)
    entries = []
    for factor, mult in ip.squarefree_decompose(cp):
        for root in isolate_roots(factor):
            lam = scale_down(root, s)
            if alg_sign(mp, lam) != 0:
                entries.append(SpectrumEntry(lam, mult, False, Fraction(0)))
                continue
            beta2 = _beta_squared(lam, mp, moments, n)
            entries.append(SpectrumEntry(lam, mult, True, beta2))
    entries.sort(key=lambda e: (e.eigenvalue.lo, e.eigenvalue.hi))
    _assert_beta_sum_one(mp, moments, n)
    return MainSpectrum(tuple(entries))


def _beta_squared(lam: AlgebraicNumber, mp: Poly, moments, n: int):
    if lam.is_rational():
        t = lam.rational_value()
        d = ip.degree(mp)
        q = [Fraction(0)] * d
        q[d - 1] = Fraction(mp[d])
        for k in range(d - 1, 0, -1):
            q[k - 1] = Fraction(mp[k]) + t * q[k]
        num = sum(qk * mk for qk, mk in zip(q, moments))
        den = n * ip.evaluate(ip.derivative(mp), t)
        val = num / Fraction(den)
        assert val > 0
        return val
    ctx = NumberContext(lam)
    t = ctx.generator()
    d = ip.degree(mp)
    q = [ctx.zero()] * d
    q[d - 1] = ctx.from_fraction(mp[d])
    for k in range(d - 1, 0, -1):
        q[k - 1] = ctx.add(ctx.from_fraction(mp[k]), ctx.mul(t, q[k]))
    num = ctx.zero()
    for qk, mk in zip(q, moments):
        num = ctx.add(num, ctx.mul_scalar(qk, mk))
    den = ctx.mul_scalar(ctx.from_int_poly(ip.derivative(mp)), n)
    val = ctx.div(num, den)
    assert ctx.sign(val) > 0
    out = ctx.to_algebraic(val)
    if out.is_rational():
        return out.rational_value()
    return out


def _assert_beta_sum_one(mp: Poly, moments, n: int) -> None:
    """sum over roots of mp of beta^2 equals 1, via a trace computation."""
    d = ip.degree(mp)
    # N(t) with N(lambda) = sum_k moments[k] * q_k(lambda)
    ncoeffs = [Fraction(0)] * d
    for j in range(d):
        acc = Fraction(0)
        for k in range(0, d - j):
            acc += moments[k] * mp[j + k + 1]
        ncoeffs[j] = acc
    lead = Fraction(mp[d])
    monic = [Fraction(c) / lead for c in mp]
    companion = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        companion[i][i - 1] = Fraction(1)
    for i in range(d):
        companion[i][d - 1] = -monic[i]
    # h = N * (n * mp')^{-1} mod mp, then sum over roots = Tr h(C)
    mpd = ip.derivative(mp)
    inv = _poly_inverse_mod([Fraction(n) * c for c in mpd], monic)
    h = _poly_mul_mod(ncoeffs, inv, monic)
    total = Fraction(0)
    power = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    for c in h:
        if c:
            total += c * sum(power[i][i] for i in range(d))
        power = [
            [sum(companion[i][k] * power[k][j] for k in range(d)) for j in range(d)]
            for i in range(d)
        ]
    if total != 1:
        raise AssertionError(f"main angles do not sum to 1: {total}")


def _poly_divmod_frac(p, q):
    r = list(p)
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = len(q) - 1
    while len(r) - 1 >= dq and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dq:
            break
        f = r[-1] / q[-1]
        out[len(r) - 1 - dq] = f
        for i in range(dq + 1):
            r[len(r) - 1 - dq + i] -= f * q[i]
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return out, r


def _poly_mul_mod(a, b, m):
    prod = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    _, r = _poly_divmod_frac(prod, m)
    return r


def _poly_inverse_mod(a, m):
    r0, r1 = list(m), list(a)
    s0, s1 = [], [Fraction(1)]
    while any(r1):
        q, r = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, r
        prod = [Fraction(0)] * (len(q) + len(s1) - 1 if q and s1 else 1)
        for i, x in enumerate(q):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        new_s = [
            (s0[i] if i < len(s0) else Fraction(0)) - (prod[i] if i < len(prod) else Fraction(0))
            for i in range(max(len(s0), len(prod), 1))
        ]
        s0, s1 = s1, new_s
    while r0 and r0[-1] == 0:
        r0.pop()
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo m")
    inv_lead = 1 / r0[0]
    return [c * inv_lead for c in s0]


def harmonic_main_sum_sign(mat) -> tuple[int, Fraction]:
    """Sign and exact value of the main-eigenvalue harmonic sum
    sum_i beta_i^2 / lambda_i, computed as j^T x / n for any rational solution
    of M x = j.  Raises JNotInRangeError when 0 is a main eigenvalue."""
    n = len(mat)
    mp = main_polynomial(mat)
    if mp[0] == 0:
        raise JNotInRangeError("0 is a main eigenvalue; the harmonic sum diverges")
    x = ratmat.solve_fraction(mat, [1] * n)
    if x is None:
        raise JNotInRangeError("all-one vector is not in the column space")
    val = sum(x) / n
    return ((val > 0) - (val < 0), val)


class RelationCoverError(ValueError):
    """The two relation matrices do not partition the off-diagonal pairs."""


def char_poly_bivariate(a1, a2, a_sign: int) -> BivariateCharPoly:
    """Characteristic polynomial of -(a_sign*A1 + t*A2) over Z[x, t]."""
    n = len(a1)
    for i in range(n):
        for j in range(n):
            expected = 0 if i == j else 1
            if a1[i][j] + a2[i][j] != expected:
                raise RelationCoverError("A1 + A2 must equal J - I with zero diagonal")
    m0 = [[-a_sign * a1[i][j] for j in range(n)] for i in range(n)]
    m1 = [[-a2[i][j] for j in range(n)] for i in range(n)]
    table = ratmat.pencil_charpoly(m0, m1)
    return BivariateCharPoly(tuple(table), 1, n)


def pencil_bivariate(m0, m1, scale: int = 1) -> BivariateCharPoly:
    """General integer-pencil characteristic polynomial (M0 + t*M1)/scale."""
    table = ratmat.pencil_charpoly(m0, m1)
    return BivariateCharPoly(tuple(table), scale, len(m0))


def signature_at_algebraic(bi: BivariateCharPoly, b) -> Signature:
    """Signature of the pencil matrix at t = b (AlgebraicNumber or Fraction),
    via certified coefficient signs and Descartes' rule."""
    if not isinstance(b, AlgebraicNumber):
        b = from_rational(b)
    signs = [alg_sign(coeff, b) for coeff in bi.coeffs_by_xdeg]
    positives = _variations(signs)
    negatives = _variations(s * (-1 if j % 2 else 1) for j, s in enumerate(signs))
    return Signature(positives, negatives)


def substitute_rational(bi: BivariateCharPoly, t: Fraction) -> Poly:
    """Monic integer charpoly of the denominator-cleared pencil at t = u/v,
    i.e. of v*M0 + u*M1: the roots are v times the pencil's roots at t."""
    t = Fraction(t)
    u, v = t.numerator, t.denominator
    n = bi.order
    out = []
    for j, p in enumerate(bi.coeffs_by_xdeg):
        # coefficient of x^j has t-degree at most n - j
        acc = 0
        for k, c in enumerate(p):
            acc += c * u**k * v ** (n - j - k)
        out.append(acc)
    return ip.normalize(out)
