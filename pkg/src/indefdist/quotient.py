"""Arithmetic in Q(alpha) for a real algebraic alpha, with dynamic splitting.

Elements are polynomials in alpha with Fraction coefficients, reduced modulo a
square-free defining polynomial.  The defining polynomial need not be
irreducible: whenever a zero test or an inversion meets a zero divisor, the
context shrinks its modulus to the factor that still vanishes at alpha (the
classical dynamic-evaluation trick), so no polynomial factorization over Q is
ever required.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import intpoly as ip
from .algebraic import AlgebraicNumber, alg_sign, isolate_roots, refine
from .intpoly import Poly

FPoly = tuple[Fraction, ...]


def _fnormalize(cs) -> FPoly:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _fadd(p, q):
    n = max(len(p), len(q))
    return _fnormalize(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def _fneg(p):
    return tuple(-c for c in p)


def _fmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _fnormalize(out)


def _fdivmod(p, q):
    if not q:
        raise ZeroDivisionError
    r = list(p)
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = len(q) - 1
    while len(r) - 1 >= dq and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dq:
            break
        f = r[-1] / q[-1]
        shift = len(r) - 1 - dq
        out[shift] = f
        for i in range(dq + 1):
            r[shift + i] -= f * q[i]
        r.pop()
    return _fnormalize(out), _fnormalize(r)


def _from_int_poly(p: Poly) -> FPoly:
    return tuple(Fraction(c) for c in p)


def _clear(p: FPoly) -> Poly:
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    return ip.normalize(int(c * den) for c in p)


class SplitOccurred(Exception):
    """Internal signal: the modulus shrank; the caller retries the operation."""


class NumberContext:
    """Q(alpha) with alpha given as an AlgebraicNumber; mutable modulus."""

    def __init__(self, alpha: AlgebraicNumber):
        self.alpha = alpha

    @property
    def modulus(self) -> Poly:
        return self.alpha.poly

    def degree(self) -> int:
        return ip.degree(self.modulus)

    # -- element constructors -------------------------------------------------
    def zero(self) -> FPoly:
        return ()

    def one(self) -> FPoly:
        return (Fraction(1),)

    def from_fraction(self, x) -> FPoly:
        x = Fraction(x)
        return (x,) if x else ()

    def generator(self) -> FPoly:
        return self.reduce((Fraction(0), Fraction(1)))

    def from_int_poly(self, p: Poly) -> FPoly:
        return self.reduce(_from_int_poly(p))

    # -- ring operations -------------------------------------------------------
    def reduce(self, p: FPoly) -> FPoly:
        _, r = _fdivmod(_fnormalize(p), _from_int_poly(self.modulus))
        return r

    def add(self, a, b):
        return _fadd(a, b)

    def sub(self, a, b):
        return _fadd(a, _fneg(b))

    def neg(self, a):
        return _fneg(a)

    def mul(self, a, b):
        return self.reduce(_fmul(a, b))

    def mul_scalar(self, a, c):
        c = Fraction(c)
        if not c:
            return ()
        return tuple(x * c for x in a)

    # -- decisions --------------------------------------------------------------
    def is_zero(self, a) -> bool:
        """True iff the element vanishes at alpha.  May shrink the modulus."""
        a = self.reduce(a)
        if not a:
            return True
        expr = _clear(a)
        if alg_sign(expr, self.alpha) != 0:
            return False
        # a(alpha) = 0 but a != 0 mod f: replace f by gcd(f, expr), which
        # still vanishes at alpha and now annihilates a.
        g = ip.gcd(self.modulus, expr)
        self._shrink(g)
        return True

    def sign(self, a) -> int:
        a = self.reduce(a)
        if not a:
            return 0
        s = alg_sign(_clear(a), self.alpha)
        if s == 0:
            self.is_zero(a)
        return s

    def inverse(self, a) -> FPoly:
        while True:
            a_red = self.reduce(a)
            if self.is_zero(a_red):
                raise ZeroDivisionError("inverse of zero element")
            try:
                return self._inverse_once(self.reduce(a))
            except SplitOccurred:
                continue

    def _inverse_once(self, a: FPoly) -> FPoly:
        # extended Euclid for gcd(a, f) over Q[t]
        f = _from_int_poly(self.modulus)
        r0, r1 = f, a
        s0, s1 = (), (Fraction(1),)
        while r1:
            q, r = _fdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fadd(s0, _fneg(_fmul(q, s1)))
        if len(r0) == 1:
            return self.reduce(self.mul_scalar(s0, 1 / r0[0]))
        # nontrivial common factor g = r0; alpha is not a root of a, so alpha
        # lives in the cofactor f / g.
        g = _clear(r0)
        cof = ip.div_exact(self.modulus, ip.monic_primitive(g))
        self._shrink(cof)
        raise SplitOccurred

    def div(self, a, b):
        return self.mul(a, self.inverse(b))

    def _shrink(self, new_poly: Poly) -> None:
        new_poly = ip.monic_primitive(new_poly)
        if ip.degree(new_poly) < 1:
            raise ValueError("attempted to shrink modulus to a constant")
        if new_poly == self.modulus:
            return
        if alg_sign(new_poly, self.alpha) != 0:
            raise ValueError("shrunk modulus does not vanish at alpha")
        self.alpha = AlgebraicNumber(new_poly, self.alpha.lo, self.alpha.hi)

    # -- conversions -------------------------------------------------------------
    def evaluate_interval(self, a) -> tuple[Fraction, Fraction]:
        num = _clear(a)
        den = 1
        for c in a:
            den = lcm(den, c.denominator)
        lo, hi = ip.interval_evaluate(num, self.alpha.lo, self.alpha.hi)
        return lo / den, hi / den

    def to_algebraic(self, a) -> AlgebraicNumber:
        """The element's own defining data as an AlgebraicNumber.

        Uses the characteristic polynomial of the multiplication-by-a map on
        Q[t]/(f): its roots include a(alpha); the right root is singled out by
        refining alpha until the interval enclosure separates the candidates.
        """
        a = self.reduce(a)
        if len(a) <= 1:
            return _rational_alg(a[0] if a else Fraction(0))
        d = self.degree()
        f = _from_int_poly(self.modulus)
        lead = Fraction(self.modulus[-1])
        # companion action: t * basis_j reduced mod f
        mult = self._generator_matrix(d, f, lead)
        # matrix of multiplication by a
        amat = _matrix_poly(mult, a, d)
        from .ratmat import charpoly_scaled  # local import: no cycle at module load

        poly, s = charpoly_scaled(amat)
        poly = ip.monic_primitive(ip.squarefree_part(poly))
        roots = isolate_roots(poly)
        scaled = [
            AlgebraicNumber(r.poly, r.lo, r.hi) if s == 1 else _scale_root(r, s)
            for r in roots
        ]
        while True:
            lo, hi = self.evaluate_interval(a)
            inside = [r for r in scaled if not (r.hi < lo or r.lo > hi)]
            if len(inside) == 1:
                return inside[0]
            scaled = [refine(r, r.width() / 2) if not r.is_rational() else r for r in scaled]
            self.alpha = refine(self.alpha, self.alpha.width() / 2)

    def _generator_matrix(self, d, f, lead):
        rows = []
        for j in range(d):
            col = [Fraction(0)] * (j + 1)
            col[j] = Fraction(1)
            shifted = _fnormalize([Fraction(0)] + list(col))
            _, r = _fdivmod(shifted, f)
            rows.append([r[i] if i < len(r) else Fraction(0) for i in range(d)])
        # rows[j] holds t*t^j mod f; transpose into a matrix acting on coords
        return [[rows[j][i] for j in range(d)] for i in range(d)]


def _matrix_poly(m, coeffs, d):
    """coeffs(M) for a d x d Fraction matrix M."""
    acc = [[Fraction(0)] * d for _ in range(d)]
    power = [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    for c in coeffs:
        if c:
            for i in range(d):
                for j in range(d):
                    acc[i][j] += c * power[i][j]
        power = [
            [sum(m[i][k] * power[k][j] for k in range(d)) for j in range(d)]
            for i in range(d)
        ]
    return acc


def _rational_alg(x: Fraction) -> AlgebraicNumber:
    return AlgebraicNumber((-x.numerator, x.denominator), x, x)


def _scale_root(r: AlgebraicNumber, s: int) -> AlgebraicNumber:
    from .algebraic import scale_down

    return scale_down(r, s)


def solve_linear(ctx: NumberContext, mat, rhs):
    """Solve mat * x = rhs over Q(alpha); None when inconsistent.

    Singular systems are fine (free variables are set to zero); pivot checks
    go through the context's exact zero test so dynamic splits happen where
    they must.
    """
    n = len(mat)
    m = len(mat[0]) if mat else 0
    a = [[ctx.reduce(e) for e in row] + [ctx.reduce(rhs[i])] for i, row in enumerate(mat)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if not ctx.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ctx.inverse(a[r][c])
        a[r] = [ctx.mul(inv, v) for v in a[r]]
        for i in range(n):
            if i != r and not ctx.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [ctx.sub(vi, ctx.mul(f, vr)) for vi, vr in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if not ctx.is_zero(a[i][m]):
            return None
    x = [ctx.zero()] * m
    for row_idx, c in enumerate(piv_cols):
        x[c] = a[row_idx][m]
    return x


def charpoly_elements(ctx: NumberContext, mat) -> list[FPoly]:
    """Characteristic polynomial coefficients (lowest first) of a matrix of
    context elements, by Faddeev-LeVerrier over Q(alpha)."""
    n = len(mat)
    if n == 0:
        return [ctx.one()]
    coeffs = [ctx.zero()] * (n + 1)
    coeffs[n] = ctx.one()
    m = [[ctx.reduce(e) for e in row] for row in mat]
    a = [row[:] for row in m]
    c = ctx.neg(_trace(ctx, m))
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] = ctx.add(m[i][i], c)
        m = _matmul(ctx, a, m)
        c = ctx.mul_scalar(ctx.neg(_trace(ctx, m)), Fraction(1, k))
        coeffs[n - k] = c
    return coeffs


def _trace(ctx, m):
    t = ctx.zero()
    for i in range(len(m)):
        t = ctx.add(t, m[i][i])
    return t


def _matmul(ctx, a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = ctx.zero()
            for k in range(n):
                if a[i][k] and b[k][j]:
                    s = ctx.add(s, ctx.mul(a[i][k], b[k][j]))
            row.append(s)
        out.append(row)
    return out
