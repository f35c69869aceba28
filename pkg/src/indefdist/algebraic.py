"""Real algebraic numbers as (square-free integer polynomial, isolating interval).

Signs, comparisons and refinement are certified through Sturm counts and
integer interval arithmetic; no floating point enters any decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import intpoly as ip
from .intpoly import Poly


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _dyadic_parts(x: Fraction) -> tuple[int, int]:
    den = x.denominator
    k = den.bit_length() - 1
    if (1 << k) != den:
        raise ValueError(f"{x} is not dyadic")
    return x.numerator, k


def _is_dyadic(x: Fraction) -> bool:
    den = x.denominator
    return den & (den - 1) == 0


def _sign_at(p: Poly, x: Fraction) -> int:
    if _is_dyadic(x):
        return ip.sign_at_dyadic(p, *_dyadic_parts(x))
    return _sign(ip.evaluate(p, x))


def _variations_at(chain, x: Fraction) -> int:
    if _is_dyadic(x):
        return ip.chain_variations_at_dyadic(chain, *_dyadic_parts(x))
    return ip.chain_variations_at(chain, x)


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number.

    ``poly`` is square-free and primitive with positive leading coefficient and
    has exactly one real root in [lo, hi].  A degenerate interval (lo == hi)
    marks an exactly known rational value.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    def is_rational(self) -> bool:
        return self.lo == self.hi

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not an exactly represented rational")
        return self.lo

    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        a = refine(self, Fraction(1, 1 << 64))
        return float((a.lo + a.hi) / 2)

    def to_decimal(self, digits: int = 12) -> str:
        a = refine(self, Fraction(1, 10 ** (digits + 2)))
        mid = (a.lo + a.hi) / 2
        scaled = mid * 10**digits
        n = scaled.numerator // scaled.denominator
        sign = "-" if n < 0 else ""
        n = abs(n)
        intpart, frac = divmod(n, 10**digits)
        return f"{sign}{intpart}.{str(frac).zfill(digits)}"

    def to_json(self) -> dict:
        return {
            "poly": ip.to_json(self.poly),
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
        }

    @staticmethod
    def from_json(data) -> "AlgebraicNumber":
        def parse(s: str) -> Fraction:
            num, den = s.split("/")
            return Fraction(int(num), int(den))

        return AlgebraicNumber(ip.from_json(data["poly"]), parse(data["lo"]), parse(data["hi"]))


def from_rational(r) -> AlgebraicNumber:
    r = Fraction(r)
    return AlgebraicNumber((-r.numerator, r.denominator), r, r)


def _simplest_in(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with the smallest denominator in [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo == hi:
        return lo
    floor_hi = hi.numerator // hi.denominator
    ceil_lo = -((-lo.numerator) // lo.denominator)
    if ceil_lo <= floor_hi:
        if lo <= 0 <= hi:
            return Fraction(0)
        return Fraction(ceil_lo) if lo > 0 else Fraction(floor_hi)
    n = lo.numerator // lo.denominator  # lo, hi share the open unit (n, n+1)
    return n + 1 / _simplest_in(1 / (hi - n), 1 / (lo - n))


_EXACTIFY_LEAD_CAP = 1 << 16


def exactify(a: AlgebraicNumber) -> AlgebraicNumber:
    """Collapse to a degenerate interval when the number is rational.

    Rational roots of the defining polynomial have denominators dividing the
    leading coefficient Q; once the interval is narrower than 1/Q**2 at most
    one rational of denominator <= Q fits, and it must then be the simplest
    rational of the interval.  Certified either way; skipped (identity) when
    the leading coefficient is unreasonably large.
    """
    if a.is_rational():
        return a
    q = abs(a.poly[-1])
    if q > _EXACTIFY_LEAD_CAP:
        return a
    width = Fraction(1, q * q + 1)
    cur = refine(a, width)
    if cur.is_rational():
        return cur
    cand = _simplest_in(cur.lo, cur.hi)
    if cand.denominator <= q and ip.evaluate(a.poly, cand) == 0:
        return AlgebraicNumber(a.poly, cand, cand)
    return cur


def isolate_roots(p: Poly) -> list[AlgebraicNumber]:
    """Isolating intervals for all distinct real roots of p, ascending.

    Every returned number carries the square-free part of p as its defining
    polynomial; intervals are dyadic and pairwise disjoint.
    """
    if ip.is_zero(p):
        raise ValueError("isolate_roots of zero polynomial")
    sf = ip.squarefree_part(p)
    if ip.degree(sf) == 0:
        return []
    chain = ip.sturm_chain(sf)
    e = ip.root_bound_exponent(sf)

    def var(num: int, k: int) -> int:
        return ip.chain_variations_at_dyadic(chain, num, k)

    out = []

    # Stack entries are half-open dyadic intervals (lo, hi] with the number of
    # roots inside; lo is never a root (the count convention excludes it and
    # includes hi when hi happens to be a root).
    stack = [((-1 << e, 0), (1 << e, 0), var(-1 << e, 0) - var(1 << e, 0))]
    while stack:
        (nlo, klo), (nhi, khi), count = stack.pop()
        if count == 0:
            continue
        lo = Fraction(nlo, 1 << klo)
        hi = Fraction(nhi, 1 << khi)
        if count == 1:
            if ip.sign_at_dyadic(sf, nhi, khi) == 0:
                out.append(AlgebraicNumber(sf, hi, hi))
            else:
                out.append(AlgebraicNumber(sf, lo, hi))
            continue
        mid = (lo + hi) / 2
        nm, km = _dyadic_parts(mid)
        left = var(nlo, klo) - var(nm, km)
        stack.append(((nlo, klo), (nm, km), left))
        stack.append(((nm, km), (nhi, khi), count - left))

    out = [exactify(a) for a in out]
    out.sort(key=lambda a: (a.lo, a.hi))
    return out


def _bisect_once(a: AlgebraicNumber, chain) -> AlgebraicNumber:
    mid = (a.lo + a.hi) / 2
    if _sign_at(a.poly, mid) == 0:
        return AlgebraicNumber(a.poly, mid, mid)
    if _variations_at(chain, a.lo) - _variations_at(chain, mid) == 1:
        return AlgebraicNumber(a.poly, a.lo, mid)
    return AlgebraicNumber(a.poly, mid, a.hi)


def refine(a: AlgebraicNumber, width) -> AlgebraicNumber:
    """Same number with an isolating interval of width at most ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if a.width() <= width:
        return a
    chain = ip.sturm_chain(a.poly)
    while a.width() > width:
        a = _bisect_once(a, chain)
    return a


def alg_sign(expr: Poly, a: AlgebraicNumber) -> int:
    """Exact sign of expr evaluated at the algebraic number.

    Zero is certified through gcd(expr, a.poly) having a root in the isolating
    interval; nonzero signs come from interval evaluation after refinement.
    """
    if ip.is_zero(expr):
        return 0
    if a.is_rational():
        return _sign(ip.evaluate(expr, a.rational_value()))
    g = ip.gcd(expr, a.poly)
    if ip.degree(g) > 0:
        gchain = ip.sturm_chain(g)
        if ip.count_roots_halfopen(gchain, a.lo, a.hi) == 1:
            return 0
    chain = ip.sturm_chain(a.poly)
    cur = a
    while True:
        vlo, vhi = ip.interval_evaluate(expr, cur.lo, cur.hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        cur = _bisect_once(cur, chain)
        if cur.is_rational():
            return _sign(ip.evaluate(expr, cur.rational_value()))


def alg_compare(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """-1, 0, +1 ordering of two algebraic numbers."""
    if a.is_rational() and b.is_rational():
        return _sign(a.rational_value() - b.rational_value())
    if a.is_rational():
        return -alg_compare(b, a)
    if b.is_rational():
        # b is exact; a's endpoints are non-roots, so strict bounds suffice.
        r = b.rational_value()
        ca = a
        chain = ip.sturm_chain(a.poly)
        while True:
            if ca.hi <= r:
                return -1
            if ca.lo >= r:
                return 1
            if ip.evaluate(ca.poly, r) == 0:
                # r inside the isolating interval and a root: a == r.
                return 0
            ca = _bisect_once(ca, chain)
            if ca.is_rational():
                return _sign(ca.rational_value() - r)

    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    g = ip.gcd(a.poly, b.poly)
    if ip.degree(g) > 0:
        lo = max(a.lo, b.lo)
        hi = min(a.hi, b.hi)
        if lo < hi:
            gchain = ip.sturm_chain(g)
            try:
                inside = ip.count_roots_halfopen(gchain, lo, hi)
            except ZeroDivisionError:  # pragma: no cover - defensive
                inside = 0
            if inside == 1:
                root = AlgebraicNumber(g, lo, hi)
                # The common root equals both numbers only if it is the unique
                # root of each polynomial in each interval, which holds by the
                # isolation invariant.
                if alg_sign(a.poly, root) == 0 and alg_sign(b.poly, root) == 0:
                    return 0
    chain_a = ip.sturm_chain(a.poly)
    chain_b = ip.sturm_chain(b.poly)
    ca, cb = a, b
    while True:
        if ca.hi <= cb.lo and not (ca.is_rational() and cb.is_rational() and ca.lo == cb.lo):
            return -1
        if cb.hi <= ca.lo and not (ca.is_rational() and cb.is_rational() and ca.lo == cb.lo):
            return 1
        if ca.is_rational() and cb.is_rational():
            return _sign(ca.rational_value() - cb.rational_value())
        if ca.width() >= cb.width() and not ca.is_rational():
            ca = _bisect_once(ca, chain_a)
        else:
            cb = _bisect_once(cb, chain_b)


def alg_equal(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    return alg_compare(a, b) == 0


def negate(a: AlgebraicNumber) -> AlgebraicNumber:
    return AlgebraicNumber(ip.monic_primitive(ip.shift_reflect(a.poly)), -a.hi, -a.lo)


def scale_down(a: AlgebraicNumber, s: int) -> AlgebraicNumber:
    """The number a / s for a positive integer s."""
    if s <= 0:
        raise ValueError("scale must be positive")
    if a.is_rational():
        return from_rational(a.rational_value() / s)
    poly = ip.compose_linear_scaled(a.poly, s, 1)
    return AlgebraicNumber(poly, a.lo / s, a.hi / s)


def lambda_to_b(lam: AlgebraicNumber, branch: int) -> AlgebraicNumber:
    """Distance value b = branch * t/(1+t) for an eigenvalue t > -1/2."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    if lam.is_rational():
        t = lam.rational_value()
        return from_rational(branch * t / (1 + t))
    cur = lam
    while cur.lo <= Fraction(-1, 2):
        cur = refine(cur, cur.width() / 2)
    poly = ip.moebius_lambda_to_b(cur.poly)
    lo = cur.lo / (1 + cur.lo)
    hi = cur.hi / (1 + cur.hi)
    b = AlgebraicNumber(poly, lo, hi)
    # The Moebius image polynomial may have other roots wandering into the
    # image interval; shrink until the isolation invariant is restored.
    chain = ip.sturm_chain(poly)
    src = cur
    while (
        _sign_at(poly, b.lo) == 0
        or _sign_at(poly, b.hi) == 0
        or ip.count_roots_halfopen(chain, b.lo, b.hi) != 1
    ):
        src = refine(src, src.width() / 2)
        if src.is_rational():
            t = src.rational_value()
            b = from_rational(t / (1 + t))
            break
        b = AlgebraicNumber(poly, src.lo / (1 + src.lo), src.hi / (1 + src.hi))
    return negate(b) if branch == -1 else b


def pretty(a: AlgebraicNumber) -> str:
    """Best-effort exact rendering: rationals and quadratic surds only."""
    if a.is_rational():
        r = a.rational_value()
        return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
    if ip.degree(a.poly) == 1:
        c0, c1 = a.poly
        r = Fraction(-c0, c1)
        return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
    if ip.degree(a.poly) == 2:
        c, b, q = a.poly
        disc = b * b - 4 * q * c
        s = isqrt(disc)
        if s * s != disc:
            lo_mid = (a.lo + a.hi) / 2
            plus = Fraction(-b, 2 * q) <= lo_mid
            sign = "+" if plus else "-"
            num = f"({-b}{sign}√{disc})" if b else f"{sign}√{disc}".lstrip("+")
            den = 2 * q
            if den == 1:
                return num
            return f"{num}/{den}"
    f = float(a)
    return f"root of {list(a.poly)} near {f:.6f}"
