"""Exact univariate integer polynomial arithmetic.

Polynomials are tuples of Python ints, lowest degree first, with a nonzero
leading coefficient; the zero polynomial is the empty tuple.  Everything here
is exact; there is no floating point on any certified path.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


Poly = tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


class EndpointRootError(ValueError):
    """An interval endpoint is a root of the polynomial being counted."""


def normalize(coeffs) -> Poly:
    """Strip trailing zero coefficients."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Poly) -> int:
    """Degree of p; -1 for the zero polynomial."""
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return not p


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize(
        (p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)
    )


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def scale(p: Poly, c: int) -> Poly:
    if c == 0:
        return ZERO
    return tuple(a * c for a in p)


def content(p: Poly) -> int:
    """Positive gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in p:
        g = int_gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def primitive(p: Poly) -> Poly:
    """Divide out the content; the sign of the leading coefficient is kept."""
    if not p:
        return ZERO
    g = content(p)
    return tuple(c // g for c in p)


def monic_primitive(p: Poly) -> Poly:
    """Primitive part with a positive leading coefficient."""
    q = primitive(p)
    if q and q[-1] < 0:
        q = neg(q)
    return q


def derivative(p: Poly) -> Poly:
    return normalize(i * p[i] for i in range(1, len(p)))


def evaluate(p: Poly, x):
    """Horner evaluation at an int or Fraction."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at_dyadic(p: Poly, num: int, k: int) -> int:
    """Sign of p(num / 2**k) using integer arithmetic only (k >= 0)."""
    d = len(p) - 1
    if d < 0:
        return 0
    acc = p[d]
    for j in range(d - 1, -1, -1):
        acc = acc * num + (p[j] << (k * (d - j)))
    return (acc > 0) - (acc < 0)


def interval_evaluate(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner: encloses {p(x) : lo <= x <= hi}."""
    alo = ahi = Fraction(0)
    for c in reversed(p):
        candidates = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(candidates) + c, max(candidates) + c
    return alo, ahi


def pseudo_rem(f: Poly, g: Poly) -> Poly:
    """Pseudo-remainder r with lc(g)**(deg f - deg g + 1) * f = q*g + r.

    The full power of the leading coefficient is always applied (padding with
    extra factors when the degree drops by more than one per step), so the
    sign relation to the true remainder is exactly lc**(deg f - deg g + 1).
    """
    if not g:
        raise ZeroDivisionError("pseudo_rem by zero polynomial")
    df, dg = degree(f), degree(g)
    if df < dg:
        steps_total = 0
    else:
        steps_total = df - dg + 1
    r = list(f)
    lg = g[-1]
    steps = 0
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        lead = r[-1]
        shift = len(r) - 1 - dg
        r = [c * lg for c in r]
        steps += 1
        for i in range(dg + 1):
            r[shift + i] -= lead * g[i]
        r.pop()
    pad = lg ** max(steps_total - steps, 0)
    return normalize(c * pad for c in r)


def gcd(p: Poly, q: Poly) -> Poly:
    """Primitive gcd over the integers, positive leading coefficient."""
    a, b = monic_primitive(p), monic_primitive(q)
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, monic_primitive(r)
    return a


def div_exact(f: Poly, g: Poly) -> Poly:
    """Exact quotient f / g; raises if the division leaves a remainder."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return ZERO
    r = [Fraction(c) for c in f]
    out = [Fraction(0)] * (len(f) - len(g) + 1)
    dg = degree(g)
    lg = g[-1]
    for shift in range(len(f) - len(g), -1, -1):
        c = r[shift + dg] / lg
        out[shift] = c
        if c:
            for i in range(dg + 1):
                r[shift + i] -= c * g[i]
    if any(r):
        raise ValueError("div_exact: nonzero remainder")
    ints = []
    for c in out:
        if c.denominator != 1:
            raise ValueError("div_exact: non-integer quotient")
        ints.append(c.numerator)
    return normalize(ints)


def squarefree_part(p: Poly) -> Poly:
    """p divided by gcd(p, p'); primitive with positive lead."""
    if not p:
        raise ValueError("squarefree_part of zero polynomial")
    if degree(p) == 0:
        return ONE
    g = gcd(p, derivative(p))
    if degree(g) == 0:
        return monic_primitive(p)
    return monic_primitive(div_exact(monic_primitive(p), g))


def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun decomposition: [(factor, multiplicity)] with pairwise-coprime,
    square-free factors whose weighted product is p up to a constant."""
    if not p:
        raise ValueError("squarefree_decompose of zero polynomial")
    p = monic_primitive(p)
    if degree(p) == 0:
        return []
    out = []
    dp = derivative(p)
    g = gcd(p, dp)
    if degree(g) == 0:
        return [(p, 1)]
    c = div_exact(p, g)
    d = sub(div_exact(dp, g), derivative(c))
    i = 1
    while degree(c) > 0:
        a = gcd(c, d)
        if degree(a) > 0:
            out.append((monic_primitive(a), i))
        c2 = div_exact(c, a)
        d = sub(div_exact(d, a), derivative(c2))
        c = c2
        i += 1
    return out


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm chain of a square-free p: p, p', then negated primitive remainders."""
    chain = [p, derivative(p)]
    while chain[-1]:
        f, g = chain[-2], chain[-1]
        r = pseudo_rem(f, g)
        if not r:
            break
        # pseudo_rem scales f by lc(g)^(d+1); undo a negative scale so the
        # chain element stays a positive multiple of -rem(f, g).
        d = degree(f) - degree(g) + 1
        if g[-1] < 0 and d % 2 == 1:
            r = neg(r)
        chain.append(primitive(neg(r)))
    if not chain[-1]:
        chain.pop()
    return chain


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


def chain_variations_at_dyadic(chain, num: int, k: int) -> int:
    return _variations(sign_at_dyadic(q, num, k) for q in chain)


def chain_variations_at(chain, x: Fraction) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, x)
        signs.append((v > 0) - (v < 0))
    return _variations(signs)


def count_roots_halfopen(chain, lo: Fraction, hi: Fraction) -> int:
    """Number of roots of the (square-free) chain head in (lo, hi]."""
    return chain_variations_at(chain, lo) - chain_variations_at(chain, hi)


def sturm_count(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of p in the open interval (lo, hi).

    Raises EndpointRootError when either endpoint is a root; callers are
    expected to perturb the endpoint and retry.
    """
    if not p:
        raise ValueError("sturm_count of zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("sturm_count: lo > hi")
    sf = squarefree_part(p)
    if evaluate(sf, lo) == 0 or evaluate(sf, hi) == 0:
        raise EndpointRootError(f"endpoint of ({lo}, {hi}) is a root")
    if lo == hi:
        return 0
    chain = sturm_chain(sf)
    return count_roots_halfopen(chain, lo, hi)


def descartes_positive(p: Poly) -> int:
    """Sign variations of the coefficients; for a real-rooted polynomial this
    is exactly the number of positive roots counted with multiplicity."""
    return _variations((c > 0) - (c < 0) for c in p)


def descartes_negative(p: Poly) -> int:
    """Descartes count applied to p(-x)."""
    return _variations(
        ((c > 0) - (c < 0)) * (-1 if i % 2 else 1) for i, c in enumerate(p)
    )


def trailing_zero_count(p: Poly) -> int:
    """Multiplicity of the root 0."""
    n = 0
    while n < len(p) and p[n] == 0:
        n += 1
    return n


def root_bound_exponent(p: Poly) -> int:
    """k with 2**k strictly beyond the Cauchy bound on |roots of p|."""
    if not p:
        raise ValueError("root bound of zero polynomial")
    lead = abs(p[-1])
    m = max(abs(c) for c in p)
    bound = 1 + (m + lead - 1) // lead
    k = 0
    while (1 << k) <= bound:
        k += 1
    return k


def compose_linear_scaled(p: Poly, num: int, den: int) -> Poly:
    """Primitive integer polynomial proportional to p(num*x/den)."""
    d = degree(p)
    out = [p[i] * num**i * den ** (d - i) for i in range(d + 1)]
    return monic_primitive(out)


def shift_reflect(p: Poly) -> Poly:
    """p(-x)."""
    return normalize((-c if i % 2 else c) for i, c in enumerate(p))


def moebius_lambda_to_b(p: Poly) -> Poly:
    """Given a defining polynomial of t, a primitive defining polynomial of
    b = t/(1+t); the inverse substitution is t = x/(1-x)."""
    d = degree(p)
    # sum_k a_k x^k (1-x)^(d-k)
    out = [0] * (d + 1)
    one_minus_x = (1, -1)
    for k in range(d + 1):
        if p[k] == 0:
            continue
        term = ONE
        for _ in range(k):
            term = mul(term, X)
        for _ in range(d - k):
            term = mul(term, one_minus_x)
        for i, c in enumerate(term):
            out[i] += p[k] * c
    return monic_primitive(normalize(out))


def resultant(p: Poly, q: Poly) -> int:
    """Resultant of p and q via fraction-free Bareiss elimination on the
    Sylvester matrix."""
    dp, dq = degree(p), degree(q)
    if dp < 0 or dq < 0:
        return 0
    if dp == 0:
        return p[0] ** dq
    if dq == 0:
        return q[0] ** dp
    n = dp + dq
    rows = []
    rp = list(reversed(p))
    rq = list(reversed(q))
    for i in range(dq):
        rows.append([0] * i + rp + [0] * (dq - 1 - i))
    for i in range(dp):
        rows.append([0] * i + rq + [0] * (dp - 1 - i))
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = rows[k][k]
        for r in range(k + 1, n):
            row_r = rows[r]
            row_k = rows[k]
            f = row_r[k]
            for c in range(k + 1, n):
                row_r[c] = (piv * row_r[c] - f * row_k[c]) // prev
            row_r[k] = 0
        prev = piv
    return sign * rows[n - 1][n - 1]


def to_json(p: Poly) -> list[int]:
    return list(p)


def from_json(data) -> Poly:
    return normalize(int(c) for c in data)
