"""Exact linear algebra over the rationals and integers.

Characteristic polynomials are computed fraction-free (Faddeev-LeVerrier over
the integers after clearing denominators); linear solves and Krylov minimal
polynomials run over Fraction.  A batched modular path exists purely as a
conservative prefilter for large graph streams; every decision it feeds is
re-derived exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from . import intpoly as ip
from .intpoly import Poly

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matrix_to_json(mat) -> list:
    """Exact rational strings, row-major."""
    out = []
    for row in mat:
        out.append(
            [f"{Fraction(x).numerator}/{Fraction(x).denominator}" for x in row]
        )
    return out


def matrix_from_json(data) -> list:
    def parse(s):
        num, den = s.split("/")
        return Fraction(int(num), int(den))

    return [[parse(x) for x in row] for row in data]


def mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    bt = [[b[r][c] for r in range(k)] for c in range(m)]
    return [[sum(row[i] * col[i] for i in range(k)) for col in bt] for row in a]


def mat_trace(a):
    return sum(a[i][i] for i in range(len(a)))


def charpoly_int(a: IntMatrix) -> Poly:
    """Monic characteristic polynomial det(xI - A) of an integer matrix,
    coefficients lowest degree first, via Faddeev-LeVerrier (exact integer
    divisions throughout)."""
    n = len(a)
    if n == 0:
        return ip.ONE
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [row[:] for row in a]
    c = -mat_trace(m)
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] += c
        m = mat_mul(a, m)
        c = -mat_trace(m) // k
        coeffs[n - k] = c
    return ip.normalize(coeffs)


def clear_denominators(mat) -> tuple[IntMatrix, int]:
    """Integer matrix N and positive scale s with mat = N / s."""
    s = 1
    for row in mat:
        for x in row:
            s = lcm(s, Fraction(x).denominator)
    out = [[int(Fraction(x) * s) for x in row] for row in mat]
    return out, s


def charpoly_scaled(mat) -> tuple[Poly, int]:
    """(p, s) with the eigenvalues of the rational matrix equal to the roots
    of p divided by s; p is monic with integer coefficients."""
    n, s = clear_denominators(mat)
    return charpoly_int(n), s


def solve_fraction(mat, rhs):
    """One exact solution of mat * x = rhs (free variables set to 0), or None
    when the system is inconsistent."""
    n = len(mat)
    m = len(mat[0]) if mat else 0
    a = [[Fraction(mat[i][j]) for j in range(m)] + [Fraction(rhs[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if a[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for row_idx, c in enumerate(piv_cols):
        x[c] = a[row_idx][m]
    return x


def krylov_min_poly(mat, vec) -> Poly:
    """Primitive integer polynomial proportional to the monic least-degree q
    with q(mat) vec = 0 (the minimal polynomial of mat relative to vec)."""
    n = len(mat)
    frac_mat = [[Fraction(x) for x in row] for row in mat]
    v = [Fraction(x) for x in vec]
    # Echelon basis of the Krylov vectors with coefficient tracking.
    basis = []  # list of (vector, combo) in echelon form
    cur = v
    combo = [Fraction(1)]
    while True:
        w = cur[:]
        coef = combo[:] + [Fraction(0)] * (len(basis) + 1 - len(combo))
        for bvec, bcombo, lead in basis:
            if w[lead] != 0:
                f = w[lead]
                w = [wi - f * bi for wi, bi in zip(w, bvec)]
                coef = [
                    ci - f * (bcombo[i] if i < len(bcombo) else 0)
                    for i, ci in enumerate(coef)
                ]
        lead = next((i for i, wi in enumerate(w) if wi != 0), None)
        if lead is None:
            den = lcm(*[c.denominator for c in coef]) if coef else 1
            ints = [int(c * den) for c in coef]
            return ip.monic_primitive(ip.normalize(ints))
        inv = w[lead]
        basis.append(([wi / inv for wi in w], [ci / inv for ci in coef], lead))
        cur = [sum(frac_mat[i][j] * cur[j] for j in range(n)) for i in range(n)]
        combo = [Fraction(0)] + combo


def pencil_charpoly(m0: IntMatrix, m1: IntMatrix) -> list[Poly]:
    """Characteristic polynomial of m0 + t*m1 as a table of integer
    polynomials in t: entry [j] is the coefficient of x**j.

    Computed by evaluating at t = 0..n and interpolating; each coefficient of
    x**j has degree at most n in t, so n+1 points determine it exactly.
    """
    n = len(m0)
    points = list(range(n + 1))
    values = []
    for t in points:
        a = [[m0[i][j] + t * m1[i][j] for j in range(n)] for i in range(n)]
        values.append(charpoly_int(a))
    table = []
    for j in range(n + 1):
        ys = [Fraction(v[j]) if j < len(v) else Fraction(0) for v in values]
        table.append(_interpolate_integer(points, ys))
    return table


def _interpolate_integer(xs, ys) -> Poly:
    """Lagrange interpolation with an integrality check on the result."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # numerator polynomial prod_{j != i} (x - xs[j])
        num = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            num = _poly_mul_frac(num, [Fraction(-xs[j]), Fraction(1)])
            den *= xs[i] - xs[j]
        w = ys[i] / den
        for k, c in enumerate(num):
            coeffs[k] += w * c
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ValueError("interpolation produced non-integer coefficient")
        out.append(c.numerator)
    return ip.normalize(out)


def _poly_mul_frac(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


# --- batched modular prefilter -------------------------------------------------

# Entries stay reduced below the prime between matmuls; with n <= 32 the
# accumulated products need n * p^2 < 2^63, which a ~2^28 prime satisfies.
_FILTER_PRIME = 268_435_399


def charpoly_batch_mod(mats: np.ndarray, prime: int = _FILTER_PRIME) -> np.ndarray:
    """Characteristic polynomials mod prime for a (G, n, n) int64 batch,
    returned as a (G, n+1) array, lowest degree first."""
    g, n, _ = mats.shape
    a = np.mod(mats.astype(np.int64), prime)
    coeffs = np.zeros((g, n + 1), dtype=np.int64)
    coeffs[:, n] = 1
    m = a.copy()
    tr = np.trace(m, axis1=1, axis2=2) % prime
    c = (-tr) % prime
    coeffs[:, n - 1] = c
    eye = np.eye(n, dtype=np.int64)
    for k in range(2, n + 1):
        m = (m + c[:, None, None] * eye) % prime
        m = np.matmul(a, m) % prime
        tr = np.trace(m, axis1=1, axis2=2) % prime
        inv_k = pow(k, -1, prime)
        c = (-tr * inv_k) % prime
        coeffs[:, n - k] = c
    return coeffs


def _strip(xs: list[int]) -> list[int]:
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


def _polymod_gcd_degree_nonzero(h: list[int], prime: int) -> int:
    """Degree of gcd(h, h') mod prime after stripping powers of x."""
    a = _strip([c % prime for c in h])
    b = _strip([(i * c) % prime for i, c in enumerate(h)][1:])
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        inv = pow(b[-1], -1, prime)
        r = a[:]
        for shift in range(len(r) - len(b), -1, -1):
            f = (r[shift + len(b) - 1] * inv) % prime
            if f:
                for i in range(len(b)):
                    r[shift + i] = (r[shift + i] - f * b[i]) % prime
        a, b = b, _strip(r)
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    return max(len(a) - 1 - k, 0)


def repeated_nonzero_root_filter(mats: np.ndarray, prime: int = _FILTER_PRIME) -> np.ndarray:
    """Boolean mask: True when char(A)/x may have a repeated nonzero root.

    Conservative: a True can be spurious (bad prime), a False is certain,
    so the exact path only ever skips matrices that provably lack the
    repeated eigenvalue the base-level search requires.
    """
    coeffs = charpoly_batch_mod(mats, prime)
    g, width = coeffs.shape
    out = np.zeros(g, dtype=bool)
    for i in range(g):
        row = coeffs[i]
        # char always has a zero root here (centering projector); divide once.
        h = [int(c) for c in row[1:]]
        out[i] = _polymod_gcd_degree_nonzero(h, prime) >= 1
    return out
