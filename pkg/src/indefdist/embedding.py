"""Embedding dimensions, type classification, and small-order scans.

A two-valued dissimilarity structure is carried as (graph, a, b): edges of the
graph get the value a (normalized to +-1), non-edges the value b with |b| < 1.
The embedding dimension of a dissimilarity matrix M is the signature of
F_M(l) = -(I - j l^T) M (I - l j^T), independent of the normalized vector l;
everything here evaluates such signatures exactly, for rational and algebraic
b alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from . import intpoly as ip
from . import ratmat
from . import spectral as sp
from .algebraic import (
    AlgebraicNumber,
    alg_compare,
    alg_sign,
    from_rational,
    isolate_roots,
    lambda_to_b,
    refine,
    scale_down,
)
from .graphs import Graph, graph6_decode, graph6_encode
from .spectral import Signature


class NormalizationError(ValueError):
    """The weight vector l does not satisfy l^T j = 1."""


class NonCommutingError(ValueError):
    """The centered relation matrices do not commute."""


class InconsistentTypeError(RuntimeError):
    """sign(-D) and the embedding dimension match none of the four cases."""


@dataclass(frozen=True)
class RelationDissimilarity:
    """D = a*A1 + b*A2 with A1 the edge relation and A2 the non-edge relation."""

    graph: Graph
    a: int
    b: object  # Fraction or AlgebraicNumber

    def __post_init__(self):
        if self.a not in (1, -1):
            raise ValueError("a must be +1 or -1")

    def b_is_rational(self) -> bool:
        return isinstance(self.b, Fraction) or (
            isinstance(self.b, AlgebraicNumber) and self.b.is_rational()
        )

    def b_fraction(self) -> Fraction:
        if isinstance(self.b, Fraction):
            return self.b
        return self.b.rational_value()

    def b_algebraic(self) -> AlgebraicNumber:
        if isinstance(self.b, AlgebraicNumber):
            return self.b
        return from_rational(self.b)

    def to_json(self) -> dict:
        bj = (
            f"{self.b_fraction().numerator}/{self.b_fraction().denominator}"
            if self.b_is_rational()
            else self.b_algebraic().to_json()
        )
        return {"graph6": graph6_encode(self.graph), "a": self.a, "b": bj}

    @staticmethod
    def from_json(data) -> "RelationDissimilarity":
        b = data["b"]
        if isinstance(b, str):
            num, den = b.split("/")
            bval: object = Fraction(int(num), int(den))
        else:
            bval = AlgebraicNumber.from_json(b)
        return RelationDissimilarity(graph6_decode(data["graph6"]), int(data["a"]), bval)


# -- F-matrix and embedding dimension ----------------------------------------


def f_matrix(mat, ell):
    """F_M(l) = -(I - j l^T) M (I - l j^T) over Fraction; l^T j must be 1."""
    n = len(mat)
    ell = [Fraction(x) for x in ell]
    if sum(ell) != 1:
        raise NormalizationError("l^T j must equal 1")
    m = [[Fraction(x) for x in row] for row in mat]
    left = [[(1 if i == j else 0) - ell[j] * 1 for j in range(n)] for i in range(n)]
    # I - j l^T has entry delta_ij - l_j; I - l j^T has entry delta_ij - l_i
    right = [[(1 if i == j else 0) - ell[i] for j in range(n)] for i in range(n)]
    prod = ratmat.mat_mul(ratmat.mat_mul(left, m), right)
    return [[-x for x in row] for row in prod]


def _centered_neg_int(mat_int, n):
    """-(nI - J) X (nI - J) for an integer matrix X (equals n^2 * -PXP)."""
    rowsum = [sum(r) for r in mat_int]
    total = sum(rowsum)
    return [
        [
            -(n * n * mat_int[i][j] - n * (rowsum[i] + rowsum[j]) + total)
            for j in range(n)
        ]
        for i in range(n)
    ]


def centered_relation_pencil(g: Graph, a: int) -> tuple[list[list[int]], list[list[int]]]:
    """Integer (M0, M1) with M0 + t*M1 = n^2 * (-P (a*A1 + t*A2) P)."""
    n = g.n
    a1 = g.adjacency()
    a2 = g.complement_adjacency()
    m0 = _centered_neg_int([[a * x for x in row] for row in a1], n)
    m1 = _centered_neg_int(a2, n)
    return m0, m1


def relation_pencil(g: Graph, a: int) -> tuple[list[list[int]], list[list[int]]]:
    """Integer (M0, M1) with M0 + t*M1 = -(a*A1 + t*A2)."""
    a1 = g.adjacency()
    a2 = g.complement_adjacency()
    return (
        [[-a * x for x in row] for row in a1],
        [[-x for x in row] for row in a2],
    )


def _pencil_signature(m0, m1, b) -> Signature:
    if isinstance(b, Fraction) or (isinstance(b, AlgebraicNumber) and b.is_rational()):
        t = b if isinstance(b, Fraction) else b.rational_value()
        u, v = t.numerator, t.denominator
        n = len(m0)
        cleared = [[v * m0[i][j] + u * m1[i][j] for j in range(n)] for i in range(n)]
        return sp.signature_from_charpoly(ratmat.charpoly_int(cleared))
    bi = sp.pencil_bivariate(m0, m1)
    return sp.signature_at_algebraic(bi, b)


def embedding_dimension(d) -> Signature:
    """Signature of F_D(j/n): for a RelationDissimilarity via the integer
    pencil, for a plain rational matrix via exact centering."""
    if isinstance(d, RelationDissimilarity):
        m0, m1 = centered_relation_pencil(d.graph, d.a)
        return _pencil_signature(m0, m1, d.b)
    n = len(d)
    cleared, _ = ratmat.clear_denominators(d)
    m = _centered_neg_int(cleared, n)
    return sp.signature_from_charpoly(ratmat.charpoly_int(m))


def negd_signature(d) -> Signature:
    """Signature of -D."""
    if isinstance(d, RelationDissimilarity):
        m0, m1 = relation_pencil(d.graph, d.a)
        return _pencil_signature(m0, m1, d.b)
    cleared, _ = ratmat.clear_denominators(d)
    return sp.signature_from_charpoly(
        ratmat.charpoly_int([[-x for x in row] for row in cleared])
    )


def f_signature(d, ell) -> Signature:
    """Signature of F_D(l) for any rational l with l^T j = 1."""
    ell = [Fraction(x) for x in ell]
    if sum(ell) != 1:
        raise NormalizationError("l^T j must equal 1")
    if not isinstance(d, RelationDissimilarity):
        return sp.signature_from_charpoly(
            ratmat.charpoly_scaled(f_matrix(d, ell))[0]
        )
    n = d.graph.n
    den = lcm(*[x.denominator for x in ell])
    lv = [int(x * den) for x in ell]
    # -(den*I - j lv^T) (a A1 + t A2) (den*I - lv j^T), an integer pencil
    a1 = d.graph.adjacency()
    a2 = d.graph.complement_adjacency()

    def wrap(x):
        left = [[(den if i == j else 0) - lv[j] for j in range(n)] for i in range(n)]
        right = [[(den if i == j else 0) - lv[i] for j in range(n)] for i in range(n)]
        return [
            [-y for y in row]
            for row in ratmat.mat_mul(ratmat.mat_mul(left, x), right)
        ]

    m0 = wrap([[d.a * x for x in row] for row in a1])
    m1 = wrap(a2)
    return _pencil_signature(m0, m1, d.b)


# -- type classification -------------------------------------------------------


def classify_type(d) -> int:
    """Representation type 1..4 by comparing sign(-D) with the embedding
    dimension (the four cases are exhaustive; anything else is an internal
    arithmetic error)."""
    p, q = embedding_dimension(d).as_pair()
    sd = negd_signature(d).as_pair()
    if sd == (p + 1, q + 1):
        return 1
    if sd == (p, q + 1):
        return 2
    if sd == (p + 1, q):
        return 3
    if sd == (p, q):
        return 4
    raise InconsistentTypeError(f"sign(-D)={sd} incompatible with embedding {(p, q)}")


def f_signature_from_spectrum(mat) -> Signature:
    """Signature of F_M(l) computed from sign(M), the mainness of 0, and the
    sign of the main harmonic sum, without forming F."""
    p, q = sp.signature(mat).as_pair()
    mp = sp.main_polynomial(mat)
    if mp[0] == 0:  # 0 is a main eigenvalue
        return Signature(q, p)
    s, _ = sp.harmonic_main_sum_sign(mat)
    if s == 0:
        return Signature(q - 1, p - 1)
    if s > 0:
        return Signature(q, p - 1)
    return Signature(q - 1, p)


# -- commuting relation matrices ----------------------------------------------


def commuting_dimensionality(relations, a_vec) -> Signature:
    """Representable signature of sum_i a_i A_i via the common eigenspace
    structure of the centered relation matrices (they must commute)."""
    n = len(relations[0])
    s = len(relations)
    if len(a_vec) != s:
        raise ValueError("coefficient count must match relation count")
    check = [[0] * n for _ in range(n)]
    for rel in relations:
        for i in range(n):
            for j in range(n):
                check[i][j] += rel[i][j]
    for i in range(n):
        for j in range(n):
            expected = 0 if i == j else 1
            if check[i][j] != expected:
                raise sp.RelationCoverError("relations must partition J - I")
    cent = []
    for rel in relations:
        cent.append(_centered_neg_int([[-x for x in row] for row in rel], n))
    for i in range(s):
        for j in range(i + 1, s):
            ab = ratmat.mat_mul(cent[i], cent[j])
            ba = ratmat.mat_mul(cent[j], cent[i])
            if ab != ba:
                raise NonCommutingError("centered relation matrices do not commute")
    a_vec = [Fraction(x) for x in a_vec]
    if s == 2:
        # On j-perp the second centered matrix acts as -1 - mu in terms of the
        # first one's eigenvalue mu, so the eigenvalue of F on that eigenspace
        # is a2 - (a1 - a2) * mu with mu = y / n^2 for a root y of h.
        h = _jperp_charpoly(cent[0], n)
        c0 = a_vec[1]
        c1 = -(a_vec[0] - a_vec[1]) / (n * n)
        den = lcm(c0.denominator, c1.denominator)
        lin = ip.normalize((int(c0 * den), int(c1 * den)))
        pos = neg = 0
        for factor, mult in ip.squarefree_decompose(h):
            for root in isolate_roots(factor):
                sgn = alg_sign(lin, root)
                if sgn > 0:
                    pos += mult
                elif sgn < 0:
                    neg += mult
        return Signature(pos, neg)
    return _block_signature(cent, a_vec, n)


def _jperp_charpoly(centered, n):
    """charpoly of an integer centered matrix restricted to j-perp: the
    trivial zero eigenvalue of the j-direction is divided out."""
    cp = ratmat.charpoly_int(centered)
    return ip.div_exact(cp, (0, 1))


def _block_signature(cent, a_vec, n) -> Signature:
    """Sign counts per common rational invariant block (s >= 3)."""
    den = lcm(*[Fraction(x).denominator for x in a_vec])
    comb_mat = [[0] * n for _ in range(n)]
    for coef, m in zip(a_vec, cent):
        c = int(Fraction(coef) * den)
        for i in range(n):
            for j in range(n):
                comb_mat[i][j] += c * m[i][j]
    # The combined matrix is -den * n^2 * F; its signature is (q, p) of F.
    sig = sp.signature_from_charpoly(ratmat.charpoly_int(comb_mat))
    return Signature(sig.negatives, sig.positives)


# -- small-order exhaustive scan ------------------------------------------------


@dataclass(frozen=True)
class ScanWitness:
    graph: Graph
    branch: int
    kind: str  # "point" or "interval"
    lam: AlgebraicNumber | None  # eigenvalue of P A1 P for point witnesses
    b: object | None  # the exact b for point witnesses
    b_range: tuple | None  # (lo, hi) in b-space for interval witnesses


def _rational_between(lo: AlgebraicNumber, hi: AlgebraicNumber) -> Fraction:
    """A rational strictly between two algebraic numbers with lo < hi."""
    a, b = lo, hi
    while a.hi >= b.lo:
        if a.width() >= b.width() and not a.is_rational():
            a = refine(a, a.width() / 2)
        elif not b.is_rational():
            b = refine(b, b.width() / 2)
        else:
            a = refine(a, a.width() / 2)
    gap_lo, gap_hi = a.hi, b.lo
    if gap_lo < gap_hi:
        return (gap_lo + gap_hi) / 2
    # touching endpoints: a.hi == b.lo is strictly between the two numbers
    return gap_lo


def scan_small_orders(p: int, q: int, n: int, graphs=None) -> list[ScanWitness]:
    """All (graph, branch, b) of order n with embedding dimension exactly
    (p, q): isolated critical values and open b-intervals.

    b ranges over (-1, 0) and (0, 1); the signature is piecewise constant
    between the critical values b = mu/(1+mu) of eigenvalues mu of P A1 P on
    j-perp, so one exact evaluation per cell and per critical value decides
    everything.
    """
    if n < 3:
        raise ValueError("scan requires n >= 3")
    from .graphs import generate_all

    if graphs is None:
        graphs = generate_all(n)
    winners = []
    branches = (1,) if p == q else (1, -1)
    for g in graphs:
        if g.is_empty() or g.is_complete():
            continue
        m0, _ = centered_relation_pencil(g, 1)
        h = _jperp_charpoly([[-x for x in row] for row in m0], g.n)
        # h's roots are y = n^2 * mu
        roots = []
        for factor, mult in ip.squarefree_decompose(h):
            for r in isolate_roots(factor):
                roots.append((r, mult))
        roots.sort(key=lambda rm: (rm[0].lo, rm[0].hi))
        for branch in branches:
            winners.extend(_scan_graph(g, branch, roots, p, q))
    return winners


def _scan_graph(g: Graph, branch: int, roots, p: int, q: int):
    n = g.n
    n2 = n * n
    lo_bound = from_rational(Fraction(-n2, 2))  # y > -n^2/2 <=> lambda > -1/2
    zero = from_rational(0)
    out = []
    # roots inside the admissible y-range, in increasing order
    in_range = [
        (r, m) for (r, m) in roots if alg_compare(r, lo_bound) > 0
    ]
    below_range = sum(m for (r, m) in roots if alg_compare(r, lo_bound) <= 0)
    # counts below/above each in-range root (within the full j-perp spectrum)
    total = sum(m for _, m in roots)
    # point witnesses at critical values
    acc_below = below_range
    for r, m in in_range:
        if alg_sign((0, 1), r) != 0:  # skip lambda = 0
            above = total - acc_below - m
            below = acc_below
            emb = (below, above) if branch == 1 else (above, below)
            if emb == (p, q):
                lam = scale_down(r, n2)
                out.append(
                    ScanWitness(g, branch, "point", lam, lambda_to_b(lam, branch), None)
                )
        acc_below += m
    # open cells: boundaries are -n^2/2, the in-range roots, 0, +infinity
    cuts = [lo_bound] + [r for r, _ in in_range] + [None]
    if not any(alg_sign((0, 1), r) == 0 for r, _ in in_range):
        # 0 is a cell interior point when it is not an eigenvalue: split there
        pass
    for idx in range(len(cuts) - 1):
        lo_cut, hi_cut = cuts[idx], cuts[idx + 1]
        samples = _cell_samples(lo_cut, hi_cut, zero, n2)
        for y_s in samples:
            below = below_range + sum(
                m for (r, m) in in_range if alg_compare(r, from_rational(y_s)) < 0
            )
            above = total - below
            emb = (below, above) if branch == 1 else (above, below)
            if emb == (p, q):
                b_lo, b_hi = _cell_b_range(lo_cut, hi_cut, Fraction(y_s), zero, n2, branch)
                out.append(ScanWitness(g, branch, "interval", None, None, (b_lo, b_hi)))
    return out


def _cell_samples(lo_cut, hi_cut, zero, n2):
    """Rational sample y-values for the open cell, split at 0 when inside."""
    if hi_cut is None:
        base = lo_cut.hi + 1
        hi = from_rational(max(Fraction(base), Fraction(1)) + n2)
    else:
        hi = hi_cut
    samples = []
    lo_cmp_zero = alg_compare(lo_cut, zero)
    hi_cmp_zero = alg_compare(hi, zero) if hi_cut is not None else 1
    if lo_cmp_zero < 0 and hi_cmp_zero > 0:
        samples.append(_rational_between(lo_cut, zero))
        samples.append(_rational_between(zero, hi))
    else:
        s = _rational_between(lo_cut, hi)
        if s != 0:
            samples.append(s)
    return samples


def _cell_b_range(lo_cut, hi_cut, y_s, zero, n2, branch):
    """b-space bounds of the cell piece holding the sample (cells straddling
    zero are split there; branch -1 negates and swaps the bounds)."""
    lo = lambda_to_b(scale_down(lo_cut, n2), 1)
    hi = (
        from_rational(1)
        if hi_cut is None
        else lambda_to_b(scale_down(hi_cut, n2), 1)
    )
    if y_s > 0 and alg_compare(lo_cut, zero) < 0:
        lo = from_rational(0)
    if y_s < 0 and (hi_cut is None or alg_compare(hi_cut, zero) > 0):
        hi = from_rational(0)
    if branch == -1:
        from .algebraic import negate

        lo, hi = negate(hi), negate(lo)
    return lo, hi


# -- bounds and distance invariants ---------------------------------------------


def bound_ambient(p: int, q: int, s: int) -> int:
    return comb(p + q + s, s)


def bound_sphere(p: int, q: int, s: int) -> int:
    return comb(p + q + s - 1, s) + comb(p + q + s - 2, s - 1)


def bound_sphere_q1(p: int, s: int) -> int:
    return comb(p + s, s)


def k_integrality(distances) -> list[Fraction]:
    """K_i = prod_{j != i} a_j / (a_j - a_i) for distinct nonzero distances."""
    vals = [Fraction(x) for x in distances]
    if any(v == 0 for v in vals):
        raise ValueError("distances must be nonzero")
    out = []
    for i, ai in enumerate(vals):
        k = Fraction(1)
        for j, aj in enumerate(vals):
            if i == j:
                continue
            if aj == ai:
                raise ZeroDivisionError("distances must be distinct")
            k *= aj / (aj - ai)
        out.append(k)
    return out
