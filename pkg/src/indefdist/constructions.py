"""Explicit coordinate constructions and numeric realization.

The infinite families live in small real quadratic extensions; their
arithmetic is done symbolically (a Q-basis of 1, sqrt(d1), sqrt(d2),
sqrt(d1*d2)), so the claimed distance values are verified by exact
cancellation rather than by intervals.  Numeric realization of arbitrary
dissimilarity matrices diagonalizes at 256-bit precision but never infers a
signature from floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import ratmat
from .algebraic import AlgebraicNumber, refine
from .embedding import RelationDissimilarity, embedding_dimension


class ToleranceExceededError(RuntimeError):
    def __init__(self, max_dev):
        super().__init__(f"realization deviates by {max_dev:.3e}")
        self.max_dev = max_dev


def _sqfree_split(d: int) -> tuple[int, int]:
    """d = s^2 * k with k square-free; returns (s, k)."""
    s, k = 1, 1
    n = d
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        s *= f ** (e // 2)
        if e % 2:
            k *= f
        f += 1
    k *= n
    return s, k


@dataclass(frozen=True)
class Quad:
    """a + b*sqrt(d) with rational a, b; square d folds to a rational."""

    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def make(a, b=0, d=0) -> "Quad":
        a, b = Fraction(a), Fraction(b)
        if b == 0 or d == 0:
            return Quad(a, Fraction(0), 0)
        s = isqrt(d)
        if s * s == d:
            return Quad(a + b * s, Fraction(0), 0)
        return Quad(a, b, d)

    def __add__(self, other):
        other = _as_quad(other, self.d)
        d = self.d or other.d
        return Quad.make(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-_as_quad(other, self.d))

    def __rsub__(self, other):
        return _as_quad(other, self.d) + (-self)

    def __mul__(self, other):
        other = _as_quad(other, self.d)
        d = self.d or other.d
        return Quad.make(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Quad":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("zero or degenerate quadratic element")
        return Quad.make(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        return self * _as_quad(other, self.d).inverse()

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return self.a

    def __float__(self):
        return float(self.a) + float(self.b) * (self.d**0.5)


def _as_quad(x, d) -> Quad:
    if isinstance(x, Quad):
        return x
    return Quad(Fraction(x), Fraction(0), d)


@dataclass(frozen=True)
class Biquad:
    """c0 + c1*sqrt(d1) + c2*sqrt(d2) + c3*sqrt(d1*d2), a faithful basis when
    d1, d2 and d1*d2 are non-squares in pairwise distinct square classes."""

    c: tuple  # four Fractions
    d1: int
    d2: int

    @staticmethod
    def field(d1: int, d2: int):
        if d1 <= 0 or d2 <= 0:
            raise ValueError("radicands must be positive")
        _, k1 = _sqfree_split(d1)
        _, k2 = _sqfree_split(d2)
        _, k12 = _sqfree_split(d1 * d2)
        if 1 in (k1, k2, k12) or len({k1, k2, k12}) < 3:
            raise ValueError(
                f"radicands {d1}, {d2} are degenerate; the 4-term basis is not faithful"
            )

        def make(c0=0, c1=0, c2=0, c3=0):
            return Biquad(tuple(Fraction(x) for x in (c0, c1, c2, c3)), d1, d2)

        return make

    def __add__(self, other):
        o = self._coerce(other)
        return Biquad(tuple(a + b for a, b in zip(self.c, o.c)), self.d1, self.d2)

    __radd__ = __add__

    def __neg__(self):
        return Biquad(tuple(-a for a in self.c), self.d1, self.d2)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = o.c
        d1, d2 = self.d1, self.d2
        c0 = a0 * b0 + d1 * a1 * b1 + d2 * a2 * b2 + d1 * d2 * a3 * b3
        c1 = a0 * b1 + a1 * b0 + d2 * (a2 * b3 + a3 * b2)
        c2 = a0 * b2 + a2 * b0 + d1 * (a1 * b3 + a3 * b1)
        c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
        return Biquad((c0, c1, c2, c3), d1, d2)

    __rmul__ = __mul__

    def inverse(self) -> "Biquad":
        # solve self * x = 1 as a 4x4 rational system
        cols = []
        basis = [
            Biquad((Fraction(1), Fraction(0), Fraction(0), Fraction(0)), self.d1, self.d2),
            Biquad((Fraction(0), Fraction(1), Fraction(0), Fraction(0)), self.d1, self.d2),
            Biquad((Fraction(0), Fraction(0), Fraction(1), Fraction(0)), self.d1, self.d2),
            Biquad((Fraction(0), Fraction(0), Fraction(0), Fraction(1)), self.d1, self.d2),
        ]
        for e in basis:
            cols.append((self * e).c)
        mat = [[cols[j][i] for j in range(4)] for i in range(4)]
        sol = ratmat.solve_fraction(mat, [1, 0, 0, 0])
        if sol is None:
            raise ZeroDivisionError("element is a zero divisor")
        return Biquad(tuple(sol), self.d1, self.d2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def _coerce(self, x) -> "Biquad":
        if isinstance(x, Biquad):
            return x
        if isinstance(x, Quad):
            if x.d == 0:
                return Biquad((x.a, Fraction(0), Fraction(0), Fraction(0)), self.d1, self.d2)
            if x.d == self.d1:
                return Biquad((x.a, x.b, Fraction(0), Fraction(0)), self.d1, self.d2)
            if x.d == self.d2:
                return Biquad((x.a, Fraction(0), x.b, Fraction(0)), self.d1, self.d2)
            raise ValueError("incompatible radicand")
        return Biquad(
            (Fraction(x), Fraction(0), Fraction(0), Fraction(0)), self.d1, self.d2
        )

    def is_rational(self) -> bool:
        return self.c[1] == self.c[2] == self.c[3] == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return self.c[0]

    def __float__(self):
        d1, d2 = self.d1, self.d2
        return (
            float(self.c[0])
            + float(self.c[1]) * d1**0.5
            + float(self.c[2]) * d2**0.5
            + float(self.c[3]) * (d1 * d2) ** 0.5
        )


@dataclass
class PointSet:
    signature: tuple
    points: list  # vectors of Fraction / Quad / Biquad / float entries
    provenance: str
    distance_values: tuple  # the two attained off-diagonal values
    notes: dict

    def size(self) -> int:
        return len(self.points)

    def indefinite_distance(self, i: int, j: int):
        p, q = self.signature
        xi, xj = self.points[i], self.points[j]
        acc = None
        for k in range(p + q):
            diff = xi[k] - xj[k]
            term = diff * diff
            if k >= p:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    def distance_matrix(self):
        n = self.size()
        return [
            [self.indefinite_distance(i, j) if i != j else 0 for j in range(n)]
            for i in range(n)
        ]

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, (int, Fraction)):
                f = Fraction(x)
                return f"{f.numerator}/{f.denominator}"
            if isinstance(x, Quad):
                if x.is_rational():
                    return f"{x.a.numerator}/{x.a.denominator}"
                return {
                    "rational": f"{x.a.numerator}/{x.a.denominator}",
                    "coeffs": [[f"{x.b.numerator}/{x.b.denominator}", x.d]],
                }
            if isinstance(x, Biquad):
                if x.is_rational():
                    return f"{x.c[0].numerator}/{x.c[0].denominator}"
                coeffs = []
                for coef, rad in zip(
                    x.c[1:], (x.d1, x.d2, x.d1 * x.d2)
                ):
                    if coef:
                        coeffs.append([f"{coef.numerator}/{coef.denominator}", rad])
                return {
                    "rational": f"{x.c[0].numerator}/{x.c[0].denominator}",
                    "coeffs": coeffs,
                }
            return float(x).hex()

        return {
            "signature": list(self.signature),
            "size": self.size(),
            "provenance": self.provenance,
            "distance_values": [enc(v) for v in self.distance_values],
            "points": [[enc(x) for x in pt] for pt in self.points],
            "notes": self.notes,
        }

    def to_csv(self) -> str:
        p, q = self.signature
        header = ",".join(
            [f"x{k+1}" for k in range(p)] + [f"y{k+1}" for k in range(q)]
        )
        lines = [f"# signature=({p},{q}) precision=float-approximation", header]
        for pt in self.points:
            lines.append(",".join(f"{float(x):.17g}" for x in pt))
        return "\n".join(lines) + "\n"


def _verify_two_distance(ps: PointSet, edge_value, nonedge_value, edge_test):
    """Exact check that every pair attains edge/non-edge value per the rule."""
    n = ps.size()
    for i in range(n):
        for j in range(i + 1, n):
            got = ps.indefinite_distance(i, j)
            want = edge_value if edge_test(i, j) else nonedge_value
            same = got - want
            if isinstance(same, (int, Fraction)):
                ok = same == 0
            else:
                ok = same.is_rational() and same.rational_value() == 0
            if not ok:
                raise AssertionError(
                    f"pair ({i},{j}): distance {got} != expected {want}"
                )


def build_twentytwo() -> PointSet:
    """The 22-point configuration in R^{6,1}: an apex over six isolated
    vertices joined to the pair family whose disjointness graph is the
    Johnson-graph complement.  Distances 4 (edges) and 2 (non-edges)."""
    return build_johnson_like(6)


def _johnson_like_constants(p: int):
    """Apex coefficients (c, h): p*c^2 + 2c + 1 - (h-1)^2 = 4 on the single
    relation, p*c^2 - 4c + 2 - h^2 = 2 on the pair relation."""
    if p == 9:
        return Quad.make(Fraction(1, 2)), Quad.make(Fraction(1, 2))
    d = p - 5
    c = (Quad.make(4) - Quad.make(0, 2, d)) / Quad.make(9 - p)
    h = Quad.make(2) - Quad.make(3) * c
    return c, h


def build_johnson_like(p: int) -> PointSet:
    """1 + p + p(p-1)/2 points in R^{p,1} with distances {4, 2}.

    Vertices: an apex v0 = c*sum(e_i) + h*e_{p+1}, the singles -e_i + e_{p+1},
    and the pairs e_i + e_j; apex-single and single-in-pair and disjoint-pair
    relations carry 4, everything else 2.  For p = 5 the configuration
    degenerates to the 16-point Euclidean two-distance set in R^5."""
    if p < 5:
        raise ValueError("construction needs p >= 5")
    c, h = _johnson_like_constants(p)
    dim = p + 1
    zero = Quad.make(0)
    points = []
    kinds = []
    apex = [c] * p + [h]
    points.append(apex)
    kinds.append(("apex", None))
    for i in range(p):
        v = [zero] * dim
        v[i] = Quad.make(-1)
        v[p] = Quad.make(1)
        points.append(v)
        kinds.append(("single", i))
    pairs = [(i, j) for i in range(p) for j in range(i + 1, p)]
    for i, j in pairs:
        v = [zero] * dim
        v[i] = Quad.make(1)
        v[j] = Quad.make(1)
        points.append(v)
        kinds.append(("pair", (i, j)))

    def edge_test(a, b):
        (ka, ia), (kb, ib) = kinds[a], kinds[b]
        if ka == "apex" or kb == "apex":
            other = (kb, ib) if ka == "apex" else (ka, ia)
            return other[0] == "single"
        if ka == "single" and kb == "single":
            return False
        if {ka, kb} == {"single", "pair"}:
            single = ia if ka == "single" else ib
            pair = ib if kb == "pair" else ia
            return single in pair
        return not (set(ia) & set(ib))

    ps = PointSet(
        signature=(p, 1),
        points=points,
        provenance=f"apex-singles-pairs configuration, p={p}",
        distance_values=(Fraction(4), Fraction(2)),
        notes={},
    )
    _verify_two_distance(ps, Fraction(4), Fraction(2), edge_test)
    if p == 5:
        ps.notes["euclidean_degeneration"] = (
            "distance matrix embeds in R^{5,0}: the classical 16-point set"
        )
    return ps


def build_family_pq1(n: int) -> PointSet:
    """n(n+3)/2 points with distances {4, 2}, reducible to R^{n,1}.

    Two n-blocks of doubled simplex points plus all pairs e_i + e_j; the two
    auxiliary coordinates carry the constants c1..c4 (all in the biquadratic
    extension generated by sqrt(n(25n-144)) and sqrt(3n(n-6))), and the first
    n coordinates of every point sum to 2, so the ambient R^{n+1,1} reduces
    by one dimension."""
    if n < 7:
        raise ValueError("family needs n >= 7")
    if n == 9:
        c1, c2 = Fraction(3, 4), Fraction(3, 4)
        c3, c4 = Fraction(-2, 3), Fraction(2, 3)

        def lift(x):
            return Fraction(x)

    else:
        d1 = n * (25 * n - 144)
        d2 = 3 * n * (n - 6)
        make = Biquad.field(d1, d2)

        def lift(x):
            return make(Fraction(x))

        c1 = lift(Fraction(3, 4))
        c2 = make(0, Fraction(1, 4 * n))  # sqrt(d1)/(4n)
        sqrt_d2 = make(0, 0, 1)
        c3 = (lift(3 * (2 * n - 9)) + lift(4) * sqrt_d2 * c2) / lift(4 * (n - 9))
        c4 = (lift(n) * (c1 * c3 + lift(2)) - lift(9)) / (lift(n) * c2)

    dim = n + 2
    zero = lift(0)
    base = [lift(Fraction(3, n))] * n
    points = []
    kinds = []
    for i in range(n):
        v = base[:] + [c1, c2]
        v[i] = v[i] - lift(1)
        points.append(v)
        kinds.append(("x1", i))
    for i in range(n):
        v = base[:] + [c3, c4]
        v[i] = v[i] - lift(1)
        points.append(v)
        kinds.append(("x2", i))
    for i in range(n):
        for j in range(i + 1, n):
            v = [zero] * dim
            v[i] = lift(1)
            v[j] = lift(1)
            points.append(v)
            kinds.append(("pair", (i, j)))

    def edge_test(a, b):
        (ka, ia), (kb, ib) = kinds[a], kinds[b]
        xs = {"x1", "x2"}
        if ka in xs and kb in xs:
            return ka != kb and ia != ib
        if ka in xs and kb == "pair":
            return ia in ib
        if kb in xs and ka == "pair":
            return ib in ia
        return not (set(ia) & set(ib))

    ps = PointSet(
        signature=(n + 1, 1),
        points=points,
        provenance=f"two-block pair family, n={n}",
        distance_values=(Fraction(4), Fraction(2)),
        notes={"reduction": "sum of the first n coordinates is 2 for every point"},
    )
    _verify_two_distance(ps, Fraction(4), Fraction(2), edge_test)
    for pt in points:
        s = pt[0]
        for x in pt[1:n]:
            s = s + x
        diff = s - lift(2)
        ok = diff == 0 if isinstance(diff, (int, Fraction)) else (
            diff.is_rational() and diff.rational_value() == 0
        )
        if not ok:
            raise AssertionError("hyperplane reduction identity failed")
    ps.notes["ambient"] = f"given in R^{{{n+1},1}}; reducible to R^{{{n},1}}"
    ps.notes["signature_reduced"] = [n, 1]
    return ps


# -- numeric realization ----------------------------------------------------------


def realize(d, tolerance: float = 1e-9) -> PointSet:
    """Coordinates realizing a dissimilarity matrix, via the centered Gram
    matrix at 256-bit precision.

    The split into positive and negative coordinates follows the exact
    embedding dimension; floats only ever carry magnitudes.  The recomputed
    distance matrix must match within tolerance."""
    from mpmath import mp, mpf, matrix as mpmatrix, eigsy

    emb = embedding_dimension(d).as_pair()
    p, q = emb
    if isinstance(d, RelationDissimilarity):
        n = d.graph.n
        a1 = d.graph.adjacency()
        a2 = d.graph.complement_adjacency()
        bval = _to_mpf(d.b)
        dmat = [
            [d.a * a1[i][j] + bval * a2[i][j] for j in range(n)] for i in range(n)
        ]
    else:
        n = len(d)
        dmat = [[_to_mpf(x) for x in row] for row in d]
    with _mp_prec(256):
        gram = mpmatrix(n, n)
        # Gram of the centered points is F/2 with F = -(I - J/n) D (I - J/n);
        # on the unit-distance pair D = [[0,1],[1,0]] this gives the classical
        # torgerson matrix P/2, pinning the sign.
        rowmean = [sum(dmat[i][j] for j in range(n)) / n for i in range(n)]
        total = sum(rowmean) / n
        for i in range(n):
            for j in range(n):
                f = -(dmat[i][j] - rowmean[i] - rowmean[j] + total)
                gram[i, j] = f / 2
        eigvals, eigvecs = eigsy(gram)
        order = sorted(range(n), key=lambda k: -eigvals[k])
        pos_idx = order[:p]
        neg_idx = sorted(range(n), key=lambda k: eigvals[k])[:q]
        points = []
        for i in range(n):
            coords = []
            for k in pos_idx:
                coords.append(float(eigvecs[i, k] * mp.sqrt(abs(eigvals[k]))))
            for k in neg_idx:
                coords.append(float(eigvecs[i, k] * mp.sqrt(abs(eigvals[k]))))
            points.append(coords)
    ps = PointSet(
        signature=(p, q),
        points=points,
        provenance="numeric realization",
        distance_values=(),
        notes={"tolerance": tolerance},
    )
    max_dev = 0.0
    for i in range(n):
        for j in range(n):
            got = float(ps.indefinite_distance(i, j)) if i != j else 0.0
            want = float(dmat[i][j])
            max_dev = max(max_dev, abs(got - want))
    if max_dev > tolerance:
        raise ToleranceExceededError(max_dev)
    ps.notes["max_deviation"] = max_dev
    return ps


def _to_mpf(x):
    from mpmath import mpf

    if isinstance(x, AlgebraicNumber):
        r = refine(x, Fraction(1, 1 << 300))
        mid = (r.lo + r.hi) / 2
        return mpf(mid.numerator) / mpf(mid.denominator)
    f = Fraction(x)
    return mpf(f.numerator) / mpf(f.denominator)


class _mp_prec:
    def __init__(self, prec):
        self.prec = prec

    def __enter__(self):
        from mpmath import mp

        self.old = mp.prec
        mp.prec = self.prec

    def __exit__(self, *exc):
        from mpmath import mp

        mp.prec = self.old
