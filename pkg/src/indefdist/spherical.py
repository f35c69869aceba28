"""Sphericity, radii, and the classification of largest spherical configurations.

A dissimilarity matrix of embedding dimension (p, q) lives on a sphere of that
same signature exactly when its type is 2 (sign(-D) = (p, q+1)); the squared
radius parameter a = 2r then satisfies sign(-D + aJ) = (p, q), and a is the
negated reciprocal of the main harmonic sum of -D.  Both the value and the
signature certificate are computed exactly, including for algebraic distance
values b.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import intpoly as ip
from . import ratmat
from .algebraic import alg_sign
from .embedding import (
    RelationDissimilarity,
    classify_type,
    embedding_dimension,
)
from .quotient import NumberContext, charpoly_elements, solve_linear
from .spectral import Signature


class TypeError2(ValueError):
    """Operation requires a type-2 dissimilarity matrix."""


@dataclass(frozen=True)
class SphericalPlacement:
    signature: tuple
    a: object  # Fraction or AlgebraicNumber: sign(-D + aJ) = signature, a = 2r
    radius: object  # a / 2


def is_spherical_in_embedding(d) -> bool:
    """Spherical in the embedding dimension iff the type is 2."""
    return classify_type(d) == 2


def _neg_d_matrix_fraction(d):
    if isinstance(d, RelationDissimilarity):
        a1 = d.graph.adjacency()
        a2 = d.graph.complement_adjacency()
        b = d.b_fraction()
        n = d.graph.n
        return [
            [-(d.a * a1[i][j] + b * a2[i][j]) for j in range(n)] for i in range(n)
        ]
    return [[-Fraction(x) for x in row] for row in d]


def _radius_rational(d) -> Fraction:
    """a = -1 / (j^T x / 1) for a rational solution of (-D) x = j."""
    negd = _neg_d_matrix_fraction(d)
    x = ratmat.solve_fraction(negd, [1] * len(negd))
    if x is None:
        raise TypeError2("the all-one vector is outside the column space of -D")
    s = sum(x)  # equals sum of n*beta^2/lambda over main eigenvalues of -D
    if s >= 0:
        raise TypeError2("main harmonic sum is not negative; matrix is not type 2")
    return -1 / s


def _signature_negd_plus_aj_rational(d, a: Fraction) -> Signature:
    negd = _neg_d_matrix_fraction(d)
    n = len(negd)
    mat = [[negd[i][j] + a for j in range(n)] for i in range(n)]
    cleared, _ = ratmat.clear_denominators(mat)
    from .spectral import signature_from_charpoly

    return signature_from_charpoly(ratmat.charpoly_int(cleared))


def _radius_algebraic(d: RelationDissimilarity):
    """(a as AlgebraicNumber, certifier) for algebraic b via Q(b) arithmetic."""
    b = d.b_algebraic()
    ctx = NumberContext(b)
    t = ctx.generator()
    a1 = d.graph.adjacency()
    a2 = d.graph.complement_adjacency()
    n = d.graph.n
    negd = [
        [
            ctx.sub(
                ctx.zero(),
                ctx.add(
                    ctx.from_fraction(d.a * a1[i][j]),
                    ctx.mul_scalar(t, a2[i][j]),
                ),
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    one = ctx.one()
    sol = solve_linear(ctx, negd, [one] * n)
    if sol is None:
        raise TypeError2("the all-one vector is outside the column space of -D")
    s = ctx.zero()
    for x in sol:
        s = ctx.add(s, x)
    if ctx.sign(s) >= 0:
        raise TypeError2("main harmonic sum is not negative; matrix is not type 2")
    a_elem = ctx.neg(ctx.inverse(s))
    # certify sign(-D + aJ) over Q(b)
    mat = [[ctx.add(negd[i][j], a_elem) for j in range(n)] for i in range(n)]
    coeffs = charpoly_elements(ctx, mat)
    signs = [ctx.sign(c) for c in coeffs]
    sig = _descartes_from_signs(signs)
    a_alg = ctx.to_algebraic(a_elem)
    return a_alg, sig


def _descartes_from_signs(signs):
    def var(seq):
        count = 0
        prev = 0
        for s in seq:
            if s == 0:
                continue
            if prev and s != prev:
                count += 1
            prev = s
        return count

    pos = var(signs)
    neg = var(s * (-1 if i % 2 else 1) for i, s in enumerate(signs))
    return Signature(pos, neg)


def spherical_radius(d) -> SphericalPlacement:
    """Radius certificate for a type-2 dissimilarity matrix.

    The harmonic-sum formula fixes |a|; the sign is pinned by requiring a > 0
    and sign(-D + aJ) equal to the embedding dimension, never by the formula
    alone."""
    emb = embedding_dimension(d).as_pair()
    if classify_type(d) != 2:
        raise TypeError2("spherical radius exists only for type-2 matrices")
    rational = not isinstance(d, RelationDissimilarity) or d.b_is_rational()
    if rational:
        a = _radius_rational(d)
        if a <= 0:
            raise TypeError2("no positive radius certifies this matrix")
        sig = _signature_negd_plus_aj_rational(d, a)
        if sig.as_pair() != emb:
            raise AssertionError(
                f"radius certificate failed: sign(-D+aJ)={sig.as_pair()} != {emb}"
            )
        return SphericalPlacement(emb, a, a / 2)
    a_alg, sig = _radius_algebraic(d)
    if not (alg_sign((0, 1), a_alg) > 0 and sig.as_pair() == emb):
        raise AssertionError(
            f"radius certificate failed: a={float(a_alg):.6f}, sign={sig.as_pair()}"
        )
    from .algebraic import scale_down

    return SphericalPlacement(emb, a_alg, scale_down(a_alg, 2))


def signature_shifted(d, a: Fraction) -> Signature:
    """sign(-D + aJ) for a rational probe value a (flip checks around the
    critical radius)."""
    if isinstance(d, RelationDissimilarity) and not d.b_is_rational():
        b = d.b_algebraic()
        ctx = NumberContext(b)
        t = ctx.generator()
        a1 = d.graph.adjacency()
        a2 = d.graph.complement_adjacency()
        n = d.graph.n
        mat = [
            [
                ctx.add(
                    ctx.from_fraction(Fraction(a) - d.a * a1[i][j]),
                    ctx.mul_scalar(t, -a2[i][j]),
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
        coeffs = charpoly_elements(ctx, mat)
        return _descartes_from_signs([ctx.sign(c) for c in coeffs])
    return _signature_negd_plus_aj_rational(d, Fraction(a))


def minimal_spherical_dimension(d) -> tuple[tuple, object]:
    """Smallest sphere signature carrying the matrix, with a witness a.

    Type 2 lives on the sphere of its own embedding dimension; types 3 and 4
    lift to (p+1, q); type 1 lifts to (p+1, q+1); any positive a witnesses the
    lifted cases."""
    p, q = embedding_dimension(d).as_pair()
    t = classify_type(d)
    if t == 2:
        placement = spherical_radius(d)
        return (p, q), placement.a
    if t in (3, 4):
        return (p + 1, q), Fraction(1)
    return (p + 1, q + 1), Fraction(1)


# -- classification of largest spherical configurations ---------------------------


@dataclass(frozen=True)
class SphericalWinner:
    """One winning configuration with its sphericity certificate."""

    winner: object  # search.CellWinner (mirrored into this cell when needed)
    type_index: int  # type of the configuration as placed (2 for in-place)
    radius: object  # exact squared-radius r = a/2 for in-place type 2, else None
    lifted_from: tuple | None  # ((p', q'), type) when placed via a dimension lift
    mirrored: bool = False


@dataclass
class SphericalResult:
    p: int
    q: int
    max_order: int | None
    infinite: bool
    winners: list
    excluded_top: list  # (CellWinner, type): proper (p,q) winners beaten by type
    elapsed: float = 0.0

    def config_count(self):
        return None if self.infinite else len(self.winners)

    def distinct_graph_count(self):
        from .graphs import canonical_key

        return len({canonical_key(w.winner.graph) for w in self.winners})


_MIRROR_TYPE = {1: 1, 2: 3, 3: 2, 4: 4}


def _mirror_winner(w):
    """The anti-isometric configuration: D negated, so branch and b flip."""
    from .algebraic import negate
    from .search import CellWinner

    b = None
    if w.b is not None:
        b = -w.b if isinstance(w.b, Fraction) else negate(w.b)
    b_range = None
    if w.b_range is not None:
        lo, hi = w.b_range
        b_range = (negate(hi), negate(lo))
    return CellWinner(
        graph=w.graph,
        branch=-w.branch,
        kind=w.kind,
        lam=w.lam,
        b=b,
        b_range=b_range,
        embedding=(w.embedding[1], w.embedding[0]),
    )


def _winner_rd(w) -> RelationDissimilarity:
    return RelationDissimilarity(w.graph, w.branch, w.b)


def classify_spherical(
    p: int,
    q: int,
    workers: int = 1,
    checkpoint_dir: str | None = None,
    resume: bool = False,
    progress=None,
    cell_cache: dict | None = None,
) -> SphericalResult:
    """Largest proper spherical two-distance configurations in R^{p,q}.

    Every proper spherical configuration is, in its own embedding dimension,
    either type 2 at (p, q), type 3 or 4 at (p-1, q), or type 1 at
    (p-1, q-1); each route is harvested largest-first and the maximum order
    wins.  For p = q a type-3 winner counts through its negation (which is
    type 2 in the same cell), and the (p-1, q) route reads the mirrored cell
    (q, p-1) with mirrored types.
    """
    t0 = time.time()
    if q > p:
        raise ValueError("use p >= q; the cell (p,q) mirrors (q,p)")
    if p == q:
        routes = [((p, q), frozenset({2, 3}), "self")]
    else:
        routes = [((p, q), frozenset({2}), "place")]
    if p - 1 >= q:
        routes.append(((p - 1, q), frozenset({3, 4}), "lift"))
    elif p == q:
        routes.append(((q, p - 1), frozenset({2, 4}), "mirror"))
    if q >= 1 and p - 1 >= q - 1:
        routes.append(((p - 1, q - 1), frozenset({1}), "lift"))

    best_order = None
    winners: list[SphericalWinner] = []
    excluded_top: list = []
    infinite = False

    for (cp, cq), types, mode in routes:
        if cp < 1:
            continue
        got = _typed_cell_winners(
            cp,
            cq,
            types,
            mode,
            best_order,
            workers,
            checkpoint_dir,
            resume,
            progress,
            cell_cache,
            excluded_top if (cp, cq) == (p, q) else None,
        )
        if got is None:
            continue
        order, wins, inf = got
        if best_order is None or order > best_order:
            best_order = order
            winners = wins
            infinite = inf
        elif order == best_order:
            winners.extend(wins)
            infinite = infinite or inf
    return SphericalResult(
        p=p,
        q=q,
        max_order=best_order,
        infinite=infinite,
        winners=winners,
        excluded_top=excluded_top,
        elapsed=time.time() - t0,
    )


def _typed_cell_winners(
    cp,
    cq,
    types,
    mode,
    stop_order,
    workers,
    checkpoint_dir,
    resume,
    progress,
    cell_cache,
    excluded_sink,
):
    """(order, [SphericalWinner], infinite) for the largest proper sets of
    cell (cp, cq) with type in ``types``, or None when nothing beats the
    current best order."""
    from .search import harvest_levels, run_cell_search

    cell = None
    if cell_cache is not None:
        cell = cell_cache.get((cp, cq))
    if cell is None:
        cell = run_cell_search(
            cp,
            cq,
            workers=workers,
            checkpoint_dir=checkpoint_dir,
            resume=resume,
            progress=progress,
        )
        if cell_cache is not None:
            cell_cache[(cp, cq)] = cell

    excluded: list = []

    def accept(g, lkey):
        got = _typed_accept(g, lkey, cp, cq, types)
        if got is None:
            return None
        w, t = got
        if t not in types:
            excluded.append((w, t))
            return None
        return _decorate(w, t, mode, (cp, cq))

    order, wins = harvest_levels(cell, accept)
    if excluded_sink is not None:
        top = max((w.graph.n for w, _t in excluded), default=None)
        if top is not None and (order is None or top >= order):
            excluded_sink.extend((w, t) for w, t in excluded if w.graph.n == top)
    if order is not None:
        if stop_order is not None and order < stop_order:
            return None
        return order, wins, False
    base_n = cp + cq + 3
    floor = stop_order if stop_order is not None else 3
    exclusions_recorded = False
    for n in range(base_n - 1, 2, -1):
        if n < floor:
            return None
        wins, inf, rejected = _typed_scan_winners(cp, cq, n, types, mode)
        if excluded_sink is not None and not exclusions_recorded and (wins or rejected):
            # the first scan order with any proper winner is the ambient
            # maximum; its wrong-typed members are the type-beaten ones
            excluded_sink.extend(rejected)
            exclusions_recorded = True
        if wins:
            return n, wins, inf
    return None


def _typed_accept(g, lkey, cp, cq, types):
    from .search import CellWinner, verify_representable

    ok, proper, emb = verify_representable(g, lkey, cp, cq)
    if not (ok and proper):
        return None
    rd = RelationDissimilarity(g, lkey.branch, lkey.b_value())
    t = classify_type(rd)
    w = CellWinner(
        graph=g,
        branch=lkey.branch,
        kind="level",
        lam=lkey.lam,
        b=lkey.b_value(),
        b_range=None,
        embedding=emb.as_pair(),
    )
    return w, t


def _decorate(w, t, mode, source_cell) -> SphericalWinner:
    """Turn a typed cell winner into a placed spherical winner.

    Interval families carry no single radius (it varies with b across the
    family), so their radius stays None."""

    def radius_of(winner):
        if winner.b is None:
            return None
        return spherical_radius(_winner_rd(winner)).radius

    if mode == "place":
        return SphericalWinner(w, 2, radius_of(w), None)
    if mode == "self":
        if t == 2:
            return SphericalWinner(w, 2, radius_of(w), None)
        # type 3 in R^{p,p}: the negation is type 2 in the same cell
        m = _mirror_winner(w)
        return SphericalWinner(m, 2, radius_of(m), None, mirrored=True)
    if mode == "mirror":
        m = _mirror_winner(w)
        return SphericalWinner(m, _MIRROR_TYPE[t], None, (source_cell, t), mirrored=True)
    return SphericalWinner(w, t, None, (source_cell, t))


def _typed_scan_winners(cp, cq, n, types, mode):
    """Scan-based winners of order n with types in ``types``, plus the
    rejected point configurations with their types; interval families are
    subdivided at the zeros of the sign(-D) coefficients."""
    from .embedding import scan_small_orders
    from .search import CellWinner

    out = []
    rejected = []
    infinite = False
    for w in scan_small_orders(cp, cq, n):
        if w.kind == "point":
            rd = RelationDissimilarity(w.graph, w.branch, w.b)
            t = classify_type(rd)
            win = CellWinner(
                graph=w.graph,
                branch=w.branch,
                kind="scan-point",
                lam=w.lam,
                b=w.b,
                b_range=None,
                embedding=(cp, cq),
            )
            if t in types:
                out.append(_decorate(win, t, mode, (cp, cq)))
            else:
                rejected.append((win, t))
        else:
            for lo, hi, t in _typed_subranges(w, cp, cq):
                if t in types:
                    win = CellWinner(
                        graph=w.graph,
                        branch=w.branch,
                        kind="scan-interval",
                        lam=None,
                        b=None,
                        b_range=(lo, hi),
                        embedding=(cp, cq),
                    )
                    out.append(_decorate(win, t, mode, (cp, cq)))
                    infinite = True
    return out, infinite, rejected


def _typed_subranges(witness, cp, cq):
    """Split a b-interval family wherever a coefficient of the -(a A1 + t A2)
    characteristic polynomial vanishes; type and embedding are constant on the
    open pieces, and pieces sharing an unbroken cut are merged back."""
    from . import spectral as sp
    from .algebraic import alg_compare, isolate_roots
    from .embedding import _rational_between

    g = witness.graph
    bi = sp.char_poly_bivariate(
        g.adjacency(), g.complement_adjacency(), witness.branch
    )
    lo, hi = witness.b_range
    cuts = []
    for coeff in bi.coeffs_by_xdeg:
        if ip.degree(coeff) < 1:
            continue
        for r in isolate_roots(coeff):
            if alg_compare(r, lo) > 0 and alg_compare(r, hi) < 0:
                cuts.append(r)
    cuts.sort(key=lambda r: (r.lo, r.hi))
    merged_cuts = []
    for r in cuts:
        if not merged_cuts or alg_compare(merged_cuts[-1], r) != 0:
            merged_cuts.append(r)
    bounds = [lo] + merged_cuts + [hi]
    pieces = []
    for i in range(len(bounds) - 1):
        a, b = bounds[i], bounds[i + 1]
        sample = _rational_between(a, b)
        rd = RelationDissimilarity(g, witness.branch, Fraction(sample))
        emb = embedding_dimension(rd).as_pair()
        if emb != (cp, cq):
            continue
        t = classify_type(rd)
        pieces.append((a, b, t))
    merged = []
    for piece in pieces:
        if merged and merged[-1][2] == piece[2] and alg_compare(merged[-1][1], piece[0]) == 0:
            cut = piece[0]
            rd_cut = RelationDissimilarity(g, witness.branch, cut)
            if (
                embedding_dimension(rd_cut).as_pair() == (cp, cq)
                and classify_type(rd_cut) == piece[2]
            ):
                merged[-1] = (merged[-1][0], piece[1], piece[2])
                continue
        merged.append(tuple(piece))
    return [tuple(piece) for piece in merged]
