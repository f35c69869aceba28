import random
from fractions import Fraction

import pytest

from indefdist import embedding as emb
from indefdist import graphs as gk
from indefdist.algebraic import isolate_roots, lambda_to_b
from indefdist.embedding import RelationDissimilarity

CUBIC = (-1, -2, 1, 1)  # x^3 + x^2 - 2x - 1


def edge_graph3():
    return gk.from_edges(3, [(0, 1)])


def cycle(n):
    return gk.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def JminusI(n):
    return [[0 if i == j else 1 for j in range(n)] for i in range(n)]


def test_f_matrix_zero_and_projector():
    zero = [[0] * 3 for _ in range(3)]
    ell = [Fraction(1, 3)] * 3
    assert emb.f_matrix(zero, ell) == [[0] * 3 for _ in range(3)]
    f = emb.f_matrix(JminusI(3), ell)
    # -P (J - I) P = P, eigenvalues 1, 1, 0
    from indefdist import spectral as sp

    assert sp.signature(f).as_pair() == (2, 0)
    with pytest.raises(emb.NormalizationError):
        emb.f_matrix(zero, [1, 1, 0])


def test_f_matrix_l_is_kernel():
    ell = [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)]
    f = emb.f_matrix(JminusI(3), ell)
    v = [sum(f[i][j] * ell[j] for j in range(3)) for i in range(3)]
    assert v == [0, 0, 0]


def test_embedding_dimension_simplex():
    for n in (3, 4, 6):
        assert emb.embedding_dimension(JminusI(n)).as_pair() == (n - 1, 0)


def test_embedding_dimension_m1_m2():
    # one-edge graph on 3 points with b = 1/5
    m1 = RelationDissimilarity(edge_graph3(), 1, Fraction(1, 5))
    assert emb.embedding_dimension(m1).as_pair() == (1, 1)
    m2 = RelationDissimilarity(edge_graph3(), -1, Fraction(1, 5))
    assert emb.embedding_dimension(m2).as_pair() == (1, 1)
    # boundary: b = 1/4 degenerates to a line
    line = RelationDissimilarity(edge_graph3(), 1, Fraction(1, 4))
    assert emb.embedding_dimension(line).as_pair() == (1, 0)


def test_embedding_dimension_heptagon():
    lam = isolate_roots(CUBIC)[1]
    b = lambda_to_b(lam, 1)
    d = RelationDissimilarity(cycle(7), 1, b)
    assert emb.embedding_dimension(d).as_pair() == (2, 2)


def test_classify_type_fixtures():
    m1 = RelationDissimilarity(edge_graph3(), 1, Fraction(1, 5))
    m2 = RelationDissimilarity(edge_graph3(), -1, Fraction(1, 5))
    assert emb.classify_type(m1) == 3
    assert emb.classify_type(m2) == 2
    for n in (3, 5):
        assert emb.classify_type(JminusI(n)) == 2  # regular simplex is spherical


def test_f_signature_matches_embedding_dimension():
    lam = isolate_roots(CUBIC)[1]
    b = lambda_to_b(lam, 1)
    d = RelationDissimilarity(cycle(7), 1, b)
    ell = [Fraction(1)] + [Fraction(0)] * 6
    assert emb.f_signature(d, ell).as_pair() == (2, 2)


def test_gower_l_invariance_random():
    rng = random.Random(2024)
    cases = 0
    while cases < 200:
        n = rng.randint(3, 7)
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5
        ]
        g = gk.from_edges(n, edges)
        if g.is_empty() or g.is_complete():
            continue
        b = Fraction(rng.randint(-9, 9), 10)
        if b == 0:
            continue
        a = rng.choice((1, -1))
        d = RelationDissimilarity(g, a, b)
        ref = emb.embedding_dimension(d).as_pair()
        weights = [rng.randint(-2, 3) for _ in range(n)]
        tot = sum(weights)
        if tot == 0:
            continue
        ell = [Fraction(w, tot) for w in weights]
        assert emb.f_signature(d, ell).as_pair() == ref
        cases += 1


def test_spectrum_formula_vs_direct_small():
    rng = random.Random(7)
    from indefdist import spectral as sp

    for n in range(3, 7):
        for g in gk.generate_all(n):
            if g.is_empty() or g.is_complete():
                continue
            for a in (1, -1):
                for b in (Fraction(1, 3), Fraction(-1, 3), Fraction(1, 2)):
                    a1 = g.adjacency()
                    a2 = g.complement_adjacency()
                    mat = [
                        [a * a1[i][j] + b * a2[i][j] for j in range(n)]
                        for i in range(n)
                    ]
                    via_formula = emb.f_signature_from_spectrum(mat).as_pair()
                    direct = emb.embedding_dimension(mat).as_pair()
                    assert via_formula == direct, (n, a, b)


def test_commuting_dimensionality_pentagon():
    g = cycle(5)
    rels = [g.adjacency(), g.complement_adjacency()]
    assert emb.commuting_dimensionality(rels, [1, 1]).as_pair() == (4, 0)
    b = Fraction(2, 5)
    got = emb.commuting_dimensionality(rels, [1, b]).as_pair()
    want = emb.embedding_dimension(RelationDissimilarity(g, 1, b)).as_pair()
    assert got == want
    b = Fraction(-1, 3)
    got = emb.commuting_dimensionality(rels, [Fraction(1), b]).as_pair()
    want = emb.embedding_dimension(RelationDissimilarity(g, 1, b)).as_pair()
    assert got == want


def test_commuting_dimensionality_requires_cover():
    g = cycle(5)
    with pytest.raises(Exception):
        emb.commuting_dimensionality([g.adjacency(), g.adjacency()], [1, 1])


def test_scan_small_orders_11():
    wins3 = emb.scan_small_orders(1, 1, 3)
    assert wins3, "three-point (1,1) families must exist"
    assert all(w.kind == "interval" for w in wins3)
    edge_key = gk.canonical_key(edge_graph3())
    plus_edge = [
        w
        for w in wins3
        if gk.canonical_key(w.graph) == edge_key and w.branch == 1
    ]
    ranges = {
        (
            str(w.b_range[0].lo) if w.b_range[0].is_rational() else None,
            str(w.b_range[1].hi) if w.b_range[1].is_rational() else None,
        )
        for w in plus_edge
    }
    # the b < 1/4 family, as the two open pieces (-1,0) and (0,1/4)
    assert ("0", "1/4") in ranges
    assert ("-1", "0") in ranges
    # no four-point proper (1,1) configuration exists
    assert emb.scan_small_orders(1, 1, 4) == []


def test_scan_small_orders_21_order5():
    wins = emb.scan_small_orders(2, 1, 5)
    assert all(w.kind == "point" for w in wins)
    assert len(wins) == 8
    assert len({gk.canonical_key(w.graph) for w in wins}) == 8
    assert all(w.branch == 1 for w in wins)


def test_scan_small_orders_20_triangle():
    wins = emb.scan_small_orders(2, 0, 3)
    intervals = [w for w in wins if w.kind == "interval"]
    assert intervals, "generic triangles fill open b-cells"
    assert all(w.branch == 1 or w.kind == "point" for w in wins)


def test_bounds():
    assert emb.bound_ambient(4, 1, 2) == 21
    assert emb.bound_sphere_q1(6, 2) == 28
    assert emb.bound_sphere(3, 3, 2) == 27


def test_k_integrality():
    assert emb.k_integrality([1, Fraction(1, 2)]) == [-1, 2]
    assert emb.k_integrality([1, Fraction(-1, 2)]) == [Fraction(1, 3), Fraction(2, 3)]
    assert emb.k_integrality([2, 1]) == [-1, 2]
    with pytest.raises(ZeroDivisionError):
        emb.k_integrality([1, 1])
    with pytest.raises(ValueError):
        emb.k_integrality([1, 0])


def test_relation_dissimilarity_json_roundtrip():
    lam = isolate_roots(CUBIC)[1]
    b = lambda_to_b(lam, 1)
    d = RelationDissimilarity(cycle(7), 1, b)
    back = RelationDissimilarity.from_json(d.to_json())
    assert back.graph == d.graph and back.a == 1
    r = RelationDissimilarity(edge_graph3(), -1, Fraction(1, 5))
    back2 = RelationDissimilarity.from_json(r.to_json())
    assert back2.b_fraction() == Fraction(1, 5)
