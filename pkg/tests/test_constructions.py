from fractions import Fraction

import pytest

from indefdist import constructions as con
from indefdist.embedding import RelationDissimilarity, embedding_dimension
from indefdist.algebraic import isolate_roots, lambda_to_b
from indefdist import graphs as gk


def test_quad_arithmetic():
    a = con.Quad.make(1, 1, 2)  # 1 + sqrt2
    b = con.Quad.make(1, -1, 2)
    assert (a * b).rational_value() == -1
    assert (a + b).rational_value() == 2
    inv = a.inverse()
    assert (a * inv).rational_value() == 1
    # square radicand folds to a rational
    assert con.Quad.make(0, 3, 9).rational_value() == 9


def test_biquad_arithmetic():
    make = con.Biquad.field(2, 3)
    s2 = make(0, 1)
    s3 = make(0, 0, 1)
    s6 = make(0, 0, 0, 1)
    assert (s2 * s3) == s6
    assert (s2 * s2).rational_value() == 2
    x = make(1, 1, 1, 0)
    assert ((x * x.inverse()) - make(1)).is_rational()
    assert ((x * x.inverse()) - make(1)).rational_value() == 0
    with pytest.raises(ValueError):
        con.Biquad.field(2, 8)  # same square class: not a faithful basis


def test_twentytwo():
    ps = con.build_twentytwo()
    assert ps.size() == 22
    assert ps.signature == (6, 1)
    # distances are exactly {4, 2}: re-derive the value multiset
    vals = set()
    for i in range(22):
        for j in range(i + 1, 22):
            v = ps.indefinite_distance(i, j)
            v = v.rational_value() if hasattr(v, "rational_value") else Fraction(v)
            vals.add(v)
    assert vals == {Fraction(4), Fraction(2)}
    # disjoint pairs are adjacent (distance 4)
    kinds = [("apex", None)] + [("single", i) for i in range(6)] + [
        ("pair", (i, j)) for i in range(6) for j in range(i + 1, 6)
    ]
    i12 = kinds.index(("pair", (0, 1)))
    i34 = kinds.index(("pair", (2, 3)))
    v = ps.indefinite_distance(i12, i34)
    assert v.rational_value() == 4
    # embedding dimension of the distance matrix is exactly (6, 1)
    dm = [[Fraction(x) if not hasattr(x, "rational_value") else x.rational_value() for x in row] for row in ps.distance_matrix()]
    assert embedding_dimension(dm).as_pair() == (6, 1)


def test_johnson_like_sizes_and_degeneration():
    for p, size in ((5, 16), (6, 22), (7, 29)):
        ps = con.build_johnson_like(p)
        assert ps.size() == 1 + p + p * (p - 1) // 2 == size
    ps5 = con.build_johnson_like(5)
    dm = [
        [x.rational_value() if hasattr(x, "rational_value") else Fraction(x) for x in row]
        for row in ps5.distance_matrix()
    ]
    assert embedding_dimension(dm).as_pair() == (5, 0)  # Euclidean 16-point set


def test_family_pq1_sizes():
    for n in (7, 8, 9, 10):
        ps = con.build_family_pq1(n)
        assert ps.size() == n * (n + 3) // 2
        assert ps.notes["signature_reduced"] == [n, 1]
    with pytest.raises(ValueError):
        con.build_family_pq1(6)


def test_family_pq1_bound_slack():
    from indefdist.embedding import bound_sphere_q1

    for n in (7, 8, 9, 10, 11, 12):
        ps = con.build_family_pq1(n)
        assert ps.size() == bound_sphere_q1(n, 2) - 1


def test_pointset_json_and_csv():
    ps = con.build_family_pq1(7)
    data = ps.to_json()
    assert data["size"] == 35
    assert data["signature"] == [8, 1]
    csv = ps.to_csv()
    assert csv.count("\n") == 35 + 2
    ps22 = con.build_twentytwo()
    data22 = ps22.to_json()
    # rational entries encode as exact strings
    assert data22["points"][0][0] == "2/3"


def test_realize_simplex():
    d = [[0 if i == j else 1 for j in range(4)] for i in range(4)]
    ps = con.realize(d, tolerance=1e-12)
    assert ps.signature == (3, 0)
    assert ps.notes["max_deviation"] < 1e-12


def test_realize_heptagon():
    lam = isolate_roots((-1, -2, 1, 1))[1]
    b = lambda_to_b(lam, 1)
    g = gk.from_edges(7, [(i, (i + 1) % 7) for i in range(7)])
    d = RelationDissimilarity(g, 1, b)
    ps = con.realize(d, tolerance=1e-9)
    assert ps.signature == (2, 2)
    assert len(ps.points[0]) == 4


def test_realize_twentytwo_roundtrip():
    ps = con.build_twentytwo()
    dm = [
        [x.rational_value() if hasattr(x, "rational_value") else Fraction(x) for x in row]
        for row in ps.distance_matrix()
    ]
    scaled = [[x / 4 for x in row] for row in dm]  # distances (1, 1/2)
    out = con.realize(scaled, tolerance=1e-9)
    assert out.signature == (6, 1)


def test_realize_tolerance_error():
    # an unrealizable request: tolerance far below roundoff on a large matrix
    d = [[0 if i == j else 1 for j in range(6)] for i in range(6)]
    try:
        con.realize(d, tolerance=1e-80)
    except con.ToleranceExceededError as e:
        assert e.max_dev > 0
    else:
        raise AssertionError("expected a tolerance failure")
