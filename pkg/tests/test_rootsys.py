"""Root systems: enumeration, Killing data, diagram automorphisms."""

import json
from fractions import Fraction

import pytest

from bdcoideal.rootsys import (DynkinType, build_root_system, height, negate,
                               POSITIVE_COUNTS)

ALL_SMALL = ([("A", n) for n in range(1, 7)] + [("B", n) for n in range(2, 7)]
             + [("C", n) for n in range(2, 7)] + [("D", n) for n in range(3, 7)]
             + [("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)])


@pytest.mark.parametrize("family,rank", ALL_SMALL)
def test_positive_root_counts(family, rank):
    rs = build_root_system(family, rank)
    assert len(rs.positive_roots) == POSITIVE_COUNTS[family](rank)
    assert len(set(rs.positive_roots)) == len(rs.positive_roots)


def test_invalid_types_rejected():
    for family, rank in [("Z", 2), ("E", 5), ("F", 3), ("G", 3), ("D", 2), ("A", 0)]:
        with pytest.raises(ValueError):
            DynkinType(family, rank)


def test_a2_positive_roots():
    rs = build_root_system("A", 2)
    assert rs.positive_roots == [(0, 1), (1, 0), (1, 1)]
    # |positive| = (dim - rank) / 2 with dim 8
    assert 2 * len(rs.positive_roots) + rs.rank == 8


def test_g2_has_six_positive_roots_and_dim_14():
    rs = build_root_system("G", 2)
    assert len(rs.positive_roots) == 6
    assert 2 * 6 + 2 == 14


def test_highest_roots():
    assert build_root_system("B", 2).highest_root() == (1, 2)
    assert build_root_system("B", 3).highest_root() == (1, 2, 2)
    assert build_root_system("A", 4).highest_root() == (1, 1, 1, 1)
    assert build_root_system("C", 3).highest_root() == (2, 2, 1)


def test_highest_root_dominates_coefficientwise():
    for family, rank in ALL_SMALL:
        rs = build_root_system(family, rank)
        top = rs.highest_root()
        assert all(all(c <= t for c, t in zip(r, top)) for r in rs.positive_roots)


def test_height():
    rs = build_root_system("B", 2)
    assert height((0, 1)) == 1
    assert height((1, 1)) == 2
    assert height((1, 2)) == 3
    with pytest.raises(ValueError):
        height((-1, 0))


def test_killing_values():
    a1 = build_root_system("A", 1)
    assert a1.killing_form((1,), (1,)) == Fraction(1, 2)
    a2 = build_root_system("A", 2)
    assert a2.killing_form((1, 0), (0, 1)) == Fraction(-1, 6)
    assert a2.killing_form((1, 0), (1, 0)) == Fraction(1, 3)


def test_killing_symmetric_and_bilinear():
    rs = build_root_system("B", 3)
    roots = rs.positive_roots
    for a in roots[:5]:
        for b in roots[:5]:
            assert rs.killing_form(a, b) == rs.killing_form(b, a)
    s = tuple(x + y for x, y in zip(roots[0], roots[1]))
    assert rs.killing_form(s, roots[2]) == (rs.killing_form(roots[0], roots[2])
                                            + rs.killing_form(roots[1], roots[2]))


def _coroot_coeffs(rs, gamma):
    # coroot of gamma over simple coroots: c_i * (a_i, a_i) / (gamma, gamma)
    d = [rs.basic_gram[i][i] / 2 for i in range(rs.rank)]
    g = sum(Fraction(ci) * rs.basic_gram[i][j] * cj
            for i, ci in enumerate(gamma) for j, cj in enumerate(gamma))
    return [Fraction(ci) * d[i] / (g / 2) for i, ci in enumerate(gamma)]


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 2), ("B", 2)])
def test_killing_gram_against_trace_form_oracle(family, rank):
    """Independent oracle: full adjoint matrices over integral data.

    Builds ad on the basis of simple coroots and root vectors using
    only Cartan integers and integer bracket constants, takes exact
    traces of products, and converts to the dual Gram matrix.
    """
    from bdcoideal.chevalley import chevalley_constants
    from bdcoideal.rootsys import add, sub

    rs = build_root_system(family, rank)
    n = rs.rank
    roots = rs.all_roots()
    dim = n + len(roots)
    index = {("h", i): i for i in range(n)}
    for k, r in enumerate(roots):
        index[("e", r)] = n + k
    pos_table = chevalley_constants(rs)

    def m_const(x, y):
        z = add(x, y)
        if not rs.is_root(z):
            return Fraction(0)
        # reduce to positive pairs through the weighted zero-sum rule
        def q(r):
            g = sum(Fraction(ci) * rs.basic_gram[i][j] * cj
                    for i, ci in enumerate(r) for j, cj in enumerate(r))
            return g / 2

        def pos(a, b):
            if rs.root_index[a] < rs.root_index[b]:
                return Fraction(pos_table[(a, b)])
            return -Fraction(pos_table[(b, a)])

        xp, yp = rs.is_positive(x), rs.is_positive(y)
        if xp and yp:
            return pos(x, y)
        if not xp and not yp:
            return -m_const(negate(x), negate(y))
        if rs.is_positive(z) == xp:
            return (q(z) / q(x)) * m_const(y, negate(z))
        return (q(z) / q(y)) * m_const(negate(z), x)

    def ad_matrix(kind, datum):
        m = [[Fraction(0)] * dim for _ in range(dim)]
        if kind == "h":
            i = datum
            for r in roots:
                pair = sum(c * rs.cartan_matrix[k][i] for k, c in enumerate(r))
                m[index[("e", r)]][index[("e", r)]] = Fraction(pair)
            return m
        gamma = datum
        for r in roots:
            z = add(gamma, r)
            if all(c == 0 for c in z):
                # bracket with the opposite vector is +-the coroot
                if rs.is_positive(gamma):
                    for i, c in enumerate(_coroot_coeffs(rs, gamma)):
                        m[index[("h", i)]][index[("e", r)]] = c
                else:
                    for i, c in enumerate(_coroot_coeffs(rs, negate(gamma))):
                        m[index[("h", i)]][index[("e", r)]] = -c
            elif rs.is_root(z):
                m[index[("e", z)]][index[("e", r)]] = m_const(gamma, r)
        for i in range(n):
            pair = sum(c * rs.cartan_matrix[k][i] for k, c in enumerate(gamma))
            m[index[("e", gamma)]][index[("h", i)]] = -Fraction(pair)
        return m

    ads = [ad_matrix("h", i) for i in range(n)]

    def trace_product(a, b):
        return sum(a[i][j] * b[j][i] for i in range(dim) for j in range(dim))

    k_mat = [[trace_product(ads[i], ads[j]) for j in range(n)] for i in range(n)]
    # convert: Killing-dual Gram = C K^{-1} C^T with C the Cartan pairings
    from bdcoideal.linalg import invert_matrix
    kinv = invert_matrix(k_mat)
    c = [[Fraction(rs.cartan_matrix[i][k]) for k in range(n)] for i in range(n)]
    oracle = [[sum(c[i][a] * kinv[a][b] * c[j][b] for a in range(n)
                   for b in range(n)) for j in range(n)] for i in range(n)]
    assert oracle == rs.killing_gram
    # sanity anchor: sl2 has tr(ad h ad h) = 8 for the simple coroot
    if (family, rank) == ("A", 1):
        assert k_mat[0][0] == 8
    # opposite root vectors pair to the inverse half length
    for gamma in rs.positive_roots:
        t = trace_product(ad_matrix("e", gamma), ad_matrix("e", negate(gamma)))
        assert t == 1 / rs.half_length(gamma)


def test_diagram_automorphisms():
    assert build_root_system("B", 3).diagram_automorphisms() == [(0, 1, 2)]
    assert build_root_system("A", 3).diagram_automorphisms() == [(0, 1, 2), (2, 1, 0)]
    assert len(build_root_system("E", 6).diagram_automorphisms()) == 2
    d4 = build_root_system("D", 4).diagram_automorphisms()
    assert len(d4) == 4  # identity and the three order-2 swaps
    assert all(all(p[p[i]] == i for i in range(4)) for p in d4)


def test_automorphisms_preserve_positive_roots_and_killing():
    for family, rank in [("A", 3), ("D", 4), ("E", 6)]:
        rs = build_root_system(family, rank)
        for perm in rs.diagram_automorphisms():
            images = {rs.apply_automorphism(perm, r) for r in rs.positive_roots}
            assert images == set(rs.positive_roots)
            for i in range(rank):
                for j in range(rank):
                    a = tuple(1 if k == i else 0 for k in range(rank))
                    b = tuple(1 if k == j else 0 for k in range(rank))
                    assert rs.killing_form(a, b) == rs.killing_form(
                        rs.apply_automorphism(perm, a), rs.apply_automorphism(perm, b))


def test_extend_automorphism_examples():
    rs = build_root_system("A", 3)
    swap = (2, 1, 0)
    assert rs.apply_automorphism((0, 1, 2), (1, 1, 0)) == (1, 1, 0)
    assert rs.apply_automorphism(swap, (1, 1, 0)) == (0, 1, 1)
    assert rs.apply_automorphism(swap, (1, 1, 1)) == (1, 1, 1)


def test_json_document():
    rs = build_root_system("A", 2)
    doc = json.loads(rs.to_json())
    assert doc["schema"] == 1
    assert doc["type"] == "A" and doc["rank"] == 2
    assert doc["positive_roots"] == [[0, 1], [1, 0], [1, 1]]
    assert doc["killing_gram"][0][1] == "-1/6"
