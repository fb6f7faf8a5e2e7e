import random
from fractions import Fraction

import pytest

from magicsquare.compalg import TAGS, build_split_algebra, parse_tag
from magicsquare.linalg import mat_vec
from magicsquare.triality import satisfies_triality


def rand_elt(rng, n, lo=-3, hi=3):
    return [Fraction(rng.randint(lo, hi)) for _ in range(n)]


@pytest.fixture(scope="module", params=list("RCHO"))
def alg(request):
    return build_split_algebra(request.param)


def test_tags():
    assert [TAGS[t].dim for t in "RCHO"] == [1, 2, 4, 8]
    with pytest.raises(ValueError):
        parse_tag("X")


def test_unit_and_conjugation(alg):
    n = alg.dim
    for i in range(n):
        e = alg.basis_element(i)
        assert alg.multiply(alg.unit, e) == e
        assert alg.multiply(e, alg.unit) == e
    assert alg.conjugate(alg.unit) == alg.unit
    assert alg.qform(alg.unit, alg.unit) == 1


def test_products_are_single_terms(alg):
    for row in alg.ctable:
        for sv in row:
            assert len(sv) <= 1
            for c in sv.values():
                assert abs(c) == 1


def test_composition_law_exhaustive_on_basis(alg):
    n = alg.dim
    for i in range(n):
        for j in range(n):
            x, y = alg.basis_element(i), alg.basis_element(j)
            xy = alg.multiply(x, y)
            assert alg.qform(xy, xy) == alg.qform(x, x) * alg.qform(y, y)


def test_composition_law_random(alg):
    rng = random.Random(1)
    for _ in range(200):
        x, y = rand_elt(rng, alg.dim), rand_elt(rng, alg.dim)
        xy = alg.multiply(x, y)
        assert alg.qform(xy, xy) == alg.qform(x, x) * alg.qform(y, y)


def test_norm_via_conjugation(alg):
    rng = random.Random(2)
    for _ in range(50):
        x = rand_elt(rng, alg.dim)
        xxbar = alg.multiply(x, alg.conjugate(x))
        assert xxbar == [alg.qform(x, x) * c for c in alg.unit]


def test_moufang_adjacent_identities(alg):
    rng = random.Random(3)
    for _ in range(40):
        x, y = rand_elt(rng, alg.dim), rand_elt(rng, alg.dim)
        q = alg.qform(x, x)
        assert alg.multiply(alg.conjugate(x), alg.multiply(x, y)) == [q * c for c in y]
        assert alg.multiply(alg.multiply(y, x), alg.conjugate(x)) == [q * c for c in y]


def test_conjugation_anti_automorphism(alg):
    rng = random.Random(4)
    for _ in range(40):
        x, y = rand_elt(rng, alg.dim), rand_elt(rng, alg.dim)
        assert alg.conjugate(alg.conjugate(x)) == x
        assert alg.conjugate(alg.multiply(x, y)) == \
            alg.multiply(alg.conjugate(y), alg.conjugate(x))


def test_associativity_profile():
    rng = random.Random(5)
    for tag in "RCH":
        a = build_split_algebra(tag)
        for _ in range(30):
            x, y, z = (rand_elt(rng, a.dim) for _ in range(3))
            assert a.is_associative_triple(x, y, z), tag
    o = build_split_algebra("O")
    witness = False
    for _ in range(200):
        x, y, z = (rand_elt(rng, 8) for _ in range(3))
        if not o.is_associative_triple(x, y, z):
            witness = True
            break
    assert witness, "octonions unexpectedly associative"


def test_gram_is_hyperbolic_paired(alg):
    n = alg.dim
    for i in range(n):
        nz = [j for j in range(n) if alg.gram[i][j] != 0]
        assert len(nz) == 1
        assert alg.partner[alg.partner[i]] == i


def test_mult_matrices_match_products(alg):
    rng = random.Random(6)
    for _ in range(10):
        x, y = rand_elt(rng, alg.dim), rand_elt(rng, alg.dim)
        assert mat_vec(alg.left_mult_matrix(x), y) == alg.multiply(x, y)
        assert mat_vec(alg.right_mult_matrix(y), x) == alg.multiply(x, y)


def test_dump_schema(alg):
    d = alg.dump()
    assert set(d) == {"dim", "tag", "unit", "structure_constants", "gram", "conjugation"}
    assert d["dim"] == alg.dim


def test_dimension_mismatch_errors():
    a = build_split_algebra("C")
    with pytest.raises(ValueError):
        a.multiply([Fraction(1)], [Fraction(1), Fraction(0)])
    with pytest.raises(ValueError):
        a.qform([Fraction(1)], [Fraction(1), Fraction(0)])


def test_psi1_basic():
    from magicsquare.compalg import psi1

    rng = random.Random(7)
    for tag in "CHO":
        a = build_split_algebra(tag)
        u = rand_elt(rng, a.dim)
        assert psi1(a, u, u).is_zero()
    c = build_split_algebra("C")
    t = psi1(c, c.basis_element(0), c.basis_element(1))
    assert not t.is_zero()
    for m in (t.component(1), t.component(2), t.component(3)):
        assert m[0][1] == 0 and m[1][0] == 0  # diagonal triple


def test_psi1_lands_in_so_q_and_triality():
    from magicsquare.compalg import psi1
    from magicsquare.linalg import mat_mul, transpose

    o = build_split_algebra("O")
    rng = random.Random(8)
    for _ in range(20):
        u, v = rand_elt(rng, 8, -2, 2), rand_elt(rng, 8, -2, 2)
        t = psi1(o, u, v)
        for i in (1, 2, 3):
            m = t.component(i)
            mtq = mat_mul(transpose(m), o.gram)
            qm = mat_mul(o.gram, m)
            assert all(mtq[r][c] + qm[r][c] == 0 for r in range(8) for c in range(8))
        assert satisfies_triality(o, t)
