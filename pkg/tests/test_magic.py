import random
from fractions import Fraction

import pytest

from magicsquare.linalg import det
from magicsquare.magic import H_SUBALGEBRA_DIMS, MAGIC_DIMS, build_magic_algebra

ALL_PAIRS = [(A, B) for A in "RCHO" for B in "RCHO"]


def test_all_sixteen_dimensions():
    for A, B in ALL_PAIRS:
        g = build_magic_algebra(A, B)
        assert g.dim == MAGIC_DIMS[(g.a, g.b)], (A, B)


def test_bracket_grading_rules():
    g = build_magic_algebra("C", "H")
    rng = random.Random(0)
    # [theta_A, u_i @ v_i] = theta_i(u) @ v_i lands in the same slot
    for k in range(g.dA):
        for slot in range(3):
            i = g.idx_tA(k)
            j = g.idx_m(slot, 0, 1)
            sv = g.bracket_basis(i, j)
            lo = g.dA + g.dB + slot * g.a * g.b
            hi = lo + g.a * g.b
            assert all(lo <= t < hi for t in sv)
    # [slot1, slot2] lands in slot3 only
    for p in range(g.a):
        for q in range(g.b):
            sv = g.bracket_basis(g.idx_m(0, p, q), g.idx_m(1, (p + 1) % g.a, q))
            lo = g.dA + g.dB + 2 * g.a * g.b
            assert all(t >= lo for t in sv)


def test_bracket_antisymmetry_sampled():
    g = build_magic_algebra("H", "H")
    tab = g.table()
    rng = random.Random(1)
    for _ in range(300):
        i, j = rng.randrange(g.dim), rng.randrange(g.dim)
        assert {k: -v for k, v in tab[i].get(j, {}).items()} == tab[j].get(i, {})
    x = [Fraction(rng.randint(-2, 2)) for _ in range(g.dim)]
    assert g.bracket(x, x) == g.zero()


def test_jacobi_exhaustive_small():
    for A, B in [("R", "R"), ("R", "C"), ("C", "C"), ("R", "H"), ("C", "H")]:
        g = build_magic_algebra(A, B)
        assert g.jacobi_exhaustive() == 0, (A, B)


def test_jacobi_sampled_large():
    for A, B in [("H", "O"), ("O", "O")]:
        g = build_magic_algebra(A, B)
        assert g.jacobi_sample(20000, seed=7) == 0


def test_jacobi_defect_detects_corruption():
    g = build_magic_algebra("R", "C")
    tab = g.table()
    i, j = g.idx_tB(0), g.idx_m(0, 0, 0)
    saved = dict(tab[i].get(j, {}))
    try:
        tab[i][j] = {g.idx_m(0, 0, 1): Fraction(17)}
        assert g.jacobi_exhaustive() > 0
    finally:
        if saved:
            tab[i][j] = saved
        else:
            tab[i].pop(j, None)
    assert g.jacobi_exhaustive() == 0


def test_invariant_form_symmetric_and_invariant():
    g = build_magic_algebra("H", "O")
    rng = random.Random(2)
    for _ in range(200):
        z, x, y = (g.basis_element(rng.randrange(g.dim)) for _ in range(3))
        assert g.invariant_form(x, y) == g.invariant_form(y, x)
        zx, zy = g.bracket(z, x), g.bracket(z, y)
        assert g.invariant_form(zx, y) + g.invariant_form(x, zy) == 0


def test_invariant_form_nondegenerate_ch():
    g = build_magic_algebra("C", "H")
    assert det(g.gram_matrix()) != 0


def test_h_subalgebras():
    for A, B in ALL_PAIRS:
        g = build_magic_algebra(A, B)
        for slot in range(3):
            assert g.h_subalgebra_closed(slot), (A, B, slot)
        expected = H_SUBALGEBRA_DIMS.get((g.a, g.b))
        if expected is not None:
            assert len(g.h_subalgebra_indices(0)) == expected


def test_center_trivial():
    for A, B in ALL_PAIRS:
        g = build_magic_algebra(A, B)
        assert g.center_dim() == 0, (A, B)


def test_g_rr_is_the_rotation_algebra():
    g = build_magic_algebra("R", "R")
    assert g.dim == 3
    assert g.bracket_basis(0, 1) == {2: Fraction(1)}
    assert g.bracket_basis(1, 2) == {0: Fraction(1)}
    assert g.bracket_basis(2, 0) == {1: Fraction(1)}


def test_magic_element_roundtrip():
    g = build_magic_algebra("R", "C")
    names = [g.describe_index(i) for i in range(g.dim)]
    assert names[0].startswith("tB") or names[0].startswith("tA") or names[0].startswith("m")
    assert len(set(names)) == g.dim
