"""The magic square Lie algebras g(A,B) built from two composition algebras.

g(A,B) = t(A) x t(B)  +  A_1@B_1  +  A_2@B_2  +  A_3@B_3, with bracket:

  * t(A) x t(B) acts on A_i@B_i through the i-th projections,
  * two elements of the same A_i@B_i bracket into t(A) x t(B) through the
    quadratic-form contractions and the dual maps Psi_i,
  * mixed slots multiply into the third slot:
        [u1@v1, u2@v2] = u1 u2 @ v1 v2
        [u2@v2, u3@v3] = u3 conj(u2) @ v3 conj(v2)
        [u3@v3, u1@v1] = conj(u1) u3 @ conj(v1) v3

The bracket table over the concatenated basis is built once and cached;
all structure constants are exact rationals.  Dimensions land on the
classical 4x4 table (sl2 ... e8) and the Jacobi identity is checked by
the test suite, exhaustively for dim <= 78.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .compalg import AlgebraTag, CompAlg, build_split_algebra, parse_tag
from .linalg import F0, F1, SVec, Vec
from .triality import TrialityAlgebra, triality_algebra

MagicElement = List[Fraction]

# Expected dimensions of the sixteen algebras, by (dim A, dim B).
MAGIC_DIMS = {
    (1, 1): 3, (1, 2): 8, (1, 4): 21, (1, 8): 52,
    (2, 1): 8, (2, 2): 16, (2, 4): 35, (2, 8): 78,
    (4, 1): 21, (4, 2): 35, (4, 4): 66, (4, 8): 133,
    (8, 1): 52, (8, 2): 78, (8, 4): 133, (8, 8): 248,
}

# Expected dimensions of the maximal-rank subalgebras h = t(A) x t(B) + A_i @ B_i
# where the type table lists them (sl2xsp4, so9, ..., so16); unambiguous cells only.
H_SUBALGEBRA_DIMS = {
    (1, 4): 13, (1, 8): 36, (2, 4): 19, (2, 8): 46,
    (4, 1): 13, (4, 2): 19, (4, 4): 34, (4, 8): 69,
    (8, 1): 36, (8, 2): 46, (8, 4): 69, (8, 8): 120,
}


class MagicAlgebra:
    def __init__(self, tag_a: AlgebraTag, tag_b: AlgebraTag):
        self.tA: TrialityAlgebra = triality_algebra(tag_a)
        self.tB: TrialityAlgebra = triality_algebra(tag_b)
        self.algA: CompAlg = self.tA.alg
        self.algB: CompAlg = self.tB.alg
        self.a = self.algA.dim
        self.b = self.algB.dim
        self.dA = self.tA.dim
        self.dB = self.tB.dim
        self.dim = self.dA + self.dB + 3 * self.a * self.b
        self._table: Optional[List[Dict[int, SVec]]] = None

    # -- index layout -----------------------------------------------------------

    def idx_tA(self, k: int) -> int:
        return k

    def idx_tB(self, k: int) -> int:
        return self.dA + k

    def idx_m(self, slot: int, p: int, q: int) -> int:
        return self.dA + self.dB + slot * self.a * self.b + p * self.b + q

    def describe_index(self, i: int) -> str:
        if i < self.dA:
            return f"tA[{i}]"
        if i < self.dA + self.dB:
            return f"tB[{i - self.dA}]"
        i -= self.dA + self.dB
        slot, rest = divmod(i, self.a * self.b)
        p, q = divmod(rest, self.b)
        return f"m{slot + 1}[{p},{q}]"

    def zero(self) -> MagicElement:
        return [F0] * self.dim

    def basis_element(self, i: int) -> MagicElement:
        v = self.zero()
        v[i] = F1
        return v

    # -- bracket table -----------------------------------------------------------

    def table(self) -> List[Dict[int, SVec]]:
        if self._table is None:
            self._table = self._build_table()
        return self._table

    def _build_table(self) -> List[Dict[int, SVec]]:
        dim, a, b = self.dim, self.a, self.b
        dA, dB = self.dA, self.dB
        algA, algB = self.algA, self.algB
        tab: List[Dict[int, SVec]] = [dict() for _ in range(dim)]

        def put(i: int, j: int, sv: SVec) -> None:
            if sv:
                tab[i][j] = sv
                tab[j][i] = {k: -c for k, c in sv.items()}

        # t-t brackets, each factor internally.
        for k in range(dA):
            for l in range(k + 1, dA):
                sv = {i: c for i, c in enumerate(self.tA.bracket_coords(k, l)) if c != 0}
                put(self.idx_tA(k), self.idx_tA(l), sv)
        for k in range(dB):
            for l in range(k + 1, dB):
                sv = {self.idx_tB(i): c
                      for i, c in enumerate(self.tB.bracket_coords(k, l)) if c != 0}
                put(self.idx_tB(k), self.idx_tB(l), sv)

        # t acting on the monomial slots.
        for k in range(dA):
            for slot in range(3):
                comp = self.tA.basis[k].component(slot + 1)
                for p in range(a):
                    col = [(r, comp[r][p]) for r in range(a) if comp[r][p] != 0]
                    if not col:
                        continue
                    for q in range(b):
                        sv = {self.idx_m(slot, r, q): c for r, c in col}
                        put(self.idx_tA(k), self.idx_m(slot, p, q), sv)
        for k in range(dB):
            for slot in range(3):
                comp = self.tB.basis[k].component(slot + 1)
                for q in range(b):
                    col = [(r, comp[r][q]) for r in range(b) if comp[r][q] != 0]
                    if not col:
                        continue
                    for p in range(a):
                        sv = {self.idx_m(slot, p, r): c for r, c in col}
                        put(self.idx_tB(k), self.idx_m(slot, p, q), sv)

        # Same slot: quadratic-form contraction into t(A) x t(B) via Psi.
        psiA = [self._psi_pairs(self.tA, i) for i in range(3)]
        psiB = [self._psi_pairs(self.tB, i) for i in range(3)]
        for slot in range(3):
            for p in range(a):
                for q in range(b):
                    i1 = self.idx_m(slot, p, q)
                    for p2 in range(a):
                        for q2 in range(b):
                            i2 = self.idx_m(slot, p2, q2)
                            if i2 <= i1:
                                continue
                            sv: SVec = {}
                            cb = algB.gram[q][q2]
                            if cb != 0 and p != p2:
                                sgn = 1 if p < p2 else -1
                                coords = psiA[slot].get((min(p, p2), max(p, p2)))
                                if coords:
                                    for k, c in coords.items():
                                        val = sgn * cb * c
                                        if val != 0:
                                            sv[self.idx_tA(k)] = sv.get(self.idx_tA(k), F0) + val
                            ca = algA.gram[p][p2]
                            if ca != 0 and q != q2:
                                sgn = 1 if q < q2 else -1
                                coords = psiB[slot].get((min(q, q2), max(q, q2)))
                                if coords:
                                    for k, c in coords.items():
                                        key = self.idx_tB(k)
                                        val = sgn * ca * c
                                        nv = sv.get(key, F0) + val
                                        if nv == 0:
                                            sv.pop(key, None)
                                        else:
                                            sv[key] = nv
                            put(i1, i2, {k: c for k, c in sv.items() if c != 0})

        # Mixed slots multiply into the remaining slot.
        conjA = algA.conj_matrix
        conjB = algB.conj_matrix

        def conj_index(mat, i):
            nz = [(r, mat[r][i]) for r in range(len(mat)) if mat[r][i] != 0]
            assert len(nz) == 1
            return nz[0]

        for p in range(a):
            for q in range(b):
                for p2 in range(a):
                    prodA_12 = algA.ctable[p][p2]          # slot1 x slot2 -> slot3
                    cp, sp = conj_index(conjA, p)          # conj(e_p)
                    cp2, sp2 = conj_index(conjA, p2)
                    prodA_23 = {k: sp * c for k, c in algA.ctable[p2][cp].items()}
                    prodA_31 = {k: sp2 * c for k, c in algA.ctable[cp2][p].items()}
                    for q2 in range(b):
                        prodB_12 = algB.ctable[q][q2]
                        cq, sq = conj_index(conjB, q)
                        cq2, sq2 = conj_index(conjB, q2)
                        # [m1(p,q), m2(p2,q2)] = (e_p e_p2) @ (e_q e_q2) in slot 3
                        sv = {}
                        for k, c in prodA_12.items():
                            for l, d in prodB_12.items():
                                sv[self.idx_m(2, k, l)] = c * d
                        put(self.idx_m(0, p, q), self.idx_m(1, p2, q2), sv)
                        # [m2(p,q), m3(p2,q2)] = e_p2 conj(e_p) @ e_q2 conj(e_q) in slot 1
                        sv = {}
                        for k, c in prodA_23.items():
                            for l, d in {kk: sq * cc for kk, cc in algB.ctable[q2][cq].items()}.items():
                                sv[self.idx_m(0, k, l)] = c * d
                        put(self.idx_m(1, p, q), self.idx_m(2, p2, q2), sv)
                        # [m3(p,q), m1(p2,q2)] = conj(e_p2) e_p @ conj(e_q2) e_q in slot 2
                        sv = {}
                        for k, c in prodA_31.items():
                            for l, d in {kk: sq2 * cc for kk, cc in algB.ctable[cq2][q].items()}.items():
                                sv[self.idx_m(1, k, l)] = c * d
                        put(self.idx_m(2, p, q), self.idx_m(0, p2, q2), sv)
        return tab

    @staticmethod
    def _psi_pairs(t: TrialityAlgebra, slot: int) -> Dict[Tuple[int, int], SVec]:
        out: Dict[Tuple[int, int], SVec] = {}
        n = t.alg.dim
        for p in range(n):
            for q in range(p + 1, n):
                coords = t.psi_coords(slot + 1, t.alg.basis_element(p), t.alg.basis_element(q))
                sv = {k: c for k, c in enumerate(coords) if c != 0}
                if sv:
                    out[(p, q)] = sv
        return out

    # -- operations ---------------------------------------------------------------

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> MagicElement:
        tab = self.table()
        out = self.zero()
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = tab[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                sv = row.get(j)
                if sv:
                    c = xi * yj
                    for k, v in sv.items():
                        out[k] += c * v
        return out

    def bracket_basis(self, i: int, j: int) -> SVec:
        return self.table()[i].get(j, {})

    def _bracket_sv_basis(self, sv: SVec, k: int) -> SVec:
        tab = self._table
        out: SVec = {}
        for p, c in sv.items():
            row = tab[p].get(k)
            if row:
                for t, v in row.items():
                    nv = out.get(t, F0) + c * v
                    if nv == 0:
                        out.pop(t, None)
                    else:
                        out[t] = nv
        return out

    def jacobi_defect(self, x, y, z) -> MagicElement:
        t1 = self.bracket(self.bracket(x, y), z)
        t2 = self.bracket(self.bracket(y, z), x)
        t3 = self.bracket(self.bracket(z, x), y)
        return [p + q + r for p, q, r in zip(t1, t2, t3)]

    def jacobi_defect_basis(self, i: int, j: int, k: int) -> SVec:
        self.table()
        out: SVec = {}
        for sv in (
            self._bracket_sv_basis(self.bracket_basis(i, j), k),
            self._bracket_sv_basis(self.bracket_basis(j, k), i),
            self._bracket_sv_basis(self.bracket_basis(k, i), j),
        ):
            for t, v in sv.items():
                nv = out.get(t, F0) + v
                if nv == 0:
                    out.pop(t, None)
                else:
                    out[t] = nv
        return out

    def jacobi_exhaustive(self) -> int:
        """Number of basis triples i<j<k with nonzero defect (0 for a Lie algebra)."""
        bad = 0
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if self.jacobi_defect_basis(i, j, k):
                        bad += 1
        return bad

    def jacobi_sample(self, count: int, seed: int = 0) -> int:
        rng = random.Random(seed)
        n = self.dim
        bad = 0
        for _ in range(count):
            i = rng.randrange(n)
            j = rng.randrange(n)
            k = rng.randrange(n)
            if self.jacobi_defect_basis(i, j, k):
                bad += 1
        return bad

    # -- invariant form -----------------------------------------------------------

    def invariant_form(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """K = K_t(A) + K_t(B) + sum_i Q_A @ Q_B on the slots."""
        out = F0
        kA = self.tA.k_matrix()
        kB = self.tB.k_matrix()
        for r in range(self.dA):
            if x[r] == 0:
                continue
            for c in range(self.dA):
                if y[c] != 0 and kA[r][c] != 0:
                    out += x[r] * kA[r][c] * y[c]
        for r in range(self.dB):
            xi = x[self.idx_tB(r)]
            if xi == 0:
                continue
            for c in range(self.dB):
                yj = y[self.idx_tB(c)]
                if yj != 0 and kB[r][c] != 0:
                    out += xi * kB[r][c] * yj
        gA, gB = self.algA.gram, self.algB.gram
        pA, pB = self.algA.partner, self.algB.partner
        for slot in range(3):
            for p in range(self.a):
                for q in range(self.b):
                    xi = x[self.idx_m(slot, p, q)]
                    if xi == 0:
                        continue
                    yj = y[self.idx_m(slot, pA[p], pB[q])]
                    if yj != 0:
                        out += xi * gA[p][pA[p]] * gB[q][pB[q]] * yj
        return out

    def gram_matrix(self) -> List[Vec]:
        basis = [self.basis_element(i) for i in range(self.dim)]
        return [[self.invariant_form(x, y) for y in basis] for x in basis]

    # -- structure checks ----------------------------------------------------------

    def h_subalgebra_indices(self, slot: int) -> List[int]:
        idx = list(range(self.dA + self.dB))
        idx += [self.idx_m(slot, p, q) for p in range(self.a) for q in range(self.b)]
        return idx

    def h_subalgebra_closed(self, slot: int) -> bool:
        idx = set(self.h_subalgebra_indices(slot))
        tab = self.table()
        for i in idx:
            for j, sv in tab[i].items():
                if j in idx and any(k not in idx for k in sv):
                    return False
        return True

    def center_dim(self) -> int:
        """dim of {x : [x, g] = 0} via incremental elimination (0 expected)."""
        tab = self.table()
        n = self.dim
        pivots: Dict[int, SVec] = {}

        def reduce_row(row: SVec) -> SVec:
            while row:
                lead = min(row)
                if lead not in pivots:
                    inv = 1 / row[lead]
                    return {k: c * inv for k, c in row.items()}
                pc = pivots[lead]
                f = row[lead]
                new = dict(row)
                for k, c in pc.items():
                    nv = new.get(k, F0) - f * c
                    if nv == 0:
                        new.pop(k, None)
                    else:
                        new[k] = nv
                row = new
            return {}

        rank = 0
        for j in range(n):
            rows: Dict[int, SVec] = {}
            for i in range(n):
                sv = tab[i].get(j)
                if sv:
                    for k, c in sv.items():
                        rows.setdefault(k, {})[i] = c
            for row in rows.values():
                red = reduce_row(row)
                if red:
                    pivots[min(red)] = red
                    rank += 1
                    if rank == n:
                        return 0
        return n - rank


_M_CACHE: Dict[Tuple[str, str], MagicAlgebra] = {}


def build_magic_algebra(tag_a: AlgebraTag | str, tag_b: AlgebraTag | str) -> MagicAlgebra:
    if isinstance(tag_a, str):
        tag_a = parse_tag(tag_a)
    if isinstance(tag_b, str):
        tag_b = parse_tag(tag_b)
    key = (tag_a.name, tag_b.name)
    if key not in _M_CACHE:
        _M_CACHE[key] = MagicAlgebra(tag_a, tag_b)
    return _M_CACHE[key]


def bracket(g: MagicAlgebra, x, y) -> MagicElement:
    return g.bracket(x, y)


def jacobi_defect(g: MagicAlgebra, x, y, z) -> MagicElement:
    return g.jacobi_defect(x, y, z)


def invariant_form(g: MagicAlgebra, x, y) -> Fraction:
    return g.invariant_form(x, y)
