"""Split composition algebras of dimension 1, 2, 4, 8 over the rationals.

The algebras are generated by Cayley-Dickson doubling with split sign,
then expressed in an idempotent-pair (hyperbolic) basis so that the
quadratic form's Gram matrix is anti-diagonal in 2x2 blocks and the
diagonal matrices inside so(Q) form a split Cartan-friendly torus.
Products of basis elements are always 0 or +/- a basis element; the
composition law is verified exhaustively by the test suite rather than
assumed.

Conventions: qform is the polarized norm, qform(x, x) = x * conj(x) read
off in the unit direction, and qform(e, e) = 1 for the unit e.  In the
hyperbolic basis the nonzero Gram entries are +/- 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import rat_str
from .linalg import (
    F0,
    F1,
    Mat,
    SVec,
    Vec,
    identity,
    inverse,
    mat_mul,
    nullspace,
    transpose,
)


@dataclass(frozen=True)
class AlgebraTag:
    name: str
    dim: int


R_TAG = AlgebraTag("R", 1)
C_TAG = AlgebraTag("C", 2)
H_TAG = AlgebraTag("H", 4)
O_TAG = AlgebraTag("O", 8)

TAGS = {"R": R_TAG, "C": C_TAG, "H": H_TAG, "O": O_TAG}
TAG_BY_DIM = {t.dim: t for t in TAGS.values()}


def parse_tag(name: str) -> AlgebraTag:
    key = name.strip().upper()
    if key not in TAGS:
        raise ValueError(f"unknown composition algebra tag {name!r}; expected R, C, H or O")
    return TAGS[key]


AlgElement = List[Fraction]


class CompAlg:
    """A split composition algebra with exact rational structure constants."""

    def __init__(self, tag: AlgebraTag, ctable: List[List[SVec]], conj: Mat,
                 gram: Mat, unit: Vec):
        self.tag = tag
        self.dim = tag.dim
        self.ctable = ctable          # ctable[i][j] = sparse product e_i * e_j
        self.conj_matrix = conj
        self.gram = gram
        self.unit = unit
        self.left_tables = [self._mult_matrix(i, side="left") for i in range(self.dim)]
        self.right_tables = [self._mult_matrix(i, side="right") for i in range(self.dim)]
        self.partner = self._pairing_partners()

    # -- construction helpers ----------------------------------------------

    def _mult_matrix(self, i: int, side: str) -> Mat:
        n = self.dim
        out = [[F0] * n for _ in range(n)]
        for j in range(n):
            prod = self.ctable[i][j] if side == "left" else self.ctable[j][i]
            for k, c in prod.items():
                out[k][j] = c
        return out

    def _pairing_partners(self) -> List[int]:
        """partner[i] = unique j with gram[i][j] != 0 (i itself for dim 1)."""
        partners = []
        for i in range(self.dim):
            nz = [j for j in range(self.dim) if self.gram[i][j] != 0]
            if len(nz) != 1:
                raise ValueError("gram is not hyperbolic-paired")
            partners.append(nz[0])
        return partners

    # -- algebra operations --------------------------------------------------

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> AlgElement:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("element dimension mismatch")
        out = [F0] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.ctable[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                for k, c in row[j].items():
                    out[k] += xi * yj * c
        return out

    def conjugate(self, x: Sequence[Fraction]) -> AlgElement:
        if len(x) != self.dim:
            raise ValueError("element dimension mismatch")
        return [
            sum((self.conj_matrix[k][i] * x[i] for i in range(self.dim) if x[i] != 0), F0)
            for k in range(self.dim)
        ]

    def qform(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("element dimension mismatch")
        out = F0
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            j = self.partner[i]
            if y[j] != 0:
                out += xi * self.gram[i][j] * y[j]
        return out

    def basis_element(self, i: int) -> AlgElement:
        v = [F0] * self.dim
        v[i] = F1
        return v

    def left_mult_matrix(self, x: Sequence[Fraction]) -> Mat:
        n = self.dim
        out = [[F0] * n for _ in range(n)]
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            t = self.left_tables[i]
            for r in range(n):
                for c in range(n):
                    if t[r][c] != 0:
                        out[r][c] += xi * t[r][c]
        return out

    def right_mult_matrix(self, x: Sequence[Fraction]) -> Mat:
        n = self.dim
        out = [[F0] * n for _ in range(n)]
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            t = self.right_tables[i]
            for r in range(n):
                for c in range(n):
                    if t[r][c] != 0:
                        out[r][c] += xi * t[r][c]
        return out

    # -- so(Q) ----------------------------------------------------------------

    def so_q_basis(self) -> List[Mat]:
        """Basis of {M : M^T Q + Q M = 0} as dense matrices."""
        n = self.dim
        rows = []
        for r in range(n):
            for c in range(r, n):
                # equation (M^T Q + Q M)[r][c] = 0, unknowns M[i][j] flattened
                row = [F0] * (n * n)
                for k in range(n):
                    if self.gram[k][c] != 0:
                        row[k * n + r] += self.gram[k][c]
                    if self.gram[r][k] != 0:
                        row[k * n + c] += self.gram[r][k]
                rows.append(row)
        return [
            [v[i * n:(i + 1) * n] for i in range(n)]
            for v in nullspace(rows, n * n)
        ]

    def diagonal_so_q_basis(self) -> List[Mat]:
        """Diagonal elements of so(Q): t on a basis vector, -t on its partner."""
        n = self.dim
        out = []
        seen = set()
        for i in range(n):
            j = self.partner[i]
            if i in seen or j in seen or i == j:
                continue
            seen.update((i, j))
            m = [[F0] * n for _ in range(n)]
            m[i][i] = F1
            m[j][j] = -F1
            out.append(m)
        return out

    def is_associative_triple(self, x, y, z) -> bool:
        return self.multiply(self.multiply(x, y), z) == self.multiply(x, self.multiply(y, z))

    def dump(self) -> dict:
        return {
            "dim": self.dim,
            "tag": self.tag.name,
            "unit": [rat_str(c) for c in self.unit],
            "structure_constants": [
                [{str(k): rat_str(c) for k, c in self.ctable[i][j].items()}
                 for j in range(self.dim)]
                for i in range(self.dim)
            ],
            "gram": [[rat_str(c) for c in row] for row in self.gram],
            "conjugation": [[rat_str(c) for c in row] for row in self.conj_matrix],
        }


# -- Cayley-Dickson construction ---------------------------------------------


def _base_r() -> CompAlg:
    ctable = [[{0: F1}]]
    return CompAlg(R_TAG, ctable, identity(1), [[F1]], [F1])


def _double(alg: CompAlg) -> Tuple[List[List[SVec]], Mat, Mat, Vec]:
    """Split Cayley-Dickson double: (a,b)(c,d) = (ac + d conj(b), conj(a) d + c b)."""
    n = alg.dim
    m = 2 * n

    def emb(vec: Vec, half: int) -> SVec:
        return {i + half * n: c for i, c in enumerate(vec) if c != 0}

    def basis_prod(i: int, j: int) -> SVec:
        ih, jh = i // n, j // n
        ii, jj = i % n, j % n
        x = alg.basis_element(ii)
        y = alg.basis_element(jj)
        if ih == 0 and jh == 0:
            return emb(alg.multiply(x, y), 0)
        if ih == 0 and jh == 1:
            return emb(alg.multiply(alg.conjugate(x), y), 1)
        if ih == 1 and jh == 0:
            return emb(alg.multiply(y, x), 1)
        return emb(alg.multiply(y, alg.conjugate(x)), 0)

    ctable = [[basis_prod(i, j) for j in range(m)] for i in range(m)]
    conj = [[F0] * m for _ in range(m)]
    for r in range(n):
        for c in range(n):
            conj[r][c] = alg.conj_matrix[r][c]
    for r in range(n):
        conj[n + r][n + r] = -F1
    gram = [[F0] * m for _ in range(m)]
    for r in range(n):
        for c in range(n):
            gram[r][c] = alg.gram[r][c]
            gram[n + r][n + c] = -alg.gram[r][c]
    unit = list(alg.unit) + [F0] * n
    return ctable, conj, gram, unit


def _change_basis(tag: AlgebraTag, ctable, conj, gram, unit, p: Mat) -> CompAlg:
    """Rewrite the algebra in the basis f_j = sum_i p[i][j] e_i."""
    n = tag.dim
    pinv = inverse(p)

    def to_new(vec_sparse: SVec) -> Vec:
        dense = [F0] * n
        for k, c in vec_sparse.items():
            dense[k] = c
        return [sum((pinv[r][i] * dense[i] for i in range(n) if dense[i] != 0), F0)
                for r in range(n)]

    new_ctable: List[List[SVec]] = [[{} for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = [F0] * n
            for i in range(n):
                if p[i][a] == 0:
                    continue
                for j in range(n):
                    if p[j][b] == 0:
                        continue
                    coeff = p[i][a] * p[j][b]
                    for k, c in ctable[i][j].items():
                        acc[k] += coeff * c
            newvec = [sum((pinv[r][k] * acc[k] for k in range(n) if acc[k] != 0), F0)
                      for r in range(n)]
            new_ctable[a][b] = {r: c for r, c in enumerate(newvec) if c != 0}
    new_conj = mat_mul(pinv, mat_mul(conj, p))
    new_gram = mat_mul(transpose(p), mat_mul(gram, p))
    pinv_unit = [sum((pinv[r][i] * unit[i] for i in range(n) if unit[i] != 0), F0)
                 for r in range(n)]
    return CompAlg(tag, new_ctable, new_conj, new_gram, pinv_unit)


_CACHE: Dict[str, CompAlg] = {}


def build_split_algebra(tag: AlgebraTag | str) -> CompAlg:
    """The split composition algebra of the given tag, in its hyperbolic basis."""
    if isinstance(tag, str):
        tag = parse_tag(tag)
    if tag.name in _CACHE:
        return _CACHE[tag.name]
    if tag.name == "R":
        alg = _base_r()
    else:
        half = Fraction(1, 2)
        # C in the idempotent basis u+/- = (1 +/- v)/2 of the doubled line.
        ct, cj, gm, un = _double(_base_r())
        p = [[half, half], [half, -half]]
        c_alg = _change_basis(C_TAG, ct, cj, gm, un, p)
        if tag.name == "C":
            alg = c_alg
        else:
            ct, cj, gm, un = _double(c_alg)
            h_alg = CompAlg(H_TAG, ct, cj, gm, un)
            if tag.name == "H":
                alg = h_alg
            else:
                ct, cj, gm, un = _double(h_alg)
                alg = CompAlg(O_TAG, ct, cj, gm, un)
    _CACHE[tag.name] = alg
    return alg


def multiply(alg: CompAlg, x, y):
    return alg.multiply(x, y)


def conjugate(alg: CompAlg, x):
    return alg.conjugate(x)


def qform(alg: CompAlg, x, y):
    return alg.qform(x, y)


def psi1(alg: CompAlg, u, v):
    """Triality triple dual to the rotation u wedge v; see the triality module."""
    from .triality import triality_algebra, psi

    return psi(triality_algebra(alg), 1, u, v)
