"""Triality Lie algebras t(A) and the dual maps Psi_i.

t(A) is computed as the nullspace of the infinitesimal triality constraint
    theta3(x y) = theta1(x) y + x theta2(y)   for all x, y in A,
inside so(Q)^3; the known type table (0, 2-dim abelian, sl2^3, so8) is a
test expectation, not an input.

The invariant form on t(A) is a single rational multiple of the sum of the
three componentwise trace forms; the multiple, and the normalization of the
dual maps Psi_i, are solved for so that

  * K(Psi_1(u ^ v), theta) = Q(theta_1(u), v)          (duality),
  * Psi_1(u ^ v)_2 x  =  conj(v)(u x) - conj(u)(v x)   (bracket scale).

The order-3 symmetry is the conjugation-twisted shift
    tau(theta1, theta2, theta3) = (theta2, C theta3 C, C theta1 C)
with C the conjugation of A; the plain shift does not preserve the triality
relation in these split models, the twisted one does, and this is asserted
at construction time.  Psi_2 = tau^2 Psi_1 and Psi_3(u^v) = tau Psi_1(conj u ^ conj v).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .compalg import AlgebraTag, CompAlg, build_split_algebra, parse_tag
from .exact import rat_str
from .linalg import (
    F0,
    F1,
    Mat,
    Vec,
    commutator,
    make_solver,
    mat_mul,
    mat_vec,
    nullspace,
    primitive_integer_vector,
    trace_of_product,
)


@dataclass(frozen=True)
class TrialityTriple:
    theta1: tuple
    theta2: tuple
    theta3: tuple

    @staticmethod
    def from_mats(m1: Mat, m2: Mat, m3: Mat) -> "TrialityTriple":
        tup = lambda m: tuple(tuple(row) for row in m)
        return TrialityTriple(tup(m1), tup(m2), tup(m3))

    def mats(self) -> Tuple[Mat, Mat, Mat]:
        lst = lambda m: [list(row) for row in m]
        return lst(self.theta1), lst(self.theta2), lst(self.theta3)

    def component(self, i: int) -> Mat:
        return [list(row) for row in (self.theta1, self.theta2, self.theta3)[i - 1]]

    def flat(self) -> Vec:
        out: Vec = []
        for m in (self.theta1, self.theta2, self.theta3):
            for row in m:
                out.extend(row)
        return out

    def is_zero(self) -> bool:
        return all(all(all(x == 0 for x in row) for row in m)
                   for m in (self.theta1, self.theta2, self.theta3))

    def scale(self, c: Fraction) -> "TrialityTriple":
        sc = lambda m: tuple(tuple(c * x for x in row) for row in m)
        return TrialityTriple(sc(self.theta1), sc(self.theta2), sc(self.theta3))

    def add(self, other: "TrialityTriple") -> "TrialityTriple":
        ad = lambda m, n: tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(m, n))
        return TrialityTriple(ad(self.theta1, other.theta1),
                              ad(self.theta2, other.theta2),
                              ad(self.theta3, other.theta3))


def triality_bracket(x: TrialityTriple, y: TrialityTriple) -> TrialityTriple:
    """Componentwise matrix commutator; t(A) is closed under it."""
    a1, a2, a3 = x.mats()
    b1, b2, b3 = y.mats()
    return TrialityTriple.from_mats(commutator(a1, b1), commutator(a2, b2), commutator(a3, b3))


def _triple_from_flat(v: Sequence[Fraction], n: int) -> TrialityTriple:
    mats = []
    for c in range(3):
        base = c * n * n
        mats.append([list(v[base + r * n:base + (r + 1) * n]) for r in range(n)])
    return TrialityTriple.from_mats(*mats)


def satisfies_triality(alg: CompAlg, t: TrialityTriple) -> bool:
    """theta3(e_i e_j) == theta1(e_i) e_j + e_i theta2(e_j) on all basis pairs."""
    n = alg.dim
    m1, m2, m3 = t.mats()
    for i in range(n):
        col1 = [m1[r][i] for r in range(n)]
        for j in range(n):
            col2 = [m2[r][j] for r in range(n)]
            prod = alg.ctable[i][j]
            lhs = [F0] * n
            for k, c in prod.items():
                for r in range(n):
                    lhs[r] += c * m3[r][k]
            rhs = alg.multiply(col1, alg.basis_element(j))
            rhs2 = alg.multiply(alg.basis_element(i), col2)
            if any(lhs[r] != rhs[r] + rhs2[r] for r in range(n)):
                return False
    return True


class TrialityAlgebra:
    """t(A) with a basis (Cartan-adapted), bracket data, K form and Psi maps."""

    def __init__(self, alg: CompAlg):
        self.alg = alg
        self.basis: List[TrialityTriple] = self._compute_basis()
        self.dim = len(self.basis)
        self.cartan_dim = self._count_cartan()
        if self.dim:
            self._solver = make_solver([t.flat() for t in self.basis])
        self._bracket_cache: Dict[Tuple[int, int], Vec] = {}
        self._psi_tables: Optional[List[Dict[Tuple[int, int], Vec]]] = None
        self._k_matrix: Optional[Mat] = None
        self._psi_scale: Optional[Fraction] = None

    # -- basis ----------------------------------------------------------------

    def _compute_basis(self) -> List[TrialityTriple]:
        alg = self.alg
        n = alg.dim
        so_basis = alg.so_q_basis()
        d = len(so_basis)
        if d == 0:
            return []
        # Unknowns: coordinates of (theta1, theta2, theta3) in the so(Q) basis.
        rows: List[Vec] = []
        for i in range(n):
            ei = alg.basis_element(i)
            for j in range(n):
                ej = alg.basis_element(j)
                prod = alg.ctable[i][j]
                for r in range(n):
                    row = [F0] * (3 * d)
                    for k, m in enumerate(so_basis):
                        # theta1(e_i) e_j term
                        col = [m[t][i] for t in range(n)]
                        row[k] -= alg.multiply(col, ej)[r]
                        # e_i theta2(e_j) term
                        col = [m[t][j] for t in range(n)]
                        row[d + k] -= alg.multiply(ei, col)[r]
                        # theta3(e_i e_j) term
                        acc = F0
                        for kk, c in prod.items():
                            acc += c * m[r][kk]
                        row[2 * d + k] += acc
                    rows.append(row)
        basis = []
        for v in nullspace(rows, 3 * d):
            v = primitive_integer_vector(v)
            mats = []
            for c in range(3):
                coords = v[c * d:(c + 1) * d]
                m = [[F0] * n for _ in range(n)]
                for k, x in enumerate(coords):
                    if x == 0:
                        continue
                    mk = so_basis[k]
                    for r in range(n):
                        for s in range(n):
                            if mk[r][s] != 0:
                                m[r][s] += x * mk[r][s]
                mats.append(m)
            basis.append(TrialityTriple.from_mats(*mats))
        return self._cartan_first(basis)

    def _cartan_first(self, basis: List[TrialityTriple]) -> List[TrialityTriple]:
        """Reorder so that a basis of the diagonal (Cartan) subspace comes first."""
        if not basis:
            return basis
        n = self.alg.dim
        flats = [t.flat() for t in basis]
        # Conditions: off-diagonal entries of all three components vanish.
        off_positions = [c * n * n + r * n + s
                         for c in range(3) for r in range(n) for s in range(n) if r != s]
        rows = [[f[pos] for f in flats] for pos in off_positions]
        cartan_coords = nullspace(rows, len(basis))
        cartan = []
        for v in cartan_coords:
            v = primitive_integer_vector(v)
            t = None
            for c, b in zip(v, basis):
                if c == 0:
                    continue
                t = b.scale(c) if t is None else t.add(b.scale(c))
            cartan.append(t)
        # Complete greedily to a full basis.
        from .linalg import rref

        chosen = list(cartan)
        for b in basis:
            trial = [t.flat() for t in chosen] + [b.flat()]
            red, pivots = rref(trial)
            if len(pivots) == len(trial):
                chosen.append(b)
        assert len(chosen) == len(basis)
        self._n_cartan = len(cartan)
        return chosen

    def _count_cartan(self) -> int:
        return getattr(self, "_n_cartan", 0)

    # -- coordinates and bracket ------------------------------------------------

    def coords(self, t: TrialityTriple) -> Vec:
        """Coordinates of a triple in the stored basis (raises if outside t(A))."""
        if self.dim == 0:
            if not t.is_zero():
                raise ValueError("nonzero triple in trivial t(A)")
            return []
        return self._solver.solve(t.flat())

    def from_coords(self, v: Sequence[Fraction]) -> TrialityTriple:
        t = None
        for c, b in zip(v, self.basis):
            if c == 0:
                continue
            t = b.scale(c) if t is None else t.add(b.scale(c))
        if t is None:
            n = self.alg.dim
            z = [[F0] * n for _ in range(n)]
            return TrialityTriple.from_mats(z, z, z)
        return t

    def bracket_coords(self, k: int, l: int) -> Vec:
        """Coordinates of [basis_k, basis_l]; cached."""
        if (k, l) in self._bracket_cache:
            return self._bracket_cache[(k, l)]
        out = self.coords(triality_bracket(self.basis[k], self.basis[l]))
        self._bracket_cache[(k, l)] = out
        self._bracket_cache[(l, k)] = [-c for c in out]
        return out

    # -- order-3 symmetry --------------------------------------------------------

    def cyclic_shift(self, t: TrialityTriple, check: bool = True) -> TrialityTriple:
        """tau(theta) = (theta2, C theta3 C, C theta1 C); verified order 3.

        The naive shift (theta2, theta3, theta1) fails the triality relation
        in these split models; conjugating the two moved slots repairs it.
        """
        cj = self.alg.conj_matrix
        tw = lambda m: mat_mul(cj, mat_mul(m, cj))
        m1, m2, m3 = t.mats()
        out = TrialityTriple.from_mats(m2, tw(m3), tw(m1))
        if check and not satisfies_triality(self.alg, out):
            raise ValueError("cyclic_shift output fails the triality relation")
        return out

    # -- invariant form and Psi ---------------------------------------------------

    def trace_form(self, i: int) -> Mat:
        """Gram matrix of (x, y) -> trace(x_i y_i) on the stored basis."""
        mats = [t.component(i) for t in self.basis]
        return [[trace_of_product(a, b) for b in mats] for a in mats]

    def _calibrate(self) -> None:
        """Solve for the K normalization and the Psi_1 table simultaneously."""
        alg = self.alg
        n = alg.dim
        d = self.dim
        if d == 0:
            self._k_matrix = []
            self._psi_scale = F1
            self._psi_tables = [{}, {}, {}]
            return
        t_sum = self.trace_form(1)
        for i in (2, 3):
            extra = self.trace_form(i)
            t_sum = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(t_sum, extra)]
        sum_solver = make_solver([[t_sum[r][c] for r in range(d)] for c in range(d)])
        raw: Dict[Tuple[int, int], Vec] = {}
        for p in range(n):
            for q in range(p + 1, n):
                ep, eq = alg.basis_element(p), alg.basis_element(q)
                f = []
                for t in self.basis:
                    m1 = t.component(1)
                    f.append(alg.qform(mat_vec(m1, ep), eq))
                raw[(p, q)] = sum_solver.solve(f)
        # Scale so that Psi_1(u ^ v)_2 x = conj(v)(u x) - conj(u)(v x) exactly.
        scale = None
        for (p, q), coords in raw.items():
            t = self.from_coords(coords)
            m2 = t.component(2)
            u, v = alg.basis_element(p), alg.basis_element(q)
            cu, cv = alg.conjugate(u), alg.conjugate(v)
            for j in range(n):
                x = alg.basis_element(j)
                target = [a - b for a, b in
                          zip(alg.multiply(cv, alg.multiply(u, x)),
                              alg.multiply(cu, alg.multiply(v, x)))]
                got = [m2[r][j] for r in range(n)]
                for tg, gt in zip(target, got):
                    if tg != 0 or gt != 0:
                        if gt == 0:
                            raise ValueError("Psi_1 slot-2 not proportional to the product map")
                        ratio = tg / gt
                        if scale is None:
                            scale = ratio
                        elif scale != ratio:
                            raise ValueError("inconsistent Psi_1 normalization ratios")
        if scale is None:
            scale = F1
        self._psi_scale = scale
        # K = (1/scale) * (tr1 + tr2 + tr3): duality K(Psi1(u^v), th) = Q(th_1 u, v).
        inv = 1 / scale
        self._k_matrix = [[inv * t_sum[r][c] for c in range(d)] for r in range(d)]
        psi1 = {pq: [scale * c for c in coords] for pq, coords in raw.items()}
        psi2 = {}
        psi3 = {}
        for (p, q), coords in psi1.items():
            t = self.from_coords(coords)
            psi2[(p, q)] = self.coords(self.cyclic_shift(self.cyclic_shift(t, check=False), check=False))
            u = alg.conjugate(alg.basis_element(p))
            v = alg.conjugate(alg.basis_element(q))
            t_conj = self.psi_raw(psi1, u, v)
            psi3[(p, q)] = self.coords(self.cyclic_shift(t_conj, check=False))
        self._psi_tables = [psi1, psi2, psi3]

    def psi_raw(self, table: Dict[Tuple[int, int], Vec], u: Sequence[Fraction],
                v: Sequence[Fraction]) -> TrialityTriple:
        n = self.alg.dim
        acc = [F0] * self.dim
        for p in range(n):
            for q in range(p + 1, n):
                c = u[p] * v[q] - u[q] * v[p]
                if c == 0:
                    continue
                for k, x in enumerate(table[(p, q)]):
                    acc[k] += c * x
        return self.from_coords(acc)

    def psi_coords(self, i: int, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
        """Coordinates in the t(A) basis of Psi_i(u ^ v)."""
        if self._psi_tables is None:
            self._calibrate()
        n = self.alg.dim
        acc = [F0] * self.dim
        table = self._psi_tables[i - 1]
        for p in range(n):
            for q in range(p + 1, n):
                c = u[p] * v[q] - u[q] * v[p]
                if c == 0:
                    continue
                for k, x in enumerate(table[(p, q)]):
                    acc[k] += c * x
        return acc

    def k_matrix(self) -> Mat:
        if self._k_matrix is None:
            self._calibrate()
        return self._k_matrix

    def k_form(self, x: TrialityTriple, y: TrialityTriple) -> Fraction:
        k = self.k_matrix()
        cx, cy = self.coords(x), self.coords(y)
        out = F0
        for r, a in enumerate(cx):
            if a == 0:
                continue
            for c, b in enumerate(cy):
                if b != 0:
                    out += a * k[r][c]
        return out

    def cartan_basis(self) -> List[TrialityTriple]:
        return self.basis[:self.cartan_dim]

    def dump(self) -> dict:
        return {
            "algebra": self.alg.tag.name,
            "dim": self.dim,
            "cartan_dim": self.cartan_dim,
            "basis": [
                {
                    "theta1": [[rat_str(x) for x in row] for row in t.component(1)],
                    "theta2": [[rat_str(x) for x in row] for row in t.component(2)],
                    "theta3": [[rat_str(x) for x in row] for row in t.component(3)],
                }
                for t in self.basis
            ],
        }


_T_CACHE: Dict[str, TrialityAlgebra] = {}


def triality_algebra(alg: CompAlg | AlgebraTag | str) -> TrialityAlgebra:
    if isinstance(alg, str):
        alg = build_split_algebra(parse_tag(alg))
    elif isinstance(alg, AlgebraTag):
        alg = build_split_algebra(alg)
    key = alg.tag.name
    if key not in _T_CACHE:
        _T_CACHE[key] = TrialityAlgebra(alg)
    return _T_CACHE[key]


def triality_basis(alg: CompAlg | AlgebraTag | str) -> TrialityAlgebra:
    """Spec-facing alias: compute t(A) with its basis and structure."""
    return triality_algebra(alg)


def cyclic_shift(alg: CompAlg | AlgebraTag | str, t: TrialityTriple) -> TrialityTriple:
    return triality_algebra(alg).cyclic_shift(t)


def psi(ta: TrialityAlgebra, i: int, u: Sequence[Fraction], v: Sequence[Fraction]) -> TrialityTriple:
    if i not in (1, 2, 3):
        raise ValueError("psi: slot index must be 1, 2 or 3")
    return ta.from_coords(ta.psi_coords(i, u, v))
