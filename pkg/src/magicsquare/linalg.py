"""Small exact linear algebra toolkit over Fraction.

Dense matrices are lists of lists of Fraction; sparse vectors are
dict[int, Fraction] with no zero values stored.  Sizes in this package
stay below a few hundred, so straightforward Gaussian elimination is fine.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence

Vec = List[Fraction]
Mat = List[Vec]
SVec = Dict[int, Fraction]

F0 = Fraction(0)
F1 = Fraction(1)


def zeros(n: int, m: int) -> Mat:
    return [[F0] * m for _ in range(n)]


def identity(n: int) -> Mat:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = F1
    return out


def mat_copy(a: Mat) -> Mat:
    return [row[:] for row in a]


def transpose(a: Mat) -> Mat:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j] != 0:
                    oi[j] += c * bt[j]
    return out


def mat_vec(a: Mat, v: Sequence[Fraction]) -> Vec:
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j] != 0), F0) for row in a]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Mat, c: Fraction) -> Mat:
    return [[c * x for x in row] for row in a]


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace_of_product(a: Mat, b: Mat) -> Fraction:
    n = len(a)
    out = F0
    for i in range(n):
        for j in range(n):
            if a[i][j] != 0 and b[j][i] != 0:
                out += a[i][j] * b[j][i]
    return out


def rref(rows: Mat) -> tuple[Mat, List[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    a = mat_copy(rows)
    n = len(a)
    m = len(a[0]) if a else 0
    pivots: List[int] = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return a[:r], pivots


def nullspace(rows: Mat, ncols: Optional[int] = None) -> List[Vec]:
    """Basis of {x : A x = 0} from the RREF, free variables set to 1."""
    m = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return [e_vector(m, i) for i in range(m)]
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(m) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [F0] * m
        v[fc] = F1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def e_vector(n: int, i: int) -> Vec:
    v = [F0] * n
    v[i] = F1
    return v


def solve(a: Mat, b: Vec) -> Optional[Vec]:
    """One solution of A x = b, or None if inconsistent (A may be non-square)."""
    n = len(a)
    m = len(a[0]) if a else 0
    aug = [a[i][:] + [b[i]] for i in range(n)]
    red, pivots = rref(aug)
    if m in pivots:
        return None
    x = [F0] * m
    for r, c in enumerate(pivots):
        x[c] = red[r][m]
    return x


class SolveCache:
    """Repeated exact solves expressing vectors in a fixed independent column set.

    Row-reduces [A | I] once; solving A x = b is then a matrix-vector product,
    and the zero rows of the reduced A-part provide the in-span consistency check.
    """

    def __init__(self, columns: Mat):
        self.ncols = len(columns)
        self.nrows = len(columns[0]) if columns else 0
        a = [[columns[j][i] for j in range(self.ncols)] for i in range(self.nrows)]
        aug = [row[:] + e_vector(self.nrows, i) for i, row in enumerate(a)]
        red, pivots = rref(aug)
        if pivots[:self.ncols] != list(range(self.ncols)):
            raise ValueError("SolveCache: columns are not independent")
        # Rows 0..ncols-1 express x in terms of b; later rows must annihilate b.
        self.solution_rows = [row[self.ncols:] for row in red[:self.ncols]]
        self.check_rows = [row[self.ncols:] for row in red[self.ncols:]]

    def solve(self, b: Sequence[Fraction]) -> Vec:
        """Coefficients x with columns @ x = b; raises if b is outside the span."""
        support = [j for j in range(self.nrows) if b[j] != 0]
        for row in self.check_rows:
            if sum((row[j] * b[j] for j in support), F0) != 0:
                raise ValueError("SolveCache.solve: vector outside column span")
        return [sum((row[j] * b[j] for j in support), F0) for row in self.solution_rows]


def make_solver(columns: Mat) -> SolveCache:
    return SolveCache(columns)


def det(a: Mat) -> Fraction:
    """Determinant by fraction-free style elimination over Fraction."""
    n = len(a)
    m = mat_copy(a)
    out = F1
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return F0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            out = -out
        out *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [a[i][:] + e_vector(n, i) for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("inverse: matrix is singular")
    return [row[n:] for row in red]


def primitive_integer_vector(v: Sequence[Fraction]) -> Vec:
    """Rescale a rational vector to integer entries with content 1.

    The sign is normalized so the first nonzero entry is positive.
    """
    denoms = [x.denominator for x in v if x != 0]
    if not denoms:
        return list(v)
    mult = 1
    for d in denoms:
        mult = mult * d // gcd(mult, d)
    ints = [int(x * mult) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return [Fraction(x) for x in ints]


# -- sparse helpers ---------------------------------------------------------


def sv_add(a: SVec, b: SVec, coeff: Fraction = F1) -> SVec:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, F0) + coeff * v
        if nv == 0:
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def sv_scale(a: SVec, c: Fraction) -> SVec:
    if c == 0:
        return {}
    return {k: c * v for k, v in a.items()}


def sv_from_dense(v: Sequence[Fraction]) -> SVec:
    return {i: x for i, x in enumerate(v) if x != 0}


def sv_to_dense(v: SVec, n: int) -> Vec:
    out = [F0] * n
    for k, x in v.items():
        out[k] = x
    return out
