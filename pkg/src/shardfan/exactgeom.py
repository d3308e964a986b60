"""Exact integer and rational linear algebra.

Everything here works on tuples of ``int`` / ``fractions.Fraction``; no
floating point is ever involved, so signs and incidences are decided exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DependentInput

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]

# Ambient dimensions up to this use Fourier-Motzkin; larger ones use simplex.
FM_MAX_DIM = 4


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return vec_gcd(v) == 1


def det_bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_sign(matrix: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Return ``(sign, |det|)`` of a square integer matrix."""
    d = det_bareiss(matrix)
    return (d > 0) - (d < 0), abs(d)


@dataclass(frozen=True)
class Hyperplane:
    """Linear hyperplane with a primitive normal pointing to its positive side.

    The positive side is the one containing the all-ones vector.  When the
    all-ones vector lies on the hyperplane the first nonzero coordinate of the
    normal is made positive instead and ``ambiguous`` is set.
    """

    normal: IntVec
    ambiguous: bool = False

    def side(self, point: Sequence) -> int:
        s = dot(self.normal, point)
        return (s > 0) - (s < 0)


def canonical_hyperplane(normal: Sequence[int]) -> Hyperplane:
    g = vec_gcd(normal)
    if g == 0:
        raise DependentInput("zero normal vector")
    nu = tuple(x // g for x in normal)
    s = sum(nu)
    if s < 0:
        nu = tuple(-x for x in nu)
    if s != 0:
        return Hyperplane(nu, False)
    first = next(x for x in nu if x != 0)
    if first < 0:
        nu = tuple(-x for x in nu)
    return Hyperplane(nu, True)


def hyperplane_through(vectors: Sequence[Sequence[int]], dim: int) -> Hyperplane:
    """Canonical hyperplane spanned by ``dim - 1`` independent integer vectors."""
    vectors = [tuple(v) for v in vectors]
    if len(vectors) != dim - 1 or any(len(v) != dim for v in vectors):
        raise DependentInput(f"need exactly {dim - 1} vectors of length {dim}")
    # generalized cross product: cofactors along a formal first row
    normal = []
    for i in range(dim):
        minor = [[v[j] for j in range(dim) if j != i] for v in vectors]
        normal.append((-1) ** i * det_bareiss(minor))
    if not any(normal):
        raise DependentInput("input vectors are linearly dependent")
    return canonical_hyperplane(normal)


def primitive_normal(vectors: Sequence[Sequence[int]], dim: int | None = None) -> IntVec:
    if dim is None:
        if not vectors:
            raise DependentInput("dimension cannot be inferred from zero vectors")
        dim = len(vectors[0]) if vectors else 1
    return hyperplane_through(vectors, dim).normal


def solve_rational(columns: Sequence[Sequence], rhs: Sequence) -> RatVec | None:
    """Solve ``sum_i c_i * columns[i] = rhs`` exactly.

    The columns must be linearly independent.  Returns ``None`` when the system
    is inconsistent (rhs outside the span).
    """
    k = len(columns)
    n = len(rhs)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(rhs[i])] for i in range(n)]
    pivot_row = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(pivot_row, n) if rows[r][col] != 0), None)
        if piv is None:
            raise DependentInput("columns are linearly dependent")
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        p = rows[pivot_row][col]
        rows[pivot_row] = [x / p for x in rows[pivot_row]]
        for r in range(n):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pivot_row])]
        pivots.append(pivot_row)
        pivot_row += 1
    if any(rows[r][k] != 0 for r in range(pivot_row, n)):
        return None
    return tuple(rows[pivots[j]][k] for j in range(k))


def cone_membership(rays: Sequence[Sequence[int]], point: Sequence) -> tuple[bool, RatVec | None]:
    """Is ``point`` a nonnegative combination of the independent ``rays``?

    Returns ``(inside, coefficients)``; the coefficients are ``None`` when the
    point is outside.
    """
    if not rays:
        inside = all(Fraction(x) == 0 for x in point)
        return inside, (() if inside else None)
    coeffs = solve_rational(rays, point)
    if coeffs is None or any(c < 0 for c in coeffs):
        return False, None
    return True, coeffs


# -- feasibility of {x >= 0, A x = b} ---------------------------------------

def _fm_normalize(coeffs: list[Fraction], rhs: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
    scale = max((abs(c) for c in coeffs), default=Fraction(0))
    if scale == 0:
        return tuple(coeffs), rhs
    return tuple(c / scale for c in coeffs), rhs / scale


def feasible_fourier_motzkin(A: Sequence[Sequence], b: Sequence) -> bool:
    """Decide whether ``A x = b, x >= 0`` has a rational solution.

    Equalities are eliminated by Gaussian elimination first; the remaining
    inequalities over the free variables are projected out one variable at a
    time.
    """
    m = len(A)
    N = len(A[0]) if m else 0
    rows = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    pivot_of: dict[int, int] = {}
    r = 0
    for col in range(N):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * c for a, c in zip(rows[i], rows[r])]
        pivot_of[col] = r
        r += 1
    if any(rows[i][N] != 0 for i in range(r, m)):
        return False
    free = [j for j in range(N) if j not in pivot_of]
    # inequalities a.y <= rhs over the free variables y
    ineqs: set[tuple[tuple[Fraction, ...], Fraction]] = set()
    for k, j in enumerate(free):
        coeffs = [Fraction(0)] * len(free)
        coeffs[k] = Fraction(-1)
        ineqs.add(_fm_normalize(coeffs, Fraction(0)))
    for col, i in pivot_of.items():
        # x_col = rhs_i - sum_j row_i[j] y_j >= 0  <=>  sum_j row_i[j] y_j <= rhs_i
        coeffs = [rows[i][j] for j in free]
        ineqs.add(_fm_normalize(coeffs, rows[i][N]))
    for k in range(len(free)):
        pos, neg, rest = [], [], []
        for a, rhs in ineqs:
            (pos if a[k] > 0 else neg if a[k] < 0 else rest).append((a, rhs))
        new = set(rest)
        for ap, rp in pos:
            for an, rn in neg:
                fp, fn = -an[k], ap[k]
                coeffs = [fp * x + fn * y for x, y in zip(ap, an)]
                coeffs[k] = Fraction(0)
                new.add(_fm_normalize(coeffs, fp * rp + fn * rn))
        ineqs = new
    return all(rhs >= 0 for _, rhs in ineqs)


def feasible_simplex(A: Sequence[Sequence], b: Sequence) -> bool:
    """Phase-one simplex with Bland's rule on ``A x = b, x >= 0``."""
    m = len(A)
    if m == 0:
        return True
    N = len(A[0])
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs])
    width = N + m
    basis = [N + i for i in range(m)]
    # objective: minimize sum of artificials, kept as reduced-cost row
    obj = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(width + 1):
            obj[j] -= row[j]
    for j in range(N, width):
        obj[j] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded phase-one objective cannot happen (it is bounded below by 0)
            break
        p = tab[leave][enter]
        tab[leave] = [x / p for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter
    return obj[width] == 0


def feasible_nonneg(A: Sequence[Sequence], b: Sequence, dim: int | None = None,
                    method: str = "auto") -> bool:
    if method == "auto":
        method = "fm" if dim is not None and dim <= FM_MAX_DIM else "simplex"
    if method == "fm":
        return feasible_fourier_motzkin(A, b)
    if method == "simplex":
        return feasible_simplex(A, b)
    raise ValueError(f"unknown feasibility method {method!r}")


def cones_meet_beyond_common_face(rays_a: Sequence[Sequence[int]], rays_b: Sequence[Sequence[int]],
                                  common: Sequence[Sequence[int]], method: str = "auto") -> bool:
    """True iff cone(rays_a) and cone(rays_b) intersect in more than cone(common).

    Both ray sets must be linearly independent and ``common`` a subset of each.
    A point of cone(rays_a) lies outside cone(common) exactly when one of its
    (unique) coefficients on a non-common ray is positive, so we normalize the
    sum of those coefficients to one.
    """
    common_set = {tuple(v) for v in common}
    ra = [tuple(v) for v in rays_a]
    rb = [tuple(v) for v in rays_b]
    extra = [tuple(v) not in common_set for v in ra]
    if not any(extra):
        return False
    n = len(ra[0])
    A = []
    b = []
    for i in range(n):
        A.append([v[i] for v in ra] + [-v[i] for v in rb])
        b.append(0)
    A.append([1 if e else 0 for e in extra] + [0] * len(rb))
    b.append(1)
    return feasible_nonneg(A, b, dim=n, method=method)


def integer_inverse(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix (rows as given)."""
    n = len(matrix)
    d = det_bareiss(matrix)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[matrix[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof[i][j] = (-1) ** (i + j) * det_bareiss(minor)
    # inverse = adj / det, adj = cof^T
    return [[cof[j][i] * d for j in range(n)] for i in range(n)]
