"""Small exact linear algebra over fields of Python numbers (Fraction or
quadratic elements).  Matrices are lists of rows."""
from fractions import Fraction


def _zero(x):
    return x == 0


def rref(rows, ncols):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not _zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and not _zero(A[i][c]):
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows, ncols, with_free=False):
    """Basis of {v : rows * v = 0}, one vector per free column, each with a 1
    in its free column and 0 in the other free columns."""
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return (basis, free) if with_free else basis


def mat_vec(A, v):
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def mat_mul(A, B):
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def solve(A, b):
    """One solution of A x = b (A square or over-determined and consistent)."""
    n = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def span_intersection_kernel(mats, n):
    """Basis of the common kernel of square matrices acting on column vectors."""
    rows = [r for M in mats for r in M]
    return nullspace(rows, n)
