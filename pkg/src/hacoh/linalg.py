"""Exact linear algebra over a Field: solve, kernel, rank, inverse.

Matrices are lists of rows of raw field codes; the Field instance is
passed explicitly.  Plain Gaussian elimination -- desk-scale sizes only.
"""

from .errors import DimensionMismatch


def _rref(F, A, b=None):
    """Row-reduce A (copy) and optional rhs; returns (R, rhs, pivots)."""
    R = [list(row) for row in A]
    rhs = list(b) if b is not None else None
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c] != F.zero), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        if rhs is not None:
            rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        if rhs is not None:
            rhs[r] = F.mul(inv, rhs[r])
        for i in range(m):
            if i != r and R[i][c] != F.zero:
                f = R[i][c]
                R[i] = [F.sub(R[i][j], F.mul(f, R[r][j])) for j in range(n)]
                if rhs is not None:
                    rhs[i] = F.sub(rhs[i], F.mul(f, rhs[r]))
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, rhs, pivots


def solve_linear(F, A, b):
    """One exact solution x of A x = b, or None if inconsistent."""
    m = len(A)
    if m and len(b) != m:
        raise DimensionMismatch(f"matrix has {m} rows, rhs has {len(b)}")
    n = len(A[0]) if m else 0
    R, rhs, pivots = _rref(F, A, b)
    for i in range(len(pivots), m):
        if rhs[i] != F.zero:
            return None
    x = [F.zero] * n
    for i, c in enumerate(pivots):
        x[c] = rhs[i]
    return x


def kernel_basis(F, A):
    """Exact basis of the null space of A; empty iff A injective."""
    m = len(A)
    n = len(A[0]) if m else 0
    R, _, pivots = _rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * n
        v[fc] = F.one
        for i, c in enumerate(pivots):
            v[c] = F.neg(R[i][fc])
        basis.append(v)
    return basis


def rank(F, A):
    _, _, pivots = _rref(F, A)
    return len(pivots)


def matvec(F, A, v):
    return [F.sum(F.mul(row[j], v[j]) for j in range(len(v))) for row in A]


def matmul(F, A, B):
    if not A or not B:
        return []
    if len(A[0]) != len(B):
        raise DimensionMismatch("inner dimensions disagree")
    n, k, m = len(A), len(B), len(B[0])
    return [[F.sum(F.mul(A[i][t], B[t][j]) for t in range(k))
             for j in range(m)] for i in range(n)]


def identity_matrix(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def invert_matrix(F, A):
    """Inverse of a square matrix, or None if singular."""
    n = len(A)
    aug = [list(A[i]) + [F.one if j == i else F.zero for j in range(n)]
           for i in range(n)]
    R, _, pivots = _rref(F, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R[:n]]


def zero_vector(F, n):
    return [F.zero] * n


def basis_vector(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return v


def vec_add(F, u, v):
    return [F.add(a, b) for a, b in zip(u, v)]


def vec_scale(F, c, v):
    return [F.mul(c, x) for x in v]


def vec_eq(u, v):
    return list(u) == list(v)
