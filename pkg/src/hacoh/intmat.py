"""Exact integer matrix algebra: Smith normal form and row-lattice tools.

Matrices are plain lists of lists of Python ints (arbitrary precision).
Everything here is desk-scale: cubic algorithms with gcd-based pivot
selection to keep intermediate entries small.
"""

from fractions import Fraction

from .errors import DimensionMismatch


def int_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def int_matmul(A, B):
    if not A or not B:
        return []
    if len(A[0]) != len(B):
        raise DimensionMismatch(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    n, k, m = len(A), len(B), len(B[0])
    Bt = [[B[r][c] for r in range(k)] for c in range(m)]
    return [[sum(Ai[r] * Bc[r] for r in range(k)) for Bc in Bt] for Ai in A]


def int_matvec(A, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in A]


def int_vecmat(v, A):
    if not A:
        return []
    m = len(A[0])
    return [sum(v[i] * A[i][j] for i in range(len(v))) for j in range(m)]


def int_det(A):
    """Exact determinant via fraction-free-enough Gaussian elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [M[r][j] - f * M[c][j] for j in range(n)]
    assert det.denominator == 1
    return int(det)


def int_inverse_unimodular(V):
    """Inverse of a unimodular integer matrix (exact, result is integral)."""
    n = len(V)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(V)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [M[r][j] - f * M[c][j] for j in range(2 * n)]
    out = [[M[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row), "matrix was not unimodular"
    return [[int(x) for x in row] for row in out]


def smith_normal_form(A):
    """Return (U, D, V) with U*A*V = D, U and V unimodular, D diagonal
    with d_i | d_{i+1} and d_i >= 0.

    Pivots are chosen by minimal nonzero absolute value (gcd-style entry
    control); no modular shortcuts, everything exact.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = int_identity(m)
    V = int_identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        D[dst] = [D[dst][c] + f * D[src][c] for c in range(n)]
        U[dst] = [U[dst][c] + f * U[src][c] for c in range(m)]

    def add_col(src, dst, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    k = 0
    while k < min(m, n):
        # locate minimal nonzero entry in the trailing submatrix
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != k:
            swap_rows(k, i)
        if j != k:
            swap_cols(k, j)
        # clear row and column k; restarts when a remainder shrinks the pivot
        while True:
            dirty = False
            for r in range(k + 1, m):
                if D[r][k]:
                    q = D[r][k] // D[k][k]
                    add_row(k, r, -q)
                    if D[r][k]:
                        swap_rows(k, r)
                        dirty = True
            for c in range(k + 1, n):
                if D[k][c]:
                    q = D[k][c] // D[k][k]
                    add_col(k, c, -q)
                    if D[k][c]:
                        swap_cols(k, c)
                        dirty = True
            if not dirty:
                break
        # divisibility sweep: pivot must divide the whole trailing block
        offender = None
        for r in range(k + 1, m):
            for c in range(k + 1, n):
                if D[r][c] % D[k][k]:
                    offender = r
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, k, 1)
            continue
        if D[k][k] < 0:
            negate_row(k)
        k += 1

    return U, D, V


def snf_diagonal(A):
    _, D, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


class RowLattice:
    """The subgroup of Z^n spanned by integer row vectors, with exact
    membership tests and witnesses."""

    def __init__(self, rows, n):
        self.n = n
        self.rows = [list(r) for r in rows]
        if self.rows:
            U, D, V = smith_normal_form(self.rows)
            self._U, self._V = U, V
            self._d = [D[i][i] for i in range(min(len(D), n))]
            self._rank = sum(1 for d in self._d if d != 0)
            Vinv = int_inverse_unimodular(V)
            # rowspan = span of d_i * (V^-1 row i) for nonzero d_i
            self.basis = [[self._d[i] * Vinv[i][j] for j in range(n)]
                          for i in range(self._rank)]
        else:
            self._U = []
            self._V = int_identity(n)
            self._d = []
            self._rank = 0
            self.basis = []

    @property
    def rank(self):
        return self._rank

    def coords(self, x):
        """Combination lambda with lambda * rows == x, or None.

        Solves via the stored SNF: x in rowspan(rows) iff x*V is divisible
        by the diagonal and supported on the first rank coordinates.
        """
        if not self.rows:
            return [] if all(v == 0 for v in x) else None
        mu = int_vecmat(x, self._V)
        kappa = []
        for i in range(len(self.rows)):
            d = self._d[i] if i < len(self._d) else 0
            mi = mu[i] if i < len(mu) else 0
            if d == 0:
                if mi != 0:
                    return None
                kappa.append(0)
            else:
                if mi % d:
                    return None
                kappa.append(mi // d)
        if any(v != 0 for v in mu[len(self.rows):]):
            return None
        return int_vecmat(kappa, self._U)

    def contains(self, x):
        return self.coords(x) is not None

    def basis_coords(self, x):
        """Coordinates of x in self.basis (requires full column rank use)."""
        if not self.basis:
            return [] if all(v == 0 for v in x) else None
        lat = _basis_solver(tuple(map(tuple, self.basis)), self.n)
        return lat(x)


def _basis_solver(basis_rows, n):
    """Exact solver c -> coords with coords * basis == c, via fractions."""
    B = [list(r) for r in basis_rows]
    k = len(B)

    def solve(x):
        # solve y * B = x  (y has k entries)
        M = [[Fraction(B[i][j]) for i in range(k)] for j in range(n)]  # n x k
        rhs = [Fraction(v) for v in x]
        piv_cols = []
        r = 0
        for c in range(k):
            piv = next((i for i in range(r, n) if M[i][c] != 0), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            rhs[r], rhs[piv] = rhs[piv], rhs[r]
            inv = 1 / M[r][c]
            M[r] = [v * inv for v in M[r]]
            rhs[r] *= inv
            for i in range(n):
                if i != r and M[i][c]:
                    f = M[i][c]
                    M[i] = [M[i][j] - f * M[r][j] for j in range(k)]
                    rhs[i] -= f * rhs[r]
            piv_cols.append(c)
            r += 1
        y = [Fraction(0)] * k
        for row_idx, c in enumerate(piv_cols):
            y[c] = rhs[row_idx]
        for i in range(r, n):
            if rhs[i] != 0:
                return None
        if any(v.denominator != 1 for v in y):
            return None
        return [int(v) for v in y]

    return solve
