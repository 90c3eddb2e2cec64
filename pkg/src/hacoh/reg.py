"""The convolution groups Reg(H^(x)q, A) and their differential.

A RegElement is a normalized convolution-invertible linear map
H^(x)q -> A, stored as a dense table over basis index tuples.  The
coefficient A is a commutative algebra carrying a right H-action
(possibly trivial); the same machinery drives both the plain complex on
H and the subcomplex of maps T^(x)q -> Hom(N,A) used for measuring
cohomology, because Hom(N,A) with the convolution product is itself a
ModuleAlgebra.

The differential of a degree-q element is the alternating convolution
of q+2 factors: face 0 drops the first slot against the counit, face i
(1 <= i <= q) multiplies slots i and i+1, and the last face acts on the
value by the final slot.  Face i carries f for even i and f^{-1} for
odd i; the action face has parity opposite to face q.  The convention
is pinned by delta(delta(f)) = unit and by the classical degree-1/2
formulas, which the tests check exhaustively.
"""

from itertools import product

from .errors import (DegreeUnsupported, DimensionMismatch, NotInvertible,
                     ShapeMismatch)
from .hopf import AlgebraData, _basis_vec
from .linalg import solve_linear


class ModuleAlgebra:
    """Commutative coefficient algebra with a right H-action.

    act[h] is the dimA x dimA matrix of a -> a^{x_h}.
    """

    def __init__(self, H, A, act, trivial=False, hom_structure=None):
        self.H = H
        self.A = A
        self.act = act
        self.trivial = trivial
        self.hom_structure = hom_structure  # (N, A0, left action) when A = Hom(N, A0)
        if len(act) != H.dim:
            raise DimensionMismatch("one action matrix per H basis element")

    @property
    def field(self):
        return self.A.field

    @property
    def dim(self):
        return self.A.dim

    def act_basis(self, avec, h_idx):
        if self.trivial:
            c = self.H.counit[h_idx]
            F = self.field
            if c == F.one:
                return list(avec)
            return [F.mul(c, x) for x in avec]
        F = self.field
        M = self.act[h_idx]
        n = self.dim
        out = [F.zero] * n
        for j, c in enumerate(avec):
            if c != F.zero:
                col = [M[i][j] for i in range(n)]
                for i in range(n):
                    if col[i] != F.zero:
                        out[i] = F.add(out[i], F.mul(c, col[i]))
        return out

    @classmethod
    def trivial_coeff(cls, H, A):
        F = A.field
        n = A.dim
        eye = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
        act = []
        for h in range(H.dim):
            c = H.counit[h]
            act.append([[F.mul(c, eye[i][j]) for j in range(n)] for i in range(n)])
        return cls(H, A, act, trivial=True)

    @classmethod
    def from_right_action(cls, action_data):
        H = action_data.actor
        A = action_data.target
        F = A.field
        n = A.dim
        act = []
        for h in range(H.dim):
            M = [[F.zero] * n for _ in range(n)]
            for j in range(n):
                img = action_data.apply_right(_basis_vec(F, n, j), h)
                for i in range(n):
                    M[i][j] = img[i]
            act.append(M)
        return cls(H, A, act, trivial=action_data.trivial)

    @classmethod
    def hom_coeff(cls, T, N, A, left_action=None):
        """Hom(N, A) under convolution, with T acting by precomposition:
        (F^t)(n) = F(t(n)).  left_action is the T-module-bialgebra action
        on N (None = trivial)."""
        F = A.field
        nn, na = N.dim, A.dim
        dim = nn * na

        def idx(i, j):
            return i * na + j

        # multiplication: (F.G)(n_k) = sum_{Delta n_k} F(n_p) G(n_q)
        mult = [[[F.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for i1 in range(nn):
            for j1 in range(na):
                for i2 in range(nn):
                    for j2 in range(na):
                        row = mult[idx(i1, j1)][idx(i2, j2)]
                        va = A.mul_vec(_basis_vec(F, na, j1), _basis_vec(F, na, j2))
                        for k in range(nn):
                            # coefficient of n_i1 (x) n_i2 in Delta n_k
                            c = F.zero
                            for p, q, cc in N.comult[k]:
                                if p == i1 and q == i2:
                                    c = F.add(c, cc)
                            if c == F.zero:
                                continue
                            for j in range(na):
                                if va[j] != F.zero:
                                    row[idx(k, j)] = F.add(row[idx(k, j)],
                                                           F.mul(c, va[j]))
        unit = [F.zero] * dim
        for k in range(nn):
            sv = A.scalar_vec(N.counit[k])
            for j in range(na):
                unit[idx(k, j)] = sv[j]
        B = AlgebraData(F, mult, unit,
                        basis_labels=[f"[{n}->{a}]" for n in N.basis_labels
                                      for a in A.basis_labels],
                        is_commutative=None)
        act = []
        trivial = left_action is None or left_action.trivial
        for t in range(T.dim):
            M = [[F.zero] * dim for _ in range(dim)]
            for i0 in range(nn):
                for j0 in range(na):
                    # basis map n_i0 -> a_j0; (F^t)(n_i) = F(t(n_i))
                    for i in range(nn):
                        if left_action is None:
                            c = F.mul(T.counit[t], F.one if i == i0 else F.zero)
                        else:
                            img = left_action.apply_left(t, _basis_vec(F, nn, i))
                            c = img[i0]
                        if c != F.zero:
                            M[idx(i, j0)][idx(i0, j0)] = F.add(
                                M[idx(i, j0)][idx(i0, j0)], c)
            act.append(M)
        return cls(T, B, act, trivial=trivial,
                   hom_structure=(N, A, left_action))

    def same_shape(self, other):
        return (self.H.dim == other.H.dim and self.dim == other.dim and
                self.H.field.spec == other.H.field.spec)


def all_tuples(H, q):
    return list(product(range(H.dim), repeat=q))


def normalized_value(H, coeff, t):
    """Value forced by Reg-normalization when some slot is the unit basis
    vector: the product of the counits of the remaining slots times 1_A."""
    F = H.field
    c = F.one
    for i in t:
        c = F.mul(c, H.counit[i])
    return coeff.A.scalar_vec(c)


def free_tuples(H, q):
    """Tuples not containing the unit basis index (their values are not
    pinned by normalization)."""
    u = H.unit_index
    return [t for t in all_tuples(H, q) if u not in t]


class RegElement:
    """Normalized map H^(x)q -> A with values over basis index tuples."""

    def __init__(self, H, coeff, q, values, check_normal=True):
        self.H = H
        self.coeff = coeff
        self.q = q
        self.values = values
        self._inverse = None
        if check_normal:
            u = H.unit_index
            for t in all_tuples(H, q):
                if u in t and list(values[t]) != normalized_value(H, coeff, t):
                    raise ShapeMismatch(f"value at {t} violates normalization")

    def value(self, t):
        return self.values[t]

    def key(self):
        return tuple(tuple(self.values[t]) for t in all_tuples(self.H, self.q))

    def __eq__(self, other):
        return (isinstance(other, RegElement) and self.q == other.q
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.q, self.key()))

    def set_inverse(self, g):
        self._inverse = g
        g._inverse = self

    def inverse(self):
        if self._inverse is None:
            self._inverse = conv_inverse(self)
            self._inverse._inverse = self
        return self._inverse

    def is_eta_eps(self):
        return self == eta_eps(self.H, self.coeff, self.q)

    def to_json(self):
        F = self.coeff.field
        return {"degree": self.q,
                "values": [[F.to_json(c) for c in self.values[t]]
                           for t in all_tuples(self.H, self.q)]}

    @classmethod
    def from_json(cls, H, coeff, obj):
        F = coeff.field
        q = obj["degree"]
        tuples = all_tuples(H, q)
        vals = obj["values"]
        if len(vals) != len(tuples):
            raise DimensionMismatch("serialized value table has wrong size")
        values = {t: [F.from_json(c) for c in row] for t, row in zip(tuples, vals)}
        return cls(H, coeff, q, values)


def eta_eps(H, coeff, q):
    """The convolution unit: t -> eps(t) 1_A."""
    values = {t: normalized_value(H, coeff, t) for t in all_tuples(H, q)}
    return RegElement(H, coeff, q, values, check_normal=False)


def _check_shapes(f, g):
    if f.q != g.q or f.H is not g.H and f.H.dim != g.H.dim:
        raise ShapeMismatch("operands have different degree or source")
    if f.coeff is not g.coeff and not f.coeff.same_shape(g.coeff):
        raise ShapeMismatch("operands have different coefficients")


def _tuple_splits(H, t):
    """[(left tuple, right tuple, coeff)] running over the two-fold
    coproduct of the basis tuple t, slotwise."""
    F = H.field
    out = [((), (), F.one)]
    for i in t:
        nxt = []
        for lt, rt, c in out:
            for j, k, c2 in H.comult[i]:
                nxt.append((lt + (j,), rt + (k,), F.mul(c, c2)))
        out = nxt
    return out


def convolve(f, g):
    """(f * g)(t) = sum f(t_(1)) g(t_(2)) via the slotwise coproduct."""
    _check_shapes(f, g)
    H, coeff, q = f.H, f.coeff, f.q
    F = coeff.field
    A = coeff.A
    na = A.dim
    values = {}
    fv, gv = f.values, g.values
    for t in all_tuples(H, q):
        out = [F.zero] * na
        for lt, rt, c in _tuple_splits(H, t):
            prod = A.mul_vec(fv[lt], gv[rt])
            for a in range(na):
                if prod[a] != F.zero:
                    out[a] = F.add(out[a], F.mul(c, prod[a]))
        values[t] = out
    res = RegElement(H, coeff, q, values, check_normal=False)
    return res


def convolve_many(factors):
    out = factors[0]
    for f in factors[1:]:
        out = convolve(out, f)
    return out


def conv_inverse(f):
    """Solve f * g = eta.eps for g and verify g * f = eta.eps.

    Fast path: when every slot of a tuple is group-like the coproduct is
    diagonal, so the inverse is the pointwise algebra inverse.
    """
    H, coeff, q = f.H, f.coeff, f.q
    F = coeff.field
    A = coeff.A
    na = A.dim
    tuples = all_tuples(H, q)
    if all(H.grouplike(i) for i in range(H.dim)):
        values = {}
        for t in tuples:
            inv = A.invert(f.values[t])
            if inv is None:
                raise NotInvertible(f"value at {t} is not a unit")
            values[t] = inv
        g = RegElement(H, coeff, q, values, check_normal=False)
        f.set_inverse(g)
        return g
    # general: linear system over the unknown values of g
    unknowns = {(t, a): i for i, (t, a) in
                enumerate((t, a) for t in tuples for a in range(na))}
    nun = len(unknowns)
    rows = []
    rhs = []
    target = eta_eps(H, coeff, q)
    for t in tuples:
        row_base = [[F.zero] * nun for _ in range(na)]
        for lt, rt, c in _tuple_splits(H, t):
            fval = f.values[lt]
            # f(lt) * g(rt): contribution to coordinate a is
            # sum_{x,y} fval[x] g[rt][y] mult[x][y][a]
            for x in range(na):
                if fval[x] == F.zero:
                    continue
                cf = F.mul(c, fval[x])
                for y in range(na):
                    col = unknowns[(rt, y)]
                    for a in range(na):
                        m = A.mult[x][y][a]
                        if m != F.zero:
                            row_base[a][col] = F.add(row_base[a][col], F.mul(cf, m))
        for a in range(na):
            rows.append(row_base[a])
            rhs.append(target.values[t][a])
    sol = solve_linear(F, rows, rhs)
    if sol is None:
        raise NotInvertible("convolution system is inconsistent")
    values = {t: [sol[unknowns[(t, a)]] for a in range(na)] for t in tuples}
    g = RegElement(H, coeff, q, values, check_normal=False)
    if convolve(g, f) != target:
        raise NotInvertible("one-sided inverse only")
    f.set_inverse(g)
    return g


def is_invertible(f):
    try:
        f.inverse()
        return True
    except NotInvertible:
        return False


# --- faces and the differential -------------------------------------------

def _face_eps(g):
    """(eps (x) g)(t_0,...,t_q) = eps(t_0) g(t_1,...,t_q)."""
    H, coeff, q = g.H, g.coeff, g.q
    F = coeff.field
    values = {}
    for t in all_tuples(H, q + 1):
        c = H.counit[t[0]]
        base = g.values[t[1:]]
        values[t] = [F.mul(c, x) for x in base]
    return RegElement(H, coeff, q + 1, values, check_normal=False)


def _face_mult(g, i):
    """g applied after multiplying slots i and i+1 (1-indexed)."""
    H, coeff, q = g.H, g.coeff, g.q
    F = coeff.field
    na = coeff.dim
    values = {}
    for t in all_tuples(H, q + 1):
        out = [F.zero] * na
        merged = H.mult[t[i - 1]][t[i]]
        rest = t[:i - 1] + (None,) + t[i + 1:]
        for k, c in enumerate(merged):
            if c != F.zero:
                inner = tuple(k if x is None else x for x in rest)
                base = g.values[inner]
                for a in range(na):
                    if base[a] != F.zero:
                        out[a] = F.add(out[a], F.mul(c, base[a]))
        values[t] = out
    return RegElement(H, coeff, q + 1, values, check_normal=False)


def _face_action(g):
    """Psi(g (x) id): act on the value by the final slot."""
    H, coeff, q = g.H, g.coeff, g.q
    values = {}
    for t in all_tuples(H, q + 1):
        values[t] = coeff.act_basis(g.values[t[:-1]], t[-1])
    return RegElement(H, coeff, q + 1, values, check_normal=False)


def differential(f):
    """The degree-raising differential Reg(H^q, A) -> Reg(H^{q+1}, A)."""
    q = f.q
    if q > 3:
        raise DegreeUnsupported("differential implemented for degrees 0..3")
    fpos = f
    fneg = f.inverse()
    factors = [_face_eps(fpos)]
    for i in range(1, q + 1):
        factors.append(_face_mult(fneg if i % 2 else fpos, i))
    last_parity = (q + 1) % 2
    factors.append(_face_action(fneg if last_parity else fpos))
    out = convolve_many(factors)
    # the inverse of a face product is the face product of inverses, so
    # record it instead of re-solving later
    inv_factors = [_face_eps(fneg)]
    for i in range(1, q + 1):
        inv_factors.append(_face_mult(fpos if i % 2 else fneg, i))
    inv_factors.append(_face_action(fpos if last_parity else fneg))
    out.set_inverse(convolve_many(inv_factors))
    return out


def is_cocycle(f, q=None):
    """(ok, witness): direct check of the degree-1 or degree-2 cocycle
    identity on all basis tuples (equivalent to delta f = eta.eps)."""
    if q is None:
        q = f.q
    if q != f.q:
        raise ShapeMismatch("degree mismatch")
    H, coeff = f.H, f.coeff
    F = coeff.field
    A = coeff.A
    na = A.dim
    n = H.dim
    if q == 1:
        # f(xy) = f(y_1) f(x)^{y_2}
        for x in range(n):
            for y in range(n):
                lhs = [F.zero] * na
                for k, c in enumerate(H.mult[x][y]):
                    if c != F.zero:
                        v = f.values[(k,)]
                        for a in range(na):
                            lhs[a] = F.add(lhs[a], F.mul(c, v[a]))
                rhs = [F.zero] * na
                for y1, y2, c in H.comult[y]:
                    v = A.mul_vec(f.values[(y1,)],
                                  coeff.act_basis(f.values[(x,)], y2))
                    for a in range(na):
                        if v[a] != F.zero:
                            rhs[a] = F.add(rhs[a], F.mul(c, v[a]))
                if lhs != rhs:
                    return False, (x, y)
        return True, None
    if q == 2:
        # f(x_1 (x) y_1)^{z_1} f(x_2 y_2 (x) z_2) = f(y_1 (x) z_1) f(x (x) y_2 z_2)
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = [F.zero] * na
                    for x1, x2, cx in H.comult[x]:
                        for y1, y2, cy in H.comult[y]:
                            for z1, z2, cz in H.comult[z]:
                                c = F.mul(F.mul(cx, cy), cz)
                                left = coeff.act_basis(f.values[(x1, y1)], z1)
                                right = [F.zero] * na
                                for k, cm in enumerate(H.mult[x2][y2]):
                                    if cm != F.zero:
                                        v = f.values[(k, z2)]
                                        for a in range(na):
                                            right[a] = F.add(right[a], F.mul(cm, v[a]))
                                v = A.mul_vec(left, right)
                                for a in range(na):
                                    if v[a] != F.zero:
                                        lhs[a] = F.add(lhs[a], F.mul(c, v[a]))
                    rhs = [F.zero] * na
                    for y1, y2, cy in H.comult[y]:
                        for z1, z2, cz in H.comult[z]:
                            c = F.mul(cy, cz)
                            right = [F.zero] * na
                            for k, cm in enumerate(H.mult[y2][z2]):
                                if cm != F.zero:
                                    v = f.values[(x, k)]
                                    for a in range(na):
                                        right[a] = F.add(right[a], F.mul(cm, v[a]))
                            v = A.mul_vec(f.values[(y1, z1)], right)
                            for a in range(na):
                                if v[a] != F.zero:
                                    rhs[a] = F.add(rhs[a], F.mul(c, v[a]))
                    if lhs != rhs:
                        return False, (x, y, z)
        return True, None
    raise DegreeUnsupported("cocycle identities implemented for degrees 1 and 2")


def restrict_along(f, emb, S, coeff_S=None):
    """Restriction of f along a basis-index embedding emb: S -> f.H."""
    coeff = coeff_S if coeff_S is not None else \
        ModuleAlgebra.trivial_coeff(S, f.coeff.A)
    values = {}
    for t in all_tuples(S, f.q):
        values[t] = list(f.values[tuple(emb(i) for i in t)])
    return RegElement(S, coeff, f.q, values)


def scale_tuple_value(H, t):
    F = H.field
    c = F.one
    for i in t:
        c = F.mul(c, H.counit[i])
    return c
