"""Module-(bi)algebra actions, the smash product, and crossed products.

Left actions T (x) N -> N make N a T-module bialgebra (written t(n));
right actions A (x) H -> A make A an H-module algebra (written a^h).
The smash product N x| T is the tensor coalgebra with multiplication
(n # t)(n' # t') = n t(n') # t t'.
"""

from .errors import ActionInvalid, DimensionMismatch, NotACocycle
from .hopf import (AlgebraData, CheckReport, HopfData, _basis_vec,
                   _normalize_terms, antipode_from_bialgebra, verify_hopf)


class ActionData:
    """matrix[t][n] = image vector of t(n) (left) or [a][h] = a^h (right)."""

    LEFT = "left_on_bialgebra"
    RIGHT = "right_on_algebra"

    def __init__(self, actor, target, matrix, side=LEFT, trivial=False):
        self.actor = actor
        self.target = target
        self.matrix = matrix
        self.side = side
        self.trivial = trivial
        na = actor.dim
        nt = target.dim
        outer = len(matrix)
        if side == self.LEFT:
            if outer != na or any(len(m) != nt for m in matrix):
                raise DimensionMismatch("left action matrix must be actor x target")
        else:
            if outer != nt or any(len(m) != na for m in matrix):
                raise DimensionMismatch("right action matrix must be target x actor")

    # left: t(n); bilinear extension
    def apply_left(self, t_idx, nvec):
        F = self.target.field
        n = self.target.dim
        out = [F.zero] * n
        for i, c in enumerate(nvec):
            if c != F.zero:
                row = self.matrix[t_idx][i]
                for k in range(n):
                    if row[k] != F.zero:
                        out[k] = F.add(out[k], F.mul(c, row[k]))
        return out

    def apply_left_vec(self, tvec, nvec):
        F = self.target.field
        n = self.target.dim
        out = [F.zero] * n
        for t_idx, ct in enumerate(tvec):
            if ct == F.zero:
                continue
            part = self.apply_left(t_idx, nvec)
            for k in range(n):
                if part[k] != F.zero:
                    out[k] = F.add(out[k], F.mul(ct, part[k]))
        return out

    # right: a^h
    def apply_right(self, avec, h_idx):
        F = self.target.field
        n = self.target.dim
        out = [F.zero] * n
        for i, c in enumerate(avec):
            if c != F.zero:
                row = self.matrix[i][h_idx]
                for k in range(n):
                    if row[k] != F.zero:
                        out[k] = F.add(out[k], F.mul(c, row[k]))
        return out


def trivial_left_action(T, N):
    """t(n) = eps(t) n."""
    F = N.field
    matrix = [[[F.mul(T.counit[t], (F.one if k == i else F.zero)) for k in range(N.dim)]
               for i in range(N.dim)] for t in range(T.dim)]
    return ActionData(T, N, matrix, side=ActionData.LEFT, trivial=True)


def trivial_right_action(A, H):
    """a^h = eps(h) a."""
    F = A.field
    matrix = [[[F.mul(H.counit[h], (F.one if k == i else F.zero)) for k in range(A.dim)]
               for h in range(H.dim)] for i in range(A.dim)]
    return ActionData(H, A, matrix, side=ActionData.RIGHT, trivial=True)


def action_from_matrix_power(T, N, M):
    """Left action of a cyclic group algebra T = kC_m (basis ordered as
    powers of the generator) where the generator acts by the matrix M
    (columns = images of basis vectors); basis power k acts by M^k."""
    F = N.field
    n = N.dim
    powers = [[[F.one if i == j else F.zero for j in range(n)] for i in range(n)]]
    for _ in range(T.dim - 1):
        prev = powers[-1]
        nxt = [[F.sum(F.mul(M[i][t], prev[t][j]) for t in range(n)) for j in range(n)]
               for i in range(n)]
        powers.append(nxt)
    matrix = [[[powers[k][i][j] for i in range(n)] for j in range(n)]
              for k in range(T.dim)]
    # matrix[k][j] = column j of M^k = image of basis j
    return ActionData(T, N, matrix, side=ActionData.LEFT, trivial=False)


def inversion_action(T, N):
    """Generator of T = kC2 acts on the group algebra N by g -> g^{-1}."""
    from .gtables import table_inverses
    table = N.group_table()
    if table is None:
        raise ActionInvalid("inversion action needs a group-algebra target")
    inv = table_inverses(table)
    F = N.field
    n = N.dim
    M = [[F.one if inv[j] == i else F.zero for j in range(n)] for i in range(n)]
    return action_from_matrix_power(T, N, M)


def x_negation_action(T, N):
    """Generator of T = kC2 sends the primitive generator x to -x, so
    x^k -> (-1)^k x^k on the truncated polynomial basis."""
    F = N.field
    n = N.dim
    M = [[(F.from_int((-1) ** j) if i == j else F.zero) for j in range(n)]
         for i in range(n)]
    return action_from_matrix_power(T, N, M)


def verify_action(act):
    """Each module-(bi)algebra axiom with a witness basis tuple."""
    rep = CheckReport()
    F = act.target.field
    if act.side == ActionData.LEFT:
        T, N = act.actor, act.target
        nt, nn = T.dim, N.dim
        e = _basis_vec

        def t_of(tvec, nvec):
            return act.apply_left_vec(tvec, nvec)

        ok, w = True, None
        for i in range(nn):
            if t_of(T.unit, e(F, nn, i)) != e(F, nn, i):
                ok, w = False, (i,)
                break
        rep.add("1_T(n) = n", ok, w)

        ok, w = True, None
        for a in range(nt):
            for b in range(nt):
                for i in range(nn):
                    lhs = t_of(T.mult[a][b], e(F, nn, i))
                    rhs = act.apply_left(a, act.apply_left(b, e(F, nn, i)))
                    if lhs != rhs:
                        ok, w = False, (a, b, i)
                        break
        rep.add("(tt')(n) = t(t'(n))", ok, w)

        ok, w = True, None
        for a in range(nt):
            for i in range(nn):
                for j in range(nn):
                    lhs = t_of(e(F, nt, a), N.mult[i][j])
                    rhs = [F.zero] * nn
                    for t1, t2, c in T.comult[a]:
                        v = N.mul_vec(act.apply_left(t1, e(F, nn, i)),
                                      act.apply_left(t2, e(F, nn, j)))
                        for k in range(nn):
                            if v[k] != F.zero:
                                rhs[k] = F.add(rhs[k], F.mul(c, v[k]))
                    if lhs != rhs:
                        ok, w = False, (a, i, j)
                        break
        rep.add("t(nn') = t_1(n) t_2(n')", ok, w)

        ok, w = True, None
        for a in range(nt):
            if act.apply_left(a, N.unit) != [F.mul(T.counit[a], x) for x in N.unit]:
                ok, w = False, (a,)
                break
        rep.add("t(1) = eps(t) 1", ok, w)

        ok, w = True, None
        for a in range(nt):
            for i in range(nn):
                img = act.apply_left(a, e(F, nn, i))
                lhs = {}
                for k, c in enumerate(img):
                    if c != F.zero:
                        for j2, k2, c2 in N.comult[k]:
                            key = (j2, k2)
                            lhs[key] = F.add(lhs.get(key, F.zero), F.mul(c, c2))
                rhs = {}
                for t1, t2, ct in T.comult[a]:
                    for n1, n2, cn in N.comult[i]:
                        v1 = act.apply_left(t1, e(F, nn, n1))
                        v2 = act.apply_left(t2, e(F, nn, n2))
                        cc = F.mul(ct, cn)
                        for x in range(nn):
                            if v1[x] == F.zero:
                                continue
                            cx = F.mul(cc, v1[x])
                            for y in range(nn):
                                if v2[y] != F.zero:
                                    key = (x, y)
                                    rhs[key] = F.add(rhs.get(key, F.zero),
                                                     F.mul(cx, v2[y]))
                if {k: v for k, v in lhs.items() if v != F.zero} != \
                   {k: v for k, v in rhs.items() if v != F.zero}:
                    ok, w = False, (a, i)
                    break
        rep.add("Delta(t(n)) = t_1(n_1) (x) t_2(n_2)", ok, w)

        ok, w = True, None
        for a in range(nt):
            for i in range(nn):
                if N.counit_vec(act.apply_left(a, e(F, nn, i))) != \
                   F.mul(T.counit[a], N.counit[i]):
                    ok, w = False, (a, i)
                    break
        rep.add("eps(t(n)) = eps(t) eps(n)", ok, w)
    else:
        H, A = act.actor, act.target
        nh, na = H.dim, A.dim
        e = _basis_vec

        ok, w = True, None
        for i in range(na):
            got = [F.zero] * na
            for h, c in enumerate(H.unit):
                if c != F.zero:
                    v = act.apply_right(e(F, na, i), h)
                    for k in range(na):
                        got[k] = F.add(got[k], F.mul(c, v[k]))
            if got != e(F, na, i):
                ok, w = False, (i,)
                break
        rep.add("a^1 = a", ok, w)

        ok, w = True, None
        for i in range(na):
            for h1 in range(nh):
                for h2 in range(nh):
                    lhs = act.apply_right(act.apply_right(e(F, na, i), h1), h2)
                    rhs = [F.zero] * na
                    for k, c in enumerate(H.mult[h1][h2]):
                        if c != F.zero:
                            v = act.apply_right(e(F, na, i), k)
                            for t in range(na):
                                rhs[t] = F.add(rhs[t], F.mul(c, v[t]))
                    if lhs != rhs:
                        ok, w = False, (i, h1, h2)
                        break
        rep.add("(a^h)^{h'} = a^{hh'}", ok, w)

        ok, w = True, None
        for i in range(na):
            for j in range(na):
                for h in range(nh):
                    lhs = act.apply_right(A.mul_vec(e(F, na, i), e(F, na, j)), h)
                    rhs = [F.zero] * na
                    for h1, h2, c in H.comult[h]:
                        v = A.mul_vec(act.apply_right(e(F, na, i), h1),
                                      act.apply_right(e(F, na, j), h2))
                        for t in range(na):
                            if v[t] != F.zero:
                                rhs[t] = F.add(rhs[t], F.mul(c, v[t]))
                    if lhs != rhs:
                        ok, w = False, (i, j, h)
                        break
        rep.add("(ab)^h = a^{h_1} b^{h_2}", ok, w)

        ok, w = True, None
        for h in range(nh):
            if act.apply_right(A.unit, h) != [F.mul(H.counit[h], x) for x in A.unit]:
                ok, w = False, (h,)
                break
        rep.add("1^h = eps(h) 1", ok, w)
    return rep


class SmashData:
    """The smash product H = N x| T with embeddings and the T-projection."""

    def __init__(self, N, T, action, H, warnings=()):
        self.N = N
        self.T = T
        self.action = action
        self.H = H
        self.warnings = list(warnings)

    def idx(self, i, j):
        return i * self.T.dim + j

    def split(self, b):
        return divmod(b, self.T.dim)

    @property
    def embed_N(self):
        F = self.H.field
        M = [[F.zero] * self.N.dim for _ in range(self.H.dim)]
        for i in range(self.N.dim):
            M[self.idx(i, self.T.unit_index)][i] = F.one
        return M

    @property
    def embed_T(self):
        F = self.H.field
        M = [[F.zero] * self.T.dim for _ in range(self.H.dim)]
        for j in range(self.T.dim):
            M[self.idx(self.N.unit_index, j)][j] = F.one
        return M

    @property
    def project_T(self):
        F = self.H.field
        M = [[F.zero] * self.H.dim for _ in range(self.T.dim)]
        for i in range(self.N.dim):
            for j in range(self.T.dim):
                M[j][self.idx(i, j)] = self.N.counit[i]
        return M

    def embed_n_index(self, i):
        return self.idx(i, self.T.unit_index)

    def embed_t_index(self, j):
        return self.idx(self.N.unit_index, j)

    def verify(self):
        """SmashData invariants: H is Hopf, embeddings are Hopf maps,
        project_T o embed_T = id."""
        rep = verify_hopf(self.H)
        F = self.H.field
        rep.add("project_T o embed_T = id",
                all(_apply(F, self.project_T, _col(F, self.embed_T, j)) ==
                    _basis_vec(F, self.T.dim, j) for j in range(self.T.dim)))
        rep.add("embed_N is a Hopf map", _embedding_is_hopf_map(self.N, self.H, self.embed_n_index))
        rep.add("embed_T is a Hopf map", _embedding_is_hopf_map(self.T, self.H, self.embed_t_index))
        return rep


def _col(F, M, j):
    return [row[j] for row in M]


def _apply(F, M, v):
    return [F.sum(F.mul(row[t], v[t]) for t in range(len(v))) for row in M]


def _embedding_is_hopf_map(S, H, emb):
    """emb: basis index map S -> H landing on basis vectors."""
    F = S.field
    for i in range(S.dim):
        for j in range(S.dim):
            img = [F.zero] * H.dim
            for k, c in enumerate(S.mult[i][j]):
                if c != F.zero:
                    img[emb(k)] = F.add(img[emb(k)], c)
            if img != H.mult[emb(i)][emb(j)]:
                return False
    for i in range(S.dim):
        t1 = _normalize_terms(F, [(emb(j), emb(k), c) for j, k, c in S.comult[i]])
        if t1 != _normalize_terms(F, H.comult[emb(i)]):
            return False
        if S.counit[i] != H.counit[emb(i)]:
            return False
        img = [F.zero] * H.dim
        for k, c in enumerate(S.antipode[i]):
            if c != F.zero:
                img[emb(k)] = F.add(img[emb(k)], c)
        if img != H.antipode[emb(i)]:
            return False
    return True


def smash_product(N, T, act):
    """N x| T on the row-major basis {u_i # v_j}; multiplication twists
    by the action through the comultiplication of T."""
    rep = verify_action(act)
    if not rep.ok:
        raise ActionInvalid(f"action fails module-bialgebra axioms:\n{rep}")
    if act.actor is not T or act.target is not N:
        raise ActionInvalid("action must be of T on N")
    warnings = []
    if not (N.is_cocommutative and T.is_cocommutative):
        warnings.append("factors are not both cocommutative")
    F = N.field
    nn, nt = N.dim, T.dim
    n = nn * nt

    def idx(i, j):
        return i * nt + j

    mult = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    for a in range(nn):
        ea = _basis_vec(F, nn, a)
        for b in range(nt):
            for c in range(nn):
                ec = _basis_vec(F, nn, c)
                for d in range(nt):
                    row = mult[idx(a, b)][idx(c, d)]
                    for b1, b2, cb in T.comult[b]:
                        nvec = N.mul_vec(ea, act.apply_left(b1, ec))
                        tvec = T.mult[b2][d]
                        for x in range(nn):
                            if nvec[x] == F.zero:
                                continue
                            cx = F.mul(cb, nvec[x])
                            for y in range(nt):
                                if tvec[y] != F.zero:
                                    row[idx(x, y)] = F.add(row[idx(x, y)],
                                                           F.mul(cx, tvec[y]))
    unit = [F.zero] * n
    for a in range(nn):
        for b in range(nt):
            unit[idx(a, b)] = F.mul(N.unit[a], T.unit[b])
    comult = []
    for a in range(nn):
        for b in range(nt):
            terms = []
            for n1, n2, cn in N.comult[a]:
                for t1, t2, ct in T.comult[b]:
                    terms.append((idx(n1, t1), idx(n2, t2), F.mul(cn, ct)))
            comult.append(_normalize_terms(F, terms))
    counit = [F.mul(N.counit[a], T.counit[b]) for a in range(nn) for b in range(nt)]
    labels = [f"{la}#{lb}" for la in N.basis_labels for lb in T.basis_labels]
    probe = HopfData(F, mult, unit, comult, counit,
                     [[F.zero] * n for _ in range(n)], basis_labels=labels)
    S = antipode_from_bialgebra(probe)
    H = HopfData(F, mult, unit, comult, counit, S, basis_labels=labels)
    hrep = verify_hopf(H)
    if not hrep.ok:
        raise ActionInvalid(f"smash product fails Hopf axioms:\n{hrep}")
    return SmashData(N, T, act, H, warnings)


class CrossedProduct:
    """K = A (x)_f H for a trivial action: (a (x) h)(b (x) h') =
    a b f(h_1 (x) h'_1) (x) h_2 h'_2, with coaction id (x) Delta and
    section chi(h) = 1 (x) h."""

    def __init__(self, A, H, algebra):
        self.A = A
        self.H = H
        self.algebra = algebra

    def idx(self, a, h):
        return a * self.H.dim + h

    def chi(self, h_idx):
        F = self.A.field
        v = [F.zero] * self.algebra.dim
        for a, c in enumerate(self.A.unit):
            if c != F.zero:
                v[self.idx(a, h_idx)] = c
        return v

    def chi_vec(self, hvec):
        F = self.A.field
        v = [F.zero] * self.algebra.dim
        for h, c in enumerate(hvec):
            if c != F.zero:
                part = self.chi(h)
                for k in range(self.algebra.dim):
                    if part[k] != F.zero:
                        v[k] = F.add(v[k], F.mul(c, part[k]))
        return v

    def coinvariant_part(self, kvec):
        """Component in A (x) 1, or None if the element is not coinvariant."""
        F = self.A.field
        out = [F.zero] * self.A.dim
        for a in range(self.A.dim):
            for h in range(self.H.dim):
                c = kvec[self.idx(a, h)]
                if h == self.H.unit_index:
                    out[a] = c
                elif c != F.zero:
                    return None
        return out


def crossed_product_algebra(A, H, f_values):
    """Crossed product for a degree-2 cocycle on H with trivial action.

    f_values maps basis pairs (i, j) to vectors in A.  Associativity of
    the result is exactly the 2-cocycle identity; failure raises
    NotACocycle with the offending triple.
    """
    F = A.field
    na, nh = A.dim, H.dim
    n = na * nh

    def idx(a, h):
        return a * nh + h

    mult = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    for a in range(na):
        for h in range(nh):
            for b in range(na):
                for h2 in range(nh):
                    row = mult[idx(a, h)][idx(b, h2)]
                    ab = A.mul_vec(_basis_vec(F, na, a), _basis_vec(F, na, b))
                    for x1, x2, c1 in H.comult[h]:
                        for y1, y2, c2 in H.comult[h2]:
                            c12 = F.mul(c1, c2)
                            fa = f_values[(x1, y1)]
                            va = A.mul_vec(ab, fa)
                            vh = H.mult[x2][y2]
                            for aa in range(na):
                                if va[aa] == F.zero:
                                    continue
                                ca = F.mul(c12, va[aa])
                                for hh in range(nh):
                                    if vh[hh] != F.zero:
                                        row[idx(aa, hh)] = F.add(
                                            row[idx(aa, hh)], F.mul(ca, vh[hh]))
    unit = [F.zero] * n
    for a in range(na):
        for h in range(nh):
            unit[idx(a, h)] = F.mul(A.unit[a], H.unit[h])
    from .hopf import _assoc_check
    ok, w = _assoc_check(F, mult)
    if not ok:
        raise NotACocycle("crossed product is not associative", witness=w)
    K = AlgebraData(F, mult, unit,
                    basis_labels=[f"{a}(x){h}" for a in A.basis_labels
                                  for h in H.basis_labels],
                    is_commutative=None)
    if K.mul_vec(unit, unit) != unit:
        raise NotACocycle("cocycle is not normalized at the unit")
    return CrossedProduct(A, H, K)
