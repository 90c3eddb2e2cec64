"""Classical group cohomology via normalized bar cochains and integer
lattices, plus the dictionary between convolution cohomology of a group
algebra kG and group cohomology of G.

Cochain groups Map(G^q, M) are presented with one Z/d generator per
(tuple of non-identity elements, generator of M); differentials become
integer matrices and kernels/images are computed by Smith normal form.
The right-action convention mirrors the convolution complex, so the
dictionary commutes with differentials on the nose.
"""

from itertools import product

from .abelian import FiniteAbelianGroup, Subquotient
from .errors import DegreeUnsupported, NotGroupAlgebra, ValidationError
from .gtables import table_identity, validate_group
from .intmat import RowLattice
from .reg import ModuleAlgebra, RegElement, all_tuples


class GModule:
    """A finite group acting on a finite abelian module (written
    multiplicatively; exponent-vector coordinates internally).

    action[g] is an r x r integer matrix over the invariant-factor
    generators; right action, so x^(gh) = (x^g)^h means A_{gh} = A_h A_g.
    """

    def __init__(self, table, module, action=None):
        validate_group(table)
        self.table = table
        self.n = len(table)
        self.e = table_identity(table)
        self.module = module
        r = len(module.invariant_factors)
        self.r = r
        if action is None:
            action = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]
                      for _ in range(self.n)]
        self.action = action
        self._validate_action()

    def _validate_action(self):
        d = self.module.invariant_factors
        r = self.r
        for g, M in enumerate(self.action):
            # well defined and invertible on the module
            for j in range(r):
                for i in range(r):
                    if (d[j] * M[i][j]) % d[i]:
                        raise ValidationError(f"action of {g} not well defined")
            if self._kernel_size(M) != 1:
                raise ValidationError(f"action of {g} is not an automorphism")
        ident = self.action[self.e]
        if any(self.act_vec(ident, self._unit(j)) != self._unit(j) for j in range(r)):
            raise ValidationError("identity must act trivially")
        # composition law (right action)
        for g in range(self.n):
            for h in range(self.n):
                gh = self.table[g][h]
                for j in range(r):
                    x = self._unit(j)
                    lhs = self.act(h, self.act(g, x))
                    rhs = self.act(gh, x)
                    if lhs != rhs:
                        raise ValidationError("action violates composition")

    def _unit(self, j):
        return tuple(1 if i == j else 0 for i in range(self.r))

    def _kernel_size(self, M):
        d = self.module.invariant_factors
        count = 0
        for x in product(*(range(di) for di in d)):
            if all(sum(M[i][j] * x[j] for j in range(self.r)) % d[i] == 0
                   for i in range(self.r)):
                count += 1
        return count if self.r else 1

    def act_vec(self, M, x):
        d = self.module.invariant_factors
        return tuple(sum(M[i][j] * x[j] for j in range(self.r)) % d[i]
                     for i in range(self.r))

    def act(self, g, x):
        return self.act_vec(self.action[g], x)

    def reduce(self, x):
        d = self.module.invariant_factors
        return tuple(v % di for v, di in zip(x, d))

    def add(self, x, y):
        d = self.module.invariant_factors
        return tuple((a + b) % di for a, b, di in zip(x, y, d))

    def neg(self, x):
        d = self.module.invariant_factors
        return tuple((-a) % di for a, di in zip(x, d))


class Cochain:
    """Normalized cochain G^q -> M, value zero on tuples containing e."""

    def __init__(self, gm, q, values):
        self.gm = gm
        self.q = q
        self.values = dict(values)
        zero = tuple(0 for _ in range(gm.r))
        for t in product(range(gm.n), repeat=q):
            if gm.e in t:
                v = self.values.get(t, zero)
                assert all(c % di == 0 for c, di in
                           zip(v, gm.module.invariant_factors)), \
                    "cochain not normalized"
                self.values[t] = zero
            else:
                self.values[t] = gm.reduce(self.values.get(t, zero))

    def value(self, t):
        return self.values[t]

    def key(self):
        return tuple(self.values[t] for t in
                     sorted(product(range(self.gm.n), repeat=self.q)))

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.q == other.q and \
            self.key() == other.key()

    def __hash__(self):
        return hash((self.q, self.key()))


def _free_tuples(gm, q):
    els = [g for g in range(gm.n) if g != gm.e]
    return list(product(els, repeat=q))


def bar_differential(c):
    """Standard right-action bar differential; degree <= 3 inputs."""
    gm, q = c.gm, c.q
    if q > 3:
        raise DegreeUnsupported("bar differential implemented for degrees 0..3")
    zero = tuple(0 for _ in range(gm.r))
    out = {}
    for t in product(range(gm.n), repeat=q + 1):
        acc = zero
        # face 0: drop the first argument
        acc = gm.add(acc, c.values.get(t[1:], zero) if q else c.values.get((), zero))
        sign = -1
        for i in range(1, q + 1):
            merged = t[:i - 1] + (gm.table[t[i - 1]][t[i]],) + t[i + 1:]
            v = c.values.get(merged[:q], zero)
            acc = gm.add(acc, v if sign > 0 else gm.neg(v))
            sign = -sign
        v = gm.act(t[-1], c.values.get(t[:q], zero))
        acc = gm.add(acc, v if sign > 0 else gm.neg(v))
        out[t] = acc
    return Cochain(gm, q + 1, out)


def constant_one_cochain(gm, q):
    return Cochain(gm, q, {})


class BarComplex:
    """Integer-lattice presentation of the normalized bar complex."""

    def __init__(self, gm):
        self.gm = gm

    def gens(self, q):
        if q == 0:
            return [((), j) for j in range(self.gm.r)]
        return [(t, j) for t in _free_tuples(self.gm, q) for j in range(self.gm.r)]

    def orders(self, q):
        d = self.gm.module.invariant_factors
        return [d[j] for (_, j) in self.gens(q)]

    def cochain_to_vec(self, c):
        return [c.values[t][j] for (t, j) in self.gens(c.q)]

    def vec_to_cochain(self, q, vec):
        gm = self.gm
        gens = self.gens(q)
        values = {}
        for (t, j), v in zip(gens, vec):
            cur = list(values.get(t, [0] * gm.r))
            cur[j] = (cur[j] + v) % gm.module.invariant_factors[j]
            values[t] = tuple(cur)
        return Cochain(gm, q, values)

    def diff_matrix(self, q):
        """delta_q as an integer matrix C^q -> C^{q+1} (columns = images
        of the lattice generators)."""
        src = self.gens(q)
        dst = self.gens(q + 1)
        dst_index = {g: i for i, g in enumerate(dst)}
        cols = []
        for (t, j) in src:
            unit = {t: tuple(1 if i == j else 0 for i in range(self.gm.r))}
            c = Cochain(self.gm, q, unit)
            dc = bar_differential(c)
            col = [0] * len(dst)
            for t2 in _free_tuples(self.gm, q + 1):
                v = dc.values[t2]
                for i in range(self.gm.r):
                    if v[i]:
                        col[dst_index[(t2, i)]] = v[i]
            cols.append(col)
        # as a matrix: rows = dst, cols = src
        return [[cols[s][d] for s in range(len(src))] for d in range(len(dst))]


class GroupCohomology:
    """H^q(G, M) = ker delta^q / im delta^{q-1} via Smith normal form."""

    def __init__(self, gm, q):
        if q not in (1, 2, 3):
            raise DegreeUnsupported("group cohomology implemented for q in {1,2,3}")
        self.gm = gm
        self.q = q
        self.complex = BarComplex(gm)
        cx = self.complex
        src_orders = cx.orders(q)
        D_out = cx.diff_matrix(q)
        out_orders = cx.orders(q + 1)
        # kernel lattice of C^q -> C^{q+1} (mod target orders)
        z_gens = _kernel_mod(D_out, out_orders, len(src_orders))
        D_in = cx.diff_matrix(q - 1)
        b_gens = [_column(D_in, j) for j in range(len(cx.gens(q - 1)))]
        self.sub = Subquotient(src_orders, z_gens, b_gens)
        self.group = self.sub.group
        self._b_lattice = RowLattice(
            [list(b) for b in b_gens] +
            [[src_orders[i] if i == j else 0 for j in range(len(src_orders))]
             for i in range(len(src_orders))], len(src_orders))
        self._din = D_in

    def is_cocycle(self, c):
        dc = bar_differential(c)
        zero = tuple(0 for _ in range(self.gm.r))
        return all(v == zero for v in dc.values.values())

    def class_of(self, c):
        """Class coordinates of a cocycle over the group generators."""
        return self.sub.dlog(self.complex.cochain_to_vec(c))

    def representative(self, y):
        return self.complex.vec_to_cochain(self.q, list(self.sub.lift(y)))

    def representatives(self):
        """One representative cocycle per invariant-factor generator."""
        reps = []
        for i in range(len(self.group.invariant_factors)):
            y = tuple(1 if j == i else 0 for j in
                      range(len(self.group.invariant_factors)))
            reps.append(self.representative(y))
        return reps

    def coboundary_witness(self, c):
        """x with delta x = c (degree q-1 cochain), or None."""
        vec = self.complex.cochain_to_vec(c)
        coords = self._b_lattice.coords(vec)
        if coords is None:
            return None
        nsrc = len(self.complex.gens(self.q - 1))
        x = coords[:nsrc]
        w = self.complex.vec_to_cochain(self.q - 1, x)
        assert bar_differential(w) == c
        return w


def _column(M, j):
    return [M[i][j] for i in range(len(M))]


def _kernel_mod(D, out_orders, ncols):
    """Generators of {v : D v = 0 mod out_orders} as vectors in Z^ncols."""
    nrows = len(D)
    # stack [D | diag(orders)] and take the kernel; project to v-part
    from .intmat import smith_normal_form
    aug = [[D[i][j] for j in range(ncols)] +
           [out_orders[i] if i == k else 0 for k in range(nrows)]
           for i in range(nrows)]
    if not aug:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    U, S, V = smith_normal_form(aug)
    total = ncols + nrows
    rank = sum(1 for i in range(min(len(S), total)) if S[i][i] != 0)
    gens = []
    for j in range(rank, total):
        gens.append([V[i][j] for i in range(ncols)])
    return gens


def group_cohomology(gm, q):
    return GroupCohomology(gm, q)


# --- unit groups of finite algebras and module builders --------------------

def unit_group_of_algebra(A):
    """The group of units of a finite-dimensional algebra over a finite
    field, with exponent-coordinate logs (via black-box enumeration)."""
    from .abelian import EnumeratedAbelian
    units = A.units()
    keys = sorted(tuple(u) for u in units)

    def mul(a, b):
        return tuple(A.mul_vec(list(a), list(b)))

    ea = EnumeratedAbelian(keys, mul, tuple(A.unit))
    return ea


def gmodule_from_units(table, A):
    """Trivial G-module on the units of A."""
    ea = unit_group_of_algebra(A)
    return GModule(table, ea.group), ea


def gmodule_with_permutation_action(table, ea, perms):
    """G-module on an enumerated abelian group where each group element
    acts by a permutation of the element keys (right action)."""
    r = len(ea.group.invariant_factors)
    gens = ea.group.generators
    action = []
    for g in range(len(table)):
        M = [[0] * r for _ in range(r)]
        for j, gen in enumerate(gens):
            img = perms[g](gen)
            col = ea.dlog(img)
            for i in range(r):
                M[i][j] = col[i]
        action.append(M)
    return GModule(table, ea.group, action)


# --- the kG dictionary ------------------------------------------------------

class GroupDictionary:
    """Reg((kG)^(x)q, A) <-> Map(G^q, U(A)), commuting with differentials."""

    def __init__(self, H, A, coeff=None, gm=None, ea=None):
        table = H.group_table()
        if table is None:
            raise NotGroupAlgebra("source is not a group algebra on its basis")
        self.H = H
        self.A = A
        self.table = table
        self.coeff = coeff if coeff is not None else ModuleAlgebra.trivial_coeff(H, A)
        if ea is None:
            ea = unit_group_of_algebra(A)
        self.ea = ea
        if gm is None:
            gm = GModule(table, ea.group)
        self.gm = gm

    def to_cochain(self, f):
        values = {}
        for t in all_tuples(self.H, f.q):
            v = tuple(f.values[t])
            log = self.ea.dlog(v)
            if log is None:
                raise NotGroupAlgebra(f"value at {t} is not a unit")
            values[t] = log
        return Cochain(self.gm, f.q, values)

    def to_reg(self, c):
        values = {}
        for t in all_tuples(self.H, c.q):
            rep = _ea_lift(self.ea, c.values[t])
            values[t] = list(rep)
        return RegElement(self.H, self.coeff, c.q, values)


def _ea_lift(ea, y):
    """An element of the enumerated group with the given coordinates."""
    gens = ea.group.generators
    out = ea.identity
    for g, e in zip(gens, y):
        out = ea.mul(out, ea._pow(g, e))
    return out


# --- stable part (group side) ----------------------------------------------

class StablePart:
    """The T-stable subgroup of H^2(N, M) with per-generator twist
    witnesses (u_t cochains solving delta u = c - c^t)."""

    def __init__(self, n_table, t_table, act_perm, gm, h2=None):
        # act_perm[t] is the permutation of N induced by t (left action)
        self.h2 = h2 if h2 is not None else group_cohomology(gm, 2)
        self.gm = gm
        self.n_table = n_table
        self.t_table = t_table
        self.act_perm = act_perm
        h2g = self.h2.group
        r = len(h2g.invariant_factors)
        # twist action of each t on classes
        twists = {}
        for t in range(len(t_table)):
            M = [[0] * r for _ in range(r)]
            for j in range(r):
                y = tuple(1 if i == j else 0 for i in range(r))
                c = self.h2.representative(y)
                ct = self.twist(c, t)
                col = self.h2.class_of(ct)
                for i in range(r):
                    M[i][j] = col[i]
            twists[t] = M
        self.twists = twists
        # stable classes: y with twist_t(y) = y for all t
        d = h2g.invariant_factors
        stable = []
        for y in product(*(range(di) for di in d)):
            if all(self._apply(twists[t], y) == tuple(y) for t in range(len(t_table))):
                stable.append(tuple(y))
        self.stable_class_coords = stable
        # subgroup structure of the stable part
        if r:
            sub = Subquotient(list(d), [list(y) for y in stable], [])
            self.subgroup = sub.group
            self._sub = sub
        else:
            self.subgroup = FiniteAbelianGroup(())
            self._sub = None
        # witnesses: for each stable class and each t, delta u = c - c^t
        self.witnesses = {}
        for y in stable:
            c = self.h2.representative(y)
            per_t = {}
            for t in range(len(t_table)):
                diff = _cochain_sub(c, self.twist(c, t))
                w = self.h2.coboundary_witness(diff)
                assert w is not None, "stable class lost its witness"
                per_t[t] = w
            self.witnesses[y] = per_t

    def _apply(self, M, y):
        d = self.h2.group.invariant_factors
        return tuple(sum(M[i][j] * y[j] for j in range(len(y))) % d[i]
                     for i in range(len(d)))

    def twist(self, c, t):
        """c^t(n_1,...,n_q) = c(t(n_1),...,t(n_q)) (value untouched:
        trivial coefficient action)."""
        gm = self.gm
        p = self.act_perm[t]
        values = {}
        for tup in c.values:
            values[tup] = c.values[tuple(p[i] for i in tup)]
        return Cochain(gm, c.q, values)

    def is_stable(self, c):
        y = self.h2.class_of(c)
        return tuple(y) in self.stable_class_coords


def _cochain_sub(c1, c2):
    gm = c1.gm
    values = {}
    for t in c1.values:
        values[t] = gm.add(c1.values[t], gm.neg(c2.values[t]))
    return Cochain(gm, c1.q, values)
