"""The measuring subcomplex: maps T^(x)q -> Hom(N, A) that make T^(x)q
measure N to A, its degree-1/2 cohomology, the group-algebra
specialization, and the group of pairings.

Measuring elements are RegElements over T with Hom(N, A) coefficients
(precomposition action), so the subcomplex differential is literally the
restriction of the convolution differential.  Enumerations ride on the
algebra generators of N: every shipped N has a power basis (basis_k =
gen^k), so a candidate is a value grid on the generator alone, extended
by convolution powers; non-power bases fall back to a full grid filtered
by the measuring law.
"""

from itertools import product

from .abelian import EnumeratedAbelian, FiniteAbelianGroup
from .errors import (EnumerationInfeasible, NotGroupAlgebra, NotMeasuring,
                     SearchBudgetExceeded)
from .hopf import _basis_vec, _pure_basis_index
from .reg import (ModuleAlgebra, RegElement, _tuple_splits, all_tuples,
                  differential, eta_eps, free_tuples, is_cocycle,
                  is_invertible, normalized_value)
from .sweedler import (DEFAULT_BUDGET, CohomologyResult,
                       cohomology_from_enumeration, pair_value)


def hom_coefficients(T, N, A, action=None):
    return ModuleAlgebra.hom_coeff(T, N, A, action)


def power_basis(N):
    """(gen_index,) if basis_k = gen^k for a single generator, else None."""
    F = N.field
    if N.unit_index != 0:
        return None
    for g in range(1, N.dim):
        ok = True
        vec = _basis_vec(F, N.dim, 0)
        for k in range(1, N.dim):
            vec = N.mul_vec(vec, _basis_vec(F, N.dim, g))
            if _pure_basis_index(F, vec) != k:
                ok = False
                break
        if ok:
            return g
    return None


def is_measuring(f, witness_wanted=True):
    """(ok, witness): f(t)(n n') = sum f(t_1)(n) f(t_2)(n') and
    f(t)(1_N) = eps(t) 1_A, on all basis tuples."""
    hom = f.coeff
    assert hom.hom_structure is not None, "needs Hom(N, A) coefficients"
    N, A, _ = hom.hom_structure
    T = f.H
    F = A.field
    na = A.dim
    for t in all_tuples(T, f.q):
        unit_val = pair_eval_basis(f, t, N.unit)
        expect = A.scalar_vec(_tuple_counit(T, t))
        if unit_val != expect:
            return False, (t, "unit")
        for i in range(N.dim):
            for j in range(N.dim):
                lhs = pair_eval_basis(f, t, N.mult[i][j])
                rhs = [F.zero] * na
                for lt, rt, c in _tuple_splits(T, t):
                    v = A.mul_vec(_pair_val(f, lt, i, na), _pair_val(f, rt, j, na))
                    for a in range(na):
                        if v[a] != F.zero:
                            rhs[a] = F.add(rhs[a], F.mul(c, v[a]))
                if lhs != rhs:
                    return False, (t, i, j)
    return True, None


def _pair_val(f, t, n_idx, na):
    row = f.values[t]
    return row[n_idx * na:(n_idx + 1) * na]


def pair_eval_basis(f, t, nvec):
    F = f.coeff.field
    na = f.coeff.hom_structure[1].dim
    out = [F.zero] * na
    for n_idx, c in enumerate(nvec):
        if c != F.zero:
            v = _pair_val(f, t, n_idx, na)
            for a in range(na):
                if v[a] != F.zero:
                    out[a] = F.add(out[a], F.mul(c, v[a]))
    return out


def _tuple_counit(T, t):
    F = T.field
    c = F.one
    for i in t:
        c = F.mul(c, T.counit[i])
    return c


def enumerate_measuring(T, N, A, action=None, q=1, budget=DEFAULT_BUDGET,
                        hom=None):
    """Complete list of Reg_meas(T^(x)q, Hom(N,A))."""
    if not A.field.is_finite():
        raise EnumerationInfeasible("measuring enumeration needs a finite field")
    if hom is None:
        hom = hom_coefficients(T, N, A, action)
    F = A.field
    na = A.dim
    gen = power_basis(N)
    free = free_tuples(T, q)
    out = []
    if gen is not None:
        els = A.all_elements()
        total = len(els) ** len(free)
        if total > budget:
            raise SearchBudgetExceeded(total, budget)
        tuples = all_tuples(T, q)
        # relation: gen^dim = gen^r (group) or 0 (nilpotent)
        top = N.mul_vec(_basis_vec(F, N.dim, N.dim - 1), _basis_vec(F, N.dim, gen))
        for combo in product(els, repeat=len(free)):
            fk = {t: A.scalar_vec(_tuple_counit(T, t)) for t in tuples}  # F_0
            layers = [dict(fk)]
            f1 = {}
            for t in tuples:
                if t in free:
                    f1[t] = list(combo[free.index(t)])
                else:
                    f1[t] = A.scalar_vec(F.mul(_tuple_counit(T, t),
                                               N.counit[gen]))
            layers.append(f1)
            for k in range(2, N.dim):
                layers.append(_layer_convolve(T, A, layers[-1], f1, tuples))
            # consistency with the relation gen^(dim) = top
            nxt = _layer_convolve(T, A, layers[-1], f1, tuples)
            expect = {t: pair_layers_eval(A, layers, top, t) for t in tuples}
            if any(nxt[t] != expect[t] for t in tuples):
                continue
            values = {}
            for t in tuples:
                row = []
                for k in range(N.dim):
                    row.extend(layers[k][t])
                values[t] = row
            f = RegElement(T, hom, q, values, check_normal=False)
            if not is_invertible(f):
                continue
            ok, wit = is_measuring(f)
            assert ok, f"power-basis extension failed the measuring law at {wit}"
            out.append(f)
        return out
    # fallback: full grid over free tuples x non-unit basis elements
    els = A.all_elements()
    nfree_n = N.dim - 1
    total = len(els) ** (len(free) * nfree_n)
    if total > budget:
        raise SearchBudgetExceeded(total, budget)
    n_slots = [i for i in range(N.dim) if i != N.unit_index]
    tuples = all_tuples(T, q)
    for combo in product(els, repeat=len(free) * nfree_n):
        values = {}
        it = iter(combo)
        grid = {(t, i): list(next(it)) for t in free for i in n_slots}
        for t in tuples:
            row = []
            for i in range(N.dim):
                if (t, i) in grid:
                    row.extend(grid[(t, i)])
                elif i == N.unit_index:
                    row.extend(A.scalar_vec(_tuple_counit(T, t)))
                else:
                    row.extend(A.scalar_vec(F.mul(_tuple_counit(T, t),
                                                  N.counit[i])))
            values[t] = row
        f = RegElement(T, hom, q, values, check_normal=False)
        if not is_measuring(f)[0]:
            continue
        if not is_invertible(f):
            continue
        out.append(f)
    return out


def _layer_convolve(T, A, layer_k, layer_1, tuples):
    """F_{k+1}(t) = sum F_k(t_(1)) F_1(t_(2)) over the tuple coproduct."""
    F = A.field
    na = A.dim
    out = {}
    for t in tuples:
        acc = [F.zero] * na
        for lt, rt, c in _tuple_splits(T, t):
            v = A.mul_vec(layer_k[lt], layer_1[rt])
            for a in range(na):
                if v[a] != F.zero:
                    acc[a] = F.add(acc[a], F.mul(c, v[a]))
        out[t] = acc
    return out


def pair_layers_eval(A, layers, nvec, t):
    F = A.field
    na = A.dim
    out = [F.zero] * na
    for k, c in enumerate(nvec):
        if c != F.zero:
            v = layers[k][t]
            for a in range(na):
                if v[a] != F.zero:
                    out[a] = F.add(out[a], F.mul(c, v[a]))
    return out


def meas_differential(f):
    """The subcomplex differential: the convolution differential computed
    on the T slots with precomposition coefficients; the output is
    verified to still measure."""
    ok, wit = is_measuring(f)
    if not ok:
        raise NotMeasuring(f"input does not measure at {wit}", witness=wit)
    d = differential(f)
    ok, wit = is_measuring(d)
    assert ok, f"differential left the measuring subcomplex at {wit}"
    return d


def measuring_coboundaries(T, N, A, action=None, q=2, budget=DEFAULT_BUDGET,
                           hom=None):
    """{key(delta g): (delta g, g)} for the measuring complex.

    Degree 1 coboundaries come from invertible elements of Hom(N, A)
    (delta of a degree-0 element), intersected with the measuring
    subgroup; degree 2 coboundaries from measuring degree-1 elements.
    """
    if hom is None:
        hom = hom_coefficients(T, N, A, action)
    table = {}
    if q == 1:
        from .sweedler import enumerate_reg
        for g in enumerate_reg(T, hom, 0, budget):
            d = differential(g)
            if is_measuring(d)[0]:
                table.setdefault(d.key(), (d, g))
    elif q == 2:
        for g in enumerate_measuring(T, N, A, action, 1, budget, hom=hom):
            d = differential(g)
            assert is_measuring(d)[0]
            table.setdefault(d.key(), (d, g))
    else:
        raise EnumerationInfeasible("measuring coboundaries for q in {1,2}")
    return table


def h_meas(T, N, A, action=None, q=1, budget=DEFAULT_BUDGET, hom=None):
    """Measuring cohomology in degree 1 or 2 by complete enumeration."""
    if q not in (1, 2):
        raise EnumerationInfeasible("measuring cohomology for q in {1, 2}")
    if hom is None:
        hom = hom_coefficients(T, N, A, action)
    z = [f for f in enumerate_measuring(T, N, A, action, q, budget, hom=hom)
         if is_cocycle(f, q)[0]]
    b = measuring_coboundaries(T, N, A, action, q, budget, hom=hom)
    return cohomology_from_enumeration(z, b, T, hom, q, "measuring-enumeration")


# --- algebra maps and the group-algebra specialization ----------------------

def alg_maps(N, A, budget=DEFAULT_BUDGET):
    """All algebra maps N -> A as Hom-vectors (flattened rows)."""
    if not A.field.is_finite():
        raise EnumerationInfeasible("Alg(N, A) needs a finite field")
    F = A.field
    na = A.dim
    gen = power_basis(N)
    out = []
    if gen is not None:
        for a in A.all_elements():
            vec = []
            power = list(A.unit)
            rows = [list(A.unit)]
            for _ in range(1, N.dim):
                power = A.mul_vec(power, a)
                rows.append(list(power))
            phi = []
            for r in rows:
                phi.extend(r)
            if _is_algebra_map(N, A, rows):
                out.append(tuple(phi))
        return out
    # general: grid over non-unit basis values
    slots = [i for i in range(N.dim) if i != N.unit_index]
    els = A.all_elements()
    total = len(els) ** len(slots)
    if total > budget:
        raise SearchBudgetExceeded(total, budget)
    for combo in product(els, repeat=len(slots)):
        rows = [None] * N.dim
        rows[N.unit_index] = list(A.unit)
        for i, v in zip(slots, combo):
            rows[i] = list(v)
        if _is_algebra_map(N, A, rows):
            phi = []
            for r in rows:
                phi.extend(r)
            out.append(tuple(phi))
    return out


def _is_algebra_map(N, A, rows):
    F = A.field
    for i in range(N.dim):
        for j in range(N.dim):
            lhs = [F.zero] * A.dim
            for k, c in enumerate(N.mult[i][j]):
                if c != F.zero:
                    for a in range(A.dim):
                        if rows[k][a] != F.zero:
                            lhs[a] = F.add(lhs[a], F.mul(c, rows[k][a]))
            if lhs != A.mul_vec(rows[i], rows[j]):
                return False
    return True


def alg_group(N, A, budget=DEFAULT_BUDGET):
    """Alg(N, A) as an enumerated abelian group under convolution."""
    maps = alg_maps(N, A, budget)
    F = A.field
    na = A.dim

    def conv(p1, p2):
        rows = []
        for k in range(N.dim):
            acc = [F.zero] * na
            for x, y, c in N.comult[k]:
                v = A.mul_vec(list(p1[x * na:(x + 1) * na]),
                              list(p2[y * na:(y + 1) * na]))
                for a in range(na):
                    if v[a] != F.zero:
                        acc[a] = F.add(acc[a], F.mul(c, v[a]))
            rows.extend(acc)
        return tuple(rows)

    ident = []
    for k in range(N.dim):
        ident.extend(A.scalar_vec(N.counit[k]))
    return EnumeratedAbelian(sorted(maps), conv, tuple(ident))


class KgSpecialization:
    """H^i_meas(kG, Hom(N,A)) as H^i(G, Alg(N,A)) with the precomposition
    action, via the bar-complex lattices."""

    def __init__(self, T, N, A, action=None, budget=DEFAULT_BUDGET):
        from .groupcoh import GModule, gmodule_with_permutation_action
        table = T.group_table()
        if table is None:
            raise NotGroupAlgebra("specialization needs T to be a group algebra")
        self.T, self.N, self.A, self.action = T, N, A, action
        self.table = table
        self.ea = alg_group(N, A, budget)
        F = A.field
        na = A.dim

        def precompose(g_idx):
            def apply(phi):
                rows = []
                for i in range(N.dim):
                    if action is None:
                        img = [F.mul(T.counit[g_idx],
                                     F.one if k == i else F.zero)
                               for k in range(N.dim)]
                    else:
                        img = action.apply_left(g_idx, _basis_vec(F, N.dim, i))
                    acc = [F.zero] * na
                    for k, c in enumerate(img):
                        if c != F.zero:
                            for a in range(na):
                                v = phi[k * na + a]
                                if v != F.zero:
                                    acc[a] = F.add(acc[a], F.mul(c, v))
                    rows.extend(acc)
                return tuple(rows)
            return apply

        perms = {g: precompose(g) for g in range(len(table))}
        self.gm = gmodule_with_permutation_action(table, self.ea, perms)

    def cohomology(self, q):
        from .groupcoh import group_cohomology
        return group_cohomology(self.gm, q)

    def uniquely_divisible(self):
        """True when multiplication by |G| is bijective on Alg(N, A): the
        cohomology above degree zero then vanishes."""
        import math
        n = len(self.table)
        return all(math.gcd(n, d) == 1
                   for d in self.ea.group.invariant_factors)

    def to_cochain(self, f):
        """Measuring element -> Map(G^q, Alg(N,A)) cochain."""
        from .groupcoh import Cochain
        values = {}
        for t in all_tuples(self.T, f.q):
            key = tuple(f.values[t])
            log = self.ea.dlog(key)
            if log is None:
                raise NotMeasuring(f"value at {t} is not an algebra map")
            values[t] = log
        return Cochain(self.gm, f.q, values)

    def to_measuring(self, c, hom):
        from .groupcoh import _ea_lift
        values = {}
        for t in all_tuples(self.T, c.q):
            values[t] = list(_ea_lift(self.ea, c.values[t]))
        return RegElement(self.T, hom, c.q, values)


def kg_specialize(T, N, A, action=None, budget=DEFAULT_BUDGET):
    return KgSpecialization(T, N, A, action, budget)


# --- pairings ----------------------------------------------------------------

def pairing_group(T, N, A, budget=DEFAULT_BUDGET, hom=None):
    """P(T, N, A): maps T (x) N -> A measuring in both variables, under
    convolution.  Returns (group, elements as Reg(T, Hom(N,A)) objects)."""
    if hom is None:
        hom = hom_coefficients(T, N, A, None)
    F = A.field
    na = A.dim
    pairings = []
    for f in enumerate_measuring(T, N, A, None, 1, budget, hom=hom):
        if _measures_in_t(f, T, N, A):
            pairings.append(f)
    zs_keys = {f.key(): f for f in pairings}
    ident = eta_eps(T, hom, 1)
    zs_keys.setdefault(ident.key(), ident)

    def mul(k1, k2):
        from .reg import convolve
        out = convolve(zs_keys[k1], zs_keys[k2])
        k = out.key()
        assert k in zs_keys, "pairings are not closed under convolution"
        return k

    ea = EnumeratedAbelian(sorted(zs_keys), mul, ident.key())
    return ea.group, pairings, ea


def _measures_in_t(f, T, N, A):
    """f(t t' (x) n) = sum f(t (x) n_1) f(t' (x) n_2)."""
    F = A.field
    na = A.dim
    for t1 in range(T.dim):
        for t2 in range(T.dim):
            for n in range(N.dim):
                lhs = [F.zero] * na
                for k, c in enumerate(T.mult[t1][t2]):
                    if c != F.zero:
                        v = _pair_val(f, (k,), n, na)
                        for a in range(na):
                            if v[a] != F.zero:
                                lhs[a] = F.add(lhs[a], F.mul(c, v[a]))
                rhs = [F.zero] * na
                for x, y, c in N.comult[n]:
                    v = A.mul_vec(_pair_val(f, (t1,), x, na),
                                  _pair_val(f, (t2,), y, na))
                    for a in range(na):
                        if v[a] != F.zero:
                            rhs[a] = F.add(rhs[a], F.mul(c, v[a]))
                if lhs != rhs:
                    return False
    return True
