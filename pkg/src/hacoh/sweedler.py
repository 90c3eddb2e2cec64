"""High-level convolution cohomology: complete enumerations, brute-force
H^2, coboundary witnesses, and the constructive normalizer that makes a
2-cocycle on a smash product trivial on N (x) T.

Enumerations are complete by construction: a convolution-invertible map
must take unit values on tuples of group-likes (f * f^{-1} evaluated at
a group-like tuple is f(t) f^{-1}(t) = 1), so the candidate grids range
over units there and over all of A elsewhere, and every candidate is
invertibility-checked.  A search that would exceed the budget raises
instead of silently truncating, so "no witness found" always means a
proven absence.
"""

from dataclasses import dataclass, field as dc_field
from itertools import product

from .abelian import EnumeratedAbelian
from .errors import (ComponentConditionFailed, EnumerationInfeasible,
                     NotACocycle, NotInvertible, SearchBudgetExceeded)
from .hopf import CheckReport, _basis_vec
from .reg import (ModuleAlgebra, RegElement, all_tuples, conv_inverse,
                  convolve, differential, eta_eps, free_tuples, is_cocycle,
                  is_invertible, normalized_value)

DEFAULT_BUDGET = 3 ** 8


@dataclass
class WitnessSearch:
    witness: object  # RegElement or None
    candidates: int
    complete: bool
    method: str


@dataclass
class CohomologyResult:
    group: object  # FiniteAbelianGroup
    representatives: list  # one cocycle per invariant-factor generator
    method: str
    meta: dict = dc_field(default_factory=dict)

    def class_of(self, f):
        return self.meta["quotient"].dlog(f.key())


def _value_domains(H, coeff, q, units_only_on_grouplike=True):
    A = coeff.A
    doms = []
    units = None
    els = None
    for t in free_tuples(H, q):
        if units_only_on_grouplike and all(H.grouplike(i) for i in t):
            if units is None:
                units = A.all_units()
            doms.append(units)
        else:
            if els is None:
                els = A.all_elements()
            doms.append(els)
    return doms


def grid_size(H, coeff, q):
    total = 1
    for d in _value_domains(H, coeff, q):
        total *= len(d)
    return total


def enumerate_reg(H, coeff, q, budget=DEFAULT_BUDGET, extra_filter=None):
    """Every element of Reg(H^(x)q, A), exactly once.

    Raises SearchBudgetExceeded if the candidate grid is larger than the
    budget, and EnumerationInfeasible over an infinite field.
    """
    if not H.field.is_finite():
        raise EnumerationInfeasible("cannot enumerate over an infinite field")
    if q == 0:
        out = []
        for v in coeff.A.all_units():
            out.append(RegElement(H, coeff, 0, {(): list(v)}, check_normal=False))
        return out
    free = free_tuples(H, q)
    doms = _value_domains(H, coeff, q)
    total = 1
    for d in doms:
        total *= len(d)
    if total > budget:
        raise SearchBudgetExceeded(total, budget)
    pinned = {t: normalized_value(H, coeff, t) for t in all_tuples(H, q)
              if t not in set(free)}
    fast = all(H.grouplike(i) for i in range(H.dim))
    out = []
    for combo in product(*doms):
        values = dict(pinned)
        for t, v in zip(free, combo):
            values[t] = list(v)
        f = RegElement(H, coeff, q, values, check_normal=False)
        if extra_filter is not None and not extra_filter(f):
            continue
        if not fast and not is_invertible(f):
            continue
        out.append(f)
    return out


def enumerate_cocycles(H, coeff, q, budget=DEFAULT_BUDGET):
    def filt(f):
        return is_cocycle(f, q)[0]
    return enumerate_reg(H, coeff, q, budget, extra_filter=filt)


def coboundary_table(H, coeff, q, budget=DEFAULT_BUDGET):
    """All degree-q coboundaries as {key(delta t): (delta t, t)}."""
    table = {}
    for t in enumerate_reg(H, coeff, q - 1, budget):
        d = differential(t)
        table.setdefault(d.key(), (d, t))
    return table


class RegSetGroup:
    """The abelian group structure on an enumerated, convolution-closed
    set of RegElements."""

    def __init__(self, elements, H, coeff, q):
        ident = eta_eps(H, coeff, q)
        self.by_key = {f.key(): f for f in elements}
        self.by_key.setdefault(ident.key(), ident)
        self.ident = ident

        def mul(k1, k2):
            f = convolve(self.by_key[k1], self.by_key[k2])
            k = f.key()
            assert k in self.by_key, "enumerated set is not closed under convolution"
            return k

        self.ea = EnumeratedAbelian(sorted(self.by_key), mul, ident.key())

    def quotient(self, sub_elements):
        return self.ea.quotient([f.key() for f in sub_elements])

    def element(self, key):
        return self.by_key[key]


def cohomology_from_enumeration(z_elements, b_table, H, coeff, q, method):
    """Z/B from complete enumerations, with representative witnesses."""
    zs = RegSetGroup(z_elements, H, coeff, q)
    b_keys = [k for k in b_table if k in zs.by_key]
    assert len(b_keys) == len(b_table), "a coboundary escaped the cocycle set"
    quot = zs.ea.quotient(b_keys)
    reps = []
    r = len(quot.group.invariant_factors)
    for i in range(r):
        y = tuple(1 if j == i else 0 for j in range(r))
        reps.append(zs.element(quot.class_rep(y)))
    class_reps = {y: zs.element(k) for y, k in quot.classes.items()}
    return CohomologyResult(quot.group, reps, method,
                            meta={"quotient": quot, "zgroup": zs,
                                  "class_reps": class_reps,
                                  "coboundaries": b_table})


def h2_bruteforce(H, A, budget=DEFAULT_BUDGET, action=None):
    """H^2(H, A) by complete enumeration of normalized invertible degree-2
    maps, filtered by the cocycle identity, modulo coboundaries."""
    coeff = action if isinstance(action, ModuleAlgebra) else \
        ModuleAlgebra.trivial_coeff(H, A)
    z = enumerate_cocycles(H, coeff, 2, budget)
    b = coboundary_table(H, coeff, 2, budget)
    return cohomology_from_enumeration(z, b, H, coeff, 2, "bruteforce")


def bridge_coboundary_witness(f):
    """Lattice-solve route for group algebras with trivial action."""
    from .groupcoh import GroupCohomology, GroupDictionary
    if f.H.group_table() is None or not f.coeff.trivial:
        return None
    dic = GroupDictionary(f.H, f.coeff.A, coeff=f.coeff)
    gc = GroupCohomology(dic.gm, f.q)
    w = gc.coboundary_witness(dic.to_cochain(f))
    if w is None:
        return WitnessSearch(None, 0, True, "bridge")
    wr = dic.to_reg(w)
    assert differential(wr) == f
    return WitnessSearch(wr, 0, True, "bridge")


def coboundary_witness(f, q=None, budget=DEFAULT_BUDGET):
    """t with delta t = f, found by the group-algebra lattice solver when
    it applies and otherwise by complete enumeration; a None witness with
    complete=True is a proven non-coboundary."""
    if q is None:
        q = f.q
    ok, w = is_cocycle(f, q)
    if not ok:
        raise NotACocycle(f"input is not a {q}-cocycle", witness=w)
    bridged = bridge_coboundary_witness(f)
    if bridged is not None:
        return bridged
    if not f.H.field.is_finite():
        raise SearchBudgetExceeded(float("inf"), budget)
    count = 0
    for t in enumerate_reg(f.H, f.coeff, q - 1, budget):
        count += 1
        if differential(t) == f:
            return WitnessSearch(t, count, True, "enumeration")
    return WitnessSearch(None, count, True, "enumeration")


# --- bilinear evaluation helpers -------------------------------------------

def reg2_eval(f, v1, v2):
    """Evaluate a degree-2 element on a pair of H-vectors."""
    F = f.coeff.field
    na = f.coeff.dim
    out = [F.zero] * na
    for a, ca in enumerate(v1):
        if ca == F.zero:
            continue
        for b, cb in enumerate(v2):
            if cb == F.zero:
                continue
            c = F.mul(ca, cb)
            val = f.values[(a, b)]
            for x in range(na):
                if val[x] != F.zero:
                    out[x] = F.add(out[x], F.mul(c, val[x]))
    return out


def pair_value(g, t_idx, n_idx):
    """Value of a Reg(T, Hom(N,A)) element on (t, n) as a vector in A."""
    na = g.coeff.hom_structure[1].dim
    row = g.values[(t_idx,)]
    return row[n_idx * na:(n_idx + 1) * na]


def pair_eval(g, tvec, nvec):
    """Bilinear evaluation of a Reg(T, Hom(N,A)) element on vectors."""
    F = g.coeff.field
    A = g.coeff.hom_structure[1]
    na = A.dim
    out = [F.zero] * na
    for t, ct in enumerate(tvec):
        if ct == F.zero:
            continue
        for n, cn in enumerate(nvec):
            if cn == F.zero:
                continue
            c = F.mul(ct, cn)
            val = pair_value(g, t, n)
            for x in range(na):
                if val[x] != F.zero:
                    out[x] = F.add(out[x], F.mul(c, val[x]))
    return out


def is_binormalized(g):
    """Unit-normalized in the N slot too: g(t (x) 1_N) = eps(t) 1_A."""
    N, A, _ = g.coeff.hom_structure
    H = g.H
    F = g.coeff.field
    for t in range(H.dim):
        expect = A.scalar_vec(H.counit[t])
        if list(pair_value(g, t, N.unit_index)) != expect:
            return False
    return True


def pair_map_from_values(T, hom, val):
    """Build a Reg(T, Hom(N,A)) element from {(t_idx, n_idx): A-vector}."""
    N, A, _ = hom.hom_structure
    na = A.dim
    values = {}
    for t in range(T.dim):
        row = []
        for n in range(N.dim):
            row.extend(val[(t, n)])
        values[(t,)] = row
    return RegElement(T, hom, 1, values)


# --- the smash-product normalizer ------------------------------------------

def normalize_cocycle(f, smash):
    """Repair a 2-cocycle on H = N x| T (trivial action on A) into a
    cohomologous one that is trivial on N (x) T.

    Builds the crossed product K = A (x)_f H, multiplies the section
    chi(h) = 1 (x) h into chi'(u # v) = chi(u) chi(v), reads off the
    associated cocycle f' and the comparison w = chi^{-1} * chi', checks
    that w lands in the coinvariants A, and verifies f' = f * delta(w).
    Returns (f', w).
    """
    from .actions import crossed_product_algebra
    H = smash.H
    A = f.coeff.A
    F = A.field
    assert f.coeff.trivial, "normalizer requires the trivial action on A"
    K = crossed_product_algebra(A, H, f.values)  # raises NotACocycle if not
    KA = K.algebra
    coK = ModuleAlgebra.trivial_coeff(H, KA)
    chi = RegElement(H, coK, 1, {(h,): K.chi(h) for h in range(H.dim)},
                     check_normal=False)
    chi_inv = conv_inverse(chi)
    chi2_values = {}
    for i in range(smash.N.dim):
        for j in range(smash.T.dim):
            b = smash.idx(i, j)
            chi2_values[(b,)] = KA.mul_vec(K.chi(smash.embed_n_index(i)),
                                           K.chi(smash.embed_t_index(j)))
    chi2 = RegElement(H, coK, 1, chi2_values, check_normal=False)
    chi2_inv = conv_inverse(chi2)
    # f'(h (x) h') = chi'(h_1) chi'(h'_1) chi'^{-1}(h_2 h'_2), in A = K^{co H}
    n = H.dim
    fprime_vals = {}
    for b1 in range(n):
        for b2 in range(n):
            acc = [F.zero] * KA.dim
            for x1, x2, c1 in H.comult[b1]:
                for y1, y2, c2 in H.comult[b2]:
                    c = F.mul(c1, c2)
                    term = KA.mul_vec(chi2.values[(x1,)], chi2.values[(y1,)])
                    inv_part = [F.zero] * KA.dim
                    for k, cm in enumerate(H.mult[x2][y2]):
                        if cm != F.zero:
                            v = chi2_inv.values[(k,)]
                            for a in range(KA.dim):
                                if v[a] != F.zero:
                                    inv_part[a] = F.add(inv_part[a], F.mul(cm, v[a]))
                    term = KA.mul_vec(term, inv_part)
                    for a in range(KA.dim):
                        if term[a] != F.zero:
                            acc[a] = F.add(acc[a], F.mul(c, term[a]))
            part = K.coinvariant_part(acc)
            assert part is not None, "associated cocycle left the coinvariants"
            fprime_vals[(b1, b2)] = part
    fprime = RegElement(H, f.coeff, 2, fprime_vals)
    w_k = convolve(chi_inv, chi2)
    w_vals = {}
    for h in range(n):
        part = K.coinvariant_part(w_k.values[(h,)])
        assert part is not None, "comparison map left the coinvariants"
        w_vals[(h,)] = part
    w = RegElement(H, f.coeff, 1, w_vals)
    # verification: f' = f * delta w and triviality on N (x) T
    assert fprime == convolve(f, differential(w)), "f' != f * delta(w)"
    for i in range(smash.N.dim):
        for j in range(smash.T.dim):
            t = (smash.embed_n_index(i), smash.embed_t_index(j))
            assert list(fprime.values[t]) == normalized_value(H, f.coeff, t), \
                "normalized cocycle is not trivial on N (x) T"
    ok, witness = is_cocycle(fprime, 2)
    assert ok, f"normalized map is not a cocycle at {witness}"
    return fprime, w


# --- component conditions and assembly --------------------------------------

def component_conditions(fNN, fTT, fTN, smash):
    """The five conditions a normalized cocycle's components must satisfy.

    fNN, fTT: degree-2 elements over N and T; fTN: Reg(T, Hom(N,A)).
    Returns a CheckReport with one entry per condition.
    """
    rep = CheckReport()
    N, T = smash.N, smash.T
    act = smash.action
    A = fNN.coeff.A
    F = A.field
    na = A.dim

    rep.add("(1) components normalized on the unit slots", is_binormalized(fTN))

    ok, w = is_cocycle(fNN, 2)
    rep.add("(2) f|NN is a 2-cocycle on N", ok, w)
    ok, w = is_cocycle(fTT, 2)
    rep.add("(3) f|TT is a 2-cocycle on T", ok, w)

    # (4) f(tt' (x) n') = sum f(t'_1 (x) n'_1) f(t (x) t'_2(n'_2))
    ok, wit = True, None
    for t in range(T.dim):
        for t2 in range(T.dim):
            for n2 in range(N.dim):
                lhs = pair_eval(fTN, T.mult[t][t2], _basis_vec(F, N.dim, n2))
                rhs = [F.zero] * na
                for a, b, c in T.comult[t2]:
                    for x, y, c2 in N.comult[n2]:
                        cc = F.mul(c, c2)
                        acted = act.apply_left(b, _basis_vec(F, N.dim, y))
                        v = A.mul_vec(pair_value(fTN, a, x),
                                      pair_eval(fTN, _basis_vec(F, T.dim, t), acted))
                        for i in range(na):
                            if v[i] != F.zero:
                                rhs[i] = F.add(rhs[i], F.mul(cc, v[i]))
                if lhs != rhs:
                    ok, wit = False, (t, t2, n2)
    rep.add("(4) mixed T-cocycle identity for f|TN", ok, wit)

    # (5) sum fNN(n_1 (x) n'_1) fNN^{-1}(t_1(n_2) (x) t_2(n'_2))
    #     = sum fTN(t_1 (x) n_1) fTN^{-1}(t_2 (x) n_2 n'_1) fTN(t_3 (x) n'_2)
    fNN_inv = fNN.inverse()
    fTN_inv = fTN.inverse()
    ok, wit = True, None
    for t in range(T.dim):
        for n1 in range(N.dim):
            for n2 in range(N.dim):
                lhs = [F.zero] * na
                for x1, x2, cx in N.comult[n1]:
                    for y1, y2, cy in N.comult[n2]:
                        for t1, t2, ct in T.comult[t]:
                            c = F.mul(F.mul(cx, cy), ct)
                            tw1 = act.apply_left(t1, _basis_vec(F, N.dim, x2))
                            tw2 = act.apply_left(t2, _basis_vec(F, N.dim, y2))
                            v = A.mul_vec(fNN.values[(x1, y1)],
                                          reg2_eval(fNN_inv, tw1, tw2))
                            for i in range(na):
                                if v[i] != F.zero:
                                    lhs[i] = F.add(lhs[i], F.mul(c, v[i]))
                rhs = [F.zero] * na
                trip = T.iterated_comult(t, 3)
                for (ta, tb, tc), ct in trip:
                    for x1, x2, cx in N.comult[n1]:
                        for y1, y2, cy in N.comult[n2]:
                            c = F.mul(F.mul(cx, cy), ct)
                            mid = [F.zero] * na
                            prod = N.mult[x2][y1]
                            for m, cm in enumerate(prod):
                                if cm != F.zero:
                                    v = pair_value(fTN_inv, tb, m)
                                    for i in range(na):
                                        if v[i] != F.zero:
                                            mid[i] = F.add(mid[i], F.mul(cm, v[i]))
                            v = A.mul_vec(pair_value(fTN, ta, x1), mid)
                            v = A.mul_vec(v, pair_value(fTN, tc, y2))
                            for i in range(na):
                                if v[i] != F.zero:
                                    rhs[i] = F.add(rhs[i], F.mul(c, v[i]))
                if lhs != rhs:
                    ok, wit = False, (t, n1, n2)
    rep.add("(5) twist of f|NN is the N-side coboundary of f|TN", ok, wit)
    return rep


def assemble_normalized(fNN, fTT, fTN, smash, check_conditions=True):
    """The unique normalized cocycle with the given restrictions:
    f(nt (x) n't') = sum fTT(t_1 (x) t') fTN(t_2 (x) n'_1) fNN(n (x) t_3(n'_2)).

    Raises ComponentConditionFailed(i) naming the first failing condition.
    """
    N, T = smash.N, smash.T
    H = smash.H
    act = smash.action
    A = fNN.coeff.A
    F = A.field
    na = A.dim
    if check_conditions:
        rep = component_conditions(fNN, fTT, fTN, smash)
        for idx, (name, ok, wit) in enumerate(rep.checks, start=1):
            if not ok:
                raise ComponentConditionFailed(idx, witness=wit)
    values = {}
    for i in range(N.dim):
        for j in range(T.dim):
            for i2 in range(N.dim):
                for j2 in range(T.dim):
                    acc = [F.zero] * na
                    for (ta, tb, tc), ct in T.iterated_comult(j, 3):
                        for x, y, cn in N.comult[i2]:
                            c = F.mul(ct, cn)
                            v = A.mul_vec(fTT.values[(ta, j2)],
                                          pair_value(fTN, tb, x))
                            acted = act.apply_left(tc, _basis_vec(F, N.dim, y))
                            v = A.mul_vec(v, reg2_eval(
                                fNN, _basis_vec(F, N.dim, i), acted))
                            for a in range(na):
                                if v[a] != F.zero:
                                    acc[a] = F.add(acc[a], F.mul(c, v[a]))
                    values[(smash.idx(i, j), smash.idx(i2, j2))] = acc
    f = RegElement(H, ModuleAlgebra.trivial_coeff(H, A), 2, values)
    ok, wit = is_cocycle(f, 2)
    if not ok:
        raise NotACocycle("assembled map is not a cocycle", witness=wit)
    return f


def restrict_to_components(f, smash, hom):
    """(f|NN, f|TT, f|TN) of a normalized cocycle on the smash product."""
    from .reg import restrict_along
    N, T = smash.N, smash.T
    A = f.coeff.A
    fNN = restrict_along(f, smash.embed_n_index, N)
    fTT = restrict_along(f, smash.embed_t_index, T)
    vals = {}
    for t in range(T.dim):
        for n in range(N.dim):
            vals[(t, n)] = list(f.values[(smash.embed_t_index(t),
                                          smash.embed_n_index(n))])
    fTN = pair_map_from_values(T, hom, vals)
    return fNN, fTT, fTN


# --- seeded random elements -------------------------------------------------

def random_reg(H, coeff, q, rng, tries=64):
    """A random normalized invertible element (uniform over the grid)."""
    free = free_tuples(H, q)
    doms = _value_domains(H, coeff, q)
    pinned = {t: normalized_value(H, coeff, t) for t in all_tuples(H, q)
              if t not in set(free)}
    for _ in range(tries):
        values = dict(pinned)
        for t, dom in zip(free, doms):
            values[t] = list(rng.choice(dom))
        f = RegElement(H, coeff, q, values, check_normal=False)
        if is_invertible(f):
            return f
    raise NotInvertible("could not sample an invertible element")


def pullback_along_projection(fT, smash, coeff_H):
    """Pull a degree-2 element on T back along the Hopf projection
    H -> T, (n # t) -> eps(n) t."""
    H, N, T = smash.H, smash.N, smash.T
    F = fT.coeff.field
    values = {}
    for b1 in range(H.dim):
        i1, j1 = smash.split(b1)
        for b2 in range(H.dim):
            i2, j2 = smash.split(b2)
            c = F.mul(N.counit[i1], N.counit[i2])
            values[(b1, b2)] = [F.mul(c, x) for x in fT.values[(j1, j2)]]
    return RegElement(H, coeff_H, 2, values)


def random_smash_cocycle(smash, zprime_pool, ztt_pool, rng, coeff_H):
    """A seeded 2-cocycle on the smash product: a normalized cocycle from
    the pool, times the pullback of a T-side cocycle, times a coboundary."""
    z = rng.choice(zprime_pool)
    ztt = rng.choice(ztt_pool)
    t = random_reg(smash.H, coeff_H, 1, rng)
    f = convolve(convolve(z, pullback_along_projection(ztt, smash, coeff_H)),
                 differential(t))
    ok, wit = is_cocycle(f, 2)
    assert ok, f"random product is not a cocycle at {wit}"
    return f
