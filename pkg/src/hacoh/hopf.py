"""Finite-dimensional Hopf algebras as structure-constant tensors.

A HopfData holds dense multiplication constants c[i][j][k] (x_i x_j =
sum_k c[i][j][k] x_k), a sparse comultiplication (Delta x_i = sum over
(j, k, coeff)), counit, antipode matrix, and runnable axiom checks.
Supported envelope is dim <= 24; every shipped constructor produces a
basis containing the unit as a basis vector.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import gtables
from .errors import (CharMismatch, DimensionMismatch, FieldMismatch,
                     NoAntipode, NotAGroup)
from .linalg import solve_linear

MAX_DIM = 24


@dataclass
class CheckReport:
    """Outcome of an axiom suite: (name, passed, witness) per check."""

    checks: list = dc_field(default_factory=list)

    def add(self, name, ok, witness=None):
        self.checks.append((name, bool(ok), witness))

    @property
    def ok(self):
        return all(c[1] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def __str__(self):
        return "\n".join(
            f"[{'pass' if ok else 'FAIL'}] {name}" + ("" if ok or w is None else f"  witness={w}")
            for name, ok, w in self.checks)


class AlgebraData:
    """Associative unital algebra on a finite basis (no coalgebra part)."""

    def __init__(self, F, mult, unit, basis_labels=None, is_commutative=None):
        self.field = F
        self.dim = len(mult)
        self.mult = mult
        self.unit = list(unit)
        self.basis_labels = basis_labels or [f"e{i}" for i in range(self.dim)]
        if is_commutative is None:
            is_commutative = self._check_commutative()
        self.is_commutative = is_commutative
        self.unit_index = _pure_basis_index(F, self.unit)

    def _check_commutative(self):
        n, F = self.dim, self.field
        return all(self.mult[i][j] == self.mult[j][i] for i in range(n) for j in range(n))

    def mul_vec(self, u, v):
        F, n = self.field, self.dim
        out = [F.zero] * n
        for i, ui in enumerate(u):
            if ui == F.zero:
                continue
            for j, vj in enumerate(v):
                if vj == F.zero:
                    continue
                c = F.mul(ui, vj)
                row = self.mult[i][j]
                for k in range(n):
                    if row[k] != F.zero:
                        out[k] = F.add(out[k], F.mul(c, row[k]))
        return out

    def scalar_vec(self, c):
        return [self.field.mul(c, x) for x in self.unit]

    def left_mult_matrix(self, u):
        """Matrix of v -> u*v in the basis."""
        F, n = self.field, self.dim
        M = [[F.zero] * n for _ in range(n)]
        for j in range(n):
            col = self.mul_vec(u, _basis_vec(F, n, j))
            for k in range(n):
                M[k][j] = col[k]
        return M

    def invert(self, u):
        """Two-sided inverse of u in the algebra, or None."""
        F, n = self.field, self.dim
        x = solve_linear(F, self.left_mult_matrix(u), self.unit)
        if x is None:
            return None
        if self.mul_vec(x, u) != self.unit:
            return None
        return x

    def elements(self):
        """All elements (finite ground field only)."""
        from itertools import product
        for combo in product(self.field.elements(), repeat=self.dim):
            yield list(combo)

    def units(self):
        out = []
        for v in self.elements():
            if self.invert(v) is not None:
                out.append(v)
        return out

    def all_elements(self):
        if not hasattr(self, "_elements_cache"):
            self._elements_cache = [list(v) for v in self.elements()]
        return self._elements_cache

    def all_units(self):
        if not hasattr(self, "_units_cache"):
            self._units_cache = self.units()
        return self._units_cache

    def verify(self):
        rep = CheckReport()
        rep.add("algebra associativity", *_assoc_check(self.field, self.mult))
        rep.add("unit law", *_unit_check(self))
        if self.is_commutative:
            rep.add("commutativity", self._check_commutative())
        return rep


class HopfData(AlgebraData):
    def __init__(self, F, mult, unit, comult, counit, antipode,
                 basis_labels=None, is_cocommutative=None, is_commutative=None):
        if len(mult) > MAX_DIM:
            raise DimensionMismatch(f"dim {len(mult)} above supported envelope {MAX_DIM}")
        super().__init__(F, mult, unit, basis_labels, is_commutative)
        n = self.dim
        for i in range(n):
            if len(mult[i]) != n or any(len(mult[i][j]) != n for j in range(n)):
                raise DimensionMismatch("mult tensor is not n x n x n")
        self.comult = [list(terms) for terms in comult]  # i -> [(j, k, coeff)]
        if len(self.comult) != n:
            raise DimensionMismatch("comult needs one term list per basis element")
        self.counit = list(counit)
        self.antipode = [list(row) for row in antipode]  # row i = S(x_i)
        if is_cocommutative is None:
            is_cocommutative = self._check_cocommutative()
        self.is_cocommutative = is_cocommutative
        self._grouplike = None
        self._itcomult = {}

    # --- coalgebra side -------------------------------------------------
    def _check_cocommutative(self):
        F = self.field
        for i in range(self.dim):
            if _normalize_terms(F, [(k, j, c) for j, k, c in self.comult[i]]) != \
               _normalize_terms(F, self.comult[i]):
                return False
        return True

    def counit_vec(self, v):
        F = self.field
        return F.sum(F.mul(v[i], self.counit[i]) for i in range(self.dim))

    def antipode_vec(self, v):
        F, n = self.field, self.dim
        out = [F.zero] * n
        for i, vi in enumerate(v):
            if vi != F.zero:
                for k in range(n):
                    if self.antipode[i][k] != F.zero:
                        out[k] = F.add(out[k], F.mul(vi, self.antipode[i][k]))
        return out

    def iterated_comult(self, i, parts):
        """Delta^(parts-1) of basis element i as [(index tuple, coeff)]."""
        if parts == 1:
            return [((i,), self.field.one)]
        key = (i, parts)
        if key not in self._itcomult:
            F = self.field
            prev = self.iterated_comult(i, parts - 1)
            acc = {}
            for tup, c in prev:
                last = tup[-1]
                for j, k, c2 in self.comult[last]:
                    nt = tup[:-1] + (j, k)
                    cc = F.mul(c, c2)
                    acc[nt] = F.add(acc.get(nt, F.zero), cc)
            self._itcomult[key] = [(t, c) for t, c in sorted(acc.items()) if c != F.zero]
        return self._itcomult[key]

    def grouplike(self, i):
        if self._grouplike is None:
            F = self.field
            gl = []
            for b in range(self.dim):
                terms = _normalize_terms(F, self.comult[b])
                gl.append(terms == [(b, b, F.one)] and self.counit[b] == F.one)
            self._grouplike = gl
        return self._grouplike[i]

    @property
    def all_grouplike(self):
        return all(self.grouplike(i) for i in range(self.dim))

    def group_table(self):
        """Multiplication table if the basis is a group of group-likes."""
        if not self.all_grouplike:
            return None
        F, n = self.field, self.dim
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                k = _pure_basis_index(F, self.mult[i][j])
                if k is None:
                    return None
                row.append(k)
            table.append(row)
        try:
            gtables.validate_group(table)
        except NotAGroup:
            return None
        return table

    # --- serialization --------------------------------------------------
    def comult_dense(self):
        F, n = self.field, self.dim
        d = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j, k, c in self.comult[i]:
                d[i][j][k] = F.add(d[i][j][k], c)
        return d

    def to_json(self):
        F = self.field
        return {
            "dim": self.dim,
            "basis_labels": list(self.basis_labels),
            "mult": [[[F.to_json(c) for c in row] for row in plane] for plane in self.mult],
            "unit": [F.to_json(c) for c in self.unit],
            "comult": [[[F.to_json(c) for c in row] for row in plane]
                       for plane in self.comult_dense()],
            "counit": [F.to_json(c) for c in self.counit],
            "antipode": [[F.to_json(c) for c in row] for row in self.antipode],
            "flags": {"is_cocommutative": self.is_cocommutative,
                      "is_commutative": self.is_commutative},
        }

    @staticmethod
    def from_json(F, obj):
        n = obj["dim"]
        mult = [[[F.from_json(c) for c in row] for row in plane] for plane in obj["mult"]]
        dense = [[[F.from_json(c) for c in row] for row in plane] for plane in obj["comult"]]
        comult = [[(j, k, dense[i][j][k]) for j in range(n) for k in range(n)
                   if dense[i][j][k] != F.zero] for i in range(n)]
        return HopfData(
            F, mult, [F.from_json(c) for c in obj["unit"]], comult,
            [F.from_json(c) for c in obj["counit"]],
            [[F.from_json(c) for c in row] for row in obj["antipode"]],
            basis_labels=obj.get("basis_labels"))


def _basis_vec(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return v


def _pure_basis_index(F, v):
    """Index i if v = x_i exactly, else None."""
    idx = None
    for i, c in enumerate(v):
        if c == F.one and idx is None:
            idx = i
        elif c != F.zero:
            return None
    return idx


def _normalize_terms(F, terms):
    acc = {}
    for j, k, c in terms:
        acc[(j, k)] = F.add(acc.get((j, k), F.zero), c)
    return sorted(((j, k, c) for (j, k), c in acc.items() if c != F.zero))


# --- axiom checks --------------------------------------------------------

def _np_tensor(F, mult):
    n = len(mult)
    return np.array([[[int(mult[i][j][k]) for k in range(n)] for j in range(n)]
                     for i in range(n)], dtype=np.int64)


def _assoc_check(F, mult):
    """(ok, witness) for associativity of a structure-constant tensor."""
    n = len(mult)
    if getattr(F, "p", None) == getattr(F, "order", 0) and F.order is not None:
        # prime field: vectorized check
        C = _np_tensor(F, mult)
        p = F.order
        lhs = np.einsum("ijk,klm->ijlm", C, C, optimize=True) % p
        rhs = np.einsum("jlk,ikm->ijlm", C, C, optimize=True) % p
        if np.array_equal(lhs, rhs):
            return True, None
        i, j, l, m = np.argwhere(lhs != rhs)[0]
        return False, (int(i), int(j), int(l))
    mul, add, zero = F.mul, F.add, F.zero
    for i in range(n):
        Mi = mult[i]
        for j in range(n):
            Mij = Mi[j]
            for l in range(n):
                Mjl = mult[j][l]
                for m in range(n):
                    lhs = zero
                    rhs = zero
                    for k in range(n):
                        if Mij[k] != zero:
                            lhs = add(lhs, mul(Mij[k], mult[k][l][m]))
                        if Mjl[k] != zero:
                            rhs = add(rhs, mul(Mjl[k], Mi[k][m]))
                    if lhs != rhs:
                        return False, (i, j, l)
    return True, None


def _unit_check(alg):
    F, n = alg.field, alg.dim
    for j in range(n):
        e = _basis_vec(F, n, j)
        if alg.mul_vec(alg.unit, e) != e or alg.mul_vec(e, alg.unit) != e:
            return False, (j,)
    return True, None


def _coassoc_check(H):
    F, n = H.field, H.dim
    for i in range(n):
        # (Delta x id) Delta vs (id x Delta) Delta
        left = {}
        right = {}
        for j, k, c in H.comult[i]:
            for a, b, c2 in H.comult[j]:
                key = (a, b, k)
                left[key] = F.add(left.get(key, F.zero), F.mul(c, c2))
            for a, b, c2 in H.comult[k]:
                key = (j, a, b)
                right[key] = F.add(right.get(key, F.zero), F.mul(c, c2))
        left = {k: v for k, v in left.items() if v != F.zero}
        right = {k: v for k, v in right.items() if v != F.zero}
        if left != right:
            return False, (i,)
    return True, None


def _counit_check(H):
    F, n = H.field, H.dim
    for i in range(n):
        lhs = [F.zero] * n
        rhs = [F.zero] * n
        for j, k, c in H.comult[i]:
            lhs[k] = F.add(lhs[k], F.mul(c, H.counit[j]))
            rhs[j] = F.add(rhs[j], F.mul(c, H.counit[k]))
        e = _basis_vec(F, n, i)
        if lhs != e or rhs != e:
            return False, (i,)
    return True, None


def _bialgebra_check(H):
    """Delta and counit are algebra maps; Delta(1) = 1 (x) 1."""
    F, n = H.field, H.dim
    unit_terms = {}
    for i, c in enumerate(H.unit):
        if c != F.zero:
            for j, k, c2 in H.comult[i]:
                key = (j, k)
                unit_terms[key] = F.add(unit_terms.get(key, F.zero), F.mul(c, c2))
    expected = {}
    for j, cj in enumerate(H.unit):
        if cj != F.zero:
            for k, ck in enumerate(H.unit):
                if ck != F.zero:
                    expected[(j, k)] = F.mul(cj, ck)
    if {k: v for k, v in unit_terms.items() if v != F.zero} != expected:
        return False, ("unit",)
    if H.counit_vec(H.unit) != F.one:
        return False, ("counit-unit",)
    for i in range(n):
        for j in range(n):
            # Delta(x_i x_j)
            lhs = {}
            for k, c in enumerate(H.mult[i][j]):
                if c != F.zero:
                    for a, b, c2 in H.comult[k]:
                        key = (a, b)
                        lhs[key] = F.add(lhs.get(key, F.zero), F.mul(c, c2))
            # Delta(x_i) * Delta(x_j) in H (x) H
            rhs = {}
            for a1, b1, c1 in H.comult[i]:
                for a2, b2, c2 in H.comult[j]:
                    c12 = F.mul(c1, c2)
                    va = H.mult[a1][a2]
                    vb = H.mult[b1][b2]
                    for a in range(n):
                        if va[a] == F.zero:
                            continue
                        ca = F.mul(c12, va[a])
                        for b in range(n):
                            if vb[b] != F.zero:
                                key = (a, b)
                                rhs[key] = F.add(rhs.get(key, F.zero), F.mul(ca, vb[b]))
            if {k: v for k, v in lhs.items() if v != F.zero} != \
               {k: v for k, v in rhs.items() if v != F.zero}:
                return False, (i, j)
            # counit multiplicative
            eps_prod = F.mul(H.counit[i], H.counit[j])
            eps_of = H.counit_vec(H.mult[i][j])
            if eps_prod != eps_of:
                return False, (i, j, "counit")
    return True, None


def _antipode_check(H):
    F, n = H.field, H.dim
    for i in range(n):
        left = [F.zero] * n
        right = [F.zero] * n
        for j, k, c in H.comult[i]:
            sv = H.antipode_vec(_basis_vec(F, n, j))
            term = H.mul_vec(sv, _basis_vec(F, n, k))
            for t in range(n):
                left[t] = F.add(left[t], F.mul(c, term[t]))
            sv2 = H.antipode_vec(_basis_vec(F, n, k))
            term2 = H.mul_vec(_basis_vec(F, n, j), sv2)
            for t in range(n):
                right[t] = F.add(right[t], F.mul(c, term2[t]))
        target = H.scalar_vec(H.counit[i])
        if left != target:
            return False, (i, "S*id")
        if right != target:
            return False, (i, "id*S")
    return True, None


def verify_hopf(H):
    """Run every Hopf axiom; report pass/fail with a witness basis tuple."""
    rep = CheckReport()
    rep.add("associativity", *_assoc_check(H.field, H.mult))
    rep.add("unit law", *_unit_check(H))
    rep.add("coassociativity", *_coassoc_check(H))
    rep.add("counit law", *_counit_check(H))
    rep.add("bialgebra law", *_bialgebra_check(H))
    rep.add("antipode law", *_antipode_check(H))
    cocomm = H._check_cocommutative()
    rep.add("cocommutativity flag", cocomm == H.is_cocommutative,
            None if cocomm == H.is_cocommutative else ("flag",))
    comm = H._check_commutative()
    rep.add("commutativity flag", comm == H.is_commutative,
            None if comm == H.is_commutative else ("flag",))
    if H.is_cocommutative:
        F, n = H.field, H.dim
        ss_ok, ss_w = True, None
        for i in range(n):
            if H.antipode_vec(H.antipode_vec(_basis_vec(F, n, i))) != _basis_vec(F, n, i):
                ss_ok, ss_w = False, (i,)
                break
        rep.add("S o S = id", ss_ok, ss_w)
    return rep


# --- constructors ---------------------------------------------------------

def group_algebra(table, F, labels=None):
    """kG: basis = group elements, Delta g = g (x) g, S(g) = g^{-1}."""
    gtables.validate_group(table)
    n = len(table)
    e = gtables.table_identity(table)
    inv = gtables.table_inverses(table)
    mult = [[_basis_vec(F, n, table[i][j]) for j in range(n)] for i in range(n)]
    comult = [[(i, i, F.one)] for i in range(n)]
    counit = [F.one] * n
    antipode = [_basis_vec(F, n, inv[i]) for i in range(n)]
    return HopfData(F, mult, _basis_vec(F, n, e), comult, counit, antipode,
                    basis_labels=labels or [f"g{i}" for i in range(n)],
                    is_cocommutative=True,
                    is_commutative=gtables.is_abelian(table))


def primitive_truncated(p, F, label="x"):
    """k[x]/(x^p) with x primitive; finite-dimensional stand-in for an
    enveloping algebra in characteristic p."""
    if F.char != p:
        raise CharMismatch(f"field has characteristic {F.char}, need {p}")
    n = p
    mult = [[(_basis_vec(F, n, i + j) if i + j < n else [F.zero] * n)
             for j in range(n)] for i in range(n)]
    comult = []
    binom = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        binom[i][0] = 1
        for j in range(1, i + 1):
            binom[i][j] = binom[i - 1][j - 1] + (binom[i - 1][j] if j <= i - 1 else 0)
    for i in range(n):
        terms = []
        for j in range(i + 1):
            c = F.from_int(binom[i][j])
            if c != F.zero:
                terms.append((j, i - j, c))
        comult.append(terms)
    counit = [F.one] + [F.zero] * (n - 1)
    antipode = []
    for i in range(n):
        v = [F.zero] * n
        v[i] = F.from_int((-1) ** i)
        antipode.append(v)
    return HopfData(F, mult, _basis_vec(F, n, 0), comult, counit, antipode,
                    basis_labels=["1"] + [f"{label}^{i}" if i > 1 else label
                                          for i in range(1, n)],
                    is_cocommutative=True, is_commutative=True)


def tensor_hopf(H1, H2):
    """Tensor-product Hopf algebra on the row-major pair basis."""
    if H1.field is not H2.field and H1.field.spec != H2.field.spec:
        raise FieldMismatch("tensor factors over different fields")
    F = H1.field
    n1, n2 = H1.dim, H2.dim
    n = n1 * n2

    def idx(a, b):
        return a * n2 + b

    mult = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    for a1 in range(n1):
        for b1 in range(n2):
            for a2 in range(n1):
                for b2 in range(n2):
                    va = H1.mult[a1][a2]
                    vb = H2.mult[b1][b2]
                    row = mult[idx(a1, b1)][idx(a2, b2)]
                    for a in range(n1):
                        if va[a] == F.zero:
                            continue
                        for b in range(n2):
                            if vb[b] != F.zero:
                                row[idx(a, b)] = F.add(row[idx(a, b)],
                                                       F.mul(va[a], vb[b]))
    unit = [F.zero] * n
    for a in range(n1):
        for b in range(n2):
            unit[idx(a, b)] = F.mul(H1.unit[a], H2.unit[b])
    comult = []
    for a in range(n1):
        for b in range(n2):
            terms = []
            for j1, k1, c1 in H1.comult[a]:
                for j2, k2, c2 in H2.comult[b]:
                    terms.append((idx(j1, j2), idx(k1, k2), F.mul(c1, c2)))
            comult.append(_normalize_terms(F, terms))
    counit = [F.mul(H1.counit[a], H2.counit[b]) for a in range(n1) for b in range(n2)]
    antipode = [[F.zero] * n for _ in range(n)]
    for a in range(n1):
        for b in range(n2):
            sa = H1.antipode[a]
            sb = H2.antipode[b]
            row = antipode[idx(a, b)]
            for a2 in range(n1):
                if sa[a2] == F.zero:
                    continue
                for b2 in range(n2):
                    if sb[b2] != F.zero:
                        row[idx(a2, b2)] = F.mul(sa[a2], sb[b2])
    labels = [f"{la}(x){lb}" for la in H1.basis_labels for lb in H2.basis_labels]
    return HopfData(F, mult, unit, comult, counit, antipode, basis_labels=labels,
                    is_cocommutative=H1.is_cocommutative and H2.is_cocommutative,
                    is_commutative=H1.is_commutative and H2.is_commutative)


def antipode_from_bialgebra(H):
    """Solve S * id = unit.counit for the antipode matrix and verify the
    other side; None-equivalent failure raises NoAntipode."""
    F, n = H.field, H.dim
    # unknowns S[i][k] (n^2), equations per basis element and output coord
    rows = []
    rhs = []
    for i in range(n):
        for t in range(n):
            row = [F.zero] * (n * n)
            for j, k, c in H.comult[i]:
                # S(x_j) x_k: contribution of unknown S[j][a] via mult[a][k][t]
                for a in range(n):
                    coeff = F.mul(c, H.mult[a][k][t])
                    if coeff != F.zero:
                        row[j * n + a] = F.add(row[j * n + a], coeff)
            rows.append(row)
            rhs.append(F.mul(H.counit[i], H.unit[t]))
    sol = solve_linear(F, rows, rhs)
    if sol is None:
        raise NoAntipode("convolution system S * id = unit.counit is unsolvable")
    S = [[sol[i * n + a] for a in range(n)] for i in range(n)]
    # verify id * S = unit.counit as well
    probe = HopfData(F, H.mult, H.unit, H.comult, H.counit, S,
                     basis_labels=H.basis_labels)
    ok, w = _antipode_check(probe)
    if not ok:
        raise NoAntipode(f"one-sided inverse only (witness {w})")
    return S


def strip_antipode(H):
    """A copy with a zeroed antipode slot (for recovery round trips)."""
    F, n = H.field, H.dim
    return HopfData(F, H.mult, H.unit, H.comult, H.counit,
                    [[F.zero] * n for _ in range(n)], basis_labels=H.basis_labels,
                    is_cocommutative=H.is_cocommutative, is_commutative=H.is_commutative)


def permutation_isomorphism(H1, H2):
    """A basis permutation pi with pi(H1) = H2 tensor-for-tensor, or None.

    Exhaustive over permutations (guarded); sufficient for comparing group
    algebras and small tensor constructions.
    """
    from itertools import permutations
    if H1.dim != H2.dim or H1.field.spec != H2.field.spec:
        return None
    n = H1.dim
    if n > 8:
        raise DimensionMismatch("permutation search supported for dim <= 8")
    F = H1.field
    for pi in permutations(range(n)):
        if all(H1.counit[i] == H2.counit[pi[i]] for i in range(n)) and \
           [H1.unit[i] for i in range(n)] == [H2.unit[pi[i]] for i in range(n)]:
            if _perm_matches(F, H1, H2, pi):
                return list(pi)
    return None


def _perm_matches(F, H1, H2, pi):
    n = H1.dim
    for i in range(n):
        for j in range(n):
            v = H1.mult[i][j]
            w = H2.mult[pi[i]][pi[j]]
            for k in range(n):
                if v[k] != w[pi[k]]:
                    return False
    for i in range(n):
        t1 = _normalize_terms(F, [(pi[j], pi[k], c) for j, k, c in H1.comult[i]])
        t2 = _normalize_terms(F, H2.comult[pi[i]])
        if t1 != t2:
            return False
    for i in range(n):
        for k in range(n):
            if H1.antipode[i][k] != H2.antipode[pi[i]][pi[k]]:
                return False
    return True


def ground_algebra(F):
    """The ground field as a 1-dimensional commutative algebra."""
    return AlgebraData(F, [[[F.one]]], [F.one], basis_labels=["1"],
                       is_commutative=True)


def truncated_polynomial_algebra(F, d, label="y"):
    """k[y]/(y^d) as a commutative algebra (no coalgebra structure)."""
    n = d
    mult = [[(_basis_vec(F, n, i + j) if i + j < n else [F.zero] * n)
             for j in range(n)] for i in range(n)]
    return AlgebraData(F, mult, _basis_vec(F, n, 0),
                       basis_labels=["1"] + [f"{label}^{i}" if i > 1 else label
                                             for i in range(1, n)],
                       is_commutative=True)
