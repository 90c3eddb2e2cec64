"""Finite abelian groups in invariant-factor form.

Two presentations are supported:

* lattice style -- subgroups of Z/o_1 x ... x Z/o_n given by generator
  exponent vectors, reduced through Smith normal form (`subquotient`);
* black-box style -- a finite set of hashable elements closed under a
  commutative product (`EnumeratedAbelian`), as produced by cocycle
  enumerations.

Groups compare equal iff their invariant factors agree; that is the
canonical equality test used for all cohomology-group comparisons.
"""

from dataclasses import dataclass, field

from .errors import NotASubgroup
from .intmat import (RowLattice, _basis_solver, int_identity,
                     int_inverse_unimodular, int_vecmat, smith_normal_form)


@dataclass
class FiniteAbelianGroup:
    """d_1 | d_2 | ... | d_r with each d_i >= 2; empty tuple = trivial group."""

    invariant_factors: tuple = ()
    generators: tuple = None  # optional representative payloads, one per factor
    meta: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.invariant_factors = tuple(int(d) for d in self.invariant_factors)
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            assert b % a == 0, "invariant factor chain must divide"
        assert all(d >= 2 for d in self.invariant_factors)

    @property
    def order(self):
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def is_trivial(self):
        return not self.invariant_factors

    def __eq__(self, other):
        if isinstance(other, FiniteAbelianGroup):
            return self.invariant_factors == other.invariant_factors
        return NotImplemented

    def __hash__(self):
        return hash(self.invariant_factors)

    def __str__(self):
        if self.is_trivial:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def invariant_factors_from_diagonal(diag):
    return tuple(d for d in diag if d > 1)


class Subquotient:
    """Z/B inside an ambient Z/o_1 x ... x Z/o_n, with lifts and logs.

    `dlog(x)` maps an ambient exponent vector lying in Z to coordinates
    over the invariant factors; `lift(y)` produces a coset representative.
    """

    def __init__(self, ambient_orders, z_gens, b_gens):
        n = len(ambient_orders)
        self.n = n
        self.ambient_orders = list(ambient_orders)
        rel = [[ambient_orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
        self._zlat = RowLattice([list(g) for g in z_gens] + rel, n)
        for b in b_gens:
            if not self._zlat.contains(list(b)):
                raise NotASubgroup(f"generator {b} of B is not in Z")
        basis = self._zlat.basis  # k x n, k = rank
        k = len(basis)
        solver = _basis_solver(tuple(map(tuple, basis)), n)
        self._solver = solver
        b_rows = []
        for b in list(b_gens) + rel:
            c = solver(list(b))
            assert c is not None
            b_rows.append(c)
        if k == 0:
            self._d = []
            self._V = []
            self._Vinv = []
            self.group = FiniteAbelianGroup(())
            self._keep = []
            self._basis = basis
            return
        U, D, V = smith_normal_form(b_rows) if b_rows else (None, [[0] * k], int_identity(k))
        d = [D[i][i] if i < len(D) and i < len(D[0]) else 0 for i in range(k)]
        assert all(x != 0 for x in d), "quotient must be finite"
        self._d = d
        self._V = V
        self._Vinv = int_inverse_unimodular(V)
        self._basis = basis
        self._keep = [i for i in range(k) if d[i] > 1]
        gens = []
        for i in self._keep:
            vec = int_vecmat(self._Vinv[i], basis)
            gens.append(tuple(v % o if o else v for v, o in zip(vec, self.ambient_orders)))
        self.group = FiniteAbelianGroup(
            tuple(d[i] for i in self._keep), generators=tuple(gens))

    def dlog(self, x):
        """Coordinates of ambient vector x over the invariant factors."""
        c = self._solver(list(x))
        if c is None:
            return None
        y = int_vecmat(c, self._V)
        return tuple(y[i] % self._d[i] for i in self._keep)

    def lift(self, y):
        """An ambient representative of the class with coordinates y."""
        full = [0] * len(self._d)
        for pos, i in enumerate(self._keep):
            full[i] = y[pos]
        c = int_vecmat(full, self._Vinv)
        vec = int_vecmat(c, self._basis)
        return tuple(v % o if o else v for v, o in zip(vec, self.ambient_orders))


def subquotient(ambient_orders, z_gens, b_gens):
    """Invariant factors of Z/B plus lifted coset representatives."""
    return Subquotient(ambient_orders, z_gens, b_gens)


@dataclass
class AbelianHom:
    """Homomorphism given on generators; matrix column j = image of source
    generator j as target exponent vector."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    matrix: list  # len(target.invariant_factors) x len(source.invariant_factors)

    def __post_init__(self):
        ds = self.source.invariant_factors
        dt = self.target.invariant_factors
        for j, dj in enumerate(ds):
            for i, di in enumerate(dt):
                if (dj * self.matrix[i][j]) % di:
                    raise ValueError(
                        f"hom not well defined: d_src[{j}]*m[{i}][{j}] != 0 mod d_tgt[{i}]")

    def apply(self, y):
        dt = self.target.invariant_factors
        out = [0] * len(dt)
        for i in range(len(dt)):
            out[i] = sum(self.matrix[i][j] * y[j] for j in range(len(y))) % dt[i]
        return tuple(out)

    def is_injective(self):
        # kernel is trivial iff no nonzero source vector maps to zero
        return self.kernel_order() == 1

    def kernel_order(self):
        ds = self.source.invariant_factors
        dt = self.target.invariant_factors
        total = 0
        from itertools import product
        for y in product(*(range(d) for d in ds)):
            if all(v == 0 for v in self.apply(y)):
                total += 1
        return total if ds else 1


class EnumeratedAbelian:
    """Structure of a finite abelian group given by element enumeration.

    `elements` are hashable keys, `mul` a commutative associative product,
    `identity` the unit key.  Builds generators, a relation matrix, and a
    discrete log via incremental subgroup closure; Smith normal form turns
    the relations into invariant factors.
    """

    def __init__(self, elements, mul, identity):
        self.mul = mul
        self.identity = identity
        self.words = {identity: []}
        self.gens = []
        rel_rows = []
        universe = list(elements)
        for x in universe:
            if x in self.words:
                continue
            r = len(self.gens)
            self.gens.append(x)
            # relative order: least e >= 1 with x^e in the old subgroup
            old = dict(self.words)
            p = x
            e = 1
            while p not in old:
                p = mul(p, x)
                e += 1
            rel = [-v for v in old[p]] + [0] * (r - len(old[p])) + [e]
            rel_rows.append(rel)
            new_words = dict(old)
            coset = x
            for j in range(1, e):
                for s, w in old.items():
                    key = mul(coset, s)
                    if key not in new_words:
                        new_words[key] = w + [0] * (r - len(w)) + [j]
                coset = mul(coset, x)
            self.words = new_words
        r = len(self.gens)
        self.rank = r
        self.rel_rows = [row + [0] * (r - len(row)) for row in rel_rows]
        self._finish(self.rel_rows)
        self.elements = list(self.words)

    def _finish(self, rel_rows):
        r = self.rank
        if r == 0:
            self._d, self._V, self._keep = [], [], []
            self.group = FiniteAbelianGroup(())
            return
        U, D, V = smith_normal_form(rel_rows)
        d = [D[i][i] for i in range(r)]
        assert all(x != 0 for x in d)
        self._d = d
        self._V = V
        self._keep = [i for i in range(r) if d[i] > 1]
        Vinv = int_inverse_unimodular(V)
        gens = []
        for i in self._keep:
            gens.append(self._power_word(Vinv[i]))
        self.group = FiniteAbelianGroup(
            tuple(d[i] for i in self._keep), generators=tuple(gens))

    def _power_word(self, word):
        out = self.identity
        for g, e in zip(self.gens, word):
            out = self.mul(out, self._pow(g, e))
        return out

    def _pow(self, g, e):
        # finite group: negative exponents via the element order
        if e < 0:
            o = self.element_order(g)
            e %= o
        out = self.identity
        for _ in range(e):
            out = self.mul(out, g)
        return out

    def element_order(self, g):
        o = 1
        p = g
        while p != self.identity:
            p = self.mul(p, g)
            o += 1
        return o

    def word(self, x):
        w = self.words.get(x)
        if w is None:
            return None
        return w + [0] * (self.rank - len(w))

    def dlog(self, x):
        """Coordinates of x over the invariant-factor generators."""
        w = self.word(x)
        if w is None:
            return None
        y = int_vecmat(w, self._V)
        return tuple(y[i] % self._d[i] for i in self._keep)

    def quotient(self, b_elements):
        """The quotient by the subgroup generated by b_elements."""
        return QuotientedAbelian(self, b_elements)


class QuotientedAbelian:
    """Quotient of an EnumeratedAbelian by a subgroup of its elements."""

    def __init__(self, parent, b_elements):
        self.parent = parent
        r = parent.rank
        rows = [list(row) for row in parent.rel_rows]
        for b in b_elements:
            w = parent.word(b)
            assert w is not None, "subgroup element not in enumerated group"
            rows.append(w)
        if r == 0:
            self._d, self._V, self._keep = [], [], []
            self.group = FiniteAbelianGroup(())
        else:
            U, D, V = smith_normal_form(rows)
            d = [D[i][i] for i in range(r)]
            assert all(x != 0 for x in d)
            self._d = d
            self._V = V
            self._keep = [i for i in range(r) if d[i] > 1]
            self.group = FiniteAbelianGroup(tuple(d[i] for i in self._keep))
        self._reps = {}
        for x in parent.elements:
            y = self.dlog(x)
            self._reps.setdefault(y, x)
        if self.group.generators is None:
            gens = []
            for pos, i in enumerate(self._keep):
                unit = tuple(1 if p == pos else 0 for p in range(len(self._keep)))
                gens.append(self._reps[unit])
            self.group = FiniteAbelianGroup(self.group.invariant_factors,
                                            generators=tuple(gens))

    def dlog(self, x):
        w = self.parent.word(x)
        if w is None:
            return None
        y = int_vecmat(w, self._V)
        return tuple(y[i] % self._d[i] for i in self._keep)

    def class_rep(self, y):
        return self._reps.get(tuple(y))

    @property
    def classes(self):
        return dict(self._reps)
