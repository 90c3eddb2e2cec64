"""Exact scalar arithmetic: F_p, F_{p^m} and Q.

Element encodings are canonical and hashable:

* prime field      -- int in [0, p)
* prime power      -- int in [0, p^m), base-p digits = polynomial coeffs
                      (little endian) modulo the supplied irreducible poly
* rationals        -- fractions.Fraction (always reduced)

No floating point anywhere.  Finite fields precompute full operation
tables, so every scalar op is a list lookup in the hot loops.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .abelian import FiniteAbelianGroup
from .errors import DivisionByZero, FieldMismatch, InfiniteField, ValidationError


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "prime" | "prime_power" | "rational"
    p: int = None
    m: int = None
    modulus: tuple = None  # monic degree-m coefficients c_0..c_m over F_p

    def __post_init__(self):
        if self.kind == "prime":
            _check_prime(self.p)
        elif self.kind == "prime_power":
            _check_prime(self.p)
            if self.m is None or self.m < 1:
                raise ValidationError("prime_power needs m >= 1")
            mod = tuple(int(c) % self.p for c in self.modulus)
            if len(mod) != self.m + 1 or mod[-1] != 1:
                raise ValidationError("modulus must be monic of degree m")
            object.__setattr__(self, "modulus", mod)
            if not _poly_irreducible(mod, self.p):
                raise ValidationError(f"modulus {mod} is reducible over F_{self.p}")
        elif self.kind == "rational":
            pass
        else:
            raise ValidationError(f"unknown field kind {self.kind!r}")

    def to_json(self):
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        if self.kind == "prime_power":
            return {"kind": "prime_power", "p": self.p, "m": self.m,
                    "modulus": list(self.modulus)}
        return {"kind": "rational"}

    @staticmethod
    def from_json(obj):
        kind = obj["kind"]
        if kind == "prime":
            return FieldSpec("prime", p=int(obj["p"]))
        if kind == "prime_power":
            return FieldSpec("prime_power", p=int(obj["p"]), m=int(obj["m"]),
                             modulus=tuple(int(c) for c in obj["modulus"]))
        return FieldSpec("rational")


def _check_prime(p):
    if p is None or p < 2:
        raise ValidationError(f"{p} is not prime")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValidationError(f"{p} is not prime")
        d += 1


def _poly_mul_mod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by the monic modulus
    m = len(modulus) - 1
    for i in range(len(out) - 1, m - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(m):
                out[i - m + j] = (out[i - m + j] - c * modulus[j]) % p
    return out[:m] + [0] * (m - len(out))


def _poly_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree 1..m//2."""
    m = len(modulus) - 1
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for code in range(p ** d):
            div = _digits(code, p, d) + [1]
            if _poly_divides(div, list(modulus), p):
                return False
    return True


def _poly_divides(div, poly, p):
    poly = list(poly)
    dd = len(div) - 1
    inv_lead = pow(div[-1], p - 2, p)
    for i in range(len(poly) - 1, dd - 1, -1):
        c = (poly[i] * inv_lead) % p
        if c:
            for j in range(dd + 1):
                poly[i - dd + j] = (poly[i - dd + j] - c * div[j]) % p
    return all(c == 0 for c in poly)


def _digits(code, p, m):
    out = []
    for _ in range(m):
        out.append(code % p)
        code //= p
    return out


class Field:
    """Common interface; elements are raw canonical codes."""

    spec = None
    char = None
    order = None  # None for infinite

    def eq(self, a, b):
        return a == b

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        if self.eq(b, self.zero):
            raise DivisionByZero("division by zero")
        return self.mul(a, self.inv(b))

    def is_finite(self):
        return self.order is not None

    def elements(self):
        raise InfiniteField("cannot enumerate an infinite field")

    def units(self):
        raise InfiniteField("cannot enumerate units of an infinite field")

    def sum(self, xs):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def __repr__(self):
        return f"Field({self.spec})"


class PrimeField(Field):
    def __init__(self, spec):
        self.spec = spec
        p = spec.p
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return list(range(self.p))

    def units(self):
        return list(range(1, self.p))

    def from_int(self, n):
        return n % self.p

    def to_json(self, a):
        return int(a)

    def from_json(self, obj):
        if not isinstance(obj, int):
            raise ValidationError(f"prime field element must be an int, got {obj!r}")
        return obj % self.p


class PrimePowerField(Field):
    """F_{p^m} with full lookup tables (desk-scale orders only)."""

    MAX_TABLE = 4096

    def __init__(self, spec):
        self.spec = spec
        p, m = spec.p, spec.m
        q = p ** m
        if q > self.MAX_TABLE:
            raise ValidationError(f"field order {q} above supported envelope")
        self.p = p
        self.m = m
        self.q = q
        self.char = p
        self.order = q
        self.zero = 0
        self.one = 1
        digs = [_digits(c, p, m) for c in range(q)]
        enc = lambda poly: sum(poly[i] * p ** i for i in range(m))
        self._add = [[enc([(x + y) % p for x, y in zip(digs[a], digs[b])])
                      for b in range(q)] for a in range(q)]
        self._neg = [enc([(-x) % p for x in digs[a]]) for a in range(q)]
        self._mul = [[enc(_poly_mul_mod(digs[a], digs[b], spec.modulus, p))
                      for b in range(q)] for a in range(q)]
        self._inv = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv[a]

    def elements(self):
        return list(range(self.q))

    def units(self):
        return list(range(1, self.q))

    def from_int(self, n):
        return n % self.p  # scalars from Z land in the prime subfield

    def to_json(self, a):
        return _digits(a, self.p, self.m)

    def from_json(self, obj):
        if isinstance(obj, int):
            return obj % self.p
        coeffs = [int(c) % self.p for c in obj]
        if len(coeffs) > self.m:
            raise ValidationError("element has more coefficients than the degree")
        coeffs += [0] * (self.m - len(coeffs))
        return sum(coeffs[i] * self.p ** i for i in range(self.m))


class RationalField(Field):
    def __init__(self, spec):
        self.spec = spec
        self.char = 0
        self.order = None
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def to_json(self, a):
        return [a.numerator, a.denominator]

    def from_json(self, obj):
        if isinstance(obj, int):
            return Fraction(obj)
        num, den = obj
        return Fraction(int(num), int(den))


_FIELD_CACHE = {}


def field(spec):
    """Field instance for a spec (cached; table build happens once)."""
    if spec not in _FIELD_CACHE:
        if spec.kind == "prime":
            _FIELD_CACHE[spec] = PrimeField(spec)
        elif spec.kind == "prime_power":
            _FIELD_CACHE[spec] = PrimePowerField(spec)
        else:
            _FIELD_CACHE[spec] = RationalField(spec)
    return _FIELD_CACHE[spec]


def prime_field(p):
    return field(FieldSpec("prime", p=p))


def prime_power_field(p, m, modulus):
    return field(FieldSpec("prime_power", p=p, m=m, modulus=tuple(modulus)))


def rational_field():
    return field(FieldSpec("rational"))


# common extension fields with explicit moduli (input files may supply others)
def gf4():
    return prime_power_field(2, 2, (1, 1, 1))       # x^2 + x + 1


def gf8():
    return prime_power_field(2, 3, (1, 1, 0, 1))    # x^3 + x + 1


def gf9():
    return prime_power_field(3, 2, (1, 0, 1))       # x^2 + 1


@dataclass(frozen=True)
class FieldElement:
    """Value-with-spec wrapper for the external surface; the internal
    machinery passes raw codes plus a Field around instead."""

    spec: FieldSpec
    repr: object

    def _check(self, other):
        if self.spec != other.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.spec, field(self.spec).add(self.repr, other.repr))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.spec, field(self.spec).sub(self.repr, other.repr))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.spec, field(self.spec).mul(self.repr, other.repr))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.spec, field(self.spec).div(self.repr, other.repr))


def field_ops(a, b, op):
    """Exact field arithmetic on FieldElement values."""
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    ops = {"add": "__add__", "sub": "__sub__", "mul": "__mul__", "div": "__truediv__"}
    if op not in ops:
        raise ValidationError(f"unknown op {op!r}")
    return getattr(a, ops[op])(b)


def multiplicative_order(F, a):
    assert a != F.zero
    o = 1
    x = a
    while x != F.one:
        x = F.mul(x, a)
        o += 1
    return o


def unit_group(spec):
    """The cyclic group of units of a finite field, with a generator and
    a discrete-log table in meta."""
    F = field(spec)
    if not F.is_finite():
        raise InfiniteField("unit group of an infinite field")
    q = F.order
    n = q - 1
    gen = None
    for a in F.units():
        if multiplicative_order(F, a) == n:
            gen = a
            break
    assert gen is not None or n == 1
    dlog = {}
    x = F.one
    for e in range(n):
        dlog[x] = e
        x = F.mul(x, gen) if gen is not None else x
    factors = (n,) if n > 1 else ()
    return FiniteAbelianGroup(factors, generators=(gen,) if n > 1 else (),
                              meta={"generator": gen if n > 1 else F.one,
                                    "dlog": dlog, "order": n})


def power_class_group(spec, n):
    """k^* / (k^*)^n for a finite field k: cyclic of order gcd(n, q-1),
    with coset representatives in meta."""
    F = field(spec)
    if not F.is_finite():
        raise InfiniteField("power classes of an infinite field")
    ug = unit_group(spec)
    q1 = ug.meta["order"]
    d = math.gcd(n, q1)
    gen = ug.meta["generator"]
    reps = []
    x = F.one
    for _ in range(d):
        reps.append(x)
        x = F.mul(x, gen)
    factors = (d,) if d > 1 else ()
    return FiniteAbelianGroup(factors, generators=(reps[1],) if d > 1 else (),
                              meta={"representatives": reps,
                                    "class_of": lambda a: ug.meta["dlog"][a] % d})
