"""Finite extensions K of F_q(T) and splitting types of their primes.

An extension is given by a monic polynomial g(x) over F_q[T], irreducible
over F_q(T) (certified at construction) and separable.  Splitting data at
a monic irreducible p of F_q[T] comes from factoring g over the residue
field F_q[T]/(p); primes where the order F_q[T][x]/(g) is not maximal
(index divisors) are refused here and surfaced as `unknown` in tables --
resolving them is the job of the group-side reconstruction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from random import Random

from .ffpoly import (
    FFError,
    FqField,
    FqPoly,
    ParseError,
    factor,
    is_irreducible,
    is_prime,
    irreducibles_up_to,
    parse_expression,
    poly_str,
)
from .permgrp import SplittingType


class SplittingError(FFError):
    pass


class InseparablePolynomial(SplittingError):
    pass


class IndexDivisor(SplittingError):
    pass


class NotIrreducible(SplittingError):
    pass


class UncertifiedIrreducibility(SplittingError):
    pass


# ---------------------------------------------------------------------------
# Polynomials in x over F_q[T]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XPoly:
    """Dense polynomial in x with FqPoly coefficients, little-endian."""

    base: FqField
    coeffs: tuple  # FqPoly entries

    @staticmethod
    def make(base, coeffs):
        c = list(coeffs)
        while c and c[-1].is_zero:
            c.pop()
        return XPoly(base, tuple(c))

    @staticmethod
    def zero(base):
        return XPoly(base, ())

    @staticmethod
    def const(base, f: FqPoly):
        return XPoly.make(base, [f])

    @staticmethod
    def gen(base):
        return XPoly(base, (FqPoly.zero(base), FqPoly.one(base)))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == FqPoly.one(self.base)

    def __add__(self, other):
        z = FqPoly.zero(self.base)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return XPoly.make(self.base, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return XPoly(self.base, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return XPoly.zero(self.base)
        z = FqPoly.zero(self.base)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return XPoly.make(self.base, out)

    def __pow__(self, e):
        result = XPoly.const(self.base, FqPoly.one(self.base))
        b = self
        while e:
            if e & 1:
                result = result * b
            b = b * b
            e >>= 1
        return result

    def deriv(self):
        p = self.base.p
        out = []
        for i in range(1, len(self.coeffs)):
            scalar = FqPoly.from_ints(self.base, [i % p])
            out.append(self.coeffs[i] * scalar)
        return XPoly.make(self.base, out)

    def eval_poly(self, r: FqPoly) -> FqPoly:
        """Evaluate at an element of F_q[T]."""
        acc = FqPoly.zero(self.base)
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return acc

    def __str__(self):
        if self.is_zero:
            return "0"
        one = FqPoly.one(self.base)
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            ctext = poly_str(c)
            if i == 0:
                parts.append(f"({ctext})" if ("+" in ctext or "*" in ctext or "^" in ctext) else ctext)
            else:
                head = "x" if i == 1 else f"x^{i}"
                parts.append(head if c == one else f"({ctext})*{head}")
        return "+".join(parts)


def parse_xpoly(base: FqField, text: str) -> XPoly:
    """Parse a literal in variables x, T (and u for non-prime q)."""
    env = {
        "x": XPoly.gen(base),
        "T": XPoly.const(base, FqPoly.gen(base)),
    }
    if base.k > 1:
        env["u"] = XPoly.const(base, FqPoly.const(base, base.gen))
    return parse_expression(text, env, lambda i: XPoly.const(base, FqPoly.from_ints(base, [i])))


def resultant(f: XPoly, g: XPoly) -> FqPoly:
    """Res_x(f, g) via fraction-free Bareiss elimination on the Sylvester matrix."""
    base = f.base
    n, m = f.degree, g.degree
    zero, one = FqPoly.zero(base), FqPoly.one(base)
    if n < 0 or m < 0:
        return zero
    if n == 0 and m == 0:
        return one
    size = n + m
    rows = []
    frow = list(reversed(f.coeffs))
    grow = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([zero] * i + frow + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + grow + [zero] * (size - m - 1 - i))
    sign = 1
    prev = one
    for k in range(size - 1):
        if rows[k][k].is_zero:
            piv = next((r for r in range(k + 1, size) if not rows[r][k].is_zero), None)
            if piv is None:
                return zero
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                quot, rem = divmod(num, prev)
                if not rem.is_zero:
                    raise FFError("Bareiss exact division failed")  # cannot happen in a domain
                rows[i][j] = quot
            rows[i][k] = zero
        prev = rows[k][k]
    det = rows[size - 1][size - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# Residue fields F_q[T]/(p): same field protocol as FqField
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueField:
    """F_{q^m} realized directly as the quotient F_q[T]/(p), deg p = m."""

    base: FqField
    p_mod: FqPoly

    def __post_init__(self):
        if not (self.p_mod.is_monic and is_irreducible(self.p_mod)):
            raise SplittingError("residue modulus must be monic irreducible")

    @property
    def p(self):
        return self.base.p

    @property
    def m(self):
        return self.p_mod.degree

    @property
    def q(self):
        return self.base.q**self.m

    @property
    def deg_over_prime(self):
        return self.base.k * self.m

    def elem(self, f: FqPoly):
        return ResidueElem(self, f % self.p_mod)

    @property
    def zero(self):
        return self.elem(FqPoly.zero(self.base))

    @property
    def one(self):
        return self.elem(FqPoly.one(self.base))

    def random_elem(self, rng: Random):
        coeffs = [self.base.from_int(rng.randrange(self.base.q)) for _ in range(self.m)]
        return self.elem(FqPoly.make(self.base, coeffs))

    def __repr__(self):
        return f"GF({self.base.q})[T]/({self.p_mod})"


@dataclass(frozen=True, slots=True)
class ResidueElem:
    field: ResidueField
    rep: FqPoly

    def __add__(self, other):
        return ResidueElem(self.field, self.rep + other.rep)

    def __sub__(self, other):
        return ResidueElem(self.field, self.rep - other.rep)

    def __neg__(self):
        return ResidueElem(self.field, -self.rep)

    def __mul__(self, other):
        return ResidueElem(self.field, (self.rep * other.rep) % self.field.p_mod)

    def inv(self):
        if not self:
            raise FFError("inverse of zero in residue field")
        return self ** (self.field.q - 2)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one
        b = self
        while e:
            if e & 1:
                result = result * b
            b = b * b
            e >>= 1
        return result

    def __bool__(self):
        return not self.rep.is_zero

    @property
    def ival(self):
        v = 0
        qb = self.field.base.q
        for c in reversed(self.rep.coeffs):
            v = v * qb + c.ival
        return v

    def __lt__(self, other):
        return self.ival < other.ival

    def __str__(self):
        return poly_str(self.rep)

    def __repr__(self):
        return f"({self.rep}) mod ({self.field.p_mod})"


# ---------------------------------------------------------------------------
# Function field extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeAboveData:
    """Residue degree and ramification index of one prime above p."""

    f: int
    e: int


@dataclass(frozen=True, eq=False)
class FunctionFieldExt:
    base: FqField
    g: XPoly

    def __eq__(self, other):
        return (
            isinstance(other, FunctionFieldExt)
            and self.base == other.base
            and self.g == other.g
        )

    def __hash__(self):
        return hash((self.base, self.g))

    @staticmethod
    def make(base: FqField, g) -> "FunctionFieldExt":
        if isinstance(g, str):
            g = parse_xpoly(base, g)
        if g.degree < 1 or not g.is_monic:
            raise SplittingError("defining polynomial must be monic of degree >= 1 in x")
        K = FunctionFieldExt(base, g)
        if g.degree >= 2:
            disc = K.discriminant
            if disc.is_zero:
                raise InseparablePolynomial("defining polynomial is not separable")
            _certify_irreducible(base, g, disc)
        return K

    @property
    def n(self):
        return self.g.degree

    @cached_property
    def discriminant(self) -> FqPoly:
        """disc_x(g) up to a unit, as Res_x(g, dg/dx)."""
        if self.n == 1:
            return FqPoly.one(self.base)
        d = self.g.deriv()
        if d.is_zero:
            raise InseparablePolynomial("derivative vanishes")
        return resultant(self.g, d)

    def __repr__(self):
        return f"FunctionFieldExt(q={self.base.q}, g={self.g})"


def discriminant(K: FunctionFieldExt) -> FqPoly:
    return K.discriminant


_ROOT_SEARCH_CAP = 200_000


def _monic_divisors(f: FqPoly):
    """All monic divisors of a nonzero polynomial, via its factorization."""
    fac = factor(f)
    total = 1
    for _, m in fac:
        total *= m + 1
    if total > _ROOT_SEARCH_CAP:
        raise UncertifiedIrreducibility("too many divisors to enumerate")
    divisors = [FqPoly.one(f.field)]
    for g, m in fac:
        divisors = [d * g**j for d in divisors for j in range(m + 1)]
    return divisors


def _integral_roots(base, g: XPoly):
    """Roots of g in F_q[T]; complete because F_q[T] is integrally closed.

    Any root of a monic g divides the constant term, so candidates are
    unit multiples of its monic divisors (plus zero when c0 = 0).
    """
    c0 = g.coeffs[0]
    roots = []
    if c0.is_zero:
        roots.append(FqPoly.zero(base))
        return roots  # one root suffices as a reducibility witness
    units = [base.from_int(i) for i in range(1, base.q)]
    for d in _monic_divisors(c0):
        for lam in units:
            r = d.scale(lam)
            if g.eval_poly(r).is_zero:
                roots.append(r)
    return roots


def _reduce_mod(base, g: XPoly, R: ResidueField) -> FqPoly:
    return FqPoly.make(R, [R.elem(c) for c in g.coeffs])


def _certify_irreducible(base, g, disc):
    """Certify irreducibility over F_q(T) or raise.

    Cheap certificates first (irreducible reduction at a good prime,
    Eisenstein), then a complete root search; degree <= 3 is settled by
    roots alone, degree 4 additionally searches for a quadratic factor
    under the coefficient degree bound, degree >= 5 without a certificate
    is rejected as uncertified.
    """
    n = g.degree
    for p in irreducibles_up_to(base, min(3, max(1, n - 1))):
        if (disc % p).is_zero:
            continue
        R = ResidueField(base, p)
        gbar = _reduce_mod(base, g, R)
        if is_irreducible(gbar):
            return
    c0 = g.coeffs[0]
    if not c0.is_zero:
        for p, _ in factor(c0):
            if all((c % p).is_zero for c in g.coeffs[:-1]) and not (
                (c0 // p) % p
            ).is_zero:
                return  # Eisenstein at p
    if _integral_roots(base, g):
        raise NotIrreducible("defining polynomial has a root in F_q[T]")
    if n <= 3:
        return  # no root => no factor of degree <= 1 => irreducible
    if n == 4:
        if _has_quadratic_factor(base, g):
            raise NotIrreducible("defining polynomial has a quadratic factor")
        return
    raise UncertifiedIrreducibility(
        f"cannot certify irreducibility of degree-{n} polynomial at desk scale"
    )


def _has_quadratic_factor(base, g: XPoly) -> bool:
    """Exhaustive monic quadratic factor search for a monic quartic.

    The constant term of a factor divides c0 up to a unit; the linear
    coefficient is bounded in degree by the largest coefficient degree
    of g (root size bound).
    """
    c0 = g.coeffs[0]
    if c0.is_zero:
        return True  # x divides g
    bound = max(c.degree for c in g.coeffs if not c.is_zero)
    if base.q ** (bound + 2) > _ROOT_SEARCH_CAP:
        raise UncertifiedIrreducibility("quadratic factor search space too large")
    units = [base.from_int(i) for i in range(1, base.q)]
    b_cands = [d.scale(lam) for d in _monic_divisors(c0) for lam in units]
    a_cands = [_poly_from_index(base, num, bound + 1) for num in range(base.q ** (bound + 2))]
    x = XPoly.gen(base)
    for b in b_cands:
        for a in a_cands:
            cand = (x * x) + XPoly.const(base, a) * x + XPoly.const(base, b)
            if _xpoly_divmod(g, cand)[1].is_zero:
                return True
    return False


def _poly_from_index(base, num, length):
    coeffs = []
    for _ in range(length):
        coeffs.append(base.from_int(num % base.q))
        num //= base.q
    return FqPoly.make(base, coeffs)


def _xpoly_divmod(f: XPoly, g: XPoly):
    """Division by a monic divisor candidate; exact in F_q[T][x] iff rem = 0."""
    base = f.base
    rem = list(f.coeffs)
    db = g.degree
    zero = FqPoly.zero(base)
    quot = [zero] * max(0, len(rem) - db)
    while len(rem) > db:
        while rem and rem[-1].is_zero:
            rem.pop()
        if len(rem) <= db:
            break
        c = rem[-1]
        shift = len(rem) - db - 1
        quot[shift] = c
        for i, y in enumerate(g.coeffs):
            rem[shift + i] = rem[shift + i] - c * y
    return XPoly.make(base, quot), XPoly.make(base, rem)


# ---------------------------------------------------------------------------
# Splitting types of primes
# ---------------------------------------------------------------------------

def splitting_type_of_prime(K: FunctionFieldExt, p: FqPoly, seed: int = 0):
    """Factor g over F_q[T]/(p): residue degrees and ramification indices.

    Returns (SplittingType, list of PrimeAboveData).  Raises IndexDivisor
    when the factorization is not squarefree and p^2 divides the
    discriminant (Kummer-Dedekind no longer applies; the splitting type
    must then come from the group-side reconstruction).
    """
    if not (p.is_monic and is_irreducible(p)):
        raise SplittingError("p must be a monic irreducible of F_q[T]")
    R = ResidueField(K.base, p)
    gbar = _reduce_mod(K.base, K.g, R)
    if gbar.degree != K.n:
        raise SplittingError("leading coefficient vanished mod p")  # impossible: g monic
    facs = factor(gbar, seed=seed)
    if any(m > 1 for _, m in facs):
        disc = K.discriminant
        if (disc % p).is_zero and ((disc // p) % p).is_zero:
            raise IndexDivisor(f"p = {p} may divide the index; group data required")
    data = [PrimeAboveData(f=h.degree, e=m) for h, m in facs]
    assert sum(d.e * d.f for d in data) == K.n
    stype = SplittingType.of(d.f for d in data)
    return stype, data


def norm_of_prime(K: FunctionFieldExt, p: FqPoly, data: PrimeAboveData) -> FqPoly:
    """N(P) = p^f as a polynomial of F_q[T]."""
    return p**data.f


def splitting_table(K: FunctionFieldExt, degree_bound: int, seed: int = 0):
    """Splitting types at every monic irreducible p with deg p <= bound.

    Index divisors are recorded as `unknown` (None) rather than omitted.
    """
    from .goss import EulerFactorTable

    if degree_bound < 1:
        raise SplittingError("degree bound must be >= 1")
    entries = {}
    above = {}
    for p in irreducibles_up_to(K.base, degree_bound):
        try:
            stype, data = splitting_type_of_prime(K, p, seed=seed)
            entries[p] = stype
            above[p] = tuple(data)
        except IndexDivisor:
            entries[p] = None
            above[p] = None
    return EulerFactorTable(
        q=K.base.q, g_text=str(K.g), bound=degree_bound, entries=entries, above=above
    )


# ---------------------------------------------------------------------------
# Field input files
# ---------------------------------------------------------------------------

def parse_field_file(text: str) -> FunctionFieldExt:
    """Parse `q=3` / `g = x^2 - T` field descriptions."""
    q = None
    g_text = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if key == "q":
            q = int(value)
        elif key == "g":
            g_text = value.strip()
        else:
            raise ParseError(f"unknown field-file key {key!r}")
    if q is None or g_text is None:
        raise ParseError("field file must define q and g")
    base = field_of_order(q)
    return FunctionFieldExt.make(base, g_text)


def field_of_order(q: int) -> FqField:
    """F_q with the canonical (smallest) modulus, for q a prime power."""
    for p in range(2, q + 1):
        if not is_prime(p):
            continue
        k = 0
        m = q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1 and k >= 1:
            return FqField(p, k)
        if q % p == 0:
            break
    raise FFError(f"{q} is not a prime power")
