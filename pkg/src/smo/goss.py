"""Euler-factor tables for the Goss zeta function and its Teichmuller lift.

Euler factors are kept formal in the exponent s: a factor is determined
by the multiset of norms p^f it involves, so two factors are equal
exactly when those multisets agree.  The lifted version wraps each norm
in the multiplicative symbol [.]; the symbolic Witt layer knows only the
law [f][g] = [fg], which is all the strong-multiplicity-one comparison
uses.  Numeric Teichmuller lifts are provided on the constant field,
where they are classically computable in Z_q to finite precision.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .ffpoly import FFError, FqElem, FqPoly, poly_gcd, poly_str


class GossError(FFError):
    pass


class UnknownType(GossError):
    pass


class BoundMismatch(GossError):
    pass


class ZeroInput(GossError):
    pass


# ---------------------------------------------------------------------------
# Euler factors and tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerFactor:
    """A formal product prod (1 - N^{-s})^{-m} over a norm multiset.

    `norms` is a sorted tuple of (norm text, multiplicity); equality of
    factors is equality of the norm multisets.  `lifted` renders each
    norm through the Teichmuller symbol [.] instead of plain parentheses.
    """

    norms: tuple
    lifted: bool = False

    def __str__(self):
        parts = []
        for text, mult in self.norms:
            wrapped = f"[{text}]" if self.lifted else f"({text})"
            parts.append(f"(1 - {wrapped}^{{-s}})^{{-{mult}}}")
        return " * ".join(parts)


def goss_euler_factor(p: FqPoly, stype) -> EulerFactor:
    """Euler factor of zeta^[p] above p: one (1 - (p^f)^{-s})^{-1} per prime."""
    if stype is None:
        raise UnknownType(f"splitting type above {p} is unknown")
    norms = Counter(poly_str(p**f) for f in stype)
    return EulerFactor(tuple(sorted(norms.items())), lifted=False)


def lifted_euler_factor(p: FqPoly, stype) -> EulerFactor:
    """Euler factor of zeta^[0]: norms passed through the Teichmuller symbol."""
    if stype is None:
        raise UnknownType(f"splitting type above {p} is unknown")
    norms = Counter(poly_str(p**f) for f in stype)
    return EulerFactor(tuple(sorted(norms.items())), lifted=True)


@dataclass
class EulerFactorTable:
    """Ordered map from monic irreducibles of degree <= bound to splitting types.

    `entries[p]` is a SplittingType or None for `unknown` (index divisor).
    `above` optionally carries the field-side ramification data.
    """

    q: int
    g_text: str
    bound: int
    entries: dict
    above: dict = field(default_factory=dict)

    def known_items(self):
        return [(p, st) for p, st in self.entries.items() if st is not None]

    def unknown_primes(self):
        return [p for p, st in self.entries.items() if st is None]

    def render_lines(self, lifted: bool = False):
        """Serialization: one `p=<poly> :: <factor>` line per prime."""
        make = lifted_euler_factor if lifted else goss_euler_factor
        lines = []
        for p, st in self.entries.items():
            if st is None:
                lines.append(f"p={poly_str(p)} :: unknown")
            else:
                lines.append(f"p={poly_str(p)} :: {make(p, st)}")
        return lines


@dataclass(frozen=True)
class CompareReport:
    verdict: str  # IDENTICAL | DIFFER | INCONCLUSIVE
    differing: tuple  # (p, type_a, type_b) at primes where both known and unequal
    unknowns: tuple   # primes unknown in either table

    @property
    def first_witness(self):
        return self.differing[0] if self.differing else None

    def render_lines(self):
        lines = [f"verdict: {self.verdict}"]
        for p, a, b in self.differing:
            lines.append(f"differ at p={poly_str(p)}: {a} vs {b}")
        for p in self.unknowns:
            lines.append(f"unknown at p={poly_str(p)}")
        if self.first_witness is not None:
            p, a, b = self.first_witness
            lines.append(f"first witness: p={poly_str(p)} ({a} vs {b})")
        return lines


def compare_tables(t1: EulerFactorTable, t2: EulerFactorTable) -> CompareReport:
    """Three-valued comparison of two splitting-type tables over the same window."""
    if t1.q != t2.q or t1.bound != t2.bound:
        raise BoundMismatch("tables must share q and the degree bound")
    keys1 = list(t1.entries)
    keys2 = list(t2.entries)
    if [poly_str(p) for p in keys1] != [poly_str(p) for p in keys2]:
        raise BoundMismatch("tables index different prime sets")
    differing = []
    unknowns = []
    for p, p2 in zip(keys1, keys2):
        a, b = t1.entries[p], t2.entries[p2]
        if a is None or b is None:
            unknowns.append(p)
        elif a != b:
            differing.append((p, a, b))
    if differing:
        verdict = "DIFFER"
    elif unknowns:
        verdict = "INCONCLUSIVE"
    else:
        verdict = "IDENTICAL"
    return CompareReport(verdict, tuple(differing), tuple(unknowns))


# ---------------------------------------------------------------------------
# Symbolic Witt layer: free multiplicative lift of F_q(T)^*
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatFunc:
    """Reduced fraction of polynomials with monic denominator."""

    num: FqPoly
    den: FqPoly

    @staticmethod
    def make(num: FqPoly, den: FqPoly = None) -> "RatFunc":
        if den is None:
            den = FqPoly.one(num.field)
        if den.is_zero:
            raise ZeroInput("zero denominator")
        if num.is_zero:
            raise ZeroInput("Witt symbols are indexed by nonzero functions")
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        unit = den.lc.inv()
        return RatFunc(num.scale(unit), den.scale(unit))

    def __mul__(self, other):
        return RatFunc.make(self.num * other.num, self.den * other.den)

    @property
    def is_one(self):
        return self.den.degree == 0 and self.num == FqPoly.one(self.num.field)

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def __str__(self):
        if self.den.degree == 0:
            return poly_str(self.num)
        return f"{poly_str(self.num)}/{poly_str(self.den)}"


@dataclass(frozen=True)
class SymbolicWittElement:
    """Finite formal Z-linear combination of symbols [f], f in F_q(T)^*.

    The only law is multiplicativity on symbols: [f].[g] = [fg].  Distinct
    reduced fractions never collapse, so the representation is free.
    """

    terms: tuple  # sorted ((RatFunc, coeff) ...), zero coefficients pruned

    @staticmethod
    def of(pairs) -> "SymbolicWittElement":
        acc = {}
        for f, c in pairs:
            acc[f] = acc.get(f, 0) + c
        terms = tuple(sorted(
            ((f, c) for f, c in acc.items() if c != 0),
            key=lambda t: t[0].sort_key(),
        ))
        return SymbolicWittElement(terms)

    @staticmethod
    def symbol(f: RatFunc) -> "SymbolicWittElement":
        return SymbolicWittElement.of([(f, 1)])

    def __add__(self, other):
        return SymbolicWittElement.of(self.terms + other.terms)

    def __neg__(self):
        return SymbolicWittElement.of([(f, -c) for f, c in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = []
        for f1, c1 in self.terms:
            for f2, c2 in other.terms:
                out.append((f1 * f2, c1 * c2))
        return SymbolicWittElement.of(out)

    @property
    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for f, c in self.terms:
            if c == 1:
                parts.append(f"[{f}]")
            elif c == -1:
                parts.append(f"-[{f}]")
            else:
                parts.append(f"{c}*[{f}]")
        return "+".join(parts).replace("+-", "-")


def witt_symbol(num: FqPoly, den: FqPoly = None) -> SymbolicWittElement:
    return SymbolicWittElement.symbol(RatFunc.make(num, den))


# ---------------------------------------------------------------------------
# Numeric Teichmuller lifts of constants, in Z_q to precision p^k
# ---------------------------------------------------------------------------

def _zq_reduce(coeffs, modulus, pk):
    """Reduce an int list modulo the (monic, lifted) modulus and p^k."""
    c = [v % pk for v in coeffs]
    r = len(modulus) - 1
    for i in range(len(c) - 1, r - 1, -1):
        top = c[i]
        if top:
            c[i] = 0
            for j in range(r):
                c[i - r + j] = (c[i - r + j] - top * modulus[j]) % pk
    c = c[:r] + [0] * max(0, r - len(c))
    return c[:r]


def _zq_mul(a, b, modulus, pk):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zq_reduce(out, modulus, pk)


def _zq_pow(a, e, modulus, pk):
    result = _zq_reduce([1], modulus, pk)
    base = list(a)
    while e:
        if e & 1:
            result = _zq_mul(result, base, modulus, pk)
        base = _zq_mul(base, base, modulus, pk)
        e >>= 1
    return result


@dataclass(frozen=True)
class PadicElem:
    """Element of Z_q = Z_p[w]/(modulus) to precision p^k, q = p^r."""

    p: int
    k: int
    r: int
    modulus: tuple  # monic int lift of the F_q modulus, length r+1
    coeffs: tuple   # r coordinates in Z/p^k

    @property
    def pk(self):
        return self.p**self.k

    def __mul__(self, other):
        if (self.p, self.k, self.r, self.modulus) != (other.p, other.k, other.r, other.modulus):
            raise GossError("p-adic elements from different rings")
        return PadicElem(
            self.p, self.k, self.r, self.modulus,
            tuple(_zq_mul(list(self.coeffs), list(other.coeffs), list(self.modulus), self.pk)),
        )

    def __pow__(self, e):
        return PadicElem(
            self.p, self.k, self.r, self.modulus,
            tuple(_zq_pow(list(self.coeffs), e, list(self.modulus), self.pk)),
        )

    def reduction(self):
        """Coordinates mod p (the image back in F_q)."""
        return tuple(c % self.p for c in self.coeffs)

    def digits(self):
        """Base-p digit list per coordinate."""
        out = []
        for c in self.coeffs:
            ds = []
            for _ in range(self.k):
                ds.append(c % self.p)
                c //= self.p
            out.append(ds)
        return out

    def __str__(self):
        ds = self.digits()
        if self.r == 1:
            return "[" + ",".join(map(str, ds[0])) + "]"
        return "[" + ",".join("[" + ",".join(map(str, d)) + "]" for d in ds) + "]"


def teichmuller_lift_const(a: FqElem, precision: int) -> PadicElem:
    """The unique w = a mod p with w^(q-1) = 1 in Z_q to precision p^k.

    Computed by iterating the q-power map on a naive lift until it
    stabilizes; each step fixes one more p-adic digit.
    """
    if not a:
        raise ZeroInput("Teichmuller lift of zero is not defined here")
    if precision < 1:
        raise GossError("precision must be >= 1")
    fld = a.field
    p, r, q = fld.p, fld.k, fld.q
    pk = p**precision
    modulus = [int(c) for c in fld.modulus]
    b = _zq_reduce(list(a.coeffs), modulus, pk)
    for _ in range(precision + 1):
        nb = _zq_pow(b, q, modulus, pk)
        if nb == b:
            break
        b = nb
    else:
        raise GossError("Teichmuller iteration failed to stabilize")  # unreachable
    return PadicElem(p, precision, r, tuple(modulus), tuple(b))


# ---------------------------------------------------------------------------
# Truncated specialization at s = -n (numeric grounding of the sum form)
# ---------------------------------------------------------------------------

def zeta_partial_sum_at_negative_integer(K, n: int, degree_bound: int, seed: int = 0) -> FqPoly:
    """Sum of N(I)^n over ideals built from primes of the table, deg N(I) <= bound.

    Ideals are multisets of primes above the listed base primes; the sum
    lives in F_q[T] (characteristic-p collapse included).
    """
    from .splitting import splitting_table

    if n < 0:
        raise GossError("n must be a nonnegative integer")
    table = splitting_table(K, degree_bound, seed=seed)
    primes_above = []
    for p, st in table.entries.items():
        if st is None:
            if p.degree <= degree_bound:
                raise UnknownType(f"prime {p} has unknown splitting type")
            continue
        for f in st:
            if f * p.degree <= degree_bound:
                primes_above.append((p**f, f * p.degree))
    base = K.base
    total = FqPoly.zero(base)
    one = FqPoly.one(base)

    def rec(i, norm, deg):
        nonlocal total
        if i == len(primes_above):
            total = total + norm**n
            return
        nrm, step = primes_above[i]
        cur = norm
        used = deg
        while used <= degree_bound:
            rec(i + 1, cur, used)
            cur = cur * nrm
            used += step

    rec(0, one, 0)
    return total
