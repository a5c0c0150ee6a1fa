"""Exact arithmetic in F_q (q = p^k) and in the polynomial ring F_q[T].

Elements of F_q are coefficient vectors over F_p reduced modulo a monic
irreducible modulus; polynomials are dense little-endian coefficient
tuples with trailing zeros trimmed.  Everything is immutable and pure:
values can be shared across threads freely.  The only randomness is the
equal-degree splitting step of `factor`, seeded explicitly by the caller.

The polynomial routines are generic over the coefficient field: any
object exposing the small field protocol used here (p, q,
deg_over_prime, zero, one, random_elem) with elements supporting
+,-,*,** and inv() can serve as coefficients.  The residue fields
F_q[T]/(p) built in `smo.splitting` rely on this.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from random import Random

# q and every norm q^m handed to downstream tables must stay in 64-bit range.
MAX_Q = 2**63


class FFError(Exception):
    """Base class for arithmetic errors in this module."""


class DivisionByZero(FFError):
    pass


class FieldMismatch(FFError):
    pass


class ParseError(FFError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Prime-field polynomial helpers (plain int lists, little-endian) used only
# to find/validate the modulus defining F_q.
# ---------------------------------------------------------------------------

def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_divmod(out, m, p)[1]


def _fp_divmod(a, b, p):
    a = list(a)
    _fp_trim(a)
    if not b:
        raise DivisionByZero("division by zero polynomial")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _fp_trim(a)
    return q, a


def _fp_powmod(base, e, m, p):
    result = [1]
    base = _fp_divmod(base, m, p)[1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def _fp_is_irreducible(m, p):
    """Rabin test for a monic polynomial over F_p given as an int list."""
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    xq = _fp_powmod(x, p**n, m, p)
    if _fp_trim([(a - b) % p for a, b in itertools.zip_longest(xq, x, fillvalue=0)]):
        return False
    for ell in {f for f in range(2, n + 1) if n % f == 0 and is_prime(f)}:
        xe = _fp_powmod(x, p ** (n // ell), m, p)
        diff = [(a - b) % p for a, b in itertools.zip_longest(xe, x, fillvalue=0)]
        if len(_fp_gcd(diff, m, p)) - 1 != 0:
            return False
    return True


def _smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k over F_p."""
    for lower in itertools.product(range(p), repeat=k):
        cand = list(reversed(lower)) + [1]  # iterate high coefficients slowest
        if _fp_is_irreducible(cand, p):
            return tuple(cand)
    raise FFError(f"no irreducible of degree {k} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------
# Fields and field elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FqField:
    """The finite field F_q, q = p^k, as F_p[u]/(modulus)."""

    p: int
    k: int = 1
    modulus: tuple = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise FFError(f"{self.p} is not prime")
        if self.k < 1:
            raise FFError("extension degree must be >= 1")
        if self.p**self.k > MAX_Q:
            raise FFError("q exceeds the 64-bit bound")
        if self.modulus is None:
            object.__setattr__(self, "modulus", _smallest_irreducible(self.p, self.k))
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise FFError("modulus must be monic of degree k")
        if not _fp_is_irreducible(list(mod), self.p):
            raise FFError("modulus is not irreducible over F_p")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self):
        return self.p**self.k

    @property
    def deg_over_prime(self):
        return self.k

    def elem(self, coeffs):
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [x % self.p for x in coeffs]
        if len(c) > self.k:
            raise FFError("too many coordinates for this field")
        c += [0] * (self.k - len(c))
        return FqElem(self, tuple(c))

    def from_int(self, i):
        """Element whose base-p digit vector is i; enumerates all of F_q."""
        digits = []
        for _ in range(self.k):
            digits.append(i % self.p)
            i //= self.p
        return FqElem(self, tuple(digits))

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    @property
    def gen(self):
        if self.k < 2:
            raise FFError("prime field has no generator u")
        return self.elem([0, 1])

    def elements(self):
        return (self.from_int(i) for i in range(self.q))

    def random_elem(self, rng: Random):
        return self.from_int(rng.randrange(self.q))

    def __repr__(self):
        return f"GF({self.q})"


@dataclass(frozen=True, slots=True)
class FqElem:
    field: FqField
    coeffs: tuple

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch("elements of different fields")

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        if f.k == 1:
            return FqElem(f, ((self.coeffs[0] * other.coeffs[0]) % f.p,))
        prod = [0] * (2 * f.k - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    prod[i + j] += x * y
        rem = _fp_divmod([c % f.p for c in prod], list(f.modulus), f.p)[1]
        rem += [0] * (f.k - len(rem))
        return FqElem(f, tuple(rem))

    def inv(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        return self ** (self.field.q - 2)

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    @property
    def ival(self):
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def __lt__(self, other):
        self._check(other)
        return self.ival < other.ival

    def __str__(self):
        f = self.field
        if f.k == 1:
            return str(self.coeffs[0])
        parts = []
        for j in range(f.k - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append("u" if c == 1 else f"{c}*u")
            else:
                parts.append(f"u^{j}" if c == 1 else f"{c}*u^{j}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"{self!s} in {self.field!r}"


def fq_arith(a: FqElem, b: FqElem, op: str) -> FqElem:
    """Binary field operation dispatcher: add, sub, mul, inv, pow.

    `inv` ignores b; `pow` interprets b as an integer exponent.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    raise FFError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class FqPoly:
    """Dense univariate polynomial over a finite field, little-endian."""

    field: object
    coeffs: tuple

    @staticmethod
    def make(field, elems):
        c = list(elems)
        while c and not c[-1]:
            c.pop()
        return FqPoly(field, tuple(c))

    @staticmethod
    def zero(field):
        return FqPoly(field, ())

    @staticmethod
    def one(field):
        return FqPoly(field, (field.one,))

    @staticmethod
    def gen(field):
        return FqPoly(field, (field.zero, field.one))

    @staticmethod
    def const(field, e):
        return FqPoly.make(field, [e])

    @staticmethod
    def from_ints(field, ints):
        return FqPoly.make(field, [field.elem(i) for i in ints])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if self.is_zero:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        z = self.field.zero
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return FqPoly.make(self.field, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FqPoly(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        if self.is_zero or other.is_zero:
            return FqPoly.zero(self.field)
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return FqPoly.make(self.field, out)

    def scale(self, e):
        return FqPoly.make(self.field, [c * e for c in self.coeffs])

    def __pow__(self, e):
        if e < 0:
            raise FFError("negative polynomial power")
        result = FqPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        inv_lead = other.lc.inv()
        rem = list(self.coeffs)
        db = other.degree
        z = self.field.zero
        quot = [z] * max(0, len(rem) - db)
        while len(rem) > db and any(rem):
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) <= db:
                break
            c = rem[-1] * inv_lead
            shift = len(rem) - db - 1
            quot[shift] = c
            for i, y in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * y
        return FqPoly.make(self.field, quot), FqPoly.make(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(self.lc.inv())

    def deriv(self):
        p = self.field.p
        out = []
        for i in range(1, len(self.coeffs)):
            m = i % p
            c = self.coeffs[i]
            acc = self.field.zero
            for _ in range(m):
                acc = acc + c
            out.append(acc)
        return FqPoly.make(self.field, out)

    def __call__(self, at):
        acc = FqPoly.zero(self.field) if isinstance(at, FqPoly) else self.field.zero
        for c in reversed(self.coeffs):
            cc = FqPoly.const(self.field, c) if isinstance(at, FqPoly) else c
            acc = acc * at + cc
        return acc

    def sort_key(self):
        return (self.degree, tuple(c.ival for c in reversed(self.coeffs)))

    def __lt__(self, other):
        self._check(other)
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"FqPoly({self.field!r}, {self!s})"


def poly_gcd(f: FqPoly, g: FqPoly) -> FqPoly:
    """Monic greatest common divisor."""
    f._check(g)
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def poly_arith(f, g, op):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return poly_gcd(f, g)
    raise FFError(f"unknown op {op!r}")


def pow_mod(base: FqPoly, e: int, mod: FqPoly) -> FqPoly:
    result = FqPoly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# Factorization: squarefree split + distinct-degree + seeded equal-degree
# ---------------------------------------------------------------------------

def _pth_root(f: FqPoly) -> FqPoly:
    """For f with zero derivative, the g with g^p = f (Frobenius descent)."""
    field = f.field
    p = field.p
    e = p ** (field.deg_over_prime - 1)  # a -> a^(p^(n-1)) is the p-th root
    out = [f.coeffs[i] ** e for i in range(0, len(f.coeffs), p)]
    return FqPoly.make(field, out)


def _edf(h: FqPoly, d: int, rng: Random) -> list:
    """Split a product of distinct irreducibles of equal degree d."""
    if h.degree == d:
        return [h]
    field = h.field
    q = field.q
    while True:
        a = FqPoly.make(field, [field.random_elem(rng) for _ in range(h.degree)])
        if a.is_zero or a.degree == 0:
            continue
        if field.p == 2:
            t = a % h
            b = t
            for _ in range(field.deg_over_prime * d - 1):
                t = (t * t) % h
                b = b + t
        else:
            b = pow_mod(a, (q**d - 1) // 2, h) - FqPoly.one(field)
        g = poly_gcd(b, h)
        if 0 < g.degree < h.degree:
            return _edf(g, d, rng) + _edf(h // g, d, rng)


def _factor_squarefree(s: FqPoly, rng: Random) -> list:
    """Irreducible factors of a squarefree monic polynomial."""
    field = s.field
    x = FqPoly.gen(field)
    out = []
    r = x % s
    i = 0
    while s.degree > 0:
        i += 1
        if 2 * i > s.degree:
            out.append(s)
            break
        r = pow_mod(r, field.q, s)
        g = poly_gcd(r - x, s)
        if g.degree > 0:
            out.extend(_edf(g, i, rng))
            s = s // g
            r = r % s
    return out


def _factor_monic(f: FqPoly, rng: Random) -> Counter:
    field = f.field
    out = Counter()
    while f.degree > 0:
        d = f.deriv()
        if d.is_zero:
            # f = g^p by Frobenius; multiplicities scale by p
            for h, m in _factor_monic(_pth_root(f), rng).items():
                out[h] += m * field.p
            return out
        s = f // poly_gcd(f, d)  # product of the factors of multiplicity prime to p
        for h in _factor_squarefree(s, rng):
            m = 0
            while True:
                quot, rem = divmod(f, h)
                if not rem.is_zero:
                    break
                f = quot
                m += 1
            out[h] += m
    return out


def factor(f: FqPoly, seed: int = 0) -> list:
    """Factor f into monic irreducibles.

    Returns a canonically sorted list of (irreducible, multiplicity); the
    product of the factors times the leading coefficient of f equals f.
    """
    if f.is_zero:
        raise DivisionByZero("cannot factor the zero polynomial")
    rng = Random(seed)
    fac = _factor_monic(f.monic(), rng)
    return sorted(fac.items(), key=lambda t: t[0].sort_key())


def is_irreducible(f: FqPoly) -> bool:
    """Rabin irreducibility test (independent of `factor`)."""
    if f.is_zero or f.degree == 0:
        return False
    f = f.monic()
    n = f.degree
    if n == 1:
        return True
    field = f.field
    x = FqPoly.gen(field)
    if pow_mod(x, field.q**n, f) != x % f:
        return False
    for ell in {m for m in range(2, n + 1) if n % m == 0 and is_prime(m)}:
        g = poly_gcd(pow_mod(x, field.q ** (n // ell), f) - x, f)
        if g.degree != 0:
            return False
    return True


def _monics_of_degree(field, m):
    """All monic degree-m polynomials in canonical (sorted) order."""
    if m == 0:
        return [FqPoly.one(field)]
    elems = [field.from_int(i) for i in range(field.q)]
    out = []
    for top in itertools.product(range(field.q), repeat=m):
        # top is (c_{m-1}, ..., c_0): most significant varies slowest
        coeffs = [elems[i] for i in reversed(top)] + [field.one]
        out.append(FqPoly(field, tuple(coeffs)))
    return out


def irreducibles_up_to(field, d: int) -> list:
    """Monic irreducibles of degree <= d, canonically sorted.

    Sieve: a monic of degree m is reducible iff it is divisible by an
    irreducible of degree <= m/2, so the reducibles are exactly the
    products (irreducible of degree j) * (monic of degree m-j).
    """
    if d < 1:
        raise FFError("degree bound must be >= 1")
    if field.q**d > MAX_Q:
        raise FFError("q^d exceeds the 64-bit bound")
    monics = {m: _monics_of_degree(field, m) for m in range(0, d + 1)}
    irr_by_deg = {}
    for m in range(1, d + 1):
        reducible = set()
        for j in range(1, m // 2 + 1):
            for g in irr_by_deg.get(j, ()):
                for h in monics[m - j]:
                    prod = g * h
                    reducible.add(tuple(c.ival for c in prod.coeffs))
        irr_by_deg[m] = [
            f for f in monics[m]
            if tuple(c.ival for c in f.coeffs) not in reducible
        ]
    return [f for m in range(1, d + 1) for f in irr_by_deg[m]]


# ---------------------------------------------------------------------------
# Polynomial literal parser / printer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*^()]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"bad character at {text[pos:]!r}")
            break
        pos = m.end()
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
    out.append(("end", None))
    return out


class _ExprParser:
    """Tiny recursive-descent evaluator for +,-,*,^ expressions.

    Names are looked up in `env`; integer literals go through `const`.
    """

    def __init__(self, text, env, const):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.env = env
        self.const = const

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input near token {self.peek()!r}")
        return v

    def expr(self):
        kind, val = self.peek()
        neg = False
        if (kind, val) == ("op", "-"):
            self.next()
            neg = True
        elif (kind, val) == ("op", "+"):
            self.next()
        v = self.term()
        if neg:
            v = -v
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.next()
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.factor()
        while self.peek() == ("op", "*"):
            self.next()
            v = v * self.factor()
        return v

    def factor(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.next()
            kind, e = self.next()
            if kind != "int":
                raise ParseError("exponent must be an integer literal")
            v = v**e
        return v

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return self.const(val)
        if kind == "name":
            if val not in self.env:
                raise ParseError(f"unknown symbol {val!r}")
            return self.env[val]
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.next() != ("op", ")"):
                raise ParseError("unbalanced parentheses")
            return v
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ParseError(f"unexpected token {val!r}")


def parse_expression(text, env, const):
    return _ExprParser(text, env, const).parse()


def parse_poly(field, text, var="T") -> FqPoly:
    """Parse a polynomial literal like `T^2+2*T+1` or `(u+1)*T+u`."""
    env = {var: FqPoly.gen(field)}
    if field.k > 1:
        env["u"] = FqPoly.const(field, field.gen)
    return parse_expression(text, env, lambda i: FqPoly.from_ints(field, [i]))


def _coeff_str(c: FqElem, need_parens: bool) -> str:
    s = str(c)
    if need_parens and ("+" in s or "*" in s):
        return f"({s})"
    return s


def poly_str(f: FqPoly, var="T") -> str:
    """Canonical text form; `parse_poly` round-trips it."""
    if f.is_zero:
        return "0"
    parts = []
    one = f.field.one
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(_coeff_str(c, need_parens=False))
        else:
            head = var if i == 1 else f"{var}^{i}"
            if c == one:
                parts.append(head)
            else:
                parts.append(f"{_coeff_str(c, need_parens=True)}*{head}")
    return "+".join(parts)
