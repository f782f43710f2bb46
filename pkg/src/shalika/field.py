"""Exact arithmetic for small finite fields F_q (q = p^k) and root-of-unity values.

Elements are stored as integer codes 0 <= code < q, where the code is the
base-p integer whose digits are the power-basis coordinates of the element
(constant coefficient first).  All arithmetic goes through precomputed
tables, so every operation is exact and fast enough for exhaustive loops.

Character values are exact roots of unity, represented by their exponent in
Q/Z (never floating point: all downstream verdicts are equality tests).
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

# Canonical moduli for the small extension fields we ship out of the box.
# Coefficients are constant-first, monic: (1,1,1) means x^2 + x + 1.
CANONICAL_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
}


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, mod, p):
    """Remainder of a by the monic polynomial mod, coefficients in Z/p."""
    a = [x % p for x in a]
    d = len(mod) - 1
    while len(_poly_trim(a)) > d:
        a = _poly_trim(a)
        lead = a[-1]
        shift = len(a) - 1 - d
        for i, c in enumerate(mod):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a = _poly_trim(a)
    a = _poly_trim(a)
    return a + [0] * (d - len(a))


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _irreducible(mod, p):
    """Brute-force irreducibility over Z/p by trial division.

    Fine for the tiny degrees we support (the library only ships degree <= 3).
    """
    k = len(mod) - 1
    if k < 1 or mod[-1] != 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        # All monic divisor candidates of degree d.
        for code in range(p ** d):
            cand = _digits(code, p, d) + [1]
            if _poly_trim(_poly_mod(mod, cand, p)) in ([], [0]):
                return False
    return True


def _digits(code, p, k):
    out = []
    for _ in range(k):
        out.append(code % p)
        code //= p
    return out


def _code(coeffs, p):
    out = 0
    for c in reversed(coeffs):
        out = out * p + (c % p)
    return out


class Field:
    """A finite field F_{p^k} given by an explicit monic irreducible modulus.

    The instance owns all lookup tables (add, mul, inv, trace, dlog) plus a
    fixed generator of the multiplicative group: the least code of order q-1.
    Everything is immutable after construction and safe to share.
    """

    def __init__(self, p, k=1, modulus=None):
        if not _is_prime(p):
            raise ValueError("p must be prime, got %r" % (p,))
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** k
        if modulus is None:
            if k == 1:
                modulus = (0, 1)
            elif q in CANONICAL_MODULI:
                modulus = CANONICAL_MODULI[q]
            else:
                raise ValueError("no canonical modulus for q=%d; supply one" % q)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _irreducible(list(modulus), p):
            raise ValueError("modulus is not irreducible over Z/%d" % p)
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        coeffs = [_digits(c, p, k) for c in range(q)]
        add = np.zeros((q, q), dtype=np.int16)
        mul = np.zeros((q, q), dtype=np.int16)
        for a in range(q):
            for b in range(q):
                add[a, b] = _code([(x + y) % p for x, y in zip(coeffs[a], coeffs[b])], p)
                prod = _poly_mod(_poly_mul(coeffs[a], coeffs[b], p), list(self.modulus), p)
                mul[a, b] = _code(prod, p)
        self.add_table = add
        self.mul_table = mul
        neg = np.zeros(q, dtype=np.int16)
        inv = np.full(q, -1, dtype=np.int16)
        for a in range(q):
            neg[a] = _code([(-x) % p for x in coeffs[a]], p)
            for b in range(q):
                if mul[a, b] == 1:
                    inv[a] = b
        self.neg_table = neg
        self.inv_table = inv
        # Absolute trace Tr(a) = sum a^{p^i}; lands in the prime subfield.
        trace = np.zeros(q, dtype=np.int16)
        for a in range(q):
            acc, x = 0, a
            for _ in range(k):
                acc = add[acc, x]
                x = self._pow_code(x, p)
            assert acc < p, "trace left the prime subfield"
            trace[a] = acc
        self.trace_table = trace
        # Generator: least code of multiplicative order exactly q - 1.
        self.generator = None
        for g in range(1, q):
            if self._order(g) == q - 1:
                self.generator = g
                break
        assert self.generator is not None
        dlog = np.full(q, -1, dtype=np.int32)
        x = 1
        for e in range(q - 1):
            dlog[x] = e
            x = self.mul_table[x, self.generator]
        self.dlog_table = dlog

    def _pow_code(self, a, e):
        out = 1
        for _ in range(e):
            out = self.mul_table[out, a]
        return int(out)

    def _order(self, a):
        x, n = a, 1
        while x != 1:
            x = self.mul_table[x, a]
            n += 1
            if n > self.q:
                raise RuntimeError("order computation diverged")
        return n

    # -- scalar ops on codes ------------------------------------------------

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero in F_%d" % self.q)
        return int(self.inv_table[a])

    def pow(self, a, e):
        if e < 0:
            return self._pow_code(self.inv(a), -e)
        return self._pow_code(a, e)

    def trace(self, a):
        return int(self.trace_table[a])

    def dlog(self, a):
        if a == 0:
            raise ZeroDivisionError("dlog of zero in F_%d" % self.q)
        return int(self.dlog_table[a])

    def coeffs(self, a):
        return tuple(_digits(a, self.p, self.k))

    def elem(self, x):
        """Coerce an int code or coefficient sequence to an FqElem."""
        if isinstance(x, FqElem):
            if x.field != self:
                raise ValueError("element from a different field")
            return x
        if isinstance(x, (tuple, list)):
            return FqElem(self, _code(list(x), self.p))
        return FqElem(self, int(x) % self.q if self.k == 1 else int(x))

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return "Field(%d)" % self.p
        return "Field(%d^%d, modulus=%s)" % (self.p, self.k, self.modulus)


@lru_cache(maxsize=None)
def field_from_spec(spec, modulus=None):
    """Parse a field from text like "3" or "2^2", with an optional modulus.

    The modulus, when given, is a comma string or tuple of constant-first
    coefficients.
    """
    if isinstance(spec, int):
        p, k = _factor_prime_power(spec)
    else:
        text = str(spec).strip()
        if "^" in text:
            ptxt, ktxt = text.split("^", 1)
            p, k = int(ptxt), int(ktxt)
        else:
            p, k = _factor_prime_power(int(text))
    if isinstance(modulus, str):
        modulus = tuple(int(c) for c in modulus.split(","))
    return Field(p, k, modulus)


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if _is_prime(p):
            k = 0
            n = q
            while n % p == 0:
                n //= p
                k += 1
            if n == 1 and k >= 1:
                return p, k
    raise ValueError("%d is not a prime power" % q)


class FqElem:
    """An element of a Field, by integer code.  Immutable."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        if not 0 <= code < field.q:
            raise ValueError("code %r out of range for F_%d" % (code, field.q))
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self):
        return self.field.coeffs(self.code)

    def _check(self, other):
        if not isinstance(other, FqElem) or other.field != self.field:
            raise ValueError("mixed-field arithmetic")
        return other

    def __add__(self, other):
        return FqElem(self.field, self.field.add(self.code, self._check(other).code))

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.code, self._check(other).code))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.code, self._check(other).code))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.code))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.code))

    def __pow__(self, e):
        return FqElem(self.field, self.field.pow(self.code, e))

    def trace(self):
        return self.field.trace(self.code)

    def dlog(self):
        return self.field.dlog(self.code)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        return (isinstance(other, FqElem) and other.field == self.field
                and other.code == self.code)

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __repr__(self):
        return "Fq(%d;%s)" % (self.field.q, ",".join(map(str, self.coeffs)))


class UnityRoot:
    """An exact root of unity e^{2*pi*i*a/N}, stored as the fraction a/N in Q/Z."""

    __slots__ = ("exponent",)

    def __init__(self, exponent=0):
        self.exponent = Fraction(exponent) % 1

    @property
    def is_one(self):
        return self.exponent == 0

    def __mul__(self, other):
        return UnityRoot(self.exponent + other.exponent)

    def __truediv__(self, other):
        return UnityRoot(self.exponent - other.exponent)

    def inverse(self):
        return UnityRoot(-self.exponent)

    def __pow__(self, e):
        return UnityRoot(self.exponent * e)

    def __eq__(self, other):
        return isinstance(other, UnityRoot) and other.exponent == self.exponent

    def __hash__(self):
        return hash(self.exponent)

    def __repr__(self):
        return "UnityRoot(%s)" % (self.exponent,)


ONE = UnityRoot(0)


def additive_character(a, c=1):
    """The additive character psi_0 twisted by c != 0: exponent Tr(c*a)/p."""
    field = a.field
    c = field.elem(c)
    if c.code == 0:
        raise ValueError("additive twist c must be nonzero (trivial character)")
    return UnityRoot(Fraction(field.trace(field.mul(c.code, a.code)), field.p))


def mult_character(a, e):
    """Multiplicative character against the fixed generator: exponent e*dlog(a)/(q-1)."""
    field = a.field
    if a.code == 0:
        raise ZeroDivisionError("multiplicative character of zero")
    if field.q == 2:
        return UnityRoot(0)
    return UnityRoot(Fraction(e * field.dlog(a.code), field.q - 1))
