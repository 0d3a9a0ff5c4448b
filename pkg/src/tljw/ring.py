"""Exact coefficient arithmetic for Temperley-Lieb computations.

Two coefficient domains live here:

* the generic field Q(d) of rational functions in the loop parameter
  (``IntegerPolynomial`` / ``RationalFunction``), and
* finite pointed fields F_p[x]/(m(x)) with a distinguished element
  ``deltabar`` interpreting the loop parameter (``PointedField`` /
  ``FieldElement``).

Quantum integers [n] follow [0]=0, [1]=1, [n+1] = d*[n] - [n-1]; closed
loops in the diagram calculus evaluate to +d everywhere in this package.

Normal form of a ``RationalFunction``: num/den with num, den integer
polynomials that are coprime in Z[d] (no common integer content, no common
polynomial factor) and den has positive leading coefficient.  With that
form a scalar lies in the local ring Z[d]_(p, m(d)) exactly when den does
not vanish at deltabar mod p, which is what ``reduce_scalar`` tests.
"""

from __future__ import annotations

import math
from math import gcd as _igcd

INFINITY = math.inf


class DoesNotDescend(ArithmeticError):
    """A scalar (or a morphism coefficient) has no image in the pointed field."""

    def __init__(self, scalar, field, diagram=None):
        self.scalar = scalar
        self.field = field
        self.diagram = diagram
        where = f" at diagram {diagram}" if diagram is not None else ""
        super().__init__(f"{scalar} does not descend to {field}{where}")


# ---------------------------------------------------------------------------
# integer polynomials in the loop parameter d
# ---------------------------------------------------------------------------

def _trim(coeffs):
    i = len(coeffs)
    while i and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)

def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _content(a):
    g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            return 1
    return g


def _pdiv_exact(a, b):
    """Exact division in Q[d] assuming b | a in Q[d]; result must land in Z[d]
    for the callers in this module.  Returns None when division is not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    if len(a) < len(b):
        return None
    rem = list(a)
    lead = b[-1]
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        if c % lead:
            return None
        f = c // lead
        q[i - db] = f
        for j in range(db + 1):
            rem[i - db + j] -= f * b[j]
    if any(rem):
        return None
    return _trim(q)


def _prem_simple(a, b):
    """Pseudo-remainder: eliminate leading slots of a against b with integer
    cross-scaling (rem := lead(b)*rem - c*x^(i-db)*b), so no fractions appear."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return tuple(a)
    lead = b[-1]
    rem = list(a)
    i = len(rem) - 1
    while i >= db:
        c = rem[i]
        if c:
            for j in range(len(rem)):
                rem[j] *= lead
            for j in range(db + 1):
                rem[i - db + j] -= c * b[j]
        i -= 1
    return _trim(rem)


_GCD_MEMO = {}
_GCD_MEMO_LIMIT = 1_000_000


def _pos(a):
    return _pneg(a) if a and a[-1] < 0 else tuple(a)


def _pgcd(a, b):
    """Full gcd in Z[d] (integer content included), positive leading coeff."""
    if not a:
        return _pos(b)
    if not b:
        return _pos(a)
    if a == b:
        return _pos(a)
    key = (a, b) if a <= b else (b, a)
    v = _GCD_MEMO.get(key)
    if v is not None:
        return v
    ta = _trail(a)
    tb = _trail(b)
    if len(a) - 1 == ta or len(b) - 1 == tb:  # a or b is c*d^k
        g = _igcd(_content(a), _content(b))
        v = (0,) * min(ta, tb) + (g,)
    else:
        gi = _igcd(_content(a), _content(b))
        pa = _primitive_pos(a)
        pb = _primitive_pos(b)
        if len(pa) < len(pb):
            pa, pb = pb, pa
        while pb:
            r = _prem_simple(pa, pb)
            pa, pb = pb, _primitive_pos(r)
        v = pa if gi == 1 else tuple(c * gi for c in pa)
    if len(_GCD_MEMO) > _GCD_MEMO_LIMIT:
        _GCD_MEMO.clear()
    _GCD_MEMO[key] = v
    return v


def _trail(a):
    for i, c in enumerate(a):
        if c:
            return i
    return 0


def _primitive_pos(a):
    if not a:
        return ()
    c = _content(a)
    if a[-1] < 0:
        c = -c
    if c != 1:
        a = tuple(x // c for x in a)
    return tuple(a)


class IntegerPolynomial:
    """Element of Z[d]; coeffs[i] is the coefficient of d^i, no trailing zeros."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        self.coeffs = _trim(tuple(coeffs))
        self._hash = hash(self.coeffs)

    @classmethod
    def _raw(cls, coeffs):
        self = object.__new__(cls)
        self.coeffs = coeffs
        self._hash = hash(coeffs)
        return self

    @classmethod
    def const(cls, c):
        return cls._raw((c,) if c else ())

    @classmethod
    def delta_pow(cls, k, c=1):
        if c == 0:
            return cls._raw(())
        return cls._raw((0,) * k + (c,))

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def content(self):
        return _content(self.coeffs)

    def primitive(self):
        return IntegerPolynomial._raw(_primitive_pos(self.coeffs))

    def __add__(self, other):
        return IntegerPolynomial._raw(_padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return IntegerPolynomial._raw(_psub(self.coeffs, other.coeffs))

    def __neg__(self):
        return IntegerPolynomial._raw(_pneg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerPolynomial._raw(_pscale(self.coeffs, other))
        return IntegerPolynomial._raw(_pmul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, IntegerPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self.coeffs)

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(int(c) for c in data)


def format_poly(coeffs, var="δ"):
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append((" - " if c < 0 else " + ") + term)
    return "".join(parts)


_ZERO_P = IntegerPolynomial._raw(())
_ONE_P = IntegerPolynomial._raw((1,))
_DELTA_P = IntegerPolynomial._raw((0, 1))


# ---------------------------------------------------------------------------
# normalized rational functions: the field Q(d)
# ---------------------------------------------------------------------------

class RationalFunction:
    """num/den in lowest terms over Z[d]; den has positive leading coefficient."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=_ONE_P):
        if isinstance(num, int):
            num = IntegerPolynomial.const(num)
        if isinstance(den, int):
            den = IntegerPolynomial.const(den)
        n, d = _normalize(num.coeffs, den.coeffs)
        self.num = IntegerPolynomial._raw(n)
        self.den = IntegerPolynomial._raw(d)
        self._hash = hash((n, d))

    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = hash((num.coeffs, den.coeffs))
        return self

    def is_zero(self):
        return not self.num.coeffs

    def is_one(self):
        return self.num.coeffs == (1,) and self.den.coeffs == (1,)

    def is_polynomial(self):
        return self.den.coeffs == (1,)

    def __bool__(self):
        return bool(self.num.coeffs)

    def __add__(self, other):
        # Henrici-style: with both operands in lowest terms, gcd work is
        # confined to the denominators (and their cofactor), never redone on
        # the full cross products.
        if not other.num.coeffs:
            return self
        if not self.num.coeffs:
            return other
        a, b = self.num.coeffs, self.den.coeffs
        c, d = other.num.coeffs, other.den.coeffs
        if b == d:
            num = _padd(a, c)
            if not num:
                return RF_ZERO
            g = _pgcd(num, b)
            if g == (1,):
                return _rf_raw(num, b)
            return _rf_raw(_pdiv_exact(num, g), _pdiv_exact(b, g))
        g = _pgcd(b, d)
        if g == (1,):
            num = _padd(_pmul(a, d), _pmul(c, b))
            if not num:
                return RF_ZERO
            return _rf_raw(num, _pmul(b, d))
        d_g = _pdiv_exact(d, g)
        b_g = _pdiv_exact(b, g)
        num = _padd(_pmul(a, d_g), _pmul(c, b_g))
        if not num:
            return RF_ZERO
        den = _pmul(b, d_g)
        h = _pgcd(num, g)
        if h != (1,):
            num = _pdiv_exact(num, h)
            den = _pdiv_exact(den, h)
        return _rf_raw(num, den)

    def __sub__(self, other):
        if not other.num.coeffs:
            return self
        return self + RationalFunction._raw(-other.num, other.den)

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._int_mul(other)
        a, b = self.num.coeffs, self.den.coeffs
        c, d = other.num.coeffs, other.den.coeffs
        if not a or not c:
            return RF_ZERO
        g1 = _pgcd(a, d)
        if g1 != (1,):
            a = _pdiv_exact(a, g1)
            d = _pdiv_exact(d, g1)
        g2 = _pgcd(c, b)
        if g2 != (1,):
            c = _pdiv_exact(c, g2)
            b = _pdiv_exact(b, g2)
        return _rf_raw(_pmul(a, c), _pmul(b, d))

    __rmul__ = __mul__

    def _int_mul(self, c):
        if c == 0 or not self.num.coeffs:
            return RF_ZERO
        cd = _content(self.den.coeffs)
        g = _igcd(abs(c), cd)
        num = _pscale(self.num.coeffs, c // g)
        den = self.den.coeffs if g == 1 else tuple(x // g for x in self.den.coeffs)
        return _rf_raw(num, den)

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        n = self.num.coeffs
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(d)")
        if n[-1] < 0:
            return _rf_raw(_pneg(self.den.coeffs), _pneg(n))
        return _rf_raw(self.den.coeffs, n)

    def mul_delta_pow(self, k):
        """Multiply by d^k (k >= 0); used for loop factors during composition."""
        if k == 0 or not self.num.coeffs:
            return self
        t = _trail(self.den.coeffs)
        s = min(k, t) if self.den.coeffs else 0
        num = (0,) * (k - s) + self.num.coeffs
        den = self.den.coeffs[s:] if s else self.den.coeffs
        if s:
            return _make_rf(num, den)
        # den has no factor of d left; the pair stays coprime
        out = object.__new__(RationalFunction)
        out.num = IntegerPolynomial._raw(num)
        out.den = self.den
        out._hash = hash((num, self.den.coeffs))
        return out

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.num.coeffs == other.num.coeffs
                and self.den.coeffs == other.den.coeffs)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RationalFunction({self.num.coeffs!r}, {self.den.coeffs!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        ns = str(self.num)
        ds = str(self.den)
        nnum = sum(1 for c in self.num.coeffs if c)
        if nnum > 1 or (self.num.coeffs and self.num.coeffs[-1] < 0):
            ns = f"({ns})"
        den = self.den.coeffs
        if not (sum(1 for c in den if c) == 1 and den[-1] == 1):
            ds = f"({ds})"  # anything beyond a bare power of delta
        return f"{ns}/{ds}"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(IntegerPolynomial.from_json(data["num"]),
                   IntegerPolynomial.from_json(data["den"]))


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator in Q(d)")
    if not num:
        return (), (1,)
    g = _pgcd(num, den)
    if g != (1,):
        num = _pdiv_exact(num, g)
        den = _pdiv_exact(den, g)
    cn, cd = _content(num), _content(den)
    c = _igcd(cn, cd)
    if c > 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    if den[-1] < 0:
        num = _pneg(num)
        den = _pneg(den)
    return num, den


def _make_rf(num_coeffs, den_coeffs):
    n, d = _normalize(num_coeffs, den_coeffs)
    out = object.__new__(RationalFunction)
    out.num = IntegerPolynomial._raw(n)
    out.den = IntegerPolynomial._raw(d)
    out._hash = hash((n, d))
    return out


def _rf_raw(num_coeffs, den_coeffs):
    """Wrap an already-coprime pair, fixing only the leading sign."""
    if den_coeffs[-1] < 0:
        num_coeffs = _pneg(num_coeffs)
        den_coeffs = _pneg(den_coeffs)
    out = object.__new__(RationalFunction)
    out.num = IntegerPolynomial._raw(tuple(num_coeffs))
    out.den = IntegerPolynomial._raw(tuple(den_coeffs))
    out._hash = hash((out.num.coeffs, out.den.coeffs))
    return out


RF_ZERO = _make_rf((), (1,))
RF_ONE = _make_rf((1,), (1,))
RF_DELTA = _make_rf((0, 1), (1,))


class GenericField:
    """Ring tag for Q(d): the generic coefficient field of the diagram algebra."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    p = None

    def zero(self):
        return RF_ZERO

    def one(self):
        return RF_ONE

    def delta(self):
        return RF_DELTA

    def from_int(self, c):
        return _make_rf((c,) if c else (), (1,))

    def delta_power(self, k):
        return _make_rf((0,) * k + (1,), (1,))

    def __repr__(self):
        return "Q(δ)"

    def to_json(self):
        return {"type": "generic"}


GENERIC = GenericField()


# ---------------------------------------------------------------------------
# quantum integers and binomials
# ---------------------------------------------------------------------------

_QUANTUM = [_ZERO_P, _ONE_P]


def quantum_int(n):
    """The quantum integer [n] as an integer polynomial; [-n] = -[n]."""
    if n < 0:
        return -quantum_int(-n)
    while len(_QUANTUM) <= n:
        m = len(_QUANTUM)
        _QUANTUM.append(_DELTA_P * _QUANTUM[m - 1] - _QUANTUM[m - 2])
    return _QUANTUM[n]


def quantum_rf(n):
    """[n] as an element of Q(d)."""
    q = quantum_int(n)
    return _make_rf(q.coeffs, (1,))


def quantum_binomial(n, r):
    """Quantum binomial [n choose r] = prod_j [n-r+j]/[j]; always a polynomial."""
    if not (0 <= r <= n):
        raise ValueError(f"invalid quantum binomial ({n}, {r})")
    acc = RF_ONE
    for j in range(1, r + 1):
        acc = acc * quantum_rf(n - r + j) / quantum_rf(j)
    if not acc.is_polynomial():
        raise ArithmeticError(f"quantum binomial ({n},{r}) did not reduce to a polynomial")
    return acc.num


def ratfunc_arith(a, b, op):
    """Field arithmetic dispatch used by the serialization layer and CLI."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# finite pointed fields F_p[x]/(m(x)) with deltabar = class of x
# ---------------------------------------------------------------------------

def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _fp_trim(a):
    i = len(a)
    while i and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _fp_mod(a, m, p):
    """Reduce a modulo the monic polynomial m, coefficients mod p."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _fp_trim(a[:dm] if len(a) > dm else a)


def _fp_mul(a, b, m, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_mod(out, m, p)


def _fp_divmod(a, b, p):
    """Division with remainder in F_p[x]; b nonzero."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = c * inv % p
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _fp_trim(q), _fp_trim(a)


def _fp_irreducible(m, p):
    """Trial division by all monic polynomials of degree <= deg(m)/2."""
    d = len(m) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for idx in range(p ** deg):
            cand = []
            v = idx
            for _ in range(deg):
                cand.append(v % p)
                v //= p
            cand.append(1)
            _, r = _fp_divmod(m, tuple(cand), p)
            if not r:
                return False
    return True


class FieldElement:
    """Element of a pointed field, stored as a reduced polynomial in deltabar."""

    __slots__ = ("rep", "field", "_hash")

    def __init__(self, rep, field):
        self.rep = tuple(rep)
        self.field = field
        self._hash = hash((self.rep, id(field)))

    def is_zero(self):
        return not self.rep

    def is_one(self):
        return self.rep == (1,)

    def __bool__(self):
        return bool(self.rep)

    def __add__(self, other):
        p = self.field.p
        a, b = self.rep, other.rep
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return FieldElement(_fp_trim(out), self.field)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        p = self.field.p
        return FieldElement(tuple((-c) % p for c in self.rep), self.field)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FieldElement(_fp_trim([c * other % p for c in self.rep]), self.field)
        k = self.field
        return FieldElement(_fp_mul(self.rep, other.rep, k.minpoly, k.p), k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        if not self.rep:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        k = self.field
        # extended Euclid in F_p[x] against the minimal polynomial
        r0, r1 = k.minpoly, self.rep
        s0, s1 = (), (1,)
        p = k.p
        while r1:
            q, r = _fp_divmod(r0, r1, p)
            r0, r1 = r1, r
            qs = _fp_trim([c % p for c in _pmul(q, s1)])
            s0, s1 = s1, _fp_trim([(x - y) % p for x, y in
                                   zip(list(s0) + [0] * max(0, len(qs) - len(s0)),
                                       list(qs) + [0] * max(0, len(s0) - len(qs)))])
        # r0 is a nonzero constant gcd
        c_inv = pow(r0[0], -1, p)
        return FieldElement(_fp_trim([c * c_inv % p for c in s0]), k)

    def mul_delta_pow(self, k):
        return self * self.field.delta_power(k)

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.rep == other.rep
                and self.field is other.field)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FieldElement({list(self.rep)}, {self.field!r})"

    def __str__(self):
        return format_poly(self.rep, var="δ̄")

    def to_json(self):
        return [str(c) for c in self.rep]


class PointedField:
    """F_p[x]/(m(x)) with deltabar the class of x; m monic irreducible over F_p."""

    __slots__ = ("p", "minpoly", "_deltabar", "_ell", "_dpows")

    def __init__(self, p, minpoly):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        m = _fp_trim([c % p for c in minpoly])
        if len(m) < 2 or m[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        if len(m) > 2 and not _fp_irreducible(m, p):
            raise ValueError(f"{list(m)} is reducible over F_{p}")
        self.p = p
        self.minpoly = m
        self._deltabar = FieldElement(_fp_mod((0, 1), m, p), self)
        self._ell = None
        self._dpows = [self.one(), self._deltabar]

    @property
    def deltabar(self):
        return self._deltabar

    def zero(self):
        return FieldElement((), self)

    def one(self):
        return FieldElement((1,), self)

    def delta(self):
        return self._deltabar

    def from_int(self, c):
        return FieldElement(((c % self.p),) if c % self.p else (), self)

    def delta_power(self, k):
        while len(self._dpows) <= k:
            self._dpows.append(self._dpows[-1] * self._deltabar)
        return self._dpows[k]

    def element(self, coeffs):
        return FieldElement(_fp_mod(tuple(coeffs), self.minpoly, self.p), self)

    def __eq__(self, other):
        return (isinstance(other, PointedField) and self.p == other.p
                and self.minpoly == other.minpoly)

    def __hash__(self):
        return hash((self.p, self.minpoly))

    def __repr__(self):
        return f"PointedField(p={self.p}, minpoly={list(self.minpoly)})"

    def to_json(self):
        return {"p": self.p, "minpoly": [str(c) for c in self.minpoly]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["p"]), [int(c) for c in data["minpoly"]])


def detect_ell(k):
    """Least ell > 0 with [ell](deltabar) = 0 in k.

    The pair ([n], [n+1]) walks a finite set under a reversible recurrence,
    so the orbit is purely periodic and returns to (0, 1); the zero is hit
    within p^(2 deg m) steps.
    """
    if k._ell is not None:
        return k._ell
    a, b = k.zero(), k.one()  # [0], [1]
    d = k.deltabar
    bound = k.p ** (2 * (len(k.minpoly) - 1)) + 1
    for n in range(1, bound + 1):
        a, b = b, d * b - a  # a = [n]
        if a.is_zero():
            k._ell = n
            return n
    raise RuntimeError("quantum torsion not found; impossible for a finite field")


def reduce_scalar(c, k):
    """Image of c in k, or DoesNotDescend when c is outside Z[d]_(p, m(d)).

    Since c is in lowest terms over Z[d], membership in the local ring is
    exactly "denominator nonzero mod (p, m)", so evaluating num and den at
    deltabar settles both the test and the value.
    """
    den = k.element(c.den.coeffs)
    if den.is_zero():
        raise DoesNotDescend(c, k)
    num = k.element(c.num.coeffs)
    return num * den.inverse()


def quantum_in_field(n, k):
    """[n] evaluated in the pointed field."""
    return k.element(quantum_int(n).coeffs)


# ---------------------------------------------------------------------------
# torsion parameters (ell, p) with p possibly "infinity"
# ---------------------------------------------------------------------------

class TorsionParams:
    """The pair (ell, p): ell the least vanishing quantum integer, p the
    characteristic (math.inf marks the generic characteristic-zero mode)."""

    __slots__ = ("ell", "p")

    def __init__(self, ell, p):
        ell = int(ell)
        if ell < 2:
            raise ValueError("ell must be >= 2")
        if p != INFINITY:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"characteristic {p} is not prime or infinity")
        self.ell = ell
        self.p = p

    @classmethod
    def from_field(cls, k):
        return cls(detect_ell(k), k.p)

    def __eq__(self, other):
        return isinstance(other, TorsionParams) and self.ell == other.ell and self.p == other.p

    def __hash__(self):
        return hash((self.ell, self.p))

    def __repr__(self):
        p = "infinity" if self.p == INFINITY else self.p
        return f"TorsionParams(ell={self.ell}, p={p})"

    def to_json(self):
        return {"ell": self.ell, "p": "infinity" if self.p == INFINITY else self.p}

    @classmethod
    def from_json(cls, data):
        p = data["p"]
        return cls(data["ell"], INFINITY if p == "infinity" else p)
