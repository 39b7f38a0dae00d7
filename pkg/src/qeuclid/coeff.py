"""Exact scalar arithmetic for all coefficients of the library.

Every scalar lives in Q(s) with s = q^(1/2), optionally extended by the
radical normalization symbols gamma_a / bgamma_a and their conjugates.
Rational functions are kept as reduced fractions of integer-coefficient
dense polynomials in s, so equality is structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

# ---------------------------------------------------------------------------
# dense integer polynomials in s; tuple of coefficients, index = degree
# ---------------------------------------------------------------------------

PZERO = ()
PONE = (1,)


def ptrim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return ptrim(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return PZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return ptrim(out)


def pscale(a, c):
    if c == 0:
        return PZERO
    return tuple(x * c for x in a)


def pcontent(a):
    g = 0
    for c in a:
        g = _igcd(g, abs(c))
        if g == 1:
            break
    return g


def pprim(a):
    if not a:
        return PZERO
    g = pcontent(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(c // g for c in a)


def pshift(a, k):
    """Multiply by s^k, k >= 0."""
    if not a:
        return PZERO
    return (0,) * k + tuple(a)


def prem(a, b):
    """Pseudo-remainder of a by b over Z."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    lb = b[-1]
    r = list(a)
    for i in range(da, db - 1, -1):
        lr = r[i]
        if lr:
            for j in range(len(r)):
                r[j] *= lb
            for j in range(db + 1):
                r[i - db + j] -= lr * b[j]
        # keep r[i] exactly zero
        r[i] = 0
    return ptrim(r)


def pgcd(a, b):
    a, b = pprim(a), pprim(b)
    while b:
        a, b = b, pprim(prem(a, b))
    if not a:
        return PZERO
    return a if a[-1] > 0 else pneg(a)


def pdivexact(a, b):
    """Exact division a / b over Q, result must have integer content pattern."""
    if not a:
        return PZERO
    da, db = len(a) - 1, len(b) - 1
    out = [Fraction(0)] * (da - db + 1)
    r = [Fraction(c) for c in a]
    lb = b[-1]
    for i in range(da, db - 1, -1):
        c = r[i]
        if c:
            q = c / lb
            out[i - db] = q
            for j in range(db + 1):
                r[i - db + j] -= q * b[j]
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    den = 1
    for c in out:
        den = den * c.denominator // _igcd(den, c.denominator)
    if den != 1:
        raise ArithmeticError("inexact polynomial division (content)")
    return ptrim([int(c) for c in out])


def peval(a, x: Fraction) -> Fraction:
    r = Fraction(0)
    for c in reversed(a):
        r = r * x + c
    return r


def pstr(a, var="s"):
    if not a:
        return "0"
    parts = []
    for e in range(len(a) - 1, -1, -1):
        c = a[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            v = var if e == 1 else "%s^%d" % (var, e)
            if c == 1:
                parts.append(v)
            elif c == -1:
                parts.append("-" + v)
            else:
                parts.append("%d*%s" % (c, v))
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# rational functions in s
# ---------------------------------------------------------------------------

class RatFunc:
    """Reduced fraction of integer polynomials in s = q^(1/2).

    Canonical: poly gcd 1, integer content gcd 1, denominator leading
    coefficient positive.  Structural equality is field equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=PONE, reduce=True):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num = ptrim(num)
            den = ptrim(den)
            if not num:
                den = PONE
            else:
                g = pgcd(num, den)
                if len(g) > 1 or (g and g[0] != 1):
                    num = pdivexact(num, g)
                    den = pdivexact(den, g)
                cn, cd = pcontent(num), pcontent(den)
                c = _igcd(cn, cd)
                if den[-1] < 0:
                    c = -c
                if c != 1 and c != 0:
                    num = tuple(x // c for x in num)
                    den = tuple(x // c for x in den)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------
    @staticmethod
    def from_int(n):
        return RatFunc((n,) if n else PZERO, PONE, reduce=False)

    @staticmethod
    def from_fraction(f: Fraction):
        f = Fraction(f)
        return RatFunc((f.numerator,) if f.numerator else PZERO,
                       (f.denominator,), reduce=False)

    @staticmethod
    def s_power(e: int):
        """s^e for any integer e."""
        if e >= 0:
            return RatFunc(pshift(PONE, e), PONE, reduce=False)
        return RatFunc(PONE, pshift(PONE, -e), reduce=False)

    @staticmethod
    def q_power(t: int):
        return RatFunc.s_power(2 * t)

    # -- predicates ---------------------------------------------------------
    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == PONE and self.den == PONE

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if self.den == other.den:
            return RatFunc(padd(self.num, other.num), self.den)
        return RatFunc(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                       pmul(self.den, other.den))

    def __sub__(self, other):
        if self.den == other.den:
            return RatFunc(psub(self.num, other.num), self.den)
        return RatFunc(psub(pmul(self.num, other.den), pmul(other.num, self.den)),
                       pmul(self.den, other.den))

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, reduce=False)

    def __mul__(self, other):
        if not self.num or not other.num:
            return RF_ZERO
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(pmul(self.num, other.den), pmul(self.den, other.num))

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverting zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        r = RF_ONE
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def bar(self):
        """The automorphism s -> s^(-1)."""
        dn, dd = len(self.num) - 1, len(self.den) - 1
        rn = tuple(reversed(self.num)) if self.num else PZERO
        rd = tuple(reversed(self.den))
        if dd >= dn:
            return RatFunc(pshift(rn, dd - dn), rd)
        return RatFunc(rn, pshift(rd, dn - dd))

    # -- evaluation ----------------------------------------------------------
    def evaluate(self, s0: Fraction) -> Fraction:
        d = peval(self.den, s0)
        if d == 0:
            raise ZeroDivisionError("pole at s = %s" % s0)
        return peval(self.num, s0) / d

    def eval_sqrtq(self, q0: Fraction) -> "QSqrt":
        return _peval_sqrt(self.num, q0) / _peval_sqrt(self.den, q0)

    def __repr__(self):
        return "RatFunc(%s)" % self.as_str()

    def as_str(self, var="s"):
        if self.den == PONE:
            return pstr(self.num, var)
        return "(%s)/(%s)" % (pstr(self.num, var), pstr(self.den, var))


RF_ZERO = RatFunc(PZERO, PONE, reduce=False)
RF_ONE = RatFunc(PONE, PONE, reduce=False)


# ---------------------------------------------------------------------------
# exact arithmetic in Q(sqrt(q)) for the numeric cross-check lane
# ---------------------------------------------------------------------------

_RT_CACHE = {}


def _rational_sqrt(q: Fraction):
    from math import isqrt
    if q not in _RT_CACHE:
        p, r = q.numerator, q.denominator
        sp, sr = isqrt(p), isqrt(r)
        _RT_CACHE[q] = Fraction(sp, sr) if (sp * sp == p and sr * sr == r) else None
    return _RT_CACHE[q]


class QSqrt:
    """Element a + b*sqrt(q0) of the quadratic field Q(sqrt(q0)), exact.

    When q0 is a perfect square the radical folds into the rational part so
    the representation stays canonical.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.q = q
        if self.b:
            rt = _rational_sqrt(q)
            if rt is not None:
                self.a += self.b * rt
                self.b = Fraction(0)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return self.a == other.a and self.b == other.b and self.q == other.q

    def __add__(self, other):
        return QSqrt(self.a + other.a, self.b + other.b, self.q)

    def __sub__(self, other):
        return QSqrt(self.a - other.a, self.b - other.b, self.q)

    def __neg__(self):
        return QSqrt(-self.a, -self.b, self.q)

    def __mul__(self, other):
        return QSqrt(self.a * other.a + self.q * self.b * other.b,
                     self.a * other.b + self.b * other.a, self.q)

    def inv(self):
        d = self.a * self.a - self.q * self.b * self.b
        if d == 0:
            # canonical form guarantees d == 0 only for the zero element
            raise ZeroDivisionError("inverting zero")
        return QSqrt(self.a / d, -self.b / d, self.q)

    def __truediv__(self, other):
        return self * other.inv()

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return "(%s + %s*sqrt(%s))" % (self.a, self.b, self.q)


def qsqrt_zero(q0):
    return QSqrt(0, 0, q0)


def qsqrt_one(q0):
    return QSqrt(1, 0, q0)


def _peval_sqrt(p, q0: Fraction) -> QSqrt:
    a = Fraction(0)
    b = Fraction(0)
    qp = Fraction(1)
    for e in range(0, len(p), 2):
        a += p[e] * qp
        if e + 1 < len(p):
            b += p[e + 1] * qp
        qp *= q0
    return QSqrt(a, b, q0)


# ---------------------------------------------------------------------------
# radical rule sets
# ---------------------------------------------------------------------------

# radical symbols are ('g', a) for gamma_a, ('G', a) for bgamma_a and
# ('c', a) for the star-conjugate of gamma_a; a is a nonzero index.

TRANSCENDENTAL = "transcendental"
THEOREM3 = "theorem3"
STAR_LINK = "star-link"


class RadicalRules:
    """Reduction rules for the gamma symbols.

    transcendental: gamma_a, bgamma_a free for a >= 1 (negative-index symbols
        never appear; they are eliminated at construction via the fixed
        products).
    theorem3: only gamma_a (a >= 1) with the fixed squares; exponents reduce
        into {0, 1}.
    star-link: gamma_a free for all a != 0 plus the conjugate symbols; the
        star map exchanges them.
    """

    def __init__(self, mode, square_values=None):
        self.mode = mode
        self.square_values = square_values or {}

    def reduce_monomial(self, mon, rf):
        if self.mode != THEOREM3:
            return mon, rf
        out = []
        for sym, e in mon:
            if 0 <= e <= 1:
                out.append((sym, e))
                continue
            v = self.square_values[sym]
            r = e % 2
            rf = rf * v ** ((e - r) // 2)
            if r:
                out.append((sym, r))
        return tuple(out), rf

    def star_symbol(self, sym):
        if self.mode != STAR_LINK:
            raise ValueError("star is undefined on radical symbols in mode %r" % self.mode)
        kind, a = sym
        if kind == "g":
            return ("c", a)
        if kind == "c":
            return ("g", a)
        raise ValueError("cannot conjugate symbol %r" % (sym,))


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

class FieldElement:
    """Element of Q(s) extended by radical symbols.

    Stored as a map {radical monomial: RatFunc}; the empty monomial is the
    radical-free part.  Immutable by convention.
    """

    __slots__ = ("parts", "rules")

    def __init__(self, parts, rules=None, reduce=True):
        if reduce and rules is not None and rules.mode == THEOREM3:
            red = {}
            for mon, rf in parts.items():
                mon, rf = rules.reduce_monomial(mon, rf)
                if mon in red:
                    rf = red[mon] + rf
                if rf.is_zero():
                    red.pop(mon, None)
                else:
                    red[mon] = rf
            parts = red
        else:
            parts = {m: c for m, c in parts.items() if not c.is_zero()}
        self.parts = parts
        self.rules = rules

    # -- constructors --------------------------------------------------------
    @staticmethod
    def from_rf(rf, rules=None):
        return FieldElement({(): rf} if not rf.is_zero() else {}, rules, reduce=False)

    @staticmethod
    def from_int(n, rules=None):
        return FieldElement.from_rf(RatFunc.from_int(n), rules)

    @staticmethod
    def symbol(sym, rules):
        return FieldElement({((sym, 1),): RF_ONE}, rules, reduce=False)

    # -- predicates ----------------------------------------------------------
    def is_zero(self):
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def is_radical_free(self):
        return all(m == () for m in self.parts)

    def rf(self):
        if not self.is_radical_free():
            raise ValueError("radical part present")
        return self.parts.get((), RF_ZERO)

    def __eq__(self, other):
        return isinstance(other, FieldElement) and self.parts == other.parts

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def _rules_with(self, other):
        if self.rules is None:
            return other.rules
        if other.rules is None or other.rules is self.rules:
            return self.rules
        raise ValueError("mixing incompatible radical rule sets")

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        rules = self._rules_with(other)
        parts = dict(self.parts)
        for m, c in other.parts.items():
            if m in parts:
                s = parts[m] + c
                if s.is_zero():
                    del parts[m]
                else:
                    parts[m] = s
            else:
                parts[m] = c
        return FieldElement(parts, rules, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FieldElement({m: -c for m, c in self.parts.items()}, self.rules, reduce=False)

    def __mul__(self, other):
        rules = self._rules_with(other)
        out = {}
        for m1, c1 in self.parts.items():
            for m2, c2 in other.parts.items():
                m = _mon_mul(m1, m2)
                c = c1 * c2
                if rules is not None:
                    m, c = rules.reduce_monomial(m, c)
                if m in out:
                    c = out[m] + c
                if c.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = c
        return FieldElement(out, rules, reduce=False)

    def scale(self, rf: RatFunc):
        if rf.is_zero():
            return FieldElement({}, self.rules, reduce=False)
        return FieldElement({m: c * rf for m, c in self.parts.items()}, self.rules, reduce=False)

    def inv(self):
        if not self.parts:
            raise ZeroDivisionError("inverting zero field element")
        if len(self.parts) != 1:
            raise ValueError("cannot invert a mixed radical element")
        (mon, rf), = self.parts.items()
        imon = tuple((s, -e) for s, e in mon)
        c = rf.inv()
        rules = self.rules
        if rules is not None:
            imon, c = rules.reduce_monomial(imon, c)
        return FieldElement({imon: c}, rules, reduce=False)

    def __truediv__(self, other):
        return self * other.inv()

    # -- maps ----------------------------------------------------------------
    def bar_q(self):
        if not self.is_radical_free():
            raise ValueError("bar_q defined on radical-free elements only")
        return FieldElement.from_rf(self.rf().bar(), self.rules)

    def star(self):
        """Complex conjugation for real q: identity on Q(s), conjugates symbols."""
        if self.is_radical_free():
            return self
        out = {}
        for mon, c in self.parts.items():
            m = tuple(sorted(((self.rules.star_symbol(s), e) for s, e in mon)))
            out[m] = c
        return FieldElement(out, self.rules, reduce=False)

    def substitute(self, s0: Fraction) -> Fraction:
        return self.rf().evaluate(Fraction(s0))

    def eval_sqrtq(self, q0: Fraction) -> QSqrt:
        return self.rf().eval_sqrtq(Fraction(q0))

    def has_pole_at(self, s0: Fraction) -> bool:
        return any(peval(c.den, Fraction(s0)) == 0 for c in self.parts.values())

    def __repr__(self):
        return "FieldElement(%s)" % coeff_str(self)


def _mon_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for s, e in m2:
        d[s] = d.get(s, 0) + e
    return tuple(sorted((s, e) for s, e in d.items() if e))


# ---------------------------------------------------------------------------
# printing (q-units, parseable by qeuclid.grammar)
# ---------------------------------------------------------------------------

_SYM_NAMES = {"g": "gamma", "G": "bgamma", "c": "gammac"}


def _rf_qstr(rf: RatFunc) -> str:
    num = _poly_qstr(rf.num)
    if rf.den == PONE:
        return num
    return "(%s)/(%s)" % (num, _poly_qstr(rf.den))


def _poly_qstr(p) -> str:
    if not p:
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        c = p[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
            continue
        if e % 2 == 0:
            v = "q" if e == 2 else "q^%d" % (e // 2)
        else:
            v = "q^(%d/2)" % e
        if c == 1:
            parts.append(v)
        elif c == -1:
            parts.append("-" + v)
        else:
            parts.append("%d*%s" % (c, v))
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def mon_str(mon) -> str:
    bits = []
    for (kind, a), e in mon:
        name = "%s%d" % (_SYM_NAMES[kind], a)
        bits.append(name if e == 1 else "%s^%d" % (name, e))
    return " ".join(bits)


def coeff_str(fe: FieldElement) -> str:
    if fe.is_zero():
        return "0"
    terms = []
    for mon in sorted(fe.parts):
        c = fe.parts[mon]
        cs = _rf_qstr(c)
        needs_paren = (" + " in cs or " - " in cs) and not cs.startswith("(")
        if needs_paren:
            cs = "(%s)" % cs
        if mon:
            ms = mon_str(mon)
            terms.append(ms if cs == "1" else ("-%s" % ms if cs == "-1" else "%s %s" % (cs, ms)))
        else:
            terms.append(cs)
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


# ---------------------------------------------------------------------------
# the deformation constants
# ---------------------------------------------------------------------------

class Constants:
    """q-constants attached to an index set: k, h, omega_i, q^rho_i."""

    def __init__(self, rho2):
        # rho2: map index -> 2*rho_i (always an integer)
        self.rho2 = rho2

    @staticmethod
    def q_power_half(e2: int) -> RatFunc:
        """q^(e2/2) = s^e2."""
        return RatFunc.s_power(e2)

    @property
    def q(self):
        return RatFunc.s_power(2)

    @property
    def k(self):
        # q - q^-1
        return RatFunc.s_power(2) - RatFunc.s_power(-2)

    @property
    def h(self):
        # q^(1/2) - q^(-1/2)
        return RatFunc.s_power(1) - RatFunc.s_power(-1)

    def q_rho(self, i) -> RatFunc:
        return RatFunc.s_power(self.rho2[i])

    def omega(self, i) -> RatFunc:
        r2 = self.rho2[i]
        return RatFunc.s_power(r2) + RatFunc.s_power(-r2)
