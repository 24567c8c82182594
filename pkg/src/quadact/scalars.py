"""Field arithmetic over an algebraically closed field of characteristic zero.

Two backends share one interface.  EXACT works over the Gaussian rationals
Q(i), lazily extended by radical generators y with memoized defining
relations y**k = x (a tower; no simplification across generators).  APPROX
is arbitrary-precision complex floating point via mpmath.

Values are operator-capable: Gaussian rationals (:class:`QI`), tower
elements (:class:`TowerElt`) and mpmath ``mpc`` all support ``+ - * /``
directly, so linear algebra can run on raw values.  Zero tests always go
through the owning field (APPROX needs tolerances, EXACT towers carry a
numeric consistency guard).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .errors import (
    ArithmeticInconsistency,
    BackendMismatch,
    DivisionByZero,
    ParseError,
)


class QI:
    """Gaussian rational (a + b*i)/d with d > 0 and gcd(a, b, d) = 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1, _reduced=False):
        if d == 1:
            self.a = a
            self.b = b
            self.d = 1
            return
        if d == 0:
            raise DivisionByZero("zero denominator")
        if not _reduced:
            if d < 0:
                a, b, d = -a, -b, -d
            g = gcd(gcd(a, b), d)
            if g > 1:
                a //= g
                b //= g
                d //= g
        self.a = a
        self.b = b
        self.d = d

    @staticmethod
    def from_fractions(re, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return QI(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    @property
    def re(self):
        return Fraction(self.a, self.d)

    @property
    def im(self):
        return Fraction(self.b, self.d)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        if isinstance(other, QI):
            if other.a == 0 and other.b == 0:
                return self
            if self.a == 0 and self.b == 0:
                return other
            if self.d == other.d:
                return QI(self.a + other.a, self.b + other.b, self.d)
            return QI(self.a * other.d + other.a * self.d,
                      self.b * other.d + other.b * self.d,
                      self.d * other.d)
        if isinstance(other, int):
            return QI(self.a + other * self.d, self.b, self.d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QI(-self.a, -self.b, self.d, _reduced=True)

    def __sub__(self, other):
        if isinstance(other, (QI, int)):
            return self + (-other if isinstance(other, QI) else QI(-other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return QI(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QI):
            if (self.a == 0 and self.b == 0) or (other.a == 0 and other.b == 0):
                return QI_ZERO
            if other.a == other.d and other.b == 0:
                return self
            if self.a == self.d and self.b == 0:
                return other
            if self.b == 0 and other.b == 0:
                return QI(self.a * other.a, 0, self.d * other.d)
            return QI(self.a * other.a - self.b * other.b,
                      self.a * other.b + self.b * other.a,
                      self.d * other.d)
        if isinstance(other, int):
            return QI(self.a * other, self.b * other, self.d)
        return NotImplemented

    __rmul__ = __mul__

    def inv(self):
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QI(self.d * self.a, -self.d * self.b, n)

    def __truediv__(self, other):
        if isinstance(other, QI):
            return self * other.inv()
        if isinstance(other, int):
            return QI(self.a, self.b, self.d * other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return QI(other) * self.inv()
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        acc = QI(1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = QI(other)
        if isinstance(other, QI):
            return self.a == other.a and self.b == other.b and self.d == other.d
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def conj(self):
        return QI(self.a, -self.b, self.d, _reduced=True)

    def __repr__(self):
        if self.b == 0:
            return f"{Fraction(self.a, self.d)}"
        return f"({Fraction(self.a, self.d)}+{Fraction(self.b, self.d)}i)"


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


def _val_is_zero_syntactic(v):
    if isinstance(v, QI):
        return v.is_zero()
    return not v.terms


def _key_trim(key):
    while key and key[-1] == 0:
        key = key[:-1]
    return key


def _key_add(k1, k2):
    if len(k1) < len(k2):
        k1, k2 = k2, k1
    return tuple(a + (k2[i] if i < len(k2) else 0) for i, a in enumerate(k1))


class TowerElt:
    """Element of a radical extension tower, held as a sparse Laurent-free
    polynomial in the generators: {exponent tuple: QI coefficient}."""

    __slots__ = ("tower", "terms", "_num", "_numf")

    def __init__(self, tower, terms):
        self.tower = tower
        self.terms = terms
        self._num = None
        self._numf = None

    # -- representation helpers -------------------------------------------

    def syntactic_zero(self):
        return not self.terms

    def demote(self):
        return self

    @property
    def level(self):
        return max(len(k) for k in self.terms) if self.terms else 0

    def key(self):
        return ("t",) + tuple(sorted((k, (c.a, c.b, c.d))
                                     for k, c in self.terms.items()))

    def numeric(self):
        if self._num is None:
            with mpmath.workprec(self.tower.field.config.precision):
                acc = mpmath.mpc(0)
                for k, c in self.terms.items():
                    term = mpmath.mpc(mpmath.mpf(c.a) / c.d, mpmath.mpf(c.b) / c.d)
                    for j, e in enumerate(k):
                        if e:
                            term = term * (self.tower.gen_numeric(j + 1) ** e)
                    acc += term
                self._num = acc
        return self._num

    def numeric_float(self):
        if self._numf is None:
            acc = 0j
            scale = 0.0
            for k, c in self.terms.items():
                term = complex(c.a / c.d, c.b / c.d)
                for j, e in enumerate(k):
                    if e:
                        term = term * (self.tower.gen_numeric_float(j + 1) ** e)
                acc += term
                scale = max(scale, abs(term))
            self._numf = (acc, scale)
        return self._numf

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = QI(other)
        if isinstance(other, QI):
            if other.a == 0 and other.b == 0:
                return self
            terms = dict(self.terms)
            cur = terms.get(())
            val = other if cur is None else cur + other
            if val.is_zero():
                terms.pop((), None)
            else:
                terms[()] = val
            return _mk(self.tower, terms)
        if isinstance(other, TowerElt):
            if other.tower is not self.tower:
                raise BackendMismatch("elements of different towers")
            big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) \
                else (other.terms, self.terms)
            terms = dict(big)
            for k, c in small.items():
                cur = terms.get(k)
                val = c if cur is None else cur + c
                if val.is_zero():
                    terms.pop(k, None)
                else:
                    terms[k] = val
            return _mk(self.tower, terms)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TowerElt(self.tower, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = QI(other)
        if isinstance(other, QI):
            return self + (-other)
        if isinstance(other, TowerElt):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = QI(other)
        if isinstance(other, QI):
            if other.a == 0 and other.b == 0:
                return QI_ZERO
            if other.a == other.d and other.b == 0:
                return self
            return TowerElt(self.tower, {k: c * other for k, c in self.terms.items()})
        if isinstance(other, TowerElt):
            if other.tower is not self.tower:
                raise BackendMismatch("elements of different towers")
            out = {}
            tower = self.tower
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    _accumulate(tower, out, _key_add(k1, k2), c1 * c2)
            return _mk(tower, out)
        return NotImplemented

    __rmul__ = __mul__

    def inv(self):
        return self.tower.invert(self)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = QI(other)
        if isinstance(other, QI):
            return self * other.inv()
        if isinstance(other, TowerElt):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        acc = QI_ONE
        base = self
        while e:
            if e & 1:
                acc = base * acc
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, QI, TowerElt)):
            diff = self - other
            if diff is NotImplemented:
                diff = -(other - self)
            return self.tower.field.is_zero(diff)
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = []
        for k, c in sorted(self.terms.items()):
            mono = "*".join(f"r{j + 1}^{e}" for j, e in enumerate(k) if e)
            parts.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


def _mk(tower, terms):
    terms = {k: c for k, c in terms.items() if not c.is_zero()}
    if not terms:
        return QI_ZERO
    if len(terms) == 1 and () in terms:
        return terms[()]
    return TowerElt(tower, terms)


def _accumulate(tower, out, key, coeff):
    """Add coeff * monomial(key) reducing exponents >= generator degree."""
    key = _key_trim(key)
    for j in range(len(key) - 1, -1, -1):
        e = key[j]
        kj = tower.degree(j + 1)
        if e >= kj:
            newkey = _key_trim(key[:j] + (e - kj,) + key[j + 1:])
            rad = tower.radicand(j + 1)
            if isinstance(rad, QI):
                _accumulate(tower, out, newkey, coeff * rad)
            else:
                for rk, rc in rad.terms.items():
                    _accumulate(tower, out, _key_add(newkey, rk), coeff * rc)
            return
    cur = out.get(key)
    val = coeff if cur is None else cur + coeff
    if val.is_zero():
        out.pop(key, None)
    else:
        out[key] = val


def _poly_divmod(num, den, lower_inv):
    """Division with remainder in K[t]; K handled through ``lower_inv``."""
    num = list(num)
    q = [QI_ZERO] * max(0, len(num) - len(den) + 1)
    dinv = lower_inv(den[-1])
    while len(num) >= len(den) and num:
        if _val_is_zero_syntactic(num[-1]):
            num.pop()
            continue
        c = num[-1] * dinv
        off = len(num) - len(den)
        q[off] = c
        for j, dc in enumerate(den):
            num[off + j] = num[off + j] - c * dc
        num.pop()
    return q, num


def _poly_trim(coeffs):
    while coeffs and _val_is_zero_syntactic(coeffs[-1]):
        coeffs = coeffs[:-1]
    return coeffs


class Tower:
    """Registry of radical generators for one EXACT field session."""

    def __init__(self, field):
        self.field = field
        self.gens = []       # list of (k, radicand, mp numeric, float numeric)
        self._root_memo = {}

    def degree(self, level):
        return self.gens[level - 1][0]

    def radicand(self, level):
        return self.gens[level - 1][1]

    def gen_numeric(self, level):
        return self.gens[level - 1][2]

    def gen_numeric_float(self, level):
        return self.gens[level - 1][3]

    def generator(self, level):
        key = (0,) * (level - 1) + (1,)
        return TowerElt(self, {key: QI_ONE})

    def _as_poly(self, elt, level):
        """Coefficient list of elt as a polynomial in generator ``level``."""
        k = self.degree(level)
        coeffs = [{} for _ in range(k)]
        for key, c in elt.terms.items():
            e = key[level - 1] if len(key) >= level else 0
            rest = _key_trim(key[:level - 1] + (0,) + key[level:]) if len(key) >= level \
                else key
            coeffs[e][rest] = c
        return [_mk(self, d) for d in coeffs]

    def _poly_numeric_float(self, poly, level):
        g = self.gen_numeric_float(level)
        acc = 0j
        for c in reversed(poly):
            cn = c.numeric_float()[0] if isinstance(c, TowerElt) \
                else complex(c.a / c.d, c.b / c.d)
            acc = acc * g + cn
        return acc

    def invert(self, elt):
        """Extended-Euclid inverse modulo t**k - radicand at elt's top level.

        A reducible defining relation (hidden perfect power) can make the
        gcd nontrivial even for invertible elements; the true minimal
        polynomial of the generator divides the cofactor of any gcd that is
        numerically nonzero at the generator, so the modulus is reduced and
        the Euclid pass retried."""
        if not elt.terms:
            raise DivisionByZero("inverse of zero tower element")
        level = elt.level
        if level == 0:
            raise DivisionByZero("inverse of constant requested through tower")
        k = self.degree(level)
        rad = self.radicand(level)

        def lower_inv(v):
            if isinstance(v, TowerElt):
                return self.invert(v)
            return v.inv()

        modulus = [-(rad)] + [QI_ZERO] * (k - 1) + [QI_ONE]
        epoly = _poly_trim(self._as_poly(elt, level))
        while True:
            r0, r1 = modulus, list(epoly)
            s0, s1 = [], [QI_ONE]
            while True:
                q, r = _poly_divmod(r0, r1, lower_inv)
                r = _poly_trim(r)
                if not r:
                    break
                s = list(s0) + [QI_ZERO] * max(0, len(q) + len(s1) - 1 - len(s0))
                for a, qa in enumerate(q):
                    if _val_is_zero_syntactic(qa):
                        continue
                    for b, sb in enumerate(s1):
                        s[a + b] = s[a + b] - qa * sb
                r0, s0, r1, s1 = r1, s1, r, _poly_trim(s)
            if len(r1) == 1:
                break
            val = self._poly_numeric_float(r1, level)
            scale = max(1.0, max((abs(c.numeric_float()[0]) if isinstance(c, TowerElt)
                                  else abs(complex(c.a / c.d, c.b / c.d)))
                                 for c in r1))
            if abs(val) < 1e-9 * scale:
                raise ArithmeticInconsistency(
                    "inverse of a tower element that vanishes in the quotient")
            cof, rem = _poly_divmod(modulus, r1, lower_inv)
            if _poly_trim(rem):
                raise ArithmeticInconsistency("gcd does not divide the modulus")
            modulus = _poly_trim(cof)
            if len(modulus) < 2:
                raise ArithmeticInconsistency("modulus collapsed during inversion")
            _, epoly = _poly_divmod(epoly, modulus, lower_inv)
            epoly = _poly_trim(epoly)
            if not epoly:
                raise ArithmeticInconsistency(
                    "inverse of a tower element that vanishes in the quotient")
        c = lower_inv(r1[0])
        g = self.generator(level)
        out = QI_ZERO
        for j, sc in enumerate(s1):
            mono = sc * c
            for _ in range(j):
                mono = mono * g
            out = out + mono
        check = elt * out
        if isinstance(check, TowerElt):
            num, scale = check.numeric_float()
            if abs(num - 1.0) > 1e-7 * max(1.0, scale):
                raise ArithmeticInconsistency("tower inverse failed its check")
        elif not (check.a == check.d and check.b == 0):
            num = complex(check.a / check.d, check.b / check.d)
            if abs(num - 1.0) > 1e-9:
                raise ArithmeticInconsistency("tower inverse failed its check")
        return out

    def adjoin_root(self, value, k):
        key = (k, value.key() if isinstance(value, TowerElt) else (value.a, value.b, value.d))
        hit = self._root_memo.get(key)
        if hit is not None:
            return hit
        with mpmath.workprec(self.field.config.precision):
            num = value.numeric() if isinstance(value, TowerElt) else mpmath.mpc(
                mpmath.mpf(value.a) / value.d, mpmath.mpf(value.b) / value.d)
            root_num = mpmath.power(num, mpmath.mpf(1) / k)
        self.gens.append((k, value, root_num, complex(root_num)))
        g = self.generator(len(self.gens))
        self._root_memo[key] = g
        return g


@dataclass
class FieldConfig:
    backend: str = "exact"
    epsilon: float = 1e-9
    precision: int = 256

    def __post_init__(self):
        if self.backend not in ("exact", "approx"):
            raise ParseError(f"unknown backend {self.backend!r}")
        if self.epsilon <= 0:
            raise ParseError("epsilon must be positive")
        if self.precision < 64:
            raise ParseError("precision must be at least 64 bits")


class ExactField:
    """Gaussian rationals plus a per-session radical tower."""

    backend = "exact"

    def __init__(self, config=None):
        self.config = config or FieldConfig("exact")
        self.tower = Tower(self)
        self.zero = QI_ZERO
        self.one = QI_ONE
        self.i = QI_I

    def from_int(self, n):
        return QI(n)

    def from_fractions(self, re, im=0):
        return QI.from_fractions(re, im)

    def is_zero(self, x, scale=None):
        if isinstance(x, int):
            return x == 0
        if isinstance(x, QI):
            return x.is_zero()
        if x.syntactic_zero():
            return True
        # Cheap float screen; escalate to full precision only when suspicious.
        # A syntactically nonzero element can be a true zero when a radicand
        # was secretly a perfect power (the defining relation is reducible);
        # at 256-bit precision a value below 1e-50 relative is zero beyond
        # plausibility for this domain, so the test decides the quotient
        # field numerically.  The middle zone stays an error.
        num, scale = x.numeric_float()
        if abs(num) >= 1e-9 * max(1.0, scale):
            return False
        with mpmath.workprec(max(self.config.precision, 256)):
            hi = x.numeric()
            bound = max(mpmath.mpf(1), mpmath.mpf(scale))
            if abs(hi) < mpmath.mpf("1e-50") * bound:
                return True
            if abs(hi) < mpmath.mpf("1e-25") * bound:
                raise ArithmeticInconsistency(
                    "tower element sits in the ambiguous zero-test zone; "
                    "raise the precision or simplify the input")
        return False

    def eq(self, x, y):
        return self.is_zero(x - y)

    def numeric(self, x):
        if isinstance(x, int):
            return complex(x)
        if isinstance(x, QI):
            return complex(x.a / x.d, x.b / x.d)
        return complex(x.numeric())

    def kth_root(self, x, k):
        if k < 1:
            raise ValueError("k must be >= 1")
        if self.is_zero(x):
            return self.zero
        if k == 1:
            return x
        if isinstance(x, int):
            x = QI(x)
        if isinstance(x, QI):
            y = self._qi_root(x, k)
            if y is not None:
                return y
            return self.tower.adjoin_root(x, k)
        x = x.demote()
        if isinstance(x, QI):
            return self.kth_root(x, k)
        y = self._monomial_root(x, k)
        if y is not None:
            return y
        return self.tower.adjoin_root(x, k)

    def _qi_root(self, x, k):
        """Exact Gaussian-rational k-th root, if one exists."""
        with mpmath.workprec(max(self.config.precision, 128)):
            num = mpmath.mpc(mpmath.mpf(x.a) / x.d, mpmath.mpf(x.b) / x.d)
            root = mpmath.power(num, mpmath.mpf(1) / k)
            for cand_num in [root] + [root * mpmath.exp(2j * mpmath.pi * j / k) for j in range(1, k)]:
                re = Fraction(float(cand_num.real)).limit_denominator(10 ** 9)
                im = Fraction(float(cand_num.imag)).limit_denominator(10 ** 9)
                cand = QI.from_fractions(re, im)
                acc = QI_ONE
                for _ in range(k):
                    acc = acc * cand
                if acc == x:
                    return cand
        return None

    def _monomial_root(self, x, k):
        """Root of c * prod(g_j ** e_j) when every e_j is divisible by k and
        the coefficient has an exact Gaussian-rational root."""
        if len(x.terms) != 1:
            return None
        (key, c), = x.terms.items()
        if any(e % k for e in key):
            return None
        croot = self._qi_root(c, k)
        if croot is None:
            return None
        terms = {tuple(e // k for e in key): croot}
        newkey = _key_trim(tuple(e // k for e in key))
        if not newkey:
            return croot
        return TowerElt(self.tower, {newkey: croot})

    def sort_key(self, x):
        if isinstance(x, int):
            x = QI(x)
        if isinstance(x, QI):
            return (0, x.re, x.im)
        return (1, x.level) + (str(x.key()),)

    def literal(self, x):
        """Render as a file literal (tower elements are not serializable)."""
        if isinstance(x, int):
            x = QI(x)
        if isinstance(x, QI):
            if x.im == 0:
                return str(x.re)
            return {"re": str(x.re), "im": str(x.im)}
        raise ParseError("tower elements have no file literal")


class ApproxField:
    """Arbitrary-precision complex floats (mpmath) with tolerance tests."""

    backend = "approx"

    def __init__(self, config=None):
        self.config = config or FieldConfig("approx")
        self.prec = self.config.precision
        with mpmath.workprec(self.prec):
            self.zero = mpmath.mpc(0)
            self.one = mpmath.mpc(1)
            self.i = mpmath.mpc(0, 1)
        self.eps = mpmath.mpf(self.config.epsilon)
        self.floor = mpmath.mpf("1e-30")

    def from_int(self, n):
        return mpmath.mpc(n)

    def from_fractions(self, re, im=0):
        re = Fraction(re)
        im = Fraction(im)
        with mpmath.workprec(self.prec):
            return mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator,
                              mpmath.mpf(im.numerator) / im.denominator)

    def is_zero(self, x, scale=None):
        s = mpmath.mpf(1) if scale is None else max(mpmath.mpf(1), mpmath.mpf(abs(scale)))
        return abs(x) <= max(self.floor, self.eps * s)

    def eq(self, x, y):
        return self.is_zero(x - y, scale=max(abs(x), abs(y), 1))

    def numeric(self, x):
        return complex(x)

    def kth_root(self, x, k):
        if k < 1:
            raise ValueError("k must be >= 1")
        with mpmath.workprec(self.prec):
            if self.is_zero(x):
                return self.zero
            if k == 1:
                return mpmath.mpc(x)
            return mpmath.power(x, mpmath.mpf(1) / k)

    def sort_key(self, x):
        return (float(mpmath.re(x)), float(mpmath.im(x)))

    def literal(self, x):
        return {"float": mpmath.nstr(x, 17)}


def make_field(config=None):
    config = config or FieldConfig()
    if config.backend == "exact":
        return ExactField(config)
    return ApproxField(config)


# ---------------------------------------------------------------------------


class Scalar:
    """Backend-tagged scalar; thin convenience wrapper over raw values."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, x):
        if isinstance(x, Scalar):
            if x.field is not self.field:
                raise BackendMismatch("scalars from different fields")
            return x.value
        if isinstance(x, int):
            return self.field.from_int(x)
        raise BackendMismatch(f"cannot combine Scalar with {type(x).__name__}")

    def __add__(self, x):
        return Scalar(self.field, self.value + self._other(x))

    def __sub__(self, x):
        return Scalar(self.field, self.value - self._other(x))

    def __mul__(self, x):
        return Scalar(self.field, self.value * self._other(x))

    def __truediv__(self, x):
        d = self._other(x)
        if self.field.is_zero(d):
            raise DivisionByZero("scalar division by zero")
        return Scalar(self.field, self.value / d)

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def __eq__(self, x):
        try:
            return self.field.is_zero(self.value - self._other(x))
        except BackendMismatch:
            return NotImplemented

    def __hash__(self):
        return hash(repr(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def kth_root(self, k):
        return Scalar(self.field, self.field.kth_root(self.value, k))

    def __repr__(self):
        return f"Scalar[{self.field.backend}]({self.value!r})"


def migrate_value(dst, v):
    """Rebuild a value inside another EXACT field's tower.

    Sound because every generator is adjoined with principal-branch
    numerics, so the rebuilt generators agree with the source ones."""
    if isinstance(v, int):
        return QI(v)
    if isinstance(v, QI):
        return v
    src = v.tower

    def gen_image(j):
        k = src.degree(j + 1)
        rad = src.radicand(j + 1)
        return dst.kth_root(migrate_value(dst, rad), k)

    acc = dst.zero
    for key, c in v.terms.items():
        term = migrate_value(dst, c)
        for j, e in enumerate(key):
            if e:
                term = term * (gen_image(j) ** e)
        acc = acc + term
    return acc


def parse_literal(field, lit):
    """Parse a scalar literal per the file grammar."""
    try:
        if isinstance(lit, str):
            return field.from_fractions(Fraction(lit))
        if isinstance(lit, (int,)):
            return field.from_int(lit)
        if isinstance(lit, dict):
            if "float" in lit:
                if field.backend != "approx":
                    raise ParseError("float literals require the approx backend")
                with mpmath.workprec(field.prec):
                    return mpmath.mpc(mpmath.mpf(lit["float"]))
            re = Fraction(lit.get("re", "0"))
            im = Fraction(lit.get("im", "0"))
            return field.from_fractions(re, im)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar literal {lit!r}: {exc}") from None
    raise ParseError(f"bad scalar literal {lit!r}")
