"""p-adic numbers with capped absolute precision, quadratic extensions of Q
(and of Q_p), and the Iwasawa logarithm / exponential / Teichmuller lifts.

Elements of Q are kept as :class:`fractions.Fraction` everywhere else in the
package; :class:`PAdicNumber` only appears once a computation leaves exact
arithmetic (the L-function evaluation).
"""
from fractions import Fraction
from math import inf
from numbers import Rational

from sympy.ntheory import isprime


def _check_prime(p):
    if p == 2 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def vp_int(n, p):
    """Valuation of a nonzero integer."""
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(x, p):
    x = Fraction(x)
    if x == 0:
        return inf
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def valuation(x, p=None):
    """v_p of a rational, a :class:`PAdicNumber` or a :class:`QuadraticExtElement`.

    Returns ``math.inf`` for exact zero; quadratic elements may have
    half-integral valuation (returned as a Fraction).
    """
    if isinstance(x, (PAdicNumber, QuadraticExtElement)):
        return x.valuation()
    if p is None:
        raise ValueError("p is required for rational input")
    _check_prime(p)
    return vp_rational(x, p)


class PAdicNumber:
    """p^val * unit + O(p^prec), with 0 <= unit < p^(prec - val).

    A zero known to precision N is stored with unit 0 and val == N.
    """

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p, val, unit, prec):
        self.p = p
        self.prec = prec
        unit %= p ** max(prec - val, 0)
        if val >= prec or unit == 0:
            self.val, self.unit = prec, 0
            return
        while unit % p == 0:
            unit //= p
            val += 1
        self.val = val
        self.unit = unit % p ** (prec - val)

    @classmethod
    def from_rational(cls, x, p, prec):
        x = Fraction(x)
        if x == 0:
            return cls(p, prec, 0, prec)
        a = vp_int(x.numerator, p)
        b = vp_int(x.denominator, p)
        v = a - b
        if v >= prec:
            return cls(p, prec, 0, prec)
        mod = p ** (prec - v)
        num = x.numerator // p ** a
        den = x.denominator // p ** b
        return cls(p, v, num * pow(den, -1, mod), prec)

    @classmethod
    def zero(cls, p, prec):
        return cls(p, prec, 0, prec)

    def is_zero(self):
        return self.unit == 0

    def __bool__(self):
        return self.unit != 0

    def valuation(self):
        return self.val

    def to_fraction(self):
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def _coerce(self, other, prec):
        if isinstance(other, PAdicNumber):
            if other.p != self.p:
                raise ValueError("prime mismatch")
            return other
        if isinstance(other, Rational):
            return PAdicNumber.from_rational(other, self.p, prec)
        return NotImplemented

    def add_bigoh(self, prec):
        """Reduce to absolute precision ``min(self.prec, prec)``."""
        return PAdicNumber(self.p, self.val, self.unit, min(self.prec, prec))

    def __add__(self, other):
        other = self._coerce(other, self.prec)
        if other is NotImplemented:
            return other
        p = self.p
        P = min(self.prec, other.prec)
        v = min(self.val, other.val)
        if v >= P:
            return PAdicNumber(p, P, 0, P)
        u = self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)
        return PAdicNumber(p, v, u, P)

    __radd__ = __add__

    def __neg__(self):
        return PAdicNumber(self.p, self.val, -self.unit, self.prec)

    def __sub__(self, other):
        other = self._coerce(other, self.prec)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            # exact scalar: shifts precision by its valuation
            vr = vp_rational(other, self.p)
            if vr == inf:
                return PAdicNumber.zero(self.p, self.prec + max(self.val, 0))
            other = PAdicNumber.from_rational(other, self.p, vr + self.prec - self.val + 1)
            P = self.prec + vr
            return PAdicNumber(self.p, self.val + other.val, self.unit * other.unit, P)
        if not isinstance(other, PAdicNumber):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("prime mismatch")
        P = min(self.prec + other.val, other.prec + self.val)
        return PAdicNumber(self.p, self.val + other.val, self.unit * other.unit, P)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (1 / Fraction(other))
        if not isinstance(other, PAdicNumber):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by a p-adic zero")
        p = self.p
        v = self.val - other.val
        P = min(self.prec - other.val, self.val + other.prec - 2 * other.val)
        if P - v <= 0:
            return PAdicNumber(p, P, 0, P)
        inv = pow(other.unit, -1, p ** (P - v))
        return PAdicNumber(p, v, self.unit * inv, P)

    def __rtruediv__(self, other):
        other = self._coerce(other, self.prec - 2 * self.val + self.prec)
        return other / self

    def __pow__(self, n):
        if n < 0:
            return 1 / self ** (-n)
        if n == 0:
            return PAdicNumber(self.p, 0, 1, self.prec - self.val)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = PAdicNumber.from_rational(other, self.p, self.prec)
        if not isinstance(other, PAdicNumber):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.prec})"
        return f"{self.unit}*{self.p}^{self.val} + O({self.p}^{self.prec})"


class QuadraticField:
    """Q(sqrt(D)) together with a prime p used for valuations.

    When D is a square in Q_p the field has two embeddings into Q_p; the one
    sending sqrt(D) to the root congruent to ``root_residue`` is used.
    """

    def __init__(self, D, p=None, root_residue=None):
        D = Fraction(D)
        if D == 0:
            raise ValueError("D must be nonzero")
        self.D = D
        self.p = p
        self.root_residue = None
        if p is not None:
            _check_prime(p)
            vD = vp_rational(D, p)
            unit = D / Fraction(p) ** vD
            if vD % 2:
                self.kind = "ramified"
            else:
                u = unit.numerator * pow(unit.denominator, -1, p) % p
                self.kind = "split" if pow(u, (p - 1) // 2, p) == 1 else "inert"
                if self.kind == "split":
                    roots = sorted(r for r in range(1, p) if (r * r - u) % p == 0)
                    if root_residue is None:
                        root_residue = roots[0]
                    if root_residue % p not in roots:
                        raise ValueError(f"{root_residue} is not a square root of D mod {p}")
                    self.root_residue = root_residue % p
        else:
            self.kind = None

    def key(self):
        return (self.D, self.p, self.root_residue)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"QuadraticField(D={self.D}, p={self.p}, kind={self.kind})"

    def gen(self):
        return QuadraticExtElement(0, 1, self)

    def __call__(self, a, b=0):
        return QuadraticExtElement(a, b, self)

    def sqrt_D_padic(self, prec):
        """Image of sqrt(D) in Q_p under the chosen embedding (split fields only)."""
        if self.kind != "split":
            raise ValueError("sqrt(D) is not in Q_p")
        p = self.p
        vD = vp_rational(self.D, p)
        unit = self.D / Fraction(p) ** vD
        N = prec + 2
        mod = p ** N
        u = unit.numerator * pow(unit.denominator, -1, mod) % mod
        r = self.root_residue
        k = 1
        while k < N:
            k = min(2 * k, N)
            m = p ** k
            r = (r - (r * r - u) * pow(2 * r, -1, m)) % m
        return PAdicNumber(p, vD // 2, r, prec + vD // 2)


_FAST = (Fraction, int)


def _is_scalar(x):
    return type(x) in _FAST or isinstance(x, (Rational, PAdicNumber))


class QuadraticExtElement:
    """a + b*sqrt(D) with a, b rationals (or p-adic numbers)."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field):
        ta, tb = type(a), type(b)
        self.a = a if ta is Fraction else Fraction(a) if ta is int or isinstance(a, Rational) else a
        self.b = b if tb is Fraction else Fraction(b) if tb is int or isinstance(b, Rational) else b
        self.field = field

    @property
    def D(self):
        return self.field.D

    def _wrap(self, other):
        if isinstance(other, QuadraticExtElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("quadratic field mismatch")
            return other
        if _is_scalar(other):
            return QuadraticExtElement(other, 0, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return QuadraticExtElement(self.a + other.a, self.b + other.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticExtElement(-self.a, -self.b, self.field)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return QuadraticExtElement(self.a - other.a, self.b - other.b, self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return QuadraticExtElement(self.a * other, self.b * other, self.field)
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadraticExtElement(a * c + self.D * b * d, a * d + b * c, self.field)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticExtElement(self.a, -self.b, self.field)

    def norm(self):
        return self.a * self.a - self.D * self.b * self.b

    def trace(self):
        return 2 * self.a

    def inverse(self):
        n = self.norm()
        if (n == 0) if not isinstance(n, PAdicNumber) else n.is_zero():
            raise ZeroDivisionError("element is not invertible")
        return QuadraticExtElement(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        if _is_scalar(other):
            return QuadraticExtElement(self.a / other, self.b / other, self.field)
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticExtElement(1, 0, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if _is_scalar(other):
            return not self.b and self.a == other
        if isinstance(other, QuadraticExtElement):
            return (self.field is other.field or self.field == other.field) and \
                self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.D))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.D}))"

    def valuation(self):
        """p-adic valuation; half-integral in the ramified case.

        Inert and ramified fields: half the valuation of the norm.  Split
        fields: valuation of the image under the chosen embedding.
        """
        F = self.field
        p = F.p
        if p is None:
            raise ValueError("field has no attached prime")
        if self.is_zero():
            return inf
        if isinstance(self.a, PAdicNumber) or isinstance(self.b, PAdicNumber):
            va = valuation(self.a, p) if not _zeroish(self.a) else inf
            vb = valuation(self.b, p) if not _zeroish(self.b) else inf
            return min(Fraction(va) if va != inf else inf,
                       Fraction(vb) + Fraction(vp_rational(F.D, p), 2) if vb != inf else inf)
        if F.kind in ("ramified", "inert"):
            return Fraction(vp_rational(self.norm(), p), 2)
        if self.b == 0:
            return vp_rational(self.a, p)
        # split: increase working precision until the image is visibly nonzero
        prec = 10 + max(abs(vp_rational(self.a, p)) if self.a else 0,
                        abs(vp_rational(self.b, p)))
        while True:
            img = self.to_padic(prec)
            if not img.is_zero():
                return img.val
            prec *= 2

    def to_padic(self, prec):
        """Image in Q_p (split) or componentwise p-adic element (otherwise)."""
        F = self.field
        p = F.p
        if F.kind == "split":
            shift = 0
            if self.b != 0:
                shift = max(0, -vp_rational(self.b, p))
            r = F.sqrt_D_padic(prec + shift)
            a = PAdicNumber.from_rational(self.a, p, prec)
            if self.b == 0:
                return a
            return (a + r * self.b).add_bigoh(prec)
        return QuadraticExtElement(PAdicNumber.from_rational(self.a, p, prec),
                                   PAdicNumber.from_rational(self.b, p, prec), F)


def _zeroish(x):
    return x.is_zero() if isinstance(x, PAdicNumber) else x == 0


def half_power_field(p):
    """Q(p^(1/2)); the generator plays the role of |p|^(-1/2)."""
    return QuadraticField(p, p)


def iwasawa_log(x, p, prec):
    """Iwasawa logarithm log<x> of a unit x of Z_p, to absolute precision ``prec``.

    Uses log<x> = log(x^(p-1)) / (p-1), which kills the Teichmuller factor
    without computing it.
    """
    _check_prime(p)
    if isinstance(x, PAdicNumber):
        if x.val != 0 or x.is_zero():
            raise ValueError("iwasawa_log needs a p-adic unit")
        prec = min(prec, x.prec)
        xi = x.unit
    else:
        x = Fraction(x)
        if x == 0 or vp_rational(x, p) != 0:
            raise ValueError("iwasawa_log needs a p-adic unit")
        xi = None
    # terms t^n/n have valuation >= n - log_p(n); this is >= prec past nmax
    extra = 0
    while p ** extra <= 2 * prec + 2:
        extra += 1
    nmax = prec + extra + 1
    W = prec + extra
    mod = p ** W
    if xi is None:
        xi = x.numerator * pow(x.denominator, -1, mod) % mod
    t = (pow(xi, p - 1, mod) - 1) % mod
    tn = 1
    acc = 0
    modN = p ** prec
    for n in range(1, nmax + 1):
        tn = tn * t % mod
        vn = vp_int(n, p)
        term = (tn // p ** vn) * pow(n // p ** vn, -1, mod)
        acc += term if n % 2 else -term
    acc %= modN
    acc = acc * pow(p - 1, -1, modN) % modN
    return PAdicNumber(p, 0, acc, prec)


def padic_exp(x, prec, p=None):
    """exp(x) for v_p(x) >= 1, to absolute precision ``prec``."""
    if not isinstance(x, PAdicNumber):
        if p is None:
            raise ValueError("p is required for rational input")
        _check_prime(p)
        x = PAdicNumber.from_rational(x, p, prec + 1 + abs(vp_rational(x, p)) if x else prec)
    p = x.p
    if x.is_zero():
        return PAdicNumber.from_rational(1, p, min(prec, x.prec))
    if x.val < 1:
        raise ValueError("padic_exp requires v_p(x) >= 1")
    prec = min(prec, x.prec)
    mod = p ** prec
    v = x.val
    u = x.unit
    acc = 1
    n = 1
    un = 1
    vfact = 0
    ufact = 1
    while True:
        vn = vp_int(n, p)
        vfact += vn
        ufact = ufact * (n // p ** vn) % mod
        un = un * u % mod
        e = n * v - vfact
        if e < prec:
            acc += p ** e * un * pow(ufact, -1, mod)
        # later terms have valuation >= (n(p-2) + 1)/(p-1)
        if n * (p - 2) + 1 >= (p - 1) * prec:
            break
        n += 1
    return PAdicNumber(p, 0, acc % mod, prec)


def teichmuller(a, p, prec):
    """The (p-1)-st root of unity congruent to a mod p."""
    _check_prime(p)
    if a % p == 0:
        raise ValueError("teichmuller lift needs a unit residue")
    mod = p ** prec
    return PAdicNumber(p, 0, pow(a % p, p ** (prec - 1), mod), prec)
