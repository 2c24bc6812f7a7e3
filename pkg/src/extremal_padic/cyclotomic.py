"""Cyclotomic fields, the additive character psi, Dirichlet characters of
p-power conductor, Gauss sums and the local integrals over Z_p and Z_p^x.

Measures: ``dx`` gives Z_p volume 1 and ``d^x x`` gives Z_p^x volume 1, so on
units d^x x = (1 - 1/p)^(-1) dx.  Every integral below is an exact finite
Riemann sum at a level where the integrand is locally constant.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd, inf
from numbers import Rational

from sympy import Poly, Symbol, cyclotomic_poly, totient
from sympy.ntheory import isprime, primitive_root

from .padic import vp_int, vp_rational

_x = Symbol("x")


def _lcm(a, b):
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def _power_table(M):
    """Sparse integer coordinates {i: t} of zeta_M^e, 0 <= e < M, in the
    basis 1, zeta, ..., zeta^(d-1)."""
    d = int(totient(M))
    phi = [int(c) for c in reversed(Poly(cyclotomic_poly(M, _x), _x).all_coeffs())]
    low = {i: -c for i, c in enumerate(phi[:d]) if c}
    table = [{i: 1} for i in range(d)]
    v = {d - 1: 1}
    for _ in range(d, M):
        top = v.pop(d - 1, 0)
        v = {i + 1: t for i, t in v.items()}
        for i, c in low.items():
            w = v.get(i, 0) + top * c
            if w:
                v[i] = w
            else:
                v.pop(i, None)
        table.append(dict(v))
    return d, tuple(table)


_ZERO = Fraction(0)


def _is_zero(c):
    return not c


class CycloElement:
    """An element of Q(zeta_M) (or of R tensor Q(zeta_M) for a coefficient
    ring R such as a quadratic field), stored in the power basis modulo the
    M-th cyclotomic polynomial."""

    __slots__ = ("M", "coeffs")

    def __init__(self, M, coeffs=None):
        d, _ = _power_table(M)
        self.M = M
        if coeffs is None:
            coeffs = [Fraction(0)] * d
        else:
            coeffs = [(Fraction(c) if c else _ZERO) if type(c) is int else c for c in coeffs]
            if len(coeffs) != d:
                raise ValueError(f"need {d} coefficients for modulus {M}")
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, M, coeffs):
        obj = object.__new__(cls)
        obj.M = M
        obj.coeffs = coeffs
        return obj

    @classmethod
    def scalar(cls, M, c):
        d, _ = _power_table(M)
        coeffs = [Fraction(0)] * d
        coeffs[0] = Fraction(c) if isinstance(c, Rational) else c
        return cls(M, coeffs)

    @classmethod
    def zeta(cls, M, e=1):
        d, table = _power_table(M)
        coeffs = [Fraction(0)] * d
        for i, t in table[e % M].items():
            coeffs[i] = Fraction(t)
        return cls(M, coeffs)

    @classmethod
    def from_exponents(cls, M, counts):
        """Sum of c * zeta_M^e over a mapping e -> c."""
        d, table = _power_table(M)
        acc = [0] * d
        for e, c in counts.items():
            if _is_zero(c):
                continue
            for i, t in table[e % M].items():
                acc[i] = acc[i] + c * t
        return cls(M, acc)

    def lift(self, L):
        """The same element viewed in Q(zeta_L), M | L."""
        if L == self.M:
            return self
        if L % self.M:
            raise ValueError(f"{self.M} does not divide {L}")
        step = L // self.M
        return CycloElement.from_exponents(
            L, {i * step: c for i, c in enumerate(self.coeffs) if not _is_zero(c)})

    def _common(self, other):
        if isinstance(other, CycloElement):
            L = _lcm(self.M, other.M)
            return self.lift(L), other.lift(L)
        return None

    def __add__(self, other):
        pair = self._common(other)
        if pair is not None:
            a, b = pair
            return CycloElement._raw(a.M, [x + y if y else x for x, y in zip(a.coeffs, b.coeffs)])
        coeffs = list(self.coeffs)
        coeffs[0] = coeffs[0] + other
        return CycloElement(self.M, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return CycloElement._raw(self.M, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._common(other)
        if pair is None:
            return CycloElement._raw(self.M, [c * other if c else c for c in self.coeffs])
        a, b = pair
        M = a.M
        d, table = _power_table(M)
        na = [(i, x) for i, x in enumerate(a.coeffs) if not _is_zero(x)]
        nb = [(j, y) for j, y in enumerate(b.coeffs) if not _is_zero(y)]
        prod = {}
        for i, x in na:
            for j, y in nb:
                e = i + j
                prod[e] = prod[e] + x * y if e in prod else x * y
        acc = [Fraction(0)] * d
        for e, c in prod.items():
            if e < d:
                acc[e] = acc[e] + c
            else:
                for i, t in table[e % M].items():
                    acc[i] = acc[i] + c * t
        return CycloElement._raw(M, acc)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, CycloElement):
            if not other.is_scalar():
                raise TypeError("division by a non-scalar cyclotomic element")
            other = other.coeffs[0]
        if type(other) is int:
            return CycloElement._raw(self.M, [c if not c else Fraction(c, other) if type(c) is int
                                              else c / other for c in self.coeffs])
        return CycloElement._raw(self.M, [c / other for c in self.coeffs])

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = CycloElement.scalar(self.M, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self):
        return all(_is_zero(c) for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_scalar(self):
        return all(_is_zero(c) for c in self.coeffs[1:])

    def to_scalar(self):
        if not self.is_scalar():
            raise ValueError("element is not in the coefficient ring")
        return self.coeffs[0]

    def map_coeffs(self, f):
        return CycloElement(self.M, [f(c) for c in self.coeffs])

    def __eq__(self, other):
        pair = self._common(other)
        if pair is not None:
            a, b = pair
            return all(x is y or x == y for x, y in zip(a.coeffs, b.coeffs))
        try:
            return self.is_scalar() and self.coeffs[0] == other
        except TypeError:
            return NotImplemented

    __hash__ = None

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if not _is_zero(c)]
        return f"Q(zeta_{self.M})[" + (" + ".join(terms) or "0") + "]"

    def to_json(self):
        return {"modulus": self.M, "coefficients": [str(c) for c in self.coeffs]}


def _check_prime(p):
    if p == 2 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def _split_p_power(x, p):
    """Write a rational x as u / p^n with u an integer; reject other denominators."""
    x = Fraction(x)
    n = vp_int(x.denominator, p) if x.denominator != 1 else 0
    if x.denominator != p ** n:
        raise ValueError(f"denominator of {x} is not a power of {p}")
    return x.numerator, n


def psi_exponent(x, p, L):
    """e with psi(x) = zeta_L^e; L must be divisible by the denominator of x."""
    u, n = _split_p_power(x, p)
    if L % p ** n:
        raise ValueError(f"zeta_{L} does not contain psi({x})")
    return (u * (L // p ** n)) % L


def psi_value(x, p):
    """psi(u/p^n) = zeta_{p^n}^u; trivial on Z_p."""
    _check_prime(p)
    u, n = _split_p_power(x, p)
    if n == 0:
        return CycloElement.scalar(1, 1)
    return CycloElement.zeta(p ** n, u)


@lru_cache(maxsize=None)
def generator(p):
    """Fixed generator of (Z/p^r)^x for every r >= 1."""
    return int(primitive_root(p * p))


@lru_cache(maxsize=None)
def _dlog_table(p, r):
    mod = p ** r
    g = generator(p)
    table = {}
    x = 1
    for i in range(p ** (r - 1) * (p - 1)):
        table[x] = i
        x = x * g % mod
    return table


def discrete_log(a, p, r):
    """i with g^i = a mod p^r."""
    if r == 0:
        return 0
    a = Fraction(a)
    mod = p ** r
    if a.denominator % p == 0 or a.numerator % p == 0:
        raise ValueError(f"{a} is not a p-adic unit")
    return _dlog_table(p, r)[a.numerator * pow(a.denominator, -1, mod) % mod]


def euler_phi_pr(p, r):
    return 1 if r == 0 else p ** (r - 1) * (p - 1)


class DirichletCharacter:
    """A character of (Z/p^r)^x, determined by chi(g) = zeta_{phi(p^r)}^index,
    optionally extended to Q_p^x by a value at p (default 1).

    The conductor is computed, not declared; ``level`` is only the modulus the
    index refers to.
    """

    def __init__(self, p, level, index=0, value_at_p=1):
        _check_prime(p)
        if level < 0:
            raise ValueError("level must be non-negative")
        self.p = p
        order = euler_phi_pr(p, level)
        index %= order
        # move to the conductor level so that equal characters compare equal
        s = 0
        while (index * euler_phi_pr(p, s)) % order:
            s += 1
        self.level = s
        self.index = index * euler_phi_pr(p, s) // order if s else 0
        self.value_at_p = value_at_p

    @property
    def conductor(self):
        return self.level

    @property
    def order(self):
        n = euler_phi_pr(self.p, self.level)
        return n // gcd(n, self.index)

    @property
    def cyclo_modulus(self):
        return euler_phi_pr(self.p, self.level)

    @classmethod
    def trivial(cls, p, value_at_p=1):
        return cls(p, 0, 0, value_at_p)

    def exponent(self, a, L):
        """e with chi(a) = zeta_L^e for a unit a."""
        n = euler_phi_pr(self.p, self.level)
        if L % n:
            raise ValueError(f"zeta_{L} does not contain the values of {self}")
        return self.index * discrete_log(a, self.p, self.level) * (L // n) % L

    def __call__(self, a):
        """chi(a) for a unit a of Z_p (as a cyclotomic element)."""
        n = self.cyclo_modulus
        return CycloElement.zeta(n, self.exponent(a, n))

    def value(self, y):
        """chi extended to Q_p^x: chi(p^v u) = chi(p)^v chi(u)."""
        v = vp_rational(y, self.p)
        u = Fraction(y) / Fraction(self.p) ** v
        return self(u) * (self.value_at_p ** v)

    def __mul__(self, other):
        if self.p != other.p:
            raise ValueError("prime mismatch")
        level = max(self.level, other.level)
        n = euler_phi_pr(self.p, level)
        i = self.index * (n // euler_phi_pr(self.p, self.level))
        j = other.index * (n // euler_phi_pr(other.p, other.level))
        return DirichletCharacter(self.p, level, i + j, self.value_at_p * other.value_at_p)

    def inverse(self):
        return DirichletCharacter(self.p, self.level, -self.index, 1 / Fraction(self.value_at_p)
                                  if isinstance(self.value_at_p, Rational) else 1 / self.value_at_p)

    def conj(self):
        """The complex conjugate on units (same value at p)."""
        return DirichletCharacter(self.p, self.level, -self.index, self.value_at_p)

    def with_value_at_p(self, c):
        return DirichletCharacter(self.p, self.level, self.index, c)

    def parity_exponent(self, L):
        return self.exponent(-1, L)

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter) and self.p == other.p
                and self.level == other.level and self.index == other.index
                and self.value_at_p == other.value_at_p)

    def __hash__(self):
        return hash((self.p, self.level, self.index))

    def __repr__(self):
        return f"DirichletCharacter(p={self.p}, conductor={self.level}, index={self.index})"


def characters(p, r):
    """All characters of (Z/p^r)^x."""
    return [DirichletCharacter(p, r, i) for i in range(euler_phi_pr(p, r))]


def primitive_characters(p, r):
    """Characters of exact conductor p^r."""
    return [c for c in characters(p, r) if c.conductor == r]


def quadratic_character(p):
    return DirichletCharacter(p, 1, (p - 1) // 2)


class LocallyConstantFn:
    """A function on Z_p^x constant on cosets of 1 + p^level Z_p, given by its
    values on unit residues mod p^level."""

    def __init__(self, p, level, values):
        self.p = p
        self.level = level
        mod = p ** level
        units = [a for a in range(mod) if a % p] if level else [0]
        vals = {}
        for a in units:
            v = values.get(a, 0) if isinstance(values, dict) else values(a)
            vals[a] = Fraction(v) if isinstance(v, Rational) else v
        self.values = vals

    @classmethod
    def indicator(cls, p, a, n):
        """1 on U(a, n) = a + p^n Z_p, a a unit."""
        if n == 0:
            return cls(p, 0, {0: 1})
        mod = p ** n
        a %= mod
        return cls(p, n, {a: 1})

    @classmethod
    def constant(cls, p, c=1):
        return cls(p, 0, {0: c})

    @classmethod
    def from_character(cls, chi, level=None):
        level = chi.level if level is None else level
        return cls(chi.p, level, lambda a: chi(a))

    def __call__(self, z):
        if self.level == 0:
            return self.values[0]
        z = Fraction(z)
        mod = self.p ** self.level
        return self.values[z.numerator * pow(z.denominator, -1, mod) % mod]

    def refine(self, level):
        if level < self.level:
            raise ValueError("cannot coarsen")
        if level == self.level:
            return self
        return LocallyConstantFn(self.p, level, lambda a: self(a))

    def translate(self, u):
        """z -> h(z / u)."""
        return LocallyConstantFn(self.p, self.level, lambda a: self(Fraction(a) / Fraction(u)))

    def integrate(self):
        """Integral against d^x z."""
        total = sum(self.values.values(), Fraction(0))
        return total / euler_phi_pr(self.p, self.level)

    def nonzero_items(self):
        return [(a, v) for a, v in self.values.items() if not _is_zero(v)]


def integral_additive(a, p, region=None):
    """Integral of psi(a x) dx over ``region``.

    ``region`` is ``("coset", s, n)`` for s + p^n Z_p (n > 0) or ``None`` /
    ``"units"`` for Z_p^x.  Returns a CycloElement.
    """
    _check_prime(p)
    a = Fraction(a)
    va = vp_rational(a, p)
    if region is None or region == "units":
        L = max(1, -va) if a else 1
        mod = p ** L
        counts = {}
        for x in range(mod):
            if x % p:
                e = psi_exponent(a * x, p, mod)
                counts[e] = counts.get(e, 0) + 1
        return CycloElement.from_exponents(mod, counts) / mod
    kind, s, n = region
    if kind != "coset" or n <= 0:
        raise ValueError(f"bad region {region!r}")
    s = Fraction(s)
    if a == 0:
        return CycloElement.scalar(1, Fraction(1, p ** n))
    vs = vp_rational(s, p) if s else 0
    L = max(n, -va)
    D = p ** max(1, -(va + vs), -(va + n))
    counts = {}
    for t in range(p ** (L - n)):
        e = psi_exponent(a * (s + p ** n * t), p, D)
        counts[e] = counts.get(e, 0) + 1
    return CycloElement.from_exponents(D, counts) / p ** L


def integral_additive_closed(a, p, region=None):
    """The closed forms: p^-n psi(s a) 1_{Z_p}(p^n a) on cosets and the
    three-case formula on Z_p^x."""
    a = Fraction(a)
    va = vp_rational(a, p)
    if region is None or region == "units":
        if va >= 0:
            return CycloElement.scalar(1, 1 - Fraction(1, p))
        if va == -1:
            return CycloElement.scalar(1, -Fraction(1, p))
        return CycloElement.scalar(1, 0)
    _, s, n = region
    if a and va + n < 0:
        return CycloElement.scalar(1, 0)
    return psi_value(Fraction(s) * a, p) * Fraction(1, p ** n)


class UnitSubgroup:
    """The subgroup of index ``index`` in Z_p^x (cyclic quotient structure
    makes it unique); it contains 1 + p^L Z_p iff index divides phi(p^L)."""

    def __init__(self, p, index=1):
        if (p - 1) % gcd(index, p - 1) or index <= 0:
            raise ValueError("bad index")
        self.p = p
        self.index = index
        L = 0
        while euler_phi_pr(p, L) % index:
            L += 1
            if L > 64:
                raise ValueError(f"no open subgroup of index {index}")
        self.level = L

    def contains_level(self, n):
        return self.level <= n

    def contains(self, x):
        if self.level == 0:
            return True
        return discrete_log(x, self.p, self.level) % self.index == 0

    def volume(self):
        """Volume for d^x x."""
        return Fraction(1, self.index)


def integral_mult_char(chi, a, U=None, n=None):
    """Integral of chi(x) psi(a x) d^x x over the open subgroup U of Z_p^x.

    ``n`` defaults to the conductor of chi; U must contain 1 + p^n Z_p.
    """
    p = chi.p
    if n is None:
        n = chi.conductor
    if n < 1:
        raise ValueError("character must have conductor >= 1")
    U = U or UnitSubgroup(p)
    if not U.contains_level(n):
        raise ValueError(f"U does not contain 1 + p^{n} Z_p")
    a = Fraction(a)
    va = vp_rational(a, p) if a else 0
    L = max(n, -va, 1)
    mod = p ** L
    M = _lcm(mod, chi.cyclo_modulus)
    counts = _char_psi_counts(chi, a, U, L, M)
    return CycloElement.from_exponents(M, counts) / euler_phi_pr(p, L)


def _char_psi_counts(chi, a, U, L, M):
    """Exponent multiset of chi(x) psi(a x) over x in U mod p^L, in zeta_M."""
    p = chi.p
    num, den = _split_p_power(a, p)
    den = p ** den
    if M % den:
        raise ValueError(f"zeta_{M} does not contain the values of psi({a} x)")
    dlog = _dlog_table(p, L)
    ce = chi.index * (M // chi.cyclo_modulus)
    pe = num * (M // den)
    idx = U.index if U.level else 1
    counts = {}
    for x, d in dlog.items():
        if d % idx == 0:
            e = (ce * d + pe * x) % M
            counts[e] = counts.get(e, 0) + 1
    return counts


def integral_mult_char_closed(chi, a, U=None, n=None):
    """Closed form of :func:`integral_mult_char`.

    Zero when a is outside p^-n Z_p, and zero when |a| < p^n provided chi is
    nontrivial on U meet 1 + p^(n-1) Z_p (all of U when n = 1); that proviso
    is automatic for U = Z_p^x and chi of conductor n.  Otherwise it is
    phi(p^n)^-1 times the sum of chi(s) psi(s a) over U mod p^n."""
    p = chi.p
    if n is None:
        n = chi.conductor
    if n < 1:
        raise ValueError("character must have conductor >= 1")
    U = U or UnitSubgroup(p)
    if not U.contains_level(n):
        raise ValueError(f"U does not contain 1 + p^{n} Z_p")
    a = Fraction(a)
    va = vp_rational(a, p) if a else inf
    mod = p ** n
    if va < -n:
        return CycloElement.scalar(1, 0)
    if va > -n:
        step = p ** (n - 1) if n > 1 else 1
        if any(s % p and U.contains(s) and chi.exponent(s, chi.cyclo_modulus)
               for s in range(1, mod, step)):
            return CycloElement.scalar(1, 0)
    M = _lcm(mod, chi.cyclo_modulus)
    return CycloElement.from_exponents(M, _char_psi_counts(chi, a, U, n, M)) / euler_phi_pr(p, n)


def gauss_sum(chi):
    """tau(chi) = p^n * integral of chi(x) psi(-x/p^n) dx over Z_p^x."""
    p, n = chi.p, chi.conductor
    if n == 0:
        return CycloElement.scalar(1, 1 - Fraction(1, p))
    mod = p ** n
    M = _lcm(mod, chi.cyclo_modulus)
    counts = {}
    step = M // mod
    for x in range(mod):
        if x % p:
            e = (chi.exponent(x, M) - x * step) % M
            counts[e] = counts.get(e, 0) + 1
    return CycloElement.from_exponents(M, counts)
