"""Kirillov-model computations for principal series, special and extremal
local representations.

A :class:`KirillovFunction` is a locally constant function on Q_p^x that
vanishes on shells v_p(y) < lo, is tabulated on the shells lo..hi (as
functions of the unit part modulo p^level), and for v_p(y) > hi equals a
finite sum of templates coeff * n^d * c^n * eta(u) at y = p^n u.

Scalars live in Q(theta) with theta^2 = p (theta plays p^(1/2)), possibly
tensored with a cyclotomic field.  The Borel subgroup acts by
(1 x; 0 1)F(y) = psi(x y)F(y), diag(t, 1)F(y) = F(t y) and the centre by
the central character.
"""
from fractions import Fraction
from math import gcd

from .cyclotomic import (CycloElement, DirichletCharacter, LocallyConstantFn, euler_phi_pr,
                         gauss_sum, psi_exponent)
from .padic import QuadraticField, vp_rational

CHARACTER = "character"
VP_TIMES_CHARACTER = "vp_times_character"


def half_power_field(p):
    return QuadraticField(p, p)


def theta(p):
    """The formal p^(1/2)."""
    return half_power_field(p).gen()


def _lcm(a, b):
    return a // gcd(a, b) * b


def _unit_part(y, p):
    y = Fraction(y)
    n = vp_rational(y, p)
    return n, y / Fraction(p) ** n


def _units(p, level):
    if level == 0:
        return [0]
    return [u for u in range(p ** level) if u % p]


def _eta_key(eta):
    return (eta.level, eta.index)


def _is_zero(x):
    return x.is_zero() if isinstance(x, CycloElement) else x == 0


def _power(c, n):
    return c ** n if n >= 0 else (1 / c) ** (-n)


class CentralCharacter:
    """eps(p^n u) = eps_p^n * unit_char(u)."""

    def __init__(self, p, eps_p, unit_char=None):
        self.p = p
        self.eps_p = eps_p
        self.unit_char = unit_char

    def __call__(self, z):
        n, u = _unit_part(z, self.p)
        v = _power(self.eps_p, n)
        if self.unit_char is not None and self.unit_char.level:
            v = self.unit_char(u) * v
        return v


class PsiTemplate:
    """Psi = |.|^(1/2) chi (CHARACTER) or v_p |.|^(1/2) chi (VP_TIMES_CHARACTER),
    with chi = eta on units and chi(p) = ``chi_p``; eps_p is the value of the
    central character at p."""

    def __init__(self, p, kind, eta=None, chi_p=1, eps_p=1, eps_unit=None):
        if kind not in (CHARACTER, VP_TIMES_CHARACTER):
            raise ValueError(f"unknown template kind {kind!r}")
        self.p = p
        self.kind = kind
        self.eta = eta or DirichletCharacter.trivial(p)
        self.chi_p = chi_p
        # Psi(p) for the character part: |p|^(1/2) chi(p) = chi(p) theta / p
        self.c = theta(p) * chi_p / p
        self.central = CentralCharacter(p, eps_p, eps_unit)
        self.d = 0 if kind == CHARACTER else 1

    @property
    def eps_p(self):
        return self.central.eps_p

    def __call__(self, y):
        n, u = _unit_part(y, self.p)
        v = self.eta(u) * _power(self.c, n)
        return v * n if self.d else v

    def gamma(self):
        """gamma = Psi(p) p eps_p(p)^-1 (character part of Psi in the VP case)."""
        return self.c * self.p / self.eps_p

    def character_part(self):
        return PsiTemplate(self.p, CHARACTER, self.eta, self.chi_p, self.eps_p, self.central.unit_char)


class KirillovFunction:
    def __init__(self, p, lo, hi, level, shells, tail, central):
        self.p = p
        self.lo = lo
        self.hi = hi
        self.level = level
        self.shells = shells
        self.tail = _merge_tail(tail)
        self.central = central

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, p, central):
        return cls(p, 0, -1, 0, {}, [], central)

    @classmethod
    def from_template(cls, psi, coeff=1, start=0):
        """coeff * Psi(y) * 1_{p^start Z_p}(y)."""
        return cls(psi.p, start, start - 1, 0, {}, [(coeff, psi.d, psi.eta, psi.c)], psi.central)

    # evaluation ---------------------------------------------------------

    def tail_value(self, n, u):
        total = 0
        for coeff, d, eta, c in self.tail:
            v = eta(u) * _power(c, n) * coeff
            if d:
                v = v * n
            total = v + total
        return total

    def shell(self, n, level=None):
        """Values on p^n Z_p^x as a dict unit residue -> value."""
        level = self.level if level is None else level
        level = max(level, self.level)
        units = _units(self.p, level)
        if n < self.lo:
            return {u: 0 for u in units}
        if n <= self.hi:
            tab = self.shells[n]
            if level == self.level:
                return dict(tab)
            mod = self.p ** self.level if self.level else 1
            return {u: tab[u % mod if self.level else 0] for u in units}
        out = {u: 0 for u in units}
        for coeff, d, eta, c in self.tail:
            K = _power(c, n) * coeff
            if d:
                K = K * n
            for u in units:
                out[u] = eta(u if level else 1) * K + out[u]
        return out

    def __call__(self, y):
        n, u = _unit_part(y, self.p)
        if n < self.lo:
            return 0
        if n <= self.hi:
            if self.level == 0:
                return self.shells[n][0]
            mod = self.p ** self.level
            return self.shells[n][u.numerator * pow(u.denominator, -1, mod) % mod]
        return self.tail_value(n, u)

    # structure ----------------------------------------------------------

    def with_window(self, lo, hi, level):
        """Same function with explicit shells on [lo, hi] (lo <= self.lo, hi >= self.hi)."""
        lo = min(lo, self.lo)
        hi = max(hi, self.hi)
        level = max(level, self.level)
        shells = {n: self.shell(n, level) for n in range(lo, hi + 1)}
        return KirillovFunction(self.p, lo, hi, level, shells, self.tail, self.central)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        level = max(self.level, other.level)
        a, b = self.with_window(lo, hi, level), other.with_window(lo, hi, level)
        shells = {n: {u: a.shells[n][u] + b.shells[n][u] for u in a.shells[n]} for n in a.shells}
        return KirillovFunction(self.p, lo, hi, level, shells, a.tail + b.tail, self.central)

    __radd__ = __add__

    def scale(self, s):
        shells = {n: {u: v * s for u, v in tab.items()} for n, tab in self.shells.items()}
        tail = [(coeff * s, d, eta, c) for coeff, d, eta, c in self.tail]
        return KirillovFunction(self.p, self.lo, self.hi, self.level, shells, tail, self.central)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        for tab in self.shells.values():
            if not all(_is_zero(v) for v in tab.values()):
                return False
        return not self.tail

    def __eq__(self, other):
        if not isinstance(other, KirillovFunction):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # group action -------------------------------------------------------

    def scale_argument(self, t):
        """y -> F(t y)."""
        p = self.p
        s, w = _unit_part(t, p)
        level = self.level
        if level:
            mod = p ** level
            wr = w.numerator * pow(w.denominator, -1, mod) % mod
            shells = {n - s: {u: tab[u * wr % mod] for u in tab} for n, tab in self.shells.items()}
        else:
            shells = {n - s: dict(tab) for n, tab in self.shells.items()}
        tail = []
        for coeff, d, eta, c in self.tail:
            k = eta(w) * _power(c, s) * coeff
            tail.append((k, d, eta, c))
            if d and s:
                tail.append((k * s, 0, eta, c))
        return KirillovFunction(p, self.lo - s, self.hi - s, level, shells, tail, self.central)

    def multiply_psi(self, x):
        """y -> psi(x y) F(y)."""
        x = Fraction(x)
        if x == 0:
            return self
        p = self.p
        vx = vp_rational(x, p)
        # psi(x y) is trivial once v(y) >= -vx
        need_hi = -vx - 1
        F = self
        if need_hi > F.hi:
            F = F.with_window(F.lo, need_hi, F.level)
        level = max(F.level, max(0, -vx - F.lo))
        F = F.with_window(F.lo, F.hi, level)
        shells = {}
        for n, tab in F.shells.items():
            if n + vx >= 0:
                shells[n] = tab
                continue
            den = p ** (-(n + vx))
            new = {}
            for u, v in tab.items():
                if _is_zero(v):
                    new[u] = v
                    continue
                e = psi_exponent(x * Fraction(p) ** n * u, p, den)
                new[u] = CycloElement.zeta(den, e) * v
            shells[n] = new
        return KirillovFunction(p, F.lo, F.hi, F.level, shells, F.tail, F.central)

    def central_twist(self, z):
        return self.scale(self.central(z))

    def trim(self):
        """Drop leading zero shells (cosmetic)."""
        lo = self.lo
        while lo <= self.hi and all(_is_zero(v) for v in self.shells[lo].values()):
            lo += 1
        shells = {n: t for n, t in self.shells.items() if n >= lo}
        if lo > self.hi:
            return KirillovFunction(self.p, lo, lo - 1, self.level, {}, self.tail, self.central)
        return KirillovFunction(self.p, lo, self.hi, self.level, shells, self.tail, self.central)

    def __repr__(self):
        return f"KirillovFunction(p={self.p}, window=[{self.lo},{self.hi}], level={self.level}, tail={len(self.tail)})"


def _merge_tail(tail):
    merged = {}
    order = []
    for coeff, d, eta, c in tail:
        key = (d, _eta_key(eta), c)
        if key in merged:
            merged[key] = (merged[key][0] + coeff, d, eta, c)
        else:
            merged[key] = (coeff, d, eta, c)
            order.append(key)
    return [merged[k] for k in order if not _is_zero(merged[k][0])]


def act_borel(g, F):
    """Action of the upper triangular (a, b; 0, d), decomposed as
    centre(d) * (1, b/d; 0, 1) * diag(a/d, 1)."""
    if len(g) == 4:
        a, b, c, d = g
        if c != 0:
            raise ValueError("matrix is not upper triangular")
    else:
        a, b, d = g
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    if a == 0 or d == 0:
        raise ValueError("matrix is not invertible")
    G = F.scale_argument(a / d) if a != d else F
    G = G.multiply_psi(b / d)
    return G.central_twist(d) if d != 1 else G


def delta_shell(h, psi, n, level=None):
    """delta(h)(p^n u) for all unit residues u mod p^level, by a finite sum:
    integral over Z_p^x of Psi(z y) h(z) psi(-z y) d^x z."""
    p = psi.p
    eta = psi.eta
    ell = max(h.level, eta.level)
    level = max(ell, 1) if level is None else level
    L = max(ell, -n, 0)
    units = _units(p, level)
    zs = _units(p, L)
    hz = {z: h(z) for z in zs}
    cn = _power(psi.c, n) * (n if psi.d else 1)
    M = _lcm(max(p ** max(-n, 0), 1), eta.cyclo_modulus)
    vol = euler_phi_pr(p, L)
    out = {}
    for u in units:
        uu = u if level else 1
        acc = {}
        if L == 0:
            e = eta.exponent(uu, M) if eta.level else 0
            acc[e] = hz[0]
        else:
            for z in zs:
                w = hz[z]
                if _is_zero(w):
                    continue
                e = (eta.exponent(z * uu, M) if eta.level else 0)
                if n < 0:
                    e += psi_exponent(-Fraction(p) ** n * z * uu, p, M)
                e %= M
                acc[e] = acc[e] + w if e in acc else w
        if all(not isinstance(w, CycloElement) for w in acc.values()):
            val = CycloElement.from_exponents(M, acc)
        else:
            val = sum((CycloElement.zeta(M, e) * w for e, w in acc.items()), CycloElement.scalar(M, 0))
        out[u] = val * cn / vol
    return out


def delta(h, psi):
    """delta(h) as a KirillovFunction: explicit shells -max(ell, 1)..-1
    (ell the level of h eta) and the template tail for v_p(y) >= 0."""
    p = psi.p
    ell = max(h.level, psi.eta.level)
    lo = -max(ell, 1)
    level = max(ell, 1)
    shells = {n: delta_shell(h, psi, n, level) for n in range(lo, 0)}
    # n >= 0: Psi(p^n u) * integral of h eta d^x z
    L = max(h.level, psi.eta.level)
    hh = h.refine(L)
    coeff = sum((hh.values[z] * (psi.eta(z) if psi.eta.level else 1) for z in hh.values),
                Fraction(0)) / euler_phi_pr(p, L)
    return KirillovFunction(p, lo, -1, level, shells, [(coeff, psi.d, psi.eta, psi.c)], psi.central)


def basis_v0(psi):
    """V_0 = (1 - 1/p)^-1 Psi_char(y) 1_{Z_p}(y)."""
    p = psi.p
    return KirillovFunction.from_template(psi.character_part(), 1 / (1 - Fraction(1, p)))


def basis_v1(psi):
    """V_1 = (1 - 1/p)^-1 v_p(y) Psi_char(y) 1_{Z_p}(y)."""
    p = psi.p
    chi = psi.character_part()
    return KirillovFunction(p, 0, -1, 0, {}, [(1 / (1 - Fraction(1, p)), 1, chi.eta, chi.c)], chi.central)


def verify_keyprop(a, n, psi):
    """Decompose (1 a; 0 p^n) delta(1_{U(a,n)}) = gamma^-n sum_i c_i V_i and
    check the residual is exactly zero."""
    p = psi.p
    if n < max(1, psi.eta.level):
        raise ValueError("n must be at least max(1, cond(eta))")
    h = LocallyConstantFn.indicator(p, a, n)
    G = act_borel((1, a, 0, p ** n), delta(h, psi))
    gamma = psi.gamma()
    scale = _power(gamma, n)
    V0 = basis_v0(psi)
    c0 = G(1) * scale / V0(1)
    coeffs = [c0]
    recon = V0 * (c0 / scale)
    if psi.kind == VP_TIMES_CHARACTER:
        V1 = basis_v1(psi)
        c1 = (G(p) * scale - c0 * V0(p)) / V1(p)
        coeffs.append(c1)
        recon = recon + V1 * (c1 / scale)
    residual = G - recon
    ok = residual.is_zero()
    eta_a = psi.eta(a)
    if psi.kind == CHARACTER:
        expected = [eta_a]
    else:
        expected = [eta_a * (-n), eta_a]
    return {
        "gamma": gamma,
        "coefficients": coeffs,
        "expected": expected,
        "residual_zero": ok,
        "matches_expected": ok and all(x == y for x, y in zip(coeffs, expected)),
    }


def hecke_up(F):
    """U_p F = sum_c (1 c/p; 0 1/p) F = eps(p)^-1 sum_c psi(c y) F(p y)."""
    p = F.p
    total = None
    for c in range(p):
        G = act_borel((1, Fraction(c, p), 0, Fraction(1, p)), F)
        total = G if total is None else total + G
    return total


def hecke_tp(F):
    """T_p F = diag(p^-1, 1) F + U_p F."""
    return act_borel((Fraction(1, F.p), 0, 0, 1), F) + hecke_up(F)


def extremal_template(p, chi_p=1, eta=None, kind=VP_TIMES_CHARACTER):
    """Template for pi(chi, chi): eps_p(p) = chi(p)^2, so gamma = alpha = p^(1/2) / chi(p)."""
    return PsiTemplate(p, kind, eta, chi_p, eps_p=chi_p * chi_p)


# Euler factors ----------------------------------------------------------

PRINCIPAL = "principal"
SPECIAL = "special"
EXTREMAL = "extremal"


class LocalCharacter:
    """A character of Q_p^x: eta on units and value chi(p) at p."""

    def __init__(self, eta, chi_p):
        self.eta = eta
        self.chi_p = chi_p

    @property
    def p(self):
        return self.eta.p


def _geometric_sums(X, n0):
    """(sum_{n>=n0} X^n, sum_{n>=n0} n X^n), summed formally."""
    if X == 1:
        return None
    s0 = _power(X, n0) / (1 - X)
    s1 = _power(X, n0) * ((1 - X) * n0 + X) / ((1 - X) * (1 - X))
    return s0, s1


def euler_factor_closed(case, chi0, m, k, chi_i, chi_j=None):
    """Closed-form e_delta(pi_p, chi0) with the formal p^(1/2) as theta.

    ``chi_i`` (and ``chi_j``) are LocalCharacter; for EXTREMAL only chi_i
    (the character chi of pi(chi, chi)) is used.
    """
    if not 0 <= m <= k:
        raise ValueError("need 0 <= m <= k")
    p = chi0.p
    th = theta(p)
    one_minus = 1 - Fraction(1, p)
    X = th * chi_i.chi_p * Fraction(p) ** (k - m) / p
    Y = th / chi_i.chi_p * Fraction(p) ** (m - k) / p
    twist = chi0 * chi_i.eta
    r = twist.conductor
    if case == EXTREMAL:
        if r == 0:
            return (X + Y - Fraction(2, p)) / one_minus
        return gauss_sum(twist) * (-r * _power(Y, r) / one_minus)
    if case not in (PRINCIPAL, SPECIAL):
        raise ValueError(f"unknown case {case!r}")
    if r == 0:
        e = (1 - Y) / one_minus
    else:
        e = gauss_sum(twist) * (_power(Y, r) / one_minus)
    if case == PRINCIPAL:
        e = e * _inverse_l_factor(chi0, chi_j, m, k)
    return e


def _inverse_l_factor(chi0, chi, m, k):
    """L(m - k + 1/2, chi0~ chi)^-1 with chi0~(p) = 1."""
    if (chi0 * chi.eta).conductor:
        return 1
    p = chi0.p
    return 1 - theta(p) * chi.chi_p * Fraction(p) ** (k - m) / p


def euler_factor_oracle(case, chi0, m, k, chi_i, chi_j=None):
    """I_delta by shell sums of delta(1_H), H = 1 + p^max(1, r) Z_p, plus the
    tail summed as a geometric or arithmetico-geometric series, divided by
    L_p(m - k + 1/2, pi_p, chi0~).

    Returns (value, report); value is None when the tail ratio is 1 (pole).
    """
    p = chi0.p
    kind = VP_TIMES_CHARACTER if case == EXTREMAL else CHARACTER
    psi = PsiTemplate(p, kind, chi_i.eta, chi_i.chi_p)
    r = chi0.conductor
    lev = max(1, r, chi_i.eta.level)
    H = LocallyConstantFn.indicator(p, 1, lev)
    F = delta(H, psi)
    vol = Fraction(1, euler_phi_pr(p, lev))
    # unit integrals of chi0(u) F(p^n u) d^x u
    L = max(F.level, chi0.level)
    units = _units(p, L)
    M0 = chi0.cyclo_modulus
    chi0_vals = {u: chi0(u) for u in units}
    total = 0
    shells_used = []
    for n in range(F.lo, F.hi + 1):
        tab = F.shell(n, L)
        s = sum((chi0_vals[u] * tab[u] for u in units), CycloElement.scalar(M0, 0)) / len(units)
        w = s * Fraction(p) ** (n * (k - m))
        if not w.is_zero():
            shells_used.append(n)
        total = w + total
    # tail: sum over n > hi of p^(n(k-m)) coeff n^d c^n int chi0 eta
    for coeff, d, eta, c in F.tail:
        tw = chi0 * eta
        if tw.conductor:
            continue
        X = c * Fraction(p) ** (k - m)
        sums = _geometric_sums(X, F.hi + 1)
        if sums is None:
            return None, {"converges": False, "ratio": X}
        total = coeff * sums[d] + total
    I = total / vol
    # L_p(s, pi_p, chi0~)^-1
    inv = _inverse_l_factor(chi0, chi_i, m, k)
    if case == PRINCIPAL:
        inv = inv * _inverse_l_factor(chi0, chi_j, m, k)
    elif case == EXTREMAL:
        inv = inv * inv
    value = I * inv
    return value, {"converges": True, "I_delta": I, "shells": shells_used, "H_level": lev}
