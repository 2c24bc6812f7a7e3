"""Modular symbols for Gamma_0(M) with coefficients in V(k), the dual of
homogeneous degree-k polynomials in X, Y.

Conventions
-----------
Polynomials are coefficient lists in the basis Q_j = X^(k-j) Y^j and
matrices act on them by (A * P)(X, Y) = P(aX + cY, bX + dY).  An element
v of V(k) is the list of its values v(Q_j); GL_2 acts on V(k) by
(B . v)(P) = v(B^-1 * P).  A symbol phi is Gamma_0(M)-equivariant:
phi(g D) = g . phi(D).

The Manin table stores Phi(x) = g^-1 . phi(g{0 - oo}) for x = Gamma_0(M) g,
indexed by the bottom row of g in P^1(Z/M).
"""
import os
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from sympy import factorint, primerange, totient

from .linalg import nullspace

DEFAULT_MAX_COORDS = 2000
ENV_MAX_COORDS = "EXTREMAL_PADIC_MAX_COORDS"


class ResourceBoundError(RuntimeError):
    pass


def max_coords():
    return int(os.environ.get(ENV_MAX_COORDS, DEFAULT_MAX_COORDS))


@lru_cache(maxsize=100000)
def poly_action_matrix(A, k):
    """R with A * Q_j = sum_i R[i][j] Q_i, for A = (a, b, c, d)."""
    a, b, c, d = A
    R = [[0] * (k + 1) for _ in range(k + 1)]
    for j in range(k + 1):
        m = k - j
        # (aX + cY)^m (bX + dY)^j, collected by the power of Y
        left = [comb(m, s) * a ** (m - s) * c ** s for s in range(m + 1)]
        right = [comb(j, s) * b ** (j - s) * d ** s for s in range(j + 1)]
        for s, x in enumerate(left):
            if x:
                for t, y in enumerate(right):
                    R[s + t][j] += x * y
    return tuple(tuple(r) for r in R)


def act_poly(A, P):
    R = poly_action_matrix(tuple(A), len(P) - 1)
    return [sum(R[i][j] * P[j] for j in range(len(P))) for i in range(len(P))]


def pair(v, P):
    """v(P) for v in V(k) and a polynomial P."""
    return sum((x * y for x, y in zip(v, P)), Fraction(0))


def transpose_apply(A, v):
    """w with w(P) = v(A * P), i.e. w = A^-1 . v."""
    R = poly_action_matrix(tuple(A), len(v) - 1)
    n = len(v)
    return [sum((R[l][i] * v[l] for l in range(n) if R[l][i]), Fraction(0)) for i in range(n)]


def inverse_int(A):
    """Inverse of an integer matrix of determinant +-1 (as an integer tuple)."""
    a, b, c, d = A
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return (d * det, -b * det, -c * det, a * det)


def monomial(k, j):
    P = [0] * (k + 1)
    P[j] = 1
    return P


def num_cusps(M):
    return sum(int(totient(gcd(d, M // d))) for d in range(1, M + 1) if M % d == 0)


def p1_size(M):
    n = M
    for q in factorint(M):
        n = n // q * (q + 1)
    return n


class P1List:
    """P^1(Z/M) with canonical representatives min_u (u c, u d) mod M."""

    _cache = {}

    def __new__(cls, M):
        if M in cls._cache:
            return cls._cache[M]
        obj = super().__new__(cls)
        obj._build(M)
        cls._cache[M] = obj
        return obj

    def _build(self, M):
        self.M = M
        if M == 1:
            self.reps = [(0, 1)]
            self.index = {(0, 0): 0}
            return
        units = [u for u in range(1, M) if gcd(u, M) == 1]
        reps, index = [], {}
        for c in range(M):
            for d in range(M):
                if (c, d) in index or gcd(gcd(c, d), M) != 1:
                    continue
                orbit = {(u * c % M, u * d % M) for u in units}
                i = len(reps)
                reps.append(min(orbit))
                for pt in orbit:
                    index[pt] = i
        self.reps = reps
        self.index = index

    def __len__(self):
        return len(self.reps)

    def normalize(self, c, d):
        return self.index[(c % self.M, d % self.M)]

    def lift(self, i):
        """A matrix of SL_2(Z) whose bottom row reduces to representative i."""
        M = self.M
        c, d = self.reps[i]
        if M == 1:
            return (1, 0, 0, 1)
        if c == 0:
            c = M
        t = 0
        while gcd(c, d + t * M) != 1:
            t += 1
        d = d + t * M
        g, x, y = _xgcd(d, c)
        # x d + y c = 1, so (x, -y; c, d) has determinant 1
        return (x, -y, c, d)


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def convergent_matrices(r):
    """Matrices g_j in SL_2(Z) with r - oo = sum_j g_j{0 - oo}."""
    r = Fraction(r)
    a, b = r.numerator, r.denominator
    p2, q2, p1, q1 = 0, 1, 1, 0
    mats = []
    while True:
        t = a // b
        pn, qn = t * p1 + p2, t * q1 + q2
        det = p1 * qn - pn * q1
        mats.append((p1, pn, q1, qn) if det == 1 else (-p1, pn, -q1, qn))
        a, b = b, a - t * b
        p2, q2, p1, q1 = p1, q1, pn, qn
        if b == 0:
            return mats


def _cusp(num, den):
    return None if den == 0 else Fraction(num, den)


def _apply_cusp(A, r):
    """Mobius image of a cusp (None is oo)."""
    a, b, c, d = A
    if r is None:
        return _cusp(a, c)
    return _cusp(a * r.numerator + b * r.denominator, c * r.numerator + d * r.denominator)


class ModularSymbol:
    """A Gamma_0(M)-equivariant map Delta_0 -> V(k) stored by its Manin table."""

    def __init__(self, M, k, table, space=None, sign=None):
        self.M = M
        self.k = k
        self.P1 = P1List(M)
        self.table = [list(row) for row in table]
        self.space = space
        self.sign = sign
        self._values = {}

    @classmethod
    def from_vector(cls, M, k, vec, space=None, sign=None):
        n = k + 1
        return cls(M, k, [vec[i * n:(i + 1) * n] for i in range(len(vec) // n)], space, sign)

    def vector(self):
        return [x for row in self.table for x in row]

    def value(self, r):
        """phi(r - oo) as an element of V(k); r a rational or None for oo."""
        if r is None:
            return [Fraction(0)] * (self.k + 1)
        r = Fraction(r)
        if r in self._values:
            return self._values[r]
        k = self.k
        acc = [Fraction(0)] * (k + 1)
        for g in convergent_matrices(r):
            x = self.P1.normalize(g[2], g[3])
            w = transpose_apply(inverse_int(g), self.table[x])
            acc = [s + t for s, t in zip(acc, w)]
        self._values[r] = acc
        return acc

    def evaluate(self, r, s=None, P=None):
        """phi(r - s)(P), or the V(k) vector when P is None."""
        vr, vs = self.value(r), self.value(s)
        v = [x - y for x, y in zip(vr, vs)]
        return v if P is None else pair(v, P)

    def _hecke_map(self, mats):
        def F(r):
            acc = [Fraction(0)] * (self.k + 1)
            for A in mats:
                w = transpose_apply(A, self.value(_apply_cusp(A, r)))
                acc = [s + t for s, t in zip(acc, w)]
            return acc
        return F

    def hecke(self, q):
        """T_q (or U_q when q | M): sum over A of A^-1 . phi(A D) with
        A = (1 c; 0 q), 0 <= c < q, plus (q 0; 0 1) when q does not divide M."""
        mats = [(1, c, 0, q) for c in range(q)]
        if self.M % q:
            mats.append((q, 0, 0, 1))
        return tabulate(self.M, self.k, self._hecke_map(mats), self.space)

    def up(self, p):
        """U_p via the cosets (1 c; 0 p) only."""
        mats = [(1, c, 0, p) for c in range(p)]
        return tabulate(self.M, self.k, self._hecke_map(mats), self.space)

    def involution(self):
        """phi -> eta . phi(eta D) with eta = diag(-1, 1)."""
        table = []
        for (c, d) in self.P1.reps:
            row = self.table[self.P1.normalize(-c, d)]
            table.append([x if j % 2 == 0 else -x for j, x in enumerate(row)])
        return ModularSymbol(self.M, self.k, table, self.space)

    def _combine(self, other, f):
        return ModularSymbol(self.M, self.k,
                             [[f(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(self.table, other.table)],
                             self.space)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __mul__(self, c):
        return ModularSymbol(self.M, self.k, [[x * c for x in row] for row in self.table],
                             self.space, self.sign)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ModularSymbol):
            return self.M == other.M and self.k == other.k and all(
                x == y for x, y in zip(self.vector(), other.vector()))
        return NotImplemented

    __hash__ = None

    def is_zero(self):
        return all(x == 0 for x in self.vector())

    def relation_residual(self):
        """Maximum-free check: list of nonzero relation evaluations."""
        bad = []
        for row in relation_rows(self.M, self.k):
            s = sum((c * self.vector()[i] for i, c in row.items()), Fraction(0))
            if s != 0:
                bad.append(s)
        return bad

    def __repr__(self):
        return f"ModularSymbol(M={self.M}, k={self.k}, sign={self.sign})"


def tabulate(M, k, F, space=None):
    """Manin table of the symbol whose value on r - oo is F(r)."""
    P1 = P1List(M)
    table = []
    zero = [Fraction(0)] * (k + 1)
    for i in range(len(P1)):
        g = P1.lift(i)
        a, b, c, d = g
        v0 = F(_cusp(b, d)) if d else zero
        voo = F(_cusp(a, c)) if c else zero
        table.append(transpose_apply(g, [x - y for x, y in zip(v0, voo)]))
    return ModularSymbol(M, k, table, space)


def _v_action_rows(B, k):
    """Matrix of v -> B . v on V(k) as rows: (B . v)_i = sum_l R(B^-1)[l][i] v_l."""
    R = poly_action_matrix(inverse_int(B), k)
    return [[R[l][i] for l in range(k + 1)] for i in range(k + 1)]


@lru_cache(maxsize=None)
def _relation_rows_cached(M, k):
    P1 = P1List(M)
    n = k + 1
    S = (0, -1, 1, 0)
    tau = (0, -1, 1, -1)
    tau2 = (-1, 1, -1, 0)
    Sinv_rows = _v_action_rows(inverse_int(S), k)
    tau_rows = _v_action_rows(tau, k)
    tau2_rows = _v_action_rows(tau2, k)
    rows = []
    seen = set()
    for x, (c, d) in enumerate(P1.reps):
        xs = P1.normalize(d, -c)
        # Phi(xS) + S^-1 . Phi(x) = 0
        for i in range(n):
            row = {}
            row[xs * n + i] = row.get(xs * n + i, 0) + 1
            for l in range(n):
                if Sinv_rows[i][l]:
                    row[x * n + l] = row.get(x * n + l, 0) + Sinv_rows[i][l]
            key = tuple(sorted((a, b) for a, b in row.items() if b))
            if key and key not in seen:
                seen.add(key)
                rows.append(dict(key))
        # Phi(x) + tau . Phi(x tau) + tau^2 . Phi(x tau^2) = 0
        xt = P1.normalize(d, -c - d)
        xt2 = P1.normalize(-c - d, c)
        for i in range(n):
            row = {x * n + i: 1}
            for y, rws in ((xt, tau_rows), (xt2, tau2_rows)):
                for l in range(n):
                    if rws[i][l]:
                        row[y * n + l] = row.get(y * n + l, 0) + rws[i][l]
            key = tuple(sorted((a, b) for a, b in row.items() if b))
            if key and key not in seen:
                seen.add(key)
                rows.append(dict(key))
    return tuple(tuple(sorted(r.items())) for r in rows)


def relation_rows(M, k):
    return [dict(r) for r in _relation_rows_cached(M, k)]


class ManinSymbolSpace:
    """The full space Hom_{Gamma_0(M)}(Delta_0, V(k)) via Manin symbols."""

    def __init__(self, M, k):
        if M < 1 or k < 0 or k % 2:
            raise ValueError("need M >= 1 and even k >= 0")
        self.M = M
        self.k = k
        self.P1 = P1List(M)
        self.ncoords = len(self.P1) * (k + 1)
        if self.ncoords > max_coords():
            raise ResourceBoundError(
                f"{self.ncoords} coordinates exceed the bound {max_coords()} (set {ENV_MAX_COORDS})")
        rows = []
        for r in relation_rows(M, k):
            dense = [Fraction(0)] * self.ncoords
            for i, c in r.items():
                dense[i] = Fraction(c)
            rows.append(dense)
        self.relations = rows
        self.basis, self.free = nullspace(rows, self.ncoords, with_free=True)
        self._hecke = {}

    @property
    def dimension(self):
        return len(self.basis)

    def boundary_dimension(self):
        c = num_cusps(self.M)
        return c if self.k > 0 else c - 1

    def cuspidal_dimension(self):
        return self.dimension - self.boundary_dimension()

    def symbol(self, coords, sign=None):
        vec = [Fraction(0)] * self.ncoords
        for c, b in zip(coords, self.basis):
            if c != 0:
                vec = [x + c * y for x, y in zip(vec, b)]
        return ModularSymbol.from_vector(self.M, self.k, vec, self, sign)

    def coordinates(self, phi):
        vec = phi.vector()
        return [vec[f] for f in self.free]

    def contains(self, phi):
        return self.symbol(self.coordinates(phi)) == phi

    def _matrix(self, op):
        cols = [self.coordinates(op(self.symbol([int(i == j) for j in range(self.dimension)])))
                for i in range(self.dimension)]
        return [list(r) for r in zip(*cols)] if cols else []

    def hecke_matrix(self, q):
        if q not in self._hecke:
            self._hecke[q] = self._matrix(lambda s: s.hecke(q))
        return self._hecke[q]

    def involution_matrix(self):
        return self._matrix(lambda s: s.involution())

    def eisenstein_prime(self):
        return next(q for q in primerange(2, 1000) if self.M % q)

    def cuspidal_basis(self):
        """Column space of T_q - (1 + q^(k+1)) for the least q not dividing M,
        which kills the boundary part (Ramanujan keeps cusp forms alive)."""
        q = self.eisenstein_prime()
        T = self.hecke_matrix(q)
        e = 1 + q ** (self.k + 1)
        n = self.dimension
        A = [[T[i][j] - (e if i == j else 0) for j in range(n)] for i in range(n)]
        from .linalg import rref
        R, piv = rref([list(c) for c in zip(*A)], n)
        return R

    def eigensymbol(self, targets, sign):
        """The primitive integral eigensymbol of the given sign with
        T_q = a_q for each (q, a_q) in ``targets``."""
        n = self.dimension
        rows = []
        for q, aq in targets:
            T = self.hecke_matrix(q)
            rows += [[T[i][j] - (aq if i == j else 0) for j in range(n)] for i in range(n)]
        I = self.involution_matrix()
        rows += [[I[i][j] - (sign if i == j else 0) for j in range(n)] for i in range(n)]
        ker = nullspace(rows, n)
        if len(ker) != 1:
            raise ValueError(f"eigenspace of sign {sign} has dimension {len(ker)}, expected 1")
        phi = self.symbol(ker[0], sign)
        return primitive(phi)


def primitive(phi):
    """Scale a rational symbol to integral coordinates with content 1 and
    first nonzero coordinate positive."""
    vec = phi.vector()
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return phi
    first = next(x for x in ints if x)
    s = g if first > 0 else -g
    out = ModularSymbol.from_vector(phi.M, phi.k, [Fraction(x, s) for x in ints], phi.space, phi.sign)
    return out


def p_stabilize(phi, p, alpha, eps_p=1, check=True):
    """phi_{f_alpha}(D)(P) = phi(D)(P) - beta p^(-k-1) phi(A D)(A * P) at level Mp,
    A = diag(p, 1), beta = eps(p) p^(k+1) / alpha; the U_p eigen-relation is
    verified before returning."""
    M, k = phi.M, phi.k
    if M % p == 0:
        raise ValueError("p must not divide the level")
    beta = eps_p * Fraction(p) ** (k + 1) / alpha
    c = beta / Fraction(p) ** (k + 1)
    A = (p, 0, 0, 1)

    def F(r):
        v = phi.value(r)
        w = transpose_apply(A, phi.value(_apply_cusp(A, r)))
        return [x - c * y for x, y in zip(v, w)]

    out = tabulate(M * p, k, F)
    out.sign = phi.sign
    if check:
        up = out.up(p)
        if not up == out * alpha:
            raise ArithmeticError("U_p eigen-relation fails for the stabilized symbol")
    return out


def hecke_polynomial_roots(a_p, p, k, eps_p=1, field=None):
    """Roots of X^2 - a_p X + eps(p) p^(k+1) as quadratic elements (or rationals)."""
    from .padic import QuadraticField
    disc = Fraction(a_p) ** 2 - 4 * eps_p * Fraction(p) ** (k + 1)
    num, den = disc.numerator, disc.denominator
    from sympy import integer_nthroot
    rn, en = integer_nthroot(abs(num), 2)
    rd, ed = integer_nthroot(den, 2)
    if num >= 0 and en and ed:
        r = Fraction(rn, rd)
        return (Fraction(a_p) + r) / 2, (Fraction(a_p) - r) / 2
    # disc = (s / den)^2 * D with D squarefree
    N = num * den
    sq, D = 1, (1 if N > 0 else -1)
    for q, e in factorint(abs(N)).items():
        sq *= q ** (e // 2)
        D *= q ** (e % 2)
    K = field or QuadraticField(D, p)
    if K.D != D:
        raise ValueError("field discriminant does not match")
    root = K.gen() * Fraction(sq, den)
    return (root + a_p) / 2, (-root + a_p) / 2
