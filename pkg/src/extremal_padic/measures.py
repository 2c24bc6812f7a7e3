"""Locally polynomial distributions on Z_p^x and the tools around them.

A distribution is stored through its moments

    m(a, n, j) = integral over U(a, n) of ((x - a) / p^n)^j,

for units a mod p^n, 1 <= n <= depth and 0 <= j <= k (or a larger degree for
extended tables).  Everything stays exact until :func:`lp_eval`.
"""
import random
from fractions import Fraction
from math import comb, inf, ceil

from .cyclotomic import CycloElement
from .linalg import rref
from .modsym import poly_action_matrix
from .padic import (PAdicNumber, QuadraticExtElement, QuadraticField, half_power_field,
                    iwasawa_log, padic_exp, vp_int, vp_rational)

FROM_SYMBOL = "FROM_SYMBOL"
SYNTHETIC_EXTREMAL = "SYNTHETIC_EXTREMAL"
EXTENDED = "EXTENDED"
PROVENANCES = (FROM_SYMBOL, SYNTHETIC_EXTREMAL, EXTENDED)


class InsufficientPrecisionError(ValueError):
    """Raised when the requested precision is out of reach; ``achievable``
    holds the precision that the data does certify."""

    def __init__(self, message, achievable):
        super().__init__(message)
        self.achievable = achievable


def _val(x, p):
    if isinstance(x, QuadraticExtElement):
        return x.valuation()
    if isinstance(x, CycloElement):
        return min((_val(c, p) for c in x.coeffs), default=inf)
    return vp_rational(x, p)


def _units(p, n):
    return [a for a in range(p ** n) if a % p]


def _refine(p, k, children):
    """Parent vector from the p child vectors under the gamma_{a,b} substitution:
    parent_j = sum_c sum_i R_c[i][j] child_c[i]."""
    out = [Fraction(0)] * (k + 1)
    for c, v in enumerate(children):
        R = poly_action_matrix((1, c, 0, p), k)
        for j in range(k + 1):
            for i in range(j + 1):
                r = R[i][j]
                if r and v[i]:
                    out[j] = out[j] + r * v[i]
    return out


def _encode(x):
    if isinstance(x, QuadraticExtElement):
        return {"a": str(x.a), "b": str(x.b)}
    return {"a": str(Fraction(x)), "b": "0"}


class MomentTable:
    """Moments of a distribution on Z_p^x (see the module docstring).

    ``h`` is the admissibility exponent the table is expected to satisfy and
    ``content_valuation`` the valuation of the constant A; both are recorded
    when the table is built and are not recomputed from the values.
    """

    def __init__(self, p, k, depth, alpha, values, provenance, h=None,
                 content_valuation=None, degree=None, precision=None):
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        self.p = p
        self.k = k
        self.depth = depth
        self.alpha = alpha
        self.values = dict(values)
        self.provenance = provenance
        self.degree = k if degree is None else degree
        self.h = Fraction(_val(alpha, p)) if h is None else Fraction(h)
        if content_valuation is None:
            content_valuation = min((_val(v, p) + n * self.h
                                     for (a, n, j), v in self.values.items() if v), default=inf)
        self.content_valuation = content_valuation
        # certified precision of each value (EXTENDED tables only)
        self.precision = dict(precision or {})

    def moment(self, a, n, j):
        a %= self.p ** n
        try:
            return self.values[(a, n, j)]
        except KeyError:
            raise KeyError(f"no moment stored for a={a}, n={n}, j={j}") from None

    def vector(self, a, n, degree=None):
        d = self.k if degree is None else degree
        return [self.moment(a, n, j) for j in range(d + 1)]

    def with_value(self, a, n, j, value):
        """A copy with one moment replaced; keeps the recorded constants."""
        vals = dict(self.values)
        vals[(a % self.p ** n, n, j)] = value
        return MomentTable(self.p, self.k, self.depth, self.alpha, vals, self.provenance,
                           self.h, self.content_valuation, self.degree, self.precision)

    def total_mass(self):
        return sum((self.moment(a, 1, 0) for a in range(1, self.p)), Fraction(0))

    def is_zero(self):
        return not any(self.values.values())

    def additivity_check(self):
        """Every interior cell against the sum of its p children.

        Returns a report with the number of checked cells and the first failure."""
        p, k = self.p, self.k
        checked = 0
        for n in range(1, self.depth):
            for a in _units(p, n):
                kids = [self.vector(a + c * p ** n, n + 1) for c in range(p)]
                ref = _refine(p, k, kids)
                for j in range(k + 1):
                    if ref[j] != self.moment(a, n, j):
                        return {"pass": False, "checked": checked,
                                "witness": {"a": a, "n": n, "j": j}}
                checked += 1
        return {"pass": True, "checked": checked, "witness": None}

    def to_json(self):
        al = self.alpha
        if isinstance(al, QuadraticExtElement):
            alpha = {"a": str(al.a), "b": str(al.b), "D": str(al.field.D),
                     "root_residue": al.field.root_residue}
        else:
            alpha = {"a": str(Fraction(al)), "b": "0", "D": None, "root_residue": None}
        moments = []
        for (a, n, j) in sorted(self.values):
            row = {"a": a, "n": n, "j": j, "value": _encode(self.values[(a, n, j)])}
            if (a, n, j) in self.precision:
                row["precision"] = _prec_str(self.precision[(a, n, j)])
            moments.append(row)
        return {"p": self.p, "k": self.k, "alpha": alpha, "depth": self.depth,
                "provenance": self.provenance, "h": str(self.h),
                "content_valuation": _prec_str(self.content_valuation),
                "degree": self.degree, "moments": moments}

    @classmethod
    def from_json(cls, doc):
        p = doc["p"]
        al = doc["alpha"]
        field = None
        if al["D"] is not None:
            field = QuadraticField(Fraction(al["D"]), p, al["root_residue"])
            alpha = field(Fraction(al["a"]), Fraction(al["b"]))
        else:
            alpha = Fraction(al["a"])

        def dec(v):
            if field is None:
                return Fraction(v["a"])
            return field(Fraction(v["a"]), Fraction(v["b"]))

        values, precision = {}, {}
        for row in doc["moments"]:
            key = (row["a"], row["n"], row["j"])
            values[key] = dec(row["value"])
            if "precision" in row:
                precision[key] = _prec_parse(row["precision"])
        return cls(p, doc["k"], doc["depth"], alpha, values, doc["provenance"],
                   Fraction(doc["h"]), _prec_parse(doc["content_valuation"]),
                   doc.get("degree"), precision)


def _prec_str(x):
    return "inf" if x == inf else str(Fraction(x))


def _prec_parse(s):
    return inf if s == "inf" else Fraction(s)


# -- tables from modular symbols ------------------------------------------------

def measure_from_symbol(phi, p, alpha, depth, check=True):
    """Moments alpha^-n phi(a/p^n - oo)(Y^j X^(k-j)) of mu_{f,alpha}.

    ``phi`` must satisfy U_p phi = alpha phi (checked unless ``check`` is
    False)."""
    if not alpha:
        raise ValueError("alpha must be nonzero")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if check and not phi.up(p) == phi * alpha:
        raise ArithmeticError("the symbol is not a U_p eigensymbol with eigenvalue alpha")
    k = phi.k
    content = min((_val(x, p) for row in phi.table for x in row if x), default=inf)
    inv = 1 / alpha
    values = {}
    scale = Fraction(1)
    for n in range(1, depth + 1):
        scale = scale * inv
        for a in _units(p, n):
            v = phi.value(Fraction(a, p ** n))
            for j in range(k + 1):
                values[(a, n, j)] = v[j] * scale
    return MomentTable(p, k, depth, alpha, values, FROM_SYMBOL, content_valuation=content)


# -- admissibility ----------------------------------------------------------------

def admissibility_check(T, h, A_valuation=None):
    """Test v(m(a, n, j)) >= v(A) - n h over the whole table.

    v(A) defaults to the table's recorded content valuation.  The report
    gives the tightest admissible v(A) and the cell with the least slack."""
    if T.depth < 2:
        raise ValueError("admissibility needs a table of depth at least 2")
    h = Fraction(h)
    vA = T.content_valuation if A_valuation is None else A_valuation
    tight = inf
    witness = None
    for (a, n, j), v in sorted(T.values.items()):
        if j > T.k or not v:
            continue
        s = _val(v, T.p) + n * h
        if s < tight:
            tight = s
            witness = {"a": a, "n": n, "j": j, "valuation": _val(v, T.p)}
    if witness is not None:
        witness["slack"] = tight - vA if vA != inf else -inf
    ok = tight >= vA
    return {"h": h, "A_valuation": vA, "tight_A_valuation": tight, "pass": ok,
            "witness": witness}


# -- Amice-Velu extension ----------------------------------------------------------

class ExtendedValue:
    """An approximation together with a certified precision: the true value
    differs from ``value`` by an element of valuation >= ``precision``."""

    __slots__ = ("value", "precision")

    def __init__(self, value, precision):
        self.value = value
        self.precision = precision

    def __iter__(self):
        return iter((self.value, self.precision))

    def __repr__(self):
        return f"ExtendedValue({self.value!r}, precision={self.precision})"


def amice_velu_extend(T, h, target, n, precision=None, check=True):
    """The term a_n approximating the integral of ((x - a)/p^N)^m over U(a, N).

    a_n is the sum over b = a mod p^N, b mod p^n, of the degree <= min(m, k)
    Taylor part of the integrand at b.  For m <= k this is exact; otherwise
    the error has valuation >= (n - N)(k + 1) - (n + 1) h + v(A).
    """
    a, N, m = target
    p, k = T.p, T.k
    h = Fraction(h)
    if h >= k + 1:
        raise ValueError(f"need h < k + 1 = {k + 1}, got h = {h}")
    if N < 1 or a % p == 0:
        raise ValueError("the target must be U(a, N) with a a unit and N >= 1")
    if n < N:
        raise ValueError("working depth must be at least N")
    if n > T.depth:
        raise InsufficientPrecisionError(f"working depth {n} exceeds table depth {T.depth}", None)
    if check:
        rep = admissibility_check(T, h) if T.depth >= 2 else {"pass": True}
        if not rep["pass"]:
            raise ValueError(f"table is not {h}-admissible")
    vA = T.content_valuation
    a %= p ** N
    top = min(m, k)
    step = p ** N
    acc = Fraction(0)
    for b in range(a, p ** n, step):
        u = (b - a) // step
        for j in range(top + 1):
            coef = comb(m, j) * u ** (m - j) * p ** (j * (n - N))
            if coef:
                x = T.moment(b, n, j)
                if x:
                    acc = acc + x * coef
    if m <= k or vA == inf:
        prec = inf
    else:
        prec = (n - N) * (k + 1) - (n + 1) * h + vA
    if precision is not None and prec < precision:
        raise InsufficientPrecisionError(
            f"depth {n} certifies precision {prec} < {precision}", prec)
    return ExtendedValue(acc, prec)


def extend_table(T, h, degree, n=None):
    """An EXTENDED table holding degrees up to ``degree`` at every level,
    each value computed at working depth ``n`` (default: the table depth)."""
    n = T.depth if n is None else n
    values, precs = {}, {}
    admissibility_check(T, h)
    for N in range(1, n + 1):
        for a in _units(T.p, N):
            for m in range(degree + 1):
                ev = amice_velu_extend(T, h, (a, N, m), n, check=False)
                values[(a, N, m)] = ev.value
                if ev.precision != inf:
                    precs[(a, N, m)] = ev.precision
    return MomentTable(T.p, T.k, n, T.alpha, values, EXTENDED, h, T.content_valuation,
                       degree, precs)


# -- synthetic extremal seeds ---------------------------------------------------------

def default_extremal_alpha(p, k):
    """theta^(k+1) with theta^2 = p, a root of X^2 - p^(k+1) of slope (k+1)/2."""
    theta = half_power_field(p).gen()
    return theta ** (k + 1)


class ExtremalSeed:
    """Values F, E at the divisors a/p^n - oo (root: 0 - oo) of a pair with
    U_p E = alpha E and U_p F = alpha (F + E).

    F plays phi_f and E plays phi_{f_alpha}; the symbol values of
    g_n = f - (n + 1) f_alpha are s(a, n, .) = F - (n + 1) E.
    """

    ROOT = (0, 0)

    def __init__(self, p, k, alpha, depth, F, E, recipe):
        self.p = p
        self.k = k
        self.alpha = alpha
        self.depth = depth
        self.F = F
        self.E = E
        self.recipe = recipe

    def nodes(self):
        yield self.ROOT
        for n in range(1, self.depth + 1):
            for a in _units(self.p, n):
                yield (a, n)

    def s(self, a, n, j=None):
        # a/p^n with p^n | a is the divisor 0 - oo
        key = self.ROOT if n == 0 or a % self.p ** n == 0 else (a % self.p ** n, n)
        vec = [f - (n + 1) * e for f, e in zip(self.F[key], self.E[key])]
        return vec if j is None else vec[j]

    def children(self, node, table):
        """Child vectors of ``node`` in ``table`` (a dict), c = 0..p-1.  At the
        root the c = 0 child is the root itself."""
        a, n = node
        p = self.p
        if node == self.ROOT:
            return [table[self.ROOT]] + [table[(c, 1)] for c in range(1, p)]
        return [table[(a + c * p ** n, n + 1)] for c in range(p)]

    def up(self, table, node):
        return _refine(self.p, self.k, self.children(node, table))

    def interior(self):
        yield self.ROOT
        for n in range(1, self.depth):
            for a in _units(self.p, n):
                yield (a, n)

    def compatibility_check(self):
        """U_p g_(n+1) = alpha g_n at every interior node (root: n = 0)."""
        p, al = self.p, self.alpha
        for node in self.interior():
            a, n = node
            nxt = {}
            if node == self.ROOT:
                nxt[self.ROOT] = self.s(0, 1)
                for c in range(1, p):
                    nxt[(c, 1)] = self.s(c, 1)
            else:
                for c in range(p):
                    b = a + c * p ** n
                    nxt[(b, n + 1)] = self.s(b, n + 1)
            lhs = self.up(nxt, node)
            rhs = [al * x for x in self.s(a, n)]
            for j, (x, y) in enumerate(zip(lhs, rhs)):
                if x != y:
                    return {"pass": False, "witness": {"a": a, "n": n, "j": j}}
        return {"pass": True, "witness": None}

    def integrality(self):
        """Least valuation of the seed values on unit cells (n >= 1)."""
        return min((_val(x, self.p) for (a, n) in self.nodes() if n
                    for x in self.s(a, n) if x), default=inf)


def _vandermonde_inverse(p, k):
    """Inverse of (c^j) for j, c = 0..k; p-integral since the c are distinct mod p."""
    n = k + 1
    rows = [[Fraction(c ** j) for c in range(n)] + [Fraction(int(i == j)) for i in range(n)]
            for j in range(n)]
    R, piv = rref(rows, 2 * n)
    return [r[n:] for r in R]


def synthetic_extremal_seed(p, k, alpha=None, depth=3, rng_seed=0, zero=False, bound=None):
    """Random integral seed realizing the Jordan relation of U_p.

    Level-1 values are free; the root is solved from U_p at 0 - oo, and the p
    children of each unit node are drawn freely except for their constant
    terms at c = 0..k, which a Vandermonde solve fixes so that U_p reproduces
    alpha E (resp. alpha (F + E)) at the parent.  Needs k < p.
    """
    if alpha is None:
        alpha = default_extremal_alpha(p, k)
    if _val(alpha, p) != Fraction(k + 1, 2):
        raise ValueError("alpha must have valuation (k + 1)/2")
    if k >= p:
        raise ValueError("synthetic seeds need k < p")
    if depth < 2:
        raise ValueError("depth must be at least 2")
    rng = random.Random(rng_seed)
    bound = p * p if bound is None else bound
    field = alpha.field if isinstance(alpha, QuadraticExtElement) else None

    def draw():
        if zero:
            return Fraction(0)
        a = rng.randint(-bound, bound)
        if field is None:
            return Fraction(a)
        return field(a, rng.randint(-bound, bound))

    def vec():
        return [draw() for _ in range(k + 1)]

    F, E = {}, {}
    for c in range(1, p):
        E[(c, 1)] = vec()
        F[(c, 1)] = vec()
    # root: (alpha - p^j) x_j = (sum over c >= 1 of the refined children)_j [- alpha E_j]
    sE = _refine(p, k, [[Fraction(0)] * (k + 1)] + [E[(c, 1)] for c in range(1, p)])
    sF = _refine(p, k, [[Fraction(0)] * (k + 1)] + [F[(c, 1)] for c in range(1, p)])
    E0, F0 = [], []
    for j in range(k + 1):
        d = alpha - p ** j
        if not d:
            raise ValueError("alpha equals p^j; the root cannot be solved")
        e = sE[j] / d
        E0.append(e)
        F0.append((sF[j] - alpha * e) / d)
    E[ExtremalSeed.ROOT] = E0
    F[ExtremalSeed.ROOT] = F0

    Vinv = _vandermonde_inverse(p, k)
    for n in range(1, depth):
        for a in _units(p, n):
            for tab, rhs in ((E, [alpha * x for x in E[(a, n)]]),
                             (F, [alpha * (x + y) for x, y in zip(F[(a, n)], E[(a, n)])])):
                kids = [vec() for _ in range(p)]
                for c in range(k + 1):
                    kids[c][0] = Fraction(0)
                rest = _refine(p, k, kids)
                target = [r - x for r, x in zip(rhs, rest)]
                for c in range(k + 1):
                    kids[c][0] = sum((Vinv[c][j] * target[j] for j in range(k + 1)), Fraction(0))
                for c in range(p):
                    tab[(a + c * p ** n, n + 1)] = kids[c]
    recipe = {"generator": "random.Random", "rng_seed": rng_seed, "bound": bound,
              "zero": zero, "order": "level-1 free, root solved, children by Vandermonde"}
    return ExtremalSeed(p, k, alpha, depth, F, E, recipe)


def extremal_measure(seed):
    """Moments alpha^-n s(a, n, j) of the extremal distribution."""
    p, k = seed.p, seed.k
    inv = 1 / seed.alpha
    values = {}
    scale = Fraction(1)
    for n in range(1, seed.depth + 1):
        scale = scale * inv
        for a in _units(p, n):
            for j, x in enumerate(seed.s(a, n)):
                values[(a, n, j)] = x * scale
    return MomentTable(p, k, seed.depth, seed.alpha, values, SYNTHETIC_EXTREMAL,
                       h=Fraction(k + 1, 2), content_valuation=seed.integrality())


def jordan_pair_check(seed):
    """U_p F = alpha (F + E), U_p E = alpha E at every interior node, plus the
    specialization at 0 - oo: the level-0 moments rebuilt from the level-1
    cells (units and pZ_p) equal F - E there."""
    al = seed.alpha
    report = {"jordan": True, "eigen": True, "witness": None}
    defect_nonzero = False
    for node in seed.interior():
        uE = seed.up(seed.E, node)
        uF = seed.up(seed.F, node)
        e, f = seed.E[node], seed.F[node]
        for j in range(seed.k + 1):
            if uE[j] != al * e[j]:
                report["eigen"] = False
                report["witness"] = report["witness"] or {"node": list(node), "j": j, "part": "E"}
            if uF[j] != al * (f[j] + e[j]):
                report["jordan"] = False
                report["witness"] = report["witness"] or {"node": list(node), "j": j, "part": "F"}
            if uF[j] != al * f[j]:
                defect_nonzero = True
    # (U_p - alpha) F = alpha E and (U_p - alpha) E = 0: nilpotent of order 2 iff E != 0
    report["nilpotency_order"] = 2 if defect_nonzero else (1 if any(
        x for v in seed.F.values() for x in v) else 0)
    p = seed.p
    level1 = {ExtremalSeed.ROOT: seed.s(0, 1)}
    for c in range(1, p):
        level1[(c, 1)] = seed.s(c, 1)
    rebuilt = [x / al for x in seed.up(level1, ExtremalSeed.ROOT)]
    g0 = [f - e for f, e in zip(seed.F[ExtremalSeed.ROOT], seed.E[ExtremalSeed.ROOT])]
    report["specialization"] = rebuilt == g0 and g0 == seed.s(0, 0)
    report["pass"] = report["jordan"] and report["eigen"] and report["specialization"]
    return report


# -- character integrals and L_p -----------------------------------------------------

def integrate_character(T, chi, m, level=None):
    """Integral of chi(x) x^m against T, as an element of Q(zeta) tensor K:
    sum over units a mod p^L of chi(a) sum_j binom(m, j) a^(m-j) p^(Lj) m(a, L, j)."""
    p = T.p
    if not 0 <= m <= T.degree:
        raise ValueError(f"m must lie in [0, {T.degree}]")
    L = max(chi.conductor, 1) if level is None else level
    if L < max(chi.conductor, 1):
        raise ValueError("level below the conductor")
    if L > T.depth:
        raise ValueError(f"conductor p^{L} exceeds the table depth {T.depth}")
    M = chi.cyclo_modulus
    counts = {}
    for a in _units(p, L):
        x = Fraction(0)
        for j in range(m + 1):
            mom = T.moment(a, L, j)
            if mom:
                x = x + mom * (comb(m, j) * a ** (m - j) * p ** (L * j))
        if x:
            e = chi.exponent(a, M)
            counts[e] = counts.get(e, Fraction(0)) + x
    return CycloElement.from_exponents(M, counts)


def _to_padic(x, p, prec):
    if isinstance(x, QuadraticExtElement):
        return x.to_padic(prec)
    return PAdicNumber.from_rational(x, p, prec)


def _binom_fraction(s, m):
    out = Fraction(1)
    for i in range(m):
        out = out * (s - i) / (i + 1)
    return out


def lp_sum(T, s, N, depth=None, h=None):
    """Exact approximant of the integral of exp(s log<x>) against T and its
    certified precision (see :func:`lp_eval`)."""
    p, k = T.p, T.k
    h = T.h if h is None else Fraction(h)
    n = T.depth if depth is None else depth
    if isinstance(s, PAdicNumber):
        if s.p != p:
            raise ValueError("prime mismatch")
        S = Fraction(s.unit * p ** s.val) if not s.is_zero() else Fraction(0)
        s_prec = s.prec
    else:
        S = Fraction(s)
        s_prec = inf
    if S and vp_rational(S, p) < 0:
        raise ValueError("need v_p(s) > -1")
    admissibility_check(T, h)
    vA = T.content_valuation
    if vA == inf:
        return Fraction(0), inf
    # truncation: terms with m > M have valuation >= M + 1 + v(A) - h
    M = max(k, ceil(N - vA + h - 1))
    # at s = 0 every binomial with m > 0 vanishes, so nothing is truncated
    tail = M + 1 + vA - h if S or s_prec != inf else inf
    moments = {}
    ext = inf
    for a in range(1, p):
        for m in range(M + 1):
            if m and S == 0:
                moments[(a, m)] = (Fraction(0), inf)
                continue
            ev = amice_velu_extend(T, h, (a, 1, m), n, check=False)
            moments[(a, m)] = (ev.value, ev.precision)
            if ev.precision != inf:
                ext = min(ext, m + ev.precision)
    low = min((_val(v, p) for v, _ in moments.values() if v), default=0)
    W = N + M + 2 + max(0, ceil(-low)) + max(0, ceil(-vA + h))
    W_eff = min(W, s_prec)
    total = Fraction(0)
    coef_prec = inf
    for a in range(1, p):
        if S == 0:
            lead = Fraction(1)
        else:
            lg = iwasawa_log(a, p, W + 1)
            lead = padic_exp(PAdicNumber.from_rational(S, p, W + 1) * lg, W).to_fraction()
        for m in range(M + 1):
            mom, _ = moments[(a, m)]
            if not mom:
                continue
            c = lead * _binom_fraction(S, m) * Fraction(p, a) ** m
            if c:
                total = total + c * mom
            if S != 0 or s_prec != inf:
                vfact = sum(vp_int(i, p) for i in range(2, m + 1))
                coef_prec = min(coef_prec, W_eff - vfact + _val(mom, p))
    return total, min(tail, ext, coef_prec)


def lp_eval(T, s, N, depth=None, h=None):
    """Integral over Z_p^x of exp(s log<x>) against T, certified mod p^N.

    On U(a, 1) the integrand is <a>^s (1 + p t / a)^s with x = a + p t; the
    binomial series in t is integrated term by term using the Amice-Velu
    extension at working depth ``depth``.  Returns a PAdicNumber (or, over a
    quadratic field that is not split, a quadratic element with p-adic
    coordinates).
    """
    total, prec = lp_sum(T, s, N, depth, h)
    if prec < N:
        raise InsufficientPrecisionError(
            f"certified precision {prec} is below the requested {N}", prec)
    return _to_padic(total, T.p, N)
