"""Independent sources of Hecke eigenvalues used to cross-check modular symbols."""


def elliptic_ap(q, a1=0, a2=-1, a3=1, a4=-10, a6=-20):
    """q + 1 - #E(F_q) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

    The default curve is X_0(11): y^2 + y = x^3 - x^2 - 10x - 20.
    """
    affine = 0
    for x in range(q):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % q
        for y in range(q):
            if (y * y + a1 * x * y + a3 * y - rhs) % q == 0:
                affine += 1
    return q - affine


def ramanujan_tau(n):
    """tau(n) from Delta = q prod (1 - q^m)^24, by power-series expansion."""
    N = n
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for m in range(1, N + 1):
        for _ in range(24):
            for i in range(N, m - 1, -1):
                coeffs[i] -= coeffs[i - m]
    return coeffs[n - 1]
