"""Independent sympy routes for the identity-lab checks.

Everything here is rebuilt from the printed rows with sympy, without
touching the hrvir engine, so agreement is a genuine second opinion.
"""
from functools import lru_cache

import sympy as sp

n, mu, d, b, bp, bpp = sp.symbols("nu mu d b bp bpp")
am, a0, ap = sp.symbols("am a0 ap")


def rel_a(nv, m, mp, a):
    """The y-coefficient relation, with ``a(i, j)`` the unknown at offset ``iμ+jμ′``."""
    return ((d - m - mp) * ((nv + d + mp * bp) * (nv + mp + d + m * bp) * a(0, 0)
                            - (nv + mp * b) * (nv + mp + d + m * bp) * a(0, 1)
                            - (nv + m * b) * (nv + m + d + mp * bp) * a(1, 0)
                            + (nv + m * b) * (nv + m + mp * b) * a(1, 1))
            - (d - mp) * (d + mp - m) * ((nv + d + (m + mp) * bp) * a(0, 0)
                                         - (nv + (m + mp) * b) * a(1, 1)))


def three_term_rows():
    A = {-1: am, 0: a0, 1: ap}
    rows = [rel_a(n - mu, mu, mu, lambda i, j: A[-1 + i + j]),
            rel_a(n, mu, -mu, lambda i, j: A[i - j]),
            rel_a(n + mu, -mu, -mu, lambda i, j: A[1 - i - j])]
    return sp.Matrix([[sp.expand(r).coeff(x) for x in (am, a0, ap)] for r in rows])


PRINTED_D = ((bp - b) * (1 + bp - b) * mu ** 6 * (
    4 * d * (3 * (b + bp) ** 2 - 7 * b - 5 * bp + 2) * n
    + 4 * (b + bp) * ((b + bp) ** 2 * (b - bp) - 2 * (b + bp) * (b - 2 * bp) - (b + 5 * bp) + 2) * mu ** 2
    + d ** 2 * (-(b + bp) ** 3 * (b - bp) - 2 * (b + bp) * (b ** 2 + 3 * b * bp + 4 * bp ** 2)
                + 19 * b ** 2 + 34 * b * bp + 19 * bp ** 2 - 24 * b - 16 * bp + 4)))

S_ROW = [(n + b) * (n + 1 + d - bpp), -(2 * n ** 2 + (2 * d - 1) * n - d + bpp - bpp ** 2 - b ** 2 + 1),
         (n + d - 1 + bpp) * (n - 1 - b)]
T_ROW = [d * (n - 1 + 2 * b) * (n + 1 + d - bpp),
         -(d * n ** 2 + (d ** 2 + (b - 2) * d - 2) * n + (b - 2) * d ** 2 - 2 * b ** 2 * d + 2 - 2 * b),
         -(d * n ** 2 + (d ** 2 + (bpp - 2) * d + 2) * n - d ** 2 - (2 * bpp ** 2 - bpp - 3) * d + 2 * bpp - 2),
         d * (n - 2 - b) * (n - 2 + d + 2 * bpp)]


def eliminate_numeric(point, nubar):
    """c_ν-coefficient left after eliminating c_{ν+1}..c_{ν−3} from five shifted rows.

    The rows are s at ν+1, ν, ν−1 and t at ν+1, ν.  Returns the 5×5
    matrix over columns c_{ν+1}..c_{ν−3}; its rank tells whether c_ν is
    forced to vanish.
    """
    sub = {b: point[0], bpp: point[1], d: point[2]}
    rows = []
    for row, ks in ((S_ROW, (1, 0, -1)), (T_ROW, (1, 0))):
        for k in ks:
            vec = [0] * 5
            for i, c in enumerate(row):
                col = 1 - k + i  # column 0 is c_{ν+1}
                vec[col] = sp.nsimplify(c.subs(sub).subs(n, nubar + k))
            rows.append(vec)
    return sp.Matrix(rows)


@lru_cache(maxsize=None)
def p_symbolic():
    """The elimination done in sympy with the multiplier that cancels c_{ν−3}."""
    s, t = S_ROW, T_ROW
    alpha, beta = d * (n - 1 + 2 * b), n + b
    gamma = n - 2 + d + bpp
    delta = d * (n - 2 + d + 2 * bpp) * (n + b)
    u = [sp.expand(alpha * s[i] - beta * t[i]) if i < 3 else sp.expand(-beta * t[3]) for i in range(4)]
    sm = [x.subs(n, n - 1) for x in s]
    assert sp.expand(gamma * u[3] + delta * sm[2]) == 0
    v1 = sp.expand(gamma * u[1] + delta * sm[0])
    v2 = sp.expand(gamma * u[2] + delta * sm[1])
    w0 = sp.expand(s[0] * v2)
    w1 = sp.expand(s[1] * v2 - s[2] * v1)
    return sp.expand(v1.subs(n, n + 1) * w1 - v2.subs(n, n + 1) * w0)
