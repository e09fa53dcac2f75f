"""Independent reference implementations: dense Fraction matrices, tuple-based
Grassmann products and closed dimension formulas.  Nothing here imports the
package's linear algebra."""

from fractions import Fraction


def rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not m:
        return 0
    ncol = len(m[0])
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def dense(v: dict, n: int) -> list:
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k] = Fraction(int(x.numerator), int(x.denominator))
    return out


def span_rank(vectors, n: int) -> int:
    return rank([dense(v, n) for v in vectors])


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def to_matrix(v: dict, N: int) -> list:
    m = [[Fraction(0)] * N for _ in range(N)]
    for k, x in v.items():
        m[k // N][k % N] = Fraction(int(x.numerator), int(x.denominator))
    return m


def supertrace(m, even: int) -> Fraction:
    return sum(m[i][i] for i in range(even)) - sum(m[i][i] for i in range(even, len(m)))


# Grassmann monomials as sorted index tuples


def wedge(s: tuple, t: tuple):
    """(sign, sorted tuple) of xi_s * xi_t, or (0, None) if an index repeats."""
    if set(s) & set(t):
        return 0, None
    seq = list(s) + list(t)
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inv, tuple(sorted(seq))


# dimension formulas (even, odd)


def dim_gl(m, n):
    return (m * m + n * n, 2 * m * n)


def dim_sl(m, n):
    e, o = dim_gl(m, n)
    return (e - 1, o)


def dim_q(n):
    return (n * n, n * n)


def dim_sq(n):
    return (n * n, n * n - 1)


def dim_osp(m, n2):
    k = n2 // 2
    return (m * (m - 1) // 2 + k * (2 * k + 1), m * n2)


def dim_pe(n):
    return (n * n, n * n)


def dim_spe(n):
    return (n * n - 1, n * n)


def dim_vect(n):
    return (n * 2 ** (n - 1), n * 2 ** (n - 1))


def dim_o(m):
    return m * (m - 1) // 2
