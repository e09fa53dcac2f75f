"""Bilinear forms on superspaces and the aut / sym solution spaces.

omega(x, y) = x^T G y.  A homogeneous operator A lies in aut(omega) when
omega(Ax, y) + (-1)^{p(A)p(x)} omega(x, Ay) = 0, and in sym(omega) when the
same holds with the opposite sign.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .linalg import Echelon, Subspace, Vec, nullspace, norm_value
from .scalar import fmt, to_field
from .superlinalg import SuperDim, kron_perm, split_parity

__all__ = [
    "GramForm",
    "DegenerateForm",
    "SYMMETRIC",
    "SKEW",
    "standard_even_form",
    "standard_odd_form",
    "symplectic_form",
    "omega_half",
    "tensor_form",
    "form_solutions",
]

SYMMETRIC, SKEW = "supersymmetric", "super-antisymmetric"


class DegenerateForm(ValueError):
    pass


@dataclass(frozen=True)
class GramForm:
    carrier: SuperDim
    data: dict  # flattened Gram matrix
    parity: int
    symmetry: str

    @classmethod
    def from_matrix(cls, carrier: SuperDim, matrix) -> "GramForm":
        N = carrier.total
        data = {}
        for i, row in enumerate(matrix):
            for j, x in enumerate(row):
                x = norm_value(x)
                if x:
                    data[i * N + j] = x
        return cls.from_data(carrier, data)

    @classmethod
    def from_data(cls, carrier: SuperDim, data: dict) -> "GramForm":
        N = carrier.total
        if Echelon(N, _rows(data, N)).dim != N:
            raise DegenerateForm("Gram matrix is singular")
        even, odd = split_parity(data, carrier)
        if even and odd:
            raise ValueError("form is not homogeneous")
        parity = 1 if odd else 0
        par = carrier.parities
        sym = skew = True
        for k, v in data.items():
            i, j = divmod(k, N)
            w = data.get(j * N + i, 0)
            s = -1 if par[i] & par[j] else 1
            if w != s * v:
                sym = False
            if w != -s * v:
                skew = False
        if sym == skew:
            raise ValueError("form is neither supersymmetric nor super-antisymmetric")
        return cls(carrier, dict(data), parity, SYMMETRIC if sym else SKEW)

    @property
    def matrix(self) -> list:
        N = self.carrier.total
        out = [[mpq(0)] * N for _ in range(N)]
        for k, v in self.data.items():
            i, j = divmod(k, N)
            out[i][j] = v
        return out

    def pair(self, x: Vec, y: Vec):
        N = self.carrier.total
        t = 0
        for k, v in self.data.items():
            i, j = divmod(k, N)
            a, b = x.get(i), y.get(j)
            if a and b:
                t = t + a * v * b
        return norm_value(t)

    def to_json(self) -> dict:
        return {"dim": [self.carrier.even, self.carrier.odd],
                "matrix": [[fmt(x) for x in row] for row in self.matrix],
                "parity": self.parity, "symmetry": self.symmetry}


def _rows(data: dict, N: int) -> list:
    rows = [dict() for _ in range(N)]
    for k, v in data.items():
        i, j = divmod(k, N)
        rows[i][j] = v
    return rows


def standard_even_form(m: int, n2: int) -> GramForm:
    """Antidiagonal 1s on the even block, symplectic (0 1; -1 0) pairs on the odd block."""
    if n2 % 2:
        raise ValueError("odd block of an even supersymmetric form must be even-dimensional")
    N = m + n2
    data = {}
    for i in range(m):
        data[i * N + (m - 1 - i)] = mpq(1)
    for b in range(n2 // 2):
        i = m + 2 * b
        data[i * N + i + 1] = mpq(1)
        data[(i + 1) * N + i] = mpq(-1)
    return GramForm.from_data(SuperDim(m, n2), data)


def symplectic_form(n: int) -> GramForm:
    """Skew even form on 2n|0 with (0 1; -1 0) blocks on consecutive pairs."""
    N = 2 * n
    data = {}
    for b in range(n):
        i = 2 * b
        data[i * N + i + 1] = mpq(1)
        data[(i + 1) * N + i] = mpq(-1)
    return GramForm.from_data(SuperDim(N, 0), data)


def standard_odd_form(n: int) -> GramForm:
    """(0 1_n; 1_n 0) on n|n."""
    N = 2 * n
    data = {}
    for i in range(n):
        data[i * N + i + n] = mpq(1)
        data[(i + n) * N + i] = mpq(1)
    return GramForm.from_data(SuperDim(n, n), data)


def omega_half(n: int) -> GramForm:
    from .grassmann import lambda_dim, omega_half_matrix
    return GramForm.from_matrix(lambda_dim(n), omega_half_matrix(n))


def tensor_form(g1: GramForm, g2: GramForm) -> GramForm:
    """G[(i,j),(k,l)] = (-1)^{p(j)p(k)} G1[i,k] G2[j,l], in standard format."""
    d1, d2 = g1.carrier, g2.carrier
    N1, N2 = d1.total, d2.total
    N = N1 * N2
    pos = kron_perm(d1.even, d1.odd, d2.even, d2.odd)
    p1, p2 = d1.parities, d2.parities
    data = {}
    for ka, a in g1.data.items():
        i, k = divmod(ka, N1)
        for kb, b in g2.data.items():
            j, l = divmod(kb, N2)
            v = a * b
            if p2[j] & p1[k]:
                v = -v
            data[pos[i * N2 + j] * N + pos[k * N2 + l]] = v
    return GramForm.from_data(d1.tensor(d2), data)


def form_solutions(G: GramForm, kind: str, parity: int) -> list:
    """Basis (flattened matrices) of aut or sym of G in the given parity."""
    dim = G.carrier
    N = dim.total
    par = dim.parities
    rows = _rows(G.data, N)
    cols = [dict() for _ in range(N)]
    for k, v in G.data.items():
        i, j = divmod(k, N)
        cols[j][i] = v
    sgn = 1 if kind == "aut" else -1
    eqs: dict = {}
    # unknown A[r, c] with p(r) + p(c) = parity
    for r in range(N):
        for c in range(N):
            if par[r] ^ par[c] != parity:
                continue
            u = r * N + c
            # (A^T G)[c, l] gets A[r, c] G[r, l]
            for l, g in rows[r].items():
                e = eqs.setdefault(c * N + l, {})
                e[u] = e.get(u, 0) + g
            # eps(k) (G A)[k, c] gets eps(k) G[k, r] A[r, c]
            for k, g in cols[r].items():
                s = sgn if not (parity & par[k]) else -sgn
                e = eqs.setdefault(k * N + c, {})
                e[u] = e.get(u, 0) + s * g
    unknowns = [r * N + c for r in range(N) for c in range(N) if par[r] ^ par[c] == parity]
    local = {u: i for i, u in enumerate(unknowns)}
    eq_list = []
    for e in eqs.values():
        d = {local[u]: norm_value(x) for u, x in e.items() if x}
        if d:
            eq_list.append(d)
    sols = nullspace(eq_list, len(unknowns))
    return [{unknowns[i]: x for i, x in s.items()} for s in sols]
