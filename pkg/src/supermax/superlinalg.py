"""Superspaces, supermatrices in standard format, and the superbracket.

A matrix on an m|n space is flattened row-major into a sparse vector with
key i*N + j (N = m + n).  Basis vectors 0..m-1 are even and m..N-1 odd.
Most of the package passes these flattened dicts around directly; the
SuperMatrix class wraps one together with its carrier for the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from gmpy2 import mpq

from .linalg import (
    DimMismatch,
    Subspace,
    Vec,
    axpy,
    complement_basis,
    intersect,
    member,
    norm_value,
    scale,
    span,
    sum_spaces,
    vec,
)
from .scalar import fmt, to_field

__all__ = [
    "SuperDim",
    "SuperMatrix",
    "NotQueerFormat",
    "DimMismatch",
    "EVEN",
    "ODD",
    "MIXED",
    "mat_mul",
    "bracket_raw",
    "bracket_h",
    "split_parity",
    "raw_parity",
    "identity_raw",
    "super_bracket",
    "supertrace",
    "qtr",
    "kron",
    "kron_raw",
    "kron_perm",
    "pi_shift",
    "identity",
    "elementary",
    "Subspace",
    "span",
    "member",
    "sum_spaces",
    "intersect",
    "complement_basis",
]

EVEN, ODD, MIXED = "even", "odd", "mixed"


class NotQueerFormat(ValueError):
    pass


@dataclass(frozen=True)
class SuperDim:
    even: int
    odd: int

    def __post_init__(self):
        if self.even < 0 or self.odd < 0:
            raise ValueError("superdimension components must be non-negative")

    @property
    def total(self) -> int:
        return self.even + self.odd

    @property
    def parities(self) -> tuple:
        return _parities(self.even, self.odd)

    def shifted(self) -> "SuperDim":
        return SuperDim(self.odd, self.even)

    def tensor(self, other: "SuperDim") -> "SuperDim":
        return SuperDim(self.even * other.even + self.odd * other.odd,
                        self.even * other.odd + self.odd * other.even)

    def __str__(self):
        return f"{self.even}|{self.odd}"

    @classmethod
    def parse(cls, text: str) -> "SuperDim":
        m, _, n = str(text).partition("|")
        return cls(int(m), int(n or 0))


@lru_cache(maxsize=None)
def _parities(m: int, n: int) -> tuple:
    return (0,) * m + (1,) * n


@lru_cache(maxsize=None)
def _entry_parity(m: int, n: int) -> tuple:
    par = _parities(m, n)
    return tuple(par[i] ^ par[j] for i in range(m + n) for j in range(m + n))


# -- raw flattened operations ------------------------------------------------


def mat_mul(x: Vec, y: Vec, n: int) -> Vec:
    """Product of two flattened n x n matrices."""
    if not x or not y:
        return {}
    yrows: dict = {}
    for k, b in y.items():
        r, c = divmod(k, n)
        yrows.setdefault(r, []).append((c, b))
    out: dict = {}
    get = out.get
    for k, a in x.items():
        i, r = divmod(k, n)
        yr = yrows.get(r)
        if yr is None:
            continue
        base = i * n
        for c, b in yr:
            idx = base + c
            v = get(idx)
            out[idx] = a * b if v is None else v + a * b
    return {k: v for k, v in out.items() if v}


def split_parity(x: Vec, dim: SuperDim) -> tuple:
    ep = _entry_parity(dim.even, dim.odd)
    x0, x1 = {}, {}
    for k, v in x.items():
        (x1 if ep[k] else x0)[k] = v
    return x0, x1


def raw_parity(x: Vec, dim: SuperDim) -> Optional[int]:
    """0 or 1 for homogeneous x (zero counts as even), None if mixed."""
    ep = _entry_parity(dim.even, dim.odd)
    ps = {ep[k] for k in x}
    if len(ps) > 1:
        return None
    return ps.pop() if ps else 0


def bracket_h(x: Vec, px: int, y: Vec, py: int, n: int) -> Vec:
    """[x, y] for homogeneous x, y of parities px, py."""
    out = mat_mul(x, y, n)
    axpy(out, 1 if (px & py) else -1, mat_mul(y, x, n))
    return out


def bracket_raw(x: Vec, y: Vec, dim: SuperDim) -> Vec:
    """Supercommutator extended bilinearly: XY - YX + 2*Y1*X1."""
    n = dim.total
    out = mat_mul(x, y, n)
    axpy(out, -1, mat_mul(y, x, n))
    x1 = split_parity(x, dim)[1]
    y1 = split_parity(y, dim)[1]
    if x1 and y1:
        axpy(out, 2, mat_mul(y1, x1, n))
    return out


def identity_raw(n: int) -> Vec:
    one = mpq(1)
    return {i * n + i: one for i in range(n)}


def str_raw(x: Vec, dim: SuperDim):
    n, m = dim.total, dim.even
    t = mpq(0)
    for i in range(n):
        v = x.get(i * n + i)
        if v:
            t = t + v if i < m else t - v
    return norm_value(t)


def tr_raw(x: Vec, n: int):
    t = mpq(0)
    for i in range(n):
        v = x.get(i * n + i)
        if v:
            t = t + v
    return norm_value(t)


@lru_cache(maxsize=None)
def kron_perm(m1: int, n1: int, m2: int, n2: int) -> tuple:
    """Position of pair (i, j) in standard format of V1 (x) V2.

    Pairs are sorted by total parity, then lexicographically; returns a
    tuple indexed by i*N2 + j.
    """
    p1, p2 = _parities(m1, n1), _parities(m2, n2)
    pairs = [(i, j) for i in range(m1 + n1) for j in range(m2 + n2)]
    order = sorted(pairs, key=lambda ij: (p1[ij[0]] ^ p2[ij[1]], ij))
    pos = [0] * len(pairs)
    n2t = m2 + n2
    for k, (i, j) in enumerate(order):
        pos[i * n2t + j] = k
    return tuple(pos)


def kron_raw(a: Vec, d1: SuperDim, b: Vec, d2: SuperDim) -> Vec:
    """(A (x) B)(v (x) w) = (-1)^{p(B)p(v)} Av (x) Bw in standard format."""
    N1, N2 = d1.total, d2.total
    N = N1 * N2
    pos = kron_perm(d1.even, d1.odd, d2.even, d2.odd)
    par1 = d1.parities
    out: dict = {}
    for part_b, pb in zip(split_parity(b, d2), (0, 1)):
        if not part_b:
            continue
        bent = [(divmod(k, N2), y) for k, y in part_b.items()]
        for ka, x in a.items():
            i, k = divmod(ka, N1)
            neg = pb and par1[k]
            for (j, l), y in bent:
                r = pos[i * N2 + j]
                c = pos[k * N2 + l]
                v = -x * y if neg else x * y
                idx = r * N + c
                w = out.get(idx)
                out[idx] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def pi_perm(dim: SuperDim) -> list:
    """Old index of each basis vector of Pi(V) in standard format."""
    m, n = dim.even, dim.odd
    return list(range(m, m + n)) + list(range(m))


def conj_perm_raw(x: Vec, old_of_new: list) -> Vec:
    """Relabel a flattened matrix: new[a, b] = old[old_of_new[a], old_of_new[b]]."""
    n = len(old_of_new)
    new_of_old = [0] * n
    for a, o in enumerate(old_of_new):
        new_of_old[o] = a
    out = {}
    for k, v in x.items():
        i, j = divmod(k, n)
        out[new_of_old[i] * n + new_of_old[j]] = v
    return out


# -- public SuperMatrix ------------------------------------------------------


class SuperMatrix:
    """Endomorphism of an m|n superspace in standard format."""

    __slots__ = ("dim", "data", "declared_parity")

    def __init__(self, dim: SuperDim, entries=None, declared_parity: Optional[str] = None,
                 *, data: Optional[Vec] = None):
        self.dim = dim
        N = dim.total
        if data is None:
            data = {}
            if entries is not None:
                if len(entries) != N or any(len(r) != N for r in entries):
                    raise DimMismatch(f"entries must be {N}x{N}")
                for i, row in enumerate(entries):
                    for j, x in enumerate(row):
                        x = norm_value(x)
                        if x:
                            data[i * N + j] = x
        self.data = data
        actual = raw_parity(data, dim)
        actual = MIXED if actual is None else (ODD if actual else EVEN)
        if declared_parity is None:
            declared_parity = actual
        elif declared_parity != MIXED and data and actual != declared_parity:
            raise ValueError(f"entries are {actual}, declared {declared_parity}")
        self.declared_parity = declared_parity

    @property
    def N(self) -> int:
        return self.dim.total

    @property
    def parity(self) -> Optional[int]:
        return raw_parity(self.data, self.dim)

    @property
    def entries(self) -> list:
        N = self.N
        out = [[mpq(0)] * N for _ in range(N)]
        for k, v in self.data.items():
            i, j = divmod(k, N)
            out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.data.get(i * self.N + j, mpq(0))

    def blocks(self) -> tuple:
        m, N = self.dim.even, self.N
        rows = self.entries
        A = [r[:m] for r in rows[:m]]
        B = [r[m:] for r in rows[:m]]
        C = [r[:m] for r in rows[m:]]
        D = [r[m:] for r in rows[m:]]
        return A, B, C, D

    def even_part(self) -> "SuperMatrix":
        return SuperMatrix(self.dim, data=split_parity(self.data, self.dim)[0])

    def odd_part(self) -> "SuperMatrix":
        return SuperMatrix(self.dim, data=split_parity(self.data, self.dim)[1])

    def _like(self, other):
        if not isinstance(other, SuperMatrix):
            return False
        if other.dim != self.dim:
            raise DimMismatch(f"{self.dim} vs {other.dim}")
        return True

    def __add__(self, other):
        if not self._like(other):
            return NotImplemented
        d = dict(self.data)
        axpy(d, 1, other.data)
        return SuperMatrix(self.dim, data=d)

    def __sub__(self, other):
        if not self._like(other):
            return NotImplemented
        d = dict(self.data)
        axpy(d, -1, other.data)
        return SuperMatrix(self.dim, data=d)

    def __neg__(self):
        return SuperMatrix(self.dim, data=scale(-1, self.data))

    def __rmul__(self, c):
        return SuperMatrix(self.dim, data=scale(norm_value(c), self.data))

    def __matmul__(self, other):
        if not self._like(other):
            return NotImplemented
        return SuperMatrix(self.dim, data=mat_mul(self.data, other.data, self.N))

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.dim == other.dim and self.data == other.data

    def __hash__(self):
        return hash((self.dim, frozenset(self.data)))

    def is_zero(self) -> bool:
        return not self.data

    def to_json(self) -> dict:
        return {"dim": [self.dim.even, self.dim.odd],
                "entries": [[fmt(x) for x in row] for row in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "SuperMatrix":
        dim = SuperDim(*obj["dim"])
        return cls(dim, [[to_field(x) for x in row] for row in obj["entries"]])

    def __repr__(self):
        return f"SuperMatrix({self.dim}, {self.declared_parity}, nnz={len(self.data)})"


def identity(dim: SuperDim) -> SuperMatrix:
    return SuperMatrix(dim, data=identity_raw(dim.total))


def elementary(dim: SuperDim, i: int, j: int, c=1) -> SuperMatrix:
    return SuperMatrix(dim, data={i * dim.total + j: norm_value(c)})


def super_bracket(X: SuperMatrix, Y: SuperMatrix) -> SuperMatrix:
    if X.dim != Y.dim:
        raise DimMismatch(f"{X.dim} vs {Y.dim}")
    return SuperMatrix(X.dim, data=bracket_raw(X.data, Y.data, X.dim))


def supertrace(X: SuperMatrix):
    """str X = tr A - tr D."""
    return str_raw(X.data, X.dim)


def qtr(X: SuperMatrix):
    """Queer trace tr B of a matrix of the form (A B; B A)."""
    m, n = X.dim.even, X.dim.odd
    if m != n:
        raise NotQueerFormat(f"carrier {X.dim} is not n|n")
    N = X.N
    d = X.data
    for k, v in d.items():
        i, j = divmod(k, N)
        ti, tj = (i + n) % N, (j + n) % N
        if d.get(ti * N + tj) != v:
            raise NotQueerFormat("diagonal or off-diagonal blocks differ")
    t = mpq(0)
    for i in range(n):
        v = d.get(i * N + i + n)
        if v:
            t = t + v
    return norm_value(t)


def kron(A: SuperMatrix, B: SuperMatrix) -> SuperMatrix:
    return SuperMatrix(A.dim.tensor(B.dim), data=kron_raw(A.data, A.dim, B.data, B.dim))


def pi_shift(X: SuperMatrix) -> SuperMatrix:
    """The same operator on Pi(V), rewritten in standard format."""
    return SuperMatrix(X.dim.shifted(), data=conj_perm_raw(X.data, pi_perm(X.dim)))
