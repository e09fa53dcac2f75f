"""Exact sparse linear algebra over Q(i, sqrt2).

Vectors are dicts {coordinate: nonzero value}.  Values are gmpy2.mpq when
rational and Scalar otherwise; arithmetic between the two is transparent.
Subspaces are kept in reduced row echelon form, which is canonical, so two
Subspaces are equal exactly when their row lists are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from gmpy2 import mpq

from .scalar import Scalar, fmt, to_field

Vec = dict

__all__ = [
    "Vec",
    "DimMismatch",
    "norm_value",
    "vec",
    "axpy",
    "scale",
    "vadd",
    "vsub",
    "dense",
    "Echelon",
    "Subspace",
    "span",
    "member",
    "sum_spaces",
    "intersect",
    "complement_basis",
    "nullspace",
    "solve_particular",
]


class DimMismatch(ValueError):
    pass


_mpq_type = type(mpq(0))


def norm_value(x):
    """Coerce to mpq when rational, keep Scalar otherwise."""
    if isinstance(x, _mpq_type):
        return x
    if isinstance(x, Scalar):
        return x.a if x.is_rational() else x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return norm_value(to_field(x))
    return mpq(x)


def vec(items) -> Vec:
    """Sparse vector from a dense sequence or a dict, dropping zeros."""
    if isinstance(items, dict):
        pairs = items.items()
    else:
        pairs = enumerate(items)
    out = {}
    for k, x in pairs:
        x = norm_value(x)
        if x:
            out[k] = x
    return out


def axpy(v: Vec, c, w: Vec) -> None:
    """In place v += c*w."""
    for k, x in w.items():
        y = v.get(k)
        if y is None:
            v[k] = c * x
        else:
            y = y + c * x
            if y:
                v[k] = y
            else:
                del v[k]


def scale(c, v: Vec) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vadd(v: Vec, w: Vec) -> Vec:
    out = dict(v)
    axpy(out, 1, w)
    return out


def vsub(v: Vec, w: Vec) -> Vec:
    out = dict(v)
    axpy(out, -1, w)
    return out


def dense(v: Vec, n: int) -> list:
    out = [mpq(0)] * n
    for k, x in v.items():
        out[k] = x
    return out


def _simplify(x):
    if isinstance(x, Scalar) and x.is_rational():
        return x.a
    return x


class Echelon:
    """Incrementally maintained reduced row echelon basis."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, vectors: Iterable[Vec] = ()):
        self.n = n
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    def copy(self) -> "Echelon":
        e = Echelon(self.n)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        """Remainder of v modulo the span (zero on all pivot columns)."""
        rows = self.rows
        out = dict(v)
        for p in [k for k in v if k in rows]:
            c = out.get(p)
            if c:
                axpy(out, -c, rows[p])
        return out

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def add(self, v: Vec) -> bool:
        """Insert v; return True if the span grew."""
        r = self.reduce(v)
        if not r:
            return False
        self._insert_reduced(r)
        return True

    def add_reduced(self, r: Vec) -> None:
        """Insert a nonzero vector already reduced against this basis."""
        self._insert_reduced(dict(r))

    def _insert_reduced(self, r: Vec) -> None:
        q = min(r)
        c = r[q]
        if c != 1:
            ic = 1 / c
            for k in r:
                r[k] = _simplify(r[k] * ic)
        else:
            for k in r:
                r[k] = _simplify(r[k])
        for row in self.rows.values():
            f = row.get(q)
            if f:
                axpy(row, -f, r)
        self.rows[q] = r

    def coords(self, v: Vec) -> Vec:
        """Coordinates of v (assumed in the span) w.r.t. the sorted rows."""
        idx = {p: i for i, p in enumerate(sorted(self.rows))}
        return {idx[k]: x for k, x in v.items() if k in idx}

    def subspace(self) -> "Subspace":
        return Subspace._from_rows(self.n, self.rows)


class Subspace:
    """Immutable subspace of F^n in canonical reduced row echelon form."""

    __slots__ = ("ambient_dim", "pivots", "rows", "parity_mask", "_ech")

    def __init__(self, ambient_dim: int, vectors: Iterable = (), parity_mask=None):
        e = Echelon(ambient_dim)
        for v in vectors:
            v = v if isinstance(v, dict) else vec(v)
            _check(v, ambient_dim)
            e.add(v)
        self._set(ambient_dim, e.rows, parity_mask)

    @classmethod
    def _from_rows(cls, n: int, rows: dict, parity_mask=None) -> "Subspace":
        s = object.__new__(cls)
        s._set(n, {p: dict(r) for p, r in rows.items()}, parity_mask)
        return s

    def _set(self, n, rows, parity_mask):
        self.ambient_dim = n
        self.pivots = tuple(sorted(rows))
        self.rows = tuple(rows[p] for p in self.pivots)
        self.parity_mask = tuple(parity_mask) if parity_mask is not None else None
        self._ech = None

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls._from_rows(n, {k: {k: mpq(1)} for k in range(n)})

    def echelon(self) -> Echelon:
        if self._ech is None:
            e = Echelon(self.ambient_dim)
            e.rows = dict(zip(self.pivots, self.rows))
            self._ech = e
        return self._ech

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> list:
        return [dict(r) for r in self.rows]

    def __len__(self):
        return len(self.rows)

    def __iter__(self) -> Iterator[Vec]:
        return iter(self.rows)

    def contains(self, v) -> bool:
        v = v if isinstance(v, dict) else vec(v)
        return not self.echelon().reduce(v)

    __contains__ = contains

    def reduce(self, v: Vec) -> Vec:
        return self.echelon().reduce(v)

    def coords(self, v: Vec) -> list:
        """Coordinates of v in the echelon basis (v must lie in the span)."""
        r = self.reduce(v)
        if r:
            raise ValueError("vector not in subspace")
        return [v.get(p, 0) for p in self.pivots]

    def issubspace(self, other: "Subspace") -> bool:
        _same(self, other)
        e = other.echelon()
        return all(not e.reduce(r) for r in self.rows)

    def __le__(self, other):
        return self.issubspace(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and all(a == b for a, b in zip(self.rows, other.rows))
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_spaces(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def dense_rows(self) -> list:
        return [dense(r, self.ambient_dim) for r in self.rows]

    def to_json(self) -> list:
        return [[fmt(x) for x in row] for row in self.dense_rows()]

    @classmethod
    def from_json(cls, n: int, data: list) -> "Subspace":
        return cls(n, [vec([to_field(x) for x in row]) for row in data])

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check(v: Vec, n: int) -> None:
    if v and (max(v) >= n or min(v) < 0):
        raise DimMismatch(f"vector index out of range for ambient dimension {n}")


def _same(s: Subspace, t: Subspace) -> None:
    if s.ambient_dim != t.ambient_dim:
        raise DimMismatch(f"ambient dimensions {s.ambient_dim} and {t.ambient_dim} differ")


def span(vectors: Iterable, n: int) -> Subspace:
    return Subspace(n, vectors)


def member(v, s: Subspace) -> bool:
    return s.contains(v)


def sum_spaces(s: Subspace, t: Subspace) -> Subspace:
    _same(s, t)
    e = s.echelon().copy()
    for r in t.rows:
        e.add(r)
    return e.subspace()


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Zassenhaus: rows (u, u) for u in S and (w, 0) for w in T."""
    _same(s, t)
    n = s.ambient_dim
    if s.dim == 0 or t.dim == 0:
        return Subspace.zero(n)
    if s.dim > t.dim:
        s, t = t, s
    e = Echelon(2 * n)
    for w in t.rows:
        e.add(dict(w))
    for u in s.rows:
        d = dict(u)
        for k, x in u.items():
            d[k + n] = x
        e.add(d)
    out = [{k - n: x for k, x in r.items()} for p, r in e.rows.items() if p >= n]
    return Subspace(n, out)


def complement_basis(s: Subspace, t: Subspace) -> list:
    """Vectors of T that extend a basis of S (S need not lie in T)."""
    _same(s, t)
    e = s.echelon().copy()
    out = []
    for r in t.rows:
        if e.add(r):
            out.append(dict(r))
    return out


def nullspace(equations: Sequence[Vec], nvars: int) -> list:
    """Basis of {x : <eq, x> = 0 for every equation}, one vector per free column."""
    e = Echelon(nvars)
    for eq in equations:
        if eq:
            e.add(eq)
    piv = e.rows
    by_col: dict = {}
    for p, r in piv.items():
        for k, x in r.items():
            if k != p:
                by_col.setdefault(k, []).append((p, x))
    out = []
    for f in range(nvars):
        if f in piv:
            continue
        v = {f: mpq(1)}
        for p, x in by_col.get(f, ()):
            v[p] = -x
        out.append(v)
    return out


def solve_particular(columns: Sequence[Vec], target: Vec):
    """Find coefficients c with sum c_j columns[j] = target, or None."""
    # augment each column with a tag coordinate to read off the combination
    n = 1 + max([max(c) for c in columns if c] + [max(target) if target else 0])
    e = Echelon(n + len(columns))
    for j, c in enumerate(columns):
        v = dict(c)
        v[n + j] = mpq(1)
        e.add(v)
    r = e.reduce(target)
    if any(k < n for k in r):
        return None
    return {k - n: -x for k, x in r.items()}
