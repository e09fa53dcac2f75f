"""Grassmann algebra, Berezin integral, vector fields, densities and po(0|m).

Monomials are bitmasks over the generators (bit i <-> xi_{i+1}).  As a
superspace Lambda(n) is ordered with even-degree monomials first, each
parity class sorted by (degree, lexicographic index tuple).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional

from gmpy2 import mpq

from .linalg import Subspace, Vec, axpy, norm_value, scale
from .scalar import R2, I, Scalar, fmt, to_field
from .superlinalg import SuperDim, SuperMatrix, mat_mul, split_parity

__all__ = [
    "GrassmannElement",
    "PoElement",
    "DiffOperator",
    "NotAVectorField",
    "BadGrade",
    "monomial_basis",
    "lambda_dim",
    "lambda_mul",
    "berezin",
    "mult_op",
    "deriv_op",
    "vect_basis",
    "vect_basis_raw",
    "divergence",
    "t_lambda",
    "t_lambda_raw",
    "omega_half_matrix",
    "poisson_bracket",
    "po_graded_component",
    "quantize",
    "quantize_raw",
    "po_variables",
    "theta_coordinates",
    "poisson_bracket_theta",
]


class NotAVectorField(ValueError):
    pass


class BadGrade(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(subset) -> int:
    """Bitmask from 1-based generator indices."""
    m = 0
    for s in subset:
        m |= 1 << (s - 1)
    return m


def subset_of(mask: int) -> tuple:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_basis(n: int) -> tuple:
    """Bitmasks of Lambda(n) in superspace standard order."""
    masks = []
    for parity in (0, 1):
        for k in range(parity, n + 1, 2):
            for c in combinations(range(1, n + 1), k):
                masks.append(mask_of(c))
    return tuple(masks)


@lru_cache(maxsize=None)
def monomial_index(n: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(n))}


def lambda_dim(n: int) -> SuperDim:
    h = 1 << (n - 1) if n else 1
    return SuperDim(h, h) if n else SuperDim(1, 0)


def mono_mul(s: int, t: int) -> int:
    """Sign of xi_S * xi_T as xi_{S+T}; 0 if they overlap."""
    if s & t:
        return 0
    # count pairs (a in S, b in T) with a > b
    inv = 0
    tt = t
    while tt:
        b = tt & -tt
        inv += _popcount(s & ~((b << 1) - 1))
        tt ^= b
    return -1 if inv & 1 else 1


def mono_deriv(i: int, s: int) -> int:
    """Sign of d/dxi_i applied to xi_S (left derivative), 0 if i not in S."""
    bit = 1 << (i - 1)
    if not s & bit:
        return 0
    return -1 if _popcount(s & (bit - 1)) & 1 else 1


@dataclass(frozen=True)
class GrassmannElement:
    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            m = k if isinstance(k, int) else mask_of(k)
            if m >> self.n:
                raise ValueError(f"monomial {k} outside Lambda({self.n})")
            v = norm_value(v)
            if v:
                clean[m] = v
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def gen(cls, n: int, i: int) -> "GrassmannElement":
        return cls(n, {1 << (i - 1): 1})

    @classmethod
    def const(cls, n: int, c=1) -> "GrassmannElement":
        return cls(n, {0: c})

    def _check(self, o):
        if not isinstance(o, GrassmannElement):
            return False
        if o.n != self.n:
            from .linalg import DimMismatch
            raise DimMismatch(f"Lambda({self.n}) vs Lambda({o.n})")
        return True

    def __add__(self, o):
        if not self._check(o):
            return NotImplemented
        d = dict(self.coeffs)
        axpy(d, 1, o.coeffs)
        return GrassmannElement(self.n, d)

    def __sub__(self, o):
        if not self._check(o):
            return NotImplemented
        d = dict(self.coeffs)
        axpy(d, -1, o.coeffs)
        return GrassmannElement(self.n, d)

    def __neg__(self):
        return GrassmannElement(self.n, scale(-1, self.coeffs))

    def __rmul__(self, c):
        return GrassmannElement(self.n, scale(norm_value(c), self.coeffs))

    def __mul__(self, o):
        if isinstance(o, GrassmannElement):
            return lambda_mul(self, o)
        return self.__rmul__(o)

    def __eq__(self, o):
        if not isinstance(o, GrassmannElement):
            return NotImplemented
        return self.n == o.n and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs)))

    @property
    def parity(self) -> Optional[int]:
        ps = {_popcount(m) & 1 for m in self.coeffs}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def degree(self) -> int:
        return max((_popcount(m) for m in self.coeffs), default=-1)

    def parts(self) -> tuple:
        e, o = {}, {}
        for m, v in self.coeffs.items():
            (o if _popcount(m) & 1 else e)[m] = v
        return GrassmannElement(self.n, e), GrassmannElement(self.n, o)

    def deriv(self, i: int) -> "GrassmannElement":
        out = {}
        bit = 1 << (i - 1)
        for m, v in self.coeffs.items():
            s = mono_deriv(i, m)
            if s:
                out[m ^ bit] = v if s > 0 else -v
        return GrassmannElement(self.n, out)

    def to_vec(self) -> Vec:
        idx = monomial_index(self.n)
        return {idx[m]: v for m, v in self.coeffs.items()}

    @classmethod
    def from_vec(cls, n: int, v: Vec) -> "GrassmannElement":
        basis = monomial_basis(n)
        return cls(n, {basis[k]: x for k, x in v.items()})

    def to_json(self) -> dict:
        terms = sorted(self.coeffs.items(), key=lambda kv: (_popcount(kv[0]), subset_of(kv[0])))
        return {"n": self.n,
                "terms": [{"monomial": list(subset_of(m)), "coeff": fmt(v)} for m, v in terms]}

    @classmethod
    def from_json(cls, obj: dict) -> "GrassmannElement":
        return cls(obj["n"], {mask_of(t["monomial"]): to_field(t["coeff"]) for t in obj["terms"]})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m, v in sorted(self.coeffs.items(), key=lambda kv: (_popcount(kv[0]), subset_of(kv[0]))):
            mono = "*".join(f"x{i}" for i in subset_of(m)) or "1"
            parts.append(f"({fmt(v)})*{mono}")
        return " + ".join(parts)


def lambda_mul(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    if f.n != g.n:
        from .linalg import DimMismatch
        raise DimMismatch(f"Lambda({f.n}) vs Lambda({g.n})")
    out: dict = {}
    for s, a in f.coeffs.items():
        for t, b in g.coeffs.items():
            sg = mono_mul(s, t)
            if sg:
                k = s | t
                v = a * b if sg > 0 else -(a * b)
                w = out.get(k)
                out[k] = v if w is None else w + v
    return GrassmannElement(f.n, out)


def berezin(f: GrassmannElement):
    """Top coefficient: the coefficient of xi_1 ... xi_n."""
    return f.coeffs.get((1 << f.n) - 1, mpq(0))


# -- operators on Lambda(n) ----------------------------------------------------


@lru_cache(maxsize=None)
def _mult_mono_raw(n: int, s: int) -> tuple:
    idx = monomial_index(n)
    N = 1 << n
    out = []
    for col, t in enumerate(monomial_basis(n)):
        sg = mono_mul(s, t)
        if sg:
            out.append((idx[s | t] * N + col, sg))
    return tuple(out)


def mult_raw(f: GrassmannElement) -> Vec:
    """Flattened matrix of left multiplication by f on Lambda(n)."""
    out: dict = {}
    for s, a in f.coeffs.items():
        for k, sg in _mult_mono_raw(f.n, s):
            v = a if sg > 0 else -a
            w = out.get(k)
            out[k] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def deriv_raw(n: int, i: int) -> tuple:
    idx = monomial_index(n)
    N = 1 << n
    bit = 1 << (i - 1)
    out = []
    for col, t in enumerate(monomial_basis(n)):
        sg = mono_deriv(i, t)
        if sg:
            out.append((idx[t ^ bit] * N + col, mpq(sg)))
    return tuple(out)


def deriv_vec(n: int, i: int) -> Vec:
    return dict(deriv_raw(n, i))


def mult_op(f: GrassmannElement) -> SuperMatrix:
    return SuperMatrix(lambda_dim(f.n), data=mult_raw(f))


def deriv_op(n: int, i: int) -> SuperMatrix:
    return SuperMatrix(lambda_dim(n), data=deriv_vec(n, i))


def apply_raw(op: Vec, f: GrassmannElement) -> GrassmannElement:
    n = f.n
    N = 1 << n
    v = f.to_vec()
    out: dict = {}
    for k, a in op.items():
        r, c = divmod(k, N)
        x = v.get(c)
        if x:
            w = out.get(r)
            out[r] = a * x if w is None else w + a * x
    return GrassmannElement.from_vec(n, {k: x for k, x in out.items() if x})


@dataclass
class DiffOperator:
    """A matrix on Lambda(n) with an optional normal-ordered symbol.

    The symbol maps (S, T) bitmask pairs to coefficients of xi_S d_T, where
    d_T = d_{t1} ... d_{tr} in increasing index order.
    """

    n: int
    matrix: SuperMatrix
    symbol: Optional[dict] = None

    @classmethod
    def from_symbol(cls, n: int, symbol: dict) -> "DiffOperator":
        return cls(n, SuperMatrix(lambda_dim(n), data=symbol_raw(n, symbol)), dict(symbol))

    def consistent(self) -> bool:
        if self.symbol is None:
            return True
        return symbol_raw(self.n, self.symbol) == self.matrix.data

    def __call__(self, f: GrassmannElement) -> GrassmannElement:
        return apply_raw(self.matrix.data, f)


def _deriv_chain_raw(n: int, t: int) -> Vec:
    N = 1 << n
    op = {i * N + i: mpq(1) for i in range(N)}
    for i in reversed(subset_of(t)):
        op = mat_mul(deriv_vec(n, i), op, N)
    return op


@lru_cache(maxsize=None)
def _symbol_mono_raw(n: int, s: int, t: int) -> tuple:
    op = mat_mul(mult_raw(GrassmannElement(n, {s: 1})), _deriv_chain_raw(n, t), 1 << n)
    return tuple(op.items())


def symbol_raw(n: int, symbol: dict) -> Vec:
    out: dict = {}
    for (s, t), c in symbol.items():
        axpy(out, norm_value(c), dict(_symbol_mono_raw(n, s, t)))
    return out


# -- vector fields ---------------------------------------------------------------


@lru_cache(maxsize=None)
def vect_basis_raw(n: int) -> tuple:
    """Pairs (matrix, parity) for xi_S d_i, ordered by (i, monomial order)."""
    out = []
    N = 1 << n
    for i in range(1, n + 1):
        d = deriv_vec(n, i)
        for s in monomial_basis(n):
            op = mat_mul(mult_raw(GrassmannElement(n, {s: 1})), d, N)
            out.append((op, (_popcount(s) + 1) & 1))
    return tuple(out)


def vect_basis(n: int) -> list:
    if n < 1:
        raise ValueError("vect(0|n) needs n >= 1")
    dim = lambda_dim(n)
    out = []
    for i in range(1, n + 1):
        for s in monomial_basis(n):
            out.append(DiffOperator.from_symbol(n, {(s, 1 << (i - 1)): 1}))
    return out


def field_coefficients(op: Vec, n: int) -> list:
    """f_i = D(xi_i); raises NotAVectorField unless D = sum f_i d_i."""
    fs = [apply_raw(op, GrassmannElement.gen(n, i)) for i in range(1, n + 1)]
    rebuilt: dict = {}
    N = 1 << n
    for i, f in enumerate(fs, start=1):
        axpy(rebuilt, 1, mat_mul(mult_raw(f), deriv_vec(n, i), N))
    if rebuilt != {k: v for k, v in op.items() if v}:
        raise NotAVectorField("operator is not a derivation of Lambda(n)")
    return fs


def divergence_raw(op: Vec, n: int) -> GrassmannElement:
    """div(sum f_i d_i) = sum (-1)^{p(f_i)} d_i f_i, split by parity."""
    fs = field_coefficients(op, n)
    out = GrassmannElement(n)
    for i, f in enumerate(fs, start=1):
        fe, fo = f.parts()
        out = out + fe.deriv(i) - fo.deriv(i)
    return out


def divergence(D) -> GrassmannElement:
    if isinstance(D, DiffOperator):
        return divergence_raw(D.matrix.data, D.n)
    if isinstance(D, SuperMatrix):
        n = D.dim.total.bit_length() - 1
        return divergence_raw(D.data, n)
    raise TypeError("expected DiffOperator or SuperMatrix")


def t_lambda_raw(op: Vec, n: int, lam) -> Vec:
    out = dict(op)
    lam = norm_value(lam)
    if lam:
        axpy(out, lam, mult_raw(divergence_raw(op, n)))
    return out


def t_lambda(n: int, lam) -> Callable:
    """The density representation D -> D + lam * div(D)."""
    if n < 1:
        raise ValueError("T^lambda needs n >= 1")
    lam = norm_value(to_field(lam) if isinstance(lam, str) else lam)
    dim = lambda_dim(n)

    def rep(D) -> SuperMatrix:
        data = D.matrix.data if isinstance(D, DiffOperator) else D.data
        return SuperMatrix(dim, data=t_lambda_raw(data, n, lam))

    return rep


def omega_half_matrix(n: int) -> list:
    """Gram matrix G[S, T] = berezin(xi_S xi_T) in the superspace basis."""
    basis = monomial_basis(n)
    top = (1 << n) - 1
    G = [[mpq(0)] * len(basis) for _ in basis]
    for a, s in enumerate(basis):
        for b, t in enumerate(basis):
            if s | t == top and not s & t:
                G[a][b] = mpq(mono_mul(s, t))
    return G


# -- Poisson superalgebra po(0|m) ----------------------------------------------------


def po_variables(m: int) -> tuple:
    """(k, has_theta): generators are xi_1..xi_k, eta_1..eta_k, then theta."""
    return m // 2, bool(m % 2)


@dataclass(frozen=True)
class PoElement:
    """Element of po(0|m) stored as a GrassmannElement on m generators.

    Generator j (1-based) is xi_j for j <= k, eta_{j-k} for k < j <= 2k,
    and theta for j = 2k + 1 when m is odd.
    """

    m: int
    f: GrassmannElement

    @classmethod
    def monomial(cls, m: int, xis=(), etas=(), theta: bool = False, c=1) -> "PoElement":
        k, _ = po_variables(m)
        gens = [i for i in xis] + [k + j for j in etas] + ([2 * k + 1] if theta else [])
        g = GrassmannElement.const(m, c)
        for j in gens:
            g = lambda_mul(g, GrassmannElement.gen(m, j))
        return cls(m, g)

    @property
    def grade(self) -> int:
        return self.f.degree() - 2

    def __add__(self, o):
        return PoElement(self.m, self.f + o.f)

    def __sub__(self, o):
        return PoElement(self.m, self.f - o.f)

    def __rmul__(self, c):
        return PoElement(self.m, c * self.f)

    def __neg__(self):
        return PoElement(self.m, -self.f)


def _pb(f: GrassmannElement, g: GrassmannElement, pairs, theta, theta_scale) -> GrassmannElement:
    out = GrassmannElement(f.n)
    for fp, sign in ((f.parts()[0], -1), (f.parts()[1], 1)):
        if not fp.coeffs:
            continue
        acc = GrassmannElement(f.n)
        for a, b in pairs:
            acc = acc + lambda_mul(fp.deriv(a), g.deriv(b)) + lambda_mul(fp.deriv(b), g.deriv(a))
        if theta:
            acc = acc + norm_value(theta_scale) * lambda_mul(fp.deriv(theta), g.deriv(theta))
        out = out + sign * acc
    return out


def poisson_bracket(f: PoElement, g: PoElement, theta_scale=1) -> PoElement:
    """{f, g} = -(-1)^{p(f)} (sum_i (f_xi g_eta + f_eta g_xi) + s * f_theta g_theta).

    theta_scale s = 1 is the formula as usually written; s = 2 matches the
    operator realization theta -> theta + d_theta, whose square is 1.
    """
    if f.m != g.m:
        from .linalg import DimMismatch
        raise DimMismatch(f"po(0|{f.m}) vs po(0|{g.m})")
    k, th = po_variables(f.m)
    pairs = [(i, k + i) for i in range(1, k + 1)]
    return PoElement(f.m, _pb(f.f, g.f, pairs, 2 * k + 1 if th else None, theta_scale))


def poisson_bracket_theta(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    """{f, g} = -(-1)^{p(f)} sum_j df/dTheta_j dg/dTheta_j."""
    out = GrassmannElement(f.n)
    for fp, sign in ((f.parts()[0], -1), (f.parts()[1], 1)):
        acc = GrassmannElement(f.n)
        for j in range(1, f.n + 1):
            acc = acc + lambda_mul(fp.deriv(j), g.deriv(j))
        out = out + sign * acc
    return out


def theta_coordinates(m: int) -> list:
    """Images of the po generators in Theta coordinates.

    xi_j = (Theta_j - i Theta_{k+j}) / sqrt2, eta_j = (Theta_j + i Theta_{k+j}) / sqrt2,
    theta = Theta_{2k+1}.
    """
    k, th = po_variables(m)
    c = R2 * mpq(1, 2)
    out = []
    for j in range(1, k + 1):
        out.append(GrassmannElement(m, {1 << (j - 1): c, 1 << (k + j - 1): -I * c}))
    for j in range(1, k + 1):
        out.append(GrassmannElement(m, {1 << (j - 1): c, 1 << (k + j - 1): I * c}))
    if th:
        out.append(GrassmannElement.gen(m, 2 * k + 1))
    return out


def substitute(f: GrassmannElement, images: list) -> GrassmannElement:
    """Algebra homomorphism sending generator j to images[j-1]."""
    out = GrassmannElement(f.n)
    for s, a in f.coeffs.items():
        term = GrassmannElement.const(images[0].n if images else f.n, a)
        for j in subset_of(s):
            term = lambda_mul(term, images[j - 1])
        out = out + term
    return out


def po_graded_component(m: int, i: int) -> Subspace:
    """Span of degree i+2 monomials inside the coordinates of Lambda(m)."""
    if not -2 <= i <= m - 2:
        raise BadGrade(f"grade {i} outside [-2, {m - 2}]")
    idx = monomial_index(m)
    return Subspace(1 << m, [{idx[s]: mpq(1)} for s in monomial_basis(m) if _popcount(s) == i + 2])


def quantize_carrier(m: int) -> int:
    k, th = po_variables(m)
    return k + (1 if th else 0)


@lru_cache(maxsize=None)
def _theta_op(m: int) -> tuple:
    k, _ = po_variables(m)
    n = k + 1
    t = mult_raw(GrassmannElement.gen(n, n))
    axpy(t, 1, deriv_vec(n, n))
    return tuple(t.items())


@lru_cache(maxsize=None)
def _quantize_mono(m: int, s: int) -> tuple:
    k, th = po_variables(m)
    n = quantize_carrier(m)
    N = 1 << n
    xs = s & ((1 << k) - 1)
    es = (s >> k) & ((1 << k) - 1)
    op = mat_mul(mult_raw(GrassmannElement(n, {xs: 1})), _deriv_chain_raw(n, es), N)
    if th and s >> (2 * k):
        op = mat_mul(op, dict(_theta_op(m)), N)
    return tuple(op.items())


def _weyl_shift(f: GrassmannElement, k: int) -> GrassmannElement:
    """exp(-1/2 sum_u d_eta_u d_xi_u) f."""
    out = f
    term = f
    step = 1
    while term.coeffs:
        nxt = GrassmannElement(f.n)
        for u in range(1, k + 1):
            nxt = nxt + term.deriv(u).deriv(k + u)
        term = mpq(-1, 2 * step) * nxt
        out = out + term
        step += 1
    return out


def quantize_raw(f: PoElement, ordering: str = "normal") -> Vec:
    k, _ = po_variables(f.m)
    g = f.f if ordering == "normal" else _weyl_shift(f.f, k)
    out: dict = {}
    for s, a in g.coeffs.items():
        axpy(out, a, dict(_quantize_mono(f.m, s)))
    return out


def quantize(f: PoElement, ordering: str = "normal") -> DiffOperator:
    """Normal-ordered quantization: xi -> mult, eta -> d, theta -> theta + d_theta.

    ordering="weyl" first applies exp(-1/2 sum d_eta d_xi), which symmetrizes
    the xi/eta pairs (xi eta -> xi d - 1/2).
    """
    n = quantize_carrier(f.m)
    return DiffOperator(n, SuperMatrix(lambda_dim(n), data=quantize_raw(f, ordering)))
