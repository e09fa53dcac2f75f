"""Concrete linear Lie superalgebras and their constructors."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from .forms import (
    DegenerateForm,
    GramForm,
    form_solutions,
    omega_half,
    standard_even_form,
    standard_odd_form,
    tensor_form,
)
from .grassmann import (
    GrassmannElement,
    PoElement,
    lambda_dim,
    monomial_basis,
    po_variables,
    quantize_carrier,
    quantize_raw,
    t_lambda_raw,
    vect_basis_raw,
)
from .linalg import Echelon, Subspace, Vec, axpy, norm_value, scale
from .scalar import fmt, to_field
from .superlinalg import (
    SuperDim,
    SuperMatrix,
    bracket_h,
    identity_raw,
    raw_parity,
    split_parity,
    str_raw,
)

__all__ = [
    "LieSuperAlgebra",
    "AbstractAlgebra",
    "gl",
    "sl",
    "q",
    "sq",
    "aut_of_form",
    "saut_of_form",
    "sym_of_form",
    "osp",
    "pe",
    "spe",
    "pe_lambda",
    "hei",
    "hei_rep",
    "o_spinor",
    "vect",
    "t_lambda_algebra",
    "j_matrix",
    "q_of",
    "sq_of",
    "qtr_j",
    "hei_generators",
    "degree2_elements",
    "restrict_kernel",
    "by_name",
    "GramForm",
    "DegenerateForm",
    "standard_even_form",
    "standard_odd_form",
    "omega_half",
    "tensor_form",
]


class LieSuperAlgebra:
    """A bracket-closed subspace of End(V) with a homogeneous echelon basis."""

    def __init__(self, name: str, carrier: SuperDim, vectors: Sequence[Vec] = (),
                 meta: Optional[dict] = None, *, space: Optional[Subspace] = None):
        self.name = name
        self.carrier = carrier
        N = carrier.total
        if space is None:
            e = Echelon(N * N)
            for v in vectors:
                for part in split_parity(v, carrier):
                    if part:
                        e.add(part)
            space = e.subspace()
        self.space = space
        self.parities = tuple(raw_parity(r, carrier) for r in space.rows)
        self.meta = dict(meta or {})

    # the echelon rows of a graded subspace are automatically homogeneous
    @property
    def basis_raw(self) -> tuple:
        return self.space.rows

    @property
    def as_subspace(self) -> Subspace:
        return self.space

    @property
    def basis(self) -> list:
        return [SuperMatrix(self.carrier, data=dict(r)) for r in self.space.rows]

    @property
    def N(self) -> int:
        return self.carrier.total

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def sdim(self) -> tuple:
        o = sum(self.parities)
        return (len(self.parities) - o, o)

    def homogeneous(self) -> list:
        return list(zip(self.space.rows, self.parities))

    def contains(self, x) -> bool:
        if isinstance(x, SuperMatrix):
            x = x.data
        return self.space.contains(x)

    def __contains__(self, x):
        return self.contains(x)

    def issubalgebra_of(self, other: "LieSuperAlgebra") -> bool:
        return self.space.issubspace(other.space)

    def contains_identity(self) -> bool:
        return self.space.contains(identity_raw(self.N))

    def is_closed(self) -> bool:
        hb = self.homogeneous()
        e = self.space.echelon()
        N = self.N
        for a in range(len(hb)):
            x, px = hb[a]
            for b in range(a, len(hb)):
                y, py = hb[b]
                if e.reduce(bracket_h(x, px, y, py, N)):
                    return False
        return True

    def renamed(self, name: str, **meta) -> "LieSuperAlgebra":
        m = dict(self.meta)
        m.update(meta)
        return LieSuperAlgebra(name, self.carrier, meta=m, space=self.space)

    def __eq__(self, other):
        if not isinstance(other, LieSuperAlgebra):
            return NotImplemented
        return self.carrier == other.carrier and self.space == other.space

    def __hash__(self):
        return hash((self.carrier, self.space))

    def to_json(self) -> dict:
        out = {"name": self.name, "carrier": [self.carrier.even, self.carrier.odd],
               "sdim": list(self.sdim), "basis": [b.to_json()["entries"] for b in self.basis]}
        meta = {}
        for k, v in self.meta.items():
            if isinstance(v, GramForm):
                meta[k] = v.to_json()
            elif isinstance(v, SuperMatrix):
                meta[k] = v.to_json()
            elif isinstance(v, (int, str, float, bool)) or v is None:
                meta[k] = v
            else:
                meta[k] = fmt(v)
        out["meta"] = meta
        return out

    def __repr__(self):
        e, o = self.sdim
        return f"<{self.name} on {self.carrier}: {e}|{o}>"


def restrict_kernel(vectors: Sequence[Vec], functional) -> list:
    """Basis of span(vectors) intersected with ker(functional)."""
    vals = [norm_value(functional(v)) for v in vectors]
    piv = next((i for i, c in enumerate(vals) if c), None)
    if piv is None:
        return [dict(v) for v in vectors]
    p, cp = vectors[piv], vals[piv]
    out = []
    for v, c in zip(vectors, vals):
        if v is p:
            continue
        if c:
            w = dict(v)
            axpy(w, -c / cp, p)
            out.append(w)
        else:
            out.append(dict(v))
    return out


@dataclass
class AbstractAlgebra:
    """Structure constants on a homogeneous basis: [e_i, e_j] = sum_k c[i,j][k] e_k."""

    name: str
    parities: tuple
    consts: dict = field(default_factory=dict)
    labels: Optional[tuple] = None

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def sdim(self) -> tuple:
        o = sum(self.parities)
        return (self.dim - o, o)

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                c = self.consts.get((i, j))
                if c:
                    axpy(out, a * b, c)
        return out

    def check_antisymmetry(self) -> bool:
        p = self.parities
        for i in range(self.dim):
            for j in range(self.dim):
                a = self.consts.get((i, j), {})
                b = self.consts.get((j, i), {})
                s = 1 if p[i] & p[j] else -1
                if a != scale(s, b):
                    return False
        return True

    def check_jacobi(self) -> bool:
        """[x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]] on basis triples."""
        p = self.parities
        e = [{i: mpq(1)} for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.bracket(e[i], self.bracket(e[j], e[k]))
                    rhs = self.bracket(self.bracket(e[i], e[j]), e[k])
                    axpy(rhs, -1 if p[i] & p[j] else 1, self.bracket(e[j], self.bracket(e[i], e[k])))
                    if lhs != rhs:
                        return False
        return True

    @classmethod
    def from_operators(cls, name: str, ops: Sequence[Vec], parities: Sequence[int],
                       carrier: SuperDim, labels=None) -> "AbstractAlgebra":
        """Structure constants of a linearly independent closed family of operators."""
        N = carrier.total
        e = Echelon(N * N + len(ops))
        tag = N * N
        for i, v in enumerate(ops):
            w = dict(v)
            w[tag + i] = mpq(1)
            e.add(w)
        consts = {}
        for i, (x, px) in enumerate(zip(ops, parities)):
            for j, (y, py) in enumerate(zip(ops, parities)):
                r = e.reduce(bracket_h(x, px, y, py, N))
                if any(k < tag for k in r):
                    raise ValueError("operator family is not bracket-closed")
                c = {k - tag: -v for k, v in r.items()}
                if c:
                    consts[(i, j)] = c
        return cls(name, tuple(parities), consts, tuple(labels) if labels else None)


def _emat(N: int, i: int, j: int, c=1) -> Vec:
    return {i * N + j: mpq(c)}


def gl(m: int, n: int) -> LieSuperAlgebra:
    if m + n < 1:
        raise ValueError("gl(m|n) needs m + n >= 1")
    N = m + n
    return LieSuperAlgebra(f"gl({m}|{n})", SuperDim(m, n),
                           space=Subspace.full(N * N))


def sl(m: int, n: int) -> LieSuperAlgebra:
    d = SuperDim(m, n)
    N = d.total
    vecs = [_emat(N, i, j) for i in range(N) for j in range(N)]
    return LieSuperAlgebra(f"sl({m}|{n})", d, restrict_kernel(vecs, lambda v: str_raw(v, d)))


def j_matrix(n: int) -> Vec:
    """J_{2n} = (0 1_n; -1_n 0)."""
    N = 2 * n
    d = {}
    for i in range(n):
        d[i * N + i + n] = mpq(1)
        d[(i + n) * N + i] = mpq(-1)
    return d


def _q_basis(n: int) -> list:
    N = 2 * n
    out = []
    for i in range(n):
        for j in range(n):
            out.append({i * N + j: mpq(1), (i + n) * N + j + n: mpq(1)})
    for i in range(n):
        for j in range(n):
            out.append({i * N + j + n: mpq(1), (i + n) * N + j: mpq(1)})
    return out


def q(n: int) -> LieSuperAlgebra:
    return LieSuperAlgebra(f"q({n})", SuperDim(n, n), _q_basis(n),
                           meta={"J": SuperMatrix(SuperDim(n, n), data=j_matrix(n))})


def _qtr_raw(v: Vec, n: int):
    N = 2 * n
    t = 0
    for i in range(n):
        t = t + v.get(i * N + i + n, 0)
    return t


def sq(n: int) -> LieSuperAlgebra:
    vecs = restrict_kernel(_q_basis(n), lambda v: _qtr_raw(v, n))
    return LieSuperAlgebra(f"sq({n})", SuperDim(n, n), vecs,
                           meta={"J": SuperMatrix(SuperDim(n, n), data=j_matrix(n))})


def aut_of_form(G: GramForm, name: Optional[str] = None) -> LieSuperAlgebra:
    vecs = form_solutions(G, "aut", 0) + form_solutions(G, "aut", 1)
    return LieSuperAlgebra(name or f"aut(form on {G.carrier})", G.carrier, vecs,
                           meta={"preserved_form": G})


def saut_of_form(G: GramForm, name: Optional[str] = None) -> LieSuperAlgebra:
    a = aut_of_form(G)
    vecs = restrict_kernel(list(a.basis_raw), lambda v: str_raw(v, G.carrier))
    return LieSuperAlgebra(name or f"saut(form on {G.carrier})", G.carrier, vecs,
                           meta={"preserved_form": G})


def sym_of_form(G: GramForm) -> Subspace:
    N = G.carrier.total
    return Subspace(N * N, form_solutions(G, "sym", 0) + form_solutions(G, "sym", 1))


def osp(m: int, n2: int) -> LieSuperAlgebra:
    return aut_of_form(standard_even_form(m, n2), f"osp({m}|{n2})")


def pe(n: int) -> LieSuperAlgebra:
    return aut_of_form(standard_odd_form(n), f"pe({n})")


def spe(n: int) -> LieSuperAlgebra:
    return saut_of_form(standard_odd_form(n), f"spe({n})")


def pe_lambda(n: int, lam) -> LieSuperAlgebra:
    """Basis X + lam*str(X)*1 over a basis X of pe(n)."""
    lam = norm_value(to_field(lam) if isinstance(lam, str) else lam)
    base = pe(n)
    d = base.carrier
    one = identity_raw(d.total)
    vecs = []
    for v in base.basis_raw:
        w = dict(v)
        s = str_raw(v, d)
        if s and lam:
            axpy(w, lam * s, one)
        vecs.append(w)
    return LieSuperAlgebra(f"pe_lambda({n};{fmt(lam)})", d, vecs,
                           meta={"character_twist": lam, "preserved_form": base.meta["preserved_form"]})


# -- Heisenberg and spinor algebras ----------------------------------------------------


def hei(m: int) -> AbstractAlgebra:
    """Basis z, xi_1..xi_k, eta_1..eta_k (, theta) with [xi_i, eta_j] = d_ij z, [theta, theta] = z."""
    k, th = po_variables(m)
    parities = (0,) + (1,) * m
    consts = {}
    z = {0: mpq(1)}
    for i in range(1, k + 1):
        consts[(i, k + i)] = z
        consts[(k + i, i)] = z
    if th:
        consts[(m, m)] = z
    labels = ("z",) + tuple(f"xi{i}" for i in range(1, k + 1)) + \
        tuple(f"eta{i}" for i in range(1, k + 1)) + (("theta",) if th else ())
    return AbstractAlgebra(f"hei(0|{m})", parities, consts, labels)


def hei_generators(m: int) -> list:
    """PoElements 1, xi_i, eta_i (, theta)."""
    out = [PoElement(m, GrassmannElement.const(m))]
    out += [PoElement(m, GrassmannElement.gen(m, j)) for j in range(1, m + 1)]
    return out


def hei_rep(m: int) -> LieSuperAlgebra:
    if m < 1:
        raise ValueError("hei(0|m) needs m >= 1")
    n = quantize_carrier(m)
    ops = [quantize_raw(f) for f in hei_generators(m)]
    return LieSuperAlgebra(f"hei_rep({m})", lambda_dim(n), ops, meta={"m": m})


def degree2_elements(m: int) -> list:
    out = []
    for s in range(1 << m):
        if bin(s).count("1") == 2:
            out.append(PoElement(m, GrassmannElement(m, {s: 1})))
    return out


def o_spinor(m: int) -> LieSuperAlgebra:
    """Weyl-ordered quantization of the degree-2 part of po(0|m)."""
    if m < 2:
        raise ValueError("o_spinor needs m >= 2")
    n = quantize_carrier(m)
    ops = [quantize_raw(f, "weyl") for f in degree2_elements(m)]
    return LieSuperAlgebra(f"o_spinor({m})", lambda_dim(n), ops, meta={"m": m})


def vect(n: int) -> LieSuperAlgebra:
    return LieSuperAlgebra(f"vect(0|{n})", lambda_dim(n), [v for v, _ in vect_basis_raw(n)])


def t_lambda_algebra(n: int, lam) -> LieSuperAlgebra:
    lam = norm_value(to_field(lam) if isinstance(lam, str) else lam)
    ops = [t_lambda_raw(v, n, lam) for v, _ in vect_basis_raw(n)]
    return LieSuperAlgebra(f"T^{fmt(lam)}(vect(0|{n}))", lambda_dim(n), ops, meta={"lambda": lam})


# -- registry by name --------------------------------------------------------------


_NAME = re.compile(r"^\s*([A-Za-z_^0-9/]+?)\s*\(([^)]*)\)\s*$")


def by_name(name: str) -> LieSuperAlgebra:
    """Build an algebra from strings like 'gl(2|1)', 'q(3)', 'pe_lambda(3;1/2)', 'as'."""
    s = name.strip()
    if s == "as":
        from .sergeev import as_operators
        return as_operators()
    mt = _NAME.match(s)
    if not mt:
        raise KeyError(f"unknown algebra {name!r}")
    head, args = mt.group(1), mt.group(2)

    def sd():
        d = SuperDim.parse(args)
        return d.even, d.odd

    if head == "gl":
        return gl(*sd())
    if head == "sl":
        return sl(*sd())
    if head == "osp":
        return osp(*sd())
    if head in ("q", "sq", "pe", "spe", "hei", "hei_rep", "o_spinor", "hei_normalizer"):
        k = int(args)
        if head == "hei_normalizer":
            from .constructions import hei_normalizer
            return hei_normalizer(k)
        return {"q": q, "sq": sq, "pe": pe, "spe": spe, "hei": hei_rep,
                "hei_rep": hei_rep, "o_spinor": o_spinor}[head](k)
    if head == "pe_lambda":
        n, _, lam = args.partition(";")
        return pe_lambda(int(n), to_field(lam.strip() or "0"))
    if head == "vect":
        return vect(SuperDim.parse(args).odd or int(args.split("|")[-1]))
    if head == "T":
        lam, _, n = args.partition(";")
        return t_lambda_algebra(int(n), to_field(lam.strip()))
    raise KeyError(f"unknown algebra {name!r}")


# -- queer algebras relative to an arbitrary odd complex structure --------------------


def q_of(J: Vec, carrier: SuperDim, name: Optional[str] = None) -> LieSuperAlgebra:
    """Supercentralizer of an odd J with J^2 = -1 (conjugate to q(n))."""
    from .modtools import supercentralizer
    C = supercentralizer([(J, 1)], carrier)
    return LieSuperAlgebra(name or f"q_J({carrier})", carrier, space=C,
                           meta={"J": SuperMatrix(carrier, data=J)})


def qtr_j(v: Vec, J: Vec, carrier: SuperDim):
    """Queer trace relative to J: str(J X) / 2, equal to tr B for the standard J."""
    from .superlinalg import mat_mul
    return norm_value(str_raw(mat_mul(J, v, carrier.total), carrier) * mpq(1, 2))


def sq_of(J: Vec, carrier: SuperDim, name: Optional[str] = None) -> LieSuperAlgebra:
    base = q_of(J, carrier)
    vecs = restrict_kernel(list(base.basis_raw), lambda v: qtr_j(v, J, carrier))
    return LieSuperAlgebra(name or f"sq_J({carrier})", carrier, vecs,
                           meta={"J": SuperMatrix(carrier, data=J)})
