"""The central extension of spe(4) and its realization inside po(0|6).

The abstract algebra is spe(4) + C z with [x, x'] + c(C, C') z, where C, C'
are the antisymmetric lower-left blocks.  Two readings of the cocycle are
available: "hodge" pairs C with the Hodge dual of C' (this is the invariant
one), "literal" uses tr(C C') as written.

The operator form quantizes 1, the linear and quadratic functions and one
10-dimensional o(6)-component W of the cubics of po(0|6).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from gmpy2 import mpq

from .algebras import AbstractAlgebra, LieSuperAlgebra, o_spinor
from .grassmann import GrassmannElement, PoElement, lambda_dim, monomial_basis, poisson_bracket, quantize_raw
from .linalg import Echelon, Subspace, Vec, axpy, norm_value, nullspace, scale, solve_particular
from .modtools import ModuleAction, minimal_submodules
from .superlinalg import SuperDim, bracket_h, identity_raw, str_raw

__all__ = [
    "ComponentNotFound",
    "sergeev_as",
    "spe4_basis",
    "cubic_components",
    "as_operators",
    "AsIsomorphism",
    "as_isomorphism",
]

M6 = 6
SPE_DIM = SuperDim(4, 4)


class ComponentNotFound(LookupError):
    pass


# -- abstract side ------------------------------------------------------------------


def _e8(i: int, j: int, c=1) -> Vec:
    return {i * 8 + j: mpq(c)}


@lru_cache(maxsize=None)
def spe4_basis() -> tuple:
    """(labels, vectors, parities) of spe(4) as (A B; C -A^t) with tr A = 0, B = B^t, C = -C^t."""
    labels, vecs, pars = [], [], []

    def even(A: dict, label: str):
        v = {}
        for (i, j), c in A.items():
            axpy(v, c, _e8(i, j))
            axpy(v, -c, _e8(4 + j, 4 + i))
        labels.append(label)
        vecs.append(v)
        pars.append(0)

    for i in range(4):
        for j in range(4):
            if i != j:
                even({(i, j): 1}, f"A{i + 1}{j + 1}")
    for i in range(3):
        even({(i, i): 1, (i + 1, i + 1): -1}, f"H{i + 1}")
    for i in range(4):
        for j in range(i, 4):
            v = _e8(i, 4 + j)
            if i != j:
                axpy(v, 1, _e8(j, 4 + i))
            labels.append(f"B{i + 1}{j + 1}")
            vecs.append(v)
            pars.append(1)
    for i in range(4):
        for j in range(i + 1, 4):
            v = _e8(4 + i, j)
            axpy(v, -1, _e8(4 + j, i))
            labels.append(f"C{i + 1}{j + 1}")
            vecs.append(v)
            pars.append(1)
    return tuple(labels), tuple(vecs), tuple(pars)


def _c_block(v: Vec) -> dict:
    out = {}
    for k, x in v.items():
        r, c = divmod(k, 8)
        if r >= 4 and c < 4:
            out[(r - 4, c)] = x
    return out


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def _hodge(C: dict) -> dict:
    """(*C)_{ij} = 1/2 sum_{kl} eps_{ijkl} C_{kl} for a 4 x 4 antisymmetric C."""
    out: dict = {}
    for p in itertools.permutations(range(4)):
        i, j, k, l = p
        c = C.get((k, l))
        if c:
            out[(i, j)] = out.get((i, j), 0) + mpq(_perm_sign(p), 2) * c
    return out


def cocycle(x: Vec, y: Vec, reading: str = "hodge"):
    C, D = _c_block(x), _c_block(y)
    if reading == "hodge":
        D = _hodge(D)
    elif reading != "literal":
        raise ValueError(f"unknown cocycle reading {reading!r}")
    t = 0
    for (i, j), a in C.items():
        b = D.get((j, i))
        if b:
            t = t + a * b
    return norm_value(t)


def sergeev_as(reading: str = "hodge") -> AbstractAlgebra:
    """Basis z, then the spe(4) basis of spe4_basis()."""
    labels, vecs, pars = spe4_basis()
    e = Echelon(64 + len(vecs))
    tag = 64
    for i, v in enumerate(vecs):
        w = dict(v)
        w[tag + i] = mpq(1)
        e.add(w)
    consts = {}
    for i, (x, px) in enumerate(zip(vecs, pars)):
        for j, (y, py) in enumerate(zip(vecs, pars)):
            r = e.reduce(bracket_h(x, px, y, py, 8))
            if any(k < tag for k in r):
                raise AssertionError("spe(4) basis is not closed")
            c = {k - tag + 1: -v for k, v in r.items()}
            if px and py:
                z = cocycle(x, y, reading)
                if z:
                    c[0] = z
            if c:
                consts[(i + 1, j + 1)] = c
    return AbstractAlgebra(f"as[{reading}]", (0,) + pars, consts, ("z",) + labels)


# -- operator side ------------------------------------------------------------------


def _cubic_monomials() -> list:
    return [s for s in monomial_basis(M6) if bin(s).count("1") == 3]


@lru_cache(maxsize=None)
def cubic_components() -> tuple:
    """Minimal o(6)-submodules of po_1(0|6), each as a tuple of PoElements,
    paired with a flag telling whether the component is abelian."""
    cub = _cubic_monomials()
    pos = {s: i for i, s in enumerate(cub)}
    quad = [s for s in monomial_basis(M6) if bin(s).count("1") == 2]
    ops = []
    for s in quad:
        f = PoElement(M6, GrassmannElement(M6, {s: mpq(1)}))
        op = {}
        for j, c in enumerate(cub):
            r = poisson_bracket(f, PoElement(M6, GrassmannElement(M6, {c: mpq(1)}))).f
            for u, v in r.coeffs.items():
                op[pos[u] * len(cub) + j] = v
        ops.append(op)
    rep = minimal_submodules(ModuleAction(len(cub), ops, [0] * len(ops)))
    out = []
    for W in rep.minimal:
        els = tuple(PoElement(M6, GrassmannElement(M6, {cub[i]: v for i, v in r.items()}))
                    for r in W.rows)
        abelian = all(not poisson_bracket(a, b).f.coeffs for a in els for b in els)
        out.append((els, abelian))
    return tuple(out)


def _preferred(components) -> tuple:
    """The abelian component containing xi1 xi2 xi3, else the first abelian one."""
    top = 0b000111
    ab = [els for els, flag in components if flag]
    if not ab:
        raise ComponentNotFound("no abelian 10-dimensional component in po_1(0|6)")
    for els in ab:
        e = Echelon(1 << M6, [dict(x.f.coeffs) for x in els])
        if e.contains({top: mpq(1)}):
            return els
    return ab[0]


def as_operators(component: Optional[int] = None) -> LieSuperAlgebra:
    """Quantized span(1) + Lambda^1 + Lambda^2 + W on Lambda(3), a 4|4 carrier.

    component selects W by index in cubic_components(); by default the
    abelian component containing xi1 xi2 xi3 is used.
    """
    comps = cubic_components()
    if component is None:
        W = _preferred(comps)
    else:
        W, flag = comps[component]
        if not flag:
            raise ComponentNotFound(f"component {component} is not abelian")
    low = [PoElement(M6, GrassmannElement(M6, {s: mpq(1)}))
           for s in monomial_basis(M6) if bin(s).count("1") <= 2]
    ops = [quantize_raw(f, "weyl") for f in low + list(W)]
    return LieSuperAlgebra("as", lambda_dim(3), ops, meta={"m": 6})


# -- the explicit isomorphism --------------------------------------------------------


@dataclass
class AsIsomorphism:
    reading: str
    ok: bool
    z_scale: Optional[object]
    even_block: Optional[str]
    images: list = field(default_factory=list)  # operator image of each abstract basis vector
    mismatches: int = 0
    detail: str = ""


def _block(x: Vec, rows: range, cols: range, N: int) -> Vec:
    out = {}
    k = len(cols)
    for key, v in x.items():
        r, c = divmod(key, N)
        if r in rows and c in cols:
            out[(r - rows.start) * k + (c - cols.start)] = v
    return out


def _ad_matrix(x: Vec, px: int, basis: list, pars: list, N: int, ech: Echelon, tag: int) -> dict:
    """Matrix of ad(x) on span(basis), coordinates via a tagged echelon."""
    n = len(basis)
    out = {}
    for j, (y, py) in enumerate(zip(basis, pars)):
        r = ech.reduce(bracket_h(x, px, y, py, N))
        if any(k < tag for k in r):
            raise ValueError("span is not ad-invariant")
        for k, v in r.items():
            out[(k - tag) * n + j] = -v
    return out


def _tagged(basis: list, N2: int) -> Echelon:
    e = Echelon(N2 + len(basis))
    for i, v in enumerate(basis):
        w = dict(v)
        w[N2 + i] = mpq(1)
        e.add(w)
    return e


def _intertwiners(src: list, dst: list, n_src: int, n_dst: int) -> list:
    """Solutions T (n_dst x n_src, flattened) of T S_a = D_a T for all a."""
    eqs = []
    for S, D in zip(src, dst):
        # (T S)[r, c] - (D T)[r, c] = sum_k T[r,k] S[k,c] - sum_k D[r,k] T[k,c]
        Scol = {}
        for key, v in S.items():
            k, c = divmod(key, n_src)
            Scol.setdefault(c, []).append((k, v))
        Drow = {}
        for key, v in D.items():
            r, k = divmod(key, n_dst)
            Drow.setdefault(r, []).append((k, v))
        for r in range(n_dst):
            for c in range(n_src):
                eq: dict = {}
                for k, v in Scol.get(c, []):
                    u = r * n_src + k
                    eq[u] = eq.get(u, 0) + v
                for k, v in Drow.get(r, []):
                    u = k * n_src + c
                    eq[u] = eq.get(u, 0) - v
                eq = {u: norm_value(v) for u, v in eq.items() if v}
                if eq:
                    eqs.append(eq)
    return nullspace(eqs, n_dst * n_src)


def as_isomorphism(reading: str = "hodge", L: Optional[LieSuperAlgebra] = None) -> AsIsomorphism:
    """Build phi: abstract as -> operators and check phi([x, y]) = [phi x, phi y] on all basis pairs.

    The even part is matched through the restriction of o(6) to the even (or
    odd) half of Lambda(3); the odd part through the sl(4)-intertwiners, which
    are unique up to one scalar on each irreducible summand; the remaining
    freedom is fixed by one [B, C] bracket, and the central term then
    determines the single scale of z.
    """
    L = L or as_operators()
    N = L.N
    N2 = N * N
    A = sergeev_as(reading)
    labels, svecs, spars = spe4_basis()
    even_idx = [i for i, p in enumerate(spars) if p == 0]
    b_idx = [i for i, l in enumerate(labels) if l.startswith("B")]
    c_idx = [i for i, l in enumerate(labels) if l.startswith("C")]
    o6 = list(o_spinor(6).basis_raw)
    hb = L.homogeneous()
    Lodd = [x for x, p in hb if p == 1]
    for variant, rng in (("even", range(0, 4)), ("odd", range(4, 8))):
        # phi on sl(4): the o(6) element whose block on this half equals A
        restr = [_block(x, rng, rng, N) for x in o6]
        phi_even = {}
        good = True
        for i in even_idx:
            Ablk = _block(svecs[i], range(0, 4), range(0, 4), 8)
            sol = solve_particular(restr, Ablk)
            if sol is None:
                good = False
                break
            v: dict = {}
            for k, c in sol.items():
                axpy(v, c, o6[k])
            phi_even[i] = v
        if not good:
            continue
        # ad matrices on the odd parts
        ech_L = _tagged(Lodd, N2)
        ech_S = {}
        res = {}
        for part in (b_idx, c_idx):
            sub = [svecs[i] for i in part]
            eS = _tagged(sub, 64)
            src = [_ad_matrix(svecs[i], 0, sub, [1] * len(sub), 8, eS, 64) for i in even_idx]
            dst = [_ad_matrix(phi_even[i], 0, Lodd, [1] * len(Lodd), N, ech_L, N2) for i in even_idx]
            sols = _intertwiners(src, dst, len(sub), len(Lodd))
            if len(sols) != 1:
                good = False
                break
            T = sols[0]
            res[part[0]] = [{r: v for (key, v) in T.items() for r, c in [divmod(key, len(sub))] if c == j}
                            for j in range(len(sub))]
        if not good:
            continue
        imgB = [_combine(col, Lodd) for col in res[b_idx[0]]]
        imgC = [_combine(col, Lodd) for col in res[c_idx[0]]]
        phi = {i: phi_even[i] for i in even_idx}
        for j, i in enumerate(b_idx):
            phi[i] = imgB[j]
        for j, i in enumerate(c_idx):
            phi[i] = imgC[j]
        # fix the B-scale from one nonzero [B, C]
        ratio = None
        for i in b_idx:
            for j in c_idx:
                target = bracket_h(svecs[i], 1, svecs[j], 1, 8)
                if not target:
                    continue
                want = _phi_of_spe(target, svecs, even_idx, phi_even)
                got = bracket_h(phi[i], 1, phi[j], 1, N)
                k = next(iter(want))
                ratio = norm_value(got.get(k, 0) / want[k]) if got.get(k) else None
                break
            if ratio is not None:
                break
        if not ratio:
            continue
        for i in b_idx:
            phi[i] = scale(1 / ratio, phi[i])
        # z scale from one nonzero cocycle value
        one = identity_raw(N)
        z_scale = None
        for i in c_idx:
            for j in c_idx:
                cval = cocycle(svecs[i], svecs[j], reading)
                if cval:
                    got = bracket_h(phi[i], 1, phi[j], 1, N)
                    z_scale = norm_value(got.get(0, 0) / cval)
                    break
            if z_scale is not None:
                break
        if not z_scale:
            return AsIsomorphism(reading, False, None, variant, [], 0,
                                 "abstract central term is nonzero where the operator bracket has none")
        images = [scale(z_scale, one)] + [phi[i] for i in range(len(svecs))]
        bad = 0
        pars = A.parities
        for a in range(A.dim):
            for b in range(A.dim):
                lhs: dict = {}
                for k, v in A.consts.get((a, b), {}).items():
                    axpy(lhs, v, images[k])
                rhs = bracket_h(images[a], pars[a], images[b], pars[b], N)
                if lhs != rhs:
                    bad += 1
        return AsIsomorphism(reading, bad == 0, z_scale, variant, images, bad,
                             "" if not bad else f"{bad} basis pairs violate the bracket")
    return AsIsomorphism(reading, False, None, None, [], 0, "no sl(4)-equivariant identification found")


def _combine(col: dict, basis: list) -> Vec:
    v: dict = {}
    for k, c in col.items():
        axpy(v, c, basis[k])
    return v


def _phi_of_spe(x: Vec, svecs, even_idx, phi_even) -> Vec:
    """phi of an even spe(4) element written in the spe(4) basis."""
    sol = solve_particular([svecs[i] for i in even_idx], x)
    if sol is None:
        raise ValueError("element is not in the even part of spe(4)")
    v: dict = {}
    for k, c in sol.items():
        axpy(v, c, phi_even[even_idx[k]])
    return v
