"""The tensor, Q-tensor, current and Heisenberg-normalizer constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from .algebras import (
    LieSuperAlgebra,
    aut_of_form,
    sl,
    sq_of,
    hei_rep,
    j_matrix,
    o_spinor,
    q,
    saut_of_form,
)
from .forms import GramForm, omega_half, tensor_form
from .grassmann import (
    GrassmannElement,
    deriv_vec,
    quantize_carrier,
    lambda_dim,
    monomial_basis,
    monomial_index,
    mult_raw,
    t_lambda_raw,
    vect_basis_raw,
)
from .linalg import Echelon, Subspace, Vec, nullspace, norm_value
from .scalar import I
from .superlinalg import (
    SuperDim,
    SuperMatrix,
    bracket_h,
    identity_raw,
    kron_perm,
    conj_perm_raw,
    kron_raw,
    mat_mul,
    raw_parity,
)

__all__ = [
    "ConstructionResult",
    "odot_G",
    "odot_Q",
    "q_carrier",
    "current_semidirect",
    "current_parts",
    "form_semidirect",
    "hei_normalizer",
    "literal_normalizer",
    "theta_j",
    "hei_normalizer_ambient",
    "reassoc_perm",
    "flip_conjugate",
    "transport",
    "q_tensor_splitting",
    "lambda_fold_perm",
    "relabel",
    "conjugate",
    "invariant_forms",
    "odd_form_congruence",
]


@dataclass
class ConstructionResult:
    algebra: LieSuperAlgebra
    ambient: Optional[LieSuperAlgebra]
    carrier_factorization: dict = field(default_factory=dict)

    def contained(self) -> bool:
        return self.ambient is None or self.algebra.issubalgebra_of(self.ambient)


def _is_q(g: LieSuperAlgebra) -> bool:
    return "J" in g.meta


def odot_G(g1: LieSuperAlgebra, g2: LieSuperAlgebra, name: Optional[str] = None) -> LieSuperAlgebra:
    """Image of X1 + X2 -> X1 (x) 1 + 1 (x) X2 on V1 (x) V2."""
    if _is_q(g1) and _is_q(g2):
        raise ValueError("both factors carry a Q-structure; use odot_Q")
    d1, d2 = g1.carrier, g2.carrier
    one1, one2 = identity_raw(d1.total), identity_raw(d2.total)
    vecs = [kron_raw(x, d1, one2, d2) for x in g1.basis_raw]
    vecs += [kron_raw(one1, d1, y, d2) for y in g2.basis_raw]
    return LieSuperAlgebra(name or f"{g1.name} . {g2.name}", d1.tensor(d2), vecs,
                           meta={"factors": [g1.name, g2.name]})


def q_carrier(n1: int, n2: int) -> dict:
    """V1 (x)^Q V2 = A (x) U (x) B with A = C^{n1}, B = C^{n2} even and U = 1|1.

    In standard format V1 = A (x) U carries J = 1 (x) J_U = J_{2 n1}, and
    V2 = U (x) B carries I = I_U (x) 1.  Returns the operators J and I on the
    full carrier together with the superdimensions involved.
    """
    A, U, B = SuperDim(n1, 0), SuperDim(1, 1), SuperDim(n2, 0)
    V1, V2 = A.tensor(U), U.tensor(B)
    V = V1.tensor(B)
    J = kron_raw(j_matrix(n1), V1, identity_raw(n2), B)
    iu = {1: I, 2: I}
    I2 = _u_b_to_v(kron_raw(iu, U, identity_raw(n2), B), n1, n2)
    return {"A": A, "U": U, "B": B, "V1": V1, "V2": V2, "V": V, "J": J, "I": I2}


def _u_b_to_v(x: Vec, n1: int, n2: int) -> Vec:
    """Embed an operator on U (x) B as 1_A (x) x on A (x) U (x) B, reassociated."""
    A, U, B = SuperDim(n1, 0), SuperDim(1, 1), SuperDim(n2, 0)
    V2 = U.tensor(B)
    y = kron_raw(identity_raw(n1), A, x, V2)  # on A (x) (U (x) B)
    perm = reassoc_perm(A, U, B)
    return _conj_perm(y, perm)


def _std_to_iform(x: Vec, n: int) -> Vec:
    """Conjugate by P = diag(1_n, i 1_n): (A B; B A) -> (A -iB; iB A)."""
    N = 2 * n
    out = {}
    for k, v in x.items():
        r, c = divmod(k, N)
        if r < n <= c:
            v = v * (-I)
        elif c < n <= r:
            v = v * I
        out[k] = norm_value(v)
    return out


def odot_Q(g1: LieSuperAlgebra, g2: LieSuperAlgebra, name: Optional[str] = None) -> LieSuperAlgebra:
    """Q-tensor product of two subalgebras of q(n1), q(n2) in J_{2n} form."""
    n1, n2 = g1.carrier.even, g2.carrier.even
    if g1.carrier.odd != n1 or g2.carrier.odd != n2:
        raise ValueError("Q-construction needs n|n carriers")
    car = q_carrier(n1, n2)
    B, V1, V2 = car["B"], car["V1"], car["V2"]
    vecs = [kron_raw(x, V1, identity_raw(n2), B) for x in g1.basis_raw]
    vecs += [_u_b_to_v(_std_to_iform(y, n2), n1, n2) for y in g2.basis_raw]
    V = car["V"]
    return LieSuperAlgebra(name or f"{g1.name} .Q {g2.name}", V, vecs,
                           meta={"factors": [g1.name, g2.name],
                                 "J": SuperMatrix(V, data=car["J"]),
                                 "I": SuperMatrix(V, data=car["I"])})


def _rect_intertwiners(src_ops: list, dst_ops: list, ds: SuperDim, dd: SuperDim, parity: int) -> list:
    """T: src -> dst of the given parity with dst(x) T = (-1)^{p(x) p(T)} T src(x)."""
    Ns, Nd = ds.total, dd.total
    ps, pd = ds.parities, dd.parities
    unknowns = [(r, c) for r in range(Nd) for c in range(Ns) if pd[r] ^ ps[c] == parity]
    local = {u: i for i, u in enumerate(unknowns)}
    eqs: dict = {}
    for g, ((xs, px), xd) in enumerate(zip(src_ops, dst_ops)):
        sgn = -1 if px & parity else 1
        for k, v in xd.items():  # dst(x)[r, m] T[m, c]
            r, m = divmod(k, Nd)
            for c in range(Ns):
                u = local.get((m, c))
                if u is not None:
                    e = eqs.setdefault((g, r, c), {})
                    e[u] = e.get(u, 0) + v
        for k, v in xs.items():  # T[r, m] src(x)[m, c]
            m, c = divmod(k, Ns)
            for r in range(Nd):
                u = local.get((r, m))
                if u is not None:
                    e = eqs.setdefault((g, r, c), {})
                    e[u] = e.get(u, 0) - sgn * v
    rows = [{k: v for k, v in e.items() if v} for e in eqs.values()]
    sols = nullspace([r for r in rows if r], len(unknowns))
    return [{unknowns[i]: x for i, x in sol.items()} for sol in sols]


def q_tensor_splitting(n1: int, n2: int) -> dict:
    """Decompose the plain tensor product V1 (x) V2 of the q(n1) and q(n2) modules
    against W = V1 (x)^Q V2 using explicit intertwiners.

    There is one even and one odd embedding of W, so V1 (x) V2 = W + Pi(W).
    """
    g1, g2 = q(n1), q(n2)
    car = q_carrier(n1, n2)
    d1, d2 = g1.carrier, g2.carrier
    V = d1.tensor(d2)
    one1, one2 = identity_raw(d1.total), identity_raw(d2.total)
    src, dst = [], []
    for x in g1.basis_raw:
        p = raw_parity(x, d1)
        src.append((kron_raw(x, car["V1"], identity_raw(n2), car["B"]), p))
        dst.append(kron_raw(x, d1, one2, d2))
    for y in g2.basis_raw:
        p = raw_parity(y, d2)
        src.append((_u_b_to_v(_std_to_iform(y, n2), n1, n2), p))
        dst.append(kron_raw(one1, d1, y, d2))
    Ws = car["V"]
    even = _rect_intertwiners(src, dst, Ws, V, 0)
    odd = _rect_intertwiners(src, dst, Ws, V, 1)
    def image(maps):
        e = Echelon(V.total)
        for T in maps:
            for c in range(Ws.total):
                col = {r: v for (r, cc), v in T.items() if cc == c}
                if col:
                    e.add(col)
        return e.dim

    # one even and one odd embedding with complementary images: V = W + Pi(W)
    ie, io, both = image(even), image(odd), image(even + odd)
    return {"even_intertwiners": len(even), "odd_intertwiners": len(odd), "even_image": ie, "odd_image": io,
            "dim": V.total, "split": len(even) == len(odd) == 1 and ie == io == Ws.total and both == V.total}


def reassoc_perm(d1: SuperDim, d2: SuperDim, d3: SuperDim) -> list:
    """For each basis index of (V1 (x) V2) (x) V3, the index of the same triple
    in V1 (x) (V2 (x) V3).  Reassociation carries no signs."""
    N1, N2, N3 = d1.total, d2.total, d3.total
    p12 = kron_perm(d1.even, d1.odd, d2.even, d2.odd)
    d12 = d1.tensor(d2)
    p12_3 = kron_perm(d12.even, d12.odd, d3.even, d3.odd)
    p23 = kron_perm(d2.even, d2.odd, d3.even, d3.odd)
    d23 = d2.tensor(d3)
    p1_23 = kron_perm(d1.even, d1.odd, d23.even, d23.odd)
    N23 = d23.total
    out = [0] * (N1 * N2 * N3)
    for i in range(N1):
        for j in range(N2):
            for k in range(N3):
                left = p12_3[p12[i * N2 + j] * N3 + k]
                right = p1_23[i * N23 + p23[j * N3 + k]]
                out[left] = right
    return out


def _conj_perm(x: Vec, left_of_right_inv: list) -> Vec:
    """Move an operator written in the 'right' basis to the 'left' basis.

    left_of_right_inv[l] = index r of the same basis vector in the right basis.
    """
    n = len(left_of_right_inv)
    inv = [0] * n
    for l, r in enumerate(left_of_right_inv):
        inv[r] = l
    out = {}
    for k, v in x.items():
        a, b = divmod(k, n)
        out[inv[a] * n + inv[b]] = v
    return out


def transport(x: Vec, perm: list) -> Vec:
    """Rewrite an operator from the right-associated to the left-associated basis."""
    return _conj_perm(x, perm)


def flip_conjugate(x: Vec, d1: SuperDim, d2: SuperDim) -> Vec:
    """Transport an operator on V1 (x) V2 to V2 (x) V1 via v(x)w -> (-1)^{p(v)p(w)} w(x)v."""
    N1, N2 = d1.total, d2.total
    pa = kron_perm(d1.even, d1.odd, d2.even, d2.odd)
    pb = kron_perm(d2.even, d2.odd, d1.even, d1.odd)
    p1, p2 = d1.parities, d2.parities
    N = N1 * N2
    target = [0] * N
    sign = [1] * N
    for i in range(N1):
        for j in range(N2):
            a = pa[i * N2 + j]
            target[a] = pb[j * N1 + i]
            sign[a] = -1 if p1[i] & p2[j] else 1
    out = {}
    for k, v in x.items():
        a, b = divmod(k, N)
        s = sign[a] * sign[b]
        out[target[a] * N + target[b]] = v if s > 0 else -v
    return out


def lambda_fold_perm(d1: SuperDim, n1: int, n2: int) -> list:
    """old_of_new for (V1 (x) Lambda(n1)) (x) Lambda(n2) -> V1 (x) Lambda(n1 + n2).

    A basis vector v (x) xi^S (x) xi^T goes to v (x) xi^S xi^{T + n1}; the
    generators of the second factor are renumbered after those of the first,
    so the product monomial is already in increasing order and no sign occurs.
    """
    L1, L2, L = lambda_dim(n1), lambda_dim(n2), lambda_dim(n1 + n2)
    N1, A, B = d1.total, L1.total, L2.total
    p1a = kron_perm(d1.even, d1.odd, L1.even, L1.odd)
    d1a = d1.tensor(L1)
    pab = kron_perm(d1a.even, d1a.odd, L2.even, L2.odd)
    pnew = kron_perm(d1.even, d1.odd, L.even, L.odd)
    m1, m2 = monomial_basis(n1), monomial_basis(n2)
    idx = monomial_index(n1 + n2)
    out = [0] * (N1 * A * B)
    for i in range(N1):
        for a in range(A):
            for b in range(B):
                old = pab[p1a[i * A + a] * B + b]
                new = pnew[i * L.total + idx[m1[a] | (m2[b] << n1)]]
                out[new] = old
    return out


def relabel(alg: LieSuperAlgebra, old_of_new: list, carrier: SuperDim,
            name: Optional[str] = None) -> LieSuperAlgebra:
    """The same operators written in a permuted (parity-preserving) basis."""
    vecs = [conj_perm_raw(x, old_of_new) for x in alg.basis_raw]
    return LieSuperAlgebra(name or alg.name, carrier, vecs, meta=dict(alg.meta))


def conjugate(alg: LieSuperAlgebra, P: Vec, Pinv: Vec, name: Optional[str] = None) -> LieSuperAlgebra:
    """P X P^{-1} for X in alg (P even and invertible)."""
    N = alg.N
    vecs = [mat_mul(mat_mul(P, x, N), Pinv, N) for x in alg.basis_raw]
    return LieSuperAlgebra(name or alg.name, alg.carrier, vecs)


def invariant_forms(alg: LieSuperAlgebra, parity: int) -> list:
    """Gram matrices G of the given parity with X^T G + (-1)^{p(X)p(i)} G X = 0 rowwise."""
    d = alg.carrier
    N = N_ = d.total
    par = d.parities
    unknowns = [r * N + c for r in range(N) for c in range(N) if par[r] ^ par[c] == parity]
    local = {u: i for i, u in enumerate(unknowns)}
    eqs = []
    for x, px in alg.homogeneous():
        cols: dict = {}
        rows: dict = {}
        for k, v in x.items():
            r, c = divmod(k, N_)
            cols.setdefault(c, []).append((r, v))
            rows.setdefault(r, []).append((c, v))
        for i in range(N):
            sgn = -1 if px & par[i] else 1
            for j in range(N):
                e: dict = {}
                # (X^T G)[i, j] = sum_r X[r, i] G[r, j]
                for r, v in cols.get(i, ()):
                    u = local.get(r * N + j)
                    if u is not None:
                        e[u] = e.get(u, 0) + v
                # (G X)[i, j] = sum_k G[i, k] X[k, j]
                for k, v in cols.get(j, ()):
                    u = local.get(i * N + k)
                    if u is not None:
                        e[u] = e.get(u, 0) + sgn * v
                e = {a: b for a, b in e.items() if b}
                if e:
                    eqs.append(e)
    sols = nullspace(eqs, len(unknowns))
    return [{unknowns[i]: v for i, v in s.items()} for s in sols]


def odd_form_congruence(G_from: GramForm, G_to: GramForm) -> tuple:
    """Even P (and its inverse) with P^T G_to P = G_from, for odd forms of equal symmetry.

    Then X -> P X P^{-1} maps aut(G_from) onto aut(G_to).
    """
    import flint
    d = G_from.carrier
    if d != G_to.carrier or G_from.parity != 1 or G_to.parity != 1:
        raise ValueError("need two odd forms on the same n|n carrier")
    if G_from.symmetry != G_to.symmetry:
        raise ValueError("odd forms of different symmetry are not congruent by an even map")
    n = d.even
    N = d.total

    def block(G):
        return flint.fmpq_mat(n, n, [_as_fmpq(G.data.get(i * N + n + j, 0))
                                     for i in range(n) for j in range(n)])
    P1 = block(G_to).inv() * block(G_from)
    P1i = P1.inv()
    P = {i * N + i: mpq(1) for i in range(n)}
    Pi = dict(P)
    for i in range(n):
        for j in range(n):
            a, b = P1[i, j], P1i[i, j]
            if a != 0:
                P[(n + i) * N + n + j] = mpq(int(a.p), int(a.q))
            if b != 0:
                Pi[(n + i) * N + n + j] = mpq(int(b.p), int(b.q))
    return P, Pi


def _as_fmpq(x):
    import flint
    x = mpq(x)
    return flint.fmpq(int(x.numerator), int(x.denominator))


# -- current algebras --------------------------------------------------------------------


def current_parts(g1: LieSuperAlgebra, n: int, lam=0, vect_ops=None) -> tuple:
    """(ideal part rho(g1 (x) Lambda(n)), vector field part rho(vect)) as vector lists."""
    d1 = g1.carrier
    L = lambda_dim(n)
    ideal = []
    for x in g1.basis_raw:
        for s in monomial_basis(n):
            ideal.append(kron_raw(x, d1, mult_raw(GrassmannElement(n, {s: 1})), L))
    one = identity_raw(d1.total)
    if vect_ops is None:
        vect_ops = [t_lambda_raw(v, n, lam) if lam else v for v, _ in vect_basis_raw(n)]
    fields = [kron_raw(one, d1, v, L) for v in vect_ops]
    return ideal, fields


def current_semidirect(g1: LieSuperAlgebra, n: int, name: Optional[str] = None,
                       vect_ops=None) -> LieSuperAlgebra:
    """g1 (x) Lambda(n) semidirect vect(0|n) acting on V1 (x) Lambda(n)."""
    if n < 1:
        raise ValueError("current algebra needs n >= 1")
    ideal, fields = current_parts(g1, n, vect_ops=vect_ops)
    return LieSuperAlgebra(name or f"{g1.name}(x)L({n})+vect(0|{n})",
                           g1.carrier.tensor(lambda_dim(n)), ideal + fields,
                           meta={"factor": g1.name, "n": n})


def form_semidirect(G1: GramForm, n: int, ambient: str = "aut",
                    name: Optional[str] = None) -> ConstructionResult:
    """aut(G1) (x) Lambda(n) semidirect T^{1/2}(vect(0|n)), with the product form."""
    if n < 1:
        raise ValueError("current algebra needs n >= 1")
    g1 = aut_of_form(G1)
    ideal, fields = current_parts(g1, n, lam=mpq(1, 2))
    omega = tensor_form(G1, omega_half(n))
    alg = LieSuperAlgebra(name or f"aut(w1)(x)L({n})+T^1/2(vect(0|{n}))",
                          G1.carrier.tensor(lambda_dim(n)), ideal + fields,
                          meta={"preserved_form": omega, "n": n})
    amb = None
    if ambient == "aut":
        amb = aut_of_form(omega, "aut(w1 (x) w_1/2)")
    elif ambient == "saut":
        amb = saut_of_form(omega, "saut(w1 (x) w_1/2)")
    return ConstructionResult(alg, amb, {"V1": str(G1.carrier), "Lambda": n,
                                         "form_parity": omega.parity,
                                         "form_symmetry": omega.symmetry})


# -- Heisenberg normalizer -------------------------------------------------------------


def hei_normalizer(m: int) -> LieSuperAlgebra:
    h, o = hei_rep(m), o_spinor(m)
    return LieSuperAlgebra(f"hei({m})+o({m})", h.carrier,
                           list(h.basis_raw) + list(o.basis_raw), meta={"m": m})


def theta_j(m: int) -> Vec:
    """J = theta - d/dtheta on the spinor carrier of an odd m; J^2 = -1.

    It supercommutes with hei(0|m) and its o(m), which is why the odd case
    lives inside a queer algebra.
    """
    if m % 2 == 0:
        raise ValueError("theta_j is defined for odd m")
    n = quantize_carrier(m)
    J = mult_raw(GrassmannElement.gen(n, n))
    for k, v in deriv_vec(n, n).items():
        J[k] = J.get(k, 0) - v
    return {k: v for k, v in J.items() if v}


def hei_normalizer_ambient(m: int) -> LieSuperAlgebra:
    """sl(Lambda(m/2)) for even m, sq_J(Lambda((m+1)/2)) with J = theta_j(m) for odd m."""
    n = quantize_carrier(m)
    L = lambda_dim(n)
    if m % 2 == 0:
        return sl(L.even, L.odd)
    return sq_of(theta_j(m), L, f"sq_J(L({n}))")


def literal_normalizer(g: LieSuperAlgebra) -> Subspace:
    """{X in End(V) : [X, g] in g}, solved parity by parity as a linear system."""
    d = g.carrier
    N = d.total
    par = d.parities
    ech = g.space.echelon()
    hb = g.homogeneous()
    sols = []
    for p in (0, 1):
        unknowns = [r * N + c for r in range(N) for c in range(N) if par[r] ^ par[c] == p]
        eqs: dict = {}
        for ui, u in enumerate(unknowns):
            e = {u: mpq(1)}
            for j, (y, py) in enumerate(hb):
                w = ech.reduce(bracket_h(e, p, y, py, N))
                for c, val in w.items():
                    eqs.setdefault((j, c), {})[ui] = val
        for s in nullspace(list(eqs.values()), len(unknowns)):
            sols.append({unknowns[i]: x for i, x in s.items()})
    return Subspace(N * N, sols)
