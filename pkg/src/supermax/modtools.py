"""Closures, envelopes, socles and minimal submodules.

Operators on a d-dimensional module are flattened d x d matrices (row-major
dicts).  Submodules are graded: the parity operator is added to every
envelope, so minimal submodules are minimal among sub-superspaces.

Two routes to the minimal submodules are provided.  The envelope route
computes the associative envelope A, its trace-form radical, the socle
ann(rad A), and splits the socle with the centre of A restricted to it.
The weight route is for larger modules with a diagonal torus: every simple
submodule meets the joint kernel K of the positive part of the acting
algebra, so it is generated by a minimal zero-weight-part submodule of K.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import flint
from gmpy2 import mpq

from .linalg import Echelon, Subspace, Vec, axpy, norm_value, nullspace, scale, solve_particular
from .scalar import Scalar, sqrt_rational
from .superlinalg import SuperDim, SuperMatrix, bracket_h, identity_raw, mat_mul, raw_parity, split_parity

__all__ = [
    "ModuleAction",
    "SocleReport",
    "SplitFailure",
    "ClosureCapExceeded",
    "IrreducibilityResult",
    "module_closure",
    "lie_closure",
    "lie_closure_ext",
    "generating_set",
    "associative_envelope",
    "envelope_of_ops",
    "envelope_radical",
    "socle",
    "minimal_submodules",
    "irreducibility_type",
    "supercentralizer",
    "derived_series",
    "center",
    "is_ideal",
    "is_subalgebra",
    "quotient_action",
    "diagonal_part",
    "natural_action",
    "adjoint_action",
]


class SplitFailure(ArithmeticError):
    pass


class ClosureCapExceeded(RuntimeError):
    pass


# -- small helpers --------------------------------------------------------------


def _columns(op: Vec, d: int) -> list:
    cols = [[] for _ in range(d)]
    for k, v in op.items():
        r, c = divmod(k, d)
        cols[c].append((r, v))
    return cols


def _apply_cols(cols: list, v: Vec) -> Vec:
    out: dict = {}
    for c, x in v.items():
        for r, a in cols[c]:
            w = out.get(r)
            out[r] = a * x if w is None else w + a * x
    return {k: y for k, y in out.items() if y}


def _parity_op(parities: Sequence[int]) -> Vec:
    d = len(parities)
    return {i * d + i: mpq(-1 if p else 1) for i, p in enumerate(parities)}


@dataclass
class ModuleAction:
    """Action of a family of homogeneous operators on F^d.

    ops are flattened d x d matrices; op_parities their parities; parities the
    grading of the module basis (None for an ungraded module).
    """

    dim: int
    ops: list
    op_parities: list
    parities: Optional[tuple] = None
    labels: Optional[list] = None
    _cols: list = field(default=None, repr=False)

    def cols(self) -> list:
        if self._cols is None:
            self._cols = [_columns(o, self.dim) for o in self.ops]
        return self._cols

    def apply(self, i: int, v: Vec) -> Vec:
        return _apply_cols(self.cols()[i], v)

    def envelope_generators(self) -> list:
        gens = list(self.ops)
        if self.parities is not None and any(self.parities):
            gens.append(_parity_op(self.parities))
        return gens

    def restrict(self, W: Subspace) -> "ModuleAction":
        """Action on an invariant subspace, in the coordinates of its echelon basis."""
        piv = W.pivots
        pos = {p: i for i, p in enumerate(piv)}
        k = len(piv)
        ops = []
        for i in range(len(self.ops)):
            m = {}
            for j, w in enumerate(W.rows):
                img = self.apply(i, w)
                if W.reduce(img):
                    raise ValueError("subspace is not invariant")
                for p, x in img.items():
                    if p in pos:
                        m[pos[p] * k + j] = x
            ops.append(m)
        par = None
        if self.parities is not None:
            par = tuple(self.parities[p] for p in piv)
        return ModuleAction(k, ops, list(self.op_parities), par, self.labels)

    def quotient(self, W: Subspace) -> tuple:
        """Action on M/W; coordinates are the non-pivot columns of W."""
        free = [c for c in range(self.dim) if c not in set(W.pivots)]
        pos = {c: i for i, c in enumerate(free)}
        k = len(free)
        ops = []
        for i in range(len(self.ops)):
            m = {}
            for j, c in enumerate(free):
                img = W.reduce(self.apply(i, {c: mpq(1)}))
                for p, x in img.items():
                    m[pos[p] * k + j] = x
            ops.append(m)
        par = None
        if self.parities is not None:
            par = tuple(self.parities[c] for c in free)
        return ModuleAction(k, ops, list(self.op_parities), par, self.labels), free

    def is_graded_subspace(self, W: Subspace) -> bool:
        if self.parities is None:
            return True
        return all(len({self.parities[k] for k in r}) == 1 for r in W.rows)


def natural_action(alg) -> ModuleAction:
    """The identity representation of a LieSuperAlgebra on its carrier."""
    hb = alg.homogeneous()
    return ModuleAction(alg.N, [dict(x) for x, _ in hb], [p for _, p in hb],
                        tuple(alg.carrier.parities))


# -- closures -----------------------------------------------------------------------


def module_closure(action: ModuleAction, vectors: Sequence[Vec], op_indices=None,
                   target_dim: Optional[int] = None) -> Subspace:
    """Smallest invariant subspace containing the vectors (split by parity)."""
    e = Echelon(action.dim)
    queue = []
    for v in vectors:
        parts = [v]
        if action.parities is not None:
            parts = [{k: x for k, x in v.items() if action.parities[k] == p} for p in (0, 1)]
        for part in parts:
            if part and e.add(part):
                queue.append(part)
    idx = list(range(len(action.ops))) if op_indices is None else list(op_indices)
    cols = action.cols()
    while queue:
        if target_dim is not None and e.dim >= target_dim:
            break
        v = queue.pop()
        for i in idx:
            w = _apply_cols(cols[i], v)
            if w and e.add(w):
                queue.append(w)
    return e.subspace()


def _homogeneous_parts(S, dim: SuperDim) -> list:
    out = []
    for x in S:
        if isinstance(x, SuperMatrix):
            x = x.data
        for p, part in enumerate(split_parity(x, dim)):
            if part:
                out.append((part, p))
    return out


def lie_closure_ext(dim: SuperDim, base: Sequence[tuple], base_gens: Sequence[tuple],
                    extra: Sequence[tuple], target_dim: Optional[int] = None,
                    cap: Optional[int] = None) -> Subspace:
    """Subalgebra generated by a closed subalgebra (basis `base`, generators
    `base_gens`) together with homogeneous `extra` elements.

    Uses the fact that the subalgebra generated by a set X is spanned by the
    right-nested brackets of elements of X, i.e. it is the smallest subspace
    containing X that is stable under ad(x) for x in X.
    """
    N = dim.total
    cap = N * N if cap is None else cap
    e = Echelon(N * N)
    for x, _ in base:
        e.add(x)
    gens = list(base_gens) + list(extra)
    queue = []
    for x, p in extra:
        r = e.reduce(x)
        if r:
            e.add_reduced(r)
            queue.append((x, p, True))
    # base elements only need to be bracketed with the extra generators
    work = [(x, p, False) for x, p in base] + queue
    while work:
        if target_dim is not None and e.dim >= target_dim:
            break
        if e.dim > cap:
            raise ClosureCapExceeded(f"closure exceeded {cap} dimensions")
        y, py, full = work.pop()
        for g, pg in (gens if full else extra):
            w = e.reduce(bracket_h(g, pg, y, py, N))
            if w:
                e.add_reduced(w)
                work.append((bracket_h(g, pg, y, py, N), pg ^ py, True))
    return e.subspace()


def lie_closure(S, dim: SuperDim, target_dim: Optional[int] = None,
                cap: Optional[int] = None) -> Subspace:
    """Smallest bracket-closed graded subspace containing span(S)."""
    gens = _homogeneous_parts(S, dim)
    return lie_closure_ext(dim, [], [], gens, target_dim=target_dim, cap=cap)


def generating_set(alg) -> list:
    """A small set of homogeneous elements generating the algebra (greedy)."""
    cached = alg.meta.get("_gens")
    if cached is not None:
        return cached
    hb = alg.homogeneous()
    gens: list = []
    span = Subspace.zero(alg.N * alg.N)
    # try elements in an order that tends to generate quickly: odd first
    order = sorted(range(len(hb)), key=lambda i: (-hb[i][1], i))
    for i in order:
        x, p = hb[i]
        if span.contains(x):
            continue
        gens.append((x, p))
        span = lie_closure_ext(alg.carrier, [(r, q) for r, q in zip(span.rows, [raw_parity(r, alg.carrier) for r in span.rows])],
                               gens[:-1], [(x, p)], target_dim=alg.dim)
        if span.dim == alg.dim:
            break
    alg.meta["_gens"] = gens
    return gens


def envelope_of_ops(ops: Sequence[Vec], d: int, unital: bool = True,
                    target_dim: Optional[int] = None) -> Subspace:
    """Unital associative algebra generated by the operators, in d*d coordinates."""
    e = Echelon(d * d)
    queue = []
    start = [identity_raw(d)] if unital else list(ops)
    for x in start:
        if e.add(x):
            queue.append(x)
    while queue:
        if target_dim is not None and e.dim >= target_dim:
            break
        y = queue.pop()
        for g in ops:
            w = mat_mul(g, y, d)
            if w and e.add(w):
                queue.append(w)
    return e.subspace()


def associative_envelope(S, N: Optional[int] = None) -> Subspace:
    mats = []
    for x in S:
        if isinstance(x, SuperMatrix):
            N = x.N
            x = x.data
        mats.append(x)
    if N is None:
        raise ValueError("carrier dimension unknown")
    return envelope_of_ops(mats, N, target_dim=N * N)


def _trace_prod(x: Vec, y: Vec, d: int):
    # tr(xy) = sum_{i,k} x[i,k] y[k,i]
    t = 0
    for k, a in x.items():
        i, c = divmod(k, d)
        b = y.get(c * d + i)
        if b:
            t = t + a * b
    return t


def envelope_radical(A: Subspace, d: int) -> Subspace:
    """{a in A : tr(ab) = 0 for all b in A}."""
    rows = A.rows
    n = len(rows)
    eqs = []
    for j in range(n):
        eq = {}
        for i in range(n):
            t = _trace_prod(rows[i], rows[j], d)
            if t:
                eq[i] = norm_value(t)
        if eq:
            eqs.append(eq)
    coeffs = nullspace(eqs, n)
    out = []
    for c in coeffs:
        v: dict = {}
        for i, x in c.items():
            axpy(v, x, rows[i])
        out.append(v)
    return Subspace(d * d, out)


def _common_kernel(mats: Sequence[Vec], d: int) -> Subspace:
    eqs = []
    for m in mats:
        rows: dict = {}
        for k, v in m.items():
            r, c = divmod(k, d)
            rows.setdefault(r, {})[c] = v
        eqs.extend(rows.values())
    return Subspace(d, nullspace(eqs, d))


def socle(action: ModuleAction, A: Optional[Subspace] = None) -> tuple:
    """(socle, radical) for the module, using the graded envelope."""
    d = action.dim
    if A is None:
        A = envelope_of_ops(action.envelope_generators(), d, target_dim=d * d)
    rad = envelope_radical(A, d)
    if rad.dim == 0:
        return Subspace.full(d), rad
    return _common_kernel(rad.rows, d), rad


# -- exact eigen decomposition over F ---------------------------------------------------


def _minpoly(z: Vec, d: int) -> list:
    """Monic minimal polynomial coefficients [c0, c1, ..., 1] of a d x d matrix."""
    powers = [identity_raw(d)]
    while True:
        nxt = mat_mul(z, powers[-1], d)
        sol = solve_particular(powers, nxt)
        if sol is not None:
            k = len(powers)
            return [-(sol.get(i, 0)) for i in range(k)] + [mpq(1)]
        powers.append(nxt)


def _poly_eval(coeffs: list, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _conj_poly(coeffs: list, f) -> list:
    return [f(c) if isinstance(c, Scalar) else c for c in coeffs]


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _rational_coeffs(coeffs: list) -> list:
    out = []
    for c in coeffs:
        c = norm_value(c)
        if isinstance(c, Scalar):
            raise SplitFailure("norm polynomial is not rational")
        out.append(c)
    return out


def roots_in_field(coeffs: list) -> list:
    """All distinct roots in F of a polynomial over F (coefficients low to high).

    Roots lie among the roots of the norm polynomial over Q, whose linear and
    quadratic factors are solved exactly; each candidate is checked by exact
    evaluation.
    """
    if any(isinstance(c, Scalar) and not c.is_rational() for c in coeffs):
        p = coeffs
        for f in (lambda s: s.conj_i(), lambda s: s.conj_r(), lambda s: s.conj_i().conj_r()):
            p = _poly_mul(p, _conj_poly(coeffs, f))
        norm = _rational_coeffs(p)
    else:
        norm = _rational_coeffs(coeffs)
    poly = flint.fmpq_poly([flint.fmpq(int(c.numerator), int(c.denominator)) for c in norm])
    cands = []
    _, factors = poly.factor()
    for f, _ in factors:
        cs = [mpq(int(x.p), int(x.q)) for x in f.coeffs()]
        if len(cs) == 2:
            cands.append(-cs[0] / cs[1])
        elif len(cs) == 3:
            c0, c1, c2 = cs
            disc = c1 * c1 - 4 * c0 * c2
            s = sqrt_rational(disc)
            if s is not None:
                cands.append(norm_value((-c1 + s) / (2 * c2)))
                cands.append(norm_value((-c1 - s) / (2 * c2)))
    out = []
    for r in cands:
        if not _poly_eval(coeffs, r) and all(r != o for o in out):
            out.append(r)
    return out


def _eigen_split(z: Vec, d: int) -> list:
    """Eigenspaces of a diagonalizable d x d matrix; raises SplitFailure otherwise."""
    mp = _minpoly(z, d)
    roots = roots_in_field(mp)
    if len(roots) != len(mp) - 1:
        raise SplitFailure(f"minimal polynomial of degree {len(mp) - 1} has {len(roots)} roots in F")
    out = []
    for lam in roots:
        m = dict(z)
        for i in range(d):
            k = i * d + i
            y = m.get(k, 0) - lam
            if y:
                m[k] = norm_value(y)
            else:
                m.pop(k, None)
        out.append(_common_kernel([m], d))
    return out


def _centre_of(A: Subspace, gens: Sequence[Vec], d: int) -> list:
    """Basis of {a in A : a g = g a for every generator g}."""
    rows = A.rows
    n = len(rows)
    eqs: dict = {}
    for i, a in enumerate(rows):
        for g in gens:
            c = mat_mul(a, g, d)
            axpy(c, -1, mat_mul(g, a, d))
            for k, x in c.items():
                eqs.setdefault((id(g), k), {})[i] = x
    out = []
    for c in nullspace(list(eqs.values()), n):
        v: dict = {}
        for i, x in c.items():
            axpy(v, x, rows[i])
        out.append(v)
    return out


@dataclass
class SocleReport:
    radical_dim: Optional[int]
    minimal: list  # Subspaces of the module
    multiplicity_flags: list = field(default_factory=list)
    split_failures: list = field(default_factory=list)
    method: str = "envelope"
    socle_dim: Optional[int] = None

    @property
    def complete(self) -> bool:
        return not self.multiplicity_flags and not self.split_failures

    def to_json(self, parities=None) -> dict:
        def sd(W):
            if parities is None:
                return [W.dim, 0]
            o = sum(1 for r in W.rows if parities[min(r)])
            return [W.dim - o, o]
        return {"method": self.method, "radical_dim": self.radical_dim,
                "socle_dim": self.socle_dim,
                "minimal_submodules": [{"dim": sd(W)} for W in self.minimal],
                "multiplicity_flags": list(self.multiplicity_flags),
                "split_failures": list(self.split_failures)}


def _embed(W_local: Subspace, basis: Sequence[Vec], n: int) -> Subspace:
    vecs = []
    for r in W_local.rows:
        v: dict = {}
        for i, x in r.items():
            axpy(v, x, basis[i])
        vecs.append(v)
    return Subspace(n, vecs)


def _minimal_by_envelope(action: ModuleAction) -> SocleReport:
    d = action.dim
    if d == 0:
        return SocleReport(0, [], socle_dim=0)
    gens = action.envelope_generators()
    A = envelope_of_ops(gens, d, target_dim=d * d)
    soc, rad = socle(action, A)
    sub = action.restrict(soc)
    k = sub.dim
    sgens = sub.envelope_generators()
    As = envelope_of_ops(sgens, k, target_dim=k * k)
    pieces = [Subspace.full(k)]
    if As.dim < k * k:
        zs = _centre_of(As, sgens, k)
        for z in zs:
            refined = []
            for P in pieces:
                if P.dim == 1:
                    refined.append(P)
                    continue
                zr = _restrict_matrix(z, P, k)
                for E in _eigen_split(zr, P.dim):
                    refined.append(_embed(E, P.rows, k))
            pieces = refined
    minimal, flags = [], []
    for P in pieces:
        sp = sub.restrict(P)
        env = envelope_of_ops(sp.envelope_generators(), P.dim, target_dim=P.dim * P.dim)
        W = _embed(P, soc.rows, d)
        if env.dim != P.dim * P.dim:
            flags.append({"block_dim": P.dim, "envelope_dim": env.dim})
        else:
            minimal.append(W)
    minimal.sort(key=lambda W: (W.dim, W.pivots))
    return SocleReport(rad.dim, minimal, flags, [], "envelope", soc.dim)


def _restrict_matrix(z: Vec, P: Subspace, d: int) -> Vec:
    pos = {p: i for i, p in enumerate(P.pivots)}
    k = P.dim
    cols = _columns(z, d)
    out = {}
    for j, w in enumerate(P.rows):
        img = _apply_cols(cols, w)
        for p, x in img.items():
            if p in pos:
                out[pos[p] * k + j] = x
    return out


# -- weight route ---------------------------------------------------------------------


def _diagonal(op: Vec, d: int):
    diag = [mpq(0)] * d
    for k, v in op.items():
        r, c = divmod(k, d)
        if r != c:
            return None
        diag[r] = v
    return diag


def _flat(x) -> tuple:
    return x.parts if isinstance(x, Scalar) else (x, 0, 0, 0)


def _height_fn(weights: list):
    """A Q-linear functional on weight vectors that is nonzero on all nonzero differences."""
    flat = [tuple(q for c in w for q in _flat(c)) for w in weights]
    if not flat or not flat[0]:
        return lambda w: mpq(0)
    dens = 1
    big = 1
    for w in flat:
        for q in w:
            dens = dens * q.denominator // _gcd(dens, q.denominator)
    for w in flat:
        for q in w:
            big = max(big, abs(int(q * dens)))
    base = 4 * big + 1
    coef = [mpq(base ** i) for i in range(len(flat[0]))]

    def h(w):
        f = tuple(q for c in w for q in _flat(c))
        return sum((a * b for a, b in zip(coef, f)), mpq(0))
    return h


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _minimal_by_weights(action: ModuleAction, torus: Sequence[int]) -> Optional[SocleReport]:
    d = action.dim
    diags = []
    for t in torus:
        dg = _diagonal(action.ops[t], d)
        if dg is None:
            return None
        diags.append(dg)
    if not diags:
        return None
    wt = [tuple(norm_value(dg[i]) for dg in diags) for i in range(d)]
    # weight of each operator: read from a nonzero entry, require consistency
    op_wt = []
    for op in action.ops:
        w = None
        for k in op:
            r, c = divmod(k, d)
            cand = tuple(norm_value(a - b) for a, b in zip(wt[r], wt[c]))
            if w is None:
                w = cand
            elif w != cand:
                return None
        op_wt.append(w)
    height = _height_fn(wt + [w for w in op_wt if w is not None])
    zero = tuple(mpq(0) for _ in torus)
    pos_ops = [i for i, w in enumerate(op_wt) if w is not None and height(w) > 0]
    zero_ops = [i for i, w in enumerate(op_wt) if w is None or w == zero]
    spaces: dict = {}
    for i, w in enumerate(wt):
        spaces.setdefault(w, []).append(i)
    cols = action.cols()
    candidates = []
    flags, fails = [], []
    for mu in sorted(spaces, key=lambda w: (height(w), w)):
        idx = spaces[mu]
        pos = {c: j for j, c in enumerate(idx)}
        eqs = []
        for i in pos_ops:
            rows: dict = {}
            for c in idx:
                for r, a in cols[i][c]:
                    rows.setdefault(r, {})[pos[c]] = a
            eqs.extend(rows.values())
        ker_local = nullspace(eqs, len(idx))
        if not ker_local:
            continue
        K = Subspace(d, [{idx[j]: x for j, x in v.items()} for v in ker_local])
        h0 = ModuleAction(d, [action.ops[i] for i in zero_ops],
                          [action.op_parities[i] for i in zero_ops], action.parities)
        local = h0.restrict(K)
        try:
            rep = _minimal_by_envelope(local)
        except SplitFailure as exc:
            fails.append(str(exc))
            continue
        for f in rep.multiplicity_flags:
            flags.append(dict(f, weight=[str(x) for x in mu]))
        for L in rep.minimal:
            Lg = _embed(L, K.rows, d)
            v = Lg.rows[0]  # echelon rows of a graded subspace are homogeneous
            candidates.append((v, module_closure(action, [v])))
    # minimal candidates, deduplicated
    uniq = []
    for v, N in sorted(candidates, key=lambda t: (t[1].dim, t[1].pivots)):
        if any(U == N for U in uniq):
            continue
        uniq.append(N)
    minimal = [N for N in uniq if not any(U.dim < N.dim and U.issubspace(N) for U in uniq)]
    return SocleReport(None, minimal, flags, fails, "weights", None)


def minimal_submodules(action: ModuleAction, method: str = "auto",
                       torus: Optional[Sequence[int]] = None,
                       envelope_limit: int = 24) -> SocleReport:
    """All minimal (graded) submodules, or a report flagging why not."""
    if method == "envelope" or (method == "auto" and (action.dim <= envelope_limit or not torus)):
        try:
            return _minimal_by_envelope(action)
        except SplitFailure as exc:
            return SocleReport(None, [], [], [str(exc)], "envelope")
    rep = _minimal_by_weights(action, torus or [])
    if rep is None:
        if method == "weights":
            raise ValueError("torus operators are not diagonal on the module basis")
        try:
            return _minimal_by_envelope(action)
        except SplitFailure as exc:
            return SocleReport(None, [], [], [str(exc)], "envelope")
    return rep


# -- algebra-level utilities ------------------------------------------------------------


def supercentralizer(ops: Sequence[tuple], dim: SuperDim) -> Subspace:
    """{Y : [X, Y] = 0 for all given homogeneous X}, graded."""
    N = dim.total
    par = dim.parities
    sols = []
    for p in (0, 1):
        unknowns = [r * N + c for r in range(N) for c in range(N) if par[r] ^ par[c] == p]
        eqs: dict = {}
        for ui, u in enumerate(unknowns):
            e = {u: mpq(1)}
            for j, (x, px) in enumerate(ops):
                for k, v in bracket_h(x, px, e, p, N).items():
                    eqs.setdefault((j, k), {})[ui] = v
        for s in nullspace(list(eqs.values()), len(unknowns)):
            sols.append({unknowns[i]: x for i, x in s.items()})
    return Subspace(N * N, sols)


@dataclass
class IrreducibilityResult:
    kind: str  # "G", "Q" or "Reducible"
    witness: object = None
    envelope_dim: Optional[int] = None
    detail: dict = field(default_factory=dict)


def _torus_indices(alg) -> list:
    N = alg.N
    return [i for i, r in enumerate(alg.basis_raw) if all(k // N == k % N for k in r)]


def irreducibility_type(alg, envelope_limit: int = 8) -> IrreducibilityResult:
    """G-type, Q-type (with J, J^2 = -1) or Reducible (with an invariant sub-superspace)."""
    act = natural_action(alg)
    N = alg.N
    rep = minimal_submodules(act, torus=_torus_indices(alg), envelope_limit=16)
    if not rep.complete and not rep.minimal:
        raise SplitFailure(f"cannot decide irreducibility: {rep.multiplicity_flags or rep.split_failures}")
    proper = [W for W in rep.minimal if W.dim < N]
    env_dim = None
    if N <= envelope_limit:
        env_dim = envelope_of_ops([x for x, _ in alg.homogeneous()], N, target_dim=N * N).dim
    if proper:
        return IrreducibilityResult("Reducible", proper[0], env_dim)
    if not rep.complete:
        raise SplitFailure("incomplete socle computation")
    C = supercentralizer(alg.homogeneous(), alg.carrier)
    even = [r for r in C.rows if raw_parity(r, alg.carrier) == 0]
    odd = [r for r in C.rows if raw_parity(r, alg.carrier) == 1]
    if len(even) > 1:
        raise SplitFailure("even supercommutant larger than scalars: not absolutely irreducible")
    if not odd:
        return IrreducibilityResult("G", None, env_dim)
    J = odd[0]
    sq = mat_mul(J, J, N)
    c = sq.get(0, 0)
    if sq != scale(c, identity_raw(N)) or not c:
        raise SplitFailure("odd supercommutant element does not square to a scalar")
    s = sqrt_rational(-c) if not isinstance(c, Scalar) or c.is_rational() else None
    if s is None:
        raise SplitFailure("cannot normalize J to J^2 = -1 over F")
    J = scale(norm_value(1 / s), J)
    return IrreducibilityResult("Q", SuperMatrix(alg.carrier, data=J), env_dim,
                                {"odd_commutant_dim": len(odd)})


def derived_series(alg, cap: int = 64) -> list:
    from .algebras import LieSuperAlgebra
    out = [alg.space]
    cur = alg
    for _ in range(cap):
        hb = cur.homogeneous()
        N = cur.N
        vecs = [bracket_h(x, px, y, py, N) for i, (x, px) in enumerate(hb) for (y, py) in hb[i:]]
        nxt = Subspace(N * N, [v for v in vecs if v])
        if nxt == out[-1]:
            return out
        out.append(nxt)
        cur = LieSuperAlgebra("D", cur.carrier, space=nxt)
    raise ClosureCapExceeded("derived series did not stabilize")


def center(alg) -> Subspace:
    hb = alg.homogeneous()
    N = alg.N
    out = []
    for p in (0, 1):
        idx = [i for i, (_, q) in enumerate(hb) if q == p]
        eqs: dict = {}
        for li, i in enumerate(idx):
            x = hb[i][0]
            for j, (y, py) in enumerate(hb):
                for k, v in bracket_h(x, p, y, py, N).items():
                    eqs.setdefault((j, k), {})[li] = v
        for s in nullspace(list(eqs.values()), len(idx)):
            v: dict = {}
            for li, c in s.items():
                axpy(v, c, hb[idx[li]][0])
            out.append(v)
    return Subspace(N * N, out)


def is_subalgebra(h, g) -> bool:
    return h.space.issubspace(g.space) and h.is_closed()


def is_ideal(i, g) -> bool:
    """i may be a LieSuperAlgebra or a graded Subspace of End(V)."""
    space = i.space if hasattr(i, "space") else i
    if not space.issubspace(g.space):
        return False
    N = g.N
    ih = [(r, raw_parity(r, g.carrier)) for r in space.rows]
    e = space.echelon()
    for x, px in ih:
        for y, py in g.homogeneous():
            if e.reduce(bracket_h(x, px, y, py, N)):
                return False
    return True


# -- adjoint and quotient modules ---------------------------------------------------------


def adjoint_action(acting: Sequence[tuple], target: Sequence[Vec], dim: SuperDim,
                   target_space: Subspace) -> ModuleAction:
    """ad of the acting elements on a subspace of End(V) (coordinates = echelon rows)."""
    N = dim.total
    piv = target_space.pivots
    k = len(piv)
    ops = []
    rows = target_space.rows
    pars = [raw_parity(r, dim) for r in rows]
    for x, px in acting:
        m = {}
        for j, (y, py) in enumerate(zip(rows, pars)):
            b = bracket_h(x, px, y, py, N)
            if target_space.reduce(b):
                raise ValueError("target is not invariant")
            for p_i, pv in enumerate(piv):
                v = b.get(pv)
                if v:
                    m[p_i * k + j] = v
        ops.append(m)
    return ModuleAction(k, ops, [p for _, p in acting], tuple(pars))


@dataclass
class QuotientModule:
    action: ModuleAction
    lifts: list  # End(V) vector for each quotient coordinate
    acting: list  # (vector, parity) of h used for the operators
    torus: list  # indices of acting elements that are diagonal matrices


def quotient_action(h, g) -> QuotientModule:
    """The ad(h)-module g/h with coordinates from the echelon pivots."""
    N = g.N
    D = g.dim
    gpiv = g.space.pivots
    gpos = {p: i for i, p in enumerate(gpiv)}

    def gcoords(y: Vec) -> Vec:
        return {gpos[k]: v for k, v in y.items() if k in gpos}

    Hc = Echelon(D, [gcoords(r) for r in h.space.rows])
    if Hc.dim != h.dim:
        raise ValueError("h is not contained in g")
    free = [j for j in range(D) if j not in Hc.rows]
    fpos = {j: i for i, j in enumerate(free)}
    k = len(free)
    lifts = [dict(g.space.rows[j]) for j in free]
    pars = tuple(raw_parity(x, g.carrier) for x in lifts)
    acting = list(h.homogeneous())
    n0 = len(acting)
    acting += [(t, 0) for t in diagonal_part(h)]
    ops = []
    for x, px in acting:
        m = {}
        for j, (y, py) in enumerate(zip(lifts, pars)):
            b = bracket_h(x, px, y, py, N)
            r = Hc.reduce(gcoords(b))
            for c, v in r.items():
                m[fpos[c] * k + j] = v
        ops.append(m)
    act = ModuleAction(k, ops, [p for _, p in acting], pars)
    torus = list(range(n0, len(acting)))
    return QuotientModule(act, lifts, acting, torus)


def diagonal_part(h) -> list:
    """Basis of h intersected with the diagonal matrices.

    Since the echelon rows of g are then weight vectors for this torus, the
    quotient coordinates of quotient_action diagonalize it.
    """
    N = h.N
    rows = [r for r in h.space.rows if min(r) // N == min(r) % N]
    if not rows:
        return []
    eqs: dict = {}
    for i, r in enumerate(rows):
        for k, v in r.items():
            if k // N != k % N:
                eqs.setdefault(k, {})[i] = v
    out = []
    for s in nullspace(list(eqs.values()), len(rows)):
        v: dict = {}
        for i, c in s.items():
            axpy(v, c, rows[i])
        out.append(v)
    return out
