"""Exact property suites: sign rules, form identities, T^lambda and quantization.

Each suite returns a SuiteResult holding named checks.  Random inputs come
from random.Random(seed), so a run is reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

from gmpy2 import mpq

from .algebras import hei_rep, j_matrix, o_spinor, q, qtr_j, t_lambda_algebra
from .constructions import hei_normalizer, literal_normalizer
from .forms import (GramForm, omega_half, standard_even_form, standard_odd_form, symplectic_form,
                    tensor_form)
from .algebras import aut_of_form, sym_of_form
from .grassmann import (GrassmannElement, PoElement, monomial_basis, po_graded_component, poisson_bracket,
                        quantize_raw, t_lambda_raw, vect_basis_raw)
from .linalg import Subspace, Vec, axpy, scale
from .modtools import irreducibility_type
from .superlinalg import SuperDim, bracket_h, kron_raw, mat_mul, str_raw

__all__ = ["Check", "SuiteResult", "SUITES", "run_suite", "forms_in_use",
           "suite_signs", "suite_lemma241", "suite_reps", "suite_quantize"]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks]}

    def markdown(self) -> str:
        lines = [f"### suite {self.name}: {'pass' if self.ok else 'FAIL'}", "",
                 "| check | ok | detail |", "|---|---|---|"]
        esc = lambda t: t.replace("|", "\\|")
        lines += [f"| {esc(c.name)} | {'yes' if c.ok else 'NO'} | {esc(c.detail)} |" for c in self.checks]
        return "\n".join(lines)


# -- helpers --------------------------------------------------------------------------


def _rand_homog(rng: random.Random, dim: SuperDim, parity: int, density: float = 0.6) -> Vec:
    N = dim.total
    par = dim.parities
    out = {}
    for r in range(N):
        for c in range(N):
            if par[r] ^ par[c] == parity and rng.random() < density:
                v = rng.randint(-3, 3)
                if v:
                    out[r * N + c] = mpq(v)
    return out


def _rand_combo(rng: random.Random, basis: list) -> Vec:
    out: dict = {}
    for b in basis:
        c = rng.randint(-3, 3)
        if c:
            axpy(out, c, b)
    return out


def _anti(x: Vec, px: int, y: Vec, py: int, n: int) -> Vec:
    """{x, y} = xy + (-1)^{p(x)p(y)} yx."""
    out = mat_mul(x, y, n)
    axpy(out, -1 if (px & py) else 1, mat_mul(y, x, n))
    return out


def _sub(x: Vec, y: Vec) -> Vec:
    out = dict(x)
    axpy(out, -1, y)
    return out


def _parity_of(v: Vec, dim: SuperDim) -> int:
    par = dim.parities
    N = dim.total
    ps = {par[k // N] ^ par[k % N] for k in v}
    if len(ps) > 1:
        raise ValueError("inhomogeneous element")
    return ps.pop() if ps else 0


def _homog_basis(space: Subspace, dim: SuperDim) -> list:
    return [(v, _parity_of(v, dim)) for v in space.basis]


# -- signs ----------------------------------------------------------------------------


def suite_signs(seed: int = 0, triples: int = 200, pairs: int = 100) -> SuiteResult:
    res = SuiteResult("signs")
    rng = random.Random(seed)
    d = SuperDim(2, 2)
    N = d.total
    bad_j = bad_a = 0
    for _ in range(triples):
        (x, px), (y, py), (z, pz) = [(_rand_homog(rng, d, p), p) for p in (rng.randint(0, 1) for _ in range(3))]
        lhs = bracket_h(x, px, bracket_h(y, py, z, pz, N), py ^ pz, N)
        rhs = bracket_h(bracket_h(x, px, y, py, N), px ^ py, z, pz, N)
        axpy(rhs, -1 if (px & py) else 1, bracket_h(y, py, bracket_h(x, px, z, pz, N), px ^ pz, N))
        bad_j += bool(_sub(lhs, rhs))
        yx = bracket_h(y, py, x, px, N)
        s = bracket_h(x, px, y, py, N)
        axpy(s, -1 if (px & py) else 1, yx)
        bad_a += bool(s)
    res.add("super-Jacobi in gl(2|2)", bad_j == 0, f"{triples} random triples, {bad_j} failures")
    res.add("super-antisymmetry in gl(2|2)", bad_a == 0, f"{triples} random pairs, {bad_a} failures")

    bad = 0
    for _ in range(pairs):
        px, py = rng.randint(0, 1), rng.randint(0, 1)
        x, y = _rand_homog(rng, d, px), _rand_homog(rng, d, py)
        bad += bool(str_raw(bracket_h(x, px, y, py, N), d))
    res.add("str vanishes on brackets in gl(2|2)", bad == 0, f"{pairs} pairs, {bad} failures")

    qb = [(v, _parity_of(v, d)) for v in q(2).basis_raw]
    even = [v for v, p in qb if p == 0]
    odd = [v for v, p in qb if p == 1]
    J = j_matrix(2)
    bad = 0
    for _ in range(pairs):
        px, py = rng.randint(0, 1), rng.randint(0, 1)
        x = _rand_combo(rng, odd if px else even)
        y = _rand_combo(rng, odd if py else even)
        bad += bool(qtr_j(bracket_h(x, px, y, py, N), J, d))
    res.add("qtr vanishes on brackets in q(2)", bad == 0, f"{pairs} pairs, {bad} failures")
    return res


# -- Gram form identities ---------------------------------------------------------------


LEMMA_PAIRS = (
    ("osp(1|2) x pe(3)", lambda: standard_even_form(1, 2), lambda: standard_odd_form(3)),
    ("pe(1) x pe(2)", lambda: standard_odd_form(1), lambda: standard_odd_form(2)),
)


def forms_in_use(include_registry: bool = True) -> list:
    """(label, GramForm) for every form the package builds algebras from."""
    out = []
    for m, n2 in ((1, 0), (2, 0), (3, 0), (1, 2), (2, 2), (3, 2), (1, 4), (4, 4)):
        out.append((f"even {m}|{n2}", standard_even_form(m, n2)))
    for n in (1, 2, 3, 4):
        out.append((f"odd {n}|{n}", standard_odd_form(n)))
    for n in (1, 2, 3):
        out.append((f"symplectic {2 * n}|0", symplectic_form(n)))
        out.append((f"omega_half({n})", omega_half(n)))
    for label, f1, f2 in LEMMA_PAIRS:
        out.append((label, tensor_form(f1(), f2())))
    if include_registry:
        from .maxcheck import instantiate_row, registry
        seen = {(G.carrier.even, G.carrier.odd, tuple(sorted(G.data.items()))) for _, G in out}
        for row in registry():
            try:
                h, g = instantiate_row(row.id)
            except Exception:
                continue
            for alg in (h, g):
                G = alg.meta.get("preserved_form") if alg.meta else None
                if not isinstance(G, GramForm):
                    continue
                key = (G.carrier.even, G.carrier.odd, tuple(sorted(G.data.items())))
                if key not in seen:
                    seen.add(key)
                    out.append((f"{row.id}: {alg.name}", G))
    return out


def _aut_sym(G: GramForm) -> tuple:
    return aut_of_form(G).space, sym_of_form(G)


def _kron_span(A: list, B: list, d1: SuperDim, d2: SuperDim) -> Subspace:
    N = d1.total * d2.total
    return Subspace(N * N, [kron_raw(a, d1, b, d2) for a, _ in A for b, _ in B])


def _contained_in(pairs: list, op: Callable, target: Subspace) -> tuple:
    bad = 0
    for (x, px), (y, py) in pairs:
        if not target.contains(op(x, px, y, py)):
            bad += 1
    return bad, len(pairs)


def _lemma_pair(res: SuiteResult, label: str, G1: GramForm, G2: GramForm, rng: random.Random) -> None:
    d1, d2 = G1.carrier, G2.carrier
    a1, s1 = _aut_sym(G1)
    a2, s2 = _aut_sym(G2)
    A1, S1 = _homog_basis(a1, d1), _homog_basis(s1, d1)
    A2, S2 = _homog_basis(a2, d2), _homog_basis(s2, d2)
    aut, sym = _aut_sym(tensor_form(G1, G2))
    aut_rhs = _kron_span(A1, S2, d1, d2) + _kron_span(S1, A2, d1, d2)
    sym_rhs = _kron_span(A1, A2, d1, d2) + _kron_span(S1, S2, d1, d2)
    res.add(f"{label}: aut(w1 w2) = aut x sym + sym x aut", aut == aut_rhs,
            f"dims {aut.dim} vs {aut_rhs.dim}")
    res.add(f"{label}: sym(w1 w2) = aut x aut + sym x sym", sym == sym_rhs,
            f"dims {sym.dim} vs {sym_rhs.dim}")

    # bracket and anticommutator rules on each factor
    for tag, G, A, S, a, s in (("w1", G1, A1, S1, a1, s1), ("w2", G2, A2, S2, a2, s2)):
        N = G.carrier.total
        anti = lambda x, px, y, py: _anti(x, px, y, py, N)
        brk = lambda x, px, y, py: bracket_h(x, px, y, py, N)
        rules = (("{aut, aut} in sym", A, A, anti, s), ("{sym, sym} in sym", S, S, anti, s),
                 ("{aut, sym} in aut", A, S, anti, a), ("[sym, sym] in aut", S, S, brk, a),
                 ("[aut, sym] in sym", A, S, brk, s))
        for name, X, Y, op, target in rules:
            bad, tot = _contained_in([(x, y) for x in X for y in Y], op, target)
            res.add(f"{label} {tag}: {name}", bad == 0, f"{tot} basis pairs, {bad} failures")

    # bracket of decomposable elements
    N1, N2 = d1.total, d2.total
    N = N1 * N2
    bad = 0
    trials = 40
    for _ in range(trials):
        pa1, pb1, pa2, pb2 = (rng.randint(0, 1) for _ in range(4))
        A_1, A_2 = _rand_homog(rng, d1, pa1, 0.5), _rand_homog(rng, d1, pa2, 0.5)
        B_1, B_2 = _rand_homog(rng, d2, pb1, 0.5), _rand_homog(rng, d2, pb2, 0.5)
        X = kron_raw(A_1, d1, B_1, d2)
        Y = kron_raw(A_2, d1, B_2, d2)
        lhs = bracket_h(X, pa1 ^ pb1, Y, pa2 ^ pb2, N)
        t1 = kron_raw(bracket_h(A_1, pa1, A_2, pa2, N1), d1, _anti(B_1, pb1, B_2, pb2, N2), d2)
        t2 = kron_raw(_anti(A_2, pa2, A_1, pa1, N1), d1, bracket_h(B_1, pb1, B_2, pb2, N2), d2)
        rhs = scale(mpq(-1 if pa2 & pb1 else 1, 2), t1)
        axpy(rhs, mpq(-1 if pa2 & (pa1 ^ pb1) else 1, 2), t2)
        bad += bool(_sub(lhs, rhs))
    res.add(f"{label}: bracket of decomposable tensors", bad == 0, f"{trials} random quadruples, {bad} failures")


def suite_lemma241(seed: int = 0, include_registry: bool = True) -> SuiteResult:
    res = SuiteResult("lemma241")
    rng = random.Random(seed)
    for label, f1, f2 in LEMMA_PAIRS:
        _lemma_pair(res, label, f1(), f2(), rng)
    for label, G in forms_in_use(include_registry):
        a, s = _aut_sym(G)
        N = G.carrier.total
        ok = a.dim + s.dim == N * N and (a & s).dim == 0
        res.add(f"aut + sym = gl, direct: {label}", ok, f"{a.dim} + {s.dim} = {N * N}")
    return res


# -- T^lambda ----------------------------------------------------------------------------


REPS_LAMBDAS = (mpq(0), mpq(1, 2), mpq(1), mpq(2))


def suite_reps(seed: int = 0, max_n: int = 3) -> SuiteResult:
    res = SuiteResult("reps")
    for n in range(1, max_n + 1):
        basis = vect_basis_raw(n)
        N = 1 << n
        for lam in REPS_LAMBDAS:
            images = [t_lambda_raw(v, n, lam) for v, _ in basis]
            bad = 0
            for (i, (x, px)), (j, (y, py)) in product(enumerate(basis), repeat=2):
                lhs = bracket_h(images[i], px, images[j], py, N)
                rhs = t_lambda_raw(bracket_h(x, px, y, py, N), n, lam)
                bad += bool(_sub(lhs, rhs))
            res.add(f"T^{lam} homomorphism, n={n}", bad == 0, f"{len(basis) ** 2} basis pairs, {bad} failures")
    n = max_n
    for lam, want in ((mpq(0), "Reducible"), (mpq(1), "Reducible"), (mpq(1, 2), "G")):
        kind = irreducibility_type(t_lambda_algebra(n, lam)).kind
        res.add(f"T^{lam}(vect(0|{n})) is {want}", kind == want, f"got {kind}")
    return res


# -- quantization -------------------------------------------------------------------------


def _mono(m: int, s: int) -> PoElement:
    return PoElement(m, GrassmannElement(m, {s: mpq(1)}))


def suite_quantize(seed: int = 0, m: int = 6, max_degree: int = 3) -> SuiteResult:
    res = SuiteResult("quantize")
    monos = [s for s in monomial_basis(m) if bin(s).count("1") <= max_degree]
    Q = {s: quantize_raw(_mono(m, s)) for s in monomial_basis(m)}
    n = m // 2 + m % 2
    N = 1 << n
    lower = {}
    for d in range(0, 2 * max_degree - 3):
        lower[d] = Subspace(N * N, [Q[s] for s in monomial_basis(m) if bin(s).count("1") <= d])
    bad = 0
    for s, t in product(monos, repeat=2):
        ds, dt = bin(s).count("1"), bin(t).count("1")
        pb = poisson_bracket(_mono(m, s), _mono(m, t))
        diff = bracket_h(Q[s], ds & 1, Q[t], dt & 1, N)
        axpy(diff, -1, quantize_raw(pb))
        d = ds + dt - 4
        ok = not diff if d < 0 else lower[d].contains(diff)
        bad += not ok
    res.add(f"filtration: [Q f, Q g] - Q{{f, g}} has degree <= deg f + deg g - 4, m={m}", bad == 0,
            f"{len(monos) ** 2} monomial pairs, {bad} failures")

    for mm in (4, 5, 6):
        _po0_checks(res, mm)

    lit = literal_normalizer(hei_rep(4))
    con = hei_normalizer(4).space
    res.add("hei normalizer at m=4: literal = hei + o(4)", lit == con, f"dims {lit.dim} vs {con.dim}")
    return res


def _po0_checks(res: SuiteResult, m: int) -> None:
    want = m * (m - 1) // 2
    po0 = po_graded_component(m, 0)
    degs = [s for s in monomial_basis(m) if bin(s).count("1") == 2]
    lins = [s for s in monomial_basis(m) if bin(s).count("1") == 1]
    scale_t = 2 if m % 2 else 1
    closed = all(po0.contains(poisson_bracket(_mono(m, s), _mono(m, t), scale_t).f.to_vec())
                 for s, t in product(degs, repeat=2))
    res.add(f"po_0(0|{m}) has dimension {want} and is closed", po0.dim == want and closed,
            f"dim {po0.dim}")

    # adjoint action of po_0 on the linear functions: faithful and preserving {a, b}
    idx = {s: i for i, s in enumerate(lins)}
    B = [[poisson_bracket(_mono(m, a), _mono(m, b), scale_t).f.coeffs.get(0, 0) for b in lins] for a in lins]
    mats = []
    invariant = True
    for s in degs:
        M = [[mpq(0)] * m for _ in range(m)]
        for i, a in enumerate(lins):
            for t, c in poisson_bracket(_mono(m, s), _mono(m, a), scale_t).f.coeffs.items():
                M[idx[t]][i] = c
        for i in range(m):
            for j in range(m):
                v = sum(M[k][i] * B[k][j] + B[i][k] * M[k][j] for k in range(m))
                invariant &= v == 0
        mats.append({i * m + j: M[i][j] for i in range(m) for j in range(m) if M[i][j]})
    image = Subspace(m * m, mats).dim
    res.add(f"ad: po_0(0|{m}) -> o({m}) is injective and form preserving", invariant and image == want,
            f"image dim {image}")

    o = o_spinor(m)
    res.add(f"quantized po_0 for m={m} is closed of dimension {want}", o.dim == want and o.is_closed(),
            f"dim {o.dim}")


SUITES = {"signs": suite_signs, "lemma241": suite_lemma241, "reps": suite_reps, "quantize": suite_quantize}


def run_suite(name: str, seed: int = 0) -> list:
    """Run one suite or all of them; returns a list of SuiteResult."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise KeyError(f"unknown suite {nm!r}; choose from {', '.join(SUITES)} or all")
        t = time.time()
        r = SUITES[nm](seed=seed)
        r.elapsed_ms = int((time.time() - t) * 1000)
        out.append(r)
    return out
