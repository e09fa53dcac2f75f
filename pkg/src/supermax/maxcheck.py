"""Maximality verification and the registry of table rows.

A subalgebra h of g is maximal iff every nonzero ad(h)-submodule of g/h
generates g together with h.  Every such submodule contains a minimal one,
so it is enough to close h + M for each minimal submodule M; that is what
certify mode does.  Evidence mode closes h + x for random x instead.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from gmpy2 import mpq

from .algebras import (
    LieSuperAlgebra,
    aut_of_form,
    gl,
    j_matrix,
    q,
    q_of,
    saut_of_form,
    sl,
    sq_of,
    standard_even_form,
    standard_odd_form,
    tensor_form,
)
from .constructions import (
    conjugate,
    current_semidirect,
    form_semidirect,
    hei_normalizer,
    hei_normalizer_ambient,
    lambda_fold_perm,
    odd_form_congruence,
    odot_G,
    odot_Q,
    reassoc_perm,
    relabel,
    transport,
)
from .forms import GramForm, omega_half, symplectic_form
from .grassmann import deriv_vec, lambda_dim, t_lambda_raw, vect_basis_raw
from .linalg import Subspace, Vec, axpy, norm_value
from .modtools import generating_set, lie_closure_ext, minimal_submodules, quotient_action
from .scalar import fmt, to_field
from .superlinalg import SuperDim, identity_raw, kron_raw, raw_parity, split_parity, str_raw

__all__ = [
    "STATUSES",
    "AdmissibilityError",
    "WitnessError",
    "Param",
    "TableRow",
    "MaximalityReport",
    "verify_maximal",
    "replay_certificate",
    "registry",
    "get_row",
    "instantiate_row",
    "verify_row",
    "verify_exceptional",
    "pe_lambda_of_form",
    "markdown_summary",
    "SECTIONS",
]

STATUSES = ("CertifiedMaximal", "EvidenceMaximal", "NotMaximal", "PreconditionFailed", "Inconclusive")


class AdmissibilityError(ValueError):
    def __init__(self, clause: str, row: str = ""):
        super().__init__(clause)
        self.clause = clause
        self.row = row


class WitnessError(RuntimeError):
    """A claimed intermediate subalgebra failed re-verification."""


# -- reports ---------------------------------------------------------------------------


def _sdim_of(space: Subspace, carrier: SuperDim) -> list:
    o = sum(raw_parity(r, carrier) for r in space.rows)
    return [space.dim - o, o]


def _vec_json(x: Vec, N: int) -> list:
    return [[k // N, k % N, fmt(v)] for k, v in sorted(x.items())]


@dataclass
class MaximalityReport:
    row: str
    params: dict
    status: str
    carrier: str = ""
    h_sdim: tuple = ()
    g_sdim: tuple = ()
    mode: str = "certify"
    seed: int = 0
    trials: int = 0
    witness: Optional[Subspace] = None
    witnesses: list = field(default_factory=list)
    witness_name: str = ""
    minimal_submodules: list = field(default_factory=list)  # [p, q] per submodule
    closures: list = field(default_factory=list)  # trace of closure dimensions
    socle: dict = field(default_factory=dict)
    certificate: list = field(default_factory=list)  # lifted submodule bases for replay
    detail: str = ""
    expected: Optional[str] = None
    elapsed_ms: int = 0

    @property
    def maximal(self) -> bool:
        return self.status in ("CertifiedMaximal", "EvidenceMaximal")

    def matches_expected(self) -> Optional[bool]:
        if self.expected is None:
            return None
        if self.expected == "Maximal":
            return self.maximal
        return self.status == "NotMaximal"

    def to_json(self, deterministic: bool = False) -> dict:
        N = sum(int(x) for x in self.carrier.split("|")) if self.carrier else 0
        out = {
            "row": self.row,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "status": self.status,
            "mode": self.mode,
            "carrier": self.carrier,
            "h_dim": list(self.h_sdim),
            "g_dim": list(self.g_sdim),
            "minimal_submodules": [{"dim": list(d)} for d in self.minimal_submodules],
            "closures": self.closures,
            "seed": self.seed,
            "trials": self.trials,
            "detail": self.detail,
            "expected": self.expected,
            "elapsed_ms": 0 if deterministic else self.elapsed_ms,
        }
        if self.witness is not None:
            out["witness"] = [_vec_json(r, N) for r in self.witness.rows]
            out["witness_dim"] = _sdim_of(self.witness, SuperDim.parse(self.carrier))
            out["witness_name"] = self.witness_name
            out["witness_count"] = len(self.witnesses)
        return out

    def dumps(self, deterministic: bool = False) -> str:
        return json.dumps(self.to_json(deterministic), sort_keys=True, indent=1)


# -- the engine ------------------------------------------------------------------------


def _check_witness(k: Subspace, h: LieSuperAlgebra, g: LieSuperAlgebra) -> None:
    if not (h.space.issubspace(k) and k.issubspace(g.space)):
        raise WitnessError("witness does not sit between h and g")
    if not (h.dim < k.dim < g.dim):
        raise WitnessError("witness is not strictly between h and g")
    if not LieSuperAlgebra("k", g.carrier, space=k).is_closed():
        raise WitnessError("witness is not bracket-closed")


def _closure(h: LieSuperAlgebra, g: LieSuperAlgebra, extra: list) -> Subspace:
    return lie_closure_ext(g.carrier, h.homogeneous(), generating_set(h), extra,
                           target_dim=g.dim)


def _homog(x: Vec, carrier: SuperDim) -> list:
    return [(part, p) for p, part in enumerate(split_parity(x, carrier)) if part]


def _preconditions(h: LieSuperAlgebra, g: LieSuperAlgebra, check_ambient: bool) -> Optional[str]:
    if h.carrier != g.carrier:
        return "h and g act on different carriers"
    if not h.space.issubspace(g.space):
        return "h is not contained in g"
    if h.dim == g.dim:
        return "h = g"
    if not h.is_closed():
        return "h is not bracket-closed"
    if check_ambient and not g.is_closed():
        return "g is not bracket-closed"
    return None


def verify_maximal(h: LieSuperAlgebra, g: LieSuperAlgebra, mode: str = "certify",
                   trials: int = 8, seed: int = 0, row: str = "", params: Optional[dict] = None,
                   fallback: bool = True, check_ambient: bool = True,
                   all_witnesses: bool = True) -> MaximalityReport:
    """Decide whether h is a maximal subalgebra of g.

    certify: minimal submodules of g/h, each closed with h.
    evidence: complement basis vectors and `trials` random vectors, each closed with h.
    """
    t0 = time.perf_counter()
    rep = MaximalityReport(row, dict(params or {}), "Inconclusive", str(g.carrier),
                           h.sdim, g.sdim, mode, seed, trials if mode == "evidence" else 0)
    bad = _preconditions(h, g, check_ambient)
    if bad:
        rep.status, rep.detail = "PreconditionFailed", bad
    elif mode == "certify":
        _certify(h, g, rep, all_witnesses)
        if rep.status == "Inconclusive" and fallback:
            note = rep.detail
            rep.mode, rep.trials = "evidence", trials
            _evidence(h, g, rep, trials, seed, all_witnesses)
            rep.detail = f"certify inconclusive ({note}); evidence fallback"
    elif mode == "evidence":
        if trials < 1:
            raise ValueError("evidence mode needs trials >= 1")
        _evidence(h, g, rep, trials, seed, all_witnesses)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if rep.status == "NotMaximal":
        for k in rep.witnesses:
            _check_witness(k, h, g)
        rep.witness = rep.witnesses[0]
    rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rep


def _certify(h, g, rep: MaximalityReport, all_witnesses: bool) -> None:
    qm = quotient_action(h, g)
    soc = minimal_submodules(qm.action, torus=qm.torus)
    rep.socle = soc.to_json(qm.action.parities)
    if not soc.complete or not soc.minimal:
        rep.detail = "isotypic multiplicity or split failure in the quotient module"
        return
    pars = qm.action.parities
    for M in soc.minimal:
        extra = []
        for v in M.rows:
            x: dict = {}
            for i, c in v.items():
                axpy(x, c, qm.lifts[i])
            extra.append((x, pars[min(v)]))
        sd = [sum(1 for r in M.rows if not pars[min(r)]), sum(1 for r in M.rows if pars[min(r)])]
        rep.minimal_submodules.append(sd)
        rep.certificate.append(extra)
        k = _closure(h, g, extra)
        rep.closures.append({"submodule": sd, "closure_dim": k.dim})
        if k.dim < g.dim:
            rep.witnesses.append(k)
            if not all_witnesses:
                break
    rep.status = "NotMaximal" if rep.witnesses else "CertifiedMaximal"
    rep.detail = f"quotient dim {qm.action.dim}, {len(soc.minimal)} minimal submodules ({soc.method})"


def _evidence(h, g, rep: MaximalityReport, trials: int, seed: int, all_witnesses: bool) -> None:
    qm = quotient_action(h, g)
    lifts = qm.lifts
    rng = random.Random(seed)
    cands = [dict(x) for x in lifts]
    for _ in range(trials):
        x: dict = {}
        for lf in lifts:
            c = rng.randint(-3, 3)
            if c:
                axpy(x, mpq(c), lf)
        if x:
            cands.append(x)
    for x in cands:
        k = _closure(h, g, _homog(x, g.carrier))
        rep.closures.append({"closure_dim": k.dim})
        if k.dim < g.dim:
            if not any(k == w for w in rep.witnesses):
                rep.witnesses.append(k)
            if not all_witnesses:
                break
    rep.status = "NotMaximal" if rep.witnesses else "EvidenceMaximal"
    rep.detail = f"{len(lifts)} basis vectors and {trials} random vectors (seed {seed})"


def replay_certificate(h: LieSuperAlgebra, g: LieSuperAlgebra, rep: MaximalityReport) -> bool:
    """Recheck a certificate: each recorded submodule is ad(h)-stable modulo h and
    generates g with h.  (Minimality of the recorded list is the engine's claim.)"""
    if rep.status != "CertifiedMaximal":
        return False
    N = g.N
    from .superlinalg import bracket_h
    for extra in rep.certificate:
        span = Subspace(N * N, list(h.basis_raw) + [x for x, _ in extra])
        for x, px in extra:
            for y, py in h.homogeneous():
                if not span.contains(bracket_h(y, py, x, px, N)):
                    return False
        if _closure(h, g, extra).dim != g.dim:
            return False
    return True


# -- registry ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Param:
    name: str
    kind: str  # "sdim", "int" or "rational"
    default: object

    def parse(self, text):
        if not isinstance(text, str):
            return text
        if self.kind == "sdim":
            return SuperDim.parse(text)
        if self.kind == "int":
            return int(text)
        return norm_value(to_field(text))


@dataclass
class TableRow:
    id: str
    table: str
    h_text: str
    g_text: str
    conditions: str
    params: tuple
    clauses: tuple  # (clause text, predicate on params) pairs; predicate True = satisfied
    builder: Callable
    expected: str = "Maximal"
    witness_name: str = ""
    witness_builder: Optional[Callable] = None
    relation: str = "chain"  # exceptional rows: "chain" (h < k < g) or "equal" (h = g)
    note: str = ""

    @property
    def exceptional(self) -> bool:
        return self.table in ("EXC", "FIND")

    def defaults(self) -> dict:
        return {p.name: p.default for p in self.params}

    def parse_params(self, given=None) -> dict:
        out = self.defaults()
        if isinstance(given, str):
            given = dict(kv.split("=", 1) for kv in given.split(",") if kv.strip())
        names = {p.name: p for p in self.params}
        for k, v in (given or {}).items():
            k = k.strip()
            if k not in names:
                raise AdmissibilityError(f"unknown parameter {k!r} for {self.id}", self.id)
            try:
                out[k] = names[k].parse(v.strip() if isinstance(v, str) else v)
            except (ValueError, ZeroDivisionError) as exc:
                raise AdmissibilityError(f"cannot parse {k}={v}: {exc}", self.id) from None
        return out

    def check(self, params: dict) -> None:
        for clause, ok in self.clauses:
            if not ok(params):
                raise AdmissibilityError(clause, self.id)

    def line(self) -> str:
        d = ", ".join(f"{p.name}={p.default}" for p in self.params) or "fixed"
        return f"{self.id} | {self.h_text} in {self.g_text} | {self.conditions or '-'} | defaults: {d}"


def _sd(text: str) -> SuperDim:
    return SuperDim.parse(text)


def _not_1_eps(*names):
    return lambda p: all((p[n].even, p[n].odd) not in ((1, 0), (0, 1)) for n in names)


def _not_11(*names):
    return lambda p: all((p[n].even, p[n].odd) != (1, 1) for n in names)


def _gl_of(d: SuperDim) -> LieSuperAlgebra:
    return gl(d.even, d.odd)


def _sl_of(d: SuperDim) -> LieSuperAlgebra:
    return sl(d.even, d.odd)


def _osp_form(d: SuperDim) -> GramForm:
    return standard_even_form(d.even, d.odd)


def _o_form(n: int) -> GramForm:
    return standard_even_form(n, 0)


def pe_lambda_of_form(G: GramForm, lam, name: Optional[str] = None) -> LieSuperAlgebra:
    """{X + lam str(X) 1 : X in aut(G)} for an odd form G."""
    a = aut_of_form(G)
    d = G.carrier
    one = identity_raw(d.total)
    vecs = []
    for v in a.basis_raw:
        w = dict(v)
        s = str_raw(v, d)
        if s and lam:
            axpy(w, lam * s, one)
        vecs.append(w)
    return LieSuperAlgebra(name or f"pe_{fmt(lam)}(form on {d})", d, vecs,
                           meta={"preserved_form": G, "character_twist": lam})


# Table 1 ---------------------------------------------------------------------------


def _t1_gl(p, amb):
    d1, d2 = p["N1"], p["N2"]
    h = odot_G(_gl_of(d1), _gl_of(d2))
    g = (_gl_of if amb == "gl" else _sl_of)(d1.tensor(d2))
    return h, g


def _t1_sl(p):
    d1, d2 = p["N1"], p["N2"]
    return odot_G(_sl_of(d1), _sl_of(d2)), _sl_of(d1.tensor(d2))


def _t1_qq(p):
    h = odot_Q(q(p["n1"]), q(p["n2"]))
    return h, _sl_of(h.carrier)


def _t1_qgl(p, special):
    n1, d2 = p["n1"], p["N2"]
    h = odot_G(q(n1), _gl_of(d2))
    J = kron_raw(j_matrix(n1), SuperDim(n1, n1), identity_raw(d2.total), d2)
    g = (sq_of if special else q_of)(J, h.carrier)
    return h, g


# Table 2 ---------------------------------------------------------------------------


def _product(G1: GramForm, G2: GramForm, ambient: str = "aut", twist=None):
    h = odot_G(aut_of_form(G1), aut_of_form(G2) if twist is None else pe_lambda_of_form(G2, twist))
    G = tensor_form(G1, G2)
    if twist is not None:
        n1 = G1.carrier.even - G1.carrier.odd
        return h, pe_lambda_of_form(G, twist / n1)
    g = aut_of_form(G) if ambient == "aut" else saut_of_form(G)
    return h, g


def _osp_ok(name):
    return lambda p: p[name].even > 0 and p[name].odd > 0 and p[name].odd % 2 == 0


# Table 3 ---------------------------------------------------------------------------


def _t3_current(p, n, ambient):
    d1 = p["N1"]
    h = current_semidirect(_gl_of(d1), n)
    d = d1.tensor(lambda_dim(n))
    return h, (_gl_of(d) if ambient == "gl" else _sl_of(d))


def _t3_sg(p):
    d1 = p["N1"]
    dvec = deriv_vec(1, 1)
    h = current_semidirect(_gl_of(d1), 1, vect_ops=[dvec])
    return h, _sl_of(d1.tensor(lambda_dim(1)))


def _t3_q(p):
    d1, n = p["N1"], p["n"]
    m = d1.even
    J1 = j_matrix(m)
    g1 = q(m)
    h = current_semidirect(g1, n)
    J = kron_raw(J1, d1, identity_raw(lambda_dim(n).total), lambda_dim(n))
    return h, sq_of(J, h.carrier)


def _t3_form(G1: GramForm, n: int, ambient: str):
    r = form_semidirect(G1, n, ambient)
    return r.algebra, r.ambient


def _t3r7_table(p):
    """Table reading: the standard pe(N) moved onto the product form by an even congruence."""
    G1 = _osp_form(p["N1"])
    r = form_semidirect(G1, 1, "aut")
    G = r.algebra.meta["preserved_form"]
    n = G.carrier.even
    std = standard_odd_form(n)
    P, Pi = odd_form_congruence(std, G)
    g = conjugate(aut_of_form(std, f"pe({n})"), P, Pi, f"pe({n}) on V1 (x) L(1)")
    return r.algebra, g


# exceptional and theorem instances -----------------------------------------------


def _pe2_realized():
    """pe(2) as aut(w_sp (x) w_1/2) on C^2 (x) Lambda(1)."""
    r = form_semidirect(symplectic_form(1), 1, "aut")
    return r.algebra, r.algebra.meta["preserved_form"]


def _exc_eps(p):
    d1 = p["N1"]
    h = odot_G(_gl_of(d1), gl(1, 1))
    return h, _gl_of(d1.tensor(SuperDim(1, 1)))


def _exc_eps_k(p):
    return current_semidirect(_gl_of(p["N1"]), 1)


def _exc_qq(p):
    return odot_Q(q(1), q(1)), sl(1, 1)


def _exc_pe2(p):
    G1 = _osp_form(p["N1"])
    a2, G2 = _pe2_realized()
    d1, C2, L1 = G1.carrier, SuperDim(2, 0), lambda_dim(1)
    perm = reassoc_perm(d1, C2, L1)
    h = odot_G(aut_of_form(G1), a2)
    g = aut_of_form(tensor_form(G1, G2))
    car = d1.tensor(C2).tensor(L1)
    h = LieSuperAlgebra("aut(w1) . pe(2)", car, [transport(x, perm) for x in h.basis_raw])
    g = LieSuperAlgebra("pe(V1 (x) C^2 (x) L(1))", car, [transport(x, perm) for x in g.basis_raw])
    return h, g


def _exc_pe2_k(p):
    G1 = _osp_form(p["N1"])
    return form_semidirect(tensor_form(G1, symplectic_form(1)), 1).algebra


def _exc_151(p):
    d1 = p["N1"]
    h = current_semidirect(_gl_of(d1), 1)
    return h, gl(1, 1)


def _exc_152(p):
    n = p["n"]
    V1 = SuperDim(1, 1)
    h = current_semidirect(gl(1, 1), n)
    perm = lambda_fold_perm(SuperDim(1, 0), 1, n)
    # V1 = 1|1 is Lambda(1) and 1|0 (x) Lambda(1) has the same basis order
    car = lambda_dim(n + 1)
    h = relabel(h, perm, car, f"gl(1|1)(x)L({n})+vect(0|{n})")
    assert V1.tensor(lambda_dim(n)) == car
    return h, sl(car.even, car.odd)


def _exc_152_k(p):
    return current_semidirect(gl(1, 0), p["n"] + 1)


def _exc_153(p):
    n = p["n"]
    _, G2 = _pe2_realized()
    r = form_semidirect(G2, n, "aut")
    d1, L1 = SuperDim(2, 0), lambda_dim(1)
    perm = lambda_fold_perm(d1, 1, n)
    car = d1.tensor(lambda_dim(n + 1))
    h = relabel(r.algebra, perm, car, f"pe(2)(x)L({n})+T^1/2(vect(0|{n}))")
    g = relabel(r.ambient, perm, car, f"osp(C^2 (x) L({n + 1}))")
    return h, g


def _exc_153_k(p):
    return form_semidirect(symplectic_form(1), p["n"] + 1).algebra


def _exc_154(p):
    return hei_normalizer(6), hei_normalizer_ambient(6)


def _as_witness(p):
    from .sergeev import as_operators
    return as_operators()


def _thm_as(p):
    from .sergeev import as_operators
    a = as_operators()
    return a, sl(a.carrier.even, a.carrier.odd)


def _thm361(p):
    n = p["n"]
    L = lambda_dim(n)
    vecs = [t_lambda_raw(v, n, mpq(1, 2)) for v, _ in vect_basis_raw(n)]
    h = LieSuperAlgebra(f"T^1/2(vect(0|{n}))", L, vecs)
    return h, saut_of_form(omega_half(n), f"saut(w_1/2 on L({n}))")


def _thm37(p):
    return _t3_form(_osp_form(p["N1"]), 1, "aut")


def _lemma331(p):
    n = p["n"]
    h = current_semidirect(gl(1, 0), n, f"L({n})+vect(0|{n})")
    L = lambda_dim(n)
    return h, sl(L.even, L.odd)


# chains through osp(2|2) = T^{1/2}(vect(0|2)) on Lambda(2) ---------------------------


def _osp22_t3(p):
    """Row-6 algebra with V1 = Lambda(2) carrying w_1/2, rewritten on Lambda(2k+3)."""
    n = 2 * p["k"] + 1
    r = form_semidirect(omega_half(2), n, "saut")
    perm = lambda_fold_perm(SuperDim(1, 0), 2, n)
    car = lambda_dim(n + 2)
    h = relabel(r.algebra, perm, car, f"osp(2|2)(x)L({n})+T^1/2(vect(0|{n}))")
    g = relabel(r.ambient, perm, car, f"spe(L({n + 2}))")
    return h, g


def _osp22_t3_k(p):
    return _thm361({"n": 2 * p["k"] + 3})[0]


def _osp22_t2(p):
    G1, G2 = standard_odd_form(p["n"]), omega_half(2)
    h = odot_G(aut_of_form(G1), aut_of_form(G2), f"pe({p['n']}) . osp(2|2)")
    return h, saut_of_form(tensor_form(G1, G2))


def _osp22_t2_k(p):
    return form_semidirect(standard_odd_form(p["n"]), 2, "saut").algebra


# Dynkin rows -------------------------------------------------------------------------


def _dyn(p, kind):
    a, b = p["d1"], p["d2"]
    if kind == 1:
        return odot_G(sl(a, 0), sl(b, 0)), sl(a * b, 0)
    F1 = symplectic_form(a // 2) if kind in (2, 3) else _o_form(a)
    F2 = symplectic_form(b // 2) if kind == 3 else _o_form(b)
    return _product(F1, F2)


def _I(name, default):
    return Param(name, "int", default)


def _S(name, default):
    return Param(name, "sdim", _sd(default))


def registry() -> list:
    """All rows: Tables 1-3, exceptional cases, theorem instances and Dynkin rows."""
    rows = []
    ne1 = ("N_i ≠ 1, ε", _not_1_eps("N1", "N2"))
    ne11 = ("N_i ≠ 1 + ε", _not_11("N1", "N2"))
    unequal = ("m1 ≠ n1 or m2 ≠ n2", lambda p: p["N1"].even != p["N1"].odd or p["N2"].even != p["N2"].odd)
    rows += [
        TableRow("T1R1", "T1", "gl(N1) ⊙ gl(N2)", "gl(N1N2)", "N_i ≠ 1 + ε; m1 ≠ n1 or m2 ≠ n2",
                 (_S("N1", "2|1"), _S("N2", "2|1")), (ne1, ne11, unequal),
                 lambda p: _t1_gl(p, "gl")),
        TableRow("T1R2", "T1", "gl(N1) ⊙ gl(N2)", "sl(N1N2)", "N_i ≠ 1 + ε; m1 = n1 and m2 = n2",
                 (_S("N1", "2|2"), _S("N2", "2|2")),
                 (ne1, ne11, ("m1 = n1 and m2 = n2",
                              lambda p: p["N1"].even == p["N1"].odd and p["N2"].even == p["N2"].odd)),
                 lambda p: _t1_gl(p, "sl")),
        TableRow("T1R3", "T1", "sl(N1) ⊙ sl(N2)", "sl(N1N2)", "N_i ≠ 1 + ε; m1 ≠ n1 or m2 ≠ n2",
                 (_S("N1", "2|1"), _S("N2", "2|1")), (ne1, ne11, unequal), _t1_sl),
        TableRow("T1R4", "T1", "q(n1) ⊙ q(n2)", "sl(n1n2|n1n2)", "n1n2 > 1",
                 (_I("n1", 1), _I("n2", 2)),
                 (("n_i ≥ 1", lambda p: p["n1"] >= 1 and p["n2"] >= 1),
                  ("n1n2 > 1", lambda p: p["n1"] * p["n2"] > 1)), _t1_qq),
        TableRow("T1R5", "T1", "q(n1) ⊙ gl(m2|n2)", "q(n1(m2 + n2)), J = J1 ⊗ 1", "n1 ≥ 1; m2 ≠ n2",
                 (_I("n1", 1), _S("N2", "2|1")),
                 (("n1 ≥ 1", lambda p: p["n1"] >= 1), ("N_2 ≠ 1, ε", _not_1_eps("N2")),
                  ("m2 ≠ n2", lambda p: p["N2"].even != p["N2"].odd)),
                 lambda p: _t1_qgl(p, False),
                 note="the second factor is written gl(m2 + εn2) and gl(m2 + n2ε) in the two rows; "
                      "both are the same family"),
        TableRow("T1R6", "T1", "q(n1) ⊙ gl(m2|n2)", "sq(n1(m2 + n2)), J = J1 ⊗ 1", "n1 ≥ 1; m2 = n2 > 1",
                 (_I("n1", 1), _S("N2", "2|2")),
                 (("n1 ≥ 1", lambda p: p["n1"] >= 1),
                  ("m2 = n2 > 1", lambda p: p["N2"].even == p["N2"].odd > 1)),
                 lambda p: _t1_qgl(p, True)),
    ]
    osp1 = ("N1 = n1 + 2m1ε with n1m1 ≠ 0", _osp_ok("N1"))
    osp2 = ("N2 = n2 + 2m2ε with n2m2 ≠ 0", _osp_ok("N2"))
    rows += [
        TableRow("T2R1", "T2", "osp(N1) ⊙ osp(N2)", "osp(N1N2)", "-",
                 (_S("N1", "1|2"), _S("N2", "1|2")), (osp1, osp2),
                 lambda p: _product(_osp_form(p["N1"]), _osp_form(p["N2"]))),
        TableRow("T2R2", "T2", "o(n) ⊙ osp(N2)", "osp(nN2)", "n > 2, n ≠ 4",
                 (_I("n", 3), _S("N2", "1|2")),
                 (("n > 2", lambda p: p["n"] > 2), ("n ≠ 4", lambda p: p["n"] != 4), osp2),
                 lambda p: _product(_o_form(p["n"]), _osp_form(p["N2"]))),
        TableRow("T2R3", "T2", "sp(2n) ⊙ osp(N2)", "osp(2nN2)", "n ≥ 1",
                 (_I("n", 1), _S("N2", "1|2")), (("n ≥ 1", lambda p: p["n"] >= 1), osp2),
                 lambda p: _product(symplectic_form(p["n"]), _osp_form(p["N2"]))),
        TableRow("T2R4", "T2", "pe(n1) ⊙ pe(n2)", "osp(2n1n2|2n1n2)", "n1, n2 > 2",
                 (_I("n1", 3), _I("n2", 3)), (("n1, n2 > 2", lambda p: p["n1"] > 2 and p["n2"] > 2),),
                 lambda p: _product(standard_odd_form(p["n1"]), standard_odd_form(p["n2"]))),
        TableRow("T2R5", "T2", "osp(n1|2m1) ⊙ pe(n2)", "pe(n1n2 + 2m1n2)", "n2 > 2, n1 ≠ 2m1",
                 (_S("N1", "1|2"), _I("n2", 3)),
                 (osp1, ("n2 > 2", lambda p: p["n2"] > 2), ("n1 ≠ 2m1", lambda p: p["N1"].even != p["N1"].odd)),
                 lambda p: _product(_osp_form(p["N1"]), standard_odd_form(p["n2"]))),
        TableRow("T2R6", "T2", "osp(2m|2m) ⊙ pe(n)", "spe(4mn)", "n > 2",
                 (_I("m", 1), _I("n", 3)), (("m ≥ 1", lambda p: p["m"] >= 1), ("n > 2", lambda p: p["n"] > 2)),
                 lambda p: _product(standard_even_form(2 * p["m"], 2 * p["m"]),
                                    standard_odd_form(p["n"]), "saut")),
        TableRow("T2R7", "T2", "osp(n1|2m1) ⊙ pe_λ(n2)", "pe_μ(n1n2 + 2m1n2), μ = λ/(n1 − 2m1)",
                 "n2 > 2, n1 ≠ 2m1",
                 (_S("N1", "1|2"), _I("n2", 3), Param("lam", "rational", mpq(1))),
                 (osp1, ("n2 > 2", lambda p: p["n2"] > 2), ("n1 ≠ 2m1", lambda p: p["N1"].even != p["N1"].odd)),
                 lambda p: _product(_osp_form(p["N1"]), standard_odd_form(p["n2"]), twist=p["lam"]),
                 note="twist law μ = λ/(n1 − 2m1)"),
        TableRow("T2R8", "T2", "o(n) ⊙ pe(m)", "pe(nm)", "n, m > 2, n ≠ 4",
                 (_I("n", 3), _I("m", 3)),
                 (("n, m > 2", lambda p: p["n"] > 2 and p["m"] > 2), ("n ≠ 4", lambda p: p["n"] != 4)),
                 lambda p: _product(_o_form(p["n"]), standard_odd_form(p["m"]))),
        TableRow("T2R9", "T2", "sp(2n) ⊙ pe(m)", "pe(2nm)", "m > 2, n ≥ 1",
                 (_I("n", 1), _I("m", 3)),
                 (("m > 2", lambda p: p["m"] > 2), ("n ≥ 1", lambda p: p["n"] >= 1)),
                 lambda p: _product(symplectic_form(p["n"]), standard_odd_form(p["m"]))),
    ]
    nz = ("N1 ≠ 0", lambda p: p["N1"].total > 0)
    not12 = ("N1 ≠ 1, 2", lambda p: (p["N1"].even, p["N1"].odd) not in ((1, 0), (2, 0)))
    n1even = ("n1 even", lambda p: p["N1"].odd % 2 == 0)
    m_eq_n = ("m1 = n1 > 2", lambda p: p["N1"].even == p["N1"].odd > 2)
    rows += [
        TableRow("T3R1", "T3", "gl(V1) ⊗ Λ(n) ⋉ vect(0|n)", "sl(V1 ⊗ Λ(n))",
                 "N1 ≠ 1 + ε; either n ≠ 1 or (n = 1 and m1 = n1 > 1)",
                 (_S("N1", "1|0"), _I("n", 2)),
                 (nz, ("n ≥ 1", lambda p: p["n"] >= 1), ("N1 ≠ 1 + ε", _not_11("N1")),
                  ("either n ≠ 1 or (n = 1 and m1 = n1 > 1)",
                   lambda p: p["n"] != 1 or p["N1"].even == p["N1"].odd > 1)),
                 lambda p: _t3_current(p, p["n"], "sl")),
        TableRow("T3R2", "T3", "gl(V1) ⊗ Λ(1) ⋉ vect(0|1)", "gl(V1 ⊗ Λ(1))", "m1 ≠ n1; N1 ≠ 1 or ε",
                 (_S("N1", "2|0"),),
                 (nz, ("m1 ≠ n1", lambda p: p["N1"].even != p["N1"].odd), ("N1 ≠ 1 or ε", _not_1_eps("N1"))),
                 lambda p: _t3_current(p, 1, "gl")),
        TableRow("T3R3", "T3", "gl(V1) ⊗ Λ(1) ⋉ C·∂", "sl(V1 ⊗ Λ(1))", "m1 ≠ n1; N1 ≠ 1 or ε",
                 (_S("N1", "2|0"),),
                 (nz, ("m1 ≠ n1", lambda p: p["N1"].even != p["N1"].odd), ("N1 ≠ 1 or ε", _not_1_eps("N1"))),
                 _t3_sg),
        TableRow("T3R4", "T3", "q(V1) ⊗ Λ(n) ⋉ vect(0|n)", "sq(V1 ⊗ Λ(n)), J = J1 ⊗ 1", "m1 = n1 ≥ 1; n ≥ 1",
                 (_S("N1", "1|1"), _I("n", 1)),
                 (("m1 = n1 ≥ 1", lambda p: p["N1"].even == p["N1"].odd >= 1), ("n ≥ 1", lambda p: p["n"] >= 1)),
                 _t3_q,
                 note="the table restricts to m1 = n1 >= 1, n >= 1 while the corresponding theorem "
                      "states no exceptions; the registry follows the table"),
        TableRow("T3R5", "T3", "osp(V1) ⊗ Λ(2k) ⋉ T^{1/2}(vect(0|2k))", "osp(V1 ⊗ Λ(2k))", "N1 ≠ 1, 2; k > 0",
                 (_S("N1", "1|2"), _I("k", 1)), (nz, n1even, not12, ("k > 0", lambda p: p["k"] > 0)),
                 lambda p: _t3_form(_osp_form(p["N1"]), 2 * p["k"], "aut")),
        TableRow("T3R6", "T3", "osp(V1) ⊗ Λ(2k+1) ⋉ T^{1/2}(vect(0|2k+1))", "spe(V1 ⊗ Λ(2k+1))",
                 "N1 ≠ 1, 2; either k > 0 or (k = 0 and m1 = n1 > 1)",
                 (_S("N1", "2|2"), _I("k", 0)),
                 (nz, n1even, not12, ("k ≥ 0", lambda p: p["k"] >= 0),
                  ("either k > 0 or (k = 0 and m1 = n1 > 1)",
                   lambda p: p["k"] > 0 or p["N1"].even == p["N1"].odd > 1)),
                 lambda p: _t3_form(_osp_form(p["N1"]), 2 * p["k"] + 1, "saut")),
        TableRow("T3R7", "T3", "osp(V1) ⊗ Λ(1) ⋉ T^{1/2}(vect(0|1))", "pe(V1 ⊗ Λ(1))", "N1 ≠ 1, 2; m1 ≠ n1",
                 (_S("N1", "1|2"),),
                 (nz, n1even, not12, ("m1 ≠ n1", lambda p: p["N1"].even != p["N1"].odd)),
                 _t3r7_table,
                 note="table reading: the standard pe moved onto the product form; "
                      "THM3.7-n1 checks the aut(ω1 ⊗ ω_1/2) reading"),
        TableRow("T3R8", "T3", "pe(V1) ⊗ Λ(2k) ⋉ T^{1/2}(vect(0|2k))", "spe(V1 ⊗ Λ(2k))", "m1 = n1 > 2; k > 0",
                 (_S("N1", "3|3"), _I("k", 1)), (m_eq_n, ("k > 0", lambda p: p["k"] > 0)),
                 lambda p: _t3_form(standard_odd_form(p["N1"].even), 2 * p["k"], "saut")),
        TableRow("T3R9", "T3", "pe(V1) ⊗ Λ(2k+1) ⋉ T^{1/2}(vect(0|2k+1))", "osp(V1 ⊗ Λ(2k+1))",
                 "m1 = n1 > 2; k ≥ 0",
                 (_S("N1", "3|3"), _I("k", 0)), (m_eq_n, ("k ≥ 0", lambda p: p["k"] >= 0)),
                 lambda p: _t3_form(standard_odd_form(p["N1"].even), 2 * p["k"] + 1, "aut")),
        TableRow("T3R10", "T3", "hei(2n) ⋉ o(2n)", "sl(Λ(n))", "n ≥ 2, n ≠ 3",
                 (_I("n", 2),), (("n ≥ 2", lambda p: p["n"] >= 2), ("n ≠ 3", lambda p: p["n"] != 3)),
                 lambda p: (hei_normalizer(2 * p["n"]), hei_normalizer_ambient(2 * p["n"]))),
        TableRow("T3R11", "T3", "hei(2n−1) ⋉ o(2n−1)", "sq(Λ(n)), J = θ − ∂θ", "n > 2",
                 (_I("n", 3),), (("n > 2", lambda p: p["n"] > 2),),
                 lambda p: (hei_normalizer(2 * p["n"] - 1), hei_normalizer_ambient(2 * p["n"] - 1))),
    ]
    rows += [
        TableRow("EXC-1.13-eps", "EXC", "gl(V1) ⊙ gl(1|1)", "gl(V1 ⊗ (1|1))", "N2 = 1 + ε",
                 (_S("N1", "2|1"),), (), _exc_eps, "NotMaximal",
                 "gl(V1) ⊗ Λ(1) ⋉ vect(0|1)", _exc_eps_k),
        TableRow("EXC-1.13-qq", "EXC", "q(1) ⊙ q(1)", "sl(1|1)", "n1n2 = 1",
                 (), (), _exc_qq, "NotMaximal", "equality with sl(1|1)", relation="equal"),
        TableRow("EXC-1.14-pe2", "EXC", "aut(ω1) ⊙ pe(2)", "pe(V1 ⊗ C^2 ⊗ Λ(1))", "n2 = 2",
                 (_S("N1", "1|2"),), (), _exc_pe2, "NotMaximal",
                 "aut(ω1 ⊗ ω2) ⊗ Λ(1) ⋉ T^{1/2}(vect(0|1))", _exc_pe2_k),
        TableRow("EXC-1.15-1", "EXC", "gl(V1) ⊗ Λ(1) ⋉ vect(0|1)", "gl(1|1)", "N1 = 1 or ε",
                 (_S("N1", "1|0"),), (("N1 = 1 or ε", lambda p: p["N1"].total == 1),),
                 _exc_151, "NotMaximal", "equality with gl(1|1)", relation="equal"),
        TableRow("EXC-1.15-2", "EXC", "gl(1|1) ⊗ Λ(n) ⋉ vect(0|n)", "sl(Λ(n+1))", "N1 = 1 + ε",
                 (_I("n", 1),), (("n ≥ 1", lambda p: p["n"] >= 1),), _exc_152, "NotMaximal",
                 "Λ(n+1) ⋉ vect(0|n+1)", _exc_152_k),
        TableRow("EXC-1.15-3", "EXC", "pe(2) ⊗ Λ(n) ⋉ T^{1/2}(vect(0|n))", "osp(C^2 ⊗ Λ(1) ⊗ Λ(n))", "V1 = 2|2",
                 (_I("n", 1),), (("n ≥ 1", lambda p: p["n"] >= 1),), _exc_153, "NotMaximal",
                 "sp(2) ⊗ Λ(n+1) ⋉ T^{1/2}(vect(0|n+1))", _exc_153_k),
        TableRow("EXC-1.15-4", "EXC", "hei(6) ⋉ o(6)", "sl(Λ(3))", "n = 3 in line 10",
                 (), (), _exc_154, "NotMaximal", "as", _as_witness),
    ]
    rows += [
        TableRow("THM3.1-n3", "THM", "hei(6) ⋉ o(6)", "sl(Λ(3))", "n = 3", (), (), _exc_154,
                 "NotMaximal", "as"),
        TableRow("THM3.1-as", "THM", "as", "sl(Λ(3))", "-", (), (), _thm_as),
        TableRow("LEM3.3.1", "THM", "Λ(n) ⋉ vect(0|n)", "sl(Λ(n))", "n ≥ 2",
                 (_I("n", 2),), (("n ≥ 2", lambda p: p["n"] >= 2),), _lemma331),
        TableRow("LEM3.6.1", "THM", "T^{1/2}(vect(0|n))", "saut(ω_1/2)", "n ≥ 3 odd",
                 (_I("n", 3),), (("n ≥ 3 odd", lambda p: p["n"] >= 3 and p["n"] % 2),), _thm361),
        TableRow("THM3.7-n1", "THM", "osp(V1) ⊗ Λ(1) ⋉ T^{1/2}(vect(0|1))", "aut(ω1 ⊗ ω_1/2)",
                 "N1 ≠ 1, 2; m1 ≠ n1",
                 (_S("N1", "1|2"),), (nz, n1even, not12, ("m1 ≠ n1", lambda p: p["N1"].even != p["N1"].odd)),
                 _thm37, note="theorem reading of Table 3 row 7"),
    ]
    rows += [
        TableRow("FIND-osp22-T3R6", "FIND", "osp(2|2) ⊗ Λ(2k+1) ⋉ T^{1/2}(vect(0|2k+1))",
                 "spe(Λ(2k+3))", "V1 = Λ(2) with ω_1/2", (_I("k", 0),), (("k ≥ 0", lambda p: p["k"] >= 0),),
                 _osp22_t3, "NotMaximal", "T^{1/2}(vect(0|2k+3))", _osp22_t3_k,
                 note="osp(2|2) on 2|2 is T^{1/2}(vect(0|2)) on Λ(2), so the current algebra "
                      "sits inside T^{1/2}(vect(0|2k+3))"),
        TableRow("FIND-osp22-T2R6", "FIND", "pe(n) ⊙ osp(2|2)", "spe(4n)", "n > 2, V2 = Λ(2) with ω_1/2",
                 (_I("n", 3),), (("n > 2", lambda p: p["n"] > 2),),
                 _osp22_t2, "NotMaximal", "pe(n) ⊗ Λ(2) ⋉ T^{1/2}(vect(0|2))", _osp22_t2_k),
    ]
    rows += [
        TableRow("DYN1", "DYN", "sl(V1) ⊕ sl(V2)", "sl(V1 ⊗ V2)", "dim V2 ≥ dim V1 ≥ 2",
                 (_I("d1", 2), _I("d2", 2)), (("dim V2 ≥ dim V1 ≥ 2", lambda p: p["d2"] >= p["d1"] >= 2),),
                 lambda p: _dyn(p, 1)),
        TableRow("DYN2", "DYN", "sp(V1) ⊕ o(V2)", "sp(V1 ⊗ V2)",
                 "dim V1 ≥ 2, dim V2 ≥ 3, dim V2 ≠ 4 or dim V1 = 2 and dim V2 = 4",
                 (_I("d1", 2), _I("d2", 3)),
                 (("dim V1 even", lambda p: p["d1"] % 2 == 0),
                  ("dim V1 ≥ 2, dim V2 ≥ 3", lambda p: p["d1"] >= 2 and p["d2"] >= 3),
                  ("dim V2 ≠ 4 or dim V1 = 2 and dim V2 = 4", lambda p: p["d2"] != 4 or p["d1"] == 2)),
                 lambda p: _dyn(p, 2)),
        TableRow("DYN3", "DYN", "sp(V1) ⊕ sp(V2)", "o(V1 ⊗ V2)", "dim V2 ≥ dim V1 ≥ 2 except dim V1 = dim V2 = 2",
                 (_I("d1", 2), _I("d2", 4)),
                 (("dim V_i even", lambda p: p["d1"] % 2 == 0 and p["d2"] % 2 == 0),
                  ("dim V2 ≥ dim V1 ≥ 2", lambda p: p["d2"] >= p["d1"] >= 2),
                  ("except dim V1 = dim V2 = 2", lambda p: (p["d1"], p["d2"]) != (2, 2))),
                 lambda p: _dyn(p, 3)),
        TableRow("DYN4", "DYN", "o(V1) ⊕ o(V2)", "o(V1 ⊗ V2)", "dim V2 ≥ dim V1 ≥ 3 and dim V1, dim V2 ≠ 4",
                 (_I("d1", 3), _I("d2", 3)),
                 (("dim V2 ≥ dim V1 ≥ 3", lambda p: p["d2"] >= p["d1"] >= 3),
                  ("dim V1, dim V2 ≠ 4", lambda p: 4 not in (p["d1"], p["d2"]))),
                 lambda p: _dyn(p, 4)),
    ]
    return rows


SECTIONS = (("T1", "Table 1: g1 ⊙ g2 in gl, sl, q, sq"),
            ("T2", "Table 2: aut(ω1) ⊙ aut(ω2) in form-preserving algebras"),
            ("T3", "Table 3: current algebras and Heisenberg normalizers"),
            ("EXC", "Exceptional cases"),
            ("THM", "Theorem and lemma instances"),
            ("FIND", "Chains found by the engine (not listed as exceptions)"),
            ("DYN", "Dynkin rows (purely even)"))


def get_row(row_id: str) -> TableRow:
    for r in registry():
        if r.id == row_id:
            return r
    raise KeyError(f"unknown row {row_id!r}")


def instantiate_row(row_id: str, params=None) -> tuple:
    """(h, g) for a row, after the admissibility check."""
    row = get_row(row_id)
    p = row.parse_params(params)
    row.check(p)
    h, g = row.builder(p)
    return h, g


def verify_row(row_id: str, params=None, mode: str = "certify", trials: int = 8,
               seed: int = 0) -> MaximalityReport:
    row = get_row(row_id)
    p = row.parse_params(params)
    row.check(p)
    if row.exceptional:
        rep = verify_exceptional(row_id, p)
    else:
        h, g = row.builder(p)
        rep = verify_maximal(h, g, mode, trials, seed, row_id, p)
        if row.witness_name and rep.status == "NotMaximal":
            rep.witness_name = row.witness_name
    rep.expected = row.expected
    return rep


def verify_exceptional(row_id: str, params=None) -> MaximalityReport:
    """Check the stated inclusion (or equality) exactly; the named intermediate
    subalgebra then shows the smaller algebra is not maximal in the ambient."""
    row = get_row(row_id)
    if not row.exceptional:
        raise ValueError(f"{row_id} is not an exceptional row")
    p = row.parse_params(params) if not isinstance(params, dict) or any(isinstance(v, str) for v in params.values()) \
        else {**row.defaults(), **params}
    t0 = time.perf_counter()
    h, g = row.builder(p)
    rep = MaximalityReport(row_id, p, "Inconclusive", str(g.carrier), h.sdim, g.sdim, "exceptional",
                           expected=row.expected, witness_name=row.witness_name)
    if row.relation == "equal":
        if h.space == g.space and h.is_closed():
            rep.status = "NotMaximal"
            rep.detail = f"{row.h_text} coincides with {row.g_text}: not a proper subalgebra"
        else:
            rep.detail = "stated equality fails"
    else:
        k = row.witness_builder(p)
        if k.carrier != g.carrier:
            rep.detail = "witness carrier differs from the ambient carrier"
        else:
            ok_h = h.space.issubspace(k.space)
            ok_g = k.space.issubspace(g.space)
            rep.closures.append({"h_in_k": ok_h, "k_in_g": ok_g, "k_dim": list(k.sdim)})
            if ok_h and ok_g and h.dim < k.dim < g.dim and k.is_closed() and h.is_closed():
                rep.status = "NotMaximal"
                rep.witness = k.space
                rep.witnesses = [k.space]
                rep.detail = (f"{row.h_text} ⊊ {row.witness_name} ⊊ {row.g_text}: "
                              f"dims {h.dim} < {k.dim} < {g.dim}")
            else:
                rep.detail = f"stated chain fails (h ⊆ k: {ok_h}, k ⊆ g: {ok_g}, dims {h.dim}, {k.dim}, {g.dim})"
    rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rep


def markdown_summary(reports: list) -> str:
    lines = ["| row | params | status | expected | h | g | minimal submodules | ms |",
             "|---|---|---|---|---|---|---|---|"]
    for r in sorted(reports, key=lambda r: r.row):
        ps = ", ".join(f"{k}={v}" for k, v in sorted(r.params.items())).replace("|", "\\|") or "-"
        subs = " ".join(f"{a}\\|{b}" for a, b in r.minimal_submodules) or "-"
        lines.append(f"| {r.row} | {ps} | {r.status} | {r.expected or '-'} | "
                     f"{r.h_sdim[0]}\\|{r.h_sdim[1]} | {r.g_sdim[0]}\\|{r.g_sdim[1]} | {subs} | {r.elapsed_ms} |")
    return "\n".join(lines) + "\n"
