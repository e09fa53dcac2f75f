import json

import pytest
from gmpy2 import mpq

from supermax.algebras import gl, sl
from supermax.constructions import odot_G
from supermax.linalg import Subspace
from supermax.maxcheck import (AdmissibilityError, WitnessError, _check_witness, get_row, instantiate_row,
                               markdown_summary, registry, replay_certificate, verify_maximal, verify_row)

ROWS = [r.id for r in registry()]


def test_registry_counts():
    tables = [r.table for r in registry()]
    assert (tables.count("T1"), tables.count("T2"), tables.count("T3")) == (6, 9, 11)
    assert len(set(ROWS)) == len(ROWS)


@pytest.mark.parametrize("row_id", ROWS)
def test_row_at_defaults_matches_expected(row_id):
    rep = verify_row(row_id)
    assert rep.status != "Inconclusive", rep.detail
    assert rep.matches_expected(), f"{row_id}: got {rep.status}, expected {rep.expected}; {rep.detail}"


@pytest.mark.parametrize("row_id", [r for r in ROWS if not get_row(r).exceptional])
def test_row_instances_are_subalgebras(row_id):
    h, g = instantiate_row(row_id)
    assert h.is_closed() and g.is_closed()
    assert h.space.issubspace(g.space)


@pytest.mark.parametrize("row_id,params,clause", [
    ("T3R10", "n=3", "n ≠ 3"),
    ("T1R1", "N1=1|1", "N_i ≠ 1 + ε"),
    ("T2R2", "n=4", "n ≠ 4"),
    ("DYN3", "d1=2,d2=2", None),
])
def test_admissibility(row_id, params, clause):
    with pytest.raises(AdmissibilityError) as exc:
        verify_row(row_id, params)
    if clause:
        assert clause in exc.value.clause


def test_unknown_parameter():
    with pytest.raises(AdmissibilityError):
        verify_row("T1R1", "bogus=3")


def test_evidence_mode_agrees():
    h, g = instantiate_row("T1R4")
    rep = verify_maximal(h, g, mode="evidence", trials=4, seed=3)
    assert rep.status == "EvidenceMaximal"
    h2, g2 = odot_G(gl(1, 1), gl(1, 1)), sl(2, 2)
    assert verify_maximal(h2, g2, mode="evidence", trials=4).status == "NotMaximal"


def test_certificate_replays():
    h, g = instantiate_row("T1R1")
    rep = verify_maximal(h, g)
    assert rep.status == "CertifiedMaximal"
    assert replay_certificate(h, g, rep)


def test_witness_is_a_proper_intermediate_subalgebra():
    h, g = odot_G(gl(1, 1), gl(1, 1)), sl(2, 2)
    rep = verify_maximal(h, g)
    assert rep.status == "NotMaximal"
    k = rep.witness
    assert h.space.issubspace(k) and k.issubspace(g.space) and h.dim < k.dim < g.dim


def test_bogus_witness_is_rejected():
    h, g = odot_G(gl(1, 1), gl(1, 1)), sl(2, 2)
    with pytest.raises(WitnessError):
        _check_witness(Subspace(16, [{1: mpq(1)}]), h, g)


def test_precondition_failure():
    rep = verify_maximal(sl(2, 1), gl(2, 1).renamed("g"))
    assert rep.status in ("NotMaximal", "CertifiedMaximal")
    bad = verify_maximal(gl(2, 1), sl(2, 1))
    assert bad.status == "PreconditionFailed"


def test_json_report_is_deterministic_and_sorted():
    a = verify_row("T1R1", seed=5).dumps(deterministic=True)
    b = verify_row("T1R1", seed=5).dumps(deterministic=True)
    assert a == b
    obj = json.loads(a)
    assert obj["status"] == "CertifiedMaximal" and obj["elapsed_ms"] == 0


def test_markdown_summary():
    md = markdown_summary([verify_row("T1R4")])
    assert "| T1R4 |" in md and "CertifiedMaximal" in md


def test_list_line():
    assert get_row("T3R10").line().startswith("T3R10 | hei(2n) ⋉ o(2n) in sl(Λ(n)) | n ≥ 2, n ≠ 3")
