import random

import flint
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from supermax.algebras import gl, q, sl
from supermax.constructions import (conjugate, current_semidirect, hei_normalizer, hei_normalizer_ambient,
                                    lambda_fold_perm, literal_normalizer, odot_G, odot_Q, q_tensor_splitting, relabel,
                                    theta_j)
from supermax.grassmann import lambda_dim
from supermax.maxcheck import get_row, instantiate_row, verify_maximal
from supermax.superlinalg import SuperDim, identity_raw, mat_mul


def test_odot_dimensions():
    h = odot_G(gl(2, 1), gl(2, 1))
    assert h.carrier == SuperDim(5, 4)
    assert h.dim == 9 + 9 - 1
    assert h.is_closed()


def test_odot_q_equals_sl11():
    assert odot_Q(q(1), q(1)).space == sl(1, 1).space


def test_current_dimension():
    a = current_semidirect(gl(1, 0), 2)
    assert a.dim == 4 + 8 and a.is_closed()


def test_lambda_fold_is_a_permutation():
    perm = lambda_fold_perm(SuperDim(1, 1), 1, 2)
    assert sorted(perm) == list(range(16))


def test_theta_j_squares_to_minus_one():
    for m in (3, 5):
        J = theta_j(m)
        N = lambda_dim(m // 2 + 1).total
        assert mat_mul(J, J, N) == {k: -v for k, v in identity_raw(N).items()}


def test_hei_normalizer_m4():
    from supermax.algebras import hei_rep
    assert literal_normalizer(hei_rep(4)) == hei_normalizer(4).space
    assert hei_normalizer(4).issubalgebra_of(hei_normalizer_ambient(4))


def _even_invertible(rng, d):
    while True:
        blocks = []
        for k in (d.even, d.odd):
            M = flint.fmpq_mat(k, k, [rng.randint(-2, 2) for _ in range(k * k)]) if k else None
            if k and M.det() == 0:
                break
            blocks.append(M)
        else:
            break
    N = d.total
    P, Pinv = {}, {}
    off = 0
    for M, k in zip(blocks, (d.even, d.odd)):
        if not k:
            continue
        Mi = M.inv()
        for i in range(k):
            for j in range(k):
                a, b = M[i, j], Mi[i, j]
                if a != 0:
                    P[(off + i) * N + off + j] = mpq(int(a.p), int(a.q))
                if b != 0:
                    Pinv[(off + i) * N + off + j] = mpq(int(b.p), int(b.q))
        off += k
    return P, Pinv


def _signature(rep):
    return rep.status, sorted(tuple(x) for x in rep.minimal_submodules), len(rep.witnesses)


@pytest.mark.parametrize("row,params", [("T1R4", None), ("T3R3", None), ("T1R2", "N1=1|1,N2=1|1")])
@settings(max_examples=4)
@given(seed=st.integers(0, 10 ** 6))
def test_verdict_invariant_under_even_basis_change(row, params, seed):
    r = get_row(row)
    h, g = r.builder(r.parse_params(params))
    P, Pinv = _even_invertible(random.Random(seed), g.carrier)
    assert mat_mul(P, Pinv, g.N) == identity_raw(g.N)
    base = verify_maximal(h, g)
    moved = verify_maximal(conjugate(h, P, Pinv), conjugate(g, P, Pinv))
    assert _signature(base) == _signature(moved)


@pytest.mark.parametrize("n1,n2", [(1, 1), (1, 2), (2, 2)])
def test_plain_tensor_of_queer_modules_splits(n1, n2):
    r = q_tensor_splitting(n1, n2)
    assert r["split"], r
