import random

from gmpy2 import mpq
from hypothesis import given, strategies as st

from supermax.superlinalg import (SuperDim, bracket_h, bracket_raw, kron_raw, mat_mul, pi_perm, conj_perm_raw,
                                  split_parity, str_raw, supertrace, SuperMatrix)

from oracles import matmul, supertrace as str_oracle, to_matrix

dims = st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda t: sum(t) > 0).map(lambda t: SuperDim(*t))


def rand_homog(rng, d, p):
    N = d.total
    par = d.parities
    return {r * N + c: mpq(rng.randint(-2, 2)) for r in range(N) for c in range(N)
            if par[r] ^ par[c] == p and rng.random() < 0.7 and rng.randint(0, 1)}


@given(dims, st.integers(0, 10 ** 6))
def test_mat_mul_matches_dense(d, seed):
    rng = random.Random(seed)
    x, y = rand_homog(rng, d, 0), rand_homog(rng, d, 1)
    N = d.total
    assert to_matrix(mat_mul(x, y, N), N) == matmul(to_matrix(x, N), to_matrix(y, N))


@given(dims, st.integers(0, 10 ** 6))
def test_supertrace_oracle_and_bracket(d, seed):
    rng = random.Random(seed)
    N = d.total
    x = {**rand_homog(rng, d, 0), **rand_homog(rng, d, 1)}
    y = {**rand_homog(rng, d, 0), **rand_homog(rng, d, 1)}
    assert str_raw(x, d) == str_oracle(to_matrix(x, N), d.even)
    assert str_raw(bracket_raw(x, y, d), d) == 0


@given(dims, dims, st.integers(0, 10 ** 6))
def test_kron_is_multiplicative_with_sign(d1, d2, seed):
    rng = random.Random(seed)
    pa, pb, pc, pd = (rng.randint(0, 1) for _ in range(4))
    A, C = rand_homog(rng, d1, pa), rand_homog(rng, d1, pc)
    B, D = rand_homog(rng, d2, pb), rand_homog(rng, d2, pd)
    N = d1.total * d2.total
    lhs = mat_mul(kron_raw(A, d1, B, d2), kron_raw(C, d1, D, d2), N)
    rhs = kron_raw(mat_mul(A, C, d1.total), d1, mat_mul(B, D, d2.total), d2)
    if pb & pc:
        rhs = {k: -v for k, v in rhs.items()}
    assert lhs == rhs


@given(dims, dims, st.integers(0, 10 ** 6))
def test_supertrace_of_kron(d1, d2, seed):
    rng = random.Random(seed)
    A, B = rand_homog(rng, d1, 0), rand_homog(rng, d2, 0)
    assert str_raw(kron_raw(A, d1, B, d2), d1.tensor(d2)) == str_raw(A, d1) * str_raw(B, d2)


@given(dims, st.integers(0, 10 ** 6))
def test_bracket_raw_agrees_with_homogeneous(d, seed):
    rng = random.Random(seed)
    px, py = rng.randint(0, 1), rng.randint(0, 1)
    x, y = rand_homog(rng, d, px), rand_homog(rng, d, py)
    assert bracket_raw(x, y, d) == bracket_h(x, px, y, py, d.total)


@given(dims, st.integers(0, 10 ** 6))
def test_pi_shift_flips_parity_of_supertrace(d, seed):
    rng = random.Random(seed)
    x = rand_homog(rng, d, 0)
    y = conj_perm_raw(x, pi_perm(d))
    assert str_raw(y, d.shifted()) == -str_raw(x, d)


def test_split_parity_and_matrix():
    d = SuperDim(1, 1)
    x = {0: mpq(1), 1: mpq(2), 2: mpq(3), 3: mpq(4)}
    e, o = split_parity(x, d)
    assert e == {0: 1, 3: 4} and o == {1: 2, 2: 3}
    assert supertrace(SuperMatrix(d, data=x)) == -3
