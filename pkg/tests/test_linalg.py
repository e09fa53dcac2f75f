from gmpy2 import mpq
from hypothesis import given, strategies as st

from supermax.linalg import Subspace, intersect, nullspace, solve_particular, sum_spaces

from oracles import rank, span_rank

N = 6
entry = st.integers(-3, 3)
vec = st.dictionaries(st.integers(0, N - 1), entry.filter(bool).map(mpq), max_size=N)
vecs = st.lists(vec, max_size=5)


@given(vecs)
def test_dim_matches_rank_oracle(vs):
    assert Subspace(N, vs).dim == span_rank(vs, N)


@given(vecs, vecs)
def test_grassmann_formula(a, b):
    S, T = Subspace(N, a), Subspace(N, b)
    assert sum_spaces(S, T).dim + intersect(S, T).dim == S.dim + T.dim
    assert intersect(S, T).issubspace(S) and intersect(S, T).issubspace(T)


@given(vecs)
def test_membership(vs):
    S = Subspace(N, vs)
    for v in vs:
        assert S.contains(v)
    total = {}
    for v in vs:
        for k, x in v.items():
            total[k] = total.get(k, 0) + 2 * x
    assert S.contains({k: x for k, x in total.items() if x})


@given(vecs)
def test_nullspace(eqs):
    sols = nullspace(eqs, N)
    assert len(sols) == N - span_rank(eqs, N)
    for s in sols:
        for e in eqs:
            assert sum(e.get(k, 0) * x for k, x in s.items()) == 0


@given(vecs, vec)
def test_solve_particular(cols, target):
    sol = solve_particular(cols, target)
    inside = Subspace(N, cols).contains(target)
    assert (sol is not None) == inside
    if sol is not None:
        got = {}
        for i, c in sol.items():
            for k, x in cols[i].items():
                got[k] = got.get(k, 0) + c * x
        assert {k: x for k, x in got.items() if x} == {k: x for k, x in target.items() if x}


def test_equality_is_basis_independent():
    a = Subspace(3, [{0: mpq(1), 1: mpq(1)}, {1: mpq(1)}])
    b = Subspace(3, [{0: mpq(1)}, {0: mpq(2), 1: mpq(3)}])
    assert a == b and a.dim == rank([[1, 1, 0], [0, 1, 0]])
