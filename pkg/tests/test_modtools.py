import pytest
from gmpy2 import mpq

from supermax.algebras import LieSuperAlgebra, gl, q, sl, t_lambda_algebra, vect
from supermax.grassmann import lambda_dim
from supermax.linalg import Subspace
from supermax.modtools import (ModuleAction, center, derived_series, irreducibility_type, is_ideal, lie_closure,
                               minimal_submodules, module_closure, natural_action, supercentralizer)
from supermax.superlinalg import SuperDim, mat_mul


def test_natural_gl_is_irreducible_g_type():
    assert irreducibility_type(gl(2, 1)).kind == "G"


def test_natural_q_is_q_type():
    r = irreducibility_type(q(2))
    assert r.kind == "Q"
    J = r.witness.data
    assert mat_mul(J, J, 4) == {i * 4 + i: -1 for i in range(4)}


def test_vect_natural_is_reducible_with_constants():
    r = irreducibility_type(vect(2))
    assert r.kind == "Reducible"
    assert r.witness.dim < 4


def test_upper_triangular_minimal_submodule():
    # the Borel of gl(2) has exactly one minimal submodule, the first line
    b = LieSuperAlgebra("b", SuperDim(2, 0), [{0: mpq(1)}, {1: mpq(1)}, {3: mpq(1)}])
    rep = minimal_submodules(natural_action(b))
    assert [W.dim for W in rep.minimal] == [1]
    assert rep.minimal[0] == Subspace(2, [{0: mpq(1)}])


def test_module_closure_is_invariant():
    act = natural_action(sl(2, 1))
    W = module_closure(act, [{0: mpq(1)}])
    assert W.dim == 3


def test_lie_closure_generates_sl():
    d = SuperDim(1, 1)
    gens = [{1: mpq(1)}, {2: mpq(1)}]
    assert lie_closure(gens, d).dim == 3


def test_center_and_ideal():
    g = gl(1, 1)
    assert center(g).dim == 1
    assert is_ideal(sl(1, 1), g)


def test_derived_series_of_gl11_is_solvable():
    series = derived_series(gl(1, 1))
    assert series[-1].dim == 0


def test_supercentralizer_of_gl_is_scalars():
    g = gl(2, 1)
    assert supercentralizer(g.homogeneous(), g.carrier).dim == 1


def test_t_lambda_types():
    assert irreducibility_type(t_lambda_algebra(3, 0)).kind == "Reducible"
    assert irreducibility_type(t_lambda_algebra(3, "1/2")).kind == "G"
