import pytest

from supermax.algebras import (by_name, gl, hei_rep, o_spinor, osp, pe, pe_lambda, q, sl, spe, sq, vect,
                               t_lambda_algebra, aut_of_form, sym_of_form)
from supermax.forms import DegenerateForm, GramForm, standard_even_form, standard_odd_form, tensor_form
from supermax.superlinalg import SuperDim, str_raw

from oracles import dim_gl, dim_o, dim_osp, dim_pe, dim_q, dim_sl, dim_spe, dim_sq, dim_vect


@pytest.mark.parametrize("m,n", [(1, 0), (1, 1), (2, 1), (2, 2), (3, 1)])
def test_gl_sl_dimensions(m, n):
    assert gl(m, n).sdim == dim_gl(m, n)
    assert sl(m, n).sdim == dim_sl(m, n)
    assert sl(m, n).is_closed()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_queer_dimensions(n):
    assert q(n).sdim == dim_q(n) and q(n).is_closed()
    assert sq(n).sdim == dim_sq(n) and sq(n).is_closed()


@pytest.mark.parametrize("m,n2", [(1, 2), (2, 2), (3, 0), (3, 2), (1, 4)])
def test_osp_dimensions(m, n2):
    a = osp(m, n2)
    assert a.sdim == dim_osp(m, n2) and a.is_closed()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_periplectic_dimensions(n):
    assert pe(n).sdim == dim_pe(n)
    assert spe(n).sdim == dim_spe(n)
    assert pe(n).is_closed() and spe(n).is_closed()


def test_pe_lambda_is_closed_and_twisted():
    a = pe_lambda(3, "1/2")
    assert a.sdim == dim_pe(3) and a.is_closed()
    assert any(str_raw(v, a.carrier) for v in a.basis_raw)


def test_vect_and_t_lambda():
    for n in (1, 2, 3):
        assert vect(n).sdim == dim_vect(n)
        assert t_lambda_algebra(n, "1/2").is_closed()


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_spinor_algebras(m):
    h = hei_rep(m)
    assert h.dim == m + 1 and h.is_closed()
    assert o_spinor(m).dim == dim_o(m)


def test_form_validation():
    with pytest.raises(DegenerateForm):
        GramForm.from_matrix(SuperDim(2, 0), [[1, 1], [1, 1]])
    assert standard_odd_form(2).parity == 1
    assert tensor_form(standard_odd_form(1), standard_odd_form(1)).parity == 0


def test_aut_sym_complementary():
    G = standard_even_form(2, 2)
    a, s = aut_of_form(G).space, sym_of_form(G)
    assert a.dim + s.dim == 16 and (a & s).dim == 0


@pytest.mark.parametrize("name,sdim", [("gl(2|1)", (5, 4)), ("q(2)", (4, 4)), ("pe(3)", (9, 9)),
                                       ("osp(1|2)", (3, 2)), ("T(1/2;2)", (4, 4)), ("as", (16, 16))])
def test_by_name(name, sdim):
    assert by_name(name).sdim == sdim


def test_by_name_unknown():
    with pytest.raises(KeyError):
        by_name("e8(1)")
