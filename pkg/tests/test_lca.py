from fractions import Fraction

import pytest

from nijconf.errors import ModuleMismatchError
from nijconf.lca import (
    LCA,
    ConfLinMap,
    FreeModule,
    RepTable,
    check_lca,
    check_morphism,
    check_representation,
    eval_bracket,
    semidirect,
)
from nijconf.poly import Poly

from conftest import DEL, LAM, make_vir


def test_virasoro_type_axioms(vir):
    report = check_lca(vir)
    assert report.passed
    assert report.status_of("skew") == "pass"
    assert report.status_of("jacobi") == "pass"


def test_mutated_coefficient_fails_jacobi():
    bad = make_vir()
    bad.set_bracket(0, 0, [DEL + LAM.scale(3)])
    report = check_lca(bad)
    assert not report.passed
    assert report.status_of("jacobi") == "fail"
    assert "residual=" in report.witness_of("jacobi")
    # (del + 3 lam)L is not skew either
    assert report.status_of("skew") == "fail"


def test_current_algebra_axioms(sl2):
    assert check_lca(sl2).passed


def test_m_delta_representation(vir):
    mm = FreeModule(["m"])
    rep = RepTable(vir, mm)
    rep.set_action(0, 0, [DEL + LAM.scale(2)])
    assert check_representation(rep).passed


def test_broken_representation_detected(vir):
    mm = FreeModule(["m"])
    rep = RepTable(vir, mm)
    # rho(L)_lam m = lam^2 m does not respect the commutator
    rep.set_action(0, 0, [LAM ** 2])
    assert not check_representation(rep).passed


def test_semidirect_product_is_an_algebra(vir):
    mm = FreeModule(["m"])
    rep = RepTable(vir, mm)
    rep.set_action(0, 0, [DEL + LAM.scale(2)])
    big = semidirect(rep)
    assert big.module.rank == 2
    assert check_lca(big).passed


def test_morphism_check(sl2):
    m = sl2.module
    ident = ConfLinMap.identity(m)
    assert check_morphism(sl2, sl2, ident).passed
    bad = ConfLinMap.scalar(m, 2)
    report = check_morphism(sl2, sl2, bad)
    assert not report.passed


def test_inner_automorphism_of_current_algebra(sl2):
    # conjugation by the torus rescales the root vectors e -> 2e, f -> f/2
    m = sl2.module
    beta = ConfLinMap.diagonal(m, [2, 1, Fraction(1, 2)])
    assert check_morphism(sl2, sl2, beta).passed


def test_conf_lin_map_algebra(sl2):
    m = sl2.module
    a = ConfLinMap.diagonal(m, [1, 2, 3])
    b = ConfLinMap.diagonal(m, [2, 2, 2])
    assert a.compose(b) == b.compose(a)
    assert a.power(2) == a.compose(a)
    assert (a + b) - b == a
    with pytest.raises(ModuleMismatchError):
        ConfLinMap(m, m, [[Poly.lam(1, 1)] * 3] * 3)


def test_eval_bracket_matches_table(sl2):
    m = sl2.module
    e, f = m.basis_elem(0), m.basis_elem(2)
    val = eval_bracket(sl2, e, f)
    assert val.coords[1] == Poly.one(1)
    assert val.coords[0].is_zero() and val.coords[2].is_zero()


def test_evaluation_module_reduces_del(central_line):
    # del acts by 0, so a del coefficient annihilates the generator
    elem = central_line.basis_elem(0).mul_poly(Poly.del_(0))
    assert elem.is_zero()
