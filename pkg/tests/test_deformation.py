from fractions import Fraction

import pytest

from nijconf.deformation import (
    DeformationSeries,
    check_order,
    infinitesimal_cocycle,
    obstruction,
    operator_coboundary,
    verify_equivalence_order1,
)
from nijconf.lca import ConfLinMap
from nijconf.poly import Poly


def test_zero_series_is_a_deformation(sl2_p):
    m = sl2_p.algebra.module
    series = DeformationSeries(sl2_p, [ConfLinMap.zero(m, m)])
    assert check_order(series).passed


def test_scaled_projection_extends_the_operator(sl2_p, proj_p):
    # N_t = (1 + t)P stays Nijenhuis for an idempotent P
    series = DeformationSeries(sl2_p, [proj_p])
    assert check_order(series).passed
    assert infinitesimal_cocycle(series).passed
    ob, report = obstruction(series)
    assert report.status_of("cocycle") == "pass"
    assert report.status_of("extensibility").startswith("extensible@")


def test_identity_deformation_of_rank_one(vir_id):
    m = vir_id.algebra.module
    series = DeformationSeries(vir_id, [ConfLinMap.identity(m)])
    assert check_order(series).passed
    assert infinitesimal_cocycle(series).passed
    ob, report = obstruction(series)
    assert ob.is_zero()
    assert report.status_of("cocycle") == "pass"
    assert report.status_of("extensibility").startswith("extensible@")


def test_coboundary_term_is_a_cocycle(sl2_p):
    m = sl2_p.algebra.module
    d_e = operator_coboundary(sl2_p, m.basis_elem(0))
    series = DeformationSeries(sl2_p, [d_e])
    assert infinitesimal_cocycle(series).passed


def test_non_cocycle_term_is_rejected(sl2_p):
    m = sl2_p.algebra.module
    swap = ConfLinMap(m, m, [[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    series = DeformationSeries(sl2_p, [swap])
    report = infinitesimal_cocycle(series)
    assert not report.passed


def test_order1_equivalence_via_coboundary(sl2_p):
    m = sl2_p.algebra.module
    n1 = operator_coboundary(sl2_p, m.basis_elem(0))
    shift = m.basis_elem(1)
    a = DeformationSeries(sl2_p, [n1])
    b = DeformationSeries(sl2_p, [n1 - operator_coboundary(sl2_p, shift)])
    assert verify_equivalence_order1(a, b, shift).passed
    # the wrong comparison element leaves a residual
    assert not verify_equivalence_order1(a, b, m.basis_elem(0)).passed


def test_obstruction_vanishing_is_exact(sl2_p, proj_p):
    series = DeformationSeries(sl2_p, [proj_p])
    ob, report = obstruction(series)
    # d_N(Ob) = 0 holds identically, not only modulo the degree bound
    assert report.status_of("cocycle") == "pass"
