from random import Random

import pytest

from nijconf.cohomology import Cochain, apply_delta, cochain_space, random_cochain
from nijconf.homotopy import (
    CrossedModule,
    HomotopyNijenhuis,
    TwoTermConformal,
    check_2term,
    check_crossed_module,
    check_homotopy_nijenhuis,
    classify,
    crossed_direct_sum,
    crossed_to_strict,
    skeletal_to_cocycle,
    strict_crossed_roundtrip,
)
from nijconf.lca import ConfLinMap, Elem, FreeModule, RepTable, StructureTable
from nijconf.nijenhuis import check_nijenhuis
from nijconf.poly import Poly


@pytest.fixture(scope="module")
def adjoint_crossed(sl2, sl2_p):
    ad = RepTable(sl2, sl2.module, sl2.table)
    return CrossedModule(sl2_p, sl2_p, ConfLinMap.identity(sl2.module), ad)


def test_adjoint_crossed_module(adjoint_crossed):
    assert check_crossed_module(adjoint_crossed).passed


def test_strict_round_trip_is_exact(adjoint_crossed):
    assert strict_crossed_roundtrip(adjoint_crossed).passed


def test_crossed_direct_sum_is_nijenhuis(adjoint_crossed):
    ds = crossed_direct_sum(adjoint_crossed)
    assert ds.algebra.module.rank == 6
    assert check_nijenhuis(ds.algebra, ds.n).passed


def test_strict_structure_satisfies_all_laws(adjoint_crossed):
    structure, operator = crossed_to_strict(adjoint_crossed)
    assert check_2term(structure).passed
    assert check_homotopy_nijenhuis(structure, operator).passed
    assert classify(structure, operator) == "strict"


def test_scaled_boundary_breaks_peiffer(sl2, sl2_p):
    ad = RepTable(sl2, sl2.module, sl2.table)
    bad = CrossedModule(
        sl2_p, sl2_p, ConfLinMap.identity(sl2.module).scale(2), ad
    )
    assert not check_crossed_module(bad).passed


def _skeletal(vir, central_line, l3=None):
    vm = vir.module
    return TwoTermConformal(
        vir,
        central_line,
        ConfLinMap.zero(central_line, vm),
        StructureTable(1, 1, 1),
        l3=l3,
    )


def test_trivial_skeletal_structure(vir, central_line):
    structure = _skeletal(vir, central_line)
    operator = HomotopyNijenhuis(
        structure,
        ConfLinMap.identity(vir.module),
        ConfLinMap.identity(central_line),
    )
    assert check_2term(structure).passed
    assert check_homotopy_nijenhuis(structure, operator).passed
    pair, report = skeletal_to_cocycle(structure, operator)
    assert report.passed


def test_skeletal_with_closed_jacobiator(vir, central_line):
    rep = RepTable(vir, central_line)
    basis = cochain_space(rep, 3, 4)
    closed = [f for f in basis if apply_delta(f).is_zero() and not f.is_zero()]
    assert closed, "expected a non-trivial closed 3-cochain in the slice"
    structure = _skeletal(vir, central_line, l3=closed[0])
    operator = HomotopyNijenhuis(
        structure,
        ConfLinMap.identity(vir.module),
        ConfLinMap.identity(central_line),
    )
    assert check_2term(structure).passed
    assert check_homotopy_nijenhuis(structure, operator).passed
    assert classify(structure, operator) == "skeletal"
    pair, report = skeletal_to_cocycle(structure, operator)
    assert report.passed


def test_coboundary_jacobiator_passes(vir, central_line):
    rng = Random(7)
    rep = RepTable(vir, central_line)
    g = random_cochain(rep, 2, rng, max_degree=3)
    structure = _skeletal(vir, central_line, l3=apply_delta(g))
    assert check_2term(structure).passed


def test_non_closed_jacobiator_fails_the_last_law(vir, central_line):
    rng = Random(7)
    rep = RepTable(vir, central_line)
    g = random_cochain(rep, 2, rng, max_degree=3)
    l3 = apply_delta(g)
    bad = Cochain(3, rep)
    bad.set_value(
        (0, 0, 0),
        l3.value((0, 0, 0))
        + Elem(central_line, [Poly(2, {(0, 1, 0): 1})]),
    )
    structure = _skeletal(vir, central_line, l3=bad)
    report = check_2term(structure)
    assert not report.passed
