from __future__ import annotations

import pytest

from thetarcc import catalog, gf2
from thetarcc.diagram import Crossing, Diagram
from thetarcc.engine import ineffective_family, region_choice_matrix, solve_target
from thetarcc.oracle import (
    MAX_REGIONS,
    OracleGuard,
    brute_force_solutions,
    cross_check,
    cross_check_all,
    subsets_examined,
)

REFERENCE_C1 = {
    frozenset(s) for s in (
        {"R1"}, {"R5", "R6"}, {"R1", "R2", "R4", "R6"}, {"R2", "R4", "R5"},
        {"R1", "R3", "R6"}, {"R3", "R5"}, {"R1", "R2", "R3", "R4"}, {"R2", "R3", "R4", "R5", "R6"},
    )
}


def test_oracle_reference_example(t31):
    assert set(brute_force_solutions(t31, ["c1"])) == REFERENCE_C1


def test_oracle_empty_target_is_ineffective_family(t31):
    assert brute_force_solutions(t31, []) == ineffective_family(t31)


def test_oracle_trefoil_counts(trefoil):
    assert subsets_examined(trefoil) == 32
    for c in trefoil.crossings:
        assert len(brute_force_solutions(trefoil, [c.label])) == 4


@pytest.mark.parametrize("id", ["theta_t31", "trefoil", "fig8", "handcuff_cut", "handcuff_hopf", "kink"])
def test_cross_check_all_targets(id):
    D = catalog.load(id)
    reports = cross_check_all(D)
    assert len(reports) == 2 ** D.n
    assert all(r.agreement for r in reports)
    assert all(r.examined == 2 ** len(D.region_labels()) for r in reports)


def test_unrealizable_agreement():
    D = catalog.load("handcuff_cut")
    rep = cross_check(D, ["c1"])
    assert rep.oracle == () and rep.solver == ()
    assert rep.agreement


def test_family_size_matches_nullity():
    for id in catalog.ids():
        D = catalog.load(id)
        M = region_choice_matrix(D)
        nullity = M.shape[1] - gf2.rank(M.matrix)
        for r in cross_check_all(D):
            if r.oracle:
                assert len(r.oracle) == 2 ** nullity


def test_agreement_detects_difference(t31):
    rep = cross_check(t31, ["c1"])
    tampered = type(rep)(rep.diagram, rep.target, rep.examined, rep.oracle, rep.solver[1:])
    assert rep.agreement and not tampered.agreement


def test_report_json(t31):
    data = cross_check(t31, ["c1"]).to_json()
    assert data["schema"] == 1
    assert data["agreement"] is True
    assert len(data["matching"]) == 8
    assert data["examined"] == 64


def test_guard():
    # a chain of kinks with more than MAX_REGIONS regions
    k = MAX_REGIONS
    crossings = tuple(Crossing(f"c{i}", (f"a{i}", f"l{i}", f"l{i}", f"a{(i + 1) % k}")) for i in range(k))
    D = Diagram(crossings)
    assert len(D.region_labels()) > MAX_REGIONS
    with pytest.raises(OracleGuard):
        brute_force_solutions(D, [])
    solve_target(D, [], cap=1 << 30)
