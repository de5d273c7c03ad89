from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetarcc import catalog, gf2
from thetarcc.diagram import DiagramError
from thetarcc.engine import (
    Unrealizable,
    all_pullbacks,
    apply_rcc,
    changed_crossings,
    checkerboard_pullback,
    f_labeling,
    independence_check,
    ineffective_family,
    lemma_report,
    region_choice_matrix,
    solve_target,
    verify_symdiff_lemma,
)
from thetarcc.moves import apply_reidemeister
from thetarcc.oracle import brute_force_solutions

# reference example: region sets changing only c1
REFERENCE_C1 = [
    {"R1"}, {"R5", "R6"}, {"R1", "R2", "R4", "R6"}, {"R2", "R4", "R5"},
    {"R1", "R3", "R6"}, {"R3", "R5"}, {"R1", "R2", "R3", "R4"}, {"R2", "R3", "R4", "R5", "R6"},
]
REFERENCE_ROWS = {"c1": {"R1", "R3", "R4", "R6"}, "c2": {"R2", "R3", "R5", "R6"}, "c3": {"R3", "R4", "R5", "R6"}}


def fam(F):
    return {frozenset(S) for S in F}


def test_matrix_rows(t31):
    M = region_choice_matrix(t31)
    assert M.shape == (3, 6)
    for i, c in enumerate(M.crossings):
        assert {M.regions[j] for j in M.matrix.row(i).support()} == REFERENCE_ROWS[c]
    assert M.to_text() == "101101\n011011\n001111\n"


def test_matrix_kink():
    M = region_choice_matrix(catalog.load("kink"))
    assert M.shape == (1, 3)
    assert M.matrix.row(0).weight() <= 3


def test_matrix_theta_0():
    assert region_choice_matrix(catalog.load("theta_0")).shape == (0, 3)


@pytest.mark.parametrize("id", catalog.ids())
def test_row_weight_at_most_four(id):
    M = region_choice_matrix(catalog.load(id))
    assert all(M.matrix.row(i).weight() <= 4 for i in range(M.shape[0]))


def test_apply_empty(t31):
    assert apply_rcc(t31, []) == t31


@pytest.mark.parametrize("S", [{"R1"}, {"R3", "R5"}])
def test_apply_reference_sets(t31, S):
    assert changed_crossings(t31, apply_rcc(t31, S)) == {"c1"}


def test_apply_unknown_region(t31):
    with pytest.raises(DiagramError):
        apply_rcc(t31, ["R9"])


def test_solve_reference_example(t31):
    assert fam(solve_target(t31, ["c1"])) == fam(REFERENCE_C1)


def test_solve_canonical_order(t31):
    sols = solve_target(t31, ["c1"])
    sizes = [len(S) for S in sols]
    assert sizes == sorted(sizes)
    assert sols[0] == {"R1"}


def test_solve_trefoil_oracle(trefoil):
    for c in trefoil.crossings:
        oracle = brute_force_solutions(trefoil, [c.label])
        assert len(oracle) == 4
        assert fam(solve_target(trefoil, [c.label])) == fam(oracle)


def test_unrealizable_handcuff():
    D = catalog.load("handcuff_cut")
    with pytest.raises(Unrealizable):
        solve_target(D, ["c1"])
    assert brute_force_solutions(D, ["c1"]) == []


def test_unknown_crossing(t31):
    with pytest.raises(DiagramError):
        solve_target(t31, ["c9"])


def test_ineffective_t31(t31):
    # every difference of two solutions for the same target changes nothing
    derived = {frozenset(set(REFERENCE_C1[0]) ^ S) for S in REFERENCE_C1}
    assert fam(ineffective_family(t31)) == derived
    assert fam(ineffective_family(t31)) == fam(brute_force_solutions(t31, []))


def test_ineffective_contains_empty():
    for id in catalog.ids():
        assert frozenset() in fam(ineffective_family(catalog.load(id)))


def test_ineffective_trefoil(trefoil):
    family = fam(ineffective_family(trefoil))
    assert len(family) == 4
    everything = frozenset(trefoil.region_labels())
    assert frozenset() in family and everything in family
    B, W = sorted(family - {frozenset(), everything}, key=len)
    assert B | W == everything and not B & W


def test_ineffective_cap(t31):
    with pytest.raises(gf2.CapExceeded):
        ineffective_family(t31, cap=4)


def test_pullbacks_t31(t31):
    M = region_choice_matrix(t31)
    family = fam(ineffective_family(t31))
    for i, p in all_pullbacks(t31).items():
        assert p.black | p.white == set(t31.region_labels())
        assert not p.black & p.white
        assert t31.outer_region() in p.white
        assert M.matrix.matvec(M.region_vector(p.black)).is_zero()
        assert p.black in family


def test_pullback_zero_crossing_subknot(t31):
    # deleting e2 leaves a crossingless circle; the black side is its inside
    p = checkerboard_pullback(t31, 2)
    assert t31.outer_region() in p.white
    assert len(p.black) + len(p.white) == 6


def test_pullback_rejects_reducible():
    D = catalog.load("theta_0")
    E = apply_reidemeister(D, "R1-add", arc="a")
    with pytest.raises(DiagramError, match="reducible"):
        checkerboard_pullback(E, 1)


def test_pullback_needs_outer(t31):
    bare = type(t31)(t31.crossings, t31.vertices)
    with pytest.raises(DiagramError, match="outer"):
        checkerboard_pullback(bare, 1)


def test_pullback_needs_theta():
    with pytest.raises(DiagramError):
        checkerboard_pullback(catalog.load("trefoil"), 1)


def test_f_labeling_t31(t31):
    labels = f_labeling(t31)
    assert labels[t31.outer_region()] == 0
    assert set(labels.values()) <= {0, 2}
    for arc in t31.arcs:
        x, y = t31.arc_sides(arc)
        assert abs(labels[x] - labels[y]) in (0, 2)


def test_symdiff_t31(t31):
    checks = verify_symdiff_lemma(t31)
    assert len(checks) == 3 and all(c.passed for c in checks)


def test_symdiff_negative_control(t31):
    blacks = {i: p.black for i, p in all_pullbacks(t31).items()}
    blacks[1] = blacks[1] ^ {"R1"}
    checks = verify_symdiff_lemma(t31, blacks)
    assert not all(c.passed for c in checks)


def test_independence_t31(t31):
    assert independence_check(t31)
    parts = all_pullbacks(t31)
    M = region_choice_matrix(t31)
    vecs = [M.region_vector(parts[1].black), M.region_vector(parts[1].white), M.region_vector(parts[2].black)]
    stacked = gf2.BitMatrix(3, 6, tuple(v.bits for v in vecs))
    assert gf2.rank(stacked) == 3
    spanned = {M.regions_of(v) for v in gf2.span(vecs, 6)}
    assert spanned == fam(ineffective_family(t31))


@pytest.mark.parametrize("id", catalog.ids())
def test_lemma_report_passes(id):
    assert all(r.passed for r in lemma_report(catalog.load(id)))


def test_reduced_theta_properties():
    for D in catalog.reduced_thetas():
        M = region_choice_matrix(D)
        assert gf2.rank(M.matrix) == D.n
        family = fam(ineffective_family(D))
        everything = frozenset(D.region_labels())
        assert len(family) == 8
        assert all(S ^ T in family for S in family for T in family)
        assert all(everything - S in family for S in family)


@st.composite
def diagram_and_sets(draw):
    D = catalog.load(draw(st.sampled_from(catalog.ids())))
    labels = D.region_labels()
    S1 = draw(st.sets(st.sampled_from(labels)))
    S2 = draw(st.sets(st.sampled_from(labels)))
    return D, S1, S2


@given(diagram_and_sets())
def test_involution_and_composition(case):
    D, S1, S2 = case
    assert apply_rcc(apply_rcc(D, S1), S1) == D
    assert apply_rcc(apply_rcc(D, S1), S2) == apply_rcc(D, S1 ^ S2)


@given(diagram_and_sets())
def test_rcc_matches_matrix(case):
    D, S, _ = case
    M = region_choice_matrix(D)
    predicted = M.crossings_of(M.matrix.matvec(M.region_vector(S)))
    assert changed_crossings(D, apply_rcc(D, S)) == predicted


def test_solver_soundness_on_variants(variants):
    rng = random.Random(3)
    for D in variants:
        labels = [c.label for c in D.crossings]
        T = rng.sample(labels, rng.randint(0, len(labels)))
        for S in solve_target(D, T):
            assert changed_crossings(D, apply_rcc(D, S)) == set(T)
