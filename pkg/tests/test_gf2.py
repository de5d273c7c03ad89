from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetarcc import gf2
from thetarcc.gf2 import BitMatrix, BitVector

REFERENCE_ROWS = "101101\n011011\n001111\n"


@st.composite
def matrices(draw, max_rows=6, max_cols=7):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, 2 ** c - 1), min_size=r, max_size=r))
    return BitMatrix(r, c, tuple(rows))


@st.composite
def systems(draw):
    M = draw(matrices())
    b = BitVector(M.nrows, draw(st.integers(0, 2 ** M.nrows - 1)))
    return M, b


def brute(M: BitMatrix, b: BitVector) -> list[BitVector]:
    out = []
    for bits in product((0, 1), repeat=M.ncols):
        x = BitVector.from_list(bits)
        if M.matvec(x) == b:
            out.append(x)
    return sorted(out, key=BitVector.lex_key)


def test_bitvector_basics():
    v = BitVector.from_list([1, 0, 1, 1])
    assert v.to_list() == [1, 0, 1, 1]
    assert v.support() == [0, 2, 3]
    assert v.weight() == 3
    assert str(v) == "1011"
    assert (v ^ v).is_zero()
    assert BitVector.from_indices(4, [0, 2, 3]) == v


def test_bitvector_rejects_non_binary():
    with pytest.raises(ValueError):
        BitVector.from_list([0, 2])


def test_text_round_trip():
    M = BitMatrix.from_text(REFERENCE_ROWS)
    assert M.to_text() == REFERENCE_ROWS
    assert (M.nrows, M.ncols) == (3, 6)


def test_rank_examples():
    assert gf2.rank(BitMatrix.zeros(3, 5)) == 0
    assert gf2.rank(BitMatrix.from_text(REFERENCE_ROWS)) == 3
    for n in range(6):
        assert gf2.rank(BitMatrix.identity(n)) == n


def test_nullspace_examples():
    assert len(gf2.nullspace(BitMatrix.from_text(REFERENCE_ROWS))) == 3
    assert gf2.nullspace(BitMatrix.identity(4)) == []
    assert len(gf2.nullspace(BitMatrix.zeros(2, 3))) == 3


def test_solve_affine_reference_rhs():
    M = BitMatrix.from_text(REFERENCE_ROWS)
    particular, basis = gf2.solve_affine(M, BitVector.from_list([1, 0, 0]))
    assert particular.to_list() == [1, 0, 0, 0, 0, 0]
    assert len(basis) == 3


def test_solve_affine_inconsistent():
    assert gf2.solve_affine(BitMatrix.from_lists([[0, 0]]), BitVector.from_list([1])) is None


def test_solve_affine_zero_rhs():
    M = BitMatrix.from_text(REFERENCE_ROWS)
    particular, _ = gf2.solve_affine(M, BitVector(3, 0))
    assert particular.is_zero()


def test_enumerate_reference_rhs():
    M = BitMatrix.from_text(REFERENCE_ROWS)
    sols = gf2.enumerate_solutions(M, BitVector.from_list([1, 0, 0]), cap=16)
    assert len(sols) == 8


def test_enumerate_errors():
    with pytest.raises(gf2.InconsistentSystem):
        gf2.enumerate_solutions(BitMatrix.from_lists([[0, 0]]), BitVector.from_list([1]))
    with pytest.raises(gf2.CapExceeded):
        gf2.enumerate_solutions(BitMatrix.zeros(1, 5), BitVector(1, 0), cap=16)


def test_full_rank_square_unique():
    M = BitMatrix.from_lists([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    for bits in range(8):
        assert len(gf2.enumerate_solutions(M, BitVector(3, bits))) == 1


@given(systems())
def test_enumeration_matches_brute_force(sys_):
    M, b = sys_
    expected = brute(M, b)
    if not expected:
        assert gf2.solve_affine(M, b) is None
        return
    sols = gf2.enumerate_solutions(M, b, cap=1 << 10)
    assert sols == expected
    assert len(sols) == 2 ** (M.ncols - gf2.rank(M))


@given(matrices())
def test_rank_transpose(M):
    assert gf2.rank(M) == gf2.rank(M.transpose())


@given(matrices())
def test_nullspace_is_independent_kernel(M):
    basis = gf2.nullspace(M)
    assert len(basis) == M.ncols - gf2.rank(M)
    assert gf2.is_independent(basis)
    assert all(M.matvec(v).is_zero() for v in basis)


@given(matrices())
def test_rank_bounds(M):
    assert 0 <= gf2.rank(M) <= min(M.nrows, M.ncols)
