from __future__ import annotations

import random
from itertools import product

import pytest

from oddsolve.gf2 import Gf2Error, Gf2Matrix, rank_of, rref, solve


def mat_vec(m: Gf2Matrix, x: int) -> int:
    out = 0
    for i, row in enumerate(m.rows):
        if bin(row & x).count("1") % 2:
            out |= 1 << i
    return out


def rand_matrix(rng: random.Random, nrows: int, ncols: int) -> Gf2Matrix:
    return Gf2Matrix(tuple(rng.randrange(1 << ncols) for _ in range(nrows)), ncols)


def test_matrix_validation():
    with pytest.raises(Gf2Error):
        Gf2Matrix((0b100,), 2)
    with pytest.raises(Gf2Error):
        Gf2Matrix.from_bits([[1, 0], [1]])


def test_from_bits_and_transpose():
    m = Gf2Matrix.from_bits([[1, 0, 1], [0, 1, 1]])
    assert m.rows == (0b101, 0b110)
    t = m.transpose()
    assert t.ncols == 2 and t.rows == (0b01, 0b10, 0b11)
    assert t.transpose().rows == m.rows


def test_rank_small_cases():
    assert rank_of([]) == 0
    assert rank_of([0, 0]) == 0
    assert rank_of([0b1, 0b10, 0b11]) == 2
    assert rank_of([0b111, 0b110, 0b001]) == 2


def test_rank_matches_span_enumeration():
    rng = random.Random(3)
    for _ in range(40):
        rows = [rng.randrange(1 << 6) for _ in range(rng.randrange(6))]
        span = {0}
        for r in rows:
            span |= {v ^ r for v in span}
        assert 1 << rank_of(rows) == len(span)


def test_rref_is_canonical_for_the_row_space():
    rng = random.Random(4)
    for _ in range(40):
        rows = [rng.randrange(1, 1 << 5) for _ in range(4)]
        d1 = rref(Gf2Matrix(tuple(rows), 5))
        # shuffling and adding in-span rows must not change the rref rows
        mixed = rows[:] + [rows[0] ^ rows[-1]]
        rng.shuffle(mixed)
        d2 = rref(Gf2Matrix(tuple(mixed), 5))
        assert d1.rref_rows == d2.rref_rows
        assert d1.rank == d2.rank
        assert list(d1.pivot_cols) == sorted(d1.pivot_cols)


def test_rref_basis_rows_are_earliest():
    m = Gf2Matrix((0b011, 0b011, 0b101, 0b110), 3)
    d = rref(m)
    assert d.rank == 2
    assert d.basis_row_indices == (0, 2)  # row 1 duplicates row 0, row 3 = 0^2


def test_coordinates_roundtrip():
    rng = random.Random(5)
    for _ in range(60):
        m = rand_matrix(rng, 5, 7)
        d = rref(m)
        # every combination of basis rows must roundtrip exactly
        for coords in range(1 << d.rank):
            vec = d.reconstruct(coords)
            assert d.coordinates(vec) == coords
        # vectors outside the span are reported as such
        outside = rng.randrange(1 << 7)
        if not d.in_span(outside):
            assert d.coordinates(outside) is None


def test_solve_agrees_with_enumeration_on_small_systems():
    rng = random.Random(6)
    for _ in range(80):
        ncols = rng.randrange(1, 5)
        nrows = rng.randrange(1, 5)
        m = rand_matrix(rng, nrows, ncols)
        rhs = rng.randrange(1 << nrows)
        solutions = [x for x in range(1 << ncols) if mat_vec(m, x) == rhs]
        got = solve(m, rhs)
        if solutions:
            assert got in solutions
        else:
            assert got is None


def test_solve_fixes_free_variables_to_zero():
    # single equation x0 + x1 + x2 = 1 -> pivot x0 set, free x1 x2 zero
    m = Gf2Matrix((0b111,), 3)
    assert solve(m, 0b1) == 0b001


def test_solve_validates_rhs_width():
    m = Gf2Matrix((0b11,), 2)
    with pytest.raises(Gf2Error):
        solve(m, 0b10)


def test_solve_random_larger_systems():
    rng = random.Random(7)
    for _ in range(40):
        m = rand_matrix(rng, 12, 16)
        x0 = rng.randrange(1 << 16)
        rhs = mat_vec(m, x0)  # consistent by construction
        got = solve(m, rhs)
        assert got is not None
        assert mat_vec(m, got) == rhs


def test_bits_exhaustive_tiny():
    # all 2x2 systems, all rhs: agreement with enumeration
    for rows in product(range(4), repeat=2):
        m = Gf2Matrix(rows, 2)
        for rhs in range(4):
            sols = [x for x in range(4) if mat_vec(m, x) == rhs]
            got = solve(m, rhs)
            assert (got in sols) if sols else (got is None)
