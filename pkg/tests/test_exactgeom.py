from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidquiver.errors import MalformedInputError
from braidquiver.exactgeom import (
    LinearSystem,
    dot,
    format_rational,
    kernel_basis,
    primitive,
    rank,
    rref,
    solve_feasible,
    to_rational,
)
from braidquiver.matrix import Matrix, block_diag, matrix_from_json


def test_to_rational_accepts_exact_forms():
    assert to_rational(3) == 3
    assert to_rational("-7/21") == Fraction(-1, 3)
    assert to_rational(" 5 ") == 5
    assert to_rational(Fraction(2, 4)) == Fraction(1, 2)


@pytest.mark.parametrize("bad", [0.5, "1/0", "abc", "1.5", None, "2/-3", True])
def test_to_rational_rejects(bad):
    with pytest.raises(MalformedInputError):
        to_rational(bad)


def test_format_round_trip():
    for q in (Fraction(0), Fraction(-3), Fraction(22, 7), Fraction(-1, 9)):
        assert to_rational(format_rational(q)) == q
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_rank_small():
    assert rank([]) == 0
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == 3
    assert rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_rref_pivots():
    red, piv = rref([[0, 2, 4], [1, 1, 1]], 3)
    assert piv == [0, 1]
    assert red[0] == [1, 0, -1]
    assert red[1] == [0, 1, 2]


def test_primitive_scales_to_coprime_integers():
    assert primitive([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)
    assert primitive([0, 0]) == (0, 0)


def test_kernel_basis_needs_width_for_empty():
    assert kernel_basis([], 2) == [(1, 0), (0, 1)]
    with pytest.raises(MalformedInputError):
        kernel_basis([])


def test_kernel_of_braid_normals():
    rows = [[1, -1, 0], [0, 1, -1]]
    basis = kernel_basis(rows)
    assert basis == [(1, 1, 1)]


small = st.integers(min_value=-4, max_value=4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_plus_nullity(nrows, ncols, data):
    rows = [[data.draw(small) for _ in range(ncols)] for _ in range(nrows)]
    basis = kernel_basis(rows, ncols)
    assert rank(rows) + len(basis) == ncols
    for v in basis:
        assert all(dot(r, v) == 0 for r in rows)


def test_solve_simple_systems():
    sys1 = LinearSystem(2, strict_positives=[(1, 0), (0, 1)], equalities=[((1, 1), 3)])
    for method in ("fm", "simplex"):
        x = solve_feasible(sys1, method)
        assert x is not None and sys1.is_satisfied_by(x)
    sys2 = LinearSystem(1, strict_positives=[(1,), (-1,)])
    assert solve_feasible(sys2, "fm") is None
    assert solve_feasible(sys2, "simplex") is None


def test_solve_zero_dimensional():
    assert solve_feasible(LinearSystem(0)) == ()
    with pytest.raises(MalformedInputError):
        LinearSystem(0, strict_positives=[()])


def test_inconsistent_equalities():
    s = LinearSystem(2, equalities=[((1, 1), 1), ((2, 2), 3)])
    assert solve_feasible(s, "fm") is None
    assert solve_feasible(s, "simplex") is None


def test_bad_row_length():
    with pytest.raises(MalformedInputError):
        LinearSystem(2, strict_positives=[(1, 2, 3)])


def test_unknown_method():
    with pytest.raises(ValueError):
        solve_feasible(LinearSystem(1), "magic")


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.data())
def test_fm_and_simplex_agree(dim, data):
    n_eq = data.draw(st.integers(0, 2))
    n_strict = data.draw(st.integers(0, 4))
    n_ge = data.draw(st.integers(0, 3))
    vec = st.lists(small, min_size=dim, max_size=dim)
    eqs = [(data.draw(vec), data.draw(small)) for _ in range(n_eq)]
    strict = [data.draw(vec) for _ in range(n_strict)]
    ge = [(data.draw(vec), data.draw(small)) for _ in range(n_ge)]
    system = LinearSystem(dim, eqs, strict, ge)
    a = solve_feasible(system, "fm")
    b = solve_feasible(system, "simplex")
    assert (a is None) == (b is None)
    if a is not None:
        assert system.is_satisfied_by(a) and system.is_satisfied_by(b)


def test_matrix_basics():
    a = Matrix([[1, 2], [3, 4]])
    assert a @ a.inverse() == Matrix.identity(2)
    assert a.det() == -2
    assert a.T.T == a
    assert (a - a).is_zero()
    assert Matrix.zeros(0, 3).shape == (0, 3)
    assert (Matrix.zeros(2, 0) @ Matrix.zeros(0, 3)) == Matrix.zeros(2, 3)
    assert block_diag(a, Matrix([[5]])).shape == (3, 3)


def test_matrix_kernel_and_left_inverse():
    m = Matrix([[1, 1], [2, 2], [0, 1]])
    assert m.left_inverse() @ m == Matrix.identity(2)
    k = Matrix([[1, -1, 0]]).kernel()
    assert k.shape == (3, 2)
    assert (Matrix([[1, -1, 0]]) @ k).is_zero()


def test_matrix_from_json_checks_shape():
    assert matrix_from_json([["1/2", "3"]], 1, 2) == Matrix([[Fraction(1, 2), 3]])
    assert matrix_from_json([], 0, 4).shape == (0, 4)
    with pytest.raises(MalformedInputError):
        matrix_from_json([["1", "2"]], 2, 1)
    with pytest.raises(MalformedInputError):
        matrix_from_json("nope", 1, 1)
