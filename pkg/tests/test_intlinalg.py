from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourfold_lab.intlinalg import (
    IntegerMatrix,
    block_diag,
    cokernel_invariants,
    det,
    hyperbolic_form,
    is_even_form,
    is_unimodular,
    rank,
    rational_rank,
    right_kernel_basis,
    signature_symmetric,
    smith_normal_form,
    solve_rational,
)


class TestBasics:
    def test_identity_and_mul(self):
        m = IntegerMatrix([[1, 2], [3, 4]])
        assert IntegerMatrix.identity(2) * m == m
        assert m * IntegerMatrix.identity(2) == m

    def test_mul_shapes(self):
        a = IntegerMatrix([[1, 2, 3]])
        b = IntegerMatrix([[1], [0], [-1]])
        assert a * b == IntegerMatrix([[-2]])
        with pytest.raises(ValueError):
            b * b

    def test_transpose(self):
        m = IntegerMatrix([[1, 2, 3], [4, 5, 6]])
        assert m.transpose() == IntegerMatrix([[1, 4], [2, 5], [3, 6]])

    def test_empty_matrix_needs_cols(self):
        with pytest.raises(ValueError):
            IntegerMatrix([])
        m = IntegerMatrix([], cols=3)
        assert m.rows == 0 and m.cols == 3

    def test_block_diag(self):
        a = IntegerMatrix([[1]])
        b = IntegerMatrix([[2, 0], [0, 3]])
        assert block_diag(a, b) == IntegerMatrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]])


class TestDeterminant:
    def test_known_values(self):
        assert det(IntegerMatrix([[2, 0], [0, 3]])) == 6
        assert det(IntegerMatrix([[0, 1], [1, 0]])) == -1
        assert det(IntegerMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 0

    def test_4x4(self):
        m = IntegerMatrix([[2, 1, 0, 0], [1, 2, 1, 0], [0, 1, 2, 1], [0, 0, 1, 2]])
        assert det(m) == 5  # tridiagonal determinant recurrence: 2,3,4,5

    def test_empty(self):
        assert det(IntegerMatrix([], cols=0)) == 1


class TestSmith:
    def test_diag_2_3_gives_1_6(self):
        d, u, v = smith_normal_form(IntegerMatrix([[2, 0], [0, 3]]))
        assert d.diagonal() == (1, 6)

    def test_transformation_identity(self):
        m = IntegerMatrix([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        d, u, v = smith_normal_form(m)
        assert u * m * v == d
        assert is_unimodular(u) and is_unimodular(v)
        # invariant factors: gcd of entries = 2, gcd of 2x2 minors = 4,
        # det = 624, so the chain is 2, 4/2, 624/4
        assert d.diagonal() == (2, 2, 156)

    def test_divisibility_chain(self):
        m = IntegerMatrix([[6, 0], [0, 10]])
        d, _, _ = smith_normal_form(m)
        assert d.diagonal() == (2, 30)

    def test_nonsquare(self):
        m = IntegerMatrix([[1, 2, 3], [4, 5, 6]])
        d, u, v = smith_normal_form(m)
        assert u * m * v == d
        assert d.diagonal() == (1, 3)

    def test_zero_matrix(self):
        m = IntegerMatrix.zero(2, 3)
        d, u, v = smith_normal_form(m)
        assert d == m

    def test_cokernel_invariants(self):
        # relations 2x = 0, 3y = 0 on Z^3: quotient = Z x Z/2 x Z/3 -> Z/6
        m = IntegerMatrix([[2, 0, 0], [0, 3, 0]])
        free, torsion = cokernel_invariants(m)
        assert free == 1
        assert torsion == (6,)

    def test_rank(self):
        assert rank(IntegerMatrix([[1, 2], [2, 4]])) == 1

    def test_right_kernel(self):
        m = IntegerMatrix([[1, 2, 3]])
        basis = right_kernel_basis(m)
        assert len(basis) == 2
        for vec in basis:
            assert m.mat_vec(vec) == (0,)
        # saturation: kernel basis extends to a basis of Z^3, so the
        # 2x3 matrix of basis vectors has a Smith form with unit diagonals
        kmat = IntegerMatrix(basis)
        d, _, _ = smith_normal_form(kmat)
        assert d.diagonal() == (1, 1)


class TestRationalSolve:
    def test_unique_solution(self):
        x = solve_rational([[2, 0], [0, 4]], [1, 2])
        assert x == [Fraction(1, 2), Fraction(1, 2)]

    def test_inconsistent(self):
        assert solve_rational([[1, 1], [1, 1]], [0, 1]) is None

    def test_underdetermined_uses_zero_for_free_vars(self):
        x = solve_rational([[1, 1]], [3])
        assert x is not None
        assert x[0] + x[1] == 3

    def test_rational_rank(self):
        assert rational_rank([[1, 2], [2, 4], [0, 1]]) == 2
        assert rational_rank([]) == 0


class TestSignature:
    def test_definite(self):
        assert signature_symmetric(IntegerMatrix([[1, 0], [0, 1]])) == 2
        assert signature_symmetric(IntegerMatrix([[-2, 1], [1, -2]])) == -2

    def test_hyperbolic_is_zero(self):
        assert signature_symmetric(hyperbolic_form(1)) == 0
        assert signature_symmetric(hyperbolic_form(3)) == 0

    def test_degenerate_direction_ignored(self):
        assert signature_symmetric(IntegerMatrix([[0, 0], [0, 1]])) == 1

    def test_e8_like_diagonal_dominant(self):
        # -E8 Cartan-style matrix is negative definite of rank 8
        e8 = [[0] * 8 for _ in range(8)]
        links = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]
        for i in range(8):
            e8[i][i] = -2
        for i, j in links:
            e8[i][j] = e8[j][i] = 1
        assert signature_symmetric(IntegerMatrix(e8)) == -8

    def test_rejects_nonsymmetric(self):
        with pytest.raises(ValueError):
            signature_symmetric(IntegerMatrix([[0, 1], [0, 0]]))

    def test_even_form(self):
        assert is_even_form(hyperbolic_form(2))
        assert not is_even_form(IntegerMatrix([[1]]))


# -- property tests ----------------------------------------------------------

small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=60)
@given(small_matrices)
def test_smith_certificate(rows):
    m = IntegerMatrix(rows)
    d, u, v = smith_normal_form(m)
    assert u * m * v == d
    assert is_unimodular(u)
    assert is_unimodular(v)
    diag = d.diagonal()
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x != 0]
    # off-diagonal zero and divisibility chain
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j:
                assert d[i, j] == 0
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    # zeros come after nonzeros on the diagonal
    seen_zero = False
    for x in diag:
        if x == 0:
            seen_zero = True
        elif seen_zero:
            assert False, "nonzero after zero on Smith diagonal"


@settings(max_examples=60)
@given(small_matrices)
def test_kernel_vectors_annihilate(rows):
    m = IntegerMatrix(rows)
    for vec in right_kernel_basis(m):
        assert all(x == 0 for x in m.mat_vec(vec))


@settings(max_examples=60)
@given(small_matrices)
def test_det_of_square_matches_smith(rows):
    m = IntegerMatrix(rows)
    if m.rows != m.cols:
        return
    d, _, _ = smith_normal_form(m)
    prod = 1
    for x in d.diagonal():
        prod *= x
    assert abs(det(m)) == prod
