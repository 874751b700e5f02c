"""Tests for exact linear algebra."""

import numpy as np
import pytest
from fractions import Fraction
from arrduality.exactlin import (
    IntegerMatrix,
    PrimeFieldMatrix,
    RationalMatrix,
    as_fraction,
    check_prime,
    determinant,
    hermite_basis,
    integer_inverse,
    is_unimodular,
    nullspace_rational,
    prime_field_rank,
    rational_rank,
    rref_key,
    smith_normal_form,
    solve_affine,
)
from arrduality.exceptions import FieldError

SEEDS = range(12)


def _low_rank(rng, rows, cols, rank, bound=3):
    """Integer rows x cols matrix of rank at most ``rank``."""
    left = rng.integers(-bound, bound + 1, size=(rows, rank))
    right = rng.integers(-bound, bound + 1, size=(rank, cols))
    return (left @ right).tolist()


def _unimodular(rng, size, steps=8):
    """Product of random elementary integer row operations."""
    rows = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(steps):
        i, j = (int(v) for v in rng.choice(size, size=2, replace=False))
        c = int(rng.integers(-2, 3))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        if rng.integers(2):
            rows[i], rows[j] = rows[j], rows[i]
    return IntegerMatrix.from_rows(rows)


class TestConversions:
    """Test entry normalization."""

    def test_as_fraction(self):
        """Test conversion of strings and ints."""
        assert as_fraction("3/6") == Fraction(1, 2)
        assert as_fraction(4) == Fraction(4)

    def test_booleans_rejected(self):
        """Test that booleans are not accepted as entries."""
        with pytest.raises(TypeError):
            as_fraction(True)

    def test_ragged_rows_rejected(self):
        """Test that rows of different lengths are rejected."""
        with pytest.raises(ValueError, match="ragged"):
            RationalMatrix(((1, 2), (3,)))

    def test_prime_field_entries_reduced(self):
        """Test that GF(p) entries are reduced on construction."""
        m = PrimeFieldMatrix(5, ((7, -1),))
        assert m.entries == ((2, 4),)


class TestRanks:
    """Test exact ranks."""

    def test_rational_rank(self):
        """Test the rank of a matrix with a dependent row."""
        m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, "1/2"]])
        assert rational_rank(m) == 2

    def test_prime_field_rank_depends_on_characteristic(self):
        """Test that the determinant 5 kills the rank over GF(5) only."""
        rows = ((1, 2), (3, 1))
        assert prime_field_rank(PrimeFieldMatrix(7, rows)) == 2
        assert prime_field_rank(PrimeFieldMatrix(5, rows)) == 1

    def test_empty_matrix_rank(self):
        """Test that a matrix without rows has rank 0."""
        assert rational_rank(RationalMatrix((), 3)) == 0

    @pytest.mark.parametrize("modulus", [2, 4, 15, 0])
    def test_check_prime_rejects(self, modulus):
        """Test that non-primes and 2 are rejected."""
        with pytest.raises(FieldError):
            check_prime(modulus)


class TestRankProperties:
    """Test rank invariants on seeded random matrices."""

    @pytest.mark.parametrize("seed", SEEDS)
    def test_rank_invariant_under_permutations(self, seed):
        """Test that permuting rows and columns keeps the rank."""
        rng = np.random.default_rng(seed)
        rows = _low_rank(rng, 5, 6, int(rng.integers(1, 5)))
        row_order = [int(i) for i in rng.permutation(5)]
        col_order = [int(j) for j in rng.permutation(6)]
        shuffled = [[rows[i][j] for j in col_order] for i in row_order]

        assert rational_rank(RationalMatrix.from_rows(shuffled)) == rational_rank(RationalMatrix.from_rows(rows))

    @pytest.mark.parametrize("seed", SEEDS)
    def test_rank_invariant_under_transpose(self, seed):
        """Test that row rank equals column rank."""
        rng = np.random.default_rng(seed)
        m = RationalMatrix.from_rows(_low_rank(rng, 4, 7, int(rng.integers(1, 4))))
        assert rational_rank(m.transpose()) == rational_rank(m)

    @pytest.mark.parametrize("seed", SEEDS)
    @pytest.mark.parametrize("prime", [3, 5, 7])
    def test_rational_rank_bounds_prime_field_rank(self, seed, prime):
        """Test that reduction mod p never raises the rank."""
        rng = np.random.default_rng(seed)
        rows = rng.integers(-6, 7, size=(4, 5)).tolist()
        m = IntegerMatrix.from_rows(rows)

        assert rational_rank(m.to_rational()) >= prime_field_rank(m.reduce_mod(prime))

    def test_rank_drops_mod_p(self):
        """Test a matrix whose rank is strictly smaller over GF(5)."""
        m = IntegerMatrix.from_rows([[5, 0], [0, 1]])
        assert rational_rank(m.to_rational()) == 2
        assert prime_field_rank(m.reduce_mod(5)) == 1


class TestIntegerForms:
    """Test Smith and Hermite forms."""

    def test_smith_diagonal(self):
        """Test that the transforms diagonalize the matrix."""
        m = IntegerMatrix.from_rows([[2, 4], [6, 8]])
        diagonal, left, right = smith_normal_form(m)

        assert diagonal == (2, 4)
        product = (left @ m @ right).entries
        assert [abs(product[i][i]) for i in range(2)] == [2, 4]
        assert product[0][1] == product[1][0] == 0
        assert is_unimodular(left) and is_unimodular(right)

    def test_smith_rank_deficient(self):
        """Test that trailing zeros are kept."""
        diagonal, _, _ = smith_normal_form(IntegerMatrix.from_rows([[1, 2, 3], [2, 4, 6]]))
        assert diagonal == (1, 0)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_smith_invariant_under_unimodular_transforms(self, seed):
        """Test that U M V has the same Smith diagonal as M."""
        rng = np.random.default_rng(seed)
        m = IntegerMatrix.from_rows(rng.integers(-5, 6, size=(3, 4)).tolist())
        left, right = _unimodular(rng, 3), _unimodular(rng, 4)

        assert is_unimodular(left) and is_unimodular(right)
        assert smith_normal_form(left @ m @ right)[0] == smith_normal_form(m)[0]

    @pytest.mark.parametrize("seed", SEEDS)
    def test_smith_divisibility(self, seed):
        """Test that each diagonal entry divides the next."""
        rng = np.random.default_rng(seed)
        diagonal, _, _ = smith_normal_form(IntegerMatrix.from_rows(_low_rank(rng, 4, 4, 3, bound=4)))

        for a, b in zip(diagonal, diagonal[1:]):
            assert b == 0 or (a != 0 and b % a == 0)

    def test_determinant(self):
        """Test determinants, including the empty matrix."""
        assert determinant(IntegerMatrix.from_rows([[2, 1], [1, 1]])) == 1
        assert determinant(IntegerMatrix((), 0)) == 1

    def test_integer_inverse(self):
        """Test the inverse of a unimodular matrix."""
        m = IntegerMatrix.from_rows([[2, 1], [1, 1]])
        assert (m @ integer_inverse(m)).entries == IntegerMatrix.identity(2).entries

    def test_integer_inverse_requires_unimodular(self):
        """Test that a determinant other than +-1 is rejected."""
        with pytest.raises(ValueError):
            integer_inverse(IntegerMatrix.from_rows([[2, 0], [0, 1]]))

    def test_hermite_basis_is_canonical(self):
        """Test that different generating sets of one lattice give the same basis."""
        assert hermite_basis([[1, 1], [0, 2]], 2) == hermite_basis([[1, -1], [1, 1], [2, 0]], 2)
        assert hermite_basis([[0, 0]], 2) == ()


class TestSolving:
    """Test kernels and affine solutions."""

    def test_nullspace_dimension(self):
        """Test the kernel of a single linear form."""
        basis = nullspace_rational(RationalMatrix.from_rows([[1, 1, 0]]))
        assert len(basis) == 2
        assert all(v[0] + v[1] == 0 for v in basis)

    def test_solve_affine(self):
        """Test a particular solution and the direction space."""
        point, basis = solve_affine([[1, 1]], [1], 2)
        assert point[0] + point[1] == 1
        assert len(basis) == 1

    def test_solve_affine_inconsistent(self):
        """Test that parallel distinct equations have no solution."""
        assert solve_affine([[1, 0], [1, 0]], [0, 1], 2) is None

    def test_rref_key_ignores_row_order_and_scale(self):
        """Test that the key identifies the row space."""
        assert rref_key([[1, 0, 0], [0, 2, 2]], 3) == rref_key([[0, 1, 1], [3, 0, 0]], 3)
