import numpy as np
import pytest

from dgstab.algebra import (
    ADD,
    HADAMARD,
    MUL,
    BinaryOp,
    OpKind,
    Side,
    apply,
    check_mul_distributivity,
    check_scalar_laws,
    check_spectrum_commutation,
    check_transpose_law,
    identity_matrix_for,
    law_table,
    multiset_distance,
    op_inverse,
)
from dgstab.errors import DimensionMismatchError


def test_apply_examples():
    np.testing.assert_array_equal(apply(ADD, np.eye(2), np.eye(2)), 2 * np.eye(2))
    np.testing.assert_array_equal(
        apply(MUL, np.diag([2.0, 3.0]), [[1, 1], [0, 1]]), [[2, 2], [0, 3]]
    )
    np.testing.assert_array_equal(
        apply(HADAMARD, [[1, 2], [3, 4]], [[2, 2], [2, 2]]), [[2, 4], [6, 8]]
    )


def test_apply_right_side():
    g = np.diag([2.0, 3.0])
    a = np.array([[1.0, 1.0], [0.0, 1.0]])
    np.testing.assert_array_equal(
        apply(BinaryOp(OpKind.MUL, Side.RIGHT), g, a), a @ g
    )


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        apply(MUL, np.eye(2), np.eye(3))


def test_identity_elements():
    np.testing.assert_array_equal(identity_matrix_for(ADD, 2), np.zeros((2, 2)))
    np.testing.assert_array_equal(identity_matrix_for(MUL, 2), np.eye(2))
    np.testing.assert_array_equal(identity_matrix_for(HADAMARD, 2), np.ones((2, 2)))


def test_op_inverse():
    g = np.diag([2.0, 4.0])
    np.testing.assert_array_equal(op_inverse(ADD, g), -g)
    np.testing.assert_allclose(op_inverse(MUL, g), np.diag([0.5, 0.25]))
    np.testing.assert_allclose(op_inverse(HADAMARD, 2 * np.ones((2, 2))),
                               0.5 * np.ones((2, 2)))
    assert op_inverse(MUL, np.zeros((2, 2))) is None
    assert op_inverse(HADAMARD, np.diag([1.0, 1.0])) is None


def test_multiset_distance():
    assert multiset_distance([1, 2, 3], [3, 1, 2]) == 0.0
    assert multiset_distance([1 + 1j, 0], [0, 1 + 1j]) == 0.0
    assert multiset_distance([0.0], [0.5]) == pytest.approx(0.5)


def test_spectrum_commutation_gates():
    rng = np.random.default_rng(30)
    assert check_spectrum_commutation(MUL, 100, 5, rng).max_deviation <= 1e-7
    assert check_spectrum_commutation(ADD, 50, 5, rng).max_deviation <= 1e-12
    assert check_spectrum_commutation(HADAMARD, 50, 5, rng).max_deviation <= 1e-12


def test_spectrum_commutation_survives_rank_deficiency():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(200):
        a = rng.standard_normal((4, 4))
        u = rng.standard_normal((4, 2))
        v = rng.standard_normal((2, 4))
        b = u @ v  # rank two
        d = multiset_distance(np.linalg.eigvals(a @ b), np.linalg.eigvals(b @ a))
        worst = max(worst, d)
    assert worst <= 1e-6


@pytest.mark.parametrize("op", [ADD, MUL, HADAMARD])
def test_transpose_law_exact(op):
    rng = np.random.default_rng(32)
    assert check_transpose_law(op, 200, 6, rng).max_deviation <= 1e-12


def test_scalar_laws():
    rng = np.random.default_rng(33)
    assert check_scalar_laws(MUL, 200, 5, rng)["scalar_associativity"].max_deviation \
        <= 1e-12
    assert check_scalar_laws(ADD, 200, 5, rng)["scalar_distributivity"].max_deviation \
        <= 1e-12
    rep = check_scalar_laws(ADD, 200, 5, rng)["scalar_associativity"]
    assert rep.max_deviation > 1e-3
    assert rep.witness is not None
    a, b, alpha = rep.witness
    lhs = alpha * apply(ADD, a, b)
    rhs = apply(ADD, alpha * a, b)
    assert np.linalg.norm(lhs - rhs) == pytest.approx(rep.max_deviation)


def test_mul_distributivity():
    rng = np.random.default_rng(34)
    assert check_mul_distributivity(ADD, 200, 5, rng)["mul_distributivity"] \
        .max_deviation <= 1e-12
    assert check_mul_distributivity(MUL, 200, 5, rng)["mul_associativity"] \
        .max_deviation <= 1e-12
    rep = check_mul_distributivity(HADAMARD, 200, 5, rng)["mul_distributivity"]
    assert rep.max_deviation > 1e-3 and rep.witness is not None


def test_hadamard_distributivity_fails_even_at_2x2():
    # brute search over small integer matrices finds a counterexample
    found = False
    grid = [-1.0, 0.0, 1.0, 2.0]
    a = np.array([[1.0, 1.0], [1.0, 1.0]])
    for x in grid:
        b = np.array([[1.0, x], [0.0, 1.0]])
        c = np.array([[1.0, 0.0], [x, 1.0]])
        lhs = a @ (b * c)
        rhs = (a @ b) * (a @ c)
        if np.linalg.norm(lhs - rhs) > 1e-9:
            found = True
            break
    assert found


def test_law_table_shape():
    rng = np.random.default_rng(35)
    table = law_table(20, 3, rng)
    assert set(table.keys()) == set(OpKind)
    for row in table.values():
        assert set(row.keys()) == {
            "spectrum_commutation",
            "transpose",
            "scalar_associativity",
            "scalar_distributivity",
            "mul_associativity",
            "mul_distributivity",
        }
