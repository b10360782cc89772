"""Wheel constructions: block operator, companion wheels, fixed matrices."""

import pytest

from tvsat import make_context
from tvsat import linalg as la
from tvsat import wheels as wh
from tvsat.errors import WheelShapeError
from tvsat.linalg import ExactMatrix


@pytest.fixture(scope="module")
def ctx5():
    return make_context(5)


@pytest.fixture(scope="module")
def m_diag(ctx5):
    # the 2-dimensional module with eigenvalues A and A^-1, used as the
    # companion ingredient in all the fixed examples
    A = ctx5.A
    return ExactMatrix.from_rows(ctx5, [[A, 0], [0, A**-1]])


@pytest.fixture(scope="module")
def m_one(ctx5):
    return ExactMatrix.from_rows(ctx5, [[1]])


def test_wheel_validation(ctx5, m_diag, m_one):
    with pytest.raises(WheelShapeError):
        wh.NWheel(ctx5, [])
    with pytest.raises(WheelShapeError):
        wh.NWheel(ctx5, [m_diag, m_one])  # 2x2 cannot feed a 1x1
    with pytest.raises(WheelShapeError):
        wh.NWheel(ctx5, [m_diag], slot_labels=("a", "b"))
    w = wh.NWheel(ctx5, [m_diag, m_diag])
    assert w.n == 2 and w.slot_dim(0) == 2


def test_s_operator_two_slot_fixture(ctx5, m_diag):
    A = ctx5.A
    ident = ExactMatrix.identity(ctx5, 2)
    s = wh.s_operator(wh.NWheel(ctx5, [ident, m_diag]))
    expected = ExactMatrix.from_rows(
        ctx5,
        [
            [0, 0, A, 0],
            [0, 0, 0, A**-1],
            [1, 0, 0, 0],
            [0, 1, 0, 0],
        ],
    )
    assert s == expected
    # the square of the block operator is the product around the cycle
    assert la.charpoly(s) == la.expand_product(
        ctx5, [[-A, 0, 1], [-(A**-1), 0, 1]]
    )


def test_scalar_wheel(ctx5):
    A = ctx5.A
    s = wh.s_operator(wh.scalar_wheel(ctx5, [A, A**2]))
    assert s == ExactMatrix.from_rows(ctx5, [[0, A**2], [A, 0]])


def test_single_letter_word(ctx5, m_diag):
    w = wh.w_construction(ctx5, (0,), {0: m_diag})
    assert w.n == 1
    assert wh.s_operator(w) == m_diag


def test_constant_word_folds(ctx5, m_diag):
    A = ctx5.A
    w = wh.w_construction(ctx5, (0, 0, 0), {0: m_diag})
    assert w.n == 1
    assert w.slot_dim(0) == 8
    block = wh.s_operator(w)
    # the printed form of this operator lists the rotation orbits of the
    # eight basis vectors in a different order; compare basis-free
    printed = la.direct_sum(
        [
            ExactMatrix.from_rows(ctx5, [[A]]),
            ExactMatrix.from_rows(ctx5, [[A**-1]]),
            ExactMatrix.from_rows(
                ctx5, [[0, 0, A], [A**-1, 0, 0], [0, A**-1, 0]]
            ),
            ExactMatrix.from_rows(
                ctx5, [[0, 0, A], [A**-1, 0, 0], [0, A, 0]]
            ),
        ]
    )
    assert la.charpoly(block) == la.charpoly(printed)
    assert la.charpoly(block) == la.expand_product(
        ctx5,
        [[-A, 1], [-(A**-1), 1], [-A, 0, 0, 1], [-(A**-1), 0, 0, 1]],
    )
    assert la.charpoly_root_check(la.charpoly(block), A)
    assert la.charpoly_root_check(la.charpoly(block), A**-1)


def test_mixed_word_wheel(ctx5, m_diag, m_one):
    A = ctx5.A
    w = wh.w_construction(ctx5, (0, 0, 2), {0: m_diag, 2: m_one})
    assert w.n == 3
    assert [w.slot_dim(i) for i in range(3)] == [4, 4, 4]
    assert w.slot_labels == ((0, 0, 2), (2, 0, 0), (0, 2, 0))
    g1 = ExactMatrix.from_rows(
        ctx5,
        [
            [A, 0, 0, 0],
            [0, 0, A, 0],
            [0, A**-1, 0, 0],
            [0, 0, 0, A**-1],
        ],
    )
    assert w.maps[0] == ExactMatrix.identity(ctx5, 4)
    assert w.maps[1] == g1
    assert w.maps[2] == g1


def test_pattern_tensor_fixture(ctx5, m_diag, m_one):
    # companion wheel for the word (0, 0, 2) tensored with the pattern
    # scalars (1, A^2, 1) reproduces the printed 12-dimensional block
    A = ctx5.A
    w = wh.w_construction(ctx5, (0, 0, 2), {0: m_diag, 2: m_one})
    pat = wh.scalar_wheel(ctx5, [ctx5.one, A**2, ctx5.one])
    s = wh.s_operator(wh.wheel_tensor(w, pat))
    assert s.rows == 12
    g1 = w.maps[1]
    expected = la.block_matrix(
        ctx5,
        [
            [None, None, g1],
            [ExactMatrix.identity(ctx5, 4), None, None],
            [None, g1.scale(A**2), None],
        ],
    )
    assert s == expected


def test_wheel_shift_preserves_spectrum(ctx5, m_diag, m_one):
    w = wh.w_construction(ctx5, (0, 0, 2), {0: m_diag, 2: m_one})
    cp = la.charpoly(wh.s_operator(w))
    for k in (1, 2):
        assert la.charpoly(wh.s_operator(wh.wheel_shift(w, k))) == cp


def test_word_helpers():
    assert wh.min_period((0, 2, 0, 2)) == 2
    assert wh.min_period((0, 0, 0)) == 1
    assert wh.min_period((0, 2, 2)) == 3
    assert wh.rotate_right((0, 2, 4), 1) == (4, 0, 2)
    assert wh.orbit_representative((2, 0, 0)) == (0, 0, 2)
    assert wh.orbit_reps([0, 2], 3) == [
        (0, 0, 0),
        (0, 0, 2),
        (0, 2, 2),
        (2, 2, 2),
    ]
    assert wh.orbit_reps([0, 2], 2) == [(0, 0), (0, 2), (2, 2)]


def test_zero_dimensional_slots(ctx5):
    empty = ExactMatrix(ctx5, 0, 0, [])
    w = wh.w_construction(ctx5, (1,), {1: empty})
    s = wh.s_operator(w)
    assert s.rows == 0
    assert la.charpoly(s).degree == 0


def test_wheel_json_round_trip(ctx5, m_diag, m_one):
    w = wh.w_construction(ctx5, (0, 0, 2), {0: m_diag, 2: m_one})
    data = wh.wheel_to_json(w)
    assert data["n"] == 3
    assert data["slots"][0] == {"dim": 4, "label": [0, 0, 2]}
    again = wh.wheel_from_json(ctx5, data)
    assert again == w and again.slot_labels == w.slot_labels