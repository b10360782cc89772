"""Exact matrix algebra: structural laws and known small cases."""

import random

import pytest

from tvsat import make_context
from tvsat import linalg as la
from tvsat.errors import ContextMismatchError, DomainError, ShapeError
from tvsat.linalg import CharPoly, ExactMatrix


def rand_scalar(ctx, rng):
    s = ctx.zero
    for _ in range(rng.randrange(1, 3)):
        s = s + rng.choice((-1, 1)) * ctx.from_A_power(rng.randrange(ctx.N))
    return s


def rand_matrix(ctx, rng, rows, cols):
    return ExactMatrix(
        ctx, rows, cols, [rand_scalar(ctx, rng) for _ in range(rows * cols)]
    )


def matrix_horner(cp, m):
    acc = ExactMatrix.zeros(m.ctx, m.rows, m.cols)
    ident = ExactMatrix.identity(m.ctx, m.rows)
    for c in reversed(cp.coeffs):
        acc = acc * m + ident.scale(c)
    return acc


@pytest.fixture(scope="module")
def ctx5():
    return make_context(5)


def test_construction_and_shapes(ctx5):
    m = ExactMatrix.from_rows(ctx5, [[1, 0], [2, ctx5.A]])
    assert m.rows == m.cols == 2
    assert m[1, 1] == ctx5.A
    assert m[0, 1].is_zero()
    with pytest.raises(ShapeError):
        ExactMatrix(ctx5, 2, 2, [ctx5.one] * 3)
    with pytest.raises(ShapeError):
        ExactMatrix.from_rows(ctx5, [[1, 2], [3]])
    with pytest.raises(ShapeError):
        ExactMatrix.from_rows(ctx5, [[1, 2]], labels=("a", "b"))
    with pytest.raises(DomainError):
        ExactMatrix.from_rows(ctx5, [[1.5]])
    other = make_context(7)
    with pytest.raises(ContextMismatchError):
        ExactMatrix.from_rows(ctx5, [[other.one]])


def test_ring_operations(ctx5):
    rng = random.Random(11)
    a = rand_matrix(ctx5, rng, 3, 3)
    b = rand_matrix(ctx5, rng, 3, 3)
    c = rand_matrix(ctx5, rng, 3, 3)
    ident = ExactMatrix.identity(ctx5, 3)
    assert a * ident == a and ident * a == a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ExactMatrix.zeros(ctx5, 3, 3)
    assert a.scale(ctx5.A) == ctx5.A * a
    assert (a * b).transpose() == b.transpose() * a.transpose()
    assert (a * b).trace() == (b * a).trace()
    assert a**3 == a * a * a
    assert a**0 == ident
    with pytest.raises(DomainError):
        a**-1
    with pytest.raises(ShapeError):
        a * rand_matrix(ctx5, rng, 2, 2)


def test_tensor(ctx5):
    rng = random.Random(12)
    a = rand_matrix(ctx5, rng, 2, 2)
    b = rand_matrix(ctx5, rng, 3, 3)
    c = rand_matrix(ctx5, rng, 2, 2)
    d = rand_matrix(ctx5, rng, 3, 3)
    assert la.tensor(a, b) * la.tensor(c, d) == la.tensor(a * c, b * d)
    assert la.tensor(a, b).trace() == a.trace() * b.trace()
    al = a.with_labels((0, 2))
    bl = b.with_labels((0, 1, 2))
    assert la.tensor(al, bl).labels == (
        (0, 0), (0, 1), (0, 2), (2, 0), (2, 1), (2, 2),
    )


def test_direct_sum_and_blocks(ctx5):
    rng = random.Random(13)
    a = rand_matrix(ctx5, rng, 2, 2)
    b = rand_matrix(ctx5, rng, 1, 1)
    s = la.direct_sum([a, b])
    assert s.rows == s.cols == 3
    assert s[0, 0] == a[0, 0] and s[2, 2] == b[0, 0]
    assert s[0, 2].is_zero() and s[2, 0].is_zero()
    assert s.trace() == a.trace() + b.trace()
    assert la.charpoly(s) == la.charpoly(a) * la.charpoly(b)

    g = la.block_matrix(ctx5, [[None, a], [b, None]])
    assert g.rows == 3 and g.cols == 3
    assert g[0, 1] == a[0, 0] and g[2, 0] == b[0, 0]
    assert g[0, 0].is_zero() and g[2, 2].is_zero()
    with pytest.raises(ShapeError):
        la.block_matrix(ctx5, [[None, None], [a, None]])


def test_rank_and_kernel(ctx5):
    rng = random.Random(14)
    assert la.rank(ExactMatrix.identity(ctx5, 4)) == 4
    assert la.rank(ExactMatrix.zeros(ctx5, 3, 5)) == 0
    # rank-one outer product
    u = [ctx5.A, ctx5.one, ctx5.A ** 3]
    v = [ctx5.one, ctx5.A ** 2]
    outer = ExactMatrix(ctx5, 3, 2, [x * y for x in u for y in v])
    assert la.rank(outer) == 1
    m = rand_matrix(ctx5, rng, 3, 5)
    r, basis = la.rank_kernel(m)
    assert len(basis) == 5 - r
    for vec in basis:
        col = ExactMatrix(ctx5, 5, 1, vec)
        assert (m * col).is_zero()


def test_solve_exact(ctx5):
    rng = random.Random(15)
    # tall system with an identity block on top guarantees full column rank
    rows = [[ctx5.one if i == j else ctx5.zero for j in range(2)] for i in range(2)]
    rows += [[rand_scalar(ctx5, rng) for _ in range(2)] for _ in range(2)]
    u = ExactMatrix.from_rows(ctx5, rows)
    x = rand_matrix(ctx5, rng, 2, 3)
    assert la.solve_exact(u, u * x) == x


def test_charpoly_known_values(ctx5):
    m = ExactMatrix.from_rows(ctx5, [[0, -1], [1, 0]])
    assert la.charpoly(m).coeffs == (ctx5.one, ctx5.zero, ctx5.one)
    a, b, c, d = ctx5.A, ctx5.one, ctx5.A ** 2, ctx5.A ** 3
    m2 = ExactMatrix.from_rows(ctx5, [[a, b], [c, d]])
    cp = la.charpoly(m2)
    assert cp.coeffs[1] == -(a + d)
    assert cp.coeffs[0] == a * d - b * c
    assert la.charpoly(ExactMatrix(ctx5, 0, 0, [])).degree == 0


def test_charpoly_two_routes_agree():
    for p in (5, 8):
        ctx = make_context(p)
        rng = random.Random(100 + p)
        for dim in (1, 2, 3, 4, 5):
            m = rand_matrix(ctx, rng, dim, dim)
            assert la.charpoly(m) == la.charpoly_by_traces(m)


def test_cayley_hamilton(ctx5):
    rng = random.Random(16)
    for dim in (2, 3, 4):
        m = rand_matrix(ctx5, rng, dim, dim)
        assert matrix_horner(la.charpoly(m), m).is_zero()


def test_power_traces(ctx5):
    rng = random.Random(17)
    m = rand_matrix(ctx5, rng, 4, 4)
    cp = la.charpoly(m)
    traces = la.power_traces(cp, 6)
    for d in range(1, 7):
        assert traces[d - 1] == (m ** d).trace()
    assert la.power_traces(la.charpoly(ExactMatrix(ctx5, 0, 0, [])), 3) == [
        ctx5.zero
    ] * 3


def test_flat_invertible_and_nilpotent(ctx5):
    rng = random.Random(18)
    # invertible: identity plus a strictly upper triangular part
    n = 4
    ent = [[ctx5.one if i == j else ctx5.zero for j in range(n)] for i in range(n)]
    ent[0][2] = ctx5.A
    ent[1][3] = ctx5.A ** 3
    m = ExactMatrix.from_rows(ctx5, ent)
    assert la.flat(m) == m
    # nilpotent: strictly upper triangular
    nil = [[ctx5.zero] * n for _ in range(n)]
    nil[0][1] = ctx5.one
    nil[1][2] = ctx5.A
    nil[2][3] = rand_scalar(ctx5, rng)
    nilm = ExactMatrix.from_rows(ctx5, nil)
    assert la.flat(nilm).rows == 0
    assert la.charpoly(nilm).coeffs == (
        ctx5.zero, ctx5.zero, ctx5.zero, ctx5.zero, ctx5.one,
    )


def test_flat_charpoly_law(ctx5):
    rng = random.Random(19)
    for _ in range(10):
        dim = rng.randrange(2, 5)
        m = rand_matrix(ctx5, rng, dim, dim)
        # force singularity by making the last row a multiple of the first
        f = rand_scalar(ctx5, rng)
        rows = m.to_lists()
        rows[-1] = [f * e for e in rows[0]]
        m = ExactMatrix.from_rows(ctx5, rows)
        fm = la.flat(m)
        r = fm.rows
        assert la.rank(fm) == r  # the restriction is invertible
        expected = [ctx5.zero] * (dim - r) + list(la.charpoly(fm).coeffs)
        assert la.charpoly(m).coeffs == tuple(expected)


def test_poly_helpers(ctx5):
    A = ctx5.A
    prod = la.expand_product(ctx5, [[-A, 1], [A, 1]])
    assert prod.coeffs == (-(A ** 2), ctx5.zero, ctx5.one)
    assert prod.divisible_by([-A, 1])
    assert not prod.divisible_by([-1, 1])
    assert la.charpoly_root_check(prod, A)
    assert not la.charpoly_root_check(prod, ctx5.one)
    q, r = la.poly_divmod(ctx5, [ctx5.one, ctx5.zero, ctx5.one], [ctx5.A, ctx5.one])
    assert len(q) == 2 and len(r) == 1
    # num = q * den + r
    back = la._poly_mul(ctx5, q, [ctx5.A, ctx5.one])
    back[0] = back[0] + r[0]
    assert back == [ctx5.one, ctx5.zero, ctx5.one]
    with pytest.raises(ShapeError):
        CharPoly(ctx5, [ctx5.A, ctx5.A])  # not monic


def test_json_round_trip(ctx5):
    rng = random.Random(20)
    m = rand_matrix(ctx5, rng, 2, 2).with_labels(((0, 0), (2, 2)))
    again = la.matrix_from_json(ctx5, la.matrix_to_json(m))
    assert again == m and again.labels == m.labels
    cp = la.charpoly(m)
    data = cp.to_json()
    assert data["var"] == "x" and data["monic"] is True
    assert CharPoly.from_json(ctx5, data) == cp