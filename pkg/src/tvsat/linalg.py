"""Exact linear algebra over the cyclotomic scalar ring.

Every matrix in this package is small and dense (module dimensions stay
well under a hundred), so the algorithms favour exactness and clarity:
Gaussian elimination for rank, Hessenberg reduction for characteristic
polynomials, repeated squaring for the stable-image restriction. A
trace-based characteristic polynomial serves as an independent
cross-check and as a fallback when elimination pivots cannot be inverted.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    ContextMismatchError,
    DegenerateExtensionError,
    DomainError,
    ShapeError,
)
from .scalars import Scalar, scalar_from_json, scalar_to_json


def _coerce_entry(ctx, value):
    if isinstance(value, Scalar):
        if not ctx.compatible(value.ctx):
            raise ContextMismatchError(
                "matrix entry belongs to an incompatible scalar context"
            )
        return value
    if isinstance(value, (int, Fraction)):
        return ctx.scalar(value)
    raise DomainError(f"cannot use {type(value).__name__} as a matrix entry")


class ExactMatrix:
    """Dense matrix of exact scalars, immutable once built.

    `labels` optionally names the basis of a square matrix (the engine
    uses admissible colorings as labels); arithmetic that preserves the
    basis preserves the labels, everything else drops them.
    """

    __slots__ = ("ctx", "rows", "cols", "entries", "labels")

    def __init__(self, ctx, rows, cols, entries, labels=None):
        if rows < 0 or cols < 0:
            raise ShapeError("matrix dimensions must be nonnegative")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(entries)}"
            )
        if labels is not None:
            labels = tuple(labels)
            if rows != cols:
                raise ShapeError("only square matrices carry basis labels")
            if len(labels) != rows:
                raise ShapeError(
                    f"{rows}x{cols} matrix cannot have {len(labels)} labels"
                )
        self.ctx = ctx
        self.rows = rows
        self.cols = cols
        self.entries = tuple(_coerce_entry(ctx, e) for e in entries)
        self.labels = labels

    @classmethod
    def from_rows(cls, ctx, rows, labels=None):
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ShapeError("rows have inconsistent lengths")
        return cls(ctx, n, m, [e for r in rows for e in r], labels=labels)

    @classmethod
    def zeros(cls, ctx, rows, cols):
        return cls(ctx, rows, cols, [ctx.zero] * (rows * cols))

    @classmethod
    def identity(cls, ctx, n, labels=None):
        ent = [ctx.zero] * (n * n)
        for i in range(n):
            ent[i * n + i] = ctx.one
        return cls(ctx, n, n, ent, labels=labels)

    def entry(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ShapeError(f"index ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def __getitem__(self, key):
        i, j = key
        return self.entry(i, j)

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def _check_ctx(self, other):
        if not self.ctx.compatible(other.ctx):
            raise ContextMismatchError("matrices from incompatible contexts")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_ctx(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("cannot add matrices of different shapes")
        ent = [a + b for a, b in zip(self.entries, other.entries)]
        labels = self.labels if self.labels == other.labels else None
        return ExactMatrix(self.ctx, self.rows, self.cols, ent, labels=labels)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        ent = [-a for a in self.entries]
        return ExactMatrix(self.ctx, self.rows, self.cols, ent, labels=self.labels)

    def scale(self, factor):
        f = _coerce_entry(self.ctx, factor)
        ent = [f * a for a in self.entries]
        return ExactMatrix(self.ctx, self.rows, self.cols, ent, labels=self.labels)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_ctx(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        zero = self.ctx.zero
        ent = []
        for i in range(self.rows):
            arow = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = arow[k]
                    if not a.is_zero():
                        acc = acc + a * other.entries[k * other.cols + j]
                ent.append(acc)
        return ExactMatrix(self.ctx, self.rows, other.cols, ent)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("matrix powers take a nonnegative integer")
        if self.rows != self.cols:
            raise ShapeError("only square matrices can be raised to a power")
        result = ExactMatrix.identity(self.ctx, self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        if self.labels is not None:
            result = result.with_labels(self.labels)
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.ctx.compatible(other.ctx)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def transpose(self):
        ent = [self.entries[j * self.cols + i] for i in range(self.cols) for j in range(self.rows)]
        return ExactMatrix(self.ctx, self.cols, self.rows, ent)

    def trace(self):
        if self.rows != self.cols:
            raise ShapeError("trace needs a square matrix")
        acc = self.ctx.zero
        for i in range(self.rows):
            acc = acc + self.entries[i * self.cols + i]
        return acc

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def with_labels(self, labels):
        return ExactMatrix(
            self.ctx, self.rows, self.cols, self.entries, labels=labels
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over p={self.ctx.p})"


def _label_to_json(label):
    if isinstance(label, tuple):
        return [_label_to_json(x) for x in label]
    return label


def _label_from_json(data):
    if isinstance(data, list):
        return tuple(_label_from_json(x) for x in data)
    return data


def matrix_to_json(m):
    out = {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [scalar_to_json(e) for e in m.entries],
    }
    if m.labels is not None:
        out["labels"] = [_label_to_json(l) for l in m.labels]
    return out


def matrix_from_json(ctx, data):
    labels = data.get("labels")
    if labels is not None:
        labels = tuple(_label_from_json(l) for l in labels)
    return ExactMatrix(
        ctx,
        data["rows"],
        data["cols"],
        [scalar_from_json(ctx, e) for e in data["entries"]],
        labels=labels,
    )


def tensor(a, b):
    """Kronecker product with lexicographic basis order (left index major)."""
    a._check_ctx(b)
    rows, cols = a.rows * b.rows, a.cols * b.cols
    ent = [None] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            aij = a.entries[i * a.cols + j]
            for k in range(b.rows):
                dst = (i * b.rows + k) * cols + j * b.cols
                for l in range(b.cols):
                    ent[dst + l] = aij * b.entries[k * b.cols + l]
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = tuple((x, y) for x in a.labels for y in b.labels)
    return ExactMatrix(a.ctx, rows, cols, ent, labels=labels)


def direct_sum(blocks):
    """Block-diagonal sum; labels concatenate when every block has them."""
    blocks = list(blocks)
    if not blocks:
        raise ShapeError("direct_sum needs at least one block")
    ctx = blocks[0].ctx
    for b in blocks[1:]:
        blocks[0]._check_ctx(b)
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    zero = ctx.zero
    ent = [zero] * (rows * cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            dst = (r0 + i) * cols + c0
            ent[dst : dst + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    labels = None
    if all(b.labels is not None for b in blocks) and rows == cols:
        labels = tuple(l for b in blocks for l in b.labels)
    return ExactMatrix(ctx, rows, cols, ent, labels=labels)


def block_matrix(ctx, grid):
    """Assemble a matrix from a 2d grid of blocks; None means a zero block.

    Block heights are read off each grid row and widths off each grid
    column, so every row needs at least one real block and likewise for
    columns.
    """
    if not grid or any(len(r) != len(grid[0]) for r in grid):
        raise ShapeError("block grid must be rectangular and nonempty")
    nbr, nbc = len(grid), len(grid[0])
    heights = [None] * nbr
    widths = [None] * nbc
    for i in range(nbr):
        for j in range(nbc):
            b = grid[i][j]
            if b is None:
                continue
            if heights[i] is None:
                heights[i] = b.rows
            elif heights[i] != b.rows:
                raise ShapeError(f"inconsistent block heights in grid row {i}")
            if widths[j] is None:
                widths[j] = b.cols
            elif widths[j] != b.cols:
                raise ShapeError(f"inconsistent block widths in grid column {j}")
    if any(h is None for h in heights) or any(w is None for w in widths):
        raise ShapeError("every grid row and column needs at least one block")
    rows, cols = sum(heights), sum(widths)
    ent = [ctx.zero] * (rows * cols)
    r0 = 0
    for i in range(nbr):
        c0 = 0
        for j in range(nbc):
            b = grid[i][j]
            if b is not None:
                for k in range(b.rows):
                    dst = (r0 + k) * cols + c0
                    ent[dst : dst + b.cols] = b.row(k)
            c0 += widths[j]
        r0 += heights[i]
    return ExactMatrix(ctx, rows, cols, ent)


def _eliminate(m):
    """Row-reduce a copy of m; returns (echelon rows, pivot column list)."""
    work = m.to_lists()
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if not work[i][c].is_zero()), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c].inverse()
        work[r] = [inv * e for e in work[r]]
        for i in range(rows):
            if i != r and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return work, pivots


def rank(m):
    return len(_eliminate(m)[1])


def rank_kernel(m):
    """Rank of m together with an exact basis of its right kernel.

    Kernel vectors are returned as tuples of scalars, one per free column.
    """
    work, pivots = _eliminate(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    zero, one = m.ctx.zero, m.ctx.one
    basis = []
    for fc in free:
        vec = [zero] * m.cols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(tuple(vec))
    return len(pivots), basis


def _independent_columns(m):
    """Indices of a maximal set of earliest linearly independent columns.

    These are exactly the pivot columns of the row echelon form.
    """
    return _eliminate(m)[1]


def solve_exact(u, b):
    """Solve u @ x = b for x, with u of full column rank.

    Raises ShapeError when the system is inconsistent; callers use this
    only for systems that are solvable by construction.
    """
    u._check_ctx(b)
    if u.rows != b.rows:
        raise ShapeError("incompatible shapes in solve_exact")
    aug = ExactMatrix(
        u.ctx,
        u.rows,
        u.cols + b.cols,
        [e for i in range(u.rows) for e in (u.row(i) + b.row(i))],
    )
    work, pivots = _eliminate(aug)
    if len(pivots) != u.cols or any(p >= u.cols for p in pivots):
        raise ShapeError("solve_exact needs a full-column-rank left side")
    for r in range(len(pivots), u.rows):
        if any(not e.is_zero() for e in work[r][u.cols :]):
            raise ShapeError("inconsistent linear system in solve_exact")
    ent = []
    for r in range(u.cols):
        ent.extend(work[r][u.cols :])
    return ExactMatrix(u.ctx, u.cols, b.cols, ent)


def flat(m):
    """Restriction of a square matrix to its stable image.

    Squaring approaches the eventual image; once the rank stops dropping
    the column space has stabilized, and the original map restricts to an
    invertible map on it. The result is expressed in the basis formed by
    the first independent columns of the stabilized power.
    """
    if m.rows != m.cols:
        raise ShapeError("flat needs a square matrix")
    d = m.rows
    if d == 0:
        return m
    r = rank(m)
    if r == d:
        return m
    if r == 0:
        return ExactMatrix(m.ctx, 0, 0, [])
    power = m
    while True:
        nxt = power * power
        r2 = rank(nxt)
        if r2 == r:
            break
        power, r = nxt, r2
    if r == 0:
        return ExactMatrix(m.ctx, 0, 0, [])
    cols = _independent_columns(power)
    u = ExactMatrix(
        m.ctx, d, r, [power.entry(i, c) for i in range(d) for c in cols]
    )
    return solve_exact(u, m * u)


class CharPoly:
    """Monic characteristic polynomial with exact coefficients.

    Coefficients are stored lowest-degree first; the leading, highest
    coefficient is always one.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        coeffs = tuple(_coerce_entry(ctx, c) for c in coeffs)
        if not coeffs:
            raise ShapeError("a polynomial needs at least one coefficient")
        if coeffs[-1] != ctx.one:
            raise ShapeError("characteristic polynomials are monic")
        self.ctx = ctx
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def evaluate(self, value):
        v = _coerce_entry(self.ctx, value)
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.ctx.compatible(other.ctx) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return CharPoly(self.ctx, _poly_mul(self.ctx, self.coeffs, other.coeffs))

    def divisible_by(self, divisor):
        """Whether the polynomial with the given lowest-first coefficients
        divides this one exactly."""
        den = [_coerce_entry(self.ctx, c) for c in divisor]
        _, rem = poly_divmod(self.ctx, list(self.coeffs), den)
        return all(c.is_zero() for c in rem)

    def to_json(self):
        return {
            "var": "x",
            "monic": True,
            "coeffs": [scalar_to_json(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, ctx, data):
        return cls(ctx, [scalar_from_json(ctx, c) for c in data["coeffs"]])

    def __repr__(self):
        return f"CharPoly(degree {self.degree} over p={self.ctx.p})"


def _poly_mul(ctx, a, b):
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def poly_divmod(ctx, num, den):
    """Exact polynomial division; coefficients lowest-degree first."""
    den = [_coerce_entry(ctx, c) for c in den]
    while den and den[-1].is_zero():
        den = den[:-1]
    if not den:
        raise DomainError("polynomial division by zero")
    rem = [_coerce_entry(ctx, c) for c in num]
    if len(rem) < len(den):
        return [ctx.zero], rem
    lead_inv = den[-1].inverse()
    quot = [ctx.zero] * (len(rem) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(den) - 1] * lead_inv
        quot[k] = c
        if not c.is_zero():
            for i, d in enumerate(den):
                rem[k + i] = rem[k + i] - c * d
    rem = rem[: len(den) - 1] or [ctx.zero]
    return quot, rem


def expand_product(ctx, factors):
    """Multiply out a list of polynomial factors (lowest-first coefficient
    lists) into a single monic polynomial."""
    acc = [ctx.one]
    for f in factors:
        acc = _poly_mul(ctx, acc, [_coerce_entry(ctx, c) for c in f])
    return CharPoly(ctx, acc)


def charpoly_root_check(cp, value):
    return cp.evaluate(value).is_zero()


def _hessenberg(m):
    """Similarity-reduce to upper Hessenberg form; returns lists of lists."""
    h = m.to_lists()
    n = m.rows
    for j in range(n - 2):
        pivot = next(
            (i for i in range(j + 1, n) if not h[i][j].is_zero()), None
        )
        if pivot is None:
            continue
        if pivot != j + 1:
            h[j + 1], h[pivot] = h[pivot], h[j + 1]
            for i in range(n):
                h[i][j + 1], h[i][pivot] = h[i][pivot], h[i][j + 1]
        inv = h[j + 1][j].inverse()
        for i in range(j + 2, n):
            f = h[i][j] * inv
            if f.is_zero():
                continue
            h[i] = [a - f * b for a, b in zip(h[i], h[j + 1])]
            for k in range(n):
                h[k][j + 1] = h[k][j + 1] + f * h[k][i]
    return h


def _hessenberg_charpoly(ctx, h):
    """Characteristic polynomial of an upper Hessenberg matrix by the
    leading-principal-minor recurrence; lowest-first coefficients."""
    n = len(h)
    minors = [[ctx.one]]
    for k in range(1, n + 1):
        # (x - h[k-1][k-1]) * minors[k-1]
        prev = minors[k - 1]
        term = [ctx.zero] + list(prev)
        dk = h[k - 1][k - 1]
        for i, c in enumerate(prev):
            term[i] = term[i] - dk * c
        # each lower row i reaches column k-1 only through the chain of
        # subdiagonal entries between row i+1 and row k-1
        sub = ctx.one
        for i in range(k - 2, -1, -1):
            sub = sub * h[i + 1][i]
            if sub.is_zero():
                break
            coeff = h[i][k - 1] * sub
            if not coeff.is_zero():
                for idx, c in enumerate(minors[i]):
                    term[idx] = term[idx] - coeff * c
        minors.append(term)
    return minors[n]


def charpoly_by_traces(m):
    """Characteristic polynomial via the trace recurrence.

    Slower than the Hessenberg route but division-free apart from integer
    scaling, which makes it both a safe fallback and an independent
    cross-check in the tests.
    """
    if m.rows != m.cols:
        raise ShapeError("charpoly needs a square matrix")
    ctx = m.ctx
    n = m.rows
    if n == 0:
        return CharPoly(ctx, (ctx.one,))
    coeffs_high = [ctx.one]  # highest-first as they come out
    work = m
    ident = ExactMatrix.identity(ctx, n)
    for k in range(1, n + 1):
        ck = work.trace() * Fraction(-1, k)
        coeffs_high.append(ck)
        if k < n:
            work = m * (work + ident.scale(ck))
    return CharPoly(ctx, tuple(reversed(coeffs_high)))


def charpoly(m):
    """Characteristic polynomial of a square matrix, monic, lowest-first."""
    if m.rows != m.cols:
        raise ShapeError("charpoly needs a square matrix")
    ctx = m.ctx
    if m.rows == 0:
        return CharPoly(ctx, (ctx.one,))
    try:
        h = _hessenberg(m)
        return CharPoly(ctx, _hessenberg_charpoly(ctx, h))
    except DegenerateExtensionError:
        # pivots with eta parts can fail to invert at levels where the
        # two-dimensional extension degenerates; the trace route only
        # divides by integers
        return charpoly_by_traces(m)


def power_traces(cp, upto):
    """Traces of the first `upto` powers of any matrix with characteristic
    polynomial cp, via the Newton identities."""
    ctx = cp.ctx
    n = cp.degree
    # elementary symmetric functions: e_k = (-1)^k * coefficient of x^(n-k)
    es = [ctx.zero] * (upto + 1)
    for k in range(1, min(upto, n) + 1):
        c = cp.coeffs[n - k]
        es[k] = c if k % 2 == 0 else -c
    traces = [ctx.zero] * (upto + 1)
    for k in range(1, upto + 1):
        acc = es[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            term = es[k - i] * traces[i]
            acc = acc + term * ((-1) ** (k - 1 + i))
        traces[k] = acc
    return traces[1:]
