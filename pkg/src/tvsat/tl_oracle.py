"""Independent diagram oracle for small recoupling networks.

This module evaluates closed colored networks (loops, curls, theta and
tetrahedral graphs, the two-circle link) by brute planar reduction instead
of closed formulas: cabled strands carry Jones-Wenzl projectors expanded
into the diagram basis via the Wenzl recursion, crossings expand by the
bracket relation, and the machine sweeps the diagram bottom to top while
tracking a weighted set of planar matchings of the current cross-section.

It shares nothing with recoupling.py beyond scalar arithmetic and the color
bookkeeping; the test suite holds the two routes equal on every admissible
input with colors up to the oracle bound. Larger colors raise
OracleLimitError rather than risk a long, memory-hungry sweep.

Crossing convention: a positive crossing expands as A^{-1} * (vertical
smoothing) + A * (horizontal smoothing), calibrated so that a closed
positive curl on a single strand equals -A^3 times the plain loop.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import AdmissibilityError, DomainError, OracleLimitError

__all__ = [
    "MAX_ORACLE_COLOR",
    "loop_value",
    "curl_value",
    "theta_value",
    "tet_value",
    "hopf_value",
]

MAX_ORACLE_COLOR = 4


# ---------------------------------------------------------------------------
# path tracing shared by diagram composition and the sweep


def _trace(adj, externals):
    """Pair up degree-one external nodes through degree-two internals.

    Returns (pairing dict over externals, number of closed internal loops).
    Multi-edges are honored; each traversal consumes one edge instance.
    """
    pairing = {}
    visited = set()
    for start in externals:
        if start in pairing:
            continue
        prev, cur = None, start
        visited.add(start)
        while True:
            options = list(adj[cur])
            if prev in options:
                options.remove(prev)
            nxt = options[0]
            if nxt in externals:
                break
            visited.add(nxt)
            prev, cur = cur, nxt
        pairing[start] = nxt
        pairing[nxt] = start
        visited.add(nxt)
    loops = 0
    for node in adj:
        if node in visited:
            continue
        loops += 1
        prev, cur = None, node
        while cur not in visited:
            visited.add(cur)
            options = list(adj[cur])
            if prev in options:
                options.remove(prev)
            prev, cur = cur, options[0]
    return pairing, loops


# ---------------------------------------------------------------------------
# Temperley-Lieb elements as weighted diagram dictionaries.
#
# A diagram on (nb bottom, nt top) points is a perfect matching of
# 0..nb+nt-1 (bottom first, left to right, then top), stored as a tuple m
# with m[i] = partner of i. An element is a dict {diagram: Scalar}.


def _id_diagram(n):
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def _hook_diagram(n, k):
    """e_k on n strands: bottom arc (k, k+1) and top arc (k, k+1)."""
    m = list(range(n, 2 * n)) + list(range(n))
    m[k], m[k + 1] = k + 1, k
    m[n + k], m[n + k + 1] = n + k + 1, n + k
    return tuple(m)


def _compose_diagrams(d1, d2, n):
    """Stack d2 on top of d1 (both n -> n); return (diagram, loops)."""
    # node ids: d1 indices used directly (bottom 0..n-1, middle n..2n-1);
    # d2 points shift by n (middle n..2n-1, top 2n..3n-1)
    adj = {}

    def add_edge(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for i in range(2 * n):
        if i < d1[i]:
            add_edge(i, d1[i])
    for i in range(2 * n):
        if i < d2[i]:
            add_edge(i + n, d2[i] + n)

    externals = set(range(n)) | set(range(2 * n, 3 * n))
    pairing, loops = _trace(adj, externals)

    result = [0] * (2 * n)
    for i in range(n):
        j = pairing[i]
        result[i] = j - n if j >= 2 * n else j
    for i in range(2 * n, 3 * n):
        j = pairing[i]
        result[i - n] = j - n if j >= 2 * n else j
    return tuple(result), loops


def _delta_loop(ctx):
    return -(ctx.from_A_power(2) + ctx.from_A_power(-2))


def _elem_mul(ctx, e1, e2, n):
    delta = _delta_loop(ctx)
    out = {}
    for d1, c1 in e1.items():
        for d2, c2 in e2.items():
            diag, loops = _compose_diagrams(d1, d2, n)
            w = c1 * c2
            for _ in range(loops):
                w = w * delta
            out[diag] = out[diag] + w if diag in out else w
    return {d: c for d, c in out.items() if not c.is_zero()}


def _extend_diagram(d, n):
    """Turn an n -> n diagram into (n+1) -> (n+1) by adding a pass-through
    strand on the right."""
    out = [0] * (2 * n + 2)
    for i in range(2 * n):
        j = d[i]
        ii = i if i < n else i + 1
        jj = j if j < n else j + 1
        out[ii] = jj
    out[n] = 2 * n + 1
    out[2 * n + 1] = n
    return tuple(out)


def _chain_delta(ctx, k):
    """Trace of the k-strand projector: (-1)^k [k+1], for any k >= 0."""
    from .recoupling import qint

    v = qint(ctx, k + 1)
    return -v if k % 2 else v


def _jw_element(ctx, n):
    """The n-strand Jones-Wenzl projector in the diagram basis.

    Wenzl recursion with loop value delta = -A^2 - A^-2:
    f_n = F - (D_{n-2}/D_{n-1}) F e_{n-1} F, F = f_{n-1} extended by a
    strand, D_k the k-strand projector trace.
    """
    key = ("jw", n)
    if key in ctx.memo:
        return ctx.memo[key]
    if n == 0:
        elem = {(): ctx.one}
    elif n == 1:
        elem = {_id_diagram(1): ctx.one}
    else:
        denom = _chain_delta(ctx, n - 1)
        if denom.is_zero():
            raise OracleLimitError(
                f"the {n}-strand projector does not exist at p={ctx.p}"
            )
        coef = _chain_delta(ctx, n - 2) / denom
        ext = {_extend_diagram(d, n - 1): c for d, c in _jw_element(ctx, n - 1).items()}
        hook = {_hook_diagram(n, n - 2): ctx.one}
        correction = _elem_mul(ctx, _elem_mul(ctx, ext, hook, n), ext, n)
        elem = dict(ext)
        for d, c in correction.items():
            c = c * coef
            elem[d] = elem[d] - c if d in elem else -c
        elem = {d: c for d, c in elem.items() if not c.is_zero()}
    ctx.memo[key] = elem
    return elem


# ---------------------------------------------------------------------------
# the sweeping machine


@lru_cache(maxsize=200000)
def _attach_one(match, pos, diag, nb, nt):
    """Glue a diagram's bottom points onto the boundary window
    [pos, pos+nb); returns (new_match, loops). The window is replaced by
    the diagram's nt top points, order elsewhere preserved. Purely
    combinatorial, so results are cached process-wide."""
    size = len(match)
    adj = {}

    def add_edge(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    def node_of(i):
        # boundary window point pos+k is identified with diagram bottom k
        if pos <= i < pos + nb:
            return ("d", i - pos)
        return ("b", i)

    for i in range(size):
        if i < match[i]:
            add_edge(node_of(i), node_of(match[i]))
    for k in range(nb + nt):
        if k < diag[k]:
            add_edge(("d", k), ("d", diag[k]))

    new_points = (
        [("b", i) for i in range(pos)]
        + [("d", nb + u) for u in range(nt)]
        + [("b", i) for i in range(pos + nb, size)]
    )
    pairing, loops = _trace(adj, set(new_points))
    index = {pt: i for i, pt in enumerate(new_points)}
    new_match = tuple(index[pairing[pt]] for pt in new_points)
    return new_match, loops


def _apply_element(ctx, states, pos, element, nb, nt):
    delta = _delta_loop(ctx)
    out = {}
    for match, weight in states.items():
        for diag, coef in element.items():
            new_match, loops = _attach_one(match, pos, diag, nb, nt)
            w = weight * coef
            for _ in range(loops):
                w = w * delta
            out[new_match] = out[new_match] + w if new_match in out else w
    return {m: w for m, w in out.items() if not w.is_zero()}


_ID2 = (2, 3, 0, 1)
_HOOK2 = (1, 0, 3, 2)


def _cup(ctx, states, pos):
    return _apply_element(ctx, states, pos, {(1, 0): ctx.one}, 0, 2)


def _cap(ctx, states, pos):
    return _apply_element(ctx, states, pos, {(1, 0): ctx.one}, 2, 0)


def _cross(ctx, states, pos, sign=1):
    element = {
        _ID2: ctx.from_A_power(-sign),
        _HOOK2: ctx.from_A_power(sign),
    }
    return _apply_element(ctx, states, pos, element, 2, 2)


def _jw(ctx, states, pos, n):
    if n == 0:
        return states
    return _apply_element(ctx, states, pos, _jw_element(ctx, n), n, n)


def _close_with(ctx, states, pairing):
    return _apply_element(ctx, states, 0, {pairing: ctx.one}, len(pairing), 0)


def _finish(ctx, states):
    total = ctx.zero
    for match, weight in states.items():
        if match != ():
            raise AssertionError("sweep finished with an open boundary")
        total = total + weight
    return total


def _block_swap(ctx, states, pos, m, n, sign=1):
    """Pass the m-strand block at pos across the n-strand block after it."""
    for i in range(m):
        for j in range(n):
            states = _cross(ctx, states, pos + m - 1 - i + j, sign)
    return states


def _rainbow_match(n):
    return tuple(2 * n - 1 - k for k in range(2 * n))


def _cup_rainbow(ctx, states, pos, n):
    for k in range(n):
        states = _cup(ctx, states, pos + k)
    return states


def _cap_interface(ctx, states, pos, count):
    """Cap `count` nested arcs meeting at the interface left of index pos."""
    for k in range(count):
        states = _cap(ctx, states, pos - 1 - k)
    return states


# ---------------------------------------------------------------------------
# color checks


def _check_oracle_color(ctx, c):
    from .recoupling import is_color

    if not is_color(ctx, c):
        raise DomainError(f"{c!r} is not a color at p={ctx.p}")
    if c > MAX_ORACLE_COLOR:
        raise OracleLimitError(
            f"oracle bound is color {MAX_ORACLE_COLOR}, got {c}"
        )


def _sum_bound(ctx):
    return ctx.p - 4 if ctx.p % 2 == 0 else 2 * ctx.p - 4


# ---------------------------------------------------------------------------
# public network evaluations


def loop_value(ctx, c):
    """A plain closed c-colored loop (equals Delta_c)."""
    _check_oracle_color(ctx, c)
    states = {(): ctx.one}
    states = _cup_rainbow(ctx, states, 0, c)
    states = _jw(ctx, states, 0, c)
    states = _close_with(ctx, states, _rainbow_match(c))
    return _finish(ctx, states)


def curl_value(ctx, c):
    """A closed c-colored loop with one positive kink (equals mu_c times
    Delta_c)."""
    _check_oracle_color(ctx, c)
    states = {(): ctx.one}
    states = _cup_rainbow(ctx, states, 0, c)
    states = _jw(ctx, states, 0, c)
    states = _block_swap(ctx, states, 0, c, c, 1)
    states = _close_with(ctx, states, _rainbow_match(c))
    return _finish(ctx, states)


def _vertex_cups(a, b, c):
    """Bottom-vertex matching for three upward edge groups [a][b][c]:
    (a+b-c)/2 arcs between a and b, (b+c-a)/2 between b and c, and
    (a+c-b)/2 outer arcs between a and c. None when the counts fail."""
    x = (a + b - c) // 2
    y = (b + c - a) // 2
    z = (a + c - b) // 2
    if x < 0 or y < 0 or z < 0 or (a + b + c) % 2:
        return None
    m = [0] * (a + b + c)
    for k in range(x):
        u = z + x - 1 - k  # a-block, rightmost first
        v = a + k  # b-block, leftmost first
        m[u], m[v] = v, u
    for k in range(y):
        u = a + x + y - 1 - k  # b-block, rightmost first
        v = a + b + k  # c-block, leftmost first
        m[u], m[v] = v, u
    for k in range(z):
        u = z - 1 - k  # a-block outer points
        v = a + b + y + k  # c-block outer points
        m[u], m[v] = v, u
    return tuple(m)


def theta_value(ctx, a, b, c):
    """The closed theta network with edge colors a, b, c."""
    for x in (a, b, c):
        _check_oracle_color(ctx, x)
    cups = _vertex_cups(a, b, c)
    if cups is None or a + b + c > _sum_bound(ctx):
        raise AdmissibilityError(f"{{{a},{b},{c}}} is not admissible at p={ctx.p}")
    states = {cups: ctx.one}
    states = _jw(ctx, states, 0, a)
    states = _jw(ctx, states, a, b)
    states = _jw(ctx, states, a + b, c)
    states = _close_with(ctx, states, cups)
    return _finish(ctx, states)


def _split_element(ctx, c, i1, i2):
    """A trivalent vertex as a TL element: c strands below, i1 + i2 above."""
    l = (c + i1 - i2) // 2
    r = (c + i2 - i1) // 2
    m = (i1 + i2 - c) // 2
    if l < 0 or r < 0 or m < 0:
        return None
    nb = c
    match = [0] * (nb + i1 + i2)
    for k in range(l):
        u, v = k, nb + k
        match[u], match[v] = v, u
    for u in range(m):
        x = nb + l + u
        y = nb + l + 2 * m - 1 - u
        match[x], match[y] = y, x
    for k in range(r):
        u = l + k
        v = nb + l + 2 * m + k
        match[u], match[v] = v, u
    return {tuple(match): ctx.one}


def tet_value(ctx, t, i1, i2, c, j1, j2):
    """The closed tetrahedral network, vertex triples {t,i1,j1}, {t,i2,j2},
    {c,i1,i2}, {c,j1,j2}.

    Swept as: bottom vertex {c,j1,j2}; the c window splits into [i1][i2] at
    the vertex {c,i1,i2}; the {t,i1,j1} and {t,i2,j2} vertices close the
    side interfaces, leaving the t edge as two windows joined by an outer
    rainbow.
    """
    from .recoupling import admissible

    for x in (t, i1, i2, c, j1, j2):
        _check_oracle_color(ctx, x)
    for v in ((t, i1, j1), (t, i2, j2), (c, i1, i2), (c, j1, j2)):
        if not admissible(ctx, *v):
            raise AdmissibilityError(
                f"tet vertex {{{v[0]},{v[1]},{v[2]}}} is not admissible at p={ctx.p}"
            )

    # the sweep up to the boundary [j1][i1][i2][j2] is independent of t;
    # cache it so sweeps over many t values share the expensive part
    prefix_key = ("tet-prefix", j1, c, j2, i1, i2)
    if prefix_key in ctx.memo:
        states = dict(ctx.memo[prefix_key])
    else:
        # bottom vertex {c, j1, j2} with boundary groups [j1][c][j2]
        cups = _vertex_cups(j1, c, j2)
        states = {cups: ctx.one}
        states = _jw(ctx, states, 0, j1)
        states = _jw(ctx, states, j1, c)
        states = _jw(ctx, states, j1 + c, j2)
        # middle vertex {c, i1, i2}: split the c window into [i1][i2]
        states = _apply_element(
            ctx, states, j1, _split_element(ctx, c, i1, i2), c, i1 + i2
        )
        states = _jw(ctx, states, j1, i1)
        states = _jw(ctx, states, j1 + i1, i2)
        ctx.memo[prefix_key] = dict(states)
    # boundary [j1][i1][i2][j2]: cap the {t,i1,j1} interface
    x1 = (j1 + i1 - t) // 2
    states = _cap_interface(ctx, states, j1, x1)
    # leftovers of j1 and i1 fuse into the t window at the far left
    states = _jw(ctx, states, 0, t)
    # boundary [t][i2][j2]: cap the {t,i2,j2} interface
    x2 = (i2 + j2 - t) // 2
    states = _cap_interface(ctx, states, t + i2, x2)
    # boundary [t][t]: the t edge closes over the top
    states = _close_with(ctx, states, _rainbow_match(t))
    return _finish(ctx, states)


def hopf_value(ctx, a, t):
    """The two-circle link with linking number one, colors a and t."""
    _check_oracle_color(ctx, a)
    _check_oracle_color(ctx, t)
    states = {(): ctx.one}
    # trace closure of a two-strand braid: boundary [Al][Tl][Tr][Ar] with
    # rainbow returns; sigma_1 squared links the two cables
    states = _cup_rainbow(ctx, states, 0, a)
    states = _cup_rainbow(ctx, states, a, t)
    states = _jw(ctx, states, 0, a)
    states = _jw(ctx, states, a, t)
    states = _block_swap(ctx, states, 0, a, t, 1)
    states = _block_swap(ctx, states, 0, t, a, 1)
    states = _cap_interface(ctx, states, a + t, t)
    states = _cap_interface(ctx, states, a, a)
    return _finish(ctx, states)
