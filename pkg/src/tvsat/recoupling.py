"""Closed-form recoupling evaluations: quantum integers, vertex weights,
theta and tetrahedral networks, twist and braiding coefficients.

Everything here is a function of a FieldContext and small integer colors,
returning exact Scalars. The admissible color set depends on the parity of
the level p:

    p even:  colors 0, 1, ..., p/2 - 2
    p odd:   even colors 0, 2, ..., p - 3

A triple {a, b, c} is admissible when the colors exist, a + b + c is even,
each color is at most the sum of the other two, and a + b + c stays below
the level bound (p - 4 for even p, 2p - 4 for odd p, inclusive).

The tetrahedral evaluation follows the standard closed form: with vertex
half-sums a_1..a_4 and the three half-sums of opposite edge pairs b_1..b_3,

    Tet = (I!/E!) * sum_s (-1)^s [s+1]! / (prod_i [s-a_i]! prod_j [b_j-s]!)

summed over max a_i <= s <= min b_j, where I! multiplies [b_j - a_i]! over
all pairs and E! multiplies the quantum factorials of the six edge colors.
The independent diagram oracle in tl_oracle.py evaluates the same networks
by planar reduction, and the test suite holds the two routes equal.
"""

from __future__ import annotations

from .errors import AdmissibilityError, DomainError

__all__ = [
    "colors",
    "is_color",
    "admissible",
    "admissible_with",
    "diagonal_admissible",
    "self_admissible_colors",
    "qint",
    "qfact",
    "delta",
    "mu",
    "lambda_coef",
    "theta",
    "tet",
    "hopf",
    "omega_coeffs",
    "verlinde_dim",
]


def colors(ctx):
    """The ordered list of colors for this context's level."""
    p = ctx.p
    if p % 2 == 0:
        return list(range(0, p // 2 - 1))
    return list(range(0, p - 2, 2))


def is_color(ctx, a):
    if not isinstance(a, int) or isinstance(a, bool):
        return False
    p = ctx.p
    if p % 2 == 0:
        return 0 <= a <= p // 2 - 2
    return a % 2 == 0 and 0 <= a <= p - 3


def _check_color(ctx, a):
    if not is_color(ctx, a):
        raise DomainError(f"{a!r} is not a color at p={ctx.p}")


def _sum_bound(ctx):
    return ctx.p - 4 if ctx.p % 2 == 0 else 2 * ctx.p - 4


def admissible(ctx, a, b, c):
    """Whether the unordered triple {a, b, c} labels a legal vertex."""
    for x in (a, b, c):
        _check_color(ctx, x)
    if (a + b + c) % 2 != 0:
        return False
    if a > b + c or b > a + c or c > a + b:
        return False
    return a + b + c <= _sum_bound(ctx)


def admissible_with(ctx, i, j):
    """All colors t with {i, j, t} admissible, ascending."""
    return [t for t in colors(ctx) if admissible(ctx, i, j, t)]


def diagonal_admissible(ctx, c):
    """All colors i with {i, i, c} admissible, ascending."""
    return [i for i in colors(ctx) if admissible(ctx, i, i, c)]


def self_admissible_colors(ctx):
    """Colors a with {a, a, a} admissible, ascending."""
    return [a for a in colors(ctx) if admissible(ctx, a, a, a)]


# ---------------------------------------------------------------------------
# quantum integers and factorials


def qint(ctx, n):
    """The quantum integer [n] = (A^2n - A^-2n)/(A^2 - A^-2)."""
    if not isinstance(n, int):
        raise DomainError(f"quantum integer index must be an int, got {n!r}")
    if n < 0:
        return -qint(ctx, -n)
    key = ("qint", n)
    if key in ctx.memo:
        return ctx.memo[key]
    total = ctx.zero
    for k in range(n):
        total = total + ctx.from_A_power(2 * (n - 1 - 2 * k))
    ctx.memo[key] = total
    return total


def qfact(ctx, n):
    """The quantum factorial [n]! = [1][2]...[n], with [0]! = 1."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"quantum factorial needs n >= 0, got {n!r}")
    key = ("qfact", n)
    if key in ctx.memo:
        return ctx.memo[key]
    value = ctx.one if n == 0 else qfact(ctx, n - 1) * qint(ctx, n)
    ctx.memo[key] = value
    return value


# ---------------------------------------------------------------------------
# one-vertex and one-edge weights


def delta(ctx, c):
    """Loop value of a single c-colored circle: (-1)^c [c+1]."""
    _check_color(ctx, c)
    d = qint(ctx, c + 1)
    return -d if c % 2 else d


def mu(ctx, i):
    """Twist eigenvalue of a positive curl on an i-colored strand."""
    _check_color(ctx, i)
    s = ctx.from_A_power(i * i + 2 * i)
    return -s if i % 2 else s


def lambda_coef(ctx, a, b, c):
    """Half-twist coefficient for exchanging an a- and a b-colored strand
    joined into c; equals mu(a) when a = b and c = 0."""
    if not admissible(ctx, a, b, c):
        raise AdmissibilityError(f"{{{a},{b},{c}}} is not admissible at p={ctx.p}")
    exp = (a * (a + 2) + b * (b + 2) - c * (c + 2)) // 2
    s = ctx.from_A_power(exp)
    return -s if ((a + b - c) // 2) % 2 else s


def theta(ctx, a, b, c):
    """Theta network with edge colors a, b, c."""
    if not admissible(ctx, a, b, c):
        raise AdmissibilityError(f"{{{a},{b},{c}}} is not admissible at p={ctx.p}")
    key = ("theta", a, b, c)
    if key in ctx.memo:
        return ctx.memo[key]
    x = (a + b - c) // 2
    y = (b + c - a) // 2
    z = (c + a - b) // 2
    num = qfact(ctx, x + y + z + 1) * qfact(ctx, x) * qfact(ctx, y) * qfact(ctx, z)
    den = qfact(ctx, x + y) * qfact(ctx, y + z) * qfact(ctx, z + x)
    value = num / den
    if (x + y + z) % 2:
        value = -value
    ctx.memo[key] = value
    return value


def tet(ctx, t, i1, i2, c, j1, j2):
    """Tetrahedral network evaluation.

    Argument layout: the six edge colors with vertex triples
    {t, i1, j1}, {t, i2, j2}, {c, i1, i2}, {c, j1, j2}; opposite edge pairs
    are (t, c), (i1, j1), (i2, j2). All four vertices must be admissible.
    Reduces to theta(i1, j1, t) when c = 0 (forcing i1 = i2, j1 = j2).
    """
    vertices = ((t, i1, j1), (t, i2, j2), (c, i1, i2), (c, j1, j2))
    for v in vertices:
        if not admissible(ctx, *v):
            raise AdmissibilityError(
                f"tet vertex {{{v[0]},{v[1]},{v[2]}}} is not admissible at p={ctx.p}"
            )
    key = ("tet", t, i1, i2, c, j1, j2)
    if key in ctx.memo:
        return ctx.memo[key]

    # the three pairs of edges not sharing a vertex are (t, c), (i1, j2),
    # (i2, j1); each b is half the sum of the four edges outside one pair
    a_list = [sum(v) // 2 for v in vertices]
    b_list = [
        (i1 + j1 + i2 + j2) // 2,
        (t + c + i2 + j1) // 2,
        (t + c + i1 + j2) // 2,
    ]
    interaction = ctx.one
    for bj in b_list:
        for ai in a_list:
            interaction = interaction * qfact(ctx, bj - ai)
    edges = ctx.one
    for e in (t, i1, i2, c, j1, j2):
        edges = edges * qfact(ctx, e)

    total = ctx.zero
    for s in range(max(a_list), min(b_list) + 1):
        term = qfact(ctx, s + 1)
        den = ctx.one
        for ai in a_list:
            den = den * qfact(ctx, s - ai)
        for bj in b_list:
            den = den * qfact(ctx, bj - s)
        term = term / den
        if s % 2:
            term = -term
        total = total + term

    value = interaction / edges * total
    ctx.memo[key] = value
    return value


def hopf(ctx, a, t):
    """Value of the zero-framed two-component link of linked circles
    colored a and t: (-1)^(a+t) [(a+1)(t+1)]."""
    _check_color(ctx, a)
    _check_color(ctx, t)
    v = qint(ctx, (a + 1) * (t + 1))
    return -v if (a + t) % 2 else v


def omega_coeffs(ctx):
    """Coefficients of the surgery element on the color basis: eta * Delta_c.

    Returned as a list aligned with colors(ctx). Their defining property,
    sum_c coeff_c * mu_c * Delta_c = eta * (sum_c mu_c Delta_c^2), is pinned
    in the tests.
    """
    return [ctx.eta * delta(ctx, c) for c in colors(ctx)]


# ---------------------------------------------------------------------------
# Verlinde-type dimension counts


def verlinde_dim(ctx, g, c):
    """Dimension of the level-p module of a genus-g surface with one
    puncture colored c: the number of admissible colorings of a caterpillar
    spine with g loops and a free end colored c.

    genus 0: 1 if c = 0 else 0. genus 1: the number of colors x with
    {x, x, c} admissible. Higher genus is counted by dynamic programming
    along the spine.
    """
    if not isinstance(g, int) or g < 0:
        raise DomainError(f"genus must be a nonnegative int, got {g!r}")
    _check_color(ctx, c)
    if g == 0:
        return 1 if c == 0 else 0
    loop = {s: len(diagonal_admissible(ctx, s)) for s in colors(ctx)}
    if g == 1:
        return loop[c]
    # vec[t] = number of colorings of the first i loops fused into a single
    # edge colored t; start with two loops fused at one vertex, then absorb
    # one loop per step, and close on the puncture color.
    vec = {}
    for t in colors(ctx):
        count = 0
        for s1 in colors(ctx):
            for s2 in colors(ctx):
                if admissible(ctx, s1, s2, t):
                    count += loop[s1] * loop[s2]
        vec[t] = count
    for _ in range(g - 2):
        new = {}
        for t2 in colors(ctx):
            count = 0
            for t1 in colors(ctx):
                for s in colors(ctx):
                    if admissible(ctx, t1, s, t2):
                        count += vec[t1] * loop[s]
            new[t2] = count
        vec = new
    # the last spine edge is the puncture color itself
    return vec[c]
