"""Evaluation of knot expressions into exact colored modules.

Knots are built from the unknot by twisted doubling, connected sum, and
satellite operations with a small catalogue of patterns. Each knot gets,
per boundary color, an exact matrix; invariants of cyclic and branched
cyclic covers are read off the characteristic polynomials of those
matrices.

Two formula routes overlap deliberately. A twisted double can be computed
directly (`Double`) or as a satellite with the winding-zero pattern
(`Sat` with `D(k)`), and a connected sum either blockwise (`Sum`) or
through the meridian pattern. The routes share no intermediate code
beyond the basic recoupling scalars, and the test suite holds them equal.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from . import recoupling as rc
from . import wheels as wh
from .errors import DomainError, UnsupportedColoringError
from .linalg import ExactMatrix
from .scalars import kappa_inv3


class KnotExpr:
    """Base class for knot expressions; see the concrete node types."""

    __slots__ = ()


_PATTERN_WINDING = {"D": 0, "MER": 1, "F10": 1, "P21": 2, "P31": 3, "T31": 3}


@dataclass(frozen=True)
class Pattern:
    """A satellite pattern from the catalogue.

    `D` takes a twist count and winds zero times around the core; the
    others are fixed curves winding once (MER, F10), twice (P21), or
    three times (P31, T31).
    """

    kind: str
    twists: int | None = None

    def __post_init__(self):
        if self.kind not in _PATTERN_WINDING:
            raise DomainError(f"unknown pattern kind {self.kind!r}")
        if self.kind == "D":
            if not isinstance(self.twists, int):
                raise DomainError("pattern D needs an integer twist count")
        elif self.twists is not None:
            raise DomainError(f"pattern {self.kind} takes no twist count")

    @property
    def winding(self):
        return _PATTERN_WINDING[self.kind]

    @property
    def text(self):
        if self.kind == "D":
            return f"D({self.twists})"
        return self.kind


@dataclass(frozen=True)
class Unknot(KnotExpr):
    __slots__ = ()


@dataclass(frozen=True)
class Double(KnotExpr):
    twists: int
    companion: KnotExpr

    def __post_init__(self):
        if not isinstance(self.twists, int):
            raise DomainError("twist count must be an integer")
        if not isinstance(self.companion, KnotExpr):
            raise DomainError("companion must be a knot expression")


@dataclass(frozen=True)
class Sum(KnotExpr):
    left: KnotExpr
    right: KnotExpr

    def __post_init__(self):
        for side in (self.left, self.right):
            if not isinstance(side, KnotExpr):
                raise DomainError("summands must be knot expressions")


@dataclass(frozen=True)
class Sat(KnotExpr):
    companion: KnotExpr
    pattern: Pattern

    def __post_init__(self):
        if not isinstance(self.companion, KnotExpr):
            raise DomainError("companion must be a knot expression")
        if not isinstance(self.pattern, Pattern):
            raise DomainError("pattern must be a Pattern")


def canonical(expr):
    """Canonical text form of an expression; doubles as the cache key and
    round-trips through the command-line parser."""
    if isinstance(expr, Unknot):
        return "U"
    if isinstance(expr, Double):
        return f"double({expr.twists},{canonical(expr.companion)})"
    if isinstance(expr, Sum):
        return f"sum({canonical(expr.left)},{canonical(expr.right)})"
    if isinstance(expr, Sat):
        return f"sat({canonical(expr.companion)},{expr.pattern.text})"
    raise DomainError(f"not a knot expression: {expr!r}")


class TVModule:
    """Per-color exact matrices of one knot expression.

    Colors a construction cannot reach are recorded with a reason and
    raise UnsupportedColoringError on access. A zero-dimensional matrix
    is not the same thing: it is a perfectly good module that happens to
    vanish (the unknot away from color zero, for instance).
    """

    __slots__ = ("ctx", "expr_text", "_mats", "_unsupported")

    def __init__(self, ctx, mats, unsupported=None, expr_text=None):
        self.ctx = ctx
        self.expr_text = expr_text
        self._mats = dict(mats)
        self._unsupported = dict(unsupported or {})

    def matrix(self, c):
        rc._check_color(self.ctx, c)
        if c in self._mats:
            return self._mats[c]
        reason = self._unsupported.get(
            c, f"color {c} is not supported by this construction"
        )
        raise UnsupportedColoringError(reason)

    def dim(self, c):
        return self.matrix(c).rows

    def trace(self, c):
        return self.matrix(c).trace()

    def charpoly(self, c):
        return la.charpoly(self.matrix(c))

    def supported_colors(self):
        return sorted(self._mats)

    def unsupported_reason(self, c):
        return self._unsupported.get(c)

    def __repr__(self):
        dims = ", ".join(
            f"{c}:{m.rows}" for c, m in sorted(self._mats.items())
        )
        return f"TVModule(p={self.ctx.p}, dims {{{dims}}})"


def meridian_pairing(ctx):
    """The symmetric pairing matrix H(a, b) over all colors."""
    cols = rc.colors(ctx)
    ent = [rc.hopf(ctx, a, b) for a in cols for b in cols]
    return ExactMatrix(ctx, len(cols), len(cols), ent, labels=tuple(cols))


def cable_coefficients(ctx, meridian_coeffs):
    """Transform companion data from the meridian basis to the cable
    basis: the cable-basis value at t pairs every meridian color through
    H(a, t)."""
    cols = rc.colors(ctx)
    out = {}
    for t in cols:
        acc = ctx.zero
        for a in cols:
            acc = acc + rc.hopf(ctx, a, t) * meridian_coeffs[a]
        out[t] = acc
    return out


def meridian_coefficients(ctx, cable_coeffs):
    """Inverse transform of `cable_coefficients`; eta^2 times the same
    pairing inverts it exactly."""
    cols = rc.colors(ctx)
    eta2 = ctx.eta * ctx.eta
    out = {}
    for a in cols:
        acc = ctx.zero
        for t in cols:
            acc = acc + rc.hopf(ctx, a, t) * cable_coeffs[t]
        out[a] = eta2 * acc
    return out


def module_meridian_data(module):
    """Companion scalars in the meridian basis: the trace of the colored
    module at every color."""
    ctx = module.ctx
    return {a: module.trace(a) for a in rc.colors(ctx)}


def twisted_double_module(ctx, cable_coeffs, twists, c):
    """Module of a twisted double at color c from the companion's
    cable-basis data, reduced to its stable image."""
    basis = rc.diagonal_admissible(ctx, c)
    pref = kappa_inv3(ctx)
    rows = []
    for i in basis:
        head = pref * rc.delta(ctx, i) * rc.mu(ctx, i) / rc.theta(ctx, i, i, c)
        row = []
        for j in basis:
            tot = ctx.zero
            for t in rc.admissible_with(ctx, i, j):
                term = rc.mu(ctx, t) ** twists * cable_coeffs[t]
                term = term / rc.theta(ctx, i, j, t)
                tot = tot + term * rc.tet(ctx, t, i, i, c, j, j)
            row.append(head * tot)
        rows.append(row)
    if not basis:
        return ExactMatrix(ctx, 0, 0, [])
    raw = ExactMatrix.from_rows(ctx, rows, labels=tuple(basis))
    return la.flat(raw)


def winding_zero_block(ctx, twists, a, c):
    """Contribution of meridian color a to the module of a D(twists)
    satellite at color c, before companion data is attached."""
    basis = rc.diagonal_admissible(ctx, c)
    pref = kappa_inv3(ctx)
    rows = []
    for i in basis:
        head = pref * rc.mu(ctx, i) * rc.delta(ctx, i) / rc.theta(ctx, i, i, c)
        row = []
        for j in basis:
            tot = ctx.zero
            for t in rc.admissible_with(ctx, i, j):
                term = rc.mu(ctx, t) ** twists * rc.hopf(ctx, a, t)
                term = term / rc.theta(ctx, i, j, t)
                tot = tot + term * rc.tet(ctx, t, i, i, c, j, j)
            row.append(head * tot)
        rows.append(row)
    if not basis:
        return ExactMatrix(ctx, 0, 0, [])
    return ExactMatrix.from_rows(ctx, rows, labels=tuple(basis))


def winding_zero_module(ctx, companion, twists, c):
    """Module of a D(twists) satellite at color c: companion meridian
    data contracted against the per-color blocks, then stabilized."""
    coeffs = module_meridian_data(companion)
    basis = rc.diagonal_admissible(ctx, c)
    if not basis:
        return ExactMatrix(ctx, 0, 0, [])
    total = ExactMatrix.zeros(ctx, len(basis), len(basis))
    for a in rc.colors(ctx):
        if coeffs[a].is_zero():
            continue
        total = total + winding_zero_block(ctx, twists, a, c).scale(coeffs[a])
    return la.flat(total)


def connected_sum_module(ctx, left, right, c):
    """Blockwise connected sum at color c: one tensor block for every
    admissible pair of meridian colors."""
    blocks = []
    for i in rc.colors(ctx):
        for j in rc.colors(ctx):
            if not rc.admissible(ctx, i, j, c):
                continue
            b1 = left.matrix(i)
            b2 = right.matrix(j)
            if b1.rows and b2.rows:
                blocks.append(la.tensor(b1, b2))
    if not blocks:
        return ExactMatrix(ctx, 0, 0, [])
    return la.direct_sum(blocks)


def meridian_module(ctx, companion, embellishment, c):
    """Satellite by the meridian pattern, carrying an embellishment knot
    on the meridian circle; with the unknot there it returns the
    companion's own module."""
    blocks = []
    for a in rc.colors(ctx):
        emb = [
            embellishment.matrix(b)
            for b in rc.admissible_with(ctx, a, c)
        ]
        emb = [m for m in emb if m.rows]
        if not emb:
            continue
        com = companion.matrix(a)
        if com.rows:
            blocks.append(la.tensor(com, la.direct_sum(emb)))
    if not blocks:
        return ExactMatrix(ctx, 0, 0, [])
    return la.direct_sum(blocks)


def f10_factor(ctx, a):
    """Scaling factor of the once-winding clasp pattern at color a.

    Defined only where the all-a triple is admissible; the satellite at
    such a color is this scalar times the companion module.
    """
    if not rc.admissible(ctx, a, a, a):
        raise UnsupportedColoringError(
            f"clasp pattern undefined at color {a}: ({a}, {a}, {a}) is "
            "not admissible"
        )
    acc = ctx.zero
    for t in rc.admissible_with(ctx, a, a):
        term = rc.mu(ctx, t) * rc.delta(ctx, t) / rc.theta(ctx, a, a, t)
        acc = acc + term * rc.tet(ctx, t, a, a, a, a, a)
    sign = 1 if (a // 2) % 2 == 0 else -1
    twist = ctx.from_A_power(-a * (a + 2) // 2)
    return sign * twist * acc / rc.theta(ctx, a, a, a)


def _set_supported(ctx, word):
    """Whether the set of colors in the word underlies an admissible
    triple (repeats allowed)."""
    support = sorted(set(word))
    if len(support) == 1:
        a = support[0]
        return rc.admissible(ctx, a, a, a)
    if len(support) == 2:
        a, b = support
        return rc.admissible(ctx, a, a, b) or rc.admissible(ctx, a, b, b)
    if len(support) == 3:
        return rc.admissible(ctx, *support)
    return False


def pattern_wheel_value(ctx, pattern, word, c):
    """Wheel scalar of the pattern at one slot word, or None when the
    wheel vanishes there."""
    if pattern.kind == "P21":
        a, b = word
        if not rc.admissible(ctx, a, b, c):
            return None
        return (rc.mu(ctx, a) * rc.lambda_coef(ctx, a, b, c)).inverse()
    if pattern.kind in ("P31", "T31"):
        if c != 0:
            raise UnsupportedColoringError(
                f"pattern {pattern.kind} supports only color 0"
            )
        if not _set_supported(ctx, word):
            return None
        if pattern.kind == "P31":
            return rc.mu(ctx, word[0]).inverse()
        return rc.mu(ctx, word[1]) * rc.mu(ctx, word[2]).inverse()
    raise DomainError(f"pattern {pattern.kind} has no wheel values")


def satellite_module(ctx, companion, pattern, c):
    """Module of a satellite with a winding two or three pattern: one
    block operator per rotation orbit of coloring words, skipping orbits
    where the pattern wheel vanishes."""
    blocks = []
    for rep in wh.orbit_reps(rc.colors(ctx), pattern.winding):
        period = wh.min_period(rep)
        scalars = []
        for i in range(period):
            u = pattern_wheel_value(ctx, pattern, wh.rotate_right(rep, i), c)
            if u is None:
                scalars = None
                break
            scalars.append(u)
        if scalars is None:
            continue
        mods = {a: companion.matrix(a) for a in set(rep)}
        wheel = wh.w_construction(ctx, rep, mods)
        pat = wh.scalar_wheel(ctx, scalars)
        blocks.append(wh.s_operator(wh.wheel_tensor(wheel, pat)))
    if not blocks:
        return ExactMatrix(ctx, 0, 0, [])
    return la.flat(la.direct_sum(blocks))


def _unknot_module(ctx):
    mats = {}
    for c in rc.colors(ctx):
        if c == 0:
            mats[c] = ExactMatrix.identity(ctx, 1)
        else:
            mats[c] = ExactMatrix(ctx, 0, 0, [])
    return mats, {}


def _compute_module(ctx, expr):
    if isinstance(expr, Unknot):
        return _unknot_module(ctx)

    mats = {}
    unsupported = {}

    if isinstance(expr, Double) or (
        isinstance(expr, Sat) and expr.pattern.kind == "D"
    ):
        companion = knot_module(ctx, expr.companion)
        try:
            if isinstance(expr, Double):
                coeffs = cable_coefficients(
                    ctx, module_meridian_data(companion)
                )
                for c in rc.colors(ctx):
                    mats[c] = twisted_double_module(
                        ctx, coeffs, expr.twists, c
                    )
            else:
                for c in rc.colors(ctx):
                    mats[c] = winding_zero_module(
                        ctx, companion, expr.pattern.twists, c
                    )
        except UnsupportedColoringError as exc:
            # both routes need companion data at every color at once
            mats.clear()
            for c in rc.colors(ctx):
                unsupported[c] = str(exc)
        return mats, unsupported

    if isinstance(expr, Sum):
        left = knot_module(ctx, expr.left)
        right = knot_module(ctx, expr.right)
        for c in rc.colors(ctx):
            try:
                mats[c] = connected_sum_module(ctx, left, right, c)
            except UnsupportedColoringError as exc:
                unsupported[c] = str(exc)
        return mats, unsupported

    if isinstance(expr, Sat):
        companion = knot_module(ctx, expr.companion)
        kind = expr.pattern.kind
        for c in rc.colors(ctx):
            try:
                if kind == "MER":
                    unknot = knot_module(ctx, Unknot())
                    mats[c] = meridian_module(ctx, companion, unknot, c)
                elif kind == "F10":
                    mats[c] = companion.matrix(c).scale(f10_factor(ctx, c))
                else:
                    mats[c] = satellite_module(ctx, companion, expr.pattern, c)
            except UnsupportedColoringError as exc:
                unsupported[c] = str(exc)
        return mats, unsupported

    raise DomainError(f"not a knot expression: {expr!r}")


def knot_module(ctx, expr):
    """Evaluate an expression into its per-color modules, memoized on the
    context."""
    key = ("module", canonical(expr))
    if key not in ctx.memo:
        mats, unsupported = _compute_module(ctx, expr)
        ctx.memo[key] = TVModule(
            ctx, mats, unsupported, expr_text=canonical(expr)
        )
    return ctx.memo[key]


def cover_values(ctx, module, ds):
    """Invariants of the cyclic covers of given orders: traces of powers
    of the color-zero module, through the characteristic polynomial."""
    ds = list(ds)
    if any(d < 1 for d in ds):
        raise DomainError("cover order must be a positive integer")
    cp = la.charpoly(module.matrix(0))
    traces = la.power_traces(cp, max(ds)) if ds else []
    return [traces[d - 1] for d in ds]


def branched_cover_values(ctx, module, ds):
    """Invariants of the branched cyclic covers of given orders: the
    loop-weighted trace sum over all colors, scaled by eta."""
    ds = list(ds)
    if any(d < 1 for d in ds):
        raise DomainError("cover order must be a positive integer")
    if not ds:
        return []
    dmax = max(ds)
    per_color = {}
    for c in rc.colors(ctx):
        per_color[c] = la.power_traces(la.charpoly(module.matrix(c)), dmax)
    out = []
    for d in ds:
        acc = ctx.zero
        for c in rc.colors(ctx):
            acc = acc + rc.delta(ctx, c) * per_color[c][d - 1]
        out.append(ctx.eta * acc)
    return out


def genus_one_check(ctx, module):
    """Rank of each colored module against the genus-one dimension bound;
    returns (color, rank, bound, within) rows."""
    rows = []
    for c in rc.colors(ctx):
        bound = rc.verlinde_dim(ctx, 1, c)
        r = la.rank(module.matrix(c))
        rows.append((c, r, bound, r <= bound))
    return rows


def module_to_json(module):
    out = {
        "p": module.ctx.p,
        "root_order": module.ctx.N,
        "expr": module.expr_text,
        "colors": {
            str(c): la.matrix_to_json(m) for c, m in module._mats.items()
        },
    }
    if module._unsupported:
        out["unsupported"] = {
            str(c): reason for c, reason in module._unsupported.items()
        }
    return out


def module_from_json(ctx, data):
    mats = {
        int(c): la.matrix_from_json(ctx, m)
        for c, m in data["colors"].items()
    }
    unsupported = {
        int(c): reason
        for c, reason in data.get("unsupported", {}).items()
    }
    return TVModule(ctx, mats, unsupported, expr_text=data.get("expr"))
