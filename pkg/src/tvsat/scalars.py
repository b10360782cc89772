"""Exact arithmetic for the coefficient ring of the invariants.

All computations in this package happen inside a two-component algebra

    base + base * eta,    base = Q[A] / Phi_N(A),

where A is a primitive N-th root of unity (N = 2p for odd level p by
default, 4p for even p) and eta is a square root of

    eta^2 = -(A^2 - A^{-2})^2 / p,

which embeds to the positive real 4 sin^2(2 pi k / N) / p. Coefficients are
exact rationals throughout; no floating point ever enters an exact path.
Numeric approximations are available only through embed_complex, which
evaluates at A = exp(2 pi i / N) with verified precision.

When eta happens to lie in the base field already (for example p = 7, or
every even p) the pair representation is not a field: a nonzero element can
have zero norm. Division reports that situation as DegenerateExtensionError
instead of silently producing garbage; the built-in constructions never
divide by a mixed-grade element, so they cannot trigger it.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd

import mpmath

from .errors import (
    ContextMismatchError,
    DegenerateExtensionError,
    InvalidConfigurationError,
    InvalidLevelError,
    ScalarDivisionError,
)

__all__ = [
    "FieldContext",
    "Scalar",
    "make_context",
    "kappa_inv3",
    "embed_complex",
    "scalar_to_json",
    "scalar_from_json",
]


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (dense, lowest degree first)


def _poly_trim(v):
    n = len(v)
    while n > 0 and v[n - 1] == 0:
        n -= 1
    return v[:n]


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials, den monic up to sign."""
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c % lead != 0:
            raise ArithmeticError("non-exact integer polynomial division")
        c //= lead
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return q, _poly_trim(num)


def _cyclotomic(n):
    """Coefficients of the n-th cyclotomic polynomial, lowest first."""
    # x^n - 1 divided by Phi_d for every proper divisor d of n.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            phi_d = _cyclotomic(d) if d > 1 else [-1, 1]
            poly, rem = _poly_divmod_int(poly, phi_d)
            if rem:
                raise ArithmeticError("cyclotomic division left a remainder")
    return poly


class FieldContext:
    """Arithmetic tables for one choice of level p and root order N.

    Instances are created through make_context. A context owns the reduced
    power table for A^k, the distinguished elements (A, its inverse, eta),
    and a memo dictionary that downstream modules use for per-context
    caches. Two contexts are interchangeable exactly when they share
    (p, N); scalars refuse to mix otherwise.
    """

    def __init__(self, p, root_order=None):
        if not isinstance(p, int) or p < 3:
            raise InvalidLevelError(f"level p must be an integer >= 3, got {p!r}")
        if root_order is None:
            root_order = 2 * p if p % 2 == 1 else 4 * p
        else:
            allowed = {4 * p} if p % 2 == 0 else {2 * p, 4 * p}
            if root_order not in allowed:
                raise InvalidConfigurationError(
                    f"root order {root_order} not allowed for p={p}; "
                    f"choose from {sorted(allowed)}"
                )
        self.p = p
        self.N = root_order
        self.modulus = tuple(_cyclotomic(self.N))
        self.deg = len(self.modulus) - 1
        self._build_power_table()
        self.memo = {}

        zero_vec = (Fraction(0),) * self.deg
        self._zero_vec = zero_vec
        self.zero = Scalar(self, zero_vec, zero_vec)
        self.one = self.scalar(1)
        self.A = self.from_A_power(1)
        self.Abar = self.from_A_power(-1)

        # eta^2 = -(A^2 - A^{-2})^2 / p, a base field element.
        s = self.from_A_power(2) - self.from_A_power(-2)
        self.eta_square = (-(s * s) / p).base_vec
        one_vec = self.one.base_vec
        self.eta = Scalar(self, zero_vec, one_vec)

    # -- table construction -------------------------------------------------

    def _build_power_table(self):
        deg = self.deg
        mod = self.modulus
        # A^deg = -(mod[0] + mod[1] A + ... + mod[deg-1] A^{deg-1}); the
        # modulus is monic over the integers, so all rows stay integral
        table = []
        top = [-mod[i] for i in range(deg)]
        table.append(tuple(top))
        for _ in range(deg - 2):
            prev = table[-1]
            shifted = [0] + list(prev[: deg - 1])
            carry = prev[deg - 1]
            if carry:
                for i in range(deg):
                    shifted[i] += carry * table[0][i]
            table.append(tuple(shifted))
        # table[k] is the reduction of A^{deg+k}, for k in 0..deg-2
        self._power_table = tuple(table)

    # -- vector arithmetic ---------------------------------------------------

    def _vec_mul(self, a, b):
        """Multiply two reduced coefficient vectors.

        Runs over plain integers on a common denominator; profiling showed
        Fraction arithmetic dominating otherwise.
        """
        deg = self.deg
        da = 1
        for x in a:
            d = x.denominator
            if d != 1:
                da = da * d // _gcd(da, d)
        db = 1
        for x in b:
            d = x.denominator
            if d != 1:
                db = db * d // _gcd(db, d)
        ai = [x.numerator * (da // x.denominator) for x in a]
        bi = [x.numerator * (db // x.denominator) for x in b]
        conv = [0] * (2 * deg - 1)
        for i, av in enumerate(ai):
            if av:
                for j, bv in enumerate(bi):
                    if bv:
                        conv[i + j] += av * bv
        out = conv[:deg]
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                row = self._power_table[k - deg]
                for i in range(deg):
                    out[i] += c * row[i]
        dd = da * db
        if dd == 1:
            return tuple(Fraction(n) for n in out)
        return tuple(Fraction(n, dd) for n in out)

    def _vec_inv(self, a):
        """Inverse of a base vector via extended Euclid against Phi_N."""
        if not any(a):
            raise ScalarDivisionError("division by zero")
        mod = [Fraction(c) for c in self.modulus]
        r0, r1 = mod, _poly_trim(list(a))
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul_small(q, t1))
        # r1 is now a nonzero constant because Phi_N is irreducible over Q
        # and the input is a nonzero vector of smaller degree
        if not r1 or r1[0] == 0:
            raise ScalarDivisionError("division by zero")
        c = r1[0]
        inv = [t / c for t in t1]
        inv += [Fraction(0)] * (self.deg - len(inv))
        return tuple(inv[: self.deg])

    # -- constructors --------------------------------------------------------

    def scalar(self, value):
        """Embed an int or Fraction as a pure base scalar."""
        v = Fraction(value)
        vec = (v,) + (Fraction(0),) * (self.deg - 1)
        return Scalar(self, vec, self._zero_vec)

    def from_A_power(self, k):
        """The scalar A^k for any integer k."""
        return Scalar(self, self._power_of_A_vec(k % self.N), self._zero_vec)

    def _power_of_A_vec(self, k):
        """Reduced vector of A^k for 0 <= k < N, computed on demand."""
        cache = self.memo.setdefault("_apow", {})
        if k in cache:
            return cache[k]
        if k < self.deg:
            vec = tuple(
                Fraction(1) if i == k else Fraction(0) for i in range(self.deg)
            )
        else:
            prev = self._power_of_A_vec(k - 1)
            shifted = [Fraction(0)] + list(prev[: self.deg - 1])
            carry = prev[self.deg - 1]
            if carry:
                row = self._power_table[0]
                for i in range(self.deg):
                    shifted[i] += carry * row[i]
            vec = tuple(shifted)
        cache[k] = vec
        return vec

    # -- misc ----------------------------------------------------------------

    def compatible(self, other):
        return self is other or (self.p == other.p and self.N == other.N)

    def __repr__(self):
        return f"FieldContext(p={self.p}, N={self.N})"


def _poly_divmod_frac(num, den):
    num = list(num)
    dn = len(den)
    q = [Fraction(0)] * max(1, len(num) - dn + 1)
    lead = den[-1]
    for k in range(len(num) - dn, -1, -1):
        c = num[k + dn - 1] / lead
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return _poly_trim(q) or [Fraction(0)], _poly_trim(num)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out) or [Fraction(0)]


def _poly_mul_small(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out) or [Fraction(0)]


class Scalar:
    """An element base + base * eta, immutable, tied to its FieldContext.

    Arithmetic follows the quadratic algebra rules with eta^2 given by the
    context. Integers and Fractions coerce from either side. Equality is
    exact coefficient equality after reduction, which is canonical because
    the representation modulo Phi_N is unique.
    """

    __slots__ = ("ctx", "base_vec", "eta_vec")

    def __init__(self, ctx, base_vec, eta_vec):
        self.ctx = ctx
        self.base_vec = tuple(base_vec)
        self.eta_vec = tuple(eta_vec)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not any(self.base_vec) and not any(self.eta_vec)

    def is_base(self):
        """True when the eta component vanishes."""
        return not any(self.eta_vec)

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if not self.ctx.compatible(other.ctx):
                raise ContextMismatchError(
                    f"cannot mix scalars from {self.ctx} and {other.ctx}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(other)
        return None

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(
            self.ctx,
            tuple(a + b for a, b in zip(self.base_vec, o.base_vec)),
            tuple(a + b for a, b in zip(self.eta_vec, o.eta_vec)),
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar(
            self.ctx,
            tuple(-a for a in self.base_vec),
            tuple(-a for a in self.eta_vec),
        )

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        a, b = self.base_vec, self.eta_vec
        c, d = o.base_vec, o.eta_vec
        b_zero = not any(b)
        d_zero = not any(d)
        ac = ctx._vec_mul(a, c)
        if b_zero and d_zero:
            return Scalar(ctx, ac, ctx._zero_vec)
        if b_zero or d_zero:
            base = ac
        else:
            bd = ctx._vec_mul(b, d)
            bd_e2 = ctx._vec_mul(bd, ctx.eta_square)
            base = tuple(x + y for x, y in zip(ac, bd_e2))
        ad = ctx._zero_vec if d_zero else ctx._vec_mul(a, d)
        bc = ctx._zero_vec if b_zero else ctx._vec_mul(b, c)
        eta = tuple(x + y for x, y in zip(ad, bc))
        return Scalar(ctx, base, eta)

    __rmul__ = __mul__

    def inverse(self):
        ctx = self.ctx
        a, b = self.base_vec, self.eta_vec
        if not any(b):
            if not any(a):
                raise ScalarDivisionError("division by zero")
            return Scalar(ctx, ctx._vec_inv(a), ctx._zero_vec)
        aa = ctx._vec_mul(a, a)
        bb = ctx._vec_mul(b, b)
        bb_e2 = ctx._vec_mul(bb, ctx.eta_square)
        norm = tuple(x - y for x, y in zip(aa, bb_e2))
        if not any(norm):
            raise DegenerateExtensionError(
                "nonzero scalar with vanishing norm; eta lies in the base "
                "field for this context, so the pair representation is not "
                "a field"
            )
        ninv = ctx._vec_inv(norm)
        base = ctx._vec_mul(a, ninv)
        eta = ctx._vec_mul(tuple(-x for x in b), ninv)
        return Scalar(ctx, base, eta)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self.ctx.compatible(other.ctx):
            return False
        return self.base_vec == other.base_vec and self.eta_vec == other.eta_vec

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.N, self.base_vec, self.eta_vec))

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return scalar_to_text(self)


# ---------------------------------------------------------------------------
# display


def _coeff_text(c):
    return str(c)


def _poly_text(vec):
    """Render a base vector as a readable polynomial in A, ascending."""
    terms = []
    for k, c in enumerate(vec):
        if c == 0:
            continue
        if k == 0:
            terms.append((c, "1"))
        elif k == 1:
            terms.append((c, "A"))
        else:
            terms.append((c, f"A^{k}"))
    if not terms:
        return "0"
    parts = []
    for i, (c, mono) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if mono == "1":
            body = _coeff_text(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coeff_text(mag)}*{mono}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def scalar_to_text(s):
    """Human-readable rendering, for example "(1 - A^2)*eta + A^4"."""
    base_txt = _poly_text(s.base_vec)
    if s.is_base():
        return base_txt
    eta_txt = _poly_text(s.eta_vec)
    if " " in eta_txt or eta_txt.startswith("-"):
        eta_part = f"({eta_txt})*eta"
    elif eta_txt == "1":
        eta_part = "eta"
    else:
        eta_part = f"{eta_txt}*eta"
    if base_txt == "0":
        return eta_part
    if base_txt.startswith("-"):
        return f"{eta_part} - {base_txt[1:]}"
    return f"{eta_part} + {base_txt}"


# ---------------------------------------------------------------------------
# serialization


def _vec_to_json(vec):
    trimmed = list(vec)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    return [[str(c.numerator), str(c.denominator)] for c in trimmed]


def _vec_from_json(ctx, data):
    if len(data) > ctx.deg:
        raise ValueError("coefficient list longer than the field degree")
    vec = [Fraction(0)] * ctx.deg
    for i, pair in enumerate(data):
        num, den = pair
        vec[i] = Fraction(int(num), int(den))
    return tuple(vec)


def scalar_to_json(s):
    """JSON form: {"base": [[num, den], ...], "eta": [...]}, lowest first."""
    return {"base": _vec_to_json(s.base_vec), "eta": _vec_to_json(s.eta_vec)}


def scalar_from_json(ctx, data):
    return Scalar(ctx, _vec_from_json(ctx, data["base"]), _vec_from_json(ctx, data["eta"]))


# ---------------------------------------------------------------------------
# context-level derived constants


def make_context(p, root_order=None):
    """Create the arithmetic context for level p.

    The default root order is 2p for odd p and 4p for even p; odd p may opt
    into 4p. Anything else raises InvalidConfigurationError.
    """
    return FieldContext(p, root_order)


def kappa_inv3(ctx):
    """The anomaly prefactor for module entries, as a base field scalar.

    Equals the inverse of sum over colors of mu_c * Delta_c^2. The sum is a
    Gauss type quantity and never vanishes for a valid context, so the
    division is safe; a hypothetical zero would surface as
    ScalarDivisionError.
    """
    if "kappa_inv3" in ctx.memo:
        return ctx.memo["kappa_inv3"]
    from . import recoupling

    total = ctx.zero
    for c in recoupling.colors(ctx):
        d = recoupling.delta(ctx, c)
        total = total + recoupling.mu(ctx, c) * d * d
    value = total.inverse()
    ctx.memo["kappa_inv3"] = value
    return value


# ---------------------------------------------------------------------------
# numeric embedding


def embed_complex(s, digits=30):
    """Evaluate a scalar at A = exp(2 pi i / N) to verified precision.

    Returns an mpmath complex number whose first `digits` significant digits
    are correct. Precision is verified by recomputing at doubled working
    precision until two rounds agree; str() on the result, or mpmath.nstr,
    produces display output.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    ctx = s.ctx

    def evaluate(dps):
        with mpmath.workdps(dps):
            a = mpmath.e ** (2j * mpmath.pi / ctx.N)
            base = _eval_poly(s.base_vec, a)
            if any(s.eta_vec):
                e2 = _eval_poly(ctx.eta_square, a)
                eta_val = mpmath.sqrt(e2.real)
                return base + _eval_poly(s.eta_vec, a) * eta_val
            return base

    dps = digits + 10
    prev = evaluate(dps)
    for _ in range(6):
        dps *= 2
        cur = evaluate(dps)
        if _agree(prev, cur, digits + 2):
            with mpmath.workdps(digits + 5):
                return mpmath.mpc(cur)
        prev = cur
    raise ArithmeticError("embedding failed to stabilize; report this input")


def _eval_poly(vec, a):
    acc = mpmath.mpc(0)
    for c in reversed(vec):
        acc = acc * a
        if c:
            acc = acc + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
    return acc


def _agree(x, y, digits):
    if x == y:
        return True
    scale = max(abs(x), abs(y))
    if scale == 0:
        return True
    return abs(x - y) / scale < mpmath.mpf(10) ** (-digits)
