"""Cyclic wheels of linear maps and the block operator they generate.

An n-wheel is a cycle of vector spaces with a map from each slot to the
next. Satellite modules arise as the block operator of a wheel built from
the companion's colored modules tensored slotwise against a wheel of
pattern scalars; this module provides those constructions generically.
"""

from __future__ import annotations

from .errors import WheelShapeError
from .linalg import (
    ExactMatrix,
    block_matrix,
    matrix_from_json,
    matrix_to_json,
    tensor,
)


class NWheel:
    """A cycle of slot spaces with maps[i] sending slot i to slot i+1.

    Slot dimensions are implicit in the maps: slot i is the source of
    maps[i] and the target of maps[i-1]. Optional slot_labels name the
    slots (the engine labels them with rotated coloring words).
    """

    __slots__ = ("ctx", "maps", "slot_labels")

    def __init__(self, ctx, maps, slot_labels=None):
        maps = tuple(maps)
        if not maps:
            raise WheelShapeError("a wheel needs at least one map")
        for m in maps:
            if not isinstance(m, ExactMatrix):
                raise WheelShapeError("wheel maps must be exact matrices")
            if not ctx.compatible(m.ctx):
                raise WheelShapeError("wheel maps from an incompatible context")
        n = len(maps)
        for i in range(n):
            if maps[i].rows != maps[(i + 1) % n].cols:
                raise WheelShapeError(
                    f"map {i} lands in a space of dimension {maps[i].rows} "
                    f"but map {(i + 1) % n} expects {maps[(i + 1) % n].cols}"
                )
        if slot_labels is not None:
            slot_labels = tuple(slot_labels)
            if len(slot_labels) != n:
                raise WheelShapeError("one label per slot")
        self.ctx = ctx
        self.maps = maps
        self.slot_labels = slot_labels

    @property
    def n(self):
        return len(self.maps)

    def slot_dim(self, i):
        return self.maps[i % self.n].cols

    def __eq__(self, other):
        if not isinstance(other, NWheel):
            return NotImplemented
        return self.maps == other.maps

    def __repr__(self):
        dims = "x".join(str(self.slot_dim(i)) for i in range(self.n))
        return f"NWheel({self.n} slots, dims {dims})"


def scalar_wheel(ctx, values):
    """Wheel whose slots are one-dimensional, one scalar map per step."""
    return NWheel(ctx, [ExactMatrix(ctx, 1, 1, [v]) for v in values])


def wheel_tensor(a, b):
    """Slotwise tensor of two wheels of the same length."""
    if a.n != b.n:
        raise WheelShapeError(
            f"cannot tensor a {a.n}-wheel with a {b.n}-wheel"
        )
    return NWheel(a.ctx, [tensor(x, y) for x, y in zip(a.maps, b.maps)],
                  slot_labels=a.slot_labels)


def wheel_shift(w, k):
    """The same cycle read starting k slots later."""
    k %= w.n
    maps = w.maps[k:] + w.maps[:k]
    labels = None
    if w.slot_labels is not None:
        labels = w.slot_labels[k:] + w.slot_labels[:k]
    return NWheel(w.ctx, maps, slot_labels=labels)


def s_operator(w):
    """Block operator of the wheel: one block row per slot, with maps[i]
    placed at block position (i+1 mod n, i)."""
    n = w.n
    if n == 1:
        return w.maps[0]
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[(i + 1) % n][i] = w.maps[i]
    return block_matrix(w.ctx, grid)


def min_period(word):
    """Smallest m such that the word equals itself rotated by m."""
    w = len(word)
    if w == 0:
        raise WheelShapeError("empty coloring word")
    for m in range(1, w + 1):
        if w % m == 0 and all(word[i] == word[(i + m) % w] for i in range(w)):
            return m
    return w


def rotate_right(word, k):
    w = len(word)
    k %= w
    return word[w - k :] + word[: w - k]


def orbit_representative(word):
    """Lexicographically smallest rotation, used to name the orbit."""
    return min(rotate_right(word, k) for k in range(len(word)))


def orbit_reps(colors, length):
    """All rotation orbits of coloring words, as sorted representatives."""
    seen = set()
    reps = []
    for word in _words(tuple(colors), length):
        rep = orbit_representative(word)
        if rep not in seen:
            seen.add(rep)
            reps.append(rep)
    return sorted(reps)


def _words(colors, length):
    if length == 0:
        yield ()
        return
    for rest in _words(colors, length - 1):
        for c in colors:
            yield rest + (c,)


def _rotate_apply(ctx, mod, rest_dim):
    """Apply mod to the last tensor factor, then rotate it to the front.

    The source space is (rest ⊗ last) and the target (last ⊗ rest), both
    in lexicographic order; mod is square on the last factor.
    """
    d = mod.rows
    total = rest_dim * d
    ent = [ctx.zero] * (total * total)
    for r in range(rest_dim):
        for kk in range(d):
            row = kk * rest_dim + r
            base = row * total + r * d
            for k in range(d):
                v = mod.entry(kk, k)
                if not v.is_zero():
                    ent[base + k] = v
    return ExactMatrix(ctx, total, total, ent)


def w_construction(ctx, word, modules):
    """Companion wheel of a coloring word.

    Slot i carries the full tensor product of the colored modules read in
    the rotation that puts color word[-i] first; the step out of slot i
    applies the module of the color in the last factor and rotates that
    factor to the front. The wheel is folded to the minimal period of the
    word, so its length is the size of the word's rotation orbit.
    """
    w = len(word)
    if w == 0:
        raise WheelShapeError("empty coloring word")
    mods = []
    for c in word:
        m = modules[c]
        if m.rows != m.cols:
            raise WheelShapeError("colored modules must be square")
        mods.append(m)
    total = 1
    for m in mods:
        total *= m.rows
    period = min_period(word)
    maps = []
    labels = []
    for i in range(period):
        mod = mods[(w - 1 - i) % w]
        rest = total // mod.rows if mod.rows else 0
        maps.append(_rotate_apply(ctx, mod, rest))
        labels.append(rotate_right(word, i))
    return NWheel(ctx, maps, slot_labels=labels)


def wheel_to_json(w):
    out = {
        "n": w.n,
        "slots": [
            {
                "dim": w.slot_dim(i),
                "label": list(w.slot_labels[i])
                if w.slot_labels is not None
                and isinstance(w.slot_labels[i], tuple)
                else (w.slot_labels[i] if w.slot_labels is not None else None),
            }
            for i in range(w.n)
        ],
        "maps": [matrix_to_json(m) for m in w.maps],
    }
    return out


def wheel_from_json(ctx, data):
    labels = []
    have_labels = False
    for slot in data["slots"]:
        lab = slot.get("label")
        if lab is not None:
            have_labels = True
        labels.append(tuple(lab) if isinstance(lab, list) else lab)
    return NWheel(
        ctx,
        [matrix_from_json(ctx, m) for m in data["maps"]],
        slot_labels=labels if have_labels else None,
    )
