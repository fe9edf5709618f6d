"""
The cone topology G_S and the cone* topology G*_S.

In G_S the point x has the single basic neighborhood x + S; in G*_S it has
the neighborhoods x + ({0} ∪ (s + S)) for s in S.  Subsets are described by
finite unions of atoms (points, x + S, x - S, x + <S>), which keeps closure
and compactness questions decidable through monoid membership.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import fintop
from . import monoid as mon
from .abelian import INFINITE, GroupElement, box

CONE = "cone"
CONE_STAR = "cone-star"
VARIANTS = (CONE, CONE_STAR)

POINT, UP, DOWN, COSET = "point", "up", "down", "coset"
ATOM_KINDS = (POINT, UP, DOWN, COSET)

ALL = "ALL"
EMPTY = "EMPTY"

DEFAULT_RADIUS = 8
DEFAULT_PREFIX = 16


class SymbolicClosureError(ValueError):
    pass


class UndecidableShapeError(ValueError):
    pass


class ContractError(ValueError):
    pass


@dataclass(frozen=True)
class ConeSpace:
    monoid: mon.MonoidSpec
    variant: str = CONE

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")

    @property
    def group(self):
        return self.monoid.group

    def __str__(self):
        name = "G_S" if self.variant == CONE else "G*_S"
        return f"{name}({self.group}, S={self.monoid})"


@dataclass(frozen=True)
class Window:
    """Box [-R, R]^rank times the whole torsion part."""

    radius: int = DEFAULT_RADIUS

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("window radius must be positive")

    def points(self, group):
        return list(box(group, self.radius))

    def size(self, group):
        n = (2 * self.radius + 1) ** group.rank
        for d in group.torsion:
            n *= d
        return n

    def __contains__(self, x):
        return all(abs(c) <= self.radius for c in x.free)


# ---------------------------------------------------------------------------
# described sets

@dataclass(frozen=True)
class Atom:
    kind: str
    anchor: GroupElement

    def __post_init__(self):
        if self.kind not in ATOM_KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")

    def contains(self, S, x):
        if self.kind == POINT:
            return x == self.anchor
        if self.kind == UP:
            return mon.member(S, x - self.anchor)
        if self.kind == DOWN:
            return mon.member(S, self.anchor - x)
        return mon.closure_subgroup(S).contains(x - self.anchor)

    def __str__(self):
        a = list(self.anchor.coords)
        return {POINT: f"{{{a}}}", UP: f"{a}+S", DOWN: f"{a}-S", COSET: f"{a}+<S>"}[self.kind]


@dataclass(frozen=True)
class DescribedSet:
    """Finite union of atoms; the empty union is the empty set."""

    atoms: tuple = ()

    @classmethod
    def of(cls, *atoms):
        return cls(tuple(atoms))

    def contains(self, S, x):
        return any(a.contains(S, x) for a in self.atoms)

    def is_empty(self):
        return not self.atoms

    def trace(self, S, points):
        return [x for x in points if self.contains(S, x)]

    def __str__(self):
        return " ∪ ".join(map(str, self.atoms)) or "∅"


def point(x):
    return Atom(POINT, x)


def up(x):
    return Atom(UP, x)


def down(x):
    return Atom(DOWN, x)


def coset(x):
    return Atom(COSET, x)


def closure(space, A):
    """Closure in G_S: A - S, atom by atom.

    {x} -> x - S,  x + S -> x + <S>  (as S + S - S = S - S = <S>),
    x - S -> x - S,  x + <S> -> x + <S>.
    """
    if space.variant != CONE:
        raise SymbolicClosureError(
            "no symbolic closure for the cone* topology; use trace_closure on a window")
    out = []
    for a in A.atoms:
        if a.kind == POINT:
            out.append(down(a.anchor))
        elif a.kind == UP:
            out.append(coset(a.anchor))
        elif a.kind in (DOWN, COSET):
            out.append(a)
        else:
            raise SymbolicClosureError(f"unsupported atom {a}")
    return DescribedSet(tuple(dict.fromkeys(out)))


def is_compact(space, K):
    """Decide compactness of K in G_S; returns (verdict, F) with F ⊆ K finite and K ⊆ F + S.

    Any finite union of points and sets x + S is compact (its anchors do the
    job).  x - S and x + <S> reduce to x + S when S is a group; x + <S> is
    never compact otherwise, since <S> ⊆ F + S forces S to be a group.
    """
    if space.variant != CONE:
        raise UndecidableShapeError("compactness of subsets is only characterized in G_S")
    S = space.monoid
    grp = mon.is_group(S)
    points, anchors = [], []
    for a in K.atoms:
        if a.kind == POINT:
            points.append(a.anchor)
        elif a.kind == UP or grp:
            anchors.append(a.anchor)
        elif a.kind == DOWN:
            raise UndecidableShapeError(f"atom {a}: x - S with S not a group has no finite-F criterion here")
        else:
            return False, None
    F = list(dict.fromkeys(points))
    for x in anchors:
        if not any(mon.member(S, x - f) for f in F):
            F.append(x)
    return True, F


# ---------------------------------------------------------------------------
# sequences and limits

@dataclass(frozen=True)
class Affine:
    """n -> start + n*step."""

    start: GroupElement
    step: GroupElement

    def term(self, n):
        return self.start + n * self.step

    def __str__(self):
        return f"{list(self.start.coords)} + n*{list(self.step.coords)}"


@dataclass(frozen=True)
class Interleave:
    """c_{k*m + r} = parts[r](m)."""

    parts: tuple

    def term(self, n):
        k = len(self.parts)
        return self.parts[n % k].term(n // k)

    def __str__(self):
        return "interleave(" + "; ".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Explicit:
    terms: tuple

    def term(self, n):
        return self.terms[n]

    def __str__(self):
        return "[" + ", ".join(str(list(t.coords)) for t in self.terms) + "]"


@dataclass
class LimitReport:
    sequence: object
    limits: object  # ALL, EMPTY or a DescribedSet of points (window-restricted)
    checked_prefix: int
    probe: tuple = ()
    window_restricted: bool = False
    radius: int | None = None
    escapes: dict = field(default_factory=dict)


def _affine_limit(space, seq, p, probe, prefix):
    """(is_limit, escape_index) for an affine sequence, exact per probe."""
    S = space.monoid
    y = seq.start - p
    d = seq.step

    def bad(n, s=None):
        c = y + n * d
        if s is None:
            return not mon.member(S, c)
        return not (c.is_zero() or mon.member(S, c - s))

    def first_bad(start, s=None, period=1, offset=0):
        n = start
        while n % period != offset:
            n += 1
        while not bad(n, s):
            n += period
        return n

    if space.variant == CONE:
        m = mon.smallest_multiple_in(S, d)
        if m is None:
            return False, first_bad(prefix)
        md = m * d
        for r in range(m):
            if not mon.ray_member(S, y + r * d, md):
                return False, first_bad(prefix, period=m, offset=r)
        return True, None

    order = d.order()
    for s in probe:
        if order != INFINITE:
            for n in range(prefix, prefix + order):
                if bad(n, s):
                    return False, n
            continue
        if not mon.eventually_member(S, y - s, d):
            return False, first_bad(prefix, s)
    return True, None


def _check_limit_args(space, probe, prefix):
    if prefix < 1:
        raise ContractError("prefix must be >= 1")
    if space.variant == CONE_STAR:
        if not probe:
            raise ContractError("cone* limits need a nonempty probe list")
        for s in probe:
            if not mon.member(space.monoid, s):
                raise ContractError(f"probe {list(s.coords)} is not in S")


def is_limit(space, seq, p, probe=(), prefix=DEFAULT_PREFIX):
    """Decide whether p is a limit of ``seq``; returns (verdict, escaping index or None)."""
    _check_limit_args(space, probe, prefix)
    if isinstance(seq, Affine):
        return _affine_limit(space, seq, p, probe, prefix)
    if isinstance(seq, Interleave):
        k = len(seq.parts)
        for r, part in enumerate(seq.parts):
            ok, esc = is_limit(space, part, p, probe, prefix)
            if not ok:
                return False, esc * k + r
        return True, None
    n_terms = min(prefix, len(seq.terms))
    S = space.monoid
    for n in range(n_terms - 1, n_terms // 2 - 1, -1):
        c = seq.term(n) - p
        if space.variant == CONE:
            inside = mon.member(S, c)
        else:
            inside = c.is_zero() or all(mon.member(S, c - s) for s in probe)
        if not inside:
            return False, n
    return True, None


def _symbolic_limits(space, seq):
    """ALL / EMPTY when decidable in closed form, otherwise None."""
    S = space.monoid
    if isinstance(seq, Interleave):
        parts = [_symbolic_limits(space, q) for q in seq.parts]
        if EMPTY in parts:
            return EMPTY
        if all(v == ALL for v in parts):
            return ALL
        return None
    if not isinstance(seq, Affine):
        return None
    d = seq.step
    m = mon.smallest_multiple_in(S, d)
    if m is None:
        return EMPTY
    if space.variant == CONE_STAR and d.order() != INFINITE:
        return None
    # every z + n*d eventually in S  <=>  every ray z + j*(m*d) meets S
    return ALL if mon.ray_covers_group(S, m * d) else None


def limits(space, seq, probe=(), prefix=DEFAULT_PREFIX, window=None):
    """Limit points of a sequence.

    For G_S and affine rules the answer is exact (ALL, EMPTY, or the limit
    points inside ``window``).  For G*_S every decision is relative to the
    probe list; for explicit term lists it is relative to the checked prefix.
    """
    _check_limit_args(space, probe, prefix)
    window = window or Window()
    sym = _symbolic_limits(space, seq)
    rep = LimitReport(seq, sym, prefix, tuple(probe), radius=window.radius)
    if sym is not None:
        return rep
    found = []
    for p in window.points(space.group):
        ok, esc = is_limit(space, seq, p, probe, prefix)
        if ok:
            found.append(point(p))
        else:
            rep.escapes[p.coords] = esc
    rep.limits = DescribedSet(tuple(found))
    rep.window_restricted = True
    return rep


# ---------------------------------------------------------------------------
# separation and wideness

@dataclass(frozen=True)
class Separation:
    t0: bool
    t1: bool
    hausdorff: bool


def separation(space):
    S = space.monoid
    trivial = mon.is_trivial(S)
    if space.variant == CONE:
        return Separation(t0=mon.units(S).is_trivial(), t1=trivial, hausdorff=trivial)
    t1 = trivial or not mon.is_group(S)
    return Separation(t0=t1, t1=t1, hausdorff=trivial)


def is_wide(space):
    """G_S (equivalently G*_S) is wide iff G = S - S."""
    return mon.closure_subgroup(space.monoid).is_whole()


def index_of_closure(space):
    return mon.closure_subgroup(space.monoid).index


# ---------------------------------------------------------------------------
# window traces: brute-force closures through the finite-topology engine

class WindowTrace:
    """Finite topology on a window generated by traces of basic open sets."""

    def __init__(self, space, radius, probe=()):
        self.space = space
        self.radius = radius
        self.points = Window(radius).points(space.group)
        self.index = {p.coords: i for i, p in enumerate(self.points)}
        S = space.monoid
        group = space.group
        shifts = [group.zero()] if space.variant == CONE else list(probe)
        if space.variant == CONE_STAR and not shifts:
            raise ContractError("cone* window traces need a probe list")

        # membership table over every raw difference c - b that can occur,
        # laid out row-major so that differences become index offsets
        ext = max(max(map(abs, s.free), default=0) for s in shifts)
        half = [2 * radius + ext] * group.rank + [d - 1 for d in group.torsion]
        sizes = [2 * h + 1 for h in half]
        strides = [math.prod(sizes[j + 1:]) for j in range(len(sizes))]
        center = sum(h * st for h, st in zip(half, strides))
        table = bytes(mon.member(S, group.element(d))
                      for d in itertools.product(*(range(-h, h + 1) for h in half)))

        def lin(coords):
            return sum(c * st for c, st in zip(coords, strides))

        pos = [lin(p.coords) for p in self.points]
        bits = bytes.maketrans(b"\x00\x01", b"01")
        self.subbase = []
        for w in self.points:
            for s in shifts:
                off = center - lin((w + s).coords)
                row = bytes(table[q + off] for q in reversed(pos)).translate(bits)
                m = int(row, 2)
                if space.variant == CONE_STAR:
                    m |= 1 << self.index[w.coords]
                self.subbase.append(m)

    def mask(self, A):
        S = self.space.monoid
        return fintop.mask(i for i, p in enumerate(self.points) if A.contains(S, p))

    def closure(self, A, points=None):
        """Indices (into self.points) of the brute-force closure of A ∩ window."""
        idx = None if points is None else [self.index[p.coords] for p in points]
        m = fintop.closure_from_subbase(len(self.points), self.subbase, self.mask(A), idx)
        return {self.points[i].coords for i in fintop.members(m)}


def trace_closure(space, A, radius=DEFAULT_RADIUS, probe=()):
    """Brute-force closure of A ∩ W for the window W of the given radius."""
    return WindowTrace(space, radius, probe).closure(A)


@dataclass
class ClosureOracleResult:
    mismatches: list
    safe: int
    unsafe: int


def closure_oracle(space, sets, radius, margin, traces=None):
    """Compare the symbolic closure with brute-force window closures.

    Points of the inner box (``radius``) are interior-safe when the
    brute-force answer agrees between windows of radius + margin and
    radius + 2*margin; only those are compared.
    """
    mid, outer = traces or (WindowTrace(space, radius + margin), WindowTrace(space, radius + 2 * margin))
    inner = Window(radius).points(space.group)
    S = space.monoid
    res = ClosureOracleResult([], 0, 0)
    for A in sets:
        sym = closure(space, A)
        a = mid.closure(A, inner)
        b = outer.closure(A, inner)
        for p in inner:
            in_a, in_b = p.coords in a, p.coords in b
            if in_a != in_b:
                res.unsafe += 1
                continue
            res.safe += 1
            if sym.contains(S, p) != in_a:
                res.mismatches.append((str(A), list(p.coords), in_a))
    return res


def random_described_set(group, rng, radius, max_atoms=3):
    """A random union of 1..max_atoms atoms anchored in the box of the given radius."""
    pts = Window(radius).points(group)
    k = rng.randint(1, max_atoms)
    return DescribedSet(tuple(Atom(rng.choice(ATOM_KINDS), rng.choice(pts)) for _ in range(k)))

