"""
Submonoids S (with 0) of a finitely generated abelian group.

Two kinds are supported: monoids generated by a finite list of elements, and
the lexicographic family LEX(n) in Z^n (zero together with every vector
whose highest-index nonzero coordinate is positive).

Membership in a generated monoid is decided in two stages.  The generators
that are units (their negatives lie in S) span the unit subgroup U(S).  On
the remaining generators there is an integer functional phi that vanishes
on U(S) and is >= 1 on every non-unit generator, so x = sum n_j g_j + u
forces sum n_j <= phi(x).  The search over n is then a finite dynamic
program over cosets of U(S), graded by phi.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ._exact import feasible_point, lcm
from .abelian import GroupElement, GroupSpec, SubgroupBasis, subgroup_generated

GENERATED = "generated"
LEX = "lex"

COFINAL_JUSTIFICATION = (
    "S is countable, and every s in S lies in s - S because 0 is in S, so C = S works"
)
MAJORIZATION_REDUCTION = (
    "derived reduction: for finitely generated S the countable-majorization "
    "condition holds iff S is a group (a positivity functional bounds every "
    "candidate majorant of a chain n*g for a non-unit generator g)"
)


@dataclass(frozen=True)
class MonoidSpec:
    group: GroupSpec
    kind: str = GENERATED
    generators: tuple = ()
    lex_rank: int = 0

    def __post_init__(self):
        if self.kind == GENERATED:
            gens = tuple(g if isinstance(g, GroupElement) else self.group.element(g)
                         for g in self.generators)
            for g in gens:
                if g.group != self.group:
                    raise ValueError("generator from a different group")
            object.__setattr__(self, "generators", gens)
        elif self.kind == LEX:
            if self.lex_rank < 1:
                raise ValueError("lex_rank must be positive")
            if self.group != GroupSpec(self.lex_rank):
                raise ValueError("LEX monoids live in Z^lex_rank")
            if self.generators:
                raise ValueError("LEX monoids take no generators")
        else:
            raise ValueError(f"unknown monoid kind {self.kind!r}")

    @classmethod
    def generated(cls, group, gens):
        return cls(group, GENERATED, tuple(gens))

    @classmethod
    def lex(cls, rank):
        return cls(GroupSpec(rank), LEX, (), rank)

    def group_generators(self):
        """Elements whose subgroup is <S> = S - S."""
        if self.kind == LEX:
            return [self.group.basis(i) for i in range(self.lex_rank)]
        return list(self.generators)

    def __str__(self):
        if self.kind == LEX:
            return f"LEX({self.lex_rank})"
        return "<" + ", ".join(str(list(g.coords)) for g in self.generators) + ">"


@dataclass(frozen=True)
class PositivityFunctional:
    """Integer weights on the free coordinates of G."""

    weights: tuple

    def __call__(self, x):
        return sum(w * c for w, c in zip(self.weights, x.free))


@dataclass(frozen=True)
class MajorizationVerdict:
    holds: bool
    explanation: str = ""
    element: GroupElement | None = None
    functional: PositivityFunctional | None = None

    @property
    def certificate(self):
        if self.holds:
            return self.explanation
        return self.element, self.functional


# ---------------------------------------------------------------------------
# structure of a generated monoid

def _unit_flags(frees):
    """Generator i is a unit iff some q >= 0 with q_i = 1 has sum q_j f_j = 0 (free parts)."""
    k = len(frees)
    r = len(frees[0]) if k else 0
    flags = []
    for i in range(k):
        A = [[f[c] for f in frees] for c in range(r)]
        A.append([int(j == i) for j in range(k)])
        b = [0] * r + [1]
        flags.append(feasible_point(A, b) is not None)
    return flags


def _positivity_weights(frees, flags):
    """Integer phi on Z^r with phi(f_j) >= 0 for all j and >= 1 on non-units."""
    k = len(frees)
    r = len(frees[0]) if k else 0
    if not k or not r or all(flags):
        return (0,) * r
    # variables: phi = p - m (2r), slacks s_j (k):  f_j.(p - m) - s_j = [j non-unit]
    A = []
    b = []
    for j, f in enumerate(frees):
        row = list(f) + [-v for v in f] + [-int(i == j) for i in range(k)]
        A.append(row)
        b.append(0 if flags[j] else 1)
    sol = feasible_point(A, b)
    if sol is None:  # pointedness after removing units guarantees feasibility
        raise ArithmeticError("no positivity functional; unit detection is inconsistent")
    phi = [sol[c] - sol[r + c] for c in range(r)]
    den = 1
    for v in phi:
        den = lcm(den, Fraction(v).denominator) or den
    ints = [int(v * den) for v in phi]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


class _Decider:
    """Membership oracle for a generated monoid; safe to share between threads."""

    def __init__(self, spec):
        self.spec = spec
        gens = spec.generators
        frees = [g.free for g in gens]
        self.unit_flags = _unit_flags(frees)
        self.units = subgroup_generated(spec.group, [g for g, u in zip(gens, self.unit_flags) if u])
        self.phi = PositivityFunctional(_positivity_weights(frees, self.unit_flags))
        steps = {}
        for g, u in zip(gens, self.unit_flags):
            if not u:
                steps.setdefault((self.phi(g), self.units.quotient_key(g)), g)
        self.steps = [(w, key) for (w, key) in steps]
        self._reach = [{self.units.quotient_key(spec.group.zero())}]
        self._lock = threading.Lock()

    def _extend(self, budget):
        with self._lock:
            reach = self._reach
            while len(reach) <= budget:
                b = len(reach)
                level = set()
                for w, key in self.steps:
                    if w <= b:
                        level.update(self.units.key_add(k, key) for k in reach[b - w])
                reach.append(level)

    def member(self, x):
        b = self.phi(x)
        if b < 0:
            return False
        if len(self._reach) <= b:
            self._extend(b)
        return self.units.quotient_key(x) in self._reach[b]


@lru_cache(maxsize=512)
def _decider(spec):
    return _Decider(spec)


# ---------------------------------------------------------------------------
# public operations

def _lex_member(x):
    for c in reversed(x.coords):
        if c:
            return c > 0
    return True


def _check(S, x):
    if x.group != S.group:
        raise ValueError("element from a different group")


def member(S, x):
    """Decide x in S."""
    _check(S, x)
    if S.kind == LEX:
        return _lex_member(x)
    return _decider(S).member(x)


def units(S):
    """The unit subgroup S ∩ (-S)."""
    if S.kind == LEX:
        return subgroup_generated(S.group, [])
    return _decider(S).units


def unit_generators(S):
    if S.kind == LEX:
        return []
    d = _decider(S)
    return [g for g, u in zip(S.generators, d.unit_flags) if u]


def nonunit_generators(S):
    if S.kind == LEX:
        return []
    d = _decider(S)
    return [g for g, u in zip(S.generators, d.unit_flags) if not u]


def positivity_functional(S):
    """A functional >= 0 on S and > 0 off the units (on generators for GENERATED)."""
    if S.kind == LEX:
        return PositivityFunctional(tuple(int(i == S.lex_rank - 1) for i in range(S.lex_rank)))
    return _decider(S).phi


def is_group(S):
    if S.kind == LEX:
        return False
    return all(_decider(S).unit_flags)


def is_trivial(S):
    """S == {0}."""
    if S.kind == LEX:
        return False
    return all(g.is_zero() for g in S.generators)


def closure_subgroup(S):
    """<S> = S - S as a SubgroupBasis."""
    return subgroup_generated(S.group, S.group_generators())


def majorization(S):
    """Decide: every countable C ⊆ S has a in S with C ⊆ a - S."""
    if S.kind == LEX:
        top = S.group.basis(S.lex_rank - 1)
        return MajorizationVerdict(False, "the chain n*e_top has no majorant", top,
                                   positivity_functional(S))
    if is_group(S):
        return MajorizationVerdict(True, "S is a group, so a = 0 majorizes every subset")
    g = nonunit_generators(S)[0]
    return MajorizationVerdict(False, MAJORIZATION_REDUCTION, g, positivity_functional(S))


def countable_cofinal_exists(S):
    """Some countable C ⊆ S has S ⊆ C - S; always true here (S itself is countable)."""
    return True


# ---------------------------------------------------------------------------
# rays: helpers for sequences n -> y + n*d

@lru_cache(maxsize=4096)
def _augmented(S, extra):
    return MonoidSpec.generated(S.group, tuple(S.generators) + (extra,))


def ray_member(S, z, d):
    """Decide whether z + j*d lies in S for some j >= 0."""
    _check(S, z)
    if S.kind == GENERATED:
        return member(_augmented(S, -d), z)
    if _lex_member(z):
        return True
    if d.is_zero():
        return False
    t = max(i for i, c in enumerate(d.coords) if c)
    if any(z.coords[t + 1:]):
        return False
    if d.coords[t] > 0:
        return True
    # z_t + j*d_t decreases; only small j can work
    top = z.coords[t] // -d.coords[t] + 1
    return any(_lex_member(z + j * d) for j in range(max(top, 0) + 1))


def smallest_multiple_in(S, d):
    """Least m >= 1 with m*d in S, or None when no positive multiple lies in S."""
    if S.kind == LEX:
        return 1 if _lex_member(d) else None
    aug = _augmented(S, -d)
    if not _decider(aug).unit_flags[-1]:
        return None
    m = 1
    while not member(S, m * d):
        m += 1
    return m


def eventually_member(S, y, d):
    """Decide whether y + n*d lies in S for all sufficiently large n.

    If that happens, Dickson's lemma on representation vectors yields some
    m >= 1 with m*d in S, and the sequence splits into m residue classes that
    are each upward closed under adding m*d.
    """
    m = smallest_multiple_in(S, d)
    if m is None:
        return False
    md = m * d
    return all(ray_member(S, y + r * d, md) for r in range(m))


def ray_covers_group(S, d):
    """True iff z + j*d ∈ S for some j >= 0, for every z in G."""
    if S.kind == LEX:
        return not d.is_zero() and d.coords[-1] > 0
    aug = _augmented(S, -d)
    return is_group(aug) and closure_subgroup(aug).is_whole()
