"""
Topologies on finite sets {0, ..., n-1}.

Subsets are int bitmasks and a topology is the sorted tuple of its open
masks.  Besides the usual closure/interior machinery this module computes
regularizations and suprema, decides (co)wideness, enumerates every
topology on up to four points, and exhaustively checks the two lemmas on
cowide topologies:

* if tau and sigma are cowide, the (tau v sigma)-closure of any W in tau
  equals its tau-closure, and for wide sigma the same holds for every
  W in tau v sigma;
* if tau and sigma are cowide and sigma is wide, (tau v sigma)_r = tau_r.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

MAX_ENUM_POINTS = 4


class CapError(ValueError):
    pass


def _full(n):
    return (1 << n) - 1


def mask(points):
    m = 0
    for p in points:
        m |= 1 << p
    return m


def members(m):
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class FinTopology:
    n: int
    opens: tuple

    def __post_init__(self):
        object.__setattr__(self, "opens", tuple(sorted(set(self.opens))))

    @property
    def full(self):
        return _full(self.n)

    def is_open(self, a):
        return a in self._open_set

    @property
    def _open_set(self):
        s = self.__dict__.get("_cache_set")
        if s is None:
            s = frozenset(self.opens)
            object.__setattr__(self, "_cache_set", s)
        return s

    def is_topology(self):
        s = self._open_set
        if 0 not in s or self.full not in s:
            return False
        return all((a | b) in s and (a & b) in s for a in self.opens for b in self.opens)

    def interior(self, a):
        out = 0
        for u in self.opens:
            if u & ~a == 0:
                out |= u
        return out

    def closure(self, a):
        out = 0
        for u in self.opens:
            if u & a == 0:
                out |= u
        return self.full & ~out

    def nonempty_opens(self):
        return [u for u in self.opens if u]

    def as_sets(self):
        return [set(members(u)) for u in self.opens]

    def __len__(self):
        return len(self.opens)


@dataclass(frozen=True)
class TopPair:
    tau: FinTopology
    sigma: FinTopology

    def __post_init__(self):
        if self.tau.n != self.sigma.n:
            raise ValueError("topologies live on different ground sets")


def _check_subsets(n, family):
    full = _full(n)
    out = []
    for a in family:
        if not isinstance(a, int):
            a = mask(a)
        if a < 0 or a & ~full:
            raise ValueError(f"subset {members(a) if a >= 0 else a} leaves the ground set of size {n}")
        out.append(a)
    return out


def _unions(base):
    opens = {0}
    for b in set(base):
        opens |= {o | b for o in opens}
    return opens


def generate(n, subbase):
    """Smallest topology on n points containing every set in ``subbase``."""
    sub = set(_check_subsets(n, subbase))
    full = _full(n)
    inter = {full}
    for s in sub:
        inter |= {s & t for t in inter}
    return FinTopology(n, tuple(_unions(inter)))


def discrete(n):
    return FinTopology(n, tuple(range(1 << n)))


def antidiscrete(n):
    return FinTopology(n, (0, _full(n)) if n else (0,))


def closure(t, a):
    return t.closure(a if isinstance(a, int) else mask(a))


def interior(t, a):
    return t.interior(a if isinstance(a, int) else mask(a))


def canonical_opens(t):
    """Opens U with U == int(cl(U))."""
    return [u for u in t.opens if t.interior(t.closure(u)) == u]


def regularization(t):
    return generate(t.n, canonical_opens(t))


def supremum(p):
    """tau v sigma, generated by the base {U ∩ V}."""
    base = {u & v for u in p.tau.opens for v in p.sigma.opens}
    return FinTopology(p.tau.n, tuple(_unions(base)))


def is_cowide(p):
    sig = p.sigma.nonempty_opens()
    return all(u & v for u in p.tau.nonempty_opens() for v in sig)


def is_wide(t):
    return is_cowide(TopPair(t, t))


def is_pseudocompact(t):
    """Every locally finite family of nonempty opens is finite.

    On a finite space every family of opens is a subset of a finite set, so
    this never fails.  Kept literal for completeness; degenerate here.
    """
    family = t.nonempty_opens()
    return len(family) <= len(t.opens)


def h_closed_criterion(t):
    """Every open cover has a finite subfamily whose closures cover X (degenerate: finite covers)."""
    covers = [u for u in t.opens if u]
    return t.n == 0 or (bool(covers) and mask(itertools.chain.from_iterable(
        members(t.closure(u)) for u in covers)) == t.full)


def enumerate_topologies(n):
    """Every topology on n labeled points, each exactly once (n <= 4)."""
    if n > MAX_ENUM_POINTS:
        raise CapError(f"enumeration is capped at {MAX_ENUM_POINTS} points, got {n}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    start = antidiscrete(n)
    seen = {start.opens}
    queue = deque([start])
    out = []
    while queue:
        t = queue.popleft()
        out.append(t)
        have = t._open_set
        for a in range(1 << n):
            if a in have:
                continue
            nt = generate(n, t.opens + (a,))
            if nt.opens not in seen:
                seen.add(nt.opens)
                queue.append(nt)
    out.sort(key=lambda t: (len(t.opens), t.opens))
    return out


@dataclass
class LemmaReport:
    n: int
    topologies: int = 0
    pairs: int = 0
    cowide_pairs: int = 0
    wide_sigma_pairs: int = 0
    closure_checks: int = 0
    regularization_checks: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples

    def to_dict(self):
        return {
            "n": self.n,
            "topologies": self.topologies,
            "pairs": self.pairs,
            "cowide_pairs": self.cowide_pairs,
            "wide_sigma_pairs": self.wide_sigma_pairs,
            "closure_checks": self.closure_checks,
            "regularization_checks": self.regularization_checks,
            "counterexamples": self.counterexamples,
        }


def verify_lemmas(n, topologies=None):
    """Check both cowide lemmas on every ordered pair of topologies on n points."""
    tops = topologies if topologies is not None else enumerate_topologies(n)
    rep = LemmaReport(n, topologies=len(tops))
    reg = {t.opens: regularization(t) for t in tops}
    wide = {t.opens: is_wide(t) for t in tops}
    for tau in tops:
        for sigma in tops:
            rep.pairs += 1
            pair = TopPair(tau, sigma)
            if not is_cowide(pair):
                continue
            rep.cowide_pairs += 1
            sup = supremum(pair)
            for w in tau.opens:
                rep.closure_checks += 1
                if sup.closure(w) != tau.closure(w):
                    rep.counterexamples.append(
                        {"lemma": "closure-of-open", "tau": tau.opens, "sigma": sigma.opens, "W": w})
            if not wide[sigma.opens]:
                continue
            rep.wide_sigma_pairs += 1
            for w in sup.opens:
                rep.closure_checks += 1
                if sup.closure(w) != tau.closure(w):
                    rep.counterexamples.append(
                        {"lemma": "closure-of-open/wide", "tau": tau.opens, "sigma": sigma.opens, "W": w})
            rep.regularization_checks += 1
            if regularization(sup).opens != reg[tau.opens].opens:
                rep.counterexamples.append(
                    {"lemma": "cowide-regularization", "tau": tau.opens, "sigma": sigma.opens})
    return rep


# ---------------------------------------------------------------------------
# large ground sets given by a subbase (window traces)

def minimal_neighborhoods(n, subbase, points=None):
    """Smallest open set containing each point of the topology generated by ``subbase``.

    Works for ground sets far too big to list every open: the minimal
    neighborhood of p is the intersection of the subbase sets containing p.
    """
    full = _full(n)
    wanted = range(n) if points is None else points
    mn = {p: full for p in wanted}
    for s in subbase:
        for p in members(s) if points is None else [q for q in wanted if s >> q & 1]:
            mn[p] &= s
    return mn


def closure_from_subbase(n, subbase, a, points=None):
    """Closure of mask ``a`` in the topology generated by ``subbase`` (restricted to ``points``)."""
    mn = minimal_neighborhoods(n, subbase, points)
    out = 0
    for p, m in mn.items():
        if m & a:
            out |= 1 << p
    return out
