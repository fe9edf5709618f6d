"""
Brute-force reference procedures.

Nothing here uses normal forms, linear programming or positivity
functionals; each answer comes from explicit enumeration.  They are slow
and only complete up to their stated bounds, which is what makes them
useful as independent checks of the exact algorithms.
"""

from __future__ import annotations

import itertools


def _reduce(group, coords):
    r = group.rank
    return tuple(coords[:r]) + tuple(v % d for v, d in zip(coords[r:], group.torsion))


def bounded_sums(group, gens, bound):
    """All sum c_i g_i with 0 <= c_i <= bound, as coordinate tuples."""
    out = {_reduce(group, (0,) * group.ncoords)}
    for g in gens:
        g = tuple(g.coords) if hasattr(g, "coords") else tuple(g)
        layer = set()
        for x in out:
            y = x
            for _ in range(bound + 1):
                layer.add(y)
                y = _reduce(group, tuple(a + b for a, b in zip(y, g)))
        out = layer
    return out


def bounded_combinations(group, gens, bound):
    """All sum z_i g_i with |z_i| <= bound (subgroup membership oracle)."""
    both = []
    for g in gens:
        c = tuple(g.coords) if hasattr(g, "coords") else tuple(g)
        both += [c, tuple(-v for v in c)]
    return bounded_sums(group, both, bound)


def reachable(group, gens, radius):
    """Points reached from 0 by steps of +-gens without leaving the radius box."""
    steps = []
    for g in gens:
        c = tuple(g.coords) if hasattr(g, "coords") else tuple(g)
        steps += [c, tuple(-v for v in c)]
    r = group.rank
    start = (0,) * group.ncoords
    seen, todo = {start}, [start]
    while todo:
        x = todo.pop()
        for c in steps:
            y = _reduce(group, tuple(a + b for a, b in zip(x, c)))
            if y not in seen and all(abs(v) <= radius for v in y[:r]):
                seen.add(y)
                todo.append(y)
    return seen


def finite_quotient_order(group, gens, radius):
    """Number of classes of box points modulo <gens>, by greedy representatives.

    Two box points share a class when their difference is reachable from 0
    by generator steps inside a box three times as wide.  For a finite-index
    subgroup whose cosets all meet the box this is the index; for infinite
    index it grows with the radius.
    """
    members = reachable(group, gens, 3 * radius)
    reps = []
    ranges = [range(-radius, radius + 1)] * group.rank + [range(d) for d in group.torsion]
    for p in itertools.product(*ranges):
        if not any(_reduce(group, tuple(a - b for a, b in zip(p, q))) in members for q in reps):
            reps.append(p)
    return len(reps)


def all_topologies(n):
    """Every topology on n points by filtering all families of subsets (n <= 3)."""
    if n > 3:
        raise ValueError("the filter oracle is limited to n <= 3")
    full = (1 << n) - 1
    subsets = [s for s in range(1 << n) if s not in (0, full)]
    out = []
    for k in range(len(subsets) + 1):
        for fam in itertools.combinations(subsets, k):
            opens = set(fam) | {0, full}
            if all((a | b) in opens and (a & b) in opens for a in opens for b in opens):
                out.append(tuple(sorted(opens)))
    return out
