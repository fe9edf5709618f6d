"""
Finitely generated abelian groups Z^r + Z/d_1 + ... + Z/d_m.

Elements are integer vectors; torsion slots are kept reduced.  Subgroups are
handled as lattices in Z^n containing the torsion relations, so membership is
a Hermite normal form reduction and the quotient structure (index, free rank,
transversals, free directions) is read off a Smith normal form.

All arithmetic uses Python ints, so nothing overflows.

>>> G = GroupSpec(2)
>>> subgroup_generated(G, [G.element((2, 0)), G.element((0, 3))]).index
6
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass, field
from functools import cached_property

from ._exact import xgcd

INFINITE = math.inf


class DimensionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer normal forms

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf(M):
    """Smith normal form with transforms: returns U, D, V, V^-1 with U*M*V == D."""
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    for row in A:
        if len(row) != n:
            raise DimensionError("ragged matrix")
    U = _identity(m)
    V = _identity(n)
    Vi = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(src, dst, q):
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        # V <- V E  implies  V^-1 <- E^-1 V^-1
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        piv = min(((abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]),
                  default=None)
        if piv is None:
            break
        _, i0, j0 = piv
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V, Vi


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V == D, U and V unimodular, D diagonal with d1 | d2 | ...

    >>> U, D, V = smith_normal_form([[2, 0], [0, 3]])
    >>> D
    [[1, 0], [0, 6]]
    """
    U, D, V, _ = _snf(M)
    return U, D, V


def invariant_factors(M):
    """Nonzero diagonal entries of the Smith form of M."""
    _, D, _, _ = _snf(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_normal_form(rows, ncols):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is upper echelon with positive pivots, entries above each pivot
    reduced into [0, pivot), and zero rows dropped.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    for r in A:
        if len(r) != ncols:
            raise DimensionError("row length does not match ncols")
    r = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[i0] = A[i0], A[r]
            for k in range(r + 1, len(A)):
                if A[k][col]:
                    q = A[k][col] // A[r][col]
                    A[k] = [a - q * b for a, b in zip(A[k], A[r])]
            if all(A[k][col] == 0 for k in range(r + 1, len(A))):
                break
        if r < len(A) and A[r][col]:
            if A[r][col] < 0:
                A[r] = [-a for a in A[r]]
            for k in range(r):
                q = A[k][col] // A[r][col]
                if q:
                    A[k] = [a - q * b for a, b in zip(A[k], A[r])]
            r += 1
    return [row for row in A[:r]]


def hnf_contains(hnf, x):
    """Decide whether the integer vector x lies in the lattice with Hermite basis ``hnf``."""
    x = list(x)
    for row in hnf:
        pc = next(j for j, v in enumerate(row) if v)
        if x[pc] % row[pc]:
            return False
        q = x[pc] // row[pc]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return not any(x)


# ---------------------------------------------------------------------------
# groups and elements

@dataclass(frozen=True)
class GroupSpec:
    """Z^rank + Z/torsion[0] + ...; torsion is normalized to a divisibility chain.

    Passing orders that are not a chain (say ``[2, 3]``) normalizes them
    (to ``[6]``).  Use :func:`presentation` when raw coordinates must be
    translated too.
    """

    rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        orders = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in orders):
            raise ValueError("torsion entries must be >= 2")
        if not _is_chain(orders):
            orders = tuple(d for d in invariant_factors([[d if i == j else 0 for j in range(len(orders))]
                                                          for i, d in enumerate(orders)]) if d > 1)
        object.__setattr__(self, "torsion", orders)

    @property
    def ncoords(self):
        return self.rank + len(self.torsion)

    @property
    def is_finite(self):
        return self.rank == 0

    @property
    def order(self):
        return math.prod(self.torsion) if self.rank == 0 else INFINITE

    def element(self, coords):
        return GroupElement(self, coords)

    def zero(self):
        return GroupElement(self, (0,) * self.ncoords)

    def basis(self, i):
        return GroupElement(self, tuple(int(i == j) for j in range(self.ncoords)))

    def relations(self):
        """Rows d_i * e_{rank+i}: the kernel of Z^n -> G."""
        n = self.ncoords
        return [tuple(d if j == self.rank + i else 0 for j in range(n))
                for i, d in enumerate(self.torsion)]

    def __str__(self):
        parts = ["Z"] * min(self.rank, 1)
        if self.rank > 1:
            parts = [f"Z^{self.rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def _is_chain(orders):
    return all(b % a == 0 for a, b in zip(orders, orders[1:]))


def presentation(rank, orders):
    """Build a GroupSpec from arbitrary cyclic orders plus a coordinate translator.

    Returns ``(group, embed)`` where ``embed`` maps a raw coordinate vector
    (rank free entries followed by one entry per order) to a normalized
    element of ``group``.
    """
    orders = tuple(int(d) for d in orders)
    if any(d < 2 for d in orders):
        raise ValueError("torsion entries must be >= 2")
    group = GroupSpec(rank, orders)
    if group.torsion == orders:
        return group, group.element
    D = [[d if i == j else 0 for j in range(len(orders))] for i, d in enumerate(orders)]
    _, S, V, _ = _snf(D)
    keep = [j for j in range(len(orders)) if S[j][j] > 1]

    def embed(coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != rank + len(orders):
            raise DimensionError(f"expected {rank + len(orders)} coordinates, got {len(coords)}")
        t = coords[rank:]
        y = [sum(t[i] * V[i][j] for i in range(len(t))) for j in range(len(t))]
        return group.element(coords[:rank] + tuple(y[j] for j in keep))

    return group, embed


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    coords: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in self.coords)
        if len(c) != self.group.ncoords:
            raise DimensionError(f"{self.group} needs {self.group.ncoords} coordinates, got {len(c)}")
        r = self.group.rank
        c = c[:r] + tuple(v % d for v, d in zip(c[r:], self.group.torsion))
        object.__setattr__(self, "coords", c)

    @property
    def free(self):
        return self.coords[:self.group.rank]

    def is_zero(self):
        return not any(self.coords)

    def _check(self, other):
        if not isinstance(other, GroupElement) or (other.group is not self.group and other.group != self.group):
            raise DimensionError("elements belong to different groups")

    def __add__(self, other):
        self._check(other)
        return _raw(self.group, tuple(map(operator.add, self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return _raw(self.group, tuple(map(operator.sub, self.coords, other.coords)))

    def __neg__(self):
        return _raw(self.group, tuple(-a for a in self.coords))

    def __rmul__(self, k):
        return _raw(self.group, tuple(k * a for a in self.coords))

    def order(self):
        return math.prod(self.torsion) if self.rank == 0 else INFINITE

    def element(self, coords):
        return GroupElement(self, coords)

    def zero(self):
        return GroupElement(self, (0,) * self.ncoords)

    def basis(self, i):
        return GroupElement(self, tuple(int(i == j) for j in range(self.ncoords)))

    def relations(self):
        """Rows d_i * e_{rank+i}: the kernel of Z^n -> G."""
        n = self.ncoords
        return [tuple(d if j == self.rank + i else 0 for j in range(n))
                for i, d in enumerate(self.torsion)]

    def __str__(self):
        parts = ["Z"] * min(self.rank, 1)
        if self.rank > 1:
            parts = [f"Z^{self.rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def _is_chain(orders):
    return all(b % a == 0 for a, b in zip(orders, orders[1:]))


def presentation(rank, orders):
    """Build a GroupSpec from arbitrary cyclic orders plus a coordinate translator.

    Returns ``(group, embed)`` where ``embed`` maps a raw coordinate vector
    (rank free entries followed by one entry per order) to a normalized
    element of ``group``.
    """
    orders = tuple(int(d) for d in orders)
    if any(d < 2 for d in orders):
        raise ValueError("torsion entries must be >= 2")
    group = GroupSpec(rank, orders)
    if group.torsion == orders:
        return group, group.element
    D = [[d if i == j else 0 for j in range(len(orders))] for i, d in enumerate(orders)]
    _, S, V, _ = _snf(D)
    keep = [j for j in range(len(orders)) if S[j][j] > 1]

    def embed(coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != rank + len(orders):
            raise DimensionError(f"expected {rank + len(orders)} coordinates, got {len(coords)}")
        t = coords[rank:]
        y = [sum(t[i] * V[i][j] for i in range(len(t))) for j in range(len(t))]
        return group.element(coords[:rank] + tuple(y[j] for j in keep))

    return group, embed


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    coords: tuple

    def __post_init__(self):
        c = tuple(int(v) for v in self.coords)
        if len(c) != self.group.ncoords:
            raise DimensionError(f"{self.group} needs {self.group.ncoords} coordinates, got {len(c)}")
        r = self.group.rank
        c = c[:r] + tuple(v % d for v, d in zip(c[r:], self.group.torsion))
        object.__setattr__(self, "coords", c)

    @property
    def free(self):
        return self.coords[:self.group.rank]

    def is_zero(self):
        return not any(self.coords)

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise DimensionError("elements belong to different groups")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __rmul__(self, k):
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def order(self):
        """Order of the element; INFINITE when a free coordinate is nonzero."""
        if any(self.free):
            return INFINITE
        o = 1
        for v, d in zip(self.coords[self.group.rank:], self.group.torsion):
            o = math.lcm(o, d // math.gcd(v, d))
        return o

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"GroupElement({list(self.coords)})"


def _raw(group, c):
    """Element from an already validated integer tuple (arithmetic fast path)."""
    if group.torsion:
        r = group.rank
        c = c[:r] + tuple(v % d for v, d in zip(c[r:], group.torsion))
    e = object.__new__(GroupElement)
    object.__setattr__(e, "group", group)
    object.__setattr__(e, "coords", c)
    return e


def add(g, h):
    return g + h


def neg(g):
    return -g


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True)
class SubgroupBasis:
    """Subgroup of ``group`` generated by ``generators``.

    ``normal_form`` is the Hermite basis of the preimage lattice in Z^n
    (generators plus torsion relations).  Quotient data comes from the Smith
    form of the same lattice: with U*M*V = D and w_j the rows of V^-1,
    G/H = sum Z/d_j w_j (over nonzero d_j) + free part spanned by the
    remaining w_j.
    """

    group: GroupSpec
    generators: tuple
    normal_form: tuple = field(init=False, repr=False)
    _diag: tuple = field(init=False, repr=False, compare=False)
    _V: tuple = field(init=False, repr=False, compare=False)
    _Vi: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.group.ncoords
        rows = [tuple(g.coords) for g in self.generators] + self.group.relations()
        object.__setattr__(self, "normal_form", tuple(tuple(r) for r in hermite_normal_form(rows, n)))
        if rows and n:
            _, D, V, Vi = _snf(rows)
            diag = tuple(D[j][j] if j < len(D) else 0 for j in range(n))
        else:
            V, Vi, diag = _identity(n), _identity(n), (0,) * n
        object.__setattr__(self, "_diag", diag)
        object.__setattr__(self, "_V", tuple(map(tuple, V)))
        object.__setattr__(self, "_Vi", tuple(map(tuple, Vi)))

    def contains(self, x):
        return hnf_contains(self.normal_form, x.coords)

    __contains__ = contains

    @property
    def lattice_rank(self):
        return sum(1 for d in self._diag if d)

    @property
    def quotient_free_rank(self):
        return self.group.ncoords - self.lattice_rank

    @property
    def quotient_invariants(self):
        """Invariant factors (>1) of the finite part of G/H."""
        return tuple(d for d in self._diag if d > 1)

    @property
    def index(self):
        if self.quotient_free_rank:
            return INFINITE
        return math.prod(self.quotient_invariants)

    def is_trivial(self):
        return all(g.is_zero() for g in self.generators)

    def is_whole(self):
        return self.index == 1

    def _coords(self, x):
        n = self.group.ncoords
        return [sum(x[i] * self._V[i][j] for i in range(n)) for j in range(n)]

    def quotient_key(self, x):
        """Canonical coordinates of the coset x + H (hashable; equal iff same coset)."""
        y = self._coords(x.coords)
        key = []
        for j, d in enumerate(self._diag):
            if d == 1:
                continue
            key.append(y[j] % d if d else y[j])
        return tuple(key)

    def _key_moduli(self):
        return tuple(d for d in self._diag if d != 1)

    def key_add(self, k1, k2):
        return tuple((a + b) % d if d else a + b for a, b, d in zip(k1, k2, self._key_moduli()))

    def free_directions(self):
        """Elements whose images form a basis of the free part of G/H."""
        return [self.group.element(self._Vi[j]) for j, d in enumerate(self._diag) if d == 0]

    def transversal(self):
        """One representative of each coset (only for finite index)."""
        if self.index == INFINITE:
            raise ValueError("infinite index has no finite transversal")
        steps = [(self._Vi[j], d) for j, d in enumerate(self._diag) if d > 1]
        reps = []
        for cs in itertools.product(*(range(d) for _, d in steps)):
            v = [0] * self.group.ncoords
            for c, (w, _) in zip(cs, steps):
                v = [a + c * b for a, b in zip(v, w)]
            reps.append(self.group.element(v))
        return reps

    def free_coordinates(self, x):
        """Coordinates of the image of x along :meth:`free_directions`."""
        y = self._coords(x.coords)
        return tuple(y[j] for j, d in enumerate(self._diag) if d == 0)

    def torsion_coordinates(self, x):
        y = self._coords(x.coords)
        return tuple(y[j] % d for j, d in enumerate(self._diag) if d > 1)


def subgroup_generated(group, gens):
    gens = tuple(gens)
    for g in gens:
        if g.group != group:
            raise DimensionError("generator from a different group")
    return SubgroupBasis(group, gens)


def quotient_is_periodic(H):
    """True iff G/H is a torsion group, i.e. its free rank is zero."""
    return H.quotient_free_rank == 0


def box(group, radius):
    """All elements with free coordinates in [-radius, radius] and any torsion part."""
    ranges = [range(-radius, radius + 1)] * group.rank + [range(d) for d in group.torsion]
    for c in itertools.product(*ranges):
        yield _raw(group, c)
