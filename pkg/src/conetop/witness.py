"""
Proof witnesses for cone-topology verdicts and their window verifiers.

Each ``make_*`` builds the object that the corresponding argument uses (a
non-T0 element, an open chain U_n = ∪_{i>=n} x_i + S, a coset transversal,
...).  :func:`verify` re-checks a certificate against raw definitions on a
finite window, using monoid membership and the closure rule cl(A) = A - S
only.  Refutations found by ``verify`` are sound; confirmations hold for
the stated (radius, prefix) stage.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from . import monoid as mon
from .abelian import INFINITE, GroupElement
from .cone import CONE, CONE_STAR, DEFAULT_PREFIX, DEFAULT_RADIUS, ContractError, Window

NON_T0 = "NON_T0"
OPEN_CHAIN = "OPEN_CHAIN"
LOC_FINITE_FAMILY = "LOC_FINITE_FAMILY"
TRANSVERSAL = "TRANSVERSAL"
CONVERGENT_SUBSEQ = "CONVERGENT_SUBSEQ"
MAJOR_FAIL = "MAJOR_FAIL"
P_SPACE_FAIL = "P_SPACE_FAIL"
KINDS = (NON_T0, OPEN_CHAIN, LOC_FINITE_FAMILY, TRANSVERSAL, CONVERGENT_SUBSEQ, MAJOR_FAIL, P_SPACE_FAIL)

# payload fields holding group elements, and those holding lists of them
_ELEMENT_FIELDS = {"x", "start", "step", "g", "limit"}
_LIST_FIELDS = {"reps"}


class MalformedCertificate(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    """Tagged proof witness.

    Payload by kind:

    NON_T0             x
    OPEN_CHAIN         start, step           (x_i = start + i*step)
    LOC_FINITE_FAMILY  start, step           (same shape)
    TRANSVERSAL        reps                  (one point per coset of <S>)
    CONVERGENT_SUBSEQ  start, step, offset, period, limit
                       (terms start + n*step, n = offset mod period)
    MAJOR_FAIL         g, weights            (chain n*g, functional weights)
    P_SPACE_FAIL       start, step           (c_n = start + n*step)
    """

    kind: str
    payload: dict = field(hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MalformedCertificate(f"unknown certificate kind {self.kind!r}")

    def __getitem__(self, key):
        return self.payload[key]

    def replace(self, **changes):
        return Certificate(self.kind, {**self.payload, **changes})

    def to_dict(self):
        out = {"kind": self.kind}
        for k, v in self.payload.items():
            if k in _ELEMENT_FIELDS:
                out[k] = list(v.coords)
            elif k in _LIST_FIELDS:
                out[k] = [list(e.coords) for e in v]
            elif k == "weights":
                out[k] = list(v)
            else:
                out[k] = v
        return out

    @classmethod
    def from_dict(cls, group, data):
        data = dict(data)
        try:
            kind = data.pop("kind")
            payload = {}
            for k, v in data.items():
                if k in _ELEMENT_FIELDS:
                    payload[k] = group.element(v)
                elif k in _LIST_FIELDS:
                    payload[k] = [group.element(e) for e in v]
                elif k == "weights":
                    payload[k] = tuple(int(w) for w in v)
                else:
                    payload[k] = v
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificate(str(exc)) from exc
        return cls(kind, payload)


@dataclass
class VerificationReport:
    passed: bool
    kind: str
    radius: int
    prefix: int
    reason: str = ""
    counterexample: object = None
    checks: int = 0

    def to_dict(self):
        return asdict(self)


# ---------------------------------------------------------------------------
# constructors

def make_non_t0(S, variant=CONE):
    """A nonzero x with x, -x in S, or None when the space is T0.

    G*_S fails T0 only when S is a nontrivial group, in which case its
    topology coincides with that of G_S.
    """
    if variant == CONE_STAR and not mon.is_group(S):
        return None
    for g in mon.unit_generators(S):
        if not g.is_zero():
            return Certificate(NON_T0, {"x": g})
    return None


def make_nonpseudocompact_family(space):
    """x_i = i*d along a free direction d of G/<S> when the index is infinite."""
    H = mon.closure_subgroup(space.monoid)
    if H.index != INFINITE:
        return None
    d = H.free_directions()[0]
    return Certificate(LOC_FINITE_FAMILY, {"start": space.group.zero(), "step": d})


def make_2pc_failing_chain(space):
    """U_n = ∪_{i>=n} x_i + S with empty ∩ cl(-U_n), or None for 2-pseudocompact spaces.

    Uses x_i = (i+1)*g from a failed majorization; when majorization holds
    but <S> has infinite index, x_i runs along a free direction of G/<S>
    instead.  Starting at g rather than 0 drops a redundant first member and
    lets a window of radius R confirm the chain with prefix R.
    """
    S = space.monoid
    verdict = mon.majorization(S)
    if not verdict.holds:
        g = verdict.element
        return Certificate(OPEN_CHAIN, {"start": g, "step": g})
    H = mon.closure_subgroup(S)
    if H.index == INFINITE:
        d = H.free_directions()[0]
        return Certificate(OPEN_CHAIN, {"start": d, "step": d})
    return None


def make_p_space_refuter(space):
    """c_n = (n+1)*g whose G_delta set {0} ∪ ∩(c_n + S) is not a neighborhood of 0."""
    if space.variant != CONE_STAR:
        raise ContractError("P-space refuters are for the cone* topology")
    verdict = mon.majorization(space.monoid)
    if verdict.holds:
        return None
    g = verdict.element
    return Certificate(P_SPACE_FAIL, {"start": g, "step": g})


def make_major_fail(S):
    verdict = mon.majorization(S)
    if verdict.holds:
        return None
    return Certificate(MAJOR_FAIL, {"g": verdict.element, "weights": verdict.functional.weights})


def make_transversal(space):
    """One representative per coset of <S> (finite index only)."""
    H = mon.closure_subgroup(space.monoid)
    if H.index == INFINITE:
        return None
    return Certificate(TRANSVERSAL, {"reps": H.transversal()})


def make_convergent_subsequence(space, start=None, step=None):
    """Convergent subsequence of start + n*step when S is a group of finite index.

    The image of ``step`` in G/S has finite order p, so the terms with
    n = 0 mod p stay in start + S, which is the basic neighborhood of
    ``start`` in both topologies.
    """
    S = space.monoid
    if not mon.is_group(S):
        return None
    H = mon.closure_subgroup(S)
    if H.index == INFINITE:
        return None
    G = space.group
    start = start if start is not None else G.zero()
    step = step if step is not None else (G.basis(0) if G.ncoords else G.zero())
    period = 1
    while not H.contains(period * step):
        period += 1
    return Certificate(CONVERGENT_SUBSEQ,
                       {"start": start, "step": step, "offset": 0, "period": period, "limit": start})


# ---------------------------------------------------------------------------
# verification

def _probe(space, window):
    """Elements of S inside the window: the basic-neighborhood parameters checked."""
    return [s for s in window.points(space.group) if mon.member(space.monoid, s)]


def _fail(rep, reason, counterexample=None):
    rep.passed = False
    rep.reason = reason
    rep.counterexample = counterexample
    return rep


def _verify_non_t0(space, cert, window, rep):
    S = space.monoid
    x = cert["x"]
    rep.checks += 3
    problems = []
    if x.is_zero():
        problems.append("x is zero")
    if not mon.member(S, x):
        problems.append("x is not in S")
    if not mon.member(S, -x):
        problems.append("-x is not in S")
    if problems:
        return _fail(rep, "; ".join(problems), list(x.coords))
    if space.variant == CONE_STAR:
        # every basic neighborhood {0} ∪ (s+S) of 0 must contain x, and vice versa
        for s in _probe(space, window):
            rep.checks += 1
            if not s.is_zero() and not (mon.member(S, x - s) and mon.member(S, -x - s)):
                return _fail(rep, "x and 0 are separated by a basic cone* neighborhood", list(s.coords))
    return rep


def _verify_open_chain(space, cert, window, prefix, rep):
    S = space.monoid
    start, step = cert["start"], cert["step"]
    # U_n = ∪_{i>=n} (x_i + S); cl(-U_n) ⊇ its cone* closure and equals
    # ∪_{i>=n} (-x_i - S).  The sets are nested, so ∩_{n<=prefix} = cl(-U_prefix).
    tail = -start - prefix * step
    for b in window.points(space.group):
        rep.checks += 1
        if mon.ray_member(S, tail - b, -step):
            return _fail(rep, f"window point lies in cl(-U_n) for every n <= {prefix}", list(b.coords))
    return rep


def _solve_multiple(H, target, step):
    """All i >= 0 with target - i*step in H: returns ('none'|'one'|'many', i)."""
    ft, fs = H.free_coordinates(target), H.free_coordinates(step)
    if any(fs):
        j = next(k for k, v in enumerate(fs) if v)
        if ft[j] % fs[j]:
            return "none", None
        i = ft[j] // fs[j]
        if i < 0 or not H.contains(target - i * step):
            return "none", None
        return "one", i
    order = max(1, _order_mod(H, step))
    for i in range(order):
        if H.contains(target - i * step):
            return "many", i
    return "none", None


def _order_mod(H, x):
    n = 1
    while not H.contains(n * x):
        n += 1
        if n > 10_000_000:  # H has finite quotient part here; cannot loop forever
            raise ArithmeticError("runaway order computation")
    return n


def _verify_loc_finite(space, cert, window, prefix, rep):
    H = mon.closure_subgroup(space.monoid)
    start, step = cert["start"], cert["step"]
    worst = 0
    # (b + S) meets x_i + S iff b - x_i ∈ <S>; basic cone* neighborhoods are smaller
    for b in window.points(space.group):
        rep.checks += 1
        how, i = _solve_multiple(H, b - start, step)
        if how == "many":
            return _fail(rep, "basic neighborhood meets infinitely many members", list(b.coords))
        esc = 0 if how == "none" else i + 1
        if esc > prefix:
            return _fail(rep, f"escape index {esc} exceeds prefix {prefix}", list(b.coords))
        worst = max(worst, esc)
    rep.reason = f"largest escape index {worst}"
    return rep


def _verify_transversal(space, cert, window, rep):
    H = mon.closure_subgroup(space.monoid)
    reps = cert["reps"]
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            rep.checks += 1
            if H.contains(a - b):
                return _fail(rep, "two representatives share a coset", [list(a.coords), list(b.coords)])
    for x in window.points(space.group):
        rep.checks += 1
        if not any(H.contains(x - a) for a in reps):
            return _fail(rep, "window point lies in no represented coset", list(x.coords))
    return rep


def _verify_convergent(space, cert, window, prefix, rep):
    S = space.monoid
    start, step, limit = cert["start"], cert["step"], cert["limit"]
    off, per = int(cert["offset"]), int(cert["period"])
    if per < 1:
        return _fail(rep, "period must be positive", per)
    probe = [space.group.zero()] if space.variant == CONE else _probe(space, window)
    for n in range(off, prefix, per):
        c = start + n * step - limit
        for s in probe:
            rep.checks += 1
            if not (mon.member(S, c - s) or (space.variant == CONE_STAR and c.is_zero())):
                return _fail(rep, f"term {n} leaves the basic neighborhood of the limit", n)
    return rep


def _verify_major_fail(space, cert, window, rep):
    S = space.monoid
    g = cert["g"]
    phi = mon.PositivityFunctional(tuple(cert["weights"]))
    if len(phi.weights) != space.group.rank:
        raise MalformedCertificate("weights must match the free rank")
    if S.kind == mon.LEX:
        sample = _probe(space, window)
    else:
        sample = list(S.generators)
    for h in sample:
        rep.checks += 1
        if phi(h) < 0:
            return _fail(rep, "functional is negative on S", list(h.coords))
    rep.checks += 3
    if not mon.member(S, g):
        return _fail(rep, "g is not in S", list(g.coords))
    if phi(g) <= 0:
        return _fail(rep, "functional is not positive on g", list(g.coords))
    if mon.member(S, -g):
        return _fail(rep, "-g lies in S, so g is invertible", list(g.coords))
    return rep


def _verify_p_space_fail(space, cert, window, prefix, rep):
    S = space.monoid
    start, step = cert["start"], cert["step"]
    rep.checks += 2
    for c in (start, start + step):
        if not mon.member(S, c):
            return _fail(rep, "c_n must lie in S", list(c.coords))
    extras = [space.group.zero(), step] + list(S.generators if S.kind == mon.GENERATED else [])
    # each basic neighborhood {0} ∪ (s + S) of 0 must stick out of {0} ∪ ∩_n (c_n + S)
    for s in _probe(space, window):
        escaped = False
        for e in extras:
            z = s + e
            if z.is_zero() or not mon.member(S, z - s):
                continue
            for n in range(prefix + 1):
                rep.checks += 1
                if not mon.member(S, z - start - n * step):
                    escaped = True
                    break
            if escaped:
                break
        if not escaped:
            return _fail(rep, "a basic neighborhood of 0 fits inside the G_delta set", list(s.coords))
    return rep


def verify(space, cert, window=None, prefix=DEFAULT_PREFIX):
    """Check ``cert`` against the definitions on ``window`` up to index ``prefix``."""
    window = window or Window(DEFAULT_RADIUS)
    if not isinstance(cert, Certificate):
        raise MalformedCertificate("not a certificate")
    rep = VerificationReport(True, cert.kind, window.radius, prefix)
    need = {
        NON_T0: {"x"}, OPEN_CHAIN: {"start", "step"}, LOC_FINITE_FAMILY: {"start", "step"},
        TRANSVERSAL: {"reps"}, CONVERGENT_SUBSEQ: {"start", "step", "offset", "period", "limit"},
        MAJOR_FAIL: {"g", "weights"}, P_SPACE_FAIL: {"start", "step"},
    }[cert.kind]
    missing = need - set(cert.payload)
    if missing:
        raise MalformedCertificate(f"{cert.kind} payload lacks {sorted(missing)}")
    for k in need & _ELEMENT_FIELDS:
        if not isinstance(cert[k], GroupElement) or cert[k].group != space.group:
            raise MalformedCertificate(f"field {k} is not an element of {space.group}")
    if cert.kind == NON_T0:
        return _verify_non_t0(space, cert, window, rep)
    if cert.kind == OPEN_CHAIN:
        return _verify_open_chain(space, cert, window, prefix, rep)
    if cert.kind == LOC_FINITE_FAMILY:
        return _verify_loc_finite(space, cert, window, prefix, rep)
    if cert.kind == TRANSVERSAL:
        return _verify_transversal(space, cert, window, rep)
    if cert.kind == CONVERGENT_SUBSEQ:
        return _verify_convergent(space, cert, window, prefix, rep)
    if cert.kind == MAJOR_FAIL:
        return _verify_major_fail(space, cert, window, rep)
    if space.variant != CONE_STAR:
        raise ContractError("P-space refuters are checked in the cone* topology")
    return _verify_p_space_fail(space, cert, window, prefix, rep)
