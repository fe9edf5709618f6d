"""
Property profiles of G_S and G*_S.

Every verdict is computed from an algebraic criterion (group test, index of
<S>, majorization) and carries the name of the result it relies on plus,
where one exists, a checkable witness from :mod:`conetop.witness`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import monoid as mon
from . import witness as wit
from .abelian import INFINITE, quotient_is_periodic
from .cone import CONE, CONE_STAR, ConeSpace, separation


class PropertyName(str, enum.Enum):
    T0 = "T0"
    T1 = "T1"
    HAUSDORFF = "HAUSDORFF"
    COMPACT = "COMPACT"
    OMEGA_BOUNDED = "OMEGA_BOUNDED"
    TOTALLY_COUNTABLY_COMPACT = "TOTALLY_COUNTABLY_COMPACT"
    SEQUENTIALLY_COMPACT = "SEQUENTIALLY_COMPACT"
    COUNTABLY_COMPACT = "COUNTABLY_COMPACT"
    TWO_PSEUDOCOMPACT = "TWO_PSEUDOCOMPACT"
    COUNTABLY_PRACOMPACT = "COUNTABLY_PRACOMPACT"
    PSEUDOCOMPACT = "PSEUDOCOMPACT"
    PRECOMPACT = "PRECOMPACT"
    FINALLY_COMPACT = "FINALLY_COMPACT"
    LEFT_OMEGA_PRECOMPACT = "LEFT_OMEGA_PRECOMPACT"
    P_SPACE = "P_SPACE"
    TOPOLOGICALLY_PERIODIC = "TOPOLOGICALLY_PERIODIC"
    BAIRE_CONDITIONAL = "BAIRE_CONDITIONAL"


P = PropertyName

# citation tags; unlabeled statements get a descriptive tag
CITE = {
    "T0": "Prop G_ST0",
    "T1": "Prop G_S-T1",
    "T*": "Prop G_S*T",
    "H*": "Prop G*_S-Hausdorff",
    "compact": "Prop G_SCompact",
    "2pc": "Prop G_S2PCompact",
    "pc": "Prop G_SPCompact",
    "fc": "Prop G_SFCompact",
    "periodic": "Prop G_S-TopPeriodic",
    "periodic*": "Prop G*_S-TopPeriodic",
    "compact*": "Prop G_S*Compact",
    "cpc*": "Prop G_S*CPCompact",
    "2pc*": "Prop G_S*2PCompact",
    "pc*": "Prop G_S*PCompact",
    "psp*": "Prop G_S*PSp",
    "baire*": "Cor G_S*BaireCP",
    "lwp": "Def left omega-precompact (countable carrier)",
    "lindelof": "countable carrier is finally compact",
    "major": "Lemma MajorOfCount",
}

# criteria sharing one characterization
_COMPACT_FAMILY_CONE = (P.COMPACT, P.OMEGA_BOUNDED, P.TOTALLY_COUNTABLY_COMPACT, P.PRECOMPACT)
_2PC_FAMILY_CONE = (P.SEQUENTIALLY_COMPACT, P.COUNTABLY_COMPACT, P.TWO_PSEUDOCOMPACT)
_COMPACT_FAMILY_STAR = (P.COMPACT, P.OMEGA_BOUNDED, P.TOTALLY_COUNTABLY_COMPACT,
                        P.SEQUENTIALLY_COMPACT, P.COUNTABLY_COMPACT, P.PRECOMPACT)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    basis: str
    certificate: wit.Certificate | None = None
    note: str = ""

    def to_dict(self):
        return {
            "holds": self.holds,
            "basis": self.basis,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, group, data):
        cert = data.get("certificate")
        return cls(bool(data["holds"]), data["basis"],
                   wit.Certificate.from_dict(group, cert) if cert else None, data.get("note", ""))


@dataclass
class PropertyProfile:
    space: ConeSpace
    verdicts: dict = field(default_factory=dict)
    annotations: list = field(default_factory=list)

    def __getitem__(self, name):
        return self.verdicts[PropertyName(name)]

    def holds(self, name):
        return self[name].holds

    def get(self, name):
        return self.verdicts.get(PropertyName(name))

    def to_dict(self):
        return {
            "variant": self.space.variant,
            "verdicts": {p.value: v.to_dict() for p, v in self.verdicts.items()},
            "annotations": list(self.annotations),
        }

    @classmethod
    def from_dict(cls, monoid, data):
        space = ConeSpace(monoid, data["variant"])
        verdicts = {PropertyName(k): Verdict.from_dict(monoid.group, v) for k, v in data["verdicts"].items()}
        return cls(space, verdicts, list(data.get("annotations", [])))

    def __eq__(self, other):
        return isinstance(other, PropertyProfile) and self.to_dict() == other.to_dict() \
            and self.space == other.space


def _facts(S):
    H = mon.closure_subgroup(S)
    return {
        "group": mon.is_group(S),
        "finite_index": H.index != INFINITE,
        "major": mon.majorization(S),
        "periodic": quotient_is_periodic(H),
    }


def evaluate(space):
    """Profile of ``space`` from the algebraic characterizations."""
    S = space.monoid
    f = _facts(space.monoid)
    grp, fin, maj = f["group"], f["finite_index"], f["major"].holds
    prof = PropertyProfile(space)
    v = prof.verdicts

    sep = separation(space)
    non_t0 = wit.make_non_t0(S, space.variant)
    transversal = wit.make_transversal(space)
    loc_family = wit.make_nonpseudocompact_family(space)
    chain = wit.make_2pc_failing_chain(space)
    conv = wit.make_convergent_subsequence(space)
    maj_note = "" if maj else mon.MAJORIZATION_REDUCTION if S.kind == mon.GENERATED else f["major"].explanation

    # a failure of compactness is witnessed by whichever obstruction applies
    not_compact = chain or loc_family

    if space.variant == CONE:
        v[P.T0] = Verdict(sep.t0, CITE["T0"], non_t0)
        v[P.T1] = Verdict(sep.t1, CITE["T1"], non_t0)
        v[P.HAUSDORFF] = Verdict(sep.hausdorff, CITE["T1"], non_t0)
        for p in _COMPACT_FAMILY_CONE:
            ok = grp and fin
            v[p] = Verdict(ok, CITE["compact"], transversal if ok else not_compact)
        for p in _2PC_FAMILY_CONE:
            ok = fin and maj
            cert = (conv if p == P.SEQUENTIALLY_COMPACT else transversal) if ok else chain
            v[p] = Verdict(ok, CITE["2pc"], cert, "" if ok else maj_note)
        for p in (P.COUNTABLY_PRACOMPACT, P.PSEUDOCOMPACT):
            v[p] = Verdict(fin, CITE["pc"], transversal if fin else loc_family)
        v[P.LEFT_OMEGA_PRECOMPACT] = Verdict(True, CITE["lwp"])
        v[P.FINALLY_COMPACT] = Verdict(True, CITE["fc"])
        v[P.TOPOLOGICALLY_PERIODIC] = Verdict(grp and f["periodic"], CITE["periodic"])
        if fin and maj:
            prof.annotations.append(f"every power of G_S is countably compact [{CITE['2pc']}]")
        if fin:
            prof.annotations.append(f"every power of G_S is countably pracompact [{CITE['pc']}]")
        return prof

    v[P.T0] = Verdict(sep.t0, CITE["T*"], non_t0)
    v[P.T1] = Verdict(sep.t1, CITE["T*"], non_t0)
    v[P.HAUSDORFF] = Verdict(sep.hausdorff, CITE["H*"], non_t0)
    for p in _COMPACT_FAMILY_STAR:
        ok = grp and fin
        cert = (conv if p == P.SEQUENTIALLY_COMPACT else transversal) if ok else not_compact
        v[p] = Verdict(ok, CITE["compact*"], cert)
    cofinal = mon.countable_cofinal_exists(S)
    cpc = fin and cofinal
    v[P.COUNTABLY_PRACOMPACT] = Verdict(cpc, CITE["cpc*"], transversal if cpc else loc_family,
                                        mon.COFINAL_JUSTIFICATION if cofinal else "")
    ok2 = fin and maj
    v[P.TWO_PSEUDOCOMPACT] = Verdict(ok2, CITE["2pc*"], transversal if ok2 else chain,
                                     "" if ok2 else maj_note)
    v[P.PSEUDOCOMPACT] = Verdict(fin, CITE["pc*"], transversal if fin else loc_family)
    v[P.P_SPACE] = Verdict(maj, CITE["psp*"], None if maj else wit.make_p_space_refuter(space),
                           "" if maj else maj_note)
    v[P.LEFT_OMEGA_PRECOMPACT] = Verdict(True, CITE["lwp"])
    v[P.FINALLY_COMPACT] = Verdict(True, CITE["lindelof"])
    v[P.TOPOLOGICALLY_PERIODIC] = Verdict(grp and f["periodic"], CITE["periodic*"])
    if cpc:
        v[P.BAIRE_CONDITIONAL] = Verdict(grp, CITE["baire*"], None,
                                         "Baire iff S is a group, given countable pracompactness")
        prof.annotations.append(f"every power of G*_S is countably pracompact [{CITE['cpc*']}]")
    if ok2:
        prof.annotations.append(
            f"finite powers of G*_S and all powers of <S> are 2-pseudocompact [{CITE['2pc*']}]")
    return prof


# ---------------------------------------------------------------------------
# consistency checks

_CHAIN = [
    (P.COMPACT, P.OMEGA_BOUNDED),
    (P.OMEGA_BOUNDED, P.TOTALLY_COUNTABLY_COMPACT),
    (P.TOTALLY_COUNTABLY_COMPACT, P.COUNTABLY_COMPACT),
    (P.COUNTABLY_COMPACT, P.COUNTABLY_PRACOMPACT),
    (P.COUNTABLY_PRACOMPACT, P.PSEUDOCOMPACT),
    (P.SEQUENTIALLY_COMPACT, P.COUNTABLY_COMPACT),
    (P.COUNTABLY_COMPACT, P.TWO_PSEUDOCOMPACT),
    (P.T1, P.T0),
    (P.HAUSDORFF, P.T1),
    (P.COMPACT, P.PRECOMPACT),
]


def _val(profile, name):
    v = profile.get(name)
    return None if v is None else v.holds


def check_implications(profile):
    """Violations of the standard implications between the recorded verdicts."""
    out = []
    for a, b in _CHAIN:
        va, vb = _val(profile, a), _val(profile, b)
        if va is True and vb is False:
            out.append(f"{a.value} holds but {b.value} fails")
    c, cc, fc = (_val(profile, p) for p in (P.COMPACT, P.COUNTABLY_COMPACT, P.FINALLY_COMPACT))
    if None not in (c, cc, fc) and c != (cc and fc):
        out.append("COMPACT must equal COUNTABLY_COMPACT and FINALLY_COMPACT")
    return out


_TRANSFER = (P.COMPACT, P.COUNTABLY_COMPACT, P.SEQUENTIALLY_COMPACT, P.TWO_PSEUDOCOMPACT,
             P.PSEUDOCOMPACT, P.COUNTABLY_PRACOMPACT, P.PRECOMPACT)


def cross_variant_check(p_cone, p_star):
    """Violations of the relations between the profiles of G_S and G*_S."""
    if p_cone.space.monoid != p_star.space.monoid:
        raise ValueError("profiles describe different instances")
    if (p_cone.space.variant, p_star.space.variant) != (CONE, CONE_STAR):
        raise ValueError("expected a cone profile and a cone* profile")
    out = []
    for p in _TRANSFER:
        if p_star.holds(p) and not p_cone.holds(p):
            out.append(f"{p.value} holds in G*_S but not in G_S")
    s = {p: p_star.holds(p) for p in (P.COMPACT, P.TWO_PSEUDOCOMPACT, P.COUNTABLY_PRACOMPACT,
                                      P.PSEUDOCOMPACT, P.P_SPACE)}
    S = p_star.space.monoid
    group_fin = mon.is_group(S) and mon.closure_subgroup(S).index != INFINITE
    if s[P.TWO_PSEUDOCOMPACT] != group_fin:
        out.append("countable G*_S: TWO_PSEUDOCOMPACT must equal 'S is a subgroup of finite index'")
    if s[P.COMPACT] != (s[P.COUNTABLY_PRACOMPACT] and s[P.TWO_PSEUDOCOMPACT]):
        out.append("G*_S: COMPACT must equal COUNTABLY_PRACOMPACT and TWO_PSEUDOCOMPACT")
    if s[P.TWO_PSEUDOCOMPACT] != (s[P.PSEUDOCOMPACT] and s[P.P_SPACE]):
        out.append("G*_S: TWO_PSEUDOCOMPACT must equal PSEUDOCOMPACT and P_SPACE")
    if s[P.COMPACT] != (s[P.COUNTABLY_PRACOMPACT] and s[P.P_SPACE]):
        out.append("G*_S: COMPACT must equal COUNTABLY_PRACOMPACT and P_SPACE")
    return out


def evaluate_both(S):
    return evaluate(ConeSpace(S, CONE)), evaluate(ConeSpace(S, CONE_STAR))
