import json

import pytest

from conetop import oracle
from conetop.abelian import INFINITE, GroupSpec
from conetop.cone import CONE, CONE_STAR, ConeSpace
from conetop.monoid import MonoidSpec
from conetop.profile import (
    CITE,
    P,
    PropertyName,
    PropertyProfile,
    Verdict,
    check_implications,
    cross_variant_check,
    evaluate,
    evaluate_both,
)

from conftest import load

Z = GroupSpec(1)


def gen(group, *gens):
    return MonoidSpec.generated(group, [group.element(g) for g in gens])


NAT = gen(Z, (1,))
TWO = gen(Z, (2,), (-2,))


def test_nat_cone():
    p = evaluate(ConeSpace(NAT))
    assert p.holds(P.T0)
    assert p.holds(P.PSEUDOCOMPACT) and p.holds(P.COUNTABLY_PRACOMPACT)
    assert not p.holds(P.TWO_PSEUDOCOMPACT) and not p.holds(P.COMPACT)
    assert p[P.TWO_PSEUDOCOMPACT].basis == "Prop G_S2PCompact"
    assert p[P.TWO_PSEUDOCOMPACT].certificate.kind == "OPEN_CHAIN"
    assert P.P_SPACE not in p.verdicts


def test_even_subgroup_cone():
    p = evaluate(ConeSpace(TWO))
    assert p.holds(P.COMPACT)
    assert p[P.COMPACT].basis == "Prop G_SCompact"
    assert len(p[P.COMPACT].certificate["reps"]) == 2
    assert p.holds(P.TOPOLOGICALLY_PERIODIC)


def test_lex2_cone_star():
    p = evaluate(ConeSpace(MonoidSpec.lex(2), CONE_STAR))
    assert p.holds(P.T1)
    assert p.holds(P.PSEUDOCOMPACT)
    assert not p.holds(P.TWO_PSEUDOCOMPACT)
    assert not p.holds(P.P_SPACE)
    assert p.holds(P.COUNTABLY_PRACOMPACT)
    assert not p.holds(P.BAIRE_CONDITIONAL)


def test_implications_examples():
    assert check_implications(evaluate(ConeSpace(NAT))) == []
    assert check_implications(evaluate(ConeSpace(TWO))) == []
    p = evaluate(ConeSpace(TWO))
    p.verdicts[P.PSEUDOCOMPACT] = Verdict(False, "mutated")
    assert len(check_implications(p)) == 1


@pytest.mark.parametrize("a,b", [
    (P.COMPACT, P.OMEGA_BOUNDED),
    (P.SEQUENTIALLY_COMPACT, P.COUNTABLY_COMPACT),
    (P.COUNTABLY_COMPACT, P.TWO_PSEUDOCOMPACT),
    (P.HAUSDORFF, P.T1),
])
def test_each_chain_edge_detected(a, b):
    p = evaluate(ConeSpace(gen(GroupSpec(0, (4,)))))
    assert p.holds(a)
    p.verdicts[b] = Verdict(False, "mutated")
    assert any(b.value in v for v in check_implications(p))


def test_compact_needs_countably_compact_and_finally_compact():
    p = evaluate(ConeSpace(TWO))
    p.verdicts[P.FINALLY_COMPACT] = Verdict(False, "mutated")
    assert "COMPACT must equal COUNTABLY_COMPACT and FINALLY_COMPACT" in check_implications(p)


def test_cross_variant_examples():
    for S in (NAT, TWO):
        c, s = evaluate_both(S)
        assert cross_variant_check(c, s) == []
    c, s = evaluate_both(NAT)
    assert s.holds(P.PSEUDOCOMPACT) and c.holds(P.PSEUDOCOMPACT)
    assert not s.holds(P.TWO_PSEUDOCOMPACT) and not s.holds(P.P_SPACE)
    c, s = evaluate_both(TWO)
    assert s.holds(P.COMPACT) and s.holds(P.COUNTABLY_PRACOMPACT) and s.holds(P.TWO_PSEUDOCOMPACT)


def test_cross_variant_detects_breaches():
    c, s = evaluate_both(NAT)
    c.verdicts[P.PSEUDOCOMPACT] = Verdict(False, "mutated")
    assert "PSEUDOCOMPACT holds in G*_S but not in G_S" in cross_variant_check(c, s)
    c, s = evaluate_both(NAT)
    s.verdicts[P.P_SPACE] = Verdict(True, "mutated")
    assert any("P_SPACE" in v for v in cross_variant_check(c, s))
    with pytest.raises(ValueError):
        cross_variant_check(s, c)
    with pytest.raises(ValueError):
        cross_variant_check(evaluate(ConeSpace(NAT)), evaluate(ConeSpace(TWO, CONE_STAR)))


def test_corpus_is_consistent(corpus):
    assert len(corpus) >= 20
    for inst in corpus:
        c, s = evaluate_both(inst.monoid)
        assert check_implications(c) == [], inst.name
        assert check_implications(s) == [], inst.name
        assert cross_variant_check(c, s) == [], inst.name


def window_facts(inst):
    """Group test and index recomputed by enumeration, without SNF or LP."""
    S = inst.monoid
    G = S.group
    if S.kind == "lex":
        return False, 1
    sums = oracle.bounded_sums(G, S.generators, 6)
    group = all((-g).coords in sums for g in S.generators)
    gens = [g.coords for g in S.generators]
    a = oracle.finite_quotient_order(G, gens, 4)
    b = oracle.finite_quotient_order(G, gens, 6)
    index = a if a == b else INFINITE
    return group, index


def test_verdicts_match_enumerated_facts(corpus):
    for inst in corpus:
        grp, index = window_facts(inst)
        fin = index != INFINITE
        c, s = evaluate_both(inst.monoid)
        assert c.holds(P.COMPACT) == (grp and fin), inst.name
        assert c.holds(P.PSEUDOCOMPACT) == fin, inst.name
        assert c.holds(P.TWO_PSEUDOCOMPACT) == (grp and fin), inst.name
        assert s.holds(P.P_SPACE) == grp, inst.name
        assert s.holds(P.TWO_PSEUDOCOMPACT) == (grp and fin), inst.name


def test_every_verdict_cites():
    for S in (NAT, TWO, MonoidSpec.lex(3)):
        for p in evaluate_both(S):
            for v in p.verdicts.values():
                assert v.basis
    assert evaluate(ConeSpace(NAT, CONE_STAR))[P.P_SPACE].basis == CITE["psp*"] == "Prop G_S*PSp"


def test_baire_only_when_countably_pracompact():
    s = evaluate(ConeSpace(gen(GroupSpec(2), (1, 0)), CONE_STAR))
    assert not s.holds(P.COUNTABLY_PRACOMPACT)
    assert s.get(P.BAIRE_CONDITIONAL) is None
    s = evaluate(ConeSpace(TWO, CONE_STAR))
    assert s.holds(P.BAIRE_CONDITIONAL)
    assert s[P.BAIRE_CONDITIONAL].basis == "Cor G_S*BaireCP"


def test_annotations():
    c, s = evaluate_both(TWO)
    assert any("countably compact" in a for a in c.annotations)
    assert any("2-pseudocompact" in a for a in s.annotations)
    c, s = evaluate_both(gen(GroupSpec(2), (1, 0)))
    assert c.annotations == [] and s.annotations == []


def test_profile_json_round_trip(corpus):
    for inst in corpus:
        for p in evaluate_both(inst.monoid):
            data = json.loads(json.dumps(p.to_dict()))
            assert PropertyProfile.from_dict(inst.monoid, data) == p


def test_evaluate_is_deterministic():
    S = load("z2-unit-line").monoid
    assert evaluate(ConeSpace(S)) == evaluate(ConeSpace(S))
    assert evaluate(ConeSpace(S)).to_dict() == evaluate(ConeSpace(S)).to_dict()


def test_property_names():
    assert len(PropertyName) == 17
    assert PropertyName("T0") is P.T0


def test_cone_profile_variants_differ():
    assert evaluate(ConeSpace(NAT)).space.variant == CONE
    assert P.P_SPACE in evaluate(ConeSpace(NAT, CONE_STAR)).verdicts
