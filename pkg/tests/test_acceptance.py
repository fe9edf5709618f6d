"""Acceptance criteria 1-7, one pass/fail line each."""

import random
import time

from conetop import fintop, oracle
from conetop import witness as wit
from conetop.abelian import GroupSpec, box
from conetop.cone import CONE, CONE_STAR, ConeSpace, Window, closure_oracle, random_described_set
from conetop.monoid import MonoidSpec, member, units
from conetop.profile import P, check_implications, cross_variant_check, evaluate, evaluate_both

from conftest import ACCEPTANCE_LINES, corpus_certificates, mutations


def record(n, title, ok, detail):
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_characterization_coherence(corpus):
    required = {
        (GroupSpec(1), ((1,),)),
        (GroupSpec(1), ((2,), (-2,))),
        (GroupSpec(2), ((1, 0), (1, 1))),
        (GroupSpec(2), ((1, 0),)),
        (GroupSpec(1, (2,)), ((0, 1),)),
    }
    have = {(i.group, tuple(g.coords for g in i.monoid.generators)) for i in corpus}
    lex = {i.monoid.lex_rank for i in corpus if i.monoid.kind == "lex"}
    t0 = time.perf_counter()
    violations = 0
    for inst in corpus:
        c, s = evaluate_both(inst.monoid)
        violations += len(check_implications(c)) + len(check_implications(s)) + len(cross_variant_check(c, s))
    dt = time.perf_counter() - t0
    ok = len(corpus) >= 20 and required <= have and {1, 2, 3} <= lex and violations == 0 and dt < 5
    record(1, "characterization coherence", ok,
           f"{len(corpus)} instances, {violations} violations, {dt:.2f}s (< 5s)")


def test_criterion_2_certificate_round_trip(corpus):
    t0 = time.perf_counter()
    certs = corpus_certificates(corpus)
    failed = [(n, s.variant, c.kind) for n, s, c in certs
              if not wit.verify(s, c, Window(8), 16).passed]
    muts, survivors = 0, []
    for name, space, cert in certs:
        for label, bad in mutations(space, cert):
            muts += 1
            if wit.verify(space, bad, Window(8), 16).passed:
                survivors.append((name, space.variant, cert.kind, label))
    dt = time.perf_counter() - t0
    ok = not failed and not survivors and muts >= 30 and dt < 10
    record(2, "certificate round-trip", ok,
           f"{len(certs)} certificates verified at R=8 prefix=16 ({len(failed)} failed), "
           f"{muts - len(survivors)}/{muts} mutations rejected, {dt:.2f}s (< 10s)")


def _closure_window(rank):
    return {0: (8, 8), 1: (8, 8), 2: (4, 4)}.get(rank, (2, 2))


def test_criterion_3_closure_oracle(corpus):
    rng = random.Random(2024)
    mismatches, safe, unsafe = 0, 0, 0
    for inst in corpus:
        R, m = _closure_window(inst.group.rank)
        sets = [random_described_set(inst.group, rng, R) for _ in range(10)]
        res = closure_oracle(ConeSpace(inst.monoid, CONE), sets, R, m)
        mismatches += len(res.mismatches)
        safe += res.safe
        unsafe += res.unsafe
    ok = mismatches == 0 and safe > 0
    record(3, "closure oracle equivalence", ok,
           f"{len(corpus)} instances x 10 sets, {safe} interior-safe points compared, "
           f"{unsafe} boundary points skipped, {mismatches} mismatches")


def test_criterion_4_membership_and_units(corpus):
    R = 6
    points = mm = um = 0
    for inst in corpus:
        S = inst.monoid
        pts = list(box(inst.group, R))
        if S.kind == "generated":
            brute = oracle.bounded_sums(inst.group, S.generators, 4 * R)
            for p in pts:
                points += 1
                mm += member(S, p) != (p.coords in brute)
        U = units(S)
        for p in pts:
            um += U.contains(p) != (member(S, p) and member(S, -p))
    ok = mm == 0 and um == 0
    record(4, "membership and units oracle", ok,
           f"{points} window points at R={R} vs coefficient brute force (bound {4 * R}), "
           f"{mm} membership mismatches, {um} unit mismatches")


def test_criterion_5_finite_topologies():
    counts = [len(fintop.enumerate_topologies(n)) for n in range(1, 5)]
    cross = all(len(fintop.enumerate_topologies(n)) == len(oracle.all_topologies(n)) for n in range(4))
    t0 = time.perf_counter()
    rep3 = fintop.verify_lemmas(3)
    dt3 = time.perf_counter() - t0
    t0 = time.perf_counter()
    rep4 = fintop.verify_lemmas(4)
    dt4 = time.perf_counter() - t0
    ok = (counts == [1, 4, 29, 355] and cross and rep3.ok and rep4.ok
          and dt3 < 30 and dt4 < 20 * 60 and rep3.cowide_pairs > 0)
    record(5, "finite topology lemmas", ok,
           f"counts {counts}, filter oracle agrees for n<=3: {cross}; "
           f"n=3 {rep3.cowide_pairs} cowide pairs, {len(rep3.counterexamples)} counterexamples, {dt3:.2f}s; "
           f"n=4 {rep4.cowide_pairs} cowide pairs, {len(rep4.counterexamples)} counterexamples, {dt4:.2f}s")


def test_criterion_6_lex_negative_clauses():
    S = MonoidSpec.lex(2)
    star = evaluate(ConeSpace(S, CONE_STAR))
    cone = evaluate(ConeSpace(S, CONE))
    chain = star[P.TWO_PSEUDOCOMPACT].certificate
    chain_ok = chain is not None and chain.kind == wit.OPEN_CHAIN and \
        wit.verify(star.space, chain, Window(8), 16).passed
    checks = {
        "star T1": star.holds(P.T1) and star[P.T1].basis == "Prop G_S*T",
        "star not 2-pseudocompact": not star.holds(P.TWO_PSEUDOCOMPACT)
        and star[P.TWO_PSEUDOCOMPACT].basis == "Prop G_S*2PCompact",
        "verified failing chain": chain_ok,
        "star countably pracompact": star.holds(P.COUNTABLY_PRACOMPACT)
        and star[P.COUNTABLY_PRACOMPACT].basis == "Prop G_S*CPCompact",
        "star not precompact": not star.holds(P.PRECOMPACT) and star[P.PRECOMPACT].basis == "Prop G_S*Compact",
        "cone T0": cone.holds(P.T0) and cone[P.T0].basis == "Prop G_ST0",
        "cone not sequentially compact": not cone.holds(P.SEQUENTIALLY_COMPACT)
        and cone[P.SEQUENTIALLY_COMPACT].basis == "Prop G_S2PCompact",
    }
    bad = [k for k, v in checks.items() if not v]
    record(6, "LEX(2) negative clauses", not bad,
           f"{len(checks) - len(bad)}/{len(checks)} verdicts and citations match" + (f", failing: {bad}" if bad else ""))


def test_criterion_7_sierpinski_regularization():
    sierp = fintop.FinTopology(2, (0, 0b01, 0b11))
    reg_ok = fintop.regularization(sierp) == fintop.antidiscrete(2)
    total = bad = 0
    for n in range(5):
        for t in fintop.enumerate_topologies(n):
            total += 1
            r = fintop.regularization(t)
            bad += fintop.regularization(r) != r
    record(7, "Sierpinski regularization", reg_ok and bad == 0,
           f"regularization is antidiscrete: {reg_ok}; idempotent on {total - bad}/{total} topologies (n<=4)")
