from pathlib import Path

import pytest

from conetop.instance import parse_instance

CORPUS = Path(__file__).resolve().parents[1] / "src" / "conetop" / "corpus"

# lines printed by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES = []


def corpus_paths():
    return sorted(CORPUS.glob("*.inst"))


def load(name):
    return parse_instance(CORPUS / f"{name}.inst")


@pytest.fixture(scope="session")
def corpus():
    return [parse_instance(p) for p in corpus_paths()]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def corpus_certificates(instances):
    """(name, space, certificate) for every make_* output, deduplicated per space."""
    from conetop import witness as wit
    from conetop.cone import CONE, CONE_STAR, ConeSpace

    out, seen = [], set()
    for inst in instances:
        for variant in (CONE, CONE_STAR):
            space = ConeSpace(inst.monoid, variant)
            certs = [
                wit.make_non_t0(inst.monoid, variant),
                wit.make_nonpseudocompact_family(space),
                wit.make_2pc_failing_chain(space),
                wit.make_major_fail(inst.monoid),
                wit.make_transversal(space),
                wit.make_convergent_subsequence(space),
            ]
            if variant == CONE_STAR:
                certs.append(wit.make_p_space_refuter(space))
            for c in certs:
                if c is None:
                    continue
                key = (inst.name, variant, repr(sorted(c.to_dict().items())))
                if key not in seen:
                    seen.add(key)
                    out.append((inst.name, space, c))
    return out


def mutations(space, cert):
    """Single-field perturbations that break a valid certificate by construction."""
    from conetop import witness as wit

    G = space.group
    zero = G.zero()
    k = cert.kind
    if k == wit.NON_T0:
        yield "x -> 0", cert.replace(x=zero)
    elif k == wit.OPEN_CHAIN:
        from conetop.monoid import member

        # reversing a chain along a free direction of G/<S> gives another valid chain
        if member(space.monoid, cert["step"]):
            yield "step -> -step", cert.replace(step=-cert["step"])
        yield "step -> 0", cert.replace(step=zero)
    elif k == wit.LOC_FINITE_FAMILY:
        yield "step -> 0", cert.replace(step=zero)
    elif k == wit.TRANSVERSAL:
        reps = cert["reps"]
        yield "duplicate rep", cert.replace(reps=reps + reps[:1])
        if len(reps) > 1:
            yield "drop rep", cert.replace(reps=reps[1:])
    elif k == wit.MAJOR_FAIL:
        w = cert["weights"]
        yield "g -> -g", cert.replace(g=-cert["g"])
        yield "weights negated", cert.replace(weights=tuple(-v for v in w))
        yield "weights zeroed", cert.replace(weights=tuple(0 for _ in w))
    elif k == wit.P_SPACE_FAIL:
        yield "step -> 0", cert.replace(step=zero)
        yield "step -> -step", cert.replace(step=-cert["step"])
    elif k == wit.CONVERGENT_SUBSEQ:
        yield "period -> 0", cert.replace(period=0)
        from conetop.monoid import closure_subgroup

        for r in closure_subgroup(space.monoid).transversal():
            if not r.is_zero():
                yield "limit shifted off the coset", cert.replace(limit=cert["limit"] + r)
                break
