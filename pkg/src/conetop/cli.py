"""
Command line front end.

    conetop profile z-nat.inst
    conetop profile --all                  # whole corpus, in parallel
    conetop member z2-diag.inst --element "[3, 2]"
    conetop closure z-nat.inst --set '[["point", [5]]]'
    conetop limits z-nat.inst --affine "[0]" "[1]"
    conetop certify z-nat.inst --property two-pseudocompact --verify
    conetop certify --verify-file cert.json
    conetop window-check z2-diag.inst --window 4 --margin 4
    conetop fintop verify-lemmas --points 3

Exit codes: 0 success, 1 verification failure, 2 input error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from . import __version__
from . import cone as ct
from . import fintop
from . import monoid as mon
from . import oracle
from . import witness as wit
from .abelian import DimensionError
from .instance import InstanceError, from_raw, parse_instance
from .profile import PropertyName, check_implications, cross_variant_check, evaluate

SCHEMA = "conetop.report/1"

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# reports

def new_report(command, **parameters):
    return {
        "schema": SCHEMA,
        "tool": {"name": "conetop", "version": __version__},
        "command": command,
        "parameters": parameters,
        "results": [],
    }


def emit(report, fmt="json"):
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    return render_text(report)


def parse_report(text):
    """Inverse of ``emit(report, "json")``."""
    data = json.loads(text)
    if not isinstance(data, dict) or not str(data.get("schema", "")).startswith("conetop.report/"):
        raise ValueError("not a conetop report")
    return data


def _mark(b):
    return "yes" if b else "no"


def render_text(report):
    lines = [f"conetop {report['tool']['version']} {report['command']}"]
    params = ", ".join(f"{k}={v}" for k, v in sorted(report["parameters"].items()) if v is not None)
    if params:
        lines.append(f"parameters: {params}")
    for res in report["results"]:
        inst = res.get("instance")
        if inst:
            lines.append("")
            lines.append(f"[{inst['name']}] G = {inst['group']}, S = {inst['monoid']}")
        for variant, prof in res.get("profiles", {}).items():
            lines.append(f"  {variant}:")
            for name, v in prof["verdicts"].items():
                cert = f"  cert={v['certificate']['kind']}" if v["certificate"] else ""
                lines.append(f"    {name:<27}{_mark(v['holds']):<5}{v['basis']}{cert}")
            for a in prof["annotations"]:
                lines.append(f"    note: {a}")
        for key, val in res.items():
            if key in ("instance", "profiles"):
                continue
            if key == "violations":
                total = sum(len(v) for v in val.values())
                lines.append(f"  violations: {total}")
                for where, vs in val.items():
                    lines.extend(f"    {where}: {v}" for v in vs)
            elif key == "verification":
                for vr in val:
                    status = "pass" if vr["passed"] else f"FAIL ({vr['reason']})"
                    lines.append(f"  verify {vr.get('property', vr['kind'])} [{vr['kind']}]: {status}")
            else:
                lines.append(f"  {key}: {json.dumps(val)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# helpers

def corpus_dir():
    env = os.environ.get("CONETOP_CORPUS")
    if env:
        return Path(env)
    return Path(str(resources.files("conetop") / "corpus"))


def _instances(args):
    paths = [Path(p) for p in getattr(args, "instances", []) or []]
    if getattr(args, "all", None) is not None:
        d = Path(args.all) if args.all else corpus_dir()
        if not d.is_dir():
            raise InputError(f"corpus directory {d} does not exist")
        paths += sorted(d.glob("*.inst"))
    if not paths:
        raise InputError("no instance files given")
    return paths


def _spaces(choice):
    return {"cone": [ct.CONE], "cone-star": [ct.CONE_STAR], "both": [ct.CONE, ct.CONE_STAR]}[choice]


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: cannot parse {text!r} as JSON") from exc


def _element(inst, text, what="element"):
    coords = _json_arg(text, what)
    if not isinstance(coords, list) or not all(isinstance(c, int) for c in coords):
        raise InputError(f"{what} must be a list of integers")
    try:
        return inst.element(coords)
    except DimensionError as exc:
        raise InputError(f"{what}: {exc}") from exc


def _params(args, inst=None):
    opts = inst.options if inst else {}
    window = args.window or opts.get("window") or ct.DEFAULT_RADIUS
    prefix = args.prefix or opts.get("prefix") or ct.DEFAULT_PREFIX
    return window, prefix


def _default_probe(space, radius=2):
    return [s for s in ct.Window(radius).points(space.group) if mon.member(space.monoid, s)]


# ---------------------------------------------------------------------------
# commands

def profile_one(path, spaces, window, prefix, verify):
    """Profile a single instance file; returns (result, exit code)."""
    inst = parse_instance(path)
    w, p = window or inst.options.get("window", ct.DEFAULT_RADIUS), prefix or inst.options.get(
        "prefix", ct.DEFAULT_PREFIX)
    profs = {v: evaluate(ct.ConeSpace(inst.monoid, v)) for v in spaces}
    violations = {v: check_implications(pr) for v, pr in profs.items()}
    if len(profs) == 2:
        violations["cross"] = cross_variant_check(profs[ct.CONE], profs[ct.CONE_STAR])
    res = {
        "instance": inst.echo(),
        "profiles": {v: pr.to_dict() for v, pr in profs.items()},
        "violations": violations,
    }
    code = EXIT_INTERNAL if any(violations.values()) else EXIT_OK
    if verify:
        checked, reports = {}, []
        for v, pr in profs.items():
            for name, verdict in pr.verdicts.items():
                c = verdict.certificate
                if c is None:
                    continue
                key = (v, json.dumps(c.to_dict(), sort_keys=True))
                if key not in checked:
                    checked[key] = wit.verify(pr.space, c, ct.Window(w), p)
                rep = checked[key].to_dict()
                rep.update(space=v, property=name.value)
                reports.append(rep)
                if not rep["passed"] and code == EXIT_OK:
                    code = EXIT_VERIFY
        res["verification"] = reports
    return res, code


def _profile_job(job):
    try:
        return profile_one(*job)
    except InstanceError as exc:
        return {"error": str(exc), "source": str(job[0])}, EXIT_INPUT


def cmd_profile(args):
    paths = _instances(args)
    spaces = _spaces(args.space)
    report = new_report("profile", window=args.window, prefix=args.prefix, space=args.space)
    jobs = [(str(p), spaces, args.window, args.prefix, args.verify) for p in paths]
    workers = args.jobs or min(len(jobs), os.cpu_count() or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_profile_job, jobs))
    else:
        outcomes = [_profile_job(j) for j in jobs]
    code = EXIT_OK
    for res, c in outcomes:
        report["results"].append(res)
        code = max(code, c)
    return report, code


def cmd_member(args):
    inst = parse_instance(args.instance)
    x = _element(inst, args.element)
    S = inst.monoid
    report = new_report("member")
    report["results"].append({
        "instance": inst.echo(),
        "element": list(x.coords),
        "member": mon.member(S, x),
        "unit": mon.member(S, x) and mon.member(S, -x),
        "in_subgroup": mon.closure_subgroup(S).contains(x),
    })
    return report, EXIT_OK


def _described_set(inst, text):
    spec = _json_arg(text, "--set")
    if not isinstance(spec, list):
        raise InputError("--set must be a JSON list of [kind, coords] pairs")
    atoms = []
    for item in spec:
        if not (isinstance(item, list) and len(item) == 2 and item[0] in ct.ATOM_KINDS):
            raise InputError(f"bad atom {item!r}; kinds are {', '.join(ct.ATOM_KINDS)}")
        atoms.append(ct.Atom(item[0], _element(inst, json.dumps(item[1]), "atom anchor")))
    return ct.DescribedSet(tuple(atoms))


def _atoms_json(A):
    return [[a.kind, list(a.anchor.coords)] for a in A.atoms]


def cmd_closure(args):
    inst = parse_instance(args.instance)
    A = _described_set(inst, args.set)
    window, _ = _params(args, inst)
    report = new_report("closure", space=args.space, window=window)
    for v in _spaces(args.space):
        space = ct.ConeSpace(inst.monoid, v)
        res = {"instance": inst.echo(), "space": v, "set": _atoms_json(A)}
        if v == ct.CONE:
            C = ct.closure(space, A)
            res["closure"] = _atoms_json(C)
            res["closure_text"] = str(C)
        else:
            probe = _default_probe(space)
            pts = sorted(ct.trace_closure(space, A, window, probe))
            res["window_closure"] = [list(p) for p in pts]
            res["probe"] = [list(s.coords) for s in probe]
            res["note"] = "no symbolic closure in G*_S; brute-force closure of A within the window"
        report["results"].append(res)
    return report, EXIT_OK


def _sequence(inst, args):
    if args.affine:
        return ct.Affine(_element(inst, args.affine[0], "start"), _element(inst, args.affine[1], "step"))
    if args.interleave:
        parts = _json_arg(args.interleave, "--interleave")
        try:
            return ct.Interleave(tuple(ct.Affine(inst.element(a), inst.element(b)) for a, b in parts))
        except (TypeError, ValueError, DimensionError) as exc:
            raise InputError("--interleave must be a list of [start, step] pairs") from exc
    if args.explicit:
        terms = _json_arg(args.explicit, "--explicit")
        try:
            return ct.Explicit(tuple(inst.element(t) for t in terms))
        except (TypeError, ValueError, DimensionError) as exc:
            raise InputError("--explicit must be a list of coordinate lists") from exc
    raise InputError("give one of --affine, --interleave, --explicit")


def cmd_limits(args):
    inst = parse_instance(args.instance)
    seq = _sequence(inst, args)
    window, prefix = _params(args, inst)
    report = new_report("limits", space=args.space, window=window, prefix=prefix)
    for v in _spaces(args.space):
        space = ct.ConeSpace(inst.monoid, v)
        probe = []
        if v == ct.CONE_STAR:
            probe = ([_element(inst, json.dumps(s), "probe") for s in _json_arg(args.probe, "--probe")]
                     if args.probe else _default_probe(space))
        rep = ct.limits(space, seq, probe, prefix, ct.Window(window))
        lim = rep.limits if isinstance(rep.limits, str) else [list(a.anchor.coords) for a in rep.limits.atoms]
        report["results"].append({
            "instance": inst.echo(),
            "space": v,
            "sequence": str(seq),
            "limits": lim,
            "window_restricted": rep.window_restricted,
            "checked_prefix": rep.checked_prefix,
            "probe": [list(s.coords) for s in rep.probe],
            "escapes": [[list(p), n] for p, n in sorted(rep.escapes.items())],
        })
    return report, EXIT_OK


def _property(name):
    key = name.upper().replace("-", "_")
    if key == "MAJORIZATION":
        return key
    try:
        return PropertyName(key)
    except ValueError as exc:
        choices = ", ".join(p.value.lower().replace("_", "-") for p in PropertyName)
        raise InputError(f"unknown property {name!r}; choose from majorization, {choices}") from exc


def cmd_certify(args):
    if args.verify_file:
        return _verify_file(args)
    if not args.instance or not args.property:
        raise InputError("certify needs an instance and --property (or --verify-file)")
    inst = parse_instance(args.instance)
    prop = _property(args.property)
    window, prefix = _params(args, inst)
    report = new_report("certify", space=args.space, window=window, prefix=prefix)
    code = EXIT_OK
    for v in _spaces(args.space):
        space = ct.ConeSpace(inst.monoid, v)
        if prop == "MAJORIZATION":
            verdict = mon.majorization(inst.monoid)
            holds, basis, cert = verdict.holds, "Lemma MajorOfCount", wit.make_major_fail(inst.monoid)
        else:
            vd = evaluate(space).get(prop)
            if vd is None:
                raise InputError(f"{prop.value} is not evaluated for the {v} topology")
            holds, basis, cert = vd.holds, vd.basis, vd.certificate
        res = {"instance": inst.echo(), "space": v, "property": args.property.lower(),
               "holds": holds, "basis": basis, "certificate": cert.to_dict() if cert else None}
        if args.verify and cert is not None:
            vr = wit.verify(space, cert, ct.Window(window), prefix).to_dict()
            vr["property"] = res["property"]
            res["verification"] = [vr]
            if not vr["passed"]:
                code = EXIT_VERIFY
        report["results"].append(res)
    return report, code


def _verify_file(args):
    try:
        data = parse_report(Path(args.verify_file).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.verify_file}: {exc.strerror}") from exc
    except ValueError as exc:
        raise InputError(f"{args.verify_file}: {exc}") from exc
    window = args.window or data["parameters"].get("window") or ct.DEFAULT_RADIUS
    prefix = args.prefix or data["parameters"].get("prefix") or ct.DEFAULT_PREFIX
    report = new_report("certify", verify_file=str(args.verify_file), window=window, prefix=prefix)
    code = EXIT_OK
    for res in data["results"]:
        if not res.get("certificate"):
            continue
        inst = from_raw(res["instance"], res["instance"].get("name", ""))
        space = ct.ConeSpace(inst.monoid, res["space"])
        try:
            cert = wit.Certificate.from_dict(inst.group, res["certificate"])
            vr = wit.verify(space, cert, ct.Window(window), prefix).to_dict()
        except (wit.MalformedCertificate, DimensionError, ct.ContractError) as exc:
            raise InputError(f"malformed certificate: {exc}") from exc
        vr["property"] = res.get("property", "")
        out = {k: res[k] for k in ("instance", "space", "property", "certificate") if k in res}
        out["verification"] = [vr]
        report["results"].append(out)
        if not vr["passed"]:
            code = EXIT_VERIFY
    return report, code


def cmd_window_check(args):
    inst = parse_instance(args.instance)
    S = inst.monoid
    window, _ = _params(args, inst)
    margin = args.margin or window
    rng = random.Random(args.seed)
    report = new_report("window-check", window=window, margin=margin, sets=args.sets, seed=args.seed)
    res = {"instance": inst.echo()}
    code = EXIT_OK
    pts = ct.Window(window).points(inst.group)
    if S.kind == mon.GENERATED:
        brute = oracle.bounded_sums(inst.group, S.generators, args.bound or 4 * window)
        bad = [list(p.coords) for p in pts if mon.member(S, p) != (p.coords in brute)]
        res["membership_mismatches"] = bad
        code = EXIT_VERIFY if bad else code
    U = mon.units(S)
    bad_units = [list(p.coords) for p in pts if (mon.member(S, p) and mon.member(S, -p)) != U.contains(p)]
    res["unit_mismatches"] = bad_units
    space = ct.ConeSpace(S, ct.CONE)
    sets = [ct.random_described_set(inst.group, rng, window) for _ in range(args.sets)]
    oc = ct.closure_oracle(space, sets, window, margin)
    res["closure"] = {"mismatches": oc.mismatches, "safe_points": oc.safe, "unsafe_points": oc.unsafe}
    if bad_units or oc.mismatches:
        code = EXIT_VERIFY
    report["results"].append(res)
    return report, code


def cmd_fintop(args):
    n = args.points
    report = new_report(f"fintop {args.action}", points=n)
    if args.action == "enumerate":
        try:
            tops = fintop.enumerate_topologies(n)
        except fintop.CapError as exc:
            raise InputError(str(exc)) from exc
        res = {"points": n, "count": len(tops)}
        if args.list:
            res["topologies"] = [[fintop.members(u) for u in t.opens] for t in tops]
        report["results"].append(res)
        return report, EXIT_OK
    if n > fintop.MAX_ENUM_POINTS:
        raise InputError(f"verify-lemmas is capped at {fintop.MAX_ENUM_POINTS} points")
    rep = fintop.verify_lemmas(n)
    d = rep.to_dict()
    d["summary"] = f"pairs checked: {rep.pairs}, cowide pairs: {rep.cowide_pairs}, " \
                   f"counterexamples: {len(rep.counterexamples)}"
    report["results"].append(d)
    return report, EXIT_OK if rep.ok else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# argument parsing

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--window", type=int, help="window radius R")
    common.add_argument("--prefix", type=int, help="sequence prefix length N")

    p = argparse.ArgumentParser(prog="conetop", description="cone and cone* topology toolkit")
    p.add_argument("--version", action="version", version=f"conetop {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("profile", parents=[common], help="evaluate property profiles")
    q.add_argument("instances", nargs="*")
    q.add_argument("--all", nargs="?", const="", metavar="DIR",
                   help="profile every *.inst in DIR (default: $CONETOP_CORPUS or the bundled corpus)")
    q.add_argument("--space", choices=("cone", "cone-star", "both"), default="both")
    q.add_argument("--verify", action="store_true", help="re-verify every attached certificate")
    q.add_argument("--jobs", type=int, default=0)
    q.set_defaults(func=cmd_profile)

    q = sub.add_parser("member", parents=[common], help="decide membership in S")
    q.add_argument("instance")
    q.add_argument("--element", required=True, help="JSON coordinate list")
    q.set_defaults(func=cmd_member)

    q = sub.add_parser("closure", parents=[common], help="closure of a described set")
    q.add_argument("instance")
    q.add_argument("--set", required=True, help='JSON list like [["point", [5]], ["up", [0]]]')
    q.add_argument("--space", choices=("cone", "cone-star", "both"), default="cone")
    q.set_defaults(func=cmd_closure)

    q = sub.add_parser("limits", parents=[common], help="limit points of a sequence")
    q.add_argument("instance")
    q.add_argument("--affine", nargs=2, metavar=("START", "STEP"))
    q.add_argument("--interleave", help="JSON list of [start, step] pairs")
    q.add_argument("--explicit", help="JSON list of terms")
    q.add_argument("--probe", help="JSON list of elements of S (cone* only)")
    q.add_argument("--space", choices=("cone", "cone-star", "both"), default="cone")
    q.set_defaults(func=cmd_limits)

    q = sub.add_parser("certify", parents=[common], help="emit and check certificates")
    q.add_argument("instance", nargs="?")
    q.add_argument("--property")
    q.add_argument("--space", choices=("cone", "cone-star", "both"), default="cone")
    q.add_argument("--verify", action="store_true")
    q.add_argument("--verify-file", metavar="PATH", help="re-verify certificates in a saved report")
    q.set_defaults(func=cmd_certify)

    q = sub.add_parser("window-check", parents=[common], help="compare exact answers with brute force")
    q.add_argument("instance")
    q.add_argument("--margin", type=int)
    q.add_argument("--sets", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--bound", type=int, help="coefficient bound for the membership brute force")
    q.set_defaults(func=cmd_window_check)

    q = sub.add_parser("fintop", parents=[common], help="finite topologies")
    q.add_argument("action", choices=("enumerate", "verify-lemmas"))
    q.add_argument("--points", type=int, required=True)
    q.add_argument("--list", action="store_true", help="list the topologies (enumerate)")
    q.set_defaults(func=cmd_fintop)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("window", "prefix"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            parser.error(f"--{name} must be positive")
    try:
        report, code = args.func(args)
    except (InstanceError, InputError) as exc:
        print(f"conetop: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ct.ContractError as exc:
        print(f"conetop: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(emit(report, args.format))
    if code == EXIT_INTERNAL:
        print("conetop: internal invariant breach; see violations/counterexamples above", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
