"""
Instance files: a line-oriented ``section.key = value`` format.

    # the nonnegative integers inside Z
    meta.name = z-nat
    group.rank = 1
    group.torsion = []
    monoid.kind = generated
    monoid.generators = [[1]]
    options.window = 8

Values are JSON literals (integers and integer lists); ``monoid.kind`` and
``meta.*`` take bare words.  Torsion orders need not form a divisibility
chain; generator coordinates refer to the orders exactly as written.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .abelian import DimensionError, presentation
from .monoid import GENERATED, LEX, MonoidSpec

KEYS = {
    "group.rank", "group.torsion",
    "monoid.kind", "monoid.generators", "monoid.lex_rank",
    "options.window", "options.prefix",
    "meta.name", "meta.description",
}
_TEXT_KEYS = {"monoid.kind", "meta.name", "meta.description"}


class InstanceError(ValueError):
    """Malformed instance; ``diagnostics`` holds ``(line, message)`` pairs."""

    def __init__(self, source, diagnostics):
        self.source = source
        self.diagnostics = diagnostics
        super().__init__("\n".join(f"{source}:{ln}: {msg}" for ln, msg in diagnostics))


@dataclass
class Instance:
    name: str
    monoid: MonoidSpec
    options: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)
    source: str = ""

    @property
    def group(self):
        return self.monoid.group

    def element(self, coords):
        """Group element from coordinates written against the file's torsion orders."""
        _, embed = presentation(self.raw["rank"], self.raw["torsion"])
        return embed(coords)

    def echo(self):
        return {"name": self.name, "source": self.source, **self.raw,
                "group": str(self.group), "monoid": str(self.monoid)}


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _int_list(v):
    return isinstance(v, list) and all(_is_int(x) for x in v)


def parse_text(text, source="<string>"):
    values, lines, diags = {}, {}, []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = (s.strip() for s in line.partition("="))
        if not eq:
            diags.append((ln, f"expected 'section.key = value', got {line!r}"))
            continue
        if key not in KEYS:
            diags.append((ln, f"unknown key {key!r}"))
            continue
        if key in values:
            diags.append((ln, f"duplicate key {key!r} (first on line {lines[key]})"))
            continue
        if key in _TEXT_KEYS:
            values[key] = val
        else:
            try:
                values[key] = json.loads(val)
            except json.JSONDecodeError:
                diags.append((ln, f"{key}: cannot parse value {val!r}"))
                continue
        lines[key] = ln
    if diags:
        raise InstanceError(source, diags)

    def need(key):
        if key not in values:
            diags.append((0, f"missing key {key!r}"))
            return None
        return values[key]

    def at(key):
        return lines.get(key, 0)

    kind = values.get("monoid.kind", GENERATED)
    rank = need("group.rank") if kind != LEX else values.get("group.rank", values.get("monoid.lex_rank"))
    torsion = values.get("group.torsion", [])
    if rank is None and kind == LEX:
        diags.append((0, "missing key 'monoid.lex_rank'"))
    if rank is not None and (not _is_int(rank) or rank < 0):
        diags.append((at("group.rank"), "group.rank must be a nonnegative integer"))
    if not _int_list(torsion):
        diags.append((at("group.torsion"), "group.torsion must be a list of integers"))
    elif any(d < 2 for d in torsion):
        diags.append((at("group.torsion"), "torsion entries must be >= 2"))
    if kind not in (GENERATED, LEX):
        diags.append((at("monoid.kind"), f"monoid.kind must be {GENERATED!r} or {LEX!r}"))
    if diags:
        raise InstanceError(source, diags)

    group, embed = presentation(rank, torsion)
    width = rank + len(torsion)
    options = {}
    for key in ("options.window", "options.prefix"):
        if key in values:
            v = values[key]
            if not _is_int(v) or v < 1:
                diags.append((at(key), f"{key} must be a positive integer"))
            options[key.split(".")[1]] = v

    if kind == LEX:
        lr = values.get("monoid.lex_rank", rank)
        if "monoid.generators" in values:
            diags.append((at("monoid.generators"), "lex monoids take no generators"))
        if not _is_int(lr) or lr < 1:
            diags.append((at("monoid.lex_rank"), "monoid.lex_rank must be a positive integer"))
        elif torsion or lr != rank:
            diags.append((at("monoid.lex_rank"), "lex monoids need group.rank == monoid.lex_rank and no torsion"))
        if diags:
            raise InstanceError(source, diags)
        monoid = MonoidSpec.lex(lr)
        raw = {"rank": rank, "torsion": list(torsion), "kind": LEX, "lex_rank": lr}
    else:
        if "monoid.lex_rank" in values:
            diags.append((at("monoid.lex_rank"), "monoid.lex_rank only applies to lex monoids"))
        gens = values.get("monoid.generators", [])
        ln = at("monoid.generators")
        if not isinstance(gens, list) or not all(_int_list(g) for g in gens):
            diags.append((ln, "monoid.generators must be a list of integer lists"))
        else:
            for i, g in enumerate(gens):
                if len(g) != width:
                    diags.append((ln, f"generator {i} has {len(g)} coordinates, expected {width}"))
        if diags:
            raise InstanceError(source, diags)
        try:
            elems = [embed(g) for g in gens]
        except DimensionError as exc:
            raise InstanceError(source, [(ln, str(exc))]) from exc
        monoid = MonoidSpec.generated(group, elems)
        raw = {"rank": rank, "torsion": list(torsion), "kind": GENERATED, "generators": gens}
    if diags:
        raise InstanceError(source, diags)
    name = values.get("meta.name") or Path(source).stem
    return Instance(name, monoid, options, raw, str(source))


def parse_instance(path):
    """Parse an instance file into an :class:`Instance`."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceError(str(path), [(0, f"cannot read file: {exc.strerror}")]) from exc
    return parse_text(text, str(path))


def from_raw(raw, name="", options=None):
    """Rebuild an instance from the ``raw`` block of a report echo."""
    try:
        text = _render(name or "instance", raw, options or {})
    except (KeyError, TypeError) as exc:
        raise InstanceError("<report>", [(0, f"incomplete instance echo: {exc}")]) from exc
    return parse_text(text, "<report>")


def _render(name, raw, options):
    out = [f"meta.name = {name}",
           f"group.rank = {json.dumps(raw['rank'])}",
           f"group.torsion = {json.dumps(raw['torsion'])}",
           f"monoid.kind = {raw['kind']}"]
    if raw["kind"] == LEX:
        out.append(f"monoid.lex_rank = {json.dumps(raw['lex_rank'])}")
    else:
        out.append(f"monoid.generators = {json.dumps(raw['generators'])}")
    for k, v in sorted(options.items()):
        out.append(f"options.{k} = {json.dumps(v)}")
    return "\n".join(out) + "\n"


def format_instance(inst):
    """Render an instance back into the file format."""
    return _render(inst.name, inst.raw, inst.options)
