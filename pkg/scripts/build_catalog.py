"""Compile scripts/catalog_source.txt into the bundled JSON-lines catalog."""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

HERE = Path(__file__).resolve().parent
DEFAULT_SOURCE = HERE / "catalog_source.txt"
DEFAULT_OUT = HERE.parent / "src" / "apizer" / "data" / "jdk_catalog.jsonl"

PRIMITIVES = ["boolean", "byte", "char", "short", "int", "long", "float", "double"]
TYPE_VAR = re.compile(r"^[A-Z]$")
HEADER = re.compile(r"^(class|interface)\s+([\w.]+)(?:<([\w,\s]+)>)?\s*(?::\s*(.+))?$")
METHOD = re.compile(r"^(static\s+)?(\S+)\s+(\w+)\((.*)\)$")
CTOR = re.compile(r"^new\((.*)\)$")
FIELD = re.compile(r"^field\s+(static\s+)?(\S+)\s+(\w+)$")


@dataclass
class RawType:
    name: str  # qualified
    package: str
    library: str
    kind: str
    type_params: list[str]
    supers: list[str]
    members: list[str] = field(default_factory=list)
    lineno: int = 0


def parse_source(text: str) -> list[RawType]:
    types: list[RawType] = []
    library = package = ""
    current: RawType | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        if raw.startswith("  "):
            if current is None:
                sys.exit(f"{lineno}: member outside a type")
            current.members.append(raw.strip())
            continue
        line = raw.strip()
        if line.startswith("library "):
            library = line.split()[1]
            current = None
        elif line.startswith("package "):
            package = line.split()[1]
            current = None
        else:
            m = HEADER.match(line)
            if not m:
                sys.exit(f"{lineno}: cannot parse {line!r}")
            kind, name, tparams, supers = m.groups()
            current = RawType(
                name=f"{package}.{name}",
                package=package,
                library=library,
                kind=kind,
                type_params=[t.strip() for t in (tparams or "").split(",") if t.strip()],
                supers=[s.strip() for s in (supers or "").split(",") if s.strip()],
                lineno=lineno,
            )
            types.append(current)
    return types


class Resolver:
    def __init__(self, types: list[RawType]):
        self.qualified = {t.name for t in types}
        self.by_simple: dict[str, list[RawType]] = {}
        for t in types:
            self.by_simple.setdefault(t.name[len(t.package) + 1:], []).append(t)

    def resolve(self, name: str, ctx: RawType) -> str:
        suffix = ""
        while name.endswith("[]") or name.endswith("..."):
            if name.endswith("[]"):
                suffix = "[]" + suffix
                name = name[:-2]
            else:
                suffix = "..." + suffix
                name = name[:-3]
        if name in PRIMITIVES or name == "void" or TYPE_VAR.match(name):
            return name + suffix
        if name in self.qualified:
            return name + suffix
        candidates = self.by_simple.get(name, [])
        for pick in (
            [c for c in candidates if c.package == ctx.package],
            [c for c in candidates if c.package == "java.lang"],
            candidates if len(candidates) == 1 else [],
        ):
            if pick:
                return pick[0].name + suffix
        sys.exit(f"{ctx.lineno}: cannot resolve type {name!r} in {ctx.name}")


def split_params(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def build(types: list[RawType]) -> list[dict]:
    res = Resolver(types)
    records = []
    for prim in PRIMITIVES:
        records.append({
            "name": prim, "package": "", "library": "jdk", "supertypes": [],
            "primitive": True, "methods": [], "fields": [],
        })
    for t in types:
        supers = [res.resolve(s, t) for s in t.supers]
        if not supers and t.name != "java.lang.Object" and t.kind == "class":
            supers = ["java.lang.Object"]
        methods, fields = [], []
        for member in t.members:
            if m := CTOR.match(member):
                methods.append({
                    "name": "<init>",
                    "params": [res.resolve(p, t) for p in split_params(m.group(1))],
                    "returns": t.name, "static": True,
                })
            elif m := FIELD.match(member):
                fields.append({
                    "name": m.group(3), "type": res.resolve(m.group(2), t),
                    "static": bool(m.group(1)),
                })
            elif m := METHOD.match(member):
                methods.append({
                    "name": m.group(3),
                    "params": [res.resolve(p, t) for p in split_params(m.group(4))],
                    "returns": res.resolve(m.group(2), t),
                    "static": bool(m.group(1)),
                })
            else:
                sys.exit(f"{t.lineno}: cannot parse member {member!r} of {t.name}")
        records.append({
            "name": t.name, "package": t.package, "library": t.library,
            "supertypes": supers, "primitive": False, "methods": methods,
            "fields": fields, "kind": t.kind, "type_params": t.type_params,
        })
    return records


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--source", type=Path, default=DEFAULT_SOURCE)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args(argv)
    records = build(parse_source(args.source.read_text(encoding="utf-8")))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    print(f"wrote {len(records)} entries to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
