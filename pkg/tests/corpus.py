"""Seeded generators of synthetic snippets over the bundled catalog."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from apizer.catalog import TypeCatalog, is_type_var, strip_array

SIMPLE_VALUE_TYPES = ("int", "long", "double", "boolean", "char", "java.lang.String")
LITERALS = {
    "int": lambda r: str(r.randint(0, 999)),
    "long": lambda r: f"{r.randint(0, 99999)}L",
    "double": lambda r: f"{r.randint(0, 99)}.{r.randint(0, 9)}",
    "boolean": lambda r: r.choice(("true", "false")),
    "char": lambda r: repr(r.choice("abcxyz")),
    "java.lang.String": lambda r: '"' + "".join(r.choice("abcdefgh ") for _ in range(r.randint(1, 8))) + '"',
}
RESERVED = frozenset({"int", "long", "do", "if", "for", "new", "char"})


def _simple(q: str) -> str:
    return q.rsplit(".", 1)[-1]


def _usable_type(catalog: TypeCatalog, q: str) -> bool:
    """A type the generator may write by simple name and expect to be importable."""
    base, dims = strip_array(q)
    if dims or is_type_var(base):
        return False
    if base in SIMPLE_VALUE_TYPES:
        return True
    entry = catalog.get(base)
    if entry is None or entry.primitive or "." in base[len(entry.package) + 1:]:
        return False
    return len(catalog.lookup_simple_name(_simple(base))) == 1


@dataclass
class _Gen:
    rng: random.Random
    catalog: TypeCatalog
    decls: dict = field(default_factory=dict)  # name -> qualified type
    counter: int = 0
    lines: list = field(default_factory=list)

    def fresh(self, prefix: str) -> str:
        self.counter += 1
        return f"{prefix}{self.counter}"

    def value(self, t: str, allow_undeclared: bool = True) -> str:
        """An expression of type ``t``: a literal, a declared variable, or an undeclared one."""
        same = [v for v, vt in self.decls.items() if vt == t]
        roll = self.rng.random()
        if same and roll < 0.4:
            return self.rng.choice(same)
        if allow_undeclared and roll < 0.55 and t in ("int", "java.lang.String", "double", "boolean"):
            return self.fresh("u")
        if t in LITERALS:
            return LITERALS[t](self.rng)
        return None

    def constructible(self) -> list[str]:
        out = []
        for q in self.catalog.names():
            entry = self.catalog.get(q)
            if entry.primitive or entry.is_interface or entry.library != "jdk" or not _usable_type(self.catalog, q):
                continue
            if entry.type_params or q in SIMPLE_VALUE_TYPES:
                continue
            if any(not sig.params for sig in self.catalog.constructors(q)):
                out.append(q)
        return out

    def instance_methods(self, q: str) -> list:
        sigs = []
        seen = set()
        for owner in self.catalog.ancestors(q):
            entry = self.catalog.get(owner)
            for sig in entry.methods:
                if sig.static or sig.is_constructor or sig.varargs or (sig.name, sig.params) in seen:
                    continue
                if sig.name in ("wait", "notify", "notifyAll", "getClass", "hashCode", "clone", "finalize"):
                    continue
                if not all(p in LITERALS for p in sig.params):
                    continue
                seen.add((sig.name, sig.params))
                sigs.append(sig)
        return sorted(sigs, key=lambda s: (s.name, s.params))

    def literal_decl(self) -> None:
        t = self.rng.choice(SIMPLE_VALUE_TYPES)
        v = self.fresh("v")
        self.lines.append(f"{_simple(t)} {v} = {LITERALS[t](self.rng)};")
        self.decls[v] = t

    def object_decl(self) -> None:
        q = self.rng.choice(self.constructible())
        v = self.fresh("o")
        self.lines.append(f"{_simple(q)} {v} = new {_simple(q)}();")
        self.decls[v] = q

    def call(self, as_decl: bool) -> bool:
        receivers = [v for v, t in self.decls.items() if t not in LITERALS or t == "java.lang.String"]
        if not receivers:
            return False
        v = self.rng.choice(receivers)
        sigs = self.instance_methods(self.decls[v])
        if as_decl:
            sigs = [s for s in sigs if s.returns != "void" and _usable_type(self.catalog, s.returns)]
        if not sigs:
            return False
        sig = self.rng.choice(sigs)
        args = [self.value(p) for p in sig.params]
        call = f"{v}.{sig.name}({', '.join(args)})"
        if as_decl:
            r = self.fresh("r")
            self.lines.append(f"{_simple(sig.returns)} {r} = {call};")
            self.decls[r] = sig.returns
        else:
            self.lines.append(f"{call};")
        return True

    def arithmetic(self) -> None:
        t = self.rng.choice(("int", "double", "long"))
        r = self.fresh("a")
        op = self.rng.choice(("+", "-", "*"))
        self.lines.append(f"{t} {r} = {self.value(t)} {op} {self.value(t)};")
        self.decls[r] = t

    def concat(self) -> None:
        r = self.fresh("s")
        parts = [self.value("java.lang.String")]
        nums = [v for v, t in self.decls.items() if t in ("int", "long", "double")]
        if nums:
            parts.append(self.rng.choice(nums))
        self.lines.append(f"String {r} = {' + '.join(parts)};")
        self.decls[r] = "java.lang.String"

    def println(self) -> None:
        if not self.decls:
            return
        v = self.rng.choice(sorted(self.decls))
        if self.rng.random() < 0.5:
            self.lines.append(f'System.out.println("value: " + {v});')
        else:
            self.lines.append(f"System.out.println({v});")


def straight_line_snippet(rng: random.Random, catalog: TypeCatalog) -> str:
    """A loop-free snippet of 3 to 9 statements mixing all four patterns."""
    g = _Gen(rng, catalog)
    for _ in range(rng.randint(1, 3)):
        g.literal_decl()
    for _ in range(rng.randint(2, 6)):
        roll = rng.random()
        if roll < 0.2:
            g.object_decl()
        elif roll < 0.5:
            g.call(as_decl=True) or g.arithmetic()
        elif roll < 0.65:
            g.call(as_decl=False) or g.concat()
        elif roll < 0.85:
            g.arithmetic()
        else:
            g.concat()
    if rng.random() < 0.4:
        g.println()
    return "\n".join(g.lines)


def loop_snippet(rng: random.Random, catalog: TypeCatalog) -> tuple[str, str]:
    """A snippet whose hard-coded variable is mutated inside a loop; returns (snippet, variable)."""
    g = _Gen(rng, catalog)
    for _ in range(rng.randint(0, 2)):
        g.literal_decl()
    t = rng.choice(("int", "long", "double", "java.lang.String"))
    v = g.fresh("acc")
    g.lines.append(f"{_simple(t)} {v} = {LITERALS[t](rng)};")
    g.decls[v] = t
    i = g.fresh("i")
    bound = rng.randint(2, 20)
    kind = rng.choice(("for", "while", "do", "foreach"))
    if t == "java.lang.String":
        mutation = rng.choice((f'{v} += "x";', f'{v} = {v} + "y";'))
    else:
        mutation = rng.choice((f"{v}++;", f"{v} += 2;", f"{v} = {v} * 3;", f"--{v};"))
    if rng.random() < 0.3:
        mutation = f"if ({i} > 1) {{ {mutation} }}"
    if kind == "for":
        g.lines.append(f"for (int {i} = 0; {i} < {bound}; {i}++) {{ {mutation} }}")
    elif kind == "while":
        g.lines.append(f"int {i} = 0;")
        g.lines.append(f"while ({i} < {bound}) {{ {mutation} {i}++; }}")
    elif kind == "do":
        g.lines.append(f"int {i} = 0;")
        g.lines.append(f"do {{ {mutation} {i}++; }} while ({i} < {bound});")
    else:
        g.lines.append(f"int[] arr{i} = {{1, 2, 3}};")
        g.lines.append(f"for (int {i} : arr{i}) {{ {mutation} }}")
    if rng.random() < 0.5:
        g.lines.append(f"System.out.println({v});")
    return "\n".join(g.lines), v
