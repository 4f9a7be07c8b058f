"""Data carried between the resolver and the APIzation pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .syntax.nodes import Block, MethodDecl, Param, SnippetAst, TypeRef

DEFAULT_LIBRARY = "jdk"
VOID = TypeRef("void")
GENERIC_EXCEPTION = TypeRef("Exception")

MISSING_TYPE = "missing-type"
MISSING_VARIABLE = "missing-variable"
OTHER = "other"


@dataclass(frozen=True, order=True)
class Diagnostic:
    stmt_index: int
    identifier: str
    kind: str
    message: str = field(default="", compare=False)

    def __str__(self) -> str:
        text = f"[{self.kind}] {self.identifier} (statement {self.stmt_index})"
        return f"{text}: {self.message}" if self.message else text


@dataclass(frozen=True)
class ResolutionState:
    """Imports chosen so far and the libraries they pull onto the classpath.

    Imports are qualified names in insertion order; a trailing ``.*`` marks an
    on-demand import carried over from the snippet.
    """

    imports: tuple[str, ...] = ()
    libraries: frozenset[str] = frozenset({DEFAULT_LIBRARY})
    static_imports: tuple[str, ...] = ()

    def with_import(self, qualified: str, library: str = "jdk") -> "ResolutionState":
        if qualified in self.imports:
            return self
        return replace(self, imports=self.imports + (qualified,), libraries=self.libraries | {library})

    def imported_packages(self) -> set[str]:
        pkgs = set()
        for imp in self.imports:
            if imp.endswith(".*"):
                pkgs.add(imp[:-2])
            else:
                pkgs.add(imp.rsplit(".", 1)[0])
        return pkgs


@dataclass(frozen=True)
class ApiDraft:
    modifiers: tuple[str, ...] = ("public", "static")
    return_type: TypeRef = VOID
    name: str = "snippet"
    params: tuple[Param, ...] = ()
    throws: tuple[TypeRef, ...] = (GENERIC_EXCEPTION,)
    body: tuple = ()
    resolution: ResolutionState = ResolutionState()

    @property
    def is_void(self) -> bool:
        return self.return_type.name == "void" and self.return_type.dims == 0

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    def to_method(self) -> MethodDecl:
        return MethodDecl(
            modifiers=self.modifiers,
            return_type=self.return_type,
            name=self.name,
            params=self.params,
            throws=self.throws,
            body=Block(tuple(self.body)),
        )

    def body_ast(self) -> SnippetAst:
        return SnippetAst(statements=tuple(self.body))

    def add_param(self, type_ref: TypeRef, name: str) -> "ApiDraft":
        return replace(self, params=self.params + (Param(type_ref, name),))


@dataclass
class ScopeState:
    """Per-snippet analysis state.

    ``types`` maps variables to their declared type, ``decls`` maps variables
    declared without initializer to the index of the declaring statement.
    """

    types: dict[str, TypeRef] = field(default_factory=dict)
    decls: dict[str, int] = field(default_factory=dict)
    already_init: set[str] = field(default_factory=set)
    lp_vars: set[str] = field(default_factory=set)


APIZED = "apized"
ALREADY_API = "already-api"
SKIPPED = "skipped"
FAILED = "failed"


@dataclass(frozen=True)
class ApizationResult:
    draft: Optional[ApiDraft]
    class_name: str
    javadoc: str
    outcome: str
    reason: str = ""
    elapsed: float = 0.0
    iterations: int = 0
    initial_diagnostics: int = 0

    @property
    def label(self) -> str:
        return f"{self.outcome}: {self.reason}" if self.reason else self.outcome

    @property
    def ok(self) -> bool:
        return self.outcome in (APIZED, ALREADY_API)
