"""Persistent typing environment: ordered (name, type, optional value) bindings."""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import Name, Term


@dataclass(frozen=True)
class Binding:
    name: Name
    type: Term
    value: Term | None = None


@dataclass(frozen=True)
class Context:
    """Innermost binding last; lookups scan from the inside out, so local
    binders shadow earlier (including top-level) bindings. Extending never
    mutates the receiver."""

    bindings: tuple[Binding, ...] = ()

    def extend_type(self, name: Name, type_: Term) -> "Context":
        return Context(self.bindings + (Binding(name, type_),))

    def extend_type_value(self, name: Name, type_: Term, value: Term) -> "Context":
        return Context(self.bindings + (Binding(name, type_, value),))

    def _lookup(self, name: Name) -> Binding | None:
        for b in reversed(self.bindings):
            if b.name == name:
                return b
        return None

    def lookup_type(self, name: Name) -> Term | None:
        b = self._lookup(name)
        return b.type if b is not None else None

    def lookup_val(self, name: Name) -> Term | None:
        b = self._lookup(name)
        return b.value if b is not None else None

    def __contains__(self, name: Name) -> bool:
        return self._lookup(name) is not None
