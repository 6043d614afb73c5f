"""Class-diagram language frontend."""

from pathlib import Path

from .._lexer import DiagramSyntaxError
from .ast import (PRIMITIVE_TYPES, AssocDecl, AssocKind, Attribute, ClassDecl,
                  ClassDiagram, EnumDecl, InterfaceDecl, Multiplicity,
                  Navigability)
from .checks import ContextConditionError, Violation, check_context_conditions
from .flatten import FlatAssoc, FlatClassDiagram, flatten
from .parser import parse_cd
from .printer import render_cd
from .universe import (FieldDomain, SignatureUniverse, TypeKindClash,
                       build_universe, common_attributes, strip_common)


def load_cd(text: str, source: str = "") -> ClassDiagram:
    """Parse ``text`` and reject it unless all context conditions hold."""
    cd = parse_cd(text)
    violations = check_context_conditions(cd)
    if violations:
        raise ContextConditionError(violations, source)
    return cd


def read_cd(path) -> ClassDiagram:
    path = Path(path)
    return load_cd(path.read_text(encoding="utf-8"), str(path))


__all__ = [
    "PRIMITIVE_TYPES", "AssocDecl", "AssocKind", "Attribute", "ClassDecl",
    "ClassDiagram", "ContextConditionError", "DiagramSyntaxError", "EnumDecl",
    "FieldDomain", "FlatAssoc", "FlatClassDiagram", "InterfaceDecl",
    "Multiplicity", "Navigability", "SignatureUniverse", "TypeKindClash",
    "Violation", "build_universe", "check_context_conditions",
    "common_attributes", "flatten", "load_cd", "parse_cd", "read_cd",
    "render_cd", "strip_common",
]
