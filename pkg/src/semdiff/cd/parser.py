"""Recursive-descent parser for ``.cd`` files.

Grammar::

    diagram     := 'classdiagram' NAME '{' decl* '}'
    decl        := enum | class | interface | association
    enum        := 'enum' NAME '{' NAME (',' NAME)* ';'? '}' ';'?
    class       := ('abstract' | 'singleton')? 'class' NAME
                   ('extends' NAME)? ('implements' NAME (',' NAME)*)?
                   ('{' (TYPE NAME ';')* '}' ';'? | ';')
    interface   := 'interface' NAME ('extends' NAME (',' NAME)*)? ';'
    association := 'association' ('composition' | 'aggregation')?
                   NAME mult? role? ('->' | '<->') role? mult? NAME ';'
    role        := '(' NAME ')'
    mult        := '[' bound ']' | bound
    bound       := '*' | INT ('..' (INT | '*'))?
"""

from __future__ import annotations

from .._lexer import DiagramSyntaxError, TokenStream
from .ast import (AssocDecl, AssocKind, Attribute, ClassDecl, ClassDiagram,
                  EnumDecl, InterfaceDecl, Multiplicity, Navigability)

KEYWORDS = frozenset({
    "classdiagram", "enum", "class", "interface", "association", "abstract",
    "singleton", "extends", "implements", "composition", "aggregation",
})

__all__ = ["parse_cd", "DiagramSyntaxError", "KEYWORDS"]


def parse_cd(text: str) -> ClassDiagram:
    """Parse one class diagram.  Raises DiagramSyntaxError on bad input.

    Only syntax is checked here; name resolution and the other
    well-formedness rules live in :func:`check_context_conditions`.
    """
    return _CDParser(text).diagram()


class _CDParser:
    def __init__(self, text: str):
        self.ts = TokenStream(text)

    def name(self, what: str = "identifier") -> str:
        return self.ts.expect_ident(what, KEYWORDS)

    def diagram(self) -> ClassDiagram:
        ts = self.ts
        ts.expect("classdiagram")
        name = self.name("diagram name")
        ts.expect("{")
        classes, interfaces, enums, assocs = [], [], [], []
        while not ts.at("}"):
            if ts.at("enum"):
                enums.append(self.enum())
            elif ts.at("class") or ts.at("abstract") or ts.at("singleton"):
                classes.append(self.class_decl())
            elif ts.at("interface"):
                interfaces.append(self.interface())
            elif ts.at("association"):
                assocs.append(self.association())
            else:
                raise ts.error(["'enum'", "'class'", "'abstract'",
                                "'singleton'", "'interface'", "'association'",
                                "'}'"])
        ts.expect("}")
        ts.expect_eof()
        return ClassDiagram(name, tuple(classes), tuple(interfaces),
                            tuple(enums), tuple(assocs))

    def enum(self) -> EnumDecl:
        ts = self.ts
        ts.expect("enum")
        name = self.name("enum name")
        ts.expect("{")
        literals = [self.name("enum literal")]
        while ts.accept(","):
            literals.append(self.name("enum literal"))
        ts.accept(";")
        ts.expect("}")
        ts.accept(";")
        return EnumDecl(name, tuple(literals))

    def class_decl(self) -> ClassDecl:
        ts = self.ts
        is_abstract = ts.accept("abstract")
        is_singleton = False if is_abstract else ts.accept("singleton")
        ts.expect("class")
        name = self.name("class name")
        superclass = None
        if ts.accept("extends"):
            superclass = self.name("superclass name")
        interfaces = []
        if ts.accept("implements"):
            interfaces.append(self.name("interface name"))
            while ts.accept(","):
                interfaces.append(self.name("interface name"))
        attributes = []
        if ts.accept("{"):
            while not ts.at("}"):
                type_name = self.name("attribute type")
                attr_name = self.name("attribute name")
                ts.expect(";")
                attributes.append(Attribute(attr_name, type_name))
            ts.expect("}")
            ts.accept(";")
        else:
            if not ts.at(";"):
                raise ts.error(["'{'", "';'"])
            ts.advance()
        return ClassDecl(name, is_abstract, is_singleton, superclass,
                         tuple(interfaces), tuple(attributes))

    def interface(self) -> InterfaceDecl:
        ts = self.ts
        ts.expect("interface")
        name = self.name("interface name")
        extends = []
        if ts.accept("extends"):
            extends.append(self.name("interface name"))
            while ts.accept(","):
                extends.append(self.name("interface name"))
        ts.expect(";")
        return InterfaceDecl(name, tuple(extends))

    def association(self) -> AssocDecl:
        ts = self.ts
        ts.expect("association")
        kind = AssocKind.PLAIN
        if ts.accept("composition"):
            kind = AssocKind.COMPOSITION
        elif ts.accept("aggregation"):
            kind = AssocKind.AGGREGATION
        left_type = self.name("type name")
        left_mult = self.optional_mult()
        left_role = self.optional_role()
        if ts.accept("->"):
            nav = Navigability.LEFT_TO_RIGHT
        elif ts.accept("<->"):
            nav = Navigability.BIDIRECTIONAL
        else:
            expected = ["'->'", "'<->'"]
            if left_role is None:
                expected.insert(0, "'('")
                if left_mult is None:
                    expected.insert(0, "multiplicity")
            raise ts.error(expected)
        right_role = self.optional_role()
        right_mult = self.optional_mult()
        right_type = self.name("type name")
        ts.expect(";")
        return AssocDecl(left_type, right_type, nav, kind, left_role,
                         right_role, left_mult, right_mult)

    def optional_role(self):
        if not self.ts.accept("("):
            return None
        role = self.name("role name")
        self.ts.expect(")")
        return role

    def optional_mult(self):
        ts = self.ts
        if ts.accept("["):
            mult = self.bound()
            ts.expect("]")
            return mult
        if ts.at("*") or ts.current.kind == "INT":
            return self.bound()
        return None

    def bound(self) -> Multiplicity:
        ts = self.ts
        if ts.accept("*"):
            return Multiplicity(0, None)
        lower = ts.expect_int()
        if not ts.accept(".."):
            return Multiplicity(lower, lower)
        if ts.accept("*"):
            return Multiplicity(lower, None)
        return Multiplicity(lower, ts.expect_int())
