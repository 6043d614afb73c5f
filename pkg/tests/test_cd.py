from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from randomcd import random_pair
from semdiff.cd import (AssocKind, DiagramSyntaxError, Multiplicity,
                        Navigability, TypeKindClash, build_universe,
                        check_context_conditions, flatten, load_cd, parse_cd,
                        render_cd, strip_common)
from semdiff.cd.abstraction import abstract_attributes


def rules(text):
    return [v.rule for v in check_context_conditions(parse_cd(text))]


# -- parsing ----------------------------------------------------------------

def test_minimal_diagram():
    cd = parse_cd("classdiagram E { class A; }")
    assert cd.name == "E"
    assert [c.name for c in cd.classes] == ["A"]
    assert cd.classes[0].attributes == ()


def test_cd1v2_structure(cds):
    cd = cds["cd1v2"]
    assert cd.enums[0].literals == ("fullTime", "partTime", "external")
    assert [c.name for c in cd.classes] == ["Task", "Employee", "Manager"]
    assert cd.get_class("Manager").superclass == "Employee"
    works, mng = cd.associations
    assert works.navigability is Navigability.BIDIRECTIONAL
    assert (works.left_role, works.right_role) == ("doneBy", "worksOn")
    assert works.right_mult == Multiplicity(0, 2)
    assert mng.navigability is Navigability.LEFT_TO_RIGHT
    assert mng.right_role == "mngBy"
    assert mng.right_mult == Multiplicity(0, 1)


def test_undeclared_superclass_is_rejected():
    with pytest.raises(Exception) as exc:
        load_cd("classdiagram X { class A extends B; }")
    assert "B" in str(exc.value)
    assert rules("classdiagram X { class A extends B; }") == ["UndeclaredType"]


@pytest.mark.parametrize("text, line, column", [
    ("classdiagram X { class A }", 1, 26),
    ("classdiagram X {\n  class A { int; }\n}", 2, 16),
    ("classdiagram X { association A (r) B; }", 1, 36),
    ("classdiagram { }", 1, 14),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(DiagramSyntaxError) as exc:
        parse_cd(text)
    assert (exc.value.line, exc.value.column) == (line, column)
    assert exc.value.expected
    assert isinstance(exc.value, SyntaxError)


def test_comments_and_bare_multiplicities():
    cd = parse_cd("""
        /* block
           comment */
        classdiagram X {
          class A; // trailing
          class B;
          association composition A 1 (a) <-> (b) 0..* B;
        }""")
    a = cd.associations[0]
    assert a.kind is AssocKind.COMPOSITION
    assert a.left_mult == Multiplicity(1, 1)
    assert a.right_mult == Multiplicity(0, None)


def test_keywords_are_reserved():
    with pytest.raises(DiagramSyntaxError):
        parse_cd("classdiagram X { class class; }")


def test_multiplicity_rendering():
    assert str(Multiplicity(0, None)) == "*"
    assert str(Multiplicity(1, 1)) == "1"
    assert str(Multiplicity(0, 2)) == "0..2"
    assert str(Multiplicity(1, None)) == "1..*"


# -- context conditions -----------------------------------------------------

def test_inheritance_cycle():
    assert rules("classdiagram X { class A extends B; class B extends A; }") \
        == ["InheritanceCycle"]


def test_fixtures_are_well_formed(cds):
    for cd in cds.values():
        assert check_context_conditions(cd) == []


def test_invalid_multiplicity():
    assert rules("classdiagram X { class A; association A [3..1] -> (r) A; }") \
        == ["InvalidMultiplicity"]


@pytest.mark.parametrize("text, expected", [
    ("classdiagram X { class A; enum A { x } }", "DuplicateTypeName"),
    ("classdiagram X { abstract class A; singleton class B; class C extends A;"
     " interface I extends A; }", "InterfaceExtendsNonInterface"),
    ("classdiagram X { interface I; class A extends I; }", "ExtendsNonClass"),
    ("classdiagram X { class B; class A implements B; }",
     "ImplementsNonInterface"),
    ("classdiagram X { class B; class A { B b; } }", "AttributeTypeNotValue"),
    ("classdiagram X { enum E { x, x } }", "DuplicateEnumLiteral"),
    ("classdiagram X { class A { int a; } class B extends A { Date a; } }",
     "DuplicateAttribute"),
    ("classdiagram X { class A { int r; } association A -> (r) A; }",
     "RoleCollision"),
    ("classdiagram X { class A; association A <-> (r) A; }", "MissingRole"),
    ("classdiagram X { class A; association A -> A; }", "MissingRole"),
    ("classdiagram X { class A; association composition A [2] -> (r) A; }",
     "InvalidMultiplicity"),
    ("classdiagram X { interface I extends J; interface J extends I; }",
     "InterfaceCycle"),
    ("classdiagram X { enum E { x } association E -> (r) E; }",
     "AssociationEndNotType"),
])
def test_context_condition_rules(text, expected):
    assert expected in rules(text)


def test_abstract_singleton_rejected():
    cd = parse_cd("classdiagram X { abstract class A; }")
    cd = cd.__class__(cd.name, (cd.classes[0].__class__(
        "A", True, True, None, (), ()),))
    assert [v.rule for v in check_context_conditions(cd)] == ["AbstractSingleton"]


# -- flattening -------------------------------------------------------------

def test_flatten_cd1v2(flats):
    f = flats["cd1v2"]
    assert f.subtype_sets["Employee"] == {"Employee", "Manager"}
    assert [a.name for a in f.flat_attrs["Manager"]] == ["kind"]
    assert f.concrete_classes == {"Task", "Employee", "Manager"}


def test_flatten_cd1v1(flats):
    assert flats["cd1v1"].subtype_sets["Employee"] == {"Employee"}


def test_abstract_class_excluded_from_own_subtypes():
    f = flatten(load_cd("classdiagram X { abstract class A; class B extends A; }"))
    assert f.subtype_sets["A"] == {"B"}
    assert f.concrete_classes == {"B"}


def test_flatten_is_idempotent_on_attributes(cds):
    f = flatten(cds["cd5v2"])
    hand = load_cd("""classdiagram flat {
        class Employee { String name; Date birthDate; int salary; }
        class Address { String street; String city; }
        association Employee [*] -> (address) [1] Address; }""")
    g = flatten(hand)
    for cls in ("Employee", "Address"):
        assert f.flat_attrs[cls] == g.flat_attrs[cls]


def test_interfaces_in_subtype_sets():
    f = flatten(load_cd("""classdiagram X {
        interface I; interface J extends I;
        class A implements J; abstract class B implements I; class C extends B;
        }"""))
    assert f.subtype_sets["I"] == {"A", "C"}
    assert f.subtype_sets["J"] == {"A"}


@given(st.integers(0, 10_000))
def test_subtype_sets_are_concrete(seed):
    for cd in random_pair(seed):
        f = flatten(cd)
        for t, members in f.subtype_sets.items():
            assert members <= f.concrete_classes
            if t in f.concrete_classes:
                assert t in members


# -- universe ---------------------------------------------------------------

def test_universe_cd1(cds):
    u = build_universe(cds["cd1v1"], cds["cd1v2"])
    assert set(u.class_names) == {"Task", "Employee", "Manager"}
    assert set(u.field_names) == {"startDate", "mngBy", "worksOn", "mng",
                                  "doneBy", "kind"}
    assert ("PosKnd", "external") in u.enum_literals
    assert list(u.class_names) == sorted(u.class_names)


def test_universe_is_idempotent(cds):
    cd = cds["cd1v2"]
    u = build_universe(cd, cd)
    assert set(u.field_names) == {"startDate", "mngBy", "worksOn", "doneBy",
                                  "kind"}
    assert u.literals_of("PosKnd") == ("external", "fullTime", "partTime")


def test_universe_kind_clash():
    a = load_cd("classdiagram X { class A; }")
    b = load_cd("classdiagram Y { enum A { x } }")
    with pytest.raises(TypeKindClash):
        build_universe(a, b)


# -- common attributes ------------------------------------------------------

def names(fcd, cls):
    return [a.name for a in fcd.flat_attrs[cls]]


def test_strip_common_cd1(cds):
    left, right = strip_common(cds["cd1v1"], cds["cd1v2"])
    assert names(left, "Task") == names(right, "Task") == []
    # the enum changed, so kind must stay
    assert names(left, "Employee") == names(right, "Employee") == ["kind"]
    assert names(right, "Manager") == ["kind"]


def test_strip_common_identical(cds):
    left, right = strip_common(cds["cd1v2"], cds["cd1v2"])
    assert all(not attrs for attrs in left.flat_attrs.values())
    assert all(not attrs for attrs in right.flat_attrs.values())


def test_strip_common_cd5(cds, flats):
    v1, v2 = flats["cd5v1"], flats["cd5v2"]
    expected = {cls: set(names(v1, cls)) & set(names(v2, cls))
                for cls in ("Employee", "Address")}
    assert expected == {"Employee": {"name", "birthDate", "salary"},
                        "Address": {"street", "city"}}
    left, right = strip_common(cds["cd5v1"], cds["cd5v2"])
    for cls in expected:
        assert names(left, cls) == names(right, cls) == []
    # Person only exists on the right, so its attributes stay there
    assert names(right, "Person") == ["name", "birthDate"]


# -- printer ----------------------------------------------------------------

def test_render_fixture_round_trip(cds):
    for cd in cds.values():
        assert parse_cd(render_cd(cd)) == cd


def test_render_layout():
    text = render_cd(parse_cd(
        "classdiagram X { enum E { a, b } abstract class A { E e; } "
        "class B extends A; association A (x) <-> (y) [0..2] B; }"))
    assert text == (
        "classdiagram X {\n"
        "  enum E { a, b }\n"
        "  abstract class A {\n"
        "    E e;\n"
        "  }\n"
        "  class B extends A;\n"
        "  association A (x) <-> (y) [0..2] B;\n"
        "}\n")


@given(st.integers(0, 100_000))
def test_render_round_trip_random(seed):
    for cd in random_pair(seed):
        assert parse_cd(render_cd(cd)) == cd


# -- attribute abstraction --------------------------------------------------

def test_abstraction_keeps_enums(cds):
    cd = abstract_attributes(cds["cd1v1"])
    assert cd.get_class("Task").attributes == ()
    assert [a.name for a in cd.get_class("Employee").attributes] == ["kind"]


def test_abstraction_fixpoint():
    cd = load_cd("classdiagram X { class A; association A -> (r) A; }")
    assert abstract_attributes(cd) == cd


def test_abstraction_of_added_id(cds):
    assert abstract_attributes(cds["cd5v2_id"]).classes == \
        abstract_attributes(cds["cd5v2"]).classes
