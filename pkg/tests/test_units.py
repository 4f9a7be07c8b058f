import random

import pytest
from hypothesis import given, settings, strategies as st

from apizer.apize import apize
from apizer.model import ApiDraft
from apizer.syntax import parse_snippet
from apizer.syntax.nodes import Name, Param, Return, TypeRef
from apizer.units import (
    AMBIGUOUS, DANGLING, IMPOSSIBLE, WELL_FORMED, ConsistencyError, classify_unit, render_unit,
)
from corpus import straight_line_snippet
from golden import CALENDAR_PAGE, CALENDAR_SNIPPET


def kind(src):
    return classify_unit(parse_snippet(src)).kind


@pytest.mark.parametrize("src, expected", [
    ("public static int id(int x){return x;}", WELL_FORMED),
    (CALENDAR_SNIPPET, DANGLING),
    ("public static void f(int x){int y=1;}", DANGLING),
    ("public int f(){ int a = 1; }", DANGLING),
    ("public void f(){ return 1; }", DANGLING),
    ("public void f(){} public void g(){}", AMBIGUOUS),
    ("class A {} class B {}", AMBIGUOUS),
    ("abstract void f();", IMPOSSIBLE),
    ("class A { int x; }", IMPOSSIBLE),
    ("class A { A() { } }", IMPOSSIBLE),
    ("int a = 1; void f() { }", DANGLING),
    ("class A { public int twice(int x) { return 2 * x; } }", WELL_FORMED),
    ("void f() { }", WELL_FORMED),
])
def test_classify_unit(src, expected):
    assert kind(src) == expected


def test_well_formed_carries_method():
    unit = classify_unit(parse_snippet("public static int id(int x){return x;}"))
    assert unit.method.name == "id"


def test_render_calendar_header():
    result = apize(CALENDAR_SNIPPET, CALENDAR_PAGE)
    text = render_unit(result.draft, result.class_name, result.javadoc)
    assert "public static Date " in text
    assert "(int week, int year)" in text
    assert text.startswith("import java.util.Calendar;\nimport java.util.Date;\n\npublic class Snippet2109186 {\n")
    assert "    /**\n     * How to get the first day" in text
    assert "     * @see https://stackoverflow.com/a/2109186\n" in text
    assert text.endswith("}\n")


def test_render_empty_void_draft():
    text = render_unit(ApiDraft(name="name"), "Snippet1")
    assert "public class Snippet1 {" in text
    assert "public static void name() throws Exception { }" in text


def test_render_rejects_unreferenced_parameter():
    draft = ApiDraft(params=(Param(TypeRef("int"), "x"),))
    with pytest.raises(ConsistencyError):
        render_unit(draft, "Snippet1")


def test_render_rejects_missing_return():
    draft = ApiDraft(return_type=TypeRef("int"), body=parse_snippet("int a = 1;").statements)
    with pytest.raises(ConsistencyError):
        render_unit(draft, "Snippet1")


def test_render_rejects_value_return_in_void():
    draft = ApiDraft(body=(Return(Name("a")),), params=(Param(TypeRef("int"), "a"),))
    with pytest.raises(ConsistencyError):
        render_unit(draft, "Snippet1")


def test_javadoc_cannot_close_comment_early():
    text = render_unit(ApiDraft(), "Snippet1", "title */ evil")
    assert text.count("*/") == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_rendered_units_classify_as_well_formed(catalog, seed):
    src = straight_line_snippet(random.Random(seed), catalog)
    result = apize(src, catalog=catalog)
    assert result.outcome == "apized"
    text = render_unit(result.draft, result.class_name, result.javadoc)
    assert classify_unit(parse_snippet(text)).kind == WELL_FORMED
