import pytest
from hypothesis import given, settings, strategies as st

from apizer.evaluate import (
    NONVOID_NONVOID, NONVOID_VOID, VOID_NONVOID, VOID_VOID, as_method, ast_diff_count,
    evaluate_pair, jaccard_distance, normalize_return, param_set, params_identical,
    return_equivalence, summarize,
)
from apizer.apize import apize
from apizer.syntax import ParseError
from apizer.syntax.nodes import Param, TypeRef
from apizer.syntax.printer import render_statements
from apizer.units import render_unit
from golden import CALENDAR_HUMAN, CALENDAR_PAGE, CALENDAR_SNIPPET

WEEK_YEAR = "public static Date f(int week, int year) { Calendar c = Calendar.getInstance(); c.set(1, week); c.set(2, year); return c.getTime(); }"


# ---------------------------------------------------------------- parameters


def test_identical_params_same_sites():
    m = as_method(WEEK_YEAR)
    p = m.params[0]
    assert params_identical(p, p, m, as_method(WEEK_YEAR.replace(" f(", " g(")))


def test_compatible_but_different_types_differ():
    assert not params_identical(Param(TypeRef("double"), "x"), Param(TypeRef("int"), "x"))
    assert not params_identical(Param(TypeRef("Collection"), "x"), Param(TypeRef("List"), "x"))


def test_identifier_mismatch():
    assert not params_identical(Param(TypeRef("int"), "a"), Param(TypeRef("int"), "b"))


def test_qualified_and_simple_type_names_agree():
    assert params_identical(Param(TypeRef("java.util.Date"), "d"), Param(TypeRef("Date"), "d"))


def test_same_name_different_use_differs():
    a = as_method("void f(int a, int b) { g(a); h(b); }")
    b = as_method("void f(int a, int b) { g(b); h(a); }")
    assert not params_identical(a.params[0], b.params[0], a, b)


def test_jaccard_identical_lists():
    ps = param_set(WEEK_YEAR)
    assert jaccard_distance(ps, ps) == 0.0


def test_jaccard_both_empty():
    assert jaccard_distance(set(), set()) == 0.0


def test_jaccard_disjoint():
    assert jaccard_distance({("int", "a")}, set()) == 1.0


def test_jaccard_partial():
    assert jaccard_distance({1, 2, 3}, {2, 3, 4}) == pytest.approx(0.5)


@given(st.frozensets(st.integers(0, 6)), st.frozensets(st.integers(0, 6)))
def test_jaccard_properties(a, b):
    d = jaccard_distance(a, b)
    assert 0.0 <= d <= 1.0
    assert d == jaccard_distance(b, a)
    assert (d == 0.0) == (a == b)
    assert (d == 1.0) == (not (a & b) and bool(a | b))


# ---------------------------------------------------------------- returns


def test_both_void():
    assert return_equivalence("void f() { g(); }", "void h() { }") == (VOID_VOID, True)


def test_calendar_returns_are_equivalent():
    tool = WEEK_YEAR.replace("f(", "getFirstDayOfWeek(")
    assert return_equivalence(WEEK_YEAR, tool) == (NONVOID_NONVOID, True)


def test_void_vs_int():
    assert return_equivalence("void f() { }", "int f() { return 1; }") == (VOID_NONVOID, False)
    assert return_equivalence("int f() { return 1; }", "void f() { }") == (NONVOID_VOID, False)


def test_same_type_different_statement():
    assert return_equivalence("int f(int a) { return a; }", "int f(int a) { return a + 1; }") == (NONVOID_NONVOID, False)


def test_different_type():
    assert return_equivalence("int f() { return 1; }", "long f() { return 1; }") == (NONVOID_NONVOID, False)


def test_parameter_renaming_is_tolerated():
    assert return_equivalence("int f(int a, int b) { return a + b; }", "int g(int x, int y) { return x + y; }")[1]
    assert not return_equivalence("int f(int a, int b) { return a - b; }", "int g(int x, int y) { return y - x; }")[1]


def test_normalize_return_fuses_final_declaration():
    m = normalize_return("int f(int b, int c) { int a = b + c; return a; }")
    assert render_statements(m.body.stmts) == "return b + c;\n"


def test_normalize_return_fixed_point():
    m = normalize_return("int f(int x) { return x; }")
    assert render_statements(m.body.stmts) == "return x;\n"
    assert normalize_return(m) == m


def test_normalize_return_intervening_use():
    src = "int f() { int a = f(); g(a); return a; }"
    assert normalize_return(src) == as_method(src)


def test_normalized_equivalence():
    assert return_equivalence("int f(int b, int c) { int a = b + c; return a; }",
                              "int g(int b, int c) { return b + c; }") == (NONVOID_NONVOID, True)


# ---------------------------------------------------------------- tree diff


def test_ast_diff_ignores_method_name():
    assert ast_diff_count("void f() { a(); }", "void g() { a(); }") == 0


def test_ast_diff_extra_statement():
    assert ast_diff_count("void f() { a(); }", "void f() { a(); b(); }") >= 1


def test_ast_diff_calendar_human_vs_tool():
    result = apize(CALENDAR_SNIPPET, CALENDAR_PAGE)
    tool = render_unit(result.draft, result.class_name, result.javadoc)
    assert ast_diff_count(CALENDAR_HUMAN, tool) == 0


def test_ast_diff_ignores_layout_and_comments():
    a = "int f(int x) { return x + 1; }"
    b = "int   g( int x )\n{\n  // comment\n  return x+1; /* done */\n}"
    assert ast_diff_count(a, b) == 0


def test_ast_diff_is_symmetric_on_example():
    a, b = "void f() { int x = 1; a(x); }", "void f() { long x = 2; b(); }"
    assert ast_diff_count(a, b) == ast_diff_count(b, a) > 0


def test_non_method_input_is_rejected():
    with pytest.raises(ParseError):
        as_method("int a = 1;")


# ---------------------------------------------------------------- reports

# Ten hand-labelled pairs (human, tool) covering every row of the return table.
TABLE_PAIRS = [
    ("void f(int a) { g(a); }", "void f(int a) { g(a); }", VOID_VOID, True),
    ("void f() { }", "void g() { h(); }", VOID_VOID, True),
    ("void f(String s) { p(s); }", "void f(String t) { p(t); }", VOID_VOID, True),
    ("void f() { g(); }", "int f() { return g(); }", VOID_NONVOID, False),
    ("int f() { return 1; }", "void f() { }", NONVOID_VOID, False),
    ("String f(String s) { return s.trim(); }", "void f(String s) { s.trim(); }", NONVOID_VOID, False),
    ("int f(int b, int c) { int a = b + c; return a; }", "int f(int b, int c) { return b + c; }", NONVOID_NONVOID, True),
    ("java.util.Date f(Calendar c) { return c.getTime(); }", "Date f(Calendar k) { return k.getTime(); }", NONVOID_NONVOID, True),
    ("int f(String s) { return s.length(); }", "long f(String s) { return s.length(); }", NONVOID_NONVOID, False),
    ("int f(int a) { return a * 2; }", "int f(int a) { return a + a; }", NONVOID_NONVOID, False),
]


@pytest.mark.parametrize("human, tool, category, equivalent", TABLE_PAIRS)
def test_table_pairs(human, tool, category, equivalent):
    assert return_equivalence(human, tool) == (category, equivalent)


def test_table_row_structure():
    summary = summarize(evaluate_pair(h, t) for h, t, _, _ in TABLE_PAIRS)
    assert summary["pairs"] == 10
    assert summary["returns"] == {
        VOID_VOID: {"pairs": 3, "equivalent": 3},
        VOID_NONVOID: {"pairs": 1, "equivalent": 0},
        NONVOID_VOID: {"pairs": 2, "equivalent": 0},
        NONVOID_NONVOID: {"pairs": 4, "equivalent": 2},
    }
    assert summary["identical_returns"] == 5


def test_report_fields():
    r = evaluate_pair("int f(int a, int b) { return a + b; }", "int f(int a, long c) { return a + (int) c; }")
    assert (r.missing, r.common, r.spurious) == (1, 1, 1)
    assert r.jaccard == pytest.approx(2 / 3)
    assert not r.params_equivalent


SIGS = ["int a", "int b", "String s", "long n", "double d"]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(SIGS), unique=True), st.lists(st.sampled_from(SIGS), unique=True))
def test_report_arithmetic(ps, qs):
    def method(sig):
        body = " ".join(f"use({p.split()[1]});" for p in sig)
        return f"void f({', '.join(sig)}) {{ {body} }}"
    h, t = method(ps), method(qs)
    r = evaluate_pair(h, t)
    assert r.missing + r.common == len(ps)
    assert r.common + r.spurious == len(qs)
    assert r.jaccard == jaccard_distance(param_set(h), param_set(t))


BODIES = ["a();", "int x = 1;", "x = x + 1;", "if (c) { b(); }", "return;", "while (d) { e(x); }"]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(BODIES), max_size=5), st.sampled_from(["f", "g", "renamed"]))
def test_ast_diff_properties(stmts, name):
    m = "void f() { " + " ".join(stmts) + " }"
    spaced = f"void {name}()\n{{\n// note\n" + "\n".join(stmts) + "\n}"
    assert ast_diff_count(m, m) == 0
    assert ast_diff_count(m, spaced) == 0
    extra = "void f() { " + " ".join(stmts + ["z();"]) + " }"
    assert ast_diff_count(m, extra) >= 1
