import random

import pytest
from hypothesis import given, settings, strategies as st

from apizer.apize import (
    apize, extract_parameters_p1, extract_parameters_p2, extract_return, get_loop_changing_vars,
    is_hard_coded, strip_leading_literal,
)
from apizer.model import ALREADY_API, APIZED, FAILED, SKIPPED, ApiDraft, ResolutionState, ScopeState
from apizer.naming import SoPage
from apizer.resolver import Untypeable, analyze
from apizer.syntax import parse_expression, parse_snippet
from apizer.syntax.nodes import Return, TypeRef
from apizer.syntax.printer import render_expr, render_statements
from apizer.units import check_draft, render_unit
from corpus import loop_snippet, straight_line_snippet
from golden import CALENDAR_PAGE, CALENDAR_SNIPPET, COUNT_SNIPPET, DIGEST_SNIPPET


def draft_of(src, **kw):
    return ApiDraft(body=parse_snippet(src).statements, **kw)


def params(draft):
    return [(p.type.name + "[]" * p.type.dims, p.name) for p in draft.params]


def body_text(draft):
    return render_statements(draft.body)


# ---------------------------------------------------------------- loop vars


def test_loop_vars_count_matches():
    assert get_loop_changing_vars(parse_snippet(COUNT_SNIPPET)) == {"lastIndex", "count"}


def test_loop_vars_empty():
    assert get_loop_changing_vars(()) == set()


def test_loop_vars_increment():
    assert get_loop_changing_vars(parse_snippet("while(i<10){i++;}")) == {"i"}


def test_loop_vars_nested_and_headers():
    src = "for (int i = 0; i < n; i++, j--) { if (x) { do { a[k] = 1; } while (b); } }\nc = 1;"
    assert get_loop_changing_vars(parse_snippet(src)) == {"i", "j", "a"}


def test_loop_vars_outside_loops_ignored():
    assert get_loop_changing_vars(parse_snippet("a = 1; b++; for (String s : xs) { t += s; }")) == {"t"}


# ---------------------------------------------------------------- hard-coded values


def _initializer(tau, eps):
    if not eps.startswith("{"):
        return parse_expression(eps)
    decl = parse_snippet(f"{tau.name}{'[]' * tau.dims} v = {eps};").statements[0]
    return decl.declarators[0].init


def hc(tau, eps, following="", var=None):
    return is_hard_coded(
        tau, _initializer(tau, eps), parse_snippet(following).statements if following else (),
        var=var, state=ResolutionState().with_import("java.util.List").with_import("java.util.ArrayList")
        .with_import("java.util.Map").with_import("java.util.HashMap"),
    )


@pytest.mark.parametrize("tau, eps, expected", [
    (TypeRef("String"), '"hello"', True),
    (TypeRef("String"), '"hello" + a', False),
    (TypeRef("int"), "3", True),
    (TypeRef("int"), "3 + 4 * 2", True),
    (TypeRef("int"), "-1", True),
    (TypeRef("int"), "x", False),
    (TypeRef("int"), "Integer.MAX_VALUE", False),
    (TypeRef("int"), "foo()", False),
    (TypeRef("String"), "null", False),
    (TypeRef("double"), "(double) 3", True),
    (TypeRef("Integer"), "5", True),
    (TypeRef("int", dims=1), "{1, 2, 3}", True),
    (TypeRef("int", dims=1), "new int[] {1, 2}", True),
    (TypeRef("int", dims=1), "{1, x}", False),
    (TypeRef("int", dims=2), "{{1}, {2, 3}}", True),
])
def test_is_hard_coded_values(tau, eps, expected):
    assert hc(tau, eps) is expected


def test_collection_with_one_insertion_is_not_hard_coded():
    assert not hc(TypeRef("List"), "new ArrayList()", 'xs.add("a");', var="xs")


def test_collection_with_two_insertions_is_hard_coded():
    assert hc(TypeRef("List"), "new ArrayList()", 'xs.add("a"); xs.add("b");', var="xs")


def test_collection_insertions_must_be_hard_coded():
    assert not hc(TypeRef("List"), "new ArrayList()", 'xs.add("a"); xs.add(y);', var="xs")


def test_map_with_puts_is_hard_coded():
    assert hc(TypeRef("Map"), "new HashMap()", 'm.put("a", 1); m.put("b", 2);', var="m")


def test_array_element_stores_count_as_insertions():
    assert hc(TypeRef("int", dims=1), "new int[2]", "a[0] = 1; a[1] = 2;", var="a")
    assert not hc(TypeRef("int", dims=1), "new int[2]", "a[0] = 1;", var="a")


def test_non_collection_object_is_not_hard_coded():
    assert not hc(TypeRef("StringBuilder"), "new StringBuilder()", "sb.append(1); sb.append(2);", var="sb")


# ---------------------------------------------------------------- P1


def test_p1_digest_extracts_tag_xml(catalog):
    state = ResolutionState()
    for q in ("java.security.MessageDigest", "java.security.NoSuchAlgorithmException", "java.math.BigInteger"):
        state = state.with_import(q)
    draft = draft_of(DIGEST_SNIPPET, resolution=state)
    out, scope = extract_parameters_p1(draft, ScopeState(), catalog)
    assert params(out) == [("String", "tag_xml")]
    assert out.body == draft.body


def test_p1_without_undeclared_is_identity(catalog):
    draft = draft_of("int a = 5;")
    out, _ = extract_parameters_p1(draft, ScopeState(), catalog)
    assert out == draft


def test_p1_two_variables_in_diagnostic_order(catalog):
    # hand trace: diagnostics are sorted by statement then identifier, giving
    # name (statement 0) before count (statement 1)
    draft = draft_of("String upper = name.toUpperCase();\nint twice = count * 2;")
    out, scope = extract_parameters_p1(draft, ScopeState(), catalog)
    assert params(out) == [("String", "name"), ("int", "count")]
    assert analyze(out, out.resolution, catalog) == []
    assert set(scope.types) == {"name", "count"}


# ---------------------------------------------------------------- P2


def test_p2_count_matches(catalog):
    out, scope = extract_parameters_p2(draft_of(COUNT_SNIPPET), ScopeState(), catalog)
    assert params(out) == [("String", "str"), ("String", "findStr")]
    assert scope.lp_vars == {"lastIndex", "count"}
    assert "int lastIndex = 0;" in body_text(out) and "int count = 0;" in body_text(out)
    assert 'String str' not in body_text(out)


def test_p2_calendar_removes_hard_coded_declarations(catalog):
    state = ResolutionState().with_import("java.util.Calendar").with_import("java.util.Date")
    out, _ = extract_parameters_p2(draft_of(CALENDAR_SNIPPET, resolution=state), ScopeState(), catalog)
    assert params(out) == [("int", "week"), ("int", "year")]
    assert "int week = 3;" not in body_text(out)


def test_p2_declaration_with_computed_value_is_kept(catalog):
    draft = draft_of("int x; x = compute(); int y = x;")
    out, _ = extract_parameters_p2(draft, ScopeState(), catalog)
    assert out.params == ()


def test_p2_separate_declaration_and_assignment(catalog):
    draft = draft_of("int x;\nx = 5;\nint y = x * 2;")
    out, _ = extract_parameters_p2(draft, ScopeState(), catalog)
    assert params(out) == [("int", "x")]
    assert body_text(out) == "int y = x * 2;\n"


def test_p2_only_first_assignment_counts(catalog):
    draft = draft_of("int x = compute(); x = 5; int y = x;")
    out, _ = extract_parameters_p2(draft, ScopeState(), catalog)
    assert out.params == ()


def test_p2_multi_declarator(catalog):
    out, _ = extract_parameters_p2(draft_of("int a = 1, b = c; int d = a + b;"), ScopeState(), catalog)
    assert params(out) == [("int", "a")]
    assert body_text(out).splitlines()[0] == "int b = c;"


def test_p2_skips_unread_variables(catalog):
    out, _ = extract_parameters_p2(draft_of("int a = 1; int b = 2; System.out.println(b);"), ScopeState(), catalog)
    assert params(out) == [("int", "b")]


def test_p2_scans_top_level_only(catalog):
    out, _ = extract_parameters_p2(draft_of("if (true) { int a = 1; foo(a); }"), ScopeState(), catalog)
    assert out.params == ()


# ---------------------------------------------------------------- P3 / P4


def test_p3_calendar_assignment(catalog):
    state = ResolutionState().with_import("java.util.Calendar").with_import("java.util.Date")
    draft = draft_of("Calendar calendar = Calendar.getInstance(); Date date = calendar.getTime();", resolution=state)
    out = extract_return(draft, ScopeState(), catalog)
    assert out.return_type == TypeRef("Date")
    assert body_text(out).splitlines()[-1] == "return calendar.getTime();"


def test_p4_count_matches_println(catalog):
    draft, scope = extract_parameters_p2(draft_of(COUNT_SNIPPET), ScopeState(), catalog)
    out = extract_return(draft, scope, catalog)
    assert out.return_type == TypeRef("int")
    assert body_text(out).splitlines()[-1] == "return count;"


def test_p4_strips_leading_literal(catalog):
    draft = draft_of('String s = "x"; System.out.println("result :" + s);')
    out = extract_return(draft, ScopeState(), catalog)
    assert body_text(out).splitlines()[-1] == "return s;"
    assert out.return_type.name == "java.lang.String" or out.return_type.name == "String"


@pytest.mark.parametrize("src, expected", [
    ('"a" + x + "b"', 'x + "b"'),
    ('"a" + x', "x"),
    ("x + y", "x + y"),
    ('x + "a"', 'x + "a"'),
])
def test_strip_leading_literal_first_only(src, expected):
    assert render_expr(strip_leading_literal(parse_expression(src))) == expected


def test_bare_call_leaves_void(catalog):
    draft = draft_of("int a = 1; System.gc();")
    out = extract_return(draft, ScopeState(), catalog)
    assert out.is_void and out.body == draft.body


def test_println_of_literal_only_is_void(catalog):
    draft = draft_of('System.out.println("done");')
    assert extract_return(draft, ScopeState(), catalog).is_void


def test_p3_inside_trailing_try(catalog):
    state = ResolutionState().with_import("java.io.File")
    draft = draft_of('try { File f = new File("x"); String p = f.getPath(); } catch (Exception e) { }', resolution=state)
    out = extract_return(draft, ScopeState(), catalog)
    assert out.return_type == TypeRef("String")
    try_stmt = out.body[-1]
    assert isinstance(try_stmt.body.stmts[-1], Return)


def test_p3_trailing_try_returns_outer_variable(catalog):
    draft = draft_of('String p = null;\ntry { p = "x".trim(); } catch (Exception e) { }')
    out = extract_return(draft, ScopeState(), catalog)
    assert out.return_type == TypeRef("String")
    assert body_text(out).splitlines()[-1] == "return p;"
    assert 'p = "x".trim();' in body_text(out)


def test_p3_array_initializer_becomes_array_creation(catalog):
    draft = draft_of("int[] xs = {1, 2};")
    out = extract_return(draft, ScopeState(), catalog)
    assert body_text(out) == "return new int[]{1, 2};\n"


def test_untypeable_println(catalog):
    draft = draft_of("System.out.println(System.out.println(1));")
    with pytest.raises(Untypeable):
        extract_return(draft, ScopeState(), catalog)


# ---------------------------------------------------------------- pipeline


def test_apize_calendar(catalog):
    result = apize(CALENDAR_SNIPPET, CALENDAR_PAGE, catalog)
    assert result.outcome == APIZED
    d = result.draft
    assert params(d) == [("int", "week"), ("int", "year")]
    assert d.return_type == TypeRef("Date")
    assert body_text(d).splitlines()[-1] == "return calendar.getTime();"
    assert d.resolution.imports == ("java.util.Calendar", "java.util.Date")
    assert d.name.startswith("get")
    assert d.modifiers == ("public", "static")
    assert d.throws == (TypeRef("Exception"),)


def test_apize_already_api_keeps_body(catalog):
    src = "public static int id(int x){return x;}"
    result = apize(src, SoPage(answer_id=5), catalog)
    assert result.outcome == ALREADY_API
    assert result.draft.body == parse_snippet(src).methods[0].body.stmts
    assert result.draft.name == "id"


def test_apize_two_classes_skipped(catalog):
    result = apize("class A {} class B {}", SoPage(), catalog)
    assert result.outcome == SKIPPED and result.reason == "ambiguous"


@pytest.mark.parametrize("src, reason", [
    ("Zorble z = new Zorble();", "unresolvable: Zorble"),
    ("foo(1);", "other: foo"),
    ("int a = ;", "parse"),
    ("int a = 1; void f() { }", "unsupported"),
])
def test_apize_failures(catalog, src, reason):
    result = apize(src, SoPage(), catalog)
    assert result.outcome == FAILED
    assert result.reason.startswith(reason)


def test_apize_budget(catalog):
    src = "\n".join(f"String s{i} = v{i}.toString();" for i in range(300))
    result = apize(src, SoPage(), catalog, budget=0.2)
    assert result.outcome == FAILED and result.reason == "budget"
    assert result.elapsed < 1.0


def test_apize_dangling_method_keeps_referenced_params(catalog):
    result = apize("public int twice(int x, int unused) { return x * 2; }", SoPage(answer_id=4), catalog)
    assert result.outcome == APIZED
    assert params(result.draft) == [("int", "x")]
    assert result.draft.return_type == TypeRef("int")
    assert result.draft.name == "twice"


def test_apize_existing_return_is_typed(catalog):
    result = apize('String s = "a"; return s.length();', SoPage(), catalog)
    assert result.outcome == APIZED
    assert result.draft.return_type == TypeRef("int")


def test_apize_snippet_imports_are_kept(catalog):
    result = apize("import java.util.*;\nList<String> xs = new ArrayList<>(); xs.add(y);", SoPage(), catalog)
    assert result.outcome == APIZED
    assert result.draft.resolution.imports == ("java.util.*",)


def test_apize_static_import(catalog):
    result = apize("import static java.lang.Math.max;\nint a = max(b, 2);", SoPage(), catalog)
    assert result.ok
    assert "import static java.lang.Math.max;" in render_unit(result.draft, result.class_name)


def test_apize_unused_added_imports_are_pruned(catalog):
    result = apize('List<String> xs = new ArrayList<>(); xs.add("a"); xs.add("b"); Collections.sort(xs);', SoPage(), catalog)
    assert result.outcome == APIZED
    assert "java.util.ArrayList" not in result.draft.resolution.imports


def test_statement_preservation(catalog):
    src = "int a = 3;\nint b = a + k;\nSystem.gc();\nString s = \"v\" + b;\nSystem.out.println(s);"
    result = apize(src, SoPage(), catalog)
    assert result.outcome == APIZED
    original = [render_statements((s,)) for s in parse_snippet(src).statements]
    kept = [render_statements((s,)) for s in result.draft.body]
    # removals are P2 declarations; only the last statement is replaced
    assert kept[:-1] == [s for s in original[:-1] if not s.startswith("int a = 3")]
    assert kept[-1] == "return s;\n"


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_p2_exclusion_property(catalog, seed):
    src, var = loop_snippet(random.Random(seed), catalog)
    result = apize(src, SoPage(), catalog)
    assert result.outcome == APIZED
    assert var not in result.draft.param_names


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_well_formedness_property(catalog, seed):
    result = apize(straight_line_snippet(random.Random(seed), catalog), SoPage(), catalog)
    assert result.outcome == APIZED
    assert analyze(result.draft, result.draft.resolution, catalog) == []
    assert check_draft(result.draft) == []
