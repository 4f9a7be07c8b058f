import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from apizer.catalog import (
    MethodSig, SchemaError, UnknownType, bundled_catalog_path, is_subtype_of, load_catalog,
    lookup_simple_name, member_return_type, parse_catalog,
)

ROOT = Path(__file__).resolve().parents[1]


def _record(name, package="p", supertypes=(), methods=(), fields=(), **extra):
    rec = {
        "name": name, "package": package, "library": "lib", "supertypes": list(supertypes),
        "primitive": False, "methods": list(methods), "fields": list(fields),
    }
    rec.update(extra)
    return json.dumps(rec)


def test_bundled_catalog_has_string_get_bytes(catalog):
    entry = catalog.entry("java.lang.String")
    assert MethodSig("getBytes", (), "byte[]") in entry.methods
    assert entry.auto_imported
    assert not catalog.entry("java.util.Date").auto_imported


def test_load_catalog_from_path():
    loaded = load_catalog(bundled_catalog_path())
    assert "java.security.MessageDigest" in loaded
    assert loaded == load_catalog(bundled_catalog_path())


def test_empty_file_is_rejected(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    with pytest.raises(SchemaError):
        load_catalog(path)


def test_duplicate_name_is_rejected():
    text = _record("p.A") + "\n" + _record("p.A")
    with pytest.raises(SchemaError) as info:
        parse_catalog(text)
    assert info.value.line == 2


@pytest.mark.parametrize("text", [
    "not json",
    json.dumps([1, 2]),
    json.dumps({"name": "p.A"}),
    _record("p.A", package="q"),
    _record("p.A", supertypes=["p.Missing"]),
    _record("p.A", methods=[{"name": "f", "params": ["int"], "returns": "int"},
                            {"name": "f", "params": ["int"], "returns": "long"}]),
    _record("p.A", methods=[{"name": "f", "params": "int", "returns": "int"}]),
    _record("p.A", fields=["x"]),
])
def test_malformed_records_are_rejected(text):
    with pytest.raises(SchemaError):
        parse_catalog(text)


def test_supertype_cycle_is_rejected():
    text = "\n".join([_record("p.A", supertypes=["p.B"]), _record("p.B", supertypes=["p.A"])])
    with pytest.raises(SchemaError):
        parse_catalog(text)


def test_error_carries_offending_record():
    bad = _record("p.A", package="q")
    with pytest.raises(SchemaError) as info:
        parse_catalog(bad)
    assert info.value.record["name"] == "p.A"


@pytest.mark.parametrize("simple, expected", [
    ("MessageDigest", ("java.security.MessageDigest",)),
    ("String", ("java.lang.String",)),
    ("Zorble", ()),
    ("Date", ("java.sql.Date", "java.util.Date")),
])
def test_lookup_simple_name(catalog, simple, expected):
    assert lookup_simple_name(catalog, simple) == expected


@pytest.mark.parametrize("t, sup, expected", [
    ("java.util.ArrayList", "java.util.Collection", True),
    ("java.lang.String", "java.util.Collection", False),
    ("java.util.HashMap", "java.util.Map", True),
    ("java.lang.String", "java.lang.CharSequence", True),
    ("java.io.FileNotFoundException", "java.lang.Exception", True),
    ("int[]", "java.lang.Object", True),
    ("java.lang.String[]", "java.lang.Object[]", True),
])
def test_is_subtype_of(catalog, t, sup, expected):
    assert is_subtype_of(catalog, t, sup) is expected


def test_subtype_of_unknown_type_raises(catalog):
    with pytest.raises(UnknownType):
        is_subtype_of(catalog, "p.Nope", "java.lang.Object")


@pytest.mark.parametrize("receiver, method, arity, expected", [
    ("java.lang.String", "getBytes", 0, {"byte[]"}),
    ("java.util.Calendar", "getTime", 0, {"java.util.Date"}),
    ("java.lang.String", "noSuchMethod", 0, set()),
    ("java.util.ArrayList", "size", 0, {"int"}),
    ("java.util.ArrayList", "get", 1, {"java.lang.Object"}),
])
def test_member_return_type(catalog, receiver, method, arity, expected):
    assert member_return_type(catalog, receiver, method, arity) == expected


def test_member_return_type_unknown_receiver(catalog):
    with pytest.raises(UnknownType):
        member_return_type(catalog, "p.Nope", "f", 0)


def test_constructors_are_not_inherited(catalog):
    assert catalog.constructors("java.util.ArrayList")
    assert all(owner == "java.util.ArrayList" for owner, _ in catalog.methods("java.util.ArrayList", "<init>"))


def test_array_members(catalog):
    assert catalog.field("int[]", "length")[1].type == "int"
    assert catalog.field("java.util.Calendar", "YEAR")[1].static
    assert catalog.member_return_type("java.lang.String[]", "clone", 0) == {"java.lang.String[]"}


def test_index_completeness(catalog):
    for entry in catalog:
        assert entry.name in catalog.lookup_simple_name(entry.simple)


def test_subtyping_is_reflexive_and_transitive(catalog):
    names = [e.name for e in catalog if not e.primitive]
    for t in names:
        assert catalog.is_subtype_of(t, t)
        for mid in catalog.ancestors(t):
            for top in catalog.ancestors(mid):
                assert catalog.is_subtype_of(t, top)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_ancestor_closure_property(catalog, data):
    names = [e.name for e in catalog if not e.primitive]
    a = data.draw(st.sampled_from(names))
    b = data.draw(st.sampled_from(names))
    assert catalog.is_subtype_of(a, b) == (b in catalog.ancestors(a))
    if catalog.is_subtype_of(a, b) and catalog.is_subtype_of(b, a):
        assert a == b


def test_bundled_catalog_matches_its_source(tmp_path):
    out = tmp_path / "catalog.jsonl"
    subprocess.run(
        [sys.executable, str(ROOT / "scripts" / "build_catalog.py"),
         "--source", str(ROOT / "scripts" / "catalog_source.txt"), "--out", str(out)],
        check=True,
    )
    assert out.read_text() == bundled_catalog_path().read_text()


def test_required_packages_are_covered(catalog):
    for pkg in ("java.lang", "java.util", "java.io", "java.security", "java.text"):
        assert catalog.package_members(pkg)
