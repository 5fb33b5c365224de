import io

import pytest

from hypersym.catalog import (CATALOG_ENV, find_entry, generate_builtin_entries, load_catalog,
                              parse_catalog, render_catalog, builtin_catalog_text)
from hypersym.errors import CatalogError


NAMED_IN_REMARKS = {"F20": 20, "PGL(2,5)": 120, "PGL(2,8)": 504, "PGammaL(2,8)": 1512,
                    "F21": 21, "F42": 42, "PGL(3,2)": 168}


def test_builtin_contains_named_groups():
    entries = load_catalog()
    for name, order in NAMED_IN_REMARKS.items():
        assert find_entry(entries, name).order == order


def test_builtin_file_is_regenerable():
    assert render_catalog(generate_builtin_entries()) == builtin_catalog_text()


def test_degrees_span_five_to_thirteen():
    degrees = {e.degree for e in load_catalog()}
    assert degrees == set(range(5, 14))


def test_empty_catalog():
    assert parse_catalog("") == []
    assert load_catalog(io.StringIO("# only a comment\n\n")) == []


def test_round_trip_lines():
    entries = load_catalog()
    again = parse_catalog("".join(e.to_line() + "\n" for e in entries))
    assert [(e.name, e.order) for e in again] == [(e.name, e.order) for e in entries]


def test_generator_outside_degree_is_rejected():
    with pytest.raises(CatalogError, match="line 2"):
        parse_catalog("# x\nbad\t4\ttransitive\t(1 2 3 4 5)\n")


@pytest.mark.parametrize("line,msg", [
    ("X\t5\torder=6\t(1 2 3 4 5)", "order"),
    ("X\t6\ttransitive\t(1 2 3 4 5)", "transitive"),
    ("X\t6\tprimitive\t(1 2 3 4 5 6)", "block"),
    ("X\t5\tset-transitive\t(1 2 3 4 5)", "set-transitive"),
    ("X\t5\tsymmetric\t(1 2 3 4 5)", "symmetric"),
    ("X\tfive\t\t(1 2)", "integer"),
    ("X\t5\t(1 2)", "4 tab-separated"),
])
def test_validation_errors(line, msg):
    with pytest.raises(CatalogError, match=msg):
        parse_catalog(line + "\n")


def test_env_var_selects_file(tmp_path, monkeypatch):
    path = tmp_path / "mini.tsv"
    path.write_text("Z3\t3\ttransitive,order=3\t(1 2 3)\n")
    monkeypatch.setenv(CATALOG_ENV, str(path))
    entries = load_catalog()
    assert [e.name for e in entries] == ["Z3"]
    assert len(load_catalog("builtin")) > 40


def test_unknown_name():
    with pytest.raises(KeyError):
        find_entry(load_catalog(), "M11")
