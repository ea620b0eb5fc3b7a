"""Session DSL: parsing, errors, execution, round trips."""

from __future__ import annotations

import pytest

from tensorcoh.session import ScriptError, Session, parse, run_script

GOOD = """\
ring S = poly(p=32003, vars=[x,y])
module mm = ideal (x, y) in S
h (mm⊗mm) 0
"""


def test_parse_statement_count():
    script = parse(GOOD)
    assert len(script.statements) == 3


def test_round_trip_identity():
    script = parse(GOOD)
    once = script.pretty()
    assert parse(once).pretty() == once


def test_comments_and_blank_lines():
    script = parse("# comment\n\n" + GOOD)
    assert len(script.statements) == 3


def test_syntax_error_has_location():
    with pytest.raises(ScriptError) as exc:
        parse("ring S = poly(p=32003 vars=[x])")
    assert exc.value.line == 1


def test_inhomogeneous_entry_rejected():
    text = ("ring S = poly(p=32003, vars=[x,y])\n"
            "module M = coker S [[x + 1]]\n")
    with pytest.raises(ScriptError):
        run_script(text)


def test_undefined_name():
    with pytest.raises(ScriptError) as exc:
        run_script("ring S = poly(p=32003, vars=[x,y])\ninvariants M\n")
    assert "undefined" in str(exc.value)


def test_duplicate_name():
    text = ("ring S = poly(p=32003, vars=[x,y])\n"
            "ring S = poly(p=32003, vars=[x,y])\n")
    with pytest.raises(ScriptError):
        run_script(text)


def test_h_command_values():
    outs = run_script(GOOD)
    assert outs[0]["values"] == [1]


def test_module_expressions_dual_and_tensor():
    text = ("ring S = poly(p=32003, vars=[x,y,z])\n"
            "module M = ideal (x, y, z) in S\n"
            "h (M⊗M*) 0..1\n")
    outs = run_script(text)
    assert len(outs[0]["values"]) == 2


def test_implicit_irrelevant_ideal():
    outs = run_script("ring S = poly(p=32003, vars=[x,y])\nh (m⊗m) 0\n")
    assert outs[0]["values"] == [1]


def test_field_char_override():
    outs = run_script("ring S = poly(p=32003, vars=[x,y])\nh (m⊗m) 0\n",
                      field_char=101)
    assert outs[0]["values"] == [1]


def test_check_command_with_r_and_ideal():
    text = ("ring S = poly(p=32003, vars=[x,y,z])\n"
            "ideal J = (x, y) in S\n"
            "module Z = coker S [[x], [y], [z]] twists [2,2,2] -> [3]\n"
            "check g-vanish Z Z r=0\n"
            "check gor-ht2 J\n")
    outs = run_script(text)
    assert outs[0]["report"]["verdict"] == "holds"
    assert outs[1]["report"]["verdict"] == "holds"


def test_resolve_command():
    text = ("ring S = poly(p=32003, vars=[x,y])\n"
            "module M = ideal (x, y) in S\n"
            "resolve M bound 3\n")
    outs = run_script(text)
    assert outs[0]["pd"] == 1


def test_pretty_round_trip_on_fixture_corpus():
    from tensorcoh import corpus
    for fid in corpus.list_fixture_ids():
        fx = corpus.load_fixture(fid)
        text = "\n".join(fx["script"])
        once = parse(text).pretty()
        assert parse(once).pretty() == once, fid
