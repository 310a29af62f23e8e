"""Input document format: parsing, rendering, positions of errors, modules."""

import pytest

from charmod.cmr import CmrError, InputDocument, load, parse, render
from charmod.resolution import PresentedModule


def test_fixture_round_trips(veronese_doc, e2_doc, hypersurface_doc,
                             stanley_reisner_doc):
    for doc in (veronese_doc, e2_doc, hypersurface_doc, stanley_reisner_doc):
        text = render(doc)
        again = parse(text)
        assert again == doc
        # rendering is canonical: a second pass is byte-identical
        assert render(again) == text


def test_parse_accepts_comments_and_blank_lines():
    doc = parse(
        "# a curve\n\nfield 101\nring x y  # two variables\n\n"
        "ideal\n  x^2+y^2   # one relation\nend\n")
    assert doc.p == 101
    assert doc.variables == ("x", "y")
    assert [str(g) for g in doc.ideal_gens] == ["x^2+y^2"]


def test_default_and_explicit_order():
    a = parse("field 7\nring x y\n")
    assert a.order == "grevlex"
    b = parse("field 7\nring x y\norder lex\n")
    assert b.order == "lex"
    assert a != b


def test_module_blocks(e2_doc):
    assert e2_doc.module_names() == ("Rmodx",)
    modx = e2_doc.module("Rmodx")
    assert isinstance(modx, PresentedModule)
    assert not modx.is_zero()
    # built-in names resolve without a block
    R = e2_doc.module("R")
    k = e2_doc.module("k")
    assert R.gens.twists == (0,) and not R.rels.cols
    assert k.nu() == 1
    with pytest.raises(KeyError):
        e2_doc.module("nope")


def test_module_block_shadowing():
    doc = parse("field 7\nring x y\nideal\nx^2\nend\n"
                "module k twists 1\n[ x*y ]\nend\n")
    # a document block named k overrides the built-in residue field
    k = doc.module("k")
    assert k.gens.twists == (1,)


def test_parse_error_positions():
    cases = [
        ("field 6\nring x y\n", 1, 7, "not prime"),
        ("field 7\nring x x\n", 2, 1, "duplicate variable"),
        ("field 7\nring x y\nideal\nx^2+y\nend\n", 4, 1, "inhomogeneous"),
        ("field 7\nring x y\nideal\nx^2\n", 4, 1, "not terminated"),
        ("field 7\nring x y\nmodule M twists 0,1\n[ x ]\nend\n", 4, 2,
         "row has 1 entries"),
        ("field 7\nring x y\nfield 7\n", 3, 1, "duplicate 'field'"),
        ("field 7\nring x y\nideal\nx^2\nend\norder lex\n", 6, 1,
         "'order' must come before"),
        ("bogus 3\n", 1, 1, "unknown directive"),
        ("field 7\nring x y\nmodule M twists a\nend\n", 3, 1, "bad twist"),
        ("ideal\nx\nend\n", 1, 1, ""),
    ]
    for text, line, col, frag in cases:
        with pytest.raises(CmrError) as exc:
            parse(text)
        msg = str(exc.value)
        assert msg.startswith(f"line {line}, col {col}:"), (text, msg)
        assert frag in msg


def test_parse_error_column_rebased_into_line():
    with pytest.raises(CmrError) as exc:
        parse("field 7\nring x y\nideal\nx^2+q^2\nend\n")
    assert str(exc.value).startswith("line 4, col 5:")
    assert "unknown variable 'q'" in str(exc.value)


def test_inhomogeneous_module_row_rejected():
    with pytest.raises(CmrError) as exc:
        parse("field 7\nring x y\nmodule M twists 0,1\n[ x , x ]\nend\n")
    assert "not homogeneous" in str(exc.value)


def test_quotient_and_ring_are_cached(e2_doc):
    assert e2_doc.quotient() is e2_doc.quotient()
    assert e2_doc.ring() is e2_doc.ring()
    R = e2_doc.quotient()
    assert [str(g) for g in R.ideal_gb_polys()] == ["x^2", "x*y"]


def test_load_matches_parse(tmp_path, e2_doc):
    path = tmp_path / "doc.cmr"
    path.write_text(render(e2_doc))
    assert load(path) == e2_doc


def test_empty_ideal_document():
    doc = parse("field 13\nring x y z\n")
    assert doc.ideal_gens == ()
    R = doc.quotient()
    assert R.is_polynomial_ring()


def test_render_normalizes_formatting():
    doc = parse("field  7\nring   x   y\nideal\n  2*x^2  +  3*y^2\nend\n")
    text = render(doc)
    assert "2*x^2+3*y^2" in text
    assert parse(text) == doc
