import pytest
from hypothesis import given
from hypothesis import strategies as st

from wfrefine import corpus
from wfrefine.andor import expand
from wfrefine.generate import random_and_or, random_workflow
from wfrefine.net import InvalidWorkflowNet, Kind
from wfrefine.refine import structurally_equal
from wfrefine.textio import (
    ParseError,
    parse_net_text,
    parse_refinement,
    read_net_text,
    read_refinement,
    write_net_text,
    write_refinement,
)

SINGLE = "net single_place\nkind place\nplace p\ninput p\noutput p\n"


def test_minimal_document_round_trips():
    wf = parse_net_text(SINGLE)
    assert wf == corpus.single_place()
    assert write_net_text(wf) == SINGLE


def test_comments_and_blank_lines():
    text = "# a comment\n\nplace p   # trailing\ninput p\noutput p\n"
    wf = parse_net_text(text)
    assert wf.places == {"p"} and wf.kind is Kind.PLACE and wf.name == ""


def test_fig7_file(fixtures_dir):
    assert read_net_text(fixtures_dir / "fig7_N.net") == corpus.fig7_N()


def test_undefined_arc_endpoint():
    text = "place p\ntrans t\narc x t\ninput p\noutput p\n"
    with pytest.raises(ParseError) as err:
        parse_net_text(text, source="bad.net")
    assert err.value.line == 3
    assert "'x'" in str(err.value) and "bad.net:3:" in str(err.value)


@pytest.mark.parametrize("text, line, fragment", [
    ("place p\nfoo p\n", 2, "unknown directive"),
    ("place p\nplace p\n", 2, "declared twice"),
    ("kind maybe\n", 1, "kind place"),
    ("place p\nplace q\narc p q\n", 3, "two places"),
    ("net a b\n", 1, "net <name>"),
    ("place p\ntrans t\narc p t\narc p t\n", 4, "duplicate arc"),
    ("place p\ninput q\n", 2, "undeclared node 'q'"),
    ("place p\ninput\n", 2, "input <id>+"),
])
def test_parse_errors_are_line_numbered(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse_net_text(text)
    assert err.value.line == line
    assert fragment in str(err.value)


def test_missing_border_declarations():
    with pytest.raises(ParseError, match="input"):
        parse_net_text("place p\noutput p\n")
    with pytest.raises(ParseError, match="output"):
        parse_net_text("place p\ninput p\n")


def test_violations_surface_node_names():
    with pytest.raises(InvalidWorkflowNet) as err:
        parse_net_text("place p\nplace z\ninput p\noutput p\n", source="x.net")
    assert any("'z'" in v for v in err.value.violations)
    assert str(err.value).startswith("x.net: ")


def test_writer_is_sorted_and_canonical():
    text = write_net_text(corpus.fig7_N())
    assert text.splitlines() == [
        "net fig7_N", "kind place", "place a", "place b", "place c", "trans A", "trans B",
        "arc A b", "arc A c", "arc B c", "arc a A", "arc b B", "arc c B", "input a", "output c",
    ]


@given(st.sampled_from(list(Kind)), st.integers(1, 12), st.integers(0, 10**6))
def test_round_trip_random(kind, size, seed):
    wf = random_workflow(kind, size, seed)
    text = write_net_text(wf)
    again = parse_net_text(text)
    assert again == wf
    assert write_net_text(again) == text


def test_script_without_refinements(tmp_path):
    (tmp_path / "p.net").write_text(SINGLE)
    tree = parse_refinement("base p.net\n", base_dir=tmp_path)
    assert tree.refinements == () and tree.base == corpus.single_place()


def test_thm2_script_expands_to_target(fixtures_dir):
    tree = read_refinement(fixtures_dir / "thm2_roundtrip" / "tor_plus_pand.ref")
    assert structurally_equal(expand(tree), corpus.thm2_target())


def test_inline_script(fixtures_dir):
    tree = read_refinement(fixtures_dir / "thm3_fig15b.ref")
    assert tree == corpus.thm3_fig15b_tree()


def test_kind_mismatch_reported_before_expansion():
    script = """base {
  place i
  trans t
  place o
  arc i t
  arc t o
  input i
  output o
}
refine i {
  base {
    trans u
    input u
    output u
  }
}
"""
    with pytest.raises(ParseError) as err:
        parse_refinement(script)
    assert "kind mismatch" in str(err.value) and err.value.line == 10


def test_unknown_node_in_script():
    script = "base {\nplace p\ninput p\noutput p\n}\nrefine q {\n base {\n place r\n input r\n output r\n }\n}\n"
    with pytest.raises(ParseError) as err:
        parse_refinement(script)
    assert "unknown node 'q'" in str(err.value) and err.value.line == 6


def test_script_syntax_errors():
    with pytest.raises(ParseError, match="empty"):
        parse_refinement("# nothing\n")
    with pytest.raises(ParseError, match="expected 'base'"):
        parse_refinement("refine p { }\n")
    with pytest.raises(ParseError, match="end of script"):
        parse_refinement("base {\nplace p\n")
    with pytest.raises(ParseError, match="cannot read"):
        parse_refinement("base missing.net\n")


def test_inline_net_errors_keep_script_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_refinement("base {\nplace p\nbogus\n}\n")
    assert err.value.line == 3


@given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 10**6))
def test_written_scripts_parse_back(depth, size, seed):
    tree, wf = random_and_or(depth, size, seed)
    again = parse_refinement(write_refinement(tree))
    assert again == tree
    assert expand(again) == wf
