from __future__ import annotations

import io
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfact import cli
from hopfact.cli import Block, ParseError, Section, SpecFile, main, parse_spec, render_spec
from hopfact.families import nichols, sweedler
from hopfact.oracle import verify_derived_example
from hopfact.scalar import root_of_unity


def run(argv: list[str]) -> tuple[int, str]:
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.mark.parametrize("tag", [
    "cli-corrupted-tensor", "cli-extend-valid", "cli-extend-noncentral", "cli-classify-taft", "cli-classify-radford",
    "selftest-mutated", "selftest-fresh",
])
def test_derived_examples(tag):
    assert verify_derived_example(tag)


def test_validate_fixture(fixture_path):
    code, text = run(["validate", fixture_path("sweedler.txt")])
    assert code == 0 and text.endswith("result: pass\n")


def test_validate_corrupted(fixture_path):
    code, text = run(["validate", fixture_path("corrupted.txt")])
    assert code == 1
    assert "hopf H4: FAIL" in text and "witness (0, 0, 0)" in text


def test_validate_algebra_file(fixture_path):
    assert run(["validate", fixture_path("k2.txt")])[0] == 0


def test_missing_file():
    code, text = run(["validate", "/nonexistent/spec.txt"])
    assert code == 2 and text.startswith("error:")


def test_noncentral_omega_is_a_failure(tmp_path, fixture_path):
    text = open(fixture_path("sweedler.txt")).read().replace("omega: 0 1 0 0", "omega: 1 0 0 0")
    p = tmp_path / "bad.txt"
    p.write_text(text)
    code, out = run(["validate", str(p)])
    assert code == 1 and "action A: FAIL" in out


def test_parse_error_has_a_line_number(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("algebra K:\n  labels: a\n  mult:\n    0 0 -> oops\n")
    code, out = run(["validate", str(p)])
    assert code == 2 and "line 4" in out


def test_extend_valid(fixture_path):
    code, text = run(["extend", fixture_path("extend_sweedler.txt")])
    assert code == 0
    assert "status: both hold" in text and "preconditions: g.1 = 0 pass, delta = 0 pass" in text


def test_extend_noncentral(fixture_path):
    code, text = run(["extend", fixture_path("extend_sweedler.txt"), "--w", "1,0,0,0"])
    assert code == 1 and "witness" in text


def test_extend_cap_zero(fixture_path):
    code, text = run(["extend", fixture_path("extend_sweedler.txt"), "--cap", "0"])
    assert code == 0 and "result: pass" in text


def test_classify_to_file(tmp_path):
    out = tmp_path / "cert.txt"
    code, text = run(["classify", "--family", "taft(2,2,q2)", "--target", "k2", "--out", str(out)])
    assert code == 0 and "result: match" in text
    assert "schema: 1" in out.read_text()


def test_classify_target_file(fixture_path):
    code, _ = run(["classify", "--family", "radford(2,2,q2)", "--target", fixture_path("k2.txt")])
    assert code == 0


def test_unknown_family_is_a_usage_error():
    assert run(["classify", "--family", "nosuch(2)", "--target", "k2"])[0] == 2


def test_missing_arguments_are_usage_errors():
    assert run(["classify"])[0] == 2
    assert run([])[0] == 2


def test_selftest_filter_runs_one_group():
    code, text = run(["selftest", "--filter", "qcomb"])
    assert code == 0
    assert [line.split()[2] for line in text.splitlines() if "criterion" in line and "[" in line] == ["1"]


def test_selftest_unknown_filter():
    assert run(["selftest", "--filter", "nosuch"])[0] == 2


def test_family_output_parses_back():
    code, text = run(["family", "nichols(3)"])
    assert code == 0
    spec = parse_spec(text)
    H = cli.build_hopf(spec.find("hopf"))
    assert H.dim == nichols(3).dim


def test_reports_are_deterministic(fixture_path):
    a = run(["extend", fixture_path("extend_sweedler.txt"), "--w", "1,0,0,0"])
    b = run(["extend", fixture_path("extend_sweedler.txt"), "--w", "1,0,0,0"])
    assert a == b


def test_hopf_section_round_trip():
    spec = SpecFile(None, (cli.hopf_section("H", sweedler()),))
    again = parse_spec(render_spec(spec))
    assert again == spec
    assert cli.build_hopf(again.find("hopf", "H")).dim == 4


def test_conductor_must_come_first():
    with pytest.raises(ParseError):
        parse_spec("algebra K:\n  labels: a\nconductor: 4\n")


# -- round trip ------------------------------------------------------------------------------------

names = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,5}", fullmatch=True)
values = st.from_regex(r"[A-Za-z0-9(]([A-Za-z0-9(),^ ]{0,10}[A-Za-z0-9)])?", fullmatch=True)
scalar_values = st.one_of(
    st.integers(-5, 5).filter(bool),
    st.fractions(-3, 3, max_denominator=4).filter(lambda c: c and c.denominator > 1),
    st.sampled_from([root_of_unity(3), root_of_unity(4), 1 + root_of_unity(5), Fraction(1, 2) * root_of_unity(8)]),
)
entries = st.tuples(st.tuples(st.integers(0, 4), st.integers(0, 4)), scalar_values)
field_values = st.one_of(values, st.builds(lambda es: Block(tuple(es)), st.lists(entries, max_size=4)))


@st.composite
def sections(draw):
    kind = draw(st.sampled_from(["algebra", "hopf", "ore", "action"]))
    keys = draw(st.lists(names, min_size=1, max_size=4, unique=True))
    return Section(kind, draw(names), tuple((k, draw(field_values)) for k in keys))


@given(st.one_of(st.none(), st.integers(1, 40)), st.lists(sections(), max_size=3))
def test_parse_render_round_trip(cond, secs):
    spec = SpecFile(cond, tuple(secs))
    if cond is not None:
        from hopfact.scalar import conductor

        for s in secs:
            for _, v in s.fields:
                if isinstance(v, Block) and any(cond % conductor(c) for _, c in v.entries):
                    return
    assert parse_spec(render_spec(spec)) == spec
