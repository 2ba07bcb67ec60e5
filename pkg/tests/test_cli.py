import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from equiloc.cli import Options, format_problem, main, parse_problem, run
from equiloc.errors import InputError, NonHomogeneousIdeal, ParseError

PROBLEMS = sorted((Path(__file__).resolve().parent.parent / "problems").glob("*.equiloc"))


def write(tmp_path, text, name="p.equiloc"):
    f = tmp_path / name
    f.write_text(text)
    return str(f)


def test_minimal_file_parses_and_runs():
    p = parse_problem("group rank=1\nvariables x:[1] y:[0]\nquery fixedlocus\n")
    report, code = run(p)
    assert code == 0
    assert report["queries"][0]["result"]["generators"] == ["x"]


def test_nonhomogeneous_generator_diagnostic():
    with pytest.raises(ParseError) as exc:
        parse_problem("group rank=1\nvariables x:[1] y:[0]\nideal x + y\n")
    assert exc.value.line == 3
    assert "x + y" in exc.value.message and "[0]" in exc.value.message and "[1]" in exc.value.message


def test_degree_zero_generator_accepted():
    p = parse_problem("group rank=1\nvariables x:[1] y:[-2]\nideal x^2*y - 1\n")
    assert p.ideal == ("x^2*y - 1",)


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("group rank=1\nvariables x:[1,2]\n", 2, 13),
        ("group rank=1\nvariables x:[1]\nideal x + w\n", 3, 11),
        ("group rank=1\nquery nonsense\n", 2, 7),
        ("group rank=1\nquery smith window=1..0,0..1\n", 2, 20),
        ("field prime 6\n", 1, 13),
        ("group rank=x\n", 1, 12),
        ("group rank=1\nvariables x:[1]\nquery fixedlocus fields=three\n", 3, 25),
    ],
)
def test_diagnostics_carry_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_problem(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_report_examples(tmp_path, capsys):
    assert main(["run", str(Path(PROBLEMS[0]).parent / "hyperbola.equiloc")]) == 0
    out = capsys.readouterr().out
    assert "empty fixed locus (unit ideal)" in out
    f = write(tmp_path, "group rank=1\nvariables x:[1] y:[2]\nquery section\n")
    assert main(["run", f, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["schema"] == "equiloc-report/1"
    assert rep["queries"][0]["result"] == {"V": ["[-1]", "[-2]"], "s": ["x", "y"], "verified": True}
    f = write(tmp_path, "field prime 3\ngroup torsion=3\nquery smith weights=[0],[1] window=0..4,0..2\n", "s.equiloc")
    assert main(["run", f, "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["queries"][0]["result"]["total_rank"] == 2
    assert all(o["passed"] for o in rep["queries"][0]["oracles"])


@pytest.mark.parametrize("path", PROBLEMS, ids=[p.name for p in PROBLEMS])
def test_bundled_files_are_deterministic(path, capsys):
    outs = []
    for flag in ([], [], ["--json"], ["--json"]):
        assert main(["run", str(path), *flag]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] and outs[2] == outs[3]


@pytest.mark.parametrize("path", PROBLEMS, ids=[p.name for p in PROBLEMS])
def test_bundled_files_round_trip(path):
    p = parse_problem(path.read_text())
    text = format_problem(p)
    assert parse_problem(text) == p
    assert format_problem(parse_problem(text)) == text


def test_exit_codes_and_error_objects(tmp_path, capsys):
    bad = write(tmp_path, "group rank=1\nvariables x:[1]\nideal x +\n")
    assert main(["run", bad]) == 1
    assert "3:" in capsys.readouterr().err
    assert main(["run", bad, "--json"]) == 1
    err = json.loads(capsys.readouterr().out)["error"]
    assert err["type"] == "ParseError" and err["exit_code"] == 1
    # engine input error inside a query: smith needs a mu_p group
    f = write(tmp_path, "group rank=1\nquery smith\nquery euler characters=[2]\n", "q.equiloc")
    assert main(["run", f, "--json"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["queries"][0]["status"] == "error" and rep["queries"][0]["error"]["exit_code"] == 1
    assert rep["queries"][1]["status"] == "ok"
    # resource budget
    heavy = write(
        tmp_path,
        "group\nvariables x:[] y:[] z:[]\nideal x^3 - y*z + 1\nideal y^3 - x*z^2\nideal z^3 - x^2*y - 2\nquery fixedlocus fields=2\n",
        "h.equiloc",
    )
    assert main(["run", heavy, "--json", "--groebner-budget", "1"]) == 2
    rep = json.loads(capsys.readouterr().out)
    assert rep["queries"][0]["error"]["type"] == "GroebnerBudgetExceeded"
    assert main(["run", str(tmp_path / "missing.equiloc")]) == 1


def test_options_reach_the_engines(tmp_path, capsys):
    f = write(tmp_path, "field prime 3\ngroup torsion=3\nquery smith weights=[1],[1]\n")
    assert main(["run", f, "--json", "--window", "0..2,0..1", "--truncation", "9", "--seed", "4"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["options"] == {"groebner_budget": None, "truncation": 9, "window": [[0, 2], [0, 1]], "seed": 4}
    q = rep["queries"][0]
    assert q["result"]["ranks"] == {"0,0": 1, "2,1": 1}
    assert {o["name"]: o.get("seed") for o in q["oracles"]}["cartan-spot-check"] == 4


def test_format_command(tmp_path, capsys):
    f = write(tmp_path, "# c\ngroup   rank=1\nvariables x:1\nideal x^2   - 0*x\nquery section minimize\n")
    assert main(["format", f]) == 0
    assert capsys.readouterr().out == "field rational\ngroup rank=1\nvariables x:[1]\nideal x^2\nquery section minimize\n"


alphabet = st.sampled_from(list("abxyz019[],.:=-+*^() \n#") + ["group ", "rank=", "torsion=", "variables ", "ideal ", "query ", "field ", "prime ", "smith", "fixedlocus", "weights=", "window="])


@settings(max_examples=300, deadline=None)
@given(st.lists(alphabet, max_size=40).map("".join))
def test_parser_is_total(text):
    try:
        parse_problem(text)
    except InputError:
        pass


@settings(max_examples=100, deadline=None)
@given(st.text(max_size=60))
def test_parser_is_total_on_arbitrary_text(text):
    try:
        parse_problem(text)
    except InputError:
        pass
