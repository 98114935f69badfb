import json
from pathlib import Path

import pytest

from sutura.cli import main
from sutura.errors import ParseError, SemanticError
from sutura.problem import dump_problem, parse_problem, with_overrides
from sutura.report import emit_report, run

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
EXAMPLES = sorted(PROBLEMS.glob("*.yaml"))


def report(name, fmt="json"):
    spec = with_overrides(parse_problem((PROBLEMS / name).read_text()), fmt=fmt)
    res = run(spec)
    return spec, res, emit_report(spec, res)


class TestParsing:
    @pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.stem)
    def test_dump_round_trip(self, path):
        spec = parse_problem(path.read_text())
        assert parse_problem(dump_problem(spec)) == spec

    @pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.stem)
    def test_report_echoes_problem(self, path):
        spec = with_overrides(parse_problem(path.read_text()), fmt="json")
        doc = json.loads(emit_report(spec, run(spec)))
        assert parse_problem(json.dumps(doc["problem"])) == spec

    def test_missing_field_named(self):
        with pytest.raises(SemanticError) as exc:
            parse_problem("mode: presentation\ngenerators: [a, b]\n")
        assert "relators" in str(exc.value)

    def test_non_square_matrix(self):
        with pytest.raises(SemanticError) as exc:
            parse_problem('mode: matrix\nmatrix: [["t", "1"]]\nanalyses: [alexander]\n')
        assert "square" in str(exc.value)

    def test_unknown_field_line(self):
        with pytest.raises(SemanticError) as exc:
            parse_problem("mode: knot\npd: []\narcs: 1\ncolour: red\n")
        assert exc.value.line == 4 and "colour" in str(exc.value)

    def test_bad_polynomial_line(self):
        with pytest.raises(SemanticError) as exc:
            parse_problem('mode: matrix\nmatrix:\n  - ["t +"]\n')
        assert exc.value.line == 3

    def test_yaml_syntax_line(self):
        with pytest.raises(ParseError) as exc:
            parse_problem("mode: knot\npd: [[1, 2\n")
        assert exc.value.line is not None

    def test_bad_analysis(self):
        with pytest.raises(SemanticError):
            parse_problem("mode: graph\nvertices: {g: green}\nedges: []\nanalyses: [fibered]\n")


class TestReports:
    def test_trefoil(self):
        _, res, text = report("trefoil.yaml")
        doc = json.loads(text)
        r = doc["results"]
        assert r["alexander"]["delta"] == "t^2 - t + 1"
        assert [v["exponent"] for v in r["extremal"]["vertices"]] == [[0], [2]]
        assert {x["verdict"] for x in r["fibered"]["rays"]} == {"CANDIDATE_FIBERED"}
        assert doc["banner"] == "Euler-characteristic level; CANDIDATE ≠ proven fibered"
        assert res.exit_code == 0

    def test_five_two(self):
        doc = json.loads(report("five_two.yaml")[2])
        assert doc["results"]["alexander"]["delta"] == "2*t^2 - 3*t + 2"
        assert {x["verdict"] for x in doc["results"]["fibered"]["rays"]} == {"NOT_FIBERED"}

    def test_presentation_agrees_with_pd(self):
        a = json.loads(report("trefoil.yaml")[2])["results"]["alexander"]["delta"]
        b = json.loads(report("trefoil_presentation.yaml")[2])["results"]["alexander"]["delta"]
        assert a == b

    def test_identity_is_product(self):
        doc = json.loads(report("identity.yaml")[2])
        assert doc["results"]["alexander"]["product_test"] == "CANDIDATE_PRODUCT"

    def test_zero_delta(self):
        _, res, text = report("zero_delta.yaml")
        doc = json.loads(text)
        assert res.exit_code == 2 and doc["exit_code"] == 2
        assert {x["verdict"] for x in doc["results"]["fibered"]["rays"]} == {"INCONCLUSIVE"}
        assert any("Delta = 0" in n for n in doc["notes"])

    @pytest.mark.parametrize("fmt", ["text", "json"])
    @pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.stem)
    def test_deterministic(self, path, fmt):
        runs = []
        for _ in range(2):
            spec = with_overrides(parse_problem(path.read_text()), fmt=fmt)
            runs.append(emit_report(spec, run(spec)).encode())
        assert runs[0] == runs[1]

    def test_text_layout(self):
        text = report("trefoil.yaml", "text")[2]
        assert "CANDIDATE ≠ proven fibered" in text.splitlines()[1]
        assert "[alexander]" in text and "delta: t^2 - t + 1" in text


class TestMain:
    @pytest.mark.parametrize("name,code", [("trefoil.yaml", 0), ("graph_prune.yaml", 0),
                                           ("zero_delta.yaml", 2), ("graph_cycle.yaml", 2)])
    def test_exit_codes(self, name, code, capsys):
        assert main([str(PROBLEMS / name)]) == code
        assert capsys.readouterr().out

    def test_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text("mode: nope\n")
        assert main([str(bad)]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_file(self, tmp_path, capsys):
        assert main([str(tmp_path / "absent.yaml")]) == 1

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        assert main([str(PROBLEMS / "trefoil.yaml"), "--format", "json", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text())["problem"]["format"] == "json"

    def test_analysis_override(self, capsys):
        assert main([str(PROBLEMS / "zero_delta.yaml"), "--analysis", "alexander",
                     "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert list(doc["results"]) == ["alexander"]
        assert doc["results"]["alexander"]["delta"] == "0"

    def test_analysis_wrong_mode(self, capsys):
        assert main([str(PROBLEMS / "trefoil.yaml"), "--analysis", "prune"]) == 1
