"""Definition-file grammar, round trips, and the command line surface."""

import json
from pathlib import Path

import pytest

from orbitkit import cli
from orbitkit.algfile import emit_algebra, parse_algebra, parse_functional
from orbitkit.catalog import get_entry
from orbitkit.errors import AntisymmetryViolation, ParseError
from orbitkit.liealg import b5

REPO = Path(__file__).resolve().parent.parent

CATALOG_NAMES = ["heisenberg3", "axb", "g49_0", "b5", "e2-motion", "abelian3"]


def test_shipped_b5_file_parses_to_catalog_algebra():
    text = (REPO / "demos" / "b5.alg").read_text(encoding="utf-8")
    assert parse_algebra(text) == b5()


def test_roundtrip_whole_catalog():
    for name in CATALOG_NAMES:
        g = get_entry(name).algebra
        assert parse_algebra(emit_algebra(g)) == g


def test_empty_file_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_algebra("")
    with pytest.raises(ParseError):
        parse_algebra("# nothing but a comment\n")


def test_conflicting_bracket_orders():
    text = "basis e1 e2 e3\nbracket e1 e2 = e3\nbracket e2 e1 = e3\n"
    with pytest.raises(AntisymmetryViolation):
        parse_algebra(text)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_algebra("basis a b\nbracket a b = 1/0x*b\n")
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_algebra("basis a b\nbracket a c = b\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_algebra("dim 2\nbasis a\n")


def test_coefficients_and_signs():
    from fractions import Fraction
    g = parse_algebra(
        "dim 3\nbasis x y z\nbracket x y = 3/2*z - 2*y\n")
    i, j = g.index_of("x"), g.index_of("y")
    assert g.table[i][j][g.index_of("z")] == Fraction(3, 2)
    assert g.table[i][j][g.index_of("y")] == Fraction(-2)


def test_parse_functional():
    from fractions import Fraction
    names = ("d", "e0", "e1", "e2", "e3")
    f = parse_functional("e3=1,e0=2/3", names)
    assert f == (Fraction(0), Fraction(2, 3), Fraction(0), Fraction(0), Fraction(1))
    with pytest.raises(ParseError):
        parse_functional("nope=1", names)
    with pytest.raises(ParseError):
        parse_functional("e3=banana", names)


# -- command line -------------------------------------------------------------

def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_catalog_lists_entries(capsys):
    code, out, _ = run_cli(capsys, "catalog")
    assert code == 0
    for name in ("b5", "heisenberg3", "axb", "g49_0", "e2-motion"):
        assert name in out


def test_cli_analyze_json(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--catalog", "b5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "orbitkit-report/1"
    result = payload["result"]
    assert result["dim"] == 5
    assert result["nilpotent"] is False
    assert result["exponential"]["kind"] == "exponential"
    assert result["nilradical"]["dim"] == 3


def test_cli_orbit_displays_components(capsys):
    code, out, _ = run_cli(capsys, "orbit", "--catalog", "b5")
    assert code == 0
    assert "e0: f0 - x1*x2" in out
    assert "e1: x2*exp(t)" in out
    assert "e2: -x1*exp(-s-t)" in out
    assert "e3: exp(-s)" in out


def test_cli_regularity_report(capsys):
    code, out, _ = run_cli(capsys, "regularity-report", "--catalog", "heisenberg3")
    assert code == 0
    assert "star-regular" in out
    code, out, _ = run_cli(capsys, "regularity-report", "--catalog", "b5", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["verdict"] == "condition-R-fails"
    values = payload["result"]["certificate"]["values_on_stable_term"]
    assert values == ["0", "0", "1"]


def test_cli_closure_test_certificate(capsys):
    code, out, _ = run_cli(capsys, "closure-test", "--catalog", "b5",
                           "--g", "e1=1,e2=2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["kind"] == "not-in-closure"
    assert payload["result"]["invariant_value"] == "-2"


def test_cli_json_is_byte_identical_across_runs(capsys):
    args = ("closure-test", "--catalog", "b5", "--g", "e1=3,e0=5",
            "--seed", "11", "--json")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    args = ("regularity-report", "--catalog", "b5", "--seed", "4", "--json")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_cli_file_input(tmp_path, capsys):
    path = tmp_path / "h3.alg"
    path.write_text("basis e1 e2 e3\nbracket e1 e2 = e3\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "regularity-report", "--file", str(path))
    assert code == 0
    assert "star-regular" in out


def test_cli_exit_codes(capsys):
    code, _, err = run_cli(capsys, "analyze", "--catalog", "not-a-thing")
    assert code == 1 and "no catalog entry" in err
    code, _, err = run_cli(capsys, "analyze")
    assert code == 1
    code, _, err = run_cli(capsys, "stabilizer", "--catalog", "b5", "--f", "zzz=1")
    assert code == 1
    # a computation error: no rational composition series exists here
    code, _, err = run_cli(capsys, "polarize", "--catalog", "e2-motion")
    assert code == 2
    assert err.strip()


def test_cli_seed_environment(monkeypatch):
    monkeypatch.setenv("ORBITKIT_SEED", "9")
    parser = cli.build_parser()
    args = parser.parse_args(["regularity-report", "--catalog", "b5"])
    assert args.seed == 9
