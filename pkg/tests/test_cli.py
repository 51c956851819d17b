import json

import cli
from cli import execute, run_golden
from shared.utils.errors import InvariantBreach

R_SOURCE = "X + 2*X^2*Y^3 + X^3*Y^6"


def test_bracket():
    assert execute(["bracket", "Y", "X"]) == (0, "1", "")


def test_mass_of_the_square_prints_witnesses():
    code, out, err = execute(["mass", R_SOURCE, "--square"])
    assert code == 0
    assert out.splitlines() == ["5", "witnesses:", "  levels: [2, 0, -2, -4, -6]"]


def test_flags_may_precede_arguments():
    code, out, _ = execute(["valuation", "--dir", "3,-1", R_SOURCE])
    assert (code, out) == (0, "3")


def test_negative_rho_needs_the_equals_form():
    code, out, _ = execute(["valuation", "--dir=-1,1", "X + Y"])
    assert (code, out) == (0, "1")


def test_leading_minus_after_separator():
    assert execute(["normalize", "--", "-X + Y"]) == (0, "Y - X", "")
    assert execute(["--", "mul", "-X", "Y"]) == (0, "-X*Y", "")


def test_leading_minus_without_separator_is_an_option():
    code, _, err = execute(["normalize", "-X+Y"])
    assert code == 1
    assert err.startswith("error: ")


def test_screen_text_report():
    code, out, _ = execute(["screen", "Y", "X"])
    assert code == 0
    assert "verdict: GENERATES_BY_COROLLARY" in out.splitlines()


def test_json_report():
    code, out, _ = execute(["--json", "bracket", "Y", "X"])
    document = json.loads(out)
    assert code == 0
    assert document["command"] == "bracket"
    assert document["result"] == "1"
    assert document["meta"]["seed"] is None


def test_json_is_deterministic():
    argv = ["--json", "selftest", "--seed", "1", "--cases", "2"]
    assert execute(argv) == execute(argv)


def test_parse_error_shows_a_caret():
    code, out, err = execute(["bracket", "X +* Y", "X"])
    assert code == 1
    assert out == ""
    assert err == "error: Unexpected '*'\nX +* Y\n   ^"


def test_precondition_error_exit_code():
    code, _, err = execute(["fpoly", "X + Y", "--dir=-1,1"])
    assert code == 1
    assert err.startswith("error: extract_fP requires rho > 0")


def test_unknown_command():
    code, _, err = execute(["nosuch"])
    assert code == 1
    assert "Unknown command" in err


def test_missing_command():
    code, _, err = execute([])
    assert code == 1
    assert err.startswith("error: a command is required")


def test_invariant_breach_exit_code(monkeypatch):
    def breach(P, max_iters):
        raise InvariantBreach("sigma did not decrease")

    monkeypatch.setattr("shared.services.command_service.reduce_upper_edge", breach)
    code, _, err = execute(["untwist", "Y^2 + X"])
    assert code == 2
    assert err == "error: sigma did not decrease"


def test_golden_file(tmp_path):
    golden = tmp_path / "examples.golden"
    golden.write_text(
        "# normal ordering\n"
        'normalize "Y*X"\n'
        "=> 1 + X*Y\n"
        f'mass "{R_SOURCE}" --square\n'
        "=> 5\n"
        "=> witnesses:\n"
        "=>   levels: [2, 0, -2, -4, -6]\n"
        'bracket "X +* Y" X\n'
        "=> error: Unexpected '*'\n"
        "=> X +* Y\n"
        "=>    ^\n",
        encoding="utf-8",
    )
    assert run_golden(str(golden)) == (0, "3/3 golden commands match", "")
    assert execute(["--golden", str(golden)])[0] == 0


def test_golden_mismatch(tmp_path):
    golden = tmp_path / "broken.golden"
    golden.write_text("bracket Y X\n=> -1\n", encoding="utf-8")
    code, out, err = run_golden(str(golden))
    assert code == 1
    assert out == "0/1 golden commands match"
    assert "broken.golden:1" in err


def test_golden_output_before_command(tmp_path):
    golden = tmp_path / "orphan.golden"
    golden.write_text("=> 1\n", encoding="utf-8")
    code, _, err = run_golden(str(golden))
    assert code == 1
    assert "expected output before any command" in err


def test_main_prints_and_returns_the_code(capsys):
    assert cli.main(["bracket", "Y", "X"]) == 0
    assert capsys.readouterr().out == "1\n"
