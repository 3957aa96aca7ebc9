import subprocess

import pytest

from workfunc.cli import main
from workfunc.game import parse_transcript_moves
from workfunc.reports import report_from_csv


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


GAME_WON = "[game_otp]\nseed = 1\nbias = 1.0\ntrials = 200\nbudget = 1e6\n"


def test_table_commands_succeed(capsys):
    for number, fragment in [(1, "resource rates"), (2, "prices"), (3, "state search")]:
        assert main(["table", str(number)]) == 0
        out = capsys.readouterr().out
        assert fragment in out
        assert "deviation" in out


def test_table_csv_is_parseable(capsys):
    assert main(["table", "1", "--csv"]) == 0
    report = report_from_csv(capsys.readouterr().out)
    assert len(report.rows) == 5
    assert report.provenance[0] == ("printed", "Table 1")


def test_table_output_file(tmp_path, capsys):
    target = tmp_path / "t3.csv"
    assert main(["table", "3", "--csv", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert len(report_from_csv(target.read_text()).rows) == 5


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["table", "4"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["game", "whatever"])  # --transcript is required
    assert info.value.code == 2


def test_estimate_brute_force_with_fleet(tmp_path, capsys):
    scenario = write(
        tmp_path,
        "bf.scenario",
        "[brute_force]\nkey_bits = 56\nfleet = 1 x ati-radeon-5870\n",
    )
    assert main(["estimate", scenario]) == 0
    out = capsys.readouterr().out
    assert "total_cost_bytes" in out
    assert "132.5 s" in out


def test_estimate_progress_years(tmp_path, capsys):
    scenario = write(
        tmp_path,
        "bf2.scenario",
        "[brute_force]\nkey_bits = 96\nfleet = 65536 x ati-radeon-5870\n"
        "target_years = 2\n",
    )
    assert main(["estimate", scenario]) == 0
    out = capsys.readouterr().out
    assert "required_speedup" in out
    assert "progress_years" in out


def test_estimate_triple_pricing(tmp_path, capsys):
    scenario = write(tmp_path, "t.scenario", "[brute_force]\nkey_bits = 56\ntriple = yes\n")
    assert main(["estimate", scenario]) == 0
    assert "360" in capsys.readouterr().out


def test_estimate_dictionary(tmp_path, capsys):
    scenario = write(
        tmp_path,
        "d.scenario",
        "[dictionary]\nkey_bits = 56\nepsilon = 6\ncomparison_bound = conservative\n",
    )
    assert main(["estimate", scenario]) == 0
    out = capsys.readouterr().out
    assert "per_key_cost_bytes" in out
    assert "3.15252e+16" in out


def test_estimate_tf1(tmp_path, capsys):
    scenario = write(tmp_path, "s.scenario", "[tf1]\nword_bits = 32\n")
    assert main(["estimate", scenario]) == 0
    out = capsys.readouterr().out
    assert "expected_scan_words" in out
    assert "0.4436 s" in out


def test_estimate_rejects_bad_scenarios(tmp_path, capsys):
    bad_key = write(tmp_path, "bad.scenario", "[brute_force]\nkey_bits = 56\ncolor = red\n")
    assert main(["estimate", bad_key]) == 1
    assert "bad scenario" in capsys.readouterr().err

    bad_bound = write(
        tmp_path,
        "bound.scenario",
        "[dictionary]\nkey_bits = 56\nepsilon = 6\ncomparison_bound = exact\n",
    )
    assert main(["estimate", bad_bound]) == 1

    not_estimator = write(tmp_path, "g.scenario", GAME_WON)
    assert main(["estimate", not_estimator]) == 2
    assert "not an estimator" in capsys.readouterr().err

    assert main(["estimate", str(tmp_path / "absent.scenario")]) == 2


def test_game_win_writes_transcript(tmp_path, capsys):
    scenario = write(tmp_path, "won.scenario", GAME_WON)
    transcript = tmp_path / "won.transcript"
    assert main(["game", scenario, "--transcript", str(transcript)]) == 0
    out = capsys.readouterr().out
    assert "result Won" in out
    assert "challenges 200/200" in out
    text = transcript.read_text()
    moves = parse_transcript_moves(text)
    assert len(moves) == 800  # 200 trials x (request, response, challenge, verdict)
    assert text.endswith("result Won\nchallenges 200/200\n")


def test_game_runs_are_reproducible(tmp_path):
    scenario = write(tmp_path, "won.scenario", GAME_WON)
    first, second = tmp_path / "a.transcript", tmp_path / "b.transcript"
    assert main(["game", scenario, "--transcript", str(first)]) == 0
    assert main(["game", scenario, "--transcript", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_game_chance_level_loses(tmp_path, capsys):
    scenario = write(
        tmp_path,
        "chance.scenario",
        "[game_otp]\nseed = 2\nbias = 0.5\ntrials = 200\nbudget = 1e6\n",
    )
    transcript = tmp_path / "chance.transcript"
    assert main(["game", scenario, "--transcript", str(transcript)]) == 3
    assert "result LostChallengeFailed" in capsys.readouterr().out


def test_game_zero_budget_is_a_loss_not_a_fault(tmp_path, capsys):
    scenario = write(
        tmp_path,
        "broke.scenario",
        "[game_otp]\nseed = 1\nbias = 1.0\ntrials = 10\nbudget = 0\n",
    )
    transcript = tmp_path / "broke.transcript"
    assert main(["game", scenario, "--transcript", str(transcript)]) == 3
    out = capsys.readouterr().out
    assert "result LostBudgetDepleted" in out
    assert transcript.exists()


def test_game_validates_parameters(tmp_path, capsys):
    bad_bias = write(
        tmp_path,
        "bias.scenario",
        "[game_otp]\nseed = 1\nbias = 1.5\ntrials = 10\nbudget = 1\n",
    )
    assert main(["game", bad_bias, "--transcript", str(tmp_path / "x")]) == 1
    assert "bias" in capsys.readouterr().err

    not_game = write(tmp_path, "bf.scenario", "[brute_force]\nkey_bits = 8\n")
    assert main(["game", not_game, "--transcript", str(tmp_path / "y")]) == 2
    assert "not a game" in capsys.readouterr().err


def test_validate_quick_passes(capsys):
    assert main(["validate", "--quick"]) == 0
    out = capsys.readouterr().out
    lines = [line for line in out.splitlines() if line and not line.startswith(" ")]
    assert all(line.startswith("PASS") for line in lines)
    assert any("brute-force mean" in line for line in lines)
    assert any("meter ledger" in line for line in lines)


def test_catalog_listing(capsys, tmp_path):
    assert main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "ati-radeon-5870" in out
    assert out.count("\n") >= 7

    bad = tmp_path / "bad.csv"
    bad.write_text("name,transistor_count\n")
    assert main(["catalog", "--file", str(bad)]) == 1
    assert "bad catalog" in capsys.readouterr().err
    assert main(["catalog", "--file", str(tmp_path / "nope.csv")]) == 2


def test_console_script_entry_point():
    proc = subprocess.run(["workfunc", "table", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "resource rates" in proc.stdout
