import json

from src.cli import NO_DISTRIBUTION, main


def test_growth_formula_from_the_command_line(capsys):
    assert main(["growth", "--series", "K", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() == "(4,5)C"


def test_excluded_series_parameters():
    assert main(["growth", "--series", "M", "--n", "2", "--r", "1"]) == 2


def test_unknown_name_exits_with_two():
    assert main(["construct", "--name", "no-existe"]) == 2


def test_unsupported_characteristic_exits_with_three():
    assert main(["construct", "--name", "me", "--p", "3"]) == 3


def test_depth_one_entry_has_no_distribution(capsys):
    assert main(["--quiet", "growth", "--name", "er"]) == 0
    assert capsys.readouterr().out.strip() == NO_DISTRIBUTION


def test_construct_writes_json(tmp_path):
    path = tmp_path / "k3.json"
    assert main(["construct", "--name", "k", "--p", "0", "--upto", "0", "--output", str(path)]) == 0
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["schema_version"] == "1"
    assert sorted(doc["slice"]["dims"], key=int) == ["-2", "-1", "0"]


def test_construct_text_format(capsys):
    assert main(["construct", "--name", "k", "--p", "0", "--upto", "-1", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "profundidad 2" in out.splitlines()[0]
    assert "g_-2" in out


def test_verify_ck_entry(capsys):
    assert main(["verify", "--name", "kle96-CK"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"] == {"pass": 1}
    assert doc["reports"][0]["computed"]["growth"] == "(6|6, 9|9, 9|11)"
