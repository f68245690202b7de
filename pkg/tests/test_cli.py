import json

import pytest

from genus4.cli import build_parser, main


def test_verify_table(tmp_path, capsys):
    out = tmp_path / "table.json"
    assert main(["verify-table", "--out", str(out)]) == 0
    assert "22/22 rows verified" in capsys.readouterr().out
    assert json.loads(out.read_text())["ok"] is True


def test_run_case_exit_codes(capsys):
    assert main(["run-case", "--q", "13", "--n", "39"]) == 0
    assert "eliminated" in capsys.readouterr().out
    assert main(["run-case", "--q", "83", "--n", "154"]) == 1
    assert "budget-exceeded" in capsys.readouterr().out
    assert main(["run-case", "--q", "13", "--n", "40"]) == 2


def test_search_trace_with_checkpoints(tmp_path, capsys):
    assert main(["search-trace", "--q", "13", "--t", "-7", "--checkpoint-dir", str(tmp_path)]) == 0
    assert "max 38" in capsys.readouterr().out
    line = (tmp_path / "trace_13_-7.ckpt").read_text().splitlines()[0].split()
    assert line[:2] == ["13", "-7"] and len(line) == 5


def test_search_kummer_and_hyper(capsys):
    assert main(["search-kummer", "--q", "11", "--m", "5"]) == 0
    assert main(["search-hyper", "--q", "7"]) == 0
    text = capsys.readouterr().out
    assert "m=5: max" in text and "order-4 hyperelliptic: max" in text


def test_zeta5_and_hermitian(capsys):
    assert main(["zeta5", "covering", "--denominators", "2"]) == 0
    assert main(["zeta5", "reduce", "--count", "5"]) == 0
    assert main(["zeta5", "cm"]) == 0
    assert main(["hermitian", "--case", "delta12"]) == 0
    assert "ok" in capsys.readouterr().out


def test_report_text(capsys):
    assert main(["report"]) == 0
    assert capsys.readouterr().out.startswith("  q")


def test_parser_rejects_unknown_case():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["hermitian", "--case", "delta20"])
