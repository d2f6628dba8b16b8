"""Command-line entry point: subcommands, outputs, exit codes."""

import pytest

from hydrodisc.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, main
from hydrodisc.sweep import CSV_HEADER, parse_csv, table1_text


def test_table1_to_stdout(capsys):
    assert main(["table1"]) == EXIT_OK
    assert capsys.readouterr().out == table1_text()


def test_table1_to_file(tmp_path, capsys):
    target = tmp_path / "table1.csv"
    assert main(["table1", "--out", str(target)]) == EXIT_OK
    assert target.read_text() == table1_text()
    assert str(target) in capsys.readouterr().out


def test_sweep_writes_expected_files(tmp_path, capsys):
    code = main(
        [
            "sweep",
            "--states", "1,0;2,1",
            "--r0-min", "1.0",
            "--r0-max", "4.0",
            "--points", "2",
            "--plot-data",
            "--out", str(tmp_path),
        ]
    )
    assert code == EXIT_OK
    rows = parse_csv(str(tmp_path / "sweep.csv"))
    assert len(rows) == 4
    assert all(row.error is None for row in rows)

    echo = (tmp_path / "sweep_config.txt").read_text()
    assert "states=1,0;2,1\n" in echo
    assert "points=2\n" in echo
    assert "jobs=1\n" in echo

    dats = sorted(p.name for p in (tmp_path / "plot_data").iterdir())
    assert len(dats) == 12
    assert "sweep: 4 rows (0 failed)" in capsys.readouterr().out


def test_sweep_flags_override_config(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("points=3\nr0_min=1.0\nr0_max=4.0\nstates=1,0\n")
    out = tmp_path / "run"
    code = main(
        ["sweep", "--config", str(cfg), "--points", "2", "--out", str(out)]
    )
    assert code == EXIT_OK
    rows = parse_csv(str(out / "sweep.csv"))
    assert [row.r0 for row in rows] == [1.0, 4.0]
    assert (out / "sweep_config.txt").read_text().count("points=2") == 1


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["scan"]) == EXIT_USAGE
    assert "usage error" in capsys.readouterr().err


def test_bad_flag_value_is_usage_error(capsys):
    code = main(["sweep", "--points", "1", "--out", "/tmp/unused-hydrodisc"])
    assert code == EXIT_USAGE
    assert "points" in capsys.readouterr().err


def test_bad_state_string_is_usage_error(capsys):
    assert main(["sweep", "--states", "5"]) == EXIT_USAGE
    assert "bad state" in capsys.readouterr().err


def test_missing_config_is_io_error(capsys):
    code = main(["sweep", "--config", "/nonexistent/sweep.cfg"])
    assert code == EXIT_IO
    err = capsys.readouterr().err
    assert "i/o failure" in err and "/nonexistent/sweep.cfg" in err


def test_no_subcommand_is_usage_error(capsys):
    assert main([]) == EXIT_USAGE


def test_csv_header_contract(tmp_path):
    out = tmp_path / "run"
    main(
        ["sweep", "--states", "1,0", "--r0-min", "2.0", "--r0-max", "3.0",
         "--points", "2", "--out", str(out)]
    )
    first = (out / "sweep.csv").read_text().splitlines()[0]
    assert first == CSV_HEADER


@pytest.mark.parametrize("flag", ["--r0-min", "--points"])
def test_non_numeric_flag_is_usage_error(flag, capsys):
    assert main(["sweep", flag, "banana"]) == EXIT_USAGE
