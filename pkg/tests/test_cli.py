import csv
import io

import pytest

from collatz_interval.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode(capsys):
    assert run(capsys, "encode", "11") == (0, "13/2^4 (0.8125)\n", "")
    assert run(capsys, "encode", "0")[1] == "0/2^0 (0)\n"
    assert run(capsys, "encode", "11", "--format", "binary")[1] == "0.1101b\n"


def test_decode(capsys):
    assert run(capsys, "decode", "0.1101b")[:2] == (0, "11\n")
    assert run(capsys, "decode", "13/2^4")[1] == "11\n"


@pytest.mark.parametrize("argv", [["encode", "x"], ["encode", "-3"], ["decode", "0.8"], ["decode", "1"]])
def test_malformed_input_exits_2(capsys, argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "3", "--q", "3")
    assert code == 0
    assert out == "3 5 8 4 2 1 | cycle(1,2) in 6 steps\n"


def test_g_orbit(capsys):
    code, out, _ = run(capsys, "g-orbit", "0.11b", "--q", "3")
    assert code == 0
    assert out.endswith("| cycle(0.5,0.25) in 6 steps\n")


def test_orbit_divergent_exit_1(capsys):
    code, out, _ = run(capsys, "orbit", "7", "--q", "5", "--max-steps", "1000")
    assert code == 1
    assert "cutoff after 1000 steps, peak " in out


def test_orbit_magnitude(capsys):
    code, out, _ = run(capsys, "orbit", "7", "--q", "5", "--magnitude-bound", "1000000")
    assert code == 1
    assert "magnitude bound exceeded" in out


def test_intervals_matrix(capsys):
    code, out, err = run(capsys, "intervals", "--depth", "2", "--q", "3", "--emit", "matrix")
    assert code == 0
    assert out == "1,1,0,0\n0,0,1,1\n1,1,0,0\n0,0,1,1\n"
    assert "strongly_connected: true" in err


def test_intervals_summary(capsys):
    code, out, _ = run(capsys, "intervals", "--depth", "10", "--q", "3")
    assert code == 0
    assert "strongly_connected: true" in out


def test_intervals_automaton_to_file(tmp_path, capsys):
    path = tmp_path / "g.dot"
    code, out, _ = run(capsys, "intervals", "--depth", "2", "--emit", "automaton", "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert text.count("->") == 8 and '[label="1"]' in text
    assert "strongly_connected: true" in out


def test_intervals_bad_depth(capsys):
    for d in ("0", "15"):
        with pytest.raises(SystemExit) as e:
            main(["intervals", "--depth", d])
        assert e.value.code == 2


def test_plot_data(capsys):
    code, out, _ = run(capsys, "plot-data", "--window", "0", "1", "--sample-depth", "10", "--q", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == "x_num,x_depth,x_float,y_num,y_depth,y_float"
    assert len(rows) == 1024
    xs = [int(r["x_num"]) / 2 ** int(r["x_depth"]) for r in rows]
    assert xs == sorted(xs)
    row = next(r for r in rows if (r["x_num"], r["x_depth"]) == ("3", "2"))
    assert (row["y_num"], row["y_depth"], row["y_float"]) == ("5", "3", "0.625")


def test_plot_data_zoom_and_q5(tmp_path, capsys):
    path = tmp_path / "zoom.csv"
    assert run(capsys, "plot-data", "--window", "0.75", "1", "--sample-depth", "12", "--out", str(path))[0] == 0
    assert len(path.read_text().splitlines()) == 1 + 1024
    code, out, _ = run(capsys, "plot-data", "--window", "1/2", "1", "--sample-depth", "3", "--q", "5")
    assert code == 0
    assert out.splitlines()[1] == "1,1,0.5,3,2,0.75"


def test_plot_data_bad_window(capsys):
    assert run(capsys, "plot-data", "--window", "0.5", "0.5")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["plot-data", "--window", "0.3", "1"])
    assert e.value.code == 2


def test_verify_q5(capsys):
    code, out, _ = run(capsys, "verify", "--q", "5", "--scale", "small")
    assert code == 0
    assert "above_diagonal: present (expected)" in out


def test_verify_q3_reports_quotient_failure(tmp_path, capsys):
    report = tmp_path / "r.txt"
    js = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--q", "3", "--scale", "small",
                       "--report", str(report), "--json", str(js))
    assert report.read_text() == out
    failing = [ln.split()[0] for ln in out.splitlines() if " FAIL " in ln]
    assert failing == ["quotient_bound"]
    assert code == 1


def test_verify_badflag():
    with pytest.raises(SystemExit) as e:
        main(["verify", "--badflag"])
    assert e.value.code == 2


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "collatz_interval", "encode", "11"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "13/2^4 (0.8125)\n"
