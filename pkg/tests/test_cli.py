import json

import pytest

from rectcover.cli import main
from rectcover.datasets import generate, read_points, write_points


@pytest.fixture
def stair_file(tmp_path):
    p = tmp_path / "stair.txt"
    p.write_text("# staircase\n0 0\n1 1\n2 2\n3 3\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record(out):
    lines = out.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_min_area(capsys, stair_file):
    code, out, err = run(capsys, "min-area", stair_file, "-k", "2")
    rec = record(out)
    assert code == 0 and rec["area"] == 1.0 and rec["count"] == 2
    assert set(rec) == {"command", "algorithm", "params", "seed", "area", "rect", "count", "wall_ms"}
    assert rec["rect"] == {"xmin": 0.0, "ymin": 0.0, "xmax": 1.0, "ymax": 1.0}
    assert "area" in err


def test_min_area_oracle_and_k1(capsys, stair_file):
    code, out, _ = run(capsys, "min-area", stair_file, "-k", "2", "--oracle")
    assert code == 0 and record(out)["algorithm"] == "oracle" and record(out)["area"] == 1.0
    code, out, _ = run(capsys, "min-area", stair_file, "-k", "1")
    assert record(out)["area"] == 0.0


def test_k_too_large(capsys, stair_file):
    code, out, err = run(capsys, "min-area", stair_file, "-k", "5")
    assert code == 2 and out == "" and "k exceeds point count" in err


def test_io_and_parse_errors(capsys, tmp_path):
    code, _, _ = run(capsys, "min-area", str(tmp_path / "missing.txt"), "-k", "1")
    assert code == 3
    bad = tmp_path / "dup.txt"
    bad.write_text("0 0\n1 1\n0 0\n")
    code, _, err = run(capsys, "min-area", str(bad), "-k", "1")
    assert code == 2 and "line 3" in err and "line 1" in err


def test_max_points(capsys, stair_file):
    code, out, _ = run(capsys, "max-points", stair_file, "--alpha", "1", "--exact")
    assert code == 0 and record(out)["count"] == 2
    code, out, _ = run(capsys, "max-points", stair_file, "--alpha", "100", "--exact")
    assert record(out)["count"] == 4


def test_max_points_seeded_repeat(capsys, tmp_path):
    path = tmp_path / "c.txt"
    write_points(generate(400, "clusters", 2), path)
    recs = []
    for _ in range(2):
        code, out, _ = run(capsys, "max-points", str(path), "--alpha", "1e-3", "--seed", "5")
        assert code == 0
        rec = record(out)
        rec.pop("wall_ms")
        recs.append(rec)
    assert recs[0] == recs[1] and recs[0]["seed"] == 5 and recs[0]["params"]["eps"] == 0.25


@pytest.mark.parametrize("args", [["--alpha", "0"], ["--alpha", "-1"], ["--alpha", "1", "--eps", "0.6"], ["--alpha", "1", "--eps", "0"]])
def test_max_points_bad_arguments(capsys, stair_file, args):
    code, _, _ = run(capsys, "max-points", stair_file, *args)
    assert code == 2


def test_kappa(capsys, stair_file):
    code, out, _ = run(capsys, "kappa", stair_file, "--alpha", "10")
    rec = record(out)
    assert code == 0 and 1 <= rec["count"] <= 4 and rec["extra"]["kappa"] == rec["count"]


def test_gen(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["gen", "5", "--seed", "1", "-o", str(a)]) == 0
    assert main(["gen", "5", "--seed", "1", "-o", str(b)]) == 0
    assert a.read_text() == b.read_text()
    capsys.readouterr()
    code, out, _ = run(capsys, "gen", "1")
    assert code == 0 and out.count("\n") == 1
    assert main(["gen", "3", "-o", str(tmp_path / "no" / "dir.txt")]) == 3
    c = tmp_path / "c.txt"
    main(["gen", "2000", "--distribution", "clusters", "-o", str(c)])
    assert len(read_points(c)) == 2000


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "bogus"])
    assert e.value.code == 2


def test_verify_small_oracle_suite(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--trials", "3", "--seed", "1")
    assert code == 0
    assert out.count("[PASS]") == 6 and "[FAIL]" not in out


def test_verify_sampling_suite(capsys):
    code, out, _ = run(capsys, "verify", "sampling", "--trials", "20", "--seed", "7")
    assert code == 0 and "joint=" in out


def test_bench(capsys):
    code, out, err = run(capsys, "bench", "300", "600", "--kmax", "2")
    rec = json.loads(out)
    assert code == 0 and set(rec["exponents"]) == {"1", "2"}
    assert all(r["area"] == 0.0 for r in rec["rows"] if r["k"] == 1)
    code, _, err = run(capsys, "bench", "1000")
    assert code == 2 and "need >= 2 sizes" in err
