import json

import pytest

from lww.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_chi_example(capsys):
    code, out = run(capsys, "chi", "--d", "2", "--lambda", "1", "--nmax", "5")
    assert code == 0
    rows = [l for l in out.splitlines() if l and not l.startswith("#") and "," in l]
    got = [r.split(",")[1] for r in rows[1:]]
    assert got == ["1/1", "4/1", "16/1", "64/1", "256/1", "1024/1"]


def test_enumerate_example(capsys):
    code, out = run(capsys, "enumerate", "--d", "1", "--n", "3")
    assert code == 0
    assert "3,0,2" in out and "3,1,6" in out


def test_metadata_header(capsys):
    code, out = run(capsys, "chi", "--d", "1", "--lambda", "1/2", "--nmax", "3")
    assert code == 0
    assert out.startswith("# version:")
    assert '"lam": "1/2"' in out


def test_json_format(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, _ = run(
        capsys,
        "two-point",
        "--d",
        "1",
        "--lambda",
        "1/2",
        "--nmax",
        "4",
        "--x",
        "0",
        "--format",
        "json",
        "--output",
        str(path),
    )
    assert code == 0
    data = json.loads(path.read_text())
    assert data["coeffs"][0] == "1/1"
    assert data["meta"]["version"]


def test_flag_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["chi", "--lambda", "not-a-rational"])
    assert exc.value.code == 2


def test_unknown_suite_exit_code(capsys):
    assert main(["verify", "no-such-suite"]) == 2


def test_verify_core_passes(capsys):
    code, out = run(capsys, "verify", "core")
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out


def test_alpha_and_loop_measure(capsys):
    code, out = run(capsys, "alpha", "--d", "1", "--lambda", "1", "--nmax", "2")
    assert code == 0
    # alpha0 z^2 coefficient is 2 at lambda=1, d=1
    assert out.splitlines()[-1].split(",")[1] == "2/1"
    code, out = run(
        capsys, "loop-measure", "--d", "1", "--lambda", "1/2", "--nmax", "2", "--hit", "0"
    )
    assert code == 0
    assert out.splitlines()[-1].split(",")[1] == "1/1"


def test_pi_agreement_exit(capsys):
    code, out = run(capsys, "pi", "--d", "1", "--lambda", "1/2", "--nmax", "4")
    assert code == 0


def test_msd_exact_cli(capsys):
    code, out = run(capsys, "msd", "--d", "1", "--lambda", "1/2", "--n", "2")
    assert code == 0
    assert "8/3" in out


def test_sample_cli(capsys):
    code, out = run(
        capsys, "sample", "--d", "1", "--lambda", "1", "--n", "3", "--samples", "5", "--seed", "1"
    )
    assert code == 0
    rows = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert rows[0] == "sample_index,loop_count,end_0,end_sq"
    assert len(rows) == 6


def test_graph_file_mode(capsys, tmp_path):
    payload = {"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2], [2, 0]]}
    path = tmp_path / "tri.json"
    path.write_text(json.dumps(payload))
    code, out = run(
        capsys,
        "chi",
        "--graph",
        str(path),
        "--lambda",
        "1",
        "--nmax",
        "3",
    )
    assert code == 0
    # walks from vertex 0 on a triangle: 1, 2, 4, 8
    rows = [l for l in out.splitlines() if l and not l.startswith("#")][1:]
    assert [r.split(",")[1] for r in rows] == ["1/1", "2/1", "4/1", "8/1"]
