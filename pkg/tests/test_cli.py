import json

import pytest

from freesum.catalog import hexagon_example, line_case
from freesum.cli import main
from freesum.configuration import interval
from freesum.io import format_points, format_triangulation, format_web


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def hexfiles(tmp_path):
    tp, tq, alpha = hexagon_example()
    return {
        "p": write(tmp_path / "p.pts", format_points(tp.config)),
        "q": write(tmp_path / "q.pts", format_points(tq.config)),
        "tp": write(tmp_path / "tp.txt", format_triangulation(tp)),
        "tq": write(tmp_path / "tq.txt", format_triangulation(tq)),
        "web": write(tmp_path / "web.json", format_web(alpha)),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_and_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--shape", "interval", "--values", "-1,0,1,2")
    assert code == 0
    pts = write(tmp_path / "line.pts", out)
    code, out, _ = run(capsys, "enumerate-triangulations", "--points", pts)
    assert code == 0 and len(out.strip().splitlines()) == 4
    code, out, _ = run(capsys, "gen", "--shape", "dp", "--dim", "2")
    assert code == 0 and out.count("[") == 8


def test_triangulate_and_verify(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--shape", "cross", "--dim", "2")
    pts = write(tmp_path / "sq.pts", out)
    code, out, _ = run(capsys, "triangulate", "--points", pts)
    assert code == 0
    tri = write(tmp_path / "t.txt", out)
    code, out, _ = run(capsys, "verify", "--points", pts, "--triangulation", tri)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "regular", "--points", pts, "--triangulation", tri)
    assert code == 0 and json.loads(out)["regular"]


def test_verify_failure_exits_one(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--shape", "cross", "--dim", "2")
    pts = write(tmp_path / "sq.pts", out)
    # cross(2) points: (1,0), (0,1), (-1,0), (0,-1), origin last
    tri = write(tmp_path / "half.txt", "{{0,1,4},{1,2,4}}")
    code, out, _ = run(capsys, "verify", "--points", pts, "--triangulation", tri)
    assert code == 1 and not json.loads(out)["ok"]


def test_pair_commands(capsys, hexfiles, tmp_path):
    f = hexfiles
    pair = ["--p-points", f["p"], "--q-points", f["q"], "--p-triangulation", f["tp"], "--q-triangulation", f["tq"]]
    code, out, _ = run(capsys, "stabbing", "--points", f["p"], "--triangulation", f["tp"])
    assert code == 0 and len(json.loads(out)["minimal"]) == 1
    code, out, _ = run(capsys, "star-balls", "--points", f["q"], "--triangulation", f["tq"])
    assert code == 0
    code, out, _ = run(capsys, "webs", *pair, "--count-only")
    assert code == 0 and json.loads(out)["count"] >= 1
    code, out, _ = run(capsys, "webs", *pair, "--limit", "2")
    assert code == 0 and len(out.strip().splitlines()) == 2
    target = tmp_path / "sum.txt"
    code, out, _ = run(capsys, "sum", *pair, "--web", f["web"], "--output", str(target))
    data = json.loads(out)
    assert code == 0 and data["cells"] == 24 and data["vertices"] == 11
    sum_pts = write(tmp_path / "sum.pts", data["points"])
    code, out, _ = run(capsys, "verify", "--points", sum_pts, "--triangulation", str(target))
    assert code == 0
    code, out, _ = run(capsys, "decompose", "--points", sum_pts, "--triangulation", str(target), "--p-dim", "2")
    assert code == 0 and json.loads(out)["pinned"] == "P"


def test_decompose_line_case(capsys, tmp_path):
    tp, tq, alpha, _, side = line_case("d")
    from freesum.sumtri import construct_sum_triangulation

    st = construct_sum_triangulation(tp, tq, alpha, side=side)
    pts = write(tmp_path / "s.pts", format_points(st.config))
    tri = write(tmp_path / "s.txt", format_triangulation(st.triangulation))
    code, out, _ = run(capsys, "decompose", "--points", pts, "--triangulation", tri)
    assert code == 0 and json.loads(out)["side"] == "Q"


def test_census_cross_polytope(capsys):
    code, out, _ = run(capsys, "census", "--p", "dp:2", "--q", "cross:4", "--count-only")
    assert code == 0
    data = json.loads(out)
    assert data["homomorphism_count"] == 16
    assert data["distinct_triangulations"] is None


def test_usage_and_input_errors(capsys, tmp_path, hexfiles):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2
    assert json.loads(capsys.readouterr().err)["error"] == "usage"
    code, _, err = run(capsys, "verify", "--points", str(tmp_path / "missing"), "--triangulation", "x")
    assert code == 2 and json.loads(err)["error"] == "usage"
    bad = write(tmp_path / "bad.pts", "[[1,0],\n[0,1,")
    code, _, err = run(capsys, "triangulate", "--points", bad)
    assert code == 2 and json.loads(err)["line"] == 2
    flat = write(tmp_path / "flat.txt", "{{0,3,5}}")  # (1,0), (-1,0), origin
    code, _, err = run(capsys, "verify", "--points", hexfiles["p"], "--triangulation", flat)
    assert code == 2 and json.loads(err)["error"] == "input"
    code, _, _ = run(capsys, "census", "--p", "dp:2")
    assert code == 2
    code, _, _ = run(capsys, "census", "--p", "blob:2", "--q", "dp:2")
    assert code == 2
    big = write(tmp_path / "big.pts", format_points(interval(list(range(-6, 6)))))
    code, _, _ = run(capsys, "enumerate-triangulations", "--points", big)
    assert code == 2


def test_memory_abort_exits_three(capsys):
    code, _, err = run(capsys, "census", "--p", "dp:2", "--q", "interval:-1,0,1", "--count-only", "--memory-budget", "1")
    assert code == 3
    data = json.loads(err)
    assert data["error"] == "resource" and "checkpoint" in data
