import json

import pytest

from cgrefine import cli
from cgrefine.geometry import dumps, random_polyline
from cgrefine.graphs import complete_graph
from cgrefine.theorems import IdentityReport


def run(argv):
    try:
        return cli.main(argv)
    except SystemExit as exc:  # argparse usage errors
        return exc.code


@pytest.fixture
def k6(tmp_path):
    path = tmp_path / "k6.json"
    assert run(["gen", "--graph", "K6", "--source", "moment", "--out", str(path)]) == 0
    return path


def test_gen_moment(k6):
    data = json.loads(k6.read_text())
    assert data["graph"] == "K6"
    assert data["vertices"]["3"] == [3, 9, 27]


def test_gen_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(["gen", "--graph", "K7", "--source", "random", "--seed", "42", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_usage_errors(tmp_path):
    assert run(["gen", "--graph", "K9"]) == 2
    assert run(["gen", "--graph", "D4", "--source", "moment"]) == 2
    assert run(["gen", "--graph", "K6", "--source", "random", "--span", "3"]) == 2


def test_gen_d4_and_k33(tmp_path):
    for g in ("D4", "K33", "K5"):
        p = tmp_path / f"{g}.json"
        assert run(["gen", "--graph", g, "--source", "random", "--seed", "3", "--out", str(p)]) == 0
        assert run(["verify", str(p)]) == 0


def test_verify_moment_k6(k6, tmp_path):
    out = tmp_path / "v.json"
    assert run(["verify", str(k6), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    main = next(x for x in doc["identities"] if x["identity"] == "k6-a2-lk")
    assert main["lhs"] == main["rhs"] == 0
    assert doc["holds"]


def test_verify_formats(k6, capsys):
    assert run(["verify", str(k6), "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("kind,family,item,value")
    assert run(["verify", str(k6), "--format", "text"]) == 0
    assert "k6-simon: lhs=4 rhs=4 holds" in capsys.readouterr().out


def test_verify_random_k7(tmp_path):
    p = tmp_path / "k7.json"
    run(["gen", "--graph", "K7", "--source", "random", "--seed", "5", "--out", str(p)])
    assert run(["verify", str(p)]) == 0


def test_verify_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", str(bad)]) == 1
    # two equal vertices: valid JSON but not an embedding
    pos = ", ".join(f'"{v}": [{v}, {v * v}, {v ** 3}]' for v in range(2, 7))
    bad.write_text('{"graph": "K6", "vertices": {"1": [2, 4, 8], ' + pos + "}}")
    assert run(["verify", str(bad)]) == 1
    assert "coincident-vertex-images" in capsys.readouterr().err
    assert run(["verify", str(tmp_path / "missing.json")]) == 1


def test_identity_failure_exits_3(k6, monkeypatch, capsys):
    def broken(e, seed):
        return None, [IdentityReport("k6-a2-lk", 0, 2, {})]
    monkeypatch.setattr(cli, "verify_embedding", broken)
    assert run(["verify", str(k6)]) == 3
    assert "identity violated" in capsys.readouterr().err


def test_census(k6, tmp_path, capsys):
    assert run(["census", str(k6)]) == 0
    captured = capsys.readouterr()
    assert "(0,1)" in captured.err
    assert json.loads(captured.out)["case"] == [0, 1]
    poly = tmp_path / "poly.json"
    poly.write_text(dumps(random_polyline(complete_graph(6), 0, span=12)))
    assert run(["census", str(poly)]) == 2
    d4 = tmp_path / "d4.json"
    run(["gen", "--graph", "D4", "--source", "random", "--out", str(d4)])
    assert run(["census", str(d4)]) == 2


def test_batch(tmp_path, monkeypatch):
    assert run(["batch", "--graph", "K7", "--trials", "0"]) == 2
    out1, out2 = tmp_path / "b1.json", tmp_path / "b2.json"
    monkeypatch.setenv("CGREFINE_THREADS", "1")
    assert run(["batch", "--graph", "K6", "--trials", "6", "--seed", "7", "--out", str(out1)]) == 0
    monkeypatch.setenv("CGREFINE_THREADS", "2")
    assert run(["batch", "--graph", "K6", "--trials", "6", "--seed", "7", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert sum(doc["frequencies"].values()) == 6
    assert set(doc["frequencies"]) <= {"(0,1)", "(1,3)"}
    monkeypatch.setenv("CGREFINE_THREADS", "many")
    assert run(["batch", "--graph", "K6", "--trials", "1"]) == 2


def test_batch_records_failures(monkeypatch, capsys):
    monkeypatch.setenv("CGREFINE_THREADS", "1")
    real = cli.verify_embedding

    def flaky(e, seed):
        r, ids = real(e, seed)
        if e.vertex_pos == cli.make_embedding("K6", "random", 8, 1000).vertex_pos:
            ids = ids + [IdentityReport("injected", 0, 1, {})]
        return r, ids
    monkeypatch.setattr(cli, "verify_embedding", flaky)
    assert run(["batch", "--graph", "K6", "--trials", "3", "--seed", "7"]) == 3
    doc = json.loads(capsys.readouterr().out)
    assert [f["seed"] for f in doc["failures"]] == [8]
    assert sum(doc["frequencies"].values()) == 3


def test_search(capsys):
    assert run(["search", "--seed", "0", "--budget", "20"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["found"]
    c = doc["census"]
    assert (c["n43_hopf"], c["n33_hopf"], c["n43_torus24"]) == (14, 7, 0)
    assert run(["search", "--budget", "0"]) == 2
