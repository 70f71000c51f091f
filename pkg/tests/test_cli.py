import json

from rootforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_roots(capsys):
    code, out = run(capsys, "roots", "A", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "rootforge/1"
    assert len(payload["roots"]) == 2


def test_roots_single_token(capsys):
    code, out = run(capsys, "roots", "A2")
    assert code == 0 and len(json.loads(out)["roots"]) == 6


def test_enhance_json_and_dot(tmp_path, capsys):
    dot = tmp_path / "e7.dot"
    js = tmp_path / "e7.json"
    code, _ = run(
        capsys, "enhance", "--series", "E", "--rank", "7",
        "--dot", str(dot), "--json", str(js),
    )
    assert code == 0
    payload = json.loads(js.read_text())
    assert len(payload["nodes"]) == 11
    assert set(payload["moset"]) == {"2", "3", "5", "7", "l1", "l3", "l4"}
    assert sorted(payload["adjacency"]["l1"]) == ["1", "4", "6", "l2"]
    text = dot.read_text()
    assert "penwidth=3" in text


def test_moset(capsys):
    code, out = run(capsys, "moset", "E8")
    assert code == 0
    payload = json.loads(out)
    assert payload["mu"] == 8 and len(payload["members"]) == 8


def test_coregroup(capsys):
    code, out = run(capsys, "coregroup", "E7")
    assert code == 0
    payload = json.loads(out)
    assert payload["nu"] == 168 and payload["mu"] == 7


def test_classify(capsys):
    code, out = run(capsys, "classify", "E7")
    assert code == 0
    payload = json.loads(out)
    special = [row for row in payload["orbits"] if row["special"]]
    assert len(special) == 12
    row = next(r for r in special if r["label"] == "[A5]^0")
    assert row["charge"] == 3 and row["parity"] == 0
    # the representative is the least subset in the orbit; it must carry
    # the row's own label
    from rootforge import RootSet, build_root_system, enhanced_basis, orbit_label

    e7 = build_root_system("E", 7)
    eb = enhanced_basis(e7)
    rep = RootSet(e7, eb.subset(row["representative"]))
    assert orbit_label(rep).render() == "[A5]^0"


def test_conjugate(capsys):
    code, out = run(
        capsys, "conjugate", "E8",
        "--l1", "2,4,5,6,7,8,l5", "--l2", "3,4,5,6,7,8,l5",
    )
    assert code == 0
    assert "not conjugate (parity 0 vs 1)" in out
    code, out = run(
        capsys, "conjugate", "E8",
        "--l1", "2,4,5,6,7,8,l5", "--l2", "2,4,5,6,7,8,l5",
    )
    assert code == 0 and out.startswith("conjugate")


def test_conjugate_d_series_primes(capsys):
    code, out = run(capsys, "conjugate", "D6", "--l1", "1,3,5", "--l2", "1',3,5")
    assert code == 0 and "not conjugate" in out


def test_order_special(capsys):
    code, out = run(capsys, "order", "E8", "--special")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["edges"]) == 10


def test_usage_errors(capsys):
    assert main(["roots", "Q", "9"]) == 2
    assert main(["nonsense"]) == 2
