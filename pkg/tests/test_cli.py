import json

import pytest

from standext.cli import EXAMPLE_NAMES, EXAMPLE_VARIANTS, main

from conftest import ALL_FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_examples_list_has_six_names(capsys):
    code, out, _ = run(capsys, "examples", "list")
    assert code == 0
    assert out.splitlines() == list(EXAMPLE_NAMES)
    assert len(EXAMPLE_NAMES) == 6


def test_examples_emit_unknown_is_input_error(capsys):
    code, _, err = run(capsys, "examples", "emit", "nonexistent")
    assert code == 2
    assert "unknown example" in err


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_emit_validate_info_round_trip(tmp_path, capsys, name):
    assert name in EXAMPLE_NAMES + EXAMPLE_VARIANTS
    path = tmp_path / f"{name}.json"
    code, _, _ = run(capsys, "examples", "emit", name, "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0 and name in out
    code, out, _ = run(capsys, "info", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["name"] == name


def test_info_tables_sl2(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "examples", "emit", "sl2-regular", "--out", str(path))
    _, out, _ = run(capsys, "info", str(path))
    report = json.loads(out)
    assert report["hilbert"] == {"0": 2, "1": 2, "2": 1}
    assert report["species"] == {"u,v,1": 1, "v,u,1": 1}
    assert report["heights"] == {"u": 1, "v": 0}


def test_info_tables_digon(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "examples", "emit", "digon-s1", "--out", str(path))
    _, out, _ = run(capsys, "info", str(path))
    assert json.loads(out)["hilbert"] == {"0": 4, "1": 4}


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "validate", "/no/such/file.json")
    assert code == 2
    assert "not found" in err


def test_invalid_presentation_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        '{"name": "bad", "vertices": [{"id": "x", "ht": 0}],'
        ' "arrows": [{"id": "a", "from": "x", "to": "x"}],'
        ' "relations": [[{"coeff": "1", "path": ["a", "a"]},'
        ' {"coeff": "1", "path": ["a", "a", "a"]}]]}'
    )
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2 and err


def test_check_exit_codes(tmp_path, capsys):
    sl2 = tmp_path / "sl2.json"
    bad = tmp_path / "bad.json"
    run(capsys, "examples", "emit", "sl2-regular", "--out", str(sl2))
    run(capsys, "examples", "emit", "sl2-regular-badht", "--out", str(bad))

    code, out, _ = run(capsys, "check", str(sl2), "conditions")
    assert code == 0 and json.loads(out)["ok"] is True

    code, out, _ = run(capsys, "check", str(bad), "qh")
    report = json.loads(out)
    assert code == 1
    assert "S(v) occurs in Rad Δ(v)" in report["witnesses"]

    # forced truncation: bound 1 cannot exhaust length-2 resolutions
    code, out, _ = run(capsys, "check", str(sl2), "conditions", "--max-degree", "1")
    report = json.loads(out)
    assert code == 3
    assert report["truncated"] is True and report["ok"] is True


def test_ext_delta_report(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "examples", "emit", "sl2-regular", "--out", str(path))
    code, out, _ = run(capsys, "ext-delta", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["ext_delta"]["dims"] == {
        "u,u,0,0": 1, "v,v,0,0": 1, "v,u,0,1": 1, "v,u,1,-1": 1,
    }
    assert report["ext_nabla"]["total_dim"] == 4


def test_ext_delta_semisimple_identities_only(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "examples", "emit", "semisimple1", "--out", str(path))
    _, out, _ = run(capsys, "ext-delta", str(path))
    report = json.loads(out)
    assert report["ext_delta"]["dims"] == {"w,w,0,0": 1}
    assert report["ext_nabla"]["dims"] == {"w,w,0,0": 1}


def test_verify_main_theorem_exit_codes(tmp_path, capsys):
    for name, expected in (
        ("sl2-regular", 0),
        ("a2-dominant", 0),
        ("sl2-regular-badht", 1),
        ("a3-zero-mixed", 1),
    ):
        path = tmp_path / f"{name}.json"
        run(capsys, "examples", "emit", name, "--out", str(path))
        code, out, _ = run(capsys, "verify-main-theorem", str(path))
        assert code == expected, name
        report = json.loads(out)
        assert report["exit_code"] == expected
        if expected == 0:
            assert report["duality"]["verdict"] == "explicit isomorphism"


def test_reports_deterministic(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "examples", "emit", "sl2-regular", "--out", str(path))
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    run(capsys, "verify-main-theorem", str(path), "--out", str(out1))
    run(capsys, "verify-main-theorem", str(path), "--out", str(out2))
    r1, r2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    t1, t2 = r1.pop("timings"), r2.pop("timings")
    assert r1 == r2
    assert r1["report_digest"] == r2["report_digest"]
    # timings are the only fields allowed to differ
    assert set(t1) == set(t2)
