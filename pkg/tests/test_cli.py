"""Command line driver: exit codes, output files, determinism."""

import json

import pytest

from lf_forge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_writes_fibration_json(capsys):
    code, out, _ = run(capsys, "generate", "johns", "--genus", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "lefschetz-fibration/1"
    assert len(doc["vanishing_cycles"]) == 8


def test_generate_batch_to_directory(capsys, tmp_path):
    outdir = tmp_path / "batch"
    code, _, _ = run(
        capsys, "generate", "both", "--genus", "0..1", "--out", str(outdir)
    )
    assert code == 0
    names = sorted(p.name for p in outdir.iterdir())
    assert names == [
        "ishikawa-g0.json",
        "ishikawa-g1.json",
        "johns-g0.json",
        "johns-g1.json",
    ]
    for p in outdir.iterdir():
        assert json.loads(p.read_text())["schema"] == "lefschetz-fibration/1"


def test_generate_is_deterministic(capsys):
    _, first, _ = run(capsys, "generate", "ishikawa", "--genus", "2")
    _, second, _ = run(capsys, "generate", "ishikawa", "--genus", "2")
    assert first == second


def test_stamp_adds_timestamp(capsys):
    _, out, _ = run(capsys, "generate", "johns", "--genus", "0", "--stamp")
    assert "generated_at" in json.loads(out)


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--construction", "johns", "--genus", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "certificate/1" and doc["passed"] is True


def test_verify_batch_covers_both_constructions(capsys):
    code, out, _ = run(capsys, "verify", "--genus", "0..2")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == 6
    assert {(d["construction"], d["genus"]) for d in docs} == {
        (c, g) for c in ("johns", "ishikawa") for g in range(3)
    }
    assert all(d["passed"] for d in docs)


def test_verify_sphere_model(capsys):
    code, out, _ = run(capsys, "verify", "--construction", "sphere", "--genus", "0")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_compare_finds_isomorphism(capsys):
    code, out, _ = run(capsys, "compare", "--genus", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc["found"] is True and doc["orientation_preserving"] is True


def test_compare_mismatched_genus_fails(capsys):
    code, out, err = run(
        capsys, "compare", "--genus", "0", "--against", "johns:1"
    )
    assert code == 1
    assert json.loads(out)["found"] is False
    assert "no isomorphism" in err


def test_compare_rejects_malformed_against(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compare", "--genus", "0", "--against", "johns"])
    assert exc.value.code == 2


def test_export_divide_text(capsys):
    code, out, _ = run(
        capsys, "export", "divide", "--genus", "0", "--format", "text"
    )
    assert code == 0
    assert out.splitlines()[0].startswith("v0:")


def test_export_fiber_dot(capsys, tmp_path):
    outdir = tmp_path / "dots"
    code, _, _ = run(
        capsys,
        "export",
        "fiber",
        "--construction",
        "johns",
        "--genus",
        "0..1",
        "--format",
        "dot",
        "--out",
        str(outdir),
    )
    assert code == 0
    names = sorted(p.name for p in outdir.iterdir())
    assert names == ["fiber-johns-g0.dot", "fiber-johns-g1.dot"]
    assert outdir.joinpath("fiber-johns-g0.dot").read_text().startswith("graph")


def test_export_fiber_rejects_text_format(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["export", "fiber", "--format", "text"])
    assert exc.value.code == 2


def test_negative_genus_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "johns", "--genus", "-1"])
    assert exc.value.code == 2


def test_genus_range_cap(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "johns", "--genus", "0..99"])
    assert exc.value.code == 2


def test_sphere_off_genus_zero_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "sphere", "--genus", "1"])
    assert exc.value.code == 2


def test_single_output_to_file(capsys, tmp_path):
    target = tmp_path / "one.json"
    code, out, _ = run(
        capsys, "generate", "johns", "--genus", "0", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["schema"] == "lefschetz-fibration/1"


def test_verbose_notes_go_to_stderr(capsys):
    code, out, err = run(capsys, "generate", "johns", "--genus", "0", "-v")
    assert code == 0
    assert "built johns genus 0" in err
    assert "built" not in out
