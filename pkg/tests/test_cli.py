import shutil
import subprocess
import sys

import pytest

from heckeq import cli
from heckeq.cli import JobSpec, StageError, emit, main, parse_group_file, parse_machine, run
from heckeq.errors import InputError, MalformedCycleError

S4_GROUP = """\
degree: 4
generators: (1 2); (1 2 3 4)
subgroup klein: (1 2); (3 4)
"""


@pytest.fixture(scope="module")
def klein_report():
    return run(JobSpec.bundled("s4-klein"))


def test_jobs_listing(capsys):
    assert main(["jobs"]) == 0
    out = capsys.readouterr().out
    for name in ("s4-klein", "s4-s3", "g80-p5", "g80-z23"):
        assert name in out


def test_human_report_klein(capsys):
    assert main(["equations", "--job", "s4-klein"]) == 0
    out = capsys.readouterr().out
    assert "  q_2(z) = 0" in out
    assert "  q_3(z) = -1·z" in out
    assert "Ker(12·q_1 + 12·q_3)_0  [n = 24]" in out
    assert "complement relative to d4 (index 2):" in out


def test_report_sections(klein_report):
    r = klein_report
    assert r.ok
    assert (r.group_order, r.subgroup_order) == (24, 4)
    assert r.sections["doublecosets"]["sizes"] == [4, 16, 4]
    assert r.sections["doublecosets"]["transversal_two_sided"]
    v = r.sections["verify"]["regular"]
    assert dict(map(tuple, v["isotypical_dims"])) == {"chi0": 1, "U": 2, "W": 3}
    assert {"character": "W", "overgroup": "d4"} in v["complement_matches"]
    assert all(c["passed"] for c in v["checks"])


def test_machine_roundtrip_and_determinism(klein_report):
    text = emit(klein_report, "machine")
    assert text.startswith("schema: 1\n")
    assert parse_machine(text) == klein_report
    assert emit(run(JobSpec.bundled("s4-klein")), "machine") == text


def test_machine_rejects_bad_header():
    with pytest.raises(InputError):
        parse_machine("schema: 9\n{}")


def test_header_only_report():
    r = run(JobSpec.bundled("s4-s3", outputs=()))
    assert r.sections == {} and r.stages == []
    assert emit(r).startswith("job s4-s3: |G| = 24, |H| = 6")


def test_unknown_output_rejected():
    with pytest.raises(StageError) as info:
        run(JobSpec.bundled("s4-s3", outputs=("nonsense",)))
    assert info.value.exit_code == 1 and isinstance(info.value.cause, InputError)


def test_malformed_cycle_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.group"
    p.write_text("degree: 4\ngenerators: (1 2)(2 3)\nsubgroup h: (1 2)\n")
    assert main(["hecke", "--group", str(p), "--subgroup", "h"]) == 1
    err = capsys.readouterr().err
    assert "error [input]" in err and "line 2" in err
    assert "^" in err


def test_missing_group_file(capsys):
    assert main(["hecke", "--group", "/nonexistent.group", "--subgroup", "h"]) == 1
    assert "does not exist" in capsys.readouterr().err


def test_subgroup_not_contained(tmp_path, capsys):
    p = tmp_path / "g.group"
    p.write_text("degree: 5\ngenerators: (1 2); (1 2 3 4)\n")
    assert main(["hecke", "--group", str(p), "--subgroup", "(4 5)"]) == 1
    assert "error [input]" in capsys.readouterr().err


def test_custom_group_and_generator_subgroup(tmp_path, capsys):
    p = tmp_path / "s4.group"
    p.write_text(S4_GROUP)
    assert main(["doublecosets", "--group", str(p), "--subgroup", "(1 2); (3 4)"]) == 0
    assert "double cosets (3):" in capsys.readouterr().out


def test_out_and_machine_format(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert main(["hecke", "--job", "g80-p5", "--format", "machine", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    r = parse_machine(out.read_text())
    products = {(p["left"], p["right"]): p["coefficients"] for p in r.sections["hecke"]["products"]}
    assert products[(2, 2)] == ["5", "0", "2", "2"]


def test_schur_override(capsys):
    assert main(["chartab", "--job", "s4-klein", "--schur", "W=1", "--format", "machine"]) == 0
    r = parse_machine(capsys.readouterr().out)
    w = next(x for x in r.sections["chartab"]["rational"] if x["label"] == "W")
    assert w["schur_source"] == "user"
    assert main(["chartab", "--job", "s4-klein", "--schur", "W"]) == 1
    assert main(["chartab", "--job", "s4-klein", "--schur", "nobody=2"]) == 1


def test_job_and_group_are_exclusive(capsys):
    assert main(["hecke", "--job", "s4-klein", "--group", "x"]) == 1
    assert main(["hecke"]) == 1


def test_computed_table_matches_ingested(capsys):
    assert main(["equations", "--job", "s4-klein", "--table", "compute", "--format", "machine"]) == 0
    computed = parse_machine(capsys.readouterr().out)
    ingested = run(JobSpec.bundled("s4-klein", outputs=("equations",)))
    assert computed.sections["equations"] == ingested.sections["equations"]


def test_z23_annotation_in_report(capsys):
    assert main(["hecke", "--job", "g80-z23"]) == 0
    out = capsys.readouterr().out
    assert "q_2q_2 = 64q_1: mixed" in out
    assert "q_2q_3 = 8q_3: coset-sum" in out
    assert "q_3q_3 = 8q_3: none" in out
    assert "q_2q_2 = q_1" in out


def test_coset_module_option(capsys):
    assert main(["verify", "--job", "s4-klein", "--module", "coset", "--format", "machine"]) == 0
    r = parse_machine(capsys.readouterr().out)
    assert r.sections["verify"]["coset"]["dimension"] == 6


def test_module_file_option(tmp_path, capsys):
    p = tmp_path / "triv.mod"
    p.write_text("dimension: 1\n1\n1\n")
    assert main(["verify", "--job", "s4-klein", "--module", str(p)]) == 0
    assert "homology on triv.mod module (dimension 1)" in capsys.readouterr().out


def test_theorem_violation_exit_code(monkeypatch, capsys):
    from heckeq.homology import Clause, VerificationReport

    def broken(*a, **k):
        return VerificationReport("forced", (Clause("always", False, "injected"),))

    monkeypatch.setattr(cli, "verify_complement", broken)
    assert main(["verify", "--job", "s4-klein"]) == 3
    assert "theorem violation" in capsys.readouterr().err


def test_group_file_errors():
    with pytest.raises(InputError):
        parse_group_file("generators: (1 2)\n")
    with pytest.raises(InputError):
        parse_group_file("degree: 4\ngenerators: (1 2)\nintermediate h: k\nsubgroup h: (1 2)\n")
    with pytest.raises(MalformedCycleError):
        parse_group_file("degree: 4\ngenerators: (1 1)\n")


@pytest.mark.skipif(shutil.which("heckeq") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["heckeq", "jobs"], capture_output=True, text=True)
    assert res.returncode == 0 and "g80-z23" in res.stdout


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "heckeq.cli", "jobs"], capture_output=True, text=True)
    assert res.returncode == 0
