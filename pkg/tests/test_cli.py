import json
from pathlib import Path

import pydantic
import pytest

import shared
from twistbraid.cli import main, render, run, spec_digest
from twistbraid.cyclo import CycNum
from twistbraid.errors import ValidationError
from twistbraid.jobspec import (
    AnsatzSpec,
    JobSpec,
    RootCoefficient,
    VectorCoefficient,
    build_ansatz,
    build_base,
    parse_coefficient,
    schema,
)


def job(data: dict, **options) -> JobSpec:
    data = {**data, "options": {**data.get("options", {}), **options}}
    return JobSpec.model_validate(data)


def write_job(tmp_path, data: dict):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(data))
    return path


@pytest.mark.parametrize(
    "value,q,expected",
    [
        ("q^2", 3, CycNum.root(3, 2)),
        ("q", 5, CycNum.root(5, 1)),
        ("q^-1", 3, CycNum.root(3, 2)),
        ("-1/2", 1, CycNum.rational(1, "-1/2")),
        (3, 1, CycNum.rational(1, 3)),
        ("zeta_8^3", 1, CycNum.root(8, 3)),
        ("zeta_4", 3, CycNum.root(4, 1)),
    ],
)
def test_parse_coefficient(value, q, expected):
    assert parse_coefficient(value, q) == expected


def test_parse_serialized_coefficients():
    assert parse_coefficient(RootCoefficient(modulus=4, exponent=1)) == CycNum.root(4, 1)
    vector = VectorCoefficient(modulus=3, coeffs=["1", 2])
    assert parse_coefficient(vector) == 1 + 2 * CycNum.root(3, 1)


@pytest.mark.parametrize("value", [True, "x", "q^", "1.5", VectorCoefficient(modulus=3, coeffs=["1.5", "0"])])
def test_parse_coefficient_rejects(value):
    with pytest.raises(ValidationError):
        parse_coefficient(value, 3)


@pytest.mark.parametrize(
    "data",
    [
        {"command": "verify", "group": shared.Z3_GROUP, "alpha": shared.Z3_ALPHA},
        {"command": "enumerate", "group": shared.Z3_GROUP, "alpha": shared.Z3_ALPHA},
        {"command": "center", "group": {"factors": [3], "named": "s3"}, "alpha": shared.Z3_ALPHA},
        {"command": "center", "group": shared.Z3_GROUP, "alpha": {"matrix": [[2]]}},
        {"command": "spectrum"},
        {"command": "compare", "options": {"depth": 3}},
        {"command": "mirror"},
        {"command": "fusion", "colour": "red", "options": {"order": 3}},
        {"command": "bratteli", "options": {"order": 3, "k": 3}},
        {"command": "orbits", **{k: v for k, v in shared.ORBITS_Z3.items() if k != "options"}, "options": {"actions": ["flip"]}},
    ],
)
def test_job_rejected(data):
    with pytest.raises(pydantic.ValidationError):
        JobSpec.model_validate(data)


def test_build_helpers():
    with pytest.raises(ValidationError):
        build_ansatz(AnsatzSpec(roots=3, pinned={"a": 1}), 3)
    ansatz = build_ansatz(AnsatzSpec(roots=3, zero=True, pinned={"2": "q"}, pin_identity=False), 3)
    assert not ansatz.pin_identity
    assert dict(ansatz.pinned) == {2: CycNum.root(3, 1)}
    spec = JobSpec.model_validate({**shared.VERIFY_Q8_BROKEN, "cocycle": {"table": [[0] * 4] * 4, "modulus": 2}})
    with pytest.raises(ValidationError):
        build_base(spec)


def test_verify_ok():
    report, code = run(job(shared.VERIFY_GAUSSIAN))
    assert code == 0
    assert report["status"] == 0
    assert report["command"] == "verify"
    assert report["result"]["braid_ok"]
    assert report["result"]["unitary_scalar"] == {"modulus": 3, "coeffs": ["3", "0"]}


def test_verify_failure_exit_code():
    report, code = run(job(shared.VERIFY_Q8_BROKEN))
    assert code == 3
    assert not report["result"]["braid_ok"]


def test_validation_exit_code():
    data = {**shared.VERIFY_GAUSSIAN, "alpha": {"matrix": [[2]], "modulus": 2}}
    report, code = run(job(data))
    assert code == 2
    assert report["error"]["type"] == "ValidationError"
    assert "result" not in report


def test_budget_exit_code():
    report, code = run(job(shared.ENUMERATE_Z3, budget=5))
    assert code == 4
    assert report["error"]["type"] == "BudgetExceeded"


def test_image_order_past_cap():
    data = {**shared.VERIFY_GAUSSIAN, "command": "image-order"}
    _, code = run(job(data, cap=10))
    assert code == 4
    report, code = run(job(data))
    assert code == 0
    assert report["result"]["order"] == shared.GAUSSIAN_Z3_IMAGE_ORDER


def test_enumerate_and_orbits():
    report, code = run(job(shared.ENUMERATE_Z3))
    assert code == 0
    assert report["result"]["count"] == shared.Z3_SOLUTIONS
    assert report["result"]["swept"] == 9
    report, _ = run(job(shared.ORBITS_Z3))
    assert len(report["result"]["orbits"]) == 1
    assert report["result"]["actions"] == ["character", "conjugation"]


def test_structure_commands():
    report, code = run(job({"command": "spectrum"}, p=3, x=2))
    assert code == 0
    assert report["result"]["case"] == 2
    assert report["result"]["match"]
    report, code = run(job({"command": "fusion"}, order=3, depth=3))
    assert code == 0
    assert report["result"]["violations"] == []
    report, _ = run(job({"command": "bratteli"}, order=3, depth=4))
    assert [level["end_dim"] for level in report["result"]["levels"]] == [1, *shared.FIXED_DIMS.values()]
    center = {
        "command": "center",
        "group": {"factors": [3, 3]},
        "alpha": {"matrix": [[2, 0], [0, 2]], "modulus": 3},
    }
    report, _ = run(job(center, n=4))
    assert report["result"]["dimension"] == shared.CENTER_DIMS[4]
    report, _ = run(job({**center, "command": "fixed-dim"}, n=3))
    assert report["result"]["dimension"] == shared.FIXED_DIMS[3]


def test_compare():
    report, code = run(job(shared.COMPARE_Z3))
    assert code == 0
    assert report["result"]["ok"]


def test_report_is_deterministic():
    first, _ = run(job(shared.ENUMERATE_Z3))
    second, _ = run(job(shared.ENUMERATE_Z3, threads=4))
    assert first["spec_sha256"] == second["spec_sha256"]
    assert render(first) == render(second)
    assert spec_digest(job(shared.ENUMERATE_Z3)) != spec_digest(job(shared.ENUMERATE_Z3, budget=50))


def test_main_print_schema(capsys):
    assert main(["--print-schema"]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert "command" in printed["properties"]


def test_main_needs_readable_spec(tmp_path):
    assert main([]) == 2
    assert main(["--spec", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["--spec", str(bad)]) == 2
    assert main(["--spec", str(write_job(tmp_path, {"command": "verify"}))]) == 2


def test_main_writes_report(tmp_path, capsys):
    path = write_job(tmp_path, shared.VERIFY_GAUSSIAN)
    out = tmp_path / "report.json"
    assert main(["--spec", str(path), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["result"]["braid_ok"]
    assert capsys.readouterr().out == ""
    assert main(["--spec", str(path)]) == 0
    assert json.loads(capsys.readouterr().out) == json.loads(out.read_text())


def test_main_budget_override(tmp_path):
    path = write_job(tmp_path, shared.ENUMERATE_Z3)
    assert main(["--spec", str(path), "--budget", "5"]) == 4
    with pytest.raises(SystemExit):
        main(["--spec", str(path), "--threads", "0"])


def test_main_writes_dot(tmp_path):
    path = write_job(tmp_path, shared.COMPARE_Z3)
    dots = tmp_path / "dot"
    assert main(["--spec", str(path), "--out", str(tmp_path / "out.json"), "--dot", str(dots)]) == 0
    files = sorted(p.name for p in dots.glob("compare-*.dot"))
    assert len(files) == 2
    assert "compare-C-m3-r1.dot" in files
    assert all(p.read_text().startswith("digraph") for p in dots.iterdir())


def test_committed_schema_matches_models():
    committed = json.loads((Path(__file__).parent.parent / "schema" / "jobspec.schema.json").read_text())
    live = schema()
    assert set(committed["properties"]) == set(live["properties"])
    assert committed["required"] == live["required"]
    assert set(committed["$defs"]["Options"]["properties"]) == set(live["$defs"]["Options"]["properties"])
