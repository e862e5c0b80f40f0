import json
import subprocess
import sys

import pytest

from parahoric import __version__
from parahoric.cli import EXIT_ERROR, EXIT_OK, EXIT_SEMISTABLE, EXIT_UNSTABLE, JobSpec, batch, main, run, summary_exit

CHECK_HALF = {"command": "check", "group": "A1", "payload": {"theta": [["1/2"], ["1/2"], ["1/2"]]}}


def check_job(*ts):
    return {"command": "check", "group": "A1", "payload": {"theta": [[t] for t in ts]}}


def test_check_stable():
    env = run(CHECK_HALF)
    assert env.exit_code == EXIT_OK and env.result["status"] == "Stable"
    doc = env.to_json()
    assert doc["version"] == __version__ and doc["command"] == "check"


def test_check_exit_codes():
    assert run(check_job("0", "0", "0")).exit_code == EXIT_SEMISTABLE
    assert run(check_job("1", "1/3", "0")).exit_code == EXIT_UNSTABLE


def test_gw_job():
    env = run({"command": "gw", "group": "A1", "payload": {"k": 1, "degree": 1, "classes": [[1], [1], [1]]}})
    assert env.exit_code == EXIT_OK and env.result["value"] == 1


def test_extend_job():
    env = run({"command": "extend", "group": "A1", "payload": {"rho": "Ad", "theta": ["3/4"]}})
    assert env.exit_code == EXIT_OK
    assert set(env.result["limits"]) == {"0", "1/2", "3/4"}
    assert env.result["degree"] == 1


@pytest.mark.parametrize(
    "rec,path",
    [
        ({"command": "check", "group": "A1", "payload": {"theta": [[0.5], ["1/2"], ["1/2"]]}}, "payload/theta/0/0"),
        ({"command": "nope", "group": "A1", "payload": {}}, "command"),
        ({"group": "A1", "payload": {}}, "<root>"),
    ],
)
def test_schema_errors(rec, path):
    env = run(rec)
    assert env.exit_code == EXIT_ERROR and env.result is None
    assert f"at {path}" in env.error


def test_domain_error_is_envelope():
    env = run(check_job("3/2", "0", "0"))
    assert env.exit_code == EXIT_ERROR and "DomainError" in env.error


def test_batch_examples():
    assert batch([]) == [] and summary_exit([]) == EXIT_OK
    lines = [json.dumps(check_job(t, t, t)) for t in ("1/2", "0", "1/3")]
    envs = batch(lines)
    assert [e.job["payload"]["theta"][0][0] for e in envs] == ["1/2", "0", "1/3"]
    mixed = lines + ["{not json", json.dumps({"command": "check"})]
    envs = batch(mixed)
    assert [e.exit_code for e in envs][-2:] == [EXIT_ERROR, EXIT_ERROR]
    assert summary_exit(envs) == EXIT_ERROR


def test_severity_order():
    assert summary_exit(batch([json.dumps(check_job("1/2", "1/2", "1/2")), json.dumps(check_job("0", "0", "0"))])) == EXIT_SEMISTABLE
    assert summary_exit(batch([json.dumps(check_job("0", "0", "0")), json.dumps(check_job("1", "1/3", "0"))])) == EXIT_UNSTABLE


def test_batch_order_with_workers():
    ts = ["0", "1/8", "1/4", "3/8", "1/2", "5/8", "3/4", "7/8", "1"]
    lines = [json.dumps(check_job(t, "1/2", "1/2")) for t in ts]
    serial = [e.result for e in batch(lines)]
    parallel = batch(lines, workers=4)
    assert [e.job["payload"]["theta"][0][0] for e in parallel] == ts
    assert [e.result for e in parallel] == serial


def test_round_trip_and_replay():
    for rec in (CHECK_HALF, check_job("0", "1/3", "1/3")):
        env = run(rec)
        again = JobSpec.from_json(env.to_json()["input"])
        assert again == JobSpec.from_json(rec)
        replay = run(again)
        assert replay.input_hash == env.input_hash and replay.result == env.result


def test_hash_covers_payload():
    a, b = run(check_job("0", "0", "0")), run(check_job("0", "0", "1/2"))
    assert a.input_hash != b.input_hash
    c = run({**check_job("0", "0", "0"), "output_path": None})
    assert c.exit_code == EXIT_ERROR or c.input_hash == a.input_hash


def test_output_path(tmp_path):
    out = tmp_path / "env.json"
    env = run({**CHECK_HALF, "output_path": str(out)})
    assert json.loads(out.read_text())["input_hash"] == env.input_hash


def test_main_commands(capsys):
    assert main(["check", "--group", "A1", "--theta", "1/2", "1/2", "1/2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["result"]["status"] == "Stable"
    assert main(["gw", "--shape", "1,2", "--degree", "1", "--classes", "1;1;1"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["result"]["value"] == 1
    assert main(["walls", "--group", "A1", "--s", "3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["result"]["wall_count"] == 4
    assert main(["classify", "--group", "A2", "--point", "0", "1/2"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["result"]["dim"] == 1
    assert main(["check", "--group", "A2", "--theta", "0", "0", "0"]) == EXIT_ERROR


def test_main_batch_file(tmp_path, capsys):
    f = tmp_path / "jobs.ndjson"
    f.write_text("\n".join(json.dumps(check_job(t, t, t)) for t in ("1/2", "0")) + "\n")
    assert main(["batch", str(f), "--workers", "2"]) == EXIT_SEMISTABLE
    docs = [json.loads(ln) for ln in capsys.readouterr().out.splitlines()]
    assert [d["result"]["status"] for d in docs] == ["Stable", "StrictlySemistable"]
    empty = tmp_path / "empty.ndjson"
    empty.write_text("")
    assert main(["batch", str(empty)]) == EXIT_OK
    assert capsys.readouterr().out == ""


def test_witness_cli():
    out = subprocess.run(
        [sys.executable, "-m", "parahoric", "witness", "--group", "A1", "--theta", "1/2", "1/2", "1/2", "--budget", "1000", "--seed", "7"],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == EXIT_OK
    res = json.loads(out.stdout)["result"]
    assert res["found"] and res["witness"]["residual"] < 1e-8
    assert len(res["witness"]["matrices"]) == 3 and "irreducibility_margin" in res
