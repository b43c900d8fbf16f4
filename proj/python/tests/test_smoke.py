import json
import math
import os
import subprocess

import pytest

import shifttower as st


def test_validate_spec():
    spec = st.validate_spec("full", [1, 1], ["1/3", "2/3"])
    assert spec["n"] == 9
    assert spec["a_prime"] == [3, 6]
    assert spec["N"] == 6
    with pytest.raises(st.SpecError, match="5/6"):
        st.validate_spec("full", [1, 1], ["1/2", "1/3"])


def test_entropy():
    assert st.restricted_shift_entropy([2, 2]) == pytest.approx(math.log(2), abs=1e-15)
    assert st.vn_entropy([1, 1], ["1/3", "2/3"]) == pytest.approx(0.636514168295)
    assert st.restricted_shift_entropy([1, 3]) == pytest.approx(0.5623351446)


def test_spanning_and_stream():
    assert st.spanning_dimension("simplified", [2, 2]) == (16, 16)
    assert st.shift_stream(16) == "1010010001000010"
    assert st.default_truncation(1) == 16


def test_commutant_theorem1():
    c = st.commutant_structure("simplified", [1, 1])
    assert c["dimension"] == 2
    assert c["trace_vector"] == ["1/2", "1/2"]
    assert c["containment"] and c["locality"] and c["matches_prediction"]


def test_commutant_theorem2():
    c = st.commutant_structure("full", [1, 1], ["1/3", "2/3"])
    assert c["dimension_vector"] == [1, 1]
    assert c["trace_vector"] == ["1/3", "2/3"]


def test_run_job():
    report, code = st.run_job({"spec": {"dims": [1, 1]}}, "all")
    assert code == 0
    assert report["schema_version"] == st.SCHEMA_VERSION
    assert report["verdict"]["status"] == "pass"
    assert report["sections"]["entropy"]["index"] == 4
    _, bad = st.run_job({"spec": {"variant": "full", "dims": [1, 1], "traces": ["1/2", "1/3"]}}, "entropy")
    assert bad == 2
    with pytest.raises(st.SpecError):
        st.run_job({"spec": {"dims": [1, 1]}, "nope": 1}, "verify")


def test_cli_matches_module(tmp_path):
    cli = os.environ.get("SHIFTTOWER_CLI")
    src = os.environ.get("SHIFTTOWER_SRC")
    if not cli or not src:
        pytest.skip("CLI path not provided")
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [cli, "commutant", "--config", os.path.join(src, "configs", "theorem1.json"), "--out", str(out), "--quiet"],
        check=False,
    )
    assert proc.returncode == 0
    cli_report = json.loads(out.read_text())
    with open(os.path.join(src, "configs", "theorem1.json")) as fh:
        mod_report, _ = st.run_job(json.load(fh), "commutant")
    cli_report.pop("timing")
    mod_report.pop("timing")
    assert cli_report == mod_report
