import io
import json

import pytest

from braidcoinv.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call("--format", "json", *argv)
    return code, json.loads(text)


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("BRAIDCOINV_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def test_info():
    code, rep = call_json("info", "--e", "2", "--n", "2")
    assert code == 0
    r = rep["result"]
    assert (r["order"], r["hyperplanes"], r["dim_M"]) == (8, 4, 4)
    assert r["degrees"] == [2, 4]
    assert rep["schema_version"] == 1 and rep["tool"] == "braidcoinv"


def test_verify_nilpotency_exit_zero():
    code, rep = call_json("verify", "--check", "nilpotency", "--e", "3", "--n", "2")
    assert code == 0 and rep["ok"]
    assert _no_floats(rep)


def test_decompose_t1():
    code, rep = call_json("decompose", "--e", "3", "--n", "2", "--element", "w: 1 2; c: 1 0")
    assert code == 0
    assert rep["result"]["reconstructed"] == "w: 1 2; c: 1 0"
    assert json.dumps(rep["result"]).count("t") >= 1


def test_failure_exit_code():
    code, rep = call_json("verify", "--check", "descent", "--e", "3", "--n", "2", "--max-degree", "2")
    assert code == 1 and not rep["ok"]
    code, rep = call_json("verify", "--check", "descent", "--e", "3", "--n", "2", "--max-degree", "2",
                          "--twist", "direct")
    assert code == 0


def test_usage_errors(capsys):
    assert call("verify", "--check", "bogus", "--e", "2", "--n", "2")[0] == 2
    assert json.loads(capsys.readouterr().err.strip().splitlines()[-1])["error"] == "UsageError"
    assert call("--max-order", "100", "info", "--e", "3", "--n", "5")[0] == 2
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "CapExceeded"
    assert call("decompose", "--e", "2", "--n", "2", "--element", "w: 1 1; c: 0 0")[0] == 2


def test_hilbert_methods():
    for m in ("ideal", "pairing"):
        code, rep = call_json("hilbert", "--e", "3", "--n", "2", "--method", m)
        assert code == 0 and rep["result"]["values"] == [1, 2, 3, 3, 3, 3, 2, 1]
    code, rep = call_json("hilbert", "--e", "2", "--n", "2", "--method", "image-tensor")
    assert code == 0


def test_pairing_csv():
    code, text = call("--format", "csv", "pairing", "--e", "2", "--n", "2")
    assert code == 0
    head = text.splitlines()[0].split(",")
    assert head[0] == "monomial" and len(head) == 9


def test_determinism():
    a = call_json("verify", "--check", "equivariance", "--e", "3", "--n", "2", "--seed", "5")
    b = call_json("verify", "--check", "equivariance", "--e", "3", "--n", "2", "--seed", "5")
    assert a == b


def test_cache_replay_matches_cold_run(isolated_cache):
    args = ("verify", "--check", "descent", "--e", "2", "--n", "2", "--max-degree", "3")
    cold = call_json("--no-cache", *args)
    first = call_json(*args)
    assert any(isolated_cache.iterdir())
    warm = call_json(*args)
    assert cold == first == warm


def test_env_overrides_cache_dir(tmp_path, isolated_cache):
    other = tmp_path / "elsewhere"
    call_json("--cache-dir", str(other), "verify", "--check", "descent", "--e", "2", "--n", "2", "--max-degree", "2")
    assert isolated_cache.exists() and not other.exists()


def test_validate(tmp_path):
    code, rep = call_json("info", "--e", "2", "--n", "2")
    good = tmp_path / "good.json"
    good.write_text(json.dumps(rep))
    assert call("validate", str(good))[0] == 0
    rep["schema_version"] = 99
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(rep))
    assert call("validate", str(bad))[0] == 2


def test_stale_cache_entry_ignored(isolated_cache):
    from braidcoinv.cache import Cache

    c = Cache()
    key = c.key(2, 2, 2, "kernel")
    c.put(key, {"x": 1})
    assert c.get(key) == {"x": 1}
    p = c._path(key)
    data = json.loads(p.read_text())
    data["schema_version"] = 0
    p.write_text(json.dumps(data))
    assert c.get(key) is None
