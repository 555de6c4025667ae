import json

import pytest

from ss5 import auxcurves as A
from ss5 import certs
from ss5 import kummer as KM
from ss5 import m8 as M8
from ss5.field import FieldCtx


def _m8_env(p=7, mode="unconditional"):
    cert = M8.verify_theorem12(p, mode)
    return certs.CertificateEnvelope("m8", cert.payload())


def test_envelope_roundtrip_and_hash_stability(tmp_path):
    env = _m8_env()
    path = str(tmp_path / "cert.json")
    certs.write_certificate(env, path)
    loaded = certs.load_certificate(path)
    assert loaded.payload == env.payload
    assert loaded.payload_hash() == env.payload_hash()
    # timings are metadata: they do not feed the hash
    env2 = certs.CertificateEnvelope("m8", env.payload, timings={"seconds": 99})
    assert env2.payload_hash() == env.payload_hash()


def test_envelope_rejects_unknown_kind():
    with pytest.raises(ValueError):
        certs.CertificateEnvelope("surprise", {})


def test_load_detects_hash_tampering(tmp_path):
    env = _m8_env()
    path = tmp_path / "cert.json"
    certs.write_certificate(env, str(path))
    doc = json.loads(path.read_text())
    doc["payload"]["t1"] = "6"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError):
        certs.load_certificate(str(path))


def test_recheck_m8_roundtrip_and_tamper():
    env = _m8_env()
    ok, msg = certs.recheck(env)
    assert ok, msg
    tampered = json.loads(json.dumps(env.payload))
    tampered["t1"] = "6"
    ok, msg = certs.recheck(certs.CertificateEnvelope("m8", tampered))
    assert not ok
    assert "b_value" in msg


def test_recheck_m8_conditional():
    env = _m8_env(7, "conditional")
    ok, msg = certs.recheck(env)
    assert ok, msg


def test_recheck_m8_detects_wrong_component_l():
    env = _m8_env()
    bad = json.loads(json.dumps(env.payload))
    bad["components"][0]["L"][2] = "12345"
    ok, msg = certs.recheck(certs.CertificateEnvelope("m8", bad))
    assert not ok and "L(" in msg


def test_recheck_kummer_search_roundtrip_and_tamper():
    ctx = FieldCtx(5)
    Z = KM.sextic_normalize(ctx, (2, 0, 0, 0, 0, 1, 1), label="t")
    results = KM.search_planes(Z)
    payload = {
        "p": "5",
        "searches": [{
            "curve": Z.describe(),
            "results": [r.payload() for r in results],
        }],
    }
    env = certs.CertificateEnvelope("kummer", payload)
    ok, msg = certs.recheck(env)
    assert ok, msg
    bad = json.loads(json.dumps(payload))
    bad["searches"][0]["results"][0]["status"] = "prank0-only"
    ok, msg = certs.recheck(certs.CertificateEnvelope("kummer", bad))
    assert not ok and "status" in msg


def test_recheck_table_row():
    report = KM.verify_table1(5)
    env = certs.CertificateEnvelope("kummer", report)
    ok, msg = certs.recheck(env)
    assert ok, msg
    bad = json.loads(json.dumps(report))
    bad["rows"][0]["L"][2] = "11"
    ok, msg = certs.recheck(certs.CertificateEnvelope("kummer", bad))
    assert not ok


def test_recheck_aux_roundtrip_and_tamper():
    for kind, make, p in (
        ("genus3", A.genus3_double_cover, 7),
        ("genus4", A.genus4_branched_cover, 5),
    ):
        cert = make(p)
        env = certs.CertificateEnvelope(kind, cert.payload())
        ok, msg = certs.recheck(env)
        assert ok, msg
        bad = json.loads(json.dumps(env.payload))
        bad["hit_count"] = str(int(bad["hit_count"]) + 1)
        ok, msg = certs.recheck(certs.CertificateEnvelope(kind, bad))
        assert not ok and "hit_count" in msg


def test_canonical_payload_is_key_sorted():
    env = certs.CertificateEnvelope("m8", {"b": "1", "a": "2"})
    assert env.canonical_payload() == '{"a":"2","b":"1"}'
