"""Certificate envelopes and the independent re-checker.

A certificate separates a canonical payload (hashed, fully deterministic,
all numbers as decimal strings) from metadata such as timings.  The
re-checker rebuilds every object named in a payload from its stored
parameters and recomputes the claimed values from scratch, so a tampered
certificate fails with a pointer to the first mismatch.
"""

import hashlib
import json
from dataclasses import dataclass, field as dfield
from typing import Optional, Tuple

from . import __version__
from . import auxcurves as AX
from . import curves as C
from . import kummer as KM
from . import m8 as M8
from .field import FieldCtx

SCHEMA_VERSION = "1"
KINDS = ("m8", "kummer", "genus3", "genus4")


@dataclass
class CertificateEnvelope:
    kind: str
    payload: dict
    tool_version: str = __version__
    timings: dict = dfield(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")

    def canonical_payload(self) -> str:
        return json.dumps(self.payload, sort_keys=True, separators=(",", ":"))

    def payload_hash(self) -> str:
        return hashlib.sha256(self.canonical_payload().encode()).hexdigest()

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "payload": self.payload,
            "payload_sha256": self.payload_hash(),
            "tool_version": self.tool_version,
            "timings": self.timings,
        }


def write_certificate(env: CertificateEnvelope, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(env.to_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_certificate(path: str) -> CertificateEnvelope:
    with open(path) as fh:
        raw = json.load(fh)
    env = CertificateEnvelope(
        raw["kind"],
        raw["payload"],
        raw.get("tool_version", ""),
        raw.get("timings", {}),
        raw.get("schema_version", SCHEMA_VERSION),
    )
    if raw.get("payload_sha256") not in (None, env.payload_hash()):
        raise ValueError("stored payload hash does not match the payload")
    return env


def recheck(env: CertificateEnvelope, config: Optional[C.Config] = None) -> Tuple[bool, str]:
    """(ok, message): message names the first failing assertion."""
    cfg = config or C.Config()
    try:
        if env.kind == "m8":
            return _recheck_m8(env.payload, cfg)
        if env.kind == "kummer":
            if "rows" in env.payload:
                return _recheck_table1(env.payload, cfg)
            return _recheck_search(env.payload, cfg)
        if env.kind == "genus3":
            return _recheck_aux(env.payload, cfg, "genus3")
        if env.kind == "genus4":
            return _recheck_aux(env.payload, cfg, "genus4")
    except Exception as exc:
        return False, f"recheck aborted: {type(exc).__name__}: {exc}"
    return False, f"unknown kind {env.kind}"


def _parse_elem(ctx: FieldCtx, s: str):
    return ctx.elem([int(v) for v in s.split(",")])


def _field_from_payload(p: int, fld: dict) -> FieldCtx:
    k = int(fld["k"])
    if k == 1:
        return FieldCtx(p)
    return FieldCtx(p, k, tuple(int(c) for c in fld["modulus"]))


def _recheck_m8(payload: dict, cfg: C.Config) -> Tuple[bool, str]:
    p = int(payload["p"])
    ctx = _field_from_payload(p, payload["field"])
    t1 = _parse_elem(ctx, payload["t1"])
    t2 = _parse_elem(ctx, payload["t2"])
    bv = M8.b_p_eval(p, t1, t2)
    cv = M8.c_p_eval(p, t1, t2)
    if bv.to_str() != payload["b_value"]:
        return False, f"b_value mismatch: recomputed {bv.to_str()}"
    if cv.to_str() != payload["c_value"]:
        return False, f"c_value mismatch: recomputed {cv.to_str()}"
    if not bv.is_zero():
        return False, "b_value is not zero"
    if not cv.is_zero():
        return False, "c_value is not zero"
    params = M8.M8Params(p, ctx, t1, t2, payload.get("route", ""))
    c1, e1, e2, y = M8.build_components(params)
    models = {"C1": c1, "E1": e1, "E2": e2}
    if payload["mode"] == "conditional":
        return True, "conditional certificate reproduced"
    flags: dict = {}
    Ls = {
        "C1": M8._lpoly_c1(c1, cfg, flags),
        "E1": C.lpolynomial(e1, cfg.counting_budget),
        "E2": C.lpolynomial(e2, cfg.counting_budget),
    }
    for comp in payload["components"]:
        name = comp["name"]
        L = Ls[name]
        if [str(c) for c in L.coeffs] != comp["L"]:
            return False, f"L({name}) mismatch: recomputed {list(L.coeffs)}"
        if M8._slope_strings(L) != comp["slopes"]:
            return False, f"slopes({name}) mismatch"
        if not C.is_supersingular(L):
            return False, f"component {name} is not supersingular"
        if int(comp["field_k"]) != models[name].ctx.k:
            return False, f"field_k({name}) mismatch"
    Fr = e2.ctx
    lift = Fr.k // ctx.k
    sC1 = Ls["C1"].base_change(lift).power_sums(2)
    sE1 = Ls["E1"].base_change(lift).power_sums(2)
    sE2 = Ls["E2"].power_sums(2)
    for i, stored in enumerate(payload["y_counts"]):
        k = i + 1
        n = C.count_points(y, lift * k, cfg.counting_budget)
        if n != int(stored):
            return False, f"y_count over ext {k} mismatch: recomputed {n}"
        pred = Fr.q ** k + 1 - (sC1[k - 1] + sE1[k - 1] + sE2[k - 1])
        if pred != int(payload["predicted_counts"][i]):
            return False, f"predicted_count over ext {k} mismatch: recomputed {pred}"
    return True, "unconditional certificate reproduced"


def _recheck_table1(payload: dict, cfg: C.Config) -> Tuple[bool, str]:
    for row in payload["rows"]:
        p = int(row["p"])
        fresh = KM.verify_table1(p, cfg)["rows"][0]
        if fresh["pass"] != row["pass"]:
            return False, f"table row p={p}: pass flag not reproduced"
        if row.get("L") != fresh.get("L"):
            return False, f"table row p={p}: L mismatch: recomputed {fresh.get('L')}"
    return True, "table rows reproduced"


def _recheck_search(payload: dict, cfg: C.Config) -> Tuple[bool, str]:
    p = int(payload["p"])
    ctx = FieldCtx(p)
    for search in payload["searches"]:
        curve = search["curve"]
        d = [_parse_elem(ctx, s) for s in curve["d"]]
        Z = KM.Genus2Curve(ctx, tuple(d), curve.get("label", ""))
        LZ = C.lpolynomial(Z.model(), cfg.counting_budget)
        if not C.is_supersingular(LZ):
            return False, f"curve {curve.get('label', '')} is not supersingular"
        K = KM.kummer_surface(Z)
        nodes = KM.kummer_nodes(K)
        for r in search["results"]:
            V = KM.PlaneV(ctx, *[_parse_elem(ctx, s) for s in r["plane"]])
            fresh = KM._examine_plane(K, nodes, V, cfg.counting_budget)
            if fresh is None:
                return False, f"plane {r['plane']} no longer passes the filters"
            fp = fresh.payload()
            for key in ("quartic", "cartier", "counts", "status", "L", "slopes"):
                if key in r and fp.get(key) != r[key]:
                    return False, f"plane {r['plane']}: {key} mismatch"
    return True, "search results reproduced"


def _recheck_aux(payload: dict, cfg: C.Config, kind: str) -> Tuple[bool, str]:
    p = int(payload["p"])
    k = int(payload["parameter_field_k"])
    from .field import make_extension

    ctx = make_extension(p, k) if k > 1 else FieldCtx(p)
    par = _parse_elem(ctx, payload["parameter"])
    one = ctx.one
    if kind == "genus3":
        rhs = [ctx.zero, par, ctx.zero, -(one + par), ctx.zero, one]
        models = {
            "X": C.HyperellipticSextic(ctx, tuple(rhs)),
            "E": C.EllipticWeierstrass(ctx, (ctx.zero, ctx.elem(-1), ctx.zero, one)),
        }
        fresh = AX.genus3_double_cover(p, cfg.counting_budget)
    else:
        rhs = [par, ctx.zero, ctx.zero, -(one + par), ctx.zero, ctx.zero, one]
        models = {
            "X": C.HyperellipticSextic(ctx, tuple(rhs)),
            "E": C.EllipticWeierstrass(ctx, (ctx.elem(-1), ctx.zero, ctx.zero, one)),
            "E'": C.EllipticWeierstrass(ctx, (-par, ctx.zero, ctx.zero, one)),
        }
        fresh = AX.genus4_branched_cover(p, cfg.counting_budget)
    for comp in payload["components"]:
        L = C.lpolynomial(models[comp["name"]], cfg.counting_budget)
        if [str(c) for c in L.coeffs] != comp["L"]:
            return False, f"L({comp['name']}) mismatch: recomputed {list(L.coeffs)}"
        if not C.is_supersingular(L):
            return False, f"component {comp['name']} is not supersingular"
    if fresh.hit_count != int(payload["hit_count"]):
        return False, f"hit_count mismatch: recomputed {fresh.hit_count}"
    return True, f"{kind} certificate reproduced"
