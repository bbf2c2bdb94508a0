"""Run configuration, structured reports, and certificate re-verification.

A pipeline run turns one parsed command into a Report: tool version, input
digests, cell censuses, serialized certificates, a verdict string, and
per-stage timings.  Everything except the timings is a pure function of
the inputs, so serializing a report without timings is byte-identical
across re-runs; certificates never depend on the RNG seed because nothing
certificate-bearing reads it.

verify_certificate reopens a report, rebuilds just enough context from the
recorded inputs, and re-checks every stored certificate by plain
arithmetic, never re-running a solver.
"""

from __future__ import annotations

import hashlib
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from importlib import resources
from math import factorial

from . import catalog
from .errors import (CertificateError, DegenerateGeometryError,
                     InvalidComplexError, ObstructaError)
from .o3 import (cellular_context, gauss_cocycle, linking_form_from_json,
                 massey_y4, o3_certificate, product_cycle)
from .plgeom import (PLMap, direction_from_json, moment_curve_map,
                     validate_almost_embedding)
from .products import DeletedProduct
from .simplicial import SimplicialComplex, tagged_cycle
from .trees import tree_group
from .vk import vk_class, vk_cocycle
from .whitney import WhitneyDatum, towers_from_json, w3_class, w3_cocycle, wn_cochain
from .zlinalg import (Certificate, EquivariantComplex, InfeasibilityWitness,
                      matrix_from_json, snf, solve_with_witness)

VERSION = "0.1.0"


# ---------------------------------------------------------------------------
# configuration and report
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    """Knobs shared by all pipelines.

    d is the ambient dimension where one applies, n the number of product
    factors, params the moment-curve parameters.  seed only feeds sampling
    helpers; no certificate-bearing computation reads it.  out is a JSON
    Lines path the report is appended to.
    """

    d: int | None = None
    n: int | None = None
    size_guard: int | None = None
    params: tuple | None = None
    seed: int | None = None
    out: str | None = None
    json_output: bool = False


@dataclass
class Report:
    version: str
    command: dict
    inputs: dict
    census: dict
    result: dict
    certificates: list
    context: dict
    verdict: str
    timings: dict = field(default_factory=dict)

    def to_dict(self, include_timings=True):
        out = {
            "version": self.version,
            "command": self.command,
            "inputs": self.inputs,
            "census": self.census,
            "result": self.result,
            "certificates": self.certificates,
            "context": self.context,
            "verdict": self.verdict,
        }
        if include_timings:
            out["timings"] = self.timings
        return out

    def to_json(self, include_timings=True):
        return json.dumps(self.to_dict(include_timings), sort_keys=True)

    @classmethod
    def from_dict(cls, obj):
        try:
            return cls(version=obj["version"], command=obj["command"],
                       inputs=obj["inputs"], census=obj["census"],
                       result=obj.get("result", {}),
                       certificates=obj["certificates"],
                       context=obj["context"], verdict=obj["verdict"],
                       timings=obj.get("timings", {}))
        except (KeyError, TypeError) as e:
            raise InvalidComplexError(f"report malformed: {e}") from e

    def save(self, path):
        """Append one line to a JSON Lines file."""
        with open(path, "a") as f:
            f.write(self.to_json() + "\n")


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------

def _asset_bytes(name):
    path = resources.files("obstructa").joinpath("assets", name + ".json")
    try:
        return path.read_bytes()
    except FileNotFoundError:
        raise InvalidComplexError(f"no built-in data named {name!r}") from None


def resolve_complex(spec):
    """builtin:<name> from the catalog, else a complex JSON file path.

    Returns (complex, sha256 digest of the serialized input).
    """
    if spec.startswith("builtin:"):
        c = catalog.get(spec[len("builtin:"):])
        raw = c.dumps().encode()
    else:
        with open(spec, "rb") as f:
            raw = f.read()
        c = SimplicialComplex.loads(raw.decode())
    return c, hashlib.sha256(raw).hexdigest()


def resolve_data(spec):
    """builtin:<name> from the packaged assets, else a JSON file path.

    Returns (parsed object, sha256 digest of the raw bytes).
    """
    if spec.startswith("builtin:"):
        raw = _asset_bytes(spec[len("builtin:"):])
    else:
        with open(spec, "rb") as f:
            raw = f.read()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as e:
        raise InvalidComplexError(f"{spec}: not valid JSON: {e}") from e
    return obj, hashlib.sha256(raw).hexdigest()


# ---------------------------------------------------------------------------
# certificate serialization
# ---------------------------------------------------------------------------

def _enc_key(k):
    if isinstance(k, tuple):
        return [_enc_key(x) for x in k]
    return k


def _dec_key(k):
    if isinstance(k, list):
        return tuple(_dec_key(x) for x in k)
    return k


def chain_to_json(chain):
    return [[_enc_key(c), v] for c, v in sorted(chain.items())]


def chain_from_json(obj):
    out = {}
    for c, v in obj:
        out[_dec_key(c)] = int(v)
    return out


def certificate_to_json(cert):
    payload = {}
    for k, v in cert.payload.items():
        if k in ("primitive", "cycle"):
            payload[k] = chain_to_json(v)
        elif k == "witness":
            payload[k] = {"numerators": sorted(v.numerators.items()),
                          "denominator": v.denominator}
        else:
            payload[k] = v
    return {"kind": cert.kind, "degree": cert.degree,
            "character": cert.character, "char_degree": cert.char_degree,
            "cocycle": chain_to_json(cert.cocycle), "payload": payload}


def certificate_from_json(obj):
    try:
        payload = {}
        for k, v in obj["payload"].items():
            if k in ("primitive", "cycle"):
                payload[k] = chain_from_json(v)
            elif k == "witness":
                payload[k] = InfeasibilityWitness(
                    numerators={int(i): int(n) for i, n in v["numerators"]},
                    denominator=int(v["denominator"]))
            else:
                payload[k] = v
        return Certificate(obj["kind"], int(obj["degree"]), obj["character"],
                           int(obj["char_degree"]),
                           chain_from_json(obj["cocycle"]), payload)
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidComplexError(f"certificate malformed: {e}") from e


# ---------------------------------------------------------------------------
# verification contexts
# ---------------------------------------------------------------------------

def _rebuild_context(recipe):
    kind = recipe.get("kind")
    if kind == "cellular":
        return cellular_context()
    if kind == "vk":
        c, digest = resolve_complex(recipe["complex"])
        if digest != recipe["digest"]:
            raise CertificateError(
                f"complex {recipe['complex']} changed since the report was written")
        m = c.dim
        dp = DeletedProduct(c, 2, degrees=(2 * m - 1, 2 * m))
        return EquivariantComplex(dp, "sign_d", char_degree=2 * m)
    if kind == "w3":
        c, digest = resolve_complex(recipe["complex"])
        if digest != recipe["digest"]:
            raise CertificateError(
                f"complex {recipe['complex']} changed since the report was written")
        dp = DeletedProduct(c, 3, degrees=(5, 6))
        return EquivariantComplex(dp, "sign")
    raise InvalidComplexError(f"unknown verification context {kind!r}")


def verify_certificate(path):
    """Re-check every certificate in a JSON Lines report file.

    Contexts are rebuilt from the recorded inputs; verification itself is
    plain arithmetic.  Returns False as soon as any check fails.
    """
    with open(path) as f:
        lines = [ln for ln in f if ln.strip()]
    if not lines:
        raise InvalidComplexError(f"{path}: no reports to verify")
    for ln in lines:
        try:
            obj = json.loads(ln)
        except json.JSONDecodeError as e:
            raise InvalidComplexError(f"{path}: corrupt report line: {e}") from e
        rep = Report.from_dict(obj)
        if not rep.certificates:
            continue
        eq = _rebuild_context(rep.context)
        for cj in rep.certificates:
            cert = certificate_from_json(cj)
            if not cert.verify(eq):
                return False
    return True


# ---------------------------------------------------------------------------
# pipelines
# ---------------------------------------------------------------------------

class _Stages:
    def __init__(self):
        self.timings = {}

    @contextmanager
    def stage(self, name):
        t0 = time.perf_counter()
        try:
            yield
        except ObstructaError as e:
            e.stage = name
            raise
        finally:
            self.timings[name] = round(time.perf_counter() - t0, 6)


def _guard_kw(cfg):
    return {"size_guard": cfg.size_guard} if cfg.size_guard is not None else {}


def _describe(cert):
    kind = cert.kind
    if kind == "zero_with_primitive":
        return "class zero: primitive re-verified entry by entry"
    if kind == "nonzero_by_infeasibility":
        return "class nonzero: infeasibility witness for the primitive system"
    v = cert.payload.get("value")
    parity = " (odd)" if isinstance(v, int) and v % 2 else ""
    return f"class nonzero: pairs to {v}{parity} against a stored cycle"


def _product_cycles(complex_, tags):
    """Fundamental cycles of the tagged subcomplexes crossed into one
    product cycle, when every tag is present."""
    if not all(t in complex_.tags for t in tags):
        return []
    return [product_cycle([tagged_cycle(complex_, t, 2) for t in tags])]


def run_pipeline(command, cfg=None):
    """Dispatch one parsed command dict to its pipeline and build a Report."""
    cfg = cfg or RunConfig()
    op = command.get("op")
    stages = _Stages()
    inputs = {}
    census = {}
    result = {}
    certs = []
    context = {}

    if op == "complex":
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
        with stages.stage("validate"):
            c.validate()
            census = {str(d): k for d, k in c.census().items()}
        verdict = (f"valid complex: dimension {c.dim}, "
                   f"{sum(census.values())} simplices")

    elif op == "dp":
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
        n = cfg.n or command.get("n") or 2
        with stages.stage("build"):
            dp = DeletedProduct(c, n, **_guard_kw(cfg))
            census = dp.census()["by_degree"]
        top = max(int(d) for d in census)
        verdict = (f"{n}-fold deleted product: {sum(census.values())} cells, "
                   f"{census[str(top)]} in top degree {top}")

    elif op == "snf":
        with stages.stage("load"):
            obj, inputs["matrix"] = resolve_data(command["matrix"])
            entries, nrows, ncols = matrix_from_json(obj)
        with stages.stage("reduce"):
            res = snf(entries, nrows, ncols, track_u=False, track_v=False)
        result = {"rank": res.rank, "divisors": res.divisors,
                  "torsion": res.torsion()}
        verdict = f"rank {res.rank}, divisors {res.divisors}"

    elif op == "solve":
        with stages.stage("load"):
            obj, inputs["system"] = resolve_data(command["system"])
            entries, nrows, ncols = matrix_from_json(obj["matrix"])
            b = {int(i): int(v) for i, v in obj.get("rhs", [])}
        with stages.stage("solve"):
            x, witness = solve_with_witness(entries, nrows, ncols, b)
        if x is not None:
            result = {"solution": sorted(x.items())}
            verdict = f"integer solution with {len(x)} nonzero entries"
        else:
            result = {"witness": {"numerators": sorted(witness.numerators.items()),
                                  "denominator": witness.denominator}}
            verdict = (f"no integer solution: witness with denominator "
                       f"{witness.denominator}")

    elif op == "geom":
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
            obj, inputs["map"] = resolve_data(command["map"])
            plmap = PLMap.from_json(obj)
        with stages.stage("validate"):
            bad = validate_almost_embedding(c, plmap)
            if bad:
                raise DegenerateGeometryError(
                    f"{len(bad)} disjoint pairs have meeting images, first: "
                    f"{bad[0]}")
        verdict = "almost-embedding validated: disjoint simplices have disjoint images"

    elif op == "vk":
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
        m = c.dim
        if cfg.d is not None and cfg.d != 2 * m:
            raise InvalidComplexError(
                f"ambient dimension {cfg.d} does not match twice the complex "
                f"dimension ({2 * m})")
        plmap = None
        if command.get("map"):
            obj, inputs["map"] = resolve_data(command["map"])
            plmap = PLMap.from_json(obj)
        with stages.stage("cocycle"):
            vc = vk_cocycle(c, plmap=plmap, params=cfg.params, **_guard_kw(cfg))
            census = vc.dp.census()["by_degree"]
        with stages.stage("classify"):
            cert = vk_class(vc)
        certs = [certificate_to_json(cert)]
        context = {"kind": "vk", "complex": command["complex"],
                   "digest": inputs["complex"]}
        result = {"support_orbits": len(vc.values)}
        verdict = f"double-point class in dimension {2 * m}: {_describe(cert)}"

    elif op == "o3":
        route = command["route"]
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
        tags = tuple(command.get("tags") or ("S", "Sp", "loop_a", "loop_b", "T"))
        if route == "kunneth":
            with stages.stage("linking"):
                obj, inputs["linking"] = resolve_data(command["linking"])
                linking = linking_form_from_json(obj)
            with stages.stage("certify"):
                cert = o3_certificate(c, "kunneth", linking=linking, tags=tags,
                                      **_guard_kw(cfg))
        elif route == "cochain":
            with stages.stage("map"):
                obj, inputs["map"] = resolve_data(command["map"])
                plmap = PLMap.from_json(obj)
                direction = direction_from_json(
                    {"direction": command["direction"]}
                    if command.get("direction") else {})
            with stages.stage("cocycle"):
                gc = gauss_cocycle(c, plmap, direction, **_guard_kw(cfg))
            with stages.stage("certify"):
                cert = o3_certificate(c, "cochain", gauss=gc, tags=tags,
                                      **_guard_kw(cfg))
        else:
            raise InvalidComplexError(f"unknown third-obstruction route {route!r}")
        certs = [certificate_to_json(cert)]
        context = {"kind": "cellular"}
        result = {k: cert.payload[k] for k in ("route", "mode", "x", "y")
                  if k in cert.payload}
        verdict = f"third obstruction by the {route} route: {_describe(cert)}"

    elif op == "w3":
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
            obj, inputs["datum"] = resolve_data(command["datum"])
            wd = WhitneyDatum.from_json(c, obj)
        with stages.stage("cocycle"):
            w3c = w3_cocycle(wd, **_guard_kw(cfg))
            census = w3c.dp.census()["by_degree"]
        result = {"support_orbits": len(w3c.values)}
        if command.get("certify"):
            with stages.stage("classify"):
                cycles = _product_cycles(c, ("S", "Sp", "T"))
                cert = w3_class(w3c, cycles=cycles)
            certs = [certificate_to_json(cert)]
            context = {"kind": "w3", "complex": command["complex"],
                       "digest": inputs["complex"]}
            verdict = (f"disk-meet cochain on {len(w3c.values)} orbit(s): "
                       f"{_describe(cert)}")
        else:
            verdict = (f"disk-meet cochain supported on {len(w3c.values)} "
                       f"orbit(s) of six-cells")

    elif op == "wn":
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
            obj, inputs["towers"] = resolve_data(command["towers"])
        n = cfg.n or command.get("n")
        if not n:
            raise InvalidComplexError("the number of factors is required")
        with stages.stage("cocycle"):
            towers = towers_from_json(c, obj, n - 2)
            wn = wn_cochain(c, towers, n, **_guard_kw(cfg))
        result = wn.census()
        result["value_rank"] = factorial(n - 2)
        verdict = (f"tree-valued cochain on {result['cells']} cells, "
                   f"{result['nonzero']} nonzero, values in rank "
                   f"{result['value_rank']}")

    elif op == "trees":
        m = command["m"]
        with stages.stage("present"):
            tg = tree_group(m, **({"size_guard": cfg.size_guard}
                                  if cfg.size_guard is not None else {}))
        result = {"generators": len(tg.generators),
                  "relations": len(tg.relations),
                  "rank": tg.rank, "torsion": tg.torsion}
        shape = f"free abelian of rank {tg.rank}" if not tg.torsion else \
            f"rank {tg.rank} with torsion {tg.torsion}"
        verdict = (f"order-{m} tree group: {shape} "
                   f"({len(tg.generators)} generators, {len(tg.relations)} relations)")

    elif op == "massey":
        with stages.stage("load"):
            c, inputs["complex"] = resolve_complex(command["complex"])
            obj, inputs["cochain"] = resolve_data(command["cochain"])
            u_cell = chain_from_json(obj["cells"])
        with stages.stage("build"):
            dp4 = DeletedProduct(c, 4, **_guard_kw(cfg))
        with stages.stage("assemble"):
            y1, y2, y3 = massey_y4(dp4, u_cell=u_cell)
        result = {"supports": [len(y1), len(y2), len(y3)]}
        verdict = (f"three triple-product cocycles with supports "
                   f"{len(y1)}/{len(y2)}/{len(y3)}; sum vanishes entrywise")

    elif op == "verify":
        with stages.stage("verify"):
            ok = verify_certificate(command["report"])
            if not ok:
                raise CertificateError(
                    f"a certificate in {command['report']} failed re-verification")
        verdict = "all stored certificates re-verified"

    else:
        raise InvalidComplexError(f"unknown operation {op!r}")

    rep = Report(version=VERSION, command=dict(command), inputs=inputs,
                 census=census, result=result, certificates=certs,
                 context=context, verdict=verdict, timings=stages.timings)
    if cfg.out:
        rep.save(cfg.out)
    return rep
