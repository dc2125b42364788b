"""Command-line entry point: ``reciprocity {check,ehrhart,bright-side} INSTANCE``.

Reports go to stdout (JSON by default), a short human summary to stderr.
Exit codes: 0 everything verified, 1 something refuted, 2 bad input.
"""
from __future__ import annotations

import argparse
import enum
import json
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .complex import boundary_complex, classify_faces, cone_section_complex, generated_by, \
    subcomplex_generated
from .ehrhart import HalfOpenRegion, ehrhart_polynomial, verify_reciprocity
from .exact_math import InputError, primitive
from .geometry import Cone, Polytope, bright_side, homogenize
from .identities import (
    KINDS,
    check_indicator_identity,
    sample_points,
    verify_genF,
    verify_mr1,
    verify_relative_brion,
    verify_stanley_reciprocity,
)
from .topology import complex_homology, cm_status, euler_char, homology_manifold_status, \
    reduced_euler_char

CHECKS = ("reciprocity", "mr1", "genf", "brion", "indicator", "cm", "homology", "bright-side",
          "stanley", "ehrhart")
FAILING = {"REFUTED", "NOT_EQUAL", "FAIL"}
DEFAULTS = {"seed": 0, "trials": 16, "n_max": 4, "box": 3}

_RATIONAL = r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"
_INT_VEC = {"type": "array", "items": {"type": "integer"}, "minItems": 1}
_RAT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": _RATIONAL}]}

SCHEMA = {
    "type": "object",
    "required": ["ambient_dim"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "ambient_dim": {"type": "integer", "minimum": 1, "maximum": 8},
        "polytope": {"type": "object", "required": ["vertices"], "additionalProperties": False,
                     "properties": {"vertices": {"type": "array", "items": _INT_VEC,
                                                 "minItems": 1}}},
        "cone": {"type": "object", "additionalProperties": False,
                 "properties": {"generators": {"type": "array", "items": _INT_VEC,
                                               "minItems": 1},
                                "over_polytope": {"type": "boolean"}}},
        "subcomplex": {
            "type": "object", "additionalProperties": False,
            "properties": {
                "facets": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                "facet_normals": {"type": "array", "items": _INT_VEC},
                "complement": {"type": "boolean"},
                "light_source": {"type": "array", "items": _RAT, "minItems": 1},
                "cells": {"type": "array", "items": {"type": "array", "items": _INT_VEC}},
            }},
        "checks": {"type": "array", "items": {"enum": list(CHECKS)}},
        "parameters": {"type": "object", "additionalProperties": False,
                       "properties": {k: {"type": "integer"} for k in DEFAULTS}},
    },
}


class _Float(InputError):
    pass


def _no_float(s):
    raise _Float(f"float literal {s} not allowed; write rationals as \"p/q\" strings")


def load_instance(path: str | Path) -> dict:
    text = Path(path).read_text()
    try:
        data = json.loads(text, parse_float=_no_float,
                          parse_constant=lambda c: _no_float(c))
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from None
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as e:
        where = "/".join(map(str, e.absolute_path)) or "<root>"
        raise InputError(f"schema violation at {where}: {e.message}") from None
    if ("polytope" in data) == ("cone" in data):
        raise InputError("instance needs exactly one of 'polytope' or 'cone'")
    return data


# --------------------------------------------------------------------------
# instance resolution


class Instance:
    def __init__(self, data: dict, params: dict):
        self.data = data
        self.params = params
        d = data["ambient_dim"]
        self.polytope = None
        self.cone = None
        if "polytope" in data:
            verts = data["polytope"]["vertices"]
            if any(len(v) != d for v in verts):
                raise InputError("vertex length differs from ambient_dim")
            self.polytope = Polytope(verts)
        else:
            spec = data["cone"]
            gens = spec.get("generators")
            if not gens:
                raise InputError("cone needs generators")
            if spec.get("over_polytope"):
                P = Polytope(gens)
                if len(gens[0]) + 1 != d:
                    raise InputError("cone over a polytope lives in ambient_dim = dim + 1")
                self.cone = homogenize(P)
            else:
                if any(len(g) != d for g in gens):
                    raise InputError("generator length differs from ambient_dim")
                self.cone = Cone.from_generators(gens)
        self.sub = data.get("subcomplex", {})

    @property
    def obj(self):
        return self.polytope if self.polytope is not None else self.cone

    def _normals(self):
        if self.polytope is not None:
            return [a for a, _ in self.polytope.facets]
        return list(self.cone.normals)

    def facets(self) -> frozenset:
        """Selected facet indices (after ``complement``)."""
        s = self.sub
        normals = self._normals()
        m = len(normals)
        if "cells" in s:
            raise InputError("this check needs a facet-generated subcomplex")
        if "light_source" in s:
            if self.polytope is None:
                raise InputError("light_source needs a polytope")
            q = [Fraction(x) for x in s["light_source"]]
            if len(q) != self.polytope.ambient_dim:
                raise InputError("light source has wrong dimension")
            chosen = set(bright_side(self.polytope, q))
        else:
            chosen = set(s.get("facets", []))
            for a in s.get("facet_normals", []):
                a = primitive(a)
                if a not in normals:
                    raise InputError(f"{list(a)} is not a facet normal")
                chosen.add(normals.index(a))
        if any(not 0 <= i < m for i in chosen):
            raise InputError(f"facet index out of range (there are {m} facets)")
        if s.get("complement"):
            chosen = set(range(m)) - chosen
        return frozenset(chosen)

    def cone_subcomplex(self):
        C = self.cone
        if "cells" not in self.sub:
            from .genfun import cone_facet_subcomplex
            return cone_facet_subcomplex(C, self.facets())
        index = {g: i for i, g in enumerate(C.generators)}
        cells = []
        for cell in self.sub["cells"]:
            try:
                cells.append(frozenset(index[primitive(g)] for g in cell))
            except KeyError:
                raise InputError(f"cell {cell} uses a vector that is not an extreme ray") \
                    from None
        return generated_by(cone_section_complex(C), cells)

    def need_polytope(self, what: str) -> Polytope:
        if self.polytope is None:
            raise InputError(f"check '{what}' needs a polytope")
        return self.polytope

    def need_cone(self, what: str) -> Cone:
        if self.cone is None:
            raise InputError(f"check '{what}' needs a cone")
        return self.cone


# --------------------------------------------------------------------------
# checks


def _ehrhart_table(P: Polytope, B: frozenset, n_max: int) -> dict:
    poly = ehrhart_polynomial(HalfOpenRegion(P, B))
    d = P.dim
    return {"verdict": "COMPUTED",
            "removed_facets": sorted(B),
            "coefficients": list(poly.coefficients),
            "polynomial": str(poly),
            "values": [{"n": n, "E(n)": poly(n), "reciprocal": (-1) ** d * poly(-n)}
                       for n in range(0, n_max + 1)]}


def _complex_report(K) -> dict:
    h = complex_homology(K)
    status, witness = homology_manifold_status(K)
    return {"void": K.void, "dim": K.dim, "f_vector": list(K.f_vector()),
            "reduced_homology": h.as_dict(), "euler_characteristic": euler_char(K),
            "reduced_euler_characteristic": reduced_euler_char(K),
            "manifold": status.value, "manifold_witness": witness}


def _subcomplex_for_topology(inst: Instance):
    if inst.polytope is not None:
        K = boundary_complex(inst.polytope)
        return K, subcomplex_generated(K, inst.facets())
    return cone_section_complex(inst.cone), inst.cone_subcomplex()


def run_check(name: str, inst: Instance) -> dict:
    p = inst.params
    if name == "reciprocity":
        return verify_reciprocity(inst.need_polytope(name), inst.facets(), p["n_max"])
    if name == "ehrhart":
        P = inst.need_polytope(name)
        return _ehrhart_table(P, inst.facets(), p["n_max"])
    if name == "bright-side":
        P = inst.need_polytope(name)
        if "light_source" not in inst.sub:
            raise InputError("bright-side needs subcomplex.light_source")
        B = inst.facets()
        K = boundary_complex(P)
        dark = frozenset(range(len(P.facets))) - B
        Bc = subcomplex_generated(K, B)
        rep = verify_reciprocity(P, B, p["n_max"])
        return {"verdict": rep["verdict"],
                "light_source": [str(Fraction(x)) for x in inst.sub["light_source"]],
                "bright_facets": sorted(B), "dark_facets": sorted(dark),
                "bright_f_vector": [] if Bc.void else list(Bc.f_vector()),
                "cm_status": cm_status(Bc).as_dict(), "reciprocity": rep}
    if name == "cm":
        _, D = _subcomplex_for_topology(inst)
        return {"verdict": "COMPUTED", **cm_status(D).as_dict()}
    if name == "homology":
        K, D = _subcomplex_for_topology(inst)
        _, _, bd = classify_faces(K, D)
        return {"verdict": "COMPUTED", "subcomplex": _complex_report(D),
                "relative_boundary": _complex_report(bd)}
    if name == "mr1":
        return verify_mr1(inst.need_cone(name), inst.facets(), p["trials"], p["seed"])
    if name == "genf":
        return verify_genF(inst.need_cone(name), inst.cone_subcomplex(), p["trials"], p["seed"])
    if name == "stanley":
        return verify_stanley_reciprocity(inst.need_cone(name), p["trials"], p["seed"])
    if name == "brion":
        return verify_relative_brion(inst.need_polytope(name), inst.facets(),
                                     p["trials"], p["seed"])
    if name == "indicator":
        X = inst.obj
        pts = sample_points(X.ambient_dim, p["box"], 200, p["seed"])
        kinds = ["ConeBG"] if inst.cone is not None else [k for k in KINDS if k != "ConeBG"]
        delta = inst.facets() if inst.polytope is not None else None
        results = [check_indicator_identity(k, X, delta, pts) for k in kinds]
        ok = all(r["verdict"] == "PASS" for r in results)
        return {"verdict": "PASS" if ok else "FAIL", "identities": results}
    raise InputError(f"unknown check {name!r}")


# --------------------------------------------------------------------------
# serialization


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(y) for y in x)
    if isinstance(x, enum.Enum):
        return x.name
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return x


def _text(report: dict) -> str:
    lines = [f"instance: {report.get('instance')}"]
    for c in report["checks"]:
        lines.append(f"[{c['verdict']}] {c['check']}")
        r = c["result"]
        if c["check"] == "ehrhart":
            lines.append(f"    E(n) = {r['polynomial']}")
            lines.append("    n   E(n)   (-1)^d E(-n)")
            for row in r["values"]:
                lines.append(f"    {row['n']:<3} {row['E(n)']:<6} {row['reciprocal']}")
        elif "cm_status" in r:
            lines.append(f"    cm_status: {r['cm_status']['value']}")
        elif "value" in r:
            lines.append(f"    {r['value']} witness={r.get('witness')}")
        if r.get("first_failure"):
            lines.append(f"    first failing n: {r['first_failure']}")
    return "\n".join(lines)


def build_report(path: str, command: str, params: dict) -> dict:
    data = load_instance(path)
    merged = dict(DEFAULTS)
    merged.update(data.get("parameters", {}))
    merged.update({k: v for k, v in params.items() if v is not None})
    if merged["n_max"] < 1 or merged["trials"] < 1 or merged["box"] < 0:
        raise InputError("n_max and trials must be positive, box non-negative")
    inst = Instance(data, merged)
    if command == "check":
        checks = data.get("checks") or ["reciprocity"]
    elif command == "ehrhart":
        checks = ["ehrhart"]
    else:
        checks = ["bright-side"]
    out = []
    for name in checks:
        r = run_check(name, inst)
        out.append({"check": name, "verdict": r["verdict"], "result": r})
    return {"instance": data.get("name", Path(path).stem), "command": command,
            "parameters": merged, "checks": out}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="reciprocity",
                                     description="Exact checks of Ehrhart-type reciprocity.")
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd, text in (("check", "run the checks listed in the instance"),
                      ("ehrhart", "print the Ehrhart polynomial table"),
                      ("bright-side", "reciprocity for the bright side of a light source")):
        sp = sub.add_parser(cmd, help=text)
        sp.add_argument("instance", help="instance JSON file (or corpus:NAME)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--trials", type=int, default=None)
        sp.add_argument("--n-max", dest="n_max", type=int, default=None)
        sp.add_argument("--box", type=int, default=None)
        sp.add_argument("--format", choices=("json", "text"), default="json")
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        path = args.instance
        if path.startswith("corpus:"):
            path = str(corpus_path(path[len("corpus:"):]))
        report = build_report(path, args.command,
                              {k: getattr(args, k) for k in DEFAULTS})
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = _jsonable(report)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_text(report))
    bad = [c["check"] for c in report["checks"] if c["verdict"] in FAILING]
    elapsed = time.perf_counter() - t0
    for c in report["checks"]:
        print(f"{c['check']}: {c['verdict']}", file=sys.stderr)
    print(f"{report['instance']}: {'refuted: ' + ', '.join(bad) if bad else 'ok'} "
          f"({elapsed:.2f}s)", file=sys.stderr)
    return 1 if bad else 0


def corpus_path(name: str) -> Path:
    base = resources.files("reciprocity") / "corpus"
    p = Path(str(base / (name if name.endswith(".json") else name + ".json")))
    if not p.exists():
        raise InputError(f"no corpus instance {name!r}")
    return p


def corpus_names() -> list[str]:
    base = Path(str(resources.files("reciprocity") / "corpus"))
    return sorted(p.stem for p in base.glob("*.json"))
