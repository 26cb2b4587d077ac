"""JSON spec documents for skeletons.

Finite tables::

    {"version": 1, "backend": "finite", "scale": [2, 2, 2],
     "layers": [{"level": 1, "filled": [{"residue": 0, "symbol": 1}]}, ...]}

Ruled families::

    {"version": 1, "backend": "ruled", "family": "fat-cantor", "params": {}, "depth": 6}
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .families import PRESETS, RuleError, generate, make_rule
from .odometer import Scale
from .skeleton import RuledSkeleton, Skeleton, TableSkeleton

VERSION = 1


class SpecError(ValueError):
    pass


def emit_spec(spec: Skeleton) -> dict:
    if isinstance(spec, RuledSkeleton):
        return {"version": VERSION, "backend": "ruled", "family": spec.rule.family,
                "params": dict(spec.rule.params), "depth": spec.depth}
    layers = []
    for level in range(1, spec.depth + 1):
        row = spec.layers[level]
        layers.append({"level": level,
                       "filled": [{"residue": r, "symbol": row[r]} for r in sorted(row)]})
    return {"version": VERSION, "backend": "finite", "scale": list(spec.scale().q),
            "layers": layers}


def dumps_spec(spec: Skeleton) -> str:
    return json.dumps(emit_spec(spec), indent=2) + "\n"


def spec_digest(spec: Skeleton) -> str:
    canon = json.dumps(emit_spec(spec), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SpecError(f"{what} must be an integer, got {x!r}")
    return x


def parse_document(doc) -> Skeleton:
    if not isinstance(doc, dict):
        raise SpecError("spec document must be a JSON object")
    if doc.get("version", VERSION) != VERSION:
        raise SpecError(f"unsupported spec version {doc.get('version')!r}")
    backend = doc.get("backend", "ruled" if "family" in doc else "finite")
    if backend == "ruled":
        if "family" not in doc:
            raise SpecError("ruled spec needs a 'family'")
        depth = _int(doc.get("depth", 12), "depth")
        if depth < 1:
            raise SpecError("depth must be at least 1")
        params = doc.get("params") or {}
        if not isinstance(params, dict):
            raise SpecError("'params' must be an object")
        try:
            return generate(make_rule(doc["family"], params), depth)
        except (RuleError, TypeError) as exc:
            raise SpecError(str(exc)) from exc
    if backend != "finite":
        raise SpecError(f"unknown backend {backend!r}")

    try:
        scale = Scale(tuple(_int(q, "scale entry") for q in doc["scale"]))
    except KeyError:
        raise SpecError("finite spec needs a 'scale'") from None
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    layers = {}
    last = 0
    for entry in doc.get("layers", []):
        level = _int(entry.get("level"), "layer level")
        if level <= last:
            raise SpecError(f"layer levels must increase strictly from 1, got {level} after {last}")
        if level > scale.depth:
            raise SpecError(f"layer level {level} beyond scale depth {scale.depth}")
        last = level
        p = scale.p(level)
        row = {}
        for fill in entry.get("filled", []):
            r = _int(fill.get("residue"), "residue")
            s = _int(fill.get("symbol"), "symbol")
            if r >= p or r < 0:
                raise SpecError(f"residue {r} ≥ p_{level} = {p}" if r >= p
                                else f"negative residue {r} at level {level}")
            if s not in (0, 1):
                raise SpecError(f"symbol {s} for residue {r} at level {level} is not binary")
            if r in row:
                raise SpecError(f"residue {r} filled twice at level {level}")
            row[r] = s
        layers[level] = row
    return TableSkeleton(scale, layers)


def parse_spec(path) -> Skeleton:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: malformed JSON: {exc}") from exc
    return parse_document(doc)


def load_spec(source: str, depth: int | None = None) -> Skeleton:
    """A preset name or a path to a spec file.  ``depth`` overrides ruled depth."""
    if source in PRESETS:
        spec = generate(make_rule(source), depth or 12)
    else:
        spec = parse_spec(source)
        if depth is not None and isinstance(spec, RuledSkeleton):
            spec = generate(spec.rule, depth)
    return spec
