"""JSON schemas for every artifact, with rationals as "p/q" strings.

No floating point appears anywhere in I/O.  Writers emit keys in a
fixed order and indent-2 text ending in one newline, so identical
values serialize byte-identically and outputs are golden-file friendly.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from fractions import Fraction
from typing import Any

from .errors import PreconditionError
from .lifting import Certificate, LiftedPath, PolygonalPath, SampledPath, SegmentLift
from .omega import IntervalSet
from .randomvars import SimpleRandomVariable
from .spaces import FiniteMetricSpace, Measure, validate_space

_FRACTION_RE = re.compile(r"^-?\d+/\d+$")


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(text: Any) -> Fraction:
    if not isinstance(text, str) or not _FRACTION_RE.match(text):
        raise PreconditionError(f'rational expected as "p/q" string, got {text!r}')
    num, den = text.split("/")
    if int(den) == 0:
        raise PreconditionError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den))


# -- interval sets ----------------------------------------------------

def intervals_to_obj(s: IntervalSet) -> list[list[str]]:
    return [[frac_str(left), frac_str(right)] for left, right in s.intervals]


def intervals_from_obj(obj: Any) -> IntervalSet:
    if not isinstance(obj, list):
        raise PreconditionError("interval set must be a list of [left, right] pairs")
    pairs = []
    for item in obj:
        if not (isinstance(item, list) and len(item) == 2):
            raise PreconditionError(f"bad interval entry {item!r}")
        pairs.append((parse_frac(item[0]), parse_frac(item[1])))
    return IntervalSet.from_pairs(pairs)


# -- spaces and measures ----------------------------------------------

def space_to_obj(space: FiniteMetricSpace) -> dict:
    return {
        "points": list(space.points),
        "dist": [[frac_str(x) for x in row] for row in space.dist],
    }


def space_from_obj(obj: Any) -> FiniteMetricSpace:
    if not isinstance(obj, dict) or "points" not in obj or "dist" not in obj:
        raise PreconditionError('space must be {"points": [...], "dist": [[...]]}')
    points = obj["points"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise PreconditionError("space points must be strings")
    dist = [[parse_frac(x) for x in row] for row in obj["dist"]]
    return validate_space(points, dist)


def weights_to_obj(mu: Measure) -> list[str]:
    return [frac_str(w) for w in mu.weights]


def weights_from_obj(space: FiniteMetricSpace, obj: Any) -> Measure:
    if not isinstance(obj, list):
        raise PreconditionError("weights must be a list of rationals")
    return Measure(space, tuple(parse_frac(w) for w in obj))


def measure_to_obj(mu: Measure) -> dict:
    return {"space": space_to_obj(mu.space), "weights": weights_to_obj(mu)}


def measure_from_obj(obj: Any) -> Measure:
    if not isinstance(obj, dict) or "space" not in obj or "weights" not in obj:
        raise PreconditionError('measure must be {"space": ..., "weights": [...]}')
    space = space_from_obj(obj["space"])
    return weights_from_obj(space, obj["weights"])


# -- random variables -------------------------------------------------

def blocks_to_obj(x: SimpleRandomVariable) -> dict:
    return {
        point: intervals_to_obj(block)
        for point, block in zip(x.space.points, x.blocks)
    }


def rv_from_blocks_obj(space: FiniteMetricSpace, obj: Any) -> SimpleRandomVariable:
    if not isinstance(obj, dict):
        raise PreconditionError("blocks must map point names to interval lists")
    unknown = set(obj) - set(space.points)
    if unknown:
        raise PreconditionError(f"blocks name unknown points {sorted(unknown)}")
    blocks = tuple(
        intervals_from_obj(obj.get(point, [])) for point in space.points
    )
    return SimpleRandomVariable(space, blocks)


def rv_to_obj(x: SimpleRandomVariable) -> dict:
    return {"space": space_to_obj(x.space), "blocks": blocks_to_obj(x)}


def rv_from_obj(obj: Any) -> SimpleRandomVariable:
    if not isinstance(obj, dict) or "space" not in obj or "blocks" not in obj:
        raise PreconditionError('random variable must be {"space": ..., "blocks": ...}')
    return rv_from_blocks_obj(space_from_obj(obj["space"]), obj["blocks"])


# -- measure paths ----------------------------------------------------

def polygonal_to_obj(beta: PolygonalPath) -> dict:
    return {
        "space": space_to_obj(beta.space),
        "kind": "polygonal",
        "breakpoints": [frac_str(t) for t in beta.breakpoints],
        "vertices": [weights_to_obj(v) for v in beta.vertices],
    }


def path_from_obj(obj: Any) -> PolygonalPath | SampledPath:
    """Read a path file.

    kind "polygonal" needs breakpoints and vertices.  kind "sampled"
    additionally needs "lipschitz"; the path is the piecewise-affine
    interpolation of the "samples" table when present, else of
    breakpoints/vertices, spot-checked against the declared modulus.
    """
    if not isinstance(obj, dict) or "space" not in obj or "kind" not in obj:
        raise PreconditionError('path must carry "space" and "kind"')
    space = space_from_obj(obj["space"])
    kind = obj["kind"]

    def table_polygonal(bps_obj, verts_obj):
        bps = tuple(parse_frac(t) for t in bps_obj)
        verts = tuple(weights_from_obj(space, w) for w in verts_obj)
        return PolygonalPath(space, bps, verts)

    if kind == "polygonal":
        if "breakpoints" not in obj or "vertices" not in obj:
            raise PreconditionError("polygonal path needs breakpoints and vertices")
        return table_polygonal(obj["breakpoints"], obj["vertices"])
    if kind == "sampled":
        if "lipschitz" not in obj:
            raise PreconditionError("sampled path needs a declared lipschitz constant")
        lipschitz = parse_frac(obj["lipschitz"])
        if "samples" in obj:
            rows = obj["samples"]
            if not isinstance(rows, list) or not all(
                isinstance(r, list) and len(r) == 2 for r in rows
            ):
                raise PreconditionError("samples must be a list of [time, weights] rows")
            backbone = table_polygonal([r[0] for r in rows], [r[1] for r in rows])
        elif "breakpoints" in obj and "vertices" in obj:
            backbone = table_polygonal(obj["breakpoints"], obj["vertices"])
        else:
            raise PreconditionError("sampled path needs samples or breakpoints/vertices")
        return SampledPath(space, backbone.eval, lipschitz, backbone=backbone)
    raise PreconditionError(f'unknown path kind {kind!r}')


def sampled_to_obj(alpha: SampledPath, backbone: PolygonalPath | None = None) -> dict:
    backbone = backbone or alpha.backbone
    if backbone is None:
        raise PreconditionError(
            "sampled path has no polygonal backbone; pass one explicitly"
        )
    return {
        "space": space_to_obj(alpha.space),
        "kind": "sampled",
        "lipschitz": frac_str(alpha.lipschitz),
        "samples": [
            [frac_str(t), weights_to_obj(v)]
            for t, v in zip(backbone.breakpoints, backbone.vertices)
        ],
    }


# -- lifted paths ------------------------------------------------------

def lift_to_obj(lift: LiftedPath) -> dict:
    return {
        "space": space_to_obj(lift.space),
        "segments": [
            {
                "a": frac_str(seg.a),
                "b": frac_str(seg.b),
                "x": blocks_to_obj(seg.x),
                "y": blocks_to_obj(seg.y),
            }
            for seg in lift.segments
        ],
    }


def lift_from_obj(obj: Any) -> LiftedPath:
    if not isinstance(obj, dict) or "space" not in obj or "segments" not in obj:
        raise PreconditionError('lift must be {"space": ..., "segments": [...]}')
    space = space_from_obj(obj["space"])
    segments = []
    for seg in obj["segments"]:
        segments.append(
            SegmentLift(
                parse_frac(seg["a"]),
                parse_frac(seg["b"]),
                rv_from_blocks_obj(space, seg["x"]),
                rv_from_blocks_obj(space, seg["y"]),
            )
        )
    return LiftedPath(tuple(segments))


# -- certificates ------------------------------------------------------

def certificate_to_obj(cert: Certificate) -> dict:
    return {
        "grid": [frac_str(t) for t in cert.grid],
        "max_law_gap": frac_str(cert.max_law_gap),
        "continuity_table": [frac_str(x) for x in cert.continuity_table],
        "endpoint_ok": list(cert.endpoint_ok),
        "decay_table": [frac_str(x) for x in cert.decay_table],
    }


def certificate_from_obj(obj: Any) -> Certificate:
    return Certificate(
        grid=tuple(parse_frac(t) for t in obj["grid"]),
        max_law_gap=parse_frac(obj["max_law_gap"]),
        continuity_table=tuple(parse_frac(x) for x in obj["continuity_table"]),
        endpoint_ok=(bool(obj["endpoint_ok"][0]), bool(obj["endpoint_ok"][1])),
        decay_table=tuple(parse_frac(x) for x in obj["decay_table"]),
    )


# -- files -------------------------------------------------------------

def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise PreconditionError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise PreconditionError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from exc


def write_json_atomic(path: str, obj: Any) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    handle, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as out:
            out.write(dumps(obj))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
