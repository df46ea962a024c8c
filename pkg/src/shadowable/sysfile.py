"""System JSON files.

A system file is a JSON object::

    {"name": "...", "points": [labels], "map": [indices],
     "metric": {"kind": "matrix", "scale_denominator": D, "entries": [[ints]]}
             | {"kind": "euclidean", "coords": [["p/q", "p/q"], ...], "scale_denominator": D}
             | {"kind": "circle", "n": N}
             | {"kind": "two_adic", "levels": L}}

Matrix entries are integers in units of ``1/scale_denominator``. Euclidean
distances are rounded up to that unit and shifted by one unit off the diagonal
(see :func:`metric.rationalized_euclidean`).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from . import gallery
from .dynamics import DynSystem, make_system
from .errors import BadParams, ShadowableError
from .metric import as_fraction, rationalized_euclidean, validate_metric


class ParseError(ShadowableError, ValueError):
    kind = "ParseError"

    def report(self):
        return {"valid": False, "error": self.kind, "indices": [], "message": str(self)}


def fmt(q) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` for integers)."""
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    try:
        q = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None
    return q


def _decode_metric(desc, n):
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ParseError("metric must be an object with a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "matrix":
            D = int(desc.get("scale_denominator", 1))
            if D <= 0:
                raise ParseError("scale_denominator must be positive")
            rows = desc["entries"]
            if any(not isinstance(v, int) or isinstance(v, bool) for r in rows for v in r):
                raise ParseError("matrix entries must be integers")
            return [[Fraction(v, D) for v in r] for r in rows]
        if kind == "euclidean":
            D = int(desc.get("scale_denominator", gallery.EUCLIDEAN_DENOMINATOR))
            if D <= 0:
                raise ParseError("scale_denominator must be positive")
            coords = [(parse_rational(a), parse_rational(b)) for a, b in desc["coords"]]
            return rationalized_euclidean(coords, D)
        if kind == "circle":
            N = int(desc["n"])
            if N < 1:
                raise ParseError("circle needs n >= 1")
            return gallery.circle_metric(N)
        if kind == "two_adic":
            return gallery.two_adic_metric(int(desc["levels"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ShadowableError):
            raise
        raise ParseError(f"malformed {kind!r} metric: {exc}") from None
    raise ParseError(f"unknown metric kind {kind!r}")


def system_from_dict(doc) -> DynSystem:
    if not isinstance(doc, dict):
        raise ParseError("system file must hold a JSON object")
    for key in ("points", "metric", "map"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    labels = [str(p) for p in doc["points"]]
    dist = _decode_metric(doc["metric"], len(labels))
    if len(dist) != len(labels):
        raise ParseError(f"metric has {len(dist)} points but {len(labels)} labels are given")
    space = validate_metric(dist, labels)
    fwd = doc["map"]
    if not isinstance(fwd, list) or any(not isinstance(v, int) or isinstance(v, bool) for v in fwd):
        raise ParseError("map must be a list of integer indices")
    return make_system(space, fwd, str(doc.get("name", "system")))


def load_system(path) -> DynSystem:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return system_from_dict(doc)


def matrix_metric(sys: DynSystem) -> dict:
    D = 1
    for row in sys.space.dist:
        for v in row:
            D = math.lcm(D, v.denominator)
    entries = [[int(v * D) for v in row] for row in sys.space.dist]
    return {"kind": "matrix", "scale_denominator": D, "entries": entries}


def system_to_dict(sys: DynSystem, metric: dict | None = None) -> dict:
    return {
        "name": sys.name,
        "points": list(sys.space.labels),
        "metric": metric if metric is not None else matrix_metric(sys),
        "map": list(sys.fwd),
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def generate(kind: str, **params) -> dict:
    """Build a gallery system and its file document."""
    if kind == "circle":
        N, k = int(params.get("n") or 0), int(params.get("k") or 0)
        sys = gallery.circle_rotation(N, k)
        return system_to_dict(sys, {"kind": "circle", "n": N})
    if kind == "odometer":
        L = int(params.get("levels") or 0)
        sys = gallery.odometer(L)
        return system_to_dict(sys, {"kind": "two_adic", "levels": L})
    if kind == "cat_map":
        return system_to_dict(gallery.cat_map(int(params.get("n") or 0)))
    if kind == "cantor_plus_interval":
        level, grid = int(params.get("level") or 0), int(params.get("grid") or 0)
        space = gallery.cantor_plus_interval(level, grid)
        sys = gallery.identity_on(space, f"identity on cantor_plus_interval(level={level},grid={grid})")
        return system_to_dict(sys)
    if kind == "random":
        n, seed = int(params.get("n") or 0), params.get("seed")
        if seed is None:
            raise BadParams("random systems need --seed")
        metric_kind = params.get("metric_kind") or "euclidean_square"
        sys = gallery.random_system(n, int(seed), metric_kind)
        if metric_kind == "euclidean_square":
            coords = gallery.random_coords(n, int(seed))
            metric = {
                "kind": "euclidean",
                "coords": [[fmt(a), fmt(b)] for a, b in coords],
                "scale_denominator": gallery.EUCLIDEAN_DENOMINATOR,
            }
            return system_to_dict(sys, metric)
        return system_to_dict(sys)
    raise BadParams(f"unknown system kind {kind!r}")
