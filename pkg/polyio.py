# polyio.py
"""Polygon text files, JSON payloads and hardness metadata.

Polygon files start with `ortho <n>` or `general <n>` followed by n vertex
lines `x y`; general files may use rationals such as `3/4`. Anything after
`#` is a comment.
"""
import json
import logging
from fractions import Fraction
from typing import Any, List, Optional, Tuple, Union

from core import GeneralPolygon, OrthoPolygon, validate_general_polygon, validate_polygon
from errors import ParseError, PolygonValidationError

logger = logging.getLogger(__name__)

Polygon = Union[OrthoPolygon, GeneralPolygon]
KINDS = ("ortho", "general")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_polygon_text(text: str) -> Tuple[str, List[Tuple[Fraction, Fraction]], List[int]]:
    """Split a polygon file into its kind, raw vertices and their 1-based line numbers."""
    kind, expected = None, None
    vertices: List[Tuple[Fraction, Fraction]] = []
    lines: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        if kind is None:
            if len(tokens) != 2 or tokens[0] not in KINDS:
                raise ParseError(f"expected header 'ortho <n>' or 'general <n>', got {line!r}", line=number)
            try:
                expected = int(tokens[1])
            except ValueError:
                raise ParseError(f"vertex count {tokens[1]!r} is not an integer", line=number)
            kind = tokens[0]
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected two coordinates, got {len(tokens)}", line=number)
        try:
            x, y = (int(t) if kind == "ortho" else Fraction(t) for t in tokens)
        except ValueError:
            what = "integers" if kind == "ortho" else "rationals"
            raise ParseError(f"coordinates must be {what}, got {line!r}", line=number)
        vertices.append((x, y))
        lines.append(number)
    if kind is None:
        raise ParseError("empty polygon file", line=1)
    if len(vertices) != expected:
        raise ParseError(f"header announces {expected} vertices, file has {len(vertices)}", line=lines[-1] if lines else 1)
    return kind, vertices, lines


def parse_polygon(text: str, expect: Optional[str] = None) -> Polygon:
    kind, vertices, lines = parse_polygon_text(text)
    if expect is not None and kind != expect:
        raise ParseError(f"expected an {expect} polygon, got {kind}", line=1)
    try:
        if kind == "ortho":
            return validate_polygon(vertices)
        return validate_general_polygon(vertices)
    except PolygonValidationError as exc:
        if exc.index is not None and exc.line is None and 0 <= exc.index < len(lines):
            exc.line = lines[exc.index]
        raise


def read_polygon(path: str, expect: Optional[str] = None) -> Polygon:
    with open(path) as handle:
        text = handle.read()
    logger.debug("read %s", path)
    return parse_polygon(text, expect)


def _fmt(value) -> str:
    return str(Fraction(value)) if not isinstance(value, int) else str(value)


def format_polygon(polygon: Polygon) -> str:
    if isinstance(polygon, OrthoPolygon):
        rows = [f"{x} {y}" for x, y in polygon.coords()]
        header = f"ortho {polygon.n}"
    else:
        rows = [f"{_fmt(x)} {_fmt(y)}" for x, y in polygon.vertices]
        header = f"general {polygon.n}"
    return "\n".join([header] + rows) + "\n"


def write_polygon(polygon: Polygon, path: str) -> None:
    with open(path, "w") as handle:
        handle.write(format_polygon(polygon))
    logger.info("wrote %s polygon with %d vertices to %s", type(polygon).__name__, polygon.n, path)


def _json_default(value: Any):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, default=_json_default)


def write_json(payload: Any, path: str) -> None:
    with open(path, "w") as handle:
        handle.write(to_json(payload) + "\n")


def read_json(path: str) -> Any:
    with open(path) as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc.msg}", line=exc.lineno)


def reduction_meta(ri, p_path: str, q_path: str) -> dict:
    """Everything needed to rebuild and re-certify a hardness instance."""
    src = ri.source.model_dump()
    return {
        "variant": ri.variant,
        "sets": {name: list(values) for name, values in src.items()},
        "P": p_path,
        "Q": q_path,
        "threshold": str(ri.threshold),
        "params": {
            "M": ri.params.M,
            "eps": str(ri.params.eps),
            "connector_width": str(ri.params.connector_width),
            "connector_area": str(ri.params.connector_area),
        },
        "vertices": {"P": ri.P.n, "Q": ri.Q.n},
    }
