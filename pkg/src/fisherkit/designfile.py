"""Reading and writing incidence systems as files.

Two formats. JSON (the canonical interchange form): an object with an
integer field "v" and an array "blocks" of arrays of 0-based point
indices. Text (for hand-authoring and enumeration output): a first line
"v b", then b lines, each the space-separated sorted point indices of one
block; an empty block is a blank line. Duplicate blocks are preserved in
order in both formats; a duplicate point inside one block is an error.
"""

from __future__ import annotations

import json
from pathlib import Path

from .incidence import IncidenceSystem

FORMATS = ("json", "text")


class DesignFileError(ValueError):
    """Malformed design file; the message carries the location."""


def detect_format(path: str | Path, declared: str | None = None) -> str:
    if declared is not None:
        if declared not in FORMATS:
            raise DesignFileError(f"unknown format {declared!r}; expected json or text")
        return declared
    return "json" if Path(path).suffix.lower() == ".json" else "text"


def parse_design(path: str | Path, fmt: str | None = None) -> IncidenceSystem:
    """Load an incidence system from a file in the declared or inferred format."""
    fmt = detect_format(path, fmt)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DesignFileError(f"cannot read {path}: {exc}") from exc
    return parse_design_json(text) if fmt == "json" else parse_design_text(text)


def _check_block(v: int, labels: list, where: str) -> list[int]:
    seen = set()
    for pos, p in enumerate(labels):
        if not isinstance(p, int) or isinstance(p, bool):
            raise DesignFileError(f"{where}, entry {pos}: {p!r} is not an integer")
        if not 0 <= p < v:
            raise DesignFileError(f"{where}, entry {pos}: index {p} out of range (v = {v})")
        if p in seen:
            raise DesignFileError(f"{where}: duplicate point {p}")
        seen.add(p)
    return labels


def parse_design_json(text: str) -> IncidenceSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DesignFileError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise DesignFileError("top-level JSON value must be an object")
    v = data.get("v")
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise DesignFileError(f'field "v" must be a non-negative integer, got {v!r}')
    blocks = data.get("blocks")
    if not isinstance(blocks, list):
        raise DesignFileError('field "blocks" must be an array of arrays')
    parsed = []
    for idx, block in enumerate(blocks):
        if not isinstance(block, list):
            raise DesignFileError(f"block {idx}: expected an array of point indices")
        parsed.append(_check_block(v, block, f"block {idx}"))
    return IncidenceSystem(v, parsed)


def parse_design_text(text: str) -> IncidenceSystem:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline; a final blank block keeps its own line
    if not lines:
        raise DesignFileError("empty file; expected a 'v b' header line")
    header = lines[0].split()
    if len(header) != 2:
        raise DesignFileError(f"line 1: expected 'v b', got {lines[0]!r}")
    try:
        v, b = int(header[0]), int(header[1])
    except ValueError as exc:
        raise DesignFileError(f"line 1: expected two integers, got {lines[0]!r}") from exc
    if v < 0 or b < 0:
        raise DesignFileError(f"line 1: v and b must be non-negative, got {v} {b}")
    if len(lines) - 1 != b:
        raise DesignFileError(f"expected {b} block lines after the header, found {len(lines) - 1}")
    blocks = []
    for idx in range(b):
        line = lines[1 + idx]
        try:
            labels = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise DesignFileError(f"line {idx + 2}: expected point indices, got {line!r}") from exc
        blocks.append(_check_block(v, labels, f"line {idx + 2}"))
    return IncidenceSystem(v, blocks)


def render_design(system: IncidenceSystem, fmt: str) -> str:
    if fmt == "json":
        payload = {"v": system.v, "blocks": [sorted(block) for block in system.blocks]}
        return json.dumps(payload) + "\n"
    if fmt == "text":
        lines = [f"{system.v} {system.b}"]
        lines.extend(" ".join(str(p) for p in sorted(block)) for block in system.blocks)
        return "\n".join(lines) + "\n"
    raise DesignFileError(f"unknown format {fmt!r}; expected json or text")


def write_design(system: IncidenceSystem, path: str | Path, fmt: str) -> None:
    Path(path).write_text(render_design(system, fmt), encoding="utf-8")


def family_line(system: IncidenceSystem) -> str:
    """One-line rendering of a family for enumeration streams.

    ``v b  blk / blk / ...`` with each block's points space-separated and
    '-' standing for an empty block.
    """
    parts = [" ".join(str(p) for p in sorted(block)) or "-" for block in system.blocks]
    if not parts:
        return f"{system.v} 0"
    return f"{system.v} {system.b}  " + " / ".join(parts)
