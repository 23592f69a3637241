"""Reading and writing lattice functions as structured text.

Two interchangeable formats:
  * line oriented, UTF-8, one entry per line ``x re im``, ``#`` comments;
  * a JSON object ``{"entries": [{"x": ..., "re": ..., "im": ...}, ...]}``
    with an optional ``"name"``.

Parsing is strict: duplicate x, malformed numbers and empty supports are
rejected with line/field diagnostics.
"""

from __future__ import annotations

import json

from .errors import FunctionFileError
from .lattice import LatticeFunction, make_lattice_function


def _parse_json(text: str) -> LatticeFunction:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FunctionFileError(f"invalid JSON: {e}") from e
    if not isinstance(obj, dict) or "entries" not in obj:
        raise FunctionFileError('JSON form must be an object with an "entries" list')
    entries = []
    for i, item in enumerate(obj["entries"]):
        if not isinstance(item, dict):
            raise FunctionFileError(f"entry {i} is not an object")
        try:
            x = int(item["x"])
        except (KeyError, TypeError, ValueError) as e:
            raise FunctionFileError(f"entry {i}: bad or missing x", field="x") from e
        try:
            re_part = float(item.get("re", 0.0))
            im_part = float(item.get("im", 0.0))
        except (TypeError, ValueError) as e:
            raise FunctionFileError(f"entry {i}: bad re/im", field="re/im") from e
        entries.append((x, complex(re_part, im_part)))
    return _finish(entries)


def _finish(entries) -> LatticeFunction:
    seen = {}
    for x, _ in entries:
        if x in seen:
            raise FunctionFileError(f"duplicate support point x={x}")
        seen[x] = True
    f = make_lattice_function(entries)
    if f.is_zero:
        raise FunctionFileError("empty support: every entry is zero")
    return f


def parse_function_file(text: str) -> LatticeFunction:
    """Parse either accepted format; see the module docstring."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    entries = []
    xs_seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise FunctionFileError(
                f"expected 3 fields 'x re im', got {len(fields)}", line=lineno)
        try:
            x = int(fields[0])
        except ValueError as e:
            raise FunctionFileError(f"malformed integer {fields[0]!r}",
                                    line=lineno, field="x") from e
        if x in xs_seen:
            raise FunctionFileError(f"duplicate support point x={x} "
                                    f"(first at line {xs_seen[x]})", line=lineno, field="x")
        xs_seen[x] = lineno
        vals = []
        for name, tok in (("re", fields[1]), ("im", fields[2])):
            try:
                vals.append(float(tok))
            except ValueError as e:
                raise FunctionFileError(f"malformed number {tok!r}",
                                        line=lineno, field=name) from e
        entries.append((x, complex(vals[0], vals[1])))
    return _finish(entries)


def emit_function_file(f: LatticeFunction, name: str | None = None) -> str:
    """Line-oriented form of a canonical function; round-trips with parse."""
    lines = []
    if name:
        lines.append(f"# {name}")
    for x, v in zip(f.support_points(), f.values):
        if v == 0:
            continue
        lines.append(f"{int(x)} {float(v.real)!r} {float(v.imag)!r}")
    return "\n".join(lines) + "\n"
