"""Deterministic report rendering.

Structured reports are canonical JSON (sorted keys, fixed separators) so
that byte-identical output is reproducible across runs and worker counts.
"""

from __future__ import annotations

import json


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {render_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            render_text(v, indent) if isinstance(v, (dict, list))
            else f"{pad}- {render_scalar(v)}"
            for v in obj
        )
    return f"{pad}{render_scalar(obj)}"


def render_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    return str(v)


def emit(report: dict, fmt: str = "text", out_path: str | None = None) -> str:
    if fmt == "json":
        text = canonical_json(report)
    elif fmt == "text":
        text = render_text(report) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
