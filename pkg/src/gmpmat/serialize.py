"""File formats: JSON with full-precision floats, CSV matrix dumps."""

import json

import numpy as np


def fmt(x):
    """Decimal text with 17 significant digits (lossless round trip)."""
    return format(float(x), ".17g")


def _render(obj):
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(k)}: {_render(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_render(v) for v in obj) + "]"
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps(obj):
    return _render(obj) + "\n"


def loads(text):
    return json.loads(text)


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def write_text(path, text):
    if path is None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def lower_triangle_csv(M, tol=0.0):
    """CSV triples (i, j, value) over the lower triangle of a matrix."""
    M = np.asarray(M)
    lines = []
    for i in range(M.shape[0]):
        for j in range(i + 1):
            if tol == 0.0 or abs(M[i, j]) > tol:
                lines.append(f"{i},{j},{fmt(M[i, j])}")
    return "\n".join(lines) + "\n"


def rows_csv(rows):
    return "\n".join(",".join(fmt(v) for v in row) for row in rows) + "\n"
