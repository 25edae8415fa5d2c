"""Deterministic table and report writers.

Numbers are formatted as scientific notation with 12 significant digits and
every table starts with one metadata comment line (tool version, config
hash, seed, mode), so identical inputs produce byte-identical files.
"""

import json
import math
import os

from . import __version__


def format_float(value):
    return f"{value:.11e}"


def metadata_line(config_hash, seed, mode):
    return f"# hybridgate {__version__} config=sha256:{config_hash} seed={seed} mode={mode}"


def write_csv(path, columns, rows, meta):
    lines = [meta, ",".join(columns)]
    for row in rows:
        lines.append(",".join(format_float(v) if isinstance(v, float) else str(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None  # strict JSON has no Infinity/NaN
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def write_json(path, payload):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(_jsonable(payload), indent=2) + "\n")


def ensure_out_dir(path):
    os.makedirs(path, exist_ok=True)
    return path
