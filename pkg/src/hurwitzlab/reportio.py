"""Report serialization and the small statistics helpers.

Reports must be bit-identical across runs and worker counts, so floats
are always rendered with 17 significant digits, dictionary keys are
sorted, and nothing time-dependent enters the payload (wall-clock time
lives in a separate metadata envelope that golden comparisons drop).
"""

from __future__ import annotations

import math

REPORT_SCHEMA = "hurwitz-lab/report-v1"

# 99% two-sided normal quantile
Z99 = 2.5758293035489004


def wilson_ci(hits: int, total: int, z: float = Z99):
    """Wilson score interval for a binomial fraction."""
    if total == 0:
        return (0.0, 1.0)
    phat = hits / total
    z2 = z * z
    denom = 1 + z2 / total
    center = (phat + z2 / (2 * total)) / denom
    half = (z / denom) * math.sqrt(phat * (1 - phat) / total
                                   + z2 / (4 * total * total))
    return (max(0.0, center - half), min(1.0, center + half))


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float in report")
    s = format(x, ".17g")
    # make the token an unambiguous JSON number
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats."""
    out = []
    _write(obj, out)
    return "".join(out)


def _write(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    elif isinstance(obj, str):
        import json
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"non-string key {key!r}")
            if not first:
                out.append(",")
            first = False
            _write(key, out)
            out.append(":")
            _write(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    else:
        raise TypeError(f"unserializable {type(obj)}")


def make_report(kind: str, config: dict, payload: dict) -> dict:
    return {"schema": REPORT_SCHEMA, "kind": kind,
            "config": config, "payload": payload}


def rows_to_csv(headers, rows) -> str:
    """Deterministic CSV with the same float policy as the JSON."""
    def cell(v):
        if isinstance(v, float):
            return _fmt_float(v)
        if v is None:
            return ""
        return str(v)

    lines = [",".join(headers)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"
