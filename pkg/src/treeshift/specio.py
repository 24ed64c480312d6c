"""Serialization: tree-spec references, function files, report conversion.

Tree references come in two shapes:

* inline strings: ``gallery:k_tree?k=3``, ``gallery:periodic?q=2,3``,
  ``gallery:level_sequence?sequence=1,2,1,3,2&extend=periodic``
* JSON objects: ``{"kind": "homogeneous", "params": {"q": 2}}`` with kinds
  homogeneous / level_sequence / gallery / degree_table, plus an optional
  ``"leafless"`` claim for degree_table.

Function files are JSON lists of entries, either all rational
(``{"level", "index", "num", "den"}``) or all complex
(``{"level", "index", "re", "im"}``).

Reports serialize losslessly: Fractions to "num/den" strings, complex to
{"re", "im"} pairs, dataclasses to plain dicts, functions to entry lists.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from . import gallery
from .exceptions import ParameterError
from .functions import COMPLEX, EXACT, TreeFunction
from .trees import TreeSpec

TreeRef = Union[str, dict]


# ---------------------------------------------------------------------------
# Tree references
# ---------------------------------------------------------------------------

def _parse_inline_value(raw: str):
    parts = raw.split(",")
    try:
        values = [int(x) for x in parts]
    except ValueError:
        return raw
    return values if len(values) > 1 else values[0]


def _parse_inline(ref: str) -> dict:
    body = ref[len("gallery:"):]
    if not body:
        raise ParameterError("empty gallery reference")
    name, _, query = body.partition("?")
    params: dict = {}
    if query:
        for item in query.split("&"):
            key, eq, raw = item.partition("=")
            if not eq or not key:
                raise ParameterError(f"malformed gallery parameter {item!r}")
            params[key] = _parse_inline_value(raw)
    # Sequence-valued parameters arrive as lists even with a single entry.
    for key in ("sequence", "q") if name in ("level_sequence", "periodic") else ():
        if key in params and isinstance(params[key], int):
            params[key] = [params[key]]
    return {"kind": "gallery", "params": {"name": name, **params}}


def _degree_table_spec(params: dict, leafless: Optional[bool]) -> TreeSpec:
    rows = params.get("rows")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParameterError("degree_table needs 'rows': a list of per-level degree lists")
    default = params.get("default_degree", 1)
    if not isinstance(default, int) or default < 0:
        raise ParameterError("default_degree must be an integer >= 0")
    table = [list(map(int, r)) for r in rows]
    if any(d < 0 for r in table for d in r):
        raise ParameterError("degrees must be >= 0")

    def degree_rule(n: int, i: int) -> int:
        if n < len(table) and i < len(table[n]):
            return table[n][i]
        return default

    return TreeSpec(
        kind="degree_table",
        params={"rows": table, "default_degree": default},
        degree_rule=degree_rule,
        leafless_claim=leafless,
        label=f"degree_table({len(table)} rows, default={default})",
    )


def parse_tree_ref(ref: TreeRef) -> TreeSpec:
    """Resolve an inline string or JSON object into a TreeSpec."""
    if isinstance(ref, str):
        text = ref.strip()
        if not text.startswith("gallery:"):
            raise ParameterError(
                f"inline tree references look like gallery:<name>?k=v, got {text!r}"
            )
        return parse_tree_ref(_parse_inline(text))
    if not isinstance(ref, dict):
        raise ParameterError(f"tree reference must be a string or object, got {type(ref).__name__}")
    kind = ref.get("kind")
    params = dict(ref.get("params", {}))
    if kind in ("homogeneous", "level_sequence"):
        return gallery.build(kind, params).spec
    if kind == "gallery":
        name = params.pop("name", None)
        if not name:
            raise ParameterError("gallery reference needs params.name")
        return gallery.build(name, params).spec
    if kind == "degree_table":
        return _degree_table_spec(params, ref.get("leafless"))
    raise ParameterError(
        f"unknown tree kind {kind!r}; expected homogeneous, level_sequence, gallery, or degree_table"
    )


def canonical_ref(ref: TreeRef) -> str:
    """Stable cache key for a tree reference (inline strings normalize to objects)."""
    if isinstance(ref, str):
        return canonical_ref(_parse_inline(ref.strip()))
    return json.dumps(ref, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Scalars and functions
# ---------------------------------------------------------------------------

def parse_scalar(text: str) -> Union[Fraction, complex]:
    """ "3/4" and "2" and "-1.5" parse exactly; anything with i/j is complex."""
    t = str(text).strip().replace(" ", "")
    if not t:
        raise ParameterError("empty scalar")
    if "i" in t or "j" in t:
        try:
            return complex(t.replace("i", "j"))
        except ValueError as exc:
            raise ParameterError(f"cannot parse complex scalar {text!r}") from exc
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"cannot parse scalar {text!r}") from exc


def scalar_to_str(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    z = complex(value)
    return f"{z.real}{z.imag:+}i"


def load_function(entries: list, mode: Optional[str] = None) -> TreeFunction:
    """Build a TreeFunction from JSON entries; value modes must not mix."""
    if not isinstance(entries, list):
        raise ParameterError("function payload must be a list of entries")
    seen_mode: Optional[str] = None
    pairs = []
    for e in entries:
        if not isinstance(e, dict) or "level" not in e or "index" not in e:
            raise ParameterError(f"bad function entry {e!r}: needs level and index")
        key = (int(e["level"]), int(e["index"]))
        if "num" in e or "den" in e:
            entry_mode = EXACT
            value = Fraction(int(e["num"]), int(e.get("den", 1)))
        elif "re" in e or "im" in e:
            entry_mode = COMPLEX
            value = complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
        else:
            raise ParameterError(f"bad function entry {e!r}: needs num/den or re/im")
        if seen_mode is None:
            seen_mode = entry_mode
        elif seen_mode != entry_mode:
            raise ParameterError("function entries mix rational and complex values")
        pairs.append((key, value))
    result_mode = mode or seen_mode or EXACT
    if seen_mode is not None and mode is not None and mode != seen_mode:
        raise ParameterError(f"entries are {seen_mode} but mode {mode} was requested")
    return TreeFunction.from_entries(pairs, result_mode)


def dump_function(f: TreeFunction) -> list:
    out = []
    for (lv, idx) in f.support():
        val = f.values[(lv, idx)]
        if f.mode == EXACT:
            fr = Fraction(val)
            out.append({"level": lv, "index": idx, "num": fr.numerator, "den": fr.denominator})
        else:
            z = complex(val)
            out.append({"level": lv, "index": idx, "re": z.real, "im": z.imag})
    return out


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def jsonable(obj):
    """Recursively convert reports/values into JSON-serializable structures."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, TreeFunction):
        return {"mode": obj.mode, "entries": dump_function(obj)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    return str(obj)
