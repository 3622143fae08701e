"""Reading and writing knot files (one JSON document per knot) and schema checks."""

import json
import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .diagrams import CrossingDiagram
from .groups import Presentation
from .knots import KnotDataError, KnotRecord, twist_knot_model

SCHEMAS = ("knotfile", "obstruction_report", "order_certificate", "independence_certificate")
_TWIST = re.compile(r"^T_(\d+)$")


@lru_cache(maxsize=None)
def load_schema(name):
    if name not in SCHEMAS:
        raise KeyError("unknown schema %r" % name)
    text = resources.files("knotconc").joinpath("schemas", name + ".schema.json").read_text()
    return json.loads(text)


def validate(obj, name):
    """Raise jsonschema.ValidationError if ``obj`` does not match schema ``name``."""
    jsonschema.validate(obj, load_schema(name))


def data_path(name):
    return resources.files("knotconc").joinpath("data", name)


def bundled_knot_files():
    return sorted(p.name for p in resources.files("knotconc").joinpath("data").iterdir()
                  if p.name.endswith(".json"))


def record_from_json(obj):
    validate(obj, "knotfile")
    diagram = presentation = None
    if "crossings" in obj:
        c = obj["crossings"]
        diagram = CrossingDiagram(c["arc_count"], tuple(c["crossings"]))
    if "presentation" in obj:
        p = obj["presentation"]
        presentation = Presentation.parse(p["generators"], p["relators"], p.get("eta0"))
    rec = KnotRecord(obj["name"], diagram, presentation, obj.get("seifert"))
    rec.validate()
    return rec


def record_to_json(rec):
    out = {"name": rec.name}
    if rec.diagram is not None:
        out["crossings"] = rec.diagram.to_json()
    if rec.presentation is not None:
        out["presentation"] = rec.presentation.to_json()
    if rec.seifert is not None:
        out["seifert"] = [list(r) for r in rec.seifert]
    validate(out, "knotfile")
    return out


def load_knot(spec):
    """
    Load a knot from a path, a bundled file name (``8_13.json``), or the
    generated family name ``T_k``.
    """
    spec = str(spec)
    m = _TWIST.match(spec)
    if m:
        return twist_knot_model(int(m.group(1)))[0]
    path = Path(spec)
    if path.exists():
        text = path.read_text()
    else:
        bundled = data_path(path.name)
        if path.parent != Path(".") and path.parent.name != "data" or not bundled.is_file():
            raise FileNotFoundError("file not found: %s" % spec)
        text = bundled.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise KnotDataError("malformed JSON in %s: %s" % (spec, e))
    try:
        return record_from_json(obj)
    except jsonschema.ValidationError as e:
        raise KnotDataError("%s does not match the knot file schema: %s" % (spec, e.message))


def dump_knot(rec, path):
    Path(path).write_text(json.dumps(record_to_json(rec), indent=1) + "\n")
