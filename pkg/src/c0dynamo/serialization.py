"""JSON persistence for specs, systems, witnesses, certificates and reports.

Exact values travel as ``"p/q"`` strings in lowest terms; floats are refused
wherever exactness matters.  Every document written here carries a
``schema_version`` and a ``type`` tag, and is validated with :mod:`jsonschema`
on the way in.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field, is_dataclass
from fractions import Fraction

import jsonschema

from .bump import BumpProfile
from .conjugacy import ConjugacyWitness, NonConjugacyCertificate
from .layout import LayoutParams
from .maps import TransportMap
from .sequences import InvalidSpecError, SequenceKind, SequenceSpec
from .system import AssembledSystem
from .torus import FormalReal, TorusRotation

__all__ = [
    "SCHEMA_VERSION",
    "SchemaError",
    "RunReport",
    "to_json",
    "from_json",
    "dumps",
    "loads",
    "io_roundtrip",
    "rational_str",
    "digest",
]

SCHEMA_VERSION = 1

_RAT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_RATS = {"type": "array", "items": _RAT}
_VERSION = {"const": SCHEMA_VERSION}
_LAYOUT = {
    "d": {"type": "integer", "minimum": 2},
    "radius_rule": {"type": "string", "enum": ["quarter"]},
    "dense_rule": {"type": "string", "enum": ["dyadic"]},
}
_PROFILE = {"type": "string", "enum": [p.value for p in BumpProfile]}

SPEC_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": _VERSION,
        "type": {"const": "spec"},
        "kind": {"enum": ["eventually_constant", "periodic_tail"]},
        "prefix": _RATS,
        "block": {**_RATS, "minItems": 1},
        "value": _RAT,
    },
    "required": ["kind"],
    "oneOf": [{"required": ["block"]}, {"required": ["value"]}],
}

SYSTEM_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": _VERSION,
        "type": {"const": "system"},
        **_LAYOUT,
        "spec": SPEC_SCHEMA,
        "profile": _PROFILE,
    },
    "required": ["d", "spec"],
}

_POINT = {"type": "array", "items": _RAT, "minItems": 2}
WITNESS_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": _VERSION,
        "type": {"const": "witness"},
        **_LAYOUT,
        "profile": _PROFILE,
        "transports": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "strip": {"type": "integer", "minimum": 2},
                    "box": {
                        "type": "object",
                        "properties": {"lo": _POINT, "hi": _POINT},
                        "required": ["lo", "hi"],
                    },
                    "source_center": _POINT,
                    "target_center": _POINT,
                    "radius": _RAT,
                    "margin": _RAT,
                },
                "required": ["strip", "box", "source_center", "target_center", "radius", "margin"],
            },
        },
    },
    "required": ["schema_version", "type", "d", "transports"],
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": _VERSION,
        "type": {"const": "certificate"},
        "a": _RAT,
        "b": _RAT,
        "gap": _RAT,
        "residue": {
            "type": "object",
            "properties": {
                "start": {"type": "integer", "minimum": 1},
                "period": {"type": "integer", "minimum": 1},
            },
            "required": ["start", "period"],
        },
        "dense_indices": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
    },
    "required": ["schema_version", "type", "a", "b", "gap", "residue", "dense_indices"],
}

FORMAL_REAL_SCHEMA = {"type": "object", "additionalProperties": _RAT}
ROTATION_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": _VERSION,
        "type": {"const": "rotation"},
        "alpha": FORMAL_REAL_SCHEMA,
        "beta": FORMAL_REAL_SCHEMA,
    },
    "required": ["alpha", "beta"],
}

_SCALAR = {"type": ["string", "number", "boolean", "integer", "null"]}
REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": _VERSION,
        "type": {"const": "report"},
        "command": {"type": "string"},
        "inputs": {"type": "object", "additionalProperties": {"type": "string"}},
        "verdicts": {"type": "object", "additionalProperties": _SCALAR},
        "summary": {"type": "object"},
        "version": {"type": "string"},
        "wall_clock": {"type": "number", "minimum": 0},
    },
    "required": ["schema_version", "type", "command", "inputs", "verdicts", "summary", "version", "wall_clock"],
}

SCHEMAS = {
    "spec": SPEC_SCHEMA,
    "system": SYSTEM_SCHEMA,
    "witness": WITNESS_SCHEMA,
    "certificate": CERTIFICATE_SCHEMA,
    "formal_real": FORMAL_REAL_SCHEMA,
    "rotation": ROTATION_SCHEMA,
    "report": REPORT_SCHEMA,
}


class SchemaError(ValueError):
    """Malformed document; ``pointer`` is the JSON pointer of the offending value."""

    def __init__(self, message, pointer="", line=None, column=None):
        where = f" at {pointer}" if pointer else ""
        if line is not None:
            where += f" (line {line}, column {column})"
        super().__init__(message + where)
        self.pointer = pointer
        self.line = line
        self.column = column


def _tool_version() -> str:
    from . import __version__

    return __version__


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    version: str = field(default_factory=_tool_version)
    wall_clock: float = 0.0

    @classmethod
    def start(cls, command: str) -> "RunReport":
        rep = cls(command)
        rep._t0 = time.perf_counter()
        return rep

    def finish(self) -> "RunReport":
        t0 = getattr(self, "_t0", None)
        if t0 is not None:
            self.wall_clock = time.perf_counter() - t0
        return self


def digest(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode()
    return "sha256:" + hashlib.sha256(text).hexdigest()


def rational_str(q) -> str:
    q = Fraction(q)
    return str(q)


def _rat(s: str) -> Fraction:
    return Fraction(s)


def _validate(doc, kind: str):
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        pointer = "/" + "/".join(str(p) for p in exc.absolute_path) if exc.absolute_path else "/"
        raise SchemaError(f"invalid {kind} document: {exc.message}", pointer) from None


def _layout_fields(params: LayoutParams) -> dict:
    return params.to_dict()


def _params(doc) -> LayoutParams:
    return LayoutParams(doc["d"], doc.get("radius_rule", "quarter"), doc.get("dense_rule", "dyadic"))


def _spec_to(spec: SequenceSpec) -> dict:
    if not spec.decidable:
        raise SchemaError("opaque sequences cannot be serialized")
    doc = {"kind": spec.kind.value, "prefix": [rational_str(v) for v in spec.prefix]}
    if spec.kind is SequenceKind.EVENTUALLY_CONSTANT:
        doc["value"] = rational_str(spec.block[0])
    else:
        doc["block"] = [rational_str(v) for v in spec.block]
    return doc


def _spec_from(doc, pointer="") -> SequenceSpec:
    prefix = [_rat(v) for v in doc.get("prefix", [])]
    block = [_rat(v) for v in doc["block"]] if "block" in doc else [_rat(doc["value"])]
    try:
        return SequenceSpec(SequenceKind(doc["kind"]), tuple(prefix), tuple(block))
    except InvalidSpecError as exc:
        raise SchemaError(str(exc), pointer or "/") from None


def _formal_to(x: FormalReal) -> dict:
    return {s: rational_str(c) for s, c in x.terms.items()}


def _header(kind):
    return {"schema_version": SCHEMA_VERSION, "type": kind}


def to_json(value) -> dict:
    """Plain JSON-ready dict for any persistable value."""
    if isinstance(value, SequenceSpec):
        return {**_header("spec"), **_spec_to(value)}
    if isinstance(value, AssembledSystem):
        if value.direction != 1:
            raise SchemaError("only forward systems are serialized")
        return {
            **_header("system"),
            **_layout_fields(value.params),
            "spec": _spec_to(value.spec),
            "profile": value.profile.value,
        }
    if isinstance(value, ConjugacyWitness):
        profile = value.transports[0][1].profile.value if value.transports else "smooth"
        return {
            **_header("witness"),
            **_layout_fields(value.params),
            "profile": profile,
            "transports": [
                {
                    "strip": n,
                    "box": {"lo": [rational_str(v) for v in M.box_lo], "hi": [rational_str(v) for v in M.box_hi]},
                    "source_center": [rational_str(v) for v in M.source],
                    "target_center": [rational_str(v) for v in M.target],
                    "radius": rational_str(M.radius),
                    "margin": rational_str(M.margin),
                }
                for n, M in value.transports
            ],
        }
    if isinstance(value, NonConjugacyCertificate):
        return {
            **_header("certificate"),
            "a": rational_str(value.a),
            "b": rational_str(value.b),
            "gap": rational_str(value.gap),
            "residue": {"start": value.residue_start, "period": value.residue_period},
            "dense_indices": list(value.dense_indices),
        }
    if isinstance(value, FormalReal):
        return _formal_to(value)
    if isinstance(value, TorusRotation):
        return {**_header("rotation"), "alpha": _formal_to(value.alpha), "beta": _formal_to(value.beta)}
    if isinstance(value, RunReport):
        doc = {**_header("report"), **{k: v for k, v in asdict(value).items()}}
        return doc
    raise TypeError(f"no JSON form for {type(value).__name__}")


def from_json(doc, kind: str | None = None):
    """Inverse of :func:`to_json`; ``kind`` defaults to the document's ``type`` tag."""
    if kind is None:
        if not isinstance(doc, dict) or "type" not in doc:
            raise SchemaError("document has no type tag; pass kind explicitly")
        kind = doc["type"]
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown document type {kind!r}", "/type")
    _validate(doc, kind)
    if kind == "spec":
        return _spec_from(doc)
    if kind == "system":
        return AssembledSystem(_params(doc), _spec_from(doc["spec"], "/spec"), BumpProfile(doc.get("profile", "smooth")))
    if kind == "witness":
        params = _params(doc)
        profile = BumpProfile(doc.get("profile", "smooth"))
        transports = []
        for i, t in enumerate(doc["transports"]):
            try:
                M = TransportMap(
                    tuple(_rat(v) for v in t["box"]["lo"]),
                    tuple(_rat(v) for v in t["box"]["hi"]),
                    tuple(_rat(v) for v in t["source_center"]),
                    tuple(_rat(v) for v in t["target_center"]),
                    _rat(t["radius"]),
                    _rat(t["margin"]),
                    profile,
                )
            except ValueError as exc:
                raise SchemaError(str(exc), f"/transports/{i}") from None
            transports.append((t["strip"], M))
        return ConjugacyWitness(params, tuple(transports))
    if kind == "certificate":
        return NonConjugacyCertificate(
            _rat(doc["a"]),
            _rat(doc["b"]),
            _rat(doc["gap"]),
            doc["residue"]["start"],
            doc["residue"]["period"],
            tuple(doc["dense_indices"]),
        )
    if kind == "formal_real":
        return FormalReal({s: _rat(c) for s, c in doc.items()})
    if kind == "rotation":
        return TorusRotation(from_json(doc["alpha"], "formal_real"), from_json(doc["beta"], "formal_real"))
    fields = {k: doc[k] for k in ("command", "inputs", "verdicts", "summary", "version", "wall_clock")}
    return RunReport(**fields)


def _plain(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: _plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def dumps(value, indent: int | None = 2) -> str:
    """Serialize; non-finite numbers are a schema violation."""
    doc = to_json(value) if not isinstance(value, dict) else value
    try:
        return json.dumps(_plain(doc), indent=indent, sort_keys=False, allow_nan=False)
    except ValueError as exc:
        raise SchemaError(f"cannot serialize: {exc}") from None


def loads(text: str, kind: str | None = None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return from_json(doc, kind)


def io_roundtrip(value):
    """Serialize then parse; the identity on every persistable value."""
    kind = None if not isinstance(value, FormalReal) else "formal_real"
    return loads(dumps(value), kind)
