import json
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from c0dynamo import LayoutParams, SequenceSpec, assemble, build_certificate, build_witness
from c0dynamo.serialization import RunReport, SchemaError, digest, dumps, from_json, io_roundtrip, loads, to_json
from c0dynamo.torus import FormalReal, parse_rotation

from conftest import specs

P2 = LayoutParams(2)


def test_spec_roundtrip_exact():
    s = SequenceSpec.periodic(["1/3"], ["1/4", "2/3"])
    doc = json.loads(dumps(s))
    assert doc["schema_version"] == 1 and doc["type"] == "spec"
    assert doc["prefix"] == ["1/3"]
    assert io_roundtrip(s) == s
    c = SequenceSpec.eventually_constant([], "1/2")
    assert json.loads(dumps(c))["value"] == "1/2"
    assert io_roundtrip(c) == c


@settings(max_examples=50, deadline=None)
@given(specs())
def test_spec_roundtrip_property(s):
    assert io_roundtrip(s) == s
    assert io_roundtrip(assemble(LayoutParams(3), s, "cubic")) == assemble(LayoutParams(3), s, "cubic")


def test_system_example_document():
    text = '{"d":2, "spec":{"kind":"periodic_tail","prefix":["1/2"],"block":["1/4","3/4"]}, "profile":"smooth"}'
    S = loads(text, "system")
    assert S.spec == SequenceSpec.periodic(["1/2"], ["1/4", "3/4"]) and S.d == 2


def test_witness_with_ten_strips_roundtrip():
    a = SequenceSpec.eventually_constant(["1/4"] * 10, "1/2")
    b = SequenceSpec.eventually_constant(["3/4"] * 10, "1/2")
    W = build_witness(a, b, P2)
    assert len(W.transports) == 10
    W2 = io_roundtrip(W)
    assert W2 == W


def test_certificate_and_rotation_roundtrip():
    C = build_certificate(SequenceSpec.constant("1/4"), SequenceSpec.constant("1/2"), P2)
    assert io_roundtrip(C) == C
    T = parse_rotation("1/2+sqrt2,sqrt3")
    assert io_roundtrip(T) == T
    x = FormalReal.parse("1/2+1*sqrt2")
    assert to_json(x) == {"1": "1/2", "sqrt2": "1"}
    assert io_roundtrip(x) == x


def test_report_roundtrip_and_nan_rejected():
    rep = RunReport("decode", {"system": digest("x")}, {"decoded": True}, {"values": [0.5, 0.25]}).finish()
    assert io_roundtrip(rep) == rep
    bad = RunReport("decode", summary={"defect": math.nan})
    with pytest.raises(SchemaError):
        dumps(bad)


def test_digest_format():
    assert digest("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


@pytest.mark.parametrize(
    "text,pointer",
    [
        ('{"schema_version":1,"type":"spec","kind":"periodic_tail","prefix":[0.5],"block":["1/4"]}', "/prefix/0"),
        ('{"schema_version":1,"type":"spec","kind":"periodic_tail","block":["1/2x"]}', "/block/0"),
        ('{"schema_version":1,"type":"spec","kind":"weird","block":["1/2"]}', "/kind"),
        ('{"d":1,"spec":{"kind":"periodic_tail","block":["1/2"]}}', "/d"),
    ],
)
def test_schema_errors_carry_pointer(text, pointer):
    kind = "system" if '"d"' in text else None
    with pytest.raises(SchemaError) as err:
        loads(text, kind)
    assert err.value.pointer == pointer


def test_malformed_json_location():
    with pytest.raises(SchemaError) as err:
        loads('{\n  "type": "spec",\n  oops\n}')
    assert (err.value.line, err.value.column) == (3, 3)


def test_values_outside_range_rejected():
    with pytest.raises(SchemaError):
        loads('{"schema_version":1,"type":"spec","kind":"periodic_tail","block":["9/10"]}')


def test_untyped_document_needs_kind():
    with pytest.raises(SchemaError):
        from_json({"kind": "periodic_tail", "block": ["1/2"]})
