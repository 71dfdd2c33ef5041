from __future__ import annotations

import json
from fractions import Fraction

import pytest

from mvk import checks


def test_ids_unique_and_every_criterion_registered():
    ids = [c.check_id for c in checks.registry()]
    assert len(ids) == len(set(ids))
    assert {checks.criterion_of(i) for i in ids} >= set(range(1, 12))


def test_criterion_of():
    assert checks.criterion_of("acc04/weighted/p=1") == 4
    assert checks.criterion_of("acc11/doubling/x") == 11
    assert checks.criterion_of("words/roundtrip/seed=0") is None


@pytest.mark.parametrize("x,expected", [
    (0, "0.0000000000000000000e+0"),
    (1, "1.0000000000000000000e+0"),
    (Fraction(-1, 8), "-1.2500000000000000000e-1"),
    (1e-7, "1.0000000000000000000e-7"),
])
def test_fmt(x, expected):
    assert checks.fmt(x) == expected


def test_fmt_complex():
    assert checks.fmt(complex(1, -2)) == "1.0000000000000000000e+0-2.0000000000000000000e+0j"


def test_record_field_order():
    rec = checks.run_check(checks.DUMMY_FAILURE)
    keys = list(json.loads(rec.to_json()))
    assert keys[:8] == ["check", "status", "lhs", "rhs", "diff", "tolerance", "runtime_ms", "anchor"]
    assert rec.status == checks.FAIL


def test_crashing_check_is_a_failure():
    def boom(ctx, budget):
        raise ValueError("nope")
    rec = checks.run_check(checks.Check("t/boom", boom, "test"))
    assert rec.status == checks.FAIL and rec.error == "ValueError: nope"


def test_select_filter_and_dummy():
    sel = checks.select("qn1", include_dummy=True)
    assert sel[-1] is checks.DUMMY_FAILURE
    assert all("qn1" in c.check_id for c in sel[:-1]) and len(sel) > 1


def test_fixtures_load():
    ids = {f.fixture_id for f in checks.load_fixtures()}
    assert "weight3/T('2,'1)" in ids and "fixtures-weight10/l=4" in ids
