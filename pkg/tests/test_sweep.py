from __future__ import annotations

import json

import jsonschema
import pytest

from cyclotome.cli import load_schema
from cyclotome.config import LimitError
from cyclotome.sweep import SweepOptions, sample_cells, sweep


@pytest.fixture(scope="module")
def report100():
    return sweep(SweepOptions(q_max=100))


def test_q3_trivial():
    r = sweep(SweepOptions(q_max=3))
    assert [(p["q"], p["k"]) for p in r.points] == [(3, 1), (3, 2)]
    assert r.violations == []


def test_q100(report100):
    r = report100
    assert r.violations == []
    assert {"q": 5, "k": 2, "predicate": "thm-i", "witness": [0, 1, 1]} in r.tight
    # every (q, k) with q an odd prime power is present, extension fields included
    qs = {p["q"] for p in r.points}
    assert {9, 25, 27, 49, 81} <= qs and 15 not in qs and 64 not in qs
    # hypothesis-false records are present, not dropped
    assert any(not rec["hypothesis"] for rec in r.records)
    jsonschema.validate(json.loads(r.to_json()), load_schema("scan"))


def test_body_excludes_meta(report100):
    doc = json.loads(report100.to_json(timestamp=False))
    assert "meta" not in doc
    assert "meta" in json.loads(report100.to_json())


def test_parallel_matches_serial():
    opts = SweepOptions(q_max=60)
    a = sweep(opts, parallelism=1).to_json(timestamp=False)
    b = sweep(opts, parallelism=3).to_json(timestamp=False)
    assert a == b


def test_filters():
    r = sweep(SweepOptions(q_max=50, parity="odd", k_max=5, checks=("theorem",)))
    assert all(p["k"] % 2 == 1 and p["k"] <= 5 for p in r.points)
    assert {rec["predicate"] for rec in r.records} == {"thm-i", "thm-ii", "thm-iii"}


def test_sample_cells_deterministic():
    a = sample_cells(101, 4, 25, 10)
    assert a == sample_cells(101, 4, 25, 10)
    assert all((i, i) in a for i in range(25))
    assert len(a) == 25 + 10


def test_limits():
    with pytest.raises(LimitError):
        sweep(SweepOptions(q_max=1000, q_limit=500))


def test_text_report(report100):
    text = report100.to_text()
    assert text.splitlines()[0].split()[:4] == ["q", "k", "e", "max"]
    assert "violations=0" in text.splitlines()[-1]
