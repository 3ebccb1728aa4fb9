import json
from fractions import Fraction

import numpy as np
import pytest

from uqlab.report import CheckReport, dumps_reports, to_jsonable
from uqlab.scalar import Cyclo
from uqlab.sweep import classify, sweep_points

from conftest import field


@pytest.mark.parametrize("backend,p", [("exact", 3), ("exact", 5), ("float", 7)])
def test_sweep_covers_rays(backend, p):
    f = field(backend, p)
    pts = sweep_points(f, 20, seed=0)
    assert len(pts) >= 20
    for tag in ("base", "random-base"):
        for l in range(1, p):
            pt2 = next(x for x in pts if x.label == f"{tag}:cond2:l={l}")
            pt3 = next(x for x in pts if x.label == f"{tag}:cond3:l={l}")
            assert classify(f, pt2).cond2.witness["l"] == l
            assert classify(f, pt3).cond3.witness["l"] == l
    assert all(classify(f, pt).cond1.ok for pt in pts)


def test_sweep_deterministic():
    f = field("exact", 5)
    assert sweep_points(f, 25, 7) == sweep_points(f, 25, 7)
    assert sweep_points(f, 25, 7) != sweep_points(f, 25, 8)


def test_to_jsonable():
    assert to_jsonable(np.bool_(True)) is True
    assert to_jsonable(-0.0) == 0.0 and str(to_jsonable(-1e-15)) == "0.0"
    assert to_jsonable(complex(1, -2)) == {"re": 1.0, "im": -2.0}
    assert to_jsonable(Fraction(1, 3)) == "1/3"
    assert to_jsonable(Cyclo(3, (1, 1))) == str(Cyclo(3, (1, 1)))
    assert to_jsonable({1: (2, 3)}) == {"1": [2, 3]}


def test_report_ordering_and_status():
    a = CheckReport("b-check", {"p": 3})
    b = CheckReport("a-check", {"p": 5}).fail(reason="x")
    doc = json.loads(dumps_reports([a, b], {"seed": 0}, "0"))
    assert [r["check"] for r in doc["results"]] == ["a-check", "b-check"]
    assert doc["results"][0]["status"] == "fail"
    with pytest.raises(ValueError):
        CheckReport("c", {}, status="maybe")
    with pytest.raises(ValueError):
        dumps_reports([], {}, "0")
