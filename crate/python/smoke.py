"""Smoke test for the rgroup_py extension module.

Build with `cargo build -p rgroup-py --release`, then copy
target/release/librgroup_py.so to rgroup_py.so next to this script (or
anywhere on PYTHONPATH) and run `python3 python/smoke.py`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import rgroup_py as rg


def main():
    assert "prime3" in rg.fixture_names()

    w = rg.SignedPermutation([2, 3, 1], [1])
    assert str(w) == "(1 2 3)·C{1}", str(w)
    assert w.order() == 6
    assert (w * w.inverse()) == rg.SignedPermutation.identity(3)
    assert w.is_regular([1, 1, 1])
    assert not rg.SignedPermutation([2, 3, 1], [1, 2]).is_regular([1, 1, 1])
    assert len(rg.weyl_group_elements([1, 1])) == 8

    d = rg.Datum.fixture("prime3")
    assert d.rank == 3
    report = d.analyze(with_oracle=True)
    assert len(report["r_group"]["r_sigma"]) == 24
    assert report["r_group"]["structure"] == "Z_3 x| Z_2^3"
    assert len(report["regular_set"]) == 8
    comps = report["elliptic"]["components"]
    assert sorted((c["multiplicity"], c["elliptic"]) for c in comps) == [(1, True)] * 6 + [(3, False)] * 2
    assert all(s["passed"] for s in report["oracle"]["suites"])
    assert all(e["passed"] for e in report["oracle"]["expectations"])
    assert len(d.r_group()) == 24

    doc = json.loads(rg.fixture("prime3"))
    doc["delta_prime"] = ["e1+e2"]
    violations = rg.validate(json.dumps(doc))
    assert [v["rule"] for v in violations] == ["delta-sum"], violations
    try:
        rg.Datum.from_json(json.dumps(doc))
    except ValueError as e:
        assert "delta-sum" in str(e)
    else:
        raise AssertionError("invalid datum accepted")

    for p in (2, 3, 5):
        r = rg.prime_family(p)
        ell = [c for c in r["components"] if c["elliptic"]]
        assert len(ell) == 2 * p

    results = rg.oracle("thm39", 3)
    assert results[0]["passed"]

    print("smoke test passed")


if __name__ == "__main__":
    main()
