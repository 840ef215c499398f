"""Smoke test for the lhs_py extension module.

Install first with `pip install --no-build-isolation -e crates/py`, then run
`python crates/py/python/smoke_test.py`.
"""

import json
import pathlib

import lhs_py

CONFIGS = pathlib.Path(__file__).resolve().parents[3] / "configs"


def main():
    spec = (CONFIGS / "extraspecial-27.toml").read_text()
    overrides = (CONFIGS / "extraspecial-27-overrides.toml").read_text()

    report = json.loads(lhs_py.sseq_report(spec, 20, overrides))
    assert report["poincare"]["coefficients"][:7] == [1, 2, 4, 6, 7, 8, 9], report["poincare"]
    assert len(report["overrides"]) == 2

    assert lhs_py.cohomology_dims(spec, 6) == [1, 2, 4, 6, 7, 8, 9]
    assert lhs_py.expand("(1+s)/((1-s)*(1-s^6))", 7) == [1, 2, 2, 2, 2, 2, 3, 4]

    rep, basis, zero = lhs_py.massey(3, [1], "y1", "y1", "y1")
    assert (rep, basis, zero) == ("x1", [], False)
    rep, _, zero = lhs_py.massey(3, [2, 1], "x2*y1", "y1", "y1*y2")
    assert zero and rep == "0"

    assert lhs_py.verify("rank-two-massey")
    for bad in (lambda: lhs_py.verify("nope"), lambda: lhs_py.massey(3, [1, 1], "y1", "y2", "y1")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    print("ok")


if __name__ == "__main__":
    main()
