#!/usr/bin/env python3
"""Smoke test for the ffdyn Python extension.

Build the module first (see README):
    cargo build --release -p ffdyn-py
    cp target/release/libffdyn.so python/ffdyn.so
then run:  python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import ffdyn  # noqa: E402


def main() -> None:
    field = ffdyn.Field("p=5")
    assert field.p == 5 and field.q == 5
    assert field.spec() == "p=5"

    phi = ffdyn.RationalMap(field, "z^2 + t")
    assert phi.degree() == 2
    assert phi.eval("0") == "t"
    orbit = phi.orbit("0", 3)
    assert orbit[0] == "t"
    assert orbit[1] == "t^2 + t"

    # infinity is fixed and critical; 0 is not post-critical
    assert "Postcritical" in phi.postcritical("inf")
    assert phi.postcritical("0") == "NotPostcritical"
    assert phi.is_wandering("0")
    assert not phi.is_wandering("inf")

    assert phi.height_discrepancy_bound() == 1
    est, errb = phi.canonical_height("0", 8)
    assert est == (1, 2), est
    assert errb == (1, 256), errb

    # proximity checks: lambda(t, inf) = 1, lambda(1/t, 0) = 1
    assert phi.proximity("t", "inf") == (1, 1)
    assert phi.proximity("1/t", "0") == (1, 1)

    fiber, squarefree = phi.preimage_fiber("0", 1)
    assert squarefree and len(fiber) == 1
    assert fiber[0][1] == 2 and fiber[0][2] == 1

    csv = phi.limit_audit("0", ["inf"], 1, 6)
    lines = csv.strip().splitlines()
    assert lines[0].startswith("n,deg_a,deg_b,h")
    assert len(lines) == 7

    # the Artin-Schreier element has approximation exponent 5
    rep = json.loads(ffdyn.exponent_report(field, "z^5 - z - 1/t", 25))
    assert rep["best"] == {"num": 5, "den": 1}, rep
    assert rep["liouville_pass"] and rep["liouville_fitted_c"]["num"] == 0

    # disc combinatorics: concentric kernels and a zero log cross-ratio
    a = ffdyn.BerkPoint.disc(field, "0", -1, 1)
    b = ffdyn.BerkPoint.disc(field, "0", 2, 1)
    assert ffdyn.hsia(a, b) == (2, 1)
    p0 = ffdyn.BerkPoint.type_i(field, "0")
    p1 = ffdyn.BerkPoint.type_i(field, "t")
    p2 = ffdyn.BerkPoint.type_i(field, "t^2")
    p3 = ffdyn.BerkPoint.type_i(field, "t^3")
    assert ffdyn.cross_ratio_log(p0, p1, p2, p3) == (0, 1)
    assert a.kind() == "TypeII"

    # full pipeline round trip
    config = {
        "field": "p=5",
        "map": "z^2 + t",
        "seed_point": "0",
        "gammas": ["inf"],
        "n_range": [1, 6],
        "depth_m": 1,
        "budgets": {
            "cf_budget": 16,
            "series_prec": 32,
            "postcritical_n": 256,
            "delta_num": 1,
            "delta_den": 10,
        },
        "rng_seed": 7,
        "non_isotrivial": {"asserted": True, "justification": "smoke"},
    }
    report = json.loads(ffdyn.run_experiment_json(json.dumps(config)))
    assert report["schema"] == "ffdyn-report/1"
    assert report["violations"] == []
    assert "Postcritical" in report["postcritical"][0]["verdict"]

    print("ffdyn python smoke test: OK")


if __name__ == "__main__":
    main()
