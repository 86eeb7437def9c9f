"""Smoke test for the Python bindings.

Install first with ``pip install --no-build-isolation -e crates/py``.
"""

import json
import pathlib
import sys

import symdeg_py

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "crates/core/tests/fixtures"


def main():
    info = json.loads(symdeg_py.group_info(3, dihedral=3))
    assert info["class_count"] == 69, info["class_count"]
    assert info["irrep_count"] == 18

    m4 = json.loads(symdeg_py.group_info(4, dihedral=3, dm_first=True))
    assert m4["class_count"] == 236

    degrees = json.loads(symdeg_py.basic_degrees(3))["basic_degrees"]
    assert len(degrees) == 6

    config = (FIXTURES / "existence_m3.json").read_text()
    report = json.loads(symdeg_py.existence(config, seed=7))
    assert report["isotropy_check"]["consistent"]
    assert len(report["maximal_orbit_types"]) == 4
    assert report == json.loads(symdeg_py.existence(config, seed=7))

    bif = json.loads(symdeg_py.bifurcation((FIXTURES / "bifurcation_m3.json").read_text()))
    first = bif["critical_points"][0]
    assert first["alpha"] == -2 and first["omega"] == [{"coefficient": 1, "name": "D_3×D_3"}]

    bad = '{"m":3,"k":2,"gamma":{"type":"trivial"},"A":[[-1,1],[0,-1]]}'
    try:
        symdeg_py.validate(bad)
    except ValueError as e:
        assert "(A5)" in str(e)
    else:
        raise AssertionError("non-symmetric matrix accepted")

    print(f"ok: {report['total_solutions']} solutions for m=3, {len(bif['critical_points'])} critical points")
    return 0


if __name__ == "__main__":
    sys.exit(main())
