"""End-to-end smoke checks for the pyscref module."""

import math

import pyscref

LP2 = """\
1
1
-2
1.0
0 1 1 1 1.0
1 1 1 1 0.25
1 1 2 2 1.0
"""

WEAK3 = """\
3
1
3
1.0 0.0 0.0
0 1 1 1 1
0 1 2 2 1
0 1 3 3 1
1 1 1 1 1
1 1 1 2 1
2 1 2 2 1
3 1 1 3 1
3 1 3 3 2
"""


def test_parse_and_roundtrip():
    p = pyscref.parse_problem(LP2)
    assert p.m == 1
    assert p.shape == "d2"
    assert p.b == [1.0]
    again = pyscref.parse_problem(pyscref.write_problem(p))
    assert pyscref.write_problem(again) == pyscref.write_problem(p)


def test_refine_cold():
    p = pyscref.parse_problem(LP2)
    r = pyscref.refine(p, time_limit=600.0)
    assert r["exit"] == "complete", r["exit"]
    assert abs(r["dual_obj"]) <= 1e-6
    assert abs(r["primal_obj"]) <= 1e-6
    assert r["errors"]["e1"] <= 1e-6
    assert r["lb"] <= r["ub"]


def test_dimacs_exact_triple():
    p = pyscref.parse_problem(LP2)
    e = pyscref.dimacs(p, [[[0.0], [1.0]]], [0.0], [[[1.0], [0.0]]])
    assert e["worst"] <= 1e-15, e


def test_status_weak():
    p = pyscref.parse_problem(WEAK3)
    s = pyscref.status(p, "primal", time_limit=600.0)
    assert s["strongly_feasible"] is False
    assert abs(s["optimal_value"] - 1.0) <= 1e-6
    cert = s["cert"]
    assert cert["kind"] == "reducing_direction_primal"
    f = cert["f"]
    norm = math.sqrt(sum(v * v for v in f))
    assert norm > 0
    assert abs(f[0]) <= 1e-8 * norm
    assert f[1] < 0


def test_status_strong():
    p = pyscref.parse_problem(LP2)
    s = pyscref.status(p, "primal", time_limit=600.0)
    assert s["strongly_feasible"] is True
    assert s["optimal_value"] < 1.0 - 1e-8
    w = s["witness"]
    assert abs(0.25 * w[0][0][0] + w[0][1][0] - 1.0) <= 1e-6
    assert min(w[0][0][0], w[0][1][0]) > 0


def test_generate_deterministic():
    g1 = pyscref.generate("s3 d2", 3, 9, "known")
    g2 = pyscref.generate("s3 d2", 3, 9, "known")
    assert pyscref.write_problem(g1["problem"]) == pyscref.write_problem(g2["problem"])
    assert g1["has_optimal"] is True
    e = pyscref.dimacs(g1["problem"], g1["x"], g1["y"], g1["z"])
    assert e["worst"] <= 1e-12, e


def test_errors_surface():
    try:
        pyscref.parse_problem("1 1\n2\n1.0\n1 1 1 5 1.0\n")
    except RuntimeError as exc:
        assert "line 4" in str(exc)
    else:
        raise AssertionError("bad entry index was accepted")
    p = pyscref.parse_problem(LP2)
    try:
        pyscref.dimacs(p, [[[0.0]]], [0.0], [[[1.0], [0.0]]])
    except ValueError:
        pass
    else:
        raise AssertionError("wrong block shape was accepted")


def main():
    test_parse_and_roundtrip()
    test_refine_cold()
    test_dimacs_exact_triple()
    test_status_weak()
    test_status_strong()
    test_generate_deterministic()
    test_errors_surface()
    print("smoke ok")


if __name__ == "__main__":
    main()
