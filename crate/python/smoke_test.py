"""Smoke test for the flag_pieces extension: python python/smoke_test.py"""

import json

import flag_pieces as fp


def main():
    a2 = fp.WeylGroup("A2")
    assert a2.order == 6 and a2.rank == 2
    assert a2.classes() == ["(1)", "(s1)", "(s1s2)"]
    assert a2.class_of("s2") == "(s1)"
    assert a2.length("w0") == 3

    assert ("u1", "2,1") in fp.unipotent_classes("A2")
    assert fp.count("A1", 3, "2") == {"1": 1, "s1": 3}

    xi = fp.interpolate("A2", "1,1,1")
    assert xi["(1)"] == "u^3 + 2u^2 + 2u + 1", xi
    assert xi["(s1)"] == "0"
    assert xi["(1)"] == fp.table_value("A2", "Xi", "u3", "(1)")

    # the twisted form's u = 1 values are tabulated under z2
    twisted = fp.interpolate("B2", "3,1,1", form="tw")
    assert twisted["(s2)"] == "0", twisted
    assert fp.table_value("B2", "xi", "u1", "(s2)", z="z2") == "0"

    assert fp.solve_traces("A1", 5, "2") == {"[2]": "1", "[1,1]": "0"}
    assert fp.table_value("G2", "xi", "u1", "(w0)") == "-3"

    try:
        fp.count("A2", 4, "2,1")
    except ValueError as e:
        assert "not prime" in str(e)
    else:
        raise AssertionError("non-prime q accepted")

    passed, report = fp.verify(types=["A1", "A2"])
    checks = json.loads(report)["checks"]
    assert passed and checks, report[:200]
    print(f"ok: {len(checks)} checks")


if __name__ == "__main__":
    main()
