"""Smoke test for the symtrop Python bindings.

Build first with
    cargo build --release -p symtrop-py
    cp target/release/libsymtrop_py.so python/symtrop_py.so
then run ``python3 python/smoke_test.py`` from the repository root.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import symtrop_py as st


def main():
    p = st.Partition("4,2^2")
    assert p.parts == [4, 2, 2] and p.size == 8 and len(p) == 3
    assert st.Partition([2, 2, 2]).superdominates("4,2")
    assert st.superdominates("6,2", "4^2") and not st.superdominates("4^2", "6,2")
    assert [str(q) for q in st.partitions_of(4)] == ["(1^4)", "(2,1^2)", "(3,1)", "(2^2)", "(4)"]
    assert len(st.partitions_of(8, even=True)) == 5
    assert len(st.hasse(8)) == 25
    assert st.hasse_dot(5).startswith("digraph")
    assert st.binomial_violation("4^2", "6,2") is not None
    assert st.binomial_violation("6,2", "4^2") is None

    n4 = st.trop_vandermonde(4)
    assert "y[1] + y[3] >= 2*y[2]" in n4.inequalities()
    assert n4.contains(["1", "1", "1", "1"])

    bp5 = st.trop_bp_dual(5)
    assert len(bp5.lineality) == 1
    assert bp5 == st.t_k(5, 3)
    assert [st.tau(d) for d in (3, 4, 5)] == [2, 2, 3]
    assert len(st.trop_sos("B10").facets) == 9

    c = st.Cone.from_h(3, [["1", "-2", "1"], ["0", "3", "-2"]])
    assert len(c.rays) == 2 and len(c.lineality) == 1

    pencil = st.pencil("B10")
    assert [len(b["matrix"]) for b in pencil["blocks"]] == [4, 3, 4, 1, 1, 1]

    assert st.is_psd([[2, -1], [-1, 2]])
    assert not st.is_psd([["0", "1"], ["1", "0"]])
    try:
        st.is_psd([[1, 2], [3, 1]])
        raise AssertionError("asymmetric matrix accepted")
    except ValueError:
        pass

    for name in ("quartic", "decic", "sos4-rays"):
        report = st.certify_check(name)
        assert report["status"] == "pass", report
    assert st.certify_check("decic")["witness"]["pairing"] == "-49/3"

    try:
        st.Partition("4,x")
        raise AssertionError("bad partition accepted")
    except ValueError as e:
        assert '"x"' in str(e)

    results = st.verify_all()
    for line, _ in results:
        print(line)
    assert all(ok for _, ok in results)
    print("smoke test passed")


if __name__ == "__main__":
    main()
