"""Smoke test for the zdgraph_py extension module.

Build and install first, e.g. `pip install --no-build-isolation -e crates/python`
or `maturin develop -m crates/python/Cargo.toml`, then run `python python/smoke_test.py`.
"""

import json

import zdgraph_py as zd


def main():
    c = zd.classify(18)
    assert c.is_cochordal and c.kind == "two_prime", c
    assert str(c) == "cochordal: p^a q form (3^2·2)"
    w = zd.classify(36)
    assert w.witness == ((4, 9), (6, 30)), w.witness

    table = zd.betti_table("zn:12")
    assert table.betas == [8, 14, 9, 2]
    assert "total: 1 8 14 9 2" in table.diagram()
    assert zd.betti_table(zd.RingSpec("zn:30")).betas[:3] == [38, 211, 654]

    big = zd.betti_table(zd.RingSpec.chain(3, 6))
    assert big.pd == 3**5 - 2 and max(big.betas) > 2**64

    h = zd.hilbert_series("poly:2,3")
    assert str(h) == "(1 - 2t^2 + t^3)/(1-t)^3"
    assert h.reduced() == ([1, 1, -1], 2)

    cm = zd.cm_status("gauss:3")
    assert str(cm) == "depth 1, dim 25, CM: no" and cm.height == 6

    assert zd.independence_polynomial("chain:2,4") == [1, 7, 14, 16, 9, 2]
    assert zd.alpha_height_dim("chain:3,5") == (72, 8, 72)

    g = zd.build_graph("zn:12")
    assert (g.vertex_count, g.edge_count) == (7, 8) and g.is_cochordal()
    assert json.loads(g.to_json())["vertices"][0] == "2"

    report = zd.cross_check("gauss:2")
    assert report.verdict == "agree" and report.all_agree
    assert zd.oracle_linear_betti("zn:16") == zd.betti_table("zn:16").betas

    for bad, err in [("zn:36", zd.NotCochordalError), ("zn:x", zd.ZdgraphError)]:
        try:
            zd.betti_table(bad)
        except err:
            pass
        else:
            raise AssertionError(f"{bad} should raise {err.__name__}")
    try:
        zd.oracle_linear_betti("zn:30", bound=10)
    except zd.ScaleExceededError:
        pass
    else:
        raise AssertionError("bound not enforced")
    assert issubclass(zd.ZdgraphError, ValueError)

    print("smoke test passed")


if __name__ == "__main__":
    main()
