"""Smoke test for the Python bindings.

Run after `pip install -e python --no-build-isolation` from the repository
root, or directly with the built extension on the path.
"""

import json

import modrep


def main():
    s3 = modrep.Group("S3")
    assert s3.order() == 6

    ks3 = modrep.GroupAlgebra(s3, p=2)
    blocks = ks3.blocks()
    assert len(blocks) == 2
    assert blocks[0]["principal"] and blocks[0]["dim"] == 2
    assert blocks[1]["dim"] == 4 and blocks[1]["defect_order"] == 1
    src = ks3.source(0)
    assert src["defect_order"] == 2 and src["source_algebra_dim"] == 2

    t1 = ks3.theorem1(0)
    assert t1["verdict"] == "equivalent-evidence", t1

    c2 = modrep.Group("C2")
    assert c2.sectional_rank(2) == 1
    y = modrep.Yoshida.for_p_group(c2, p=2)
    assert y.dim_e() == 5
    rec = y.recollement()
    assert rec["corner_iso_ok"] and rec["cartan_ok"]
    assert y.stable() == (4, 1)

    probe = y.findim(dim_cutoff=10, syzygy_cutoff=8, expect=2)
    assert probe["max_finite_pdim"] == 2
    assert probe["verdict"] == "lower-bound-attained"

    yb = modrep.Yoshida.for_block(ks3, block=0)
    assert yb.dim_e() == 5

    # the regular (kC2, kC2)-bimodule, concentrated in degree 0
    kc2 = modrep.group_algebra_json(c2, p=2)
    ident, swap = [[1, 0], [0, 1]], [[0, 1], [1, 0]]
    cx = {
        "convention": "chain",
        "min_degree": 0,
        "terms": [{"dim": 2, "lact": [ident, swap], "ract": [ident, swap]}],
        "diffs": [],
    }
    rep = modrep.rickard_verify(json.dumps(cx), kc2, kc2)
    assert rep["pass"], rep

    print("smoke test passed")


if __name__ == "__main__":
    main()
