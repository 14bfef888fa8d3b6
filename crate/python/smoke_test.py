"""Smoke test for the qzero extension: run with pytest or as a script."""

import json

import qzero


def test_theorem1_graph():
    g = qzero.Subspace.fixture("theorem1")
    assert (g.ambient, g.dim) == (4, 8)
    assert g.is_symmetric() and g.contains_identity()
    c = qzero.is_transitive(g)
    assert c.verdict == "TRANSITIVE"
    assert c.verify()
    back = qzero.Certificate.from_json(c.to_json())
    assert back.digest == c.digest
    assert qzero.cbar0(g)["status"] == "ZERO"


def test_subspace_roundtrip_and_perp():
    g = qzero.Subspace(2, [[[1, 0], [0, 1]], [["i", 0], [0, "-i"]]])
    assert g.dim == 2
    assert g.perp().dim == 2
    assert g.perp().perp() == g
    assert qzero.Subspace.from_json(g.to_json()) == g
    assert g.contains([["2+i", 0], [0, "2-i"]])


def test_dephasing_channel():
    ch = qzero.Channel([[[1, 0], [0, 0]], [[0, 0], [0, 1]]])
    assert (ch.dim_in, ch.dim_out, ch.choi_rank()) == (2, 2, 2)
    g = ch.graph()
    assert g.dim == 2 and g.is_algebra()
    assert qzero.cbar0(g)["status"] == "POSITIVE"
    led = qzero.ledger(ch)
    assert {c["id"] for c in led["clauses"]} >= {"3B", "3C"}
    # diagonal graph: a Q̄₀ pair would need ψ₁φ₁ = 0 with |φ₁| = |ψ₁|, and likewise for index 2
    assert qzero.ri2(ch)["ri2"]["value"] == "one"


def test_superactivation_kinds():
    l = qzero.Subspace.fixture("theorem1")
    assert qzero.superactivation(l, l)["kind"] == "CLASSICAL"
    spec = qzero.synthesize(l)
    assert spec["n"] == 4


def test_reproduce_and_verify():
    ok, records = qzero.reproduce("lemma6")
    assert ok and any(r["check"] == "dim N" for r in records)
    c = qzero.is_transitive(qzero.Subspace.fixture("l0"))
    assert qzero.verify(c.to_json())
    tampered = json.loads(c.to_json())
    tampered["strategy"] = tampered["strategy"] + "x"
    assert not qzero.verify(json.dumps(tampered))


def test_gaussian():
    doc = {
        "kind": "gaussian",
        "s_a": 1,
        "s_b": 1,
        "K": [["1", "0"], ["0", "1"]],
        "l": ["0", "0"],
        "alpha": [["0", "0"], ["0", "0"]],
    }
    c = qzero.gaussian_classify(json.dumps(doc))
    assert (c["cbar0"], c["qbar0"]) == ("POSITIVE_INFINITE", "POSITIVE_INFINITE")


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
            print(f"{name}: ok")
