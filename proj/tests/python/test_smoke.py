import json

import pytest

import c2wl


def test_version():
    assert c2wl.__version__ == "1.0.0"


def test_graph_roundtrip():
    g = c2wl.make_linear_order(4)
    assert g.num_nodes == 4
    assert g.dimension == 0
    assert g.has_edge(0, 3)
    assert not g.has_edge(3, 0)
    assert g.is_strict_linear_order()
    back = c2wl.Graph(g.to_json())
    assert back.edges == g.edges
    doc = json.loads(g.to_json())
    assert doc["num_nodes"] == 4
    assert doc["directed"] is True


def test_graph_constructor_and_validation():
    g = c2wl.Graph(3, 1, [[1], [0], [1]], [(0, 1), (1, 0)])
    assert g.is_undirected()
    with pytest.raises(ValueError):
        c2wl.Graph(2, 0, [[], []], [(0, 0)])


def test_formula_metrics_and_eval():
    info = c2wl.check_formula("exists[=2] y. E(x, y)")
    assert info["depth"] == 1
    assert info["counting_rank"] == 3
    assert info["is_c2"]
    g = c2wl.make_linear_order(4)
    assert c2wl.classify(g, "exists[=2] y. E(x, y)") == [False, True, False, False]
    assert c2wl.evaluate(g, "E(x, y)", {"x": 0, "y": 2})
    assert not c2wl.evaluate(g, "E(x, y)", {"x": 2, "y": 0})


def test_normalize():
    disjuncts = c2wl.normalize("E(x, y)")
    assert [d["gamma"] for d in disjuncts] == ["only_forward", "both_edges"]


def test_run_wl_and_stable_round():
    g = c2wl.make_linear_order(3)
    rounds = c2wl.run_wl(g, 3, 2)
    assert rounds[0]["partition_sizes"] == [3]
    assert rounds[1]["partition_sizes"] == [1, 1, 1]
    assert c2wl.stable_round(g, 3) == 1


def test_distinguish():
    base, variant, half = c2wl.make_perturbed_order(1, 1)
    assert half == 2
    assert c2wl.distinguish(base, 0, variant, 0, 1, 1) is None
    f = c2wl.distinguish(base, 0, variant, 0, 2, 2)
    assert f is not None
    assert c2wl.evaluate(base, f, {"x": 0})
    assert not c2wl.evaluate(variant, f, {"x": 0})


def test_gnn():
    g = c2wl.make_linear_order(4)
    assert c2wl.run_gnn(g, "lin") == [True] * 4
    trace = c2wl.gnn_trace(g, "lin")
    assert trace["rounds"][1]["states"] == [["1"], ["10"], ["100"], ["1000"]]
    h = c2wl.gadgetise(g)
    assert c2wl.run_gnn(h, "gadlin") == [True] * h.num_nodes
    assert c2wl.check_psi(h)


def test_perturbed_gadget():
    base, variant, cycle = c2wl.make_perturbed_gadget(1, 1)
    assert base.num_nodes == 25
    assert len(cycle) == 9
    assert not c2wl.check_psi(variant)


def test_reports():
    rep = c2wl.directed_counterexample(1, 1)
    assert rep["schema"] == 1
    assert rep["separated"] is True
    assert [c["name"] for c in rep["checks"]] == [
        "gnn_separates",
        "formula_separates",
        "wl_colors_agree",
        "no_distinguisher",
    ]
    sound = c2wl.gnn_soundness(3)
    assert sound["separated"] is True
    thm = c2wl.theorem1_check(1, 1, graph_trials=10, formula_samples=20, seed=7)
    assert thm["separated"] is True
