import _fillvol as fv
import pytest


def test_cyclic_resolution_basics():
    cx = fv.cyclic_resolution(5, n_max=3, ring="F5")
    assert cx.max_degree == 3
    assert cx.rank(1) == 1
    cx.verify_d_squared()
    n_cycle = cx.chain(1, [("b1", [1] * i, "1") for i in range(5)])
    assert cx.boundary(n_cycle).is_zero()
    assert cx.chain_norm(n_cycle) == "5"
    res = fv.filling_volume(cx, n_cycle)
    assert res["found"] and res["exact_minimum"]
    assert res["norm"] == "1"


def test_commutator_cycle_volume():
    cx = fv.z2_complex(ring="Z")
    c = fv.commutator_cycle(cx, 2)
    assert cx.chain_norm(c) == "8"
    res = fv.filling_volume(cx, c)
    assert res["norm"] == "4" and res["exact_minimum"]
    oracle = fv.fill_bruteforce(cx, c, box=1, window_radius=4)
    assert oracle["norm"] == "4"


def test_graph_summary_trichotomy():
    cx = fv.cyclic_resolution(7, n_max=3, ring="F7")
    assert fv.graph_summary(cx, 0)["class"] == "edgeless"
    deg1 = fv.graph_summary(cx, 1)
    assert deg1["class"] == "cycle" and deg1["edges"] == 7
    deg2 = fv.graph_summary(cx, 2)
    assert deg2["class"] == "complete" and deg2["edges"] == 21


def test_tables_and_orbits():
    cx = fv.cyclic_resolution(3, n_max=3, ring="F2")
    orbit = fv.filling_function_table(cx, 2, 6, mode="orbit")
    oracle = fv.filling_function_table(cx, 2, 6, mode="oracle")
    assert [e["value"] for e in orbit] == [e["value"] for e in oracle]
    assert fv.orbit_count(cx, 1, 2) == 3
    report = fv.exhaustion_report(cx, 2)
    assert report["all_pass"]


def test_json_round_trip():
    cx = fv.cyclic_resolution(4, n_max=2, ring="Z/4")
    again = fv.complex_from_json(cx.to_json())
    assert again.to_json() == cx.to_json()


def test_errors_are_typed():
    cx = fv.cyclic_resolution(3, n_max=2, ring="F3")
    not_a_cycle = cx.chain(1, [("b1", [], "1")])
    with pytest.raises(fv.FillvolError):
        fv.filling_volume(cx, not_a_cycle)
    with pytest.raises(fv.FillvolError):
        fv.complex_from_json("{}")
