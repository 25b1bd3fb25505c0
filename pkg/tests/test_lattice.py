import re

import networkx as nx
import numpy as np
import pytest

from cdloops import build_cd_loop, build_lattice, classify, enumerate_subloops, export_dot, is_modular, join, meet
from cdloops.lattice import Lattice, LatticeError, height, lattice_to_json


def _poset(relations: dict[str, str]) -> Lattice:
    """relations[x] lists every node at or below x."""
    names = list(relations)
    leq = [[x in relations[y] for y in names] for x in names]
    return Lattice.from_poset(names, leq)


N5 = {"0": "0", "a": "0a", "b": "0b", "c": "0ac", "1": "0abc1"}
M3 = {"0": "0", "a": "0a", "b": "0b", "c": "0c", "1": "0abc1"}


def test_pentagon_is_not_modular():
    ok, witness = is_modular(_poset(N5))
    assert not ok
    L = _poset(N5)
    a, b, c = witness
    J, M = L.join_table, L.meet_table
    assert L.leq[a, c] and J[a, M[b, c]] != M[J[a, b], c]


def test_diamond_is_modular():
    assert is_modular(_poset(M3)) == (True, None)


def test_non_lattice_rejected():
    # two maximal elements, no top
    with pytest.raises(LatticeError):
        _poset({"0": "0", "a": "0a", "b": "0b"})


@pytest.fixture(scope="module")
def sedenion_lattice():
    return build_lattice(enumerate_subloops(build_cd_loop(4)))


def test_quaternion_lattice_shape():
    lat = build_lattice(enumerate_subloops(build_cd_loop(2)))
    assert (len(lat), len(lat.covers), height(lat)) == (6, 7, 3)
    assert is_modular(lat)[0]


@pytest.mark.parametrize("n", range(5))
def test_small_levels_modular(n):
    assert is_modular(build_lattice(enumerate_subloops(build_cd_loop(n))))[0]


def test_absorption_and_bounds(sedenion_lattice):
    lat = sedenion_lattice
    J, M = lat.join_table, lat.meet_table
    ar = np.arange(len(lat))
    assert (J[ar[:, None], M] == ar[:, None]).all()  # a v (a ^ b) = a
    assert (M[ar[:, None], J] == ar[:, None]).all()  # a ^ (a v b) = a
    assert lat.nodes[lat.bottom].order == 1 and lat.nodes[lat.top].order == 32


def _span(support: set[int]) -> set[int]:
    out = {0} | support
    while True:
        more = {a ^ b for a in out for b in out} - out
        if not more:
            return out
        out |= more


def test_join_is_span_and_meet_is_intersection(sedenion_lattice):
    lat = sedenion_lattice
    rng = np.random.default_rng(0)
    for a, b in rng.integers(1, len(lat), size=(200, 2)):
        A, B = lat.nodes[a], lat.nodes[b]
        assert set(join(lat, A, B).support) == _span(set(A.support) | set(B.support))
        assert set(meet(lat, int(a), int(b)).codes) == set(A.codes) & set(B.codes)


def test_covers_are_hasse_edges():
    subs = enumerate_subloops(build_cd_loop(3))
    lat = build_lattice(subs)
    lt = [[i != j and set(subs[i].codes) <= set(subs[j].codes) for j in range(len(subs))] for i in range(len(subs))]
    want = {
        (i, j) for i in range(len(subs)) for j in range(len(subs))
        if lt[i][j] and not any(lt[i][k] and lt[k][j] for k in range(len(subs)))
    }
    assert set(lat.covers) == want


def _dot_graph(text: str) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(re.findall(r"^\s*(\w+) \[label=", text, flags=re.M))
    g.add_edges_from(re.findall(r"^\s*(\w+) -> (\w+);", text, flags=re.M))
    return g


def test_dot_full(sedenion_lattice):
    text = export_dot(sedenion_lattice, "full")
    assert text.startswith("digraph") and "rankdir=BT" in text
    g = _dot_graph(text)
    assert nx.is_directed_acyclic_graph(g)
    assert g.number_of_nodes() == 68 and g.number_of_edges() == len(sedenion_lattice.covers)


def test_dot_by_class(sedenion_lattice):
    classes = classify(sedenion_lattice.nodes)
    g = _dot_graph(export_dot(sedenion_lattice, "by-class", classes))
    assert g.number_of_nodes() == len(classes) == 7
    assert nx.is_directed_acyclic_graph(g)
    with pytest.raises(ValueError):
        export_dot(sedenion_lattice, "by-class")
    with pytest.raises(ValueError):
        export_dot(sedenion_lattice, "sideways")


def test_json_export():
    lat = build_lattice(enumerate_subloops(build_cd_loop(1)))
    assert lattice_to_json(lat) == (
        '{"nodes":[{"order":1,"support":[0]},{"order":2,"support":[0]},{"order":4,"support":[0,1]}],'
        '"covers":[[0,1],[1,2]]}'
    )


def test_full_size_lattice(t_analysis):
    lat = t_analysis.lattice
    J, M = lat.join_table, lat.meet_table
    ar = np.arange(len(lat))
    assert len(lat) == 375 and height(lat) == 6
    assert (J[ar[:, None], M] == ar[:, None]).all()
    assert (M[ar[:, None], J] == ar[:, None]).all()
    g = _dot_graph(export_dot(lat, "by-class", t_analysis.classes))
    assert g.number_of_nodes() == 11
    assert nx.is_weakly_connected(g) and nx.is_directed_acyclic_graph(g)
    assert [n for n in g if g.in_degree(n) == 0] == ["c0"]
    assert len([n for n in g if g.out_degree(n) == 0]) == 1
