import itertools

import pytest

from kinalg.algebra import FAMILIES, LABELS, LieAlgebra, build_algebra, family_structure, join_label
from kinalg.coeff import DYNAMICAL, KINEMATICAL, ZERO, coeff
from kinalg.contraction import (COLORS, Graph, SubspaceSplit, contract_limit, contraction_graph, finite_parameters,
                                identify, iw_contract, to_dot, to_text)
from kinalg.errors import Divergence, NotSubalgebra, Unrecognized

# The twelve arrows of the cube, read off the figure (horizontal green m, vertical red E0, oblique blue C).
FIGURE_EDGES = {
    ("dS±", "P±", "m"), ("NH±", "G±", "m"), ("P", "C", "m"), ("G", "S", "m"),
    ("dS±", "NH±", "E0"), ("P±", "G±", "E0"), ("P", "G", "E0"), ("C", "S", "E0"),
    ("dS±", "P", "C"), ("NH±", "G", "C"), ("P±", "C", "C"), ("G±", "S", "C"),
}


def instances():
    for fam in FAMILIES:
        for s in ((1, -1) if fam.endswith("±") else (None,)):
            yield join_label(fam, s)


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("basis", [KINEMATICAL, DYNAMICAL])
def test_identify_round_trip(label, basis):
    assert identify(build_algebra(label, basis)) == label
    assert identify(build_algebra(label, basis, constrained=False)) == label


def test_identify_hand_built():
    only_ph = LieAlgebra(family_structure([ZERO] * 4 + [coeff(-1, C=-1)]))
    assert identify(only_ph) == "G-"
    assert identify(LieAlgebra(family_structure([ZERO] * 5))) == "S"
    # [K,K] with the wrong sign is not in the list
    odd = LieAlgebra(family_structure([coeff(1, m=-1), coeff(1, m=-1, E0=-1), coeff(1, E0=-1), ZERO, ZERO]))
    with pytest.raises(Unrecognized):
        identify(odd)


@pytest.mark.parametrize("label, limit, result", [
    ("dS+", {"E0"}, "NH+"),
    ("dS-", {"E0"}, "NH-"),
    ("dS+", {"C"}, "P"),
    ("P", {"m"}, "C"),
    ("S", {"m"}, "S"),
    ("P", {"C"}, "P"),
    ("G", {"m"}, "S"),
])
def test_contract_limit_examples(label, limit, result):
    assert identify(contract_limit(build_algebra(label), limit)) == result


def test_contract_limit_keeps_coefficients_verbatim():
    out = contract_limit(build_algebra("dS+", KINEMATICAL, constrained=False), {"c", "r"})
    assert dict(out.terms(3, 9)) == {6: coeff(1, r=1, c=-1, tau=-1)}
    assert "c" in out.infinite and "r" in out.infinite


def test_contract_limit_divergence():
    alg = LieAlgebra(family_structure([coeff(1, m=1)] + [ZERO] * 4))
    with pytest.raises(Divergence):
        contract_limit(alg, {"m"})


def test_contract_limit_rejects_foreign_params():
    with pytest.raises(ValueError):
        contract_limit(build_algebra("dS+"), {"c"})
    with pytest.raises(ValueError):
        contract_limit(build_algebra("dS+", KINEMATICAL), {"c", "r"})


@pytest.mark.parametrize("label", list(instances()))
def test_contract_limit_idempotent(label):
    alg = build_algebra(label)
    for p in ("m", "C", "E0"):
        once = contract_limit(alg, {p})
        assert contract_limit(once, {p}) == once


@pytest.mark.parametrize("label", list(instances()))
@pytest.mark.parametrize("a, b", list(itertools.combinations(("m", "C", "E0"), 2)))
def test_limits_commute(label, a, b):
    alg = build_algebra(label)
    ab = contract_limit(contract_limit(alg, {a}), {b})
    ba = contract_limit(contract_limit(alg, {b}), {a})
    assert ab == ba


@pytest.mark.parametrize("label", ["dS+", "dS-"])
@pytest.mark.parametrize("pair, unscaled, result", [
    (("c", "r"), ["J", "H"], "NH"),
    (("c", "tau"), ["J", "P"], "P"),
    (("r", "tau"), ["J", "B"], "P"),
])
def test_iw_equals_limit(label, pair, unscaled, result):
    alg = build_algebra(label, KINEMATICAL, constrained=False)
    lim = contract_limit(alg, pair)
    iw = iw_contract(alg, unscaled)
    assert lim == iw
    sign = label[-1]
    assert identify(iw) == (result + sign if pair != ("r", "tau") else "P")


def test_iw_not_subalgebra():
    with pytest.raises(NotSubalgebra):
        iw_contract(build_algebra("dS+"), ["J1", "Q2"])
    with pytest.raises(NotSubalgebra):
        iw_contract(build_algebra("dS+"), ["Q", "H"])


def test_iw_abelian_pair_is_allowed():
    # J1 and Q1 commute, so they span a subalgebra
    out = iw_contract(build_algebra("dS+"), SubspaceSplit.of(["J1", "Q1"]))
    assert out.structure


def test_iw_static_fixed():
    s = build_algebra("S")
    assert iw_contract(s, ["J", "H"]) == s


@pytest.mark.parametrize("basis", [DYNAMICAL, KINEMATICAL])
def test_graph_matches_figure(basis):
    g = contraction_graph(basis)
    assert isinstance(g, Graph)
    assert len(g.nodes) == 8 and len(g.edges) == 12
    assert {(e.src, e.dst, e.limit) for e in g.edges} == FIGURE_EDGES
    assert {e.color for e in g.edges if e.limit == "m"} == {"green"}
    assert {e.color for e in g.edges if e.limit == "E0"} == {"red"}
    assert {e.color for e in g.edges if e.limit == "C"} == {"blue"}


def test_graph_distance_dS_to_S():
    adj = {}
    for e in contraction_graph().edges:
        adj.setdefault(e.src, set()).add(e.dst)
    frontier, dist = {"dS±"}, 0
    while "S" not in frontier:
        frontier = set().union(*(adj.get(n, set()) for n in frontier))
        dist += 1
    assert dist == 3


def test_graph_text_and_dot():
    g = contraction_graph()
    text = to_text(g, 1)
    assert "dS+ --(E0)--> NH+" in text.splitlines()
    assert "dS± --(C)--> P" in to_text(g).splitlines()
    dot = to_dot(g)
    assert dot.startswith("digraph") and dot.count("->") == 12
    assert 'color=blue, label="C→∞"' in dot
    assert COLORS == {"m": "green", "E0": "red", "C": "blue"}


def test_finite_parameters_table():
    # yes/no columns of the finite/infinite table
    assert finite_parameters("dS+") == {"m": True, "C": True, "E0": True}
    assert finite_parameters("P") == {"m": True, "C": False, "E0": True}
    assert finite_parameters("G-") == {"m": False, "C": True, "E0": False}
    assert finite_parameters("C") == {"m": False, "C": False, "E0": True}
    assert finite_parameters("S") == {"m": False, "C": False, "E0": False}
