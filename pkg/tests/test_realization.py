import random
from fractions import Fraction

import numpy as np
import pytest

from kinalg.errors import NotInSpan
from kinalg.realization import (MATRIX_LABELS, build_matrix_generators, commutator, commutator_table, compare_tables,
                                decompose, expected_table, format_table, is_isometry_generator, metric,
                                operator_table, rescale_generators, vector_field_realization)
from kinalg.verify import random_kinematical_params, rescaled_matches

F = Fraction


def e(k):
    v = np.full(5, F(0), dtype=object)
    v[k] = F(1)
    return v


@pytest.mark.parametrize("sign", [1, -1])
def test_isometry(sign):
    gens = build_matrix_generators(sign)
    assert list(gens) == list(MATRIX_LABELS)
    assert all(is_isometry_generator(X, sign) for X in gens.values())
    combo = sum((F(i + 1, 3) * X for i, X in enumerate(gens.values())), np.full((5, 5), F(0), dtype=object))
    assert is_isometry_generator(combo, sign)


def test_metric():
    assert [metric(-1)[i, i] for i in range(5)] == [1, 1, 1, -1, -1]
    with pytest.raises(ValueError):
        metric(0)


def test_matrix_shapes():
    g = build_matrix_generators(1)["Gamma"]
    assert g[3, 4] == 1 and g[4, 3] == 1
    assert sum(1 for v in g.flat if v) == 2
    A1 = build_matrix_generators(1)["A1"]
    assert list(A1 @ e(3)) == list(e(0)) and list(A1 @ e(0)) == list(e(3))
    B1 = build_matrix_generators(-1)["B1"]
    assert B1[0, 4] == 1 and B1[4, 0] == 1


@pytest.mark.parametrize("sign", [1, -1])
def test_commutator_table(sign):
    got = commutator_table(build_matrix_generators(sign))
    assert compare_tables(got, expected_table(sign)) == []


def test_commutator_examples():
    plus, minus = commutator_table(build_matrix_generators(1)), commutator_table(build_matrix_generators(-1))
    assert plus[("A1", "B1")] == {"Gamma": 1}
    assert minus[("B1", "B2")] == {"J3": -1}
    assert plus[("B1", "B2")] == {"J3": 1}
    assert ("J1", "Gamma") not in plus
    assert plus[("A1", "Gamma")] == {"B1": 1}
    assert minus[("B1", "Gamma")] == {"A1": -1}
    assert plus[("A1", "A2")] == {"J3": -1}


def test_decompose_rejects_outside_span():
    gens = build_matrix_generators(1)
    stray = np.full((5, 5), F(0), dtype=object)
    stray[0, 0] = F(1)
    with pytest.raises(NotInSpan):
        decompose(stray, gens)


def test_rescale_unit():
    gens = build_matrix_generators(1)
    unit = rescale_generators(gens, 1, 1, 1)
    got = commutator_table(unit)
    renamed = {(a.replace("A", "K").replace("B", "P").replace("Gamma", "H"),
                b.replace("A", "K").replace("B", "P").replace("Gamma", "H")):
               {k.replace("A", "K").replace("B", "P").replace("Gamma", "H"): v for k, v in row.items()}
               for (a, b), row in commutator_table(gens).items()}
    assert got == renamed


def test_rescale_example():
    table = commutator_table(rescale_generators(build_matrix_generators(1), 2, 6, 3))
    assert table[("K1", "H")] == {"P1": 1}
    assert table[("K1", "P1")] == {"H": F(1, 4)}
    assert table[("P1", "H")] == {"K1": F(1, 9)}
    with pytest.raises(ValueError):
        rescale_generators(build_matrix_generators(1), 0, 1, 1)


@pytest.mark.parametrize("sign", [1, -1])
def test_rescaled_matches_table(sign):
    rng = random.Random(0)
    for _ in range(20):
        ok, detail = rescaled_matches(sign, *random_kinematical_params(rng))
        assert ok, detail


def test_rescaled_unconstrained_coefficients():
    # without r = c tau the brackets carry the ratios r/(c tau), tau/(c r), c/(r tau)
    c, r, tau = F(2), F(5), F(7)
    t = commutator_table(rescale_generators(build_matrix_generators(-1), c, r, tau))
    assert t[("K1", "H")] == {"P1": r / (c * tau)}
    assert t[("K1", "P1")] == {"H": tau / (c * r)}
    assert t[("P1", "H")] == {"K1": -c / (r * tau)}
    assert t[("K1", "K2")] == {"J3": -1 / c**2}
    assert t[("P1", "P2")] == {"J3": -1 / r**2}


@pytest.mark.parametrize("sign", [1, -1])
def test_operator_realization(sign):
    ops = vector_field_realization(sign)
    mats = build_matrix_generators(sign)
    for k in (1, 2, 3):
        assert np.all(ops[f"A{k}"] == ops[f"A{k}"].T)
        assert np.all(ops[f"J{k}"] == mats[f"J{k}"])
        assert np.all(ops[f"A{k}"] == mats[f"A{k}"])
    # the printed operators and matrices disagree in one generator per sign
    if sign == 1:
        assert np.all(ops["Gamma"] == mats["Gamma"]) and not np.all(ops["B1"] == mats["B1"])
    else:
        assert np.all(ops["B1"] == mats["B1"]) and not np.all(ops["Gamma"] == mats["Gamma"])


@pytest.mark.parametrize("sign", [1, -1])
def test_operator_table_orientation(sign):
    got = operator_table(sign)
    want = expected_table(sign)
    assert got[("A1", "B1")] == {"Gamma": 1}
    assert got[("A1", "Gamma")] == want[("A1", "Gamma")]
    # the remaining brackets come out as the matrix table with J, A, B negated
    flip = {"J": -1, "A": -1, "B": -1, "G": 1}
    for (x, y), row in want.items():
        factor = flip[x[0]] * flip[y[0]]
        expected = {z: v * factor * flip[z[0]] for z, v in row.items()}
        assert got[(x, y)] == expected


def test_commutator_and_format():
    g = build_matrix_generators(1)
    assert np.all(commutator(g["J1"], g["J1"]) == 0)
    assert "[   A1,    B1] = Gamma" in format_table(commutator_table(g))
