from fractions import Fraction

import pytest

from kinalg.algebra import (B, FAMILIES, H, J, LABELS, P, LieAlgebra, bracket, build_algebra, convert_algebra,
                            evaluate_structure, family_structure, from_json, gen_index, gen_name, jacobi_residual,
                            levi_civita, rotation_sector_ok, split_label, to_dict, to_json)
from kinalg.coeff import DYNAMICAL, KINEMATICAL, ZERO, coeff
from kinalg.contraction import bracket_scalars
from kinalg.errors import UnknownFamily

S = 1  # marks a ± entry

# Rows of the two printed tables: [B,H], [B,B], [B,P], [P,P], [P,H]; Carroll's blank [B,B] cell is 0.
KINEMATICAL_ROWS = {
    "dS±": (coeff(1), coeff(-1, c=-2), coeff(1, c=-2), coeff(1, S, r=-2), coeff(1, S, tau=-2)),
    "P": (coeff(1), coeff(-1, c=-2), coeff(1, c=-2), ZERO, ZERO),
    "NH±": (coeff(1), ZERO, ZERO, ZERO, coeff(1, S, tau=-2)),
    "P±": (ZERO, ZERO, coeff(1, c=-2), coeff(1, S, r=-2), coeff(1, S, tau=-2)),
    "G": (coeff(1), ZERO, ZERO, ZERO, ZERO),
    "G±": (ZERO, ZERO, ZERO, ZERO, coeff(1, S, tau=-2)),
    "C": (ZERO, ZERO, coeff(1, c=-2), ZERO, ZERO),
    "S": (ZERO,) * 5,
}
DYNAMICAL_ROWS = {
    "dS±": (coeff(1, m=-1), coeff(-1, m=-1, E0=-1), coeff(1, E0=-1), coeff(1, S, C=-1, E0=-1), coeff(1, S, C=-1)),
    "P": (coeff(1, m=-1), coeff(-1, m=-1, E0=-1), coeff(1, E0=-1), ZERO, ZERO),
    "NH±": (coeff(1, m=-1), ZERO, ZERO, ZERO, coeff(1, S, C=-1)),
    "P±": (ZERO, ZERO, coeff(1, E0=-1), coeff(1, S, C=-1, E0=-1), coeff(1, S, C=-1)),
    "G": (coeff(1, m=-1), ZERO, ZERO, ZERO, ZERO),
    "G±": (ZERO, ZERO, ZERO, ZERO, coeff(1, S, C=-1)),
    "C": (ZERO, ZERO, coeff(1, E0=-1), ZERO, ZERO),
    "S": (ZERO,) * 5,
}


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("basis, table", [(KINEMATICAL, KINEMATICAL_ROWS), (DYNAMICAL, DYNAMICAL_ROWS)])
def test_templates_match_tables(label, basis, table):
    alg = build_algebra(label, basis)
    assert bracket_scalars(alg) == table[split_label(label)[0]]
    assert rotation_sector_ok(alg)


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("basis, constrained", [(DYNAMICAL, True), (KINEMATICAL, True), (KINEMATICAL, False)])
def test_jacobi_exact(label, basis, constrained):
    assert jacobi_residual(build_algebra(label, basis, constrained)) == []


def test_dS_plus_dynamical_brackets():
    alg = build_algebra("dS+")
    assert bracket(alg, "Q1", "H") == {"P1": coeff(1, m=-1)}
    assert bracket(alg, "H", "H") == {}
    assert bracket(alg, "Q1", "Q2") == {"J3": coeff(-1, m=-1, E0=-1)}
    assert bracket(alg, "Q1", "P1") == {"H": coeff(1, E0=-1)}
    assert bracket(alg, "P1", "P2") == {"J3": coeff(1, 1, C=-1, E0=-1)}
    assert bracket(alg, "P2", "H") == {"Q2": coeff(1, 1, C=-1)}


def test_dS_minus_pp_evaluates_negative():
    alg = build_algebra("dS-")
    vals = evaluate_structure(alg, {"m": 1, "C": 2, "E0": 3})
    assert vals[("P1", "P2")] == {"J3": Fraction(-1, 6)}


def test_bracket_bilinear_antisymmetric():
    alg = build_algebra("P")
    assert bracket(alg, "H", "Q1") == {"P1": coeff(-1, m=-1)}
    combo = bracket(alg, {"Q1": 2, "P1": 1}, "H")
    assert combo == {"P1": coeff(2, m=-1)}


def test_carroll_only_bp():
    alg = build_algebra("C")
    non_rot = {k: v for k, v in alg.structure.items() if k[0] not in J}
    assert set(non_rot) == {(B[i], P[i]) for i in range(3)}
    assert all(v == ((H, coeff(1, E0=-1)),) for v in non_rot.values())


def test_static_has_only_rotations():
    for basis in (KINEMATICAL, DYNAMICAL):
        alg = build_algebra("S", basis)
        assert all(i in J for i, _ in alg.structure)


def test_perturbed_tensor_breaks_jacobi():
    alg = build_algebra("dS+")
    struct = dict(alg.structure)
    struct[(B[0], P[1])] = ((H, coeff(1, E0=-1)),)
    residual = jacobi_residual(LieAlgebra(struct, basis=DYNAMICAL, sign=1))
    assert residual
    triples = {t for t, _, _ in residual}
    assert ("J3", "Q1", "P1") in triples


def test_constrained_jacobi_needs_the_constraint():
    alg = build_algebra("dS+", KINEMATICAL)
    # treated as independent parameters the printed table is not a Lie algebra
    assert jacobi_residual(alg, constrained=False)
    assert jacobi_residual(alg) == []


@pytest.mark.parametrize("label", LABELS)
def test_convert_round_trip(label):
    dyn = build_algebra(label)
    kin = build_algebra(label, KINEMATICAL, constrained=False)
    assert convert_algebra(kin, DYNAMICAL) == dyn
    assert convert_algebra(convert_algebra(dyn, KINEMATICAL), DYNAMICAL) == dyn


@pytest.mark.parametrize("label", LABELS)
@pytest.mark.parametrize("basis", [KINEMATICAL, DYNAMICAL])
def test_json_round_trip(label, basis):
    alg = build_algebra(label, basis)
    text = to_json(alg)
    back = from_json(text)
    assert back == alg
    assert to_json(back) == text
    assert set(to_dict(alg)) >= {"label", "basis", "sign", "brackets"}


def test_names_and_indices():
    assert gen_name(3, KINEMATICAL) == "K1" and gen_name(3, DYNAMICAL) == "Q1"
    assert gen_index("K2") == gen_index("Q2") == gen_index("B2") == 4
    assert levi_civita(0, 1, 2) == 1 and levi_civita(1, 0, 2) == -1 and levi_civita(0, 0, 1) == 0
    with pytest.raises(UnknownFamily):
        split_label("dS")
    assert len(LABELS) == 12 and len(FAMILIES) == 8


def test_family_structure_zero_sign_dropped():
    alg = LieAlgebra(family_structure([coeff(1, m=-1)] + [ZERO] * 4), sign=1)
    assert alg.sign is None
