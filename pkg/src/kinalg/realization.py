"""Matrix and vector-field realizations of the pseudo-orthogonal algebras O±(5).

Everything here is exact: matrices are numpy object arrays of Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import numpy as np

from .algebra import levi_civita
from .errors import NotInSpan

MATRIX_LABELS = ("J1", "J2", "J3", "A1", "A2", "A3", "B1", "B2", "B3", "Gamma")
KINEMATICAL_LABELS = ("J1", "J2", "J3", "K1", "K2", "K3", "P1", "P2", "P3", "H")

Table = dict[tuple[str, str], dict[str, Fraction]]


def _zeros() -> np.ndarray:
    return np.full((5, 5), Fraction(0), dtype=object)


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")


def metric(sign: int) -> np.ndarray:
    """eta = diag(1, 1, 1, -1, sign)."""
    _check_sign(sign)
    eta = _zeros()
    for a, v in enumerate((1, 1, 1, -1, sign)):
        eta[a, a] = Fraction(v)
    return eta


def build_matrix_generators(sign: int) -> dict[str, np.ndarray]:
    """The ten basis matrices J_k, A_k, B_k, Gamma of O±(5)."""
    _check_sign(sign)
    gens = {}
    for k in range(3):
        Jk = _zeros()
        for i in range(3):
            for j in range(3):
                # (J_k)^i_j = eps^i_{kj}
                Jk[i, j] = Fraction(levi_civita(i, k, j))
        gens[f"J{k + 1}"] = Jk
    for k in range(3):
        Ak = _zeros()
        Ak[k, 3] = Ak[3, k] = Fraction(1)
        gens[f"A{k + 1}"] = Ak
    for k in range(3):
        Bk = _zeros()
        Bk[k, 4] = Fraction(1)
        Bk[4, k] = Fraction(-sign)
        gens[f"B{k + 1}"] = Bk
    G = _zeros()
    G[3, 4] = Fraction(1)
    G[4, 3] = Fraction(sign)
    gens["Gamma"] = G
    return gens


def is_isometry_generator(X: np.ndarray, sign: int) -> bool:
    eta = metric(sign)
    return bool(np.all(X.T @ eta + eta @ X == 0))


def commutator(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return X @ Y - Y @ X


def decompose(M: np.ndarray, basis: Mapping[str, np.ndarray]) -> dict[str, Fraction]:
    """Coordinates of ``M`` in ``basis``.

    The O±(5) basis matrices (and their rescalings) have pairwise disjoint
    supports, so each coordinate is read off one entry and the
    reconstruction is checked exactly.
    """
    coords = {}
    rebuilt = _zeros()
    for name, X in basis.items():
        i, j = next(zip(*np.nonzero(X != 0)))
        c = Fraction(M[i, j]) / Fraction(X[i, j])
        if c:
            coords[name] = c
            rebuilt = rebuilt + c * X
    if not np.all(rebuilt == M):
        raise NotInSpan("matrix is not a combination of the generators")
    return coords


def commutator_table(gens: Mapping[str, np.ndarray]) -> Table:
    """All pairwise commutators ``[X, Y]`` for ``X`` before ``Y``, in the generator basis."""
    names = list(gens)
    table: Table = {}
    for a, x in enumerate(names):
        for y in names[a + 1:]:
            coords = decompose(commutator(gens[x], gens[y]), gens)
            if coords:
                table[(x, y)] = coords
    return table


def expected_table(sign: int) -> Table:
    """The O±(5) bracket relations written out term by term."""
    _check_sign(sign)
    t: Table = {}

    def put(x, y, z, c):
        t.setdefault((x, y), {})[z] = Fraction(c)

    for i in range(3):
        for j in range(3):
            for k in range(3):
                e = levi_civita(i, j, k)
                if not e:
                    continue
                I, Jn, K = i + 1, j + 1, k + 1
                if i < j:
                    put(f"J{I}", f"J{Jn}", f"J{K}", e)
                    put(f"A{I}", f"A{Jn}", f"J{K}", -e)
                    put(f"B{I}", f"B{Jn}", f"J{K}", sign * e)
                put(f"J{I}", f"A{Jn}", f"A{K}", e)
                put(f"J{I}", f"B{Jn}", f"B{K}", e)
    for i in range(1, 4):
        put(f"A{i}", f"B{i}", "Gamma", 1)
        put(f"A{i}", "Gamma", f"B{i}", 1)
        put(f"B{i}", "Gamma", f"A{i}", sign)
    return t


def rescale_generators(gens: Mapping[str, np.ndarray], c, r, tau) -> dict[str, np.ndarray]:
    """K = A/c, P = B/r, H = Gamma/tau; J unchanged."""
    c, r, tau = Fraction(c), Fraction(r), Fraction(tau)
    if min(c, r, tau) <= 0:
        raise ValueError("c, r, tau must be positive")
    out = {f"J{k}": gens[f"J{k}"] for k in (1, 2, 3)}
    out.update({f"K{k}": gens[f"A{k}"] / c for k in (1, 2, 3)})
    out.update({f"P{k}": gens[f"B{k}"] / r for k in (1, 2, 3)})
    out["H"] = gens["Gamma"] / tau
    return out


# -- differential operators -------------------------------------------------

def vector_field_realization(sign: int) -> dict[str, np.ndarray]:
    """Coefficient matrices ``u`` of the operators ``u^i_j x^j d/dx^i``.

    Read off term by term from the operator formulas:
    J_k = eps^i_{kj} x^j d_i, A_k = x^4 d_k + x^k d_4,
    B_k = -+ x^5 d_k + x^k d_5, Gamma = x^4 d_5 +- x^5 d_4.
    """
    _check_sign(sign)
    ops = {}
    for k in range(3):
        u = _zeros()
        for i in range(3):
            for j in range(3):
                u[i, j] = Fraction(levi_civita(i, k, j))
        ops[f"J{k + 1}"] = u
    for k in range(3):
        u = _zeros()
        u[k, 3] = Fraction(1)  # x^4 d_k
        u[3, k] = Fraction(1)  # x^k d_4
        ops[f"A{k + 1}"] = u
    for k in range(3):
        u = _zeros()
        u[k, 4] = Fraction(-sign)  # -+ x^5 d_k
        u[4, k] = Fraction(1)  # x^k d_5
        ops[f"B{k + 1}"] = u
    u = _zeros()
    u[4, 3] = Fraction(1)  # x^4 d_5
    u[3, 4] = Fraction(sign)  # +- x^5 d_4
    ops["Gamma"] = u
    return ops


def operator_commutator(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Coefficient matrix of the operator commutator [U, W] = UW - WU.

    For linear fields U = (u x)^i d_i one has [U, W] x = (w u - u w) x.
    """
    return w @ u - u @ w


# Orientation of the operator bracket, fixed once so that [A_i, B_j] = +Gamma delta_ij.
def _orientation(ops: Mapping[str, np.ndarray]) -> int:
    lhs = operator_commutator(ops["A1"], ops["B1"])
    if np.all(lhs == ops["Gamma"]):
        return 1
    if np.all(-lhs == ops["Gamma"]):
        return -1
    raise NotInSpan("[A1, B1] is not proportional to Gamma")


def operator_table(sign: int) -> Table:
    """Bracket table of the differential-operator realization under the fixed orientation."""
    ops = vector_field_realization(sign)
    o = _orientation(ops)
    names = list(ops)
    table: Table = {}
    for a, x in enumerate(names):
        for y in names[a + 1:]:
            coords = decompose(o * operator_commutator(ops[x], ops[y]), ops)
            if coords:
                table[(x, y)] = coords
    return table


def compare_tables(got: Table, want: Table) -> list[tuple[tuple[str, str], dict, dict]]:
    """Brackets where two tables disagree, as (pair, got, want)."""
    diffs = []
    for key in sorted(set(got) | set(want), key=lambda k: (MATRIX_LABELS.index(k[0]), MATRIX_LABELS.index(k[1]))):
        g, w = got.get(key, {}), want.get(key, {})
        if g != w:
            diffs.append((key, g, w))
    return diffs


def format_matrix(X: np.ndarray) -> str:
    cells = [[str(v) for v in row] for row in X]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def format_table(table: Table) -> str:
    lines = []
    for (x, y), coords in table.items():
        rhs = " + ".join(f"{'' if v == 1 else ('-' if v == -1 else str(v) + ' ')}{z}" for z, v in coords.items())
        lines.append(f"[{x:>5}, {y:>5}] = {rhs}")
    return "\n".join(lines)
