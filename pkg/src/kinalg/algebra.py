"""Ten-generator kinematical Lie algebras with exact structure constants.

Generators are indexed in the fixed order

    J1 J2 J3  B1 B2 B3  P1 P2 P3  H

where the ``B`` slot holds the inertial generators: ``K`` in the kinematical
basis and ``Q = K/m`` in the dynamical basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from . import coeff as cf
from .coeff import DYNAMICAL, KINEMATICAL, Coefficient, coeff
from .errors import UnknownFamily

SLOTS = ("J1", "J2", "J3", "B1", "B2", "B3", "P1", "P2", "P3", "H")
N = len(SLOTS)
J = (0, 1, 2)
B = (3, 4, 5)
P = (6, 7, 8)
H = 9

_BOOST_LETTER = {KINEMATICAL: "K", DYNAMICAL: "Q"}

LABELS = ("dS+", "dS-", "P", "NH+", "NH-", "P+", "P-", "G", "G+", "G-", "C", "S")
FAMILIES = ("dS±", "P", "NH±", "P±", "G", "G±", "C", "S")
NAMES = {
    "dS±": "de Sitter",
    "P": "Poincare",
    "NH±": "Newton-Hooke",
    "P±": "Para-Poincare",
    "G": "Galilei",
    "G±": "Para-Galilei",
    "C": "Carroll",
    "S": "Static",
}

# Which of [B,H], [B,B], [B,P], [P,P], [P,H] are switched on in each family.
BRACKET_FAMILIES = ("[B,H]", "[B,B]", "[B,P]", "[P,P]", "[P,H]")
_PATTERN = {
    "dS±": (1, 1, 1, 1, 1),
    "P": (1, 1, 1, 0, 0),
    "NH±": (1, 0, 0, 0, 1),
    "P±": (0, 0, 1, 1, 1),
    "G": (1, 0, 0, 0, 0),
    "G±": (0, 0, 0, 0, 1),
    "C": (0, 0, 1, 0, 0),
    "S": (0, 0, 0, 0, 0),
}

# de Sitter coefficients of the five families; the descendants keep a subset.
_DS_COEFFS = {
    DYNAMICAL: (
        coeff(1, m=-1),
        coeff(-1, m=-1, E0=-1),
        coeff(1, E0=-1),
        coeff(1, 1, C=-1, E0=-1),
        coeff(1, 1, C=-1),
    ),
    # r = c tau already imposed
    "table1": (
        coeff(1),
        coeff(-1, c=-2),
        coeff(1, c=-2),
        coeff(1, 1, r=-2),
        coeff(1, 1, tau=-2),
    ),
    KINEMATICAL: (
        coeff(1, r=1, c=-1, tau=-1),
        coeff(-1, c=-2),
        coeff(1, tau=1, c=-1, r=-1),
        coeff(1, 1, r=-2),
        coeff(1, 1, c=1, r=-1, tau=-1),
    ),
}

# Parameters sent to infinity to reach each family from de Sitter.
DYNAMICAL_LIMITS = {
    "dS±": frozenset(),
    "P": frozenset({"C"}),
    "NH±": frozenset({"E0"}),
    "P±": frozenset({"m"}),
    "G": frozenset({"C", "E0"}),
    "G±": frozenset({"m", "E0"}),
    "C": frozenset({"m", "C"}),
    "S": frozenset({"m", "C", "E0"}),
}
# Each dynamical limit is a joint kinematical limit at fixed ratio.
KINEMATICAL_PAIR = {"m": ("c", "tau"), "E0": ("c", "r"), "C": ("r", "tau")}


def split_label(label: str) -> tuple[str, int | None]:
    """``'NH-'`` -> ``('NH±', -1)``; ``'G'`` -> ``('G', None)``."""
    if label in FAMILIES and not label.endswith("±"):
        return label, None
    if label in LABELS and label[-1] in "+-":
        return label[:-1] + "±", 1 if label[-1] == "+" else -1
    raise UnknownFamily(label)


def join_label(family: str, sign: int | None) -> str:
    if family not in FAMILIES:
        raise UnknownFamily(family)
    if family.endswith("±"):
        if sign not in (1, -1):
            raise ValueError(f"{family} needs a sign")
        return family[:-1] + ("+" if sign == 1 else "-")
    return family


def levi_civita(i: int, j: int, k: int) -> int:
    """Permutation symbol on 0-based indices."""
    return (i - j) * (j - k) * (k - i) // 2


def gen_name(index: int, basis: str | None = None) -> str:
    name = SLOTS[index]
    if name[0] == "B" and basis in _BOOST_LETTER:
        return _BOOST_LETTER[basis] + name[1]
    return name


def gen_index(name: str) -> int:
    if name in SLOTS:
        return SLOTS.index(name)
    if len(name) == 2 and name[0] in "KQA" and name[1] in "123":
        return B[int(name[1]) - 1]
    raise KeyError(f"unknown generator {name!r}")


def _group(name: str) -> tuple[int, ...]:
    """Expand ``'J'`` / ``'K'`` / ``'Q'`` / ``'B'`` / ``'P'`` / ``'H'`` to indices."""
    if name == "J":
        return J
    if name in ("B", "K", "Q"):
        return B
    if name == "P":
        return P
    return (gen_index(name),)


Terms = tuple[tuple[int, Coefficient], ...]


def _normalize(structure: Mapping) -> dict[tuple[int, int], Terms]:
    acc: dict[tuple[int, int], dict[int, Coefficient]] = {}
    for (i, j), terms in structure.items():
        i, j = (gen_index(i) if isinstance(i, str) else i), (gen_index(j) if isinstance(j, str) else j)
        if i == j:
            if any(not c.is_zero for _, c in terms):
                raise ValueError("bracket of a generator with itself must vanish")
            continue
        flip = i > j
        key = (j, i) if flip else (i, j)
        slot = acc.setdefault(key, {})
        for k, c in terms:
            k = gen_index(k) if isinstance(k, str) else k
            slot[k] = cf.coeff_add(slot.get(k, cf.ZERO), -c if flip else c)
    out = {}
    for key in sorted(acc):
        terms = tuple(sorted((k, c) for k, c in acc[key].items() if not c.is_zero))
        if terms:
            out[key] = terms
    return out


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure tensor ``[X_i, X_j] = sum_k C^k_ij X_k`` stored for ``i < j``.

    ``constrained`` marks kinematical tensors written with ``r = c tau``
    already imposed (the printed kinematical table); the Jacobi check then
    works modulo that relation. ``infinite`` records which parameters have
    been sent to infinity and is metadata only.
    """

    structure: Mapping[tuple[int, int], Terms]
    basis: str = DYNAMICAL
    sign: int | None = None
    label: str | None = None
    constrained: bool = False
    infinite: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.basis not in (KINEMATICAL, DYNAMICAL):
            raise ValueError(f"unknown basis {self.basis!r}")
        struct = _normalize(self.structure)
        for terms in struct.values():
            for _, c in terms:
                if c.basis not in (None, self.basis):
                    raise cf.MixedBasis(f"{c} does not belong to the {self.basis} basis")
        uses_sign = any(c.sign_power for terms in struct.values() for _, c in terms)
        object.__setattr__(self, "structure", struct)
        object.__setattr__(self, "sign", self.sign if uses_sign else None)
        object.__setattr__(self, "infinite", frozenset(self.infinite))
        full: dict[tuple[int, int], Terms] = {}
        for (i, j), terms in struct.items():
            full[(i, j)] = terms
            full[(j, i)] = tuple((k, -c) for k, c in terms)
        object.__setattr__(self, "_full", full)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.basis, self.sign, self.constrained, self.structure) == (
            other.basis, other.sign, other.constrained, other.structure)

    def __repr__(self):
        return f"LieAlgebra(label={self.label!r}, basis={self.basis!r}, sign={self.sign}, brackets={len(self.structure)})"

    def terms(self, i: int, j: int) -> Terms:
        return self._full.get((i, j), ())

    def replace(self, **changes) -> "LieAlgebra":
        kw = dict(structure=self.structure, basis=self.basis, sign=self.sign, label=self.label,
                  constrained=self.constrained, infinite=self.infinite)
        kw.update(changes)
        return LieAlgebra(**kw)

    def name(self, index: int) -> str:
        return gen_name(index, self.basis)

    def coefficients(self) -> Iterable[Coefficient]:
        for terms in self.structure.values():
            for _, c in terms:
                yield c


def rotation_structure() -> dict[tuple[int, int], list]:
    """[J_i,J_j] = eps J_k, [J_i,B_j] = eps B_k, [J_i,P_j] = eps P_k, [J_i,H] = 0."""
    out: dict[tuple[int, int], list] = {}
    for i in range(3):
        for j in range(3):
            for k in range(3):
                e = levi_civita(i, j, k)
                if not e:
                    continue
                for block in (J, B, P):
                    if block is J and j < i:
                        continue
                    out.setdefault((J[i], block[j]), []).append((block[k], coeff(e)))
    return out


def family_structure(values: Iterable[Coefficient]) -> dict[tuple[int, int], list]:
    """Rotation sector plus the five non-rotation families with the given scalars.

    ``values`` are the coefficients of ``[B_i,H] -> P_i``, ``[B_i,B_j] -> eps J_k``,
    ``[B_i,P_j] -> delta H``, ``[P_i,P_j] -> eps J_k`` and ``[P_i,H] -> B_i``.
    """
    bh, bb, bp, pp, ph = values
    out = rotation_structure()
    for i in range(3):
        if not bh.is_zero:
            out.setdefault((B[i], H), []).append((P[i], bh))
        if not ph.is_zero:
            out.setdefault((P[i], H), []).append((B[i], ph))
        if not bp.is_zero:
            out.setdefault((B[i], P[i]), []).append((H, bp))
        for j in range(i + 1, 3):
            k = 3 - i - j
            e = levi_civita(i, j, k)
            if not bb.is_zero:
                out.setdefault((B[i], B[j]), []).append((J[k], bb * e))
            if not pp.is_zero:
                out.setdefault((P[i], P[j]), []).append((J[k], pp * e))
    return out


def build_algebra(label: str, basis: str = DYNAMICAL, constrained: bool = True) -> LieAlgebra:
    """Template algebra for one of the twelve labels.

    In the kinematical basis ``constrained=True`` reproduces the printed
    ``c, r, tau`` table (``r = c tau`` imposed); ``constrained=False`` gives
    the de Sitter coefficients before the constraint and the verbatim
    surviving coefficients for each descendant.
    """
    family, sign = split_label(label)
    if basis == DYNAMICAL:
        key, constrained = DYNAMICAL, False
    elif basis == KINEMATICAL:
        key = "table1" if constrained else KINEMATICAL
    else:
        raise ValueError(f"unknown basis {basis!r}")
    values = [c if on else cf.ZERO for c, on in zip(_DS_COEFFS[key], _PATTERN[family])]
    infinite = DYNAMICAL_LIMITS[family]
    if basis == KINEMATICAL:
        infinite = frozenset(p for d in infinite for p in KINEMATICAL_PAIR[d])
    return LieAlgebra(family_structure(values), basis=basis, sign=sign, label=label,
                      constrained=constrained, infinite=infinite)


# -- bracket of formal combinations ------------------------------------

def _as_combination(x) -> dict[int, Coefficient]:
    if isinstance(x, str):
        return {gen_index(x): cf.ONE}
    if isinstance(x, int):
        return {x: cf.ONE}
    out = {}
    for g, c in x.items():
        g = gen_index(g) if isinstance(g, str) else g
        out[g] = c if isinstance(c, Coefficient) else Coefficient(Fraction(c))
    return out


def bracket(alg: LieAlgebra, x, y) -> dict[str, Coefficient]:
    """Bilinear extension of the structure tensor.

    ``x`` and ``y`` are generator names or mappings name -> coefficient.
    The result maps generator names (in the algebra's basis) to coefficients.
    """
    xs, ys = _as_combination(x), _as_combination(y)
    acc: dict[int, Coefficient] = {}
    for i, a in xs.items():
        for j, b in ys.items():
            for k, c in alg.terms(i, j):
                acc[k] = cf.coeff_add(acc.get(k, cf.ZERO), a * b * c)
    return {alg.name(k): c for k, c in sorted(acc.items()) if not c.is_zero}


def jacobi_residual(alg: LieAlgebra, constrained: bool | None = None) -> list[tuple[tuple[str, str, str], str, Coefficient]]:
    """Non-cancelling terms of ``[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]``.

    Runs over all 120 triples of distinct generators with exact arithmetic.
    Unlike monomials on the same generator are kept as separate residual
    terms. An empty list means the Jacobi identity holds.
    """
    if constrained is None:
        constrained = alg.constrained
    norm = cf.apply_constraint if constrained else (lambda c: c)
    out = []
    for a, b, c in combinations(range(N), 3):
        acc: dict[tuple[int, tuple], Fraction] = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for w, c1 in alg.terms(y, z):
                for k, c2 in alg.terms(x, w):
                    term = norm(c1 * c2)
                    key = (k, term.monomial)
                    acc[key] = acc.get(key, Fraction(0)) + term.scale
        for (k, (exps, sp)), scale in sorted(acc.items(), key=lambda kv: (kv[0][0], repr(kv[0][1]))):
            if scale:
                out.append(((alg.name(a), alg.name(b), alg.name(c)), alg.name(k), Coefficient(scale, exps, sp)))
    return out


def rotation_sector_ok(alg: LieAlgebra) -> bool:
    """True when the J-brackets are exactly the adjoint rotation action."""
    ref = LieAlgebra(rotation_structure(), basis=alg.basis)
    for i in J:
        for j in range(N):
            if alg.terms(i, j) != ref.terms(i, j):
                return False
    return True


# -- JSON -----------------------------------------------------------------

def to_dict(alg: LieAlgebra) -> dict:
    out = {
        "label": alg.label,
        "basis": alg.basis,
        "sign": alg.sign,
        "brackets": [
            {
                "x": alg.name(i),
                "y": alg.name(j),
                "terms": [{"gen": alg.name(k), "coeff": cf.to_text(c)} for k, c in terms],
            }
            for (i, j), terms in alg.structure.items()
        ],
    }
    if alg.basis == KINEMATICAL:
        out["constrained"] = alg.constrained
    return out


def from_dict(data: Mapping) -> LieAlgebra:
    structure: dict[tuple[int, int], list] = {}
    for br in data["brackets"]:
        key = (gen_index(br["x"]), gen_index(br["y"]))
        structure.setdefault(key, []).extend(
            (gen_index(t["gen"]), cf.from_text(t["coeff"])) for t in br["terms"])
    return LieAlgebra(structure, basis=data["basis"], sign=data.get("sign"), label=data.get("label"),
                      constrained=bool(data.get("constrained", False)))


def to_json(alg: LieAlgebra) -> str:
    return json.dumps(to_dict(alg), indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> LieAlgebra:
    return from_dict(json.loads(text))


def format_brackets(alg: LieAlgebra) -> str:
    """One ``[X, Y] = ...`` line per non-zero bracket."""
    lines = []
    for (i, j), terms in alg.structure.items():
        rhs = " + ".join(f"({cf.to_text(c)}) {alg.name(k)}" for k, c in terms)
        lines.append(f"[{alg.name(i)}, {alg.name(j)}] = {rhs}")
    return "\n".join(lines)


def evaluate_structure(alg: LieAlgebra, values: Mapping[str, object]) -> dict[tuple[str, str], dict[str, object]]:
    """Structure tensor at numeric parameter values, keyed by generator names."""
    out = {}
    for (i, j), terms in alg.structure.items():
        row = {alg.name(k): c.evaluate(values, alg.sign) for k, c in terms}
        row = {k: v for k, v in row.items() if v != 0}
        if row:
            out[(alg.name(i), alg.name(j))] = row
    return out


def convert_algebra(alg: LieAlgebra, target: str) -> LieAlgebra:
    """Change parameter basis, rescaling the inertial generators by ``Q = K/m``.

    With ``w`` counting inertial generators, a constant ``C^k_ij`` picks up
    ``m ** (w_k - w_i - w_j)`` when going to the dynamical basis.
    """
    if target == alg.basis:
        return alg
    to_dyn = target == DYNAMICAL
    out: dict[tuple[int, int], list] = {}
    for (i, j), terms in alg.structure.items():
        for k, c in terms:
            w = (k in B) - (i in B) - (j in B)
            if to_dyn:
                new = cf.convert_basis(c, DYNAMICAL) * coeff(1, m=w)
            else:
                new = cf.convert_basis(c * coeff(1, m=-w), KINEMATICAL) if c.basis or w else c
            out.setdefault((i, j), []).append((k, new))
    if to_dyn:
        infinite = frozenset(p for p, pair in KINEMATICAL_PAIR.items() if set(pair) <= alg.infinite)
    else:
        infinite = frozenset(q for p in alg.infinite for q in KINEMATICAL_PAIR[p])
    return alg.replace(structure=out, basis=target, constrained=not to_dyn, infinite=infinite)
