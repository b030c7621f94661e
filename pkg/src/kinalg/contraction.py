"""Contractions of the kinematical algebras and the contraction cube."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import coeff as cf
from .algebra import (
    BRACKET_FAMILIES,
    DYNAMICAL_LIMITS,
    FAMILIES,
    KINEMATICAL_PAIR,
    LABELS,
    B,
    H,
    J,
    LieAlgebra,
    P,
    _group,
    build_algebra,
    family_structure,
    jacobi_residual,
    join_label,
    split_label,
)
from .coeff import DYNAMICAL, KINEMATICAL, BASES, Coefficient
from .errors import Divergence, KinalgError, NotSubalgebra, Unrecognized


class JacobiViolation(KinalgError, ArithmeticError):
    """A contraction produced a tensor that is not a Lie algebra."""


@dataclass(frozen=True)
class SubspaceSplit:
    """Generators left unscaled (the subalgebra); the rest get scaled by epsilon."""

    unscaled: frozenset

    @classmethod
    def of(cls, names: Iterable[str]) -> "SubspaceSplit":
        idx = set()
        for name in names:
            idx.update(_group(name))
        return cls(frozenset(idx))

    @property
    def scaled(self) -> frozenset:
        return frozenset(range(10)) - self.unscaled


def iw_contract(alg: LieAlgebra, split: SubspaceSplit | Iterable[str]) -> LieAlgebra:
    """Inonu-Wigner contraction with respect to the unscaled subalgebra.

    After ``Y = eps X`` on the scaled part, a term ``[X_i, X_j] -> X_k`` picks
    up ``eps ** (n_in - n_out)`` where ``n_in`` counts scaled generators
    among ``i, j`` and ``n_out`` is 1 when ``k`` is scaled.
    """
    if not isinstance(split, SubspaceSplit):
        split = SubspaceSplit.of(split)
    scaled = split.scaled
    out: dict[tuple[int, int], list] = {}
    for (i, j), terms in alg.structure.items():
        n_in = (i in scaled) + (j in scaled)
        for k, c in terms:
            power = n_in - (k in scaled)
            if power < 0:
                raise NotSubalgebra(
                    f"[{alg.name(i)}, {alg.name(j)}] has a component on {alg.name(k)} outside the unscaled part")
            if power == 0:
                out.setdefault((i, j), []).append((k, c))
    return alg.replace(structure=out, label=None)


def _check_params(alg: LieAlgebra, diverging: Iterable[str]) -> frozenset:
    div = frozenset(diverging)
    bad = div - set(BASES[alg.basis])
    if bad:
        raise ValueError(f"parameters {sorted(bad)} are not in the {alg.basis} basis")
    if alg.basis == KINEMATICAL and alg.constrained and div:
        raise ValueError("limits need independent c, r, tau; build the algebra with constrained=False")
    return div


def contract_limit(alg: LieAlgebra, diverging: Iterable[str]) -> LieAlgebra:
    """Send ``diverging`` parameters to infinity together (fixed ratios).

    Terms of negative degree vanish, degree-zero terms are kept verbatim.
    """
    div = _check_params(alg, diverging)
    out: dict[tuple[int, int], list] = {}
    for (i, j), terms in alg.structure.items():
        for k, c in terms:
            d = cf.limit_degree(c, div)
            if d > 0:
                raise Divergence(f"[{alg.name(i)}, {alg.name(j)}] ~ {cf.to_text(c)} diverges as {sorted(div)} -> oo")
            if d == 0:
                out.setdefault((i, j), []).append((k, c))
    result = alg.replace(structure=out, label=None, infinite=alg.infinite | div)
    residual = jacobi_residual(result)
    if residual:
        raise JacobiViolation(f"contracted tensor violates Jacobi: {residual[0]}")
    return result


# -- identification -------------------------------------------------------

_REPRESENTATIVE = ((B[0], H, P[0]), (B[0], B[1], J[2]), (B[0], P[0], H), (P[0], P[1], J[2]), (P[0], H, B[0]))


def bracket_scalars(alg: LieAlgebra) -> tuple[Coefficient, ...]:
    """The five family scalars, or Unrecognized if the tensor is not of kinematical shape."""
    values = []
    for i, j, k in _REPRESENTATIVE:
        terms = dict(alg.terms(i, j))
        values.append(terms.get(k, cf.ZERO))
    ref = LieAlgebra(family_structure(values), basis=alg.basis, sign=alg.sign)
    if ref.structure != alg.structure:
        raise Unrecognized("tensor is not of the kinematical form in the standard basis")
    return tuple(values)


def _signum(c: Coefficient, sign: int | None) -> int:
    if c.is_zero:
        return 0
    s = 1 if c.scale > 0 else -1
    if c.sign_power:
        if sign not in (1, -1):
            raise Unrecognized("family sign is undetermined")
        s *= sign
    return s


def sign_pattern(alg: LieAlgebra) -> tuple[int, ...]:
    return tuple(_signum(c, alg.sign) for c in bracket_scalars(alg))


_TEMPLATE_PATTERNS = {sign_pattern(build_algebra(label)): label for label in LABELS}


def identify(alg: LieAlgebra) -> str:
    """Label of the template with the same zero pattern and signs."""
    pattern = sign_pattern(alg)
    try:
        return _TEMPLATE_PATTERNS[pattern]
    except KeyError:
        desc = ", ".join(f"{n}:{s:+d}" for n, s in zip(BRACKET_FAMILIES, pattern))
        raise Unrecognized(f"no kinematical algebra has sign pattern {desc}") from None


# -- contraction cube -----------------------------------------------------

COLORS = {"m": "green", "E0": "red", "C": "blue"}
LIMIT_NAMES = {"m": "static", "E0": "Newtonian", "C": "flat"}
CONTRACTION_NAMES = {"m": "speed-time", "E0": "speed-space", "C": "space-time"}


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    limit: str  # m, E0 or C; the kinematical pair is KINEMATICAL_PAIR[limit]

    @property
    def color(self) -> str:
        return COLORS[self.limit]

    @property
    def label(self) -> str:
        return f"{self.limit}→∞"


@dataclass(frozen=True)
class Graph:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    basis: str


def _instances(family: str):
    return [join_label(family, s) for s in ((1, -1) if family.endswith("±") else (None,))]


def contraction_graph(basis: str = DYNAMICAL) -> Graph:
    """Apply every single limit to every family and record label changes.

    In the kinematical basis each dynamical limit is replaced by the joint
    limit of its parameter pair, starting from the unconstrained tensors.
    """
    edges = []
    for family in FAMILIES:
        for limit in ("m", "E0", "C"):
            div = {limit} if basis == DYNAMICAL else set(KINEMATICAL_PAIR[limit])
            targets = set()
            for label in _instances(family):
                src_sign = split_label(label)[1]
                result = identify(contract_limit(build_algebra(label, basis, constrained=False), div))
                dst_family, dst_sign = split_label(result)
                if dst_sign is not None and dst_sign != src_sign:
                    raise AssertionError(f"{label} changed sign under {limit}")
                targets.add(dst_family)
            if len(targets) != 1:
                raise AssertionError(f"{family} splits under {limit}: {targets}")
            dst = targets.pop()
            if dst != family:
                edges.append(Edge(family, dst, limit))
    return Graph(FAMILIES, tuple(edges), basis)


def to_dot(graph: Graph) -> str:
    lines = ["digraph contraction_cube {"]
    for node in graph.nodes:
        sign = "±" if node.endswith("±") else "none"
        lines.append(f'  "{node}" [sign="{sign}"];')
    for e in graph.edges:
        label = e.label if graph.basis == DYNAMICAL else ",".join(KINEMATICAL_PAIR[e.limit]) + "→∞"
        lines.append(f'  "{e.src}" -> "{e.dst}" [color={e.color}, label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(graph: Graph, sign: int | None = None) -> str:
    """``dS± --(E0)--> NH±``; with ``sign`` the ± families are instantiated."""
    def name(node):
        return join_label(node, sign) if sign is not None and node.endswith("±") else node

    lines = []
    for e in graph.edges:
        lim = e.limit if graph.basis == DYNAMICAL else ",".join(KINEMATICAL_PAIR[e.limit])
        lines.append(f"{name(e.src)} --({lim})--> {name(e.dst)}")
    return "\n".join(lines) + "\n"


def finite_parameters(label: str) -> dict[str, bool]:
    """Row of the finite/infinite parameter table: param -> finite?"""
    family, _ = split_label(label)
    return {p: p not in DYNAMICAL_LIMITS[family] for p in ("m", "C", "E0")}


__all__ = [
    "Edge", "Graph", "JacobiViolation", "SubspaceSplit", "contract_limit", "contraction_graph",
    "finite_parameters", "identify", "iw_contract", "sign_pattern", "to_dot", "to_text",
]
