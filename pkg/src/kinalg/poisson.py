"""Lie-Poisson structure on the dual of a kinematical algebra.

Coordinates ``j1 j2 j3 q1 q2 q3 p1 p2 p3 E`` are dual to
``J1 J2 J3 Q1 Q2 Q3 P1 P2 P3 H``. The bracket of two functions is
``{f, g} = K_ij(a) df/da_i dg/da_j`` with the Kirillov form
``K_ij(a) = -a_k C^k_ij``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from . import coeff as cf
from .algebra import N, LieAlgebra, convert_algebra
from .coeff import DYNAMICAL, Coefficient

COORDS = ("j1", "j2", "j3", "q1", "q2", "q3", "p1", "p2", "p3", "E")
_ZERO_POWERS = (0,) * N

Key = tuple[tuple[int, ...], Coefficient]


class PolyFunction:
    """Polynomial in the dual coordinates with parameter-monomial coefficients.

    Stored as ``{(powers, unit_monomial): rational}``; ``unit_monomial`` is a
    :class:`Coefficient` of scale 1 so that unlike parameter monomials can
    coexist in one polynomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        clean = {}
        for (powers, mono), v in (terms or {}).items():
            if v:
                clean[(powers, mono)] = Fraction(v)
        self.terms: dict[Key, Fraction] = clean

    # -- constructors --------------------------------------------------
    @classmethod
    def var(cls, name: str | int) -> "PolyFunction":
        i = COORDS.index(name) if isinstance(name, str) else name
        powers = tuple(1 if k == i else 0 for k in range(N))
        return cls({(powers, cf.ONE): Fraction(1)})

    @classmethod
    def const(cls, c: Coefficient | int | Fraction) -> "PolyFunction":
        if not isinstance(c, Coefficient):
            c = Coefficient(Fraction(c))
        if c.is_zero:
            return cls()
        return cls({(_ZERO_POWERS, Coefficient(1, c.exponents, c.sign_power)): c.scale})

    @classmethod
    def monomial(cls, powers: Iterable[int], c: Coefficient) -> "PolyFunction":
        return cls.const(c) * cls({(tuple(powers), cf.ONE): Fraction(1)})

    # -- algebra -------------------------------------------------------
    def _add(self, other: "PolyFunction", sign: int) -> "PolyFunction":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + sign * v
        return PolyFunction(out)

    def __add__(self, other):
        return self._add(_lift(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._add(_lift(other), -1)

    def __rsub__(self, other):
        return _lift(other)._add(self, -1)

    def __neg__(self):
        return PolyFunction({k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        other = _lift(other)
        out: dict[Key, Fraction] = {}
        for (pa, ma), va in self.terms.items():
            for (pb, mb), vb in other.terms.items():
                key = (tuple(x + y for x, y in zip(pa, pb)), cf.coeff_mul(ma, mb))
                out[key] = out.get(key, Fraction(0)) + va * vb
        return PolyFunction(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = _lift(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"PolyFunction({format_poly(self)})"

    @property
    def degree(self) -> int:
        return max((sum(p) for p, _ in self.terms), default=-1)

    def diff(self, i: int | str) -> "PolyFunction":
        i = COORDS.index(i) if isinstance(i, str) else i
        out = {}
        for (powers, mono), v in self.terms.items():
            n = powers[i]
            if n:
                lowered = powers[:i] + (n - 1,) + powers[i + 1:]
                out[(lowered, mono)] = out.get((lowered, mono), Fraction(0)) + n * v
        return PolyFunction(out)

    def coefficient_list(self) -> list[tuple[tuple[int, ...], Coefficient]]:
        return [(p, Coefficient(v, m.exponents, m.sign_power)) for (p, m), v in sorted(self.terms.items(), key=_order)]

    def evaluate(self, point: Mapping[str, float], params: Mapping[str, float], sign: int | None = None) -> float:
        total = 0.0
        for (powers, mono), v in self.terms.items():
            term = float(Coefficient(v, mono.exponents, mono.sign_power).evaluate(params, sign))
            for name, n in zip(COORDS, powers):
                if n:
                    term *= float(point[name]) ** n
            total += term
        return total


def _lift(x) -> PolyFunction:
    if isinstance(x, PolyFunction):
        return x
    if isinstance(x, (Coefficient, int, Rational)):
        return PolyFunction.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def _order(item):
    (powers, mono), _ = item
    return (-sum(powers), tuple(-p for p in powers), cf.to_text(mono))


def var(name: str) -> PolyFunction:
    return PolyFunction.var(name)


# -- Kirillov form and brackets -------------------------------------------

def _dynamical(alg: LieAlgebra) -> LieAlgebra:
    return alg if alg.basis == DYNAMICAL else convert_algebra(alg, DYNAMICAL)


def kirillov_matrix(alg: LieAlgebra) -> list[list[PolyFunction]]:
    """``K_ij(a) = -a_k C^k_ij`` as a 10x10 antisymmetric matrix."""
    alg = _dynamical(alg)
    K = [[PolyFunction() for _ in range(N)] for _ in range(N)]
    for i in range(N):
        for j in range(N):
            entry = PolyFunction()
            for k, c in alg.terms(i, j):
                entry = entry - PolyFunction.var(k) * c
            K[i][j] = entry
    return K


class PoissonStructure:
    """Bracket machinery bound to one algebra (caches the sparse Kirillov form)."""

    def __init__(self, alg: LieAlgebra):
        self.algebra = _dynamical(alg)
        self.K = kirillov_matrix(self.algebra)
        self._nonzero = [(i, j, self.K[i][j]) for i in range(N) for j in range(N) if self.K[i][j]]

    def bracket(self, f: PolyFunction, g: PolyFunction) -> PolyFunction:
        df = [f.diff(i) for i in range(N)]
        dg = [g.diff(j) for j in range(N)]
        out = PolyFunction()
        for i, j, kij in self._nonzero:
            if df[i] and dg[j]:
                out = out + kij * df[i] * dg[j]
        return out

    def vector_field(self, f: PolyFunction) -> list[PolyFunction]:
        """Components ``X_f^j = K_ij df/da_i`` of ``X_f = X_f^j d/da_j``."""
        df = [f.diff(i) for i in range(N)]
        comps = [PolyFunction() for _ in range(N)]
        for i, j, kij in self._nonzero:
            if df[i]:
                comps[j] = comps[j] + kij * df[i]
        return comps


def poisson_bracket(alg: LieAlgebra, f: PolyFunction, g: PolyFunction) -> PolyFunction:
    return PoissonStructure(alg).bracket(f, g)


def hamiltonian_vector_field(alg: LieAlgebra, f: PolyFunction) -> list[PolyFunction]:
    return PoissonStructure(alg).vector_field(f)


def apply_vector_field(field: list[PolyFunction], g: PolyFunction) -> PolyFunction:
    out = PolyFunction()
    for j, comp in enumerate(field):
        if comp:
            out = out + comp * g.diff(j)
    return out


def motion_equations(alg: LieAlgebra) -> dict[str, PolyFunction]:
    """Right-hand sides ``dq_i/dt = {E, q_i}`` and ``dp_i/dt = {E, p_i}``.

    The evolution convention ``df/dt = {E, f}`` is the only place a sign
    choice enters the dynamics.
    """
    ps = PoissonStructure(alg)
    E = var("E")
    return {name: ps.bracket(E, var(name)) for name in ("q1", "q2", "q3", "p1", "p2", "p3")}


def tau(i: int, alg: LieAlgebra) -> PolyFunction:
    """Time pseudo-vector ``tau_i = j_i / E0`` (1-based ``i``)."""
    _require_finite_energy(alg)
    return var(f"j{i}") * cf.coeff(1, E0=-1)


def _require_finite_energy(alg: LieAlgebra) -> None:
    alg = _dynamical(alg)
    if "E0" in alg.infinite:
        raise ValueError("tau = j/E0 degenerates once E0 has been sent to infinity")


# -- formatting ------------------------------------------------------------

def _format_scalar(c: Coefficient, sign: int | None) -> str:
    if sign is not None and c.sign_power:
        c = Coefficient(c.scale * sign, c.exponents, 0)
    parts = []
    if c.scale != 1:
        parts.append("-" if c.scale == -1 else str(c.scale))
    num = [p if e == 1 else f"{p}^{e}" for p, e in c.exponents if e > 0]
    den = [p if e == -1 else f"{p}^{-e}" for p, e in c.exponents if e < 0]
    if c.sign_power:
        num.append("s")
    body = "*".join(num) if num else ""
    if den:
        body = f"{body or '1'}/{'*'.join(den) if len(den) == 1 else '(' + '*'.join(den) + ')'}"
    return "".join(parts) + body


def format_poly(f: PolyFunction, sign: int | None = None, tau_view: bool = False) -> str:
    """Human-readable polynomial; ``tau_view`` writes ``j_k/E0`` as ``tau_k``."""
    if not f.terms:
        return "0"
    pieces = []
    for powers, c in f.coefficient_list():
        names = list(COORDS)
        if tau_view:
            nj = sum(powers[:3])
            if nj:
                c = c * cf.coeff(1, E0=nj)
                names[:3] = ["tau1", "tau2", "tau3"]
        factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, powers) if k]
        scalar = _format_scalar(c, sign)
        if factors:
            if scalar in ("", "1"):
                text = "*".join(factors)
            elif scalar == "-":
                text = "-" + "*".join(factors)
            else:
                text = scalar + " " + "*".join(factors)
        else:
            text = scalar or "1"
        pieces.append(text)
    return " + ".join(pieces).replace("+ -", "- ")


# Representative entries of the generated Poisson table.
POISSON_COLUMNS = (("E", "q1"), ("q1", "q2"), ("p1", "q1"), ("p1", "p2"), ("E", "p1"))


def poisson_table_row(alg: LieAlgebra) -> dict[str, PolyFunction]:
    ps = PoissonStructure(alg)
    return {f"{{{a},{b}}}": ps.bracket(var(a), var(b)) for a, b in POISSON_COLUMNS}
