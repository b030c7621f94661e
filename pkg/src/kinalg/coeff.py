"""Exact structure-constant coefficients.

A :class:`Coefficient` is ``scale * prod(param ** exponent) * s ** sign_power``
where ``scale`` is a rational, exponents are half-integers and ``s`` is the
symbolic family sign of the dS/NH/P/G pairs (``s * s == 1``).

Two parameter bases exist and are never mixed inside one coefficient:

* kinematical: speed ``c``, radius ``r``, period ``tau``
* dynamical: mass ``m``, compliance ``C``, energy ``E0``

linked by ``c**2 = E0/m``, ``tau**2 = m*C`` and ``r**2 = C*E0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import MixedBasis, NotConvertible, UnlikeMonomials

KINEMATICAL = "kinematical"
DYNAMICAL = "dynamical"

BASES = {
    KINEMATICAL: ("c", "r", "tau"),
    DYNAMICAL: ("m", "C", "E0"),
}
PARAMS = BASES[KINEMATICAL] + BASES[DYNAMICAL]
_BASIS_OF = {p: b for b, ps in BASES.items() for p in ps}
_ORDER = {p: i for i, p in enumerate(PARAMS)}


def half_int(value) -> Fraction:
    """Coerce ``value`` to a Fraction with denominator 1 or 2."""
    x = Fraction(value)
    if x.denominator not in (1, 2):
        raise ValueError(f"exponent {x} is not a half-integer")
    return x


def basis_of(param: str) -> str:
    try:
        return _BASIS_OF[param]
    except KeyError:
        raise ValueError(f"unknown parameter {param!r}") from None


def _canonical_exponents(exponents) -> tuple[tuple[str, Fraction], ...]:
    if isinstance(exponents, Mapping):
        items = exponents.items()
    else:
        items = exponents
    acc: dict[str, Fraction] = {}
    for p, e in items:
        basis_of(p)
        acc[p] = acc.get(p, Fraction(0)) + half_int(e)
    out = tuple(sorted(((p, e) for p, e in acc.items() if e), key=lambda pe: _ORDER[pe[0]]))
    if len({_BASIS_OF[p] for p, _ in out}) > 1:
        raise MixedBasis(f"coefficient mixes bases: {dict(out)}")
    return out


@dataclass(frozen=True)
class Coefficient:
    scale: Fraction
    exponents: tuple[tuple[str, Fraction], ...] = ()
    sign_power: int = 0

    def __post_init__(self):
        scale = Fraction(self.scale)
        exps = _canonical_exponents(self.exponents)
        sp = int(self.sign_power) % 2
        if scale == 0:
            exps, sp = (), 0
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "sign_power", sp)

    # -- introspection -------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.scale == 0

    @property
    def basis(self) -> str | None:
        """Basis of the exponent keys, ``None`` when parameter-free."""
        if not self.exponents:
            return None
        return _BASIS_OF[self.exponents[0][0]]

    @property
    def monomial(self) -> tuple[tuple[tuple[str, Fraction], ...], int]:
        """Hashable key identifying the parameter monomial (scale excluded)."""
        return self.exponents, self.sign_power

    def exponent(self, param: str) -> Fraction:
        return dict(self.exponents).get(param, Fraction(0))

    # -- arithmetic ----------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, Coefficient):
            return coeff_mul(self, other)
        if isinstance(other, (int, Rational)):
            return Coefficient(self.scale * other, self.exponents, self.sign_power)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, Coefficient):
            return coeff_add(self, other)
        return NotImplemented

    def __neg__(self):
        return Coefficient(-self.scale, self.exponents, self.sign_power)

    def __sub__(self, other):
        return coeff_add(self, -other)

    def inverse(self) -> "Coefficient":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero coefficient")
        return Coefficient(1 / self.scale, tuple((p, -e) for p, e in self.exponents), self.sign_power)

    def evaluate(self, values: Mapping[str, object], sign: int | None = None):
        """Numeric value at the given parameter values.

        Returns an exact Fraction when every exponent is integral and the
        inputs are rational, otherwise a float.
        """
        out = self.scale
        exact = True
        for p, e in self.exponents:
            v = values[p]
            if e.denominator == 1 and isinstance(v, (int, Rational)):
                out = out * Fraction(v) ** int(e)
            else:
                exact = False
                out = float(out) * float(v) ** float(e)
        if self.sign_power:
            if sign not in (1, -1):
                raise ValueError("family sign required to evaluate s")
            out = out * sign
        return out if exact else float(out)

    def __str__(self):
        return to_text(self)


ZERO = Coefficient(0)
ONE = Coefficient(1)


def coeff(scale=1, sign_power: int = 0, **exponents) -> Coefficient:
    """Shorthand: ``coeff(-1, m=-1, E0=-1)`` is ``-1/(m E0)``."""
    return Coefficient(Fraction(scale), tuple(exponents.items()), sign_power)


def coeff_mul(a: Coefficient, b: Coefficient) -> Coefficient:
    if a.basis and b.basis and a.basis != b.basis:
        raise MixedBasis(f"cannot multiply {a} by {b}")
    return Coefficient(a.scale * b.scale, a.exponents + b.exponents, a.sign_power + b.sign_power)


def coeff_add(a: Coefficient, b: Coefficient) -> Coefficient:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.monomial != b.monomial:
        raise UnlikeMonomials(f"cannot add {a} and {b}")
    return Coefficient(a.scale + b.scale, a.exponents, a.sign_power)


def coeff_sum(items: Iterable[Coefficient]) -> Coefficient:
    out = ZERO
    for c in items:
        out = coeff_add(out, c)
    return out


# -- basis conversion ---------------------------------------------------

# c = (E0/m)^(1/2), r = (C E0)^(1/2), tau = (m C)^(1/2)
_KIN_TO_DYN = {
    "c": {"m": Fraction(-1, 2), "E0": Fraction(1, 2)},
    "r": {"C": Fraction(1, 2), "E0": Fraction(1, 2)},
    "tau": {"m": Fraction(1, 2), "C": Fraction(1, 2)},
}


def _to_dynamical(a: Coefficient) -> Coefficient:
    acc: dict[str, Fraction] = {}
    for p, e in a.exponents:
        for q, f in _KIN_TO_DYN[p].items():
            acc[q] = acc.get(q, Fraction(0)) + e * f
    for q, e in acc.items():
        if e.denominator not in (1, 2):
            raise NotConvertible(f"{a} has no half-integer image in the dynamical basis")
    return Coefficient(a.scale, tuple(acc.items()), a.sign_power)


def _to_kinematical(a: Coefficient) -> Coefficient:
    # The substitution map has rank 2 (r = c tau is built in), so only
    # monomials m^x C^y E0^z with x = y - z have a preimage. Among the
    # preimages, which differ by powers of r/(c tau), pick the one with the
    # fewest parameters; ties prefer an r-free form.
    x, y, z = (a.exponent(p) for p in ("m", "C", "E0"))
    if x != y - z:
        raise NotConvertible(f"{a} is not a function of c, r, tau alone")
    candidates = [
        {"c": 2 * z, "r": 0, "tau": 2 * y},
        {"c": 2 * z - 2 * y, "r": 2 * y, "tau": 0},
        {"c": 0, "r": 2 * z, "tau": 2 * y - 2 * z},
    ]
    best = min(candidates, key=lambda d: sum(1 for e in d.values() if e))
    return Coefficient(a.scale, tuple(best.items()), a.sign_power)


def convert_basis(a: Coefficient, target: str) -> Coefficient:
    """Rewrite ``a`` in the ``target`` parameter basis."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if a.basis in (None, target):
        return a
    if target == DYNAMICAL:
        return _to_dynamical(a)
    return _to_kinematical(a)


def limit_degree(a: Coefficient, diverging: Iterable[str]) -> Fraction:
    """Growth order of ``a`` when every parameter in ``diverging`` scales together.

    Negative: the term vanishes; zero: it survives unchanged; positive: it
    blows up.
    """
    div = set(diverging)
    return sum((e for p, e in a.exponents if p in div), Fraction(0))


def apply_constraint(a: Coefficient) -> Coefficient:
    """Eliminate ``r`` using ``r = c * tau``."""
    b = a.exponent("r")
    if not b:
        return a
    exps = [(p, e) for p, e in a.exponents if p != "r"] + [("c", b), ("tau", b)]
    return Coefficient(a.scale, tuple(exps), a.sign_power)


# -- text serialization -------------------------------------------------

def _fmt_exp(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"


def to_text(a: Coefficient) -> str:
    """``-1 * m^-1 E0^-1``, ``C^-1 * s``, ``1/2``, ``0``."""
    if a.is_zero:
        return "0"
    parts = []
    if a.scale != 1 or not (a.exponents or a.sign_power):
        parts.append(str(a.scale))
    if a.exponents:
        parts.append(" ".join(p if e == 1 else f"{p}^{_fmt_exp(e)}" for p, e in a.exponents))
    if a.sign_power:
        parts.append("s")
    return " * ".join(parts)


_FACTOR = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+(?:/\d+)?))?$")


def from_text(text: str) -> Coefficient:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    scale = Fraction(1)
    exps: list[tuple[str, Fraction]] = []
    sign_power = 0
    for group in text.split("*"):
        group = group.strip()
        if not group:
            raise ValueError(f"malformed coefficient {text!r}")
        try:
            scale *= Fraction(group)
            continue
        except ValueError:
            pass
        for tok in group.split():
            m = _FACTOR.match(tok)
            if not m:
                raise ValueError(f"malformed factor {tok!r} in {text!r}")
            name, e = m.group(1), Fraction(m.group(2) or 1)
            if name == "s":
                sign_power += int(e)
            else:
                exps.append((name, e))
    return Coefficient(scale, tuple(exps), sign_power)


def numeric_value(a: Coefficient, values: Mapping[str, float], sign: int | None = None) -> float:
    """Float evaluation, tolerant of half-integer exponents."""
    v = a.evaluate(values, sign)
    return float(v) if not isinstance(v, float) else v

