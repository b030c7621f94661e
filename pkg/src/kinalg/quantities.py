"""Physical-quantity formulas per family and a checker for the moment relation.

The checker compares partial derivatives of each quantity with the
components of ``-i_X sigma`` for ``sigma = dp_i ^ dq_i - dE ^ dt``, where
``X`` is the Hamiltonian vector field of the matching dual coordinate.
Disagreements are reported per component instead of being resolved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import sympy as sp

from .algebra import FAMILIES, build_algebra, join_label, split_label
from .errors import UnknownFamily
from .poisson import COORDS, PoissonStructure, PolyFunction, var

j = sp.symbols("j1:4")
q = sp.symbols("q1:4")
p = sp.symbols("p1:4")
E, t = sp.symbols("E t")
m, C, E0 = sp.symbols("m C E0", positive=True)
s = sp.Symbol("s")
j0 = sp.symbols("j0_1 j0_2 j0_3")
q0 = sp.symbols("q0_1 q0_2 q0_3")
p0 = sp.symbols("p0_1 p0_2 p0_3")
U = sp.Symbol("U")

PARAM_SYMBOLS = {"m": m, "C": C, "E0": E0}
COORD_SYMBOLS = dict(zip(COORDS, (*j, *q, *p, E)))


def _eps_contract(vec, other, i):
    """sum_{k,l} vec_k eps^k_{i l} other_l."""
    return sum(sp.LeviCivita(k, i, l) * vec[k] * other[l] for k in range(3) for l in range(3))


@dataclass(frozen=True)
class QuantityFormulas:
    family: str
    angular_momentum: tuple
    position: tuple
    momentum: tuple
    energy: sp.Expr

    def as_dict(self) -> dict:
        return {"angular momentum": self.angular_momentum, "position": self.position,
                "linear momentum": self.momentum, "energy": self.energy}


def quantity_formulas(family: str) -> QuantityFormulas:
    """Table of conserved/physical quantities, ``s`` standing for the family sign."""
    if family not in FAMILIES:
        try:
            family = split_label(family)[0]
        except UnknownFamily:
            raise UnknownFamily(family) from None
    ang = tuple(_eps_contract(q, p, i) + j0[i] for i in range(3))
    jp = tuple(_eps_contract(j, p, i) / (m * E0) for i in range(3))
    jq = tuple(s * _eps_contract(j, q, i) / (C * E0) for i in range(3))
    kinetic = sum(x**2 for x in p) / (2 * m)
    spring = -s * sum(x**2 for x in q) / (2 * C)

    rows = {
        "dS±": (
            [jp[i] + E / E0 * q[i] + p[i] / m * t + q0[i] for i in range(3)],
            [jq[i] + E / E0 * p[i] + s * q[i] / C * t + p0[i] for i in range(3)],
            kinetic + spring + U,
        ),
        "NH±": (
            [p[i] / m * t + q0[i] for i in range(3)],
            [s * q[i] / C * t + p0[i] for i in range(3)],
            kinetic + spring + U,
        ),
        "P": (
            [jp[i] + E / E0 * q[i] + p[i] / m * t + q0[i] for i in range(3)],
            [E / E0 * p[i] + p0[i] for i in range(3)],
            kinetic + U,
        ),
        "G": (
            [p[i] / m * t + q0[i] for i in range(3)],
            [p0[i] for i in range(3)],
            kinetic + U,
        ),
        "P±": (
            [E / E0 * q[i] + q0[i] for i in range(3)],
            [jq[i] + E / E0 * p[i] + s * q[i] / C * t + p0[i] for i in range(3)],
            spring + U,
        ),
        # no t in the momentum entry, as printed
        "G±": (
            [q0[i] for i in range(3)],
            [s * q[i] / C + p0[i] for i in range(3)],
            spring + U,
        ),
        "C": (
            [E / E0 * q[i] + q0[i] for i in range(3)],
            [E / E0 * p[i] + p0[i] for i in range(3)],
            U,
        ),
        "S": (
            [q0[i] for i in range(3)],
            [p0[i] for i in range(3)],
            U,
        ),
    }
    pos, mom, en = rows[family]
    return QuantityFormulas(family, ang, tuple(pos), tuple(mom), en)


def poly_to_sympy(f: PolyFunction, sign: int | None = None) -> sp.Expr:
    out = sp.Integer(0)
    for powers, c in f.coefficient_list():
        term = sp.Rational(c.scale.numerator, c.scale.denominator)
        for name, e in c.exponents:
            term *= PARAM_SYMBOLS[name] ** sp.Rational(e.numerator, e.denominator)
        if c.sign_power:
            term *= s if sign is None else sign
        for name, n in zip(COORDS, powers):
            term *= COORD_SYMBOLS[name] ** n
        out += term
    return out


# -- moment relation ----------------------------------------------------------

CONVENTIONS = ("minus", "plus")


@dataclass
class ComponentCheck:
    label: str
    quantity: str  # e.g. "position[2]"
    component: str  # d/dq1, d/dp3, d/dE, d/dt
    ok: bool
    max_abs_diff: float
    residual: str  # symbolic d(mu) - expected, "0" when they agree
    known: bool  # a documented disagreement rather than a failure

    @property
    def status(self) -> str:
        if self.ok:
            return "PASS"
        return "WARN" if self.known else "FAIL"


@dataclass
class MomentReport:
    convention: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    @property
    def warnings(self) -> list:
        return [c for c in self.checks if c.status == "WARN"]

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == "FAIL"]

    def select(self, quantity_prefix: str = "", component: str = "", label: str = "") -> list:
        return [c for c in self.checks if c.quantity.startswith(quantity_prefix)
                and c.component.startswith(component) and c.label.startswith(label)]

    def lines(self, only_problems: bool = True) -> list[str]:
        out = []
        for c in self.checks:
            if only_problems and c.ok:
                continue
            out.append(f"{c.status} {c.label} mu({c.quantity}) {c.component}: residual {c.residual}")
        return out


def expected_differential(field_comps: list, convention: str) -> dict:
    """Components of -i_X sigma (``minus``) or +i_X sigma (``plus``).

    With X = X^q d_q + X^p d_p + X^E d_E (no d_t part):
    i_X sigma = X^p_i dq_i - X^q_i dp_i - X^E dt.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    f = -1 if convention == "minus" else 1
    out = {}
    for i in range(3):
        out[q[i]] = f * field_comps[3 + 3 + i]  # X^{p_i}
        out[p[i]] = -f * field_comps[3 + i]  # X^{q_i}
    out[t] = -f * field_comps[9]  # X^E
    out[E] = sp.Integer(0)
    return out


def verify_moment_relation(family: str, convention: str = "minus", samples: int = 100,
                           seed: int = 0, tol: float = 1e-9) -> MomentReport:
    """Compare d(mu) with the vector fields at random sample points.

    Only the energy row is required to agree; every other disagreement is
    flagged as a known issue (WARN) and carries its symbolic residual.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    if family in FAMILIES:
        labels = [join_label(family, sg) for sg in ((1, -1) if family.endswith("±") else (None,))]
    else:
        split_label(family)
        labels = [family]
    rng = random.Random(seed)
    report = MomentReport(convention)
    for label in labels:
        fam, sign = split_label(label)
        formulas = quantity_formulas(fam)
        ps = PoissonStructure(build_algebra(label))
        pairs = []
        for i in range(3):
            pairs.append((f"angular momentum[{i + 1}]", formulas.angular_momentum[i], f"j{i + 1}"))
            pairs.append((f"position[{i + 1}]", formulas.position[i], f"q{i + 1}"))
            pairs.append((f"linear momentum[{i + 1}]", formulas.momentum[i], f"p{i + 1}"))
        pairs.append(("energy", formulas.energy, "E"))
        subs_sign = {s: sign if sign is not None else 1}
        free = (*j, *q, *p, E, t, m, C, E0)
        points = []
        for _ in range(samples):
            pt = [rng.uniform(-2, 2) for _ in range(11)] + [rng.uniform(0.5, 3) for _ in range(3)]
            points.append(pt)
        for qname, mu, coord in pairs:
            comps = [poly_to_sympy(c, sign) for c in ps.vector_field(var(coord))]
            want = expected_differential(comps, convention)
            for x, label_x in [(q[i], f"d/dq{i + 1}") for i in range(3)] + \
                              [(p[i], f"d/dp{i + 1}") for i in range(3)] + [(E, "d/dE"), (t, "d/dt")]:
                residual = sp.expand(sp.diff(mu, x).subs(subs_sign) - want[x])
                fn = sp.lambdify(free, residual, "math")
                worst = max(abs(float(fn(*pt))) for pt in points)
                report.checks.append(ComponentCheck(
                    label=label, quantity=qname, component=label_x, ok=worst <= tol,
                    max_abs_diff=worst, residual=str(residual), known=qname != "energy"))
    return report
