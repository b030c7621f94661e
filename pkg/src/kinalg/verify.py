"""Invariant suites shared by ``kinalg verify`` and the acceptance tests.

Each suite returns a list of :class:`Check` records. Randomized checks draw
from a ``random.Random(seed)`` so a run is reproducible from its seed.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import coeff as cf
from .algebra import FAMILIES, LABELS, N, build_algebra, evaluate_structure, from_json, jacobi_residual, join_label, to_json
from .coeff import DYNAMICAL, KINEMATICAL
from .contraction import CONTRACTION_NAMES, contract_limit, contraction_graph, identify, iw_contract
from .dynamics import (DynParams, PhaseState, exact_solution, integrate, measure_period, trajectory_angular_momentum,
                       trajectory_energy)
from .errors import KinalgError
from .poisson import PoissonStructure, PolyFunction, motion_equations
from .quantities import verify_moment_relation
from .realization import (build_matrix_generators, commutator_table, expected_table, is_isometry_generator,
                          rescale_generators)

SCOPES = ("algebra", "realization", "poisson", "dynamics")

# Arrows of the mass/energy/compliance cube, read off the figure.
CUBE_EDGES = frozenset({
    ("dS±", "P±", "m"), ("P", "C", "m"), ("NH±", "G±", "m"), ("G", "S", "m"),
    ("dS±", "NH±", "E0"), ("P", "G", "E0"), ("P±", "G±", "E0"), ("C", "S", "E0"),
    ("dS±", "P", "C"), ("NH±", "G", "C"), ("P±", "C", "C"), ("G±", "S", "C"),
})

# Joint kinematical limit -> unscaled subalgebra of the matching IW contraction.
IW_SPLITS = {("c", "r"): ("J", "H"), ("c", "tau"): ("J", "P"), ("r", "tau"): ("J", "B")}


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    status: str  # PASS, FAIL or WARN
    detail: str = ""

    def line(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"{self.status} {self.suite}: {self.name}{tail}"


def _check(suite: str, name: str, ok: bool, detail: str = "") -> Check:
    return Check(suite, name, "PASS" if ok else "FAIL", "" if ok else detail)


def _guard(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except (KinalgError, ArithmeticError, ValueError, KeyError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return _check(suite, name, ok, detail)


def _instances(families=FAMILIES):
    for fam in families:
        for sign in ((1, -1) if fam.endswith("±") else (None,)):
            yield join_label(fam, sign)


# -- algebra ----------------------------------------------------------------

def jacobi_all() -> list[tuple[str, str, list]]:
    """Jacobi residuals for every label in the dynamical and both kinematical forms."""
    out = []
    for label in LABELS:
        out.append((label, "dynamical", jacobi_residual(build_algebra(label))))
        out.append((label, "kinematical", jacobi_residual(build_algebra(label, KINEMATICAL))))
        out.append((label, "kinematical unconstrained",
                    jacobi_residual(build_algebra(label, KINEMATICAL, constrained=False))))
    return out


def cube_edges(basis: str = DYNAMICAL) -> frozenset:
    return frozenset((e.src, e.dst, e.limit) for e in contraction_graph(basis).edges)


def iw_limit_pairs():
    """(label, pair, limit result, IW result) for dS+ and dS- in the unconstrained basis."""
    for label in ("dS+", "dS-"):
        alg = build_algebra(label, KINEMATICAL, constrained=False)
        for pair, unscaled in IW_SPLITS.items():
            yield label, pair, contract_limit(alg, pair), iw_contract(alg, unscaled)


def limits_commute(label: str, a: str, b: str) -> bool:
    alg = build_algebra(label)
    ab = contract_limit(contract_limit(alg, {a}), {b})
    ba = contract_limit(contract_limit(alg, {b}), {a})
    return ab == ba == contract_limit(alg, {a, b})


def suite_algebra(seed: int = 0) -> list[Check]:
    out = []
    t0 = time.perf_counter()
    for label, basis, residual in jacobi_all():
        out.append(_check("algebra", f"jacobi {label} ({basis})", not residual,
                          f"{len(residual)} nonzero terms, first {residual[:1]}"))
    out.append(Check("algebra", f"jacobi timing {time.perf_counter() - t0:.3f}s", "PASS"))

    for basis in (DYNAMICAL, KINEMATICAL):
        got = cube_edges(basis)
        out.append(_check("algebra", f"cube edges ({basis})", got == CUBE_EDGES,
                          f"missing {sorted(CUBE_EDGES - got)}, extra {sorted(got - CUBE_EDGES)}"))

    for label in LABELS:
        for basis in (DYNAMICAL, KINEMATICAL):
            alg = build_algebra(label, basis)
            out.append(_check("algebra", f"identify {label} ({basis})", identify(alg) == label,
                              f"identified as {identify(alg)}"))
            text = to_json(alg)
            out.append(_check("algebra", f"json round-trip {label} ({basis})",
                              to_json(from_json(text)) == text, "re-emitted JSON differs"))

    for label, pair, lim, iw in iw_limit_pairs():
        kind = CONTRACTION_NAMES[{("c", "tau"): "m", ("c", "r"): "E0", ("r", "tau"): "C"}[pair]]
        out.append(_check("algebra", f"IW = limit {label} {','.join(pair)} ({kind})", lim == iw,
                          "tensors differ"))

    for label in _instances():
        for a, b in itertools.combinations(("m", "C", "E0"), 2):
            out.append(_guard("algebra", f"limits commute {label} {a},{b}",
                              lambda: (limits_commute(label, a, b), "orders disagree")))
    return out


# -- realization ------------------------------------------------------------

def random_kinematical_params(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    """Positive rationals (c, r, tau) with r = c tau."""
    c = Fraction(rng.randint(1, 20), rng.randint(1, 20))
    tau = Fraction(rng.randint(1, 20), rng.randint(1, 20))
    return c, c * tau, tau


def rescaled_matches(sign: int, c, r, tau) -> tuple[bool, str]:
    gens = rescale_generators(build_matrix_generators(sign), c, r, tau)
    got = commutator_table(gens)
    alg = build_algebra("dS+" if sign == 1 else "dS-", KINEMATICAL)
    want = evaluate_structure(alg, {"c": c, "r": r, "tau": tau})
    return got == want, f"c={c} r={r} tau={tau}"


def suite_realization(seed: int = 0) -> list[Check]:
    out = []
    for sign in (1, -1):
        gens = build_matrix_generators(sign)
        s = "+" if sign == 1 else "-"
        out.append(_check("realization", f"commutator table O{s}(5)",
                          commutator_table(gens) == expected_table(sign), "table differs"))
        bad = [n for n, X in gens.items() if not is_isometry_generator(X, sign)]
        out.append(_check("realization", f"isometry condition O{s}(5)", not bad, f"fails for {bad}"))
    rng = random.Random(seed)
    for sign in (1, -1):
        fails = []
        for _ in range(20):
            ok, detail = rescaled_matches(sign, *random_kinematical_params(rng))
            if not ok:
                fails.append(detail)
        out.append(_check("realization", f"rescaled dS{'+' if sign == 1 else '-'} matches table (20 samples)",
                          not fails, "; ".join(fails[:3])))
    return out


# -- poisson ----------------------------------------------------------------

def random_poly(rng: random.Random, max_degree: int = 2, max_terms: int = 4) -> PolyFunction:
    f = PolyFunction()
    for _ in range(rng.randint(1, max_terms)):
        powers = [0] * N
        for _ in range(rng.randint(0, max_degree)):
            powers[rng.randrange(N)] += 1
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        f = f + PolyFunction.monomial(powers, cf.Coefficient(c))
    return f


def bracket_laws(ps: PoissonStructure, f, g, h) -> dict[str, bool]:
    br = ps.bracket
    return {
        "antisymmetry": br(f, g) == -br(g, f),
        "jacobi": br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g)) == PolyFunction(),
        "leibniz": br(f, g * h) == br(f, g) * h + g * br(f, h),
    }


def suite_poisson(seed: int = 0, samples: int = 100, moment_samples: int = 100) -> list[Check]:
    out = []
    rng = random.Random(seed)
    for label in _instances():
        ps = PoissonStructure(build_algebra(label))
        failed: dict[str, int] = {}
        for _ in range(samples):
            f, g, h = (random_poly(rng) for _ in range(3))
            for law, ok in bracket_laws(ps, f, g, h).items():
                failed[law] = failed.get(law, 0) + (not ok)
        for law in ("antisymmetry", "jacobi", "leibniz"):
            out.append(_check("poisson", f"{law} {label} ({samples} triples)", not failed[law],
                              f"{failed[law]} failing triples"))

    # motion equations agree across the Newtonian limit
    for a, b in (("dS+", "NH+"), ("dS-", "NH-"), ("P", "G"), ("P+", "G+"), ("P-", "G-"), ("C", "S")):
        ea, eb = motion_equations(build_algebra(a)), motion_equations(build_algebra(b))
        out.append(_check("poisson", f"motion equations {a} = {b}", ea == eb, "equations differ"))

    for fam in FAMILIES:
        report = verify_moment_relation(fam, samples=moment_samples, seed=seed)
        energy = [c for c in report.checks if c.quantity == "energy"]
        out.append(_check("poisson", f"moment relation energy {fam}", all(c.ok for c in energy),
                          "; ".join(f"{c.label} {c.component}: {c.residual}" for c in energy if not c.ok)))
        for c in report.warnings:
            out.append(Check("poisson", f"moment {c.label} mu({c.quantity}) {c.component}", "WARN",
                             f"residual {c.residual}"))
    return out


# -- dynamics ---------------------------------------------------------------

@dataclass(frozen=True)
class OscillatorRun:
    period_error: float
    energy_drift: float
    momentum_drift: float
    exact_error: float
    seconds: float


def oscillator_run(periods: int = 10, steps_per_period: int = 1000) -> OscillatorRun:
    """NH- with unit parameters from q0 = (1,0,0), p0 = 0."""
    t0 = time.perf_counter()
    params = DynParams(1.0, 1.0, 1.0, family="NH-")
    s0 = PhaseState(q=(1, 0, 0), p=(0, 0, 0))
    h = params.period / steps_per_period
    traj = integrate(params, s0, h, periods * params.period)
    en = trajectory_energy(traj)
    am = trajectory_angular_momentum(traj)
    q_ex, p_ex = exact_solution(params, s0.q, s0.p, traj.t - s0.t)
    err = max(np.max(np.abs(traj.q - q_ex)), np.max(np.abs(traj.p - p_ex)))
    return OscillatorRun(
        period_error=abs(measure_period(traj) - params.period),
        energy_drift=float(np.max(np.abs(en - en[0]))),
        momentum_drift=float(np.max(np.abs(am - am[0]))),
        exact_error=float(err),
        seconds=time.perf_counter() - t0,
    )


def suite_dynamics(seed: int = 0) -> list[Check]:
    out = []
    run = oscillator_run()
    out.append(_check("dynamics", "NH- period within 1e-6 of 2pi", run.period_error < 1e-6, f"{run.period_error:.3e}"))
    out.append(_check("dynamics", "NH- energy drift < 1e-8", run.energy_drift < 1e-8, f"{run.energy_drift:.3e}"))
    out.append(_check("dynamics", "NH- q x p drift < 1e-8", run.momentum_drift < 1e-8, f"{run.momentum_drift:.3e}"))
    out.append(_check("dynamics", "NH- rk4 vs closed form < 1e-6", run.exact_error < 1e-6, f"{run.exact_error:.3e}"))

    g = DynParams(1.5, 1.0, 1.0, family="G")
    traj = integrate(g, PhaseState(q=(0.3, -1, 2), p=(1, 0.5, -2)), 0.01, 10)
    charge = traj.q - traj.p * (traj.t[:, None] / g.m)
    d = float(np.max(np.abs(charge - charge[0])))
    out.append(_check("dynamics", "G boost charge q - p t/m constant", d < 1e-10, f"drift {d:.3e}"))

    # every family: rk4 tracks the closed form and conserves energy and q x p.
    # Horizon of two e-folds of sqrt(mC) keeps the hyperbolic families tame.
    rng = random.Random(seed)
    for label in _instances():
        params = DynParams(rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2), family=label)
        s0 = PhaseState(q=[rng.uniform(-1, 1) for _ in range(3)], p=[rng.uniform(-1, 1) for _ in range(3)])
        unit = (params.m * params.C) ** 0.5
        traj = integrate(params, s0, unit / 200, 2 * unit)
        q_ex, p_ex = exact_solution(params, s0.q, s0.p, traj.t)
        scale = max(1.0, float(np.max(np.abs(q_ex))), float(np.max(np.abs(p_ex))))
        err = max(np.max(np.abs(traj.q - q_ex)), np.max(np.abs(traj.p - p_ex))) / scale
        out.append(_check("dynamics", f"rk4 vs closed form {label}", err < 1e-6, f"relative error {err:.3e}"))
        en = trajectory_energy(traj)
        size = np.max(np.sum(traj.p**2, axis=1) / (2 * params.m) + np.sum(traj.q**2, axis=1) / (2 * params.C))
        drift = float(np.max(np.abs(en - en[0]))) / max(1.0, float(size))
        out.append(_check("dynamics", f"energy conserved {label}", drift < 1e-8, f"relative drift {drift:.3e}"))
        # dq/dt is along p and dp/dt along q in every family
        am = trajectory_angular_momentum(traj)
        size = np.max(np.linalg.norm(traj.q, axis=1) * np.linalg.norm(traj.p, axis=1))
        d = float(np.max(np.abs(am - am[0]))) / max(1.0, float(size))
        out.append(_check("dynamics", f"q x p conserved {label}", d < 1e-8, f"relative drift {d:.3e}"))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "algebra": suite_algebra,
    "realization": suite_realization,
    "poisson": suite_poisson,
    "dynamics": suite_dynamics,
}


def run(scope: str = "all", seed: int = 0) -> list[Check]:
    names = SCOPES if scope == "all" else (scope,)
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown scope {scope!r}")
    checks = []
    for name in names:
        checks.extend(SUITES[name](seed=seed))
    return checks


def summary(checks: list[Check]) -> str:
    counts = {s: sum(c.status == s for c in checks) for s in ("PASS", "FAIL", "WARN")}
    return f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['WARN']} warnings"


__all__ = ["Check", "CUBE_EDGES", "IW_SPLITS", "SCOPES", "run", "summary", "oscillator_run", "jacobi_all",
           "cube_edges", "iw_limit_pairs", "limits_commute", "random_poly", "bracket_laws",
           "rescaled_matches", "random_kinematical_params"]
