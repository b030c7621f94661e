"""Numeric integration of the kinematical motion equations."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .algebra import FAMILIES, build_algebra, join_label, split_label
from .errors import NonPositiveStep, UnknownFamily
from .poisson import COORDS, motion_equations

STATE_COORDS = ("q1", "q2", "q3", "p1", "p2", "p3")
CSV_HEADER = ("t", "q1", "q2", "q3", "p1", "p2", "p3", "E")


@dataclass(frozen=True)
class DynParams:
    m: float = 1.0
    C: float = 1.0
    E0: float = 1.0
    sign: int | None = None
    family: str = "dS±"

    def __post_init__(self):
        if min(self.m, self.C, self.E0) <= 0:
            raise ValueError("m, C and E0 must be positive")
        family = self.family
        if family not in FAMILIES:
            try:
                family, sign = split_label(family)
            except UnknownFamily:
                raise UnknownFamily(self.family) from None
            if sign is not None:
                if self.sign not in (None, sign):
                    raise ValueError(f"{self.family} is inconsistent with sign {self.sign}")
                object.__setattr__(self, "sign", sign)
            object.__setattr__(self, "family", family)
        if self.family.endswith("±"):
            if self.sign not in (1, -1):
                raise ValueError(f"{self.family} needs sign +1 or -1")
        else:
            object.__setattr__(self, "sign", None)

    @property
    def label(self) -> str:
        return join_label(self.family, self.sign)

    @property
    def values(self) -> dict[str, float]:
        return {"m": self.m, "C": self.C, "E0": self.E0}

    @property
    def period(self) -> float:
        """Characteristic time 2 pi sqrt(m C)."""
        return 2 * math.pi * math.sqrt(self.m * self.C)


@dataclass(frozen=True)
class PhaseState:
    q: tuple = (0.0, 0.0, 0.0)
    p: tuple = (0.0, 0.0, 0.0)
    E: float = 0.0
    j: tuple = (0.0, 0.0, 0.0)
    t: float = 0.0

    def __post_init__(self):
        for name in ("q", "p", "j"):
            v = tuple(float(x) for x in getattr(self, name))
            if len(v) != 3:
                raise ValueError(f"{name} needs three components")
            object.__setattr__(self, name, v)
        vals = self.q + self.p + self.j + (float(self.E), float(self.t))
        if not all(math.isfinite(x) for x in vals):
            raise ValueError("phase state has non-finite components")


@dataclass
class Trajectory:
    t: np.ndarray
    q: np.ndarray  # (n, 3)
    p: np.ndarray  # (n, 3)
    E: float
    j: tuple
    method: str
    step: float
    params: DynParams = field(repr=False, default=None)

    def __len__(self):
        return len(self.t)

    def states(self) -> Iterator[PhaseState]:
        for k in range(len(self.t)):
            yield PhaseState(self.q[k], self.p[k], self.E, self.j, self.t[k])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for k in range(len(self.t)):
            w.writerow([repr(float(x)) for x in (self.t[k], *self.q[k], *self.p[k], self.E)])
        return buf.getvalue()


def ode_matrix(params: DynParams) -> np.ndarray:
    """6x6 matrix of d(q, p)/dt = M (q, p), read from the symbolic motion equations."""
    eqs = motion_equations(build_algebra(params.label))
    M = np.zeros((6, 6))
    for row, name in enumerate(STATE_COORDS):
        for powers, c in eqs[name].coefficient_list():
            if sum(powers) != 1:
                raise ValueError(f"non-linear motion equation for {name}")
            var = COORDS[powers.index(1)]
            if var not in STATE_COORDS:
                raise ValueError(f"{name} depends on {var}")
            M[row, STATE_COORDS.index(var)] += float(c.evaluate(params.values, params.sign))
    return M


def _rk4(M: np.ndarray, x0: np.ndarray, h: float, n: int) -> np.ndarray:
    out = np.empty((n + 1, 6))
    out[0] = x = x0
    for k in range(n):
        k1 = M @ x
        k2 = M @ (x + 0.5 * h * k1)
        k3 = M @ (x + 0.5 * h * k2)
        k4 = M @ (x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[k + 1] = x
    return out


def exact_solution(params: DynParams, q0, p0, t) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form (q, p) at times ``t`` (array), elapsed from the initial state."""
    t = np.asarray(t, dtype=float)[:, None]
    q0, p0 = np.asarray(q0, float)[None, :], np.asarray(p0, float)[None, :]
    m, C, s = params.m, params.C, params.sign
    fam = params.family
    if fam in ("dS±", "NH±"):
        w = 1.0 / math.sqrt(m * C)
        if s < 0:
            cs, sn = np.cos(w * t), np.sin(w * t)
            return q0 * cs + p0 / (m * w) * sn, p0 * cs - m * w * q0 * sn
        ch, sh = np.cosh(w * t), np.sinh(w * t)
        return q0 * ch + p0 / (m * w) * sh, p0 * ch + m * w * q0 * sh
    if fam in ("P", "G"):
        return q0 + p0 * t / m, np.broadcast_to(p0, (len(t), 3)).copy()
    if fam in ("P±", "G±"):
        return np.broadcast_to(q0, (len(t), 3)).copy(), p0 + s * q0 * t / C
    if fam in ("C", "S"):
        return np.broadcast_to(q0, (len(t), 3)).copy(), np.broadcast_to(p0, (len(t), 3)).copy()
    raise UnknownFamily(fam)


def integrate(params: DynParams, s0: PhaseState, h: float, T: float, method: str = "rk4") -> Trajectory:
    """Advance (q, p) over ``[s0.t, s0.t + T]`` with uniform step ``h``.

    ``E`` and ``j`` are constants of the motion and ride along unchanged.
    The last step lands on or just past ``T`` when ``T/h`` is not integral.
    """
    if not h > 0 or not T > 0:
        raise NonPositiveStep(f"step {h} and horizon {T} must be positive")
    n = max(1, math.ceil(T / h - 1e-9))
    times = s0.t + h * np.arange(n + 1)
    if method == "rk4":
        xs = _rk4(ode_matrix(params), np.array(s0.q + s0.p), h, n)
        q, p = xs[:, :3], xs[:, 3:]
    elif method == "exact":
        q, p = exact_solution(params, s0.q, s0.p, times - s0.t)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Trajectory(times, q, p, s0.E, s0.j, method, h, params)


def energy(params: DynParams, s: PhaseState, U: float = 0.0) -> float:
    """Energy function of the family.

    The quadratic term is ``-s q^2/2C``: with dp/dt = s q/C and dq/dt = p/m,
    dE/dt = (p.(s q/C))/m - s (q.p)/(m C) = 0, which fixes the sign.
    """
    fam = params.family
    p2 = sum(x * x for x in s.p)
    q2 = sum(x * x for x in s.q)
    kinetic = p2 / (2 * params.m)
    spring = -params.sign * q2 / (2 * params.C) if params.sign else 0.0
    if fam in ("dS±", "NH±"):
        return kinetic + spring + U
    if fam in ("P", "G"):
        return kinetic + U
    if fam in ("P±", "G±"):
        return spring + U
    if fam in ("C", "S"):
        return U
    raise UnknownFamily(fam)


def angular_momentum(s: PhaseState) -> tuple[float, float, float]:
    """q x p."""
    (q1, q2, q3), (p1, p2, p3) = s.q, s.p
    return (q2 * p3 - q3 * p2, q3 * p1 - q1 * p3, q1 * p2 - q2 * p1)


def trajectory_energy(traj: Trajectory, U: float = 0.0) -> np.ndarray:
    return np.array([energy(traj.params, s, U) for s in traj.states()])


def trajectory_angular_momentum(traj: Trajectory) -> np.ndarray:
    return np.cross(traj.q, traj.p)


def upward_crossings(traj: Trajectory, component: int = 0) -> np.ndarray:
    """Times where q[component] crosses zero going up.

    Each crossing is located on the cubic Hermite interpolant built from q
    and dq/dt = p/m at the bracketing samples.
    """
    q = traj.q[:, component]
    v = traj.p[:, component] / traj.params.m
    h = traj.step
    out = []
    for k in np.nonzero((q[:-1] < 0) & (q[1:] >= 0))[0]:
        y0, y1, d0, d1 = q[k], q[k + 1], v[k] * h, v[k + 1] * h
        # Hermite basis on s in [0, 1]
        coeffs = [2 * y0 - 2 * y1 + d0 + d1, -3 * y0 + 3 * y1 - 2 * d0 - d1, d0, y0]
        roots = [r.real for r in np.roots(coeffs) if abs(r.imag) < 1e-12 and -1e-12 <= r.real <= 1 + 1e-12]
        s = min(roots, key=lambda r: abs(np.polyval(coeffs, r))) if roots else -y0 / (y1 - y0)
        out.append(traj.t[k] + s * h)
    return np.array(out)


def measure_period(traj: Trajectory, component: int = 0) -> float:
    """Mean spacing of upward zero crossings."""
    z = upward_crossings(traj, component)
    if len(z) < 2:
        raise ValueError("fewer than two zero crossings; cannot measure a period")
    return float((z[-1] - z[0]) / (len(z) - 1))
