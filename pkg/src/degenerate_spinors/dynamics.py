"""Expectation-velocity trajectories of localized Weyl particles.

A positive-helicity spinor with polar angles ``theta(t)``, ``phi(t)`` moves
with unit velocity ``(sin th cos ph, sin th sin ph, cos th)``.  Trajectories
are integrated with the classical fourth-order Runge-Kutta step.  The SI
localization time lives here too.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .errors import NonPositiveInput
from .scalar import as_field

HBAR = constants.hbar
ELEMENTARY_CHARGE = constants.e
TRAJECTORY_COLUMNS = ("t", "x", "y", "z", "vx", "vy", "vz")

PRESETS = {
    "fig3": {"theta_t": "pi/4", "phi_t": "10*t - t**2", "t_span": (0.0, 10.0)},
    "fig4": {"theta_t": "pi/4", "phi_t": "10*t - t**2", "t_span": (0.0, 10.0)},
    "fig5": {"theta_t": "10*t - t**2", "phi_t": "pi/2", "t_span": (0.0, 10.0)},
}


def weyl_velocity(theta, phi) -> np.ndarray:
    """Unit velocity for polar angle ``theta`` and azimuth ``phi`` (broadcasts)."""
    theta, phi = np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


def _angle_fn(f):
    f = as_field(f)
    if not f.depends_only_on(("t",)):
        raise ValueError("angle profiles may only depend on t")

    def fn(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        z = np.zeros_like(t)
        return np.real(f(t, z, z, z)) * np.ones_like(t)

    return f, fn


@dataclass
class Trajectory:
    """Sampled path with velocities; ``error_estimate`` comes from step halving."""

    t: np.ndarray
    r: np.ndarray
    v: np.ndarray
    step: float
    method: str = "rk4"
    error_estimate: float = 0.0

    @property
    def speeds(self) -> np.ndarray:
        return np.linalg.norm(self.v, axis=-1)

    @property
    def chord_speeds(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.r, axis=0), axis=-1) / np.diff(self.t)

    def table(self) -> np.ndarray:
        return np.column_stack([self.t, self.r, self.v])

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        np.savetxt(buf, self.table(), fmt="%.17g", delimiter=",", header=",".join(TRAJECTORY_COLUMNS), comments="")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text


def _rk4(vel, r0, t0, n, dt):
    ts = t0 + dt * np.arange(n + 1)
    r = np.empty((n + 1, 3))
    r[0] = r0
    # the velocity does not depend on position, so stages only need times
    k1 = vel(ts[:-1])
    k2 = vel(ts[:-1] + dt / 2)
    k4 = vel(ts[1:])
    r[1:] = r0 + np.cumsum(dt / 6 * (k1 + 4 * k2 + k4), axis=0)
    return ts, r


def integrate_trajectory(theta_t, phi_t, r0=(0.0, 0.0, 0.0), t_span=(0.0, 10.0), dt: float | None = None) -> Trajectory:
    """Integrate ``dr/dt = weyl_velocity(theta(t), phi(t))``."""
    t0, t1 = (float(v) for v in t_span)
    if not (math.isfinite(t0) and math.isfinite(t1)) or t1 <= t0:
        raise ValueError("t_span must be finite and increasing")
    if dt is None:
        dt = 1e-3 * (t1 - t0)
    if dt <= 0:
        raise ValueError("dt must be positive")
    _, th = _angle_fn(theta_t)
    _, ph = _angle_fn(phi_t)

    def vel(t):
        return weyl_velocity(th(t), ph(t))

    n = max(1, int(round((t1 - t0) / dt)))
    dt = (t1 - t0) / n
    ts, r = _rk4(vel, np.asarray(r0, dtype=float), t0, n, dt)
    _, r_half = _rk4(vel, np.asarray(r0, dtype=float), t0, 2 * n, dt / 2)
    err = float(np.max(np.abs(r_half[::2] - r)))
    return Trajectory(ts, r, vel(ts), dt, "rk4", err)


def preset_trajectory(name: str, dt: float | None = None, r0=(0.0, 0.0, 0.0)) -> Trajectory:
    try:
        p = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return integrate_trajectory(p["theta_t"], p["phi_t"], r0, p["t_span"], dt)


def localization_time(q_C: float, r0_m: float, E_mag: float) -> float:
    """Seconds needed to confine a particle of charge ``q_C`` within ``r0_m`` in field ``E_mag``.

    ``hbar / (2 q r0 |E|)`` in SI units.
    """
    for name, v in (("q_C", q_C), ("r0_m", r0_m), ("E_mag", E_mag)):
        if not v > 0:
            raise NonPositiveInput(f"{name} must be positive, got {v}")
    return HBAR / (2 * q_C * r0_m * E_mag)


def field_schedule_from_angles(theta_t, phi_t, q: float = 1.0):
    """Electric field ``E(t)`` (shape ``(n, 3)``) that steers the given angle profiles.

    The matching magnetic field is zero.
    """
    th, _ = _angle_fn(theta_t)
    ph, _ = _angle_fn(phi_t)
    th1, ph1 = th.diff("t"), ph.diff("t")
    th2, ph2 = th1.diff("t"), ph1.diff("t")
    _, f_ph = _angle_fn(ph)
    _, f_th1 = _angle_fn(th1)
    _, f_ph1 = _angle_fn(ph1)
    _, f_th2 = _angle_fn(th2)
    _, f_ph2 = _angle_fn(ph2)

    def field(t):
        p, a1, b1, a2, b2 = f_ph(t), f_th1(t), f_ph1(t), f_th2(t), f_ph2(t)
        return np.stack([
            (np.cos(p) * a1 * b1 + np.sin(p) * a2) / (2 * q),
            (np.sin(p) * a1 * b1 - np.cos(p) * a2) / (2 * q),
            -b2 / (2 * q),
        ], axis=-1)

    return field
