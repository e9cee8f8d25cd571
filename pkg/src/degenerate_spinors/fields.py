"""Electromagnetic fields of 4-potentials, Gaussian units with c = 1.

A potential ``a_mu = q A_mu`` maps to ``U = a_0 / q`` and
``A = -(a_1, a_2, a_3) / q``; then ``E = -grad U - dA/dt`` and
``B = curl A``.  Closed-form field expressions for the solution families are
provided as symbolic fields so they can be differentiated exactly.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np
import sympy as sp

from .errors import DegenerateParameter, NonPositiveProfile, UnknownFamily
from .scalar import as_field
from .symbolic import COORDS, SymbolicField, as_points, values_and_jacobian

T, X, Y, Z = COORDS
CSV_COLUMNS = ("t", "x", "y", "z", "Ex", "Ey", "Ez", "Bx", "By", "Bz", "Sx", "Sy", "Sz")


def poynting(E, B) -> np.ndarray:
    """Energy flux ``S = E x B / (4 pi)``."""
    return np.cross(np.asarray(E, dtype=float), np.asarray(B, dtype=float)) / (4 * math.pi)


@dataclass
class FieldSample:
    """Electric and magnetic fields at a stack of points, each ``(n, 3)``."""

    points: np.ndarray
    E: np.ndarray
    B: np.ndarray

    @property
    def S(self) -> np.ndarray:
        return poynting(self.E, self.B)

    def table(self) -> np.ndarray:
        return np.hstack([self.points, self.E, self.B, self.S])

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        np.savetxt(buf, self.table(), fmt="%.17g", delimiter=",", header=",".join(CSV_COLUMNS), comments="")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as fh:
                fh.write(text)
        return text

    def to_dict(self) -> dict:
        return {"columns": list(CSV_COLUMNS), "rows": self.table().tolist()}

    def to_json(self, path=None) -> str:
        text = json.dumps(self.to_dict(), indent=1)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text


def _from_jacobian(jac, q):
    """E and B from potential derivatives ``jac[n, mu, comp]``."""
    d = jac.real
    E = (-d[:, 1:, 0] + d[:, 0, 1:]) / q
    curl = np.stack([
        d[:, 2, 3] - d[:, 3, 2],
        d[:, 3, 1] - d[:, 1, 3],
        d[:, 1, 2] - d[:, 2, 1],
    ], axis=-1)
    return E, -curl / q


def em_fields(a, q: float, pts, scheme: str = "exact", step=None) -> FieldSample:
    """Fields of the potential ``a`` (symbolic field or callable) at ``pts``."""
    if q == 0:
        raise DegenerateParameter("charge q must be non-zero")
    pts = as_points(pts)
    if scheme == "exact" and not isinstance(a, SymbolicField):
        scheme = "fd2"
    _, jac = values_and_jacobian(a, pts, scheme, step)
    E, B = _from_jacobian(jac, q)
    return FieldSample(pts, E, B)


def field_exprs(a: SymbolicField, q: float) -> tuple:
    """Symbolic ``(E, B)`` of a symbolic potential."""
    q = sp.Float(q)
    d = [[sp.diff(e, c) for e in a.exprs] for c in COORDS]
    E = [(-d[i][0] + d[0][i]) / q for i in (1, 2, 3)]
    B = [-(d[2][3] - d[3][2]) / q, -(d[3][1] - d[1][3]) / q, -(d[1][2] - d[2][1]) / q]
    return SymbolicField(E, real=True), SymbolicField(B, real=True)


# ---------------------------------------------------------------------------
# closed forms

def _f(v):
    return sp.Float(v)


def copropagating_wave_s(E1=1.0, E2=0.0, k_w=1.0, delta1=0.0, delta2=0.0, q=1.0):
    """Shift function ``s = q s_q`` producing a plane wave along +z."""
    return as_field(f"{-q * E1}*cos({k_w}*(z - t) + {delta1})*x + {-q * E2}*cos({k_w}*(z - t) + {delta2})*y")


def perpendicular_wave_s(E1=1.0, E2=0.0, k_w=1.0, delta1=0.0, delta2=0.0, q=1.0):
    """Shift function ``s = q s_q`` producing a plane wave along -y."""
    return as_field(f"{-q * E1}*cos({k_w}*(y + t) + {delta1})*x + {-q * E2}*cos({k_w}*(y + t) + {delta2})*z")


def _massless_general(theta=0.0, phi=0.0, s=None, q=1.0):
    sq = as_field(s).to_sympy() / _f(q)
    st, ct, sp_, cp = (_f(v) for v in (math.sin(theta), math.cos(theta), math.sin(phi), math.cos(phi)))
    g = [sp.diff(sq, c) for c in (X, Y, Z)]
    dt = sp.diff(sq, T)
    n = [st * cp, st * sp_, ct]
    E = [-g[i] - dt * n[i] for i in range(3)]
    B = [ct * g[1] - st * sp_ * g[2], -(ct * g[0] - st * cp * g[2]), st * (sp_ * g[0] - cp * g[1])]
    return E, B


def _copropagating_wave(E1=1.0, E2=0.0, k_w=1.0, delta1=0.0, delta2=0.0, q=1.0):
    c1 = _f(E1) * sp.cos(_f(k_w) * (Z - T) + _f(delta1))
    c2 = _f(E2) * sp.cos(_f(k_w) * (Z - T) + _f(delta2))
    zero = sp.Integer(0)
    return [c1, c2, zero], [-c2, c1, zero]


def _barrier_pair(s=None, q=1.0):
    sq = as_field(s).to_sympy() / _f(q)
    d = {c: sp.diff(sq, c) for c in COORDS}
    return [-d[X], d[T] - d[Y], -d[Z]], [d[Z], sp.Integer(0), -d[X]]


def _perpendicular_wave(E1=1.0, E2=0.0, k_w=1.0, delta1=0.0, delta2=0.0, q=1.0):
    c1 = _f(E1) * sp.cos(_f(k_w) * (Y + T) + _f(delta1))
    c2 = _f(E2) * sp.cos(_f(k_w) * (Y + T) + _f(delta2))
    zero = sp.Integer(0)
    return [c1, zero, c2], [-c2, zero, c1]


def _phase_d(alpha, beta, m):
    from .families import wavelike_frequency
    omega, kd = wavelike_frequency(alpha, beta, m)
    return _f(omega) * T - _f(kd) * Z


def _wavelike(alpha=0.3, beta=0.9, m=1.0, q=1.0):
    return _wavelike_extended(alpha, beta, m, 0.0, q)


def _wavelike_extended(alpha=0.3, beta=0.9, m=1.0, s=0.0, q=1.0):
    d = _phase_d(alpha, beta, m)
    ca, cb = math.cos(alpha), math.cos(beta)
    csc_m, csc_p = 1 / math.sin(alpha - beta), 1 / math.sin(alpha + beta)
    sec_p = 1 / math.cos(alpha + beta)
    e_amp = 2 * m / q * csc_m * (2 * m * ca * cb * csc_m * csc_p * sec_p + s)
    b_amp = -2 * m / q * csc_m * (2 * m * ca * cb * csc_m * csc_p + s * math.cos(alpha + beta))
    zero = sp.Integer(0)
    E = [-_f(e_amp) * sp.sin(d), _f(e_amp) * sp.cos(d), zero]
    B = [_f(b_amp) * sp.cos(d), _f(b_amp) * sp.sin(d), zero]
    return E, B


def _weyl_localized(theta_t=None, phi_t=None, q=1.0):
    th, ph = as_field(theta_t).to_sympy(), as_field(phi_t).to_sympy()
    th1, ph1 = sp.diff(th, T), sp.diff(ph, T)
    th2, ph2 = sp.diff(th1, T), sp.diff(ph1, T)
    k = 1 / (2 * _f(q))
    E = [k * (sp.cos(ph) * th1 * ph1 + sp.sin(ph) * th2),
         k * (sp.sin(ph) * th1 * ph1 - sp.cos(ph) * th2),
         -k * ph2]
    zero = sp.Integer(0)
    return E, [zero, zero, zero]


CLOSED_FORMS = {
    "massless_general": _massless_general,
    "copropagating_wave": _copropagating_wave,
    "barrier_pair": _barrier_pair,
    "perpendicular_wave": _perpendicular_wave,
    "wavelike": _wavelike,
    "wavelike_extended": _wavelike_extended,
    "weyl_localized": _weyl_localized,
}


def closed_form_exprs(family_id: str, **params) -> tuple:
    """Symbolic ``(E, B)`` of a known closed form."""
    try:
        builder = CLOSED_FORMS[family_id]
    except KeyError:
        raise UnknownFamily(family_id) from None
    if params.get("q", 1.0) == 0:
        raise DegenerateParameter("charge q must be non-zero")
    E, B = builder(**params)
    return SymbolicField(E, real=True), SymbolicField(B, real=True)


def closed_form_fields(family_id: str, pts, **params) -> FieldSample:
    """Evaluate a known closed form directly (no differentiation)."""
    pts = as_points(pts)
    E, B = closed_form_exprs(family_id, **params)
    return FieldSample(pts, E(pts), B(pts))


# ---------------------------------------------------------------------------
# Maxwell check

def _div_curl(jac):
    div = jac[:, 1, 0] + jac[:, 2, 1] + jac[:, 3, 2]
    curl = np.stack([jac[:, 2, 2] - jac[:, 3, 1], jac[:, 3, 0] - jac[:, 1, 2], jac[:, 1, 1] - jac[:, 2, 0]], axis=-1)
    return div, curl


def maxwell_vacuum_check(E, B, pts, scheme: str = "exact") -> dict:
    """Largest source-free Maxwell residuals over ``pts``.

    ``E`` and ``B`` are symbolic fields (exact derivatives) or callables
    ``pts -> (n, 3)`` (fourth-order differences).  Each entry has the
    absolute maximum and its ratio to the largest field derivative.
    """
    pts = as_points(pts)
    if scheme == "exact" and not (isinstance(E, SymbolicField) and isinstance(B, SymbolicField)):
        scheme = "fd4"
    _, je = values_and_jacobian(E, pts, scheme)
    _, jb = values_and_jacobian(B, pts, scheme)
    je, jb = je.real, jb.real
    div_e, curl_e = _div_curl(je)
    div_b, curl_b = _div_curl(jb)
    terms = {
        "div_E": np.abs(div_e),
        "div_B": np.abs(div_b),
        "faraday": np.linalg.norm(curl_e + jb[:, 0, :], axis=-1),
        "ampere": np.linalg.norm(curl_b - je[:, 0, :], axis=-1),
    }
    scale = max(float(np.max(np.abs(je))), float(np.max(np.abs(jb))), 1e-300)
    return {k: {"max": float(np.max(v)), "relative": float(np.max(v) / scale)} for k, v in terms.items()}


# ---------------------------------------------------------------------------
# transverse profile

def profile_field(f, q: float, pts) -> FieldSample:
    """Magnetic field along z that shapes the transverse profile ``f(x, y)``."""
    f = as_field(f)
    if not f.depends_only_on(("x", "y")):
        raise ValueError("profile may only depend on x and y")
    pts = as_points(pts)
    fv = np.real(f(pts))
    if np.any(fv <= 0):
        raise NonPositiveProfile("profile must be positive at every point")
    fx, fy = f.diff("x"), f.diff("y")
    lap = fx.diff("x") + fy.diff("y")
    bz = -(np.real(fx(pts)) ** 2 + np.real(fy(pts)) ** 2 - fv * np.real(lap(pts))) / (q * fv ** 2)
    zeros = np.zeros((len(pts), 3))
    B = zeros.copy()
    B[:, 2] = bz
    return FieldSample(pts, zeros, B)
