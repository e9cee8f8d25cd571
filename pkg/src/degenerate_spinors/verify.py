"""Residuals of the Dirac and Weyl equations on candidate solutions.

Relative residuals divide ``|R|`` by the sum of the norms of the equation's
terms, so evanescent regions with tiny ``|Psi|`` are not penalized.  Where
every term vanishes the absolute residual is reported instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp

from .algebra import GAMMA, SIGMA
from .degeneracy import extend_potential
from .errors import ConstructionUnavailable, DegenerateSlope
from .families import FamilyDescriptor, helicity_basis
from .scalar import SPACETIME, as_field, random_field
from .symbolic import COORDS, SymbolicField, as_points, evaluate, sample_points, values_and_jacobian

_G = np.stack(GAMMA)
_S = np.stack(SIGMA)
SLOPE_FLOOR = 1e-13


@dataclass
class ResidualReport:
    """Per-point residual norms of one run."""

    points: np.ndarray
    absolute: np.ndarray
    relative: np.ndarray
    scheme: str = "exact"
    family: str | None = None
    seed: int | None = None
    convergence_order: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def max_relative(self) -> float:
        return float(np.max(self.relative))

    @property
    def median_relative(self) -> float:
        return float(np.median(self.relative))

    def passed(self, tol: float = 1e-8) -> bool:
        return self.max_relative <= tol

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "seed": self.seed,
            "scheme": self.scheme,
            "points": [[float(v) for v in p] for p in self.points],
            "absolute": [float(v) for v in self.absolute],
            "relative": [float(v) for v in self.relative],
            "max_relative": self.max_relative,
            "median_relative": self.median_relative,
            "convergence_order": self.convergence_order,
        }
        out.update(self.extra)
        return out


def _relative(residual, *terms):
    absolute = np.linalg.norm(residual, axis=-1)
    scale = sum(np.linalg.norm(t, axis=-1) for t in terms)
    relative = np.where(scale > 0, absolute / np.where(scale > 0, scale, 1.0), absolute)
    return absolute, relative


def dirac_residual(psi, a, m: float, pts, scheme: str = "exact", step=None,
                   family: str | None = None, seed: int | None = None) -> ResidualReport:
    """Residual of ``i g^mu d_mu Psi + a_mu g^mu Psi - m Psi``."""
    pts = as_points(pts)
    values, jac = values_and_jacobian(psi, pts, scheme, step)
    pot = evaluate(a, pts).real
    kinetic = 1j * np.einsum("mij,nmj->ni", _G, jac)
    coupling = np.einsum("nm,mij,nj->ni", pot, _G, values)
    mass = m * values
    absolute, relative = _relative(kinetic + coupling - mass, kinetic, coupling, mass)
    return ResidualReport(pts, absolute, relative, scheme, family, seed)


def weyl_residual(psi, a, pts, form: str = "positive", scheme: str = "exact", step=None,
                  family: str | None = None, seed: int | None = None) -> ResidualReport:
    """Residual of the positive or negative helicity Weyl equation."""
    pts = as_points(pts)
    values, jac = values_and_jacobian(psi, pts, scheme, step)
    pot = evaluate(a, pts).real
    kinetic = 1j * np.einsum("mij,nmj->ni", _S, jac)
    coupling = np.einsum("nm,mij,nj->ni", pot, _S, values)
    if form == "positive":
        pass
    elif form == "negative":
        kinetic = 2j * jac[:, 0, :] - kinetic
        coupling = 2 * pot[:, :1] * values - coupling
    else:
        raise ValueError("form must be 'positive' or 'negative'")
    absolute, relative = _relative(kinetic + coupling, kinetic, coupling)
    return ResidualReport(pts, absolute, relative, scheme, family, seed)


def convergence_order(residuals) -> float:
    """Mean Richardson slope ``log2(R(h) / R(h/2))`` over successive halvings."""
    r = np.asarray(residuals, dtype=float)
    if len(r) < 3:
        raise ValueError("need residuals at three or more step sizes")
    if np.any(r <= SLOPE_FLOOR):
        raise DegenerateSlope("residuals are at the rounding floor")
    return float(np.mean(np.log2(r[:-1] / r[1:])))


# ---------------------------------------------------------------------------
# family checks

def family_residual(desc: FamilyDescriptor, potential=None, pts=None, n: int = 100, seed: int | None = None,
                    scheme: str = "exact", step=None) -> ResidualReport:
    """Residual of a family under its base potential or a supplied one."""
    if seed is None:
        seed = 0 if desc.seed is None else desc.seed
    if pts is None:
        pts = desc.sample_points(n, seed)
    a = desc.potential if potential is None else potential
    if desc.equation == "dirac":
        return dirac_residual(desc.spinor, a, desc.mass, pts, scheme, step, desc.family_id, seed)
    form = "positive" if desc.equation == "weyl+" else "negative"
    return weyl_residual(desc.spinor, a, pts, form, scheme, step, desc.family_id, seed)


def extension_residuals(desc: FamilyDescriptor, n_shifts: int = 20, n: int = 100, seed: int = 0,
                        scheme: str = "exact", shifts=None) -> list:
    """Residuals under ``a + s * direction`` for random catalog functions ``s``."""
    rng = np.random.default_rng(seed)
    if shifts is None:
        shifts = [random_field(rng, SPACETIME) for _ in range(n_shifts)]
    reports = []
    for s in shifts:
        b = extend_potential(desc.potential, s, desc.direction)
        report = family_residual(desc, b, n=n, seed=seed, scheme=scheme)
        report.extra["shift"] = as_field(s).to_dict()
        reports.append(report)
    return reports


def convergence_study(desc: FamilyDescriptor, scheme: str = "fd2", steps=(4e-2, 2e-2, 1e-2, 5e-3),
                      n: int = 50, seed: int = 0) -> ResidualReport:
    """Finite-difference residuals at halving steps with their observed order."""
    pts = desc.sample_points(n, seed)
    runs = [family_residual(desc, pts=pts, scheme=scheme, step=h) for h in steps]
    maxima = [r.max_relative for r in runs]
    report = runs[-1]
    report.seed = seed
    report.convergence_order = convergence_order(maxima)
    report.extra["steps"] = list(steps)
    report.extra["max_relative_by_step"] = maxima
    return report


# ---------------------------------------------------------------------------
# degeneracy breaking by mass

@dataclass
class ScanRow:
    e: float
    normalized_residual: float
    reference_factor: float
    species: str

    def to_dict(self) -> dict:
        return {"e": self.e, "normalized_residual": self.normalized_residual,
                "reference_factor": self.reference_factor, "species": self.species}


def massive_helicity_spinor(e: float, theta: float = 0.0, phi: float = 0.0, species: str = "particle",
                            energy: float = 1.0):
    """Massive plane wave of positive helicity with rest-to-total energy ratio ``e``.

    Returns ``(spinor, h, mass)`` where the spinor is ``u exp(i h)``, a free
    solution of the massive equation with zero potential.
    """
    if not 0 <= e < 1:
        raise ValueError("e must lie in [0, 1)")
    m = e * energy
    p = math.sqrt(energy ** 2 - m ** 2)
    u_up, _ = helicity_basis(theta, phi)
    chi = u_up[:2] * math.sqrt(2)
    big, small = math.sqrt(energy + m), math.sqrt(energy - m)
    n = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    nr = sum(sp.Float(k) * c for k, c in zip(n, COORDS[1:]))
    if species == "particle":
        amp = np.concatenate([big * chi, small * chi])
        h = -sp.Float(energy) * COORDS[0] + sp.Float(p) * nr
    elif species == "antiparticle":
        amp = np.concatenate([small * chi, big * chi])
        h = sp.Float(energy) * COORDS[0] - sp.Float(p) * nr
    else:
        raise ValueError("species must be 'particle' or 'antiparticle'")
    phase = sp.exp(sp.I * h)
    spinor = SymbolicField([(sp.Float(c.real) + sp.I * sp.Float(c.imag)) * phase for c in amp])
    return spinor, h, m


def degeneracy_breaking_scan(e_values, s=None, theta: float = 0.0, phi: float = 0.0,
                             species: str = "particle", n: int = 50, seed: int = 0) -> list:
    """Normalized massless residual of massive spinors under the degenerate potential family.

    For each ``e`` the massive plane wave is checked against its own
    equation, then the massless residual under ``b = dh + s * kappa`` is
    divided by ``|s| |Psi|``.  The factor ``1 - sqrt((1 - e) / (1 + e))`` is
    reported alongside for comparison.
    """
    e_values = [float(e) for e in e_values]
    if any(b < a for a, b in zip(e_values, e_values[1:])):
        raise ValueError("e values must be sorted ascending")
    s = as_field(1.0 if s is None else s)
    pts = sample_points(n, seed)
    s_vals = np.real(s(pts)) * np.ones(len(pts))
    mask = np.abs(s_vals) > 1e-8
    kappa = [1.0, -math.sin(theta) * math.cos(phi), -math.sin(theta) * math.sin(phi), -math.cos(theta)]
    rows = []
    for e in e_values:
        spinor, h, m = massive_helicity_spinor(e, theta, phi, species)
        zero = SymbolicField([0, 0, 0, 0], real=True)
        base = dirac_residual(spinor, zero, m, pts)
        norm = np.linalg.norm(evaluate(spinor, pts), axis=-1)
        # plain relative residual is 0/0 for e = 0, so compare with |Psi| E
        if np.max(base.absolute / norm) > 1e-10:
            raise ConstructionUnavailable(f"massive spinor fails its own equation at e={e}")
        grad = SymbolicField([sp.diff(h, c) for c in COORDS], real=True)
        b = extend_potential(grad, s, SymbolicField([sp.Float(k) for k in kappa], real=True))
        res = dirac_residual(spinor, b, 0.0, pts)
        ratio = res.absolute[mask] / (np.abs(s_vals[mask]) * norm[mask])
        rows.append(ScanRow(e, float(np.max(ratio)), 1 - math.sqrt((1 - e) / (1 + e)), species))
    return rows
