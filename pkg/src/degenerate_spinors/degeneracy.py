"""Degeneracy criterion, degeneracy directions and potential inference.

The equation ``i g^mu d_mu Psi + a_mu g^mu Psi - m Psi = 0`` is linear in the
real unknowns ``a_mu``.  At each point it becomes eight real equations in four
unknowns, solved by SVD: the minimum-norm solution is the particular
potential and the right singular vectors with negligible singular values span
the directions along which the potential can be shifted freely.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import GAMMA, GAMMA5, SIGMA, bilinear
from .errors import NoSolution, NonRealPotential, SingularDenominator, ZeroSpinor
from .scalar import as_field
from .symbolic import SymbolicField, as_points, evaluate, values_and_jacobian

CRITERION_TOL = 1e-10
NONDEGENERATE_TOL = 1e-6
NULL_RTOL = 1e-8
SOLUTION_RTOL = 1e-6
EQUATIONS = ("dirac", "weyl+", "weyl-")

_G = np.stack(GAMMA)
_S = np.stack(SIGMA)


def _norm2(psi):
    return np.sum(np.abs(psi) ** 2, axis=-1)


def _spinor_values(psi, pts):
    if pts is None:
        return np.asarray(psi, dtype=complex)
    return evaluate(psi, pts).astype(complex)


# ---------------------------------------------------------------------------
# criterion

def criterion(psi, pts=None) -> np.ndarray:
    """Psi^dagger (g0 + g0 g5) Psi (complex in general)."""
    return bilinear(_spinor_values(psi, pts), "deg_criterion")


def is_degenerate(psi, pts=None) -> str:
    """Classify a spinor over a point set.

    Returns ``"degenerate"`` when ``|Psi^dagger gamma Psi| <= 1e-10 |Psi|^2``
    everywhere, ``"nondegenerate"`` when it exceeds ``1e-6 |Psi|^2``
    everywhere and ``"indeterminate"`` otherwise.  ``psi`` is either a field
    evaluated on ``pts`` or an ``(n, 4)`` array of values.
    """
    values = np.atleast_2d(_spinor_values(psi, pts))
    if len(values) < 10:
        raise ValueError("is_degenerate needs at least 10 points")
    c = np.abs(criterion(values))
    n2 = _norm2(values)
    if np.all(c <= CRITERION_TOL * n2):
        return "degenerate"
    if np.all(c > NONDEGENERATE_TOL * n2):
        return "nondegenerate"
    return "indeterminate"


# ---------------------------------------------------------------------------
# pointwise linear system

def _realify(cols, rhs):
    """Stack real and imaginary parts: (n, k, 4) complex -> (n, 2k, 4) real."""
    a = np.concatenate([cols.real, cols.imag], axis=-2)
    b = np.concatenate([rhs.real, rhs.imag], axis=-1)
    return a, b


def linear_system(values, jac=None, m: float = 0.0, equation: str = "dirac"):
    """Real matrices ``A (n, 2k, 4)`` and right-hand sides ``b (n, 2k)``.

    ``A a = b`` is the governing equation at each point.  ``jac`` holds
    derivatives ``(n, 4, k)``; when omitted only ``A`` is meaningful.
    """
    values = np.atleast_2d(np.asarray(values, dtype=complex))
    n, k = values.shape
    if jac is None:
        jac = np.zeros((n, 4, k), dtype=complex)
    if equation == "dirac":
        if k != 4:
            raise ValueError("Dirac spinors have 4 components")
        cols = np.einsum("mij,nj->nim", _G, values)
        rhs = -1j * np.einsum("mij,nmj->ni", _G, jac) + m * values
    elif equation == "weyl+":
        if k != 2:
            raise ValueError("Weyl spinors have 2 components")
        cols = np.einsum("mij,nj->nim", _S, values)
        rhs = -1j * np.einsum("mij,nmj->ni", _S, jac)
    elif equation == "weyl-":
        if k != 2:
            raise ValueError("Weyl spinors have 2 components")
        cols = -np.einsum("mij,nj->nim", _S, values)
        cols[:, :, 0] += 2 * values
        rhs = -(2j * jac[:, 0, :] - 1j * np.einsum("mij,nmj->ni", _S, jac))
    else:
        raise ValueError(f"equation must be one of {EQUATIONS}")
    return _realify(cols, rhs)


@dataclass
class InferenceResult:
    """Outcome of potential inference at one point."""

    particular: np.ndarray
    nullspace_basis: list = field(default_factory=list)
    residual_floor: float = 0.0
    singular_values: np.ndarray = field(default_factory=lambda: np.zeros(4))
    scale: float = 0.0
    point: np.ndarray | None = None

    @property
    def nullity(self) -> int:
        return len(self.nullspace_basis)

    def normalized_directions(self) -> list:
        """Null vectors rescaled so the time component is 1 (when possible)."""
        out = []
        for v in self.nullspace_basis:
            out.append(v / v[0] if abs(v[0]) > 1e-12 else v)
        return out

    def to_dict(self) -> dict:
        return {
            "point": None if self.point is None else [float(v) for v in self.point],
            "particular": [float(v) for v in self.particular],
            "nullspace_basis": [[float(v) for v in b] for b in self.nullspace_basis],
            "residual_floor": float(self.residual_floor),
            "singular_values": [float(v) for v in self.singular_values],
            "scale": float(self.scale),
        }


def solve_systems(a, b, values, raise_on_failure=True, points=None) -> list:
    """SVD solve of stacked systems; one InferenceResult per point."""
    u, s, vh = np.linalg.svd(a)
    results = []
    for i in range(len(a)):
        smax = s[i, 0]
        keep = s[i] > NULL_RTOL * smax if smax > 0 else np.zeros(4, bool)
        coef = (u[i, :, :4].T @ b[i])
        x = vh[i][keep].T @ (coef[keep] / s[i][keep])
        floor = float(np.linalg.norm(a[i] @ x - b[i]))
        scale = float(np.linalg.norm(b[i]) + np.linalg.norm(values[i]))
        if raise_on_failure and floor > SOLUTION_RTOL * scale:
            raise NoSolution(f"no real potential: residual floor {floor:.3e} exceeds "
                             f"{SOLUTION_RTOL:g} x scale {scale:.3e}", residual_floor=floor, scale=scale)
        null = [_canonical_sign(v) for v in vh[i][~keep]]
        results.append(InferenceResult(x, null, floor, s[i].copy(), scale,
                                       None if points is None else points[i].copy()))
    return results


def _canonical_sign(v):
    j = int(np.argmax(np.abs(v) > 1e-12))
    return v if v[j] >= 0 else -v


def infer_potentials(psi, m: float, pts, equation: str = "dirac", scheme: str = "exact",
                     step=None, raise_on_failure: bool = True):
    """Infer every real potential compatible with ``psi``.

    ``pts`` is one point ``(4,)`` (a single :class:`InferenceResult` is
    returned) or ``(n, 4)`` (a list is returned).  Raises
    :class:`~degenerate_spinors.errors.NoSolution` when the least-squares
    residual exceeds ``1e-6 * (|b| + |Psi|)``.
    """
    single = np.ndim(pts) == 1
    pts = as_points(pts)
    values, jac = values_and_jacobian(psi, pts, scheme, step)
    a, b = linear_system(values, jac, m, equation)
    out = solve_systems(a, b, values, raise_on_failure, pts)
    return out[0] if single else out


def nullspace_directions(values, equation: str = "dirac") -> list:
    """Null space of the pointwise system; needs only spinor values."""
    a, _ = linear_system(values, None, 0.0, equation)
    b = np.zeros(a.shape[:2])
    return [r.normalized_directions() for r in solve_systems(a, b, np.atleast_2d(values), False)]


# ---------------------------------------------------------------------------
# closed-form directions

@dataclass
class DirectionResult:
    """Degeneracy direction with its cross-check against the null space."""

    direction: np.ndarray
    closed_form: np.ndarray
    flagged: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.direction, dtype=dtype)


def _discard_imag(v, scale, what):
    if np.any(np.abs(v.imag) > 1e-10 * np.maximum(1.0, scale)[..., None]):
        raise NonRealPotential(f"{what} has a non-negligible imaginary part")
    return v.real


def theta_direction(psi, validate: bool = True) -> DirectionResult:
    """Closed-form degeneracy direction of a Dirac spinor.

    Uses ``Psi^T M Psi`` ratios with denominator ``Psi^T g2 Psi``.  With
    ``validate`` the result is compared with the numerical null space; where
    they disagree by more than 1e-8 the point is flagged and the null-space
    direction is returned.
    """
    values = np.asarray(psi, dtype=complex)
    batch = values.ndim == 2
    values = np.atleast_2d(values)
    n2 = _norm2(values)
    den = bilinear(values, "T_g2")
    if np.any(np.abs(den) <= CRITERION_TOL * n2):
        raise SingularDenominator("Psi^T g2 Psi vanishes")
    theta = np.stack([
        np.ones(len(values), dtype=complex),
        -bilinear(values, "T_g0g1g2") / den,
        -bilinear(values, "T_g0") / den,
        bilinear(values, "T_g0g2g3") / den,
    ], axis=-1)
    theta = _discard_imag(theta, np.max(np.abs(theta), axis=-1), "theta")
    out, flagged = theta.copy(), np.zeros(len(values), dtype=bool)
    if validate:
        for i, dirs in enumerate(nullspace_directions(values)):
            if len(dirs) != 1 or not np.allclose(dirs[0], theta[i], rtol=0, atol=1e-8 * max(1.0, np.max(np.abs(theta[i])))):
                flagged[i] = True
                if len(dirs) == 1:
                    out[i] = dirs[0]
    if not batch:
        return DirectionResult(out[0], theta[0], flagged[0])
    return DirectionResult(out, theta, flagged)


def phi_direction(psi, helicity: str = "positive") -> np.ndarray:
    """Degeneracy direction (1, -+ psi^dagger sigma psi / psi^dagger psi) of a Weyl spinor."""
    values = np.asarray(psi, dtype=complex)
    n2 = _norm2(values)
    if np.any(n2 <= 0):
        raise ZeroSpinor("psi is zero")
    if helicity not in ("positive", "negative"):
        raise ValueError("helicity must be 'positive' or 'negative'")
    sign = -1.0 if helicity == "positive" else 1.0
    spatial = np.einsum("...i,kij,...j->...k", values.conj(), _S[1:], values).real / n2[..., None]
    return np.concatenate([np.ones(values.shape[:-1] + (1,)), sign * spatial], axis=-1)


# ---------------------------------------------------------------------------
# unique potential of nondegenerate spinors

_METRIC = np.array([1.0, -1.0, -1.0, -1.0])


def blj_potential(psi, pts, scheme: str = "exact", form: str = "derived", step=None) -> np.ndarray:
    """Unique covariant potential of a nondegenerate spinor, shape ``(n, 4)``.

    ``form="derived"`` uses
    ``a^mu = -(i/2)[bar(dslash Psi) g5 g^mu Psi + bar(Psi) g5 g^mu dslash Psi] / (bar(Psi) g5 Psi)``
    obtained from the equation and its adjoint.  ``form="printed"`` uses
    ``(i/2)[bar(Psi) g5 g^mu dslash Psi - bar(dslash Psi) g5 g^mu Psi] / (bar(Psi) g5 Psi)``.
    """
    single = np.ndim(pts) == 1
    pts = as_points(pts)
    values, jac = values_and_jacobian(psi, pts, scheme, step)
    values = values.astype(complex)
    n2 = _norm2(values)
    den = bilinear(values, "bar_g5")
    if np.any(np.abs(den) <= CRITERION_TOL * n2):
        raise SingularDenominator("bar(Psi) g5 Psi vanishes")
    dslash = np.einsum("mij,nmj->ni", _G, jac)
    bar_psi = values.conj() @ GAMMA[0]
    bar_d = dslash.conj() @ GAMMA[0]
    g5g = np.einsum("ij,mjk->mik", GAMMA5, _G)
    left = np.einsum("ni,mij,nj->nm", bar_d, g5g, values)
    right = np.einsum("ni,mij,nj->nm", bar_psi, g5g, dslash)
    if form == "derived":
        upper = -0.5j * (left + right) / den[:, None]
    elif form == "printed":
        upper = 0.5j * (right - left) / den[:, None]
    else:
        raise ValueError("form must be 'derived' or 'printed'")
    a = upper * _METRIC
    scale = np.linalg.norm(dslash, axis=-1) / np.sqrt(n2)
    if np.any(np.linalg.norm(a.imag, axis=-1) > 1e-8 * np.maximum(np.linalg.norm(a.real, axis=-1), scale)):
        raise NonRealPotential("potential has a non-negligible imaginary part")
    return a.real[0] if single else a.real


# ---------------------------------------------------------------------------
# extension along a direction

def extend_potential(a, s, direction):
    """``b = a + s * direction``.

    With symbolic ``a`` and ``direction`` and a scalar-field ``s`` the result
    is a :class:`SymbolicField` with exact derivatives; otherwise a plain
    callable of points.
    """
    s_field = as_field(s)
    if not s_field.is_real:
        raise ValueError("s must be real-valued")
    if isinstance(a, SymbolicField) and isinstance(direction, SymbolicField):
        se = s_field.to_sympy()
        return SymbolicField([ai + se * di for ai, di in zip(a.exprs, direction.exprs)], real=True)

    def extended(pts):
        pts = as_points(pts)
        return evaluate(a, pts) + np.real(s_field(pts))[:, None] * evaluate(direction, pts)

    return extended

