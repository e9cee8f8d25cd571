"""Pauli and Dirac-representation gamma matrices, spinor bilinears, spin.

All matrices are dense complex arrays with exact small-integer / imaginary
unit entries.  Returned arrays are read-only.
"""
import numpy as np

from .errors import NonHermitianResidual


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


SIGMA = (
    _frozen([[1, 0], [0, 1]]),
    _frozen([[0, 1], [1, 0]]),
    _frozen([[0, -1j], [1j, 0]]),
    _frozen([[1, 0], [0, -1]]),
)

_Z2 = np.zeros((2, 2), dtype=complex)
_GAMMA = [_frozen(np.block([[SIGMA[0], _Z2], [_Z2, -SIGMA[0]]]))]
_GAMMA += [_frozen(np.block([[_Z2, s], [-s, _Z2]])) for s in SIGMA[1:]]
_GAMMA5 = _frozen(1j * _GAMMA[0] @ _GAMMA[1] @ _GAMMA[2] @ _GAMMA[3])

METRIC = _frozen(np.diag([1.0, -1.0, -1.0, -1.0]))
IDENTITY4 = _frozen(np.eye(4))

# gamma = gamma^0 + gamma^0 gamma^5: Psi^dagger gamma Psi vanishes on degenerate spinors
DEGENERACY_MATRIX = _frozen(_GAMMA[0] + _GAMMA[0] @ _GAMMA5)


def pauli(index: int) -> np.ndarray:
    """Pauli matrix sigma^index, index 0..3 (sigma^0 = identity)."""
    return SIGMA[index]


def gamma(index) -> np.ndarray:
    """Contravariant gamma matrix in the Dirac representation.

    ``index`` is 0..3, or 5 / ``"five"`` for gamma^5 = i g0 g1 g2 g3.
    """
    if index in (5, "5", "five"):
        return _GAMMA5
    if index not in (0, 1, 2, 3):
        raise ValueError(f"gamma index must be 0..3 or 5, got {index!r}")
    return _GAMMA[index]


GAMMA = tuple(_GAMMA)
GAMMA5 = _GAMMA5

# Psi^T M Psi forms entering the closed-form degeneracy direction
_TRANSPOSE_KINDS = {
    "T_g2": _GAMMA[2],
    "T_g0g1g2": _frozen(_GAMMA[0] @ _GAMMA[1] @ _GAMMA[2]),
    "T_g0": _GAMMA[0],
    "T_g0g2g3": _frozen(_GAMMA[0] @ _GAMMA[2] @ _GAMMA[3]),
}
BILINEAR_KINDS = ("deg_criterion", "bar_g5") + tuple(_TRANSPOSE_KINDS)


def bilinear(psi, kind: str):
    """Spinor bilinear of the given kind.

    ``deg_criterion``  Psi^dagger (g0 + g0 g5) Psi
    ``bar_g5``         Psi-bar g5 Psi
    ``T_*``            Psi^T M Psi (no conjugation) for M in the name

    ``psi`` may carry leading batch axes; the last axis has length 4.
    """
    psi = np.asarray(psi, dtype=complex)
    if kind == "deg_criterion":
        return np.einsum("...i,ij,...j->...", psi.conj(), DEGENERACY_MATRIX, psi)
    if kind == "bar_g5":
        return np.einsum("...i,ij,...j->...", psi.conj(), _GAMMA[0] @ _GAMMA5, psi)
    try:
        m = _TRANSPOSE_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown bilinear kind {kind!r}") from None
    return np.einsum("...i,ij,...j->...", psi, m, psi)


_SPIN_OPS = (
    _frozen(0.5j * _GAMMA[2] @ _GAMMA[3]),
    _frozen(0.5j * _GAMMA[3] @ _GAMMA[1]),
    _frozen(0.5j * _GAMMA[1] @ _GAMMA[2]),
)


def spin_projections(psi, tol: float = 1e-10) -> np.ndarray:
    """Expected spin projections (S_x, S_y, S_z), unnormalized.

    Raises NonHermitianResidual when an imaginary part exceeds
    ``tol * |Psi|^2``.
    """
    psi = np.asarray(psi, dtype=complex)
    vals = np.stack([np.einsum("...i,ij,...j->...", psi.conj(), op, psi) for op in _SPIN_OPS], axis=-1)
    norm2 = np.sum(np.abs(psi) ** 2, axis=-1)
    if np.any(np.abs(vals.imag) > tol * norm2[..., None]):
        raise NonHermitianResidual("spin projection has a non-negligible imaginary part")
    return vals.real


def slash(a) -> np.ndarray:
    """a_mu gamma^mu for a covariant 4-vector (batch axes allowed)."""
    a = np.asarray(a)
    return np.einsum("...m,mij->...ij", a, np.stack(_GAMMA))


def anticommutator(a, b) -> np.ndarray:
    return a @ b + b @ a
