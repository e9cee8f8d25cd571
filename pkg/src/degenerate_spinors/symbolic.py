"""Vector-valued fields of spacetime with exact derivatives.

Spinors, 4-potentials and degeneracy directions are held as tuples of sympy
expressions in ``t, x, y, z`` and lambdified on demand.  Points are arrays of
shape ``(n, 4)`` with columns ``t, x, y, z``.  Plain callables
``pts -> (n, k)`` are accepted wherever a field is expected; for those,
derivatives fall back to central differences.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence

import numpy as np
import sympy as sp
from scipy.stats import qmc

from .errors import DerivativeUnavailable

T, X, Y, Z = sp.symbols("t x y z", real=True)
COORDS = (T, X, Y, Z)
SCHEMES = ("exact", "fd2", "fd4")

DEFAULT_BOX = (2.0, 2.0, 2.0, 2.0)


def as_points(pts) -> np.ndarray:
    """Coerce one point or a stack of points to a float ``(n, 4)`` array."""
    arr = np.asarray(pts, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 4:
        raise ValueError(f"points must have shape (n, 4), got {arr.shape}")
    return arr


class SymbolicField:
    """A k-component field given by sympy expressions of (t, x, y, z)."""

    def __init__(self, exprs: Sequence, real: bool = False):
        self.exprs = tuple(sp.sympify(e) for e in exprs)
        self.real = real

    def __len__(self):
        return len(self.exprs)

    def __repr__(self):
        return f"SymbolicField({len(self.exprs)} components, real={self.real})"

    @cached_property
    def _value_fn(self):
        return sp.lambdify(COORDS, list(self.exprs), modules=["numpy", "scipy"], cse=True)

    @cached_property
    def jacobian_exprs(self) -> tuple:
        """``d expr_k / d coord_mu`` as a (4, k) nested tuple."""
        return tuple(tuple(sp.diff(e, c) for e in self.exprs) for c in COORDS)

    @cached_property
    def _jac_fn(self):
        flat = [e for row in self.jacobian_exprs for e in row]
        return sp.lambdify(COORDS, flat, modules=["numpy", "scipy"], cse=True)

    def _stack(self, values, n):
        dtype = float if self.real else complex
        out = np.empty((n, len(values)), dtype=complex)
        for i, v in enumerate(values):
            out[:, i] = np.broadcast_to(np.asarray(v, dtype=complex), (n,))
        if dtype is float:
            return out.real.copy()
        return out

    def __call__(self, pts) -> np.ndarray:
        pts = as_points(pts)
        values = self._value_fn(*pts.T)
        return self._stack(values, len(pts))

    def jacobian(self, pts) -> np.ndarray:
        """Exact derivatives, shape ``(n, 4, k)`` indexed ``[point, mu, comp]``."""
        pts = as_points(pts)
        k = len(self.exprs)
        flat = self._stack(self._jac_fn(*pts.T), len(pts))
        return flat.reshape(len(pts), 4, k)

    def __add__(self, other):
        if isinstance(other, SymbolicField):
            return SymbolicField([a + b for a, b in zip(self.exprs, other.exprs)],
                                 real=self.real and other.real)
        return NotImplemented

    def scaled(self, factor) -> "SymbolicField":
        return SymbolicField([factor * e for e in self.exprs], real=self.real)


def constant_field(values, real=True) -> SymbolicField:
    return SymbolicField([sp.Float(v) if np.isrealobj(v) else sp.sympify(complex(v)) for v in values],
                         real=real)


def evaluate(field, pts) -> np.ndarray:
    pts = as_points(pts)
    out = np.asarray(field(pts))
    if out.ndim == 1:
        out = out[:, None]
    return out


def finite_difference_jacobian(field: Callable, pts, scheme: str = "fd2", step=None) -> np.ndarray:
    """Central-difference derivatives, shape ``(n, 4, k)``.

    ``step`` may be a scalar or per-point array; the default is
    ``1e-5 * max(1, |coordinate|)`` per axis.
    """
    pts = as_points(pts)
    if step is None:
        h = 1e-5 * np.maximum(1.0, np.abs(pts))
    else:
        h = np.broadcast_to(np.asarray(step, dtype=float), pts.shape) if np.ndim(step) else np.full(pts.shape, float(step))
    cols = []
    for mu in range(4):
        e = np.zeros_like(pts)
        e[:, mu] = h[:, mu]
        hm = h[:, mu][:, None]
        if scheme == "fd2":
            d = (evaluate(field, pts + e) - evaluate(field, pts - e)) / (2 * hm)
        elif scheme == "fd4":
            d = (-evaluate(field, pts + 2 * e) + 8 * evaluate(field, pts + e)
                 - 8 * evaluate(field, pts - e) + evaluate(field, pts - 2 * e)) / (12 * hm)
        else:
            raise ValueError(f"unknown finite-difference scheme {scheme!r}")
        cols.append(d)
    return np.stack(cols, axis=1)


def values_and_jacobian(field, pts, scheme: str = "exact", step=None):
    """Field values ``(n, k)`` and derivatives ``(n, 4, k)`` under ``scheme``."""
    pts = as_points(pts)
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}")
    values = evaluate(field, pts)
    if scheme == "exact":
        if not isinstance(field, SymbolicField):
            raise DerivativeUnavailable("exact derivatives need a SymbolicField")
        return values, field.jacobian(pts)
    return values, finite_difference_jacobian(field, pts, scheme, step)


def sample_points(n: int = 100, seed: int = 0, box=DEFAULT_BOX) -> np.ndarray:
    """Scrambled Halton points filling ``|t|<=box[0]``, ..., ``|z|<=box[3]``."""
    box = np.asarray(box, dtype=float)
    unit = qmc.Halton(d=4, scramble=True, seed=seed).random(n)
    return (2.0 * unit - 1.0) * box
