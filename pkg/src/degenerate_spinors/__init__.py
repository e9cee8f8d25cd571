"""Degenerate solutions of the Dirac and Weyl equations.

Spinor families with their 4-potentials, numerical potential inference,
electromagnetic fields, residual checks, Weyl trajectories and a channel
array simulator.
"""
__version__ = "0.1.0"

from . import algebra, degeneracy, device, dynamics, families, fields, scalar, symbolic, verify  # noqa: E402
from .families import FamilyDescriptor  # noqa: E402
from .scalar import ScalarField  # noqa: E402

__all__ = ["algebra", "degeneracy", "device", "dynamics", "families", "fields", "scalar", "symbolic",
           "verify", "FamilyDescriptor", "ScalarField", "__version__"]
