"""Infinitely many potentials for one spinor.

Builds the tunneling spinor, recovers its free direction from the pointwise
linear system, then checks the Dirac residual under a few shifted
potentials b = a + s * theta.
"""
import math

import numpy as np

from degenerate_spinors import degeneracy, families, fields, scalar, verify


def main():
    desc = families.tunneling(xi=1.1, m=1.0)
    pts = desc.sample_points(5, seed=0)
    result = degeneracy.infer_potentials(desc.spinor, desc.mass, pts[0])
    print("null space dimension:", result.nullity)
    print("inferred direction:  ", np.round(result.normalized_directions()[0], 12))
    print("closed form:         ", [1, 0, round(math.sin(1.1), 12), round(-math.cos(1.1), 12)])

    for text in ("0", "x*t", "exp(-(x**2 + y**2))*sin(3*t)"):
        s = scalar.ScalarField.parse(text)
        b = degeneracy.extend_potential(desc.potential, s, desc.direction)
        res = verify.family_residual(desc, b, n=100, seed=1).max_relative
        E = fields.em_fields(b, desc.charge, pts).E
        print(f"s = {text:32s} residual {res:.1e}   |E| at first point {np.linalg.norm(E[0]):.3f}")


if __name__ == "__main__":
    main()
