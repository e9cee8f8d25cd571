"""Trajectories of localized Weyl particles steered by electric fields.

Writes one CSV per figure preset to the directory given on the command line
(default: current directory) and prints the field that produces each motion.
"""
import pathlib
import sys

import numpy as np

from degenerate_spinors import dynamics


def main(out="."):
    out = pathlib.Path(out)
    out.mkdir(parents=True, exist_ok=True)
    for name, preset in dynamics.PRESETS.items():
        tr = dynamics.preset_trajectory(name)
        E = dynamics.field_schedule_from_angles(preset["theta_t"], preset["phi_t"])(tr.t[:1])[0]
        tr.to_csv(out / f"{name}.csv")
        print(f"{name}: theta={preset['theta_t']}, phi={preset['phi_t']}, q*E={np.round(E, 12)}, "
              f"final r={np.round(tr.r[-1], 4)}, max |speed-1|={np.max(np.abs(tr.speeds - 1)):.1e}")


if __name__ == "__main__":
    main(*sys.argv[1:])
