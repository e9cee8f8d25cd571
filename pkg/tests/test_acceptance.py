"""End-to-end acceptance criteria; each test records one PASS/FAIL line."""
import math
import subprocess
import sys
import time

import numpy as np
import pytest
import sympy as sp
from scipy import constants

from conftest import ACCEPTANCE_RESULTS
from degenerate_spinors import algebra, degeneracy, device, dynamics, families, fields, scalar, verify
from degenerate_spinors.symbolic import COORDS, SymbolicField, sample_points

T, X, Y, Z = COORDS
INSTANCES = families.default_instances()


def record(number, title, ok, detail):
    ACCEPTANCE_RESULTS[number] = (bool(ok), title, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
    assert ok, detail


def test_01_family_residuals():
    start = time.perf_counter()
    worst = {fid: verify.family_residual(d, n=100, seed=0).max_relative for fid, d in INSTANCES.items()}
    elapsed = time.perf_counter() - start
    top = max(worst.values())
    record(1, "family residuals", len(worst) == 8 and top <= 1e-8 and elapsed < 10,
           f"8 families, max relative {top:.2e}, {elapsed:.2f} s")


def test_02_degeneracy():
    ext, dir_err, min_null = 0.0, 0.0, 4
    for d in INSTANCES.values():
        reports = verify.extension_residuals(d, n_shifts=20, n=100, seed=1)
        ext = max(ext, max(r.max_relative for r in reports))
        pts = d.sample_points(50, 2)
        for r, c in zip(degeneracy.infer_potentials(d.spinor, d.mass, pts, d.equation), d.direction(pts)):
            min_null = min(min_null, r.nullity)
            dir_err = max(dir_err, min(float(np.max(np.abs(v - c))) for v in r.normalized_directions()))
    record(2, "degeneracy", ext <= 1e-8 and min_null >= 1 and dir_err <= 1e-8,
           f"extension max {ext:.2e}, min nullity {min_null}, direction error {dir_err:.2e}")


def test_03_criterion():
    worst = 0.0
    for d in INSTANCES.values():
        v = d.embedded_spinor(d.sample_points(100))
        worst = max(worst, float(np.max(np.abs(degeneracy.criterion(v)) / np.sum(np.abs(v) ** 2, axis=1))))
    pts = sample_points(30, 4)
    rest = SymbolicField([sp.exp(-sp.I * 0.8 * T), 0, 0, 0])
    rest_class = degeneracy.is_degenerate(rest, pts)
    rest_null = max(r.nullity for r in degeneracy.infer_potentials(rest, 0.8, pts))
    # gauge-transformed superposition of two free massive plane waves; the potential is d lam
    a, _, m = verify.massive_helicity_spinor(0.5, 0.0, 0.0)
    b, _, _ = verify.massive_helicity_spinor(0.5, 1.0, 2.0, "antiparticle")
    lam = 0.3 * X * T + 0.2 * sp.sin(Y) + 0.1 * Z ** 2
    psi = SymbolicField([sp.exp(sp.I * lam) * (u + w) for u, w in zip(a.exprs, b.exprs)])
    blj = degeneracy.blj_potential(psi, pts)
    lsq = np.array([r.particular for r in degeneracy.infer_potentials(psi, m, pts)])
    agree = float(np.max(np.abs(blj - lsq)))
    ok = worst <= 1e-10 and rest_class == "nondegenerate" and rest_null == 0 and agree <= 1e-8
    record(3, "criterion", ok, f"max |crit|/|Psi|^2 {worst:.2e}, rest wave {rest_class} nullity {rest_null}, "
                               f"BLJ vs least squares {agree:.2e}")


def _rel(a, b):
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-300))


def test_04_fields():
    pts = sample_points(200, 6)
    wave = dict(E1=0.8, E2=0.5, k_w=1.3, delta1=0.2, delta2=-0.7)
    s_gen = scalar.ScalarField.parse("x*y*t + sin(z - t)")
    th_t, ph_t = scalar.ScalarField.parse("0.4*t**2"), scalar.ScalarField.parse("sin(t)")
    cases = [
        ("massless_general", families.massless_general(0.5, 2.2), s_gen, dict(theta=0.5, phi=2.2, s=s_gen)),
        ("copropagating_wave", families.massless_general(0.0, 0.0), fields.copropagating_wave_s(**wave), wave),
        ("barrier_pair", families.barrier_pair(1, 0), s_gen, dict(s=s_gen)),
        ("perpendicular_wave", families.barrier_pair(1, 0), fields.perpendicular_wave_s(**wave), wave),
        ("wavelike", families.wavelike(0.3, 0.9), 0.0, dict(alpha=0.3, beta=0.9)),
        ("wavelike_extended", families.wavelike(0.3, 0.9), 0.7, dict(alpha=0.3, beta=0.9, s=0.7)),
        ("weyl_localized", families.weyl_localized(th_t, ph_t), 0.0, dict(theta_t=th_t, phi_t=ph_t)),
    ]
    worst = 0.0
    for name, d, s, params in cases:
        pot = degeneracy.extend_potential(d.potential, s, d.direction)
        num = fields.em_fields(pot, d.charge, pts)
        ref = fields.closed_form_fields(name, pts, **params)
        worst = max(worst, _rel(num.E, ref.E), _rel(num.B, ref.B) if np.any(ref.B) else float(np.max(np.abs(num.B))))
    weyl_B = float(np.max(np.abs(fields.em_fields(cases[-1][1].potential, 1.0, pts).B)))
    E, B = fields.closed_form_exprs("copropagating_wave", **wave)
    maxwell = max(v["relative"] for v in fields.maxwell_vacuum_check(E, B, pts).values())
    record(4, "field consistency", worst <= 1e-8 and weyl_B == 0 and maxwell <= 1e-8,
           f"max relative {worst:.2e} over {len(cases)} closed forms, localized B {weyl_B:g}, Maxwell {maxwell:.2e}")


def test_05_wave_numbers():
    ratio_err = 0.0
    for al, be in [(0.3, 0.9), (1.1, 0.2), (0.4, 2.0)]:
        omega, k = families.wavelike_frequency(al, be, 1.0)
        ratio_err = max(ratio_err, abs(omega / k * math.cos(al + be) - 1))
    # electron with cos 2a - cos 2b = 1, so omega_d = 4 m c^2 / hbar
    al = 0.5 * math.acos(0.5)
    be = 0.5 * math.acos(-0.5)
    omega_nat, _ = families.wavelike_frequency(al, be, 1.0)
    rest = constants.m_e * constants.c ** 2
    omega = omega_nat * rest / constants.hbar
    nu = omega / (2 * math.pi)
    mev = constants.hbar * omega / (constants.e * 1e6)
    ok = ratio_err <= 1e-12 and abs(nu / 4.94e20 - 1) <= 0.1 and mev >= 2.0
    record(5, "wave numbers", ok, f"phase velocity error {ratio_err:.1e}, nu {nu:.3e} Hz, photon {mev:.3f} MeV")


def test_06_spin():
    al, be, m, c1 = 0.3, 0.9, 1.0, 0.7 + 0.4j
    d = families.wavelike(al, be, h=scalar.ScalarField.parse("0.3*t - 0.2*x*y"), c1=c1, m=m)
    pts = d.sample_points(200, 5)
    S = algebra.spin_projections(d.spinor(pts))
    omega, k = families.wavelike_frequency(al, be, m)
    phase = omega * pts[:, 0] - k * pts[:, 3]
    amp = abs(c1) ** 2 / 2
    ref = np.column_stack([amp * (math.sin(2 * al) + math.sin(2 * be)) * np.cos(phase),
                           amp * (math.sin(2 * al) + math.sin(2 * be)) * np.sin(phase),
                           np.full(len(pts), amp * (math.cos(2 * al) + math.cos(2 * be)))])
    err = float(np.max(np.abs(S - ref)))
    transverse = S[:, 0] ** 2 + S[:, 1] ** 2
    spread = float(np.ptp(transverse))
    record(6, "spin projections", err <= 1e-10 and spread <= 1e-10,
           f"closed-form error {err:.2e}, transverse spread {spread:.2e}")


def test_07_trajectories():
    fig5 = dynamics.preset_trajectory("fig5")
    fig3 = dynamics.preset_trajectory("fig3")
    drift = float(np.max(np.abs(fig5.r[:, 0] - fig5.r[0, 0])))
    vz = float(np.max(np.abs(fig3.v[:, 2] - math.cos(math.pi / 4))))
    z10 = float(fig3.r[-1, 2])
    speed = max(float(np.max(np.abs(tr.speeds - 1))) for tr in (fig3, fig5))
    # chords of a curved path are shorter than the arc, so sample finely for this one
    chord = max(float(np.max(np.abs(dynamics.preset_trajectory(n, dt=1e-4).chord_speeds - 1)))
                for n in ("fig3", "fig5"))
    ok = drift <= 1e-6 and vz <= 1e-9 and abs(z10 - 7.0711) <= 1e-4 and speed <= 1e-6 and chord <= 1e-6
    record(7, "trajectories", ok, f"fig5 x drift {drift:.1e}, fig3 v_z error {vz:.1e}, z(10) {z10:.6f}, "
                                  f"speed error {speed:.1e}, chord speed error at dt=1e-4 {chord:.1e}")


def test_08_device():
    dt = dynamics.localization_time(constants.e, 1e-7, 3.291e3)
    rate = device.throughput(device.DeviceConfig(n_channels=100_000, clock_period=1e-12))
    record(8, "device numbers", abs(dt / 1e-12 - 1) <= 5e-3 and rate == 1e17,
           f"localization time {dt:.4e} s, throughput {rate:.3e} bit/s")


def test_09_scan():
    grid = [0, 0.01, 0.05, 0.1, 0.25, 0.5]
    rows = verify.degeneracy_breaking_scan(grid, s=scalar.ScalarField.parse("1 + 0.5*sin(x)"), theta=0.6, phi=0.4)
    res = [r.normalized_residual for r in rows]
    monotone = all(b >= a for a, b in zip(res, res[1:]))
    ratios = [r.normalized_residual / r.e for r in rows if 0 < r.e <= 0.05]
    ok = monotone and res[0] <= 1e-8 and all(0.5 <= q <= 2.0 for q in ratios)
    table = ", ".join(f"e={r.e:g}: {r.normalized_residual:.4f} vs {r.reference_factor:.4f}" for r in rows)
    record(9, "degeneracy-breaking scan", ok, f"monotone {monotone}; {table}")


def test_10_determinism(tmp_path):
    commands = [["verify", "--family", "general_massive", "--seed", "9", "--extend-s", "random:2"],
                ["trajectory", "--preset", "fig3", "--dt", "0.05"],
                ["device", "--channels", "3", "--readout", "--ticks", "4"]]
    same = True
    for i, argv in enumerate(commands):
        outs = []
        for rep in range(2):
            d = tmp_path / f"{i}-{rep}"
            proc = subprocess.run([sys.executable, "-m", "degenerate_spinors", *argv, "--out", str(d)],
                                  capture_output=True, check=False)
            assert proc.returncode == 0, proc.stdout
            outs.append((proc.returncode, proc.stdout, {p.name: p.read_bytes() for p in sorted(d.iterdir())}))
        same = same and outs[0] == outs[1] and outs[0][0] == 0
    record(10, "determinism", same, f"{len(commands)} commands run twice, outputs byte-identical: {same}")
