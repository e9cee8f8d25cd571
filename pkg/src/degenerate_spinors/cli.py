"""Command-line experiments.

Subcommands: verify, potential, fields, trajectory, device, sweep.  Every run
prints a JSON record (sorted keys, shortest round-trip floats) that embeds the
resolved spec, seed and package version; ``--out DIR`` also writes files.
Exit status: 0 pass, 1 tolerance failure, 2 invalid spec.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np
import sympy as sp

from . import __version__
from . import degeneracy, device, dynamics, families, fields, verify
from .errors import DegenerateSpinorError, NoSolution
from .families import FamilyDescriptor
from .scalar import ScalarField
from .symbolic import COORDS, SymbolicField, sample_points

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2

FAMILY_FLAGS = ("theta", "phi", "xi", "m", "alpha", "beta", "k", "c1", "c2", "c_plus", "c_minus",
                "kind", "species", "side", "helicity")
DEFAULTS = {"seed": 0, "n_points": 100, "tol": 1e-8, "scheme": "exact", "q": 1.0}


class SpecError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """Reports bad flags as SpecError so they get a failure record."""

    def error(self, message):
        raise SpecError(f"{self.prog}: {message}")


def _value(text):
    """Number (real or complex) or plain string from a flag value."""
    if not isinstance(text, str):
        return text
    for cast in (int, float, complex):
        try:
            return cast(text)
        except ValueError:
            pass
    try:
        v = complex(sp.sympify(text.replace("j", "*I")))
        return v.real if v.imag == 0 else v
    except (sp.SympifyError, TypeError, ValueError):
        return text


def _pairs(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise SpecError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------------------
# spec resolution

def _merge_spec(args):
    """Fill flags that were not given from the ``--spec`` JSON file."""
    spec = {}
    if args.spec:
        try:
            with open(args.spec) as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read spec {args.spec}: {exc}") from None
        if not isinstance(spec, dict):
            raise SpecError("spec must be a JSON object")
    for key, value in spec.items():
        dest = key.replace("-", "_")
        if dest in ("param", "slot") and isinstance(value, dict):
            current = _pairs(getattr(args, dest, None))
            merged = {**{k: (json.dumps(v) if isinstance(v, dict) else str(v)) for k, v in value.items()}, **current}
            setattr(args, dest, [f"{k}={v}" for k, v in merged.items()])
        elif hasattr(args, dest):
            if getattr(args, dest) is None:
                setattr(args, dest, value)
        elif dest != "descriptor":
            raise SpecError(f"unknown spec key {key!r}")
    args.descriptor = spec.get("descriptor")
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    return args


def _slot_value(text):
    text = text.strip()
    if text.startswith("{"):
        return ScalarField.from_dict(json.loads(text))
    return ScalarField.parse(text)


def resolve_family(args) -> FamilyDescriptor:
    if args.descriptor:
        return FamilyDescriptor.from_dict(args.descriptor)
    if not args.family:
        raise SpecError("a family is required (--family or spec)")
    params = {k: _value(getattr(args, k)) for k in FAMILY_FLAGS if getattr(args, k, None) is not None}
    params.update({k: _value(v) for k, v in _pairs(args.param).items()})
    params.update({k: _slot_value(v) for k, v in _pairs(args.slot).items()})
    if args.family == "weyl_from_massless":
        side = params.pop("side", "T")
        parent = families.general_massless(**params, q=args.q)
        return families.weyl_from_massless(parent, side, seed=args.seed)
    return families.build(args.family, **params, q=args.q, seed=args.seed)


def _custom_spinor(text) -> SymbolicField:
    parts = [p for p in text.split(";")]
    if len(parts) not in (2, 4):
        raise SpecError("--spinor needs 2 or 4 ';'-separated components")
    env = {str(c): c for c in COORDS}
    env.update({"I": sp.I, "i": sp.I, "pi": sp.pi})
    try:
        return SymbolicField([sp.sympify(p, locals=env) for p in parts])
    except sp.SympifyError as exc:
        raise SpecError(f"cannot parse spinor component: {exc}") from None


def _header(command, args, resolved) -> dict:
    return {"command": command, "version": __version__, "seed": args.seed, "spec": resolved}


def _write(args, name, text):
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, name), "w", newline="") as fh:
            fh.write(text)


def _commented(header: dict, body: str) -> str:
    line = json.dumps(_jsonable(header), sort_keys=True)
    return f"# {line}\n{body}"


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify(args):
    desc = resolve_family(args)
    base = verify.family_residual(desc, n=args.n_points, seed=args.seed, scheme=args.scheme)
    record = _header("verify", args, desc.to_dict())
    record.update({"tol": args.tol, "scheme": args.scheme, "base": base.to_dict()})
    ok = base.passed(args.tol)
    if args.extend_s:
        kind, _, count = str(args.extend_s).partition(":")
        if kind == "random":
            reports = verify.extension_residuals(desc, int(count or 20), args.n_points, args.seed, args.scheme)
        else:
            reports = verify.extension_residuals(desc, n=args.n_points, seed=args.seed, scheme=args.scheme,
                                                 shifts=[ScalarField.parse(args.extend_s)])
        record["extensions"] = [{"shift": r.extra["shift"], "max_relative": r.max_relative,
                                 "median_relative": r.median_relative} for r in reports]
        ok = ok and all(r.passed(args.tol) for r in reports)
    record["passed"] = ok
    return record, EXIT_PASS if ok else EXIT_FAIL, {"report.json": None}


def cmd_potential(args):
    if args.spinor:
        psi = _custom_spinor(args.spinor)
        m = float(args.m or 0.0)
        equation = args.equation or ("dirac" if len(psi) == 4 else "weyl+")
        resolved = {"spinor": args.spinor, "m": m, "equation": equation}
        desc = None
    else:
        desc = resolve_family(args)
        psi, m, equation, resolved = desc.spinor, desc.mass, desc.equation, desc.to_dict()
    n = min(args.n_points, 100)
    pts = sample_points(n, args.seed, desc.box if desc else (2, 2, 2, 2))
    record = _header("potential", args, resolved)
    try:
        results = degeneracy.infer_potentials(psi, m, pts, equation, args.scheme)
    except NoSolution as exc:
        record.update({"status": "NoSolution", "error": "NoSolution", "message": str(exc),
                       "residual_floor": exc.residual_floor, "scale": exc.scale, "passed": False})
        return record, EXIT_FAIL, {"inference.json": None}
    nullities = sorted({r.nullity for r in results})
    record.update({"nullity": nullities, "results": [r.to_dict() for r in results]})
    ok = True
    if desc is not None:
        expected = desc.direction(pts)
        err = 0.0
        for r, d in zip(results, expected):
            dirs = r.normalized_directions()
            err = max(err, min((float(np.max(np.abs(v - d))) for v in dirs), default=math.inf))
        record["direction_max_error"] = err
        ok = err <= args.tol
    record["passed"] = ok
    return record, EXIT_PASS if ok else EXIT_FAIL, {"inference.json": None}


def cmd_fields(args):
    pts = sample_points(args.n_points, args.seed)
    closed = _pairs(args.closed)
    if args.closed_form:
        params = {k: (_slot_value(v) if k in ("s", "theta_t", "phi_t") else _value(v)) for k, v in closed.items()}
        sample = fields.closed_form_fields(args.closed_form, pts, **params, q=args.q)
        resolved = {"closed_form": args.closed_form, "params": {k: str(v) for k, v in closed.items()}, "q": args.q}
    else:
        desc = resolve_family(args)
        pts = desc.sample_points(args.n_points, args.seed)
        a = desc.potential
        if args.extend_s:
            a = degeneracy.extend_potential(a, ScalarField.parse(args.extend_s), desc.direction)
        sample = fields.em_fields(a, desc.charge, pts, args.scheme)
        resolved = {"family": desc.to_dict(), "extend_s": args.extend_s}
    header = _header("fields", args, resolved)
    record = dict(header)
    record.update({"max_abs_E": float(np.max(np.abs(sample.E))), "max_abs_B": float(np.max(np.abs(sample.B))),
                   "n_points": len(pts), "passed": True})
    files = {"fields.csv": _commented(header, sample.to_csv()),
             "fields.json": dumps({**header, **sample.to_dict()})}
    return record, EXIT_PASS, files


def cmd_trajectory(args):
    if args.preset:
        if args.preset not in dynamics.PRESETS:
            raise SpecError(f"unknown preset {args.preset!r}")
        p = dynamics.PRESETS[args.preset]
        theta_t, phi_t, span = p["theta_t"], p["phi_t"], p["t_span"]
    else:
        theta_t, phi_t = args.theta_t or "0", args.phi_t or "0"
        span = (0.0, 10.0)
    if args.t_span:
        span = tuple(float(v) for v in args.t_span)
    r0 = tuple(float(v) for v in (args.r0 or (0.0, 0.0, 0.0)))
    tr = dynamics.integrate_trajectory(theta_t, phi_t, r0, span, args.dt)
    efield = dynamics.field_schedule_from_angles(theta_t, phi_t, args.q)(np.array([span[0]]))[0]
    resolved = {"preset": args.preset, "theta_t": str(theta_t), "phi_t": str(phi_t), "t_span": list(span),
                "r0": list(r0), "dt": tr.step, "q": args.q}
    header = _header("trajectory", args, resolved)
    speed_dev = float(np.max(np.abs(tr.speeds - 1)))
    record = dict(header)
    record.update({"final_position": tr.r[-1], "max_abs_displacement": np.max(np.abs(tr.r - tr.r[0]), axis=0),
                   "speed_max_deviation": speed_dev, "step_halving_error": tr.error_estimate,
                   "initial_field": efield, "n_samples": len(tr.t), "passed": speed_dev <= 1e-6})
    files = {"trajectory.csv": _commented(header, tr.to_csv())}
    return record, EXIT_PASS if record["passed"] else EXIT_FAIL, files


def cmd_device(args):
    cfg = {k: v for k, v in {
        "n_channels": args.channels, "clock_period": args.clock, "r0": args.r0, "E_on": args.E_on,
        "channel_width": args.channel_width, "slab_width": args.slab_width, "q": args.charge}.items() if v is not None}
    if args.config:
        with open(args.config) as fh:
            cfg = {**json.load(fh), **cfg}
    if "n_channels" in cfg:
        cfg["n_channels"] = int(cfg["n_channels"])
    config = device.DeviceConfig.from_dict(cfg)
    dev = device.Device(config)
    schedule = []
    if args.schedule:
        with open(args.schedule) as fh:
            text = fh.read()
        schedule = (device.read_schedule_json(text) if args.schedule.endswith(".json")
                    else device.read_schedule_csv(text))
        dev.apply_schedule(schedule)
    n_ticks = int(args.ticks)
    end = n_ticks * config.clock_period
    if schedule:
        end = max(end, schedule[-1].time + 2 * config.latency)
    dev.run_until(end)
    header = _header("device", args, {"config": config.to_dict(), "schedule": [
        {"time_s": e.time, "channel": e.channel, "state": "on" if e.voltage_on else "off", "source": e.source}
        for e in schedule], "ticks": n_ticks})
    record = dict(header)
    record.update({"throughput_bits_per_s": device.throughput(config), "latency_s": config.latency,
                   "max_channels": config.max_channels, "missed_bits": dev.missed_bits(),
                   "events": len(dev.log), "passed": True})
    files = {"device.json": dumps({**record, "log": dev.log})}
    if args.readout:
        times = np.arange(n_ticks + 1) * config.clock_period
        files["readout.csv"] = _commented(header, device.readout_to_csv(dev.readout(times), times))
    return record, EXIT_PASS, files


def cmd_sweep(args):
    e_values = [float(v) for v in (args.e_values or [0, 0.01, 0.05, 0.1, 0.25, 0.5])]
    s = args.extend_s or "1"
    rows = verify.degeneracy_breaking_scan(e_values, ScalarField.parse(s), float(args.theta or 0.0),
                                           float(args.phi or 0.0), args.species or "particle",
                                           min(args.n_points, 100), args.seed)
    resolved = {"e_values": e_values, "s": s, "theta": args.theta or 0.0, "phi": args.phi or 0.0,
                "species": args.species or "particle"}
    record = _header("sweep", args, resolved)
    res = [r.normalized_residual for r in rows]
    monotone = all(b >= a for a, b in zip(res, res[1:]))
    record.update({"rows": [r.to_dict() for r in rows], "monotone": monotone, "passed": monotone})
    return record, EXIT_PASS if monotone else EXIT_FAIL, {"sweep.json": None}


# ---------------------------------------------------------------------------
# parser

def _add_common(p):
    p.add_argument("--spec", help="JSON file whose keys mirror the flags")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--tol", type=float)
    p.add_argument("--scheme", choices=("exact", "fd2", "fd4"))
    p.add_argument("--n-points", type=int)
    p.add_argument("--q", type=float, help="charge in natural units")


def _add_family(p):
    p.add_argument("--family", help=f"one of {', '.join(families.FAMILY_IDS)}")
    for name in FAMILY_FLAGS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name)
    p.add_argument("--param", action="append", help="extra family parameter key=value")
    p.add_argument("--slot", action="append", help="function slot name=expression")
    p.add_argument("--extend-s", help="shift function, or random:N")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="degenerate-spinors", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="residuals of a family, optionally under shifted potentials")
    _add_common(p)
    _add_family(p)

    p = sub.add_parser("potential", help="infer the potentials compatible with a spinor")
    _add_common(p)
    _add_family(p)
    p.add_argument("--spinor", help="custom spinor: ';'-separated expressions of t, x, y, z")
    p.add_argument("--equation", choices=degeneracy.EQUATIONS)

    p = sub.add_parser("fields", help="electromagnetic field map")
    _add_common(p)
    _add_family(p)
    p.add_argument("--closed-form", choices=sorted(fields.CLOSED_FORMS))
    p.add_argument("--closed", action="append", help="closed-form parameter key=value")

    p = sub.add_parser("trajectory", help="Weyl expectation-velocity trajectory")
    _add_common(p)
    p.add_argument("--preset", choices=sorted(dynamics.PRESETS))
    p.add_argument("--theta-t")
    p.add_argument("--phi-t")
    p.add_argument("--t-span", nargs=2)
    p.add_argument("--dt", type=float)
    p.add_argument("--r0", nargs=3)

    p = sub.add_parser("device", help="channel-array simulation and throughput")
    _add_common(p)
    p.add_argument("--config", help="DeviceConfig JSON")
    p.add_argument("--channels", type=float)
    p.add_argument("--clock", type=float)
    p.add_argument("--r0", type=float)
    p.add_argument("--E-on", dest="E_on", type=float)
    p.add_argument("--channel-width", type=float)
    p.add_argument("--slab-width", type=float)
    p.add_argument("--charge", type=float, help="carrier charge in coulombs")
    p.add_argument("--schedule", help="schedule CSV (time_s,channel,state[,source]) or JSON")
    p.add_argument("--ticks", type=int, default=10)
    p.add_argument("--readout", action="store_true")
    p.add_argument("--report", action="store_true", help="print the summary (always on)")

    p = sub.add_parser("sweep", help="degeneracy breaking by mass")
    _add_common(p)
    p.add_argument("--e-values", nargs="+")
    p.add_argument("--extend-s")
    p.add_argument("--theta")
    p.add_argument("--phi")
    p.add_argument("--species", choices=("particle", "antiparticle"))
    return parser


COMMANDS = {"verify": cmd_verify, "potential": cmd_potential, "fields": cmd_fields,
            "trajectory": cmd_trajectory, "device": cmd_device, "sweep": cmd_sweep}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SpecError as exc:
        argv = sys.argv[1:] if argv is None else list(argv)
        command = argv[0] if argv and argv[0] in COMMANDS else None
        failure = {"command": command, "version": __version__, "status": "invalid",
                   "error": "SpecError", "message": str(exc), "passed": False}
        sys.stdout.write(dumps(failure))
        return EXIT_INVALID
    try:
        _merge_spec(args)
        record, code, files = COMMANDS[args.command](args)
    except (SpecError, DegenerateSpinorError, ValueError, KeyError, TypeError, OSError) as exc:
        failure = {"command": args.command, "version": __version__, "status": "invalid",
                   "error": type(exc).__name__, "message": str(exc).strip("'\""), "passed": False}
        sys.stdout.write(dumps(failure))
        return EXIT_INVALID
    text = dumps(record)
    for name, body in files.items():
        _write(args, name, text if body is None else body)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
