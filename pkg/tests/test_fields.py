import json
import math

import numpy as np
import pytest

from degenerate_spinors import families, fields, scalar
from degenerate_spinors.degeneracy import extend_potential
from degenerate_spinors.errors import DegenerateParameter, NonPositiveProfile, UnknownFamily
from degenerate_spinors.symbolic import SymbolicField, sample_points

PTS = sample_points(40, 2)
WAVE = dict(E1=0.8, E2=0.5, k_w=1.3, delta1=0.2, delta2=-0.7)


def extended_fields(desc, s, q=1.0):
    b = extend_potential(desc.potential, s, desc.direction)
    return fields.em_fields(b, q, PTS)


class TestPoynting:
    def test_unit(self):
        np.testing.assert_allclose(fields.poynting([1, 0, 0], [0, 1, 0]), [0, 0, 1 / (4 * math.pi)])

    def test_perpendicular_wave(self):
        f = fields.closed_form_fields("perpendicular_wave", PTS, **WAVE)
        t, y = PTS[:, 0], PTS[:, 2]
        mag = (WAVE["E1"] ** 2 * np.cos(WAVE["k_w"] * (y + t) + WAVE["delta1"]) ** 2
               + WAVE["E2"] ** 2 * np.cos(WAVE["k_w"] * (y + t) + WAVE["delta2"]) ** 2) / (4 * math.pi)
        np.testing.assert_allclose(f.S, np.column_stack([0 * mag, -mag, 0 * mag]), atol=1e-15)

    def test_wavelike(self):
        al, be, m, q = 0.3, 0.9, 1.0, 1.0
        f = fields.closed_form_fields("wavelike", PTS, alpha=al, beta=be, m=m, q=q)
        expected = (4 * m ** 4 / (math.pi * q ** 2) * math.cos(al) ** 2 * math.cos(be) ** 2
                    / math.sin(al - be) ** 4 / math.sin(al + be) ** 2 / math.cos(al + be))
        np.testing.assert_allclose(f.S[:, :2], 0, atol=1e-12 * abs(expected))
        np.testing.assert_allclose(f.S[:, 2], expected, rtol=1e-12)


class TestEmFields:
    def test_zero(self):
        f = fields.em_fields(SymbolicField([0, 0, 0, 0], real=True), 1.0, PTS)
        np.testing.assert_array_equal(f.E, 0)
        np.testing.assert_array_equal(f.B, 0)

    def test_time_only_shift(self):
        th, ph, q = 0.7, 1.4, 2.0
        d = families.massless_general(th, ph)
        s = scalar.sin(scalar.var("t") * 1.5)
        f = extended_fields(d, s, q)
        n = np.array([math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])
        ds = 1.5 * np.cos(1.5 * PTS[:, 0])
        np.testing.assert_allclose(f.B, 0, atol=1e-15)
        np.testing.assert_allclose(f.E, -(ds / q)[:, None] * n, atol=1e-14)

    def test_zero_charge(self):
        with pytest.raises(DegenerateParameter):
            fields.em_fields(SymbolicField([0, 0, 0, 0], real=True), 0.0, PTS)

    def test_opaque_callable_uses_differences(self):
        d = families.massless_general(0.0, 0.0)
        s = fields.copropagating_wave_s(**WAVE)
        b = extend_potential(d.potential, s, d.direction)
        exact = fields.em_fields(b, 1.0, PTS)
        approx = fields.em_fields(lambda p: b(p), 1.0, PTS)
        np.testing.assert_allclose(approx.E, exact.E, atol=1e-6)


class TestClosedForms:
    @pytest.mark.parametrize("q", [1.0, -0.5])
    def test_copropagating(self, q):
        d = families.massless_general(0.0, 0.0, q=q)
        f = extended_fields(d, fields.copropagating_wave_s(**WAVE, q=q), q)
        ref = fields.closed_form_fields("copropagating_wave", PTS, **WAVE, q=q)
        np.testing.assert_allclose(f.E, ref.E, atol=1e-13)
        np.testing.assert_allclose(f.B, ref.B, atol=1e-13)

    def test_copropagating_is_light(self):
        f = fields.closed_form_fields("copropagating_wave", PTS, **WAVE)
        np.testing.assert_allclose(np.sum(f.E * f.B, axis=1), 0, atol=1e-15)
        np.testing.assert_allclose(np.linalg.norm(f.E, axis=1), np.linalg.norm(f.B, axis=1), atol=1e-15)

    def test_perpendicular(self):
        d = families.barrier_pair(1, 0)
        f = extended_fields(d, fields.perpendicular_wave_s(**WAVE))
        ref = fields.closed_form_fields("perpendicular_wave", PTS, **WAVE)
        np.testing.assert_allclose(f.E, ref.E, atol=1e-13)
        np.testing.assert_allclose(f.B, ref.B, atol=1e-13)

    def test_perpendicular_linear(self):
        f = fields.closed_form_fields("perpendicular_wave", PTS, **dict(WAVE, E2=0.0))
        np.testing.assert_array_equal(f.E[:, 1:], 0)
        np.testing.assert_array_equal(f.B[:, :2], 0)

    @pytest.mark.parametrize("s", [0.0, 0.4, -1.2])
    def test_wavelike(self, s):
        al, be, m, q = 0.3, 0.9, 1.0, 1.5
        d = families.wavelike(al, be, m=m, q=q)
        f = extended_fields(d, scalar.const(s), q)
        ref = fields.closed_form_fields("wavelike_extended", PTS, alpha=al, beta=be, m=m, s=s, q=q)
        np.testing.assert_allclose(f.E, ref.E, atol=1e-12)
        np.testing.assert_allclose(f.B, ref.B, atol=1e-12)

    def test_wavelike_at_d_zero(self):
        al, be, m = 0.3, 0.9, 1.0
        f = fields.closed_form_fields("wavelike", np.zeros((1, 4)), alpha=al, beta=be, m=m)
        pref = 4 * m ** 2 * math.cos(al) * math.cos(be) / math.sin(al - be) ** 2 / math.sin(al + be)
        np.testing.assert_allclose(f.E[0], [0, pref / math.cos(al + be), 0], atol=1e-14)
        np.testing.assert_allclose(f.B[0], [-pref, 0, 0], atol=1e-14)

    def test_massless_general(self):
        th, ph = 0.5, 2.2
        s = scalar.ScalarField.parse("x*y*t + sin(z - t)")
        d = families.massless_general(th, ph)
        f = extended_fields(d, s)
        ref = fields.closed_form_fields("massless_general", PTS, theta=th, phi=ph, s=s)
        np.testing.assert_allclose(f.E, ref.E, atol=1e-13)
        np.testing.assert_allclose(f.B, ref.B, atol=1e-13)

    def test_weyl_localized(self):
        th, ph = scalar.ScalarField.parse("0.4*t**2"), scalar.ScalarField.parse("sin(t)")
        d = families.weyl_localized(th, ph, q=2.0)
        f = fields.em_fields(d.potential, 2.0, PTS)
        ref = fields.closed_form_fields("weyl_localized", PTS, theta_t=th, phi_t=ph, q=2.0)
        np.testing.assert_allclose(f.B, 0, atol=1e-15)
        np.testing.assert_allclose(f.E, ref.E, atol=1e-13)

    def test_unknown(self):
        with pytest.raises(UnknownFamily):
            fields.closed_form_exprs("nope")


class TestMaxwell:
    def test_copropagating_vacuum(self):
        E, B = fields.closed_form_exprs("copropagating_wave", **WAVE)
        report = fields.maxwell_vacuum_check(E, B, PTS)
        assert all(v["relative"] <= 1e-8 for v in report.values())

    def test_static_uniform(self):
        E = SymbolicField([1.0, 2.0, 0.0], real=True)
        B = SymbolicField([0.0, 0.0, 0.0], real=True)
        report = fields.maxwell_vacuum_check(E, B, PTS)
        assert all(v["max"] == 0 for v in report.values())

    def test_wavelike_reports_sources(self):
        E, B = fields.closed_form_exprs("wavelike", alpha=0.3, beta=0.9)
        report = fields.maxwell_vacuum_check(E, B, PTS)
        assert set(report) == {"div_E", "div_B", "faraday", "ampere"}
        assert all(math.isfinite(v["max"]) for v in report.values())


class TestProfile:
    def test_constant(self):
        f = fields.profile_field(scalar.const(2.0), 1.0, PTS)
        np.testing.assert_array_equal(f.B, 0)

    @pytest.mark.parametrize("w,q", [(1.0, 1.0), (0.7, 2.0)])
    def test_gaussian(self, w, q):
        f = fields.profile_field(scalar.ScalarField.parse(f"exp(-(x**2 + y**2)/{2 * w * w})"), q, PTS)
        np.testing.assert_allclose(f.B[:, 2], -2 / (q * w ** 2), rtol=1e-12)

    def test_gaussian_1d(self):
        f = fields.profile_field(scalar.ScalarField.parse("exp(-x**2/2)"), 1.0, PTS)
        np.testing.assert_allclose(f.B[:, 2], -1.0, rtol=1e-12)

    def test_matches_finite_differences(self):
        prof = scalar.ScalarField.parse("1.5 + sin(x)*cos(y)")
        f = fields.profile_field(prof, 1.0, PTS)
        h = 1e-4
        lnf = lambda x, y: np.log(np.real(prof(np.column_stack([0 * x, x, y, 0 * x]))))
        x, y = PTS[:, 1], PTS[:, 2]
        lap = (lnf(x + h, y) + lnf(x - h, y) + lnf(x, y + h) + lnf(x, y - h) - 4 * lnf(x, y)) / h ** 2
        np.testing.assert_allclose(f.B[:, 2], lap, atol=1e-6)

    def test_nonpositive(self):
        with pytest.raises(NonPositiveProfile):
            fields.profile_field(scalar.ScalarField.parse("x"), 1.0, PTS)

    def test_only_transverse(self):
        with pytest.raises(ValueError):
            fields.profile_field(scalar.ScalarField.parse("exp(z)"), 1.0, PTS)


class TestSerialization:
    def test_csv_and_json(self, tmp_path):
        f = fields.closed_form_fields("copropagating_wave", PTS[:3], **WAVE)
        text = f.to_csv()
        lines = text.strip().splitlines()
        assert lines[0].split(",") == list(fields.CSV_COLUMNS)
        assert len(lines) == 4
        back = np.loadtxt(text.splitlines()[1:], delimiter=",")
        np.testing.assert_array_equal(back[:, 4:7], f.E)
        data = json.loads(f.to_json())
        np.testing.assert_array_equal(np.array(data["rows"]), f.table())
