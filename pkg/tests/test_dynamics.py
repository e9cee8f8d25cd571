import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from degenerate_spinors import dynamics
from degenerate_spinors.errors import NonPositiveInput

angles = st.floats(-10, 10, allow_nan=False)


class TestVelocity:
    def test_axis(self):
        np.testing.assert_allclose(dynamics.weyl_velocity(0, 0), [0, 0, 1])

    def test_diagonal(self):
        np.testing.assert_allclose(dynamics.weyl_velocity(math.pi / 4, 0), [math.sqrt(0.5), 0, math.sqrt(0.5)])

    def test_unit_norm_batch(self):
        rng = np.random.default_rng(0)
        v = dynamics.weyl_velocity(rng.uniform(0, math.pi, 1000), rng.uniform(0, 2 * math.pi, 1000))
        np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1, atol=1e-15)

    @given(angles, angles)
    def test_unit_norm(self, th, ph):
        assert np.linalg.norm(dynamics.weyl_velocity(th, ph)) == pytest.approx(1.0, abs=1e-15)


class TestTrajectory:
    def test_fig3(self):
        tr = dynamics.preset_trajectory("fig3")
        assert tr.r[-1, 2] == pytest.approx(10 * math.cos(math.pi / 4), abs=1e-9)
        np.testing.assert_allclose(tr.v[:, 2], math.cos(math.pi / 4), atol=1e-15)
        np.testing.assert_allclose(np.linalg.norm(tr.v[:, :2], axis=1), math.sin(math.pi / 4), atol=1e-15)
        np.testing.assert_allclose(tr.speeds, 1, atol=1e-6)
        assert tr.error_estimate < 1e-6

    def test_fig5_planar(self):
        tr = dynamics.preset_trajectory("fig5", r0=(0.3, 0, 0))
        np.testing.assert_allclose(tr.r[:, 0], 0.3, atol=1e-12)
        np.testing.assert_allclose(tr.speeds, 1, atol=1e-6)

    def test_free_line(self):
        tr = dynamics.integrate_trajectory("0", "0", r0=(1, 2, 3), t_span=(0, 4), dt=0.5)
        np.testing.assert_allclose(tr.r, np.array([1, 2, 3]) + tr.t[:, None] * [0, 0, 1], atol=1e-14)

    def test_chord_speed(self):
        tr = dynamics.integrate_trajectory("sin(t)", "t**2/3", t_span=(0, 3), dt=1e-3)
        assert np.all(tr.chord_speeds <= 1 + 1e-12)
        np.testing.assert_allclose(tr.chord_speeds, 1, atol=1e-6)

    def test_fourth_order(self):
        errs = []
        exact = dynamics.integrate_trajectory("t", "0", t_span=(0, 2), dt=1e-4).r[-1]
        for dt in (0.2, 0.1, 0.05):
            errs.append(np.linalg.norm(dynamics.integrate_trajectory("t", "0", t_span=(0, 2), dt=dt).r[-1] - exact))
        assert math.log2(errs[0] / errs[1]) == pytest.approx(4, abs=0.3)

    def test_csv(self):
        tr = dynamics.integrate_trajectory("0", "0", t_span=(0, 1), dt=0.25)
        lines = tr.to_csv().splitlines()
        assert lines[0] == "t,x,y,z,vx,vy,vz"
        assert len(lines) == 6

    @pytest.mark.parametrize("kw", [dict(t_span=(1, 0)), dict(dt=-1.0), dict(t_span=(0, math.inf))])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            dynamics.integrate_trajectory("0", "0", **kw)

    def test_spatial_angle(self):
        with pytest.raises(ValueError):
            dynamics.integrate_trajectory("x", "0")

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            dynamics.preset_trajectory("fig9")


class TestLocalization:
    def test_picosecond(self):
        dt = dynamics.localization_time(dynamics.ELEMENTARY_CHARGE, 1e-7, 3.291e3)
        assert dt == pytest.approx(1.000e-12, rel=1e-3)

    def test_femtosecond(self):
        assert dynamics.localization_time(dynamics.ELEMENTARY_CHARGE, 1e-7, 3.291e6) == pytest.approx(1e-15, rel=1e-3)

    def test_inverse_proportional(self):
        base = dynamics.localization_time(2.0, 3.0, 5.0)
        assert dynamics.localization_time(4.0, 3.0, 5.0) == pytest.approx(base / 2, rel=1e-15)
        assert dynamics.localization_time(2.0, 6.0, 5.0) == pytest.approx(base / 2, rel=1e-15)
        assert dynamics.localization_time(2.0, 3.0, 10.0) == pytest.approx(base / 2, rel=1e-15)

    def test_constants(self):
        assert dynamics.HBAR == pytest.approx(1.054571817e-34, rel=1e-9)
        assert dynamics.ELEMENTARY_CHARGE == 1.602176634e-19

    @pytest.mark.parametrize("args", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
    def test_nonpositive(self, args):
        with pytest.raises(NonPositiveInput):
            dynamics.localization_time(*args)


class TestFieldSchedule:
    T = np.linspace(0, 10, 11)

    def test_fig3(self):
        E = dynamics.field_schedule_from_angles("pi/4", "10*t - t**2", q=2.0)(self.T)
        np.testing.assert_allclose(E, np.tile([0, 0, 0.5], (11, 1)), atol=1e-15)

    def test_fig5(self):
        # magnitude 1/q along x; the sign follows the field formula
        E = dynamics.field_schedule_from_angles("10*t - t**2", "pi/2", q=2.0)(self.T)
        np.testing.assert_allclose(E, np.tile([-0.5, 0, 0], (11, 1)), atol=1e-15)

    @pytest.mark.parametrize("th,ph", [("0.3*t", "1.2"), ("0.5", "2*t + 1")])
    def test_free(self, th, ph):
        np.testing.assert_allclose(dynamics.field_schedule_from_angles(th, ph)(self.T), 0, atol=1e-15)
