import json

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from degenerate_spinors import scalar
from degenerate_spinors.errors import CatalogError
from degenerate_spinors.scalar import ScalarField

t, x, y, z = (scalar.var(n) for n in scalar.SPACETIME)
PTS = np.array([[0.1, -0.4, 0.7, 1.3], [1.5, 0.2, -0.9, 0.0], [-1.0, 1.0, 0.5, -0.5]])


class TestConstruction:
    def test_constant_folding(self):
        f = scalar.const(2.0) * 3 + 1
        assert f.op == "const" and f.args[0] == 7

    def test_zero_absorbs(self):
        assert (scalar.ZERO * x).is_zero

    def test_power_limit(self):
        with pytest.raises(CatalogError):
            x ** 5

    def test_variables(self):
        assert (x * scalar.sin(t) + 2).variables == {"x", "t"}

    def test_is_real(self):
        assert (x + 1).is_real
        assert not (x + 1j).is_real

    def test_unknown_op_rejected(self):
        with pytest.raises(CatalogError):
            ScalarField.parse("log(x)")

    def test_negative_power_rejected(self):
        with pytest.raises(CatalogError):
            ScalarField.parse("1/x")


class TestEvaluation:
    def test_matches_numpy(self):
        f = 0.5 * scalar.sin(x * t) + y ** 2 * scalar.exp(-z) + scalar.gaussian(0.3 * x)
        tt, xx, yy, zz = PTS.T
        expected = 0.5 * np.sin(xx * tt) + yy ** 2 * np.exp(-zz) + np.exp(-(0.3 * xx) ** 2)
        np.testing.assert_allclose(f(PTS), expected, rtol=1e-14)

    def test_auxiliary_keyword(self):
        f = scalar.var("s0") * 2
        np.testing.assert_allclose(f(s0=np.array([1.0, 2.0])), [2.0, 4.0])

    def test_missing_coordinate(self):
        with pytest.raises(KeyError):
            scalar.var("s1")(PTS)


class TestDerivatives:
    @pytest.mark.parametrize("text", ["x*t + sin(y)", "exp(-z**2)*cos(3*x)", "(x + y)**4", "gaussian(x - t)"])
    def test_against_sympy(self, text):
        f = ScalarField.parse(text) if "gaussian" not in text else scalar.gaussian(x - t)
        expr = f.to_sympy()
        for name in scalar.SPACETIME:
            d = f.diff(name)
            ref = sp.lambdify(sp.symbols("t x y z", real=True), sp.diff(expr, scalar._SYMBOLS[name]))
            np.testing.assert_allclose(np.broadcast_to(d(PTS), (3,)), np.broadcast_to(ref(*PTS.T), (3,)),
                                       rtol=1e-12, atol=1e-14)

    def test_gradient_length(self):
        assert len((x * y).gradient()) == 4


class TestSerialization:
    def test_round_trip(self):
        f = 0.5 * scalar.sin(x * t) + (1 + 2j) * scalar.gaussian(y) ** 2
        g = ScalarField.from_dict(json.loads(json.dumps(f.to_dict())))
        assert g == f

    def test_as_field_variants(self):
        assert scalar.as_field(None).is_zero
        assert scalar.as_field(2.0) == scalar.const(2.0)
        assert scalar.as_field("x") == x
        assert scalar.as_field(x.to_dict()) == x

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_random_field_round_trip(self, seed):
        f = scalar.random_field(np.random.default_rng(seed))
        assert f.is_real
        g = ScalarField.from_dict(f.to_dict())
        np.testing.assert_allclose(g(PTS), f(PTS), rtol=1e-14)
