import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadprop.errors import InvalidParameter, OutOfDomain, UnknownModel
from quadprop.hamiltonians import (
    CATALOG,
    catalog_model,
    characteristic_coefficients,
    eval_coefficients,
)
from quadprop.numerics import d1


def test_caldirola_kanai_coefficients():
    cs = catalog_model("caldirola_kanai", {"lambda": 0.1})
    for t in (0.0, 0.4, 1.3):
        assert eval_coefficients(cs, t) == pytest.approx(
            (0.5 * math.exp(-0.2 * t), 0.5 * math.exp(0.2 * t), 0, 0, 0, 0), abs=1e-15)


@pytest.mark.parametrize("t", [0.0, 0.7, 1.9])
def test_harmonic_constant(t):
    assert eval_coefficients(catalog_model("harmonic"), t) == (0.5, 1.0, 0.0, 0.0, 0.0, 0.0)


def test_modified_caldirola_kanai_signs():
    cs = catalog_model("modified_caldirola_kanai", {"lambda": 0.1, "omega0": 1.0})
    assert eval_coefficients(cs, 0.0) == pytest.approx((0.5, 0.5, -0.2, -0.1, 0.0, 0.0))


@pytest.mark.parametrize("lam", [1.5, 1.0, -0.1])
def test_caldirola_kanai_range(lam):
    with pytest.raises(InvalidParameter):
        catalog_model("caldirola_kanai", {"lambda": lam})


def test_unknown_model_and_key():
    with pytest.raises(UnknownModel):
        catalog_model("quartic")
    with pytest.raises(InvalidParameter):
        catalog_model("harmonic", {"omega": 2.0})


def test_out_of_domain():
    cs = catalog_model("harmonic")
    with pytest.raises(OutOfDomain):
        eval_coefficients(cs, cs.t_max * 1.01)
    with pytest.raises(OutOfDomain):
        eval_coefficients(cs, -0.1)


def test_characteristic_coefficients_examples():
    cc = characteristic_coefficients(catalog_model("harmonic"), 0.3)
    assert (cc.tau, cc.sigma) == pytest.approx((0.0, 0.5))
    cc = characteristic_coefficients(catalog_model("caldirola_kanai", {"lambda": 0.1}), 0.8)
    assert (cc.tau, cc.sigma) == pytest.approx((-0.2, 0.25))


def test_custom_wraps_callables():
    a = lambda t: 1.0 + 0.1 * t  # noqa: E731
    cs = catalog_model("custom", {"t_max": 2.0}, {"a": a, "b": lambda t: 0.3})
    assert cs.a is a
    assert eval_coefficients(cs, 1.0)[:3] == pytest.approx((1.1, 0.3, 0.0))
    # d = 0: tau = a'/a from the default finite differences
    assert characteristic_coefficients(cs, 1.0).tau == pytest.approx(0.1 / 1.1, rel=1e-9)


@pytest.mark.parametrize("name", list(CATALOG))
def test_catalog_finite_and_a_nonzero(name):
    cs = catalog_model(name)
    ts = np.linspace(0, cs.t_max, 201)
    vals = np.array([eval_coefficients(cs, float(t)) for t in ts])
    assert np.all(np.isfinite(vals))
    assert np.all(vals[:, 0] != 0)
    assert np.all(vals[:, 4] == 0) and np.all(vals[:, 5] == 0)


@pytest.mark.parametrize("name", list(CATALOG))
@given(frac=st.floats(0.05, 0.95))
def test_tau_matches_finite_differences(name, frac):
    cs = catalog_model(name)
    t = frac * cs.t_max
    a, _, c, d, _, _ = eval_coefficients(cs, t)
    da = d1(cs.a, t, 1e-4)
    assert characteristic_coefficients(cs, t).tau == pytest.approx(da / a - 2 * c + 4 * d, rel=1e-7, abs=1e-8)


def test_sigma_removable_at_zero_of_d():
    # d = sin(2t)/2 vanishes at t = pi/2 but sigma stays finite there
    cs = catalog_model("meiler_cordero_suslov", {"t_max": 2.0})
    left = characteristic_coefficients(cs, math.pi / 2 - 1e-3).sigma
    mid = characteristic_coefficients(cs, math.pi / 2).sigma
    assert math.isfinite(mid) and mid == pytest.approx(left, abs=1e-2)
