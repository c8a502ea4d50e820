import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import MODELS, model
from quadprop.characteristic import characteristic_pair
from quadprop.errors import (
    AllSamplesCaustic,
    AmbiguousClosedForm,
    Caustic,
    OutOfDomain,
)
from quadprop.hamiltonians import catalog_model
from quadprop.riccati import (
    COMPONENTS,
    assumption_rho,
    check_assumption1,
    handoff_time,
    printed_rho,
    riccati_closed_form,
    riccati_integrate,
    riccati_residuals,
    weight,
)


def test_printed_harmonic_closed_forms():
    cs, pair, sf = model("harmonic", variant="printed")
    for t in (0.3, 0.9, 1.4):
        s = sf(t)
        assert s.alpha == pytest.approx(math.cos(t) / (2 * math.sin(t)))
        assert s.gamma == pytest.approx(math.cos(t) / (2 * math.sin(t)))
        assert s.beta == pytest.approx(-1 / math.sin(t))


def test_caldirola_kanai_alpha_at_one():
    _, _, sf = model("caldirola_kanai")
    om, lam = math.sqrt(0.99), 0.1
    expected = math.exp(0.2) * (om * math.cos(om) - lam * math.sin(om)) / (2 * math.sin(om))
    assert sf(1.0).alpha == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("name", MODELS)
def test_homogeneous_models_have_no_linear_terms(name):
    _, _, sf = model(name)
    s = sf(0.5)
    assert (s.delta, s.epsilon, s.kappa) == (0.0, 0.0, 0.0)
    assert s.w > 0


@pytest.mark.parametrize("name", MODELS)
def test_residuals_and_paths(name):
    cs, pair, sf = model(name)
    for t in np.linspace(0.1 * cs.t_max, 0.95 * cs.t_max, 6):
        assert riccati_residuals(sf, cs, float(t)).max() <= 1e-6
    t = 0.7 * cs.t_max
    a, b = sf(t), riccati_integrate(cs, t, pair=pair)
    for n in COMPONENTS:
        assert getattr(a, n) == pytest.approx(getattr(b, n), abs=1e-6)


def test_handoff_is_exact():
    cs, pair, sf = model("caldirola_kanai")
    t0 = handoff_time(cs)
    assert riccati_integrate(cs, t0, pair=pair) == sf(t0)


def test_harmonic_symmetry():
    _, _, sf = model("harmonic")
    s = sf(0.5)
    assert s.alpha == pytest.approx(s.gamma)
    assert math.isfinite(4 * s.alpha * s.gamma - s.beta**2)


def test_caustic_and_domain():
    cs = catalog_model("harmonic", {"variant": "printed", "t_max": 4.0})
    pair = characteristic_pair(cs)
    with pytest.raises(Caustic):
        riccati_closed_form(pair, cs, math.pi)
    with pytest.raises(OutOfDomain):
        riccati_closed_form(pair, cs, 5.0)
    with pytest.raises(OutOfDomain):
        riccati_closed_form(pair, cs, 0.0)


def _forced():
    return catalog_model("custom", {"t_max": 1.5}, {
        "a": lambda t: 0.5, "b": lambda t: 0.5 + 0.2 * t, "c": lambda t: 0.1,
        "d": lambda t: 0.05 * t, "f": lambda t: 0.3 * math.cos(t), "g": lambda t: 0.2,
    })


def test_forced_model_closed_form_against_ode():
    cs = _forced()
    pair = characteristic_pair(cs)
    t0 = handoff_time(cs)
    start = riccati_closed_form(pair, cs, t0)
    assert start.delta == pytest.approx(cs.g(0) / (2 * cs.a(0)), rel=1e-2)
    assert start.epsilon == pytest.approx(-start.delta, rel=1e-2)
    assert abs(start.kappa) < 1e-3
    for t in (0.4, 1.2):
        a, b = riccati_closed_form(pair, cs, t), riccati_integrate(cs, t, pair=pair)
        for n in COMPONENTS:
            assert getattr(a, n) == pytest.approx(getattr(b, n), abs=1e-6)
        assert riccati_residuals(lambda s: riccati_closed_form(pair, cs, s), cs, t, step=1e-4).max() < 1e-6


def test_printed_eps_kappa_refused():
    cs = _forced()
    with pytest.raises(AmbiguousClosedForm):
        riccati_closed_form(characteristic_pair(cs), cs, 0.5, eps_kappa="printed")


def test_weight_matches_exponential():
    cs, _, _ = model("modified_caldirola_kanai")
    # c - 2d = -2 lambda + 2 lambda = 0
    assert weight(cs, 1.0) == pytest.approx(1.0)
    cs = _forced()
    assert weight(cs, 1.0) == pytest.approx(math.exp(-(0.1 - 0.05)))


@given(h=st.floats(-3, 3).filter(lambda v: abs(v) > 1e-3), t=st.floats(0.05, 1.9))
def test_rho_forms_agree_when_homogeneous(h, t):
    _, _, sf = model("harmonic")
    s = sf(t)
    assert assumption_rho(s, h) == pytest.approx(printed_rho(s, h), rel=1e-12)
    assert assumption_rho(s, h) == pytest.approx(1j * s.gamma / s.beta**2, rel=1e-12)


@pytest.mark.parametrize("name", ["harmonic", "caldirola_kanai"])
def test_assumption1_bounded(name):
    cs, pair, _ = model(name)
    rep = check_assumption1(cs, 1.2, 1.0, 101, pair)
    assert rep.bounded and rep.samples == 101 and math.isfinite(rep.max_abs_rho)


def test_assumption1_skips_caustics():
    cs = catalog_model("harmonic", {"variant": "printed", "t_max": 4.0})
    rep = check_assumption1(cs, 1.2, math.pi, 101)
    assert rep.skipped == (math.pi,)


def test_assumption1_all_caustic():
    from quadprop.characteristic import CharacteristicPair

    cs = catalog_model("harmonic", {"variant": "printed", "t_max": 4.0})
    pair = characteristic_pair(cs)
    dead = CharacteristicPair(lambda t: 0.0, pair.mu1, pair.dmu0, pair.dmu1, "numeric",
                              pair.valid_interval, scale=1.0)
    with pytest.raises(AllSamplesCaustic):
        check_assumption1(cs, 1.2, 1.0, 5, dead)
